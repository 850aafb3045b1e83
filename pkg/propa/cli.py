"""CLI for propa: exact property-A invariants of finite graphs."""

from __future__ import annotations

import json
from collections.abc import Iterator
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Any

import typer
from rich.console import Console
from rich.table import Table

from propa import __version__
from propa.config import get_settings, setup_logging
from propa.errors import (
    CertificateMismatchError,
    EnumerationCapError,
    GroupTooLargeError,
    InfeasibleDemandError,
    LpSizeError,
)
from propa.exact.rational import format_rational
from propa.graphs.base import Graph, Scale

app = typer.Typer(
    help="propa - exact property-A invariants of finite graphs",
    epilog='Rationals are read as "p/q" or "p", so "0" and "0/1" are the same value.',
)
formula_app = typer.Typer(help="Closed-form values for cubes, girth graphs and trees")
sequence_app = typer.Typer(help="Invariants along families of graphs")
app.add_typer(formula_app, name="formula")
app.add_typer(sequence_app, name="sequence")

# Reports go to stdout; everything human-readable goes here
console = Console(stderr=True)

EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_SIZE = 3
EXIT_MISMATCH = 4


@app.callback()
def callback(
    log_level: str | None = typer.Option(None, "--log-level", help="Override PROPA_LOG_LEVEL"),
) -> None:
    """Configure logging before any command runs."""
    settings = get_settings()
    if log_level:
        settings = settings.model_copy(update={"log_level": log_level.upper()})
    setup_logging(settings)


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map library errors onto the CLI exit-code contract."""
    try:
        yield
    except CertificateMismatchError as exc:
        console.print(f"[red]Certificate mismatch:[/] {exc}")
        raise typer.Exit(EXIT_MISMATCH) from exc
    except (LpSizeError, EnumerationCapError, GroupTooLargeError) as exc:
        console.print(f"[red]Too large:[/] {exc}")
        raise typer.Exit(EXIT_SIZE) from exc
    except (ValueError, OSError) as exc:
        console.print(f"[red]Invalid input:[/] {exc}")
        raise typer.Exit(EXIT_INPUT) from exc


def _emit(data: Any, output: Path | None = None) -> None:
    text = json.dumps(data, indent=2)
    if output is None:
        typer.echo(text)
    else:
        output.write_text(text + "\n")
        console.print(f"[green]Wrote {output}[/]")


def _load_graph(gen: str | None, graph: Path | None) -> Graph:
    from propa.graphs.io import parse_generator_spec, read_graph

    if (gen is None) == (graph is None):
        raise ValueError("Give exactly one of --gen and --graph")
    return parse_generator_spec(gen) if gen is not None else read_graph(graph)  # type: ignore[arg-type]


def _load_scale(g: Graph, scale: str) -> int | Scale:
    """An integer radius, or the path of a scale JSON file."""
    from propa.graphs.io import scale_from_json

    text = scale.strip()
    if text.lstrip("-").isdigit():
        return int(text)
    return scale_from_json(json.loads(Path(text).read_text()), g)


def _scale_object(g: Graph, scale: str) -> Scale:
    from propa.invariants.epsilon import resolve_scale

    return resolve_scale(g, _load_scale(g, scale))


def _jobs(jobs: int | None) -> int:
    return jobs if jobs is not None else get_settings().jobs


def _show_table(title: str, rows: list[tuple[str, str]]) -> None:
    table = Table(title=title)
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")
    for name, value in rows:
        table.add_row(name, value)
    console.print(table)


GEN_HELP = "Generator spec, e.g. hypercube:3, grid:3x3, ladder:7, heawood"
GRAPH_HELP = "Graph file (line format or .json)"
SCALE_HELP = "Ball radius, or path of a scale JSON file"


@app.command()
def version() -> None:
    """Print the propa version."""
    typer.echo(__version__)


@app.command()
def epsilon(
    gen: str | None = typer.Option(None, "--gen", help=GEN_HELP),
    graph: Path | None = typer.Option(None, "--graph", help=GRAPH_HELP),
    scale: str = typer.Option("1", "--scale", help=SCALE_HELP),
    method: str = typer.Option("both", "--method", help="primal, dual, both or lift"),
    jobs: int | None = typer.Option(None, "--jobs", help="Worker processes for lifting"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
    timings: bool = typer.Option(False, "--timings", help="Include solver statistics"),
    table: bool = typer.Option(False, "--table", help="Summary table on stderr"),
) -> None:
    """Exact epsilon at a scale, with primal and/or dual certificates."""
    from propa.invariants.epsilon import Method, epsilon_at_scale

    with _exit_codes():
        g = _load_graph(gen, graph)
        report = epsilon_at_scale(
            g, _load_scale(g, scale), method=Method(method), jobs=_jobs(jobs)
        )
    _emit(report.to_dict(include_statistics=timings), output)
    if table:
        _show_table(
            "epsilon",
            [
                ("graph", str(report.graph)),
                ("radius", str(report.radius)),
                ("epsilon", format_rational(report.epsilon)),
            ],
        )


@app.command()
def cheeger(
    gen: str | None = typer.Option(None, "--gen", help=GEN_HELP),
    graph: Path | None = typer.Option(None, "--graph", help=GRAPH_HELP),
    scale: str = typer.Option("1", "--scale", help=SCALE_HELP),
    method: str = typer.Option("brute_force", "--method", help="brute_force or lp"),
    enum_cap: int | None = typer.Option(None, "--enum-cap", help="Largest set searched"),
    dot: Path | None = typer.Option(None, "--dot", help="Write the witness as DOT"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Cheeger constant at a scale, with a witness set for brute force."""
    from propa.graphs.io import witness_to_dot
    from propa.invariants.cheeger import CheegerMethod, cheeger_at_scale

    with _exit_codes():
        g = _load_graph(gen, graph)
        report = cheeger_at_scale(
            g, _load_scale(g, scale), method=CheegerMethod(method), cap=enum_cap
        )
    _emit(report.to_dict(), output)
    if dot is not None and report.witness is not None:
        dot.write_text(witness_to_dot(g, report.witness, label=f"gamma = {report.gamma}"))


@app.command()
def uniform(
    gen: str | None = typer.Option(None, "--gen", help=GEN_HELP),
    graph: Path | None = typer.Option(None, "--graph", help=GRAPH_HELP),
    scale: str = typer.Option("1", "--scale", help=SCALE_HELP),
    demand: bool = typer.Option(
        False, "--free-capacity", help="Let capacities vary, keep one shared demand"
    ),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
    timings: bool = typer.Option(False, "--timings", help="Include solver statistics"),
) -> None:
    """Uniform-flows optimum: one demand, every capacity 1/|E|."""
    from propa.invariants.cheeger import uniform_demand_at_scale, uniform_flows_at_scale

    with _exit_codes():
        g = _load_graph(gen, graph)
        s = _load_scale(g, scale)
        report = uniform_demand_at_scale(g, s) if demand else uniform_flows_at_scale(g, s)
    _emit(report.to_dict(include_statistics=timings), output)


@app.command()
def mean(
    gen: str | None = typer.Option(None, "--gen", help=GEN_HELP),
    graph: Path | None = typer.Option(None, "--graph", help=GRAPH_HELP),
    scale: str = typer.Option("1", "--scale", help=SCALE_HELP),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Mean property-A relaxation of epsilon."""
    from propa.invariants.cheeger import mean_property_a_at_scale

    with _exit_codes():
        g = _load_graph(gen, graph)
        report = mean_property_a_at_scale(g, _load_scale(g, scale))
    _emit(report.to_dict(), output)


@app.command()
def sparsest(
    gen: str | None = typer.Option(None, "--gen", help=GEN_HELP),
    graph: Path | None = typer.Option(None, "--graph", help=GRAPH_HELP),
    scale: str = typer.Option("1", "--scale", help=SCALE_HELP),
    kappa: Path | None = typer.Option(
        None, "--kappa", help='JSON {"u-v": "p/q"} ("0" or "0/1" for zero); default 1/|E|'
    ),
    enum_cap: int | None = typer.Option(None, "--enum-cap", help="Largest set searched"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Sparsest cut at a scale for given edge capacities."""
    from propa.exact.rational import parse_rational
    from propa.flows.certificates import parse_edge_key
    from propa.invariants.cheeger import sparsest_cut_at_scale

    with _exit_codes():
        g = _load_graph(gen, graph)
        if kappa is None:
            if not g.edges:
                raise ValueError("Uniform capacities need at least one edge")
            capacities = dict.fromkeys(g.edges, Fraction(1, g.edge_count))
        else:
            raw = json.loads(kappa.read_text())
            capacities = {parse_edge_key(k): parse_rational(v) for k, v in raw.items()}
        report = sparsest_cut_at_scale(g, _load_scale(g, scale), capacities, cap=enum_cap)
    _emit(report.to_dict(), output)


@app.command()
def lift(
    demands: Path = typer.Argument(..., help='JSON with "eta" and "kappa" entries'),
    gen: str | None = typer.Option(None, "--gen", help=GEN_HELP),
    graph: Path | None = typer.Option(None, "--graph", help=GRAPH_HELP),
    scale: str = typer.Option("1", "--scale", help=SCALE_HELP),
    jobs: int | None = typer.Option(None, "--jobs", help="Worker processes"),
    dot: Path | None = typer.Option(None, "--dot", help="Write a violated set as DOT"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Build pseudo-flows for (eta, kappa), or report a violated set (exit 1)."""
    from propa.flows.certificates import FlowCertificate
    from propa.flows.maxflow import lift_and_project
    from propa.graphs.io import witness_to_dot
    from propa.graphs.metric import dual_scale

    with _exit_codes():
        g = _load_graph(gen, graph)
        sc = _scale_object(g, scale)
        given = FlowCertificate.from_dict(json.loads(demands.read_text()))
        try:
            certificate = lift_and_project(
                g, dual_scale(sc), given.eta, given.kappa, jobs=_jobs(jobs)
            )
        except InfeasibleDemandError as exc:
            failure: dict[str, Any] = {
                "kind": "lift_failure",
                "graph": g.name,
                "radius": sc.radius,
                "feasible": False,
                "focus": exc.focus,
                "witness": list(exc.witness),
            }
            given_dict = given.to_dict()
            failure.update({"eta": given_dict["eta"], "kappa": given_dict["kappa"]})
            _emit(failure, output)
            if dot is not None:
                dot.write_text(witness_to_dot(g, exc.witness, label=f"focus {exc.focus}"))
            raise typer.Exit(EXIT_NEGATIVE) from exc
    _emit(certificate.to_dict(), output)


@app.command()
def verify(
    certificate: Path = typer.Argument(..., help="Certificate or report JSON"),
    gen: str | None = typer.Option(None, "--gen", help=GEN_HELP),
    graph: Path | None = typer.Option(None, "--graph", help=GRAPH_HELP),
    scale: str | None = typer.Option(
        None, "--scale", help=SCALE_HELP + "; default: the radius the report names, else 1"
    ),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Check a certificate or any propa report exactly; exit 1 when a check fails.

    Measures and partitions are checked against the scale, flows against its
    dual. Formula and sequence reports need no graph.
    """
    from propa.invariants.documents import needs_graph, verify_document

    with _exit_codes():
        data = json.loads(certificate.read_text())
        if not isinstance(data, dict):
            raise ValueError("Expected a JSON object")
        g: Graph | None = None
        sc: Scale | None = None
        if needs_graph(data) or gen is not None or graph is not None:
            g = _load_graph(gen, graph)
            radius = data.get("radius")
            default = str(radius) if isinstance(radius, int) else "1"
            sc = _scale_object(g, scale if scale is not None else default)
        checks = verify_document(data, g, sc)
    results = {name: report.to_dict() for name, report in checks.items()}
    valid = all(r["valid"] for r in results.values())
    _emit({"valid": valid, "checks": results}, output)
    if not valid:
        for name, result in results.items():
            for violation in result["violations"]:
                console.print(f"[red]{name}:[/] {violation}")
        raise typer.Exit(EXIT_NEGATIVE)


@app.command()
def symmetric(
    gen: str | None = typer.Option(None, "--gen", help=GEN_HELP),
    graph: Path | None = typer.Option(None, "--graph", help=GRAPH_HELP),
    scale: str = typer.Option("1", "--scale", help=SCALE_HELP),
    generators: Path | None = typer.Option(
        None, "--generators", help='JSON {"generators": [[...], ...]}; default: named family'
    ),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Orbit-reduced isoperimetric LP under a group of automorphisms."""
    from propa.graphs.metric import dual_scale
    from propa.invariants.epsilon import solve_checked
    from propa.symmetry import (
        AutomorphismSet,
        close_group,
        named_automorphisms,
        orbit_report,
        reduced_symmetric_lp,
    )

    with _exit_codes():
        g = _load_graph(gen, graph)
        sc = _scale_object(g, scale)
        if generators is not None:
            group = AutomorphismSet.from_dict(json.loads(generators.read_text()), g)
        else:
            named = named_automorphisms(g)
            if named is None:
                raise ValueError(f"No named generators for graph {g.name!r}")
            group = named
        group = close_group(group, g)
        ilp = reduced_symmetric_lp(g, dual_scale(sc), group)
        solution = solve_checked(ilp)
    report: dict[str, Any] = {
        "kind": "reduced_symmetric",
        "graph": g.name,
        "radius": sc.radius,
    }
    report.update(orbit_report(group, g))
    report["value"] = format_rational(solution.objective_value)
    report["eta"] = [
        format_rational(ilp.value(solution, "eta", o))
        for o in range(len(report["vertex_orbits"]))
    ]
    report["kappa"] = [
        format_rational(ilp.value(solution, "kappa", o))
        for o in range(len(report["edge_orbits"]))
    ]
    _emit(report, output)


@app.command()
def generate(
    spec: str = typer.Argument(..., help=GEN_HELP),
    fmt: str = typer.Option("text", "--format", help="text or json"),
    output: Path | None = typer.Option(None, "--output", help="Write the graph here"),
) -> None:
    """Emit a generated graph in the line format or as JSON."""
    from propa.graphs.io import format_graph_text, graph_to_json, parse_generator_spec

    with _exit_codes():
        if fmt not in ("text", "json"):
            raise ValueError(f"Unknown format {fmt!r}")
        g = parse_generator_spec(spec)
    if fmt == "json":
        _emit(graph_to_json(g), output)
        return
    text = format_graph_text(g)
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text)


def _emit_formula(
    name: str, params: dict[str, int], value: Fraction, output: Path | None
) -> None:
    report = {"kind": "formula", "formula": name, **params}
    report["value"] = format_rational(value)
    _emit(report, output)


@formula_app.command("cube")
def formula_cube(
    n: int = typer.Option(..., "--n", help="Cube dimension"),
    s: int = typer.Option(..., "--s", help="Scale radius"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Epsilon of the n-cube at scale s."""
    from propa.invariants.formulas import cube_epsilon_formula

    with _exit_codes():
        value = cube_epsilon_formula(n, s)
    _emit_formula("cube", {"n": n, "s": s}, value, output)


@formula_app.command("girth")
def formula_girth(
    d: int = typer.Option(..., "--d", help="Degree"),
    s: int = typer.Option(..., "--s", help="Scale radius"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Epsilon of a d-regular graph with girth above 2s+1."""
    from propa.invariants.formulas import girth_epsilon_formula

    with _exit_codes():
        value = girth_epsilon_formula(d, s)
    _emit_formula("girth", {"d": d, "s": s}, value, output)


@formula_app.command("girth-cheeger")
def formula_girth_cheeger(
    d: int = typer.Option(..., "--d", help="Degree"),
    s: int = typer.Option(..., "--s", help="Scale radius"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Cheeger constant at scale s of a d-regular graph with girth above 2s+1."""
    from propa.invariants.formulas import girth_cheeger_formula

    with _exit_codes():
        value = girth_cheeger_formula(d, s)
    _emit_formula("girth-cheeger", {"d": d, "s": s}, value, output)


@formula_app.command("tree")
def formula_tree(
    d: int = typer.Option(..., "--d", help="Degree"),
    n: int = typer.Option(..., "--n", help="Vertices in the subset"),
    k: int = typer.Option(..., "--k", help="Components of the subset"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Isoperimetric number of a leafless subset of a d-regular tree."""
    from propa.invariants.formulas import tree_isoperimetric_number

    with _exit_codes():
        value = tree_isoperimetric_number(d, n, k)
    _emit_formula("tree", {"d": d, "n": n, "k": k}, value, output)


def _emit_sequence(
    name: str,
    labels: list[str],
    values: list[Fraction],
    table: bool,
    extra: dict[str, Any],
    output: Path | None,
) -> None:
    _emit(
        {
            "kind": "sequence",
            "sequence": name,
            **extra,
            "graphs": labels,
            "values": [format_rational(v) for v in values],
        },
        output,
    )
    if table:
        _show_table(name, [(lab, format_rational(v)) for lab, v in zip(labels, values)])


@sequence_app.command("cubes")
def sequence_cubes(
    max_n: int = typer.Option(..., "--max-n", help="Largest cube dimension"),
    min_n: int = typer.Option(2, "--min-n", help="Smallest cube dimension"),
    scale: int = typer.Option(1, "--scale", help="Ball radius"),
    formula: bool = typer.Option(False, "--formula", help="Use the closed form, no LP"),
    jobs: int | None = typer.Option(None, "--jobs", help="Worker processes"),
    table: bool = typer.Option(False, "--table", help="Summary table on stderr"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Epsilon of the cubes Q_min..Q_max at a fixed scale."""
    from propa.graphs.generators import hypercube
    from propa.invariants.epsilon import Method, epsilon_sequence
    from propa.invariants.formulas import cube_epsilon_formula

    with _exit_codes():
        dims = list(range(min_n, max_n + 1))
        if formula:
            values = [cube_epsilon_formula(n, scale) for n in dims]
        else:
            graphs = [hypercube(n) for n in dims]
            values = epsilon_sequence(graphs, scale, method=Method.PRIMAL, jobs=_jobs(jobs))
    labels = [f"hypercube:{n}" for n in dims]
    _emit_sequence("cubes", labels, values, table, {"scale": scale}, output)


@sequence_app.command("cube-unions")
def sequence_cube_unions(
    max_n: int = typer.Option(..., "--max-n", help="Largest cube in the union"),
    scale: int = typer.Option(1, "--scale", help="Ball radius"),
    jobs: int | None = typer.Option(None, "--jobs", help="Worker processes"),
    table: bool = typer.Option(False, "--table", help="Summary table on stderr"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Epsilon of the disjoint unions Q_2 + ... + Q_n at a fixed scale."""
    from propa.graphs.generators import disjoint_union, hypercube
    from propa.invariants.epsilon import Method, epsilon_sequence

    with _exit_codes():
        dims = list(range(2, max_n + 1))
        graphs = [disjoint_union([hypercube(m) for m in range(2, n + 1)]) for n in dims]
        values = epsilon_sequence(graphs, scale, method=Method.PRIMAL, jobs=_jobs(jobs))
    labels = ["+".join(f"hypercube:{m}" for m in range(2, n + 1)) for n in dims]
    _emit_sequence("cube-unions", labels, values, table, {"scale": scale}, output)


@sequence_app.command("girth-s")
def sequence_girth_s(
    d: int = typer.Option(3, "--d", help="Degree"),
    max_s: int = typer.Option(5, "--max-s", help="Largest scale radius"),
    table: bool = typer.Option(False, "--table", help="Summary table on stderr"),
    output: Path | None = typer.Option(None, "--output", help="Write JSON here"),
) -> None:
    """Girth formula for s = 0..max_s, with its limit as s grows."""
    from propa.invariants.formulas import girth_epsilon_formula, girth_epsilon_scale_limit

    with _exit_codes():
        values = [girth_epsilon_formula(d, s) for s in range(max_s + 1)]
        limit = girth_epsilon_scale_limit(d)
    _emit_sequence(
        "girth-s",
        [f"s={s}" for s in range(max_s + 1)],
        values,
        table,
        {"d": d, "limit": format_rational(limit)},
        output,
    )


def main() -> None:
    """Main entry point."""
    app()


if __name__ == "__main__":
    main()
