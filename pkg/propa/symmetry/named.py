"""Generator sets for the automorphism groups of the named graph families.

Each function matches the labeling of the generator of the same family.
"""

from __future__ import annotations

from propa.graphs.base import Graph
from propa.symmetry.group import AutomorphismSet, Permutation


def _swap_bits(u: int, i: int, j: int) -> int:
    if (u >> i) & 1 != (u >> j) & 1:
        u ^= (1 << i) | (1 << j)
    return u


def hypercube_automorphisms(n: int) -> list[Permutation]:
    """Adjacent coordinate swaps plus the flip of the lowest bit.

    Together they generate all ``2^n * n!`` cube automorphisms.
    """
    size = 1 << n
    generators = [
        tuple(_swap_bits(u, i, i + 1) for u in range(size)) for i in range(n - 1)
    ]
    generators.append(tuple(u ^ 1 for u in range(size)))
    return generators


def cycle_automorphisms(k: int) -> list[Permutation]:
    """Rotation by one and the reflection ``v -> -v``."""
    return [
        tuple((v + 1) % k for v in range(k)),
        tuple((-v) % k for v in range(k)),
    ]


def circular_ladder_automorphisms(k: int) -> list[Permutation]:
    """Rotation, reflection and the swap of the two rings."""
    rotation = [(i + 1) % k for i in range(k)] + [k + (i + 1) % k for i in range(k)]
    reflection = [(-i) % k for i in range(k)] + [k + (-i) % k for i in range(k)]
    flip = [i + k for i in range(k)] + list(range(k))
    return [tuple(rotation), tuple(reflection), tuple(flip)]


def heawood_automorphisms() -> list[Permutation]:
    """Translation, the multiplier 2 and the point-line polarity of the Fano plane.

    They act transitively on vertices and on edges.
    """
    translation = [(x + 1) % 7 for x in range(7)] + [7 + (y + 1) % 7 for y in range(7)]
    multiplier = [(2 * x) % 7 for x in range(7)] + [
        7 + (2 * y + 6) % 7 for y in range(7)
    ]
    polarity = [7 + (-x) % 7 for x in range(7)] + [(-y) % 7 for y in range(7)]
    return [tuple(translation), tuple(multiplier), tuple(polarity)]


def named_automorphisms(g: Graph) -> AutomorphismSet | None:
    """Generators for ``g`` when its name identifies a supported family."""
    family, _, argument = (g.name or "").partition(":")
    if family == "hypercube" and argument.isdigit():
        generators = hypercube_automorphisms(int(argument))
    elif family == "cycle" and argument.isdigit():
        generators = cycle_automorphisms(int(argument))
    elif family == "ladder" and argument.isdigit():
        generators = circular_ladder_automorphisms(int(argument))
    elif family == "heawood" and not argument:
        generators = heawood_automorphisms()
    else:
        return None
    return AutomorphismSet.from_generators(g, generators)


__all__ = [
    "hypercube_automorphisms",
    "cycle_automorphisms",
    "circular_ladder_automorphisms",
    "heawood_automorphisms",
    "named_automorphisms",
]
