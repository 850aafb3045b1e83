"""Automorphism groups, orbits and symmetry averaging."""

from __future__ import annotations

from propa.symmetry.averaging import (
    average_solution,
    check_scale_invariant,
    expand_reduced_solution,
    reduced_symmetric_lp,
)
from propa.symmetry.group import (
    AutomorphismSet,
    Permutation,
    check_automorphism,
    close_group,
    compose,
    identity,
    inverse,
    orbit_report,
    orbits,
    permutation_from_json,
)
from propa.symmetry.named import (
    circular_ladder_automorphisms,
    cycle_automorphisms,
    heawood_automorphisms,
    hypercube_automorphisms,
    named_automorphisms,
)

__all__ = [
    "average_solution",
    "check_scale_invariant",
    "expand_reduced_solution",
    "reduced_symmetric_lp",
    "AutomorphismSet",
    "Permutation",
    "check_automorphism",
    "close_group",
    "compose",
    "identity",
    "inverse",
    "orbit_report",
    "orbits",
    "permutation_from_json",
    "circular_ladder_automorphisms",
    "cycle_automorphisms",
    "heawood_automorphisms",
    "hypercube_automorphisms",
    "named_automorphisms",
]
