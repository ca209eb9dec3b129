"""Partial Steiner triple systems: validation, packing and admissible sequences.

Points are dense indices ``0..order-1``; every system also carries the
labels it was read with. Sequences may be given as indices or labels.
"""

from ._psts import (
    PstsError,
    TripleSystem,
    bad_sets,
    construct,
    cyclic_system,
    decide,
    fano,
    friendship,
    friendship_chain,
    inadmissible_segments,
    is_admissible,
    is_good_set,
    johnson_schonheim,
    max_disjoint_blocks,
    parse_system,
    random_system,
    read_system,
    sts13,
    verify_sts13,
)

__all__ = [
    "PstsError",
    "TripleSystem",
    "bad_sets",
    "construct",
    "cyclic_system",
    "decide",
    "fano",
    "friendship",
    "friendship_chain",
    "inadmissible_segments",
    "is_admissible",
    "is_good_set",
    "johnson_schonheim",
    "max_disjoint_blocks",
    "parse_system",
    "random_system",
    "read_system",
    "sts13",
    "verify_sts13",
]
