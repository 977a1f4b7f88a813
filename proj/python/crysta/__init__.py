"""Crystallization toolkit for closed orientable PL 4-manifolds.

Thin wrapper over the C++ core: 5-colored gems, their invariants
(residue counts, Euler characteristic, regular genus, homology),
simple-crystallization certificates, moves and exhaustive catalogs.
"""

import json as _json

from ._crysta import (
    Gem,
    canonical_hex,
    connected_sum,
    euler_characteristic,
    find_dipoles,
    homology_betti,
    s3_verdicts,
    simplify,
)
from ._crysta import enumerate_simple_json as _enumerate_simple_json
from ._crysta import invariant_report_json as _invariant_report_json

__all__ = [
    "Gem",
    "canonical_hex",
    "connected_sum",
    "enumerate_simple",
    "euler_characteristic",
    "find_dipoles",
    "homology_betti",
    "invariant_report",
    "s3_verdicts",
    "simplify",
]


def invariant_report(gem):
    """Full invariant report as a dict (see the CLI JSON schema)."""
    return _json.loads(_invariant_report_json(gem))


def enumerate_simple(order, group="vcr", jobs=1, seed=1):
    """Catalog of simple crystallizations of one order, as a dict."""
    return _json.loads(_enumerate_simple_json(order, group, jobs, seed))
