"""Brute-force reference implementation, used only for verification.

The builders in this package are checked against this module on thousands of
random contexts.  To be worth anything as a referee it must not share code
with the code under test, so everything here recomputes derivations directly
from the raw incidence data using integer bitmasks -- no calls into
:mod:`galois_lattice.engine` or the operator functions of
:mod:`galois_lattice.context`.

Two independent strategies are provided and cross-checked against each
other in the test suite before either is trusted as a referee:

* :func:`oracle_extents` -- intersect attribute columns to a fixpoint.
* :func:`oracle_extents_exhaustive` -- close all 2^m attribute subsets
  (limited to small attribute counts).

Both are deliberately simple and quadratic-ish; a size guard refuses
contexts whose lattice would be too large to brute-force.
"""
from __future__ import annotations

from typing import FrozenSet, Set, Tuple

from .context import Concept, Context

__all__ = [
    "OracleGuardError", "oracle_extents", "oracle_extents_exhaustive",
    "oracle_concepts", "oracle_hasse",
]

MAX_EXTENTS = 10 ** 6
EXHAUSTIVE_MAX_ATTRS = 15


class OracleGuardError(RuntimeError):
    """The context's lattice exceeds the brute-force size guard."""


def _column_masks(ctx: Context) -> list[int]:
    cols = [0] * ctx.m
    for g, row in enumerate(ctx.rows):
        bit = 1 << g
        for i in row:
            cols[i] |= bit
    return cols


def _mask_to_extent(mask: int, n: int) -> Tuple[int, ...]:
    return tuple(g for g in range(n) if (mask >> g) & 1)


def oracle_extents(ctx: Context) -> Set[Tuple[int, ...]]:
    """All concept extents: the intersection closure of the columns plus O.

    Starts from the full object set and intersects with single columns until
    no new set appears.  Every concept extent arises this way, because each
    one is an intersection of columns (of its intent) with O.
    """
    cols = _column_masks(ctx)
    full = (1 << ctx.n) - 1
    seen = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for x in frontier:
            for c in cols:
                y = x & c
                if y not in seen:
                    if len(seen) >= MAX_EXTENTS:
                        raise OracleGuardError(
                            f"more than {MAX_EXTENTS} extents; "
                            "context too large for the brute-force oracle")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return {_mask_to_extent(x, ctx.n) for x in seen}


def oracle_extents_exhaustive(ctx: Context) -> Set[Tuple[int, ...]]:
    """All concept extents by deriving every attribute subset (m <= 15)."""
    if ctx.m > EXHAUSTIVE_MAX_ATTRS:
        raise OracleGuardError(
            f"exhaustive strategy limited to m <= {EXHAUSTIVE_MAX_ATTRS}")
    cols = _column_masks(ctx)
    full = (1 << ctx.n) - 1
    seen = set()
    for jmask in range(1 << ctx.m):
        x = full
        for i in range(ctx.m):
            if (jmask >> i) & 1:
                x &= cols[i]
        seen.add(x)
    return {_mask_to_extent(x, ctx.n) for x in seen}


def oracle_concepts(ctx: Context) -> Set[Concept]:
    """Every formal concept, as (extent, intent) pairs.

    Intents are recomputed per extent from the column masks: attribute i is
    in the intent iff its column contains the whole extent.
    """
    cols = _column_masks(ctx)
    out = set()
    for ext in oracle_extents(ctx):
        mask = 0
        for g in ext:
            mask |= 1 << g
        intent = tuple(i for i in range(ctx.m) if mask & cols[i] == mask)
        out.add(Concept(ext, intent))
    return out


def oracle_hasse(concepts: Set[Concept]) -> Set[Tuple[Concept, Concept]]:
    """Covering pairs (predecessor, successor) under strict extent inclusion.

    A pair covers iff the successor's extent is strictly contained in the
    predecessor's with no third concept strictly between -- the transitive
    reduction of the containment order.
    """
    cs = sorted(concepts, key=lambda c: (-len(c.extent), c.extent))
    sets: list[FrozenSet[int]] = [frozenset(c.extent) for c in cs]
    k = len(cs)
    edges = set()
    for a in range(k):
        for b in range(k):
            if a == b or not (sets[b] < sets[a]):
                continue
            if any(sets[b] < sets[z] < sets[a] for z in range(k)
                   if z != a and z != b):
                continue
            edges.add((cs[a], cs[b]))
    return edges
