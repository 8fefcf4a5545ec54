"""Core domain model: formal contexts, derivation operators, concepts.

A context is a finite binary relation between *objects* and *attributes*.
The two derivation operators map an object set to the attributes shared by
all of its members and an attribute set to the objects carrying all of its
members; composing them gives a closure operator on either side.  A concept
is a pair (extent, intent) of mutually closed sets, and the set of all
concepts ordered by extent inclusion forms the concept lattice that the rest
of the package constructs.

Everything in this module is pure and works on canonical id sequences
(strictly increasing tuples of dense 0-based ids).  Name handling and file
formats live in :mod:`galois_lattice.formats`; the construction algorithms
live in :mod:`galois_lattice.engine` and :mod:`galois_lattice.builders`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

ObjectSet = Tuple[int, ...]
AttrSet = Tuple[int, ...]

__all__ = [
    "ObjectSet", "AttrSet", "Context", "Concept",
    "derive_attr", "derive_obj", "close_attrs",
    "is_closed_attrs", "is_closed_objs", "top_concept",
]


def _canonical(ids: Iterable[int], bound: int, kind: str) -> Tuple[int, ...]:
    """Sort, deduplicate and range-check an id sequence."""
    out = tuple(sorted(set(int(v) for v in ids)))
    if out and (out[0] < 0 or out[-1] >= bound):
        bad = out[0] if out[0] < 0 else out[-1]
        raise ValueError(f"{kind} id {bad} out of range [0, {bound})")
    return out


class Context:
    """An immutable binary incidence relation between objects and attributes.

    Rows (per-object attribute lists) and columns (per-attribute object
    lists) are kept as exact transposes of each other, every adjacency
    sequence strictly increasing.  Duplicate rows or columns are fine; the
    construction algorithms merge them on their own.
    """

    __slots__ = ("n", "m", "object_names", "attr_names", "rows", "cols",
                 "_row_sets")

    def __init__(self, n: int, m: int, incidence: Iterable[Iterable[int]],
                 object_names: Sequence[str] | None = None,
                 attr_names: Sequence[str] | None = None):
        if n < 0 or m < 0:
            raise ValueError("object and attribute counts must be >= 0")
        rows = [sorted(set(int(i) for i in r)) for r in incidence]
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        for g, r in enumerate(rows):
            if r and (r[0] < 0 or r[-1] >= m):
                bad = r[0] if r[0] < 0 else r[-1]
                raise ValueError(f"row {g}: attribute id {bad} "
                                 f"out of range [0, {m})")
        if object_names is None:
            object_names = tuple(f"g{k}" for k in range(n))
        else:
            object_names = tuple(str(s) for s in object_names)
            if len(object_names) != n:
                raise ValueError("object_names length != n")
        if attr_names is None:
            attr_names = tuple(f"m{i}" for i in range(m))
        else:
            attr_names = tuple(str(s) for s in attr_names)
            if len(attr_names) != m:
                raise ValueError("attr_names length != m")
        cols: list[list[int]] = [[] for _ in range(m)]
        for g, r in enumerate(rows):
            for i in r:
                cols[i].append(g)       # rows ascending => cols ascending
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "object_names", object_names)
        object.__setattr__(self, "attr_names", attr_names)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "cols", tuple(tuple(c) for c in cols))
        object.__setattr__(self, "_row_sets", tuple(set(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("Context is immutable")

    def __eq__(self, other):
        return (isinstance(other, Context)
                and self.n == other.n and self.m == other.m
                and self.object_names == other.object_names
                and self.attr_names == other.attr_names
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.n, self.m, self.rows))

    def __repr__(self):
        fill = sum(len(r) for r in self.rows)
        return f"Context({self.n} objects, {self.m} attributes, {fill} pairs)"

    def has(self, g: int, i: int) -> bool:
        """True iff object ``g`` carries attribute ``i``."""
        if not (0 <= g < self.n):
            raise ValueError(f"object id {g} out of range [0, {self.n})")
        if not (0 <= i < self.m):
            raise ValueError(f"attribute id {i} out of range [0, {self.m})")
        return i in self._row_sets[g]


@dataclass(frozen=True)
class Concept:
    """A pair of mutually closed sets: extent = obj(intent), intent = attr(extent)."""

    extent: ObjectSet
    intent: AttrSet

    @property
    def support(self) -> int:
        return len(self.extent)

    def validate(self, ctx: Context) -> None:
        """Raise ValueError unless extent and intent close onto each other."""
        if derive_attr(self.extent, ctx) != self.intent:
            raise ValueError(f"intent {self.intent} != attr({self.extent})")
        if derive_obj(self.intent, ctx) != self.extent:
            raise ValueError(f"extent {self.extent} != obj({self.intent})")


def derive_attr(X: Iterable[int], ctx: Context) -> AttrSet:
    """Attributes common to every object in ``X``.

    The empty intersection convention applies: ``derive_attr((), ctx)`` is
    the full attribute set, which is what makes the lattice's top concept
    well defined on an empty object set.
    """
    xs = _canonical(X, ctx.n, "object")
    if not xs:
        return tuple(range(ctx.m))
    out = set(ctx.rows[xs[0]])
    for g in xs[1:]:
        out &= ctx._row_sets[g]
        if not out:
            break
    return tuple(sorted(out))


def derive_obj(J: Iterable[int], ctx: Context) -> ObjectSet:
    """Objects carrying every attribute in ``J`` (all objects for empty J)."""
    js = _canonical(J, ctx.m, "attribute")
    if not js:
        return tuple(range(ctx.n))
    js = sorted(js, key=lambda i: len(ctx.cols[i]))
    out = set(ctx.cols[js[0]])
    for i in js[1:]:
        out.intersection_update(ctx.cols[i])
        if not out:
            break
    return tuple(sorted(out))


def close_attrs(J: Iterable[int], ctx: Context) -> AttrSet:
    """The attribute closure attr(obj(J)): smallest closed superset of J."""
    return derive_attr(derive_obj(J, ctx), ctx)


def is_closed_attrs(J: Iterable[int], ctx: Context) -> bool:
    """True iff J equals its double derivation attr(obj(J))."""
    js = _canonical(J, ctx.m, "attribute")
    return close_attrs(js, ctx) == js


def is_closed_objs(X: Iterable[int], ctx: Context) -> bool:
    """True iff X equals its double derivation obj(attr(X))."""
    xs = _canonical(X, ctx.n, "object")
    return derive_obj(derive_attr(xs, ctx), ctx) == xs


def top_concept(ctx: Context) -> Concept:
    """The maximum concept (all objects, their common attributes)."""
    ext = tuple(range(ctx.n))
    return Concept(ext, derive_attr(ext, ctx))
