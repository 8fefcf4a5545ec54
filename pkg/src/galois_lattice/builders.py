"""Lattice builders: drive the engine breadth-first over whole contexts.

Two equivalent construction strategies are exposed:

* :func:`build_lattice_bfs_basic` sprouts every concept from the raw
  adjacency lists (attributes already in the intent are skipped).
* :func:`build_lattice_two_level` sprouts a concept from its *parent's*
  condensed view, so each level scans class symbols instead of raw
  attributes.  Output is identical; the per-concept work drops to the
  summed condensed list lengths of the extent.

Both run strict FIFO: concepts get ids in confirmation order, each concept
is sprouted exactly once (immediately when confirmed), and its children are
registered in the global extent dictionary right away so that later
siblings on the same level can be recognized as non-closed duplicates.

On top of these, :func:`enumerate_concepts` yields the concept set without
edge bookkeeping and :func:`build_iceberg` restricts construction to
concepts meeting a support threshold -- sub-threshold children are dropped
the moment they sprout, which prunes entire subtrees because support only
shrinks downward.

Large builds transparently route through the compiled array engine
(:mod:`galois_lattice._kernel`); results are identical either way and every
counter matches bit for bit.  :class:`ConceptLattice` therefore keeps the
engine's flat arrays and materializes :class:`~galois_lattice.context.Concept`
objects lazily -- converting a million-concept lattice to tuples eagerly
would cost more than building it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .context import Concept, Context, ObjectSet, top_concept
from .engine import (
    ChildList, ExtentDict, _sprout_counted, classify_child, condense,
    is_closed_by_siblings, raw_view, register_children, sort_children,
)

__all__ = [
    "BuildStats", "ConceptLattice",
    "build_lattice_two_level", "build_lattice_bfs_basic",
    "complete_bottom", "enumerate_concepts", "build_iceberg",
    "canonical_serialization",
]

NATURAL = "natural"
COMPLETED = "completed"

# below this many incidence cells the compiled engine's fixed overhead
# (import + dispatch) exceeds the whole pure-python build
_KERNEL_MIN_CELLS = 50_000


@dataclass
class BuildStats:
    """Instrumentation counters for one build.

    ``touches_per_concept[c]`` is the number of adjacency elements scanned
    by concept ``c``'s sprout (the total is their sum); ``dict_lookups``
    counts every extent-dictionary search (registrations and
    classifications); ``eliminations`` counts candidates rejected as not
    closed; ``queue_high_water`` is the largest number of confirmed-but-
    unprocessed concepts ever waiting; ``support_skips`` counts children
    dropped by an iceberg threshold; ``dict_entries`` is the final
    dictionary size.
    """

    touches_per_concept: Sequence[int]
    dict_lookups: int
    eliminations: int
    queue_high_water: int
    support_skips: int
    dict_entries: int

    @property
    def touches_total(self) -> int:
        return int(sum(self.touches_per_concept))

    def as_dict(self, include_per_concept: bool = False) -> dict:
        out = {
            "touches_total": self.touches_total,
            "dict_lookups": int(self.dict_lookups),
            "eliminations": int(self.eliminations),
            "queue_high_water": int(self.queue_high_water),
            "support_skips": int(self.support_skips),
            "dict_entries": int(self.dict_entries),
        }
        if include_per_concept:
            out["touches_per_concept"] = [int(t)
                                          for t in self.touches_per_concept]
        return out


class _ConceptSeq(Sequence[Concept]):
    """Read-only lazy view over a lattice's concepts."""

    __slots__ = ("_lat",)

    def __init__(self, lat: "ConceptLattice"):
        self._lat = lat

    def __len__(self) -> int:
        return len(self._lat)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self._lat.concept(k) for k in range(*i.indices(len(self)))]
        return self._lat.concept(i)

    def __iter__(self) -> Iterator[Concept]:
        for i in range(len(self)):
            yield self._lat.concept(i)


class ConceptLattice:
    """Indexed concepts plus Hasse (predecessor -> successor) edges.

    Concepts are addressed by dense ids in confirmation order; ``top_id``
    is the maximum concept (id 0 on every non-empty build) and
    ``bottom_id`` is set in completed mode.  The backing store is either a
    list of (extent, intent) tuples (python engine) or flat CSR arrays
    (compiled engine); accessors are uniform and concepts materialize only
    when asked for.
    """

    __slots__ = ("bottom_mode", "top_id", "bottom_id", "_m",
                 "_pairs", "_xi", "_xd", "_ii", "_idt",
                 "_edge_list", "_eu", "_ev", "_bottom_preds",
                 "_edges_cache")

    def __init__(self, m: int, *, pairs=None, arrays=None,
                 edge_list=None, edge_arrays=None,
                 bottom_mode: str = NATURAL,
                 top_id: Optional[int] = None,
                 bottom_id: Optional[int] = None,
                 bottom_preds: Optional[List[int]] = None):
        self._m = m
        self._pairs = pairs
        self._xi = self._xd = self._ii = self._idt = None
        if arrays is not None:
            self._xi, self._xd, self._ii, self._idt = arrays
        self._edge_list = edge_list
        self._eu = self._ev = None
        if edge_arrays is not None:
            self._eu, self._ev = edge_arrays
        self.bottom_mode = bottom_mode
        self.top_id = top_id
        self.bottom_id = bottom_id
        self._bottom_preds = bottom_preds
        self._edges_cache = None

    # -- construction ------------------------------------------------------

    @classmethod
    def _from_pairs(cls, m: int, pairs: List[Tuple[ObjectSet, Tuple[int, ...]]],
                    edges: List[Tuple[int, int]]) -> "ConceptLattice":
        return cls(m, pairs=pairs, edge_list=edges,
                   top_id=0 if pairs else None)

    @classmethod
    def _from_arrays(cls, m: int, n_con: int, xi, xd, ii, idt,
                     eu, ev) -> "ConceptLattice":
        return cls(m, arrays=(xi, xd, ii, idt), edge_arrays=(eu, ev),
                   top_id=0 if n_con else None)

    # -- sizes -------------------------------------------------------------

    @property
    def _base(self) -> int:
        if self._pairs is not None:
            return len(self._pairs)
        return int(self._xi.shape[0] - 1) if self._xi is not None else 0

    def __len__(self) -> int:
        return self._base + (1 if self._bottom_preds is not None else 0)

    # -- per-concept accessors --------------------------------------------

    def _check_id(self, i: int) -> None:
        if not (0 <= i < len(self)):
            raise IndexError(f"concept id {i} out of range [0, {len(self)})")

    def extent(self, i: int) -> ObjectSet:
        self._check_id(i)
        if self._bottom_preds is not None and i == self._base:
            return ()
        if self._pairs is not None:
            return self._pairs[i][0]
        lo, hi = int(self._xi[i]), int(self._xi[i + 1])
        return tuple(int(v) for v in self._xd[lo:hi])

    def intent(self, i: int) -> Tuple[int, ...]:
        self._check_id(i)
        if self._bottom_preds is not None and i == self._base:
            return tuple(range(self._m))
        if self._pairs is not None:
            return self._pairs[i][1]
        lo, hi = int(self._ii[i]), int(self._ii[i + 1])
        return tuple(int(v) for v in self._idt[lo:hi])

    def support(self, i: int) -> int:
        self._check_id(i)
        if self._bottom_preds is not None and i == self._base:
            return 0
        if self._pairs is not None:
            return len(self._pairs[i][0])
        return int(self._xi[i + 1] - self._xi[i])

    def concept(self, i: int) -> Concept:
        return Concept(self.extent(i), self.intent(i))

    @property
    def concepts(self) -> Sequence[Concept]:
        return _ConceptSeq(self)

    @property
    def edge_count(self) -> int:
        """Number of cover edges, without materializing the edge list."""
        if self._edges_cache is not None:
            return len(self._edges_cache)
        if self._edge_list is not None:
            base = len(self._edge_list)
        elif self._eu is not None:
            base = int(self._eu.shape[0])
        else:
            base = 0
        if self._bottom_preds is not None:
            base += len(self._bottom_preds)
        return base

    @property
    def edges(self) -> List[Tuple[int, int]]:
        if self._edges_cache is None:
            if self._edge_list is not None:
                out = list(self._edge_list)
            elif self._eu is not None:
                out = [(int(a), int(b))
                       for a, b in zip(self._eu, self._ev)]
            else:
                out = []
            if self._bottom_preds is not None:
                bid = self._base
                out.extend((p, bid) for p in self._bottom_preds)
            self._edges_cache = out
        return self._edges_cache

    # -- derived views -----------------------------------------------------

    def out_degrees(self) -> List[int]:
        deg = [0] * len(self)
        for u, _ in self.edges:
            deg[u] += 1
        return deg

    def __eq__(self, other):
        if not isinstance(other, ConceptLattice):
            return NotImplemented
        if (len(self) != len(other)
                or self.bottom_mode != other.bottom_mode
                or self.top_id != other.top_id
                or self.bottom_id != other.bottom_id):
            return False
        for i in range(len(self)):
            if (self.extent(i) != other.extent(i)
                    or self.intent(i) != other.intent(i)):
                return False
        return set(self.edges) == set(other.edges)

    def __repr__(self):
        return (f"ConceptLattice({len(self)} concepts, "
                f"{self.edge_count} edges, {self.bottom_mode})")

    def validate(self, ctx: Context) -> None:
        """Check structural invariants (test helper; linear-to-quadratic).

        Verifies mutual closure of every concept, pairwise-distinct extents
        and intents, strict extent containment along every edge, and in
        completed mode the existence of exactly one minimum.  The covering
        (no-concept-strictly-between) property is checked against the
        brute-force referee in the test suite instead, where an independent
        construction exists to compare with.
        """
        exts = set()
        ints = set()
        for i in range(len(self)):
            c = self.concept(i)
            c.validate(ctx)
            exts.add(c.extent)
            ints.add(c.intent)
        if len(exts) != len(self) or len(ints) != len(self):
            raise ValueError("duplicate extents or intents")
        for u, v in self.edges:
            eu, ev = set(self.extent(u)), set(self.extent(v))
            if not ev < eu:
                raise ValueError(f"edge {u}->{v} is not a strict "
                                 "extent containment")
        if self.bottom_mode == COMPLETED and len(self):
            if self.bottom_id is None:
                raise ValueError("completed lattice without bottom_id")
            minima = [i for i, d in enumerate(self.out_degrees()) if d == 0]
            if minima != [self.bottom_id]:
                raise ValueError(f"completed lattice minima {minima} != "
                                 f"[{self.bottom_id}]")


# ---------------------------------------------------------------------------
# python engine
# ---------------------------------------------------------------------------

def _py_build(ctx: Context, condensed: bool, min_support: int,
              on_classify=None) -> Tuple[list, list, list, dict]:
    """Reference build; returns (concept pairs, edges, touches, counters).

    ``on_classify`` is a test seam: when given, it is called as
    ``on_classify(child, siblings, verdict, parent_extent, parent_intent)``
    after every classification, letting the property suite observe each
    decision in its real context without duplicating the walk.
    """
    top = top_concept(ctx)
    dct = ExtentDict()
    dct.seed(top.extent, top.intent)
    eliminations = 0
    support_skips = 0
    if min_support > 0 and ctx.n < min_support:
        return [], [], [], dict(eliminations=0, dict_lookups=0,
                                queue_high_water=0, support_skips=0,
                                dict_entries=1)
    concepts: List[Tuple[ObjectSet, Tuple[int, ...]]] = [
        (top.extent, top.intent)]
    touches: List[int] = []
    pend: List[ChildList] = []
    edges: List[Tuple[int, int]] = []
    high_water = 1

    def prepare(extent, intent, excl, view):
        nonlocal support_skips
        kids, tc = _sprout_counted(extent, excl, view, len(intent))
        kids = sort_children(kids)
        if min_support > 0:
            kept = [c for c in kids if len(c.extent) >= min_support]
            support_skips += len(kids) - len(kept)
            kids = kept
        register_children(dct, kids, intent)
        return kids, tc

    kids, tc = prepare(top.extent, top.intent, None,
                       raw_view(ctx, top.extent, top.intent))
    touches.append(tc)
    pend.append(kids)

    proc = 0
    while proc < len(concepts):
        ext, intent = concepts[proc]
        kids = pend[proc]
        view = condense(kids, ext) if (condensed and kids) else None
        for j, child in enumerate(kids):
            verdict = classify_child(child, len(intent), dct)
            if on_classify is not None:
                on_classify(child, kids, verdict, ext, intent)
            if verdict.kind == "not-closed":
                eliminations += 1
            elif verdict.kind == "closed-existing":
                edges.append((proc, verdict.concept_id))
            else:
                cid = len(concepts)
                kint = tuple(sorted(intent + child.class_attrs))
                dct.confirm(child.extent, kint, cid)
                concepts.append((child.extent, kint))
                edges.append((proc, cid))
                waiting = len(concepts) - proc - 1
                if waiting > high_water:
                    high_water = waiting
                if condensed:
                    kids2, tc2 = prepare(child.extent, kint, j, view)
                else:
                    kids2, tc2 = prepare(child.extent, kint, None,
                                         raw_view(ctx, child.extent, kint))
                touches.append(tc2)
                pend.append(kids2)
        proc += 1
    return concepts, edges, touches, dict(
        eliminations=eliminations, dict_lookups=dct.lookups,
        queue_high_water=high_water, support_skips=support_skips,
        dict_entries=len(dct))


# ---------------------------------------------------------------------------
# engine dispatch
# ---------------------------------------------------------------------------

def _resolve_engine(ctx: Context, engine: str) -> str:
    if engine == "auto":
        return "kernel" if ctx.n * ctx.m >= _KERNEL_MIN_CELLS else "python"
    if engine in ("python", "kernel"):
        return engine
    raise ValueError(f"unknown engine {engine!r} "
                     "(expected 'auto', 'python' or 'kernel')")


def _build(ctx: Context, condensed: bool, min_support: int,
           engine: str) -> Tuple[ConceptLattice, BuildStats]:
    chosen = _resolve_engine(ctx, engine)
    if chosen == "kernel":
        from . import _kernel
        (nc, xi, xd, ii, idt, eu, ev, tch,
         counters) = _kernel.build_arrays(ctx.n, ctx.m, ctx.rows,
                                          condensed=condensed,
                                          min_support=min_support)
        lat = ConceptLattice._from_arrays(ctx.m, nc, xi[:nc + 1], xd,
                                          ii[:nc + 1], idt, eu, ev)
        stats = BuildStats(touches_per_concept=tch, **counters)
    else:
        pairs, edges, touches, counters = _py_build(ctx, condensed,
                                                    min_support)
        lat = ConceptLattice._from_pairs(ctx.m, pairs, edges)
        stats = BuildStats(touches_per_concept=touches, **counters)
    return lat, stats


# ---------------------------------------------------------------------------
# public builders
# ---------------------------------------------------------------------------

def build_lattice_two_level(ctx: Context, *,
                            engine: str = "auto"
                            ) -> Tuple[ConceptLattice, BuildStats]:
    """Construct the natural lattice with per-parent condensed views.

    Returns every concept with a nonempty extent plus the top concept, with
    exactly the covering edges, ids in confirmation (BFS) order.  Each
    concept's sprout cost is bounded by the summed condensed list lengths
    of its extent in its parent's view.
    """
    return _build(ctx, condensed=True, min_support=0, engine=engine)


def build_lattice_bfs_basic(ctx: Context, *,
                            engine: str = "auto"
                            ) -> Tuple[ConceptLattice, BuildStats]:
    """Construct the same lattice from raw adjacency lists (no condensation).

    Byte-identical output to :func:`build_lattice_two_level` (the test
    suite asserts it); only the work counters differ.
    """
    return _build(ctx, condensed=False, min_support=0, engine=engine)


def complete_bottom(lat: ConceptLattice, ctx: Context) -> ConceptLattice:
    """Adjoin (or designate) the minimum element of a natural lattice.

    If some concept already carries every attribute it is the minimum and
    is just marked; otherwise the formal bottom (empty extent, all
    attributes) is appended with edges from every previously minimal
    concept.  The result equals the full formal concept set.
    """
    if lat.bottom_mode == COMPLETED:
        raise ValueError("lattice is already in completed mode")
    for i in range(len(lat)):
        if len(lat.intent(i)) == ctx.m:
            return ConceptLattice(
                lat._m, pairs=lat._pairs,
                arrays=None if lat._xi is None else (lat._xi, lat._xd,
                                                     lat._ii, lat._idt),
                edge_list=lat._edge_list,
                edge_arrays=None if lat._eu is None else (lat._eu, lat._ev),
                bottom_mode=COMPLETED, top_id=lat.top_id, bottom_id=i)
    preds = [i for i, d in enumerate(lat.out_degrees()) if d == 0]
    return ConceptLattice(
        lat._m, pairs=lat._pairs,
        arrays=None if lat._xi is None else (lat._xi, lat._xd,
                                             lat._ii, lat._idt),
        edge_list=lat._edge_list,
        edge_arrays=None if lat._eu is None else (lat._eu, lat._ev),
        bottom_mode=COMPLETED, top_id=lat.top_id,
        bottom_id=lat._base, bottom_preds=preds)


def enumerate_concepts(ctx: Context, *,
                       engine: str = "auto") -> Sequence[Concept]:
    """All concepts with nonempty extents (plus top), without edges.

    Runs the full two-level machinery -- closure and existence tests
    included -- and simply skips the edge bookkeeping.  Every concept is
    produced exactly once; the result is a lazy sequence in confirmation
    order.
    """
    lat, _ = _build(ctx, condensed=True, min_support=0, engine=engine)
    return lat.concepts


def build_iceberg(ctx: Context, min_support: int,
                  mode: str = "extent-dict", *,
                  engine: str = "auto") -> ConceptLattice:
    """The sub-lattice of concepts whose support meets the threshold.

    Children falling under ``min_support`` are dropped at sprout time,
    pruning their whole subtrees (support only shrinks downward).  The
    result is the induced sub-diagram of the natural lattice on the
    surviving concepts: that set is upward closed, so its covering edges
    are the full lattice's covering edges restricted to it.  An empty
    lattice results when even the top concept falls under the threshold.

    ``mode`` selects the closure/existence machinery: ``extent-dict`` uses
    the global extent dictionary, ``intent-dict`` tests existence on intent
    keys and closedness by sibling containment.  Outputs are identical.
    """
    lat, _ = _iceberg_with_stats(ctx, min_support, mode, engine)
    return lat


def _iceberg_with_stats(ctx: Context, min_support: int, mode: str,
                        engine: str) -> Tuple[ConceptLattice, BuildStats]:
    if min_support < 1:
        raise ValueError(f"min_support must be >= 1, got {min_support}")
    if mode == "extent-dict":
        return _build(ctx, condensed=True, min_support=min_support,
                      engine=engine)
    if mode != "intent-dict":
        raise ValueError(f"unknown iceberg mode {mode!r} "
                         "(expected 'extent-dict' or 'intent-dict')")
    pairs, edges, touches, counters = _py_iceberg_intent(ctx, min_support)
    lat = ConceptLattice._from_pairs(ctx.m, pairs, edges)
    return lat, BuildStats(touches_per_concept=touches, **counters)


def _py_iceberg_intent(ctx: Context,
                       min_support: int) -> Tuple[list, list, list, dict]:
    """Iceberg build keyed on intents, closure by sibling containment.

    No global extent dictionary: a candidate's closedness is decided by
    looking for a strictly containing sibling extent, and a closed
    candidate's intent -- which at that point is exactly parent intent plus
    class attributes -- is the key for the have-we-seen-it test.  Over the
    support-filtered child lists this is equivalent to the extent-keyed
    test: a containment witness always has strictly larger support than the
    candidate, so the filter can never remove it.
    """
    top = top_concept(ctx)
    eliminations = 0
    support_skips = 0
    lookups = 0
    if ctx.n < min_support:
        return [], [], [], dict(eliminations=0, dict_lookups=0,
                                queue_high_water=0, support_skips=0,
                                dict_entries=0)
    intent_ids: Dict[Tuple[int, ...], int] = {top.intent: 0}
    concepts: List[Tuple[ObjectSet, Tuple[int, ...]]] = [
        (top.extent, top.intent)]
    touches: List[int] = []
    pend: List[ChildList] = []
    edges: List[Tuple[int, int]] = []
    high_water = 1

    def prepare(extent, intent, excl, view):
        nonlocal support_skips
        kids, tc = _sprout_counted(extent, excl, view, len(intent))
        kids = sort_children(kids)
        kept = [c for c in kids if len(c.extent) >= min_support]
        support_skips += len(kids) - len(kept)
        return kept, tc

    kids, tc = prepare(top.extent, top.intent, None,
                       raw_view(ctx, top.extent, top.intent))
    touches.append(tc)
    pend.append(kids)

    proc = 0
    while proc < len(concepts):
        ext, intent = concepts[proc]
        kids = pend[proc]
        view = condense(kids, ext) if kids else None
        for j, child in enumerate(kids):
            if not is_closed_by_siblings(child, kids):
                eliminations += 1
                continue
            kint = tuple(sorted(intent + child.class_attrs))
            lookups += 1
            cid = intent_ids.get(kint)
            if cid is not None:
                edges.append((proc, cid))
                continue
            cid = len(concepts)
            intent_ids[kint] = cid
            concepts.append((child.extent, kint))
            edges.append((proc, cid))
            waiting = len(concepts) - proc - 1
            if waiting > high_water:
                high_water = waiting
            kids2, tc2 = prepare(child.extent, kint, j, view)
            touches.append(tc2)
            pend.append(kids2)
        proc += 1
    return concepts, edges, touches, dict(
        eliminations=eliminations, dict_lookups=lookups,
        queue_high_water=high_water, support_skips=support_skips,
        dict_entries=len(intent_ids))


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

def canonical_serialization(lat: ConceptLattice) -> bytes:
    """Order-independent byte form for whole-lattice equality checks.

    Concepts are listed by (support descending, intent ascending) -- a
    total order because intents are pairwise distinct -- and edges are
    renumbered through that order and sorted.  Two lattices are equal as
    labeled orders iff their serializations are byte-identical.
    """
    k = len(lat)
    order = sorted(range(k), key=lambda i: (-lat.support(i), lat.intent(i)))
    rank = {cid: r for r, cid in enumerate(order)}
    lines = [f"mode={lat.bottom_mode}".encode()]
    for cid in order:
        ext = ",".join(map(str, lat.extent(cid)))
        itt = ",".join(map(str, lat.intent(cid)))
        lines.append(f"C {ext}|{itt}".encode())
    for u, v in sorted((rank[u], rank[v]) for u, v in lat.edges):
        lines.append(f"E {u} {v}".encode())
    return b"\n".join(lines) + b"\n"
