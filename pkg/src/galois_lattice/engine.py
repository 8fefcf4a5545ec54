"""Algorithmic core: child generation, condensation, closure testing.

The builders walk the lattice top-down, breadth-first.  For one concept at a
time this module answers the central question -- *which concepts sit
immediately below this one?* -- using three cooperating pieces:

* :func:`sprout` scans the adjacency lists of the parent's extent once and
  groups attributes whose restricted columns coincide.  Each group is an
  equivalence class; its accumulated extent together with the class's
  attributes is a candidate child (:class:`ChildEntry`).

* :func:`condense` rewrites the adjacency lists of a parent's extent in
  terms of its child classes.  Grandchild generation then scans one symbol
  per class instead of one per attribute, which is where the two-level
  builder gets its speed: rows shrink at every level.

* A candidate child is a real concept iff its attribute set is closed.
  Closedness is decided two interchangeable ways: :func:`classify_child`
  compares the candidate's intent size against the best intent recorded in
  the global :class:`ExtentDict` (the production path), while
  :func:`is_closed_by_siblings` tests for a strictly containing sibling
  extent (used by the intent-keyed iceberg mode and as a cross-check).

The correctness-critical detail is *verdict order* in ``classify_child``: a
dictionary entry can simultaneously carry a larger known intent and a
confirmed concept id, and the larger-intent test must win -- the candidate
is then a duplicate generated with too few attributes, not a second edge to
the existing concept.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .context import AttrSet, Concept, Context, ObjectSet

__all__ = [
    "ChildEntry", "ChildList", "CondensedView", "ExtentDict",
    "ClosureVerdict", "CLOSED_NEW", "NOT_CLOSED", "closed_existing",
    "sprout", "condense", "sort_children", "classify_child",
    "register_children", "is_closed_by_siblings", "prop1_child_extent",
    "raw_view",
]


@dataclass(frozen=True)
class ChildEntry:
    """One candidate child: an equivalence class of attributes and its extent.

    ``extent`` is the parent extent restricted to any attribute of the
    class (all of them give the same restriction -- that is what makes it a
    class); ``class_attrs`` are the original attribute ids of the class;
    ``candidate_intent_size`` is |parent intent| + |class_attrs|, the size
    the candidate's intent would have if it were closed.
    """

    extent: ObjectSet
    class_attrs: AttrSet
    candidate_intent_size: int


ChildList = List[ChildEntry]


class CondensedView:
    """Per-parent reduced adjacency: one symbol per child class.

    ``content[i]`` is the attribute set of child class ``i``; ``cnbr[a]``
    (defined for objects of the parent extent) lists the child indices whose
    extents contain ``a``.  Both directions agree: ``i in cnbr[a]`` iff
    ``a in children[i].extent``.
    """

    __slots__ = ("content", "cnbr")

    def __init__(self, content: Sequence[AttrSet],
                 cnbr: Dict[int, Tuple[int, ...]]):
        self.content = tuple(tuple(c) for c in content)
        self.cnbr = cnbr

    def touch_budget(self, extent: ObjectSet,
                     excluded_index: Optional[int] = None) -> int:
        """Scan cost over ``extent``: sum of list lengths minus exclusions."""
        total = 0
        for a in extent:
            lst = self.cnbr[a]
            total += len(lst)
            if excluded_index is not None and excluded_index in lst:
                total -= 1
        return total


class _Entry:
    __slots__ = ("best_intent", "concept_id")

    def __init__(self, best_intent: AttrSet,
                 concept_id: Optional[int] = None):
        self.best_intent = best_intent
        self.concept_id = concept_id

    @property
    def confirmed(self) -> bool:
        return self.concept_id is not None


class ExtentDict:
    """Global dictionary keyed by canonical extent.

    Each entry keeps the largest intent any sprout has associated with that
    extent so far (``best_intent``, monotonically growing) and, once the
    extent is confirmed as a concept, its id.  ``lookups`` counts every
    search, whether it hits or misses; seeding the top concept does not
    count.

    When ``debug_context`` is set, every mutation re-checks the dominance
    invariant best_intent ⊆ attr(extent) -- slow, test-only.
    """

    def __init__(self, debug_context: Optional[Context] = None):
        self._entries: Dict[ObjectSet, _Entry] = {}
        self.lookups = 0
        self.debug_context = debug_context

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, extent: ObjectSet) -> bool:
        return extent in self._entries

    def entry(self, extent: ObjectSet) -> Optional[_Entry]:
        """Uncounted peek, for tests and invariant checks."""
        return self._entries.get(extent)

    def seed(self, extent: ObjectSet, intent: AttrSet,
             concept_id: int = 0) -> None:
        """Insert the top concept as already confirmed (not a counted lookup)."""
        self._entries[extent] = _Entry(intent, concept_id)
        self._check(extent)

    def lookup(self, extent: ObjectSet) -> Optional[_Entry]:
        self.lookups += 1
        return self._entries.get(extent)

    def record(self, extent: ObjectSet, intent: AttrSet) -> None:
        """Counted find-or-insert keeping the larger intent (ties keep old)."""
        self.lookups += 1
        ent = self._entries.get(extent)
        if ent is None:
            self._entries[extent] = _Entry(intent)
        elif len(intent) > len(ent.best_intent):
            ent.best_intent = intent
        self._check(extent)

    def confirm(self, extent: ObjectSet, intent: AttrSet,
                concept_id: int) -> None:
        """Mark an extent as a confirmed concept with its full intent."""
        ent = self._entries.get(extent)
        if ent is None:
            self._entries[extent] = _Entry(intent, concept_id)
        else:
            ent.best_intent = intent
            ent.concept_id = concept_id
        self._check(extent)

    def _check(self, extent: ObjectSet) -> None:
        if self.debug_context is None:
            return
        from .context import derive_attr
        ent = self._entries[extent]
        closure = set(derive_attr(extent, self.debug_context))
        if not set(ent.best_intent) <= closure:
            raise AssertionError(
                f"dominance violated: {ent.best_intent} not within "
                f"attr({extent})")


@dataclass(frozen=True)
class ClosureVerdict:
    """Outcome of the closure/existence test for one candidate child."""

    kind: str                       # "closed-new" | "closed-existing" | "not-closed"
    concept_id: Optional[int] = None


CLOSED_NEW = ClosureVerdict("closed-new")
NOT_CLOSED = ClosureVerdict("not-closed")


def closed_existing(concept_id: int) -> ClosureVerdict:
    return ClosureVerdict("closed-existing", concept_id)


def raw_view(ctx: Context, parent_extent: ObjectSet,
             parent_intent: AttrSet) -> CondensedView:
    """Adjacency of the parent extent as a view with singleton classes.

    This is the starting view: before any condensation each attribute
    outside the parent intent is its own class.  The root sprout and every
    sprout of the single-level builder run over such a view, so one
    ``sprout`` implementation serves both builders.
    """
    skip = set(parent_intent)
    outside = [i for i in range(ctx.m) if i not in skip]
    pos = {i: k for k, i in enumerate(outside)}
    content = [(i,) for i in outside]
    cnbr = {a: tuple(pos[i] for i in ctx.rows[a] if i not in skip)
            for a in parent_extent}
    return CondensedView(content, cnbr)


def _sprout_counted(parent_extent: ObjectSet,
                    excluded_index: Optional[int],
                    view: CondensedView,
                    parent_intent_size: int) -> Tuple[ChildList, int]:
    """Sprout plus its element-touch count (one touch per scanned symbol)."""
    acc: Dict[int, List[int]] = {}
    touches = 0
    for a in parent_extent:
        for s in view.cnbr[a]:
            if s == excluded_index:
                continue
            touches += 1
            if s in acc:
                acc[s].append(a)
            else:
                acc[s] = [a]
    groups: Dict[Tuple[int, ...], List[int]] = {}
    for s in sorted(acc):
        key = tuple(acc[s])
        if key in groups:
            groups[key].extend(view.content[s])
        else:
            groups[key] = list(view.content[s])
    out: ChildList = []
    for key, atts in groups.items():
        atts_t = tuple(sorted(atts))
        out.append(ChildEntry(key, atts_t,
                              parent_intent_size + len(atts_t)))
    return out, touches


def sprout(parent_extent: ObjectSet, excluded_index: Optional[int],
           view: CondensedView, parent_intent_size: int = 0) -> ChildList:
    """Compute all candidate children of one concept in a single scan.

    Walks ``view.cnbr[a]`` for every object ``a`` of the parent extent,
    skipping the parent's own class index (``excluded_index``, None for the
    root), and accumulates per symbol the objects that carry it.  Symbols
    with equal accumulated extents are merged into one class whose attribute
    set is the union of their ``content`` sets.  Classes with empty extents
    never materialize -- their symbols simply occur in no list.

    Total element touches are exactly the summed list lengths minus the
    occurrences of the excluded index.
    """
    kids, _ = _sprout_counted(parent_extent, excluded_index, view,
                              parent_intent_size)
    return kids


def sort_children(children: ChildList) -> ChildList:
    """Processing order: extent size descending, smallest class attribute ascending.

    The key is total on any one child list -- sibling classes partition the
    remaining attributes, so their smallest attributes differ -- which makes
    every downstream ordering deterministic.
    """
    return sorted(children,
                  key=lambda c: (-len(c.extent), c.class_attrs[0]))


def condense(children: ChildList,
             parent_extent: ObjectSet) -> CondensedView:
    """Build the reduced adjacency of a parent from its (ordered) children.

    ``content`` keeps each class's original attributes so that descendant
    intents can be reconstructed; ``cnbr`` lists per object the child
    classes containing it, in ascending class order.  Cost is linear in the
    summed child extent sizes.
    """
    lists: Dict[int, List[int]] = {a: [] for a in parent_extent}
    for j, child in enumerate(children):
        for a in child.extent:
            lists[a].append(j)
    return CondensedView([c.class_attrs for c in children],
                         {a: tuple(v) for a, v in lists.items()})


def classify_child(child: ChildEntry, parent_intent_size: int,
                   dct: ExtentDict) -> ClosureVerdict:
    """Decide closed-new / closed-existing / not-closed for one candidate.

    The candidate's intent would have ``parent_intent_size +
    |class_attrs|`` attributes.  If the dictionary knows a strictly larger
    intent for the same extent, some other branch found attributes this one
    missed, so the candidate is not closed.  Otherwise it is closed, and it
    is either the first confirmation of that extent or a duplicate of an
    already-confirmed concept.

    The larger-intent test deliberately precedes the confirmed-id test; see
    the module docstring.
    """
    cand = parent_intent_size + len(child.class_attrs)
    ent = dct.lookup(child.extent)
    if ent is None:
        return CLOSED_NEW
    if len(ent.best_intent) > cand:
        return NOT_CLOSED
    if ent.concept_id is not None:
        return closed_existing(ent.concept_id)
    return CLOSED_NEW


def register_children(dct: ExtentDict, children: ChildList,
                      parent_intent: AttrSet) -> None:
    """Publish a fresh child list into the global dictionary.

    Every child extent is recorded with the candidate intent ``parent
    intent ∪ class attributes``; on collision the larger intent wins and
    ties keep the existing entry.  Registration happens at sprout time --
    immediately when a concept is confirmed -- so that by the time any
    same-level sibling is classified, all larger-extent siblings have
    already published their children.  That publication order is exactly
    what lets ``classify_child`` detect non-closed candidates.
    """
    for child in children:
        intent = tuple(sorted(parent_intent + child.class_attrs))
        dct.record(child.extent, intent)


def is_closed_by_siblings(child: ChildEntry,
                          siblings: ChildList) -> bool:
    """Closure by the sibling characterization: no strictly larger twin.

    A candidate is not closed iff some sibling's extent strictly contains
    its extent (that sibling's class then extends the candidate's intent).
    Agrees with :func:`classify_child` on every input -- the property tests
    assert the equivalence.
    """
    cext = set(child.extent)
    for sib in siblings:
        if len(sib.extent) > len(cext) and cext < set(sib.extent):
            return False
    return True


def prop1_child_extent(c: Concept, i: int,
                       ctx: Context) -> Optional[ObjectSet]:
    """Restrict a concept's extent by one outside attribute.

    For ``i`` outside the intent, ``ext(c) ∩ cols[i]`` is either empty or
    the extent of a concept below ``c`` -- restricting by a single
    attribute always lands on a closed set.  Returns None when empty.
    """
    if i < 0 or i >= ctx.m:
        raise ValueError(f"attribute id {i} out of range [0, {ctx.m})")
    if i in c.intent:
        raise ValueError(f"attribute {i} is already in the intent")
    ext = set(c.extent).intersection(ctx.cols[i])
    if not ext:
        return None
    return tuple(sorted(ext))
