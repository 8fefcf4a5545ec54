"""The algorithmic core: child generation, condensation, closure tests.

Golden values are stated on the two fixture contexts with 0-based ids.
For the 5x7 context the name mapping is objects a..e = 0..4 and attribute
labels "1".."7" = ids 0..6; for the 4x4 context objects a..d = 0..3 and
labels "1".."4" = ids 0..3.  All expected sets were derived by hand from
the cross-tables and double-checked with the oracle.
"""
import pytest

from galois_lattice import (
    ChildEntry, Context, ExtentDict, classify_child, close_attrs, condense,
    derive_attr, derive_obj, is_closed_attrs, is_closed_by_siblings,
    prop1_child_extent, raw_view, register_children, sort_children, sprout,
    Concept,
)
from galois_lattice.builders import _py_build
from galois_lattice.engine import _sprout_counted

from conftest import random_context


def root_children(ctx, sort=True):
    view = raw_view(ctx, tuple(range(ctx.n)), ())
    kids = sprout(tuple(range(ctx.n)), None, view)
    return sort_children(kids) if sort else kids


def as_pairs(children):
    return {(c.extent, c.class_attrs) for c in children}


class TestSprout:
    def test_root_small(self, ctx4):
        assert as_pairs(root_children(ctx4)) == {
            ((0, 1, 2), (0,)), ((1, 3), (1, 3)), ((0, 2), (2,))}

    def test_root_worked(self, ctx5):
        assert as_pairs(root_children(ctx5)) == {
            ((0, 1, 2), (0, 5)), ((3, 4), (1,)), ((1, 3), (2, 4)),
            ((1, 2), (3,)), ((4,), (6,))}

    def test_candidate_intent_sizes(self, ctx5):
        sizes = {c.extent: c.candidate_intent_size
                 for c in root_children(ctx5)}
        assert sizes == {(0, 1, 2): 2, (3, 4): 1, (1, 3): 2,
                         (1, 2): 1, (4,): 1}

    def test_second_level_with_exclusion(self, ctx4):
        kids = root_children(ctx4)
        view = condense(kids, (0, 1, 2, 3))
        sub = sprout((0, 1, 2), 0, view, parent_intent_size=1)
        assert as_pairs(sub) == {((0, 2), (2,)), ((1,), (1, 3))}
        sizes = {c.extent: c.candidate_intent_size for c in sub}
        assert sizes == {(0, 2): 2, (1,): 3}

    def test_empty_child_list(self):
        ctx = Context(2, 2, [[0], []])
        view = raw_view(ctx, (1,), ())
        assert sprout((1,), None, view) == []

    def test_touch_count_equals_budget(self, rng):
        for _ in range(25):
            ctx = random_context(rng, rng.randint(1, 9), rng.randint(1, 9), 0.5)
            ext = tuple(range(ctx.n))
            kids = sort_children(sprout(ext, None, raw_view(ctx, ext, ())))
            if not kids:
                continue
            view = condense(kids, ext)
            for j, child in enumerate(kids):
                _, touches = _sprout_counted(child.extent, j, view,
                                             child.candidate_intent_size)
                assert touches == view.touch_budget(child.extent, j)

    def test_classes_merge_equal_columns(self):
        ctx = Context(3, 3, [[0, 1], [0, 1], [2]])
        kids = root_children(ctx)
        assert as_pairs(kids) == {((0, 1), (0, 1)), ((2,), (2,))}


class TestSortChildren:
    def test_worked_order(self, ctx5):
        kids = root_children(ctx5)
        assert kids[0].extent == (0, 1, 2)      # largest extent first
        assert kids[-1].extent == (4,)          # singleton last
        assert [c.class_attrs for c in kids] == [
            (0, 5), (1,), (2, 4), (3,), (6,)]   # ties by smallest attr

    def test_small_order(self, ctx4):
        kids = root_children(ctx4)
        assert [c.class_attrs for c in kids] == [(0,), (1, 3), (2,)]

    def test_equal_sizes_by_attr(self):
        kids = [ChildEntry((0,), (4,), 1), ChildEntry((1,), (2,), 1),
                ChildEntry((2,), (3,), 1)]
        assert [c.class_attrs for c in sort_children(kids)] == [
            (2,), (3,), (4,)]


class TestCondense:
    def test_worked_reduction(self, ctx5):
        kids = root_children(ctx5)
        view = condense(kids, tuple(range(5)))
        # object b (id 1): raw row has 5 attributes, condensed list 3 classes
        assert len(ctx5.rows[1]) == 5
        assert view.cnbr[1] == (0, 2, 3)
        # object a (id 0) appears in a single class
        assert view.cnbr[0] == (0,)

    def test_bidirectional_consistency(self, rng):
        for _ in range(25):
            ctx = random_context(rng, rng.randint(1, 9), rng.randint(1, 9), 0.4)
            ext = tuple(range(ctx.n))
            kids = sort_children(sprout(ext, None, raw_view(ctx, ext, ())))
            view = condense(kids, ext)
            for a in ext:
                for i, child in enumerate(kids):
                    assert (i in view.cnbr[a]) == (a in child.extent)
            assert sum(len(v) for v in view.cnbr.values()) == \
                sum(len(c.extent) for c in kids)

    def test_content_preserves_class_attrs(self, ctx5):
        kids = root_children(ctx5)
        view = condense(kids, tuple(range(5)))
        assert view.content == tuple(c.class_attrs for c in kids)

    def test_single_covering_child(self):
        ctx = Context(2, 1, [[0], [0]])
        kids = root_children(ctx)
        view = condense(kids, (0, 1))
        assert all(view.cnbr[a] == (0,) for a in (0, 1))


class TestExtentDict:
    def test_register_keeps_larger_intent(self, ctx5):
        # publish the children of (abc, {1,6}) then of (bd, {3,5}):
        # extent {b} is first recorded with a 4-attribute intent, then
        # upgraded to the 5-attribute one
        dct = ExtentDict()
        abc = sprout((0, 1, 2), None, raw_view(ctx5, (0, 1, 2), (0, 5)), 2)
        register_children(dct, abc, (0, 5))
        assert dct.entry((1,)).best_intent == (0, 2, 4, 5)
        bd = sprout((1, 3), None, raw_view(ctx5, (1, 3), (2, 4)), 2)
        register_children(dct, bd, (2, 4))
        assert dct.entry((1,)).best_intent == (0, 2, 3, 4, 5)

    def test_register_records_grandchild(self, ctx5):
        # after the root sprout and the sprout of (abc, {1,6}), the extent
        # {b,c} is known with candidate intent {1,4,6}
        dct = ExtentDict()
        register_children(dct, root_children(ctx5), ())
        abc = sprout((0, 1, 2), None, raw_view(ctx5, (0, 1, 2), (0, 5)), 2)
        register_children(dct, abc, (0, 5))
        assert dct.entry((1, 2)).best_intent == (0, 3, 5)

    def test_tie_keeps_existing(self):
        dct = ExtentDict()
        dct.record((0, 1), (2, 5))
        dct.record((0, 1), (3, 4))          # same size: no replacement
        assert dct.entry((0, 1)).best_intent == (2, 5)
        dct.record((0, 1), (1, 2, 3))       # strictly larger: replaces
        assert dct.entry((0, 1)).best_intent == (1, 2, 3)

    def test_lookup_counting(self):
        dct = ExtentDict()
        dct.seed((0,), (0,))                # seeding is not counted
        assert dct.lookups == 0
        dct.lookup((0,))
        dct.record((1,), (0,))
        assert dct.lookups == 2
        assert dct.entry((1,)) is not None  # peeking is not counted
        assert dct.lookups == 2

    def test_confirm_sets_id(self):
        dct = ExtentDict()
        dct.record((2, 3), (1,))
        assert not dct.entry((2, 3)).confirmed
        dct.confirm((2, 3), (1, 4), 9)
        ent = dct.entry((2, 3))
        assert ent.confirmed and ent.concept_id == 9
        assert ent.best_intent == (1, 4)

    def test_dominance_assertion_in_debug_mode(self, ctx4):
        dct = ExtentDict(debug_context=ctx4)
        dct.record((0, 2), (0, 2))          # attr({a,c}) = {1,3}: fine
        with pytest.raises(AssertionError):
            dct.record((0, 1, 2), (0, 1))   # {2} not shared by a, b, c


class TestClassifyChild:
    def test_not_closed_by_registered_sibling_subtree(self, ctx5):
        # candidate (bc, {4}) at the root, after {b,c} was registered with
        # the larger intent {1,4,6} through the first child's sprout
        dct = ExtentDict()
        dct.record((1, 2), (0, 3, 5))
        verdict = classify_child(ChildEntry((1, 2), (3,), 1), 0, dct)
        assert verdict.kind == "not-closed"

    def test_not_closed_second_level(self, ctx5):
        # candidate (b, {1,3,5,6}) while the dictionary knows {1,3,4,5,6}
        dct = ExtentDict()
        dct.record((1,), (0, 2, 3, 4, 5))
        verdict = classify_child(ChildEntry((1,), (2, 4), 4), 2, dct)
        assert verdict.kind == "not-closed"

    def test_absent_extent_is_new(self):
        dct = ExtentDict()
        verdict = classify_child(ChildEntry((5, 6), (1,), 1), 0, dct)
        assert verdict.kind == "closed-new"

    def test_registered_unconfirmed_equal_size_is_new(self):
        dct = ExtentDict()
        dct.record((5, 6), (1, 2))
        verdict = classify_child(ChildEntry((5, 6), (2,), 2), 1, dct)
        assert verdict.kind == "closed-new"

    def test_confirmed_equal_size_is_existing(self):
        dct = ExtentDict()
        dct.confirm((5, 6), (1, 2), 4)
        verdict = classify_child(ChildEntry((5, 6), (2,), 2), 1, dct)
        assert verdict.kind == "closed-existing"
        assert verdict.concept_id == 4

    def test_larger_intent_beats_confirmed_id(self):
        # an entry can be both confirmed and strictly larger than the
        # candidate; the size test must win or a duplicate concept would be
        # linked as an edge
        dct = ExtentDict()
        dct.confirm((5, 6), (1, 2, 3), 4)
        verdict = classify_child(ChildEntry((5, 6), (2,), 2), 1, dct)
        assert verdict.kind == "not-closed"


class TestSiblingClosure:
    def test_small_golden(self, ctx4):
        kids = root_children(ctx4)
        by_ext = {c.extent: c for c in kids}
        assert not is_closed_by_siblings(by_ext[(0, 2)], kids)   # ac < abc
        assert is_closed_by_siblings(by_ext[(0, 1, 2)], kids)
        assert is_closed_by_siblings(by_ext[(1, 3)], kids)

    def test_worked_golden(self, ctx5):
        kids = root_children(ctx5)
        by_ext = {c.extent: c for c in kids}
        assert not is_closed_by_siblings(by_ext[(4,)], kids)     # e < de
        assert not is_closed_by_siblings(by_ext[(1, 2)], kids)   # bc < abc
        assert is_closed_by_siblings(by_ext[(3, 4)], kids)


class TestProp1:
    def test_small_restrictions(self, ctx4):
        top = Concept((0, 1, 2, 3), ())
        assert prop1_child_extent(top, 0, ctx4) == (0, 1, 2)
        assert prop1_child_extent(top, 1, ctx4) == (1, 3)
        assert prop1_child_extent(top, 2, ctx4) == (0, 2)
        assert prop1_child_extent(top, 3, ctx4) == (1, 3)

    def test_worked_restriction(self, ctx5):
        c = Concept((0, 1, 2), (0, 5))
        assert prop1_child_extent(c, 3, ctx5) == (1, 2)

    def test_covering_column_returns_extent(self, ctx4):
        # column 3 covers {a, c}; restricting by it changes nothing
        c = Concept((0, 2), (0,))
        assert prop1_child_extent(c, 2, ctx4) == (0, 2)

    def test_empty_restriction_is_none(self, ctx5):
        c = Concept((0, 1, 2), (0, 5))
        assert prop1_child_extent(c, 6, ctx5) is None

    def test_attribute_in_intent_rejected(self, ctx5):
        with pytest.raises(ValueError):
            prop1_child_extent(Concept((0, 1, 2), (0, 5)), 5, ctx5)
        with pytest.raises(ValueError):
            prop1_child_extent(Concept((0, 1, 2), (0, 5)), 99, ctx5)

    def test_restriction_is_always_closed(self, rng):
        from galois_lattice import oracle_concepts
        for _ in range(15):
            ctx = random_context(rng, rng.randint(1, 8), rng.randint(1, 8), 0.5)
            for c in oracle_concepts(ctx):
                for i in range(ctx.m):
                    if i in c.intent:
                        continue
                    ext = prop1_child_extent(c, i, ctx)
                    if ext is not None:
                        assert derive_obj(derive_attr(ext, ctx), ctx) == ext


class TestStructuralProperties:
    def test_partition_property(self, rng):
        # class attributes of any child list partition the attributes that
        # remain incident, and the class extents are pairwise distinct
        for _ in range(25):
            ctx = random_context(rng, rng.randint(1, 9), rng.randint(1, 9), 0.4)
            from galois_lattice import oracle_concepts
            for con in oracle_concepts(ctx):
                if not con.extent:
                    continue
                view = raw_view(ctx, con.extent, con.intent)
                kids = sprout(con.extent, None, view, len(con.intent))
                seen_attrs = [a for c in kids for a in c.class_attrs]
                res = [i for i in range(ctx.m) if i not in con.intent
                       and set(con.extent) & set(ctx.cols[i])]
                assert sorted(seen_attrs) == sorted(res)
                assert len(seen_attrs) == len(set(seen_attrs))
                extents = [c.extent for c in kids]
                assert len(extents) == len(set(extents))

    def test_characterization_equivalence_and_truth(self, rng):
        # dictionary verdicts, sibling containment, and ground-truth
        # closure agree for every child of every concept, in the real
        # build interleave
        for _ in range(20):
            ctx = random_context(rng, rng.randint(1, 9), rng.randint(1, 9),
                                 rng.choice([0.3, 0.5, 0.7]))

            def check(child, siblings, verdict, pext, pint):
                dict_closed = verdict.kind != "not-closed"
                assert is_closed_by_siblings(child, siblings) == dict_closed
                cand = tuple(sorted(pint + child.class_attrs))
                assert is_closed_attrs(cand, ctx) == dict_closed

            _py_build(ctx, condensed=True, min_support=0, on_classify=check)
            _py_build(ctx, condensed=False, min_support=0, on_classify=check)

    def test_not_closed_witness(self, rng):
        # every eliminated candidate has a larger sibling one of whose own
        # child classes reproduces the candidate's extent with a strictly
        # larger intent
        for _ in range(15):
            ctx = random_context(rng, rng.randint(1, 8), rng.randint(1, 8), 0.5)

            def check(child, siblings, verdict, pext, pint):
                if verdict.kind != "not-closed":
                    return
                cand = child.candidate_intent_size
                for sib in siblings:
                    if not (len(sib.extent) > len(child.extent)
                            and set(child.extent) < set(sib.extent)):
                        continue
                    sint = tuple(sorted(pint + sib.class_attrs))
                    grand = sprout(sib.extent, None,
                                   raw_view(ctx, sib.extent, sint),
                                   len(sint))
                    for g in grand:
                        if (g.extent == child.extent
                                and g.candidate_intent_size > cand):
                            return  # witness found
                raise AssertionError(
                    f"no witness for eliminated {child} under {pext}")

            _py_build(ctx, condensed=True, min_support=0, on_classify=check)
