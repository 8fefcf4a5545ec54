"""The brute-force referee itself.

Before the oracle is trusted against the builders it is checked three ways:
hand-enumerated golden values on the fixture contexts, agreement between
its two independent strategies (column-intersection fixpoint vs exhaustive
closure of all attribute subsets), and structural laws of the covering
relation.
"""
import itertools

import pytest

from galois_lattice import (
    Concept, Context, OracleGuardError, close_attrs, oracle_concepts,
    oracle_extents, oracle_extents_exhaustive, oracle_hasse,
)

from conftest import random_context


class TestExtents:
    def test_golden_small(self, ctx4):
        assert oracle_extents(ctx4) == {
            (0, 1, 2, 3), (0, 1, 2), (1, 3), (0, 2), (1,), ()}

    def test_golden_worked(self, ctx5):
        assert oracle_extents(ctx5) == {
            (0, 1, 2, 3, 4), (0, 1, 2), (3, 4), (1, 3), (1, 2),
            (1,), (3,), (4,), ()}

    def test_empty_relation(self):
        ctx = Context(3, 2, [[], [], []])
        assert oracle_extents(ctx) == {(0, 1, 2), ()}

    def test_strategies_agree(self, rng):
        for _ in range(40):
            ctx = random_context(rng, rng.randint(0, 9), rng.randint(0, 9),
                                 rng.choice([0.1, 0.3, 0.5, 0.7, 0.9]))
            assert oracle_extents(ctx) == oracle_extents_exhaustive(ctx)

    def test_exhaustive_guard(self):
        ctx = Context(1, 16, [[0]])
        with pytest.raises(OracleGuardError):
            oracle_extents_exhaustive(ctx)


class TestConcepts:
    def test_concept_counts(self, ctx4, ctx5):
        assert len(oracle_concepts(ctx4)) == 6
        assert len(oracle_concepts(ctx5)) == 9

    def test_concepts_are_closure_fixed_points(self, rng):
        for _ in range(20):
            ctx = random_context(rng, rng.randint(1, 7), rng.randint(1, 7), 0.4)
            concepts = oracle_concepts(ctx)
            intents = {c.intent for c in concepts}
            # every intent is closed, every closed attribute set is an intent
            for c in concepts:
                c.validate(ctx)
            for k in range(ctx.m + 1):
                for J in itertools.combinations(range(ctx.m), k):
                    assert (close_attrs(J, ctx) == J) == (J in intents)

    def test_staircase_chain(self):
        # nested rows with one empty row: closures form a 5-element chain
        ctx = Context(4, 4, [[], [0], [0, 1], [0, 1, 2]])
        concepts = oracle_concepts(ctx)
        assert len(concepts) == 5
        edges = oracle_hasse(concepts)
        assert len(edges) == 4
        exts = sorted((c.extent for c in concepts), key=len)
        for small, big in zip(exts, exts[1:]):
            assert set(small) < set(big)


class TestHasse:
    def test_golden_count(self, ctx4):
        assert len(oracle_hasse(oracle_concepts(ctx4))) == 7

    def test_single_concept_no_edges(self):
        ctx = Context(1, 1, [[0]])
        concepts = oracle_concepts(ctx)
        assert len(concepts) == 1
        assert oracle_hasse(concepts) == set()

    def test_edges_are_strict_covers(self, rng):
        for _ in range(20):
            ctx = random_context(rng, rng.randint(1, 8), rng.randint(1, 8), 0.5)
            concepts = oracle_concepts(ctx)
            edges = oracle_hasse(concepts)
            exts = {c.extent: set(c.extent) for c in concepts}
            for u, v in edges:
                assert exts[v.extent] < exts[u.extent]
                for w in concepts:
                    between = exts[w.extent]
                    assert not (exts[v.extent] < between < exts[u.extent])

    def test_transitive_closure_equals_inclusion(self, rng):
        for _ in range(10):
            ctx = random_context(rng, rng.randint(1, 6), rng.randint(1, 6), 0.5)
            concepts = sorted(oracle_concepts(ctx),
                              key=lambda c: (-len(c.extent), c.extent))
            edges = oracle_hasse(set(concepts))
            index = {c: k for k, c in enumerate(concepts)}
            k = len(concepts)
            reach = [[False] * k for _ in range(k)]
            for u, v in edges:
                reach[index[u]][index[v]] = True
            for mid in range(k):
                for a in range(k):
                    if reach[a][mid]:
                        for b in range(k):
                            if reach[mid][b]:
                                reach[a][b] = True
            for a in range(k):
                for b in range(k):
                    want = set(concepts[b].extent) < set(concepts[a].extent)
                    assert reach[a][b] == want


class TestGuard:
    def test_extent_guard_trips(self, monkeypatch):
        import galois_lattice.oracle as oracle_mod
        monkeypatch.setattr(oracle_mod, "MAX_EXTENTS", 8)
        # one-off-diagonal rows: every object subset is an extent (2^6 = 64)
        ctx = Context(6, 6, [[i for i in range(6) if i != g]
                             for g in range(6)])
        with pytest.raises(OracleGuardError):
            oracle_extents(ctx)

    def test_guard_leaves_small_contexts_alone(self, ctx5):
        assert len(oracle_extents(ctx5)) == 9
