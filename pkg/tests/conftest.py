"""Shared fixtures: the two worked contexts and a seeded context factory.

``ctx4`` is a 4-object/4-attribute context whose lattice is small enough to
draw by hand; ``ctx5`` is a 5x7 context with a richer cover structure
(8 natural concepts).  Both are loaded from cross-table files so every test
run also exercises the parser.  Expected values in the test modules were
computed with the brute-force oracle (see test_oracle.py, which checks the
oracle itself against hand enumeration and an independent second strategy).
"""
import pathlib
import random

import pytest

from galois_lattice import Context, parse_context

DATA = pathlib.Path(__file__).parent / "data"


def load_context(name: str) -> Context:
    return parse_context((DATA / name).read_text(encoding="utf-8"), "cxt")


@pytest.fixture(scope="session")
def ctx4() -> Context:
    return load_context("small4x4.cxt")


@pytest.fixture(scope="session")
def ctx5() -> Context:
    return load_context("worked5x7.cxt")


def random_context(rng: random.Random, n: int, m: int,
                   density: float) -> Context:
    rows = [[i for i in range(m) if rng.random() < density]
            for _ in range(n)]
    return Context(n, m, rows)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
