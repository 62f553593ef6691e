import pytest
from hypothesis import strategies as st

from quiverlie.generate import random_quiver
from quiverlie.quiver import Quiver

import random


def ex1():
    return Quiver.from_arrows([("a", "v1", "v2"), ("b", "v2", "v3")])


def ex2():
    return Quiver.from_arrows(
        [("a", "v1", "v3"), ("b", "v2", "v3"), ("c", "v3", "v4"), ("d", "v4", "v5")]
    )


def ex_quiver():
    return Quiver.from_arrows(
        [
            ("a", "v1", "v2"),
            ("b", "v2", "v4"),
            ("c", "v3", "v4"),
            ("d", "v3", "v4"),
            ("e", "v4", "v5"),
        ],
        vertices=["v1", "v2", "v3", "v4", "v5"],
    )


def disjoint_pair():
    return Quiver.from_arrows([("a", "v1", "v2"), ("b", "v3", "v4")])


def parallel_pair():
    return Quiver.from_arrows([("a", "v1", "v2"), ("b", "v1", "v2")])


@pytest.fixture
def q_ex1():
    return ex1()


@pytest.fixture
def q_ex2():
    return ex2()


@pytest.fixture
def q_exq():
    return ex_quiver()


@st.composite
def acyclic_quivers(draw, max_vertices=6, max_arrows=8, min_arrows=1):
    n = draw(st.integers(2, max_vertices))
    m = draw(st.integers(min_arrows, max_arrows))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_quiver(random.Random(seed), n, m)
