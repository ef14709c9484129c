import random

import pytest

from quiverinv.bound_quiver import parse_algebra
from quiverinv.exactalg import RatMatrix
from quiverinv.rep import Representation

A2_TEXT = "vertices 1 2; arrows a:1->2;"
K2_TEXT = "vertices 1 2; arrows a:1->2 b:1->2;"
K3_TEXT = "vertices 1 2; arrows a:1->2 b:1->2 c:1->2;"
K4_TEXT = "vertices 1 2; arrows a:1->2 b:1->2 c:1->2 d:1->2;"
A3REL_TEXT = "vertices 1 2 3; arrows a:1->2 b:2->3; relations a.b;"
LOOP_NIL_TEXT = "vertices 1; arrows x:1->1; relations x.x;"


@pytest.fixture(scope="session")
def a2():
    return parse_algebra(A2_TEXT, name="a2")


@pytest.fixture(scope="session")
def k2():
    return parse_algebra(K2_TEXT, name="k2")


@pytest.fixture(scope="session")
def k3():
    return parse_algebra(K3_TEXT, name="k3")


@pytest.fixture(scope="session")
def k4():
    return parse_algebra(K4_TEXT, name="k4")


@pytest.fixture(scope="session")
def a3rel():
    return parse_algebra(A3REL_TEXT, name="a3rel")


@pytest.fixture(scope="session")
def loop_nil():
    return parse_algebra(LOOP_NIL_TEXT, name="loop")


def module(alg, dims, mats):
    return Representation(alg, dims, mats)


def k2_line(alg, a, b):
    """K_2 module of dimension (1,1) with the two scalars."""
    return Representation(alg, (1, 1), {"a": [[a]], "b": [[b]]})


def pencil(alg, mat_a, mat_b):
    return Representation(alg, (2, 2), {"a": mat_a, "b": mat_b})


def random_invertible(n, rng):
    while True:
        m = RatMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if n == 0 or m.is_invertible():
            return m


def conjugate_randomly(rep, rng):
    g = {
        v: random_invertible(rep.dims[i], rng)
        for i, v in enumerate(rep.algebra.vertices)
    }
    return rep.conjugate(g)
