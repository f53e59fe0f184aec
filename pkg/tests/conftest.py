"""Shared fixtures: stock instances and cached enumerations."""

import pytest

import polymat as pm


def cycle_graph(n, prefix="e"):
    return pm.mgraph(n, [(f"{prefix}{i}", i, (i + 1) % n) for i in range(n)])


def path_graph(n_edges, prefix="p"):
    return pm.mgraph(n_edges + 1, [(f"{prefix}{i}", i, i + 1) for i in range(n_edges)])


@pytest.fixture(scope="session")
def m2c3():
    return pm.boolean_from_graph(cycle_graph(3))


@pytest.fixture(scope="session")
def m2c4():
    return pm.boolean_from_graph(cycle_graph(4))


@pytest.fixture(scope="session")
def m2c5():
    return pm.boolean_from_graph(cycle_graph(5))


@pytest.fixture(scope="session")
def u23():
    return pm.uniform(2, 3)


@pytest.fixture(scope="session")
def u24():
    return pm.uniform(2, 4)


@pytest.fixture(scope="session")
def small_all():
    """Every class on up to 4 elements, keyed by size."""
    return {n: list(pm.enumerate_small(n)) for n in range(5)}


@pytest.fixture(scope="session")
def small_3conn():
    return {n: list(pm.enumerate_small(n, "three_connected")) for n in range(1, 5)}


def line_point_pair():
    """A line with a point riding on it: elements l (rank 2), q (rank 1)."""
    return pm.validate(["l", "q"], [0, 2, 1, 2])


def demoting_example():
    """Three elements l, a, b where compactification turns the line l into a
    point: r(l)=2, r(a)=r(b)=1, r(ab)=2, r(la)=r(lb)=r(lab)=3."""
    return pm.validate(["l", "a", "b"], [0, 2, 1, 3, 1, 3, 2, 3])


def doubled_c5():
    """The 5-cycle with one doubled edge; its incidence polymatroid is
    3-connected with prickly pairs and a rich set of minors."""
    edges = [
        ("e0", (0, 1)),
        ("e1", (0, 1)),
        ("e2", (0, 2)),
        ("e3", (1, 3)),
        ("e4", (2, 4)),
        ("e5", (3, 4)),
    ]
    return pm.Multigraph(5, tuple(edges))
