"""Shared constructions: the bundled example representations in object form."""

import pytest

from galois_equiv.field import CyclicExtension
from galois_equiv.linalg import Mat
from galois_equiv.rep import GroupData, Representation

ALPHA = ["1/2", "1/2"]  # (1 + sqrt5)/2
NEG_ALPHA = ["-1/2", "-1/2"]


def build_a5():
    """Degree 3 representation of A5 over Q[sqrt5], tau = conjugation by (1 2)."""
    ext = CyclicExtension([-5, 0, 1], [0, -1])
    group = GroupData.from_strings(
        ["a", "b"],
        ["a a", "b b b", "a b a b a b a b a b"],
        {"a": "a", "b": "a b b a b a b b"},
        tau_order=2,
        declared_order=60,
    )
    a = Mat(ext, [[-1, 0, 0], [0, 0, 1], [0, 1, 0]])
    b = Mat(ext, [[-1, 1, ALPHA], [ALPHA, 0, NEG_ALPHA], [NEG_ALPHA, 0, 1]])
    return Representation(group, ext, [a, b])


def build_c3():
    """Degree 1 representation of C3 over Q[sqrt-3], tau = inversion."""
    ext = CyclicExtension([3, 0, 1], [0, -1])
    group = GroupData.from_strings(
        ["g"],
        ["g g g"],
        {"g": "g'"},
        tau_order=2,
        declared_order=3,
    )
    omega = Mat(ext, [[["-1/2", "1/2"]]])
    return Representation(group, ext, [omega])


def build_a7_double():
    """Degree 4 representation of 2.A7 over Q[sqrt-7], from the shipped file."""
    from galois_equiv.cli import fixture_path, load_problem

    return load_problem(fixture_path("2a7_4dim.json")).representation()


@pytest.fixture
def a5():
    return build_a5()


@pytest.fixture
def c3():
    return build_c3()


@pytest.fixture
def a7d():
    return build_a7_double()
