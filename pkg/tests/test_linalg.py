"""Exact matrix operations over L and the rational elimination engine."""

import random
from fractions import Fraction

import pytest

from galois_equiv.errors import Singular
from galois_equiv.field import CyclicExtension, norm
from galois_equiv.linalg import (
    IncrementalSpan,
    Mat,
    apply_sigma_mat,
    inverse,
    kernel,
    kernel_of_linear_maps,
    mat_to_rational_vector,
    matrix_norm,
    rank,
    rational_in_span,
    rational_kernel,
    rational_rank,
    rational_vector_to_mat,
    solve_sylvester_space,
)


def q5():
    return CyclicExtension([-5, 0, 1], [0, -1])


def qm7():
    return CyclicExtension([7, 0, 1], [0, -1])


def random_mat(ext, n, m, rng, span=4):
    return Mat(ext, [[ext.element([rng.randint(-span, span) for _ in range(ext.degree)])
                      for _ in range(m)] for _ in range(n)])


def random_invertible(ext, n, rng, span=3):
    while True:
        a = random_mat(ext, n, n, rng, span)
        try:
            inverse(a)
            return a
        except Singular:
            continue


# ---------------------------------------------------------------------------
# oracle: plain Fraction row reduction


def oracle_rank(rows, ncols):
    mat = [list(map(Fraction, r)) for r in rows]
    rank_ = 0
    for col in range(ncols):
        piv = next((r for r in range(rank_, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank_], mat[piv] = mat[piv], mat[rank_]
        pv = mat[rank_][col]
        mat[rank_] = [x / pv for x in mat[rank_]]
        for r in range(len(mat)):
            if r != rank_ and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank_])]
        rank_ += 1
    return rank_


def test_rational_elimination_matches_oracle_on_random_systems():
    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(1, 7)
        m = rng.randint(1, 7)
        k = rng.randint(1, min(n, m))
        left = [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(k)] for _ in range(n)]
        right = [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(m)] for _ in range(k)]
        rows = [[sum(left[i][t] * right[t][j] for t in range(k)) for j in range(m)] for i in range(n)]
        assert rational_rank(rows, m) == oracle_rank(rows, m)
        kern = rational_kernel(rows, m)
        assert len(kern) == m - oracle_rank(rows, m)
        for v in kern:
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_rational_kernel_is_deterministic():
    rows = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    assert rational_kernel(rows, 3) == rational_kernel([list(r) for r in rows], 3)


def test_rational_in_span():
    v1 = [Fraction(1), Fraction(0), Fraction(2)]
    v2 = [Fraction(0), Fraction(1), Fraction(-1)]
    assert rational_in_span([v1, v2], [Fraction(2), Fraction(3), Fraction(1)])
    assert not rational_in_span([v1, v2], [Fraction(0), Fraction(0), Fraction(1)])


# ---------------------------------------------------------------------------
# matrices over L


def test_matrix_arithmetic_and_inverse():
    rng = random.Random(41)
    for ext in (q5(), qm7()):
        for _ in range(10):
            n = rng.randint(1, 4)
            a = random_invertible(ext, n, rng)
            b = random_mat(ext, n, n, rng)
            assert (a + b) - b == a
            ai = inverse(a)
            assert a * ai == Mat.identity(ext, n)
            assert ai * a == Mat.identity(ext, n)
            assert (a * b).galois() == a.galois() * b.galois()


def test_inverse_raises_on_singular():
    ext = q5()
    with pytest.raises(Singular):
        inverse(Mat(ext, [[1, 2], [2, 4]]))


def test_rank_and_kernel_over_l():
    ext = q5()
    t = ext.gen()
    a = Mat(ext, [[1, t, 0], [t, [5, 0], 0]])  # second row = t * first row
    assert rank(a) == 1
    kern = kernel(a)
    assert len(kern) == 2
    for v in kern:
        col = Mat(ext, [[e] for e in v])
        assert a * col == Mat.zeros(ext, 2, 1)


def test_sigma_acts_entrywise():
    ext = q5()
    t = ext.gen()
    a = Mat(ext, [[t, 1], [0, t]])
    assert apply_sigma_mat(a) == Mat(ext, [[-t, 1], [0, -t]])
    assert apply_sigma_mat(a, 2) == a


def test_matrix_norm_on_scalars_matches_field_norm():
    rng = random.Random(43)
    for ext in (q5(), qm7()):
        for _ in range(10):
            x = ext.element([rng.randint(-5, 5), rng.randint(-5, 5)])
            if not x:
                continue
            n = matrix_norm(Mat(ext, [[x]]))
            assert n[0, 0] == norm(x)


def test_matrix_norm_twist_identity():
    # N(sigma(A)) = sigma(N(A)) conjugated: for r = 2, sigma(N(A)) = A N(A) A^-1
    rng = random.Random(47)
    ext = q5()
    a = random_invertible(ext, 3, rng)
    n = matrix_norm(a)
    assert a * n == n.galois() * a


def test_incremental_span():
    ext = q5()
    span = IncrementalSpan(ext, 4)
    t = ext.gen()
    assert span.insert([ext.one(), ext.zero(), ext.zero(), ext.zero()])
    assert span.insert([t, ext.one(), ext.zero(), ext.zero()])
    # dependent over L
    assert not span.insert([t, t, ext.zero(), ext.zero()][:2] + [ext.zero(), ext.zero()])
    assert span.dim == 2


# ---------------------------------------------------------------------------
# restriction of scalars


def test_rational_vector_round_trip():
    ext = qm7()
    rng = random.Random(53)
    a = random_mat(ext, 2, 3, rng)
    v = mat_to_rational_vector(a)
    assert rational_vector_to_mat(ext, v, 2, 3) == a


def test_sylvester_space_contains_constructed_conjugator():
    rng = random.Random(59)
    ext = q5()
    for _ in range(6):
        n = rng.randint(2, 3)
        x0 = random_invertible(ext, n, rng)
        x0_inv = inverse(x0)
        pairs = []
        for _ in range(2):
            a = random_mat(ext, n, n, rng)
            pairs.append((a, x0 * a * x0_inv))
        basis = kernel_of_linear_maps(
            [(lambda X, A=A, B=B: X * A - B * X) for A, B in pairs], ext, n, n
        )
        for m in basis:
            for a, b in pairs:
                assert m * a == b * m
        vecs = [mat_to_rational_vector(m) for m in basis]
        assert rational_in_span(vecs, mat_to_rational_vector(x0))


def test_sylvester_space_dimension_is_multiple_of_degree():
    rng = random.Random(61)
    ext = qm7()
    n = 3
    a = random_mat(ext, n, n, rng)
    basis = solve_sylvester_space([(a, a)])
    assert basis
    assert len(basis) % ext.degree == 0
    for m in basis:
        assert m * a == a * m
