"""Exact matrices over a cyclic extension, plus the rational elimination engine.

Matrices over L use straightforward Gaussian elimination with
height-minimizing pivots (sizes here are tiny).  The large systems produced
by restriction of scalars are rational, and go through fraction-free Bareiss
elimination on an integerized lift so intermediate entries stay minor-sized.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Sequence

from .errors import InternalInvariantViolation, Singular
from .field import CyclicExtension, FieldElement


class Mat:
    """A dense matrix with FieldElement entries."""

    __slots__ = ("ext", "nrows", "ncols", "rows")

    def __init__(self, ext: CyclicExtension, rows: Sequence[Sequence]):
        self.ext = ext
        self.rows = tuple(tuple(ext.element(e) for e in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @staticmethod
    def identity(ext: CyclicExtension, n: int) -> "Mat":
        return Mat(ext, [[int(i == j) for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(ext: CyclicExtension, n: int, m: int) -> "Mat":
        return Mat(ext, [[0] * m for _ in range(n)])

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.ext, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.ext, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat(self.ext, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
            cols = list(zip(*other.rows))
            out = []
            for row in self.rows:
                out.append([_dot(row, col, self.ext) for col in cols])
            return Mat(self.ext, out)
        scalar = self.ext.element(other)
        return Mat(self.ext, [[a * scalar for a in r] for r in self.rows])

    def __rmul__(self, other):
        scalar = self.ext.element(other)
        return Mat(self.ext, [[scalar * a for a in r] for r in self.rows])

    def _check_same_shape(self, other: "Mat"):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.ext == other.ext
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def galois(self, i: int = 1) -> "Mat":
        return Mat(self.ext, [[a.galois(i) for a in r] for r in self.rows])

    def trace(self) -> FieldElement:
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        acc = self.ext.zero()
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_identity(self) -> bool:
        return self == Mat.identity(self.ext, self.nrows)

    def is_scalar(self) -> bool:
        n = self.nrows
        d = self.rows[0][0]
        return all(
            self.rows[i][j] == (d if i == j else self.ext.zero())
            for i in range(n)
            for j in range(n)
        )

    def flatten(self) -> list[FieldElement]:
        return [e for row in self.rows for e in row]

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.rows)
        return f"Mat[{body}]"


def _dot(row, col, ext) -> FieldElement:
    acc = ext.zero()
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def apply_sigma_mat(a: Mat, i: int = 1) -> Mat:
    return a.galois(i)


def matrix_norm(a: Mat) -> Mat:
    """sigma^(r-1)(A) ... sigma(A) A, the twisted norm of a square matrix."""
    if a.nrows != a.ncols:
        raise ValueError("norm of a non-square matrix")
    acc = a
    for i in range(1, a.ext.degree):
        acc = a.galois(i) * acc
    return acc


def _height(x: FieldElement) -> int:
    h = 0
    for c in x.coeffs:
        h = max(h, abs(c.numerator), c.denominator)
    return h


def inverse(a: Mat) -> Mat:
    """Gauss-Jordan inverse over L; raises Singular when rank is deficient."""
    if a.nrows != a.ncols:
        raise Singular("only square matrices are invertible")
    n = a.nrows
    ext = a.ext
    aug = [list(row) + [ext.element(int(i == j)) for j in range(n)] for i, row in enumerate(a.rows)]
    for col in range(n):
        best = None
        for r in range(col, n):
            if aug[r][col]:
                h = _height(aug[r][col])
                if best is None or h < best[0]:
                    best = (h, r)
        if best is None:
            raise Singular("matrix is singular")
        r = best[1]
        aug[col], aug[r] = aug[r], aug[col]
        inv_piv = aug[col][col].inverse()
        aug[col] = [e * inv_piv for e in aug[col]]
        for r2 in range(n):
            if r2 != col and aug[r2][col]:
                f = aug[r2][col]
                aug[r2] = [e - f * p for e, p in zip(aug[r2], aug[col])]
    return Mat(ext, [row[n:] for row in aug])


def _echelon_over_l(rows: list[list[FieldElement]], ncols: int):
    """Reduced echelon form over L; returns (echelon_rows, pivot_cols)."""
    echelon: list[list[FieldElement]] = []
    pivots: list[int] = []
    for row in rows:
        row = list(row)
        for prow, pcol in zip(echelon, pivots):
            if row[pcol]:
                f = row[pcol]
                row = [a - f * b for a, b in zip(row, prow)]
        lead = next((j for j in range(ncols) if row[j]), None)
        if lead is None:
            continue
        inv = row[lead].inverse()
        row = [a * inv for a in row]
        for k, (prow, pcol) in enumerate(zip(echelon, pivots)):
            if prow[lead]:
                f = prow[lead]
                echelon[k] = [a - f * b for a, b in zip(prow, row)]
        echelon.append(row)
        pivots.append(lead)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [echelon[k] for k in order], [pivots[k] for k in order]


def rank(a: Mat) -> int:
    ech, _ = _echelon_over_l([list(r) for r in a.rows], a.ncols)
    return len(ech)


def kernel(a: Mat) -> list[tuple[FieldElement, ...]]:
    """Basis of the right kernel {v : A v = 0} over L."""
    ext = a.ext
    ech, pivots = _echelon_over_l([list(r) for r in a.rows], a.ncols)
    pivot_set = set(pivots)
    free = [c for c in range(a.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ext.zero()] * a.ncols
        v[f] = ext.one()
        for prow, pcol in zip(ech, pivots):
            # row is reduced: entry at pcol is 1, zeros at other pivot cols
            v[pcol] = -prow[f]
        basis.append(tuple(v))
    return basis


class IncrementalSpan:
    """An L-subspace of L^width maintained in reduced echelon form."""

    def __init__(self, ext: CyclicExtension, width: int):
        self.ext = ext
        self.width = width
        self.rows: list[list[FieldElement]] = []
        self.pivots: list[int] = []

    def insert(self, vec: Sequence[FieldElement]) -> bool:
        """Reduce vec against the span; returns True if the dimension grew."""
        row = list(vec)
        for prow, pcol in zip(self.rows, self.pivots):
            if row[pcol]:
                f = row[pcol]
                row = [a - f * b for a, b in zip(row, prow)]
        lead = next((j for j in range(self.width) if row[j]), None)
        if lead is None:
            return False
        inv = row[lead].inverse()
        row = [a * inv for a in row]
        for k, prow in enumerate(self.rows):
            if prow[lead]:
                f = prow[lead]
                self.rows[k] = [a - f * b for a, b in zip(prow, row)]
        self.rows.append(row)
        self.pivots.append(lead)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# rational engine


def _integerize(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else []


def rational_elimination(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Fraction-free Bareiss elimination with minimal-entry pivoting.

    Returns (mat, pivot_cols, pivot_rows): integer echelon data from which
    rank and kernel are read off.
    """
    mat = []
    for row in rows:
        ints = _integerize(row)
        if ints:
            mat.append(ints)
    used = [False] * len(mat)
    piv_cols: list[int] = []
    piv_rows: list[int] = []
    prev = 1
    for col in range(ncols):
        best = None
        for ri in range(len(mat)):
            if not used[ri] and mat[ri][col]:
                h = abs(mat[ri][col])
                if best is None or h < best[0]:
                    best = (h, ri)
        if best is None:
            continue
        ri = best[1]
        used[ri] = True
        piv_cols.append(col)
        piv_rows.append(ri)
        pval = mat[ri][col]
        prow = mat[ri]
        for rj in range(len(mat)):
            if used[rj]:
                continue
            mrow = mat[rj]
            f = mrow[col]
            for j in range(ncols):
                mrow[j] = (mrow[j] * pval - f * prow[j]) // prev
        prev = pval
    return mat, piv_cols, piv_rows


def rational_rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    _, piv_cols, _ = rational_elimination(rows, ncols)
    return len(piv_cols)


def rational_kernel(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : R v = 0} as Fraction vectors, deterministically ordered."""
    mat, piv_cols, piv_rows = rational_elimination(rows, ncols)
    pivot_set = set(piv_cols)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for col, ri in reversed(list(zip(piv_cols, piv_rows))):
            row = mat[ri]
            s = Fraction(0)
            for j in range(col + 1, ncols):
                if row[j] and v[j]:
                    s += Fraction(row[j]) * v[j]
            v[col] = -s / row[col]
        basis.append(v)
    return basis


def rational_in_span(vectors: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
    ncols = len(target)
    base = rational_rank(list(vectors), ncols)
    return rational_rank(list(vectors) + [list(target)], ncols) == base


# ---------------------------------------------------------------------------
# restriction of scalars


def mat_to_rational_vector(a: Mat) -> list[Fraction]:
    """Row-major rational coordinates: entry (i,j) contributes its r coefficients."""
    out = []
    for row in a.rows:
        for e in row:
            out.extend(e.coeffs)
    return out


def rational_vector_to_mat(ext: CyclicExtension, vec: Sequence[Fraction], nrows: int, ncols: int) -> Mat:
    r = ext.degree
    rows = []
    k = 0
    for _ in range(nrows):
        row = []
        for _ in range(ncols):
            row.append(FieldElement(ext, tuple(Fraction(c) for c in vec[k:k + r])))
            k += r
        rows.append(row)
    return Mat(ext, rows)


def kernel_of_linear_maps(
    maps: Sequence[Callable[[Mat], Mat]],
    ext: CyclicExtension,
    nrows: int,
    ncols: int,
) -> list[Mat]:
    """Q-basis of the joint kernel of Q-linear maps on nrows x ncols matrices over L.

    The maps are evaluated on the t^k E_ij basis and the stacked rational
    system is solved by fraction-free elimination.
    """
    r = ext.degree
    nunk = nrows * ncols * r
    columns = []
    out_len = None
    for i in range(nrows):
        for j in range(ncols):
            for k in range(r):
                basis_mat = Mat.zeros(ext, nrows, ncols)
                rows = [list(row) for row in basis_mat.rows]
                rows[i][j] = ext.element([0] * k + [1])
                basis_mat = Mat(ext, rows)
                stacked: list[Fraction] = []
                for f in maps:
                    stacked.extend(mat_to_rational_vector(f(basis_mat)))
                columns.append(stacked)
                out_len = len(stacked)
    eq_rows = [[columns[u][e] for u in range(nunk)] for e in range(out_len)]
    kern = rational_kernel(eq_rows, nunk)
    return [rational_vector_to_mat(ext, v, nrows, ncols) for v in kern]


def solve_sylvester_space(pairs: Sequence[tuple[Mat, Mat]]) -> list[Mat]:
    """Q-basis of {X : X A_k = B_k X for all k}.

    The space is an L-subspace (the conditions are L-linear), so the returned
    Q-dimension is always a multiple of deg L; closure under multiplication
    by t is checked before returning.
    """
    if not pairs:
        raise ValueError("need at least one pair")
    a0, _ = pairs[0]
    ext = a0.ext
    n = a0.nrows
    maps = [(lambda X, A=A, B=B: X * A - B * X) for A, B in pairs]
    basis = kernel_of_linear_maps(maps, ext, n, n)
    if basis:
        t = ext.gen()
        vecs = [mat_to_rational_vector(m) for m in basis]
        for m in basis:
            if not rational_in_span(vecs, mat_to_rational_vector(t * m)):
                raise InternalInvariantViolation("solution space is not closed under L-scaling")
        if len(basis) % ext.degree:
            raise InternalInvariantViolation("solution space dimension is not a multiple of deg L")
    return basis
