"""The induced representation of the extended group H x| <tau>, its crossed
product endomorphisms, and the Schur index report.

Elements over the tau coset are sigma-semilinear, carried as (matrix, k)
pairs acting by v -> A sigma^k(v); their rational traces restrict scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import EndomorphismCheckFailed, InternalInvariantViolation, Unsupported
from .field import FieldElement, RationalClass, norm
from .linalg import Mat, apply_sigma_mat, inverse, kernel_of_linear_maps
from .rep import Representation, Word, evaluate_word
from .equivariance import compute_X, lambda_invariant, _norm_scalar


class SemilinearPair:
    """(A, k) acting on L^m by v -> A sigma^k(v)."""

    __slots__ = ("mat", "power")

    def __init__(self, mat: Mat, power: int):
        self.mat = mat
        self.power = power % mat.ext.degree

    def __mul__(self, other: "SemilinearPair") -> "SemilinearPair":
        return SemilinearPair(
            self.mat * apply_sigma_mat(other.mat, self.power),
            self.power + other.power,
        )

    def inverse(self) -> "SemilinearPair":
        k = (-self.power) % self.mat.ext.degree
        return SemilinearPair(apply_sigma_mat(inverse(self.mat), k), k)

    def __pow__(self, e: int) -> "SemilinearPair":
        if e < 0:
            return self.inverse() ** (-e)
        out = SemilinearPair(Mat.identity(self.mat.ext, self.mat.nrows), 0)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SemilinearPair)
            and self.power == other.power
            and self.mat == other.mat
        )

    def rational_trace(self) -> Fraction:
        """Trace of the pair as a Q-linear map, by restriction of scalars."""
        ext = self.mat.ext
        r = ext.degree
        total = Fraction(0)
        for i in range(self.mat.nrows):
            a = self.mat.rows[i][i]
            for j in range(r):
                basis = ext.element([0] * j + [1])
                total += (a * basis.galois(self.power)).coeffs[j]
        return total

    def __repr__(self):
        return f"SemilinearPair(power={self.power}, mat={self.mat!r})"


def _block_diag(ext, blocks: list[Mat]) -> Mat:
    n = blocks[0].nrows
    r = len(blocks)
    rows = [[ext.zero()] * (r * n) for _ in range(r * n)]
    for i, blk in enumerate(blocks):
        for a in range(n):
            for b in range(n):
                rows[i * n + a][i * n + b] = blk.rows[a][b]
    return Mat(ext, rows)


def _block_shift(ext, r: int, n: int) -> Mat:
    """Permutation matrix with identity blocks at (i, i-1 mod r)."""
    rows = [[ext.zero()] * (r * n) for _ in range(r * n)]
    for i in range(r):
        j = (i - 1) % r
        for a in range(n):
            rows[i * n + a][j * n + a] = ext.one()
    return Mat(ext, rows)


@dataclass
class InducedRep:
    """Block model of the induced representation: generator g of H maps to
    diag(sigma^i rho(tau^-i(g))), and tau to the block shift composed with
    sigma."""

    rep: Representation
    blocks: tuple[Mat, ...]
    tau_pair: SemilinearPair

    @property
    def dim(self) -> int:
        return self.rep.dim * self.rep.ext.degree

    def pair(self, k: int) -> SemilinearPair:
        return SemilinearPair(self.blocks[k], 0)

    def evaluate(self, word: Word) -> Mat:
        acc = Mat.identity(self.rep.ext, self.dim)
        inverses = [inverse(b) for b in self.blocks]
        for g, e in word:
            acc = acc * (self.blocks[g] if e > 0 else inverses[g])
        return acc


def build_induced(rep: Representation) -> InducedRep:
    """Assemble the block model and verify the semidirect relations hold."""
    ext = rep.ext
    r = ext.degree
    group = rep.group
    if group.tau_order != r:
        raise Unsupported(
            f"tau order {group.tau_order} must match the extension degree {r}"
        )
    blocks = []
    for k in range(len(rep.images)):
        diag = []
        for i in range(r):
            word = group.tau_apply(((k, 1),), (r - i) % r)
            diag.append(apply_sigma_mat(evaluate_word(rep, word), i))
        blocks.append(_block_diag(ext, diag))
    tau_pair = SemilinearPair(_block_shift(ext, r, rep.dim), 1)
    ind = InducedRep(rep, tuple(blocks), tau_pair)

    ident = Mat.identity(ext, ind.dim)
    for w in group.relations:
        if ind.evaluate(w) != ident:
            raise InternalInvariantViolation("a relation fails in the induced blocks")
    if (tau_pair ** r) != SemilinearPair(ident, 0):
        raise InternalInvariantViolation("tau block does not have order r")
    tau_inv = tau_pair.inverse()
    for k in range(len(rep.images)):
        lhs = tau_pair * ind.pair(k) * tau_inv
        rhs = SemilinearPair(ind.evaluate(group.tau_apply(((k, 1),))), 0)
        if lhs != rhs:
            raise InternalInvariantViolation("tau conjugation disagrees with tau images")
    return ind


def trace_induced(rep: Representation, word: Word) -> Fraction:
    """Character of the classical induced module on a word in H: the sum of
    the traces of rho at all tau-translates.  Always rational."""
    r = rep.ext.degree
    acc = rep.ext.zero()
    for i in range(r):
        translated = rep.group.tau_apply(word, (r - i) % r)
        acc = acc + evaluate_word(rep, translated).trace()
    if not acc.is_rational():
        raise InternalInvariantViolation("induced character value is not rational")
    return acc.as_rational()


class CrossedProduct:
    """The endomorphisms m_lambda and xi of the induced representation.

    m(lam) is diag(sigma^i(lam) I); xi has sigma^(i-1)(X) on the block
    subdiagonal and sigma^(r-1)(X) in the corner.  Both are verified to
    commute with every generator block and sigma-twist past the tau block.
    """

    def __init__(self, induced: InducedRep, x: Mat):
        self.induced = induced
        self.x = x
        self.ext = induced.rep.ext
        self.lambda_rep = _norm_scalar(x)
        self._check_endomorphism(self.xi(), "xi")
        self._check_endomorphism(self.m(self.ext.gen()), "m(t)")

    def m(self, lam) -> Mat:
        lam = self.ext.element(lam)
        n = self.induced.rep.dim
        blocks = [lam.galois(i) * Mat.identity(self.ext, n) for i in range(self.ext.degree)]
        return _block_diag(self.ext, blocks)

    def xi(self) -> Mat:
        ext = self.ext
        r = ext.degree
        n = self.induced.rep.dim
        rows = [[ext.zero()] * (r * n) for _ in range(r * n)]
        for i in range(r):
            j = (i - 1) % r
            blk = apply_sigma_mat(self.x, (i - 1) % r)
            for a in range(n):
                for b in range(n):
                    rows[i * n + a][j * n + b] = blk.rows[a][b]
        return Mat(ext, rows)

    def _check_endomorphism(self, e: Mat, name: str):
        p = self.induced.tau_pair.mat
        for d in self.induced.blocks:
            if e * d != d * e:
                raise EndomorphismCheckFailed(f"{name} does not commute with a generator block")
        if e * p != p * apply_sigma_mat(e):
            raise EndomorphismCheckFailed(f"{name} does not twist past the tau block")

    def relation_report(self, lam1, lam2) -> list[tuple[str, bool]]:
        """The defining crossed-product relations, instantiated at lam1, lam2."""
        lam1 = self.ext.element(lam1)
        lam2 = self.ext.element(lam2)
        xi = self.xi()
        r = self.ext.degree
        xi_r = Mat.identity(self.ext, self.induced.dim)
        for _ in range(r):
            xi_r = xi_r * xi
        return [
            ("m is additive", self.m(lam1) + self.m(lam2) == self.m(lam1 + lam2)),
            ("m is multiplicative", self.m(lam1) * self.m(lam2) == self.m(lam1 * lam2)),
            ("m twists past xi", self.m(lam1) * xi == xi * self.m(lam1.galois())),
            ("xi^r recovers lambda", xi_r == self.m(self.lambda_rep)),
        ]


def build_crossed_product(rep: Representation, x: Optional[Mat] = None) -> CrossedProduct:
    if x is None:
        x = compute_X(rep)
    return CrossedProduct(build_induced(rep), x)


def endomorphism_dim(rep: Representation) -> int:
    """Q-dimension of the algebra commuting with the induced representation,
    including the sigma-twisted condition at the tau block.  Equals r^2 for
    an absolutely irreducible rep satisfying the twist hypothesis."""
    ind = build_induced(rep)
    p = ind.tau_pair.mat
    maps = [(lambda E, D=D: E * D - D * E) for D in ind.blocks]
    maps.append(lambda E: E * p - p * apply_sigma_mat(E))
    basis = kernel_of_linear_maps(maps, rep.ext, ind.dim, ind.dim)
    return len(basis)


@dataclass
class SchurReport:
    index: int
    lambda_class: RationalClass
    symbol: Optional[tuple[Fraction, int]]  # (canonical lambda, disc core) when index 2


def schur_index(rep: Representation, witness: Optional[FieldElement] = None) -> SchurReport:
    """Schur index of the induced representation over Q, decided through the
    norm class of lambda.  Quadratic extensions are decided outright; r > 2
    needs a witness and can only certify index 1."""
    inv = lambda_invariant(rep, witness)
    ext = rep.ext
    cls = RationalClass(inv.lambda_rep, ext)
    if ext.degree == 2:
        if inv.is_trivial:
            return SchurReport(1, cls, None)
        return SchurReport(2, cls, (inv.lambda_canonical, ext.disc_core))
    return SchurReport(1, cls, None)
