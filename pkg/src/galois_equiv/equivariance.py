"""Deciding whether a representation admits a Galois-equivariant form.

The pipeline: compute the intertwiner X between rho and its sigma/tau twist,
read off the norm invariant lambda from sigma^(r-1)(X)...sigma(X)X = lambda I,
decide lambda mod norms, and when trivial rescale X and solve the matrix
Hilbert 90 equation sigma(Y)^-1 Y = X by randomized telescoping, giving the
conjugated representation rho' = Y rho Y^-1 which commutes with the twist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import (
    BadWitness,
    BudgetExhausted,
    InternalInvariantViolation,
    NotEquivalent,
    NotIrreducible,
    Singular,
    Unsupported,
)
from .field import FieldElement, canonical_lambda, is_norm, norm, norm_witness
from .linalg import Mat, apply_sigma_mat, inverse, matrix_norm, solve_sylvester_space
from .rep import Representation, evaluate_word

_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_LCG_MASK = (1 << 64) - 1


class _LinearGenerator:
    """64-bit linear congruential generator drawing small integers."""

    def __init__(self, seed: int):
        self.state = (seed ^ 0x9E3779B97F4A7C15) & _LCG_MASK
        self.draw()

    def draw(self) -> int:
        self.state = (_LCG_MULT * self.state + _LCG_INC) & _LCG_MASK
        return self.state

    def small(self) -> int:
        """Uniform-ish in [-3, 3]."""
        return (self.draw() >> 33) % 7 - 3


def twisted_images(rep: Representation) -> list[tuple[Mat, Mat]]:
    """Pairs (rho(g), sigma(rho(tau^-1(g)))) for each generator g."""
    pairs = []
    for k in range(len(rep.images)):
        word = rep.group.tau_inverse_apply(((k, 1),))
        twisted = apply_sigma_mat(evaluate_word(rep, word))
        pairs.append((rep.images[k], twisted))
    return pairs


def compute_X(rep: Representation) -> Mat:
    """The intertwiner X with X rho(g) = sigma(rho(tau^-1(g))) X, normalized so
    its first nonzero entry (row-major) is 1.

    Raises NotEquivalent when no nonzero intertwiner exists and NotIrreducible
    when the intertwiner space has L-dimension above 1.
    """
    basis = solve_sylvester_space(twisted_images(rep))
    r = rep.ext.degree
    if not basis:
        raise NotEquivalent("rho is not equivalent to its sigma/tau twist")
    if len(basis) // r > 1:
        raise NotIrreducible(
            f"intertwiner space has L-dimension {len(basis) // r}; rho is not absolutely irreducible"
        )
    x = basis[0]
    lead = next(e for e in x.flatten() if e)
    return x * lead.inverse()


class LambdaInvariant(NamedTuple):
    lambda_rep: Fraction
    lambda_canonical: Optional[Fraction]
    is_trivial: bool


def _norm_scalar(x: Mat) -> Fraction:
    n = matrix_norm(x)
    if not n.is_scalar():
        raise InternalInvariantViolation("twisted norm of X is not scalar")
    lam = n[0, 0]
    if not lam.is_rational():
        raise InternalInvariantViolation("twisted norm of X is not rational")
    return lam.as_rational()


def _witness_to_rescaler(witness: FieldElement, lam: Fraction) -> FieldElement:
    """Accept a witness with norm lambda^-1 (used directly) or norm lambda
    (inverted); anything else is a BadWitness."""
    nw = norm(witness)
    if nw == 1 / lam:
        return witness
    if nw == lam:
        return witness.inverse()
    raise BadWitness(f"witness norm {nw} matches neither lambda nor its inverse")


def lambda_invariant(rep: Representation, witness: Optional[FieldElement] = None) -> LambdaInvariant:
    """(lambda_rep, lambda_canonical, is_trivial) for the intertwiner of rep.

    For quadratic extensions the class of lambda is decided by Hilbert
    symbols.  For r > 2 a user witness is required; without one the decision
    is Unsupported.
    """
    x = compute_X(rep)
    lam = _norm_scalar(x)
    if rep.ext.degree == 2:
        trivial = is_norm(lam, rep.ext)
        return LambdaInvariant(lam, canonical_lambda(lam, rep.ext), trivial)
    if witness is not None:
        _witness_to_rescaler(witness, lam)
        return LambdaInvariant(lam, Fraction(1), True)
    raise Unsupported("deciding lambda mod norms needs a witness when r > 2")


def rescale_X(x: Mat, mu: FieldElement) -> Mat:
    """Replace X by mu X; requires norm(mu) * lambda = 1 so the twisted norm
    of the result is the identity."""
    lam = _norm_scalar(x)
    if norm(mu) * lam != 1:
        raise BadWitness(f"norm(mu) * lambda = {norm(mu) * lam} != 1")
    out = mu * x
    if not matrix_norm(out).is_identity():
        raise InternalInvariantViolation("rescaled X does not have norm 1")
    return out


def hilbert90(x: Mat, seed: int = 0, budget: int = 64) -> Mat:
    """Solve sigma(Y)^-1 Y = X for invertible Y, given matrix_norm(X) = I.

    Telescoping construction: with B_0 = I and B_(i+1) = sigma(B_i) X, any C
    makes Y = sum_i sigma^i(C) B_i satisfy sigma(Y) X = Y; random small C from
    a seeded linear generator is retried until Y is invertible.
    """
    ext = x.ext
    r = ext.degree
    n = x.nrows
    if not matrix_norm(x).is_identity():
        raise ValueError("hilbert90 needs matrix_norm(X) = I")
    bs = [Mat.identity(ext, n)]
    for _ in range(r - 1):
        bs.append(apply_sigma_mat(bs[-1]) * x)
    gen = _LinearGenerator(seed)
    for _ in range(budget):
        c = Mat(
            ext,
            [[ext.element([gen.small() for _ in range(r)]) for _ in range(n)] for _ in range(n)],
        )
        y = Mat.zeros(ext, n, n)
        for i in range(r):
            y = y + apply_sigma_mat(c, i) * bs[i]
        try:
            y_inv_sigma = inverse(apply_sigma_mat(y))
        except Singular:
            continue
        if y_inv_sigma * y != x:
            raise InternalInvariantViolation("telescoped Y failed its defining identity")
        return y
    raise BudgetExhausted(f"no invertible Y within {budget} samples")


@dataclass
class EquivarianceCertificate:
    """Everything needed to re-verify the decision and construction."""

    x: Mat
    lambda_rep: Fraction
    lambda_canonical: Optional[Fraction]
    is_trivial: bool
    witness: Optional[FieldElement]  # the rescaling scalar mu
    y: Optional[Mat]
    rho_prime: Optional[tuple[Mat, ...]]
    seed: int


def equivariant_form(
    rep: Representation,
    seed: int = 0,
    budget: int = 64,
    witness: Optional[FieldElement] = None,
    replay_y: Optional[Mat] = None,
    witness_budget: int = 10**4,
) -> EquivarianceCertificate:
    """Decide equivariance and construct Y and rho' when the invariant is trivial.

    A replayed Y short-circuits the random construction: it must solve
    sigma(Y)^-1 Y = c X for a scalar c compatible with lambda.
    """
    x = compute_X(rep)
    lam = _norm_scalar(x)
    ext = rep.ext

    if replay_y is not None:
        z = inverse(apply_sigma_mat(replay_y)) * replay_y
        c = None
        for ze, xe in zip(z.flatten(), x.flatten()):
            if xe:
                c = ze * xe.inverse()
                break
        if c is None or z != c * x:
            raise BadWitness("replayed Y does not solve the twisted equation for X")
        if norm(c) * lam != 1:
            raise BadWitness("replayed Y implies an incompatible scalar")
        mu = c
        y = replay_y
        canonical = canonical_lambda(lam, ext) if ext.degree == 2 else Fraction(1)
        rho_prime = _conjugate(rep, y)
        cert = EquivarianceCertificate(x, lam, canonical, True, mu, y, rho_prime, seed)
        _require_valid(cert, rep)
        return cert

    if witness is not None:
        mu = _witness_to_rescaler(witness, lam)
        trivial = True
        canonical = canonical_lambda(lam, ext) if ext.degree == 2 else Fraction(1)
    elif ext.degree == 2:
        trivial = is_norm(lam, ext)
        canonical = canonical_lambda(lam, ext)
        mu = norm_witness(lam, ext, budget=witness_budget).inverse() if trivial else None
    else:
        raise Unsupported("r > 2 needs a user-supplied witness")

    if not trivial:
        cert = EquivarianceCertificate(x, lam, canonical, False, None, None, None, seed)
        _require_valid(cert, rep)
        return cert

    x_unit = rescale_X(x, mu)
    y = hilbert90(x_unit, seed=seed, budget=budget)
    rho_prime = _conjugate(rep, y)
    cert = EquivarianceCertificate(x, lam, canonical, True, mu, y, rho_prime, seed)
    _require_valid(cert, rep)
    return cert


def _conjugate(rep: Representation, y: Mat) -> tuple[Mat, ...]:
    y_inv = inverse(y)
    return tuple(y * m * y_inv for m in rep.images)


@dataclass
class CertificateReport:
    entries: list[tuple[str, bool]]
    ok: bool


def verify_certificate(cert: EquivarianceCertificate, rep: Representation) -> CertificateReport:
    """Re-check every claim in a certificate against rep, from scratch."""
    entries = []
    ext = rep.ext
    ident = Mat.identity(ext, rep.dim)

    intertwines = all(
        cert.x * a == b * cert.x for a, b in twisted_images(rep)
    )
    entries.append(("X intertwines rho with its twist", intertwines))

    norm_x = matrix_norm(cert.x)
    entries.append(("twisted norm of X is lambda_rep I", norm_x == cert.lambda_rep * ident))

    if ext.degree == 2:
        entries.append(
            ("is_trivial matches the norm test", cert.is_trivial == is_norm(cert.lambda_rep, ext))
        )
        entries.append(
            (
                "lambda_canonical matches",
                cert.lambda_canonical == canonical_lambda(cert.lambda_rep, ext),
            )
        )

    if cert.witness is not None:
        entries.append(("witness norm is lambda^-1", norm(cert.witness) * cert.lambda_rep == 1))

    if cert.y is not None:
        lhs = inverse(apply_sigma_mat(cert.y)) * cert.y
        entries.append(("Y solves sigma(Y)^-1 Y = mu X", lhs == cert.witness * cert.x))

    if cert.rho_prime is not None:
        rp = Representation(rep.group, ext, list(cert.rho_prime))
        if cert.y is not None:
            entries.append(("rho' is Y rho Y^-1", cert.rho_prime == _conjugate(rep, cert.y)))
        equi_ok = True
        for k in range(len(rep.images)):
            tau_word = rep.group.tau_apply(((k, 1),))
            if evaluate_word(rp, tau_word) != apply_sigma_mat(rp.images[k]):
                equi_ok = False
        entries.append(("rho' commutes with the sigma/tau twist", equi_ok))

    return CertificateReport(entries, all(h for _, h in entries))


def _require_valid(cert: EquivarianceCertificate, rep: Representation):
    report = verify_certificate(cert, rep)
    if not report.ok:
        failed = [name for name, h in report.entries if not h]
        raise InternalInvariantViolation(f"certificate failed self-check: {failed}")
