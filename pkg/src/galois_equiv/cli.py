"""Batch front end: problem files in, JSON reports and certificates out.

Problem files are JSON with four blocks: "field" (min_poly, sigma_image),
"group" (generators, relations, tau, tau_order, optional order),
"representation" (generator name -> matrix), "options" (seed, budget,
witness, witness_budget).  Rationals are integers or "p/q" strings; field
elements are coefficient arrays in the basis 1, t, ..., t^(r-1).

Exit codes: 0 success (trivial invariant, construction done), 1 validation
or construction failure, 2 parse failure, 3 genuine obstruction (the
invariant is not a norm).  An obstruction is a successful answer, so its
report still goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib.resources import files as resource_files
from typing import Optional

from .errors import GaloisEquivError, ParseError
from .field import (
    CyclicExtension,
    FieldElement,
    factor,
    rational_from_string,
    rational_to_string,
)
from .linalg import Mat
from .rep import (
    GroupData,
    Representation,
    burnside_dim,
    check_automorphism,
    check_relations,
)
from .equivariance import (
    EquivarianceCertificate,
    equivariant_form,
    lambda_invariant,
    verify_certificate,
)
from .induced import build_crossed_product, endomorphism_dim, schur_index


def fixture_path(name: str) -> str:
    """Absolute path of a packaged example problem file."""
    return str(resource_files("galois_equiv").joinpath("fixtures", name))


# ---------------------------------------------------------------------------
# problem file parsing


def _as_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError("expected a rational, got a boolean", where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return rational_from_string(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), where)
    raise ParseError(f"expected an integer or 'p/q' string, got {type(value).__name__}", where)


def _as_element(value, ext: CyclicExtension, where: str) -> FieldElement:
    if isinstance(value, list):
        if len(value) > ext.degree:
            raise ParseError(f"coefficient array longer than the field degree {ext.degree}", where)
        coeffs = [_as_rational(v, f"{where}[{k}]") for k, v in enumerate(value)]
        return ext.element(coeffs + [0] * (ext.degree - len(coeffs)))
    return ext.element([_as_rational(value, where)] + [0] * (ext.degree - 1))


def _as_matrix(value, ext: CyclicExtension, where: str) -> Mat:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise ParseError("expected a matrix as a list of rows", where)
    width = len(value[0])
    rows = []
    for i, row in enumerate(value):
        if len(row) != width:
            raise ParseError(f"row {i} has {len(row)} entries, expected {width}", where)
        rows.append([_as_element(v, ext, f"{where}[{i}][{j}]") for j, v in enumerate(row)])
    return Mat(ext, rows)


def _require(data: dict, key: str, where: str):
    if key not in data:
        raise ParseError(f"missing required key {key!r}", where)
    return data[key]


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError("expected an integer", where)
    return value


@dataclass
class Problem:
    ext: CyclicExtension
    group: GroupData
    gen_names: list[str]
    matrices: list[Mat]
    options: dict

    def representation(self) -> Representation:
        return Representation(self.group, self.ext, self.matrices)


def load_problem(path: str) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(str(exc), path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}")
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object", "$")

    fld = _require(data, "field", "$")
    if not isinstance(fld, dict):
        raise ParseError("field must be an object", "field")
    min_poly = [_as_rational(v, f"field.min_poly[{k}]") for k, v in enumerate(_require(fld, "min_poly", "field"))]
    sigma_image = [_as_rational(v, f"field.sigma_image[{k}]") for k, v in enumerate(_require(fld, "sigma_image", "field"))]
    try:
        ext = CyclicExtension(min_poly, sigma_image)
    except ValueError as exc:
        raise ParseError(str(exc), "field")

    grp = _require(data, "group", "$")
    if not isinstance(grp, dict):
        raise ParseError("group must be an object", "group")
    generators = _require(grp, "generators", "group")
    if not isinstance(generators, list) or not all(isinstance(g, str) for g in generators):
        raise ParseError("generators must be a list of names", "group.generators")
    relations = _require(grp, "relations", "group")
    tau = _require(grp, "tau", "group")
    tau_order = _as_int(_require(grp, "tau_order", "group"), "group.tau_order")
    declared = grp.get("order")
    if declared is not None:
        declared = _as_int(declared, "group.order")
    try:
        group = GroupData.from_strings(generators, relations, tau, tau_order, declared)
    except (GaloisEquivError, ValueError) as exc:
        raise ParseError(str(exc), "group")

    rep_block = _require(data, "representation", "$")
    if not isinstance(rep_block, dict):
        raise ParseError("representation must be an object", "representation")
    matrices = []
    for name in generators:
        if name not in rep_block:
            raise ParseError(f"missing matrix for generator {name!r}", "representation")
        matrices.append(_as_matrix(rep_block[name], ext, f"representation.{name}"))
    n = matrices[0].nrows
    for name, m in zip(generators, matrices):
        if m.nrows != m.ncols or m.nrows != n:
            raise ParseError("matrices must be square and of equal size", f"representation.{name}")

    options = data.get("options", {})
    if not isinstance(options, dict):
        raise ParseError("options must be an object", "options")
    return Problem(ext, group, list(generators), matrices, options)


def parse_witness(text, ext: CyclicExtension, where: str) -> FieldElement:
    if isinstance(text, str):
        parts = [p.strip() for p in text.split(",")]
        return _as_element(parts, ext, where)
    return _as_element(text, ext, where)


# ---------------------------------------------------------------------------
# certificate serialization


def _element_json(x: FieldElement) -> list[str]:
    return [rational_to_string(c) for c in x.coeffs]


def _mat_json(m: Mat) -> list[list[list[str]]]:
    return [[_element_json(e) for e in row] for row in m.rows]


def certificate_to_json(cert: EquivarianceCertificate, problem: Problem) -> dict:
    return {
        "kind": "equivariance-certificate",
        "seed": cert.seed,
        "lambda_rep": rational_to_string(cert.lambda_rep),
        "lambda_canonical": None if cert.lambda_canonical is None else rational_to_string(cert.lambda_canonical),
        "is_trivial": cert.is_trivial,
        "x": _mat_json(cert.x),
        "witness": None if cert.witness is None else _element_json(cert.witness),
        "y": None if cert.y is None else _mat_json(cert.y),
        "rho_prime": None
        if cert.rho_prime is None
        else {name: _mat_json(m) for name, m in zip(problem.gen_names, cert.rho_prime)},
    }


def certificate_from_json(data: dict, problem: Problem) -> EquivarianceCertificate:
    ext = problem.ext
    where = "certificate"
    witness = data.get("witness")
    y = data.get("y")
    rho_prime = data.get("rho_prime")
    return EquivarianceCertificate(
        x=_as_matrix(data["x"], ext, f"{where}.x"),
        lambda_rep=_as_rational(data["lambda_rep"], f"{where}.lambda_rep"),
        lambda_canonical=None
        if data.get("lambda_canonical") is None
        else _as_rational(data["lambda_canonical"], f"{where}.lambda_canonical"),
        is_trivial=bool(data["is_trivial"]),
        witness=None if witness is None else _as_element(witness, ext, f"{where}.witness"),
        y=None if y is None else _as_matrix(y, ext, f"{where}.y"),
        rho_prime=None
        if rho_prime is None
        else tuple(_as_matrix(rho_prime[name], ext, f"{where}.rho_prime.{name}") for name in problem.gen_names),
        seed=_as_int(data.get("seed", 0), f"{where}.seed"),
    )


def load_replay(path: str, ext: CyclicExtension) -> Mat:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ParseError(str(exc), path)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}: line {exc.lineno} column {exc.colno}")
    if isinstance(data, dict):
        data = data.get("y")
    if data is None:
        raise ParseError("replay file carries no matrix under 'y'", path)
    return _as_matrix(data, ext, f"{path}: y")


# ---------------------------------------------------------------------------
# subcommands


def _dump(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _divides_declared_order(canonical: Fraction, order: int) -> bool:
    value = int(canonical)
    _, primes = factor(abs(value) if value else 1)
    return all(order % p == 0 for p, _ in primes)


def cmd_validate(problem: Problem, args) -> tuple[int, dict]:
    rep = problem.representation()
    rel = check_relations(rep)
    aut = check_automorphism(problem.group, rep)
    n = rep.dim
    dim = burnside_dim(rep)
    irreducible = dim == n * n
    ok = rel.ok and aut.ok and irreducible
    report = {
        "relations": [{"word": w, "holds": h} for w, h in rel.entries],
        "automorphism": [{"check": c, "holds": h} for c, h in aut.entries],
        "burnside_dim": dim,
        "absolutely_irreducible": irreducible,
        "ok": ok,
    }
    return (0 if ok else 1), report


def _witness_from(problem: Problem, args) -> Optional[FieldElement]:
    raw = args.witness if args.witness is not None else problem.options.get("witness")
    if raw is None:
        return None
    return parse_witness(raw, problem.ext, "--witness")


def cmd_lambda(problem: Problem, args) -> tuple[int, dict]:
    rep = problem.representation()
    inv = lambda_invariant(rep, _witness_from(problem, args))
    report = {
        "lambda_rep": rational_to_string(inv.lambda_rep),
        "lambda_canonical": None if inv.lambda_canonical is None else rational_to_string(inv.lambda_canonical),
        "is_trivial": inv.is_trivial,
    }
    order = problem.group.declared_order
    if order and inv.lambda_canonical is not None and not inv.is_trivial:
        report["lambda_primes_divide_declared_order"] = _divides_declared_order(inv.lambda_canonical, order)
    return (0 if inv.is_trivial else 3), report


def cmd_equivariant(problem: Problem, args) -> tuple[int, dict]:
    rep = problem.representation()
    seed = args.seed if args.seed is not None else problem.options.get("seed", 0)
    budget = args.budget if args.budget is not None else problem.options.get("budget", 64)
    witness_budget = problem.options.get("witness_budget", 10**4)
    replay = load_replay(args.replay_y, problem.ext) if args.replay_y else None
    cert = equivariant_form(
        rep,
        seed=_as_int(seed, "options.seed"),
        budget=_as_int(budget, "options.budget"),
        witness=_witness_from(problem, args),
        replay_y=replay,
        witness_budget=_as_int(witness_budget, "options.witness_budget"),
    )
    payload = certificate_to_json(cert, problem)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(_dump(payload))
        with open(args.out, "r", encoding="utf-8") as handle:
            reloaded = certificate_from_json(json.load(handle), problem)
        if not verify_certificate(reloaded, rep).ok:
            raise GaloisEquivError("written certificate failed re-verification")
    if not cert.is_trivial:
        report = {
            "is_trivial": False,
            "obstruction": "lambda is not a norm from the extension",
            "lambda_rep": payload["lambda_rep"],
            "lambda_canonical": payload["lambda_canonical"],
            "certificate": payload,
        }
        if problem.ext.degree == 2 and cert.lambda_canonical is not None:
            report["symbol"] = [rational_to_string(cert.lambda_canonical), str(problem.ext.disc_core)]
        return 3, report
    verified = verify_certificate(cert, rep)
    return 0, {"is_trivial": True, "verified": verified.ok, "certificate": payload}


def cmd_induce(problem: Problem, args) -> tuple[int, dict]:
    rep = problem.representation()
    cp = build_crossed_product(rep)
    t = problem.ext.gen()
    samples = [(t, problem.ext.one() + t), (problem.ext.element([2] + [0] * (problem.ext.degree - 1)), t * t)]
    relations_ok = all(ok for pair in samples for _, ok in cp.relation_report(*pair))
    dim = endomorphism_dim(rep)
    result = schur_index(rep, _witness_from(problem, args))
    report = {
        "endo_dim": dim,
        "relations_ok": relations_ok,
        "schur_index": result.index,
        "symbol": None if result.symbol is None else [rational_to_string(result.symbol[0]), str(result.symbol[1])],
    }
    order = problem.group.declared_order
    if order and result.symbol is not None:
        report["lambda_primes_divide_declared_order"] = _divides_declared_order(result.symbol[0], order)
    return (0 if result.index == 1 else 3), report


_COMMANDS = {
    "validate": cmd_validate,
    "lambda": cmd_lambda,
    "equivariant": cmd_equivariant,
    "induce": cmd_induce,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galois-equiv",
        description="decide and construct Galois-equivariant forms of matrix representations",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "validate": "check relations, the automorphism, and absolute irreducibility",
        "lambda": "compute the norm-class invariant of the intertwiner",
        "equivariant": "construct the equivariant conjugate or report the obstruction",
        "induce": "analyze the induced representation and its Schur index",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("file", help="problem description file (JSON)")
        p.add_argument("--seed", type=int, default=None, help="seed for the randomized construction")
        p.add_argument("--budget", type=int, default=None, help="retry budget for the randomized construction")
        p.add_argument("--witness", default=None, help="norm witness as comma-separated coefficients, e.g. '2,-1'")
        p.add_argument("--replay-Y", dest="replay_y", default=None, help="file with a matrix to replay instead of searching")
        p.add_argument("--out", default=None, help="write the certificate to this file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        problem = load_problem(args.file)
        code, report = _COMMANDS[args.command](problem, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (GaloisEquivError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(_dump(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
