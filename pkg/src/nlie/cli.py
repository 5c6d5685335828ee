"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 parse or usage errors,
3 violated mathematical preconditions, 4 inconclusive searches.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .catalog import CaseId, case_dim, instantiate, list_cases, param_grid
from .classify import Inconclusive, Isomorphic, Match, are_isomorphic, classify
from .core import jacobi_check
from .errors import (
    BadIndex,
    CaseNotRealizable,
    DimensionMismatch,
    FieldMismatch,
    NLieError,
    NotNLie,
    ParamError,
    ParseError,
    SingularMatrix,
    WrongDimension,
)
from .gf import GF, format_scalar
from .invariants import fingerprint
from .linalg import Mat, random_invertible
from .serialize import emit_algebra, emit_matrix, parse_algebra, parse_matrix
from .structmat import change_basis

SCHEMA = "nlie/1"

# parameters holding field scalars (printed as hex); p, q, r are plain integers
_SCALAR_PARAMS = {"alpha", "beta", "gamma", "s", "t", "u"}


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_algebra(path: str):
    return parse_algebra(_read(path))


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def _vec_hex(v) -> list[str]:
    return [format_scalar(x) for x in v]


def _matrix_hex(M: Mat) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in M]


def _format_params(params: dict) -> str:
    parts = []
    for name in sorted(params):
        value = params[name]
        text = format_scalar(value) if name in _SCALAR_PARAMS else str(value)
        parts.append(f"{name}={text}")
    return " ".join(parts)


def _cmd_verify(args) -> int:
    A = _load_algebra(args.file)
    violations = jacobi_check(A)
    if args.json:
        _print_json(
            {
                "schema": SCHEMA,
                "violations": [
                    {
                        "x": list(v.x),
                        "y": list(v.y),
                        "left": _vec_hex(v.left),
                        "right": _vec_hex(v.right),
                    }
                    for v in violations
                ],
            }
        )
    elif not violations:
        print("ok: fundamental identity holds")
    else:
        for v in violations:
            print(
                f"violation at x={v.x} y={v.y}: "
                f"left={' '.join(_vec_hex(v.left))} right={' '.join(_vec_hex(v.right))}"
            )
    return 0 if not violations else 1


def _cmd_invariants(args) -> int:
    A = _load_algebra(args.file)
    small = A.field.q == 2 and A.d <= 6
    fp = fingerprint(A, decompose=small)
    if args.json:
        _print_json(
            {
                "schema": SCHEMA,
                "arity": fp.n,
                "dim": fp.d,
                "derived_dim": fp.dim_derived,
                "series": list(fp.derived_series_dims),
                "center_dim": fp.dim_center,
                "abelian": fp.is_abelian,
                "nilpotent": fp.is_nilpotent,
                "derived_in_center": fp.derived_in_center,
                "inner_derivation_dim": fp.inner_deriv_dim,
                "decomposable": fp.decomposable,
            }
        )
        return 0
    print(f"arity: {fp.n}")
    print(f"dim: {fp.d}")
    print(f"derived_dim: {fp.dim_derived}")
    print(f"series: {' '.join(str(k) for k in fp.derived_series_dims)}")
    print(f"center_dim: {fp.dim_center}")
    print(f"abelian: {'yes' if fp.is_abelian else 'no'}")
    print(f"nilpotent: {'yes' if fp.is_nilpotent else 'no'}")
    print(f"derived_in_center: {'yes' if fp.derived_in_center else 'no'}")
    print(f"inner_derivation_dim: {fp.inner_deriv_dim}")
    print(f"decomposable: {fp.decomposable}")
    return 0


def _cmd_classify(args) -> int:
    A = _load_algebra(args.file)
    kwargs = {} if args.budget is None else {"budget": args.budget}
    result = classify(A, **kwargs)
    if isinstance(result, Match):
        if args.json:
            _print_json(
                {
                    "schema": SCHEMA,
                    "case": result.case_id.value,
                    "params": dict(result.params),
                    "witness": _matrix_hex(result.witness),
                }
            )
        else:
            line = f"case {result.case_id.value}"
            if result.params:
                line += " " + _format_params(result.params)
            print(line)
            print(emit_matrix(result.witness), end="")
        return 0
    if args.json:
        _print_json(
            {
                "schema": SCHEMA,
                "case": None,
                "attempts": [
                    [case.value, outcome] for case, outcome in result.attempts
                ],
            }
        )
    else:
        print("unknown: no catalog case confirmed")
    return 4


def _cmd_iso(args) -> int:
    A = _load_algebra(args.file_a)
    B = _load_algebra(args.file_b)
    kwargs = {} if args.budget is None else {"budget": args.budget}
    verdict = are_isomorphic(A, B, **kwargs)
    if isinstance(verdict, Isomorphic):
        if args.json:
            _print_json(
                {
                    "schema": SCHEMA,
                    "isomorphic": True,
                    "witness": _matrix_hex(verdict.witness),
                }
            )
        else:
            print("isomorphic")
            print(emit_matrix(verdict.witness), end="")
        return 0
    if isinstance(verdict, Inconclusive):
        if args.json:
            _print_json(
                {"schema": SCHEMA, "isomorphic": None, "trials": verdict.trials}
            )
        else:
            print(f"inconclusive after {verdict.trials} trials")
        return 4
    if args.json:
        _print_json(
            {"schema": SCHEMA, "isomorphic": False, "reason": verdict.reason}
        )
    else:
        print(f"not isomorphic: {verdict.reason}")
    return 0


def _parse_param_args(pairs: list[str]) -> dict[str, int]:
    params: dict[str, int] = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name:
            raise ParamError(f"--param needs name=value, got {pair!r}")
        try:
            params[name] = int(value, 0)
        except ValueError:
            raise ParamError(f"parameter value {value!r} is not an integer") from None
    return params


def _cmd_catalog(args) -> int:
    field = GF.from_name(args.field)
    if args.case is None:
        for info in list_cases(args.n, args.dim):
            bits = [f"{info.case_id.value}"]
            if info.constraint:
                bits.append(info.constraint)
            if info.int_choices:
                choices = " | ".join(
                    " ".join(f"{k}={v}" for k, v in choice)
                    for choice in info.int_choices
                )
                bits.append(choices)
            print("  ".join(bits))
        return 0
    case = CaseId.from_name(args.case)
    if case_dim(case, args.n) != args.dim:
        raise ParamError(
            f"case {case.value} has dimension {case_dim(case, args.n)} at n={args.n}, "
            f"not {args.dim}"
        )
    params = _parse_param_args(args.param or [])
    A = instantiate(args.n, case, params, field)
    print(emit_algebra(A), end="")
    return 0


def _cmd_change_basis(args) -> int:
    A = _load_algebra(args.file)
    raw = args.matrix
    path = Path(raw)
    text = path.read_text(encoding="utf-8") if path.exists() else raw.replace(";", "\n")
    M = parse_matrix(text, A.field, A.d)
    B = change_basis(A, M)
    print(emit_algebra(B), end="")
    return 0


def _cmd_random(args) -> int:
    field = GF.from_name(args.field)
    case = CaseId.from_name(args.case)
    rng = random.Random(args.seed)
    grid = list(param_grid(case, args.n, field))
    if not grid:
        raise ParamError(
            f"case {case.value} has no valid parameters at n={args.n} over GF({field.name})"
        )
    params = rng.choice(grid)
    A = instantiate(args.n, case, params, field)
    T = random_invertible(field, A.d, rng)
    print(emit_algebra(change_basis(A, T)), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nla",
        description="Exact workbench for n-ary algebras over GF(2^m)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the fundamental identity")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("invariants", help="print basis-independent invariants")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("classify", help="match against the catalog")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("iso", help="decide isomorphism of two algebras")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("catalog", help="list or instantiate catalog cases")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--case")
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--field", default="2^1")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("change-basis", help="transport an algebra by a matrix")
    p.add_argument("file")
    p.add_argument("--matrix", required=True, help="matrix file, or inline rows separated by ';'")
    p.set_defaults(func=_cmd_change_basis)

    p = sub.add_parser("random", help="seeded scrambled catalog instance")
    p.add_argument("--case", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_random)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        ParamError,
        CaseNotRealizable,
        SingularMatrix,
        FieldMismatch,
        DimensionMismatch,
        WrongDimension,
        NotNLie,
        BadIndex,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NLieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
