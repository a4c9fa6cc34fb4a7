"""Batch command-line front end.

Four subcommands share one JSON configuration format:

- ``construct``: build the orthogonal polynomials q_0..q_nmax and write their
  coefficients with the certifying determinant value for each degree.
- ``verify``: run the whole pipeline (orthogonality, eigenoperator, order
  prediction) and emit a deterministic report.
- ``operator``: build the differential operator and export its coefficients.
- ``rank``: compute a gamma-weighted rank with its full audit trail.

Exit codes: 0 success, 1 malformed input, 2 degenerate configuration
(vanishing determinant in range), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Tuple

from .construct import DegenerateConfigError, build_z, casorati_lambda, sobolev_poly
from .diffop import AssumptionFailed, EigenMismatch, build_bundle, operator_order, verify_eigen
from .exactmath import Poly, RationalFunction, rat, rat_str
from .rank import predicted_order, weighted_rank
from .sobolev import SobolevConfig, bilinear

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DEGENERATE = 2
EXIT_VERIFY = 3


class InputError(ValueError):
    pass


def _load_config(path: str) -> SobolevConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return SobolevConfig.from_json(data)
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad config {path}: {exc}") from exc


def _load_custom_s(path: Optional[str], cfg: SobolevConfig, sys_z) -> Optional[RationalFunction]:
    """Parse {num: coeffs, den: "auto-omega" | coeffs}; "auto-omega" puts the
    Casorati determinant in the denominator, which users cannot easily
    precompute themselves."""
    if path is None:
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        num = Poly.from_json(data["num"])
        den = data["den"]
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad custom S {path}: {exc}") from exc
    if den == "auto-omega":
        from .diffop import _omega

        omega = _omega(cfg, sys_z)
        return RationalFunction(num) / omega
    try:
        return RationalFunction(num, Poly.from_json(den))
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad custom S denominator: {exc}") from exc


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(cfg: SobolevConfig, n_max: int) -> Tuple[int, dict]:
    system = build_z(cfg)
    polys = []
    for n in range(n_max + 1):
        lam = casorati_lambda(system, cfg, n)
        qn = sobolev_poly(system, cfg, n)
        polys.append({"n": n, "lambda_n": rat_str(lam), "coeffs": qn.to_json()})
    return EXIT_OK, {"config": cfg.to_json(), "n_max": n_max, "polynomials": polys}


def cmd_verify(cfg: SobolevConfig, n_max: int, custom_s) -> Tuple[int, dict]:
    system = build_z(cfg)
    report: dict = {"config": cfg.to_json(), "lambda_nonzero_checked_to": n_max}
    for n in range(n_max + 1):
        if casorati_lambda(system, cfg, n) == 0:
            report["degenerate_at"] = n
            return EXIT_DEGENERATE, report

    failed = False
    ortho = {"status": "pass", "first_failure": None}
    qs = [sobolev_poly(system, cfg, n) for n in range(n_max + 1)]
    for n in range(n_max + 1):
        for j in range(n):
            if bilinear(cfg, qs[n], Poly.monomial(j)) != 0:
                ortho = {"status": "fail", "first_failure": {"n": n, "j": j}}
                failed = True
                break
        if ortho["status"] == "fail":
            break
        if bilinear(cfg, qs[n], qs[n]) == 0:
            ortho = {"status": "fail", "first_failure": {"n": n, "j": None}}
            failed = True
            break
    report["orthogonality"] = ortho

    assumption_status = {"s_omega_polynomial": True, "sigma_factorization": True, "eigenvalue_generator": True}
    try:
        bundle = build_bundle(cfg, system, custom_s)
    except AssumptionFailed as exc:
        assumption_status[exc.which] = False
        report["assumption_status"] = assumption_status
        report["eigen"] = {"status": "fail", "reason": str(exc)}
        return EXIT_VERIFY, report
    report["assumption_status"] = assumption_status

    try:
        eigenvalues = verify_eigen(bundle, cfg, system, n_max)
        report["eigen"] = {"status": "pass"}
        report["eigenvalues"] = [rat_str(v) for v in eigenvalues]
    except EigenMismatch as exc:
        report["eigen"] = {"status": "fail", "first_failure": exc.n}
        failed = True

    report["measured_order"] = operator_order(bundle)
    report["predicted_order"] = bundle.predicted_order
    if custom_s is None and report["measured_order"] != bundle.predicted_order:
        report["order_check"] = "fail"
        failed = True
    else:
        report["order_check"] = "pass"
    return (EXIT_VERIFY if failed else EXIT_OK), report


def cmd_operator(cfg: SobolevConfig, n_max: int, custom_s) -> Tuple[int, dict]:
    system = build_z(cfg)
    for n in range(n_max + 1):
        if casorati_lambda(system, cfg, n) == 0:
            return EXIT_DEGENERATE, {"config": cfg.to_json(), "degenerate_at": n}
    try:
        bundle = build_bundle(cfg, system, custom_s)
    except AssumptionFailed as exc:
        return EXIT_VERIFY, {"config": cfg.to_json(), "assumption_failed": exc.which}
    try:
        verify_eigen(bundle, cfg, system, n_max)
    except EigenMismatch as exc:
        return EXIT_VERIFY, {"config": cfg.to_json(), "eigen_failed_at": exc.n}
    return EXIT_OK, {
        "config": cfg.to_json(),
        "operator": bundle.D.to_json(),
        "order": operator_order(bundle),
        "predicted_order": bundle.predicted_order,
        "assumptions": {"s_omega_polynomial": True, "sigma_factorization": True, "eigenvalue_generator": True},
        "eigen_checked_to": n_max,
    }


def cmd_rank(gamma: str, matrix_json: str) -> Tuple[int, dict]:
    try:
        gamma_value = rat(gamma)
        rows = json.loads(matrix_json)
        matrix = [[rat(c) for c in row] for row in rows]
        trace = weighted_rank(gamma_value, matrix)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad rank input: {exc}") from exc
    return EXIT_OK, {
        "gamma": rat_str(gamma_value),
        "eta": [rat_str(e) for e in trace.eta],
        "tau": list(trace.tau),
        "reduced_columns": list(trace.reduced_columns),
        "value": rat_str(trace.value),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacobisobolev",
        description="Sobolev-orthogonal Jacobi-type polynomials and their eigenoperators",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("construct", "verify", "operator"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        p.add_argument("--nmax", type=int, default=8)
        p.add_argument("--out", default=None)
        if name in ("verify", "operator"):
            p.add_argument("--custom-s", dest="custom_s", default=None)
    p = sub.add_parser("rank")
    p.add_argument("--gamma", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "rank":
            code, payload = cmd_rank(args.gamma, args.matrix)
        else:
            cfg = _load_config(args.config)
            if args.nmax < 0:
                raise InputError("--nmax must be nonnegative")
            if args.command == "construct":
                code, payload = cmd_construct(cfg, args.nmax)
            else:
                system = build_z(cfg)
                custom_s = _load_custom_s(args.custom_s, cfg, system)
                if args.command == "verify":
                    code, payload = cmd_verify(cfg, args.nmax, custom_s)
                else:
                    code, payload = cmd_operator(cfg, args.nmax, custom_s)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateConfigError as exc:
        print(f"degenerate configuration: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    _emit(payload, args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
