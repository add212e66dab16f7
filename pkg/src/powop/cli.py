"""Command-line interface: ``powop {alpha,psi,wpoly,dcoef,ranks,check}``.

Exit status: 0 success, 2 usage error, 3 computation error, 4 when ``check``
finds an invariant violation or a disagreement with published values.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass

from powop.padic import PrecisionError, is_prime
from powop.power_operation import (
    assemble_termwise,
    d_coefficient,
    d_coefficient_oracle,
    frobenius_check,
    psi_E,
    psi_F_report,
    specialize_alpha,
    trusted_floor,
)
from powop.ranks import RankQuery, sublattice_count_bruteforce
from powop.reference_values import compare_published
from powop.serialize import dumps, format_series, series_to_dict
from powop.series import SeriesPrecision, WindowError
from powop.solver import ConvergenceError, eq12_closed_forms, residual, solve_alpha
from powop.weierstrass import AlphaPolynomial, HPolynomial, w_coefficients, w_expand_oracle

log = logging.getLogger("powop")

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_CHECK = 0, 2, 3, 4
COMMANDS = ("alpha", "psi", "wpoly", "dcoef", "ranks", "check")
METHODS = ("fixed_point", "newton", "both")


class UsageError(ValueError):
    pass


def default_precision() -> int:
    raw = os.environ.get("POWOP_DEFAULT_PRECISION")
    if raw is None:
        return 64
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"POWOP_DEFAULT_PRECISION must be an integer, got {raw!r}") from None


@dataclass
class CliConfig:
    command: str
    p: int
    precision: int = 64
    max_exp: int | None = None
    min_floor: int | None = None
    format: str = "pretty"
    method: str = "fixed_point"
    # command-specific
    i: int | None = None
    tau: int | None = None
    rank: int | None = None
    m: int | None = None
    k: int | None = None
    bruteforce: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not is_prime(self.p):
            raise UsageError(f"--p must be a prime, got {self.p}")
        if self.precision < 2:
            raise UsageError("--precision must be >= 2")
        if self.max_exp is not None and self.max_exp < self.p + 1:
            raise UsageError(f"--max-exp must be >= p+1 = {self.p + 1}")
        if self.min_floor is not None and self.min_floor > -1:
            raise UsageError("--min-floor must be <= -1")
        if self.format not in ("json", "pretty"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")
        if self.method != "fixed_point" and self.command not in ("alpha", "psi"):
            raise UsageError("--method applies only to alpha and psi")
        if self.command == "dcoef":
            if (self.i is None) != (self.tau is None):
                raise UsageError("dcoef needs both --i and --tau, or neither for the full grid")
            if self.i is not None and not (0 <= self.i <= self.p and 1 <= self.tau <= self.p):
                raise UsageError(f"dcoef indices must satisfy 0 <= i <= p and 1 <= tau <= p")
        if self.command == "ranks":
            if self.rank is None:
                raise UsageError("ranks needs --rank")
            try:
                RankQuery(self.p, self.rank, self.m, self.k)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            if self.bruteforce and self.m is None:
                raise UsageError("--bruteforce applies to --m queries only")
        return self

    @property
    def window(self) -> SeriesPrecision:
        return SeriesPrecision.default(self.p, self.precision, self.max_exp, self.min_floor)

    def display_floor(self) -> int:
        if self.min_floor is not None:
            return trusted_floor(self.window, self.p) if self.command == "psi" else self.min_floor
        if self.command == "psi":
            return -self.p
        return -3 * (self.p + 1) - 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powop",
        description="Total power operation on K(1)-local height-2 Morava E-theory, exactly.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(name, help, methods=False):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--p", type=int, required=True, help="prime")
        sp.add_argument("--precision", type=int, default=None, help="p-adic precision N (default 64)")
        sp.add_argument("--max-exp", "--max_exp", dest="max_exp", type=int, default=None,
                        help="largest retained h-exponent (default 2p)")
        sp.add_argument("--min-floor", "--min_floor", dest="min_floor", type=int, default=None,
                        help="explicit exponent floor (default: self-limiting)")
        sp.add_argument("--format", choices=("json", "pretty"), default="pretty")
        if methods:
            sp.add_argument("--method", choices=METHODS, default="fixed_point")
        return sp

    common("alpha", "root alpha* of w(h, alpha)", methods=True)
    common("psi", "psi^p_F(h)", methods=True)
    common("wpoly", "coefficients of w(h, alpha)")
    sp = common("dcoef", "combinatorial coefficients d_{i,tau}")
    sp.add_argument("--i", type=int, default=None)
    sp.add_argument("--tau", type=int, default=None)
    sp = common("ranks", "sublattice and Z_p^r-set counts")
    sp.add_argument("--rank", type=int, default=None, help="lattice rank r = n-1")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--m", type=int, default=None, help="index exponent: count index-p^m sublattices")
    group.add_argument("--k", type=int, default=None, help="set order: count order-k Z_p^r-sets")
    sp.add_argument("--bruteforce", action="store_true", help="count by HNF enumeration")
    common("check", "run the invariant suite for one prime")
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=args.command,
        p=args.p,
        precision=default_precision() if args.precision is None else args.precision,
        max_exp=args.max_exp,
        min_floor=args.min_floor,
        format=args.format,
        method=getattr(args, "method", "fixed_point"),
        i=getattr(args, "i", None),
        tau=getattr(args, "tau", None),
        rank=getattr(args, "rank", None),
        m=getattr(args, "m", None),
        k=getattr(args, "k", None),
        bruteforce=getattr(args, "bruteforce", False),
    )


# -- command bodies: each returns (exit status, text) -------------------------


def _poly_terms(poly: HPolynomial) -> list[dict]:
    return [{"exp": k, "coeff": str(c)} for k, c in sorted(poly.coeffs.items(), reverse=True)]


def _wpoly_entry(poly: HPolynomial):
    if poly.is_constant():
        return poly.constant()
    return str(poly)


def _alpha_terms(poly: AlphaPolynomial) -> str:
    parts = []
    for i in range(poly.degree(), -1, -1):
        c = poly[i]
        mono = "" if i == 0 else "a" if i == 1 else f"a^{i}"
        if len(c.coeffs) == 1:
            (e, v), = c.coeffs.items()
            hpart = "" if e == 0 else "h" if e == 1 else f"h^{e}"
            parts.append((v, hpart + mono))
        elif c.coeffs:
            parts.append((1, f"({c}){mono}"))
    out = []
    for c, mono in parts:
        body = mono if (abs(c) == 1 and mono) else f"{abs(c)}{mono}"
        sign = ("- " if c < 0 else "+ ") if out else ("-" if c < 0 else "")
        out.append(sign + body)
    return " ".join(out) or "0"


def _solve(cfg: CliConfig):
    methods = ["fixed_point", "newton"] if cfg.method == "both" else [cfg.method]
    reports = [solve_alpha(cfg.p, cfg.precision, m, cfg.window) for m in methods]
    agree = all(r.alpha_star == reports[0].alpha_star for r in reports)
    if not agree:
        raise ArithmeticError("fixed-point and Newton roots disagree")
    return reports


def _certify(cfg: CliConfig, compute, floor: int):
    """Recompute with a widened window; reported coefficients must not move."""
    base = compute(cfg.window)
    wide = compute(cfg.window.widened(4, 8))
    keep = lambda s: {k: c for k, c in s.residues().items() if k > floor and k <= cfg.window.max_exp}
    if keep(base) != keep(wide):
        raise WindowError("reported coefficients changed under a wider window; enlarge max_exp or lower min_floor")
    return base


def cmd_alpha(cfg: CliConfig):
    reports = _solve(cfg)
    floor = cfg.display_floor()
    alpha = _certify(cfg, lambda w: solve_alpha(cfg.p, cfg.precision, reports[0].method, w).alpha_star, floor)
    if cfg.format == "pretty":
        return EXIT_OK, format_series(alpha, floor)
    doc = {
        "command": "alpha",
        "method": cfg.method,
        "series": series_to_dict(alpha, floor),
        "iterations": {r.method: r.iterations for r in reports},
        "residual_valuation": min(r.residual_valuation for r in reports),
        "window_stable": True,
    }
    comparison = compare_published(cfg.p, cfg.precision)
    if comparison is not None:
        doc["paper_example_comparison"] = comparison
    return EXIT_OK, dumps(doc)


def cmd_psi(cfg: CliConfig):
    _solve(cfg)
    method = "newton" if cfg.method == "newton" else "fixed_point"
    floor = cfg.display_floor()
    result = psi_F_report(cfg.p, cfg.precision, cfg.window, method)
    if not result.termwise_agrees:
        raise ArithmeticError("psi_F assembly orders disagree")
    series = _certify(cfg, lambda w: psi_F_report(cfg.p, cfg.precision, w, method).series, floor)
    if cfg.format == "pretty":
        return EXIT_OK, format_series(series, floor)
    doc = {
        "command": "psi",
        "method": cfg.method,
        "series": series_to_dict(series, floor),
        "psi_E": [_poly_terms(c) for c in psi_E(cfg.p).coeffs],
        "frobenius_congruence": frobenius_check(series, cfg.p).ok,
        "assembly_orders_agree": True,
        "window_stable": True,
    }
    comparison = compare_published(cfg.p, cfg.precision)
    if comparison is not None:
        doc["paper_example_comparison"] = comparison
    return EXIT_OK, dumps(doc)


def cmd_wpoly(cfg: CliConfig):
    ws = w_coefficients(cfg.p)
    if cfg.format == "pretty":
        return EXIT_OK, _alpha_terms(AlphaPolynomial(ws))
    doc = {
        "p": cfg.p,
        "coefficients": [_wpoly_entry(c) for c in ws],
        "oracle_agrees": ws == w_expand_oracle(cfg.p),
    }
    return EXIT_OK, dumps(doc)


def cmd_dcoef(cfg: CliConfig):
    if cfg.i is not None:
        grid = [(cfg.i, cfg.tau)]
    else:
        grid = [(i, tau) for i in range(cfg.p + 1) for tau in range(1, cfg.p + 1)]
    rows = []
    for i, tau in grid:
        d = d_coefficient(cfg.p, i, tau)
        rows.append({"i": i, "tau": tau, "d": _poly_terms(d), "text": str(d),
                     "oracle_agrees": d == d_coefficient_oracle(cfg.p, i, tau)})
    if not all(r["oracle_agrees"] for r in rows):
        raise ArithmeticError("enumeration and dynamic-programming d coefficients disagree")
    if cfg.format == "pretty":
        if len(rows) == 1:
            return EXIT_OK, rows[0]["text"]
        return EXIT_OK, "\n".join(f"d[{r['i']},{r['tau']}] = {r['text']}" for r in rows)
    return EXIT_OK, dumps({"p": cfg.p, "coefficients": rows})


def cmd_ranks(cfg: CliConfig):
    query = RankQuery(cfg.p, cfg.rank, cfg.m, cfg.k)
    value = sublattice_count_bruteforce(cfg.p, cfg.rank, cfg.m) if cfg.bruteforce else query.evaluate()
    if cfg.format == "pretty":
        return EXIT_OK, str(value)
    kind = "sublattice_count" if cfg.m is not None else "zpn_set_count"
    doc = {"p": cfg.p, "rank": cfg.rank, "m": cfg.m, "k": cfg.k, "kind": kind,
           "method": "bruteforce" if cfg.bruteforce else "closed_form", "value": str(value)}
    return EXIT_OK, dumps(doc)


def run_checks(p: int, N: int, window: SeriesPrecision | None = None) -> dict:
    """Evaluate every invariant for one prime; returns a structured report."""
    window = window or SeriesPrecision.default(p, N)
    checks = {}
    w = AlphaPolynomial(w_coefficients(p))
    checks["w_matches_expansion"] = tuple(w_coefficients(p)) == tuple(w_expand_oracle(p))
    target = AlphaPolynomial([0, HPolynomial.h(1, -1)] + [0] * (p - 1) + [1]).mod(p)
    checks["w_mod_p_is_alpha_times_alpha_p_minus_h"] = w.mod(p) == target
    checks["d_matches_dp_oracle"] = all(
        d_coefficient(p, i, t) == d_coefficient_oracle(p, i, t) for i in range(p + 1) for t in range(1, p + 1)
    )
    psi_poly = psi_E(p)
    checks["psi_E_constant_term_h_degree_p"] = psi_poly[0].degree() == p and psi_poly.degree() <= p
    checks["psi_E_constant_term_mod_p_is_h_p"] = psi_poly[0].mod(p) == HPolynomial.h(p)
    fixed = solve_alpha(p, N, "fixed_point", window)
    newton = solve_alpha(p, N, "newton", window)
    alpha = fixed.alpha_star
    checks["alpha_residual_vanishes"] = residual(alpha).valuation() >= N
    checks["alpha_zero_mod_p"] = alpha.valuation() >= 1
    checks["alpha_methods_agree"] = alpha == newton.alpha_star
    c1, c3 = eq12_closed_forms(p)
    checks["alpha_leading_closed_forms"] = (alpha.signed_coeff(-1), alpha.signed_coeff(-3)) == (c1, c3)
    psi = specialize_alpha(psi_poly, alpha)
    checks["psi_F_assembly_orders_agree"] = psi == assemble_termwise(p, alpha)
    frob = frobenius_check(psi, p)
    checks["frobenius_congruence"] = frob.ok
    wide = specialize_alpha(psi_poly, solve_alpha(p, N, "fixed_point", window.widened(4, 8)).alpha_star)
    checks["psi_F_window_stable"] = {k: c for k, c in wide.residues().items() if k <= window.max_exp} == psi.residues()
    report = {
        "p": p,
        "padic_precision": N,
        "checks": checks,
        "alpha_star": series_to_dict(alpha, -3 * (p + 1) - 1),
        "psi_F": series_to_dict(psi, -p),
    }
    if not frob.ok:
        report["frobenius_witness"] = {"exp": frob.exponent, "residue_mod_p": frob.coefficient}
    comparison = compare_published(p, N)
    if not all(checks.values()):
        report["status"] = "violation"
    elif comparison is not None and comparison["status"] == "discrepancy":
        report["status"] = "discrepancy"
    else:
        report["status"] = "ok"
    if comparison is not None:
        report["paper_example_comparison"] = comparison
    return report


def cmd_check(cfg: CliConfig):
    report = run_checks(cfg.p, cfg.precision, cfg.window)
    status = EXIT_OK if report["status"] == "ok" else EXIT_CHECK
    if cfg.format == "json":
        return status, dumps(report)
    lines = [f"check p={cfg.p} N={cfg.precision}: {report['status']}"]
    lines += [f"  {'PASS' if ok else 'FAIL'}  {name}" for name, ok in report["checks"].items()]
    comparison = report.get("paper_example_comparison")
    if comparison is not None:
        lines.append(f"  published values: {comparison['status']}")
        for key in ("alpha_star", "psi_F"):
            for row in comparison[key]:
                if not row["match"]:
                    lines.append(f"    {key} h^{row['exp']}: printed {row['printed']}, computed {row['computed']}")
        for row in comparison["alpha_residual_adjudication"]:
            lines.append(
                f"    residual valuation with printed h^{row['exp']} coefficient: "
                f"{row['residual_valuation_printed']} (computed root: {row['residual_valuation_computed']})"
            )
        variants = comparison.get("psi_E_variants")
        if variants is not None and not variants["match"]:
            lines.append(f"    psi_E: printed {variants['printed']}, computed {variants['computed']}")
    return status, "\n".join(lines)


HANDLERS = {
    "alpha": cmd_alpha,
    "psi": cmd_psi,
    "wpoly": cmd_wpoly,
    "dcoef": cmd_dcoef,
    "ranks": cmd_ranks,
    "check": cmd_check,
}


def run(config: CliConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        config.validate()
    except UsageError as exc:
        print(f"powop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        status, text = HANDLERS[config.command](config)
    except (WindowError, ConvergenceError, PrecisionError, ArithmeticError) as exc:
        print(f"powop: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    stdout.write(text + "\n")
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        config = config_from_args(args)
    except UsageError as exc:
        print(f"powop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
