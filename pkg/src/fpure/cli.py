"""Command-line front end: ``fpure <command> ...``.

Exit codes: 0 success, 1 reference mismatch, 2 parse error, 3 precondition
error.  ``--json`` prints machine-readable output in which every integer is a
decimal string.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .basep import INF
from .candidates import (
    Candidate,
    Pair,
    digit_minimality_filter,
    main_candidates,
    two_variable_candidates,
)
from .errors import FpureError, InvariantViolation, ParseError, PreconditionError
from .fptengine import DEFAULT_E_CAP, FptResult, fpt_exact, nu_sequence, perturbation_report
from .gradedpoly import Grading, GradedPolynomial, check_homogeneous, weighted_degree
from .lct import (
    bad_density_lower_bound,
    density_csv,
    density_rows,
    difference_bounds,
    empirical_density,
    is_certified_bad_prime,
    is_prime,
    lct_of,
    primes_up_to,
)
from .polytext import format_polynomial, format_rational, parse_polynomial, parse_rational
from .reference import run_suite

EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def parse_primes(text: str) -> list[int]:
    """``17``, ``11,13,17`` or an inclusive range ``11-31``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if "-" in part:
                lo, hi = (int(s) for s in part.split("-", 1))
                if lo > hi:
                    raise ParseError(f"empty prime range {part!r}")
                out.extend(q for q in primes_up_to(hi) if q >= lo)
                continue
            q = int(part)
        except ValueError as exc:
            raise ParseError(f"not a prime or range: {part!r}") from exc
        if not is_prime(q):
            raise ParseError(f"{q} is not prime")
        out.append(q)
    if not out:
        raise ParseError(f"no primes in {text!r}")
    return out


def _prime_arg(text: str) -> list[int]:
    try:
        return parse_primes(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_weights(text: str | None, n: int) -> Grading:
    if text is None:
        return Grading.standard(n)
    try:
        ws = tuple(int(s) for s in text.split(","))
    except ValueError as exc:
        raise ParseError(f"weights must be comma-separated integers: {text!r}") from exc
    if any(w < 1 for w in ws):
        raise ParseError(f"weights must be positive: {text!r}")
    return Grading(ws)


def _nvars_hint(weights: str | None) -> int | None:
    return None if weights is None else len(weights.split(","))


def _graded(poly_text: str, p: int, weights: str | None) -> GradedPolynomial:
    f = parse_polynomial(poly_text, p, _nvars_hint(weights))
    return check_homogeneous(f, parse_weights(weights, f.nvars))


def _s(x: int) -> str:
    return str(int(x))


def _rat_json(q: Fraction) -> dict[str, str]:
    return {"num": _s(q.numerator), "den": _s(q.denominator)}


def _prov_json(pr) -> Any:
    return {"L": _s(pr.L), "E": _s(pr.E)} if isinstance(pr, Pair) else pr


def _cand_json(c: Candidate) -> dict[str, Any]:
    return {
        **_rat_json(c.value),
        "provenance": [_prov_json(pr) for pr in c.provenances],
        "filters": sorted(c.filters_passed),
    }


def result_json(f: GradedPolynomial, res: FptResult) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": res.kind, "num": None, "den": None, "L": None, "E": None, "survivors": []}
    if res.is_exact:
        out.update(_rat_json(res.value))
        pair = res.pair
        if pair is not None:
            out["L"], out["E"] = _s(pair.L), _s(pair.E)
        elif res.certificates and res.certificates[0] != "secondary":
            out["L"] = "inf"
        out["certificates"] = [_prov_json(pr) for pr in res.certificates]
    else:
        out["survivors"] = [_cand_json(c) for c in res.survivors]
        out["lower_bound"] = _rat_json(res.lower_bound)
        out["reason"] = res.reason
    return {
        "prime": _s(res.prime),
        "weights": [_s(w) for w in f.grading.weights],
        "poly": format_polynomial(f.poly),
        "lambda": _rat_json(res.lam),
        "result": out,
        "nu": [_s(v) for v in res.nus],
    }


def _workers(jobs: int) -> int:
    cap = os.environ.get("FPT_THREADS")
    limit = os.cpu_count() or 1
    if cap:
        try:
            limit = max(1, int(cap))
        except ValueError:
            raise ParseError(f"FPT_THREADS must be an integer, got {cap!r}") from None
    return max(1, min(limit, jobs))


def fan_out(fn: Callable, args: Sequence) -> list:
    """Apply ``fn`` to each argument, in parallel when allowed; order is kept."""
    workers = _workers(len(args))
    if workers == 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args))


def _fpt_job(job: tuple[str, int, str | None, int]) -> tuple[GradedPolynomial, FptResult]:
    text, p, weights, e_cap = job
    f = _graded(text, p, weights)
    return f, fpt_exact(f, e_cap)


def _describe(res: FptResult) -> str:
    if res.is_exact:
        certs = ", ".join("lambda" if pr == "lambda" else str(pr) for pr in res.certificates)
        L = "inf" if res.L == INF else res.L
        return f"p = {res.prime}: fpt = {format_rational(res.value)}  L = {L}  [{certs}]"
    surv = ", ".join(format_rational(c.value) for c in res.survivors) or "-"
    return (
        f"p = {res.prime}: undetermined ({res.reason}); fpt >= {format_rational(res.lower_bound)}; "
        f"survivors: {surv}"
    )


def cmd_fpt(args) -> int:
    jobs = [(args.poly, p, args.weights, args.e_cap) for p in args.prime]
    results = fan_out(_fpt_job, jobs)
    if args.json:
        payload = [result_json(f, r) for f, r in results]
        _dump(payload[0] if len(payload) == 1 else payload)
    else:
        f = results[0][0]
        print(f"f = {format_polynomial(f.poly)}  weights {f.grading.weights}  lambda = {format_rational(results[0][1].lam)}")
        for _, r in results:
            print(_describe(r))
    return 0


def cmd_nu(args) -> int:
    rows = []
    for p in args.prime:
        if args.weights is None:
            f: Any = parse_polynomial(args.poly, p)
        else:
            f = _graded(args.poly, p, args.weights)
        rows.append((p, [r.nu for r in nu_sequence(f, args.e)]))
    if args.json:
        _dump([{"prime": _s(p), "nu": [_s(v) for v in nus]} for p, nus in rows])
    else:
        for p, nus in rows:
            print(f"p = {p}: " + "  ".join(f"nu_{i} = {v}" for i, v in enumerate(nus, 1)))
    return 0


def cmd_candidates(args) -> int:
    lam = parse_rational(args.lam)
    a, b = lam.numerator, lam.denominator
    out = []
    for p in args.prime:
        if args.two_variable:
            cands = two_variable_candidates(a, b, p)
        else:
            cands = main_candidates(args.n, a, b, p)
        if not args.no_filter:
            cands = digit_minimality_filter(cands, p, args.depth)
        out.append((p, cands))
    if args.json:
        _dump([{"prime": _s(p), "candidates": [_cand_json(c) for c in cs]} for p, cs in out])
        return 0
    for p, cs in out:
        print(f"p = {p}  (p mod {b} = {p % b})")
        print(f"  {'value':>24}  {'L':>4}  {'E':>3}  provenance")
        for c in cs:
            pair = min(c.pairs) if c.pairs else None
            L = pair.L if pair else "inf"
            E = pair.E if pair else "-"
            provs = ", ".join("lambda" if pr == "lambda" else str(pr) for pr in c.provenances)
            print(f"  {format_rational(c.value):>24}  {L:>4}  {E:>3}  {provs}")
    return 0


def cmd_lct(args) -> int:
    if args.poly is not None:
        p0 = args.prime[0] if args.prime else 101
        f = _graded(args.poly, p0, args.weights)
        g, deg = f.grading, f.degree
    else:
        if args.weights is None or args.degree is None:
            raise ParseError("give a polynomial, or both --weights and --degree")
        g, deg = parse_weights(args.weights, 0), args.degree
    lam = lct_of(g, deg)
    rows = []
    for p in args.prime or []:
        try:
            rows.append((p, difference_bounds(g.nvars, lam.numerator, lam.denominator, p)))
        except PreconditionError:
            rows.append((p, None))
    if args.json:
        _dump(
            {
                "lct": _rat_json(lam),
                "bounds": [
                    {"prime": _s(p), "lower": _rat_json(d.lower) if d else None, "upper": _rat_json(d.upper) if d else None}
                    for p, d in rows
                ],
            }
        )
        return 0
    print(f"lct = {format_rational(lam)}")
    for p, d in rows:
        if d is None:
            print(f"p = {p}: p divides the denominator; no bound")
        else:
            print(f"p = {p}: {format_rational(d.lower)} <= lct - fpt <= {format_rational(d.upper)}  (when they differ)")
    return 0


def cmd_bad_primes(args) -> int:
    lam = parse_rational(args.lam)
    a, b = lam.numerator, lam.denominator
    rows = density_rows(a, b, args.prime)
    if args.csv:
        sys.stdout.write(density_csv(rows))
        return 0
    density = empirical_density(lambda q: b % q != 0 and a != 1 and is_certified_bad_prime(a, b, q), args.cap)
    bound = bad_density_lower_bound(a, b) if a != 1 else None
    if args.json:
        _dump(
            {
                "lambda": _rat_json(lam),
                "rows": [{"prime": _s(r.prime), "residue": _s(r.residue), "certified_bad": r.certified_bad} for r in rows],
                "empirical_density": _rat_json(density),
                "cap": _s(args.cap),
                "lower_bound": _rat_json(bound) if bound is not None else None,
            }
        )
        return 0
    for r in rows:
        status = "p | b" if r.certified_bad is None else ("certified bad" if r.certified_bad else "-")
        print(f"p = {r.prime:>6}  p mod {b} = {r.residue:>3}  {status}")
    print(f"certified-bad density over primes <= {args.cap}: {format_rational(density)} ~ {float(density):.4f}")
    if bound is not None:
        print(f"asymptotic lower bound: {format_rational(bound)}")
    return 0


def cmd_perturb(args) -> int:
    p = args.prime[0]
    f = _graded(args.poly, p, args.weights)
    g = parse_polynomial(args.g, p, f.nvars)
    rep = perturbation_report(f, g, args.e_cap)
    if args.json:
        _dump(
            {
                "fpt": result_json(f, rep.fpt),
                "g": format_polynomial(g),
                "g_degrees": sorted({_s(weighted_degree(m, f.grading)) for m, _ in g}),
                "lower_ok": rep.lower_ok,
                "upper_ok": rep.upper_ok,
                "strict_increase": rep.strict_increase,
                "constancy_guaranteed": rep.constancy_guaranteed,
                "constancy_reasons": list(rep.constancy_reasons),
                "min_perturbation_degree": _s(rep.min_perturbation_degree),
            }
        )
        return 0
    v = rep.fpt.value
    print(_describe(rep.fpt))
    print(f"g = {format_polynomial(g)}")
    print(f"fpt(f + g) >= {format_rational(v)}: yes")
    if rep.upper_ok is None:
        print("upper test not applicable: fpt(f) is not of the form N/p^L")
    elif rep.upper_ok:
        print(f"(f + g)^{v * p ** rep.upper_level} in m^[{rep.upper_level}]: fpt(f + g) = {format_rational(v)}")
    else:
        print(f"(f + g)^{v * p ** rep.upper_level} not in m^[{rep.upper_level}]: fpt(f + g) > {format_rational(v)}")
    reasons = "; ".join(rep.constancy_reasons) or "none"
    print(f"constancy guaranteed for all such g: {'yes' if rep.constancy_guaranteed else 'no'} ({reasons})")
    print(f"degree beyond which every perturbation is harmless: {rep.min_perturbation_degree}")
    return 0


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    failed = [c for c in checks if not c.ok]
    if args.json:
        _dump(
            {
                "suite": args.suite,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks],
                "failed": _s(len(failed)),
            }
        )
    else:
        for c in checks:
            print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}  {c.detail}")
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_MISMATCH if failed else 0


def _dump(obj: Any) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fpure", description="Exact F-pure thresholds of quasi-homogeneous polynomials over F_p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, prime_required=True):
        sp.add_argument("-p", "--prime", type=_prime_arg, required=prime_required, help="prime, list a,b,c or range lo-hi")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("fpt", help="exact F-pure threshold")
    common(sp)
    sp.add_argument("--weights", help="comma-separated weights (default: all 1)")
    sp.add_argument("--e-cap", type=int, default=DEFAULT_E_CAP)
    sp.add_argument("poly")
    sp.set_defaults(func=cmd_fpt)

    sp = sub.add_parser("nu", help="the sequence nu_1, ..., nu_e")
    common(sp)
    sp.add_argument("--weights")
    sp.add_argument("-e", type=int, default=3, help="number of levels")
    sp.add_argument("poly")
    sp.set_defaults(func=cmd_nu)

    sp = sub.add_parser("candidates", help="candidate list for a given lambda")
    common(sp)
    sp.add_argument("--n", type=int, default=2, help="number of variables")
    sp.add_argument("--lambda", dest="lam", required=True, help="lambda as a/b")
    sp.add_argument("--two-variable", action="store_true", help="use the sharper two-variable list")
    sp.add_argument("--no-filter", action="store_true", help="skip the trailing-digit filter")
    sp.add_argument("--depth", type=int, default=None, help="tail depth for the filter (default: all)")
    sp.set_defaults(func=cmd_candidates)

    sp = sub.add_parser("lct", help="log canonical threshold and difference bounds")
    common(sp, prime_required=False)
    sp.add_argument("--weights")
    sp.add_argument("--degree", type=int)
    sp.add_argument("poly", nargs="?")
    sp.set_defaults(func=cmd_lct)

    sp = sub.add_parser("bad-primes", help="certified bad primes and their density")
    common(sp)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--cap", type=int, default=10**4, help="prime cap for the empirical density")
    sp.add_argument("--csv", action="store_true", help="CSV density report")
    sp.set_defaults(func=cmd_bad_primes)

    sp = sub.add_parser("perturb", help="effect of adding higher-degree terms")
    common(sp)
    sp.add_argument("--weights")
    sp.add_argument("--e-cap", type=int, default=DEFAULT_E_CAP)
    sp.add_argument("poly")
    sp.add_argument("g")
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("verify-paper", help="run the golden reference suite")
    sp.add_argument("--suite", choices=("fast", "full"), default="fast")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
        return args.func(args)
    except ParseError as exc:
        print(f"fpure: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantViolation:
        raise
    except FpureError as exc:
        print(f"fpure: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
