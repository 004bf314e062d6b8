"""Command-line frontend.

Subcommands: decide, oracle, survey, lift, residues, aniso.
Exit codes: 0 Dense / consistent, 1 NotDense, 2 Inconclusive,
3 oracle contradiction, 64 usage or validation error, 65 budget exceeded.
The enumeration budget defaults to 10^7 points and can be overridden by
--budget or the QDENSE_BUDGET environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .denseness import (
    DENSE,
    INCONCLUSIVE,
    NOT_DENSE,
    decide,
    verdict_to_dict,
)
from .errors import BudgetExceeded, NoRoot, QdenseError
from .forms import DiagonalForm, is_anisotropic_mod_p
from .oracle import check_certificate, quotient_coverage
from .padic import valuation
from .residues import is_nth_power_in_Zp, nth_power_residues, nth_root_in_Zp

EXIT_BY_STATUS = {DENSE: 0, NOT_DENSE: 1, INCONCLUSIVE: 2}
EXIT_CONTRADICTION = 3
EXIT_USAGE = 64
EXIT_BUDGET = 65

DEFAULT_BUDGET = 10**7


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_coeffs(text: str):
    try:
        coeffs = tuple(int(c) for c in text.split(","))
    except ValueError:
        raise SystemExit(_usage_error("coefficients must be integers"))
    if any(c == 0 for c in coeffs):
        raise SystemExit(_usage_error("zero coefficients are not allowed"))
    return coeffs


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _form_from_args(args) -> DiagonalForm:
    try:
        return DiagonalForm(args.n, _parse_coeffs(args.coeffs))
    except ValueError as exc:
        raise SystemExit(_usage_error(str(exc)))


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("QDENSE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _print_verdict(verdict, as_json: bool):
    if as_json:
        print(json.dumps(verdict_to_dict(verdict), indent=2))
        return
    print(f"verdict: {verdict.status}")
    for entry in verdict.trace:
        print(f"  [{entry.rule}] {entry.statement}")
        if entry.params:
            print(f"        params: {entry.params}")
    cert = verdict.certificate
    if cert is not None:
        d = verdict_to_dict(verdict)["certificate"]
        print(f"certificate: {d}")


def cmd_decide(args) -> int:
    form = _form_from_args(args)
    try:
        verdict = decide(form, args.p, budget=_budget(args))
    except QdenseError as exc:
        return _usage_error(str(exc))
    _print_verdict(verdict, args.json)
    return EXIT_BY_STATUS[verdict.status]


def cmd_oracle(args) -> int:
    form = _form_from_args(args)
    budget = _budget(args)
    V = args.V if args.V is not None else form.n
    try:
        report = quotient_coverage(
            form, args.p, B=args.box, K=args.K, V=V, budget=budget
        )
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.csv:
        print(report.to_csv(), end="")
    elif args.json:
        print(report.to_json())
    else:
        print(
            f"form {form}, p={report.p}, box={report.B}, K={report.K}, V={report.V}"
        )
        for v in sorted(report.coverage):
            print(f"  valuation {v:+d}: coverage {report.coverage[v]:.3f}")
        print(
            "  quotient valuation residues mod n:",
            sorted(report.quotient_valuation_residues),
        )
    if args.check:
        verdict = decide(form, args.p, budget=budget)
        print(f"engine verdict: {verdict.status}")
        if verdict.certificate is not None:
            result = check_certificate(verdict.certificate, report)
            if result.consistent:
                print(f"certificate check: consistent ({result.detail})")
            else:
                print(f"certificate check: CONTRADICTION ({result.detail})")
                print(f"  witness pair: {result.witness}")
                return EXIT_CONTRADICTION
        else:
            print("certificate check: nothing to check (no certificate)")
    return 0


def _survey_rows(args):
    if args.input:
        with open(args.input) as handle:
            for line in handle:
                line = line.strip()
                if line:
                    query = json.loads(line)
                    yield query["n"], tuple(query["coeffs"]), query["p"]
    else:
        lo, hi = args.coeff_range
        coeff_values = [c for c in range(lo, hi + 1) if c != 0]
        import itertools

        for n in args.n_list:
            for p in args.p_list:
                for coeffs in itertools.product(coeff_values, repeat=args.vars):
                    yield n, coeffs, p


def cmd_survey(args) -> int:
    if not args.input and not (args.n_list and args.p_list and args.coeff_range):
        return _usage_error(
            "survey needs --input FILE or all of --n-list/--p-list/--coeff-range"
        )
    budget = _budget(args)
    rows = []
    for n, coeffs, p in _survey_rows(args):
        row = {
            "n": n,
            "coeffs": ",".join(str(c) for c in coeffs),
            "p": p,
            "status": "",
            "rule": "",
            "certificate": "",
            "error": "",
        }
        try:
            verdict = decide(DiagonalForm(n, coeffs), p, budget=budget)
            row["status"] = verdict.status
            row["rule"] = verdict.trace[-1].rule if verdict.trace else ""
            cert = verdict_to_dict(verdict)["certificate"]
            row["certificate"] = cert["kind"] if cert else ""
        except (QdenseError, ValueError) as exc:
            row["error"] = str(exc)
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        import csv as csv_mod

        writer = csv_mod.DictWriter(
            sys.stdout,
            fieldnames=["n", "coeffs", "p", "status", "rule", "certificate", "error"],
        )
        writer.writeheader()
        writer.writerows(rows)
    return 0


def cmd_lift(args) -> int:
    try:
        c = Fraction(args.c)
    except (ValueError, ZeroDivisionError):
        return _usage_error(f"cannot parse rational {args.c!r}")
    if c == 0:
        return _usage_error("c must be nonzero")
    try:
        if valuation(c, args.p) < 0 or not is_nth_power_in_Zp(c, args.n, args.p):
            print(
                f"NoRoot: x^{args.n} = {c} has no solution in Z_{args.p}",
                file=sys.stderr,
            )
            return 1
        root = nth_root_in_Zp(c, args.n, args.p, args.prec, budget=_budget(args))
    except NoRoot as exc:
        print(f"NoRoot: {exc}", file=sys.stderr)
        return 1
    except QdenseError as exc:
        return _usage_error(str(exc))
    modulus = args.p**args.prec
    if args.json:
        print(
            json.dumps(
                {"root": root, "modulus": modulus, "p": args.p, "prec": args.prec}
            )
        )
    else:
        print(f"x = {root}  (x^{args.n} = {c} mod {args.p}^{args.prec})")
    return 0


def cmd_residues(args) -> int:
    try:
        rs = nth_power_residues(args.n, args.p, args.M, budget=_budget(args))
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    members = rs.sorted_members()
    if args.json:
        print(
            json.dumps(
                {"n": args.n, "p": args.p, "M": args.M, "members": members}
            )
        )
    else:
        print(
            f"{args.n}th-power residues mod {args.p}^{args.M}: "
            f"{members} ({len(members)} classes)"
        )
    return 0


def cmd_aniso(args) -> int:
    form = _form_from_args(args)
    try:
        aniso, witness = is_anisotropic_mod_p(form, args.p, budget=_budget(args))
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.json:
        print(
            json.dumps(
                {
                    "anisotropic": aniso,
                    "witness": list(witness) if witness else None,
                }
            )
        )
    else:
        if aniso:
            print(f"{form} is anisotropic mod {args.p}")
        else:
            print(f"{form} is isotropic mod {args.p}: witness {witness}")
    return 0


def _add_form_args(sub):
    sub.add_argument("--n", type=int, required=True, help="degree of the form")
    sub.add_argument(
        "--coeffs", required=True, help="comma-separated nonzero coefficients"
    )
    sub.add_argument("--p", type=int, required=True, help="prime")


def build_parser() -> _Parser:
    parser = _Parser(prog="qdense", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_decide = subs.add_parser("decide", help="decide denseness of R(F) in Q_p")
    _add_form_args(p_decide)
    p_decide.add_argument("--json", action="store_true")
    p_decide.add_argument("--budget", type=int, default=None)
    p_decide.set_defaults(func=cmd_decide)

    p_oracle = subs.add_parser("oracle", help="brute-force coverage report")
    _add_form_args(p_oracle)
    p_oracle.add_argument("--box", "-B", type=int, default=50)
    p_oracle.add_argument("--K", type=int, default=2)
    p_oracle.add_argument("--V", type=int, default=None, help="default: n")
    p_oracle.add_argument(
        "--check",
        action="store_true",
        help="also run the engine and validate its certificate",
    )
    p_oracle.add_argument("--json", action="store_true")
    p_oracle.add_argument("--csv", action="store_true")
    p_oracle.add_argument("--budget", type=int, default=None)
    p_oracle.set_defaults(func=cmd_oracle)

    p_survey = subs.add_parser("survey", help="verdict table for many forms")
    p_survey.add_argument("--input", help="JSON-lines file of {n, coeffs, p}")
    p_survey.add_argument(
        "--n-list", type=lambda s: [int(x) for x in s.split(",")], default=None
    )
    p_survey.add_argument(
        "--p-list", type=lambda s: [int(x) for x in s.split(",")], default=None
    )
    p_survey.add_argument(
        "--coeff-range",
        nargs=2,
        type=int,
        metavar=("LO", "HI"),
        default=None,
    )
    p_survey.add_argument("--vars", type=int, default=2)
    p_survey.add_argument("--json", action="store_true")
    p_survey.add_argument("--budget", type=int, default=None)
    p_survey.set_defaults(func=cmd_survey)

    p_lift = subs.add_parser(
        "lift", help="constructive nth-root witness mod p^prec"
    )
    p_lift.add_argument("--c", required=True, help="rational, e.g. -1 or 8/27")
    p_lift.add_argument("--n", type=int, required=True)
    p_lift.add_argument("--p", type=int, required=True)
    p_lift.add_argument("--prec", type=int, required=True)
    p_lift.add_argument("--json", action="store_true")
    p_lift.add_argument("--budget", type=int, default=None)
    p_lift.set_defaults(func=cmd_lift)

    p_res = subs.add_parser("residues", help="dump nth-power residues mod p^M")
    p_res.add_argument("--n", type=int, required=True)
    p_res.add_argument("--p", type=int, required=True)
    p_res.add_argument("--M", type=int, required=True)
    p_res.add_argument("--json", action="store_true")
    p_res.add_argument("--budget", type=int, default=None)
    p_res.set_defaults(func=cmd_residues)

    p_aniso = subs.add_parser("aniso", help="exhaustive anisotropy check mod p")
    _add_form_args(p_aniso)
    p_aniso.add_argument("--json", action="store_true")
    p_aniso.add_argument("--budget", type=int, default=None)
    p_aniso.set_defaults(func=cmd_aniso)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
