"""Command-line front end: qmcount <subcommand> [options]."""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

from . import __version__
from .excess import NON_QUASISTABLE, build_ledger
from .fixtures import run_all
from .frobenius import FrobeniusElement, QGeometry, cqp, eta, pairing_matrix
from .montecarlo import MonteCarloError, builtin_integrand, default_threads, integrate_mc
from .problems import ProblemFormatError, load_problem
from .quasimap import (UnbalancedIntegralWarning, UnbalancedProblemError, km_easy, n_knd, n_multi,
                       qm_number, virtual_dimension)
from .strata import stratification_table

SCHEMA = "qmcount.report/1"
REPORT_KEYS = ("schema", "command", "inputs", "results", "diagnostics")


@dataclass
class RunReport:
    command: str
    inputs: Any
    results: Any
    diagnostics: List[str] = field(default_factory=list)
    ok: bool = True

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "inputs": self.inputs,
                "results": self.results, "diagnostics": list(self.diagnostics)}


def validate_report(obj: Any) -> bool:
    """True if obj has the shape of a serialized RunReport."""
    return (isinstance(obj, dict) and set(obj) == set(REPORT_KEYS) and obj["schema"] == SCHEMA
            and isinstance(obj["command"], str) and isinstance(obj["diagnostics"], list))


class UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _geom(k: List[int], n: int) -> QGeometry:
    try:
        return QGeometry(tuple(k), n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_dim(args) -> RunReport:
    if args.problem:
        prob = load_problem(args.problem)
        D = prob.data
        res = {"space_dim": D.space_dim, "virtual_dimension": virtual_dimension(D)}
        text = f"dim QMap = {D.space_dim}, virtual dimension = {res['virtual_dimension']}"
        return RunReport("dim", D.to_json(), res, []), text
    if args.k is None or args.n is None or args.d is None:
        raise UsageError("dim needs --k, --n, --d (or --problem FILE)")
    if len(args.k) == 1 and len(args.d) == 1:
        value = n_knd(args.k[0], args.n, args.d[0])
    else:
        try:
            value = n_multi(args.k, args.n, args.d)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    inputs = {"k": args.k, "n": args.n, "d": args.d}
    return RunReport("dim", inputs, {"space_dim": value}), str(value)


def cmd_qm(args) -> RunReport:
    prob = load_problem(args.problem)
    diags = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", UnbalancedIntegralWarning)
        value = qm_number(prob.data, force=args.force)
    for w in caught:
        diags.append(f"FORCED: {w.message}")
    return RunReport("qm", prob.data.to_json(), {"qm": value}, diags), str(value)


def cmd_km_easy(args) -> RunReport:
    value = km_easy(args.k, args.n, args.d, args.codims)
    inputs = {"k": args.k, "n": args.n, "d": args.d, "codims": args.codims}
    return RunReport("km-easy", inputs, {"km": value}), str(value)


def cmd_pqm(args) -> RunReport:
    prob = load_problem(args.problem)
    km = args.km if args.km is not None else prob.km
    qs = prob.quasi_stable if args.quasi_stable is None else args.quasi_stable
    ledger = build_ledger(prob.data, km, prob.strata, qs, force=args.force)
    diags = []
    lines = [f"QM = {ledger.qm}", f"KM = {'unknown' if km is None else km}"]
    for z, c in zip(ledger.strata, ledger.contributions):
        lines.append(f"  {z.label} (dim {z.dim}): {c}")
    if ledger.quasi_stable:
        lines.append(f"PQM = {ledger.pqm}")
        if ledger.residual is not None:
            lines.append(f"residual = {ledger.residual}")
            if ledger.residual != 0:
                diags.append(f"RESIDUAL: QM - KM - PQM = {ledger.residual}")
        else:
            lines.append(f"KM recovered = {ledger.km_recovered}")
    else:
        diags.append(f"{NON_QUASISTABLE}: strata intersect; naive sum {ledger.naive_sum}"
                     + (f" vs residual {ledger.residual}" if ledger.residual is not None else ""))
        lines.append(f"naive sum = {ledger.naive_sum}")
        if ledger.residual is not None:
            lines.append(f"residual QM - KM = {ledger.residual}")
        lines.append(NON_QUASISTABLE)
    inputs = prob.data.to_json()
    inputs.update(km=km, quasi_stable=qs, strata=[z.label for z in ledger.strata])
    return RunReport("pqm", inputs, ledger.to_json(), diags), "\n".join(lines)


def cmd_strata(args) -> RunReport:
    try:
        rows = stratification_table(args.k, args.n, args.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    diags = ["generic-d caveat: rows for this degree follow the generic pattern"] \
        if any(r.generic_caveat for r in rows) else []
    width = max(len(r.label) for r in rows)
    text = "\n".join(f"{r.label:<{width}}  {r.codim:>4}  {r.shape}" for r in rows)
    inputs = {"k": args.k, "n": args.n, "d": args.d}
    return RunReport("strata", inputs, {"rows": [r.to_json() for r in rows]}, diags), text


def cmd_eta(args) -> RunReport:
    geom = _geom(args.k, args.n)
    cut = (args.q_cutoff,) * geom.rank
    inputs = {"k": list(geom.ks), "n": geom.n, "q_cutoff": args.q_cutoff}
    if args.pairing is not None:
        M = pairing_matrix(geom, args.pairing, cut)
        inputs["x_max"] = args.pairing
        text = "\n".join("  ".join(f"{str(e):>6}" for e in row) for row in M)
        return RunReport("eta", inputs, {"pairing": [[e.to_json() for e in row] for row in M]}), text
    images = {}
    lines = []
    for j in args.exponents:
        value = eta(FrobeniusElement.x_power(j, cut), geom)
        images[str(j)] = value.to_json()
        lines.append(f"eta(x^{j}) = {value}")
    inputs["exponents"] = args.exponents
    return RunReport("eta", inputs, {"eta": images}), "\n".join(lines)


def cmd_cqp(args) -> RunReport:
    geom = _geom(args.k, args.n)
    try:
        value = cqp(args.exponents, geom, args.q_cutoff)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inputs = {"k": list(geom.ks), "n": geom.n, "q_cutoff": args.q_cutoff, "exponents": args.exponents}
    return RunReport("cqp", inputs, {"cqp": value.to_json()}), str(value)


def cmd_smooth(args) -> RunReport:
    f = builtin_integrand(args.integrand)
    threads = args.threads if args.threads is not None else default_threads()
    est = integrate_mc(f, args.samples, seed=args.seed, threads=threads, backend=args.backend)
    diags = [f"rejected {est.rejected} non-finite weights"] if est.rejected else []
    inputs = {"integrand": f.id, "samples": args.samples, "seed": args.seed, "threads": threads}
    text = f"{f.id}: {est.format()}  ({est.samples} samples, {est.wall_time:.2f} s, {est.backend})"
    return RunReport("smooth", inputs, est.to_json(), diags), text


def cmd_fixtures(args) -> RunReport:
    results = run_all()
    if args.name:
        results = [r for r in results if any(s in r.name for s in args.name)]
    failed = [r for r in results if not r.passed]
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}" for r in results]
    for r in failed:
        lines.append(f"  {r.name}: {r.error or r.mismatches}")
    lines.append(f"{len(results) - len(failed)}/{len(results)} fixtures passed")
    diags = [f"FAILED: {r.name}" for r in failed]
    report = RunReport("fixtures", {"count": len(results)},
                       {"passed": len(results) - len(failed), "total": len(results),
                        "fixtures": [r.to_json() for r in results]}, diags, ok=not failed)
    return report, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    # subcommands accept the global flags too; SUPPRESS keeps them from
    # resetting a flag given before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print nothing; use the exit code")

    p = argparse.ArgumentParser(prog="qmcount",
                                description="Quasimap counts, excess contributions and smooth-count integrals.")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--quiet", action="store_true", help="print nothing; use the exit code")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", parents=[common], help="quasimap space and virtual dimensions")
    s.add_argument("--k", type=_int_list, help="source dimension (comma list for product sources)")
    s.add_argument("--n", type=int)
    s.add_argument("--d", type=_int_list, help="degree (comma list for multi-degrees)")
    s.add_argument("--problem", help="problem file; reports the virtual dimension")
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("qm", parents=[common], help="QM number of a problem file")
    s.add_argument("problem")
    s.add_argument("--force", action="store_true", help="integrate unbalanced data anyway")
    s.set_defaults(func=cmd_qm)

    s = sub.add_parser("km-easy", parents=[common], help="KM number when all source cycles are points")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--codims", type=_int_list, required=True)
    s.set_defaults(func=cmd_km_easy)

    s = sub.add_parser("pqm", parents=[common], help="QM = KM + PQM ledger of a problem file with strata")
    s.add_argument("problem")
    s.add_argument("--km", type=int, help="override the file's KM")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--quasi-stable", dest="quasi_stable", action="store_true", default=None)
    g.add_argument("--non-quasistable", dest="quasi_stable", action="store_false")
    s.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_pqm)

    s = sub.add_parser("strata", parents=[common], help="stratification table of QMap_d(P^k, P^n)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_strata)

    for name, func, helptext in (("eta", cmd_eta, "counit images of x^j (or a pairing matrix)"),
                                 ("cqp", cmd_cqp, "cyclic quantum product of x^{j_1}, ..., x^{j_l}")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--k", type=_int_list, required=True, help="source dimension(s)")
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--q-cutoff", type=int, default=4)
        s.add_argument("exponents", type=int, nargs="*")
        if name == "eta":
            s.add_argument("--pairing", type=int, metavar="X_MAX", help="print eta(x^(a+b)) for a, b <= X_MAX")
        s.set_defaults(func=func)

    s = sub.add_parser("smooth", parents=[common], help="Monte Carlo estimate of a smooth-count integral")
    s.add_argument("--integrand", choices=["one-or-two", "one-or-four", "one-or-sixteen"], required=True)
    s.add_argument("--samples", type=int, default=10 ** 7)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--threads", type=int, default=None, help="default: $QMC_THREADS or the CPU count")
    s.add_argument("--report", choices=["text", "json"], default="text")
    s.add_argument("--backend", choices=["auto", "numba", "numpy"], default="auto")
    s.set_defaults(func=cmd_smooth)

    s = sub.add_parser("fixtures", parents=[common], help="run the bundled regression fixtures")
    s.add_argument("--name", action="append", help="only fixtures whose name contains this (repeatable)")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    want_json = args.json or getattr(args, "report", "text") == "json"
    try:
        report, text = args.func(args)
    except (ProblemFormatError, UsageError, UnbalancedProblemError, MonteCarloError,
            FileNotFoundError, ValueError) as exc:
        if not args.quiet:
            if want_json:
                err = RunReport(args.command, None, None, [f"ERROR: {exc}"])
                print(json.dumps(err.to_json(), indent=2))
            else:
                print(f"qmcount {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if not args.quiet:
        if want_json:
            print(json.dumps(report.to_json(), indent=2))
        else:
            print(text)
            for d in report.diagnostics:
                print(f"warning: {d}", file=sys.stderr)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
