"""Command-line front end.

Usage:
    demoivre-quintic solve --a 1 --b 2
    demoivre-quintic reduce --a 1 --b 1 --format json
    demoivre-quintic hyper --w=-60.25
    demoivre-quintic verify
    demoivre-quintic sweep --stage solve --n 1000 --seed 7
    demoivre-quintic audit --a 1.3 --b -0.7

Exit codes: 0 success, 1 usage or invalid input, 2 numeric gate failure,
3 singular input.
"""

from __future__ import annotations

import argparse
import sys

from . import report
from .demoivre import RADICAL_TOL, DeMoivreQuintic, solve_radical
from .errors import BranchPointError, BranchSelectionError, QuinticError, SingularInputError
from .fixtures import FIXTURES
from .homogeneity import audit_homogeneity
from .hypergeom import (
    IDENTITY_TOL,
    argument_from_t,
    bring_residual_of,
    f43_continued,
    f43_series,
    t_branches,
    verify_identity,
)
from .numerics import multiset_distance, oracle_roots, residual_scale
from .reduction import CALIBRATION_LADDER, Variant, bring_reduce, diagnose, first_failure
from .sweep import STAGES, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_GATE, EXIT_SINGULAR = 0, 1, 2, 3

VARIANTS = {
    "auto": None,
    "printed": Variant("printed", "printed"),
    "g1": Variant("printed", "corrected"),
    "delta": Variant("corrected", "printed"),
    "both": Variant("corrected", "corrected"),
}


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _count(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


class Output:
    """Collects text lines and structured records; writes both at the end."""

    def __init__(self, fmt: str, report_path: str | None):
        self.fmt = fmt
        self.report_path = report_path
        self.records: list[dict] = []
        self.lines: list[str] = []

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def record(self, rec: dict) -> None:
        self.records.append(rec)

    def flush(self, stream) -> None:
        stream_lines = [report.dumps(r) for r in self.records]
        if self.fmt == "json":
            for line in stream_lines:
                print(line, file=stream)
        else:
            for line in self.lines:
                print(line, file=stream)
        if self.report_path:
            with open(self.report_path, "w", encoding="utf-8") as fh:
                fh.write("".join(line + "\n" for line in stream_lines))


def _c(z: complex) -> str:
    z = complex(z)
    return f"{z.real:+.12g} {z.imag:+.12g}i"


def _quintic(args) -> DeMoivreQuintic:
    return DeMoivreQuintic(args.a, args.b)


def cmd_solve(args, out: Output) -> int:
    q = _quintic(args)
    tol = args.tol or RADICAL_TOL
    roots = solve_radical(q)
    p = q.polynomial
    oracle = oracle_roots(p)
    dist = multiset_distance(roots.roots, oracle.roots)
    scaled = [res / residual_scale(p, r) for r, res in zip(roots.roots, roots.residuals)]
    ok = max(scaled) <= tol and dist <= tol * max(1.0, max(abs(r) for r in roots))
    out.text(f"x^5 + 5({q.a:g})x^3 + 5({q.a:g})^2 x + ({q.b:g}) = 0   gamma = {q.gamma:.12g}")
    for i, (r, res) in enumerate(zip(roots.roots, roots.residuals), 1):
        out.text(f"  x{i} = {_c(r)}   |p(x)| = {res:.3e}")
    out.text(f"oracle multiset distance: {dist:.3e}")
    out.text("gates: " + ("pass" if ok else "FAIL"))
    out.record({
        "record": "solve",
        "a": q.a,
        "b": q.b,
        "gamma": q.gamma,
        "roots": [report.complex_to_json(r) for r in roots.roots],
        "residuals": list(roots.residuals),
        "oracle_distance": dist,
        "tolerance": tol,
        "passed": ok,
    })
    return EXIT_OK if ok else EXIT_GATE


def cmd_reduce(args, out: Output) -> int:
    q = _quintic(args)
    try:
        red = bring_reduce(q, VARIANTS[args.variant])
    except BranchSelectionError as exc:
        out.text(f"audit failure: {exc}")
        out.record({"record": "reduce_failure", "a": q.a, "b": q.b, "message": str(exc),
                    "attempts": exc.table})
        return EXIT_GATE
    data = red.data
    pq = red.principal
    out.text(f"principal form: y^5 + ({_c(pq.p2)}) y^2 + ({_c(pq.p1)}) y + ({_c(pq.p0)})")
    if red.degenerate:
        out.text("b = 2a^(5/2): principal form is already trinomial; scaled directly")
    else:
        for att in red.attempts:
            state = "pass" if att.passed else f"fail (first failing stage: {att.first_failure})"
            out.text(f"variant {att.variant:<28} best residual {att.best_score:.3e}  {state}")
        out.text(f"using variant: {data.variant}")
    out.text("branch table (sqrt, cbrt, quartic): residual")
    for s in red.table:
        b = s.branch
        out.text(f"  ({b.sqrt_branch}, {b.cbrt_branch}, {b.quartic_branch}): {s.score:.3e}")
    b = data.branch
    out.text(f"chosen branch: ({b.sqrt_branch}, {b.cbrt_branch}, {b.quartic_branch})")
    out.text(f"t = {_c(data.t)}")
    for i, (z, res) in enumerate(zip(red.z_roots.roots, red.z_roots.residuals), 1):
        out.text(f"  z{i} = {_c(z)}   |z^5 - z + t| = {res:.3e}")
    out.record(report.reduction_to_dict(red))
    return EXIT_OK


def cmd_hyper(args, out: Output) -> int:
    w = args.w
    tol = args.tol or IDENTITY_TOL
    rec = {"record": "hyper", "w": report.complex_to_json(w)}
    if abs(w) < 1:
        series = f43_series(w)
        out.text(f"series:    {_c(series.value)}  ({series.terms_used} terms, tail <= {series.truncation_bound:.2e})")
        rec["series"] = {
            "value": report.complex_to_json(series.value),
            "terms_used": series.terms_used,
            "truncation_bound": series.truncation_bound,
            "converged": series.converged,
        }
    if w == 0:
        value, t, residual = 1 + 0j, 0j, 0.0
    else:
        value = f43_continued(w)
        t = t_branches(w)[0]
        residual = bring_residual_of(t, value)
    out.text(f"continued: {_c(value)}")
    out.text(f"t = {_c(t)}   |(tF)^5 - tF + t| = {residual:.3e}")
    rec.update({"continued": report.complex_to_json(value), "t": report.complex_to_json(t),
                "residual": residual})
    out.record(rec)
    return EXIT_OK if residual <= tol * max(1.0, abs(value)) else EXIT_GATE


def cmd_verify(args, out: Output) -> int:
    tol = args.tol or IDENTITY_TOL
    ok = True
    out.text(f"{'fixture':<10} {'variant':<10} {'residual':>11}  verdict")
    for fx in FIXTURES:
        w = fx.argument()
        passing = []
        for name, value in fx.variants:
            rec = verify_identity(w, value(), tol=tol, provenance=f"fixture {fx.name} / {name}")
            out.text(f"{fx.name:<10} {name:<10} {rec.residual:11.3e}  {rec.verdict}")
            if rec.verdict != "pass":
                out.text("           branch residuals: "
                         + ", ".join(f"{r:.3e}" for r in rec.branch_residuals))
            out.record(report.identity_to_dict(rec))
            if rec.passed:
                passing.append(name)
        out.text(f"{fx.name}: passing variant(s): {', '.join(passing) or 'none'}")
        ok = ok and bool(passing)
    return EXIT_OK if ok else EXIT_GATE


def cmd_sweep(args, out: Output) -> int:
    summary = run_sweep(args.stage, args.n, args.seed, args.a_range, args.b_range)
    out.text(f"stage {summary.stage}: {summary.passed}/{summary.evaluated} passed "
             f"({summary.singular} singular excluded), seed {summary.seed}")
    for key, value in sorted(summary.worst.items()):
        out.text(f"  worst {key}: {value:.3e}")
    for failure in summary.failures[:10]:
        out.text(f"  failure: {failure}")
    out.record(summary.as_dict())
    return EXIT_OK if summary.ok else EXIT_GATE


def cmd_audit(args, out: Output) -> int:
    rep = audit_homogeneity()
    out.text("weight-homogeneity audit under (a, b) -> (l^2 a, l^5 b)")
    for v in rep.verdicts:
        flag = "" if v.ok else "   <-- ANOMALY"
        out.text(f"  {v.polynomial:<16} {v.term:<22} weight {str(v.weight):>4} (expected {v.expected}){flag}")
    out.text(f"anomalies: {len(rep.anomalies)}")
    out.record({
        "record": "homogeneity",
        "terms": len(rep.verdicts),
        "anomalies": [
            {"polynomial": v.polynomial, "index": v.index, "term": v.term,
             "weight": str(v.weight), "expected": str(v.expected)}
            for v in rep.anomalies
        ],
    })
    if args.a is not None and args.b is not None:
        q = _quintic(args)
        for variant in CALIBRATION_LADDER:
            checks = diagnose(q, variant)
            failing = first_failure(checks)
            out.text(f"variant {variant.name}: first failing stage {failing or 'none'}")
            for c in checks:
                out.text(f"    {c.stage:<10} {c.value:.3e} {'ok' if c.passed else 'FAIL'}")
            out.record({"record": "diagnostics", "a": q.a, "b": q.b, "variant": variant.name,
                        "first_failure": failing, "checks": [c.as_dict() for c in checks]})
    elif (args.a is None) != (args.b is None):
        raise UsageError("audit needs both --a and --b, or neither")
    return EXIT_OK


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--report", metavar="PATH", help="also write the structured stream here")
    common.add_argument("--tol", type=_positive, help="override the command's residual gate")

    parser = Parser(prog="demoivre-quintic", description="De Moivre quintic toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="radical roots vs the Aberth oracle")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", parents=[common], help="principal and Bring-Jerrard reduction")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--variant", choices=tuple(VARIANTS), default="auto")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("hyper", parents=[common], help="evaluate the 4F3 at w")
    p.add_argument("--w", type=_complex, required=True)
    p.set_defaults(func=cmd_hyper)

    p = sub.add_parser("verify", parents=[common], help="audit the built-in closed-form fixtures")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="seeded random sweep")
    p.add_argument("--stage", choices=STAGES, default="all")
    p.add_argument("--n", type=_count, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a-range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--b-range", type=float, nargs=2, metavar=("LO", "HI"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("audit", parents=[common], help="homogeneity audit and stage diagnostics")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.format, args.report)
    try:
        code = args.func(args, out)
    except SingularInputError as exc:
        print(f"singular input ({exc.locus}): {exc}", file=stderr)
        return EXIT_SINGULAR
    except (UsageError, ValueError) as exc:
        print(f"invalid input: {exc}", file=stderr)
        return EXIT_USAGE
    except (BranchPointError, QuinticError) as exc:
        print(f"numeric failure: {exc}", file=stderr)
        return EXIT_GATE
    out.flush(stdout)
    return code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
