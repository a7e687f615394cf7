"""Command-line interface.

Exit codes: 0 success, 2 usage, 3 domain error, 4 format error,
5 budget exceeded, 6 verification failure or contradiction with the
knowledge base.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import bounds, oracles
from .errors import BudgetExceeded, DomainError, FormatError
from .exact_arith import check_euler_recursion, floor_scaled
from .witness_io import parse_ramsey_witness, parse_schur_witness, witness_kind

EXIT_OK = 0
EXIT_DOMAIN = 3
EXIT_FORMAT = 4
EXIT_BUDGET = 5
EXIT_VERIFY = 6

COMMANDS = ("table", "adapt", "verify", "oracle-ramsey", "oracle-schur", "check-witness")
CSV_COLUMNS = ("n", "lower", "upper", "anchor_k", "a", "q_num", "q_den")
# e to 6 places; used only for the human "≈" annotation, never in a computation
_E_DISPLAY = 2.718282
OPTIMALITY_MAX_K = 6


@dataclass
class RunConfig:
    command: str
    max_n: int = 6
    assumptions: list = field(default_factory=list)
    output_format: str = "human"
    budget: int = oracles.DEFAULT_BUDGET
    kb_path: str | None = None
    workers: int = 1
    k: int | None = None
    upper: int | None = None
    colors: int | None = None
    limit: int | None = None
    witness_path: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.max_n < 1:
            raise DomainError("--max-n must be >= 1")
        for k, _ in self.assumptions:
            if k < 2:
                raise DomainError(f"assumption k={k}: assumptions reference k >= 2")


def _parse_assumption(text):
    try:
        k, u = text.split("=")
        return int(k), int(u)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k=u, got {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kb", dest="kb_path", help="knowledge-base file (default: bundled)")
    common.add_argument("--assume", action="append", default=[], type=_parse_assumption,
                        metavar="K=U", help="overlay R_K(3) <= U (repeatable)")
    common.add_argument("--format", dest="output_format", default="human",
                        choices=("human", "csv", "json"))
    common.add_argument("--budget", type=int, default=oracles.DEFAULT_BUDGET,
                        help="search node budget")
    common.add_argument("--workers", type=int, default=1, help="parallel oracle workers")

    parser = argparse.ArgumentParser(
        prog="adaptive-ramsey",
        description="Exact upper bounds on R_n(3) and Schur numbers, with search oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="best upper bounds for n = 1..max_n")
    p.add_argument("--max-n", type=int, default=6)

    p = sub.add_parser("adapt", parents=[common], help="adaptive bound from one anchor")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--upper", type=int, required=True)
    p.add_argument("--max-n", type=int, default=None)

    p = sub.add_parser("verify", parents=[common], help="run the exact identity checks")
    p.add_argument("--max-n", type=int, default=30)

    p = sub.add_parser("oracle-ramsey", parents=[common], help="establish R_n(3) by search")
    p.add_argument("--colors", type=int, required=True)

    p = sub.add_parser("oracle-schur", parents=[common], help="compute S(n) by search")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--limit", type=int, default=50)

    p = sub.add_parser("check-witness", parents=[common], help="check a witness file")
    p.add_argument("witness_path")
    p.add_argument("--colors", type=int, default=None, help="claimed color count")
    return parser


def config_from_args(args):
    max_n = getattr(args, "max_n", None)
    if max_n is None:
        max_n = (args.k + 2) if args.command == "adapt" else 6
    return RunConfig(
        command=args.command,
        max_n=max_n,
        assumptions=list(args.assume),
        output_format=args.output_format,
        budget=args.budget,
        kb_path=args.kb_path,
        workers=args.workers,
        k=getattr(args, "k", None),
        upper=getattr(args, "upper", None),
        colors=getattr(args, "colors", None),
        limit=getattr(args, "limit", None),
        witness_path=getattr(args, "witness_path", None),
    )


def load_knowledge(cfg, err):
    kb = bounds.load_kb(cfg.kb_path) if cfg.kb_path else bounds.default_kb()
    for k, u in cfg.assumptions:
        kb, applied = bounds.apply_assumption(kb, k, u)
        if not applied:
            print(f"warning: assumption R_{k}(3) <= {u} does not strengthen the "
                  f"current bound; keeping stored value", file=err)
    return kb


def _approx(q):
    return f"{_E_DISPLAY - q.numerator / q.denominator:.2f}"


# ------------------------------------------------------------------ commands


def render_table(rows, fmt):
    records = [row.to_record() for row in rows]
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow({k: "" if v is None else v for k, v in rec.items()})
        return buf.getvalue()
    lines = [f"{'n':>3}  {'lower':>8}  {'best upper':>12}  winning rule"]
    for row in rows:
        w = row.winner
        if w.anchor is not None:
            rule = f"anchor k={w.anchor.k}, a={w.anchor.a}, q={w.anchor.q}"
        else:
            rule = w.rule
        lines.append(f"{row.n:>3}  {row.lower:>8}  {row.best_upper:>12}  {rule}")
    return "\n".join(lines) + "\n"


def parse_table_json(text):
    return json.loads(text)


def cmd_table(cfg, out, err):
    kb = load_knowledge(cfg, err)
    # rows above the largest anchor are computed and then dropped
    reach = max([cfg.max_n] + [e.n for e in kb.anchors()])
    rows = [r for r in bounds.best_bounds_table(kb, reach) if r.n <= cfg.max_n]
    out.write(render_table(rows, cfg.output_format))
    return EXIT_OK


def cmd_adapt(cfg, out, err):
    k, u = cfg.k, cfg.upper
    bound = bounds.adaptive_from_anchor(k, u)
    values = {n: bound(n) for n in range(k, max(cfg.max_n, k) + 1)}
    optimal = bounds.check_optimality_remark(k, u)
    if cfg.output_format == "json":
        out.write(json.dumps({
            "k": k, "upper": u, "a": bound.a,
            "q_num": bound.q.numerator, "q_den": bound.q.denominator,
            "f": {str(n): v for n, v in values.items()},
            "optimal": optimal,
        }, indent=2) + "\n")
        return EXIT_OK
    if cfg.output_format == "csv":
        out.write("n,f\n" + "".join(f"{n},{v}\n" for n, v in values.items()))
        return EXIT_OK
    out.write(f"anchor: R_{k}(3) <= {u}\n")
    out.write(f"a = {bound.a}\n")
    out.write(f"q = {bound.q}\n")
    out.write(f"bound: R_n(3) <= n!(e - {bound.q}) + 1 for all n >= {k}"
              f"   (e - {bound.q} ≈ {_approx(bound.q)})\n")
    for n, v in values.items():
        out.write(f"f({n}) = {v}\n")
    status = "holds" if optimal else "FAILS"
    out.write(f"optimality: a' = a + 1 gives f'({k}) = {u - 1} < {u}; remark {status}\n")
    return EXIT_OK if optimal else EXIT_VERIFY


def run_verification(cfg, kb):
    """Yield (passed, message) for every exact check up to cfg.max_n."""
    bad = [n for n in range(1, cfg.max_n + 1) if not check_euler_recursion(n)]
    yield (not bad, f"floor((n+1)!e) = (n+1) floor(n!e) + 1 for 1 <= n <= {cfg.max_n}"
           + (f"; fails at {bad[:5]}" if bad else ""))

    for entry in kb.anchors():
        k, lo, hi = entry.n, entry.lower, entry.upper
        if k > cfg.max_n:
            continue
        ok = all(bounds.trajectories_agree(k, u, cfg.max_n) for u in range(lo, hi + 1))
        yield ok, f"closed form == recursion for anchor k={k}, u in [{lo}, {hi}], n <= {cfg.max_n}"

    # optimality is a statement at n = k only, so derived anchors up to k = 6 are cheap
    closed = bounds.normalize_kb(kb, OPTIMALITY_MAX_K)
    for entry in closed:
        k, lo, hi = entry.n, entry.lower, entry.upper
        if 2 <= k <= OPTIMALITY_MAX_K:
            ok = all(bounds.check_optimality_remark(k, u) for u in range(lo, hi + 1))
            yield ok, f"optimality remark for k={k}, u in [{lo}, {hi}]"

    f3 = floor_scaled(3, bounds.adaptive_from_anchor(4, 62).q) + 1
    r3 = kb.upper(3) if 3 in kb else 17
    yield f3 < r3, f"f(3)={f3} < {r3}, non-extension confirmed" if f3 < r3 else \
        f"f(3)={f3} >= {r3}, non-extension NOT confirmed"


def cmd_verify(cfg, out, err):
    kb = load_knowledge(cfg, err)
    results = list(run_verification(cfg, kb))
    if cfg.output_format == "json":
        out.write(json.dumps([{"passed": p, "check": m} for p, m in results], indent=2) + "\n")
    else:
        for passed, message in results:
            out.write(f"{'PASS' if passed else 'FAIL'}  {message}\n")
    failed = sum(not p for p, _ in results)
    if cfg.output_format == "human":
        out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def cmd_oracle_ramsey(cfg, out, err):
    n = cfg.colors
    kb = load_knowledge(cfg, err)
    try:
        value, witness, nodes = oracles.ramsey_number(n, cfg.budget, cfg.workers)
    except BudgetExceeded as exc:
        out.write(f"R_{n}(3): budget-exceeded ({exc})\n")
        return EXIT_BUDGET
    if witness is not None:
        out.write(f"R_{n}(3) > {value - 1} (witness)\n")
    out.write(f"R_{n}(3) = {value} (proved)\n")
    out.write(f"nodes: {nodes}\n")
    if n in kb and not kb.lower(n) <= value <= kb.upper(n):
        out.write(f"CONTRADICTION: knowledge base has {kb.lower(n)} <= R_{n}(3) <= {kb.upper(n)}\n")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_oracle_schur(cfg, out, err):
    n = cfg.colors
    kb = load_knowledge(cfg, err)
    try:
        result = oracles.schur_search(n, cfg.limit, cfg.budget)
    except BudgetExceeded as exc:
        out.write(f"S({n}): budget-exceeded ({exc})\n")
        return EXIT_BUDGET
    if result.exceeds_limit:
        out.write(f"S({n}) >= {cfg.limit} (witness; exceeds limit)\n")
        out.write(f"nodes: {result.nodes}\n")
        return EXIT_OK
    s = result.value
    out.write(f"S({n}) = {s} (proved)\n")
    out.write(f"witness: {result.witness.as_sets()}\n")
    out.write(f"nodes: {result.nodes}\n")
    closed = bounds.normalize_kb(kb, n)
    if n in closed:
        ok = oracles.check_schur_ramsey_link(n, closed, s)
        out.write(f"link S({n}) <= R_{n}(3) - 2 and S({n}) <= floor({n}!e) - 1: "
                  f"{'pass' if ok else 'FAIL'}\n")
        if not ok:
            return EXIT_VERIFY
    return EXIT_OK


def cmd_check_witness(cfg, out, err):
    text = Path(cfg.witness_path).read_text(encoding="utf-8")
    if witness_kind(text) == "ramsey":
        coloring = parse_ramsey_witness(text)
        claimed_n = cfg.colors if cfg.colors is not None else coloring.n
        triangle = oracles.find_mono_triangle(coloring)
        if oracles.verify_witness(coloring, claimed_n, coloring.N):
            out.write(f"valid: no monochromatic triangle in K_{coloring.N} "
                      f"with {claimed_n} colors; R_{claimed_n}(3) > {coloring.N}\n")
            return EXIT_OK
        reason = (f"monochromatic triangle {triangle.vertices} in color {triangle.color}"
                  if triangle else f"uses more than {claimed_n} colors")
        out.write(f"invalid: {reason}\n")
        return EXIT_VERIFY
    partition = parse_schur_witness(text)
    violation = oracles.find_schur_violation(partition)
    if violation is None and partition.n <= (cfg.colors or partition.n):
        out.write(f"valid: sum-free partition of [1, {partition.N}] into "
                  f"{partition.n} blocks; S({partition.n}) >= {partition.N}\n")
        return EXIT_OK
    out.write(f"invalid: {violation.x} + {violation.y} = {violation.z} in one block\n"
              if violation else "invalid: too many blocks\n")
    return EXIT_VERIFY


_DISPATCH = {
    "table": cmd_table,
    "adapt": cmd_adapt,
    "verify": cmd_verify,
    "oracle-ramsey": cmd_oracle_ramsey,
    "oracle-schur": cmd_oracle_schur,
    "check-witness": cmd_check_witness,
}


def run(cfg, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return _DISPATCH[cfg.command](cfg, out, err)
    except FormatError as exc:
        print(f"format error: {exc}", file=err)
        return EXIT_FORMAT
    except DomainError as exc:
        print(f"domain error: {exc}", file=err)
        return EXIT_DOMAIN
    except BudgetExceeded as exc:
        print(f"budget-exceeded: {exc}", file=err)
        return EXIT_BUDGET


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
