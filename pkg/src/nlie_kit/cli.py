"""Command line driver: verify algebras, sweep module families, tabulate
dimensions and obstruction spans, and run campaigns from a task file.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage, parse or
budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .basiclie import basic_lie_algebra, jacobi_check, verify_iso_to_so
from .errors import NLieError, ParseError
from .nlie import is_filippov, read, vector_product_algebra
from .prolong import (
    can_prolong,
    dimension_formula,
    family_module,
    nlie_dimension,
    nlie_highest_weight,
    predicted_prolongs,
    prolong_check_general,
    prolongs_by_semidirect,
    q2_spans,
    to_basic,
)
from .sorep import dumps_rep, laplacian_kernel_dim, loads_rep, sl2_module

DEFAULT_BUDGET = 4
FAMILIES = ("harmonic", "polynomial", "tensor", "adjoint", "wedge2")


class UsageError(Exception):
    """Bad parameters; reported with exit code 2."""


@dataclass(frozen=True)
class Budget:
    """Caps on the parameters a command may touch: t <= level, n <= level + 2."""

    level: int = DEFAULT_BUDGET

    @property
    def max_t(self) -> int:
        return self.level

    @property
    def max_n(self) -> int:
        return self.level + 2

    def check_n(self, n: int) -> None:
        if n < 2:
            raise UsageError(f"invalid arity n={n}: need n >= 2")
        if n > self.max_n:
            raise UsageError(f"n={n} exceeds budget (max n={self.max_n}); raise --budget")

    def check_t(self, values: Sequence[int], name: str = "t") -> None:
        for t in values:
            if t < 0:
                raise UsageError(f"{name}={t} must be >= 0")
            if t > self.max_t:
                raise UsageError(f"{name}={t} exceeds budget (max {name}={self.max_t}); raise --budget")


@dataclass
class Outcome:
    """Result of one task: status 0 or 1, printable lines and JSON data."""

    command: str
    params: dict
    ok: bool
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"command": self.command, "params": self.params, "ok": self.ok, **self.data}


def parse_range(text: str | int | None, default: tuple[int, int] = (0, 0)) -> list[int]:
    """'A..B' (inclusive), 'A', or an int."""
    if text is None:
        lo, hi = default
    elif isinstance(text, int):
        lo = hi = text
    else:
        parts = str(text).split("..")
        try:
            if len(parts) == 1:
                lo = hi = int(parts[0])
            elif len(parts) == 2:
                lo, hi = int(parts[0]), int(parts[1])
            else:
                raise ValueError
        except ValueError:
            raise UsageError(f"bad range {text!r}: expected A..B or A") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


# ---------------------------------------------------------------- tasks


def task_verify(vn: int | None = None, file: str | None = None, budget: Budget = Budget()) -> Outcome:
    if (vn is None) == (file is None):
        raise UsageError("verify needs exactly one of --vn or --file")
    if vn is not None:
        budget.check_n(vn)
        alg = vector_product_algebra(vn)
        params = {"vn": vn}
    else:
        alg = read(file)
        params = {"file": Path(file).name}
    reports = [is_filippov(alg)]
    reports[0].name = "filippov"
    jac = jacobi_check(basic_lie_algebra(alg))
    jac.name = "jacobi(L)"
    reports.append(jac)
    if vn is not None:
        reports.append(verify_iso_to_so(vn))
    checks = [
        {"name": r.name, "passed": r.passed, "checked": r.checked, "witness": r.witness} for r in reports
    ]
    ok = all(reports)
    return Outcome("verify", params, ok, [r.line() for r in reports], {"checks": checks})


def _prolong_row(kind: str, n: int, t: int, r: int, cross: bool, timing: bool) -> dict:
    rep = family_module(kind, n, t, r)
    report = can_prolong(rep)
    expected = predicted_prolongs(kind, n, t, r)
    row = {
        "family": kind,
        "t": t if kind in ("harmonic", "polynomial", "tensor") else None,
        "r": r if kind == "tensor" else None,
        "dim": rep.dim,
        "verdict": report.verdict,
        "predicted": expected,
        "highest_weight": nlie_highest_weight(kind, n, t, r) if report.verdict else None,
        "witness": report.witness.to_dict() if report.witness else None,
        "elapsed_ms": round(report.elapsed_ms, 3) if timing else None,
    }
    if cross:
        alg = vector_product_algebra(n)
        basic = to_basic(rep)
        row["general"] = prolong_check_general(alg, basic).verdict
        row["semidirect"] = prolongs_by_semidirect(rep)
    return row


def task_prolong(
    n: int,
    family: str = "harmonic",
    t: str | int | None = None,
    r: str | int | None = None,
    module: str | None = None,
    cross: bool = False,
    timing: bool = False,
    budget: Budget = Budget(),
) -> Outcome:
    budget.check_n(n)
    if module is not None:
        return _prolong_file(n, module, timing)
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}")
    if family == "tensor" and n != 3:
        raise UsageError("tensor modules M_{t,r} exist for n = 3 only")
    params: dict = {"n": n, "family": family}
    if family in ("harmonic", "polynomial", "tensor"):
        ts = parse_range(t, (0, min(3, budget.max_t)))
        budget.check_t(ts)
        params["t"] = [ts[0], ts[-1]]
    else:
        ts = [0]
    if family == "tensor":
        rs = parse_range(r, (ts[0], ts[-1]))
        budget.check_t(rs, "r")
        params["r"] = [rs[0], rs[-1]]
    else:
        rs = [0]
    if cross:
        params["cross_check"] = True
    rows = [_prolong_row(family, n, tv, rv, cross, timing) for tv in ts for rv in rs]
    lines = [_prolong_header(cross)]
    diffs = []
    for row in rows:
        lines.append(_prolong_line(row, cross))
        if row["verdict"] != row["predicted"]:
            diffs.append(f"diff: {_row_key(row)} verdict={row['verdict']} predicted={row['predicted']}")
        if cross and not row["verdict"] == row["general"] == row["semidirect"]:
            diffs.append(f"diff: {_row_key(row)} deciders disagree")
    for row in rows:
        if row["witness"]:
            lines.append(f"witness {_row_key(row)}: {_witness_text(row['witness'])}")
    lines.extend(diffs)
    return Outcome("prolong", params, not diffs, lines, {"rows": rows, "diffs": diffs})


def _prolong_file(n: int, path: str, timing: bool) -> Outcome:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    rep = loads_rep(text)
    if rep.algebra.dim != (n + 1) * n // 2:
        raise UsageError(f"module in {path} is not over so{n + 1}")
    report = can_prolong(rep)
    row = {"family": "file", "dim": rep.dim, "verdict": report.verdict,
           "witness": report.witness.to_dict() if report.witness else None,
           "elapsed_ms": round(report.elapsed_ms, 3) if timing else None}
    lines = [f"module {Path(path).name}: dim={rep.dim} prolongs={_yes(report.verdict)}"]
    if report.witness:
        lines.append(f"witness: {_witness_text(row['witness'])}")
    # No prediction for an arbitrary module: the verdict is the result.
    return Outcome("prolong", {"n": n, "module": Path(path).name}, True, lines, {"rows": [row], "diffs": []})


def _yes(flag: bool) -> str:
    return "true" if flag else "false"


def _row_key(row: dict) -> str:
    key = row["family"]
    if row["t"] is not None:
        key += f" t={row['t']}"
    if row["r"] is not None:
        key += f" r={row['r']}"
    return key


def _prolong_header(cross: bool) -> str:
    head = f"{'family':<10}{'t':>3}{'r':>3}{'dim':>6}  {'prolongs':<9}{'predicted':<10}{'hw':>3}"
    return head + ("  general semidirect" if cross else "")


def _prolong_line(row: dict, cross: bool) -> str:
    def cell(v):
        return "-" if v is None else str(v)

    text = (
        f"{row['family']:<10}{cell(row['t']):>3}{cell(row['r']):>3}{row['dim']:>6}  "
        f"{_yes(row['verdict']):<9}{_yes(row['predicted']):<10}{cell(row['highest_weight']):>3}"
    )
    if cross:
        text += f"  {_yes(row['general']):<7} {_yes(row['semidirect'])}"
    return text


def _witness_text(w: dict) -> str:
    idx = f"R_{w['i']}{w['j']}{w['s']}{w['k']}" if "i" in w else str(w.get("tuple"))
    return f"{idx} on {w['basis_label']} -> ({', '.join(w['residual'])})"


def task_dimensions(n: int, t: str | int | None = None, budget: Budget = Budget()) -> Outcome:
    budget.check_n(n)
    ts = parse_range(t, (0, budget.max_t))
    budget.check_t(ts)
    rows = []
    for tv in ts:
        if n == 2:
            formula, model, source = nlie_dimension(2, tv), sl2_module(tv).dim, "sl2"
        else:
            formula, model, source = dimension_formula(n, tv), laplacian_kernel_dim(n + 1, tv), "harmonic"
        rows.append({"n": n, "t": tv, "formula": formula, "model": model, "model_source": source,
                     "match": formula == model})
    lines = [f"{'n':>3}{'t':>3}{'formula':>9}{'model':>7}  match"]
    lines += [f"{r['n']:>3}{r['t']:>3}{r['formula']:>9}{r['model']:>7}  {_yes(r['match'])}" for r in rows]
    return Outcome("dimensions", {"n": n, "t": [ts[0], ts[-1]]}, all(r["match"] for r in rows), lines,
                   {"rows": rows})


def task_q2(n: int, budget: Budget = Budget()) -> Outcome:
    budget.check_n(n)
    symbol, full = q2_spans(n)
    lines = [f"q2 n={n}: symbol span={symbol} with commutator terms={full}"]
    return Outcome("q2", {"n": n}, True, lines, {"symbol_span": symbol, "full_span": full})


def task_export(n: int, family: str, t: int, r: int, out: str, budget: Budget = Budget()) -> Outcome:
    budget.check_n(n)
    budget.check_t([t, r])
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}")
    if family == "tensor" and n != 3:
        raise UsageError("tensor modules M_{t,r} exist for n = 3 only")
    rep = family_module(family, n, t, r)
    Path(out).write_text(dumps_rep(rep), encoding="utf-8")
    params = {"n": n, "family": family, "t": t, "r": r}
    return Outcome("export", params, True, [f"wrote {family} module (dim {rep.dim}) to {out}"], {"dim": rep.dim})


# ---------------------------------------------------------------- campaigns

def _campaign_task(plan: dict, budget: Budget, timing: bool) -> Outcome:
    if not isinstance(plan, dict) or "task" not in plan:
        raise UsageError(f"task entries need a 'task' field, got {plan!r}")
    kind = plan["task"]
    args = {k: v for k, v in plan.items() if k != "task"}
    try:
        if kind == "verify-algebra":
            return task_verify(args.get("vn"), args.get("file"), budget)
        if kind == "prolong-sweep":
            return task_prolong(args["n"], args.get("family", "harmonic"), args.get("t"), args.get("r"),
                                args.get("module"), bool(args.get("cross_check", False)), timing, budget)
        if kind == "so4-sweep":
            return task_prolong(3, "tensor", args.get("t"), args.get("r"), None,
                                bool(args.get("cross_check", False)), timing, budget)
        if kind == "dimensions":
            return task_dimensions(args["n"], args.get("t"), budget)
        if kind == "q2":
            return task_q2(args["n"], budget)
    except KeyError as exc:
        raise UsageError(f"task {kind!r} is missing field {exc}") from None
    raise UsageError(f"unknown task {kind!r}")


def run_campaign(path: str, budget: Budget, timing: bool) -> tuple[list[Outcome], dict]:
    try:
        plan = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(plan, dict) or not isinstance(plan.get("tasks"), list):
        raise UsageError("campaign file needs a 'tasks' list")
    if "budget" in plan:
        budget = Budget(int(plan["budget"]))
    outcomes = [_campaign_task(task, budget, timing) for task in plan["tasks"]]
    return outcomes, plan.get("output") or {}


# ---------------------------------------------------------------- plumbing


def report_document(outcomes: Sequence[Outcome], budget: Budget) -> dict:
    return {
        "tool": "nlie-kit",
        "version": __version__,
        "budget": budget.level,
        "ok": all(o.ok for o in outcomes),
        "tasks": [o.to_dict() for o in outcomes],
    }


def dump_json(doc: dict) -> str:
    return json.dumps(_plain(doc), indent=2, sort_keys=True) + "\n"


def _plain(obj):
    from .reports import jsonable

    return jsonable(obj)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", metavar="PATH", help="also write a JSON report here ('-' for stdout)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="parameter cap: t <= N and n <= N + 2 (default %(default)s)")
    p.add_argument("--timing", action="store_true", help="record elapsed_ms (makes JSON non-deterministic)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlie-kit", description="Exact checks for n-Lie modules of V_n.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="Filippov identity, Jacobi on L(A), and L(V_n) = so_{n+1}")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--vn", type=int, metavar="N", help="the vector product algebra V_N")
    src.add_argument("--file", metavar="PATH", help="structure constants in the .nlie text format")
    _add_common(p)

    p = sub.add_parser("prolong", help="which modules of so_{n+1} prolong to n-Lie modules of V_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", metavar="A..B")
    p.add_argument("--r", metavar="A..B", help="second weight for --tensor (defaults to the --t range)")
    fam = p.add_mutually_exclusive_group()
    fam.add_argument("--tensor", action="store_const", dest="family", const="tensor", help="so4 modules M_{t,r}")
    fam.add_argument("--wedge2", action="store_const", dest="family", const="wedge2", help="Lie adjoint module")
    fam.add_argument("--adjoint", action="store_const", dest="family", const="adjoint", help="n-Lie adjoint module")
    fam.add_argument("--polynomial", action="store_const", dest="family", const="polynomial",
                     help="all degree-t polynomials")
    fam.add_argument("--module", metavar="FILE.json", help="a module exported with 'export'")
    p.add_argument("--cross-check", action="store_true", help="also run the bracket-level and semidirect-sum deciders")
    _add_common(p)

    p = sub.add_parser("dimensions", help="closed dimension formula against an explicit model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", metavar="A..B")
    _add_common(p)

    p = sub.add_parser("q2", help="span of the quadratic obstructions")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("export", help="write a family module as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES, default="harmonic")
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--out", required=True, metavar="PATH")
    _add_common(p)

    p = sub.add_parser("campaign", help="run the tasks listed in a JSON file")
    p.add_argument("tasks", metavar="TASKS.json")
    _add_common(p)
    return parser


def _dispatch(args: argparse.Namespace, budget: Budget) -> tuple[list[Outcome], dict]:
    if args.command == "verify":
        return [task_verify(args.vn, args.file, budget)], {}
    if args.command == "prolong":
        return [task_prolong(args.n, args.family or "harmonic", args.t, args.r, args.module,
                             args.cross_check, args.timing, budget)], {}
    if args.command == "dimensions":
        return [task_dimensions(args.n, args.t, budget)], {}
    if args.command == "q2":
        return [task_q2(args.n, budget)], {}
    if args.command == "export":
        return [task_export(args.n, args.family, args.t, args.r, args.out, budget)], {}
    return run_campaign(args.tasks, budget, args.timing)


def _write(target: str, text: str, out) -> None:
    if target == "-":
        out.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.budget < 0:
        print("error: --budget must be >= 0", file=err)
        return 2
    budget = Budget(args.budget)
    started = time.perf_counter()
    try:
        outcomes, output = _dispatch(args, budget)
        multi = len(outcomes) > 1
        text_lines = []
        for o in outcomes:
            if multi:
                text_lines.append(f"== {o.command} {json.dumps(_plain(o.params), sort_keys=True)}")
            text_lines.extend(o.lines)
        text_lines.append("ok" if all(o.ok for o in outcomes) else "FAILED")
        doc = report_document(outcomes, budget)
        if args.timing:
            doc["elapsed_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
        if output.get("path"):
            fmt = output.get("format", "text")
            if fmt not in ("text", "json"):
                raise UsageError(f"unknown output format {fmt!r}")
            _write(output["path"], dump_json(doc) if fmt == "json" else "\n".join(text_lines) + "\n", out)
        if args.json:
            _write(args.json, dump_json(doc), out)
        if args.json != "-":
            print("\n".join(text_lines), file=out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return 2
    except (UsageError, NLieError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    return 0 if all(o.ok for o in outcomes) else 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
