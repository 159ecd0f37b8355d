"""Command-line front end.

Every command writes JSON (or plain text with ``--format text``) to stdout.
Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial
from pathlib import Path
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from .combinatorics import (
    DomainError,
    enumerate_multicompositions,
    enumerate_partitions,
    enumerate_sst,
    is_multipartition,
    multicomposition_from_json,
    size,
)
from .hecke import AffHeckeElt, CycContext, sample_parameters
from .parmat import ParMat, enumerate_parmat, enumerate_parmat_flat
from .polyalg import format_poly, parse_poly
from .rsk import BijectionReport, phi, verify_pair
from .schurdjm import (
    algebra_dimension,
    cellular_basis,
    cellularity_check,
    check_djm_instance,
    compose,
    djm_relation_instances,
    functor_check,
    parmat_flat_rank,
    phi_ST,
)
from .schurrep import SUITES, DiagramProgram, check_instance, eval_program, num_red, num_x

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

VERIFY_SUITES = (
    "poly-relations",
    "reduced-relations",
    "crossgen",
    "djm-relations",
    "functor",
    "rsk-bijection",
    "rank-flat",
    "cellularity",
    "dim",
    "associativity",
)


class UsageError(Exception):
    pass


class ResourceCap(Exception):
    def __init__(self, message: str, partial: dict):
        super().__init__(message)
        self.partial = partial


@dataclass
class RunConfig:
    m: int = 2
    ell: int = 1
    u: tuple | None = None
    max_degree: int = 4
    max_thickness: int = 3
    fmt: str = "json"
    seed: int = 0
    jobs: int = 1
    time_limit: float | None = None
    max_dim: int = 50_000

    def __post_init__(self) -> None:
        if self.m < 0 or self.ell < 1:
            raise UsageError("need --m >= 0 and --ell >= 1")
        if self.max_degree < 0 or self.max_thickness < 1 or self.jobs < 1:
            raise UsageError("caps must be positive")
        if self.u is not None and len(self.u) != self.ell:
            raise UsageError(f"--u needs exactly {self.ell} values")

    def numeric_u(self) -> tuple:
        return self.u if self.u is not None else sample_parameters(self.ell)

    def u_json(self, numeric: bool = False):
        vals = self.numeric_u() if numeric else self.u
        return "generic" if vals is None else [str(v) for v in vals]


class Deadline:
    def __init__(self, seconds: float | None):
        self.end = None if seconds is None else time.monotonic() + seconds

    def expired(self) -> bool:
        return self.end is not None and time.monotonic() > self.end


# ---------------------------------------------------------------------------
# parsing helpers


def parse_u(text: str | None) -> tuple | None:
    if text is None or text.strip() in ("", "generic"):
        return None
    try:
        return tuple(mpq(v.strip()) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--u must be 'generic' or rationals like '1/2,3': {exc}") from exc


def load_json(arg: str):
    """Inline JSON text or a path to a UTF-8 JSON file."""
    text = arg
    if not arg.lstrip().startswith(("[", "{")):
        try:
            text = Path(arg).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def load_multicomposition(arg: str):
    try:
        return multicomposition_from_json(load_json(arg))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"expected a list of lists of integers: {exc}") from exc


def config_from(args) -> RunConfig:
    jobs = os.environ.get("SCHURKIT_JOBS")
    try:
        jobs = int(jobs) if jobs else getattr(args, "jobs", 1)
    except ValueError as exc:
        raise UsageError("SCHURKIT_JOBS must be an integer") from exc
    return RunConfig(
        m=getattr(args, "m", 2),
        ell=getattr(args, "ell", 1),
        u=parse_u(getattr(args, "u", None)),
        max_degree=getattr(args, "max_degree", 4),
        max_thickness=getattr(args, "max_thickness", 3),
        fmt=getattr(args, "format", "json"),
        seed=getattr(args, "seed", 0),
        jobs=jobs,
        time_limit=getattr(args, "time_limit", None),
        max_dim=getattr(args, "max_dim", 50_000),
    )


# ---------------------------------------------------------------------------
# output


def _default(obj):
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_default)


def emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(dumps(obj) + "\n")
        return
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            out.write(f"{k}: {v if isinstance(v, (str, int, bool)) else dumps(v)}\n")
    else:
        out.write(f"{obj}\n")


def run_ordered(items: Sequence, fn: Callable, jobs: int, deadline: Deadline) -> tuple[list, bool]:
    """Apply ``fn`` to ``items`` keeping input order; stop early once the deadline passes."""
    results: list = []
    if jobs <= 1:
        for it in items:
            if deadline.expired():
                return results, True
            results.append(fn(it))
        return results, False
    chunk = max(jobs * 4, 1)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for start in range(0, len(items), chunk):
            if deadline.expired():
                return results, True
            results.extend(pool.map(fn, items[start : start + chunk]))
    return results, False


def _hecke_cap(cfg: RunConfig, m: int) -> None:
    dim = cfg.ell**m * factorial(m)
    if dim > cfg.max_dim:
        raise ResourceCap(
            f"Hecke algebra dimension {dim} exceeds --max-dim {cfg.max_dim}",
            {"m": m, "ell": cfg.ell, "dimension": dim, "max_dim": cfg.max_dim},
        )


# ---------------------------------------------------------------------------
# enumerate


def cmd_enumerate(args, cfg: RunConfig, out) -> int:
    kind = args.kind
    if kind == "partitions":
        n = cfg.m if args.n is None else args.n
        items = [list(p) for p in enumerate_partitions(n, args.max_part, args.max_len)]
    elif kind == "multicompositions":
        items = [[list(c) for c in lam] for lam in enumerate_multicompositions(cfg.m, cfg.ell)]
    elif kind == "sst":
        if not args.shape or not args.type:
            raise UsageError("enumerate sst needs --shape and --type")
        shape, mu = load_multicomposition(args.shape), load_multicomposition(args.type)
        if len(shape) != len(mu) or not is_multipartition(shape):
            raise UsageError("--shape must be a multipartition with as many components as --type")
        items = [T.to_json() for T in enumerate_sst(shape, mu)]
    else:
        if not args.nu or not args.mu:
            raise UsageError(f"enumerate {kind} needs --nu and --mu")
        nu, mu = load_multicomposition(args.nu), load_multicomposition(args.mu)
        if kind == "parmat":
            items = [x.to_json() for x in enumerate_parmat(nu, mu, cfg.max_degree)]
        else:
            cap = args.degree_cap
            items = [x.to_json() for x in enumerate_parmat_flat(nu, mu, cap)]
    for it in items:
        emit(it, cfg.fmt, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _verify_relations(suite: str, cfg: RunConfig, deadline: Deadline) -> dict:
    instances = list(SUITES[suite](cfg.max_thickness))
    results, stopped = run_ordered(instances, lambda inst: check_instance(inst, cfg.max_degree), cfg.jobs, deadline)
    failures = [f for _, f in results if f]
    report = {
        "suite": suite,
        "instances": len(results),
        "evaluations": sum(n for n, _ in results),
        "max_degree": cfg.max_degree,
        "max_thickness": cfg.max_thickness,
        "failures": failures[:20],
        "mismatches": len(failures),
    }
    if stopped:
        raise ResourceCap("time limit reached", report)
    return report


def _verify_djm_relations(cfg: RunConfig, deadline: Deadline) -> dict:
    for m in range(cfg.m + 1):
        _hecke_cap(cfg, m)
    instances = list(djm_relation_instances(cfg.ell, cfg.m, cfg.max_thickness))
    contexts: dict = {}
    # contexts are shared, so evaluation stays sequential
    results, stopped = run_ordered(instances, lambda i: check_djm_instance(i, cfg.ell, cfg.u, contexts), 1, deadline)
    failures = [f for f in results if f]
    report = {"suite": "djm-relations", "ell": cfg.ell, "max_m": cfg.m, "u": cfg.u_json(),
              "checked": len(results), "failures": failures[:20], "mismatches": len(failures)}
    if stopped:
        raise ResourceCap("time limit reached", report)
    return report


def _verify_rsk(cfg: RunConfig, deadline: Deadline) -> dict:
    types = enumerate_multicompositions(cfg.m, cfg.ell)
    pairs = [(nu, mu) for nu in types for mu in types]

    def one(pair):
        rep = BijectionReport()
        verify_pair(pair[0], pair[1], rep)
        return rep

    results, stopped = run_ordered(pairs, one, cfg.jobs, deadline)
    total = BijectionReport()
    for r in results:
        total.pairs_checked += r.pairs_checked
        total.elements_checked += r.elements_checked
        total.mismatches.extend(r.mismatches)
    report = {"suite": "rsk-bijection", "m": cfg.m, "ell": cfg.ell, "checked": total.elements_checked,
              **total.to_json(), "mismatches": len(total.mismatches), "witnesses": total.mismatches[:20]}
    if stopped:
        raise ResourceCap("time limit reached", report)
    return report


def _verify_rank_flat(cfg: RunConfig, deadline: Deadline, pairs=None) -> dict:
    _hecke_cap(cfg, cfg.m)
    ctx = CycContext(cfg.m, cfg.ell, cfg.numeric_u())
    if pairs is None:
        types = enumerate_multicompositions(cfg.m, cfg.ell)
        pairs = [(nu, mu) for nu in types for mu in types]
    results, stopped = run_ordered(pairs, lambda p: parmat_flat_rank(p[0], p[1], ctx), 1, deadline)
    failures = [r.to_json() for r in results if not r.ok]
    report = {
        "suite": "rank-flat", "m": cfg.m, "ell": cfg.ell, "u": cfg.u_json(numeric=True),
        "pairs": len(results),
        "count": sum(r.data["count"] for r in results),
        "rank": sum(r.data["rank"] for r in results),
        "failures": failures[:20], "mismatches": len(failures),
    }
    if stopped:
        raise ResourceCap("time limit reached", report)
    return report


def cmd_verify(args, cfg: RunConfig, out) -> int:
    suite = args.suite
    if suite not in VERIFY_SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(VERIFY_SUITES)}")
    deadline = Deadline(cfg.time_limit)
    if suite in ("poly-relations", "reduced-relations", "crossgen"):
        name = {"poly-relations": "full", "reduced-relations": "reduced", "crossgen": "crossgen"}[suite]
        report = _verify_relations(name, cfg, deadline)
    elif suite == "djm-relations":
        report = _verify_djm_relations(cfg, deadline)
    elif suite == "rsk-bijection":
        report = _verify_rsk(cfg, deadline)
    elif suite == "rank-flat":
        report = _verify_rank_flat(cfg, deadline)
    elif suite == "functor":
        _hecke_cap(cfg, cfg.m)
        rep = functor_check(cfg.m, cfg.ell, CycContext(cfg.m, cfg.ell, cfg.u))
        report = {**rep.to_json(), "m": cfg.m, "ell": cfg.ell, "u": cfg.u_json(), "mismatches": len(rep.failures)}
    elif suite == "cellularity":
        _hecke_cap(cfg, cfg.m)
        rep = cellularity_check(cfg.m, cfg.ell, CycContext(cfg.m, cfg.ell, cfg.numeric_u()))
        report = {**rep.to_json(), "m": cfg.m, "ell": cfg.ell, "u": cfg.u_json(numeric=True),
                  "mismatches": len(rep.failures)}
    elif suite == "associativity":
        report = _verify_associativity(cfg, args.samples, deadline)
    else:
        report = _dim_report(cfg)
    emit(report, cfg.fmt, out)
    return EXIT_OK if report["mismatches"] == 0 else EXIT_FAIL


def _verify_associativity(cfg: RunConfig, samples: int, deadline: Deadline) -> dict:
    """Sampled ``(f g) h == f (g h)`` on composable triples of cellular basis maps."""
    _hecke_cap(cfg, cfg.m)
    ctx = CycContext(cfg.m, cfg.ell, cfg.numeric_u())
    rng = random.Random(cfg.seed)
    basis = cellular_basis(cfg.m, cfg.ell, ctx)
    by_target: dict = {}
    for S, T in basis:
        by_target.setdefault(S.type, []).append((S, T))
    failures, checked = [], 0
    for _ in range(samples):
        if deadline.expired():
            break
        S, T = rng.choice(basis)
        U, V = rng.choice(by_target[T.type])
        X, Y = rng.choice(by_target[V.type])
        h, g, f = phi_ST(S, T, ctx), phi_ST(U, V, ctx), phi_ST(X, Y, ctx)
        left = compose(f, compose(g, h))
        right = compose(compose(f, g), h)
        checked += 1
        if left != right:
            failures.append({"labels": [t.to_json() for t in (S, T, U, V, X, Y)]})
    report = {"suite": "associativity", "m": cfg.m, "ell": cfg.ell, "seed": cfg.seed,
              "u": cfg.u_json(numeric=True), "checked": checked, "failures": failures[:20],
              "mismatches": len(failures)}
    if checked < samples:
        raise ResourceCap("time limit reached", report)
    return report


def _dim_report(cfg: RunConfig) -> dict:
    _hecke_cap(cfg, cfg.m)
    ctx = CycContext(cfg.m, cfg.ell, cfg.numeric_u())
    count1, count2 = algebra_dimension(cfg.m, cfg.ell, ctx)
    return {"suite": "dim", "m": cfg.m, "ell": cfg.ell, "u": cfg.u_json(numeric=True),
            "count1": count1, "count2": count2, "hecke_dimension": ctx.dimension(),
            "mismatches": int(count1 != count2)}


# ---------------------------------------------------------------------------
# render


def _layout(x: ParMat) -> tuple[list[int], list[int], list[int], int]:
    """Horizontal slots for top vertices, bottom vertices and red strands."""
    top, bottom, reds = [], [], []
    col = 0
    ell = len(x.row_blocks)
    for p in range(ell):
        if ell > 1:
            reds.append(col)
            col += 1
        width = max(len(x.row_blocks[p]), len(x.col_blocks[p]), 1 if ell > 1 else 0)
        top.extend(col + k for k in range(len(x.row_blocks[p])))
        bottom.extend(col + k for k in range(len(x.col_blocks[p])))
        col += width
    return top, bottom, reds, col


def _legs(x: ParMat) -> list[tuple[int, int, int, tuple]]:
    return [
        (r, c, a, x.P[r][c])
        for r, row in enumerate(x.A)
        for c, a in enumerate(row)
        if a
    ]


def render_ascii(x: ParMat) -> str:
    top, bottom, reds, width = _layout(x)
    legs = _legs(x)
    if not width:
        return ""
    step, height = 6, 9
    cols = width * step + 1
    grid = [[" "] * cols for _ in range(height)]
    for s in reds:
        for y in range(height):
            grid[y][s * step] = "#"
    for r, c, a, eta in legs:
        x0, x1 = bottom[c] * step, top[r] * step
        for y in range(1, height - 1):
            t = (height - 1 - y) / (height - 1)
            xx = round(x0 + (x1 - x0) * t)
            ch = "|" if x0 == x1 else ("/" if x1 > x0 else "\\")
            if grid[y][xx] == " ":
                grid[y][xx] = ch
        mid = height // 2
        xm = round((x0 + x1) / 2)
        label = str(a) + ("*" if eta else "")
        for k, ch in enumerate(label):
            if xm + 1 + k < cols:
                grid[mid][xm + 1 + k] = ch
    for xs, y, blocks in ((top, 0, x.row_blocks), (bottom, height - 1, x.col_blocks)):
        parts = [v for comp in blocks for v in comp]
        for pos, v in zip(xs, parts):
            text = f"[{v}]"
            for k, ch in enumerate(text):
                if pos * step + k < cols:
                    grid[y][pos * step + k] = ch
    lines = ["".join(row).rstrip() for row in grid]
    lines.append("")
    for r, c, a, eta in legs:
        dots = f" dots {list(eta)}" if eta else ""
        lines.append(f"leg bottom {c + 1} -> top {r + 1}: thickness {a}{dots}")
    if reds:
        lines.append("red strands (#): " + ", ".join(f"u{k + 1}" for k in range(len(reds))))
    return "\n".join(lines) + "\n"


def render_svg(x: ParMat) -> str:
    top, bottom, reds, width = _layout(x)
    step, height, pad = 60, 200, 30
    w = max(width * step, 0) + 2 * pad if width else 0
    h = height + 2 * pad if width else 0
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">']
    for k, s in enumerate(reds):
        xs = pad + s * step
        out.append(f'<line x1="{xs}" y1="{pad}" x2="{xs}" y2="{pad + height}" stroke="red" stroke-width="2"/>')
        out.append(f'<text x="{xs + 3}" y="{pad + height + 15}" fill="red" font-size="12">u{k + 1}</text>')
    for r, c, a, eta in _legs(x):
        x0, x1 = pad + bottom[c] * step, pad + top[r] * step
        y0, y1 = pad + height, pad
        out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="black" stroke-width="{a}"/>')
        xm, ym = (x0 + x1) / 2, (y0 + y1) / 2
        out.append(f'<text x="{xm + 6:g}" y="{ym:g}" font-size="12">{a}</text>')
        if eta:
            out.append(f'<circle cx="{xm:g}" cy="{ym + 20:g}" r="4" fill="black"/>')
            out.append(f'<text x="{xm + 8:g}" y="{ym + 24:g}" font-size="11">{",".join(map(str, eta))}</text>')
    for xs, y, blocks in ((top, pad, x.row_blocks), (bottom, pad + height, x.col_blocks)):
        parts = [v for comp in blocks for v in comp]
        for pos, v in zip(xs, parts):
            cx = pad + pos * step
            out.append(f'<circle cx="{cx}" cy="{y}" r="3" fill="black"/>')
            out.append(f'<text x="{cx - 4}" y="{y - 6 if y == pad else y + 18}" font-size="12">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(args, cfg: RunConfig, out) -> int:
    try:
        x = ParMat.from_json(load_json(args.input))
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    out.write(render_svg(x) if args.style == "svg" else render_ascii(x))
    return EXIT_OK


# ---------------------------------------------------------------------------
# rsk, hecke, djm, eval


def cmd_rsk(args, cfg: RunConfig, out) -> int:
    if args.action == "verify":
        report = _verify_rsk(cfg, Deadline(cfg.time_limit))
        emit(report, cfg.fmt, out)
        return EXIT_OK if report["mismatches"] == 0 else EXIT_FAIL
    if not args.input:
        raise UsageError("rsk needs --input parmat.json")
    try:
        x = ParMat.from_json(load_json(args.input))
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    if args.level is not None and args.level != len(x.row_blocks):
        raise UsageError("--level does not match the block structure of the input")
    S, T = phi(x)
    emit({"S": S.to_json(), "T": T.to_json()}, cfg.fmt, out)
    return EXIT_OK


def cmd_hecke(args, cfg: RunConfig, out) -> int:
    ctx = CycContext(cfg.m, cfg.ell, cfg.u)
    a = AffHeckeElt.from_json(load_json(args.a), cfg.m, ctx.nu)
    b = AffHeckeElt.from_json(load_json(args.b), cfg.m, ctx.nu)
    prod = ctx.mul(ctx.lift(a), ctx.lift(b))
    emit(prod.to_json(), cfg.fmt, out)
    return EXIT_OK


def cmd_djm(args, cfg: RunConfig, out) -> int:
    if args.action == "dim":
        report = _dim_report(cfg)
    elif args.action == "cell-check":
        _hecke_cap(cfg, cfg.m)
        rep = cellularity_check(cfg.m, cfg.ell, CycContext(cfg.m, cfg.ell, cfg.numeric_u()))
        report = {**rep.to_json(), "u": cfg.u_json(numeric=True), "mismatches": len(rep.failures)}
    else:
        if not args.nu or not args.mu:
            raise UsageError("djm rank needs --nu and --mu")
        nu, mu = load_multicomposition(args.nu), load_multicomposition(args.mu)
        if len(nu) != len(mu):
            raise UsageError("--nu and --mu must have the same number of components")
        cfg = RunConfig(m=size(mu), ell=len(mu), u=cfg.u, fmt=cfg.fmt, max_dim=cfg.max_dim)
        report = _verify_rank_flat(cfg, Deadline(None), pairs=[(nu, mu)])
    emit(report, cfg.fmt, out)
    return EXIT_OK if report["mismatches"] == 0 else EXIT_FAIL


def cmd_verify_relations(args, cfg: RunConfig, out) -> int:
    report = _verify_relations(args.suite, cfg, Deadline(cfg.time_limit))
    emit(report, cfg.fmt, out)
    return EXIT_OK if report["mismatches"] == 0 else EXIT_FAIL


def cmd_eval(args, cfg: RunConfig, out) -> int:
    try:
        prog = DiagramProgram.from_json(load_json(args.program))
        f = parse_poly(args.monomial, num_x(prog.source), max(num_red(prog.source), 1))
        result = eval_program(prog, f)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    emit({"input": format_poly(f), "output": format_poly(result)}, cfg.fmt, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, *, sizes: bool = True) -> None:
    if sizes:
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--ell", type=int, default=1)
    p.add_argument("--u", default=None, help="'generic' or comma-separated rationals")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--max-thickness", type=int, default=3)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--time-limit", type=float, default=None, help="seconds before stopping with exit 3")
    p.add_argument("--max-dim", type=int, default=50_000, help="largest Hecke algebra to build")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="schurkit", description="Affine and cyclotomic Schur category toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="stream combinatorial objects as JSON lines")
    p.add_argument("kind", choices=("partitions", "multicompositions", "sst", "parmat", "parmat-flat"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--max-part", type=int, default=None)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--shape")
    p.add_argument("--type")
    p.add_argument("--nu")
    p.add_argument("--mu")
    p.add_argument("--degree-cap", type=int, default=None)
    _common(p)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite")
    p.add_argument("--samples", type=int, default=25, help="sample count for the associativity suite")
    _common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("render", help="draw a decorated matrix")
    p.add_argument("style", choices=("ascii", "svg"))
    p.add_argument("--input", required=True)
    _common(p)
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("rsk", help="apply or verify the higher level RSK bijection")
    p.add_argument("action", nargs="?", choices=("verify",))
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--input")
    _common(p)
    p.set_defaults(handler=cmd_rsk)

    p = sub.add_parser("hecke", help="cyclotomic Hecke algebra arithmetic")
    p.add_argument("action", choices=("mul",))
    p.add_argument("a")
    p.add_argument("b")
    _common(p)
    p.set_defaults(handler=cmd_hecke)

    p = sub.add_parser("djm", help="cellular Schur algebra checks")
    p.add_argument("action", choices=("dim", "cell-check", "rank"))
    p.add_argument("--nu")
    p.add_argument("--mu")
    _common(p)
    p.set_defaults(handler=cmd_djm)

    p = sub.add_parser("verify-relations", help="polynomial model relation suites")
    p.add_argument("--suite", choices=tuple(SUITES), default="full")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    _common(p, sizes=False)
    p.set_defaults(handler=cmd_verify_relations)

    p = sub.add_parser("eval", help="evaluate a diagram program on a polynomial")
    p.add_argument("--program", required=True)
    p.add_argument("--monomial", required=True)
    _common(p, sizes=False)
    p.set_defaults(handler=cmd_eval)
    return parser


def main(argv: Iterable[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(None if argv is None else list(argv))
        cfg = config_from(args)
        random.seed(cfg.seed)
        return args.handler(args, cfg, out)
    except UsageError as exc:
        sys.stderr.write(f"schurkit: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        sys.stderr.write(f"schurkit: {exc}\n")
        return EXIT_USAGE
    except ResourceCap as exc:
        emit({"error": str(exc), "partial": exc.partial}, "json", out)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
