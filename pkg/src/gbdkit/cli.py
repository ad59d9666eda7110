"""Command-line entry point: ``gbdkit dist|env|verify``."""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analysis import run_suite
from .distances import DISTANCES
from .envelopes import CLOSED_FORMS, Side, envelope, make_query, prox
from .scalar import DomainError

HEADER = "# gbd-kit v1"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise ValueError(f"grid needs finite lo < hi, got {self.lo}:{self.hi}")
        if self.n < 2:
            raise ValueError(f"grid needs n >= 2, got {self.n}")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"expected lo:hi:n, got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)


def fmt(v: float) -> str:
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v == 0.0:
        v = 0.0  # drop the sign of -0.0
    return f"{v:.17g}"


def _rows_to_text(columns: Sequence[str], rows) -> str:
    lines = [HEADER, ",".join(columns)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> int:
    if out is None or out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"gbdkit: cannot write {out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def dist_rows(name: str, grid_x: GridSpec, grid_y: GridSpec):
    D = DISTANCES[name]
    xs, ys = grid_x.points(), grid_y.points()
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    vals = np.asarray(D(X, Y), dtype=float)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            yield x, y, vals[i, j]


def env_rows(side: str, name: str, gammas: Sequence[float], grid: GridSpec):
    for g in gammas:
        q = make_query(side, name, g)
        for x in grid.points():
            p = prox(q, x).set if math.isfinite(envelope(q, x)) else None
            # an empty prox set is written as [inf, -inf]
            lo, hi = (p.lo, p.hi) if p is not None else (math.inf, -math.inf)
            yield g, x, envelope(q, x), lo, hi


def cmd_dist(args) -> int:
    text = _rows_to_text(("x", "y", "value"), dist_rows(args.dist, args.grid, args.grid_y or args.grid))
    return _emit(text, args.out)


def cmd_env(args) -> int:
    gammas = args.gamma or [1.0]
    if any(not (math.isfinite(g) and g > 0) for g in gammas):
        print("gbdkit: --gamma values must be positive and finite", file=sys.stderr)
        return EXIT_CONFIG
    text = _rows_to_text(("gamma", "x", "env", "prox_lo", "prox_hi"),
                         env_rows(args.side, args.dist, gammas, args.grid))
    return _emit(text, args.out)


def cmd_verify(args) -> int:
    report = run_suite(args.suite)
    code = _emit(json.dumps(report, indent=2) + "\n", args.out)
    if code != EXIT_OK:
        return code
    return EXIT_OK if report["pass"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gbdkit", description="Generalized Bregman distances and envelopes on the real line.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="tabulate a distance over a product grid")
    d.add_argument("--dist", required=True, choices=sorted(DISTANCES))
    d.add_argument("--grid", required=True, type=GridSpec.parse, help="x grid lo:hi:n")
    d.add_argument("--grid-y", type=GridSpec.parse, help="y grid lo:hi:n (defaults to --grid)")
    d.add_argument("--out", help="output CSV path (stdout if omitted)")
    d.set_defaults(func=cmd_dist)

    env_names = sorted({name for _, name in CLOSED_FORMS} | set(DISTANCES))
    e = sub.add_parser("env", help="tabulate envelopes and prox sets for a gamma net")
    e.add_argument("--side", required=True, choices=[s.value for s in Side])
    e.add_argument("--dist", required=True, choices=env_names)
    e.add_argument("--gamma", type=float, action="append", help="repeatable; defaults to 1")
    e.add_argument("--grid", required=True, type=GridSpec.parse, help="x grid lo:hi:n")
    e.add_argument("--out", help="output CSV path (stdout if omitted)")
    e.set_defaults(func=cmd_env)

    v = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    v.add_argument("--suite", default="all", choices=["oracle", "inequalities", "asymptotics", "all"])
    v.add_argument("--out", help="output JSON path (stdout if omitted)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"gbdkit: {exc}", file=sys.stderr)
        return EXIT_CONFIG
