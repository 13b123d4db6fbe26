"""Benchmark rows: minimise generated automata and record sizes and timings."""

from __future__ import annotations

import csv
import io
import os
import time
from dataclasses import dataclass, astuple
from typing import Iterable, Iterator

from .automata import moore
from .generators import (
    RandomConfig, gen_fifo, gen_formula, gen_lint, gen_lmax, gen_random, gen_ww,
)

__all__ = ["BenchRow", "COLUMNS", "run_bench", "write_csv", "histogram_rows",
           "bin_width_from_env", "BIN_WIDTH_ENV"]

COLUMNS = ("model", "N_in", "dim_in", "N_out", "dim_out", "seconds", "seed")
BIN_WIDTH_ENV = "ORDNOM_HIST_BIN_WIDTH"
SEEDED = ("random", "formula")


@dataclass
class BenchRow:
    model: str
    N_in: int
    dim_in: int
    N_out: int
    dim_out: int
    seconds: float
    seed: int | str = ""


def _measure(model: str, d, seed="") -> BenchRow:
    t = time.perf_counter()
    out = moore(d).dfa
    seconds = time.perf_counter() - t
    return BenchRow(model, len(d.states), d.dim, len(out.states), out.dim, seconds, seed)


def run_bench(models: Iterable[str] = ("fifo", "ww", "lmax", "lint", "random", "formula"),
              fifo_max: int = 3, ww_max: int = 3, seeds: int = 10, seed: int = 0,
              orbits: int = 15, dim: int = 3, locations: int = 5,
              max_ops: int = 3) -> Iterator[BenchRow]:
    for m in models:
        if m == "fifo":
            for n in range(1, fifo_max + 1):
                yield _measure(f"fifo{n}", gen_fifo(n))
        elif m == "ww":
            for n in range(1, ww_max + 1):
                yield _measure(f"ww{n}", gen_ww(n))
        elif m == "lmax":
            yield _measure("lmax", gen_lmax())
        elif m == "lint":
            yield _measure("lint", gen_lint())
        elif m == "random":
            for s in range(seed, seed + seeds):
                cfg = RandomConfig(orbits, dim, max_ops, s)
                yield _measure(f"random{orbits}_{dim}", gen_random(cfg), s)
        elif m == "formula":
            for s in range(seed, seed + seeds):
                cfg = RandomConfig(locations, dim, max_ops, s)
                yield _measure(f"formula{locations}_{dim}", gen_formula(cfg), s)
        else:
            raise ValueError(f"unknown benchmark model {m!r}")


def write_csv(rows: Iterable[BenchRow], fh=None) -> str:
    buf = fh if fh is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        vals = list(astuple(r))
        vals[5] = f"{r.seconds:.6f}"
        w.writerow(vals)
    return buf.getvalue() if fh is None else ""


def bin_width_from_env(default: int = 1) -> int:
    raw = os.environ.get(BIN_WIDTH_ENV, "")
    if not raw:
        return default
    width = int(raw)
    if width < 1:
        raise ValueError(f"{BIN_WIDTH_ENV} must be a positive integer")
    return width


def histogram_rows(rows: Iterable[BenchRow], width: int = 1) -> list[tuple[str, int, int, int]]:
    """(model, bin low, bin high exclusive, count) of minimised orbit counts."""
    by_model: dict[str, list[int]] = {}
    for r in rows:
        if r.seed != "":
            by_model.setdefault(r.model, []).append(r.N_out)
    out = []
    for model, values in by_model.items():
        counts: dict[int, int] = {}
        for v in values:
            lo = (v // width) * width
            counts[lo] = counts.get(lo, 0) + 1
        out += [(model, lo, lo + width, counts[lo]) for lo in sorted(counts)]
    return out
