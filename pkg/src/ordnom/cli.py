"""Command line: generate, minimise, learn, equiv and bench."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .automata import equivalent, moore
from .bench import bin_width_from_env, histogram_rows, run_bench, write_csv
from .fileformat import AutomatonFileError, load, serialize
from .generators import (
    RandomConfig, gen_fifo, gen_formula, gen_lint, gen_lmax, gen_random, gen_ww,
)
from .learning import DFAOracle, LearnerStats, OracleInconsistency, learn
from .orbits import format_value


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "fifo":
        d = gen_fifo(args.n)
    elif kind == "ww":
        d = gen_ww(args.n)
    elif kind == "lmax":
        d = gen_lmax()
    elif kind == "lint":
        d = gen_lint()
    else:
        count = args.locations if kind == "formula" else args.orbits
        cfg = RandomConfig(count, args.dim, args.max_ops, args.seed)
        d = gen_formula(cfg) if kind == "formula" else gen_random(cfg)
    _emit(serialize(d), args.out)
    return 0


def cmd_minimise(args) -> int:
    d = load(args.input)
    t = time.perf_counter()
    m = moore(d).dfa
    seconds = time.perf_counter() - t
    if args.out:
        _emit(serialize(m), args.out)
    print(f"{len(d.states)} {len(m.states)} {d.dim} {m.dim} {seconds:.6f}")
    return 0


def cmd_learn(args) -> int:
    target = load(args.target)
    stats = LearnerStats()
    h = learn(DFAOracle(target), target.alphabet, check_oracle=args.check_oracle,
              stats=stats)
    if args.out:
        _emit(serialize(h), args.out)
    print(f"{stats.line()} cpu={stats.cpu_seconds:.3f}")
    return 0


def cmd_equiv(args) -> int:
    w = equivalent(load(args.first), load(args.second))
    if w is None:
        print("EQUIVALENT")
    else:
        print("COUNTEREXAMPLE " + " ".join(format_value(a) for a in w))
    return 0


def cmd_bench(args) -> int:
    models = [m.strip() for m in args.models.split(",") if m.strip()]
    rows = list(run_bench(models, args.fifo_max, args.ww_max, args.seeds, args.seed,
                          args.orbits, args.dim, args.locations, args.max_ops))
    _emit(write_csv(rows), args.out)
    hist = histogram_rows(rows, bin_width_from_env())
    if args.out and args.out != "-" and hist:
        base = Path(args.out)
        stem = base.with_name(base.stem + "_hist")
        lines = ["model,low,high,count"] + [",".join(map(str, h)) for h in hist]
        stem.with_suffix(".csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        if not args.no_plot:
            from .plotting import plot_histograms
            plot_histograms(hist, stem.with_suffix(".png"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordnom",
                                description="Nominal automata over the rationals with order.")
    sub = p.add_subparsers(dest="command", required=True)

    def random_flags(q):
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--orbits", type=int, default=15)
        q.add_argument("--dim", type=int, default=3)
        q.add_argument("--locations", type=int, default=5)
        q.add_argument("--max-ops", type=int, default=3)

    g = sub.add_parser("generate", help="write a benchmark automaton")
    g.add_argument("kind", choices=["fifo", "ww", "lmax", "lint", "random", "formula"])
    g.add_argument("--n", type=int, default=2, help="size for fifo and ww")
    random_flags(g)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    m = sub.add_parser("minimise", aliases=["minimize"], help="minimise an automaton file")
    m.add_argument("input")
    m.add_argument("--out")
    m.set_defaults(func=cmd_minimise)

    learn_p = sub.add_parser("learn", help="learn the language of an automaton file")
    learn_p.add_argument("target")
    learn_p.add_argument("--out")
    learn_p.add_argument("--check-oracle", action="store_true",
                         help="spot-check that membership answers are equivariant")
    learn_p.set_defaults(func=cmd_learn)

    e = sub.add_parser("equiv", help="compare the languages of two automaton files")
    e.add_argument("first")
    e.add_argument("second")
    e.set_defaults(func=cmd_equiv)

    b = sub.add_parser("bench", help="minimise generated automata, write CSV")
    b.add_argument("--models", default="fifo,ww,lmax,lint,random,formula")
    b.add_argument("--fifo-max", type=int, default=3)
    b.add_argument("--ww-max", type=int, default=3)
    b.add_argument("--seeds", type=int, default=10)
    random_flags(b)
    b.add_argument("--out")
    b.add_argument("--format", choices=["csv"], default="csv")
    b.add_argument("--no-plot", action="store_true")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AutomatonFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError, OracleInconsistency) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
