"""Benchmark automata: FIFO queues, squares, L_max, L_int and random ones."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .automata import NominalDFA
from .eqmap import EqMap, map_from_function
from .nomset import NomSet, product
from .orbits import (
    ATOM, AtomSetSchema, OAtom, OAtomSet, OPair, OSum, OUnit, PairSchema,
    Schema, SumSchema, Tagged, Unit, UnitSchema, valid_strings,
)

__all__ = [
    "fubini", "power_schema", "pack", "unpack",
    "gen_fifo", "gen_ww", "gen_lmax", "gen_lmax_minimal", "gen_lint",
    "RandomConfig", "FormulaNode", "gen_random", "gen_formula",
    "random_formula", "fifo_orbit_count",
]

FIFO_ALPHABET = SumSchema((("Put", ATOM), ("Get", ATOM)))
SINK = Unit("")


@lru_cache(maxsize=None)
def fubini(n: int) -> int:
    """Ordered Bell number: weak orderings of n elements."""
    if n == 0:
        return 1
    from math import comb
    return sum(comb(n, k) * fubini(n - k) for k in range(1, n + 1))


def fifo_orbit_count(n: int) -> int:
    return 2 + sum((s + 1) * fubini(s) for s in range(1, n + 1))


@lru_cache(maxsize=None)
def power_schema(n: int) -> Schema:
    """Schema of Q^n: unit, a single atom, or right-nested atom pairs."""
    if n == 0:
        return UnitSchema("")
    if n == 1:
        return ATOM
    return PairSchema(ATOM, power_schema(n - 1))


def pack(values: Sequence):
    values = tuple(values)
    if not values:
        return Unit("")
    out = values[-1]
    for x in reversed(values[:-1]):
        out = (x, out)
    return out


def unpack(v, n: int) -> tuple:
    if n == 0:
        return ()
    out = []
    for _ in range(n - 1):
        out.append(v[0])
        v = v[1]
    out.append(v)
    return tuple(out)


def _dfa(states: NomSet, alphabet: NomSet, initial, finals, f) -> NominalDFA:
    delta = map_from_function(product(states, alphabet), f, states.schema)
    return NominalDFA(states, alphabet, initial,
                      NomSet._trusted(states.schema, sorted(finals)), delta)


# --------------------------------------------------------------------------
# FIFO(n)


def gen_fifo(n: int) -> NominalDFA:
    """Valid Put/Get traces of a queue of capacity n, kept as two lists."""
    if n < 1:
        raise ValueError("queue capacity must be at least 1")
    alts = [(f"q{i}_{j}", PairSchema(power_schema(i), power_schema(j)))
            for s in range(n + 1) for i in range(s, -1, -1) for j in [s - i]]
    alts.append(("sink", UnitSchema("")))
    schema = SumSchema(tuple(alts))
    states = NomSet.full(schema)
    alphabet = NomSet.full(FIFO_ALPHABET)
    sink = Tagged("sink", SINK)

    def state(push, pop):
        return Tagged(f"q{len(push)}_{len(pop)}", (pack(push), pack(pop)))

    def step(x):
        s, letter = x
        if s.tag == "sink":
            return sink
        i, j = map(int, s.tag[1:].split("_"))
        push, pop = unpack(s.value[0], i), unpack(s.value[1], j)
        if letter.tag == "Put":
            if i + j == n:
                return sink
            return state(push + (letter.value,), pop)
        if not pop:
            push, pop = (), push
        if not pop or pop[0] != letter.value:
            return sink
        return state(push, pop[1:])

    finals = [o for o in states if o.tag != "sink"]
    return _dfa(states, alphabet, state((), ()), finals, step)


# --------------------------------------------------------------------------
# ww(n)


def gen_ww(n: int) -> NominalDFA:
    """Words ww with w of length n: store w, then compare letter by letter."""
    if n < 1:
        raise ValueError("word length must be at least 1")
    alts = [(f"s{k}", power_schema(k)) for k in range(n + 1)]
    alts += [(f"c{k}", power_schema(k)) for k in range(n - 1, 0, -1)]
    alts += [("acc", UnitSchema("")), ("sink", UnitSchema(""))]
    schema = SumSchema(tuple(alts))
    states = NomSet.full(schema)
    alphabet = NomSet.full(ATOM)
    sink = Tagged("sink", SINK)

    def compare(w, a):
        if w[0] != a:
            return sink
        if len(w) == 1:
            return Tagged("acc", SINK)
        return Tagged(f"c{len(w) - 1}", pack(w[1:]))

    def step(x):
        s, a = x
        kind, k = s.tag[0], s.tag[1:]
        if s.tag in ("acc", "sink"):
            return sink
        w = unpack(s.value, int(k))
        if kind == "s" and len(w) < n:
            return Tagged(f"s{len(w) + 1}", pack(w + (a,)))
        return compare(w, a)

    finals = [o for o in states if o.tag == "acc"]
    return _dfa(states, alphabet, Tagged("s0", SINK), finals, step)


# --------------------------------------------------------------------------
# L_max and L_int

_AA = PairSchema(ATOM, ATOM)


def gen_lmax() -> NominalDFA:
    """Last letter equals the maximum of the earlier ones; five state orbits."""
    schema = SumSchema((("q0", UnitSchema("")), ("q1", ATOM),
                        ("q2", _AA), ("q3", _AA), ("q4", _AA)))
    a = OAtom()
    states = NomSet(schema, [
        OSum("q0", OUnit(""), 0), OSum("q1", a, 1), OSum("q2", OPair("B", a, a), 2),
        OSum("q3", OPair("LR", a, a), 3), OSum("q4", OPair("RL", a, a), 4)])

    def after(m, b):
        # m is the current maximum, b the letter just read
        if b == m:
            return Tagged("q2", (b, b))
        if b > m:
            return Tagged("q3", (m, b))
        return Tagged("q4", (m, b))

    def step(x):
        s, b = x
        if s.tag == "q0":
            return Tagged("q1", b)
        if s.tag == "q1":
            return after(s.value, b)
        lo, hi = s.value
        return after(hi if s.tag == "q3" else lo, b)

    finals = [states.orbits[2]]
    return _dfa(states, NomSet.full(ATOM), Tagged("q0", SINK), finals, step)


def gen_lmax_minimal() -> NominalDFA:
    """Hand-built minimal automaton for L_max: q0, q1(a) and accepting q2(a)."""
    schema = SumSchema((("q0", UnitSchema("")), ("q1", ATOM), ("q2", ATOM)))
    states = NomSet.full(schema)

    def step(x):
        s, b = x
        if s.tag == "q0":
            return Tagged("q1", b)
        m = s.value
        if b == m:
            return Tagged("q2", m)
        return Tagged("q1", max(m, b))

    finals = [OSum("q2", OAtom(), 2)]
    return _dfa(states, NomSet.full(ATOM), Tagged("q0", SINK), finals, step)


def gen_lint() -> NominalDFA:
    """Sequences of nested intervals a1 < a2 < ... < b2 < b1; five state orbits."""
    schema = SumSchema((("q0", UnitSchema("")), ("q1", ATOM),
                        ("q2", _AA), ("q3", _AA), ("q4", UnitSchema(""))))
    a = OAtom()
    states = NomSet(schema, [
        OSum("q0", OUnit(""), 0), OSum("q1", a, 1), OSum("q2", OPair("LR", a, a), 2),
        OSum("q3", OPair("LR", a, a), 3), OSum("q4", OUnit(""), 4)])
    sink = Tagged("q4", SINK)

    def step(x):
        s, c = x
        if s.tag == "q0":
            return Tagged("q1", c)
        if s.tag == "q1":
            return Tagged("q2", (s.value, c)) if c > s.value else sink
        if s.tag == "q4":
            return sink
        lo, hi = s.value
        if not lo < c < hi:
            return sink
        return Tagged("q3", (c, hi)) if s.tag == "q2" else Tagged("q2", (lo, c))

    finals = [states.orbits[2]]
    return _dfa(states, NomSet.full(ATOM), Tagged("q0", SINK), finals, step)


# --------------------------------------------------------------------------
# Random automata


@dataclass(frozen=True)
class RandomConfig:
    """Parameters for :func:`gen_random` and :func:`gen_formula`.

    ``orbits`` is the number of state orbits (random) or of locations
    (formula); ``dim`` bounds the dimensions.
    """

    orbits: int = 15
    dim: int = 3
    max_ops: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.orbits < 1:
            raise ValueError("need at least one orbit")
        if self.dim < 0 or self.max_ops < 0:
            raise ValueError("dimension bound and operator limit must be naturals")


def _streams(seed: int, n: int) -> tuple[np.random.Generator, list]:
    root = np.random.SeedSequence(seed)
    children = root.spawn(n + 1)
    return (np.random.Generator(np.random.PCG64(children[0])),
            [np.random.Generator(np.random.PCG64(c)) for c in children[1:]])


def gen_random(cfg: RandomConfig) -> NominalDFA:
    """Orbit-wise random automaton over Q with ``cfg.orbits`` state orbits.

    Orbit 0 has dimension 0 and holds the initial state. Each product orbit
    of states x Q picks a target uniformly among orbits of small enough
    dimension, then a keep-string uniformly among the valid ones.
    """
    main, streams = _streams(cfg.seed, cfg.orbits)
    dims = [0] + [int(main.integers(0, cfg.dim + 1)) for _ in range(cfg.orbits - 1)]
    accepting = [bool(main.integers(0, 2)) for _ in range(cfg.orbits)]
    schema = SumSchema(tuple((f"s{i}", AtomSetSchema(d)) for i, d in enumerate(dims)))
    orbits = [OSum(f"s{i}", OAtomSet(d), i) for i, d in enumerate(dims)]
    states = NomSet._trusted(schema, orbits)
    alphabet = NomSet.full(ATOM)
    letter = OAtom()
    table = {}
    for o, rng in zip(orbits, streams):
        for p in valid_strings(o.dim, 1):
            m = len(p)
            eligible = [t for t in orbits if t.dim <= m]
            t = eligible[int(rng.integers(0, len(eligible)))]
            keep = sorted(rng.choice(m, size=t.dim, replace=False).tolist())
            bits = "".join("1" if k in keep else "0" for k in range(m))
            table[OPair(p, o, letter)] = (bits, t)
    delta = EqMap._trusted(PairSchema(schema, ATOM), schema, table)
    finals = NomSet._trusted(schema, [o for o, acc in zip(orbits, accepting) if acc])
    return NominalDFA(states, alphabet, Tagged("s0", frozenset()), finals, delta)


@dataclass
class FormulaNode:
    """AND/OR node or a literal ``x_i op x_j``; ``negate`` flips the result."""

    op: str                       # "and", "or" or "lit"
    negate: bool = False
    left: "FormulaNode | None" = None
    right: "FormulaNode | None" = None
    i: int = 0
    j: int = 0
    rel: str = "<"

    def evaluate(self, xs: Sequence) -> bool:
        if self.op == "lit":
            a, b = xs[self.i], xs[self.j]
            r = a < b if self.rel == "<" else a == b if self.rel == "=" else a > b
        elif self.op == "and":
            r = self.left.evaluate(xs) and self.right.evaluate(xs)
        else:
            r = self.left.evaluate(xs) or self.right.evaluate(xs)
        return r != self.negate

    def operators(self) -> int:
        if self.op == "lit":
            return 0
        return 1 + self.left.operators() + self.right.operators()

    def __str__(self):
        if self.op == "lit":
            s = f"x{self.i}{self.rel}x{self.j}"
        else:
            s = f"({self.left} {self.op} {self.right})"
        return f"!{s}" if self.negate else s


def random_formula(rng: np.random.Generator, arity: int, max_ops: int) -> FormulaNode:
    """Grow a formula breadth first; each open node is an operator or a literal."""
    root = FormulaNode("lit")
    queue = [root]
    ops = 0
    k = 0
    while k < len(queue):
        node = queue[k]
        k += 1
        node.negate = bool(rng.integers(0, 2))
        if ops < max_ops and rng.integers(0, 2):
            ops += 1
            node.op = "and" if rng.integers(0, 2) else "or"
            node.left, node.right = FormulaNode("lit"), FormulaNode("lit")
            queue += [node.left, node.right]
        else:
            node.op = "lit"
            node.i = int(rng.integers(0, arity))
            node.j = int(rng.integers(0, arity))
            node.rel = "<=>"[int(rng.integers(0, 3))]
    return root


@dataclass
class _Location:
    dim: int
    accepting: bool
    formula: FormulaNode | None = None
    edges: list = field(default_factory=list)   # [(target, selection)] for true, false


def gen_formula(cfg: RandomConfig) -> NominalDFA:
    """Random automaton whose locations are copies of Q^n guarded by formulas.

    Location 0 has dimension 0. The formula of a location ranges over its n
    coordinates plus the input letter (variable n).
    """
    main, streams = _streams(cfg.seed, cfg.orbits)
    locs = []
    for i in range(cfg.orbits):
        d = 0 if i == 0 else int(main.integers(0, cfg.dim + 1))
        locs.append(_Location(d, bool(main.integers(0, 2))))
    for loc, rng in zip(locs, streams):
        loc.formula = random_formula(rng, loc.dim + 1, cfg.max_ops)
        for _ in range(2):
            t = int(rng.integers(0, len(locs)))
            sel = tuple(int(x) for x in rng.integers(0, loc.dim + 1, size=locs[t].dim))
            loc.edges.append((t, sel))
    schema = SumSchema(tuple((f"l{i}", power_schema(loc.dim)) for i, loc in enumerate(locs)))
    states = NomSet.full(schema)

    def step(x):
        s, a = x
        i = schema.index(s.tag)
        loc = locs[i]
        xs = unpack(s.value, loc.dim) + (a,)
        t, sel = loc.edges[0] if loc.formula.evaluate(xs) else loc.edges[1]
        return Tagged(f"l{t}", pack([xs[k] for k in sel]))

    finals = [o for o in states if locs[o.index].accepting]
    return _dfa(states, NomSet.full(ATOM), Tagged("l0", SINK), finals, step)
