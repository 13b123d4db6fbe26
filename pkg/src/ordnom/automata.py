"""Nominal DFAs: acceptance, Moore minimisation and equivalence checking.

Minimisation works on orbit indices. A state-pair orbit is the triple
``(i, j, P)``: state orbits ``i`` and ``j`` with product string ``P``. Support
positions are plain ints, so refinement never builds concrete values.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .atoms import monotone_interpolate
from .eqmap import EqMap, map_apply
from .nomset import (
    NomSet, contains, minus, nomset_filter, nomset_map, product, subset, union,
)
from .orbits import (
    AtomSetSchema, OAtomSet, OPair, OrbitDescriptor, OSum, PairSchema,
    Schema, SchemaError, SumSchema, Tagged, act, canonical_element,
    descriptor_text, merge_supports, orbit_and_support, support, to_orbit,
    valid_strings,
)

__all__ = [
    "NominalDFA", "MalformedAutomaton", "NotACongruence", "MooreResult",
    "accepts", "trim", "refine_relation", "quotient", "moore", "minimise",
    "equivalent", "moore_iteration_bound",
]


class MalformedAutomaton(ValueError):
    pass


class NotACongruence(ValueError):
    pass


@dataclass(frozen=True)
class NominalDFA:
    """Deterministic automaton over orbit-finite states and alphabet.

    ``initial`` is a concrete state whose orbit has dimension 0; ``delta`` maps
    pairs (state, letter) to states and must be total.
    """

    states: NomSet
    alphabet: NomSet
    initial: object
    finals: NomSet
    delta: EqMap
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.validate:
            self.check()

    def check(self) -> None:
        s, a = self.states, self.alphabet
        if self.finals.schema != s.schema or not subset(self.finals, s):
            raise MalformedAutomaton("final states are not a subset of the states")
        init = to_orbit(self.initial, s.schema)
        if not s.has_orbit(init):
            raise MalformedAutomaton("initial state is not a state")
        if init.dim != 0:
            raise MalformedAutomaton("initial state must have an empty support")
        if self.delta.domain != PairSchema(s.schema, a.schema):
            raise MalformedAutomaton("transition domain schema is not states x alphabet")
        if self.delta.codomain != s.schema:
            raise MalformedAutomaton("transition codomain schema is not the state schema")
        for o in product(s, a):
            entry = self.delta.lookup(o)
            if entry is None:
                raise MalformedAutomaton(
                    f"delta not total: no transition for {descriptor_text(o)}")
            if not s.has_orbit(entry[1]):
                raise MalformedAutomaton(
                    f"transition for {descriptor_text(o)} leaves the state set")
        if len(self.delta) != sum(1 for _ in product(s, a)):
            raise MalformedAutomaton("delta has entries outside states x alphabet")

    @property
    def initial_orbit(self) -> OrbitDescriptor:
        return to_orbit(self.initial, self.states.schema)

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states.dim

    def step(self, state, letter):
        return map_apply(self.delta, (state, letter))

    def run(self, word: Iterable):
        state = self.initial
        for letter in word:
            if not self.alphabet.has_orbit(orbit_and_support(letter, self.alphabet.schema)[0]):
                raise ValueError(f"letter {letter!r} is outside the alphabet")
            state = self.step(state, letter)
        return state

    def accepts(self, word: Iterable) -> bool:
        return contains(self.finals, self.run(word))


def accepts(d: NominalDFA, word: Iterable) -> bool:
    return d.accepts(word)


def moore_iteration_bound(d: NominalDFA) -> int:
    return (d.states.dim + 1) * len(d.states) + 1


# --------------------------------------------------------------------------
# Index-level view


@lru_cache(maxsize=None)
def _interleavings(m: int, da: int) -> tuple:
    """For each product string of an m-dim and a da-dim orbit: both position lists."""
    out = []
    for q in valid_strings(m, da):
        pp = tuple(k for k, c in enumerate(q) if c != "R")
        ap = tuple(k for k, c in enumerate(q) if c != "L")
        out.append((q, pp, ap))
    return tuple(out)


@lru_cache(maxsize=None)
def _sides(p: str) -> tuple[tuple, tuple]:
    return (tuple(k for k, c in enumerate(p) if c != "R"),
            tuple(k for k, c in enumerate(p) if c != "L"))


_SWAP = str.maketrans("LR", "RL")


class _Indexed:
    """States and letters numbered in descriptor order, transitions by index."""

    def __init__(self, d: NominalDFA):
        self.dfa = d
        self.states = list(d.states.orbits)
        self.state_index = {o: i for i, o in enumerate(self.states)}
        self.dims = [o.dim for o in self.states]
        self.letters = list(d.alphabet.orbits)
        self.letter_index = {o: i for i, o in enumerate(self.letters)}
        self.letter_dims = [o.dim for o in self.letters]
        self.final = [d.finals.has_orbit(o) for o in self.states]
        self.initial = self.state_index[d.initial_orbit]
        trans = {}
        for o, bits, t in d.delta.items():
            i = self.state_index[o.left]
            a = self.letter_index[o.right]
            kept = tuple(k for k, b in enumerate(bits) if b == "1")
            trans[(i, a, o.p)] = (kept, self.state_index[t])
        self.trans = trans

    def successors(self, i: int):
        for a, da in enumerate(self.letter_dims):
            for p in valid_strings(self.dims[i], da):
                yield self.trans[(i, a, p)][1]

    def step(self, i: int, coords: Sequence, a: int, letter: Sequence):
        """Target orbit and its support for state i (support ``coords``) reading a."""
        p, merged = merge_supports(coords, letter)
        kept, t = self.trans[(i, a, p)]
        return t, [merged[k] for k in kept]


def trim(d: NominalDFA) -> NominalDFA:
    """Restrict ``d`` to the state orbits reachable from the initial state."""
    ix = _Indexed(d)
    seen = {ix.initial}
    todo = [ix.initial]
    while todo:
        i = todo.pop()
        for t in ix.successors(i):
            if t not in seen:
                seen.add(t)
                todo.append(t)
    if len(seen) == len(ix.states):
        return d
    keep = [ix.states[i] for i in sorted(seen)]
    states = NomSet._trusted(d.states.schema, keep)
    finals = NomSet._trusted(d.states.schema,
                             [o for o in keep if d.finals.has_orbit(o)])
    table = {o: (bits, t) for o, bits, t in d.delta.items()
             if ix.state_index[o.left] in seen}
    delta = EqMap._trusted(d.delta.domain, d.delta.codomain, table)
    return NominalDFA(states, d.alphabet, d.initial, finals, delta, validate=False)


# --------------------------------------------------------------------------
# Refinement


def refine_relation(alphabet: NomSet, relation: NomSet, delta: EqMap) -> NomSet:
    """One Moore step: drop the pairs that some letter leads out of ``relation``."""
    transitions = product(relation, alphabet)

    def invalid(x):
        (q1, q2), a = x
        return not contains(relation, (map_apply(delta, (q1, a)),
                                       map_apply(delta, (q2, a))))

    bad = nomset_filter(transitions, invalid)
    to_remove = nomset_map(bad, lambda x: x[0], relation.schema)
    return minus(relation, to_remove)


def _refine_indexed(ix: _Indexed, rel: set) -> set:
    trans = ix.trans
    letter_dims = list(enumerate(ix.letter_dims))
    out = set()
    done = set()
    for key in rel:
        if key in done:
            continue
        i, j, p = key
        mirror = (j, i, p.translate(_SWAP))
        done.add(key)
        done.add(mirror)
        if i == j and "L" not in p:
            out.add(key)
            continue
        lpos, rpos = _sides(p)
        m = len(p)
        ok = True
        for a, da in letter_dims:
            for _, pp, ap in _interleavings(m, da):
                p1, m1 = merge_supports([pp[k] for k in lpos], ap)
                kept1, t1 = trans[(i, a, p1)]
                p2, m2 = merge_supports([pp[k] for k in rpos], ap)
                kept2, t2 = trans[(j, a, p2)]
                pt, _ = merge_supports([m1[k] for k in kept1], [m2[k] for k in kept2])
                if (t1, t2, pt) not in rel:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(key)
            out.add(mirror)
    return out


def _initial_relation(ix: _Indexed, full: bool = False) -> set:
    rel = set()
    n = len(ix.states)
    for i in range(n):
        for j in range(n):
            if full or ix.final[i] == ix.final[j]:
                for p in valid_strings(ix.dims[i], ix.dims[j]):
                    rel.add((i, j, p))
    return rel


def _relation_keys(ix: _Indexed, relation: NomSet) -> set:
    return {(ix.state_index[o.left], ix.state_index[o.right], o.p)
            for o in relation.orbits}


def _relation_nomset(ix: _Indexed, rel: set) -> NomSet:
    schema = PairSchema(ix.dfa.states.schema, ix.dfa.states.schema)
    return NomSet._trusted(schema, sorted(
        OPair(p, ix.states[i], ix.states[j]) for i, j, p in rel))


# --------------------------------------------------------------------------
# Quotients


def _perturbation(d: int, c: int) -> str:
    """Pair string of (s, s') where s' moves coordinate c just above itself."""
    return "B" * c + "LR" + "B" * (d - c - 1)


def _aligned(d1: int, kept1: Sequence[int], d2: int, kept2: Sequence[int]) -> str:
    """Pair string matching kept coordinates; dropped ones of the left go first."""
    def drops(d, kept):
        counts = [0] * (len(kept) + 1)
        t = 0
        ks = set(kept)
        for c in range(d):
            if c in ks:
                t += 1
            else:
                counts[t] += 1
        return counts

    a, b = drops(d1, kept1), drops(d2, kept2)
    m = len(kept1)
    return "".join("L" * a[t] + "R" * b[t] + ("B" if t < m else "")
                   for t in range(m + 1))


@dataclass
class _Classes:
    kept: list            # per orbit: kept coordinate indices
    class_of: list        # per orbit: class number
    reps: list            # per class: representative orbit


def _classes(dims: Sequence[int], related: Callable[[int, int, str], bool],
             order: Sequence[int] | None = None) -> _Classes:
    """Group orbits under an equivariant equivalence given as a pair predicate.

    Orbits are visited in ``order``; the first member of a class represents it.
    """
    n = len(dims)
    kept = []
    for i, d in enumerate(dims):
        kept.append(tuple(c for c in range(d)
                          if not related(i, i, _perturbation(d, c))))
    class_of = [-1] * n
    reps: list[int] = []
    for i in (range(n) if order is None else order):
        for k, r in enumerate(reps):
            if len(kept[r]) == len(kept[i]) and related(
                    r, i, _aligned(dims[r], kept[r], dims[i], kept[i])):
                class_of[i] = k
                break
        else:
            class_of[i] = len(reps)
            reps.append(i)
    return _Classes(kept, class_of, reps)


def _class_schema(cls: _Classes) -> SumSchema:
    return SumSchema(tuple((f"c{k}", AtomSetSchema(len(cls.kept[r])))
                           for k, r in enumerate(cls.reps)))


def _class_orbit(cls: _Classes, k: int) -> OSum:
    return OSum(f"c{k}", OAtomSet(len(cls.kept[cls.reps[k]])), k)


def _quotient_map(states: Sequence[OrbitDescriptor], schema: Schema,
                  cls: _Classes) -> tuple[NomSet, EqMap]:
    qschema = _class_schema(cls)
    classes = NomSet._trusted(qschema, [_class_orbit(cls, k) for k in range(len(cls.reps))])
    table = {}
    for i, o in enumerate(states):
        ks = set(cls.kept[i])
        bits = "".join("1" if c in ks else "0" for c in range(o.dim))
        table[o] = (bits, _class_orbit(cls, cls.class_of[i]))
    return classes, EqMap._trusted(schema, qschema, table)


def quotient(states: NomSet, relation: NomSet) -> tuple[NomSet, EqMap]:
    """Classes of an equivariant equivalence on ``states`` and the quotient map."""
    orbits = list(states.orbits)
    index = {o: i for i, o in enumerate(orbits)}
    try:
        rel = {(index[o.left], index[o.right], o.p) for o in relation.orbits}
    except (KeyError, AttributeError):
        raise NotACongruence("relation contains pairs outside states x states") from None
    for i, o in enumerate(orbits):
        if (i, i, "B" * o.dim) not in rel:
            raise NotACongruence(f"relation is not reflexive on {descriptor_text(o)}")
    for i, j, p in rel:
        if (j, i, p.translate(_SWAP)) not in rel:
            raise NotACongruence("relation is not symmetric")
    cls = _classes([o.dim for o in orbits], lambda i, j, p: (i, j, p) in rel)
    return _quotient_map(orbits, states.schema, cls)


def _lift(dim: int, kept: Sequence[int], values: Sequence) -> list:
    """Support of a representative whose kept coordinates take ``values``.

    ``values`` are ints; dropped coordinates get non-integer values right above
    their left neighbour so they collide with nothing.
    """
    out = []
    ks = set(kept)
    v = 0
    pending = 0
    for c in range(dim + 1):
        if c == dim or c in ks:
            if pending:
                if v < len(values):
                    lo = values[v] - 1 if v == 0 else values[v - 1]
                else:
                    lo = values[-1] if values else -1
                out.extend(lo + Fraction(t + 1, pending + 1) for t in range(pending))
                pending = 0
            if c < dim:
                out.append(values[v])
                v += 1
        else:
            pending += 1
    return out


def _quotient_dfa(ix: _Indexed, cls: _Classes) -> NominalDFA:
    d = ix.dfa
    classes, qmap = _quotient_map(ix.states, d.states.schema, cls)
    finals = NomSet._trusted(classes.schema, [
        _class_orbit(cls, k) for k, r in enumerate(cls.reps) if ix.final[r]])
    table = {}
    for k, r in enumerate(cls.reps):
        ek = _class_orbit(cls, k)
        for a, la in enumerate(ix.letters):
            for p, ep, ap in _interleavings(ek.dim, la.dim):
                coords = _lift(ix.dims[r], cls.kept[r], ep)
                t, tcoords = ix.step(r, coords, a, ap)
                survivors = [tcoords[c] for c in cls.kept[t]]
                if any(not isinstance(x, int) for x in survivors):
                    raise NotACongruence(
                        f"transitions of class c{k} depend on dropped coordinates")
                ks = set(survivors)
                bits = "".join("1" if x in ks else "0" for x in range(len(p)))
                table[OPair(p, ek, la)] = (bits, _class_orbit(cls, cls.class_of[t]))
    delta = EqMap._trusted(PairSchema(classes.schema, d.alphabet.schema),
                           classes.schema, table)
    initial = Tagged(f"c{cls.class_of[ix.initial]}", frozenset())
    return NominalDFA(classes, d.alphabet, initial, finals, delta, validate=False)


# --------------------------------------------------------------------------
# Moore's algorithm


@dataclass
class MooreResult:
    dfa: NominalDFA
    iterations: int
    relation_sizes: list = field(default_factory=list)
    relation: NomSet | None = None
    trimmed: NominalDFA | None = None


def moore(d: NominalDFA, method: str = "indexed", keep_relation: bool = False) -> MooreResult:
    """Minimise ``d`` and report the number of refinement rounds.

    ``method="pipeline"`` runs each round through :func:`refine_relation`
    (product, filter, map, minus on nominal sets); the default runs the same
    rounds directly on orbit indices.
    """
    d = trim(d)
    ix = _Indexed(d)
    rel = _initial_relation(ix)
    full = sum(len(valid_strings(a, b)) for a in ix.dims for b in ix.dims)
    sizes = [len(rel)]
    iterations = 0
    if method == "pipeline":
        relation = _relation_nomset(ix, rel)
        if len(rel) != full:
            while True:
                refined = refine_relation(d.alphabet, relation, d.delta)
                iterations += 1
                sizes.append(len(refined))
                if len(refined) == len(relation):
                    break
                relation = refined
        rel = _relation_keys(ix, relation)
    elif method == "indexed":
        if len(rel) != full:
            while True:
                refined = _refine_indexed(ix, rel)
                iterations += 1
                sizes.append(len(refined))
                if len(refined) == len(rel):
                    break
                rel = refined
    else:
        raise ValueError(f"unknown method {method!r}")
    cls = _classes(ix.dims, lambda i, j, p: (i, j, p) in rel)
    out = _quotient_dfa(ix, cls)
    return MooreResult(out, iterations, sizes,
                       _relation_nomset(ix, rel) if keep_relation else None, d)


def minimise(d: NominalDFA) -> NominalDFA:
    return moore(d).dfa


# --------------------------------------------------------------------------
# Equivalence


def equivalent(d1: NominalDFA, d2: NominalDFA) -> tuple | None:
    """None if both accept the same language, else a shortest distinguishing word."""
    if d1.alphabet != d2.alphabet:
        raise SchemaError("automata have different alphabets")
    schema = PairSchema(d1.states.schema, d2.states.schema)
    start = (d1.initial, d2.initial)
    o0 = to_orbit(start, schema)
    parent: dict = {o0: None}
    queue = deque([o0])
    while queue:
        o = queue.popleft()
        if d1.finals.has_orbit(o.left) != d2.finals.has_orbit(o.right):
            return _witness(d1, d2, start, parent, o)
        for a in d1.alphabet.orbits:
            for p in valid_strings(o.dim, a.dim):
                t = OPair(p, o, a)
                (s1, s2), letter = canonical_element(t)
                nxt = to_orbit((d1.step(s1, letter), d2.step(s2, letter)), schema)
                if nxt not in parent:
                    parent[nxt] = (o, t)
                    queue.append(nxt)
    return None


def _witness(d1, d2, start, parent, o) -> tuple:
    path = []
    while parent[o] is not None:
        o, t = parent[o]
        path.append(t)
    path.reverse()
    x = start
    word = []
    for t in path:
        y, b = canonical_element(t)
        g = monotone_interpolate(support(y), support(x))
        a = act(b, g)
        word.append(a)
        x = (d1.step(x[0], a), d2.step(x[1], a))
    word = tuple(word)
    if d1.accepts(word) == d2.accepts(word):
        raise AssertionError("reconstructed counterexample does not distinguish the automata")
    return word
