"""Active learning of nominal DFAs with counterexamples added as columns.

Rows and columns of the observation table are orbits of words. The entry for
a row orbit ``U`` and column orbit ``C`` is a function on the orbits of
``U x C``; each of those is filled by one membership query on the canonical
representative of the concatenated word.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Protocol, Sequence

from .atoms import MonotoneMap
from .automata import (
    NominalDFA, _class_orbit, _class_schema, _classes, _interleavings, _lift,
    _perturbation, equivalent,
)
from .eqmap import EqMap
from .nomset import NomSet
from .orbits import (
    ListSchema, OPair, OrbitDescriptor, PairSchema, Tagged, _element, act,
    canonical_element, nest_word, orbit_and_support, unnest_word, valid_strings,
)

__all__ = [
    "Oracle", "DFAOracle", "OracleInconsistency", "LearnerStats",
    "ObservationTable", "learn", "close_table", "hypothesis",
    "handle_counterexample",
]

Word = tuple


class OracleInconsistency(RuntimeError):
    pass


class Oracle(Protocol):
    def membership(self, word: Word) -> bool: ...

    def equivalence(self, hypothesis: NominalDFA) -> Word | None: ...


class DFAOracle:
    """Answers queries from a known target automaton."""

    def __init__(self, target: NominalDFA):
        self.target = target

    def membership(self, word: Word) -> bool:
        return self.target.accepts(word)

    def equivalence(self, hypothesis: NominalDFA) -> Word | None:
        return equivalent(hypothesis, self.target)


@dataclass
class LearnerStats:
    membership_queries: int = 0
    equivalence_queries: int = 0
    orbits: int = 0
    dim: int = 0
    cpu_seconds: float = 0.0
    rounds: list = field(default_factory=list)

    def line(self) -> str:
        return (f"MQ={self.membership_queries} EQ={self.equivalence_queries} "
                f"orbits={self.orbits} dim={self.dim}")


# shifts every value; used to spot-check that the oracle is equivariant
_SHIFT = MonotoneMap([(0, 1), (1, 3)])


class _Inconsistent(Exception):
    def __init__(self, column: Word):
        self.column = column


class ObservationTable:
    """Observation table over prefix rows ``S``, boundary rows and columns."""

    def __init__(self, oracle: Oracle, alphabet: NomSet, check_oracle: bool = False):
        self.oracle = oracle
        self.alphabet = alphabet
        self.wschema = ListSchema(alphabet.schema)
        self.check_oracle = check_oracle
        self.answers: dict[OrbitDescriptor, bool] = {}
        self.oracle_seconds = 0.0
        empty = self.word_orbit(())
        self.prefixes: list[OrbitDescriptor] = [empty]
        self.boundary: list[OrbitDescriptor] = []
        self.columns: list[OrbitDescriptor] = [empty]
        self._extend(empty)

    # -- words ------------------------------------------------------------

    def word_orbit(self, w: Sequence) -> OrbitDescriptor:
        return orbit_and_support(nest_word(w), self.wschema)[0]

    @staticmethod
    def word(o: OrbitDescriptor, coords: Sequence | None = None) -> Word:
        if coords is None:
            return unnest_word(canonical_element(o))
        return unnest_word(_element(o, coords))

    def member(self, w: Word) -> bool:
        o = self.word_orbit(w)
        ans = self.answers.get(o)
        if ans is None:
            t = time.process_time()
            ans = bool(self.oracle.membership(w))
            if self.check_oracle:
                moved = tuple(act(x, _SHIFT) for x in w)
                if bool(self.oracle.membership(moved)) != ans:
                    raise OracleInconsistency(
                        f"membership oracle is not equivariant on {w!r}")
            self.oracle_seconds += time.process_time() - t
            self.answers[o] = ans
        return ans

    @property
    def queries(self) -> int:
        return len(self.answers)

    # -- table structure ----------------------------------------------------

    def _extend(self, u: OrbitDescriptor) -> None:
        known = set(self.prefixes) | set(self.boundary)
        for a in self.alphabet.orbits:
            for p in valid_strings(u.dim, a.dim):
                x, b = canonical_element(OPair(p, u, a))
                o = self.word_orbit(unnest_word(x) + (b,))
                if o not in known:
                    known.add(o)
                    self.boundary.append(o)
        self.boundary.sort()

    def promote(self, o: OrbitDescriptor) -> None:
        self.boundary.remove(o)
        self.prefixes.append(o)
        self.prefixes.sort()
        self._extend(o)

    def add_columns(self, words: Sequence[Word]) -> int:
        """Add the given words as columns; returns how many were new."""
        have = set(self.columns)
        added = 0
        for w in words:
            o = self.word_orbit(w)
            if o not in have:
                have.add(o)
                self.columns.append(o)
                added += 1
        return added

    def rows(self) -> list[OrbitDescriptor]:
        return self.prefixes + self.boundary

    def _separator(self, pair: OPair) -> tuple | None:
        """A (row word, column word) on which the two sides of ``pair`` differ."""
        for c in self.columns:
            for q in valid_strings(pair.dim, c.dim):
                (u1, u2), e = canonical_element(OPair(q, pair, c))
                e = unnest_word(e)
                w1, w2 = unnest_word(u1), unnest_word(u2)
                if self.member(w1 + e) != self.member(w2 + e):
                    return w1, e
        return None

    def rows_equal(self, o1: OrbitDescriptor, o2: OrbitDescriptor, p: str) -> bool:
        return self._separator(OPair(p, o1, o2)) is None

    def classes(self):
        rows = self.rows()
        return rows, _classes([o.dim for o in rows],
                              lambda i, j, p: self.rows_equal(rows[i], rows[j], p))

    # -- closedness and hypotheses -------------------------------------------

    def unclosed(self) -> list[OrbitDescriptor]:
        rows, cls = self.classes()
        n = len(self.prefixes)
        return [rows[i] for i in range(n, len(rows)) if cls.reps[cls.class_of[i]] >= n]

    def close(self) -> int:
        """Promote boundary orbits until every row class has a prefix row."""
        promoted = 0
        while True:
            todo = self.unclosed()
            if not todo:
                return promoted
            self.promote(min(todo))
            promoted += 1

    def _build(self) -> NominalDFA:
        rows, cls = self.classes()
        n = len(self.prefixes)
        if any(r >= n for r in cls.reps):
            raise ValueError("observation table is not closed")
        index = {o: i for i, o in enumerate(rows)}
        schema = _class_schema(cls)
        states = NomSet._trusted(schema, [_class_orbit(cls, k) for k in range(len(cls.reps))])
        table = {}
        for k, r in enumerate(cls.reps):
            ek = _class_orbit(cls, k)
            for la in self.alphabet.orbits:
                for p, ep, ap in _interleavings(ek.dim, la.dim):
                    coords = _lift(rows[r].dim, cls.kept[r], ep)
                    u = self.word(rows[r], coords)
                    w = u + (_element(la, ap),)
                    o, s = orbit_and_support(nest_word(w), self.wschema)
                    t = index[o]
                    survivors = [s[c] for c in cls.kept[t]]
                    for c, x in zip(cls.kept[t], survivors):
                        if x != int(x):
                            raise _Inconsistent(self._repair(rows[t], c))
                    ks = {int(x) for x in survivors}
                    bits = "".join("1" if x in ks else "0" for x in range(len(p)))
                    table[OPair(p, ek, la)] = (bits, _class_orbit(cls, cls.class_of[t]))
        delta = EqMap._trusted(PairSchema(schema, self.alphabet.schema), schema, table)
        finals = NomSet._trusted(schema, [
            _class_orbit(cls, k) for k, r in enumerate(cls.reps)
            if self.member(self.word(rows[r]))])
        initial = Tagged(f"c{cls.class_of[index[self.word_orbit(())]]}", frozenset())
        return NominalDFA(states, self.alphabet, initial, finals, delta)

    def _repair(self, row: OrbitDescriptor, c: int) -> Word:
        # the row depends on coordinate c, which its one-letter-shorter prefix
        # row ignores; the last letter plus the separating column tells them apart
        found = self._separator(OPair(_perturbation(row.dim, c), row, row))
        w, e = found
        return (w[-1],) + e

    def hypothesis(self) -> NominalDFA:
        """Close the table, repair inconsistencies, and build the hypothesis."""
        while True:
            self.close()
            try:
                return self._build()
            except _Inconsistent as exc:
                if not self.add_columns([exc.column]):
                    raise RuntimeError("inconsistency repair added no column") from None

    def handle_counterexample(self, w: Word) -> int:
        return self.add_columns([tuple(w[k:]) for k in range(len(w) + 1)])


def close_table(t: ObservationTable) -> ObservationTable:
    t.close()
    return t


def hypothesis(t: ObservationTable) -> NominalDFA:
    return t._build()


def handle_counterexample(t: ObservationTable, w: Word) -> ObservationTable:
    t.handle_counterexample(w)
    return t


def learn(oracle: Oracle, alphabet: NomSet, check_oracle: bool = False,
          max_rounds: int = 1000, stats: LearnerStats | None = None) -> NominalDFA:
    """Learn the oracle's language; ``stats`` is filled in when given."""
    start = time.process_time()
    table = ObservationTable(oracle, alphabet, check_oracle)
    stats = stats if stats is not None else LearnerStats()
    eq_seconds = 0.0
    for _ in range(max_rounds):
        h = table.hypothesis()
        t = time.process_time()
        w = oracle.equivalence(h)
        eq_seconds += time.process_time() - t
        stats.equivalence_queries += 1
        stats.rounds.append((len(h.states), len(table.prefixes), len(table.columns),
                             sum(o.dim for o in h.states)))
        if w is None:
            break
        w = tuple(w)
        if h.accepts(w) != (not table.member(w)):
            raise OracleInconsistency(
                f"counterexample {w!r} is answered the same way by the hypothesis "
                "and by an earlier membership query")
        if not table.handle_counterexample(w):
            raise OracleInconsistency(f"counterexample {w!r} was already a column")
    else:
        raise RuntimeError(f"no convergence after {max_rounds} equivalence queries")
    stats.membership_queries = table.queries
    stats.orbits = len(h.states)
    stats.dim = h.dim
    stats.cpu_seconds = time.process_time() - start - table.oracle_seconds - eq_seconds
    return h
