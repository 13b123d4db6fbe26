from fractions import Fraction
from itertools import product as cartesian

import pytest

from ordnom.automata import (
    MalformedAutomaton, NominalDFA, NotACongruence, accepts, equivalent, minimise,
    moore, moore_iteration_bound, quotient, refine_relation, trim,
)
from ordnom.eqmap import EqMap, map_apply
from ordnom.generators import (
    RandomConfig, gen_fifo, gen_formula, gen_lint, gen_lmax, gen_lmax_minimal,
    gen_random, gen_ww,
)
from ordnom.nomset import NomSet, contains, product, subset, union
from ordnom.orbits import (
    ATOM, OAtom, OUnit, PairSchema, SchemaError, Tagged, Unit, UnitSchema,
    canonical_element,
)
from oracles import in_lint, in_lmax

F = Fraction
POOL = [F(1), F(3, 2), F(2), F(3), F(4)]


def words(max_len, pool=POOL):
    for n in range(max_len + 1):
        yield from cartesian(pool, repeat=n)


def test_lint_examples():
    d = gen_lint()
    assert accepts(d, ()) is False
    assert accepts(d, (F(1), F(3))) is True
    assert accepts(d, (F(1), F(3), F(2), F(5, 2))) is True
    assert accepts(d, (F(3), F(1))) is False


def test_languages_match_definitions():
    lmax, lint = gen_lmax(), gen_lint()
    for w in words(4):
        assert lmax.accepts(w) == in_lmax(w), w
        assert lint.accepts(w) == in_lint(w), w


def test_letter_outside_alphabet():
    with pytest.raises(ValueError):
        gen_lint().accepts((Unit(),))
    with pytest.raises(SchemaError):
        gen_fifo(1).accepts((F(1),))


def test_minimise_examples():
    m = minimise(gen_lmax())
    assert (len(m.states), m.dim) == (3, 1)
    m = minimise(gen_fifo(2))
    assert (len(m.states), m.dim) == (6, 2)
    m = minimise(gen_lint())
    assert (len(m.states), m.dim) == (5, 2)


def test_lmax_minimal_is_the_hand_built_one():
    m = minimise(gen_lmax())
    ref = gen_lmax_minimal()
    assert equivalent(m, ref) is None and equivalent(ref, m) is None
    assert sorted(o.dim for o in m.states) == sorted(o.dim for o in ref.states) == [0, 1, 1]
    assert len(m.finals) == 1


def _r0(d):
    fin = d.finals
    nonfin = NomSet._trusted(d.states.schema, [o for o in d.states if not fin.has_orbit(o)])
    return union(product(fin, fin), product(nonfin, nonfin))


def test_refine_relation_on_lmax():
    d = gen_lmax()
    r0 = _r0(d)
    r1 = refine_relation(d.alphabet, r0, d.delta)
    assert subset(r1, r0) and len(r1) < len(r0)
    # q1(1) and q3(1,2): reading 1 accepts from the first only
    pair = (Tagged("q1", F(1)), Tagged("q3", (F(1), F(2))))
    assert contains(r0, pair) and not contains(r1, pair)
    # q3(1,2) and q3(0,2) agree forever
    keep = (Tagged("q3", (F(1), F(2))), Tagged("q3", (F(0), F(2))))
    assert contains(r1, keep)


def test_refine_relation_fixpoints():
    d = gen_lint()
    res = moore(d, keep_relation=True)
    assert refine_relation(d.alphabet, res.relation, d.delta) == res.relation
    one = gen_random(RandomConfig(1, 0, seed=3))
    full = product(one.states, one.states)
    assert refine_relation(one.alphabet, full, one.delta) == full


def test_partition_chain():
    for d in (gen_lmax(), gen_fifo(2), gen_ww(2)):
        r = _r0(d)
        while True:
            nxt = refine_relation(d.alphabet, r, d.delta)
            assert subset(nxt, r)
            if nxt == r:
                break
            r = nxt


def test_quotient_identity_and_full():
    d = gen_lint()
    ident = NomSet(PairSchema(d.states.schema, d.states.schema),
                   [o for o in product(d.states, d.states)
                    if o.left == o.right and set(o.p) <= {"B"}])
    e, q = quotient(d.states, ident)
    assert len(e) == len(d.states)
    assert all(set(bits) <= {"1"} for _, bits, _ in q.items())
    e, q = quotient(d.states, product(d.states, d.states))
    assert len(e) == 1 and e.dim == 0


def test_quotient_of_lmax():
    d = gen_lmax()
    rel = moore(d, keep_relation=True).relation
    e, q = quotient(d.states, rel)
    assert len(e) == 3
    q3 = d.states.orbits[3]
    assert q3.tag == "q3"
    bits, target = q.lookup(q3)
    assert bits == "01" and target.dim == 1
    # images agree exactly on related pairs
    for o in product(d.states, d.states):
        s, t = canonical_element(o)
        assert contains(rel, (s, t)) == (map_apply(q, s) == map_apply(q, t))


def test_quotient_rejects_non_equivalences():
    d = gen_lint()
    with pytest.raises(NotACongruence):
        quotient(d.states, NomSet(PairSchema(d.states.schema, d.states.schema)))
    rel = moore(d, keep_relation=True).relation
    lt = [o for o in product(d.states, d.states) if o.p == "LR" and o.left == o.right][0]
    bad = NomSet(rel.schema, list(rel.orbits) + [lt])
    with pytest.raises(NotACongruence):
        quotient(d.states, bad)


def test_equivalent_examples():
    d = gen_fifo(2)
    assert equivalent(d, d) is None
    assert equivalent(d, minimise(d)) is None
    w = equivalent(gen_lmax(), gen_lint())
    assert w is not None and len(w) == 2
    assert gen_lmax().accepts(w) != gen_lint().accepts(w)
    assert gen_lmax().accepts((F(2), F(2))) and not gen_lint().accepts((F(2), F(2)))


def test_equivalent_needs_same_alphabet():
    with pytest.raises(SchemaError):
        equivalent(gen_fifo(1), gen_lint())


def test_pipeline_matches_indexed():
    cases = [gen_lmax(), gen_lint(), gen_fifo(1), gen_fifo(2), gen_ww(2)]
    cases += [gen_random(RandomConfig(10, 2, seed=s)) for s in range(5)]
    cases += [gen_formula(RandomConfig(4, 2, seed=s)) for s in range(3)]
    for d in cases:
        a = moore(d, keep_relation=True)
        b = moore(d, method="pipeline", keep_relation=True)
        assert a.relation == b.relation
        assert a.iterations == b.iterations
        assert a.relation_sizes == b.relation_sizes
        assert a.dfa == b.dfa


def test_iteration_bound_and_idempotence():
    cases = [gen_lmax(), gen_lint(), gen_fifo(1), gen_fifo(2), gen_ww(1), gen_ww(2)]
    cases += [gen_random(RandomConfig(15, 3, seed=s)) for s in range(10)]
    for d in cases:
        res = moore(d)
        assert res.iterations <= moore_iteration_bound(res.trimmed)
        again = minimise(res.dfa)
        assert len(again.states) == len(res.dfa.states)
        assert sorted(o.dim for o in again.states) == sorted(o.dim for o in res.dfa.states)


def test_trim_keeps_language_and_drops_orbits():
    d = gen_random(RandomConfig(15, 3, seed=0))
    t = trim(d)
    assert len(t.states) < len(d.states)
    assert equivalent(d, t) is None
    assert trim(gen_lint()) is not None


def test_minimised_values_are_class_sets():
    m = minimise(gen_lmax())
    assert m.initial == Tagged("c0", frozenset())
    assert all(o.tag == f"c{i}" for i, o in enumerate(m.states))


def test_malformed_automata():
    d = gen_lint()
    o = next(iter(d.delta.items()))[0]
    table = {x: (b, t) for x, b, t in d.delta.items() if x != o}
    broken = EqMap._trusted(d.delta.domain, d.delta.codomain, table)
    with pytest.raises(MalformedAutomaton, match="not total"):
        NominalDFA(d.states, d.alphabet, d.initial, d.finals, broken)
    with pytest.raises(MalformedAutomaton):
        NominalDFA(d.states, d.alphabet, Tagged("q1", F(1)), d.finals, d.delta)
    with pytest.raises(MalformedAutomaton):
        NominalDFA(d.states, d.alphabet, d.initial, NomSet.full(ATOM), d.delta)


def test_single_state_automaton():
    states = NomSet.full(UnitSchema(""))
    alphabet = NomSet.full(ATOM)
    delta = EqMap(PairSchema(UnitSchema(""), ATOM), UnitSchema(""),
                  [(o, "0", OUnit()) for o in product(states, alphabet)])
    d = NominalDFA(states, alphabet, Unit(), states, delta)
    assert d.accepts((F(1), F(2)))
    m = minimise(d)
    assert len(m.states) == 1 and len(m.finals) == 1
    assert moore(d).iterations == 0
    assert OAtom() in {o.right for o in product(states, alphabet)}
