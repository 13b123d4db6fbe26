import pytest

from ordnom.nomset import (
    EquivarianceError, NomSet, contains, intersection, minus, nomset_filter,
    nomset_map, product, product_profile, profile, subset, union,
)
from ordnom.orbits import (
    ATOM, OAtom, OPair, OUnit, PairSchema, SchemaError, Unit, UnitSchema,
)
from oracles import atom_times_lt_pairs

A = OAtom()
QQ = PairSchema(ATOM, ATOM)
LT = OPair("LR", A, A)
EQ = OPair("B", A, A)
GT = OPair("RL", A, A)
Q = NomSet.full(ATOM)


def test_full_and_contains():
    assert len(NomSet.full(QQ)) == 3
    assert contains(Q, 3)
    lt = NomSet(QQ, [LT])
    assert not contains(lt, (2, 2))
    assert contains(lt, (1, 5))
    assert not contains(NomSet(QQ), (1, 2))
    with pytest.raises(SchemaError):
        contains(lt, 3)


def test_boolean_ops():
    x = NomSet(QQ, [LT, EQ])
    y = NomSet(QQ, [EQ, GT])
    assert union(x, y) == NomSet.full(QQ)
    assert intersection(x, y) == NomSet(QQ, [EQ])
    assert minus(x, y) == NomSet(QQ, [LT])
    assert subset(NomSet(QQ), x)
    assert subset(x, x)
    assert not subset(NomSet(QQ, [LT]), y)
    with pytest.raises(SchemaError):
        union(x, Q)


def test_orbits_are_sorted_and_deduplicated():
    x = NomSet(QQ, [EQ, LT, EQ])
    assert x.orbits == (LT, EQ)
    with pytest.raises(SchemaError):
        NomSet(QQ, [A])


def test_filter_and_map():
    qq = NomSet.full(QQ)
    assert nomset_filter(qq, lambda v: v[0] < v[1]) == NomSet(QQ, [LT])
    assert nomset_map(qq, lambda v: (v[1], v[0]), QQ) == qq
    assert nomset_map(Q, lambda a: (a, a), QQ) == NomSet(QQ, [EQ])


def test_filter_detects_non_equivariance_when_asked():
    pred = lambda v: v == 1  # noqa: E731
    nomset_filter(Q, pred)              # unchecked: deterministic, no error
    with pytest.raises(EquivarianceError):
        nomset_filter(Q, pred, check=True)


def test_product_example():
    x = product(Q, NomSet(QQ, [LT]))
    assert len(x) == 5
    assert {o.p for o in x} == atom_times_lt_pairs() == {"LRR", "RLR", "RRL", "RB", "BR"}
    assert profile(x) == {2: 2, 3: 3}


def test_product_squares_and_units():
    qq = product(Q, Q)
    assert qq == NomSet.full(QQ)
    assert sorted(o.dim for o in qq) == [1, 2, 2]
    assert profile(qq) == {1: 1, 2: 2}
    u = NomSet.full(UnitSchema(""))
    x = NomSet.full(QQ)
    ux = product(u, x)
    assert len(ux) == 3 and profile(ux) == profile(x)
    assert all(set(o.p) <= {"R"} for o in ux)


def test_product_profile_examples():
    assert product_profile({1: 1}, {1: 1}) == {1: 1, 2: 2}
    assert product_profile({1: 1}, {2: 1}) == {2: 2, 3: 3}
    assert product_profile({0: 1}, {3: 2, 1: 4}) == {1: 4, 3: 2}
    assert profile(NomSet(QQ)) == {}


def test_product_is_sorted():
    x = NomSet.full(QQ)
    p = product(x, x)
    assert list(p.orbits) == sorted(p.orbits)


def test_elements_and_index():
    x = NomSet.full(QQ)
    assert [x.index(o) for o in (LT, GT, EQ)] == [0, 1, 2]
    assert x.index(OUnit()) == -1
    assert x.elements() == [(1, 2), (2, 1), (1, 1)]
    assert NomSet.from_elements(QQ, [(3, 9), (4, 4)]) == NomSet(QQ, [LT, EQ])
    assert NomSet.from_elements(UnitSchema(""), [Unit()]).dim == 0
