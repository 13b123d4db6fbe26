from fractions import Fraction

import pytest

from ordnom.eqmap import (
    EqMap, entry_text, in_domain, keep_bits, map_add, map_apply, map_from_function,
    parse_entry,
)
from ordnom.nomset import EquivarianceError, NomSet
from ordnom.orbits import (
    ATOM, AtomSetSchema, OAtom, OAtomSet, OPair, OUnit, PairSchema, SchemaError,
    Unit, UnitSchema,
)

A = OAtom()
QQ = PairSchema(ATOM, ATOM)
P3 = AtomSetSchema(3)


def min_map() -> EqMap:
    return map_add(EqMap(P3, ATOM), OAtomSet(3), "100", A)


def test_min_map():
    m = min_map()
    assert map_apply(m, frozenset({2, 5, 9})) == 2
    assert in_domain(m, frozenset({1, 2, 3}))
    assert not in_domain(m, Fraction(4))
    assert not in_domain(EqMap(P3, ATOM), frozenset({1, 2, 3}))
    assert map_from_function(NomSet.full(P3), min, ATOM) == m


def test_add_replaces_and_validates():
    m = min_map().add(OAtomSet(3), "001", A)
    assert m(frozenset({2, 5, 9})) == 9
    assert len(m) == 1
    with pytest.raises(ValueError):
        min_map().add(OAtomSet(3), "110", A)
    with pytest.raises(ValueError):
        min_map().add(OAtomSet(3), "10", A)
    with pytest.raises(SchemaError):
        min_map().add(A, "1", A)


def test_projection():
    lt = OPair("LR", A, A)
    m = EqMap(QQ, ATOM, [(lt, "01", A)])
    assert map_apply(m, (1, 2)) == 2
    with pytest.raises(KeyError):
        map_apply(m, (2, 1))
    pi2 = map_from_function(NomSet.full(QQ), lambda v: v[1], ATOM)
    assert {o.p: bits for o, bits, _ in pi2.items()} == {"LR": "01", "RL": "10", "B": "1"}
    ident = EqMap(ATOM, ATOM, [(A, "1", A)])
    assert ident(Fraction(7)) == 7


def test_constant_unit():
    m = map_from_function(NomSet.full(QQ), lambda v: Unit(), UnitSchema(""))
    assert all(bits == "0" * o.dim and t == OUnit() for o, bits, t in m.items())


def test_support_growth_is_rejected():
    with pytest.raises(EquivarianceError):
        map_from_function(NomSet.full(ATOM), lambda a: a + 1, ATOM)
    with pytest.raises(EquivarianceError):
        map_from_function(NomSet.full(ATOM), lambda a: (a, Fraction(1, 2)), QQ)


def test_equivariance_check():
    f = lambda a: a if a == 1 else a  # noqa: E731
    map_from_function(NomSet.full(ATOM), f, ATOM, check=True)
    g = lambda v: v[0] if v[0] == 1 else v[1]  # noqa: E731
    with pytest.raises(EquivarianceError):
        map_from_function(NomSet.full(QQ), g, ATOM, check=True)


def test_keep_bits_and_text():
    assert keep_bits((1, 2, 3), (1, 3)) == "101"
    with pytest.raises(SchemaError):
        keep_bits((1, 2), (4,))
    m = min_map()
    (o, bits, t), = m.items()
    line = entry_text(o, bits, t)
    assert line == "atomset:3 100 atom"
    assert parse_entry(line, P3, ATOM) == (o, bits, t)
    assert m.image() == NomSet.full(ATOM)
    assert m.is_total_on(NomSet.full(P3))
