"""Equivariant maps as finite tables of (orbit, keep-bits, target orbit)."""

from __future__ import annotations

from typing import Callable, Iterable, Iterator

from .nomset import EquivarianceError, NomSet, check_equivariance
from .orbits import (
    OrbitDescriptor, Schema, SchemaError, _element, canonical_element,
    descriptor_text, matches, orbit_and_support, parse_descriptor, schema_text,
)

__all__ = [
    "EqMap", "map_add", "map_apply", "in_domain", "map_from_function",
    "entry_text", "parse_entry", "keep_bits",
]


def _check_entry(o: OrbitDescriptor, bits: str, t: OrbitDescriptor) -> None:
    if len(bits) != o.dim or bits.strip("01"):
        raise ValueError(
            f"keep-bits {bits!r} must be a 0/1 string of length {o.dim}")
    if bits.count("1") != t.dim:
        raise ValueError(
            f"keep-bits {bits!r} keep {bits.count('1')} values but the target "
            f"orbit has dimension {t.dim}")


def keep_bits(source_support, target_support) -> str:
    """Bit j is 1 iff the j-th smallest source value survives in the target."""
    kept = set(target_support)
    if not kept.issubset(source_support):
        raise SchemaError("target support is not contained in the source support")
    return "".join("1" if x in kept else "0" for x in source_support)


class EqMap:
    """A (possibly partial) equivariant map from ``domain`` to ``codomain`` values."""

    __slots__ = ("domain", "codomain", "_entries")

    def __init__(self, domain: Schema, codomain: Schema,
                 entries: Iterable[tuple[OrbitDescriptor, str, OrbitDescriptor]] = ()):
        self.domain = domain
        self.codomain = codomain
        table = {}
        for o, bits, t in entries:
            self._validate(o, bits, t)
            table[o] = (bits, t)
        self._entries = table

    def _validate(self, o, bits, t):
        if not matches(o, self.domain):
            raise SchemaError(f"{o!r} is not an orbit of {schema_text(self.domain)}")
        if not matches(t, self.codomain):
            raise SchemaError(f"{t!r} is not an orbit of {schema_text(self.codomain)}")
        _check_entry(o, bits, t)

    @classmethod
    def _trusted(cls, domain, codomain, table: dict) -> "EqMap":
        out = cls.__new__(cls)
        out.domain = domain
        out.codomain = codomain
        out._entries = table
        return out

    def add(self, o: OrbitDescriptor, bits: str, t: OrbitDescriptor) -> "EqMap":
        """A copy with the entry for ``o`` inserted or replaced."""
        self._validate(o, bits, t)
        table = dict(self._entries)
        table[o] = (bits, t)
        return EqMap._trusted(self.domain, self.codomain, table)

    def lookup(self, o: OrbitDescriptor) -> tuple[str, OrbitDescriptor] | None:
        return self._entries.get(o)

    def __call__(self, v):
        return map_apply(self, v)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, o: OrbitDescriptor) -> bool:
        return o in self._entries

    def items(self) -> Iterator[tuple[OrbitDescriptor, str, OrbitDescriptor]]:
        """Entries in descriptor order."""
        for o in sorted(self._entries):
            bits, t = self._entries[o]
            yield o, bits, t

    def domain_orbits(self) -> NomSet:
        return NomSet._trusted(self.domain, sorted(self._entries))

    def image(self) -> NomSet:
        return NomSet(self.codomain, (t for _, t in self._entries.values()))

    def is_total_on(self, x: NomSet) -> bool:
        return all(o in self._entries for o in x.orbits)

    def __eq__(self, other):
        if not isinstance(other, EqMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self._entries == other._entries)

    def __repr__(self):
        return (f"EqMap({schema_text(self.domain)} -> {schema_text(self.codomain)}, "
                f"{len(self)} entries)")


def map_add(m: EqMap, o: OrbitDescriptor, bits: str, t: OrbitDescriptor) -> EqMap:
    return m.add(o, bits, t)


def map_apply(m: EqMap, v):
    o, s = orbit_and_support(v, m.domain)
    entry = m._entries.get(o)
    if entry is None:
        raise KeyError(f"orbit {descriptor_text(o)} is not in the domain of the map")
    bits, t = entry
    return _element(t, [x for b, x in zip(bits, s) if b == "1"])


def in_domain(m: EqMap, v) -> bool:
    try:
        o, _ = orbit_and_support(v, m.domain)
    except SchemaError:
        return False
    return o in m._entries


def map_from_function(x: NomSet, f: Callable[[object], object], codomain: Schema,
                      check: bool | None = None) -> EqMap:
    """Tabulate the equivariant ``f`` on every orbit of ``x``."""
    check = check_equivariance if check is None else check
    table = {}
    for o in x.orbits:
        rep = canonical_element(o)
        _, s = orbit_and_support(rep, x.schema)
        t, ts = orbit_and_support(f(rep), codomain)
        try:
            bits = keep_bits(s, ts)
        except SchemaError:
            raise EquivarianceError(
                f"function result on {descriptor_text(o)} uses values outside the "
                "argument's support") from None
        if check:
            rep2 = canonical_element(o, 2)
            _, s2 = orbit_and_support(rep2, x.schema)
            t2, ts2 = orbit_and_support(f(rep2), codomain)
            if t2 != t or [v for b, v in zip(bits, s2) if b == "1"] != list(ts2):
                raise EquivarianceError(
                    f"function is not equivariant on {descriptor_text(o)}")
        table[o] = (bits, t)
    return EqMap._trusted(x.schema, codomain, table)


def entry_text(o: OrbitDescriptor, bits: str, t: OrbitDescriptor) -> str:
    return f"{descriptor_text(o)} {bits or '-'} {descriptor_text(t)}"


def parse_entry(line: str, domain: Schema, codomain: Schema):
    parts = line.split()
    if len(parts) != 3:
        raise SchemaError(f"expected '<orbit> <bits> <orbit>', got {line!r}")
    o = parse_descriptor(parts[0], domain)
    bits = "" if parts[1] == "-" else parts[1]
    t = parse_descriptor(parts[2], codomain)
    _check_entry(o, bits, t)
    return o, bits, t
