"""Orbit-finite nominal sets stored as sorted tuples of orbit descriptors."""

from __future__ import annotations

import os
from bisect import bisect_left
from math import comb, log2
from typing import Callable, Iterable, Iterator, Mapping

from .orbits import (
    OPair, OrbitDescriptor, PairSchema, Schema, SchemaError, all_orbits,
    canonical_element, matches, orbit_and_support, schema_text, to_orbit,
    valid_strings,
)

__all__ = [
    "NomSet", "EquivarianceError", "contains", "union", "intersection",
    "minus", "subset", "nomset_filter", "nomset_map", "product", "profile",
    "product_profile", "check_equivariance",
]

# Re-evaluate filter/map arguments on a second representative.
check_equivariance = os.environ.get("ORDNOM_CHECK_EQUIVARIANCE", "") not in ("", "0")


class EquivarianceError(ValueError):
    """A supplied function behaves differently on two elements of one orbit."""


class NomSet:
    """An orbit-finite nominal set over ``schema``.

    ``orbits`` is sorted and duplicate free; ``len()`` is the number of orbits.
    """

    __slots__ = ("schema", "orbits", "_keys")

    def __init__(self, schema: Schema, orbits: Iterable[OrbitDescriptor] = ()):
        orbits = sorted(set(orbits))
        for o in orbits:
            if not matches(o, schema):
                raise SchemaError(
                    f"orbit {o!r} does not belong to schema {schema_text(schema)}")
        self._set(schema, tuple(orbits))

    def _set(self, schema, orbits):
        self.schema = schema
        self.orbits = orbits
        self._keys = [o.key for o in orbits]

    @classmethod
    def _trusted(cls, schema: Schema, orbits) -> "NomSet":
        # caller guarantees sorted, unique, schema-conformant orbits
        out = cls.__new__(cls)
        out._set(schema, tuple(orbits))
        return out

    @classmethod
    def full(cls, schema: Schema) -> "NomSet":
        return cls._trusted(schema, all_orbits(schema))

    @classmethod
    def from_elements(cls, schema: Schema, values: Iterable) -> "NomSet":
        """The least equivariant set containing ``values``."""
        return cls(schema, (to_orbit(v, schema) for v in values))

    def __len__(self):
        return len(self.orbits)

    def __iter__(self) -> Iterator[OrbitDescriptor]:
        return iter(self.orbits)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __eq__(self, other):
        if not isinstance(other, NomSet):
            return NotImplemented
        return self.schema == other.schema and self._keys == other._keys

    def __hash__(self):
        return hash((self.schema, tuple(self._keys)))

    def __repr__(self):
        return f"NomSet({schema_text(self.schema)}, {len(self)} orbits)"

    @property
    def dim(self) -> int:
        return max((o.dim for o in self.orbits), default=0)

    def index(self, o: OrbitDescriptor) -> int:
        """Position of orbit ``o``, or -1."""
        i = bisect_left(self._keys, o.key)
        if i < len(self._keys) and self._keys[i] == o.key:
            return i
        return -1

    def has_orbit(self, o: OrbitDescriptor) -> bool:
        return self.index(o) >= 0

    def elements(self) -> list:
        """One canonical representative per orbit."""
        return [canonical_element(o) for o in self.orbits]


def _same_schema(x: NomSet, y: NomSet) -> None:
    if x.schema != y.schema:
        raise SchemaError(
            f"schema mismatch: {schema_text(x.schema)} vs {schema_text(y.schema)}")


def contains(x: NomSet, v) -> bool:
    return x.has_orbit(orbit_and_support(v, x.schema)[0])


def union(x: NomSet, y: NomSet) -> NomSet:
    _same_schema(x, y)
    a, b, ka, kb = x.orbits, y.orbits, x._keys, y._keys
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if ka[i] < kb[j]:
            out.append(a[i])
            i += 1
        elif kb[j] < ka[i]:
            out.append(b[j])
            j += 1
        else:
            out.append(a[i])
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return NomSet._trusted(x.schema, out)


def intersection(x: NomSet, y: NomSet) -> NomSet:
    _same_schema(x, y)
    a, ka, kb = x.orbits, x._keys, y._keys
    out = []
    i = j = 0
    while i < len(ka) and j < len(kb):
        if ka[i] < kb[j]:
            i += 1
        elif kb[j] < ka[i]:
            j += 1
        else:
            out.append(a[i])
            i += 1
            j += 1
    return NomSet._trusted(x.schema, out)


def minus(x: NomSet, y: NomSet) -> NomSet:
    _same_schema(x, y)
    a, ka, kb = x.orbits, x._keys, y._keys
    out = []
    i = j = 0
    while i < len(ka):
        if j == len(kb) or ka[i] < kb[j]:
            out.append(a[i])
            i += 1
        elif kb[j] < ka[i]:
            j += 1
        else:
            i += 1
            j += 1
    return NomSet._trusted(x.schema, out)


def subset(x: NomSet, y: NomSet) -> bool:
    _same_schema(x, y)
    nx, ny = len(x), len(y)
    if nx > ny:
        return False
    if nx * log2(ny + 1) < nx + ny:
        return all(y.has_orbit(o) for o in x.orbits)
    ka, kb = x._keys, y._keys
    j = 0
    for k in ka:
        while j < ny and kb[j] < k:
            j += 1
        if j == ny or kb[j] != k:
            return False
        j += 1
    return True


def nomset_filter(x: NomSet, pred: Callable[[object], bool],
                  check: bool | None = None) -> NomSet:
    """Orbits of ``x`` whose representative satisfies the equivariant ``pred``."""
    check = check_equivariance if check is None else check
    out = []
    for o in x.orbits:
        keep = bool(pred(canonical_element(o)))
        if check and bool(pred(canonical_element(o, 2))) != keep:
            raise EquivarianceError(f"predicate is not equivariant on {o!r}")
        if keep:
            out.append(o)
    return NomSet._trusted(x.schema, out)


def nomset_map(x: NomSet, f: Callable[[object], object], schema: Schema,
               check: bool | None = None) -> NomSet:
    """Direct image of ``x`` under the equivariant ``f``; ``schema`` is the codomain."""
    check = check_equivariance if check is None else check
    out = set()
    for o in x.orbits:
        t = to_orbit(f(canonical_element(o)), schema)
        if check and to_orbit(f(canonical_element(o, 2)), schema) != t:
            raise EquivarianceError(f"function is not equivariant on {o!r}")
        out.add(t)
    return NomSet._trusted(schema, sorted(out))


def product(x: NomSet, y: NomSet) -> NomSet:
    """X x Y; orbits come out already sorted."""
    out = [OPair(p, lo, ro) for lo in x.orbits for ro in y.orbits
           for p in valid_strings(lo.dim, ro.dim)]
    return NomSet._trusted(PairSchema(x.schema, y.schema), out)


def profile(x: NomSet) -> dict[int, int]:
    """Number of orbits per dimension, zero entries omitted."""
    out: dict[int, int] = {}
    for o in x.orbits:
        out[o.dim] = out.get(o.dim, 0) + 1
    return dict(sorted(out.items()))


def product_profile(f: Mapping[int, int], g: Mapping[int, int]) -> dict[int, int]:
    """Orbit profile of a product computed from the factors' profiles alone."""
    out: dict[int, int] = {}
    for i, fi in f.items():
        for j, gj in g.items():
            if not fi or not gj:
                continue
            for n in range(max(i, j), i + j + 1):
                c = comb(n, j) * comb(j, n - i)
                out[n] = out.get(n, 0) + fi * gj * c
    return {n: c for n, c in sorted(out.items()) if c}
