"""Value schemas, concrete values and canonical orbit descriptors.

A value is a plain Python object whose shape is fixed by a schema:

====================  ======================================
schema                value
====================  ======================================
``AtomSchema``        a ``Fraction`` (ints are accepted)
``UnitSchema(l)``     ``Unit(l)``
``PairSchema(a, b)``  a 2-tuple
``SumSchema(...)``    ``Tagged(tag, inner)``
``AtomSetSchema(n)``  a ``frozenset`` of n distinct rationals
``ListSchema(a)``     right-nested pairs ending in ``NIL``
====================  ======================================

Every orbit is described by an :class:`OrbitDescriptor`. Descriptors are
hashable, totally ordered and cheap to compare: each carries a ``key`` tuple
and all comparisons are done on keys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .atoms import MonotoneMap, format_rational, rational

__all__ = [
    "SchemaError",
    "Schema", "AtomSchema", "UnitSchema", "PairSchema", "SumSchema",
    "AtomSetSchema", "ListSchema", "ATOM",
    "Unit", "Tagged", "NIL",
    "OrbitDescriptor", "OAtom", "OUnit", "OPair", "OSum", "OAtomSet",
    "dim", "support", "to_orbit", "orbit_and_support", "get_element",
    "canonical_element", "descriptor_cmp", "act", "valid_strings",
    "merge_supports", "all_orbits", "matches", "infer_schema",
    "nest_word", "unnest_word", "word_letters_orbits",
    "format_value", "descriptor_text", "parse_descriptor",
    "schema_text", "parse_schema", "canonical_support",
]


class SchemaError(ValueError):
    """A value or descriptor does not fit the schema it is used with."""


_NAME = re.compile(r"[A-Za-z0-9_.\-]*\Z")


def _check_name(name: str, what: str, allow_empty: bool) -> str:
    if not isinstance(name, str) or not _NAME.match(name) or (
            not name and not allow_empty):
        raise SchemaError(f"invalid {what} {name!r}")
    return name


# --------------------------------------------------------------------------
# Schemas


class Schema:
    __slots__ = ()


@dataclass(frozen=True)
class AtomSchema(Schema):
    pass


@dataclass(frozen=True)
class UnitSchema(Schema):
    label: str = ""

    def __post_init__(self):
        _check_name(self.label, "unit label", allow_empty=True)


@dataclass(frozen=True)
class PairSchema(Schema):
    left: Schema
    right: Schema


@dataclass(frozen=True)
class SumSchema(Schema):
    """Tagged union; the declaration order of the tags is the orbit order."""

    alternatives: tuple[tuple[str, Schema], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        alts = tuple((t, s) for t, s in self.alternatives)
        object.__setattr__(self, "alternatives", alts)
        index = {}
        for i, (tag, _) in enumerate(alts):
            _check_name(tag, "sum tag", allow_empty=False)
            if tag in index:
                raise SchemaError(f"duplicate sum tag {tag!r}")
            index[tag] = i
        object.__setattr__(self, "_index", index)

    def index(self, tag: str) -> int:
        try:
            return self._index[tag]
        except KeyError:
            raise SchemaError(f"unknown sum tag {tag!r}") from None

    def branch(self, tag: str) -> Schema:
        return self.alternatives[self.index(tag)][1]

    def orbit(self, tag: str, inner: "OrbitDescriptor") -> "OSum":
        return OSum(tag, inner, self.index(tag))


@dataclass(frozen=True)
class AtomSetSchema(Schema):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise SchemaError(f"atom set size must be a natural, got {self.n!r}")


@dataclass(frozen=True)
class ListSchema(Schema):
    """Finite words over ``elem``, stored as right-nested pairs ending in NIL."""

    elem: Schema


ATOM = AtomSchema()


# --------------------------------------------------------------------------
# Values


@dataclass(frozen=True)
class Unit:
    label: str = ""


@dataclass(frozen=True)
class Tagged:
    tag: str
    value: object


NIL = Unit("")


def nest_word(letters: Iterable) -> object:
    """Encode a sequence of letters as right-nested pairs ending in NIL."""
    out = NIL
    for a in reversed(tuple(letters)):
        out = (a, out)
    return out


def unnest_word(value) -> tuple:
    letters = []
    while value != NIL:
        if not isinstance(value, tuple) or len(value) != 2:
            raise SchemaError(f"not a word: {value!r}")
        letters.append(value[0])
        value = value[1]
    return tuple(letters)


# --------------------------------------------------------------------------
# Descriptors

_P_CODE = str.maketrans("LRB", "012")


class OrbitDescriptor:
    """Base class. ``key`` fixes identity and order, ``dim`` the dimension."""

    __slots__ = ("key", "dim", "_hash")

    def _init(self, key, dimension):
        self.key = key
        self.dim = dimension
        self._hash = hash(key)

    def __eq__(self, other):
        if not isinstance(other, OrbitDescriptor):
            return NotImplemented
        return self is other or self.key == other.key

    def __ne__(self, other):
        if not isinstance(other, OrbitDescriptor):
            return NotImplemented
        return self.key != other.key

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<orbit {descriptor_text(self)}>"


class OAtom(OrbitDescriptor):
    __slots__ = ()

    def __init__(self):
        self._init((0,), 1)


class OUnit(OrbitDescriptor):
    __slots__ = ("label",)

    def __init__(self, label: str = ""):
        self.label = label
        self._init((1, label), 0)


class OPair(OrbitDescriptor):
    """Orbit of pairs: components' orbits plus the L/R/B string ``p``.

    ``p[i]`` says whether the i-th smallest support element of the pair
    belongs to the left component only, the right only, or both.
    """

    __slots__ = ("p", "left", "right")

    def __init__(self, p: str, left: OrbitDescriptor, right: OrbitDescriptor):
        nl = p.count("L")
        nr = p.count("R")
        nb = len(p) - nl - nr
        if p.count("B") != nb:
            raise SchemaError(f"product string {p!r} uses letters besides L, R, B")
        if nl + nb != left.dim or nr + nb != right.dim:
            raise SchemaError(
                f"product string {p!r} is not valid for dimensions "
                f"{left.dim} and {right.dim}")
        self.p = p
        self.left = left
        self.right = right
        self._init((2, left.key, right.key, p.translate(_P_CODE)), len(p))


class OSum(OrbitDescriptor):
    __slots__ = ("tag", "inner", "index")

    def __init__(self, tag: str, inner: OrbitDescriptor, index: int):
        self.tag = tag
        self.inner = inner
        self.index = index
        self._init((3, index, tag, inner.key), inner.dim)


class OAtomSet(OrbitDescriptor):
    __slots__ = ("n",)

    def __init__(self, n: int):
        if n < 0:
            raise SchemaError("atom set size must be a natural")
        self.n = n
        self._init((4, n), n)


_O_ATOM = OAtom()


def dim(o: OrbitDescriptor) -> int:
    return o.dim


@lru_cache(maxsize=None)
def valid_strings(left_dim: int, right_dim: int) -> tuple[str, ...]:
    """All valid product strings for the given dimensions, in L<R<B order."""
    out = []

    def walk(prefix, nl, nr):
        if nl == 0 and nr == 0:
            out.append(prefix)
            return
        if nl:
            walk(prefix + "L", nl - 1, nr)
        if nr:
            walk(prefix + "R", nl, nr - 1)
        if nl and nr:
            walk(prefix + "B", nl - 1, nr - 1)

    walk("", left_dim, right_dim)
    return tuple(out)


def merge_supports(a: Sequence, b: Sequence) -> tuple[str, tuple]:
    """Merge two sorted supports; returns (product string, union)."""
    i = j = 0
    na, nb = len(a), len(b)
    p = []
    out = []
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            p.append("L")
            out.append(x)
            i += 1
        elif y < x:
            p.append("R")
            out.append(y)
            j += 1
        else:
            p.append("B")
            out.append(x)
            i += 1
            j += 1
    if i < na:
        p.append("L" * (na - i))
        out.extend(a[i:])
    if j < nb:
        p.append("R" * (nb - j))
        out.extend(b[j:])
    return "".join(p), tuple(out)


def _split(p: str, s: Sequence) -> tuple[list, list]:
    left = [x for c, x in zip(p, s) if c != "R"]
    right = [x for c, x in zip(p, s) if c != "L"]
    return left, right


# --------------------------------------------------------------------------
# Element / orbit conversion


def _is_atom(v) -> bool:
    return isinstance(v, (Fraction, int)) and not isinstance(v, bool)


def infer_schema(v) -> Schema:
    """Schema of a value that contains no tagged nodes."""
    if _is_atom(v):
        return ATOM
    if isinstance(v, Unit):
        return UnitSchema(v.label)
    if isinstance(v, tuple) and len(v) == 2:
        return PairSchema(infer_schema(v[0]), infer_schema(v[1]))
    if isinstance(v, frozenset):
        return AtomSetSchema(len(v))
    if isinstance(v, Tagged):
        raise SchemaError("cannot infer a sum schema; pass the schema explicitly")
    raise SchemaError(f"not a value: {v!r}")


def orbit_and_support(v, schema: Schema) -> tuple[OrbitDescriptor, tuple]:
    """Descriptor of the orbit of ``v`` together with its sorted least support."""
    if isinstance(schema, AtomSchema):
        if not _is_atom(v):
            raise SchemaError(f"expected a rational, got {v!r}")
        return _O_ATOM, (v,)
    if isinstance(schema, PairSchema):
        if not isinstance(v, tuple) or len(v) != 2:
            raise SchemaError(f"expected a pair, got {v!r}")
        lo, ls = orbit_and_support(v[0], schema.left)
        ro, rs = orbit_and_support(v[1], schema.right)
        p, s = merge_supports(ls, rs)
        return OPair(p, lo, ro), s
    if isinstance(schema, ListSchema):
        if v == NIL:
            return OUnit(""), ()
        if not isinstance(v, tuple) or len(v) != 2:
            raise SchemaError(f"expected a word, got {v!r}")
        lo, ls = orbit_and_support(v[0], schema.elem)
        ro, rs = orbit_and_support(v[1], schema)
        p, s = merge_supports(ls, rs)
        return OPair(p, lo, ro), s
    if isinstance(schema, SumSchema):
        if not isinstance(v, Tagged):
            raise SchemaError(f"expected a tagged value, got {v!r}")
        idx = schema.index(v.tag)
        io, s = orbit_and_support(v.value, schema.alternatives[idx][1])
        return OSum(v.tag, io, idx), s
    if isinstance(schema, UnitSchema):
        if not isinstance(v, Unit) or v.label != schema.label:
            raise SchemaError(f"expected Unit({schema.label!r}), got {v!r}")
        return OUnit(schema.label), ()
    if isinstance(schema, AtomSetSchema):
        if not isinstance(v, frozenset) or len(v) != schema.n:
            raise SchemaError(f"expected a set of {schema.n} rationals, got {v!r}")
        if not all(_is_atom(x) for x in v):
            raise SchemaError(f"atom set holds a non-rational: {v!r}")
        return OAtomSet(schema.n), tuple(sorted(v))
    raise SchemaError(f"unknown schema {schema!r}")


def to_orbit(v, schema: Schema | None = None) -> OrbitDescriptor:
    if schema is None:
        schema = infer_schema(v)
    return orbit_and_support(v, schema)[0]


def support(v) -> tuple:
    """Least support of ``v``, sorted ascending."""
    acc = set()
    _collect(v, acc)
    return tuple(sorted(acc))


def _collect(v, acc: set) -> None:
    if _is_atom(v):
        acc.add(v)
    elif isinstance(v, tuple):
        for x in v:
            _collect(x, acc)
    elif isinstance(v, Tagged):
        _collect(v.value, acc)
    elif isinstance(v, frozenset):
        acc.update(v)
    elif not isinstance(v, Unit):
        raise SchemaError(f"not a value: {v!r}")


def _element(o: OrbitDescriptor, s: Sequence):
    if isinstance(o, OPair):
        ls, rs = _split(o.p, s)
        return (_element(o.left, ls), _element(o.right, rs))
    if isinstance(o, OAtom):
        return s[0]
    if isinstance(o, OSum):
        return Tagged(o.tag, _element(o.inner, s))
    if isinstance(o, OUnit):
        return Unit(o.label)
    if isinstance(o, OAtomSet):
        return frozenset(s)
    raise SchemaError(f"not an orbit descriptor: {o!r}")


def get_element(o: OrbitDescriptor, s: Sequence):
    """The unique element of orbit ``o`` whose least support is ``s``."""
    s = tuple(rational(x) for x in s)
    if len(s) != o.dim:
        raise ValueError(f"orbit has dimension {o.dim}, support has {len(s)} elements")
    if any(a >= b for a, b in zip(s, s[1:])):
        raise ValueError("support must be strictly increasing")
    return _element(o, s)


@lru_cache(maxsize=64)
def canonical_support(n: int, step: int = 1) -> tuple[Fraction, ...]:
    return tuple(Fraction(step * (i + 1)) for i in range(n))


def canonical_element(o: OrbitDescriptor, step: int = 1):
    """Representative of ``o`` with support {step, 2*step, ..., n*step}."""
    return _element(o, canonical_support(o.dim, step))


def act(v, g: MonotoneMap):
    """Apply the monotone bijection ``g`` to every rational in ``v``."""
    if _is_atom(v):
        return g(v)
    if isinstance(v, tuple):
        return tuple(act(x, g) for x in v)
    if isinstance(v, Tagged):
        return Tagged(v.tag, act(v.value, g))
    if isinstance(v, frozenset):
        return frozenset(g(x) for x in v)
    if isinstance(v, Unit):
        return v
    raise SchemaError(f"not a value: {v!r}")


# --------------------------------------------------------------------------
# Order and schema agreement


def _compatible(a: OrbitDescriptor, b: OrbitDescriptor) -> bool:
    if type(a) is not type(b):
        # a word orbit mixes OUnit (empty word) and OPair (non-empty)
        return {type(a), type(b)} == {OUnit, OPair}
    if isinstance(a, OUnit):
        return a.label == b.label
    if isinstance(a, OPair):
        return _compatible(a.left, b.left) and _compatible(a.right, b.right)
    if isinstance(a, OSum):
        if a.index == b.index:
            return a.tag == b.tag and _compatible(a.inner, b.inner)
        return a.tag != b.tag
    if isinstance(a, OAtomSet):
        return a.n == b.n
    return True


def descriptor_cmp(a: OrbitDescriptor, b: OrbitDescriptor) -> int:
    if not _compatible(a, b):
        raise SchemaError(f"descriptors of different schemas: {a!r} vs {b!r}")
    return (a.key > b.key) - (a.key < b.key)


def matches(o: OrbitDescriptor, schema: Schema) -> bool:
    if isinstance(schema, AtomSchema):
        return isinstance(o, OAtom)
    if isinstance(schema, UnitSchema):
        return isinstance(o, OUnit) and o.label == schema.label
    if isinstance(schema, PairSchema):
        return (isinstance(o, OPair) and matches(o.left, schema.left)
                and matches(o.right, schema.right))
    if isinstance(schema, ListSchema):
        while isinstance(o, OPair):
            if not matches(o.left, schema.elem):
                return False
            o = o.right
        return isinstance(o, OUnit) and o.label == ""
    if isinstance(schema, SumSchema):
        if not isinstance(o, OSum) or not 0 <= o.index < len(schema.alternatives):
            return False
        tag, inner = schema.alternatives[o.index]
        return tag == o.tag and matches(o.inner, inner)
    if isinstance(schema, AtomSetSchema):
        return isinstance(o, OAtomSet) and o.n == schema.n
    return False


def all_orbits(schema: Schema) -> list[OrbitDescriptor]:
    """Every orbit of an orbit-finite schema, sorted."""
    if isinstance(schema, AtomSchema):
        return [_O_ATOM]
    if isinstance(schema, UnitSchema):
        return [OUnit(schema.label)]
    if isinstance(schema, AtomSetSchema):
        return [OAtomSet(schema.n)]
    if isinstance(schema, SumSchema):
        return [OSum(tag, o, i) for i, (tag, s) in enumerate(schema.alternatives)
                for o in all_orbits(s)]
    if isinstance(schema, PairSchema):
        return [OPair(p, lo, ro) for lo in all_orbits(schema.left)
                for ro in all_orbits(schema.right)
                for p in valid_strings(lo.dim, ro.dim)]
    raise SchemaError(f"{schema!r} has infinitely many orbits")


def word_letters_orbits(o: OrbitDescriptor) -> list[OrbitDescriptor]:
    """Orbits of the letters of a word orbit, first letter first."""
    out = []
    while isinstance(o, OPair):
        out.append(o.left)
        o = o.right
    return out


# --------------------------------------------------------------------------
# Text forms


def format_value(v) -> str:
    if _is_atom(v):
        return format_rational(v)
    if isinstance(v, Unit):
        return f"<{v.label}>"
    if isinstance(v, tuple):
        return "(" + ",".join(format_value(x) for x in v) + ")"
    if isinstance(v, Tagged):
        return f"{v.tag}({format_value(v.value)})"
    if isinstance(v, frozenset):
        return "{" + ",".join(format_rational(x) for x in sorted(v)) + "}"
    raise SchemaError(f"not a value: {v!r}")


def descriptor_text(o: OrbitDescriptor) -> str:
    if isinstance(o, OAtom):
        return "atom"
    if isinstance(o, OUnit):
        return f"unit:{o.label}"
    if isinstance(o, OPair):
        return f"pair({o.p},{descriptor_text(o.left)},{descriptor_text(o.right)})"
    if isinstance(o, OSum):
        return f"sum:{o.tag}({descriptor_text(o.inner)})"
    if isinstance(o, OAtomSet):
        return f"atomset:{o.n}"
    raise SchemaError(f"not an orbit descriptor: {o!r}")


def schema_text(s: Schema) -> str:
    if isinstance(s, AtomSchema):
        return "atom"
    if isinstance(s, UnitSchema):
        return f"unit:{s.label}"
    if isinstance(s, PairSchema):
        return f"pair({schema_text(s.left)},{schema_text(s.right)})"
    if isinstance(s, SumSchema):
        return "sum(" + "|".join(f"{t}:{schema_text(x)}"
                                 for t, x in s.alternatives) + ")"
    if isinstance(s, AtomSetSchema):
        return f"atomset:{s.n}"
    if isinstance(s, ListSchema):
        return f"list({schema_text(s.elem)})"
    raise SchemaError(f"unknown schema {s!r}")


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise SchemaError(f"{msg} at column {self.pos + 1} in {self.text!r}")

    def startswith(self, word):
        return self.text.startswith(word, self.pos)

    def expect(self, word):
        if not self.startswith(word):
            self.error(f"expected {word!r}")
        self.pos += len(word)

    def name(self):
        m = re.compile(r"[A-Za-z0-9_.\-]*").match(self.text, self.pos)
        self.pos = m.end()
        return m.group()

    def done(self):
        if self.pos != len(self.text):
            self.error("trailing characters")


def parse_schema(text: str) -> Schema:
    r = _Reader(text.strip())
    s = _read_schema(r)
    r.done()
    return s


def _read_schema(r: _Reader) -> Schema:
    if r.startswith("atomset:"):
        r.expect("atomset:")
        n = r.name()
        if not n.isdigit():
            r.error("expected a natural number")
        return AtomSetSchema(int(n))
    if r.startswith("atom"):
        r.expect("atom")
        return ATOM
    if r.startswith("unit:"):
        r.expect("unit:")
        return UnitSchema(r.name())
    if r.startswith("pair("):
        r.expect("pair(")
        left = _read_schema(r)
        r.expect(",")
        right = _read_schema(r)
        r.expect(")")
        return PairSchema(left, right)
    if r.startswith("list("):
        r.expect("list(")
        elem = _read_schema(r)
        r.expect(")")
        return ListSchema(elem)
    if r.startswith("sum("):
        r.expect("sum(")
        alts = []
        while True:
            tag = r.name()
            r.expect(":")
            alts.append((tag, _read_schema(r)))
            if r.startswith("|"):
                r.expect("|")
                continue
            r.expect(")")
            break
        return SumSchema(tuple(alts))
    r.error("unknown schema")


def parse_descriptor(text: str, schema: Schema) -> OrbitDescriptor:
    """Parse the text form of a descriptor and check it against ``schema``."""
    r = _Reader(text.strip())
    o = _read_descriptor(r, schema)
    r.done()
    return o


def _read_descriptor(r: _Reader, schema: Schema) -> OrbitDescriptor:
    if isinstance(schema, ListSchema):
        if r.startswith("unit:"):
            return _read_descriptor(r, UnitSchema(""))
        return _read_pair(r, schema.elem, schema)
    if schema is None or isinstance(schema, AtomSchema):
        if r.startswith("atom") and not r.startswith("atomset"):
            r.expect("atom")
            return _O_ATOM
    if isinstance(schema, UnitSchema) and r.startswith("unit:"):
        r.expect("unit:")
        label = r.name()
        if label != schema.label:
            r.error(f"unit label {label!r} does not match schema label {schema.label!r}")
        return OUnit(label)
    if isinstance(schema, AtomSetSchema) and r.startswith("atomset:"):
        r.expect("atomset:")
        n = r.name()
        if not n.isdigit() or int(n) != schema.n:
            r.error(f"expected atomset:{schema.n}")
        return OAtomSet(schema.n)
    if isinstance(schema, PairSchema):
        return _read_pair(r, schema.left, schema.right)
    if isinstance(schema, SumSchema) and r.startswith("sum:"):
        r.expect("sum:")
        tag = r.name()
        try:
            idx = schema.index(tag)
        except SchemaError as exc:
            r.error(str(exc))
        r.expect("(")
        inner = _read_descriptor(r, schema.alternatives[idx][1])
        r.expect(")")
        return OSum(tag, inner, idx)
    r.error(f"unknown descriptor for schema {schema_text(schema)}")


def _read_pair(r: _Reader, ls: Schema, rs: Schema) -> OPair:
    r.expect("pair(")
    start = r.pos
    while r.pos < len(r.text) and r.text[r.pos] in "LRB":
        r.pos += 1
    p = r.text[start:r.pos]
    r.expect(",")
    left = _read_descriptor(r, ls)
    r.expect(",")
    right = _read_descriptor(r, rs)
    r.expect(")")
    try:
        return OPair(p, left, right)
    except SchemaError as exc:
        r.error(str(exc))
