"""Plain-text automaton files.

::

    nomdfa 1
    alphabet-schema <schema>
    state-schema <schema>
    alphabet <id> <orbit>
    state <id> <orbit> accept|reject
    initial <id>
    delta <state id> <letter id> <P> <F> <target id>

Empty P or F strings are written as ``-``; ``#`` starts a comment.
"""

from __future__ import annotations

from .automata import MalformedAutomaton, NominalDFA
from .eqmap import EqMap
from .nomset import NomSet, product
from .orbits import (
    OPair, PairSchema, SchemaError, canonical_element, descriptor_text,
    parse_descriptor, parse_schema, schema_text,
)

__all__ = ["AutomatonFileError", "FileParseError", "FileSemanticError",
           "serialize", "parse", "load", "dump"]

HEADER = "nomdfa 1"


class AutomatonFileError(ValueError):
    exit_code = 1

    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line else msg)


class FileParseError(AutomatonFileError):
    exit_code = 2


class FileSemanticError(AutomatonFileError):
    exit_code = 1


def serialize(d: NominalDFA) -> str:
    lines = [HEADER,
             f"alphabet-schema {schema_text(d.alphabet.schema)}",
             f"state-schema {schema_text(d.states.schema)}"]
    aid = {o: i for i, o in enumerate(d.alphabet.orbits)}
    sid = {o: i for i, o in enumerate(d.states.orbits)}
    lines += [f"alphabet {i} {descriptor_text(o)}" for o, i in aid.items()]
    lines += [f"state {i} {descriptor_text(o)} "
              f"{'accept' if d.finals.has_orbit(o) else 'reject'}" for o, i in sid.items()]
    lines.append(f"initial {sid[d.initial_orbit]}")
    for o, bits, t in d.delta.items():
        lines.append(f"delta {sid[o.left]} {aid[o.right]} {o.p or '-'} {bits or '-'} {sid[t]}")
    return "\n".join(lines) + "\n"


def _int(tok: str, n: int) -> int:
    if not tok.isdigit():
        raise FileParseError(f"expected an id, got {tok!r}", n)
    return int(tok)


def parse(text: str) -> NominalDFA:
    records = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            records.append((n, line.split()))
    if not records or " ".join(records[0][1]) != HEADER:
        raise FileParseError(f"missing header {HEADER!r}", records[0][0] if records else 1)
    schemas = {}
    alphabet, states, accepting = {}, {}, set()
    initial = None
    deltas = []
    arity = {"alphabet-schema": 2, "state-schema": 2, "alphabet": 3, "state": 4,
             "initial": 2, "delta": 6}
    for n, toks in records[1:]:
        kind = toks[0]
        if kind not in arity:
            raise FileParseError(f"unknown record {kind!r}", n)
        if len(toks) != arity[kind]:
            raise FileParseError(f"{kind} takes {arity[kind] - 1} fields", n)
        try:
            if kind.endswith("-schema"):
                if kind in schemas:
                    raise FileSemanticError(f"duplicate {kind}", n)
                schemas[kind] = parse_schema(toks[1])
            elif kind in ("alphabet", "state"):
                key = f"{kind}-schema"
                if key not in schemas:
                    raise FileParseError(f"{kind} before {key}", n)
                table = alphabet if kind == "alphabet" else states
                i = _int(toks[1], n)
                if i in table:
                    raise FileSemanticError(f"duplicate {kind} id {i}", n)
                table[i] = (parse_descriptor(toks[2], schemas[key]), n)
                if kind == "state":
                    if toks[3] not in ("accept", "reject"):
                        raise FileParseError(f"expected accept or reject, got {toks[3]!r}", n)
                    if toks[3] == "accept":
                        accepting.add(i)
            elif kind == "initial":
                if initial is not None:
                    raise FileSemanticError("duplicate initial record", n)
                initial = (_int(toks[1], n), n)
            else:
                s, a, t = (_int(toks[k], n) for k in (1, 2, 5))
                p = "" if toks[3] == "-" else toks[3]
                bits = "" if toks[4] == "-" else toks[4]
                if p.strip("LRB") or bits.strip("01"):
                    raise FileParseError("malformed product or keep string", n)
                deltas.append((n, s, a, p, bits, t))
        except SchemaError as exc:
            raise FileParseError(str(exc), n) from None
    for key in ("alphabet-schema", "state-schema"):
        if key not in schemas:
            raise FileParseError(f"missing {key} record")
    if initial is None:
        raise FileParseError("missing initial record")
    sschema, aschema = schemas["state-schema"], schemas["alphabet-schema"]

    def lookup(table, i, what, n):
        if i not in table:
            raise FileSemanticError(f"unknown {what} id {i}", n)
        return table[i][0]

    entries = {}
    for n, s, a, p, bits, t in deltas:
        so, ao, to = (lookup(states, s, "state", n), lookup(alphabet, a, "alphabet", n),
                      lookup(states, t, "state", n))
        try:
            o = OPair(p, so, ao)
        except SchemaError as exc:
            raise FileSemanticError(str(exc), n) from None
        if len(bits) != o.dim or bits.count("1") != to.dim:
            raise FileSemanticError(
                f"keep string {bits or '-'!r} needs length {o.dim} and "
                f"{to.dim} ones", n)
        if o in entries:
            raise FileSemanticError(f"duplicate transition for {descriptor_text(o)}", n)
        entries[o] = (bits, to)
    snom = NomSet(sschema, (o for o, _ in states.values()))
    anom = NomSet(aschema, (o for o, _ in alphabet.values()))
    if len(snom) != len(states) or len(anom) != len(alphabet):
        raise FileSemanticError("an orbit is declared twice")
    for o in product(snom, anom):
        if o not in entries:
            raise FileSemanticError(
                f"delta not total: no transition for state {descriptor_text(o.left)} "
                f"and letter {descriptor_text(o.right)}")
    finals = NomSet(sschema, (states[i][0] for i in accepting))
    init = lookup(states, initial[0], "state", initial[1])
    if init.dim != 0:
        raise FileSemanticError("initial state orbit must have dimension 0", initial[1])
    delta = EqMap._trusted(PairSchema(sschema, aschema), sschema, entries)
    try:
        return NominalDFA(snom, anom, canonical_element(init), finals, delta)
    except MalformedAutomaton as exc:
        raise FileSemanticError(str(exc)) from None


def load(path) -> NominalDFA:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(d: NominalDFA, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(d))
