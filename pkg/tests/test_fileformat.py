import pytest

from ordnom.automata import minimise
from ordnom.fileformat import (
    FileParseError, FileSemanticError, dump, load, parse, serialize,
)
from ordnom.generators import (
    RandomConfig, gen_fifo, gen_formula, gen_lint, gen_lmax, gen_random, gen_ww,
)

LINT = """\
nomdfa 1
alphabet-schema atom
state-schema sum(q0:unit:|q1:atom|q2:pair(atom,atom)|q3:pair(atom,atom)|q4:unit:)
alphabet 0 atom
state 0 sum:q0(unit:) reject
state 1 sum:q1(atom) reject
state 2 sum:q2(pair(LR,atom,atom)) accept
state 3 sum:q3(pair(LR,atom,atom)) reject
state 4 sum:q4(unit:) reject
initial 0
"""


def test_lint_file_is_stable():
    text = serialize(gen_lint())
    assert text.startswith(LINT)
    assert "delta 0 0 R 1 1" in text
    assert "delta 1 0 LR 11 2" in text
    assert "delta 1 0 B 0 4" in text
    assert parse(text) == gen_lint()


@pytest.mark.parametrize("make", [
    gen_lint, gen_lmax, lambda: gen_fifo(2), lambda: gen_ww(2),
    lambda: gen_random(RandomConfig(15, 3, seed=1)),
    lambda: gen_formula(RandomConfig(5, 2, seed=1)),
    lambda: minimise(gen_fifo(2))])
def test_roundtrip(make):
    d = make()
    text = serialize(d)
    back = parse(text)
    assert back == d
    assert serialize(back) == text


def test_file_io(tmp_path):
    d = gen_lmax()
    path = tmp_path / "lmax.nom"
    dump(d, path)
    assert load(path) == d


def test_comments_and_blank_lines():
    text = serialize(gen_lint())
    noisy = "# generated\n\n" + text.replace("initial 0", "initial 0   # start")
    assert parse(noisy) == gen_lint()


def _drop_first_delta(text):
    lines = text.splitlines(keepends=True)
    k = next(i for i, line in enumerate(lines) if line.startswith("delta"))
    return "".join(lines[:k] + lines[k + 1:])


def test_missing_transition():
    with pytest.raises(FileSemanticError, match="delta not total"):
        parse(_drop_first_delta(serialize(gen_lint())))


def test_invalid_product_string():
    text = serialize(gen_lint()).replace("delta 1 0 B 0 4", "delta 1 0 BB 0 4")
    with pytest.raises(FileSemanticError) as exc:
        parse(text)
    assert "not valid" in str(exc.value) and exc.value.line is not None


def test_popcount_mismatch():
    text = serialize(gen_lint()).replace("delta 1 0 LR 11 2", "delta 1 0 LR 10 2")
    with pytest.raises(FileSemanticError, match="keep string"):
        parse(text)


def test_parse_errors():
    good = serialize(gen_lint())
    with pytest.raises(FileParseError):
        parse(good.replace("nomdfa 1", "nomdfa 2"))
    with pytest.raises(FileParseError):
        parse(good.replace("state 2 sum:q2(pair(LR,atom,atom))", "state 2 sum:q9(atom)"))
    with pytest.raises(FileParseError):
        parse(good + "bogus 1\n")
    with pytest.raises(FileParseError):
        parse("")
    with pytest.raises(FileParseError):
        parse(good.replace("initial 0", "initial x"))


def test_semantic_errors():
    good = serialize(gen_lint())
    with pytest.raises(FileSemanticError):
        parse(good.replace("initial 0", "initial 2"))
    with pytest.raises(FileSemanticError):
        parse(good.replace("delta 0 0 R 1 1", "delta 0 0 R 1 9"))
    with pytest.raises(FileSemanticError):
        parse(good + "delta 0 0 R 1 1\n")
