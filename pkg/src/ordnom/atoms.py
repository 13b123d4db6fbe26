"""Rational data values and monotone bijections of the rational line."""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "MonotoneMap",
    "rational",
    "rational_cmp",
    "format_rational",
    "parse_rational",
    "monotone_interpolate",
    "apply_monotone",
]


def rational(x) -> Fraction:
    """Coerce an int, Fraction or "num/den" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not data values")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not a rational data value: {x!r}")


def rational_cmp(a, b) -> int:
    """Three-way comparison: -1, 0 or 1."""
    a, b = rational(a), rational(b)
    return (a > b) - (a < b)


def format_rational(x) -> str:
    x = rational(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


class MonotoneMap:
    """Piecewise-linear monotone bijection of Q given by its breakpoints.

    Between consecutive breakpoints the map interpolates linearly; outside the
    breakpoint range it is a unit-slope translation. With no breakpoints it is
    the identity.
    """

    __slots__ = ("sources", "targets")

    def __init__(self, breakpoints: Iterable[tuple] = ()):
        pairs = [(rational(s), rational(t)) for s, t in breakpoints]
        sources = tuple(s for s, _ in pairs)
        targets = tuple(t for _, t in pairs)
        if any(a >= b for a, b in zip(sources, sources[1:])):
            raise ValueError("breakpoint sources must be strictly increasing")
        if any(a >= b for a, b in zip(targets, targets[1:])):
            raise ValueError("breakpoint targets must be strictly increasing")
        object.__setattr__(self, "sources", sources)
        object.__setattr__(self, "targets", targets)

    def __setattr__(self, name, value):
        raise AttributeError("MonotoneMap is immutable")

    @property
    def breakpoints(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(zip(self.sources, self.targets))

    def __call__(self, x) -> Fraction:
        x = rational(x)
        src, tgt = self.sources, self.targets
        n = len(src)
        if n == 0:
            return x
        i = bisect_right(src, x)
        if i == 0:
            return x - src[0] + tgt[0]
        if i == n:
            return x - src[-1] + tgt[-1]
        lo, hi = src[i - 1], src[i]
        return (x - lo) * (tgt[i] - tgt[i - 1]) / (hi - lo) + tgt[i - 1]

    def inverse(self) -> "MonotoneMap":
        return MonotoneMap(zip(self.targets, self.sources))

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return self.sources == other.sources and self.targets == other.targets

    def __hash__(self):
        return hash((self.sources, self.targets))

    def __repr__(self):
        pts = ", ".join(f"{format_rational(s)}->{format_rational(t)}"
                        for s, t in self.breakpoints)
        return f"MonotoneMap({pts})"


def monotone_interpolate(source: Sequence, target: Sequence) -> MonotoneMap:
    """The monotone bijection sending source[i] to target[i] for every i."""
    if len(source) != len(target):
        raise ValueError(
            f"support sizes differ: {len(source)} vs {len(target)}")
    return MonotoneMap(zip(source, target))


def apply_monotone(g: MonotoneMap, x) -> Fraction:
    return g(x)
