"""Reference implementations used to check the library independently.

Nothing here imports the orbit machinery: orbits are recovered by brute
force from order types of concrete tuples, and languages are plain
predicates on words.
"""

from __future__ import annotations

from collections import deque
from itertools import product as cartesian


def order_type(values) -> tuple:
    """Dense ranks: two tuples are in one orbit of Q^n iff these agree."""
    ranks = {v: i for i, v in enumerate(sorted(set(values)))}
    return tuple(ranks[v] for v in values)


def brute_power_orbits(n: int) -> int:
    return len({order_type(t) for t in cartesian(range(n), repeat=n)})


def pair_string(left, right) -> str:
    """L/R/B string of two finite sets of rationals, by direct membership."""
    out = []
    for v in sorted(set(left) | set(right)):
        a, b = v in left, v in right
        out.append("B" if a and b else "L" if a else "R")
    return "".join(out)


def atom_times_lt_pairs() -> set[str]:
    """Orbit strings of Q x {(a,b) | a < b} found by enumeration."""
    found = set()
    for x in range(1, 4):
        for a in range(1, 4):
            for b in range(a + 1, 4):
                found.add(pair_string({x}, {a, b}))
    return found


# Languages


def in_lmax(w) -> bool:
    return len(w) >= 2 and w[-1] == max(w[:-1])


def in_lint(w) -> bool:
    if len(w) < 2 or len(w) % 2:
        return False
    lo, hi = w[0], w[1]
    if not lo < hi:
        return False
    for k in range(2, len(w), 2):
        a, b = w[k], w[k + 1]
        if not lo < a < b < hi:
            return False
        lo, hi = a, b
    return True


def in_ww(w, n: int) -> bool:
    return len(w) == 2 * n and tuple(w[:n]) == tuple(w[n:])


def in_fifo(w, n: int) -> bool:
    q: deque = deque()
    for letter in w:
        if letter.tag == "Put":
            if len(q) == n:
                return False
            q.append(letter.value)
        else:
            if not q or q.popleft() != letter.value:
                return False
    return True
