"""Orbit-finite nominal sets over the rationals with their order, and automata on them."""

from .atoms import MonotoneMap, Rational, monotone_interpolate, rational
from .automata import (
    NominalDFA, accepts, equivalent, minimise, moore, quotient, refine_relation, trim,
)
from .eqmap import EqMap, map_add, map_apply, map_from_function
from .fileformat import parse, serialize
from .generators import (
    RandomConfig, gen_fifo, gen_formula, gen_lint, gen_lmax, gen_random, gen_ww,
)
from .learning import DFAOracle, learn
from .nomset import (
    NomSet, contains, intersection, minus, nomset_filter, nomset_map, product,
    product_profile, profile, subset, union,
)
from .orbits import (
    ATOM, AtomSchema, AtomSetSchema, ListSchema, NIL, PairSchema, SumSchema,
    Tagged, Unit, UnitSchema, act, canonical_element, get_element, support, to_orbit,
)

__version__ = "0.1.0"
