"""Numerics for the symmetrized bidisc G2.

Modules:

* :mod:`~symbidisc.scalar` Moebius maps, Blaschke products, rational fitting;
* :mod:`~symbidisc.mat2` batched 2x2 complex matrix helpers;
* :mod:`~symbidisc.domains` membership of G2, its Shilov boundary, R_I, R_II;
* :mod:`~symbidisc.automorphisms` Cartan-domain and G2 automorphisms;
* :mod:`~symbidisc.family` the Schur-parametrized family of G2-inner discs;
* :mod:`~symbidisc.analysis` innerness, properness, royal intersections, lifting;
* :mod:`~symbidisc.solver` Pick problems in G2 by scaling bisection;
* :mod:`~symbidisc.cli` the ``symbidisc`` command.
"""
from .domains import (CLOSURE, INTERIOR, G2Point, g2_contains, pi_map, royal_detect,
                      shilov_distance, shilov_g2_contains, sym_map)
from .errors import SymbidiscError
from .family import ExtremalDisc, SchurParams, family_eval, family_sample
from .scalar import BlaschkeProduct, MoebiusMap, RationalFn, blaschke_extract, rational_fit
from .solver import PickProblem, SolveResult, solve_pick

__version__ = "0.1.0"

__all__ = [
    "CLOSURE", "INTERIOR", "G2Point", "g2_contains", "pi_map", "royal_detect",
    "shilov_distance", "shilov_g2_contains", "sym_map", "SymbidiscError",
    "ExtremalDisc", "SchurParams", "family_eval", "family_sample",
    "BlaschkeProduct", "MoebiusMap", "RationalFn", "blaschke_extract", "rational_fit",
    "PickProblem", "SolveResult", "solve_pick",
]
