"""Numerical tolerances shared across modules.

All boundary predicates read their defaults from :data:`DEFAULT`. Pass a
modified copy (``dataclasses.replace(DEFAULT, boundary=1e-6)``) to the
functions that accept a ``settings`` argument to change them in one place.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    boundary: float = 1e-8          # Shilov / closure / royal predicates
    symmetric: float = 1e-10        # ||x - x^t|| for R_II membership
    unimodular: float = 1e-12       # |rotation| == 1
    pos_def: float = 1e-12          # smallest eigenvalue for sqrt
    center_margin: float = 1e-8     # automorphism centers need ||b|| < 1 - margin
    resolvent: float = 1e-14        # |det(1 - b* x)| floor
    denominator: float = 1e-14      # G2 automorphism denominator floor
    trim: float = 1e-12             # relative coefficient trimming
    snap: float = 1e-10             # zeros this close to T count as boundary zeros
    root_cluster: float = 1e-6      # merge radius for repeated polynomial roots
    discriminant: float = 1e-10     # s^2 - 4p treated as zero
    fit_condition: float = 1e12     # rational_fit conditioning ceiling


DEFAULT = Tolerances()
