"""Exact integer bookkeeping for classes, twists and pairings.

A class is an integer combination m [1] + n [p] in the ordered basis of the
unit and the bump projection.  Pairing a class against the family member
with parameter hbar + b is pure arithmetic in (m, n, b) plus one real
parameter, and the twist endomorphism acts by a unipotent integer matrix.
The twist generator direction is fixed by the compatibility identity
pairing(twist(x, b), hbar, 0) = pairing(x, hbar, b), which forces the
matrix [[1, -1], [0, 1]] for the generator with the closed-form pairing
used here.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class KClass:
    """m copies of the unit class plus n copies of the bump-projection class."""

    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise TypeError("class coordinates must be integers")


def _check_fraction(hbar):
    frac = hbar - math.floor(hbar)
    if min(frac, 1.0 - frac) <= 1e-9:
        raise ValueError(f"hbar={hbar} is integer; the bump-projection class degenerates")
    return frac


def twist(x, b):
    """Twist endomorphism on classes: (m, n) -> (m - b n, n).

    Powers compose additively, twist(twist(x, a), b) = twist(x, a + b).
    """
    return KClass(x.m - int(b) * x.n, x.n)


def k_pairing(x, hbar, b=0):
    """Closed-form pairing of the class with the family member at hbar + b.

    Equals m + n (frac(hbar) - (hbar + b)); at b = 0 the projection class
    alone gives -floor(hbar), the integer staircase.
    """
    frac = _check_fraction(hbar)
    return x.m + x.n * (frac - (float(hbar) + int(b)))


def trace_value(x, hbar):
    """Value of the canonical trace on the class: m + n frac(hbar)."""
    frac = hbar - math.floor(hbar)
    return x.m + x.n * frac


def gap_label_witness(value, hbar, q_max=10**6, tol=1e-9):
    """Integers (p, q) with |value - p - q hbar| <= tol, or None.

    Searches |q| <= q_max exhaustively; the label group of the deformation
    is exactly the set of such combinations.
    """
    qs = np.arange(-q_max, q_max + 1, dtype=np.int64)
    residual = value - qs * hbar
    ps = np.rint(residual)
    err = np.abs(residual - ps)
    k = int(err.argmin())
    if err[k] <= tol:
        return int(ps[k]), int(qs[k])
    return None


def in_gap_label_group(value, hbar, q_max=10**6, tol=1e-9):
    """Whether the value lies in Z + hbar Z within tol (bounded search)."""
    return gap_label_witness(value, hbar, q_max=q_max, tol=tol) is not None


def classical_pairing(dim, c1, n):
    """Undeformed pairing with the n-th family member: dim + n * c1."""
    return int(dim) + int(n) * int(c1)
