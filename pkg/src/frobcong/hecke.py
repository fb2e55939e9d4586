"""Hecke-type operators on q-expansions and weight-targeting arithmetic.

U_p keeps exponents divisible by p and divides them by p; V_p dilates
exponents by p; T_p = U_p + p^(k-1) V_p on integer-exponent series of even
weight k.  All three act on the 1/24 grid, so U_l works uniformly on the
fractional-exponent series that appear after eta division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import QExpansion


@dataclass(frozen=True)
class WeightTag:
    """Bookkeeping metadata (never numerically verified here)."""

    k: Fraction
    level: int

    def __post_init__(self):
        if Fraction(self.k) * 2 % 1 != 0:
            raise ValueError("weight must be a half-integer")


def U_p(f: QExpansion, p: int) -> QExpansion:
    """a(n) -> a(pn): keeps stored exponents with num divisible by p.

    Precision: coefficient at e is known iff p*e < prec, so the output
    precision is ceil(prec / p).
    """
    prec = -((-f.prec) // p)
    return QExpansion(f.ring,
                      {n // p: c for n, c in f.coeffs.items() if n % p == 0},
                      prec)


def V_p(f: QExpansion, p: int) -> QExpansion:
    """a(n) -> coefficient at p*n: exponent dilation; precision times p."""
    return QExpansion(f.ring, {n * p: c for n, c in f.coeffs.items()}, f.prec * p)


def T_p(f: QExpansion, p: int, k: int) -> QExpansion:
    """T_p f = U_p f + p^(k-1) V_p f, truncated to U_p's precision."""
    if k < 2 or k % 2:
        raise ValueError("T_p requires an even integer weight k >= 2")
    if any(n % 24 for n in f.coeffs):
        raise ValueError("T_p requires integer exponents")
    u = U_p(f, p)
    v = V_p(f, p).scale(p ** (k - 1))
    return u + v  # addition keeps min(precisions) = the U-part's precision


def target_weight(ell: int) -> int:
    """The unique positive integer w with

        w ≡ (ell*ellbar - 1)/2  (mod ell - 1)   and   w <= ell + ellbar/2 - 3/(2 ell),

    where ellbar = ell mod 24 in {1..23}; it equals (ell + ellbar - 2)/2.
    Both properties are asserted.
    """
    if ell < 5:
        raise ValueError("ell must be a prime >= 5")
    ellbar = ell % 24
    w = (ell + ellbar - 2) // 2
    if 2 * w != ell + ellbar - 2:
        raise AssertionError("ell + ellbar is odd; impossible for primes >= 5")
    # congruence (filtration class) and filtration bound
    if (w - (ell * ellbar - 1) // 2) % (ell - 1):
        raise AssertionError(f"target weight congruence fails at ell={ell}")
    if Fraction(w) > ell + Fraction(ellbar, 2) - Fraction(3, 2 * ell):
        raise AssertionError(f"target weight bound fails at ell={ell}")
    # uniqueness within the congruence class: the previous candidate must be
    # nonpositive and the next must violate the bound
    if w - (ell - 1) > 0:
        raise AssertionError(f"target weight not unique at ell={ell} (below)")
    if Fraction(w + ell - 1) <= ell + Fraction(ellbar, 2) - Fraction(3, 2 * ell):
        raise AssertionError(f"target weight not unique at ell={ell} (above)")
    return w


def filtration_u_bound(w: int, ell: int) -> Fraction:
    """Filtration bound for f|U_ell: (w - 1)/ell + ell, exact rational."""
    if w < 1:
        raise ValueError("w must be >= 1")
    return Fraction(w - 1, ell) + ell
