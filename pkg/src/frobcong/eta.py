"""Eta quotients: expansions, cusp orders, and holomorphy bookkeeping.

An eta quotient prod eta(delta z)^{r_delta} on Gamma_0(N) (delta | N) has
order at the cusp a/c given by

    (N / (24 gcd(c^2, N))) * sum_delta gcd(c, delta)^2 r_delta / delta,

normalized so that the order at infinity (c = N) is the leading exponent
sum delta r_delta / 24 of the q-expansion.  Orders are exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from sympy import divisors, totient

from .arith import dedekind_psi, factorint
from .series import QExpansion, eta_power


class EtaQuotient:
    """prod_delta eta(delta z)^{r_delta}, with an attached level."""

    def __init__(self, factors, level=None):
        fac = {}
        for delta, r in (factors.items() if isinstance(factors, dict) else factors):
            delta, r = int(delta), int(r)
            if delta <= 0:
                raise ValueError("delta must be positive")
            if r:
                fac[delta] = fac.get(delta, 0) + r
        fac = {d: r for d, r in sorted(fac.items()) if r}
        if level is None:
            level = lcm(*fac.keys()) if fac else 1
        level = int(level)
        for d in fac:
            if level % d:
                raise ValueError(f"factor eta({d}z) does not divide the level {level}")
        self.factors = fac
        self.level = level

    @property
    def weight_times_2(self):
        return sum(self.factors.values())

    @property
    def weight(self):
        return Fraction(self.weight_times_2, 2)

    def order_at_cusp(self, cusp):
        """Order of vanishing at the cusp a/c (only c matters on Gamma_0(N)).

        Accepts a Fraction, an (a, c) pair, the integer 0 (the cusp 0, c=1),
        or the string "oo" / None for infinity (c = N).
        """
        N = self.level
        if cusp in ("oo", None):
            c = N
        elif isinstance(cusp, Fraction):
            c = cusp.denominator
        elif isinstance(cusp, tuple):
            a, c = cusp
            g = gcd(a, c)
            c = abs(c // g) if g else abs(c)
        elif isinstance(cusp, int):
            c = 1  # any integer cusp is a/1, equivalent to 0
        else:
            raise TypeError(f"unsupported cusp spec {cusp!r}")
        if c == 0:
            c = N  # a/0 is the cusp at infinity
        if N % c:
            raise ValueError(f"cusp denominator {c} does not divide the level {N}")
        total = Fraction(0)
        for delta, r in self.factors.items():
            total += Fraction(gcd(c, delta) ** 2 * r, delta)
        return Fraction(N, 24 * gcd(c * c, N)) * total

    def order_at_infinity(self):
        return self.order_at_cusp("oo")

    def cusp_classes(self):
        """(c, multiplicity) with multiplicity = phi(gcd(c, N/c)); the
        denominators c | N classify Gamma_0(N)-cusp classes."""
        N = self.level
        return [(c, int(totient(gcd(c, N // c)))) for c in divisors(N)]

    def total_vanishing_order(self):
        """Sum of cusp orders over all Gamma_0(N) cusp classes (with
        multiplicity); equals k*N*prod(1+1/p)/12 for an eta quotient."""
        return sum(mult * self.order_at_cusp((1, c)) for c, mult in self.cusp_classes())

    def valence_bound(self):
        """k * N * prod_{p|N}(1 + 1/p) / 12 as an exact rational."""
        return Fraction(self.weight_times_2, 2) * Fraction(dedekind_psi(self.level), 12)

    def is_holomorphic(self):
        return all(self.order_at_cusp((1, c)) >= 0 for c, _ in self.cusp_classes())

    def is_cuspidal(self):
        return all(self.order_at_cusp((1, c)) > 0 for c, _ in self.cusp_classes())

    def character_is_trivial(self):
        """True when the quotient transforms with trivial character on
        Gamma_0(N): sum delta r ≡ 0 (24), sum (N/delta) r ≡ 0 (24), even
        weight, and prod delta^{r_delta} a rational square."""
        N = self.level
        if self.weight_times_2 % 2:
            return False
        if sum(d * r for d, r in self.factors.items()) % 24:
            return False
        if sum((N // d) * r for d, r in self.factors.items()) % 24:
            return False
        vals = {}
        for d, r in self.factors.items():
            for p, e in factorint(d).items():
                vals[p] = vals.get(p, 0) + e * r
        return all(v % 2 == 0 for v in vals.values())

    def expand(self, prec):
        """q-expansion over ZZ to precision prec (num units on the 1/24 grid).

        Each factor is expanded to exactly the precision that makes the
        product's propagated precision equal prec.
        """
        from .rings import ZZ

        if not self.factors:
            return QExpansion.one(ZZ, prec)
        lead_total = sum(d * r for d, r in self.factors.items())
        out = None
        for delta, r in self.factors.items():
            part = eta_power(delta, r, prec - (lead_total - delta * r))
            out = part if out is None else out * part
        if out.prec < prec:
            raise AssertionError("internal precision shortfall in eta expansion")
        return out.truncate(prec) if out.prec > prec else out

    def __repr__(self):
        body = " * ".join(f"eta({d}z)^{r}" if r != 1 else f"eta({d}z)"
                          for d, r in self.factors.items())
        return f"EtaQuotient({body or '1'}, level={self.level})"
