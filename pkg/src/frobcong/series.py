"""Truncated q-series on the 1/24 exponent grid.

Every series in the package lives on a common grid: the term q^(n/24) is
stored under the integer key n ("num").  Expansions in integer powers of q
simply have all keys divisible by 24.  Precision is an exponent bound, not
a term count: terms with num >= prec are unknown, never assumed zero, and
every operation propagates the exact guaranteed precision.
"""

from __future__ import annotations

from math import gcd

from . import kernels
from .rings import ZZ, ExactIntegers, PrimeField


class PrecisionError(ValueError):
    pass


class RingMismatchError(TypeError):
    pass


class NonUnitError(ZeroDivisionError):
    pass


class EmptySeriesError(ValueError):
    pass


class QExpansion:
    """Immutable truncated series sum c_n q^(n/24), n < prec."""

    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs, prec):
        prec = int(prec)
        clean = {}
        for n, c in coeffs.items() if isinstance(coeffs, dict) else coeffs:
            n = int(n)
            if n >= prec:
                continue
            c = ring.coerce(c)
            if not ring.is_zero(c):
                clean[n] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, *a):
        raise AttributeError("QExpansion is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring, prec):
        return cls(ring, {}, prec)

    @classmethod
    def one(cls, ring, prec):
        return cls(ring, {0: ring.one}, prec)

    @classmethod
    def monomial(cls, ring, num, prec, coeff=None):
        return cls(ring, {num: ring.one if coeff is None else coeff}, prec)

    @classmethod
    def from_integer_coeffs(cls, ring, values, prec_n, start=0):
        """Series sum values[i] q^(start + i) in integer powers of q,
        known strictly below q^prec_n."""
        return cls(ring, {24 * (start + i): v for i, v in enumerate(values)},
                   24 * prec_n)

    # -- basic structure ----------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        """Leading exponent num, or None for a (known-)zero series."""
        return min(self.coeffs) if self.coeffs else None

    def _lead_or_prec(self):
        return min(self.coeffs) if self.coeffs else self.prec

    def lead_coeff(self):
        if not self.coeffs:
            raise EmptySeriesError("zero series has no leading coefficient")
        return self.coeffs[min(self.coeffs)]

    def stride(self):
        """gcd of exponent offsets from the leading term (0 for <=1 term)."""
        if len(self.coeffs) <= 1:
            return 0
        lead = min(self.coeffs)
        g = 0
        for n in self.coeffs:
            g = gcd(g, n - lead)
        return g

    def items(self):
        return sorted(self.coeffs.items())

    def __getitem__(self, num):
        num = int(num)
        if num >= self.prec:
            raise PrecisionError(
                f"coefficient at q^({num}/24) is beyond precision {self.prec}/24")
        return self.coeffs.get(num, self.ring.zero)

    def coeff_q(self, n):
        """Coefficient of q^n (integer power)."""
        return self[24 * n]

    def __call__(self, n):
        return self.coeff_q(n)

    def __eq__(self, other):
        return (isinstance(other, QExpansion) and other.ring == self.ring
                and other.prec == self.prec and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.ring, self.prec, tuple(sorted(self.coeffs.items()))))

    def agrees(self, other, upto=None):
        """Equality of all coefficients below min(precisions, upto)."""
        if self.ring != other.ring:
            return False
        bound = min(self.prec, other.prec)
        if upto is not None:
            bound = min(bound, upto)
        for n in set(self.coeffs) | set(other.coeffs):
            if n < bound:
                if self.coeffs.get(n, self.ring.zero) != other.coeffs.get(n, self.ring.zero):
                    return False
        return True

    # -- ring operations ----------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_ring(other)
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = self.ring.add(out.get(n, self.ring.zero), c)
        return QExpansion(self.ring, out, prec)

    def __sub__(self, other):
        self._check_ring(other)
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = self.ring.sub(out.get(n, self.ring.zero), c)
        return QExpansion(self.ring, out, prec)

    def __neg__(self):
        return QExpansion(self.ring, {n: self.ring.neg(c) for n, c in self.coeffs.items()},
                          self.prec)

    def scale(self, c):
        c = self.ring.coerce(c)
        return QExpansion(self.ring,
                          {n: self.ring.mul(v, c) for n, v in self.coeffs.items()},
                          self.prec)

    def shift(self, dnum):
        """Multiply by q^(dnum/24)."""
        dnum = int(dnum)
        return QExpansion(self.ring, {n + dnum: c for n, c in self.coeffs.items()},
                          self.prec + dnum)

    def truncate(self, prec):
        if prec > self.prec:
            raise PrecisionError(f"cannot extend precision {self.prec} -> {prec}")
        return QExpansion(self.ring, self.coeffs, prec)

    # -- multiplication -----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_ring(other)
        a, b = self, other
        la, lb = a._lead_or_prec(), b._lead_or_prec()
        prec = min(a.prec + lb, b.prec + la)
        if not a.coeffs or not b.coeffs:
            return QExpansion(self.ring, {}, prec)
        g = gcd(a.stride(), b.stride())
        base = la + lb
        if g == 0:
            # at most one term each
            out = {}
            ca, cb = a.coeffs[la], b.coeffs[lb]
            if base < prec:
                out[base] = self.ring.mul(ca, cb)
            return QExpansion(self.ring, out, prec)
        nout = (prec - base + g - 1) // g
        if nout <= 0:
            return QExpansion(self.ring, {}, prec)
        da = a._dense(la, g, min(nout, (a.prec - la + g - 1) // g))
        db = b._dense(lb, g, min(nout, (b.prec - lb + g - 1) // g))
        ring = self.ring
        if isinstance(ring, PrimeField):
            arr = kernels.conv_mod(da, db, ring.ell, nout)
            out = {base + g * i: int(v) for i, v in enumerate(arr) if v}
        elif isinstance(ring, ExactIntegers):
            arr = kernels.conv_exact(da, db, nout)
            out = {base + g * i: v for i, v in enumerate(arr) if v}
        else:
            arr = [ring.zero] * nout
            for i, ca in enumerate(da):
                if ring.is_zero(ca):
                    continue
                lim = min(len(db), nout - i)
                for j in range(lim):
                    if not ring.is_zero(db[j]):
                        arr[i + j] = ring.add(arr[i + j], ring.mul(ca, db[j]))
            out = {base + g * i: v for i, v in enumerate(arr) if not ring.is_zero(v)}
        return QExpansion(self.ring, out, prec)

    __rmul__ = __mul__

    def _dense(self, lead, g, n):
        """Coefficients at lead, lead+g, ..., lead+(n-1)g as a list."""
        zero = self.ring.zero
        arr = [zero] * n
        for e, c in self.coeffs.items():
            k = e - lead
            if k % g:
                raise AssertionError("exponent off the declared stride lattice")
            i = k // g
            if 0 <= i < n:
                arr[i] = c
        return arr

    # -- inversion ----------------------------------------------------------

    def invert(self):
        """Multiplicative inverse; requires a unit leading coefficient.
        Result precision: prec - 2*lead."""
        if not self.coeffs:
            raise NonUnitError("cannot invert a series with no known nonzero term")
        ring = self.ring
        lead = min(self.coeffs)
        c0 = self.coeffs[lead]
        try:
            c0_inv = ring.inv(c0)
        except ZeroDivisionError as exc:
            raise NonUnitError(f"leading coefficient {c0!r} is not a unit") from exc
        g = self.stride()
        prec_out = self.prec - 2 * lead
        if g == 0:
            return QExpansion(ring, {-lead: c0_inv}, prec_out)
        na = (self.prec - lead + g - 1) // g
        nout = (prec_out + lead + g - 1) // g  # exponents -lead + g*i < prec_out
        A = self._dense(lead, g, na)
        if isinstance(ring, PrimeField) and nout > 4096:
            import numpy as np

            arr = kernels.series_inverse_mod(np.asarray(A, dtype=np.int64), ring.ell, nout)
            out = {-lead + g * i: int(v) for i, v in enumerate(arr) if v}
            return QExpansion(ring, out, prec_out)
        B = [ring.zero] * nout
        B[0] = c0_inv
        support = [k for k in range(1, len(A)) if not ring.is_zero(A[k])]
        neg_c0_inv = ring.neg(c0_inv)
        for n in range(1, nout):
            acc = ring.zero
            for k in support:
                if k > n:
                    break
                acc = ring.add(acc, ring.mul(A[k], B[n - k]))
            if not ring.is_zero(acc):
                B[n] = ring.mul(neg_c0_inv, acc)
        out = {-lead + g * i: v for i, v in enumerate(B) if not ring.is_zero(v)}
        return QExpansion(ring, out, prec_out)

    def __pow__(self, e):
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e < 0:
            return self.invert() ** (-e)
        if e == 0:
            lead = self._lead_or_prec()
            return QExpansion.one(self.ring, self.prec - lead)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- change of ring -----------------------------------------------------

    def reduce_mod(self, ell):
        """Coefficientwise reduction of an integer series into GF(ell)."""
        if not isinstance(self.ring, ExactIntegers):
            raise RingMismatchError("reduce_mod applies to integer series")
        fld = PrimeField(ell)
        return QExpansion(fld, {n: c % ell for n, c in self.coeffs.items()}, self.prec)

    def lift_to_zz(self):
        """Lift a prime-field series to ZZ with representatives in [0, ell)."""
        if not isinstance(self.ring, PrimeField):
            raise RingMismatchError("lift_to_zz applies to prime-field series")
        return QExpansion(ZZ, dict(self.coeffs), self.prec)

    def map_into(self, ring):
        """Coerce every coefficient into the given ring."""
        return QExpansion(ring, {n: ring.coerce(c) for n, c in self.coeffs.items()},
                          self.prec)

    # -- display ------------------------------------------------------------

    def __repr__(self):
        def fmt_exp(n):
            if n == 0:
                return ""
            if n % 24 == 0:
                p = n // 24
                return "q" if p == 1 else f"q^{p}"
            return f"q^({n}/24)"

        parts = []
        for n, c in self.items()[:8]:
            e = fmt_exp(n)
            parts.append(f"{c!r}{'*' if e and str(c) not in ('1',) else ''}{e}"
                         if e else f"{c!r}")
        if len(self.coeffs) > 8:
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        tail = f"O(q^({self.prec}/24))" if self.prec % 24 else f"O(q^{self.prec // 24})"
        return f"<{body} + {tail} over {self.ring}>"


# ---------------------------------------------------------------------------
# Euler products and the Dedekind eta function


def euler_power(delta, r, prec, ring=ZZ):
    """prod_{n>=1} (1 - q^(delta*n))^r to exponent prec/24 (prec in num units;
    delta*n contributes at num 24*delta*n).  No eta prefactor."""
    if prec <= 0:
        raise EmptySeriesError("precision must be positive")
    step = 24 * delta
    terms = {}
    for g, s in kernels.generalized_pentagonal((prec - 1) // step):
        n = step * g
        if n < prec:
            terms[n] = s
    E = QExpansion(ring, terms, prec)
    if r == 1:
        return E
    if r >= 0:
        return E ** r
    return (E ** (-r)).invert()


def eta_power(delta, r, prec):
    """Expansion of eta(delta*z)^r over ZZ to precision prec (num units).

    eta(delta z)^r = q^(delta*r/24) * prod(1 - q^(delta n))^r; the leading
    exponent is delta*r/24.  Negative r goes through series inversion.
    """
    delta = int(delta)
    r = int(r)
    prec = int(prec)
    if delta <= 0:
        raise ValueError("delta must be a positive integer")
    lead = delta * r
    if r > 0 and prec <= lead:
        raise EmptySeriesError(
            f"precision {prec}/24 does not reach the leading exponent {lead}/24")
    if r == 0:
        return QExpansion.one(ZZ, prec)
    return euler_power(delta, r, prec - lead).shift(lead)


def partition_series(N, ring=ZZ):
    """sum_{n>=0} p(n) q^n to q^N inclusive (integer-grid series)."""
    if N < 0:
        raise ValueError("negative precision")
    prec = 24 * (N + 1)
    if isinstance(ring, PrimeField) and N > 4096:
        import numpy as np  # noqa: F401

        tab = kernels.partition_mod_table(N, ring.ell)
        return QExpansion(ring, {24 * n: int(v) for n, v in enumerate(tab) if v}, prec)
    return euler_power(1, 1, prec, ring=ring).invert()
