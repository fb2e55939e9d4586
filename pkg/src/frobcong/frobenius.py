"""Generating functions for m-colored generalized Frobenius partitions.

cphi_m(n) counts two-rowed symbols (a_1..a_r | b_1..b_r) with entries from
m copies of the nonnegative integers, each row strictly decreasing in the
colored order, and n = r + sum(a_i) + sum(b_i).  The generating function is

    sum cphi_m(n) q^n = (sum r_m(n) q^n) / prod(1 - q^n)^m,

where r_m(n) counts representations of n by sum x_i^2 + sum_{i<j} x_i x_j
in m-1 integer variables; on the 1/24 grid this is the eta-quotient form
sum cphi_m((n+m)/24) q^(n/24) = eta^{-m}(z) * sum r_m(n) q^n.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .rings import ZZ
from .series import QExpansion, euler_power, partition_series


@dataclass(frozen=True)
class FrobeniusParams:
    """m colors, N coefficients. m >= 1; modular pipelines need odd m."""

    m: int
    N: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if self.N < 1:
            raise ValueError("N must be >= 1")


def r_m_series(m, N, ring=ZZ):
    """sum_{n<N} r_m(n) q^n (integer grid).

    r_m(n) = #{x in Z^(m-1) : sum x_i^2 + sum_{i<j} x_i x_j = n}, via the
    (s, t) dynamic program on 2Q(x) = (sum x_i)^2 + sum x_i^2.
    """
    if m < 2:
        raise ValueError("r_m_series requires m >= 2")
    if N < 1:
        raise ValueError("N must be >= 1")
    vals = kernels.theta_rm(m, N - 1)
    return QExpansion(ring, {24 * n: int(v) for n, v in enumerate(vals) if v}, 24 * N)


def r_m_brute_force(m, N):
    """Reference lattice enumeration of r_m(n), n < N (small inputs only)."""
    from math import isqrt

    nvars = m - 1
    if nvars * (2 * isqrt(2 * (N - 1)) + 1) ** min(nvars, 6) > 10 ** 8:
        raise ValueError("brute-force lattice enumeration too large")
    vals = kernels.theta_rm_exact(m, N - 1)
    return QExpansion(ZZ, {24 * n: v for n, v in enumerate(vals) if v}, 24 * N)


def cphi_series(m, N, ring=ZZ):
    """sum_{n<N} cphi_m(n) q^n.  For m = 1 this is the partition series."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if m == 1:
        return partition_series(N - 1, ring=ring)
    num = r_m_series(m, N, ring=ring)
    den = euler_power(1, m, 24 * N, ring=ring)
    return num * den.invert()


def cphi_grid_series(m, N24, ring=ZZ):
    """The 1/24-grid form of the generating identity:

        sum cphi_m((n+m)/24) q^(n/24)  =  eta^{-m}(z) * sum r_m(n) q^n,

    returned to precision N24 (num units).  Exponents sit on n ≡ -m (24).
    """
    n_int = (N24 + m) // 24 + 1
    return cphi_series(m, n_int, ring=ring).shift(-m).truncate(N24)


def cphi_closed_form(m, N):
    """Closed-form series for m in {5, 7, 11, 13}:

        cphi_m(n) = p(n/m) + m p(mn - (m^2-1)/24)          (m = 5, 7, 11)
        cphi_13(n) = p(n/13) + 13 p(13n - 7) + 26 a(n),

    with a(n) the coefficients of q prod (1-q^(13n))/(1-q^n)^2.
    """
    if m not in (5, 7, 11, 13):
        raise ValueError(f"closed form only for m in {{5,7,11,13}}, got {m}")
    beta = (m * m - 1) // 24
    ptab = partition_series(m * (N - 1) + 1)
    out = {}
    for n in range(N):
        total = 0
        if n % m == 0:
            total += ptab.coeff_q(n // m)
        arg = m * n - beta
        if arg >= 0:
            total += m * ptab.coeff_q(arg)
        if total:
            out[24 * n] = total
    series = QExpansion(ZZ, out, 24 * N)
    if m == 13:
        prod = euler_power(13, 1, 24 * N) * euler_power(1, -2, 24 * N)
        a_series = prod.shift(24)  # q * prod(1-q^13n)/(1-q^n)^2
        series = series + a_series.truncate(24 * N).scale(26)
    return series


def brute_force_cphi(m, n):
    """Count m-colored Frobenius symbols of size n by direct enumeration.

    A symbol is a pair of rows of equal length r built from colored
    nonnegative integers (value with one of m colors), each row strictly
    decreasing in the order that compares (value, color) lexicographically;
    n = r + sum of all entries' values.  Guarded to n <= 12.
    """
    if n > 12:
        raise ValueError("brute_force_cphi is an oracle; n <= 12 required")
    if n < 0:
        return 0
    if n == 0:
        return 1
    rows = _rows_by_len_sum(m, n, n - 1)
    total = 0
    # row length r contributes r to n; remaining n - r split between rows
    for r in range(1, n + 1):
        budget = n - r
        for s_top in range(budget + 1):
            count_top = rows.get((r, s_top), 0)
            if count_top:
                total += count_top * rows.get((r, budget - s_top), 0)
    return total


def _rows_by_len_sum(m, max_len, budget):
    """(length, sum) -> number of strictly decreasing colored rows, by
    depth-first enumeration over entries (v, c) in increasing order (a
    strictly decreasing row is exactly an increasing-entry subset read
    backwards).  Sums are pruned at `budget`."""
    entries = [(v, c) for v in range(budget + 1) for c in range(m)]
    out = {(0, 0): 1}

    def rec(start, length, s):
        for idx in range(start, len(entries)):
            v, _ = entries[idx]
            s2 = s + v
            if s2 > budget:
                break  # entries are sorted by value; no later entry fits
            l2 = length + 1
            key = (l2, s2)
            out[key] = out.get(key, 0) + 1
            if l2 < max_len:
                rec(idx + 1, l2, s2)

    rec(0, 0, 0)
    return out


def A_m_series(m, N):
    """A_m = prod(1-q^n)^m * sum cphi_m(n) q^n, computed both through the
    cphi series and directly as the theta series r_m; the two must agree
    (they are the same identity read in two directions)."""
    if m % 2 == 0:
        raise ValueError("A_m is used for odd m")
    if m == 1:
        direct = euler_power(1, 1, 24 * N) * partition_series(N - 1)
        return direct.truncate(24 * N)
    via_cphi = (euler_power(1, m, 24 * N) * cphi_series(m, N)).truncate(24 * N)
    direct = r_m_series(m, N)
    if via_cphi != direct:
        raise ArithmeticError(
            "A_m consistency failure between the cphi and theta pipelines "
            f"(m={m}, N={N})")
    return direct


def A_m_weight(m):
    """Weight bookkeeping for A_m: it lives in weight (m-1)/2."""
    from fractions import Fraction

    return Fraction(m - 1, 2)


def cphi_mod_table(m, N, ell, route="auto"):
    """cphi_m(n) mod ell for 0 <= n < N as an int64 numpy array; the fast
    path used by scanners (values reduced before convolution).

    route="closed" uses the partition-function closed forms (available for
    m in {1, 5, 7, 11, 13}); route="theta" divides the lattice theta series
    by the Euler product, which works for every m but is memory-bound in N.
    The two routes are independent and are compared in tests.
    """
    import numpy as np

    if N <= 0:
        raise ValueError("need N >= 1")
    if route == "auto":
        route = "closed" if m in (1, 5, 7, 11, 13) else "theta"
    if route == "closed":
        if m == 1:
            return kernels.partition_mod_table(N - 1, ell)[:N] % ell
        if m in (5, 7, 11):
            beta = (m * m - 1) // 24
            p = kernels.partition_mod_table(max(m * (N - 1) - beta, 0), ell)
            out = np.zeros(N, dtype=np.int64)
            out[::m] = p[: (N - 1) // m + 1]
            ns = np.arange(1, N, dtype=np.int64)
            out[1:] += m * p[m * ns - beta]
            return out % ell
        if m == 13:
            p = kernels.partition_mod_table(max(13 * (N - 1) - 7, 0), ell)
            out = np.zeros(N, dtype=np.int64)
            out[::13] = p[: (N - 1) // 13 + 1]
            ns = np.arange(1, N, dtype=np.int64)
            out[1:] += 13 * p[13 * ns - 7]
            # 26 a(n) with sum a(n) q^n = q prod (1-q^(13n))/(1-q^n)^2
            E = kernels.euler_series_mod(N - 1, ell)
            inv = kernels.series_inverse_mod(E, ell, N)
            c = kernels.conv_mod(inv, inv, ell, N)
            e13 = np.zeros(N, dtype=np.int64)
            for g, sign in kernels.generalized_pentagonal((N - 1) // 13):
                e13[13 * g] = sign % ell
            a = kernels.conv_mod(e13, c, ell, N)
            out[1:] += 26 * a[: N - 1]
            return out % ell
        raise ValueError(f"no closed form for m = {m}")
    if route != "theta":
        raise ValueError(f"unknown route {route!r}")
    r = np.asarray(kernels.theta_rm(m, N - 1, mod=ell), dtype=np.int64)
    E = kernels.euler_series_mod(N - 1, ell)
    acc, b, e = None, E, m
    while e:
        if e & 1:
            acc = b if acc is None else kernels.conv_mod(acc, b, ell, N)
        e >>= 1
        if e:
            b = kernels.conv_mod(b, b, ell, N)
    inv = kernels.series_inverse_mod(acc, ell, N)
    return kernels.conv_mod(r, inv, ell, N)
