"""Large-horizon coefficients for quadratic-class congruence scans.

The constructed form for an admissible pair (m, ell) is
F = (sum_i alpha_i B_i) / eta(m z)^(ell mod 24) taken mod ell, with the
B_i eta monomials; its u = q^(1/24) coefficients on the admissible
residue class are the reduced colored counts cphi_m((ell n + m)/24).
Scanning the quadratic classes of n mod p reads F at u-exponents p^2 n,
far beyond exact-series range, so this module rebuilds F on the integer
q-grid with the numpy convolution kernels (exact mod ell, see
_kernels_py) and revalidates the long series two independent ways:

  - every admissible exponent the exact pipeline reached must agree
    (the pipeline has already verified those against the colored counts
    coefficient by coefficient);
  - sampled far coefficients are recomputed from the closed form using
    exact Hardy-Ramanujan-Rademacher partition values (sympy), a route
    that shares no code with the convolution build.

`atkin_provider` packages the result as the `provider` callback accepted
by `pipeline.scan_atkin_congruence`.
"""

from __future__ import annotations

import math
import time

import numpy as np
from scipy import fft as _sfft
from sympy.functions.combinatorial.numbers import partition as _partition

from .arith import is_prime, kronecker, legendre
from .eta import EtaQuotient
from .kernels import (conv_mod, euler_series_mod, generalized_pentagonal,
                      series_inverse_mod)
from .pipeline import ell_bar, run_pipeline
from .spaces import basis_weight12_level5

__all__ = [
    "LongCongruenceForm", "atkin_provider", "big_prime_values",
    "cphi_point_mod", "dense_euler_power", "eta_monomial_grid",
    "folded_coordinates", "partition_power_table", "probe_candidate_primes",
    "scan_provider", "validate_big_prime_path",
]

# closed forms cphi_m(n) = p(n/m) + m p(mn - beta) need only partition values
_CLOSED_BETA = {1: 0, 5: 1, 7: 2, 11: 5}


def _p_mod(n, ell):
    if n < 0:
        return 0
    return int(_partition(n)) % ell


def cphi_point_mod(m, n, ell):
    """cphi_m(n) mod ell at a single argument via exact HRR partition
    values; closed forms exist for m in {1, 5, 7, 11}."""
    if m not in _CLOSED_BETA:
        raise ValueError(f"no single-point closed form for m = {m}")
    if n < 0:
        return 0
    if m == 1:
        return _p_mod(n, ell)
    v = m * _p_mod(m * n - _CLOSED_BETA[m], ell)
    if n % m == 0:
        v += _p_mod(n // m, ell)
    return v % ell


def _euler_pow(d, r, W, ell, cache):
    """prod_n (1 - q^(d n))^r mod ell on the integer q-grid, length W,
    computed on the d-dilated grid and memoized per (d, r)."""
    key = (d, r)
    if key in cache:
        arr = cache[key]
        if len(arr) >= W:
            return arr[:W]
    T = (W - 1) // d + 1
    base = np.asarray(euler_series_mod(T - 1, ell), dtype=np.int64)
    acc = None
    sq = base
    e = r
    while e:
        if e & 1:
            acc = sq if acc is None else conv_mod(acc, sq, ell, T)
        e >>= 1
        if e:
            sq = conv_mod(sq, sq, ell, T)
    if acc is None:  # r == 0
        acc = np.zeros(T, dtype=np.int64)
        acc[0] = 1
    out = np.zeros(W, dtype=np.int64)
    out[::d] = acc[: (W - 1) // d + 1]
    cache[key] = out
    return out


def eta_monomial_grid(factors, W, ell, cache=None):
    """(array, shift) for the eta monomial prod_d eta(d z)^(r_d) mod ell:
    the series is u^shift times the returned length-W q-grid array, with
    shift = sum d*r_d the u-leading exponent.  Exponents must be >= 0."""
    if cache is None:
        cache = {}
    shift = 0
    arr = None
    for d, r in sorted(factors.items()):
        if r < 0:
            raise ValueError("negative eta exponent has no q-grid expansion")
        if r == 0:
            continue
        shift += d * r
        part = _euler_pow(d, r, W, ell, cache)
        arr = part if arr is None else conv_mod(arr, part, ell, W)
    if arr is None:
        arr = np.zeros(W, dtype=np.int64)
        arr[0] = 1
    return arr, shift


# basis factory plus the eta monomial of each basis form, in form order
_BASIS_REGISTRY = {
    (5, 13): (basis_weight12_level5,
              [{1: 24 - 6 * j, 5: 6 * j} for j in range(5)]),
}

_FOLDED_CACHE = {}


def folded_coordinates(m, ell, pipeline_prec=None):
    """Exact pipeline run for (m, ell) with every cleared leading
    coefficient folded back into the echelon-basis coordinates: returns
    (result, basis, monomials, beta) where beta maps each basis leading
    exponent to the mod-ell coefficient of its eta monomial in F.  Cached
    so all long-series builds for the pair share one pipeline run."""
    m, ell = int(m), int(ell)
    if pipeline_prec is None:
        pipeline_prec = 24 * 130
    key = (m, ell, pipeline_prec)
    if key in _FOLDED_CACHE:
        return _FOLDED_CACHE[key]
    entry = _BASIS_REGISTRY.get((m, ell))
    if entry is None:
        raise ValueError(f"no registered basis for the pair ({m}, {ell})")
    factory, monomials = entry
    basis = factory(pipeline_prec + 24)
    result = run_pipeline(m, ell, basis, prec=pipeline_prec)

    F = result.f_ell.series.ring
    beta = {g.lead: a for a, g in zip(result.f_ell.alphas, basis.forms)}
    basis_mod = {g.lead: gm for g, gm in
                 zip(basis.forms, basis.reduce_mod(ell).forms)}
    for j, a in result.cleared:
        gm = basis_mod[24 * j]
        beta[24 * j] = F.sub(beta[24 * j], F.mul(a, F.inv(gm.lead_coeff())))
    beta = {lead: int(v) % ell for lead, v in beta.items()}
    out = (result, basis, monomials, beta)
    _FOLDED_CACHE[key] = out
    return out


class LongCongruenceForm:
    """The series F for (m, ell) on the admissible class, to u-precision
    u_prec, built by convolution mod ell and cross-validated against the
    exact pipeline run that supplies the alphas."""

    def __init__(self, m, ell, u_prec, pipeline_prec=None, spot_checks=2,
                 spot_arg_cap=3_000_000):
        self.m = int(m)
        self.ell = int(ell)
        lb = ell_bar(ell)
        self.residue = (-m * lb) % 24
        result, basis, monomials, beta = folded_coordinates(
            m, ell, pipeline_prec)
        self.pipeline = result

        self.u_prec = int(u_prec)
        W = (self.u_prec - 1 + m * lb) // 24 + 1
        cache = {}
        numer = np.zeros(W, dtype=np.int64)
        for g, factors in zip(basis.forms, monomials):
            quo = EtaQuotient(factors, level=basis.level)
            b = int(beta[g.lead])
            if b == 0:
                continue
            arr, shift = eta_monomial_grid(quo.factors, W, ell, cache)
            if shift % 24 or shift != g.lead:
                raise AssertionError("eta monomial shift disagrees with lead")
            w0 = shift // 24
            numer[w0:] = (numer[w0:] + b * arr[: W - w0]) % ell

        Tm = (W - 1) // m + 1
        den = _euler_pow(m, lb, W, ell, cache)[::m][:Tm]
        inv = np.asarray(series_inverse_mod(den, ell, Tm), dtype=np.int64)
        inv_full = np.zeros(W, dtype=np.int64)
        inv_full[::m] = inv
        self.grid = conv_mod(numer, inv_full, ell, W)
        self._verify_overlap()
        self._spot_check(spot_checks, spot_arg_cap)

    def coeff_u(self, e):
        """Coefficient of q^(e/24) in F, i.e. cphi_m((ell e + m)/24) mod
        ell for admissible e."""
        if e % 24 != self.residue:
            return 0
        if not 0 <= e < self.u_prec:
            raise IndexError(f"u-exponent {e} outside precision {self.u_prec}")
        return int(self.grid[(e + self.m * ell_bar(self.ell)) // 24])

    def provider_values(self, p, ns):
        return [self.coeff_u(p * p * n) for n in ns]

    def _verify_overlap(self):
        art = self.pipeline.artifact
        upto = min(art.series.prec, self.u_prec)
        checked = 0
        for e in range(self.residue, upto, 24):
            if self.coeff_u(e) != int(art.series[e]):
                raise ArithmeticError(
                    f"long series disagrees with the exact pipeline at "
                    f"q^({e}/24)")
            checked += 1
        if checked < 4:
            raise ArithmeticError("overlap with the exact pipeline too short")
        self.overlap_checked = checked

    def _spot_check(self, count, arg_cap):
        self.spots = []
        if count <= 0 or self.m not in _CLOSED_BETA:
            return
        lb = ell_bar(self.ell)
        # largest admissible exponents whose closed form stays within the
        # partition-value cap
        e_cap = (24 * arg_cap - self.m) // self.ell
        e_cap = min(e_cap, self.u_prec - 1)
        e_top = e_cap - (e_cap - self.residue) % 24
        picked = {e_top - 24 * k * max(1, (e_top // 24) // (2 * count))
                  for k in range(count)}
        for e in sorted(picked):
            if e <= self.pipeline.artifact.series.prec:
                continue  # already covered by the overlap check
            arg = (self.ell * e + self.m) // 24
            want = cphi_point_mod(self.m, arg, self.ell)
            got = self.coeff_u(e)
            if got != want:
                raise ArithmeticError(
                    f"long series fails the closed form at q^({e}/24): "
                    f"{got} vs cphi_{self.m}({arg}) = {want} mod {self.ell}")
            self.spots.append((e, arg, got))


def atkin_provider(m, ell, p_max, n_max, pipeline_prec=None, spot_checks=2):
    """Provider callback for scan_atkin_congruence covering primes up to
    p_max and horizons up to n_max: one long series sized for the worst
    case serves every (p, ns) request."""
    form = LongCongruenceForm(m, ell, p_max * p_max * n_max + 1,
                              pipeline_prec=pipeline_prec,
                              spot_checks=spot_checks)

    def provider(p, ns):
        return form.provider_values(p, ns)

    provider.form = form
    return provider


# ---------------------------------------------------------------------------
# blocked path for primes in the thousands
#
# At p ~ 1200 the scan reads F at u-exponents near p^2 * 5000, a dense
# grid of ~3*10^8 entries, and the single-array kernels above run out of
# memory.  Instead each eta monomial of F (denominator folded in) is
# split as
#     eta(z)^a * eta(m z)^e  ->  full-grid Euler power  x  m-grid table,
# with negative e handled by an inverse table, so one coefficient is a
# strided dot product.  The only full-length dense convolution left is
# the Euler power itself, built by blocked overlap-add FFT with a
# rounding-residual guard on every segment.

# Euler powers with a direct construction (supports or one blocked
# convolution of them); enough for every registered monomial.
_BUILDABLE = frozenset((0, 1, 2, 3, 5, 6, 12))


def _euler_support(r, T, ell):
    """Sparse support of prod(1-q^n)^r below T for r in {1, 3}: sorted
    exponent array plus weights reduced mod ell (pentagonal number
    theorem, and Jacobi's identity for the cube)."""
    if r == 1:
        pairs = generalized_pentagonal(T - 1)
        g = np.fromiter((e for e, _ in pairs), dtype=np.int64,
                        count=len(pairs))
        w = np.fromiter((s % ell for _, s in pairs), dtype=np.int64,
                        count=len(pairs))
        return g, w
    if r == 3:
        kmax = (math.isqrt(8 * (T - 1) + 1) - 1) // 2
        k = np.arange(kmax + 1, dtype=np.int64)
        g = k * (k + 1) // 2
        w = np.where(k % 2 == 0, 2 * k + 1, -(2 * k + 1)) % ell
        return g, w
    raise ValueError(f"no sparse support for Euler power {r}")


def _scatter_product_mod(g1, w1, g2, w2, T, ell):
    """Length-T product of two sparse series given by (exponents, weights
    mod ell), as uint8.  Within one slice the target indices are distinct
    (the exponent arrays are strictly increasing), so fancy-index updates
    are safe and much faster than ufunc.at."""
    acc = np.zeros(T, dtype=np.int32)
    same = g1 is g2 and w1 is w2
    for k in range(len(g1)):
        base = int(g1[k])
        if base > T - 1 or (same and 2 * base > T - 1):
            break
        lo = k if same else 0
        j1 = int(np.searchsorted(g2, T - 1 - base, side="right"))
        if j1 <= lo:
            continue
        idx = base + g2[lo:j1]
        vals = ((int(w1[k]) * w2[lo:j1]) % ell).astype(np.int32)
        if same and j1 > k + 1:
            vals[1:] *= 2  # off-diagonal pairs appear twice
        acc[idx] += vals
    return (acc % ell).astype(np.uint8)


def _oa_conv_mod(x, y, ell, out_len, block=1 << 24, workers=4):
    """First out_len coefficients of x*y mod ell by overlap-add FFT over
    fixed blocks, as uint8.  Inputs must already be reduced mod ell.
    Block pairs landing entirely past out_len are skipped; for a square
    (y is x) each unordered pair is transformed once and the off-diagonal
    contribution doubled.  Every segment is checked to round to integers
    with residual <= 0.25, and the block size shrinks until the exact
    peak coefficient bound fits in a float64."""
    if x.dtype != np.uint8 or y.dtype != np.uint8:
        raise TypeError("blocked convolution expects reduced uint8 input")
    same = y is x
    block = int(block)
    while (ell - 1) * (ell - 1) * block >= (1 << 52):
        block //= 2
    if block < 2:
        raise ValueError("modulus too large for the float64 FFT path")
    pad = 2 * block
    nbx = -(-len(x) // block)
    nby = -(-len(y) // block)
    max_sum = (out_len - 1) // block
    acc = np.zeros(out_len, dtype=np.uint16)
    # each output index receives at most two block diagonals
    if 4 * min(nbx, nby) * (ell - 1) >= (1 << 16):
        raise ValueError("accumulator width too small for this grid")
    prod = np.empty(pad // 2 + 1, dtype=np.complex128)
    rbuf = np.empty(2 * block - 1, dtype=np.float64)

    def spec(arr, i):
        return _sfft.rfft(arr[i * block:(i + 1) * block].astype(np.float64),
                          pad, workers=workers)

    def emit(sa, sb, i, j, weight):
        off = (i + j) * block
        if off >= out_len:
            return
        np.multiply(sa, sb, out=prod)
        seg = _sfft.irfft(prod, pad, workers=workers)[: 2 * block - 1]
        rseg = np.rint(seg, out=rbuf)
        np.subtract(seg, rseg, out=seg)
        np.abs(seg, out=seg)
        if seg.max() > 0.25:
            raise ArithmeticError("FFT segment failed the rounding guard")
        np.mod(rseg, ell, out=rseg)
        if weight == 2:
            rseg *= 2
        stop = min(out_len, off + 2 * block - 1)
        acc[off:stop] += rseg[: stop - off].astype(np.uint16)

    if same:
        # pin two spectra per pass and stream the rest once
        for i0 in range(0, nbx, 2):
            if 2 * i0 > max_sum:
                break
            ip = [i for i in (i0, i0 + 1) if i < nbx and 2 * i <= max_sum]
            pins = {i: spec(x, i) for i in ip}
            for ai in range(len(ip)):
                for bi in range(ai, len(ip)):
                    i, j = ip[ai], ip[bi]
                    if i + j <= max_sum:
                        emit(pins[i], pins[j], i, j, 1 if i == j else 2)
            for j in range(ip[-1] + 1, min(nbx, max_sum - i0 + 1)):
                sj = spec(x, j)
                for i in ip:
                    if i + j <= max_sum:
                        emit(pins[i], sj, i, j, 2)
    else:
        s_arr, l_arr = (x, y) if len(x) <= len(y) else (y, x)
        nbs = -(-len(s_arr) // block)
        nbl = -(-len(l_arr) // block)
        specs = {}

        def sspec(j):
            if j in specs:
                return specs[j]
            s = spec(s_arr, j)
            if len(specs) < 8:  # memory cap; overflow is recomputed
                specs[j] = s
            return s

        for i in range(min(nbl, max_sum + 1)):
            si = spec(l_arr, i)
            for j in range(min(nbs, max_sum - i + 1)):
                emit(si, sspec(j), i, j, 1)
    return (acc % ell).astype(np.uint8)


def dense_euler_power(r, T, ell, block=1 << 24, cache=None):
    """prod(1-q^n)^r mod ell to length T as uint8, for r in _BUILDABLE.

    r <= 3 come straight from their sparse supports, 2 and 6 are scatter
    squares, 5 and 12 need one blocked convolution.  Powers >= 2 are
    checked against the generic repeated-squaring kernel on a 32768-term
    prefix before being returned (or cached)."""
    if cache is not None:
        hit = cache.get(("dense", r))
        if hit is not None and len(hit) >= T:
            return hit[:T]
    if r not in _BUILDABLE:
        raise ValueError(f"Euler power {r} has no direct dense build")
    if r == 0:
        out = np.zeros(T, dtype=np.uint8)
        out[0] = 1
    elif r in (1, 3):
        g, w = _euler_support(r, T, ell)
        out = np.zeros(T, dtype=np.uint8)
        keep = g < T
        out[g[keep]] = w[keep].astype(np.uint8)
    elif r in (2, 6):
        g, w = _euler_support(1 if r == 2 else 3, T, ell)
        out = _scatter_product_mod(g, w, g, w, T, ell)
    elif r == 5:
        d2 = dense_euler_power(2, T, ell, block=block, cache=cache)
        d3 = dense_euler_power(3, T, ell, block=block, cache=cache)
        out = _oa_conv_mod(d3, d2, ell, T, block=block)
    else:  # r == 12
        six = dense_euler_power(6, T, ell, block=block, cache=cache)
        out = _oa_conv_mod(six, six, ell, T, block=block)
    if r >= 2:
        K = min(T, 32768)
        want = _euler_pow(1, r, K, ell, {})
        if not np.array_equal(out[:K].astype(np.int64), want):
            raise ArithmeticError(
                f"dense Euler power {r} fails the prefix cross-check")
    if cache is not None:
        cache[("dense", r)] = out
    return out


def partition_power_table(r, T, ell, block=1 << 24, cache=None):
    """prod(1-q^n)^(-r) mod ell to length T as uint8 (r = 1 is the
    partition generating function).  Newton inversion runs on a seed grid
    capped at one block, then blocked refinement steps double the
    precision up to T; the result must reproduce delta on a 32768-term
    prefix against the forward series."""
    lr = dense_euler_power(r, T, ell, block=block, cache=cache)
    h = T
    levels = []
    while h > block:
        levels.append(h)
        h = h // 2 + 1
    x = (np.asarray(series_inverse_mod(lr[:h].astype(np.int64), ell, h),
                    dtype=np.int64) % ell).astype(np.uint8)
    for t2 in reversed(levels):
        # x*lr = 1 + q^h u with 2h >= t2, so x*(2 - lr*x) inverts to t2
        eb = _oa_conv_mod(lr[:t2], x, ell, t2, block=block)
        corr = (ell - eb.astype(np.int16)) % ell
        corr[0] = (corr[0] + 2) % ell
        x = _oa_conv_mod(x, corr.astype(np.uint8), ell, t2, block=block)
    out = x
    K = min(T, 32768)
    chk = conv_mod(lr[:K].astype(np.int64), out[:K].astype(np.int64), ell, K)
    delta = np.zeros(K, dtype=np.int64)
    delta[0] = 1 % ell
    if not np.array_equal(chk, delta):
        raise ArithmeticError(
            f"inverse Euler power {r} fails the delta cross-check")
    return out


def big_prime_values(m, ell, p, ns, pipeline_prec=None, spot_checks=3,
                     block=1 << 24, timings=None):
    """Values of F at u-exponents p^2 n for each admissible n in ns, for
    primes too large for one dense grid.  Spot checks recompute the
    first, middle and last value from the closed form via exact HRR
    partition numbers.  A timings dict, if given, collects wall-clock
    seconds per build phase."""
    m, ell, p = int(m), int(ell), int(p)
    lb = ell_bar(ell)
    residue = (-m * lb) % 24
    if p <= 1 or not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if (24 * m * ell) % p == 0:
        raise ValueError(f"p = {p} divides 24*m*ell")
    ns = [int(n) for n in ns]
    if not ns:
        return []
    for n in ns:
        if n <= 0 or n % 24 != residue:
            raise ValueError(f"n = {n} is not in the admissible class")

    result, basis, monomials, beta = folded_coordinates(m, ell, pipeline_prec)
    terms = []
    for g, factors in zip(basis.forms, monomials):
        b = beta[g.lead] % ell
        if b == 0:
            continue
        if set(factors) - {1, m}:
            raise ValueError("monomial mixes in dilations beyond 1 and m")
        a = factors.get(1, 0)
        em = factors.get(m, 0) - lb
        shift = a + m * em
        if shift != g.lead - m * lb or shift % 24 != residue:
            raise AssertionError("term shift off the admissible class")
        terms.append((b, a, em, shift))
    if not terms:
        raise ArithmeticError("all folded coordinates vanish")

    e_top = p * p * max(ns)
    W = max((e_top - shift) // 24 for _, _, _, shift in terms) + 1
    Tm = (W - 1) // m + 2
    cache = {}
    mark = [time.monotonic()]

    def _phase(label):
        now = time.monotonic()
        if timings is not None:
            timings[label] = timings.get(label, 0.0) + now - mark[0]
        mark[0] = now

    # full-grid powers first: their blocked build dominates peak memory,
    # so nothing else large may be resident yet
    dense = {}
    for a in sorted({a for _, a, _, _ in terms if a > 0}):
        dense[a] = dense_euler_power(a, W, ell, block=block, cache=cache)
    _phase("dense_powers")

    tables = {}
    pair_tables = {}
    for _, a, em, _ in terms:
        if em in tables or em in pair_tables:
            continue
        if em in _BUILDABLE:
            tables[em] = dense_euler_power(em, Tm, ell, block=block,
                                           cache=cache)
        elif em < 0:
            tables[em] = partition_power_table(-em, Tm, ell, block=block,
                                               cache=cache)
        elif em - 6 in _BUILDABLE:
            pair_tables[em] = (
                dense_euler_power(em - 6, Tm, ell, block=block, cache=cache),
                dense_euler_power(6, Tm, ell, block=block, cache=cache))
        else:
            raise ValueError(f"no build route for Euler power {em}")
    cache.clear()
    _phase("inverse_tables")

    # float64 dots are exact here: addends stay below (ell-1)^2 and the
    # lengths keep every sum under 2^53
    if (ell - 1) * (ell - 1) * (Tm + 1) >= (1 << 53):
        raise ValueError("grid too long for exact float64 dot products")
    # reversed float64 copies let every dot below run over two forward-
    # contiguous operands; views sharing a base are converted only once
    fcache = {}

    def _f64_rev(t):
        key = (t.__array_interface__["data"][0], len(t))
        hit = fcache.get(key)
        if hit is None:
            hit = t[::-1].astype(np.float64)
            fcache[key] = hit
        return hit

    trev = {em: _f64_rev(t) for em, t in tables.items()}
    prev = {em: (t1.astype(np.float64), _f64_rev(t2))
            for em, (t1, t2) in pair_tables.items()}
    del fcache, tables, pair_tables
    _phase("float_tables")

    # contiguous per-residue copies make the gathers below straight reads
    split = {}
    for a in list(dense):
        split[a] = [np.ascontiguousarray(dense[a][s::m]) for s in range(m)]
        del dense[a]
    dotbuf = np.empty(Tm + 1, dtype=np.float64)
    _phase("residue_split")

    values = []
    for n in ns:
        e_u = p * p * n
        tot = 0
        for b, a, em, shift in terms:
            e = e_u - shift
            if e < 0:
                continue
            e //= 24
            if a > 0:
                # sum_j dense[a][e-mj] table[j] = sum_i sub[i] table[k-i]
                sub = split[a][e % m]
                k = e // m
                tbl = trev[em]
                t_len = min(k + 1, len(tbl))
                buf = dotbuf[:t_len]
                np.copyto(buf, sub[k - t_len + 1:k + 1])
                tot += b * int(np.dot(buf, tbl[len(tbl) - t_len:]))
            elif e % m == 0:
                t = e // m
                if em in trev:
                    tbl = trev[em]
                    if t < len(tbl):
                        tot += b * int(tbl[len(tbl) - 1 - t])
                else:
                    t1, t2 = prev[em]
                    tot += b * int(np.dot(t1[: t + 1], t2[len(t2) - 1 - t:]))
        values.append(tot % ell)
    _phase("dot_products")

    if spot_checks > 0 and m in _CLOSED_BETA:
        idxs = [0, len(ns) // 2, len(ns) - 1][:spot_checks]
        for i in sorted(set(idxs)):
            arg = (ell * p * p * ns[i] + m) // 24
            want = cphi_point_mod(m, arg, ell)
            if values[i] != want:
                raise ArithmeticError(
                    f"blocked path fails the closed form at n = {ns[i]}: "
                    f"{values[i]} vs cphi_{m}({arg}) = {want} mod {ell}")
    _phase("spot_checks")
    return values


def validate_big_prime_path(m, ell, p=53, n_max=1999, pipeline_prec=None,
                            block=1 << 15):
    """Cross-validates the blocked evaluator against the single-grid long
    series on a prime small enough for both, with a block size small
    enough to force the multi-segment code.  Returns the number of
    agreeing values."""
    lb = ell_bar(ell)
    residue = (-m * lb) % 24
    start = residue if residue else 24
    ns = list(range(start, n_max + 1, 24))
    form = LongCongruenceForm(m, ell, p * p * n_max + 1,
                              pipeline_prec=pipeline_prec)
    want = form.provider_values(p, ns)
    got = big_prime_values(m, ell, p, ns, pipeline_prec=pipeline_prec,
                           spot_checks=2, block=block)
    for n, w, g in zip(ns, want, got):
        if w != g:
            raise ArithmeticError(
                f"blocked path disagrees with the dense grid at n = {n}: "
                f"{g} vs {w}")
    return len(ns)


def scan_provider(m, ell, p_set, n_max, small_cutoff=200, validate=True,
                  pipeline_prec=None, block=1 << 24, timings=None):
    """Provider for scan_atkin_congruence mixing the two evaluators:
    primes up to small_cutoff share one dense long series, larger ones
    take the blocked path (cross-validated once on a small prime first
    unless validate is off)."""
    p_list = sorted(int(p) for p in p_set)
    small = [p for p in p_list if p <= small_cutoff]
    big = [p for p in p_list if p > small_cutoff]
    shared = None
    if small:
        top = max(small)
        shared = LongCongruenceForm(m, ell, top * top * n_max + 1,
                                    pipeline_prec=pipeline_prec)
    if big and validate:
        validate_big_prime_path(m, ell, pipeline_prec=pipeline_prec)

    def provider(p, ns):
        if p <= small_cutoff:
            return shared.provider_values(p, ns)
        return big_prime_values(m, ell, p, ns, pipeline_prec=pipeline_prec,
                                block=block, timings=timings)

    provider.small_form = shared
    return provider


def probe_candidate_primes(m, ell, p_max, probe_ns=None, pipeline_prec=None,
                           spot_checks=2):
    """Classifies every prime p <= p_max with p ≡ 1 (mod ell) by a few
    admissible values of F at u-exponents p^2 n: a candidate for a
    verified quadratic-class congruence must vanish on the whole in-class
    sample (n with (n|p) equal to the symbol value the weight forces).
    Returns one row per prime with the sampled values split by class."""
    m, ell = int(m), int(ell)
    lb = ell_bar(ell)
    r = (-m * lb) % 24
    if probe_ns is None:
        start = r if r else 24
        probe_ns = [start + 24 * k for k in range(6)]
    probe_ns = sorted(int(n) for n in probe_ns)
    form = LongCongruenceForm(m, ell, p_max * p_max * max(probe_ns) + 1,
                              pipeline_prec=pipeline_prec,
                              spot_checks=spot_checks)
    e = ((m * ell + 1) // 2) % 2
    rows = []
    for p in range(2, p_max + 1):
        if p % ell != 1 or not is_prime(p) or (24 * ell * m) % p == 0:
            continue
        eps = (kronecker(-1, p) if e else 1) * kronecker(p, m)
        vals = form.provider_values(p, probe_ns)
        in_class, out_class = {}, {}
        for n, v in zip(probe_ns, vals):
            (in_class if legendre(n, p) == eps else out_class)[n] = v
        rows.append({
            "p": p, "epsilon": eps,
            "in_class": in_class, "out_class": out_class,
            "candidate": bool(in_class) and not any(in_class.values()),
        })
    return rows
