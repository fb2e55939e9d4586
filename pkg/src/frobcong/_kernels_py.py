"""Pure-Python / numpy kernels.

Fallback implementations of the hot inner loops; `frobcong.kernels`
selects these when the compiled extension is unavailable.  Every function
here is exact: floating-point FFT is used only under an a-priori magnitude
bound with a rounding-residual assertion.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

COMPILED = False

_FFT_VALUE_BOUND = 1 << 49  # max exact convolution value allowed into float64 FFT
_SCHOOLBOOK_OPS = 1 << 26


def conv_exact(a, b, nout=None):
    """Exact integer convolution of coefficient lists (arbitrary precision)."""
    if nout is None:
        nout = len(a) + len(b) - 1 if a and b else 0
    out = [0] * nout
    if not a or not b or nout == 0:
        return out
    na = sum(1 for v in a if v)
    nb = sum(1 for v in b if v)
    if na > nb:
        a, b = b, a
    for i, ai in enumerate(a):
        if not ai or i >= nout:
            continue
        lim = min(len(b), nout - i)
        for j in range(lim):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def conv_mod(a, b, ell, nout=None):
    """Convolution of integer sequences reduced mod ell, as int64 ndarray."""
    a = np.asarray(a, dtype=np.int64) % ell
    b = np.asarray(b, dtype=np.int64) % ell
    full = len(a) + len(b) - 1 if len(a) and len(b) else 0
    if nout is None:
        nout = full
    if nout < full:
        a = a[:nout]
        b = b[:nout]
        full = len(a) + len(b) - 1 if len(a) and len(b) else 0
    if len(a) == 0 or len(b) == 0:
        return np.zeros(nout, dtype=np.int64)
    minlen = min(len(a), len(b))
    peak = (ell - 1) ** 2 * minlen
    if peak < (1 << 62) and len(a) * len(b) <= _SCHOOLBOOK_OPS:
        out = np.convolve(a, b)
    elif peak <= _FFT_VALUE_BOUND:
        from scipy.signal import fftconvolve

        raw = fftconvolve(a.astype(np.float64), b.astype(np.float64))
        out = np.rint(raw)
        resid = np.max(np.abs(raw - out)) if len(raw) else 0.0
        if resid > 0.25:
            raise ArithmeticError(f"FFT convolution lost exactness (residual {resid})")
        out = out.astype(np.int64)
    else:
        out = np.array(conv_exact([int(x) for x in a], [int(x) for x in b]),
                       dtype=object)
        out = (out % ell).astype(np.int64)
        pad = np.zeros(nout, dtype=np.int64)
        pad[:min(nout, len(out))] = out[:nout]
        return pad
    out = out % ell
    pad = np.zeros(nout, dtype=np.int64)
    pad[:min(nout, len(out))] = out[:nout]
    return pad


def theta_rm(m, N, mod=0):
    """r_m(n) for 0 <= n <= N: representation counts of the quadratic form
    sum x_i^2 + sum_{i<j} x_i x_j in m-1 integer variables.

    Dynamic program over coordinates with state (s, t) = (sum x_i, sum x_i^2);
    the form value is (s^2 + t)/2.  Cauchy-Schwarz bounds |s| <= sqrt(2Nj)
    after j coordinates, so the table is finite.  Exact int64 with an
    overflow guard; with mod > 0 every layer is reduced (counts mod `mod`).
    """
    if m < 2:
        raise ValueError("theta_rm requires m >= 2")
    if N < 0:
        raise ValueError("negative precision")
    nvars = m - 1
    twoN = 2 * N
    X = isqrt(twoN)
    S = isqrt(twoN * nvars) + 1
    SS = S + X + 1  # padding so shifted writes never clip
    tbl = np.zeros((2 * SS + 1, twoN + 1), dtype=np.int64)
    tbl[SS, 0] = 1
    smax = 0
    for j in range(1, nvars + 1):
        new = np.zeros_like(tbl)
        for x in range(-X, X + 1):
            x2 = x * x
            if x2 > twoN:
                continue
            src = tbl[SS - smax: SS + smax + 1, : twoN + 1 - x2]
            new[SS - smax + x: SS + smax + 1 + x, x2:] += src
        tbl = new
        smax = min(smax + X, S)
        if mod > 0:
            tbl %= mod
        elif tbl.max() > (1 << 61):
            raise OverflowError("theta_rm counts exceed the int64 guard")
    r = np.zeros(N + 1, dtype=np.int64)
    for s in range(-S, S + 1):
        s2 = s * s
        n0 = (s2 + 1) // 2
        if n0 > N:
            continue
        ns = np.arange(n0, N + 1)
        r[n0:] += tbl[SS + s, 2 * ns - s2]
    if mod > 0:
        r %= mod
    return r


def theta_rm_exact(m, N):
    """Reference implementation of theta_rm with Python big integers
    (dict-based); for cross-checks and as an overflow-proof fallback."""
    if m < 2:
        raise ValueError("theta_rm requires m >= 2")
    nvars = m - 1
    twoN = 2 * N
    X = isqrt(twoN)
    state = {(0, 0): 1}
    for _ in range(nvars):
        new = {}
        for (s, t), c in state.items():
            for x in range(-X, X + 1):
                t2 = t + x * x
                if t2 > twoN:
                    continue
                key = (s + x, t2)
                new[key] = new.get(key, 0) + c
        state = new
    r = [0] * (N + 1)
    for (s, t), c in state.items():
        v = s * s + t
        if v % 2 == 0 and v // 2 <= N:
            r[v // 2] += c
    return r


def generalized_pentagonal(N):
    """(g, sign) pairs with g = k(3k-1)/2 <= N over k in Z \\ {0} plus (0, +1),
    i.e. the expansion prod(1-q^n) = sum sign * q^g."""
    out = [(0, 1)]
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        s = 1 if k % 2 == 0 else -1
        hit = False
        if g1 <= N:
            out.append((g1, s))
            hit = True
        if g2 <= N:
            out.append((g2, s))
            hit = True
        if not hit:
            break
        k += 1
    return out


def euler_series_mod(N, ell):
    """prod_{n>=1}(1 - q^n) mod ell to exponent N, as int64 array."""
    E = np.zeros(N + 1, dtype=np.int64)
    for g, s in generalized_pentagonal(N):
        E[g] = s % ell
    return E


def series_inverse_mod(E, ell, nout):
    """Inverse of the power series with coefficients E (mod ell) to nout
    terms, by Newton iteration."""
    e0 = int(E[0]) % ell
    if e0 == 0:
        raise ZeroDivisionError("leading coefficient is zero")
    B = np.array([pow(e0, -1, ell)], dtype=np.int64)
    t = 1
    while t < nout:
        t2 = min(2 * t, nout)
        EB = conv_mod(E[:t2], B, ell, t2)
        corr = (-EB) % ell
        corr[0] = (corr[0] + 2) % ell
        B = conv_mod(B, corr, ell, t2)
        t = t2
    return B[:nout]


def partition_mod_table(N, ell):
    """p(n) mod ell for 0 <= n <= N."""
    if N < 0:
        raise ValueError("negative precision")
    return series_inverse_mod(euler_series_mod(N, ell), ell, N + 1)
