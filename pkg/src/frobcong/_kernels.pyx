# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: exact integer convolution, modular convolution, the
theta-series dynamic program, and the pentagonal-recurrence partition table.

Same contracts as frobcong._kernels_py (the fallback); tests assert the two
implementations agree.
"""

from libc.math cimport sqrt

import numpy as np

COMPILED = True


def conv_exact(a, b, nout=None):
    """Exact integer convolution of coefficient lists (Python big ints)."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    if nout is None:
        nout = la + lb - 1 if la and lb else 0
    cdef Py_ssize_t n_out = nout
    out = [0] * n_out
    if la == 0 or lb == 0 or n_out == 0:
        return out
    cdef Py_ssize_t na = 0, nb = 0, i, j, lim
    for i in range(la):
        if a[i]:
            na += 1
    for i in range(lb):
        if b[i]:
            nb += 1
    if na > nb:
        a, b = b, a
        la, lb = lb, la
    for i in range(la):
        ai = a[i]
        if not ai or i >= n_out:
            continue
        lim = lb if lb < n_out - i else n_out - i
        for j in range(lim):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def conv_mod(a, b, ell, nout=None):
    """Convolution of integer sequences reduced mod ell, int64 ndarray."""
    cdef long long L = ell
    cdef long long step, batch
    cdef Py_ssize_t la, lb, n_out, i, j, lo, hi, done
    cdef long long acc
    if L - 1 >= (1 << 31):
        # per-term products would overflow int64; use the numpy fallback
        from . import _kernels_py
        return _kernels_py.conv_mod(a, b, ell, nout)
    a_arr = np.asarray(a, dtype=np.int64) % L
    b_arr = np.asarray(b, dtype=np.int64) % L
    la = a_arr.shape[0]
    lb = b_arr.shape[0]
    full = la + lb - 1 if la and lb else 0
    if nout is None:
        nout = full
    n_out = nout
    if n_out < full:
        a_arr = a_arr[:n_out]
        b_arr = b_arr[:n_out]
        la = a_arr.shape[0]
        lb = b_arr.shape[0]
    out_arr = np.zeros(n_out, dtype=np.int64)
    if la == 0 or lb == 0 or n_out == 0:
        return out_arr
    cdef long long[:] av = a_arr
    cdef long long[:] bv = b_arr
    cdef long long[:] ov = out_arr
    # accumulators reduced every `batch` terms to stay inside int64
    step = (L - 1) * (L - 1) if L > 1 else 1
    batch = ((<long long> 1) << 62) // step
    if batch < 1:
        batch = 1
    for i in range(n_out):
        lo = 0 if i < lb else i - lb + 1
        hi = i + 1 if i < la else la
        acc = 0
        done = 0
        for j in range(lo, hi):
            acc += av[j] * bv[i - j]
            done += 1
            if done >= batch:
                acc %= L
                done = 0
        acc %= L
        if acc < 0:
            acc += L
        ov[i] = acc
    return out_arr


def theta_rm(m, N, mod=0):
    """r_m(n), 0 <= n <= N, for the form sum x_i^2 + sum_{i<j} x_i x_j in
    m-1 variables; (s, t) dynamic program, exact int64 with overflow guard.
    With mod > 0 the table is reduced every layer (counts mod `mod`, no
    overflow possible)."""
    if m < 2:
        raise ValueError("theta_rm requires m >= 2")
    if N < 0:
        raise ValueError("negative precision")
    cdef long long themod = mod
    cdef Py_ssize_t nvars = m - 1
    cdef Py_ssize_t twoN = 2 * N
    cdef Py_ssize_t X = <Py_ssize_t> sqrt(<double> twoN)
    while (X + 1) * (X + 1) <= twoN:
        X += 1
    while X * X > twoN:
        X -= 1
    cdef Py_ssize_t S = <Py_ssize_t> sqrt(<double> (twoN * nvars)) + 2
    cdef Py_ssize_t SS = S + X + 1
    tbl_arr = np.zeros((2 * SS + 1, twoN + 1), dtype=np.int64)
    new_arr = np.zeros((2 * SS + 1, twoN + 1), dtype=np.int64)
    tbl_arr[SS, 0] = 1
    cdef long long[:, :] tbl = tbl_arr
    cdef long long[:, :] new = new_arr
    cdef Py_ssize_t smax = 0, j, x, x2, s, t, rows_lo, rows_hi
    cdef long long guard = (<long long> 1) << 61
    for j in range(1, nvars + 1):
        new_arr[:, :] = 0
        rows_lo = SS - smax
        rows_hi = SS + smax + 1
        for x in range(-X, X + 1):
            x2 = x * x
            if x2 > twoN:
                continue
            for s in range(rows_lo, rows_hi):
                for t in range(twoN + 1 - x2):
                    if tbl[s, t]:
                        new[s + x, t + x2] += tbl[s, t]
        tbl_arr, new_arr = new_arr, tbl_arr
        tbl = tbl_arr
        new = new_arr
        smax = smax + X if smax + X < S else S
        if themod > 0:
            tbl_arr %= themod
            tbl = tbl_arr
        elif np.max(tbl_arr) > guard:
            raise OverflowError("theta_rm counts exceed the int64 guard")
    r_arr = np.zeros(N + 1, dtype=np.int64)
    cdef long long[:] r = r_arr
    cdef Py_ssize_t n, v
    for s in range(-S, S + 1):
        for t in range(twoN + 1):
            if tbl[SS + s, t]:
                v = s * s + t
                if v % 2 == 0 and v // 2 <= N:
                    r[v // 2] += tbl[SS + s, t]
    if themod > 0:
        r_arr %= themod
    return r_arr


def partition_mod_table(N, ell):
    """p(n) mod ell for 0 <= n <= N, by the pentagonal-number recurrence."""
    if N < 0:
        raise ValueError("negative precision")
    cdef long long L = ell
    out_arr = np.zeros(N + 1, dtype=np.int64)
    cdef long long[:] p = out_arr
    p[0] = 1 % L
    cdef Py_ssize_t n, k, g1, g2
    cdef long long acc, sgn
    for n in range(1, N + 1):
        acc = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sgn = 1 if (k & 1) else -1
            acc += sgn * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                acc += sgn * p[n - g2]
            k += 1
        p[n] = acc % L
        if p[n] < 0:
            p[n] += L
    return out_arr
