"""Kernel selection: compiled extension if built, numpy fallback otherwise.

Set FROBCONG_PURE=1 to force the fallback (useful for benchmarking and for
exercising both paths in tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("FROBCONG_PURE"):
    impl = _kernels_py
    COMPILED = False
else:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        impl = _kernels_py
        COMPILED = False

conv_exact = impl.conv_exact
theta_rm = impl.theta_rm

# the compiled convolution is schoolbook; past this operand product the
# FFT path in the fallback is faster (and just as exact, by its residual
# guard), so dispatch on size
_CONV_FFT_CUTOFF = 1 << 26


def conv_mod(a, b, ell, nout=None):
    if COMPILED and len(a) * len(b) <= _CONV_FFT_CUTOFF:
        return impl.conv_mod(a, b, ell, nout)
    return _kernels_py.conv_mod(a, b, ell, nout)

# these have no compiled counterpart; they are thin or numpy-bound already
theta_rm_exact = _kernels_py.theta_rm_exact
generalized_pentagonal = _kernels_py.generalized_pentagonal
euler_series_mod = _kernels_py.euler_series_mod
series_inverse_mod = _kernels_py.series_inverse_mod

# the compiled pentagonal recurrence is O(N^1.5); past a few million terms
# the FFT Newton inversion in the fallback wins, so dispatch on size
_PENTAGONAL_CUTOFF = 2_000_000


def partition_mod_table(N, ell):
    if COMPILED and N <= _PENTAGONAL_CUTOFF:
        return impl.partition_mod_table(N, ell)
    return _kernels_py.partition_mod_table(N, ell)
