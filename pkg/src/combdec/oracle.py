"""Reference FIR model of the comb decimator.

The whole cascade, recursive or not, is equivalent to an FIR filter whose
taps are a boxcar of length R*M convolved with itself N times, followed by
keeping every R-th sample of the full-rate convolution (phases 0, R, 2R,
... counted from the first input sample).  This module computes that
directly, in exact integer arithmetic, so the streaming implementations
have something independent to be compared against.

A numpy path is used when a worst-case bound proves the values fit in
int64; otherwise plain Python integers carry arbitrary precision.
"""

from __future__ import annotations

import numpy as np

from .fixedpoint import FixedSequence
from .params import FilterConfig, ceil_log2

_INT64_SAFE = 1 << 62


def convolve_ints(a, b):
    """Full convolution of two integer sequences, exact."""
    la, lb = len(a), len(b)
    out = [0] * (la + lb - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def fir_coefficients(config: FilterConfig) -> tuple:
    """Taps of the equivalent FIR: ones(R*M) self-convolved N times.

    Length N*(R*M - 1) + 1, symmetric, all positive, summing to (R*M)**N.
    """
    rm = config.decim_r * config.diff_delay_m
    taps = [1] * rm
    out = [1]
    for _ in range(config.order_n):
        out = convolve_ints(out, taps)
    return tuple(out)


def dropped_sample_coefficients(config: FilterConfig, integrators_done: int) -> tuple:
    """Taps of the path from integrator stage output to the filter output.

    After `integrators_done` of the N integrators, the remaining transfer
    is (N - integrators_done) boxcars times (1 - z**-(R*M)) per completed
    integrator.  Used to bound how far a value injected mid-cascade (a
    truncation remainder) can move the output.
    """
    n = config.order_n
    if not 1 <= integrators_done <= n:
        raise ValueError(f"integrators_done must be in 1..{n}")
    rm = config.decim_r * config.diff_delay_m
    out = [1]
    for _ in range(n - integrators_done):
        out = convolve_ints(out, [1] * rm)
    diff = [1] + [0] * (rm - 1) + [-1]
    for _ in range(integrators_done):
        out = convolve_ints(out, diff)
    return tuple(out)


def fir_decimate(coeffs, decim_r: int, input: FixedSequence) -> FixedSequence:
    """Convolve with coeffs and keep full-rate indices 0, R, 2R, ...

    output[j] = sum_k coeffs[k] * input[j*R - k] with zero padding before
    the first sample, exactly one output per R inputs (no tail flush; pad
    the input with zeros to see the full response die out).  Exact
    arbitrary-precision arithmetic; the declared output width is sized
    from the tap sum so nothing wraps.
    """
    if decim_r < 1:
        raise ValueError(f"decim_r must be >= 1, got {decim_r}")
    coeffs = [int(c) for c in coeffs]
    if not coeffs:
        raise ValueError("need at least one coefficient")
    gain = sum(abs(c) for c in coeffs)
    out_width = input.width + (ceil_log2(gain) if gain >= 1 else 0)
    x = list(input.samples)
    n_out = (len(x) + decim_r - 1) // decim_r
    if n_out == 0:
        return FixedSequence((), out_width)

    peak = max((abs(s) for s in x), default=0)
    if peak * max(gain, 1) < _INT64_SAFE:
        xv = np.asarray(x, dtype=np.int64)
        cv = np.asarray(coeffs, dtype=np.int64)
        full = np.convolve(xv, cv)
        dec = full[: len(x) : decim_r]
        return FixedSequence(dec.tolist(), out_width)

    out = []
    lc = len(coeffs)
    for j in range(n_out):
        base = j * decim_r
        acc = 0
        for k in range(min(lc, base + 1)):
            acc += coeffs[k] * x[base - k]
        out.append(acc)
    return FixedSequence(out, out_width)
