"""Carry look-ahead adder built from 4-bit look-ahead groups.

Within a group the carries come from the expanded sum-of-products
look-ahead equations; between groups the carry ripples.  That keeps the
longest gate path at 4 (generate/propagate + first group) plus 2 gates
per extra group plus 3 through the final sum XOR, against 2 gates per
bit plus 1 for a plain ripple chain.

mcla_add evaluates the boolean equations bit by bit and is the normative
model; mcla_add_many evaluates the same equations across numpy arrays
for bulk verification.
"""

from __future__ import annotations

import numpy as np

GROUP_BITS = 4


def _check_width(width: int):
    if width < GROUP_BITS or width % GROUP_BITS != 0:
        raise ValueError(
            f"width must be a positive multiple of {GROUP_BITS}, got {width}"
        )


def adder_width(bits: int) -> int:
    """Smallest valid adder width covering a datapath of `bits`."""
    if bits < 1:
        raise ValueError(f"bits must be >= 1, got {bits}")
    return ((bits + GROUP_BITS - 1) // GROUP_BITS) * GROUP_BITS


class Mcla:
    """A width-bit adder modelled at gate level.

    Operands are unsigned bit patterns in [0, 2**width); two's-complement
    signed addition is the same bit function, so callers handle signs by
    masking in and re-interpreting out.
    """

    def __init__(self, width: int):
        _check_width(width)
        self.width = width
        self.groups = width // GROUP_BITS

    def add(self, a: int, b: int, carry_in: int = 0):
        """Return (sum, carry_out) from the look-ahead equations."""
        if not 0 <= a < (1 << self.width):
            raise ValueError(f"operand a out of range for {self.width} bits")
        if not 0 <= b < (1 << self.width):
            raise ValueError(f"operand b out of range for {self.width} bits")
        if carry_in not in (0, 1):
            raise ValueError("carry_in must be 0 or 1")
        g = a & b
        p = a ^ b
        total = 0
        c0 = carry_in
        for grp in range(self.groups):
            base = grp * GROUP_BITS
            g0 = (g >> base) & 1
            g1 = (g >> (base + 1)) & 1
            g2 = (g >> (base + 2)) & 1
            g3 = (g >> (base + 3)) & 1
            p0 = (p >> base) & 1
            p1 = (p >> (base + 1)) & 1
            p2 = (p >> (base + 2)) & 1
            p3 = (p >> (base + 3)) & 1
            c1 = g0 | (p0 & c0)
            c2 = g1 | (p1 & g0) | (p1 & p0 & c0)
            c3 = g2 | (p2 & g1) | (p2 & p1 & g0) | (p2 & p1 & p0 & c0)
            c4 = (
                g3
                | (p3 & g2)
                | (p3 & p2 & g1)
                | (p3 & p2 & p1 & g0)
                | (p3 & p2 & p1 & p0 & c0)
            )
            s = (p0 ^ c0) | ((p1 ^ c1) << 1) | ((p2 ^ c2) << 2) | ((p3 ^ c3) << 3)
            total |= s << base
            c0 = c4
        return total, c0


def mcla_add(a: int, b: int, carry_in: int = 0, width: int = 16):
    return Mcla(width).add(a, b, carry_in)


def mcla_add_many(a, b, carry_in, width: int):
    """Vectorized evaluation of the same group look-ahead equations.

    a, b, carry_in are integer arrays (broadcastable); returns
    (sum, carry_out) as int64 arrays.  Bit-identical to Mcla.add.
    """
    _check_width(width)
    if width > 62:
        raise ValueError("vector path supports widths up to 62")
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    cin = np.asarray(carry_in, dtype=np.int64)
    if np.any((a < 0) | (a >= (1 << width))) or np.any((b < 0) | (b >= (1 << width))):
        raise ValueError(f"operands out of range for {width} bits")
    if np.any((cin != 0) & (cin != 1)):
        raise ValueError("carry_in must be 0 or 1")
    g = a & b
    p = a ^ b
    total = np.zeros(np.broadcast(a, b, cin).shape, dtype=np.int64)
    c0 = np.broadcast_to(cin, total.shape).copy()
    for grp in range(width // GROUP_BITS):
        base = grp * GROUP_BITS
        gb = [(g >> (base + i)) & 1 for i in range(GROUP_BITS)]
        pb = [(p >> (base + i)) & 1 for i in range(GROUP_BITS)]
        c1 = gb[0] | (pb[0] & c0)
        c2 = gb[1] | (pb[1] & gb[0]) | (pb[1] & pb[0] & c0)
        c3 = (
            gb[2]
            | (pb[2] & gb[1])
            | (pb[2] & pb[1] & gb[0])
            | (pb[2] & pb[1] & pb[0] & c0)
        )
        c4 = (
            gb[3]
            | (pb[3] & gb[2])
            | (pb[3] & pb[2] & gb[1])
            | (pb[3] & pb[2] & pb[1] & gb[0])
            | (pb[3] & pb[2] & pb[1] & pb[0] & c0)
        )
        s = (pb[0] ^ c0) | ((pb[1] ^ c1) << 1) | ((pb[2] ^ c2) << 2) | ((pb[3] ^ c3) << 3)
        total |= s << base
        c0 = c4
    return total, c0


def critical_path_gates(width: int, adder_kind: str = "mcla") -> int:
    """Longest gate path under a unit-delay model.

    ripple: 2 gates per bit through the carry chain plus the final sum.
    mcla:   4 to the first group carry-out, 2 per further group, 3 out.
    """
    if adder_kind == "ripple":
        if width < 1:
            raise ValueError(f"ripple width must be >= 1, got {width}")
        return 2 * width + 1
    if adder_kind == "mcla":
        _check_width(width)
        return 4 + 2 * (width // GROUP_BITS - 1) + 3
    raise ValueError(f"adder_kind must be 'ripple' or 'mcla', got {adder_kind!r}")
