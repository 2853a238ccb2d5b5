"""Recursive integrator-comb decimator with wraparound arithmetic.

N integrator stages run at the input rate, every R-th chain output is
passed to N comb stages (differential delay M) at the output rate.  All
registers wrap modulo their width, never saturate: intermediate
integrator overflow is harmless as long as the output register is at
least total_width(config) bits, because addition and subtraction modulo
2**W commute with dropping high bits.

LSBs may be dropped between integrator stages per a WordLengthPlan.  The
drop is an arithmetic (sign-preserving) right shift of the wrapped stage
output, which equals the floor-shifted exact value modulo the narrower
next-stage width, so the plan widths fully determine the bit-exact
result.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .fixedpoint import FixedSequence, to_unsigned, wrap
from .mcla import Mcla, adder_width
from .oracle import dropped_sample_coefficients
from .params import (
    ConfigError,
    FilterConfig,
    WidthMismatchError,
    WordLengthPlan,
    full_precision_plan,
)

ADDER_MODES = ("fast", "gate-model")

_VECTOR_MAX_WIDTH = 62


def integrator_step(acc: int, x: int, width: int) -> int:
    """One accumulator update: (acc + x) wrapped to width bits."""
    return wrap(acc + x, width)


def comb_step(delay_line, x: int, width: int) -> int:
    """One comb update: x minus the sample M steps ago, wrapped.

    delay_line is a mutable sequence of the M most recent inputs,
    oldest first; the new input is pushed as the oldest is consumed.
    """
    oldest = delay_line.popleft() if isinstance(delay_line, deque) else delay_line.pop(0)
    delay_line.append(x)
    return wrap(x - oldest, width)


def _check_plan(config: FilterConfig, plan: WordLengthPlan):
    n = config.order_n
    if len(plan.stage_widths) != n:
        raise ConfigError(
            f"plan has {len(plan.stage_widths)} stages, config wants {n}"
        )
    for a, b in zip(plan.stage_widths, plan.stage_widths[1:]):
        if b > a:
            raise ConfigError("recursive plan widths must be non-increasing")
    for i in range(n - 1):
        if plan.stage_widths[i] - plan.truncation_bits[i] != plan.stage_widths[i + 1]:
            raise ConfigError(
                f"stage {i}: width {plan.stage_widths[i]} minus "
                f"{plan.truncation_bits[i]} dropped bits must equal the next "
                f"stage width {plan.stage_widths[i + 1]}"
            )
    if plan.truncation_bits[-1] != 0:
        raise ConfigError("the last integrator stage feeds the comb untruncated")


class CicFilter:
    """Streaming recursive decimator instance owning its register state.

    adder_mode "fast" uses native integer adds; "gate-model" routes every
    addition and subtraction through the gate-level look-ahead adder.
    Both produce identical bits.
    """

    def __init__(self, config: FilterConfig, plan: WordLengthPlan | None = None,
                 adder_mode: str = "fast"):
        if config.arch != "cic":
            raise ConfigError(f"CicFilter needs arch='cic', got {config.arch!r}")
        if adder_mode not in ADDER_MODES:
            raise ConfigError(f"adder_mode must be one of {ADDER_MODES}")
        self.config = config
        self.plan = plan if plan is not None else full_precision_plan(config)
        _check_plan(config, self.plan)
        self.adder_mode = adder_mode
        self.output_width = self.plan.stage_widths[-1]
        self._adders = None
        if adder_mode == "gate-model":
            self._adders = [Mcla(adder_width(w)) for w in self.plan.stage_widths]
            self._comb_adder = Mcla(adder_width(self.output_width))
        self.reset()

    def reset(self):
        n = self.config.order_n
        self._accs = [0] * n
        self._combs = [deque([0] * self.config.diff_delay_m) for _ in range(n)]
        self._phase = 0

    @property
    def integrator_registers(self) -> int:
        """Storage elements in the integrator section: one accumulator per stage."""
        return self.config.order_n

    @property
    def storage_elements(self) -> int:
        return self.integrator_registers + self.config.order_n * self.config.diff_delay_m

    def pipeline_boundaries(self):
        """Names of the stage outputs where a pipeline register may sit.

        Only integrator stages qualify; the comb section runs R times
        slower and is never pipelined.
        """
        return tuple(f"integrator{i}" for i in range(self.config.order_n))

    def _add(self, a, b, width, adder):
        if self.adder_mode == "fast":
            return wrap(a + b, width)
        w4 = adder.width
        s, _ = adder.add(to_unsigned(a, w4), to_unsigned(b, w4), 0)
        return wrap(s, width)

    def _sub(self, a, b, width, adder):
        if self.adder_mode == "fast":
            return wrap(a - b, width)
        w4 = adder.width
        s, _ = adder.add(to_unsigned(a, w4), to_unsigned(~b, w4), 1)
        return wrap(s, width)

    def push(self, x: int):
        """Feed one input sample; returns an output sample or None."""
        widths = self.plan.stage_widths
        trunc = self.plan.truncation_bits
        accs = self._accs
        v = x
        for i in range(self.config.order_n):
            adder = self._adders[i] if self._adders else None
            acc = self._add(accs[i], v, widths[i], adder)
            accs[i] = acc
            v = acc >> trunc[i] if trunc[i] else acc
        out = None
        if self._phase == 0:
            w = self.output_width
            for line in self._combs:
                oldest = line.popleft()
                line.append(v)
                v = self._sub(v, oldest, w, self._comb_adder if self._adders else None)
            out = v
        self._phase = (self._phase + 1) % self.config.decim_r
        return out

    def process(self, input: FixedSequence) -> FixedSequence:
        """Run a block of samples, continuing from the current state."""
        if input.width != self.config.input_width:
            raise WidthMismatchError(
                f"input width {input.width} does not match config "
                f"input_width {self.config.input_width}"
            )
        if len(input) == 0:
            return FixedSequence((), self.output_width)
        if self.adder_mode == "fast" and max(self.plan.stage_widths) <= _VECTOR_MAX_WIDTH:
            return FixedSequence(self._process_vector(input.samples), self.output_width)
        out = []
        for x in input.samples:
            y = self.push(x)
            if y is not None:
                out.append(y)
        return FixedSequence(out, self.output_width)

    def _process_vector(self, samples):
        # Same arithmetic as push(), whole-block: a cumulative sum wraps
        # modulo 2**64 which preserves every residue modulo the narrower
        # stage widths, so wrapping once per element after the cumsum
        # matches the per-step wrap.
        widths = self.plan.stage_widths
        trunc = self.plan.truncation_bits
        v = np.asarray(samples, dtype=np.int64)
        for i in range(self.config.order_n):
            w = widths[i]
            c = np.cumsum(v, dtype=np.int64)
            if self._accs[i]:
                c += np.int64(self._accs[i])
            c = _wrap_vec(c, w)
            self._accs[i] = int(c[-1])
            v = (c >> trunc[i]) if trunc[i] else c
        r = self.config.decim_r
        first = (-self._phase) % r
        self._phase = (self._phase + len(v)) % r
        dec = v[first::r]
        w = self.output_width
        m = self.config.diff_delay_m
        for line in self._combs:
            hist = np.fromiter(line, dtype=np.int64, count=m)
            seq = np.concatenate([hist, dec])
            out = _wrap_vec(seq[m:] - seq[:-m], w)
            tail = seq[len(seq) - m:]
            line.clear()
            line.extend(int(t) for t in tail)
            dec = out
        return dec.tolist()


def _wrap_vec(values, width):
    if width >= 63:
        raise ValueError("vector wrap supports widths up to 62")
    full = np.int64(1) << np.int64(width)
    mask = full - 1
    m = values & mask
    return m - ((m >> np.int64(width - 1)) << np.int64(width))


def cic_process(config: FilterConfig, plan: WordLengthPlan | None,
                input: FixedSequence, adder_mode: str = "fast") -> FixedSequence:
    """One-shot convenience: fresh filter, zero state, process, done."""
    return CicFilter(config, plan, adder_mode).process(input)


def truncation_error_bound(config: FilterConfig, plan: WordLengthPlan) -> int:
    """Worst-case |truncated - floor-shifted full-precision| output error.

    Each stage drop leaves a remainder in [0, 2**T_i - 1]; the remainder
    propagates through the rest of the cascade with at most the absolute
    tap-sum gain of that path.  Summing the worst cases over stages gives
    a bound the streaming filter can never exceed.
    """
    _check_plan(config, plan)
    bound = 0
    for i, t in enumerate(plan.truncation_bits):
        if t == 0:
            continue
        taps = dropped_sample_coefficients(config, i + 1)
        gain = sum(abs(c) for c in taps)
        bound += ((1 << t) - 1) * gain
    return bound
