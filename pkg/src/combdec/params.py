"""Design parameters and word-length planning for comb decimators.

A decimator is described by four numbers: the cascade order N, the
differential delay M, the decimation ratio R and the input sample width.
From those this module derives the worst-case register growth, the
output width that never loses data, and per-stage width schedules for
the recursive (integrator-comb) and non-recursive realizations.
"""

from __future__ import annotations

from dataclasses import dataclass


class ConfigError(ValueError):
    """Raised for design tuples or plans that violate a precondition."""


class WidthMismatchError(ConfigError):
    """Raised when sample data declares a width the config does not expect."""


ARCHITECTURES = ("cic", "nonrec")


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def ceil_log2(n: int) -> int:
    """Smallest k with 2**k >= n, for integer n >= 1."""
    if n < 1:
        raise ValueError(f"ceil_log2 needs n >= 1, got {n}")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class FilterConfig:
    """The design tuple (N, M, R, input width) plus the architecture selector.

    arch "cic" is the recursive integrator-comb form and accepts any R >= 1.
    arch "nonrec" is the non-recursive form built from halving stages and
    requires R to be a power of two (>= 2) with M = 1.
    """

    order_n: int
    diff_delay_m: int
    decim_r: int
    input_width: int
    arch: str = "cic"

    def __post_init__(self):
        if self.arch not in ARCHITECTURES:
            raise ConfigError(f"arch must be one of {ARCHITECTURES}, got {self.arch!r}")
        if self.order_n < 1:
            raise ConfigError(f"order_n must be >= 1, got {self.order_n}")
        if self.diff_delay_m < 1:
            raise ConfigError(f"diff_delay_m must be >= 1, got {self.diff_delay_m}")
        if self.decim_r < 1:
            raise ConfigError(f"decim_r must be >= 1, got {self.decim_r}")
        if self.input_width < 1:
            raise ConfigError(f"input_width must be >= 1, got {self.input_width}")
        if self.arch == "nonrec":
            if self.decim_r < 2 or not is_power_of_two(self.decim_r):
                raise ConfigError(
                    f"nonrec needs decim_r a power of two >= 2, got {self.decim_r}"
                )
            if self.diff_delay_m != 1:
                raise ConfigError(
                    f"nonrec needs diff_delay_m = 1, got {self.diff_delay_m}"
                )


@dataclass(frozen=True)
class WordLengthPlan:
    """Per-stage register widths and the LSBs dropped after each stage."""

    stage_widths: tuple
    truncation_bits: tuple

    def __post_init__(self):
        object.__setattr__(self, "stage_widths", tuple(int(w) for w in self.stage_widths))
        object.__setattr__(self, "truncation_bits", tuple(int(t) for t in self.truncation_bits))
        if len(self.stage_widths) != len(self.truncation_bits):
            raise ConfigError("stage_widths and truncation_bits must have equal length")
        if not self.stage_widths:
            raise ConfigError("a plan needs at least one stage")
        for w in self.stage_widths:
            if w < 1:
                raise ConfigError(f"stage width must be >= 1, got {w}")
        for t in self.truncation_bits:
            if t < 0:
                raise ConfigError(f"truncation bits must be >= 0, got {t}")

    @property
    def total_truncation(self) -> int:
        return sum(self.truncation_bits)


def max_register_growth(config: FilterConfig) -> int:
    """Worst-case DC gain (R*M)**N, exact."""
    return (config.decim_r * config.diff_delay_m) ** config.order_n


def total_width(config: FilterConfig) -> int:
    """Smallest register width that never overflows on full-scale input.

    input_width plus the ceiling of log2 of the worst-case growth.  Using
    integer bit_length keeps this exact for any R, M, N.
    """
    return config.input_width + ceil_log2(max_register_growth(config))


def full_precision_plan(config: FilterConfig) -> WordLengthPlan:
    """Every stage at total_width, nothing truncated."""
    w = total_width(config)
    n = config.order_n
    return WordLengthPlan((w,) * n, (0,) * n)


def cic_truncation_plan(config: FilterConfig, widths) -> WordLengthPlan:
    """Build a recursive-form plan from a list of integrator widths.

    widths[i] is the register width of integrator stage i; the LSBs
    dropped after stage i are widths[i] - widths[i+1].  The last stage
    feeds the decimator and comb section untruncated.
    """
    widths = tuple(int(w) for w in widths)
    n = config.order_n
    if len(widths) != n:
        raise ConfigError(f"expected {n} stage widths, got {len(widths)}")
    w0 = total_width(config)
    if widths[0] < w0:
        raise ConfigError(
            f"first stage width {widths[0]} is below the no-overflow width {w0}"
        )
    for a, b in zip(widths, widths[1:]):
        if b > a:
            raise ConfigError(f"stage widths must be non-increasing, got {a} -> {b}")
    trunc = tuple(widths[i] - widths[i + 1] for i in range(n - 1)) + (0,)
    return WordLengthPlan(widths, trunc)


def nonrec_width_schedule(config: FilterConfig) -> tuple:
    """Adder output widths through the non-recursive cascade.

    Entry 0 is the input width; each halving stage adds N bits, so the
    schedule has S+1 entries for R = 2**S and the last entry is the
    output width.
    """
    r = config.decim_r
    if r < 2 or not is_power_of_two(r):
        raise ConfigError(f"non-recursive schedule needs R a power of two >= 2, got {r}")
    s = r.bit_length() - 1
    b = config.input_width
    n = config.order_n
    return tuple(b + k * n for k in range(s + 1))


_CONFIG_KEYS = ("n", "m", "r", "bin", "arch")


def config_to_text(config: FilterConfig) -> str:
    """Flat key=value form, e.g. "n=5 m=1 r=16 bin=5 arch=cic"."""
    return (
        f"n={config.order_n} m={config.diff_delay_m} r={config.decim_r} "
        f"bin={config.input_width} arch={config.arch}"
    )


def config_from_text(text: str) -> FilterConfig:
    """Parse the flat key=value form produced by config_to_text.

    Whitespace or newline separated.  Unknown keys and missing keys are
    rejected; arch defaults to cic.
    """
    fields = {}
    for token in text.split():
        if "=" not in token:
            raise ConfigError(f"malformed config token {token!r}")
        key, _, value = token.partition("=")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        if key in fields:
            raise ConfigError(f"duplicate config key {key!r}")
        fields[key] = value
    for key in ("n", "m", "r", "bin"):
        if key not in fields:
            raise ConfigError(f"missing config key {key!r}")
    try:
        return FilterConfig(
            order_n=int(fields["n"]),
            diff_delay_m=int(fields["m"]),
            decim_r=int(fields["r"]),
            input_width=int(fields["bin"]),
            arch=fields.get("arch", "cic"),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"non-integer value in config: {exc}") from exc
