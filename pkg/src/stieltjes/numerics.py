"""Precision management and log-scaled values.

All multiprecision arithmetic goes through a private :class:`mpmath.MPContext`
owned by a :class:`PrecisionContext`, so no evaluation touches mpmath's global
``mp`` object. Values whose magnitude overflows any fixed exponent range
(gamma_100000 is about 10**83432) are carried as :class:`LogScaled`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .errors import InsufficientDigitsError, InvalidInputError

DEFAULT_WORKING_BITS = 256
DEFAULT_GUARD_BITS = 16


@dataclass(frozen=True)
class PrecisionContext:
    """Binary working precision plus guard bits.

    ``mp`` is an mpmath context private to this instance; every real
    (``mpf``) and complex (``mpc``) scalar created from it computes at
    ``working_bits`` with round-to-nearest.
    """

    working_bits: int = DEFAULT_WORKING_BITS
    guard_bits: int = DEFAULT_GUARD_BITS
    mp: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.working_bits < 64:
            raise InvalidInputError(f"working_bits must be >= 64, got {self.working_bits}")
        if self.guard_bits < 16:
            raise InvalidInputError(f"guard_bits must be >= 16, got {self.guard_bits}")
        ctx = mpmath.MPContext()
        ctx.prec = self.working_bits
        object.__setattr__(self, "mp", ctx)

    @property
    def tolerance(self):
        """2**(-working_bits + guard_bits), the certified relative tolerance."""
        return self.mp.ldexp(1, -self.working_bits + self.guard_bits)

    def doubled(self) -> PrecisionContext:
        return PrecisionContext(2 * self.working_bits, self.guard_bits)

    def with_bits(self, bits: int) -> PrecisionContext:
        return PrecisionContext(bits, self.guard_bits)

    def __reduce__(self):
        return (PrecisionContext, (self.working_bits, self.guard_bits))


def bits_for_digits(digits: int) -> int:
    """Binary precision holding ``digits`` decimal digits."""
    return int(digits * 3.3219280948873626) + 1


@dataclass(frozen=True)
class LogScaled:
    """A signed real stored as sign, natural log of magnitude and leading digits.

    ``digits`` holds the leading decimal digits (truncated, not rounded) of the
    mantissa, so the value is ``sign * 0.d1d2d3... * 10**(exponent10 + 1)``,
    i.e. ``sign * d1.d2d3... * 10**exponent10``.
    """

    sign: int
    ln_magnitude: object  # mpf; None for an exact zero
    digits: str
    exponent10: int

    @classmethod
    def zero(cls) -> LogScaled:
        return cls(0, None, "0", 0)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def mantissa(self) -> str:
        if self.is_zero:
            return "0"
        head, tail = self.digits[0], self.digits[1:]
        return f"{head}.{tail}" if tail else head

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        sign = "+" if self.sign > 0 else "-"
        return f"{sign}{self.mantissa()}e{self.exponent10}"

    def to_mpf(self, ctx: PrecisionContext):
        """Materialize as an mpf; only sensible when the exponent fits."""
        if self.is_zero:
            return ctx.mp.zero
        return self.sign * ctx.mp.exp(ctx.mp.mpf(self.ln_magnitude))

    def __neg__(self) -> LogScaled:
        return LogScaled(-self.sign, self.ln_magnitude, self.digits, self.exponent10)


def _context_of(x, ctx):
    if ctx is not None:
        return ctx.mp
    return getattr(x, "context", None) or PrecisionContext().mp


def to_log_scaled(sign: int, ln_mag, digit_count: int = 20, ctx: PrecisionContext | None = None) -> LogScaled:
    """Build a :class:`LogScaled` from a sign and a natural-log magnitude."""
    if sign not in (-1, 0, 1):
        raise InvalidInputError(f"sign must be -1, 0 or +1, got {sign!r}")
    if sign == 0:
        return LogScaled.zero()
    if digit_count < 1:
        raise InvalidInputError("digit_count must be >= 1")
    mp = _context_of(ln_mag, ctx)
    ln_mag = mp.mpf(ln_mag)
    ctx_bits = mp.prec
    if not mp.isfinite(ln_mag):
        raise InvalidInputError(f"non-finite ln magnitude: {ln_mag}")
    # |ln_mag| can be ~1e5, so the fractional part loses that many bits
    scale_bits = max(0, int(mp.mag(ln_mag))) if ln_mag else 0
    with mp.extraprec(scale_bits + 2 * bits_for_digits(digit_count) + 16):
        ln10 = mp.ln10
        e10 = int(mp.floor(ln_mag / ln10))
        scaled = mp.exp(ln_mag - e10 * ln10 + (digit_count - 1) * ln10)
        # ln_mag is only known to the caller's precision; a mantissa that sits
        # within that noise below a digit boundary belongs to the boundary
        noise = mp.ldexp(max(1, abs(ln_mag)), 8 - ctx_bits)
        head = int(mp.floor(scaled * (1 + noise)))
    lo, hi = 10 ** (digit_count - 1), 10**digit_count
    if head >= hi:
        e10 += 1
        head //= 10
    elif head < lo:
        e10 -= 1
        head = head * 10 + 9
    return LogScaled(sign, ln_mag, str(head), e10)


def from_decimal(sign: int, digits: str, exponent10: int, ctx: PrecisionContext | None = None) -> LogScaled:
    """LogScaled from a printed decimal ``sign * d1.d2d3... * 10**exponent10``."""
    if sign == 0:
        return LogScaled.zero()
    digits = digits.strip()
    if not digits.isdigit() or digits[0] == "0":
        raise InvalidInputError(f"bad mantissa digits: {digits!r}")
    mp = (ctx or PrecisionContext()).mp
    with mp.extraprec(bits_for_digits(len(digits)) + 32):
        mant = mp.mpf(int(digits)) / mp.mpf(10) ** (len(digits) - 1)
        ln_mag = mp.log(mant) + exponent10 * mp.ln10
    return LogScaled(sign, +ln_mag, digits, exponent10)


def from_mpf(x, digit_count: int = 20, ctx: PrecisionContext | None = None) -> LogScaled:
    mp = _context_of(x, ctx)
    if x == 0:
        return LogScaled.zero()
    return to_log_scaled(1 if x > 0 else -1, mp.log(abs(x)), digit_count, ctx)


def _round_digits(ls: LogScaled, k: int, mode: str) -> tuple[str, int]:
    digits, e10 = ls.digits, ls.exponent10
    if k > len(digits):
        raise InsufficientDigitsError(f"requested {k} digits, only {len(digits)} stored")
    head = int(digits[:k])
    if mode == "round" and k < len(digits):
        # round half up: stored digits are truncated, so a "5" tail is >= half
        if digits[k] >= "5":
            head += 1
    elif mode not in ("round", "truncate"):
        raise InvalidInputError(f"unknown rounding mode {mode!r}")
    if head >= 10**k:
        head //= 10
        e10 += 1
    return str(head), e10


def round_to(ls: LogScaled, k: int, mode: str = "round") -> LogScaled:
    """Copy of ``ls`` with its mantissa cut to ``k`` digits (for display)."""
    if ls.is_zero:
        return ls
    digits, e10 = _round_digits(ls, k, mode)
    return LogScaled(ls.sign, ls.ln_magnitude, digits, e10)


def compare_digits(a: LogScaled, b: LogScaled, k: int, mode: str = "round") -> bool:
    """True iff signs, exponents and the first ``k`` digits agree.

    ``mode="round"`` rounds both to ``k`` digits first; ``mode="truncate"``
    compares leading digits as printed with a trailing ellipsis.
    """
    if a.is_zero or b.is_zero:
        raise InvalidInputError("compare_digits requires non-zero values")
    if a.sign != b.sign:
        return False
    return _round_digits(a, k, mode) == _round_digits(b, k, mode)


def signed_log_sum(terms, ctx: PrecisionContext) -> tuple[int, object]:
    """Sum ``sign * exp(ln_mag)`` terms without leaving log space.

    Terms are rescaled by the largest magnitude before adding. Returns
    ``(sign, ln_mag)``; ``(0, None)`` when the sum vanishes.
    """
    mp = ctx.mp
    live = [(s, mp.mpf(l)) for s, l in terms if s != 0]
    if not live:
        return 0, None
    top = max(l for _, l in live)
    acc = mp.fsum(s * mp.exp(l - top) for s, l in live)
    if acc == 0:
        return 0, None
    return (1 if acc > 0 else -1), top + mp.log(abs(acc))


def relative_error(approx: LogScaled, exact: LogScaled, ctx: PrecisionContext):
    """|approx/exact - 1| computed from the log magnitudes."""
    mp = ctx.mp
    if exact.is_zero:
        raise InvalidInputError("relative error against zero")
    if approx.is_zero:
        return mp.one
    ratio = approx.sign * exact.sign * mp.exp(mp.mpf(approx.ln_magnitude) - mp.mpf(exact.ln_magnitude))
    return abs(ratio - 1)


def agreeing_digits(x: LogScaled, y: LogScaled, ctx: PrecisionContext):
    """Number of decimal digits to which two values agree (relative)."""
    mp = ctx.mp
    err = relative_error(x, y, ctx)
    if err == 0:
        return mp.inf
    return -mp.log10(err)
