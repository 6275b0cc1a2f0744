"""Assembly of the asymptotic value of gamma_n.

Every contribution has the shape

    -Im J_k ~ B e^(nA) / sqrt(n) * [cos(phi) * sum C_s (1/2)_s n^-s
                                    - sin(phi) * sum D_s (1/2)_s n^-s]

with phi = n*a + b (minus 2*pi*k*alpha in the Hurwitz case). The prefactor
is kept as a natural log; only the bracket is an ordinary number.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .coeffs import closed_form_constants, coefficient_set, pochhammer
from .errors import InvalidInputError, PrecisionError
from .numerics import (
    LogScaled,
    PrecisionContext,
    bits_for_digits,
    relative_error,
    signed_log_sum,
    to_log_scaled,
)
from .saddle import Frame, SaddleSpec, frame, solve_saddle

log = logging.getLogger(__name__)

MODES = ("theorem1", "theorem2", "leading")
MODE_ALIASES = {"t1": "theorem1", "t2": "theorem2", "leading": "leading"}
SMALL_COS = 1e-3
MAX_AUTO_BITS = 1 << 14


def default_kmax(n: int) -> int:
    """Number of saddle contributions worth keeping at this n."""
    if n >= 75:
        return 1
    if n >= 30:
        return 2
    return 3


@dataclass(frozen=True)
class ExpansionRequest:
    n: int
    s_max: int = 6
    k_max: int | None = None
    mode: str = "theorem1"
    hurwitz_alpha: object = None
    ctx: PrecisionContext = field(default_factory=PrecisionContext)

    def __post_init__(self):
        mode = MODE_ALIASES.get(self.mode, self.mode)
        if mode not in MODES:
            raise InvalidInputError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "mode", mode)
        if int(self.n) != self.n or self.n < 1:
            raise InvalidInputError(f"n must be a positive integer, got {self.n!r}")
        if self.s_max < 0:
            raise InvalidInputError("s_max must be >= 0")
        if self.k_max is None:
            object.__setattr__(self, "k_max", default_kmax(self.n))
        if self.k_max < 1:
            raise InvalidInputError("k_max must be >= 1")
        if self.hurwitz_alpha is not None and _as_fraction_or_str(self.hurwitz_alpha) <= 0:
            raise InvalidInputError(f"alpha must be positive, got {self.hurwitz_alpha!r}")


@dataclass(frozen=True)
class Contribution:
    """One saddle's term -Im J_k, with its bracket and diagnostics."""

    k: int
    value: LogScaled
    ln_prefactor: object
    bracket: object
    phase: object
    cos_factor: object
    terms: tuple  # (cos-series term, sin-series term) per s
    truncation_flag: bool
    t0: object
    frame: Frame


@dataclass(frozen=True)
class GammaEstimate:
    n: int
    mode: str
    value: LogScaled
    per_k: tuple  # ((k, LogScaled), ...)
    terms: tuple  # per-s (cos term, sin term) of the k = 1 bracket
    truncation_flag: bool
    cos_factor: object
    bracket: object
    ln_prefactor: object
    s_max: int
    k_max: int
    alpha: object = None
    working_bits: int = 0
    warnings: tuple = ()
    contributions: tuple = field(default=(), repr=False, compare=False)
    achieved_digits: object = None
    hurwitz_cn: LogScaled | None = None


@dataclass(frozen=True)
class BoundsReport:
    n: int
    berndt: LogScaled
    zhang_williams: LogScaled
    matsuoka: LogScaled | None
    lambda_n: object


def _as_fraction_or_str(alpha):
    try:
        return Fraction(str(alpha))
    except (ValueError, ZeroDivisionError):
        return Fraction(float(alpha))


def _alpha_parts(alpha):
    """Split alpha into an exact fraction usable for phase shifts."""
    if alpha is None:
        return None
    return _as_fraction_or_str(alpha)


def _digit_count(ctx: PrecisionContext) -> int:
    return max(12, min(80, int(ctx.working_bits * 0.30103) - 10))


def _phase_shift(k: int, alpha: Fraction | None, mp):
    """2*pi*frac(k*alpha); exactly zero for integer k*alpha."""
    if alpha is None:
        return mp.zero
    frac = (k * alpha) % 1
    if frac == 0:
        return mp.zero
    return 2 * mp.pi * mp.mpf(frac.numerator) / frac.denominator


def _reduce_phase(x, mp):
    twopi = 2 * mp.pi
    return x - twopi * mp.floor(x / twopi)


def _assemble(n, k, fr: Frame, shift, cos_coeffs, sin_coeffs, ctx, t0) -> Contribution:
    """Combine the frame with per-s series coefficients (already scaled by n^-s)."""
    mp = ctx.mp
    phase = _reduce_phase(n * fr.a + fr.b, mp)
    if shift != 0:
        phase = _reduce_phase(phase - shift, mp)
    cphi, sphi = mp.cos(phase), mp.sin(phase)
    terms = tuple((cphi * c, -sphi * d) for c, d in zip(cos_coeffs, sin_coeffs))
    bracket = mp.fsum(t[0] for t in terms) + mp.fsum(t[1] for t in terms)
    ln_pre = mp.log(fr.B) + n * fr.A - mp.log(n) / 2
    mags = [abs(mp.mpc(c, d)) for c, d in zip(cos_coeffs, sin_coeffs)]
    flag = any(mags[s] >= mags[s - 1] for s in range(1, len(mags)))
    digits = _digit_count(ctx)
    if bracket == 0:
        value = LogScaled.zero()
    else:
        value = to_log_scaled(1 if bracket > 0 else -1, ln_pre + mp.log(abs(bracket)), digits, ctx)
    return Contribution(k, value, ln_pre, bracket, phase, cphi, terms, flag, t0, fr)


def saddle_contribution(n: int, k: int, s_max: int, ctx: PrecisionContext, alpha=None) -> Contribution:
    """-Im J_k (times e^(-2 pi i k alpha) for Hurwitz) from the series through s_max."""
    mp = ctx.mp
    sp = solve_saddle(SaddleSpec(n, k), ctx)
    fr = frame(sp)
    cset = coefficient_set(sp, s_max)
    half = mp.mpf(1) / 2
    nn = mp.mpf(n)
    scale = [pochhammer(half, s) / nn**s for s in range(s_max + 1)]
    cos_c = [cset.C[s] * scale[s] for s in range(s_max + 1)]
    sin_c = [cset.D[s] * scale[s] for s in range(s_max + 1)]
    return _assemble(n, k, fr, _phase_shift(k, _alpha_parts(alpha), mp), cos_c, sin_c, ctx, sp.t0)


def theorem2_contribution(n: int, ctx: PrecisionContext, alpha=None) -> Contribution:
    mp = ctx.mp
    sp = solve_saddle(SaddleSpec(n, 1), ctx)
    fr = frame(sp)
    cf = closed_form_constants(sp.t0)
    nn = mp.mpf(n)
    cos_c = [mp.one, cf.c1 / nn, cf.c2 / nn**2]
    sin_c = [mp.zero, cf.d1 / nn, cf.d2 / nn**2]
    return _assemble(n, 1, fr, _phase_shift(1, _alpha_parts(alpha), mp), cos_c, sin_c, ctx, sp.t0)


def _warnings(n: int, contrib: Contribution, mode: str, k_max: int) -> tuple:
    out = []
    if abs(contrib.cos_factor) < SMALL_COS and mode == "leading":
        out.append(
            f"|cos(na+b)| = {float(abs(contrib.cos_factor)):.3e} is small; "
            "the leading-order sign is unreliable"
        )
    if n < 10:
        out.append("n < 10: contributions from many saddles matter; accuracy is limited")
    if mode == "theorem1" and contrib.truncation_flag:
        out.append("series terms stopped decreasing before s_max (optimal truncation passed)")
    return tuple(out)


def _estimate(n, mode, contribs, s_max, k_max, ctx, alpha) -> GammaEstimate:
    first = contribs[0]
    if len(contribs) == 1:
        value = first.value
    else:
        sign, ln_mag = signed_log_sum([(c.value.sign, c.value.ln_magnitude) for c in contribs], ctx)
        value = to_log_scaled(sign, ln_mag, _digit_count(ctx), ctx) if sign else LogScaled.zero()
    return GammaEstimate(
        n=n,
        mode=mode,
        value=value,
        per_k=tuple((c.k, c.value) for c in contribs),
        terms=first.terms,
        truncation_flag=first.truncation_flag,
        cos_factor=first.cos_factor,
        bracket=first.bracket,
        ln_prefactor=first.ln_prefactor,
        s_max=s_max,
        k_max=k_max,
        alpha=alpha,
        working_bits=ctx.working_bits,
        warnings=_warnings(n, first, mode, k_max),
        contributions=tuple(contribs),
    )


def eval_theorem1(req: ExpansionRequest) -> GammaEstimate:
    """k = 1 series truncated after s = req.s_max."""
    c = saddle_contribution(req.n, 1, req.s_max, req.ctx, req.hurwitz_alpha)
    return _estimate(req.n, req.mode, [c], req.s_max, 1, req.ctx, req.hurwitz_alpha)


def eval_Jk(n: int, k: int, s_max: int, ctx: PrecisionContext | None = None, alpha=None) -> LogScaled:
    """-Im J_k from the k-th principal saddle."""
    ctx = ctx or PrecisionContext()
    return saddle_contribution(n, k, s_max, ctx, alpha).value


def eval_multi(req: ExpansionRequest) -> GammaEstimate:
    """Sum of -Im J_k for k = 1..req.k_max."""
    contribs = [saddle_contribution(req.n, k, req.s_max, req.ctx, req.hurwitz_alpha) for k in range(1, req.k_max + 1)]
    return _estimate(req.n, req.mode, contribs, req.s_max, req.k_max, req.ctx, req.hurwitz_alpha)


def eval_theorem2(n: int, ctx: PrecisionContext | None = None, alpha=None) -> GammaEstimate:
    """Closed form with n-independent c1, d1, c2, d2."""
    ctx = ctx or PrecisionContext()
    c = theorem2_contribution(n, ctx, alpha)
    return _estimate(n, "theorem2", [c], 2, 1, ctx, alpha)


def eval_leading(n: int, ctx: PrecisionContext | None = None, alpha=None) -> GammaEstimate:
    """B e^(nA)/sqrt(n) cos(na + b)."""
    ctx = ctx or PrecisionContext()
    return eval_theorem1(ExpansionRequest(n, 0, 1, "leading", alpha, ctx))


def _dispatch(req: ExpansionRequest) -> GammaEstimate:
    if req.mode == "theorem2":
        return eval_theorem2(req.n, req.ctx, req.hurwitz_alpha)
    if req.mode == "leading":
        return eval_leading(req.n, req.ctx, req.hurwitz_alpha)
    return eval_multi(req)


def run(req: ExpansionRequest) -> GammaEstimate:
    """Dispatch on req.mode; with an alpha the result is gamma_n(alpha)."""
    if req.hurwitz_alpha is None:
        return _dispatch(req)
    return eval_hurwitz(req.n, req.hurwitz_alpha, req.s_max, req.ctx, req.k_max, req.mode)[1]


def _hurwitz_correction(n: int, alpha: Fraction, ctx: PrecisionContext):
    """Signed log terms turning C_n(alpha) into gamma_n(alpha).

    For alpha = alpha0 + m with alpha0 in (0, 1]:
    gamma_n(alpha) = C_n(alpha0) + log^n(alpha0)/alpha0 - sum_{j<m} log^n(alpha0+j)/(alpha0+j).
    """
    mp = ctx.mp
    m = -((-alpha) // 1) - 1  # ceil(alpha) - 1
    alpha0 = alpha - m
    out = []

    def term(x, sign):
        L = mp.log(x)
        if L == 0:
            return
        s = 1 if (L > 0 or n % 2 == 0) else -1
        out.append((sign * s, n * mp.log(abs(L)) - mp.log(x)))

    a0 = mp.mpf(alpha0.numerator) / alpha0.denominator
    term(a0, 1)
    for j in range(m):
        term(a0 + j, -1)
    return out


def eval_hurwitz(
    n: int,
    alpha,
    s_max: int | None = None,
    ctx: PrecisionContext | None = None,
    k_max: int = 1,
    mode: str | None = None,
):
    """(C_n(alpha), gamma_n(alpha)) estimates.

    The trig argument becomes n*a + b - 2*pi*k*alpha. With ``s_max=None`` the
    closed three-term form is used, otherwise the series through ``s_max``
    (``mode`` overrides this choice when given).
    """
    ctx = ctx or PrecisionContext()
    frac = _alpha_parts(alpha)
    if frac is None or frac <= 0:
        raise InvalidInputError(f"alpha must be positive, got {alpha!r}")
    if mode is None:
        mode = "theorem2" if s_max is None else "theorem1"
    cn = _dispatch(ExpansionRequest(n, s_max or 0, k_max, mode, frac, ctx))
    corr = _hurwitz_correction(n, frac, ctx)
    if not corr:
        return cn, replace(cn, hurwitz_cn=cn.value)
    sign, ln_mag = signed_log_sum([(cn.value.sign, cn.value.ln_magnitude)] + corr, ctx)
    value = to_log_scaled(sign, ln_mag, _digit_count(ctx), ctx) if sign else LogScaled.zero()
    return cn, replace(cn, value=value, hurwitz_cn=cn.value)


def bounds(n: int, ctx: PrecisionContext | None = None) -> BoundsReport:
    """Upper bounds for |gamma_n|: Berndt, Zhang-Williams and (n >= 10) Matsuoka."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    digits = _digit_count(ctx)
    base = mp.log(3 + (-1) ** n) + mp.loggamma(n) - n * mp.log(mp.pi)
    ln_lambda = n * mp.log(mp.mpf(2) / n) - mp.log(mp.pi) / 2 + mp.loggamma(n + mp.mpf(1) / 2)
    berndt = to_log_scaled(1, base, digits, ctx)
    zw = to_log_scaled(1, base + ln_lambda, digits, ctx)
    mats = None
    if n >= 10:
        mats = to_log_scaled(1, -4 * mp.ln10 + n * mp.log(mp.log(n)), digits, ctx)
    return BoundsReport(n, berndt, zw, mats, mp.exp(ln_lambda))


def start_bits(n: int, digits: int, ctx: PrecisionContext) -> int:
    """Working precision to start the double-and-compare loop from."""
    # n*a loses log2(n) bits to the integer part of the phase
    need = bits_for_digits(digits) + n.bit_length() + 2 * ctx.guard_bits
    bits = max(ctx.working_bits, need)
    return ((bits + 63) // 64) * 64


def evaluate(req: ExpansionRequest, digits: int = 12, max_bits: int = MAX_AUTO_BITS) -> GammaEstimate:
    """Run ``req`` with precision raised until a doubled run agrees to ``digits``."""
    bits = start_bits(req.n, digits, req.ctx)
    tol = PrecisionContext(bits).mp.mpf(10) ** (-(digits + 2))
    prev = run(replace(req, ctx=req.ctx.with_bits(bits)))
    agree = None
    while bits <= max_bits:
        nxt_ctx = req.ctx.with_bits(2 * bits)
        cur = run(replace(req, ctx=nxt_ctx))
        if prev.value.sign == cur.value.sign:
            if cur.value.is_zero:
                return cur
            err = relative_error(prev.value, cur.value, nxt_ctx)
            agree = float(-nxt_ctx.mp.log10(err)) if err else float("inf")
            if err <= tol:
                return replace(cur, achieved_digits=agree)
        log.debug("n=%d: %d vs %d bits disagree, raising precision", req.n, bits, 2 * bits)
        prev, bits = cur, 2 * bits
    raise PrecisionError(f"could not certify {digits} digits for n={req.n} below {max_bits} bits", agree)
