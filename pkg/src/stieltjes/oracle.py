"""Brute-force ground truth for gamma_n(alpha).

gamma_n(alpha) = lim_{M->oo} [ sum_{j=0}^{M} log^n(j+alpha)/(j+alpha) - log^{n+1}(M+alpha)/(n+1) ]

The tail beyond a cutoff m is replaced by its Euler-Maclaurin expansion.
Derivatives of f(x) = L^n/x with L = log x are P_q(L)/x^(q+1), where the
integer polynomials obey P_0 = L^n, P_{q+1} = P_q' - (q+1) P_q.

Also holds the store of printed reference values.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import CertificationError, InvalidInputError, NoReferenceError
from .numerics import LogScaled, PrecisionContext, from_decimal, relative_error, to_log_scaled

ORACLE_CEILING = 30
SOURCES = ("table4", "printed_gamma0", "printed_large_n", "derived", "oracle")


@dataclass(frozen=True)
class EMConfig:
    m: int = 1000
    R: int = 12
    ctx: PrecisionContext = field(default_factory=PrecisionContext)

    def __post_init__(self):
        if self.m < 10:
            raise InvalidInputError("m must be >= 10")
        if not 1 <= self.R <= 30:
            raise InvalidInputError("R must lie in 1..30")

    @classmethod
    def for_n(cls, n: int, ctx: PrecisionContext | None = None) -> EMConfig:
        """Cutoff/order heuristics that certify ~30 digits for n up to ~100."""
        ctx = ctx or PrecisionContext()
        if n <= 5:
            return cls(1000, 12, ctx)
        if n <= 30:
            return cls(2000, 20, ctx)
        if n <= 80:
            return cls(10000, 28, ctx)
        return cls(20000, 28, ctx)

    def refined(self) -> EMConfig:
        return EMConfig(2 * self.m, min(30, self.R + 2), self.ctx)


@dataclass(frozen=True)
class OracleResult:
    value: LogScaled
    achieved_digits: float
    delta: object  # relative difference between the two runs
    config: EMConfig
    check_config: EMConfig


@functools.lru_cache(maxsize=None)
def _bernoulli_all(kmax: int) -> tuple:
    B = [Fraction(1)]
    for k in range(1, kmax + 1):
        acc = sum(math.comb(k + 1, j) * B[j] for j in range(k))
        B.append(-acc / (k + 1))
    return tuple(B)


def bernoulli_numbers(R: int) -> tuple:
    """Exact B_2, B_4, ..., B_2R."""
    if not 1 <= R <= 30:
        raise InvalidInputError("R must lie in 1..30")
    B = _bernoulli_all(2 * R)
    return tuple(B[2 * r] for r in range(1, R + 1))


@dataclass(frozen=True)
class LogPowerPolynomial:
    """Integer coefficients of P_q(L), lowest degree first."""

    q: int
    coeffs: tuple

    @classmethod
    def base(cls, n: int) -> LogPowerPolynomial:
        return cls(0, (0,) * n + (1,))

    def next(self) -> LogPowerPolynomial:
        c = self.coeffs
        q1 = self.q + 1
        deriv = [i * c[i] for i in range(1, len(c))] + [0]
        return LogPowerPolynomial(q1, tuple(d - q1 * x for d, x in zip(deriv, c)))

    def __call__(self, L):
        acc = 0
        for x in reversed(self.coeffs):
            acc = acc * L + x
        return acc


def log_power_polynomials(n: int, q_max: int) -> list:
    out = [LogPowerPolynomial.base(n)]
    for _ in range(q_max):
        out.append(out[-1].next())
    return out


def _alpha_mpf(alpha, mp):
    if isinstance(alpha, Fraction):
        return mp.mpf(alpha.numerator) / alpha.denominator
    return mp.mpf(alpha)


def _work_bits(n: int, cfg: EMConfig) -> int:
    # the partial sum and the log^(n+1) term cancel down to gamma_n(alpha)
    lm = math.log(cfg.m + 1)
    extra = (n + 1) * max(0.0, math.log2(lm)) + 2 * math.log2(cfg.m) + 64
    return cfg.ctx.working_bits + int(extra)


def em_raw(n: int, alpha, cfg: EMConfig):
    """One Euler-Maclaurin evaluation; returns an mpf at raised precision."""
    if n < 0:
        raise InvalidInputError("n must be >= 0")
    wctx = cfg.ctx.with_bits(_work_bits(n, cfg))
    mp = wctx.mp
    a = _alpha_mpf(alpha, mp)
    if a <= 0:
        raise InvalidInputError(f"alpha must be positive, got {alpha!r}")
    m, R = cfg.m, cfg.R
    head = mp.fsum(mp.log(j + a) ** n / (j + a) for j in range(m))
    x = m + a
    L = mp.log(x)
    polys = log_power_polynomials(n, 2 * R - 1)
    tail = -L ** (n + 1) / (n + 1) + L**n / x / 2
    for r, b in enumerate(bernoulli_numbers(R), start=1):
        q = 2 * r - 1
        deriv = polys[q](L) / x ** (q + 1)
        tail -= mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * r) * deriv
    return head + tail, wctx


def certify_em(n: int, alpha=1, cfg: EMConfig | None = None, digits: int | None = None) -> OracleResult:
    """em_raw at (m, R) and (2m, R+2); the agreement is the certificate."""
    cfg = cfg or EMConfig.for_n(n)
    check = cfg.refined()
    v1, _ = em_raw(n, alpha, cfg)
    v2, wctx = em_raw(n, alpha, check)
    mp = wctx.mp
    ndig = max(12, int(cfg.ctx.working_bits * 0.30103) - 8)
    if v2 == 0:
        raise CertificationError(f"oracle returned zero for n={n}", 0.0)
    delta = abs(v1 / v2 - 1)
    achieved = float(-mp.log10(delta)) if delta else float("inf")
    value = to_log_scaled(1 if v2 > 0 else -1, mp.log(abs(v2)), ndig, wctx)
    if digits is not None and achieved < digits:
        raise CertificationError(
            f"Euler-Maclaurin runs agree to {achieved:.1f} digits only (< {digits}); increase m or R",
            achieved,
        )
    return OracleResult(value, achieved, delta, cfg, check)


def em_gamma(n: int, alpha=1, cfg: EMConfig | None = None, digits: int | None = None) -> LogScaled:
    """Certified brute-force gamma_n(alpha)."""
    return certify_em(n, alpha, cfg, digits).value


@dataclass(frozen=True)
class ReferenceRecord:
    n: int
    alpha: str
    value: LogScaled
    source: str

    @property
    def digit_count(self) -> int:
        return len(self.value.digits)


def _default_fixture_path():
    return resources.files("stieltjes").joinpath("data/references.txt")


def parse_fixtures(text: str, ctx: PrecisionContext | None = None) -> list:
    """Records ``n alpha sign digits exponent10 source``; '#' starts a comment."""
    ctx = ctx or PrecisionContext(512)
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 6:
            raise InvalidInputError(f"fixture line {lineno}: expected 6 fields, got {len(parts)}")
        n, alpha, sign, digits, e10, source = parts
        if source not in SOURCES:
            raise InvalidInputError(f"fixture line {lineno}: unknown source {source!r}")
        sign = {"+1": 1, "1": 1, "-1": -1, "+": 1, "-": -1}[sign]
        out.append(ReferenceRecord(int(n), alpha, from_decimal(sign, digits, int(e10), ctx), source))
    return out


def format_fixture(rec: ReferenceRecord) -> str:
    sign = "+1" if rec.value.sign > 0 else "-1"
    return f"{rec.n} {rec.alpha} {sign} {rec.value.digits} {rec.value.exponent10} {rec.source}"


@functools.lru_cache(maxsize=8)
def load_fixtures(path: str | None = None) -> tuple:
    text = Path(path).read_text() if path else _default_fixture_path().read_text()
    return tuple(parse_fixtures(text))


@functools.lru_cache(maxsize=64)
def _oracle_record(n: int) -> ReferenceRecord:
    res = certify_em(n, 1, EMConfig.for_n(n), digits=25)
    return ReferenceRecord(n, "1", res.value, "oracle")


def references(n: int, path: str | None = None) -> list:
    return [r for r in load_fixtures(path) if r.n == n and r.alpha == "1"]


def reference(n: int, source: str | None = None, path: str | None = None) -> ReferenceRecord:
    """Stored record for n (most digits wins unless ``source`` is given).

    For n <= 30 without a stored record the Euler-Maclaurin oracle is run.
    """
    recs = references(n, path)
    if source is not None:
        recs = [r for r in recs if r.source == source]
        if source == "oracle" and n <= ORACLE_CEILING:
            return _oracle_record(n)
    if recs:
        return max(recs, key=lambda r: r.digit_count)
    if 0 <= n <= ORACLE_CEILING and source in (None, "oracle"):
        return _oracle_record(n)
    raise NoReferenceError(f"no reference value for n={n}" + (f" from {source}" if source else ""))


def oracle_agreement(n: int, estimate: LogScaled, ctx: PrecisionContext | None = None):
    """Relative error of an estimate against the oracle for n."""
    ctx = ctx or PrecisionContext()
    return relative_error(estimate, reference(n, "oracle").value, ctx)
