"""Expansion coefficients at the saddle.

Local data:

    psi(t) - psi(t0) = sum_r alpha_r (t - t0)**(r + 2)
    f(t)             = sum_r beta_r  (t - t0)**r,     f(t) = e^-t / t * (1 - t/n)

Normalized steepest-descent coefficients chat_{2s} follow from Wojdylo's
formula over the partial ordinary Bell polynomials of alpha_1, alpha_2, ...
The factor (1 - t0/n) pulled out of the prefactor is folded back in to give
c'_{2s} = C_s + i D_s.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateSaddleError, InvalidInputError, OrderMismatchError
from .saddle import SaddlePoint


@dataclass(frozen=True)
class PhaseSeries:
    alpha: tuple  # alpha_0 .. alpha_R
    n: int
    k: int
    t0: object

    @property
    def order(self) -> int:
        return len(self.alpha) - 1


@dataclass(frozen=True)
class AmplitudeSeries:
    beta: tuple  # beta_0 .. beta_R
    n: int
    t0: object

    @property
    def order(self) -> int:
        return len(self.beta) - 1


@dataclass(frozen=True)
class BellTable:
    """Lower-triangular table ``entries[k][j]`` for 0 <= j <= k <= K."""

    entries: tuple

    @property
    def K(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, kj):
        k, j = kj
        if j > k:
            return 0
        return self.entries[k][j]


@dataclass(frozen=True)
class CoefficientSet:
    chat: tuple  # chat_{2s}, s = 0..S
    cprime: tuple  # c'_{2s}
    C: tuple  # Re c'_{2s}
    D: tuple  # Im c'_{2s}

    @property
    def s_max(self) -> int:
        return len(self.chat) - 1


@dataclass(frozen=True)
class ClosedFormConstants:
    c1: object
    d1: object
    c2: object
    d2: object
    p2: object
    p4: object


def _check_saddle(t0):
    if t0 == 0 or 1 + t0 == 0:
        raise DegenerateSaddleError(f"degenerate saddle t0={t0}")


def psi_derivative(t0, m: int, mp):
    """psi^(m)(t0) for m >= 2 with the saddle condition substituted.

    At a saddle (2*pi*i*k/n) e^t0 = -1/t0, so every derivative of the
    exponential part collapses to 1/t0.
    """
    if m < 2:
        raise InvalidInputError("closed form holds for m >= 2 only")
    return 1 / t0 + (-1) ** m * mp.factorial(m - 1) / t0**m


def phase_taylor(saddle: SaddlePoint, order: int) -> PhaseSeries:
    """alpha_0 .. alpha_order, alpha_r = psi^(r+2)(t0) / (r+2)!."""
    if order < 2:
        raise InvalidInputError("phase order must be >= 2")
    t0 = saddle.t0
    _check_saddle(t0)
    mp = saddle.ctx.mp
    alpha = tuple(psi_derivative(t0, r + 2, mp) / mp.factorial(r + 2) for r in range(order + 1))
    return PhaseSeries(alpha, saddle.spec.n, saddle.spec.k, t0)


def amp_taylor(saddle: SaddlePoint, n: int, order: int) -> AmplitudeSeries:
    """beta_0 .. beta_order of f(t0 + d) = e^-t0 * e^-d * 1/(t0 + d) * (1 - (t0 + d)/n)."""
    if order < 0:
        raise InvalidInputError("amplitude order must be >= 0")
    t0 = saddle.t0
    _check_saddle(t0)
    mp = saddle.ctx.mp
    R = order
    exp_part = [mp.mpf(-1) ** r / mp.factorial(r) for r in range(R + 1)]
    recip = [(-1) ** r / t0 ** (r + 1) for r in range(R + 1)]
    prod = [mp.mpc(0)] * (R + 1)
    for i, e in enumerate(exp_part):
        for j in range(R + 1 - i):
            prod[i + j] += e * recip[j]
    lin0 = 1 - t0 / n
    scale = mp.exp(-t0)
    beta = tuple(scale * (prod[r] * lin0 - (prod[r - 1] / n if r else 0)) for r in range(R + 1))
    return AmplitudeSeries(beta, n, t0)


def bell_table(phase: PhaseSeries, K: int) -> BellTable:
    """Partial ordinary Bell polynomials B_kj(alpha_1, ..., alpha_{k-j+1})."""
    if K > phase.order:
        raise OrderMismatchError(f"Bell table to K={K} needs alpha_1..alpha_{K}, phase order is {phase.order}")
    alpha = phase.alpha
    zero = alpha[0] * 0
    rows = [[zero + 1]]
    for k in range(1, K + 1):
        row = [zero]
        for j in range(1, k + 1):
            acc = zero
            for r in range(1, k - j + 2):
                prev = rows[k - r]
                if j - 1 < len(prev):
                    acc += alpha[r] * prev[j - 1]
            row.append(acc)
        rows.append(row)
    return BellTable(tuple(tuple(r) for r in rows))


def pochhammer(a, j: int):
    """Rising factorial (a)_j by ascending product."""
    out = a * 0 + 1
    for i in range(j):
        out *= a + i
    return out


def wojdylo(phase: PhaseSeries, amp: AmplitudeSeries, s_max: int) -> tuple:
    """chat_{2s} for s = 0..s_max."""
    K = 2 * s_max
    if phase.order < K or amp.order < K:
        raise OrderMismatchError(f"s_max={s_max} needs series through order {K}")
    alpha0 = phase.alpha[0]
    if alpha0 == 0:
        raise DegenerateSaddleError("alpha_0 vanishes")
    bell = bell_table(phase, K)
    beta = amp.beta
    mp = alpha0.context
    half = mp.mpf(1) / 2
    out = []
    for s in range(s_max + 1):
        idx = 2 * s
        # (idx/2 + 1/2)_j / (j! alpha0^j), shared across k
        weights = [(-1) ** j * pochhammer(s + half, j) / (mp.factorial(j) * alpha0**j) for j in range(idx + 1)]
        total = 0
        for k in range(idx + 1):
            inner = mp.fsum(weights[j] * bell[k, j] for j in range(k + 1))
            total += beta[idx - k] / beta[0] * inner
        out.append(total / alpha0**s)
    return tuple(out)


def chat_direct(saddle: SaddlePoint) -> tuple:
    """chat_2 and chat_4 from the explicit Psi_m / F_m formulas."""
    t0 = saddle.t0
    _check_saddle(t0)
    mp = saddle.ctx.mp
    d2 = psi_derivative(t0, 2, mp)
    P3, P4, P5, P6 = (psi_derivative(t0, m, mp) / d2 for m in (3, 4, 5, 6))
    beta = amp_taylor(saddle, saddle.spec.n, 4).beta
    F1, F2, F3, F4 = (mp.factorial(m) * beta[m] / beta[0] for m in (1, 2, 3, 4))

    c2 = (2 * F2 - 2 * P3 * F1 + mp.mpf(5) / 6 * P3**2 - P4 / 2) / (2 * d2)

    q = mp.mpf
    c4 = (
        q(2) / 3 * F4
        - q(20) / 9 * P3 * F3
        + q(5) / 3 * (q(7) / 3 * P3**2 - P4) * F2
        - q(35) / 9 * (P3**3 - P3 * P4 + q(6) / 35 * P5) * F1
        + q(35) / 9 * (q(11) / 24 * P3**4 - q(3) / 4 * (P3**2 - P4 / 6) * P4 + P3 * P5 / 5 - P6 / 35)
    ) / (2 * d2) ** 2
    return c2, c4


def fold_and_split(chat, t0) -> CoefficientSet:
    """c'_{2s} = chat_{2s} - 2 t0/(2s-1) chat_{2s-2}, split into real/imaginary parts."""
    if chat[0] != 1:
        raise InvalidInputError("chat_0 must equal 1")
    mp = t0.context
    cprime = [mp.mpc(1)]
    for s in range(1, len(chat)):
        cprime.append(chat[s] - 2 * t0 / (2 * s - 1) * chat[s - 1])
    C = (mp.one,) + tuple(c.real for c in cprime[1:])
    D = (mp.zero,) + tuple(c.imag for c in cprime[1:])
    return CoefficientSet(tuple(chat), tuple(cprime), C, D)


def unfold(cset: CoefficientSet, t0) -> tuple:
    """Invert the fold: rebuild chat_{2s} from c'_{2s}."""
    chat = [cset.cprime[0] * 0 + 1]
    for s in range(1, len(cset.cprime)):
        chat.append(cset.cprime[s] + 2 * t0 / (2 * s - 1) * chat[s - 1])
    return tuple(chat)


def coefficient_set(saddle: SaddlePoint, s_max: int) -> CoefficientSet:
    """alpha/beta through 2*s_max, Wojdylo, then fold."""
    order = max(2, 2 * s_max)
    phase = phase_taylor(saddle, order)
    amp = amp_taylor(saddle, saddle.spec.n, order)
    return fold_and_split(wojdylo(phase, amp, s_max), saddle.t0)


def wp2(t):
    return 2 - 18 * t - 20 * t**2 - 3 * t**3 + 2 * t**4


def wp4(t):
    return (
        4 - 72 * t - 332 * t**2 - 8028 * t**3 - 19644 * t**4
        - 20280 * t**5 - 9911 * t**6 - 1884 * t**7 + 4 * t**8
    )


def theorem2_constants(saddle: SaddlePoint) -> ClosedFormConstants:
    """n-independent c1, d1, c2, d2 of the three-term closed form."""
    t0 = saddle.t0
    _check_saddle(t0)
    return closed_form_constants(t0)


def closed_form_constants(t0) -> ClosedFormConstants:
    p2, p4 = wp2(t0), wp4(t0)
    one = 1 + t0
    z1 = p2 / (24 * one**3)
    z2 = p4 / (1152 * one**6) + (4 + 3 * t0) * t0**2 / (2 * one**2)
    return ClosedFormConstants(z1.real, z1.imag, z2.real, z2.imag, p2, p4)
