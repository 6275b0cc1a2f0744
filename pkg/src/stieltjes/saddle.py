"""Principal saddle of t*e^t = n*i/(2*pi*k) and its frame quantities.

The phase is psi_k(t) = -(2*pi*i*k/n)*e^t - log t; its saddles solve
t*e^t = n*i/(2*pi*k). Only the principal saddle (0 < Im t0 < pi) is used.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateSaddleError, InvalidInputError, SolverError, WrongBranchError
from .numerics import PrecisionContext

MAX_NEWTON_ITERATIONS = 200


@dataclass(frozen=True)
class SaddleSpec:
    n: int
    k: int = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidInputError(f"n must be a positive integer, got {self.n!r}")
        if int(self.k) != self.k or self.k < 1:
            raise InvalidInputError(f"k must be a positive integer, got {self.k!r}")


@dataclass(frozen=True)
class SaddlePoint:
    spec: SaddleSpec
    t0: object  # mpc
    residual: object  # mpf, |t0 e^t0 - c| / |c|
    iterations: int
    ctx: PrecisionContext

    @property
    def u(self):
        return self.t0.real

    @property
    def v(self):
        return self.t0.imag


@dataclass(frozen=True)
class Frame:
    """Real amplitude/phase data of B*e^(nA)/sqrt(n) * cos(n*a + b)."""

    A: object
    a: object
    B: object
    b: object


@dataclass(frozen=True)
class Guess:
    t: object
    degraded: bool = False


def saddle_target(spec: SaddleSpec, ctx: PrecisionContext):
    """The right-hand side n*i/(2*pi*k)."""
    mp = ctx.mp
    return mp.mpc(0, mp.mpf(spec.n) / (2 * mp.pi * spec.k))


def initial_guess(spec: SaddleSpec, ctx: PrecisionContext | None = None) -> Guess:
    """Asymptotic m = 0 member of the saddle string.

    log(n/(2*pi*k)) - log(log(n)) + i*pi/2, degraded to drop the log-log term
    when n < 3.
    """
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    base = mp.log(mp.mpf(spec.n) / (2 * mp.pi * spec.k))
    if spec.n < 3:
        return Guess(mp.mpc(base, mp.pi / 2), degraded=True)
    return Guess(mp.mpc(base - mp.log(mp.log(spec.n)), mp.pi / 2))


def _lambert_guess(c, mp):
    # principal-branch W(c) starting points: series for small |c|, log asymptotics otherwise
    if abs(c) < 1:
        return c - c * c
    L1 = mp.log(c)
    return L1 - mp.log(L1)


def _newton(c, t, ctx: PrecisionContext):
    """Damped Newton on g(t) = t e^t - c; returns (t, rel_residual, iterations, converged)."""
    mp = ctx.mp
    tol = ctx.tolerance
    absc = abs(c)
    res = mp.inf
    for it in range(1, MAX_NEWTON_ITERATIONS + 1):
        et = mp.exp(t)
        g = t * et - c
        res = abs(g) / absc
        if res <= tol:
            # one more step: quadratic convergence may have landed just under tol
            t2 = t - g / ((1 + t) * et)
            res2 = abs(t2 * mp.exp(t2) - c) / absc
            if res2 < res:
                t, res = t2, res2
            return t, res, it, True
        dg = (1 + t) * et
        if dg == 0:
            break
        step = g / dg
        # Newton overshoots badly far from the root; cap the step length
        if abs(step) > 1:
            step = step / abs(step)
        t = t - step
    return t, res, MAX_NEWTON_ITERATIONS, False


def solve_saddle(spec: SaddleSpec, ctx: PrecisionContext | None = None) -> SaddlePoint:
    """Principal saddle t0 = u + iv of t*e^t = n*i/(2*pi*k).

    Newton iteration starts from :func:`initial_guess`; if that start fails
    (small n, k >= 2) a Lambert-W style start is tried before giving up.
    Convergence is declared on the relative residual.
    """
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    c = saddle_target(spec, ctx)
    starts = [initial_guess(spec, ctx).t, _lambert_guess(c, mp)]
    last = None
    for start in starts:
        t, res, its, ok = _newton(c, mp.mpc(start), ctx)
        if ok and 0 < t.imag < mp.pi:
            return SaddlePoint(spec, t, res, its, ctx)
        last = (t, res, ok)
    t, res, ok = last
    if ok:
        raise WrongBranchError(
            f"saddle for n={spec.n}, k={spec.k} converged off the principal branch: t={t}", t, res
        )
    raise SolverError(
        f"Newton iteration for n={spec.n}, k={spec.k} did not converge in "
        f"{MAX_NEWTON_ITERATIONS} iterations (residual {mp.nstr(res, 5)})",
        t,
        res,
    )


def frame(saddle: SaddlePoint) -> Frame:
    """A, a, B, b for the saddle.

    A + i*a = log(t0) - 1/t0 = -psi_k(t0); a uses arg(t0), which equals
    arctan(v/u) for u > 0 and continues it for u <= 0.
    B = 2*sqrt(2*pi)*|t0/sqrt(1+t0)| and b = pi/2 - v - arg(sqrt(1+t0)).
    """
    mp = saddle.ctx.mp
    t0 = saddle.t0
    if t0 == 0 or 1 + t0 == 0:
        raise DegenerateSaddleError(f"degenerate saddle t0={t0}")
    u, v = t0.real, t0.imag
    r2 = u * u + v * v
    A = mp.log(r2) / 2 - u / r2
    a = mp.arg(t0) + v / r2
    B = 2 * mp.sqrt(2 * mp.pi) * abs(t0 / mp.sqrt(1 + t0))
    # half-angle of 1+t0: the amplitude carries 1/sqrt(1+t0), not 1/(1+t0)
    b = mp.pi / 2 - v - mp.arg(1 + t0) / 2
    return Frame(A, a, B, b)


def frame_from_parts(u, v, ctx: PrecisionContext) -> Frame:
    """Frame from raw real/imaginary parts (no saddle condition assumed)."""
    mp = ctx.mp
    t0 = mp.mpc(u, v)
    spec = SaddleSpec(1, 1)
    return frame(SaddlePoint(spec, t0, mp.zero, 0, ctx))
