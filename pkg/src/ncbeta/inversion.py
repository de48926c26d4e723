"""Inversion of the noncentral beta CDF in the noncentrality or the quantile.

Solving B_{p,q}(x, y) = z follows the pipeline:

1. invert the boundary-layer model: zeta0 = inv_erfc(2 z) sqrt(2/r);
2. for small |zeta0|, seed from the transition series x(zeta) or y(zeta),
   improved by the first correction zeta ~ zeta0 + zeta1/r with
   zeta1 = ln(1 + zeta0 g0)/zeta0 (kept only when it reduces the residual
   of the target equation);
   otherwise locate the root of the transition equation
   zeta(.)^2/2 - zeta0^2/2 = 0 on the correct side of the transition point
   (above x0 when zeta0 > 0, below y0 when zeta0 > 0);
3. polish on the true equation with safeguarded Newton using the analytic
   derivatives dB/dx and dB/dy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._pseries import ps_eval
from .asymptotic import (
    build_frame,
    f_coeffs,
    g_coeffs,
    invert_phi_series,
    transition_tau,
    x_zeta_coeffs,
    y_zeta_coeffs,
)
from .dispatch import evaluate
from .errors import DomainError, EvaluationError, SeriesInvalidError
from .kernels import _kummer_m_log, _log_beta_pre, central_beta_cdf, inv_erfc
from .params import EvalPoint, ShapeParams
from .series import eval_series

ZETA_SERIES_MAX = 0.1  # |zeta0| at or below which the transition series seeds


@dataclass(frozen=True)
class InversionProblem:
    """B_{p,q}(x, y) = z with either x or y unknown.

    ``fixed`` is the known coordinate (y when solving for x, x when solving
    for y).  For unknown x the target must satisfy z <= I_y(p, q), the value
    at zero noncentrality, since B decreases in x."""

    unknown: str  # "x" | "y"
    sp: ShapeParams
    fixed: float
    z: float
    tol: float = 1e-10

    def __post_init__(self):
        if self.unknown not in ("x", "y"):
            raise DomainError(f"unknown must be 'x' or 'y', got {self.unknown!r}")
        if not 0.0 < self.z < 1.0:
            raise DomainError(f"target probability must lie in (0, 1), got {self.z}")
        if self.unknown == "x" and not 0.0 < self.fixed < 1.0:
            raise DomainError(f"fixed quantile must lie in (0, 1), got {self.fixed}")
        if self.unknown == "y" and self.fixed < 0.0:
            raise DomainError(f"fixed noncentrality must be nonnegative, got {self.fixed}")
        if self.tol <= 0.0:
            raise DomainError("tol must be positive")


@dataclass
class InversionResult:
    value: float
    iterations: int
    residual: float
    seed_path: str  # "zeta-series" | "transition-root" | "bisection" | "boundary"
    zeta0: float = 0.0
    seed_value: float = math.nan  # pre-polish start (after any correction)
    seed_value_raw: float = math.nan  # pre-polish start before the zeta1 correction


def zeta0_seed(problem: InversionProblem) -> float:
    """zeta0 from half erfc(zeta0 sqrt(r/2)) = z."""
    return inv_erfc(2.0 * problem.z) * math.sqrt(2.0 / problem.sp.r)


def db_dx(sp: ShapeParams, pt: EvalPoint) -> float:
    """dB/dx = -e^{-x/2} y^p (1-y)^q M(p+q, p+1, xy/2) / (2 p B(p, q)) < 0."""
    if pt.y <= 0.0 or pt.y >= 1.0:
        return 0.0
    lg = (
        -0.5 * pt.x
        + _log_beta_pre(sp.p, sp.q, pt.y)
        + _kummer_m_log(sp.r, sp.p + 1.0, pt.z)
        - math.log(2.0 * sp.p)
    )
    return -math.exp(lg) if lg > -745.0 else -0.0


def db_dy(sp: ShapeParams, pt: EvalPoint) -> float:
    """dB/dy = e^{-x/2} y^{p-1} (1-y)^{q-1} M(p+q, p, xy/2) / B(p, q) > 0."""
    if pt.y <= 0.0 or pt.y >= 1.0:
        return math.inf
    lg = (
        -0.5 * pt.x
        + _log_beta_pre(sp.p, sp.q, pt.y)
        - math.log(pt.y)
        - math.log1p(-pt.y)
        + _kummer_m_log(sp.r, sp.p, pt.z)
    )
    return math.exp(lg) if lg > -745.0 else 0.0


def transition_equation(sp: ShapeParams, pt: EvalPoint, zeta0: float) -> float:
    """Left-hand side of the transition equation

        ln( (2x)^{p/r} (S - 2xy)^{q/r} / ((1-y)^{q/r} S) ) + (2x - S)/(4 r)
            - zeta0^2 / 2,

    with S = xy - 2p + sqrt(x^2 y^2 - 4pxy + 8rxy + 4p^2) = 2 x y t0.
    Identical to zeta(x, y)^2/2 - zeta0^2/2; its zeros are the points whose
    boundary-layer variable matches zeta0 in magnitude."""
    p, q, r = sp.p, sp.q, sp.r
    x, y = pt.x, pt.y
    if x <= 0.0 or not 0.0 < y < 1.0:
        raise DomainError("transition equation needs x > 0 and 0 < y < 1")
    rad = x * x * y * y - 4.0 * p * x * y + 8.0 * r * x * y + 4.0 * p * p
    if rad < 0.0:
        raise DomainError("transition equation radicand negative (cannot occur in-domain)")
    S = x * y - 2.0 * p + math.sqrt(rad)
    if S <= 2.0 * x * y or S <= 0.0:
        raise DomainError("transition equation saddle factor out of range")
    return (
        (p / r) * math.log(2.0 * x)
        + (q / r) * math.log(S - 2.0 * x * y)
        - (q / r) * math.log1p(-y)
        - math.log(S)
        + (2.0 * x - S) / (4.0 * r)
        - 0.5 * zeta0 * zeta0
    )


def zeta1_correction(problem: InversionProblem, zeta0: float, seed: float) -> float:
    """First correction zeta1 with zeta ~ zeta0 + zeta1/r, from the leading
    boundary-layer coefficient g0 at the seeded point:
    zeta1 = ln(1 + zeta0 g0)/zeta0, with the limit g0 as zeta0 -> 0.
    Raises EvaluationError when 1 + zeta0 g0 <= 0 (correction skipped)."""
    sp = problem.sp
    if problem.unknown == "x":
        pt = EvalPoint(seed, problem.fixed)
    else:
        pt = EvalPoint(problem.fixed, seed)
    frame = build_frame(sp, pt)
    if abs(frame.zeta) >= transition_tau(frame.r):
        g = g_coeffs(frame, f_coeffs(frame, invert_phi_series(frame)))
    else:
        g = g_coeffs(frame)
    g0 = g[0]
    u = zeta0 * g0
    if u <= -1.0:
        raise EvaluationError("zeta1 correction undefined: 1 + zeta0 g0 <= 0")
    if abs(zeta0) < 1e-8:
        return g0
    return math.log1p(u) / zeta0


def _residual(pair, z: float) -> float:
    """B - z computed from the pair member that preserves precision."""
    if z <= 0.5:
        return pair.b - z
    return (1.0 - z) - pair.bbar


def _transition_root(problem: InversionProblem, zeta0: float) -> float | None:
    """Root of dphi(.) = zeta0^2/2 on the side of the transition point
    selected by the sign of zeta0.  Returns None when no bracket exists."""
    sp = problem.sp
    half_z0sq = 0.5 * zeta0 * zeta0

    if problem.unknown == "x":
        y = problem.fixed
        x0 = 2.0 * (sp.r * y - sp.p) / (1.0 - y)

        def F(v):
            return build_frame(sp, EvalPoint(v, y)).dphi - half_z0sq

        if zeta0 > 0.0:
            lo = max(x0, 0.0)
            if F(lo) > 0.0:
                return None
            step = max(1.0, 0.5 * abs(x0) + 1.0)
            hi = lo + step
            for _ in range(200):
                if F(hi) > 0.0:
                    break
                step *= 2.0
                hi += step
            else:
                return None
        else:
            # root left of the transition noncentrality
            if x0 <= 0.0:
                return None
            lo, hi = 0.0, x0
            if F(lo) < 0.0:
                return None
        return _bisect(F, lo, hi)

    x = problem.fixed
    y0 = (x + 2.0 * sp.p) / (x + 2.0 * sp.r)

    def G(v):
        return build_frame(sp, EvalPoint(x, v)).dphi - half_z0sq

    if zeta0 > 0.0:
        hi = y0
        lo = y0
        for _ in range(200):
            lo *= 0.5
            if G(lo) > 0.0:
                break
        else:
            return None
    else:
        lo = y0
        hi = y0
        gap = 1.0 - y0
        for _ in range(200):
            gap *= 0.5
            hi = 1.0 - gap
            if G(hi) > 0.0:
                break
        else:
            return None
    return _bisect(G, lo, hi)


def _bisect(fn, lo: float, hi: float, iters: int = 200) -> float:
    flo = fn(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = fn(mid)
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 1e-13 * (abs(lo) + abs(hi) + 1e-6):
            break
    return 0.5 * (lo + hi)


def invert(problem: InversionProblem) -> InversionResult:
    """Solve B_{p,q}(x, y) = z for the unknown coordinate.

    The result satisfies |B(solution) - z| <= tol * max(z, 1 - z) unless the
    iteration budget (40 polish steps) is exhausted, in which case the best
    bracketed value is returned with its residual."""
    sp = problem.sp
    z = problem.z
    if problem.unknown == "x":
        zmax = central_beta_cdf(sp.p, sp.q, problem.fixed)
        band = problem.tol * max(z, 1.0 - z)
        if z > zmax + band:
            raise DomainError(
                f"no nonnegative noncentrality reaches B = {z}: the zero-noncentrality "
                f"bound is I_y(p, q) = {zmax:.6g}"
            )
        if abs(z - zmax) <= band:
            return InversionResult(0.0, 0, zmax - z, "boundary", 0.0, 0.0, 0.0)

    zeta0 = zeta0_seed(problem)
    seed_raw = math.nan
    seed = math.nan
    seed_path = ""

    if abs(zeta0) <= ZETA_SERIES_MAX:
        try:
            if problem.unknown == "x":
                coeffs = x_zeta_coeffs(sp, problem.fixed, order=5)
                seed_raw = ps_eval(coeffs, zeta0)
                if seed_raw < 0.0:
                    raise SeriesInvalidError("series seed left the domain")
            else:
                coeffs = y_zeta_coeffs(sp, problem.fixed, order=5)
                seed_raw = ps_eval(coeffs, zeta0)
                if not 0.0 < seed_raw < 1.0:
                    raise SeriesInvalidError("series seed left the domain")
            seed = seed_raw
            seed_path = "zeta-series"
            try:
                z1 = zeta1_correction(problem, zeta0, seed_raw)
                corrected = ps_eval(coeffs, zeta0 + z1 / sp.r)
                ok = (corrected >= 0.0) if problem.unknown == "x" else (0.0 < corrected < 1.0)
                if ok:
                    # keep the correction only when it lands closer to the target
                    raw_res = abs(_residual(_eval_at(problem, seed_raw), z))
                    cor_res = abs(_residual(_eval_at(problem, corrected), z))
                    if cor_res < raw_res:
                        seed = corrected
            except (EvaluationError, DomainError):
                pass
        except (SeriesInvalidError, EvaluationError, DomainError):
            seed = math.nan

    if math.isnan(seed):
        root = None
        try:
            root = _transition_root(problem, zeta0)
        except (EvaluationError, DomainError):
            root = None
        if root is not None:
            seed = root
            seed_raw = root
            seed_path = "transition-root"
        else:
            if problem.unknown == "y":
                seed = (problem.fixed + 2.0 * sp.p) / (problem.fixed + 2.0 * sp.r)
            else:
                x0 = 2.0 * (sp.r * problem.fixed - sp.p) / (1.0 - problem.fixed)
                seed = max(x0, 1.0)
            seed_raw = seed
            seed_path = "bisection"

    value, iters, resid = _polish(problem, seed)
    return InversionResult(value, iters, resid, seed_path, zeta0, seed, seed_raw)


def _eval_at(problem: InversionProblem, v: float):
    if problem.unknown == "x":
        pt = EvalPoint(v, problem.fixed)
    else:
        pt = EvalPoint(problem.fixed, v)
    pair = evaluate(problem.sp, pt, tol=problem.tol)
    if pair.err_est > 1e-12:
        # Newton cannot settle below the evaluation noise; upgrade to the
        # reference series, which resolves everywhere the root search goes
        try:
            pair = eval_series(problem.sp, pt)
        except EvaluationError:
            pass
    return pair


def _polish(problem: InversionProblem, seed: float) -> tuple[float, int, float]:
    """Safeguarded Newton on B(.) - z with a maintained bracket."""
    sp = problem.sp
    z = problem.z
    band = problem.tol * max(z, 1.0 - z)
    increasing = problem.unknown == "y"

    if increasing:
        lo, hi = 0.0, 1.0
        cur = min(max(seed, 1e-12), 1.0 - 1e-12)
    else:
        lo, hi = 0.0, math.inf
        cur = max(seed, 0.0)

    iters = 0
    resid = math.inf
    for _ in range(40):
        pair = _eval_at(problem, cur)
        iters += 1
        resid = _residual(pair, z)
        if abs(resid) <= band:
            return cur, iters, resid
        going_up = (resid < 0.0) if increasing else (resid > 0.0)
        if going_up:
            lo = max(lo, cur)
        else:
            hi = min(hi, cur)
        if increasing:
            deriv = db_dy(sp, EvalPoint(problem.fixed, cur))
        else:
            deriv = db_dx(sp, EvalPoint(cur, problem.fixed))
        step_ok = deriv != 0.0 and math.isfinite(deriv)
        nxt = cur - resid / deriv if step_ok else math.nan
        if not (step_ok and math.isfinite(nxt) and lo < nxt < hi):
            if math.isinf(hi):
                nxt = max(2.0 * cur, cur + 1.0)
            else:
                nxt = 0.5 * (lo + hi)
        if nxt == cur:
            break
        cur = nxt
    return cur, iters, resid
