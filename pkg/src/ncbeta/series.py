"""Oracle-grade evaluation of the noncentral beta CDF by its defining series.

The CDF is the Poisson mixture

    B_{p,q}(x, y) = e^{-x/2} sum_j (x/2)^j / j! * I_y(p + j, q),

and the complement is the same mixture over I_{1-y}(q, p + j).  The central
beta terms are generated by stable three-term recursion (backward ratio
recursion for the decaying I_y(p+j, q) sequence, forward increments for the
growing complement sequence), which is orders of magnitude cheaper than a
continued fraction per term and equally accurate.

This module also houses the notation bridges used as independent
cross-checks: the type-II q-function double series and the noncentral F
mapping.
"""

from __future__ import annotations

import math

import numpy as np

from ._jit import kernel
from .errors import DomainError, EvaluationError
from .kernels import _betainc, _betainc_scaled, _log_beta_pre
from .params import EvalPoint, ProbabilityPair, ShapeParams

MAX_WINDOW_TERMS = 1_000_000


def poisson_window(x: float) -> tuple[int, int]:
    """Summation window [0, j_hi] of the mixture series: the upper cutoff
    keeps every Poisson weight above 1e-18 of the peak (half-width
    w = 10*sqrt(x/2) + 30 above the mean); the lower edge stays at zero
    because the summand can peak at low j when the central terms decay
    faster than the weights grow."""
    half = 0.5 * x
    w = 10.0 * math.sqrt(half) + 30.0
    return 0, int(math.ceil(half + w))


@kernel
def _central_terms_minimal(p, q, y, j_lo, j_hi, anchor):
    """I_y(p+j, q) for j = j_lo..j_hi.

    The sequence is minimal for the three-term recurrence in increasing j,
    so the term ratios are generated by downward recursion.  The ratio seed
    comes from two continued-fraction values at the top of the window; if
    those underflow, a trial seed at j_hi + 40 is used instead (the decay of
    the sequence then swamps the seed error).  Values are rebuilt around an
    anchor evaluated directly, which pins the relative accuracy near the
    anchor index."""
    n = j_hi - j_lo + 1
    out = np.empty(n)
    if y <= 0.0:
        for k in range(n):
            out[k] = 0.0
        return out
    if y >= 1.0:
        for k in range(n):
            out[k] = 1.0
        return out
    rho = np.empty(max(n - 1, 1))
    f_top0 = _betainc(p + j_hi, q, y)
    f_top1 = _betainc(p + j_hi + 1.0, q, y)
    if f_top0 > 0.0 and f_top1 > 0.0 and f_top1 == f_top1 and f_top0 == f_top0:
        r = f_top1 / f_top0
        jstart = j_hi
    else:
        r = y
        jstart = j_hi + 40
    j = jstart
    while j > j_lo:
        pj = p + j
        c = (pj + q - 1.0) * y
        r = c / (pj + c - pj * r)
        j -= 1
        if j < j_hi:
            rho[j - j_lo] = r
    out[anchor - j_lo] = _betainc(p + anchor, q, y)
    for j in range(anchor, j_hi):
        out[j - j_lo + 1] = out[j - j_lo] * rho[j - j_lo]
    for j in range(anchor, j_lo, -1):
        out[j - j_lo - 1] = out[j - j_lo] / rho[j - j_lo - 1]
    return out


@kernel
def _poisson_weights(half, j0, n):
    wgt = np.empty(n)
    lw0 = j0 * math.log(half) - half - math.lgamma(j0 + 1.0)
    wgt[j0] = math.exp(lw0)
    for j in range(j0, 0, -1):
        wgt[j - 1] = wgt[j] * j / half
    for j in range(j0, n - 1):
        wgt[j + 1] = wgt[j] * half / (j + 1.0)
    return wgt


@kernel
def _member_b(p, q, x, y):
    """B by the Poisson-weighted series over the decaying terms I_y(p+j, q).

    The window runs from j = 0 (the summand peaks at low j when the central
    terms decay faster than the Poisson weights grow, so the lower Poisson
    cutoff would discard the dominant mass for small quantiles) up to the
    upper Poisson cutoff, beyond which both factors decay.

    Returns (value, relative error estimate)."""
    half = 0.5 * x
    if half == 0.0:
        return _betainc(p, q, y), 5e-15
    w = 10.0 * math.sqrt(half) + 30.0
    j_hi = int(math.ceil(half + w))
    n = j_hi + 1
    if n > MAX_WINDOW_TERMS:
        return math.nan, math.nan
    j0 = min(max(int(half + 0.5), 0), j_hi)
    wgt = _poisson_weights(half, j0, n)
    terms = _central_terms_minimal(p, q, y, 0, j_hi, j0)
    if terms[j0] < 2.3e-308 and y > 0.0:
        # the value at the Poisson peak underflows or is subnormal (only a
        # few mantissa bits); the summand mass then sits at low j, so anchor
        # at j = 0, whose term bounds the whole member from above
        terms = _central_terms_minimal(p, q, y, 0, j_hi, 0)
    s = 0.0
    comp = 0.0
    for k in range(n):
        tk = wgt[k] * terms[k]
        yv = tk - comp
        t = s + yv
        comp = (t - s) - yv
        s = t
    rup = half / (j_hi + 2.0)
    tail = wgt[n - 1] * terms[n - 1] * rup / (1.0 - rup) if rup < 1.0 else math.inf
    if s <= 0.0:
        return 0.0, 1e-15
    # the floor tracks the ratio-product drift of the term generator
    return s, tail / s + 3e-15 + n * 1.2e-16


@kernel
def _member_complement(p, q, x, y):
    """The complement by the Poisson mixture over I_{1-y}(q, p+j).

    These terms grow toward 1, so the summand can keep growing well past
    the Poisson cutoff; the window extends to the product peak (where the
    weight decay finally beats the term growth) plus a Poisson-width margin.
    Terms are generated by the exact increment recursion, run in a scaled
    regime when the increments sit near the underflow threshold.

    Returns (value, relative error estimate)."""
    half = 0.5 * x
    if half == 0.0:
        return _betainc(q, p, 1.0 - y), 5e-15
    w = 10.0 * math.sqrt(half) + 30.0
    j_hi0 = int(math.ceil(half + w))
    # damped fixed point for the summand peak: weight ratio * term-growth = 1
    jstar = float(j_hi0)
    for _ in range(80):
        grow = y * (p + q + jstar) / (p + jstar + 1.0)
        jn = half * grow
        if abs(jn - jstar) < 1.0:
            jstar = max(jn, jstar)
            break
        jstar = 0.5 * (jstar + jn)
    j_end = int(max(float(j_hi0), math.ceil(jstar + 10.0 * math.sqrt(max(jstar, 1.0)) + 50.0)))
    n = j_end + 1
    if n > MAX_WINDOW_TERMS:
        return math.nan, math.nan
    ld0 = _log_beta_pre(p, q, y) - math.log(p)
    ld = ld0
    ldmax = ld0
    for j in range(1, n):
        ld += math.log(y * (p + q + j - 1.0) / (p + j))
        if ld > ldmax:
            ldmax = ld
    # scale when the increment profile starts or peaks near the underflow
    # threshold; increments more than ~700 below the peak contribute nothing
    shift = ldmax if (ldmax < -650.0 or ld0 < -640.0) else 0.0
    if shift != 0.0:
        g = _betainc_scaled(q, p, 1.0 - y, shift)
        if g == math.inf:
            # the anchor dwarfs every increment; the unscaled path is exact
            # enough because the increments are then negligible
            shift = 0.0
            g = _betainc(q, p, 1.0 - y)
    else:
        g = _betainc(q, p, 1.0 - y)
    # keep the chain out of the subnormal range (below e^-708 doubles carry
    # too few bits and a near-zero start poisons every later increment)
    d = math.exp(ld0 - shift) if ld0 - shift > -700.0 else 0.0
    ld = ld0
    j0 = min(max(int(half + 0.5), 0), j_end)
    wgt = _poisson_weights(half, j0, n)
    s = 0.0
    comp = 0.0
    last = 0.0
    for j in range(n):
        if j > 0:
            g = g + d
            ld += math.log(y * (p + q + j - 1.0) / (p + j))
            d = d * y * (p + q + j - 1.0) / (p + j)
            if d == 0.0 and ld - shift > -700.0:
                # the chain was flushed while the profile sat below the
                # normal range but is climbing back; re-anchor it exactly
                d = math.exp(_log_beta_pre(p + j, q, y) - math.log(p + j) - shift)
        last = wgt[j] * g
        yv = last - comp
        t = s + yv
        comp = (t - s) - yv
        s = t
    grow_end = (half / (j_end + 1.0)) * y * (p + q + j_end) / (p + j_end + 1.0)
    tail = last * grow_end / (1.0 - grow_end) if grow_end < 0.9 else math.inf
    if s <= 0.0:
        return 0.0, 1e-15
    err = tail / s + 3e-15 + n * 1.2e-16
    value = s if shift == 0.0 else math.exp(shift + math.log(s))
    return value, err


def central_term_sequence(sp: ShapeParams, y: float, j_lo: int, j_hi: int) -> np.ndarray:
    """I_y(p+j, q) for j = j_lo..j_hi, each within ~1e-13 of a direct
    continued-fraction evaluation, normalized at j_lo."""
    if not 0 <= j_lo <= j_hi:
        raise DomainError(f"need 0 <= j_lo <= j_hi, got ({j_lo}, {j_hi})")
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"quantile y must lie in [0, 1], got {y}")
    out = _central_terms_minimal(sp.p, sp.q, y, j_lo, j_hi, j_lo)
    if np.any(np.isnan(out)):
        raise EvaluationError("central beta recursion produced nan")
    return out


def eval_series(sp: ShapeParams, pt: EvalPoint, tol: float = 1e-14) -> ProbabilityPair:
    """Reference evaluation of B and its complement by the defining series.

    Sums the member that is numerically smaller (B for y <= y0, the
    complement otherwise, where y0 = (x+2p)/(x+2p+2q) is the transition
    quantile) and derives the other by subtraction from 1."""
    if tol < 1e-15:
        raise DomainError(f"tol must be >= 1e-15, got {tol}")
    if pt.y <= 0.0:
        return ProbabilityPair.from_primary(0.0, "b", "boundary", 0.0)
    if pt.y >= 1.0:
        return ProbabilityPair.from_primary(1.0, "b", "boundary", 0.0)
    _, j_hi = poisson_window(pt.x)
    if j_hi + 1 > MAX_WINDOW_TERMS:
        raise EvaluationError(
            f"series window would need {j_hi + 1} terms at x={pt.x}; tolerance unachievable"
        )
    y0 = (pt.x + 2.0 * sp.p) / (pt.x + 2.0 * sp.r)
    complement = pt.y > y0
    if complement:
        value, err = _member_complement(sp.p, sp.q, pt.x, pt.y)
    else:
        value, err = _member_b(sp.p, sp.q, pt.x, pt.y)
    if math.isnan(value):
        raise EvaluationError(f"series evaluation failed at p={sp.p} q={sp.q} x={pt.x} y={pt.y}")
    return ProbabilityPair.from_primary(value, "bbar" if complement else "b", "series", err)


@kernel
def _qfunction_sum(a, b, lam, lx, l1mx):
    """Double series for 1 - q(lam, omega; 2a, 2b): outer terms in x with
    inner partial Poisson sums.  Returns (value, iterations); iterations < 0
    flags non-convergence."""
    t = math.exp(a * lx + b * l1mx + math.lgamma(a + b) - math.lgamma(b) - math.lgamma(a + 1.0))
    use_mult = lam < 700.0
    pois = math.exp(-lam) if lam < 745.0 else 0.0
    psum = pois
    s = 0.0
    n = 0
    while n < 2000000:
        s += t * psum
        ratio = math.exp(lx) * (a + b + n) / (a + 1.0 + n)
        if ratio < 1.0:
            tailbound = t * ratio / (1.0 - ratio)
            if tailbound < 1e-17 * s and s > 0.0:
                return s, n
        t *= ratio
        n += 1
        if use_mult:
            pois *= lam / n
        else:
            lp = n * math.log(lam) - lam - math.lgamma(n + 1.0)
            pois = math.exp(lp) if lp > -745.0 else 0.0
        psum += pois
    return s, -1


def eval_type2_qfunction(a: float, b: float, lam: float, omega: float) -> float:
    """1 - q(lam, omega; 2a, 2b) by its defining double series, with
    x = omega/(omega + 1).  Serves as an independent oracle for the identity
    1 - q(lam, omega; 2a, 2b) = B_{a,b}(2 lam, x)."""
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"shape arguments must be positive, got ({a}, {b})")
    if lam < 0.0 or omega < 0.0:
        raise DomainError(f"lambda and omega must be nonnegative, got ({lam}, {omega})")
    if omega == 0.0:
        return 0.0
    lx = math.log(omega) - math.log1p(omega)
    l1mx = -math.log1p(omega)
    value, n = _qfunction_sum(a, b, lam, lx, l1mx)
    if n < 0:
        raise EvaluationError(
            "type-II q-function series converges too slowly for x near 1; use eval_series instead"
        )
    return min(max(value, 0.0), 1.0)


def noncentral_f_cdf(w: float, nu1: float, nu2: float, lam: float) -> ProbabilityPair:
    """CDF of the noncentral F distribution with nu1, nu2 degrees of freedom
    and noncentrality lam, mapped onto the noncentral beta with p = nu1/2,
    q = nu2/2, quantile nu1*w/(nu1*w + nu2) and noncentrality lam."""
    if w < 0.0:
        raise DomainError(f"F statistic must be nonnegative, got {w}")
    if not (nu1 > 0.0 and nu2 > 0.0):
        raise DomainError(f"degrees of freedom must be positive, got ({nu1}, {nu2})")
    if lam < 0.0:
        raise DomainError(f"noncentrality must be nonnegative, got {lam}")
    from .dispatch import evaluate

    quantile = nu1 * w / (nu1 * w + nu2) if math.isfinite(w) else 1.0
    return evaluate(ShapeParams(0.5 * nu1, 0.5 * nu2), EvalPoint(lam, quantile))
