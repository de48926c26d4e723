"""Asymptotic machinery for large parameters.

The contour representation of the noncentral beta CDF has phase

    phi(t) = ln t - sin^2(theta) ln(t-1) + xi t,
    p = r cos^2(theta), q = r sin^2(theta), xi = x y / (2 r),

with a saddle point t0 > 1 and a simple pole at t_p = 1/y.  This module
builds the saddle geometry, inverts the phase transformation numerically as
a power series, and evaluates three expansions:

* ``eval_large_z``: large z = x y / 2 with p, q of moderate size (finite and
  exact when q is a positive integer),
* ``eval_saddle``: plain saddle-point expansion, valid for y below the
  transition quantile y0,
* ``eval_erfc_uniform``: boundary-layer form valid uniformly through the
  transition, with the pole subtracted into a complementary error function.

It also provides the transition-series coefficients x(zeta) and y(zeta)
used to seed inversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._pseries import ps_eval, ps_int, ps_mul, ps_recip, ps_revert, ps_sqrt
from .errors import DomainError, EvaluationError, FrameDegenerateError, SeriesInvalidError
from .params import EvalPoint, ProbabilityPair, ShapeParams

TAU_REF = 0.05  # interpolation threshold on zeta at the reference scale r = 40

_LOG_2PI = 1.8378770664093454835607


def transition_tau(r: float) -> float:
    """|zeta| below which the boundary-layer coefficients switch from the
    direct subtraction to interpolation.

    The subtraction g_k = f_k - zeta^{-(k+1)} keeps rounding noise of order
    eps / (zeta^6 r^2) on the k = 2 term of the expansion, so the switch
    point that holds that noise at ~1e-8 shrinks like r^{-1/3}.  A smaller
    tau also keeps the interpolation nodes close in parameter space, which
    the interpolation accuracy needs."""
    return min(TAU_REF, 0.094 / r ** (1.0 / 3.0))


@dataclass(frozen=True)
class SaddleFrame:
    """Saddle geometry at one evaluation point.

    ``dphi`` is phi(t_p) - phi(t0) >= 0, computed with a cancellation-aware
    switch so that zeta = sign(t_p - t0) sqrt(2 dphi) keeps its relative
    accuracy close to the transition."""

    p: float
    q: float
    x: float
    y: float
    r: float
    sin2: float
    cos2: float
    xi: float
    t0: float
    tp: float
    y0: float
    x0: float
    dphi: float
    zeta: float
    phi2: float
    phi3: float
    phi4: float
    phi5: float

    def phi_deriv(self, k: int) -> float:
        """k-th derivative of the phase at the saddle, k >= 2."""
        sgn = 1.0 if k % 2 == 1 else -1.0
        return sgn * math.gamma(k) * (self.t0 ** (-k) - self.sin2 * (self.t0 - 1.0) ** (-k))

    @property
    def erfc_arg(self) -> float:
        return self.zeta * math.sqrt(0.5 * self.r)

    @property
    def strip_ok(self) -> bool:
        """Inside the validity strip: quantile and angle away from the edges,
        convex phase at the saddle."""
        frac = min(self.cos2, self.sin2)
        return (
            0.01 <= self.y <= 0.99
            and frac >= 0.05
            and self.phi2 > 0.0
            and self.t0 > 1.0 + 1e-9
        )


def _dphi_between(t0: float, tp: float, sin2: float, xi: float) -> float:
    """phi(t_p) - phi(t0); series in (t_p - t0) when the points are close."""
    delta = tp - t0
    lim = 0.4 * min(t0 - 1.0, t0)
    if abs(delta) <= lim:
        # sum_{k>=2} phi_k(t0) delta^k / k!, phi_k/k! = (-1)^(k-1)/k (t0^-k - s (t0-1)^-k)
        s = 0.0
        it0 = 1.0 / t0
        it1 = 1.0 / (t0 - 1.0)
        pow0 = it0 * it0
        pow1 = it1 * it1
        dk = delta * delta
        sgn = -1.0
        for k in range(2, 80):
            term = sgn / k * (pow0 - sin2 * pow1) * dk
            s += term
            if abs(term) < 1e-18 * max(abs(s), 1e-30):
                break
            pow0 *= it0
            pow1 *= it1
            dk *= delta
            sgn = -sgn
        return max(s, 0.0)
    val = math.log(tp / t0) - sin2 * math.log((tp - 1.0) / (t0 - 1.0)) + xi * delta
    return max(val, 0.0)


def build_frame(sp: ShapeParams, pt: EvalPoint) -> SaddleFrame:
    """Saddle geometry for (p, q, x, y) with 0 < y < 1.

    The saddle solves xi t^2 + (cos^2 - xi) t - 1 = 0; the conjugate root
    form t0 = 2 / (sqrt(D) + cos^2 - xi) is used because it is free of
    cancellation for every xi >= 0 and has the correct xi -> 0 limit."""
    if not 0.0 < pt.y < 1.0:
        raise DomainError(f"saddle frame needs 0 < y < 1, got y={pt.y} (boundary values are exact)")
    p, q, x, y = sp.p, sp.q, pt.x, pt.y
    r = sp.r
    c = sp.cos2
    s = sp.sin2
    xi = pt.z / r
    D = (c - xi) * (c - xi) + 4.0 * xi
    t0 = 2.0 / (math.sqrt(D) + (c - xi))
    tp = 1.0 / y
    y0 = (x + 2.0 * p) / (x + 2.0 * r)
    x0 = 2.0 * (r * y - p) / (1.0 - y)
    dphi = _dphi_between(t0, tp, s, xi)
    zeta = math.copysign(math.sqrt(2.0 * dphi), tp - t0)
    t0m1 = t0 - 1.0
    phi2 = -1.0 / (t0 * t0) + s / (t0m1 * t0m1)
    phi3 = 2.0 / t0**3 - 2.0 * s / t0m1**3
    phi4 = -6.0 / t0**4 + 6.0 * s / t0m1**4
    phi5 = 24.0 / t0**5 - 24.0 * s / t0m1**5
    return SaddleFrame(
        p=p, q=q, x=x, y=y, r=r, sin2=s, cos2=c, xi=xi, t0=t0, tp=tp,
        y0=y0, x0=x0, dphi=dphi, zeta=zeta,
        phi2=phi2, phi3=phi3, phi4=phi4, phi5=phi5,
    )


def invert_phi_series(frame: SaddleFrame, order: int = 6) -> np.ndarray:
    """Coefficients t_1..t_order of t = t0 + t1 w + t2 w^2 + ... inverting
    phi(t) - phi(t0) = w^2 / 2, by numeric series reversion.

    Returns an array ``t`` with t[0] = 0 and t[k] the w^k coefficient."""
    if order > 6:
        raise DomainError("phase inversion implemented through order 6")
    if frame.phi2 <= 0.0:
        raise FrameDegenerateError(
            f"phase not convex at the saddle (phi''={frame.phi2:.3e}); outside the validity strip"
        )
    n = order
    # w(u)^2 = 2 sum_{m>=2} phi_m/m! u^m = u^2 * A(u)
    A = np.zeros(n + 1)
    for m in range(2, n + 3):
        coef = 2.0 * frame.phi_deriv(m) / math.gamma(m + 1.0)
        if m - 2 <= n:
            A[m - 2] = coef
    w_over_u = ps_sqrt(A, n)  # sqrt(A), positive branch so sign(w) = sign(t - t0)
    w_series = np.zeros(n + 1)
    w_series[1 : n + 1] = w_over_u[: n]
    return ps_revert(w_series, n)


def f_coeffs(frame: SaddleFrame, t_part: np.ndarray, order: int = 4) -> np.ndarray:
    """Coefficients f_0..f_order of f(w) = [1/(t (1 - y t))] dt/dw as a power
    series in w at the saddle.  f has a simple pole in w at zeta, so the
    coefficients blow up when pole and saddle coalesce."""
    y = frame.y
    t0 = frame.t0
    pole = 1.0 - y * t0
    if pole == 0.0:
        raise EvaluationError(
            "pole sits exactly on the saddle; the boundary-layer route must subtract it first"
        )
    n = order
    u = t_part.copy()
    u[0] = 0.0
    up = np.zeros(n + 1)
    for k in range(1, min(len(u), n + 2)):
        if k - 1 <= n:
            up[k - 1] = k * u[k]
    # h(t) = 1/(t(1-yt)) expanded about t0: h_m = (-1)^m/t0^{m+1} + y^{m+1}/(1-y t0)^{m+1}
    H = np.zeros(n + 1)
    pw = np.zeros(n + 1)
    pw[0] = 1.0
    for m in range(0, n + 1):
        hm = (-1.0) ** m / t0 ** (m + 1) + y ** (m + 1) / pole ** (m + 1)
        H += hm * pw
        pw = ps_mul(pw, u, n)
    return ps_mul(H, up, n)


def _g_from_f(f_part: np.ndarray, zeta: float) -> np.ndarray:
    g = f_part.copy()
    zp = zeta
    for k in range(len(g)):
        g[k] -= 1.0 / zp
        zp *= zeta
    return g


def g_coeffs(frame: SaddleFrame, f_part: np.ndarray | None = None, tau: float | None = None) -> np.ndarray:
    """Boundary-layer coefficients g_k = f_k - zeta^{-(k+1)}.

    The subtraction cancels the pole of f analytically, but numerically both
    sides blow up like 1/zeta, so for |zeta| < tau the coefficients are
    interpolated in zeta through bracketing points of the same (p, q, y)
    family with x shifted along the transition parametrization.  The default
    tau shrinks like 1/sqrt(r)."""
    if tau is None:
        tau = transition_tau(frame.r)
    if abs(frame.zeta) >= tau:
        if f_part is None:
            f_part = f_coeffs(frame, invert_phi_series(frame))
        return _g_from_f(f_part, frame.zeta)
    sp = ShapeParams(frame.p, frame.q)
    coeffs = x_zeta_coeffs(sp, frame.y, order=5)
    nodes_z = []
    nodes_g = []
    mults = (-1.0, 1.0, -4.0 / 3.0, 4.0 / 3.0, -5.0 / 3.0, 5.0 / 3.0, -2.0, 2.0,
             7.0 / 3.0, 8.0 / 3.0, 3.0, -7.0 / 3.0)
    for mult in mults:
        target = mult * tau
        xz = ps_eval(coeffs, target)
        if xz < 0.0:
            continue
        fr = build_frame(sp, EvalPoint(xz, frame.y))
        if abs(fr.zeta) < 0.9 * tau or not fr.strip_ok:
            continue
        fp = f_coeffs(fr, invert_phi_series(fr))
        nodes_z.append(fr.zeta)
        nodes_g.append(_g_from_f(fp, fr.zeta))
        if len(nodes_z) == 8:
            break
    if len(nodes_z) < 5:
        raise FrameDegenerateError(
            f"cannot bracket the transition at (p={frame.p}, q={frame.q}, y={frame.y})"
        )
    out = np.empty(len(nodes_g[0]))
    for k in range(len(out)):
        out[k] = _neville(nodes_z, [g[k] for g in nodes_g], frame.zeta)
    return out


def _neville(xs, ys, x):
    n = len(xs)
    tab = list(ys)
    for lvl in range(1, n):
        for i in range(n - lvl):
            tab[i] = ((x - xs[i + lvl]) * tab[i] + (xs[i] - x) * tab[i + 1]) / (xs[i] - xs[i + lvl])
    return tab[0]


# ---------------------------------------------------------------------------
# expansions


def eval_large_z(sp: ShapeParams, pt: EvalPoint, n_terms: int = 5) -> ProbabilityPair:
    """Expansion for large z = x y / 2 with p, q of moderate size:

        B ~ e^{-(1-y)x/2} y^p (1-y)^{q-1} z^{q-1} / Gamma(q)
            * sum_n (-1)^n (1-q)_n c_n / z^n,

    where c_n convolves the Taylor coefficients of t^{p+q-1} and 1/(1-yt)
    about t = 1.  When q is a positive integer the sum terminates and the
    result is exact (flagged through err_est = 0)."""
    p, q, x, y = sp.p, sp.q, pt.x, pt.y
    z = pt.z
    if y <= 0.0:
        return ProbabilityPair.from_primary(0.0, "b", "large-z", 0.0)
    if y >= 1.0:
        return ProbabilityPair.from_primary(1.0, "b", "large-z", 0.0)
    if z <= 0.0:
        raise DomainError("large-z expansion needs z = x y / 2 > 0")
    a = np.empty(n_terms + 2)
    a[0] = 1.0
    for n in range(n_terms + 1):
        a[n + 1] = -a[n] * (1.0 - sp.r + n) / (n + 1.0)
    w = y / (1.0 - y)

    def conv(n):
        cn = 0.0
        wp = 1.0
        for m in range(n, -1, -1):
            cn += a[m] * wp
            wp *= w
        return cn

    poch = 1.0  # (1-q)_n
    zp = 1.0
    terms = []
    terminated = False
    first_omitted = 0.0
    for n in range(n_terms + 2):
        term = (-1.0) ** n * poch * conv(n) / zp
        if poch == 0.0:
            terminated = True  # q is a positive integer <= n: the sum is finite and exact
            break
        if n > n_terms:
            first_omitted = abs(term)
            break
        terms.append(term)
        poch *= 1.0 - q + n
        zp *= z
    # optimal truncation if the asymptotic tail starts growing inside the window
    if not terminated:
        kmin = min(range(len(terms)), key=lambda k: abs(terms[k]))
        if kmin < len(terms) - 1 and abs(terms[-1]) > 3.0 * abs(terms[kmin]):
            first_omitted = abs(terms[kmin + 1])
            terms = terms[: kmin + 1]
    s = math.fsum(terms)
    n_used = len(terms) - 1
    if s <= 0.0:
        raise EvaluationError(
            f"large-z expansion lost positivity at (p={p}, q={q}, x={x}, y={y}); out of regime"
        )
    lpre = (
        -0.5 * (1.0 - y) * x
        + p * math.log(y)
        + (q - 1.0) * math.log1p(-y)
        + (q - 1.0) * math.log(z)
        - math.lgamma(q)
    )
    value = math.exp(lpre) * s
    if terminated:
        err = 2e-16 * (n_used + 2)
    else:
        err = first_omitted / s + 1e-15
    return ProbabilityPair.from_primary(value, "b", "large-z", err)


_DOUBLE_FACT = (1.0, 1.0, 3.0)  # (2k-1)!! = 2^k (1/2)_k for k = 0, 1, 2


def _series_terms(coeff_even: np.ndarray, r: float, k_terms: int) -> list[float]:
    terms = []
    for k in range(k_terms + 1):
        terms.append((-1.0) ** k * coeff_even[2 * k] * _DOUBLE_FACT[k] / r**k)
    return terms


def _asym_err_floor(frame: SaddleFrame) -> float:
    # exponent noise: d(e^E) = e^E dE with dE ~ eps * r * (dphi + O(1))
    return 2e-16 * frame.r * (frame.dphi + 1.0) + 5e-15


def eval_saddle(sp: ShapeParams, pt: EvalPoint, k_terms: int = 2) -> ProbabilityPair:
    """Plain saddle-point expansion

        B ~ e^{-r dphi} / sqrt(2 pi r) * sum_k (-1)^k f_{2k} (2k-1)!! / r^k,

    valid for y below the transition quantile (pole away from the saddle)."""
    if k_terms > 2:
        raise DomainError("saddle expansion implemented through k = 2")
    frame = build_frame(sp, pt)
    if pt.y > frame.y0 - 0.05:
        raise EvaluationError(
            f"quantile {pt.y} too close to the transition value {frame.y0:.6g}; "
            "use the erfc-uniform route"
        )
    f = f_coeffs(frame, invert_phi_series(frame))
    terms = _series_terms(f, frame.r, k_terms)
    ssum = math.fsum(terms)
    if ssum <= 0.0:
        raise EvaluationError("saddle expansion lost positivity; out of regime")
    lpre = -frame.r * frame.dphi - 0.5 * (_LOG_2PI + math.log(frame.r))
    value = math.exp(lpre) * ssum
    err = abs(terms[-1] / ssum) + _asym_err_floor(frame)
    return ProbabilityPair.from_primary(value, "b", "saddle", err)


def eval_erfc_uniform(
    sp: ShapeParams,
    pt: EvalPoint,
    k_terms: int = 2,
    target: str = "auto",
    tau: float | None = None,
) -> ProbabilityPair:
    """Boundary-layer expansion, uniformly valid through the transition:

        B    = erfc(zeta sqrt(r/2))/2  + e^{-r zeta^2/2}/sqrt(2 pi r) * S
        Bbar = erfc(-zeta sqrt(r/2))/2 - e^{-r zeta^2/2}/sqrt(2 pi r) * S
        S ~ sum_k (-1)^k g_{2k} (2k-1)!! / r^k

    ``target`` picks the member computed directly ("B", "Bbar", or "auto"
    for the smaller one, y vs the transition quantile)."""
    if k_terms > 2:
        raise DomainError("erfc-uniform expansion implemented through k = 2")
    frame = build_frame(sp, pt)
    if tau is None:
        tau = transition_tau(frame.r)
    g = g_coeffs(frame, tau=tau)
    terms = _series_terms(g, frame.r, k_terms)
    ssum = math.fsum(terms)
    pfac = math.exp(-frame.r * frame.dphi - 0.5 * (_LOG_2PI + math.log(frame.r)))
    if target == "auto":
        target = "B" if pt.y <= frame.y0 else "Bbar"
    if target == "B":
        value = 0.5 * math.erfc(frame.erfc_arg) + pfac * ssum
        primary = "b"
    elif target == "Bbar":
        value = 0.5 * math.erfc(-frame.erfc_arg) - pfac * ssum
        primary = "bbar"
    else:
        raise DomainError(f"target must be 'auto', 'B' or 'Bbar', got {target!r}")
    if value <= 0.0:
        value = 0.0
    err_abs = pfac * abs(terms[-1])
    if abs(frame.zeta) < tau:
        err_abs += pfac * 3e-8  # interpolation budget on the leading coefficient
    err = err_abs / value + _asym_err_floor(frame) if value > 0.0 else 1.0
    return ProbabilityPair.from_primary(value, primary, "erfc-uniform", err)


# ---------------------------------------------------------------------------
# transition-series coefficients for inversion


def _t0_series(c: float, xi0: float, xi1: float, n: int) -> np.ndarray:
    """Saddle t0 as a series in u where xi = xi0 + xi1 u, via the conjugate
    root form t0 = 2 / (sqrt((c - xi)^2 + 4 xi) + c - xi)."""
    D = np.zeros(n + 1)
    D[0] = (c - xi0) * (c - xi0) + 4.0 * xi0
    if n >= 1:
        D[1] = (4.0 - 2.0 * (c - xi0)) * xi1
    if n >= 2:
        D[2] = xi1 * xi1
    if D[0] <= 0.0:
        raise SeriesInvalidError("saddle discriminant vanishes at the transition point")
    den = ps_sqrt(D, n)
    den[0] += c - xi0
    if n >= 1:
        den[1] -= xi1
    if den[0] <= 0.0:
        raise SeriesInvalidError("saddle branch degenerates at the transition point")
    return 2.0 * ps_recip(den, n)


def x_zeta_coeffs(sp: ShapeParams, y: float, order: int = 5) -> np.ndarray:
    """Coefficients of x = x0 + x1 zeta + ... + x_order zeta^order along the
    family with fixed (p, q, y); x0 is the transition noncentrality.

    Requires q - r (1-y)^2 > 0 (real linear coefficient); outside that region
    inversion falls back to root solving."""
    if not 0.0 < y < 1.0:
        raise DomainError(f"transition series needs 0 < y < 1, got {y}")
    p, q, r = sp.p, sp.q, sp.r
    radicand = q - r * (1.0 - y) * (1.0 - y)
    if radicand <= 0.0:
        raise SeriesInvalidError(
            f"x(zeta) series invalid: q - r(1-y)^2 = {radicand:.3e} <= 0 at y={y}"
        )
    n = order
    x0 = 2.0 * (r * y - p) / (1.0 - y)
    xi1 = y / (2.0 * r)
    xi0 = x0 * xi1
    T = _t0_series(sp.cos2, xi0, xi1, n + 1)
    tp = 1.0 / y
    # psi'(x) = (y / 2r) (tp - t0(x)); psi = zeta^2 / 2
    psip = -(y / (2.0 * r)) * T
    psip[0] += (y / (2.0 * r)) * tp
    psi = ps_int(psip, n + 2)
    psi[1] = 0.0  # analytically zero at the transition; clear rounding residue
    A = 2.0 * psi[2 : n + 3]
    if A[0] <= 0.0:
        raise SeriesInvalidError("transition curvature not positive; x(zeta) series invalid")
    zof = np.zeros(n + 1)
    zof[1:] = ps_sqrt(A, n)[:n]
    u_of_zeta = ps_revert(zof, n)
    out = u_of_zeta.copy()
    out[0] = x0
    return out


def y_zeta_coeffs(sp: ShapeParams, x: float, order: int = 5) -> np.ndarray:
    """Coefficients of y = y0 + y1 zeta + ... along the family with fixed
    (p, q, x); y0 is the transition quantile.  The linear coefficient is
    negative (zeta decreases in y); always real for x >= 0."""
    if x < 0.0:
        raise DomainError(f"noncentrality must be nonnegative, got {x}")
    p, q, r = sp.p, sp.q, sp.r
    n = order
    y0 = (x + 2.0 * p) / (x + 2.0 * r)
    xi1 = x / (2.0 * r)
    xi0 = y0 * xi1
    T = _t0_series(sp.cos2, xi0, xi1, n + 1)
    # psi'(y) = -p/(r y) + q/(r (1-y)) - t0(xi(y)) x/(2r), developed about y0
    inv_y = np.array([(-1.0) ** k / y0 ** (k + 1) for k in range(n + 2)])
    inv_1my = np.array([1.0 / (1.0 - y0) ** (k + 1) for k in range(n + 2)])
    psip = -(p / r) * inv_y + (q / r) * inv_1my - (x / (2.0 * r)) * T
    psi = ps_int(psip, n + 2)
    psi[1] = 0.0
    A = 2.0 * psi[2 : n + 3]
    if A[0] <= 0.0:
        raise SeriesInvalidError("transition curvature not positive; y(zeta) series invalid")
    zof = np.zeros(n + 1)
    zof[1:] = -ps_sqrt(A, n)[:n]  # zeta decreasing in y
    u_of_zeta = ps_revert(zof, n)
    out = u_of_zeta.copy()
    out[0] = y0
    return out


def x_of_zeta(sp: ShapeParams, y: float, zeta: float, order: int = 5) -> float:
    """Noncentrality on the fixed-(p, q, y) family at signed distance zeta
    from the transition."""
    v = ps_eval(x_zeta_coeffs(sp, y, order), zeta)
    if v < 0.0:
        raise SeriesInvalidError(f"x(zeta) series left the domain (x={v:.3e} < 0)")
    return v


def y_of_zeta(sp: ShapeParams, x: float, zeta: float, order: int = 5) -> float:
    """Quantile on the fixed-(p, q, x) family at signed distance zeta from
    the transition."""
    v = ps_eval(y_zeta_coeffs(sp, x, order), zeta)
    if not 0.0 < v < 1.0:
        raise SeriesInvalidError(f"y(zeta) series left the domain (y={v:.3e})")
    return v
