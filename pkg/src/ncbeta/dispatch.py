"""Region-based method selection for the noncentral beta CDF.

The route policy, in order:

* boundaries (y = 0, y = 1) are exact,
* x = 0 is the central incomplete beta,
* large r = p + q inside the validity strip goes to the asymptotic routes
  (plain saddle deep in the tail, erfc-uniform otherwise),
* large z = x y / 2 with small p, q goes to the large-z expansion,
* small y goes to the Kummer-function series,
* everything else to the reference series.

The primary function (B below the transition quantile y0, the complement
above) is always the member computed directly.  ``err_est`` reports each
route's own estimate honestly; asymptotic routes may return estimates above
the requested tolerance rather than fail.
"""

from __future__ import annotations

from dataclasses import dataclass

from .asymptotic import build_frame, eval_erfc_uniform, eval_large_z, eval_saddle
from .errors import DomainError, EvaluationError
from .kernels import central_beta_cdf
from .kummer_series import eval_kummer_series
from .params import EvalPoint, ProbabilityPair, ShapeParams
from .series import eval_series

R_MIN_ASYMPTOTIC = 40.0  # smallest r routed to the saddle-based expansions
Z_MIN_LARGEZ = 40.0  # smallest z routed to the large-z expansion
PQ_MAX_LARGEZ = 10.0  # largest p, q the large-z expansion accepts
Y_MAX_LARGEZ = 0.95  # the large-z expansion needs y away from 1
Y_MAX_KUMMER = 0.2  # largest y routed to the Kummer series
SADDLE_MARGIN = 0.05  # distance below y0 required for the plain saddle
SADDLE_MIN_ERFC_ARG = 8.0  # boundary-layer term negligible past this


@dataclass(frozen=True)
class MethodChoice:
    route: str
    primary_target: str  # "B" | "Bbar"
    rationale: str


def _primary(sp: ShapeParams, pt: EvalPoint) -> str:
    y0 = (pt.x + 2.0 * sp.p) / (pt.x + 2.0 * sp.r)
    return "B" if pt.y <= y0 else "Bbar"


def explain(sp: ShapeParams, pt: EvalPoint) -> MethodChoice:
    """The route and primary-function choice for a point, without evaluating.
    Deterministic in its arguments."""
    if pt.y == 0.0 or pt.y == 1.0:
        return MethodChoice("boundary", "B", "quantile boundary is exact")
    primary = _primary(sp, pt)
    if pt.x == 0.0:
        return MethodChoice("central", primary, "zero noncentrality reduces to the central beta")
    if sp.r >= R_MIN_ASYMPTOTIC:
        try:
            frame = build_frame(sp, pt)
        except DomainError:
            frame = None
        if frame is not None and frame.strip_ok:
            if pt.y <= frame.y0 - SADDLE_MARGIN and frame.erfc_arg >= SADDLE_MIN_ERFC_ARG:
                return MethodChoice(
                    "saddle", primary, f"r={sp.r:g} large and the pole is far from the saddle"
                )
            return MethodChoice(
                "erfc-uniform", primary, f"r={sp.r:g} large; uniform through the transition"
            )
    if pt.z >= Z_MIN_LARGEZ and sp.p <= PQ_MAX_LARGEZ and sp.q <= PQ_MAX_LARGEZ and pt.y <= Y_MAX_LARGEZ:
        return MethodChoice("large-z", primary, f"z={pt.z:g} large with small shape parameters")
    if pt.y <= Y_MAX_KUMMER:
        return MethodChoice("kummer-series", primary, "small quantile favors the Kummer series")
    return MethodChoice("series", primary, "defining series converges comfortably")


def _run_route(route: str, sp: ShapeParams, pt: EvalPoint, primary: str, tol: float) -> ProbabilityPair:
    if route == "boundary":
        value = 0.0 if pt.y == 0.0 else 1.0
        return ProbabilityPair.from_primary(value, "b", "boundary", 0.0)
    if route == "central":
        if primary == "B":
            v = central_beta_cdf(sp.p, sp.q, pt.y)
            return ProbabilityPair.from_primary(v, "b", "central", 5e-15)
        v = central_beta_cdf(sp.q, sp.p, 1.0 - pt.y)
        return ProbabilityPair.from_primary(v, "bbar", "central", 5e-15)
    if route == "saddle":
        return eval_saddle(sp, pt)
    if route == "erfc-uniform":
        return eval_erfc_uniform(sp, pt)
    if route == "large-z":
        return eval_large_z(sp, pt)
    if route == "kummer-series":
        return eval_kummer_series(sp, pt)
    return eval_series(sp, pt, tol=max(tol, 1e-15))


def evaluate(sp: ShapeParams, pt: EvalPoint, tol: float = 1e-12) -> ProbabilityPair:
    """B and its complement at the requested point.

    Returns err_est <= tol or the best achievable estimate, reported
    honestly; routes that fail outright (out of regime) fall back to the
    reference series."""
    if tol <= 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    choice = explain(sp, pt)
    try:
        return _run_route(choice.route, sp, pt, choice.primary_target, tol)
    except EvaluationError:
        if choice.route == "series":
            raise
        return eval_series(sp, pt, tol=max(tol, 1e-15))
