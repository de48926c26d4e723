"""Core value types: shape parameters, evaluation points, probability pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class ShapeParams:
    """The pair (p, q) of positive shape parameters.

    Derived quantities follow the polar convention p = r cos^2(theta),
    q = r sin^2(theta) with r = p + q.  ``cos2`` and ``sin2`` are computed
    as exact quotients p/r and q/r so that r*cos2 reconstructs p to one ulp.
    """

    p: float
    q: float

    def __post_init__(self):
        if not (self.p > 0.0 and math.isfinite(self.p)):
            raise DomainError(f"shape parameter p must be positive and finite, got {self.p}")
        if not (self.q > 0.0 and math.isfinite(self.q)):
            raise DomainError(f"shape parameter q must be positive and finite, got {self.q}")

    @property
    def r(self) -> float:
        return self.p + self.q

    @property
    def cos2(self) -> float:
        return self.p / self.r

    @property
    def sin2(self) -> float:
        return self.q / self.r

    @property
    def theta(self) -> float:
        return math.atan2(math.sqrt(self.q), math.sqrt(self.p))


@dataclass(frozen=True)
class EvalPoint:
    """Noncentrality x >= 0 and quantile y in [0, 1]; z = x*y/2."""

    x: float
    y: float

    def __post_init__(self):
        if not (self.x >= 0.0 and math.isfinite(self.x)):
            raise DomainError(f"noncentrality x must be nonnegative and finite, got {self.x}")
        if not 0.0 <= self.y <= 1.0:
            raise DomainError(f"quantile y must lie in [0, 1], got {self.y}")

    @property
    def z(self) -> float:
        return 0.5 * self.x * self.y


@dataclass(frozen=True)
class ProbabilityPair:
    """A cumulative probability together with its complement.

    One member is computed by the tagged method, the other is set to one
    minus it, so b + bbar == 1 holds exactly.  ``err_est`` is a relative
    error estimate for the computed (primary) member.
    """

    b: float
    bbar: float
    method: str
    err_est: float

    @classmethod
    def from_primary(cls, value: float, primary: str, method: str, err_est: float) -> "ProbabilityPair":
        v = min(max(value, 0.0), 1.0)
        if primary == "b":
            return cls(b=v, bbar=1.0 - v, method=method, err_est=err_est)
        if primary == "bbar":
            return cls(b=1.0 - v, bbar=v, method=method, err_est=err_est)
        raise ValueError(f"primary must be 'b' or 'bbar', got {primary!r}")
