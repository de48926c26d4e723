import math

import pytest

from ncbeta.errors import DomainError
from ncbeta.params import EvalPoint, ShapeParams


class TestShapeParams:
    def test_polar_reconstruction_to_one_ulp(self):
        for (p, q) in [(10.0, 15.0), (0.5, 2000.0), (1234.5, 0.75)]:
            sp = ShapeParams(p, q)
            assert abs(sp.r * sp.cos2 - p) <= math.ulp(p)
            assert abs(sp.r * sp.sin2 - q) <= math.ulp(q)
            assert abs(sp.cos2 + sp.sin2 - 1.0) <= 2 * math.ulp(1.0)
            assert 0.0 < sp.theta < 0.5 * math.pi

    def test_validation(self):
        for (p, q) in [(0.0, 1.0), (1.0, -2.0), (math.nan, 1.0), (math.inf, 1.0)]:
            with pytest.raises(DomainError):
                ShapeParams(p, q)


class TestEvalPoint:
    def test_z_property(self):
        pt = EvalPoint(4.5, 0.45)
        assert pt.z == 0.5 * 4.5 * 0.45

    def test_validation(self):
        with pytest.raises(DomainError):
            EvalPoint(-1.0, 0.5)
        with pytest.raises(DomainError):
            EvalPoint(1.0, 1.5)
        with pytest.raises(DomainError):
            EvalPoint(math.nan, 0.5)
