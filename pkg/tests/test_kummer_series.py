import pytest

from ncbeta.errors import DomainError
from ncbeta.kummer_series import KummerSeriesPlan, eval_kummer_series, truncated_shift_sum
from ncbeta.params import EvalPoint, ShapeParams
from ncbeta.series import eval_series

SP = ShapeParams(10.0, 15.0)


class TestPlan:
    def test_variant_target_consistency(self):
        with pytest.raises(DomainError):
            KummerSeriesPlan(target="Bbar", variant="b-transformed")
        with pytest.raises(DomainError):
            KummerSeriesPlan(target="B", variant="bbar")
        with pytest.raises(DomainError):
            KummerSeriesPlan(tol=1e-16)
        with pytest.raises(DomainError):
            KummerSeriesPlan(max_terms=200000)


class TestEvaluation:
    def test_zero_quantile(self):
        assert eval_kummer_series(SP, EvalPoint(7.0, 0.0)).b == 0.0

    def test_small_quantile_matches_series(self):
        pair = eval_kummer_series(SP, EvalPoint(4.5, 0.1))
        ref = eval_series(SP, EvalPoint(4.5, 0.1)).b
        assert abs(pair.b - ref) <= 1e-12 * ref

    def test_complement_variant_pinned_value(self):
        pair = eval_kummer_series(
            ShapeParams(5.0, 5.0), EvalPoint(54.0, 0.8640), KummerSeriesPlan(target="Bbar")
        )
        assert abs(pair.b - 0.4563026193369792) <= 1e-12

    def test_variants_agree(self):
        for (p, q, x, y) in [(10.0, 15.0, 4.5, 0.3), (3.0, 40.0, 20.0, 0.5), (0.7, 3.0, 100.0, 0.2)]:
            direct = eval_kummer_series(
                ShapeParams(p, q), EvalPoint(x, y), KummerSeriesPlan(target="B", variant="b-direct")
            )
            transformed = eval_kummer_series(
                ShapeParams(p, q), EvalPoint(x, y), KummerSeriesPlan(target="B", variant="b-transformed")
            )
            assert abs(direct.b - transformed.b) <= 1e-12 * direct.b

    def test_transient_z_regime(self):
        # z large against the denominator parameter: the downward factor
        # recursion cannot cross the transient and must fall back cleanly
        sp, pt = ShapeParams(64.16, 1.85), EvalPoint(493.35, 0.188)
        pair = eval_kummer_series(sp, pt)
        ref = eval_series(sp, pt).b
        assert abs(pair.b - ref) <= 5e-12 * ref

    def test_high_quantile_convergence(self):
        # term count grows like 1/(1-y); must still converge at y = 0.95
        sp, pt = ShapeParams(50.0, 50.0), EvalPoint(100.0, 0.95)
        pair = eval_kummer_series(sp, pt, KummerSeriesPlan(target="B", variant="b-transformed"))
        ref = eval_series(sp, pt).b
        assert abs(pair.b - ref) <= 1e-11 * ref


class TestShiftIdentity:
    def test_partial_sum_plus_remainder(self):
        pt = EvalPoint(4.5, 0.45)
        total = eval_series(SP, pt).b
        for n_shift in (0, 5, 20):
            partial = truncated_shift_sum(SP, pt, n_shift)
            remainder = eval_series(ShapeParams(10.0 + n_shift + 1, 15.0), pt).b
            assert abs(partial + remainder - total) <= 1e-12 * total
