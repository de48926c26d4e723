import math

import numpy as np
import pytest

from ncbeta.asymptotic import build_frame
from ncbeta.dispatch import evaluate
from ncbeta.errors import DomainError
from ncbeta.inversion import (
    InversionProblem,
    db_dx,
    db_dy,
    invert,
    transition_equation,
    zeta0_seed,
    zeta1_correction,
)
from ncbeta.kernels import central_beta_cdf
from ncbeta.params import EvalPoint, ShapeParams

SP = ShapeParams(10.0, 15.0)


class TestSeeds:
    def test_zeta0_values(self):
        assert zeta0_seed(InversionProblem("x", SP, 0.45, 0.5)) == 0.0
        z1 = zeta0_seed(InversionProblem("x", SP, 0.45, 0.4))
        assert abs(z1 - 0.05067) <= 5e-5
        z2 = zeta0_seed(InversionProblem("y", SP, 4.5, 0.01))
        assert abs(z2 - 0.4653) <= 5e-4

    def test_zeta1_limit_is_g0(self):
        prob = InversionProblem("x", SP, 0.45, 0.5)
        g0_like = zeta1_correction(prob, 0.0, 50.0 / 11.0)
        # must equal the leading boundary-layer coefficient at the transition
        assert 0.10 < g0_like < 0.13

    def test_correction_improves_worked_example(self):
        r = invert(InversionProblem("x", SP, 0.45, 0.4))
        raw = abs(evaluate(SP, EvalPoint(r.seed_value_raw, 0.45)).b - 0.4)
        corrected = abs(evaluate(SP, EvalPoint(r.seed_value, 0.45)).b - 0.4)
        assert corrected < raw
        assert abs(r.seed_value - 7.4176) <= 5e-3 * 7.4176


class TestTransitionEquation:
    def test_zero_at_transition(self):
        val = transition_equation(SP, EvalPoint(50.0 / 11.0, 0.45), 0.0)
        assert abs(val) <= 1e-12

    def test_worked_root(self):
        z0 = zeta0_seed(InversionProblem("x", SP, 0.45, 0.4))
        val = transition_equation(SP, EvalPoint(7.1704, 0.45), z0)
        assert abs(val) <= 1e-5

    def test_agrees_with_frame(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            p = rng.uniform(1.0, 50.0)
            q = rng.uniform(1.0, 50.0)
            x = rng.uniform(0.5, 80.0)
            y = rng.uniform(0.05, 0.95)
            sp, pt = ShapeParams(p, q), EvalPoint(x, y)
            te = transition_equation(sp, pt, 0.0)
            fr = build_frame(sp, pt)
            assert abs(te - fr.dphi) <= 1e-12 * (1.0 + abs(fr.dphi))

    def test_domain_guards(self):
        with pytest.raises(DomainError):
            transition_equation(SP, EvalPoint(0.0, 0.45), 0.0)


class TestDerivatives:
    def test_signs(self):
        pt = EvalPoint(4.5, 0.45)
        assert db_dx(SP, pt) < 0.0
        assert db_dy(SP, pt) > 0.0

    def test_against_finite_differences(self):
        rng = np.random.default_rng(23)
        done = 0
        while done < 25:
            # keep r below the asymptotic-dispatch threshold so the finite
            # differences run on oracle-grade evaluations
            p = math.exp(rng.uniform(math.log(1.0), math.log(19.0)))
            q = math.exp(rng.uniform(math.log(1.0), math.log(19.0)))
            x = rng.uniform(0.5, 35.0)
            y = rng.uniform(0.15, 0.85)
            sp, pt = ShapeParams(p, q), EvalPoint(x, y)
            if not 0.01 < evaluate(sp, pt).b < 0.99:
                continue
            hx = 1e-5 * (1.0 + x)
            fd = (evaluate(sp, EvalPoint(x + hx, y)).b - evaluate(sp, EvalPoint(x - hx, y)).b) / (2 * hx)
            assert abs(fd - db_dx(sp, pt)) <= 1e-6 * abs(db_dx(sp, pt))
            hy = 1e-5
            fd = (evaluate(sp, EvalPoint(x, y + hy)).b - evaluate(sp, EvalPoint(x, y - hy)).b) / (2 * hy)
            assert abs(fd - db_dy(sp, pt)) <= 1e-6 * abs(db_dy(sp, pt))
            done += 1


class TestInvert:
    def test_problem_validation(self):
        with pytest.raises(DomainError):
            InversionProblem("z", SP, 0.45, 0.5)
        with pytest.raises(DomainError):
            InversionProblem("x", SP, 0.45, 1.5)
        with pytest.raises(DomainError):
            InversionProblem("x", SP, 1.5, 0.5)

    def test_worked_examples_x(self):
        r = invert(InversionProblem("x", SP, 0.45, 0.5))
        assert abs(r.seed_value_raw - 50.0 / 11.0) <= 1e-6
        assert abs(r.residual) <= 1e-10
        assert abs(evaluate(SP, EvalPoint(r.value, 0.45)).b - 0.5) <= 1e-10

        r = invert(InversionProblem("x", SP, 0.45, 0.4))
        assert abs(r.seed_value_raw - 7.1704) <= 5e-3 * 7.1704
        assert abs(r.residual) <= 1e-10

        r = invert(InversionProblem("x", SP, 0.45, 0.6))
        assert abs(r.seed_value_raw - 2.1475) <= 5e-3 * 2.1475

    def test_worked_examples_y(self):
        r = invert(InversionProblem("y", SP, 4.5, 0.99))
        assert abs(r.seed_value - 0.6739) <= 5e-3 * 0.6739
        assert abs(evaluate(SP, EvalPoint(4.5, r.seed_value)).b - 0.98999) <= 5e-5
        assert abs(r.residual) <= 1e-10

        r = invert(InversionProblem("y", SP, 4.5, 0.01))
        assert r.seed_path == "transition-root"
        assert abs(r.seed_value - 0.2330) <= 5e-3 * 0.2330

    def test_branch_rule_sides(self):
        x0 = 50.0 / 11.0
        r_low = invert(InversionProblem("x", SP, 0.45, 0.4))  # zeta0 > 0: right of x0
        assert r_low.value > x0
        r_high = invert(InversionProblem("x", SP, 0.45, 0.6))  # zeta0 < 0: left of x0
        assert r_high.value < x0
        y0 = 49.0 / 109.0
        assert invert(InversionProblem("y", SP, 4.5, 0.01)).value < y0
        assert invert(InversionProblem("y", SP, 4.5, 0.99)).value > y0

    def test_infeasible_target_rejected(self):
        with pytest.raises(DomainError, match="0.70"):
            invert(InversionProblem("x", SP, 0.45, 0.71))

    def test_target_at_bound_gives_zero(self):
        zmax = central_beta_cdf(10.0, 15.0, 0.45)
        r = invert(InversionProblem("x", SP, 0.45, zmax))
        assert r.value == 0.0
        assert r.seed_path == "boundary"

    def test_round_trip_sample(self):
        rng = np.random.default_rng(55)
        done = 0
        while done < 50:
            p = math.exp(rng.uniform(math.log(0.5), math.log(300.0)))
            q = math.exp(rng.uniform(math.log(0.5), math.log(300.0)))
            sp = ShapeParams(p, q)
            if done % 2 == 0:
                y = rng.uniform(0.05, 0.95)
                zmax = central_beta_cdf(p, q, y)
                if zmax < 0.01:
                    continue
                z = rng.uniform(0.001, min(0.999, zmax * (1.0 - 1e-6)))
                prob = InversionProblem("x", sp, y, z, tol=1e-10)
            else:
                x = rng.uniform(0.0, 100.0)
                z = rng.uniform(0.001, 0.999)
                prob = InversionProblem("y", sp, x, z, tol=1e-10)
            res = invert(prob)
            assert abs(res.residual) <= 1e-10 * max(z, 1.0 - z)
            done += 1
