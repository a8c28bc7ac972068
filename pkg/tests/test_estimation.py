"""Estimation tests: feasibility, fit round-trips through the forward model,
the decision-quality suite, and the civil-court chain."""

import math
from fractions import Fraction

import pytest

from jurycalc.estimation import (
    CivilParams,
    FitResult,
    InfeasibleError,
    ObservedRates,
    appellate_confirm,
    civil_appeal,
    civil_equal,
    civil_first_instance,
    civil_forward,
    complement,
    derived_probs,
    feasible_t,
    fit_civil_t,
    fit_k_t,
    fit_u_from_split,
    seven_judge,
    three_judge_feasibility,
)
from jurycalc.jury import JuryParams, VerdictTally, verdict_probs

F = Fraction


def forward_rates(k, u, n=12, i=5):
    """Forward model: (overall rate, minimal-majority gamma) from (k, u)."""
    params = JuryParams(k, u)
    vp = verdict_probs(params, VerdictTally(n, i))
    return float(vp.c_i), float(vp.gamma_i) / math.comb(n, i)


class TestFeasibility:
    def test_person_crimes_interval(self):
        lo, hi = feasible_t(0.0001453)
        assert lo < 2 < 3 < hi or (2 < lo < hi < 3) or (lo < 2 and 2 < hi)
        fit = fit_k_t(0.4782, 0.0001453)
        assert lo < fit.t < hi
        assert 2 < fit.t < 3

    def test_property_interval_contains_root(self):
        lo, hi = feasible_t(0.00006604)
        assert lo < 3.4865 < hi

    def test_gamma_beyond_bound_infeasible(self):
        # the k < 1 bound peaks near t = 7/5 at about 0.00118
        with pytest.raises(InfeasibleError):
            feasible_t(0.002)

    def test_bounds_bracket_residual_sign_change(self):
        gamma = 0.0001453
        lo, hi = feasible_t(gamma)
        from jurycalc.estimation import _c_model, _k_from_gamma
        pad = 1e-7 * (hi - lo)
        r_lo = _c_model(lo + pad, _k_from_gamma(lo + pad, gamma, 12, 5), 12, 5) - 0.4782
        r_hi = _c_model(hi - pad, _k_from_gamma(hi - pad, gamma, 12, 5), 12, 5) - 0.4782
        assert r_lo * r_hi < 0


class TestFitKT:
    def test_person_crimes(self):
        fit = fit_k_t(0.4782, 0.0001453)
        assert fit.k == pytest.approx(0.53531, abs=5e-5)
        assert fit.t == pytest.approx(2.11184, abs=5e-5)
        assert fit.u == pytest.approx(0.67865, abs=5e-5)
        assert fit.residual < 1e-10

    def test_property_crimes(self):
        fit = fit_k_t(0.6556, 0.00006604)
        assert fit.t == pytest.approx(3.48721, abs=5e-5)
        assert fit.u == pytest.approx(0.77714, abs=5e-5)
        # converged k sits 6e-4 above the historical print 0.6744, which
        # paired with an under-converged t (see the reproduction notes)
        assert fit.k == pytest.approx(0.67501, abs=5e-5)

    def test_france_aggregate(self):
        fit = fit_k_t(0.6094, 0.0706 / 792)
        assert fit.k == pytest.approx(0.6391, abs=5e-4)
        assert fit.u == pytest.approx(0.7494, abs=5e-5)

    def test_seine(self):
        fit = fit_k_t(0.6509, 194 / 2963 / 792)
        assert fit.k == pytest.approx(0.678, abs=1e-3)
        assert fit.t == pytest.approx(3.168, abs=2e-3)
        # u follows t; the historical print 0.7778 contradicts its own t
        assert fit.u == pytest.approx(0.7601, abs=1e-4)

    @pytest.mark.parametrize("k", [0.55, 0.65, 0.75])
    @pytest.mark.parametrize("u", [0.6, 0.7, 0.8])
    def test_round_trip(self, k, u):
        c, gamma = forward_rates(k, u)
        fit = fit_k_t(c, gamma)
        assert fit.k == pytest.approx(k, abs=1e-8)
        assert fit.u == pytest.approx(u, abs=1e-8)

    def test_unreachable_rate_infeasible(self):
        with pytest.raises(InfeasibleError) as err:
            fit_k_t(0.99, 0.0001453)
        assert err.value.scan_table  # diagnostic scan attached


class TestComplement:
    def test_involution(self):
        fit = FitResult(0.6744, 3.4865, 3.4865 / 4.4865, 0.0)
        assert complement(complement(fit)).k == pytest.approx(fit.k, rel=1e-12)
        assert complement(complement(fit)).t == pytest.approx(fit.t, rel=1e-12)

    def test_mirrored_values(self):
        comp = complement(FitResult(0.6744, 3.4865, 3.4865 / 4.4865, 0.0))
        assert comp.k == pytest.approx(0.3256, abs=1e-10)
        assert comp.t == pytest.approx(0.2868, abs=5e-5)

    def test_mirror_reproduces_observables(self):
        k, u = 0.65, 0.72
        c1, g1 = forward_rates(k, u)
        c2, g2 = forward_rates(1 - k, 1 - u)
        assert c1 == pytest.approx(c2, abs=1e-12)
        assert g1 == pytest.approx(g2, abs=1e-12)


class TestDerivedProbs:
    def test_person_crimes_1831(self):
        fit = FitResult(0.5354, 2.112, 2.112 / 3.112, 0.0)
        d = derived_probs(fit, 0.3632, VerdictTally(12, 4))
        assert d.P == pytest.approx(0.9811, abs=5e-4)
        assert d.Pi == pytest.approx(0.7186, abs=5e-4)
        assert d.D == pytest.approx(0.00689, abs=5e-5)
        assert d.Delta == pytest.approx(0.1791, abs=5e-4)

    def test_property_crimes_1831(self):
        fit = FitResult(0.6744, 3.4865, 3.4865 / 4.4865, 0.0)
        d = derived_probs(fit, 0.6034, VerdictTally(12, 4))
        assert d.P == pytest.approx(0.9981, abs=5e-4)
        assert d.Pi == pytest.approx(0.8199, abs=5e-4)
        assert d.D == pytest.approx(0.0004, abs=5e-5)
        assert d.Delta == pytest.approx(0.0721, abs=5e-4)

    def test_minimal_majority_correctness(self):
        fit = FitResult(0.6391, 2.99, 2.99 / 3.99, 0.0)
        d = derived_probs(fit, 0.6094, VerdictTally(12, 5))
        assert d.p_min == pytest.approx(0.9406, abs=5e-5)

    def test_complement_branch_correctness(self):
        comp = complement(FitResult(0.6744, 3.4865, 3.4865 / 4.4865, 0.0))
        d = derived_probs(comp, 0.6034, VerdictTally(12, 4))
        assert d.P == pytest.approx(0.000675, abs=5e-6)

    def test_rate_at_or_above_prior_rejected(self):
        fit = FitResult(0.5354, 2.112, 2.112 / 3.112, 0.0)
        with pytest.raises(ValueError):
            derived_probs(fit, 0.60, VerdictTally(12, 4))


class TestAppellate:
    def test_reference_numbers(self):
        res = appellate_confirm(0.9406, 0.8357)
        assert res.P2 == pytest.approx(0.9916, abs=5e-4)
        # the solver root; the historical print 2.789 does not satisfy the
        # equation exactly (documented inconsistency), but sits within 0.02
        assert res.t == pytest.approx(2.789, abs=0.02)
        assert res.u == pytest.approx(0.7361, abs=5e-3)

    def test_perfect_confirmation_limit(self):
        res = appellate_confirm(0.9406, 0.9406 - 1e-9)
        assert res.P2 == pytest.approx(1.0, abs=1e-6)

    def test_degenerate_prior_rejected(self):
        with pytest.raises(ValueError):
            appellate_confirm(0.5, 0.4)


class TestSevenAndThreeJudges:
    def test_military_courts(self):
        res = seven_judge(2 / 3, 3.0)
        assert res.k == pytest.approx(0.8793, abs=5e-5)
        assert res.P2 == pytest.approx(0.9976, abs=1e-4)

    def test_round_trip_recovers_prior(self):
        k, t = 0.82, 2.6
        onet = (1 + t) ** 7
        A = t**7 + 7 * t**6 + 21 * t**5
        B = 1 + 7 * t + 21 * t * t
        c2 = (k * A + (1 - k) * B) / onet
        assert seven_judge(c2, t).k == pytest.approx(k, rel=1e-12)

    def test_police_courts_infeasible(self):
        with pytest.raises(InfeasibleError) as err:
            three_judge_feasibility(0.8563, 3.0)
        assert err.value.value > 1

    def test_three_judge_feasible_case(self):
        k = three_judge_feasibility(0.70, 3.0)
        assert 0 < k < 1


class TestCivilFirstInstance:
    def test_unequal_bench(self):
        res = civil_first_instance(CivilParams(F(4, 5), F(3, 5), F(3, 5)))
        assert res.c == F(8, 25)
        assert res.b == F(17, 25)
        assert res.p == F(9, 10)
        assert res.q == F(57, 85)
        assert res.r == F(93, 125)

    def test_equal_bench(self):
        res = civil_first_instance(CivilParams(F(2, 3), F(2, 3), F(2, 3)))
        assert res.c == F(1, 3)
        assert res.b == F(2, 3)
        assert res.p == F(8, 9)
        assert res.q == F(2, 3)

    def test_near_certain_judges(self):
        res = civil_first_instance(CivilParams(1 - 1e-12, 1 - 1e-12, 1 - 1e-12))
        assert res.c == pytest.approx(1.0, abs=1e-10)
        assert res.p == pytest.approx(1.0, abs=1e-10)
        assert res.r == pytest.approx(1.0, abs=1e-10)

    def test_exhaustive_identities(self):
        res = civil_first_instance(CivilParams(F(3, 4), F(2, 3), F(3, 5)))
        assert res.b + res.c == 1
        assert res.c * res.p + res.b * res.q == res.r

    def test_permutation_symmetry(self):
        r1 = civil_first_instance(CivilParams(F(3, 4), F(2, 3), F(3, 5)))
        r2 = civil_first_instance(CivilParams(F(3, 5), F(3, 4), F(2, 3)))
        for field in ("c", "b", "p", "r"):
            assert getattr(r1, field) == getattr(r2, field)


class TestCivilEqualFit:
    def test_even_unanimity_split(self):
        u = fit_u_from_split(0.5)
        assert u == pytest.approx((1 + math.sqrt(3) / 3) / 2, rel=1e-12)
        bench = civil_equal(u)
        assert u == pytest.approx(0.7888, abs=5e-4)
        assert bench.p == pytest.approx(0.9811, abs=5e-4)
        assert bench.q == pytest.approx(0.7887, abs=5e-4)
        assert bench.r == pytest.approx(0.8849, abs=5e-4)

    def test_extremes(self):
        assert fit_u_from_split(1.0) == pytest.approx(1.0, rel=1e-12)
        assert fit_u_from_split(0.25) == pytest.approx(0.5, rel=1e-12)

    def test_below_minimum_infeasible(self):
        with pytest.raises(InfeasibleError):
            fit_u_from_split(0.2)


class TestCivilAppeal:
    def test_coin_flip_first_instance(self):
        res = civil_appeal(0.5, 0.7)
        assert res.C == res.C_prime == pytest.approx(0.5, rel=1e-12)
        assert res.rho == pytest.approx(
            sum(math.comb(7, j) * 0.7 ** (7 - j) * 0.3**j for j in range(4)),
            rel=1e-12)

    def test_reference_period(self):
        res = civil_appeal(0.7626, 0.6832, confirm_rate=0.6847)
        assert res.P == pytest.approx(0.9479, abs=5e-4)
        assert res.P_prime == pytest.approx(0.6409, abs=5e-4)
        assert res.Gamma == pytest.approx(0.7466, abs=5e-4)
        assert res.parts[0] == pytest.approx(0.6495, abs=5e-4)
        assert res.parts[1] == pytest.approx(0.2022, abs=5e-4)
        assert res.parts[2] == pytest.approx(0.1131, abs=5e-4)
        assert res.parts[3] == pytest.approx(0.0352, abs=5e-4)

    def test_identities(self):
        res = civil_appeal(0.77, 0.69)
        assert res.C + res.C_prime == pytest.approx(1.0, rel=1e-12)
        assert sum(res.parts) == pytest.approx(1.0, abs=1e-12)
        gamma_prime = 2 * res.rho * (1 - res.rho)
        assert res.Gamma + gamma_prime == pytest.approx(1.0, rel=1e-12)

    def test_model_rate_makes_quotient_equal_bracket(self):
        res = civil_appeal(0.77, 0.69)  # no observed rate supplied
        quotient = (0.77 - res.C_prime) / (2 * 0.77 - 1)
        assert quotient == pytest.approx(res.rho, rel=1e-12)


class TestFitCivilT:
    def test_reference_rate(self):
        fit = fit_civil_t(0.6847)
        assert fit.t == pytest.approx(2.157, abs=5e-3)
        assert fit.u == pytest.approx(0.6832, abs=1e-3)
        assert fit.r == pytest.approx(0.7626, abs=1e-3)
        assert fit.residual < 1e-10

    def test_round_trip(self):
        rate = civil_forward(2.5)
        assert fit_civil_t(rate).t == pytest.approx(2.5, abs=1e-8)

    @pytest.mark.parametrize("t", [1.3, 1.8, 2.5, 4.0])
    def test_reciprocal_root_invariance(self, t):
        assert civil_forward(t) == pytest.approx(civil_forward(1 / t), rel=1e-12)

    def test_unattainable_rate(self):
        with pytest.raises(InfeasibleError):
            fit_civil_t(0.45)


class TestObservedRates:
    def test_derived_ratios(self):
        rates = ObservedRates(42300, 25777, b_rate_subtraction=0.0706)
        assert rates.c == pytest.approx(0.6094, abs=5e-5)
        assert rates.gamma == pytest.approx(0.0706 / 792, rel=1e-12)

    def test_count_priority(self):
        rates = ObservedRates(1000, 600, b_i=70, b_rate_cases=0.071,
                              b_rate_subtraction=0.069)
        assert rates.minimal_majority_rate == 0.07

    def test_validation(self):
        with pytest.raises(ValueError):
            ObservedRates(100, 150)
        with pytest.raises(ValueError):
            ObservedRates(100, 50, b_i=60)
