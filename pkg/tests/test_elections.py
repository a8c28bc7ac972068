"""Election-model tests: reference values, the exchangeability lemma by
exhaustive enumeration, and seeded Monte Carlo oracles."""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from jurycalc.elections import (
    CollegeWin,
    ElectionScenario,
    college_win_chance,
    minority_tail,
    scenario_report,
    seat_interval,
)
from jurycalc.exact import UrnSpec, hypergeometric

F = Fraction


class TestCollegeWinChance:
    def test_odd_college_one_twentieth_margin(self):
        win = college_win_chance(94835, 104830, 199665, 435)
        assert win.nu == pytest.approx(0.77398, abs=5e-5)
        assert win.s == pytest.approx(0.85426, abs=5e-5)
        assert win.sigma == 0.0

    def test_even_college(self):
        win = college_win_chance(95064, 105060, 200124, 436)
        assert win.s == pytest.approx(0.84279, abs=2e-4)
        assert win.sigma == pytest.approx(0.02218, abs=5e-5)
        assert win.decisive == pytest.approx(0.85388, abs=2e-4)

    def test_wide_gap_college(self):
        # the summation formula gives 1 - 1/60, agreeing with the source's
        # own prose; its printed decimal 0.98176 is inconsistent (the exact
        # draw-by-draw value is 0.98202)
        win = college_win_chance(89835, 109830, 199665, 435)
        assert win.s == pytest.approx(0.98333, abs=5e-5)
        assert 1 - win.s == pytest.approx(1 / 60, abs=1e-4)

    def test_ties_vanish_for_odd_colleges(self):
        for mu in (327, 435, 655):
            assert college_win_chance(95062, 105062, 200124, mu).sigma == 0.0

    def test_party_swap_closure_odd(self):
        s_b = college_win_chance(94835, 104830, 199665, 435).s
        s_a = college_win_chance(104830, 94835, 199665, 435).s
        assert s_a + s_b == pytest.approx(1.0, abs=2e-3)

    def test_party_swap_closure_even(self):
        win_b = college_win_chance(95064, 105060, 200124, 436)
        win_a = college_win_chance(105060, 95064, 200124, 436)
        assert win_a.s + win_b.s + win_b.sigma == pytest.approx(1.0, abs=2e-3)

    def test_monotone_in_margin(self):
        c = 200000
        chances = []
        for b_excess in (2000, 6000, 10000, 14000, 20000):
            b = (c + b_excess) // 2
            chances.append(college_win_chance(c - b, b, c, 435).s)
        assert chances == sorted(chances)

    def test_against_exact_hypergeometric(self):
        # the asymptotic carries a ~2e-3 method error at these scales
        from scipy.stats import hypergeom
        a, b, mu = 94835, 104830, 435
        rv = hypergeom(a + b, a, mu)
        m = np.arange(mu + 1)
        exact_s = rv.pmf(m)[(mu - m) > m].sum()
        win = college_win_chance(a, b, a + b, mu)
        assert win.s == pytest.approx(exact_s, abs=3e-3)


def sequence_probability(seq, a, b):
    """Probability of one ordered color sequence drawn without replacement."""
    p = F(1)
    wa, wb = a, b
    for color in seq:
        total = wa + wb
        if color == "w":
            p *= F(wa, total)
            wa -= 1
        else:
            p *= F(wb, total)
            wb -= 1
    return p


class TestExchangeability:
    @pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 8)
                                     for b in range(1, 8) if 2 <= a + b <= 8])
    def test_later_draws_ignore_earlier_ones(self, a, b):
        c = a + b
        for l in range(0, min(3, c - 1) + 1):
            for mu in range(1, c - l + 1):
                for m in range(0, mu + 1):
                    n = mu - m
                    # exact chance that draws l+1 .. l+mu hold m white
                    total = F(0)
                    for seq in itertools.product("wb", repeat=l + mu):
                        if seq[:l].count("w") > a or seq[:l].count("b") > b:
                            continue
                        if seq.count("w") > a or seq.count("b") > b:
                            continue
                        if seq[l:].count("w") == m:
                            total += sequence_probability(seq, a, b)
                    assert total == hypergeometric(UrnSpec(a, b), m, n)


class TestSeatInterval:
    def test_reference_interval(self):
        res = seat_interval(459, 0.85426, 2.0)
        assert res.center == pytest.approx(392.1, abs=0.05)
        assert res.half_width == pytest.approx(21.4, abs=0.05)
        assert res.probability == pytest.approx(0.99682, abs=6e-4)

    def test_probability_saturates(self):
        assert seat_interval(459, 0.85, 6.0).probability == pytest.approx(1.0, abs=1e-9)

    def test_monte_carlo_coverage(self):
        # 1e5 seeded replications of the 459 college outcomes; the sampled
        # coverage must sit within 3 SE of the exact binomial coverage, and
        # the closed-form R within the formula's own discreteness error of
        # that exact value (the boundary term assumes integer-landing limits)
        from scipy import stats
        rng = np.random.default_rng(459)
        r, alpha, u = 0.85426, 459, 2.0
        res = seat_interval(alpha, r, u)
        seats = rng.binomial(alpha, r, size=100_000)
        covered = np.mean((seats >= res.low) & (seats <= res.high))
        lo_i, hi_i = math.ceil(res.low), math.floor(res.high)
        exact = stats.binom(alpha, r).cdf(hi_i) - stats.binom(alpha, r).cdf(lo_i - 1)
        se = math.sqrt(exact * (1 - exact) / 100_000)
        assert abs(covered - exact) < 3 * se
        assert res.probability == pytest.approx(exact, abs=1.5e-3)


class TestMinorityTail:
    def test_reference_value(self):
        assert minority_tail(459, 0.01824, 15) == pytest.approx(0.98782, abs=5e-5)

    def test_zero_seats(self):
        w = 459 * 0.004
        assert minority_tail(459, 0.004, 0) == pytest.approx(math.exp(-w), rel=1e-12)

    def test_tiny_loss_chance_forbids_single_seat(self):
        # below one in a thousand per college, even one minority seat is
        # already a heavy underdog event
        p_none = minority_tail(459, 1 / 1200, 0)
        assert p_none > 0.68
        assert minority_tail(459, 1 / 1200, 1) > 0.93


class TestScenarioReport:
    def test_split_sizes(self):
        scn = ElectionScenario([654] * 153 + [327] * 306, 95062, 105062)
        rep = scenario_report(scn, 2.0)
        assert rep.group_chances[0] == pytest.approx(0.81981, abs=2e-4)  # 327
        assert rep.group_chances[1] == pytest.approx(0.90117, abs=2e-4)  # 654
        assert rep.r == pytest.approx(0.86049, abs=2e-4)

    def test_uniform_sizes_reduce_to_single_college(self):
        scn = ElectionScenario([435] * 459, 94835, 104830)
        rep = scenario_report(scn, 2.0)
        win = college_win_chance(94835, 104830, 199665, 435)
        assert rep.r == win.decisive == win.s

    def test_mean_chance_against_monte_carlo(self):
        # per-college win frequency under true without-replacement sampling
        a, b, mu = 95062, 105062, 327
        rng = np.random.default_rng(1837)
        draws = rng.hypergeometric(a, b, mu, size=1_000_000)
        wins = np.mean((mu - draws) > draws)
        model = college_win_chance(a, b, a + b, mu).s
        se = math.sqrt(wins * (1 - wins) / 1_000_000)
        # the asymptotic carries its own ~1e-3 method error on top of MC noise
        assert abs(model - wins) < 3 * se + 2.5e-3

    def test_scenario_validates_totals(self):
        with pytest.raises(ValueError):
            ElectionScenario([10, 10], 5, 20)
