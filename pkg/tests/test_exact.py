"""Exact-kernel tests: enumeration oracles, identities, property checks."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jurycalc import exact
from jurycalc.exact import (
    CoincidenceStats,
    OutcomeDistribution,
    TrialWeights,
    UrnSpec,
    as_probability,
    binomial_pmf,
    coincidence_stats,
    convolve_trials,
    distinct_urns_all_success,
    even_bet_trials,
    hypergeometric,
    lottery_odds,
    petersburg_entry,
    problem_of_points,
    rare_event_cdf,
    recurrence_odds,
    repeat_coincidence,
    repetition_tail,
    sum_convolution,
    to_decimal,
)

F = Fraction

probabilities = st.fractions(min_value=0, max_value=1, max_denominator=20)
open_probabilities = st.fractions(
    min_value=F(1, 20), max_value=F(19, 20), max_denominator=20)


class TestBinomialPmf:
    def test_certainty(self):
        assert binomial_pmf(3, 0, 1) == 1

    def test_symmetric_two_trials(self):
        assert binomial_pmf(1, 1, F(1, 2)) == F(1, 2)

    def test_central_hundred(self):
        # exact big-integer evaluation; decimal approximately 0.0795892
        val = binomial_pmf(50, 50, F(1, 2))
        assert val == F(math.comb(100, 50), 2**100)
        assert to_decimal(val, 7) == "0.0795892"

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            binomial_pmf(0, 0, F(1, 2))


def brute_force_tail(m, n, p):
    """Enumerate all 2^(m+n) outcome strings; oracle for the tail sum."""
    mu = m + n
    total = F(0)
    for bits in itertools.product([0, 1], repeat=mu):
        k = sum(bits)
        if k >= m:
            total += p**k * (1 - p) ** (mu - k)
    return total


class TestRepetitionTail:
    def test_all_successes(self):
        p = F(3, 7)
        assert repetition_tail(5, 0, p) == p**5

    def test_at_least_once(self):
        p = F(3, 7)
        assert repetition_tail(1, 5, p) == 1 - (1 - p) ** 6

    def test_two_of_four_enumeration(self):
        assert repetition_tail(2, 2, F(1, 2)) == F(11, 16)
        assert repetition_tail(2, 2, F(1, 2)) == brute_force_tail(2, 2, F(1, 2))

    @given(m=st.integers(0, 6), n=st.integers(0, 6), p=probabilities)
    def test_equals_binomial_upper_sum(self, m, n, p):
        if m + n < 1:
            return
        mu = m + n
        expected = sum(binomial_pmf(j, mu - j, p) for j in range(m, mu + 1))
        assert repetition_tail(m, n, p) == expected


class TestRecurrenceOdds:
    def test_die_face(self):
        _, n_even = recurrence_odds(F(1, 6), 4)
        assert n_even == pytest.approx(3.8018, abs=5e-5)

    def test_double_six(self):
        # classical double-six crossover; the old printed 24.614 is a slip
        _, n_even = recurrence_odds(F(1, 36), 25)
        assert n_even == pytest.approx(24.605, abs=5e-4)

    def test_single_fair_trial(self):
        r, _ = recurrence_odds(F(1, 2), 1)
        assert r == F(1, 2)

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            recurrence_odds(0, 3)
        with pytest.raises(ValueError):
            even_bet_trials(1)


def brute_force_points(p, a, b):
    """Play out every set sequence of length a+b-1."""
    sets = a + b - 1
    alpha = F(0)
    for bits in itertools.product([0, 1], repeat=sets):
        if sum(bits) >= a:
            k = sum(bits)
            alpha += p**k * (1 - p) ** (sets - k)
    return alpha


class TestProblemOfPoints:
    def test_double_skill(self):
        alpha, beta = problem_of_points(F(2, 3), 4, 2)
        assert alpha == F(112, 243)
        assert beta == F(131, 243)

    def test_symmetric(self):
        alpha, _ = problem_of_points(F(1, 2), 1, 1)
        assert alpha == F(1, 2)

    def test_enumeration(self):
        alpha, _ = problem_of_points(F(3, 5), 2, 3)
        assert alpha == brute_force_points(F(3, 5), 2, 3)

    @given(p=open_probabilities, a=st.integers(1, 4), b=st.integers(1, 4))
    def test_role_swap_sums_to_one(self, p, a, b):
        alpha, _ = problem_of_points(p, a, b)
        alpha_swapped, _ = problem_of_points(1 - p, b, a)
        assert alpha + alpha_swapped == 1


def brute_force_hypergeometric(a, b, m, n):
    """Probability over all ordered no-replacement draw sequences."""
    balls = ["w"] * a + ["b"] * b
    mu = m + n
    hits = 0
    total = 0
    for perm in itertools.permutations(range(a + b), mu):
        total += 1
        drawn = [balls[i] for i in perm]
        if drawn.count("w") == m:
            hits += 1
    return F(hits, total)


class TestHypergeometric:
    def test_draw_everything(self):
        assert hypergeometric(UrnSpec(4, 3), 4, 3) == 1

    def test_sixteen_red_cards(self):
        assert hypergeometric(UrnSpec(16, 16), 16, 0) == F(1, 601080390)

    def test_ordered_enumeration(self):
        assert hypergeometric(UrnSpec(5, 5), 2, 1) == brute_force_hypergeometric(5, 5, 2, 1)

    def test_impossible_draw_is_zero(self):
        assert hypergeometric(UrnSpec(2, 2), 3, 0) == 0

    @pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 9)
                                     for b in range(1, 9) if a + b <= 9])
    def test_brute_force_all_small_urns(self, a, b):
        for mu in range(1, a + b + 1):
            for m in range(0, min(a, mu) + 1):
                n = mu - m
                if n > b:
                    continue
                assert hypergeometric(UrnSpec(a, b), m, n) == \
                    brute_force_hypergeometric(a, b, m, n)


class TestConvolveTrials:
    def test_masses_sum_to_one(self):
        dist = convolve_trials(TrialWeights([F(1, 3), F(2, 5), F(1, 2)]))
        assert sum(dist.mass) == 1

    @given(p=probabilities, mu=st.integers(1, 12))
    @settings(max_examples=60, deadline=None)
    def test_equal_weights_collapse_to_binomial(self, p, mu):
        dist = convolve_trials(TrialWeights([p] * mu))
        for m in range(mu + 1):
            assert dist.prob(m) == binomial_pmf(m, mu - m, p)

    def test_count_collapse_example(self):
        p = F(2, 7)
        dist = convolve_trials(TrialWeights([p, p, p]))
        assert dist.prob(2) == 3 * p**2 * (1 - p)

    def test_three_dice_sum_ten(self):
        dist = sum_convolution([[1, 2, 3, 4, 5, 6]] * 3)
        assert dist.prob(10) == F(27, 216)
        assert dist.prob(11) == F(27, 216)

    def test_three_dice_at_most_ten(self):
        dist = sum_convolution([[1, 2, 3, 4, 5, 6]] * 3)
        assert dist.tail(10, mode="at_most") == F(1, 2)
        assert dist.tail(11, mode="at_least") == F(1, 2)

    def test_mismatched_masses_rejected(self):
        with pytest.raises(ValueError):
            sum_convolution([[1, 2]], masses=[[F(1, 3), F(1, 3)]])

    def test_distribution_validates_total(self):
        with pytest.raises(ValueError):
            OutcomeDistribution((0, 1), (F(1, 2), F(1, 3)))


def brute_force_distinct_urns(chances, n):
    """Average over every ordered choice of n distinct urns."""
    m = len(chances)
    total = F(0)
    count = 0
    for pick in itertools.permutations(range(m), n):
        total += math.prod([chances[i] for i in pick], start=F(1))
        count += 1
    return total / count


class TestDistinctUrns:
    def test_all_urns_used(self):
        chances = [F(1, 2), F(2, 3), F(3, 5)]
        assert distinct_urns_all_success(chances, 3) == F(1, 2) * F(2, 3) * F(3, 5)

    def test_equal_chances(self):
        assert distinct_urns_all_success([F(1, 3)] * 5, 2) == F(1, 9)

    def test_pair_enumeration(self):
        chances = [F(1, 2), F(1, 3), F(1, 4)]
        assert distinct_urns_all_success(chances, 2) == F(3, 24)
        assert distinct_urns_all_success(chances, 2) == \
            brute_force_distinct_urns(chances, 2)

    @pytest.mark.parametrize("m", range(1, 7))
    def test_matches_ordered_enumeration(self, m):
        chances = [F(i + 1, i + 3) for i in range(m)]
        for n in range(0, m + 1):
            assert distinct_urns_all_success(chances, n) == \
                brute_force_distinct_urns(chances, n)


class TestLottery:
    def test_three_of_ninety(self):
        odds = lottery_odds(90, 5, 3)
        assert odds.fair_multiple == 11748
        assert odds.even_bet_drawings_approx == pytest.approx(8143.13, abs=0.01)
        # the exact crossing sits a little lower than the desk approximation
        assert odds.even_bet_drawings == pytest.approx(8142.74, abs=0.01)

    def test_one_of_ninety(self):
        odds = lottery_odds(90, 5, 1)
        assert odds.chance == F(1, 18)
        assert odds.even_bet_drawings == pytest.approx(12.1268, abs=5e-4)


def brute_force_petersburg(fortune, max_tosses):
    """Direct expectation sum over the truncated capped payouts."""
    total = F(0)
    for toss in range(1, max_tosses + 1):
        payout = min(F(2) ** toss, F(fortune))
        total += payout / 2**toss
    return total


class TestPetersburg:
    def test_hundred_million(self):
        entry = petersburg_entry(10**8, 1000)
        assert 2**26 <= 10**8 < 2**27
        assert 27 < entry < 28

    def test_single_toss(self):
        assert petersburg_entry(2, 1) == 1

    def test_direct_expectation(self):
        assert petersburg_entry(12, 30) == brute_force_petersburg(12, 30)
        assert float(petersburg_entry(12, 30)) == pytest.approx(4.5, abs=1e-7)

    def test_entry_grows_with_tosses(self):
        # the formula rises toward beta + 1 + h; the old claim of decrease
        # with the toss count does not hold
        values = [petersburg_entry(12, m) for m in range(4, 12)]
        assert values == sorted(values)
        assert values[-1] < F(9, 2)


class TestRareEvent:
    def test_zero_count(self):
        assert rare_event_cdf(2.5, 0) == pytest.approx(math.exp(-2.5), rel=1e-12)

    def test_ten_of_expected_one(self):
        assert 1.0 - rare_event_cdf(1.0, 10) == pytest.approx(1.0e-8, rel=0.02)

    def test_full_mass(self):
        assert rare_event_cdf(2.0, 60) == pytest.approx(1.0, abs=1e-12)


class TestCoincidence:
    def test_small_minting_bias(self):
        stats = coincidence_stats(k=F(1, 31))
        assert stats.two_coin_pair - F(1, 2) == F(1, 1922)
        assert float(stats.two_coin_pair - F(1, 2)) == pytest.approx(0.0005, abs=3e-5)

    def test_counter_stake_deficit(self):
        stats = coincidence_stats(delta=F(1, 10))
        assert stats.stake_deficit == F(2, 101)
        assert float(stats.stake_deficit) == pytest.approx(0.02, abs=2e-4)

    def test_unbiased_everything_half(self):
        stats = coincidence_stats()
        assert stats.two_coin_pair == stats.same_coin_pair == F(1, 2)

    def test_triple_from_pair(self):
        stats = coincidence_stats(k=F(1, 10), h=F(1, 20))
        assert stats.same_coin_triple == (3 * stats.same_coin_pair - 1) / 2

    @given(p=probabilities)
    def test_repeat_reduces_to_squares_without_bias(self, p):
        assert repeat_coincidence(p, 0, 2) == p**2 + (1 - p) ** 2

    def test_hidden_pair_equals_repeat_form(self):
        d = F(1, 7)
        stats = coincidence_stats(delta=d)
        assert stats.hidden_pair == repeat_coincidence(F(1, 2), d / 2, 2)

    def test_flat_prior_matches_coincidence_form(self):
        # a chance uniform over [0,1] gives pair coincidence 2/3, the same
        # as a hidden bias of 1/sqrt(3): (1 + 1/3)/2
        assert (1 + F(1, 3)) / 2 == F(2, 3)


class TestHelpers:
    def test_as_probability_fraction_string(self):
        assert as_probability("3/7") == F(3, 7)

    def test_as_probability_bounds(self):
        with pytest.raises(ValueError):
            as_probability("7/3")

    def test_decimal_rendering(self):
        assert to_decimal(F(1, 3)) == "0.333333"
        assert to_decimal(F(2, 3), 4) == "0.6667"
