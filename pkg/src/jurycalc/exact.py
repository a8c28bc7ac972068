"""Exact combinatorial probability kernels.

Everything in this module is computed with arbitrary-precision rational
arithmetic (`fractions.Fraction`), so the small-instance identities hold
exactly and the results can serve as oracles for the floating-point
approximation layer.  Probabilities passed as floats are converted to the
exact rational value of the double; pass `Fraction` (or an "a/b" string via
`as_probability`) when exactness of the *input* matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]
ProbabilityLike = Union[int, float, str, Fraction]

__all__ = [
    "as_probability",
    "to_decimal",
    "TrialWeights",
    "UrnSpec",
    "OutcomeDistribution",
    "LotteryOdds",
    "CoincidenceStats",
    "binomial_pmf",
    "repetition_tail",
    "recurrence_odds",
    "even_bet_trials",
    "problem_of_points",
    "hypergeometric",
    "convolve_trials",
    "sum_convolution",
    "distinct_urns_all_success",
    "lottery_odds",
    "petersburg_entry",
    "rare_event_cdf",
    "coincidence_stats",
    "repeat_coincidence",
]


def as_probability(value: ProbabilityLike) -> Fraction:
    """Coerce to an exact Fraction in [0, 1].  Accepts "a/b" strings."""
    p = Fraction(value)
    if not 0 <= p <= 1:
        raise ValueError(f"probability {value!r} outside [0, 1]")
    return p


def to_decimal(value: Rational, digits: int = 6) -> str:
    """Render a rational as a decimal string with `digits` places.

    Display-only; rounding is half-even on the exact value.
    """
    q = Fraction(value)
    scaled = q * 10**digits
    n = scaled.numerator // scaled.denominator
    rem = scaled - n
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and n % 2):
        n += 1
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class TrialWeights:
    """Per-trial success chances p_1 ... p_mu (failure chances are complements)."""

    chances: tuple[Fraction, ...]

    def __init__(self, chances: Iterable[ProbabilityLike]):
        object.__setattr__(self, "chances", tuple(as_probability(c) for c in chances))
        if not self.chances:
            raise ValueError("TrialWeights needs at least one trial")

    def __len__(self) -> int:
        return len(self.chances)


@dataclass(frozen=True)
class UrnSpec:
    """An urn of white and black balls."""

    white: int
    black: int

    def __post_init__(self):
        if self.white < 0 or self.black < 0 or self.white + self.black < 1:
            raise ValueError("urn needs non-negative counts and at least one ball")

    @property
    def total(self) -> int:
        return self.white + self.black


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact distribution over an ordered finite support.

    The masses are rationals summing exactly to one.  Tail queries are flags
    on a single method rather than separate APIs.
    """

    support: tuple[Rational, ...]
    mass: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.support) != len(self.mass):
            raise ValueError("support and mass lengths differ")
        if sum(self.mass, Fraction(0)) != 1:
            raise ValueError("masses must sum exactly to 1")

    def prob(self, outcome: Rational) -> Fraction:
        for x, m in zip(self.support, self.mass):
            if x == outcome:
                return m
        return Fraction(0)

    def tail(self, value: Rational, mode: str = "at_least") -> Fraction:
        """P(outcome >= value), P(outcome <= value) or P(outcome == value)."""
        if mode == "at_least":
            keep = (m for x, m in zip(self.support, self.mass) if x >= value)
        elif mode == "at_most":
            keep = (m for x, m in zip(self.support, self.mass) if x <= value)
        elif mode == "exact":
            return self.prob(value)
        else:
            raise ValueError(f"unknown tail mode {mode!r}")
        return sum(keep, Fraction(0))


def binomial_pmf(m: int, n: int, p: ProbabilityLike) -> Fraction:
    """Chance of exactly m successes and n failures in m+n independent trials."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 with at least one trial")
    p = as_probability(p)
    return math.comb(m + n, m) * p**m * (1 - p) ** n


def repetition_tail(m: int, n: int, p: ProbabilityLike) -> Fraction:
    """Chance of at least m successes in mu = m + n trials.

    Uses the rising-factorial (Montmort) form
    P = p^m [1 + mq + m(m+1)/2! q^2 + ... + m(m+1)...(m+n-1)/n! q^n],
    which equals the binomial upper-tail sum exactly.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 with at least one trial")
    p = as_probability(p)
    q = 1 - p
    total = Fraction(0)
    coeff = Fraction(1)
    qpow = Fraction(1)
    for j in range(n + 1):
        total += coeff * qpow
        coeff = coeff * (m + j) / (j + 1)
        qpow *= q
    return p**m * total


def recurrence_odds(p: ProbabilityLike, n: int) -> tuple[Fraction, float]:
    """(chance of at least one occurrence in n trials, even-money trial count).

    The second element is the real n at which the first crosses 1/2;
    undefined for p in {0, 1}.
    """
    p = as_probability(p)
    if p == 0 or p == 1:
        raise ValueError("even-money trial count undefined for p = 0 or 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    r = 1 - (1 - p) ** n
    return r, even_bet_trials(p)


def even_bet_trials(p: ProbabilityLike) -> float:
    """Real trial count where the at-least-once chance crosses 1/2."""
    p = as_probability(p)
    if p == 0 or p == 1:
        raise ValueError("undefined for p = 0 or 1")
    return -math.log(2.0) / math.log(1.0 - float(p))


def problem_of_points(p: ProbabilityLike, a: int, b: int) -> tuple[Fraction, Fraction]:
    """Win chances (alpha, beta) when A lacks a points and B lacks b.

    The game is settled within a + b - 1 sets, so alpha is the chance of at
    least a successes in that many trials; alpha + beta = 1 exactly.
    """
    if a < 1 or b < 1:
        raise ValueError("both players must lack at least one point")
    alpha = repetition_tail(a, b - 1, p)
    return alpha, 1 - alpha


def hypergeometric(urn: UrnSpec, m: int, n: int) -> Fraction:
    """Chance of drawing m white and n black balls without replacement.

    Identical for sequential draws and a single simultaneous handful.
    Impossible draws return 0 rather than raising.
    """
    if m < 0 or n < 0:
        raise ValueError("counts must be non-negative")
    if m > urn.white or n > urn.black or m + n > urn.total:
        return Fraction(0)
    return Fraction(
        math.comb(urn.white, m) * math.comb(urn.black, n),
        math.comb(urn.total, m + n),
    )


def convolve_trials(weights: TrialWeights) -> OutcomeDistribution:
    """Exact success-count distribution for independent unequal-chance trials.

    Coefficient extraction from the product (q_1 + p_1 z)...(q_mu + p_mu z);
    collapses to the binomial law when all chances are equal.
    """
    coeffs = [Fraction(1)]
    for p in weights.chances:
        q = 1 - p
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c * q
            nxt[k + 1] += c * p
        coeffs = nxt
    return OutcomeDistribution(tuple(range(len(coeffs))), tuple(coeffs))


def sum_convolution(
    trials: Sequence[Sequence[Rational]],
    masses: Sequence[Sequence[ProbabilityLike]] | None = None,
) -> OutcomeDistribution:
    """Exact distribution of the sum of per-trial outcome values.

    `trials[i]` lists the values the i-th trial can take; `masses[i]` their
    chances (uniform when omitted).  Univariate generating-function product;
    support is the full integer-combination range, materialized densely.
    """
    if not trials:
        raise ValueError("need at least one trial")
    if masses is not None and len(masses) != len(trials):
        raise ValueError("masses must match trials in length")
    dist: dict[Rational, Fraction] = {0: Fraction(1)}
    for idx, values in enumerate(trials):
        if not values:
            raise ValueError(f"trial {idx} has no outcome values")
        if masses is None:
            weights = [Fraction(1, len(values))] * len(values)
        else:
            weights = [as_probability(w) for w in masses[idx]]
            if sum(weights) != 1:
                raise ValueError(f"trial {idx} masses do not sum to 1")
        nxt: dict[Rational, Fraction] = {}
        for s, c in dist.items():
            for v, w in zip(values, weights):
                key = s + v
                nxt[key] = nxt.get(key, Fraction(0)) + c * w
        dist = nxt
    support = tuple(sorted(dist))
    return OutcomeDistribution(support, tuple(dist[s] for s in support))


def _elementary_symmetric(values: Sequence[Fraction], n: int) -> Fraction:
    # e_n via the triangular recurrence; exact and O(len * n)
    e = [Fraction(0)] * (n + 1)
    e[0] = Fraction(1)
    for v in values:
        for k in range(min(n, len(values)), 0, -1):
            e[k] += v * e[k - 1]
    return e[n]


def distinct_urns_all_success(chances: Sequence[ProbabilityLike], n: int) -> Fraction:
    """Chance of n successes when each trial consumes a distinct random urn.

    Equals e_n(chances) / C(m, n) with e_n the elementary symmetric
    polynomial over the m urn chances.
    """
    ps = [as_probability(c) for c in chances]
    m = len(ps)
    if not 0 <= n <= m:
        raise ValueError("n must lie between 0 and the number of urns")
    return _elementary_symmetric(ps, n) / math.comb(m, n)


@dataclass(frozen=True)
class LotteryOdds:
    chance: Fraction
    fair_multiple: Fraction
    even_bet_drawings: float
    even_bet_drawings_approx: float


def lottery_odds(n: int, m: int, l: int) -> LotteryOdds:
    """Odds of l chosen numbers all appearing among m drawn from n.

    fair_multiple is the payout multiple of a fair game (1/chance);
    even_bet_drawings the real drawing count where at-least-one-win crosses
    even money, with the classical small-chance desk approximation
    0.69315/chance (five-digit log-two constant, as historically printed)
    alongside.
    """
    if not 0 < l <= m <= n:
        raise ValueError("need 0 < l <= m <= n")
    lam = Fraction(math.comb(m, l), math.comb(n, l))
    return LotteryOdds(lam, 1 / lam, even_bet_trials(lam),
                       0.69315 / float(lam))


def petersburg_entry(fortune: Rational, max_tosses: int) -> Fraction:
    """Fair entry stake for the doubling coin game against a finite banker.

    The banker's fortune decomposes as b = 2^beta (1 + h) with 0 <= h < 1;
    payouts are capped at b and the game stops after max_tosses.  For
    max_tosses <= beta the banker can always pay and the stake is the toss
    count itself.
    """
    b = Fraction(fortune)
    if b < 2:
        raise ValueError("banker fortune must be at least 2")
    if max_tosses < 1:
        raise ValueError("need at least one toss")
    beta = 0
    while b >= 2 ** (beta + 1):
        beta += 1
    h = b / 2**beta - 1
    if max_tosses <= beta:
        return Fraction(max_tosses)
    return beta + (1 + h) * (1 - Fraction(1, 2 ** (max_tosses - beta)))


def rare_event_cdf(w: float, n: int) -> float:
    """P(count <= n) for a rare event with expected count w in many trials.

    Limit form e^{-w} sum_{j<=n} w^j/j!; the j-sum is accumulated exactly
    before the single float rounding.
    """
    if w <= 0:
        raise ValueError("expected count must be positive")
    if n < 0:
        raise ValueError("n must be non-negative")
    term, total = 1.0, 0.0
    terms = []
    for j in range(n + 1):
        terms.append(term)
        term *= w / (j + 1)
    total = math.fsum(terms)
    return math.exp(-w) * total


@dataclass(frozen=True)
class CoincidenceStats:
    """Coincidence chances under small unknown biases.

    k: known mean bias of the minting (mean heads chance (1+k)/2)
    h: dispersion of per-coin biases around the mean
    delta: full hidden bias of a single coin (its sides fall (1 +- delta)/2)
    """

    two_coin_pair: Fraction
    same_coin_pair: Fraction
    same_coin_triple: Fraction
    hidden_pair: Fraction
    stake_deficit: Fraction
    repeat_m: Fraction


def repeat_coincidence(p: ProbabilityLike, alpha: ProbabilityLike, m: int) -> Fraction:
    """Chance that one outcome repeats through all m trials when an unknown
    cause shifts one of the two chances by alpha (direction unknown)."""
    p = as_probability(p)
    a = Fraction(alpha)
    q = 1 - p
    if not (0 <= p + a <= 1 and 0 <= q - a <= 1 and 0 <= p - a <= 1 and 0 <= q + a <= 1):
        raise ValueError("alpha pushes a chance outside [0, 1]")
    if m < 1:
        raise ValueError("need at least one trial")
    return ((p + a) ** m + (q - a) ** m + (p - a) ** m + (q + a) ** m) / 2


def coincidence_stats(
    k: ProbabilityLike = 0,
    h: ProbabilityLike = 0,
    delta: ProbabilityLike = 0,
    m: int = 2,
    p: ProbabilityLike = Fraction(1, 2),
    alpha: ProbabilityLike | None = None,
) -> CoincidenceStats:
    """Coincidence probabilities for repeated tosses of biased coins.

    two_coin_pair     (1 + k^2)/2   two randomly chosen coins of one minting
    same_coin_pair    (1 + k^2 + h^2)/2   the same random coin twice
    same_coin_triple  (3*same_coin_pair - 1)/2   the same coin three times
    hidden_pair       (1 + delta^2)/2   one coin with hidden bias delta
    stake_deficit     2 delta^2/(1 + delta^2)   fair counter-stake shortfall
    repeat_m          the general m-trial repeat chance (alpha defaults to
                      delta/2, i.e. sides at (1 +- delta)/2 around p = 1/2)
    """
    kf, hf, df = Fraction(k), Fraction(h), Fraction(delta)
    for name, val in (("k", kf), ("h", hf), ("delta", df)):
        if not -1 <= val <= 1:
            raise ValueError(f"{name} must lie in [-1, 1]")
    s = (1 + kf**2) / 2
    s_same = (1 + kf**2 + hf**2) / 2
    s_triple = (3 * s_same - 1) / 2
    hidden = (1 + df**2) / 2
    deficit = 2 * df**2 / (1 + df**2)
    a = Fraction(alpha) if alpha is not None else df / 2
    return CoincidenceStats(s, s_same, s_triple, hidden, deficit,
                            repeat_coincidence(p, a, m))
