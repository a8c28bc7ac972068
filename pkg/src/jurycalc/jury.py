"""Forward verdict-probability model for jury panels.

A panel of n jurors votes on whether the accused is convictable.  Two
parameters drive everything: the prior chance k that the accused is
convictable, and the per-juror reliability u (chance of voting correctly on
that question), with odds t = u/(1-u).  The full record of split
probabilities, correctness probabilities and danger measures is computed as
one coherent object so the cross-field identities stay enforceable.

Arithmetic propagates input types: Fraction parameters give exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import TrialWeights, convolve_trials

__all__ = [
    "JuryParams",
    "VerdictTally",
    "VerdictProbs",
    "SingleJuror",
    "PanelSplit",
    "PanelDistribution",
    "single_juror",
    "panel_distinct",
    "verdict_probs",
    "laplace_error",
    "laplace_interval",
    "unanimity_stats",
    "UnanimityStats",
]

MAX_PANEL = 20


def _check_open_unit(name: str, value) -> None:
    if not 0 < value < 1:
        raise ValueError(f"{name} must lie strictly inside (0, 1)")


@dataclass(frozen=True)
class JuryParams:
    """Prior convictable chance k and juror reliability u."""

    k: object
    u: object

    def __post_init__(self):
        _check_open_unit("k", self.k)
        _check_open_unit("u", self.u)

    @property
    def t(self):
        """Reliability odds u/(1-u)."""
        return self.u / (1 - self.u)


@dataclass(frozen=True)
class VerdictTally:
    """Panel size n with i minority votes; the majority margin is n - 2i."""

    n: int
    i: int

    def __post_init__(self):
        if self.i < 0 or 2 * self.i > self.n:
            raise ValueError("need 0 <= i <= n/2")

    @property
    def m(self) -> int:
        return self.n - 2 * self.i

    @property
    def N_i(self) -> int:
        return math.comb(self.n, self.i)


@dataclass(frozen=True)
class SingleJuror:
    gamma: object  # conviction chance
    p: object      # correctness of a conviction
    q: object      # correctness of an acquittal


def single_juror(params: JuryParams) -> SingleJuror:
    """One-juror verdict chances; the identity u = p*gamma + q*(1-gamma) holds."""
    k, u = params.k, params.u
    gamma = k * u + (1 - k) * (1 - u)
    return SingleJuror(gamma, k * u / gamma, (1 - k) * u / (1 - gamma))


@dataclass(frozen=True)
class PanelSplit:
    convict_votes: int
    acquit_votes: int
    prob_if_guilty: object     # chance of this split given convictable
    prob_if_innocent: object
    prob: object               # composite chance of the split
    posterior_guilt: object    # chance convictable given the split


@dataclass(frozen=True)
class PanelDistribution:
    splits: tuple[PanelSplit, ...]
    coincidence: object        # chance of unanimity either way; free of k

    def split(self, convict_votes: int) -> PanelSplit:
        return self.splits[convict_votes]


def panel_distinct(k, reliabilities: Sequence) -> PanelDistribution:
    """Full vote-split distribution for jurors of distinct reliabilities.

    Exact enumeration through the success-count convolution over per-juror
    correctness indicators; under the guilt hypothesis a correct juror
    convicts, under innocence a correct juror acquits.
    """
    _check_open_unit("k", k)
    n = len(reliabilities)
    if not 1 <= n <= MAX_PANEL:
        raise ValueError(f"panel size must be 1..{MAX_PANEL}")
    for u in reliabilities:
        _check_open_unit("reliability", u)
    weights = TrialWeights(reliabilities)
    correct_counts = convolve_trials(weights)  # distribution of correct votes
    splits = []
    for g in range(n + 1):
        # g convict votes: given guilt, exactly g correct; given innocence,
        # exactly n - g correct
        p_guilty = correct_counts.prob(g)
        p_innocent = correct_counts.prob(n - g)
        prob = k * p_guilty + (1 - k) * p_innocent
        post = k * p_guilty / prob if prob > 0 else Fraction(0)
        splits.append(PanelSplit(g, n - g, p_guilty, p_innocent, prob, post))
    coincidence = correct_counts.prob(n) + correct_counts.prob(0)
    return PanelDistribution(tuple(splits), coincidence)


@dataclass(frozen=True)
class VerdictProbs:
    """Every probability attached to one (k, u, n, i) verdict configuration.

    gamma_i / delta_i   conviction / acquittal by exactly n-i votes to i
    c_i / d_i           conviction / acquittal by at least that majority
    U_i / V_i           the two k-free tail sums behind c_i and d_i
    H_i                 tie chance (even panels only, else None)
    p_i / q_i           correctness of a conviction / acquittal at the margin
    P_i / Q_i           correctness given at-least-that-majority decisions
    D_i / Delta_i       danger of convicting the non-convictable / acquitting
                        the convictable
    w_i                 chance of a decision (either way) by exactly this split
    """

    params: JuryParams
    tally: VerdictTally
    gamma_i: object
    delta_i: object
    c_i: object
    d_i: object
    U_i: object
    V_i: object
    H_i: object | None
    p_i: object
    q_i: object
    P_i: object
    Q_i: object
    D_i: object
    Delta_i: object
    w_i: object


def _tail_sums(u, n: int, i: int):
    """U_i = sum_{j<=i} C(n,j) u^(n-j) (1-u)^j and its u -> 1-u mirror V_i."""
    v = 1 - u
    U = sum(math.comb(n, j) * u ** (n - j) * v**j for j in range(i + 1))
    V = sum(math.comb(n, j) * v ** (n - j) * u**j for j in range(i + 1))
    return U, V


def verdict_probs(params: JuryParams, tally: VerdictTally) -> VerdictProbs:
    """The full verdict-probability record for one configuration."""
    k, u = params.k, params.u
    n, i = tally.n, tally.i
    v = 1 - u
    N = tally.N_i
    gamma_i = N * (k * u ** (n - i) * v**i + (1 - k) * u**i * v ** (n - i))
    delta_i = N * (k * u**i * v ** (n - i) + (1 - k) * u ** (n - i) * v**i)
    U, V = _tail_sums(u, n, i)
    c_i = k * U + (1 - k) * V
    d_i = k * V + (1 - k) * U
    H = None
    if n % 2 == 0:
        half = n // 2
        H = math.comb(n, half) * (u * v) ** half
    den_p = k * u ** (n - i) * v**i + (1 - k) * v ** (n - i) * u**i
    p_i = k * u ** (n - i) * v**i / den_p
    den_q = (1 - k) * u ** (n - i) * v**i + k * v ** (n - i) * u**i
    q_i = (1 - k) * u ** (n - i) * v**i / den_q
    P_i = k * U / (k * U + (1 - k) * V)
    Q_i = (1 - k) * U / ((1 - k) * U + k * V)
    D_i = (1 - k) * V          # convict the non-convictable
    Delta_i = k * (1 - U)      # acquit the convictable
    return VerdictProbs(
        params, tally, gamma_i, delta_i, c_i, d_i, U, V, H,
        p_i, q_i, P_i, Q_i, D_i, Delta_i, gamma_i + delta_i,
    )


def laplace_error(n: int, i: int) -> Fraction:
    """Chance of a mistaken conviction by n-i votes to i under the flat
    above-one-half reliability prior: (1/2^(n+1)) sum_{j<=i} C(n+1, j)."""
    if not 0 <= i < n / 2:
        raise ValueError("need a convicting majority: 0 <= i < n/2")
    return Fraction(sum(math.comb(n + 1, j) for j in range(i + 1)), 2 ** (n + 1))


def laplace_interval(n: int, i: int, delta) -> Fraction:
    """Posterior chance that the reliability lies within 1/2 -+ delta after a
    conviction by n-i votes to i, under a flat reliability prior.

    Exact regularized-incomplete-beta difference, evaluated through binomial
    tail sums; rational inputs give a rational result.  For unanimity this
    closes to (1/2+delta)^(n+1) - (1/2-delta)^(n+1).
    """
    if not 0 <= i < n / 2:
        raise ValueError("need a convicting majority")
    d = delta if isinstance(delta, float) else Fraction(delta)
    if not 0 < d <= Fraction(1, 2):
        raise ValueError("delta must lie in (0, 1/2]")

    def reg_beta(x):
        # I_x(n-i+1, i+1) = P(Binomial(n+1, x) >= n-i+1)
        return sum(
            math.comb(n + 1, j) * x**j * (1 - x) ** (n + 1 - j)
            for j in range(n - i + 1, n + 2)
        )

    half = 0.5 if isinstance(d, float) else Fraction(1, 2)
    return reg_beta(half + d) - reg_beta(half - d)


@dataclass(frozen=True)
class UnanimityStats:
    gamma0: object
    delta0: object
    cases_for_even_bet: float


def unanimity_stats(params: JuryParams, n: int) -> UnanimityStats:
    """Unanimous conviction/acquittal chances and the even-money case count
    for seeing at least one unanimous verdict."""
    if n < 1:
        raise ValueError("panel size must be positive")
    k, u = params.k, params.u
    g0 = k * u**n + (1 - k) * (1 - u) ** n
    d0 = (1 - k) * u**n + k * (1 - u) ** n
    rate = g0 + d0
    cases = -math.log(2.0) / math.log(1.0 - float(rate))
    return UnanimityStats(g0, d0, cases)
