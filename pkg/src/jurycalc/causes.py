"""Bayesian inference over discrete causes and the calculus of testimony.

All formulas here are small rational functions of their inputs; arithmetic
propagates the input types, so feeding `Fraction` values yields exact
rationals (used by the oracle tests) while floats stay floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "CauseTable",
    "WitnessSpec",
    "NumberedTestimony",
    "cause_posterior",
    "predictive",
    "witness_update",
    "witness_chain",
    "contradicting_pair",
    "numbered_witness",
    "link_k",
    "tradition_chain",
    "succession",
    "near_known",
    "permanent_cause",
    "remarkable",
    "majority_composition",
]


@dataclass(frozen=True)
class CauseTable:
    """Priors and per-cause likelihoods for an observed event.

    `future` holds the per-cause chances of a next event, `second_future`
    those of one more event after that (used for two-step prediction).
    Priors may be omitted for the uniform case.
    """

    likelihoods: tuple
    priors: tuple | None = None
    future: tuple | None = None
    second_future: tuple | None = None

    def __post_init__(self):
        n = len(self.likelihoods)
        if n == 0:
            raise ValueError("need at least one cause")
        for name in ("priors", "future", "second_future"):
            seq = getattr(self, name)
            if seq is not None and len(seq) != n:
                raise ValueError(f"{name} length differs from likelihoods")
        if self.priors is not None:
            total = sum(self.priors)
            exact = all(isinstance(q, (int, Fraction)) for q in self.priors)
            if (exact and total != 1) or (not exact and abs(total - 1) > 1e-12):
                raise ValueError("priors must sum to 1")

    def effective_priors(self) -> tuple:
        if self.priors is not None:
            return tuple(self.priors)
        n = len(self.likelihoods)
        return tuple(Fraction(1, n) for _ in range(n))


def cause_posterior(table: CauseTable) -> list:
    """Posterior cause probabilities w_n = q_n p_n / sum q_j p_j."""
    qs = table.effective_priors()
    joint = [q * p for q, p in zip(qs, table.likelihoods)]
    total = sum(joint)
    if total == 0:
        raise ValueError("observed event impossible under every cause")
    return [j / total for j in joint]


def predictive(table: CauseTable, horizon: int = 1):
    """Probability of the next event (horizon 1) or the one after (horizon 2).

    Chaining replaces each likelihood by its product with the next-event
    chance, so horizon 2 is the same rule applied once more.
    """
    if horizon not in (1, 2):
        raise ValueError("horizon must be 1 or 2")
    if table.future is None:
        raise ValueError("table has no future likelihoods")
    qs = table.effective_priors()
    joint = [q * p for q, p in zip(qs, table.likelihoods)]
    if horizon == 2:
        if table.second_future is None:
            raise ValueError("horizon 2 needs second_future likelihoods")
        joint = [j * f for j, f in zip(joint, table.future)]
        nxt = table.second_future
    else:
        nxt = table.future
    total = sum(joint)
    if total == 0:
        raise ValueError("observed events impossible under every cause")
    return sum(j * f for j, f in zip(joint, nxt)) / total


def witness_update(p, q):
    """Truth probability of a fact with prior q attested by a witness of
    honesty p: r = pq / [pq + (1-p)(1-q)]."""
    num = p * q
    den = num + (1 - p) * (1 - q)
    if den == 0:
        raise ValueError("degenerate update: pq and (1-p)(1-q) both zero")
    return num / den


def witness_chain(q, honesty: Sequence):
    """Posterior truth probability after unanimous concurring witnesses.

    y = q / [q + (1-q) rho_1 ... rho_x] with rho_j = (1 - p_j)/p_j.
    """
    if not honesty:
        raise ValueError("need at least one witness")
    rho_prod = 1
    for p in honesty:
        if p <= 0 or p >= 1:
            raise ValueError("each honesty chance must be inside (0, 1)")
        rho_prod = rho_prod * (1 - p) / p
    return q / (q + (1 - q) * rho_prod)


def contradicting_pair(q, p, p2):
    """Falsity probability after a second witness contradicts the first.

    r1 = p2 (1-p)(1-q) / [p2 (1-p)(1-q) + q p (1-p2)]; equal-weight
    witnesses cancel, leaving r1 = 1 - q.
    """
    num = p2 * (1 - p) * (1 - q)
    den = num + q * p * (1 - p2)
    if den == 0:
        raise ValueError("degenerate contradiction")
    return num / den


@dataclass(frozen=True)
class WitnessSpec:
    """A witness over m distinguishable outcomes.

    u: chance of not being mistaken; v: chance of not wishing to deceive.
    Deception picks uniformly among the outcomes the witness disbelieves.
    """

    u: object
    v: object
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("need at least two outcomes for deception to exist")


@dataclass(frozen=True)
class NumberedTestimony:
    p_announced: object   # chance the witness announces n given n drew
    p_other: object       # chance of announcing n given some other i drew
    w_announced: object   # posterior that n really drew
    w_other: object       # posterior of one fixed other number


def numbered_witness(spec: WitnessSpec, counts: Sequence[int],
                     announced: int) -> NumberedTestimony:
    """Posterior for a numbered-ball draw reported by a fallible witness.

    counts[j] is the number of balls carrying number j; `announced` indexes
    the number the witness reports.  The likelihood identity
    p_announced + (m-1) p_other = 1 holds exactly.
    """
    if len(counts) != spec.m:
        raise ValueError("counts must list one entry per outcome")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    mu = sum(counts)
    if mu < 1:
        raise ValueError("urn is empty")
    a_n = counts[announced]
    if a_n < 1:
        raise ValueError("announced number has no balls")
    u, v, m = spec.u, spec.v, spec.m
    p_n = u * v + (1 - u) * (1 - v) / (m - 1)
    p_i = (u * (1 - v) + v * (1 - u)) / (m - 1) \
        + (m - 2) * (1 - u) * (1 - v) / (m - 1) ** 2
    den = a_n * p_n + (mu - a_n) * p_i
    w_n = a_n * p_n / den
    # posterior of one fixed other number i is (1 - w_n) a_i / (mu - a_n);
    # reported here per unit ball count
    w_i = (1 - w_n) / (mu - a_n) if mu > a_n else 0 * w_n
    return NumberedTestimony(p_n, p_i, w_n, w_i)


def link_k(u, v, m: int):
    """Per-link credibility of a tradition chain member:
    k = uv + (1-u)(1-v)/(m-1)."""
    if m < 2:
        raise ValueError("need at least two outcomes")
    return u * v + (1 - u) * (1 - v) / (m - 1)


def tradition_chain(m: int, a_n: int, mu: int, link_ks: Sequence,
                    p_n) -> object:
    """Posterior that the number reported through a tradition chain drew.

    The direct witness contributes p_n (and p_other = (1 - p_n)/(m - 1));
    each repeating link multiplies X by (m k - 1)/(m - 1).  An empty chain
    reduces to the direct-witness posterior; a broken link (k = 1/m) kills
    X and returns the bare chance a_n/mu.
    """
    if m < 2:
        raise ValueError("need at least two outcomes")
    if not 0 < a_n <= mu:
        raise ValueError("need 0 < a_n <= mu")
    X = 1
    for k in link_ks:
        X = X * (m * k - 1) / (m - 1)
    p_i = (1 - p_n) / (m - 1)
    num = (1 + (m * p_n - 1) * X) * a_n
    den = num + (1 + (m * p_i - 1) * X) * (mu - a_n)
    return num / den


def succession(m: int, n: int, m1: int, n1: int, exact: bool = False):
    """Chance of m1 further successes and n1 failures (any order) after
    observing m successes and n failures, under a uniform prior.

    w' = (m1+n1)! (m+m1)! (n+n1)! (m+n+1)! / [m1! n1! m! n! (m+m1+n+n1+1)!]

    Large arguments go through log-factorials; `exact` forces the rational
    value (small arguments only).
    """
    for name, val in (("m", m), ("n", n), ("m1", m1), ("n1", n1)):
        if val < 0:
            raise ValueError(f"{name} must be non-negative")
    if exact or max(m + m1, n + n1) <= 300:
        num = (
            math.factorial(m1 + n1) * math.factorial(m + m1)
            * math.factorial(n + n1) * math.factorial(m + n + 1)
        )
        den = (
            math.factorial(m1) * math.factorial(n1) * math.factorial(m)
            * math.factorial(n) * math.factorial(m + m1 + n + n1 + 1)
        )
        frac = Fraction(num, den)
        return frac if exact else float(frac)
    lg = math.lgamma
    log_w = (
        lg(m1 + n1 + 1) + lg(m + m1 + 1) + lg(n + n1 + 1) + lg(m + n + 2)
        - lg(m1 + 1) - lg(n1 + 1) - lg(m + 1) - lg(n + 1)
        - lg(m + m1 + n + n1 + 2)
    )
    return math.exp(log_w)


def near_known(r, h, m: int, n: int):
    """First-order success chance when the prior hugs r with second moment h:
    w' = r + (m/r - n/(1-r)) h."""
    if r <= 0 or r >= 1:
        raise ValueError("r must be inside (0, 1)")
    return r + (m / r - n / (1 - r)) * h


def permanent_cause(p, rho, rho_future):
    """(posterior of a necessary cause, chance the effect persists).

    w = p / [p + (1-p) rho] after uninterrupted occurrences whose accidental
    explanation has total chance rho; w' = w + (1-w) rho_future for a new
    uninterrupted run.
    """
    den = p + (1 - p) * rho
    if den == 0:
        raise ValueError("p and rho cannot both be zero")
    w = p / den
    return w, w + (1 - w) * rho_future


def remarkable(p, p1):
    """Posterior of a deliberate cause for a remarkable event:
    r = p1 / (p1 + p), with p the chance by hazard and p1 under the cause."""
    den = p1 + p
    if den == 0:
        raise ValueError("event impossible under both hypotheses")
    return p1 / den


def majority_composition(n: int) -> Fraction:
    """Chance the urn holds more white than black after n straight white
    draws, uniform prior on the composition: 1 - 1/2^(n+1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return 1 - Fraction(1, 2 ** (n + 1))
