"""Electoral-college majority model.

Voters of two parties (a for the incumbent-opinion party A, b for party B)
are randomly partitioned into colleges; each college elects one deputy by
simple majority.  The chance s that the larger party carries a college of mu
voters is a Gaussian-tail evaluation of the hypergeometric excess, with a
skew/summation correction term; an exchangeability lemma makes s depend
only on the college's own size, not on the other colleges' draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .asympt import IntervalResult, gauss_tail
from .exact import rare_event_cdf

__all__ = [
    "ElectionScenario",
    "CollegeWin",
    "ScenarioReport",
    "college_win_chance",
    "seat_interval",
    "minority_tail",
    "scenario_report",
]


@dataclass(frozen=True)
class ElectionScenario:
    """College sizes plus the two party totals (a + b voters in all)."""

    college_sizes: tuple[int, ...]
    a: int
    b: int

    def __init__(self, college_sizes: Sequence[int], a: int, b: int):
        object.__setattr__(self, "college_sizes", tuple(college_sizes))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if a < 0 or b < 0:
            raise ValueError("party totals must be non-negative")
        if sum(self.college_sizes) != a + b:
            raise ValueError("college sizes must exhaust the voters")

    @property
    def c(self) -> int:
        return self.a + self.b


@dataclass(frozen=True)
class CollegeWin:
    s: float       # chance the b-party outnumbers the a-party in the college
    sigma: float   # exact-tie chance (even college sizes only, else 0)
    nu: float      # positive tail argument
    gamma: float   # signed center offset; negative when b > a

    @property
    def decisive(self) -> float:
        """Win chance counting half the ties toward the b-party."""
        return self.s + self.sigma / 2.0


def college_win_chance(a: int, b: int, c: int, mu: int) -> CollegeWin:
    """Chance that party B outnumbers party A among mu draws without
    replacement from a + b = c voters.

    Tail form s = 1 - Q(nu) - Gamma e^{-gamma^2} for gamma < 0 (B the larger
    party), s = Q(nu) - Gamma e^{-gamma^2} otherwise, with the summation
    correction Gamma = [(a-b)(c-2mu)(7+4 gamma^2) + 3c^2] / (6 W sqrt(pi)),
    W = sqrt(2 (c-mu) mu a b c).  Odd college sizes shift gamma by the
    half-step delta = c^2/(2W); even sizes admit the tie chance
    sigma = c^2 e^{-gamma^2} / (W sqrt(pi)).
    """
    if a + b != c:
        raise ValueError("party totals must sum to c")
    if not 0 < mu < c:
        raise ValueError("college size must be inside (0, c)")
    if a < 1 or b < 1:
        raise ValueError("both parties need voters")
    W = math.sqrt(2.0 * (c - mu) * mu * a * b * c)
    delta = c * c / (2.0 * W)
    gamma = (a - b) * mu * c / (2.0 * W)
    if mu % 2 == 1:
        gamma -= delta
    Gamma = ((a - b) * (c - 2 * mu) * (7.0 + 4.0 * gamma * gamma) + 3.0 * c * c) \
        / (6.0 * W * math.sqrt(math.pi))
    nu = abs(gamma)
    damp = math.exp(-gamma * gamma)
    if gamma < 0:
        s = 1.0 - gauss_tail(nu) - Gamma * damp
    else:
        s = gauss_tail(nu) - Gamma * damp
    sigma = c * c * damp / (W * math.sqrt(math.pi)) if mu % 2 == 0 else 0.0
    return CollegeWin(s, sigma, nu, gamma)


def seat_interval(num_colleges: int, r: float, u: float) -> IntervalResult:
    """Interval for the majority party's seat count over independent colleges
    each carried with chance r."""
    if num_colleges < 1:
        raise ValueError("need at least one college")
    if not 0 < r < 1:
        raise ValueError("per-college win chance must be inside (0, 1)")
    half = u * math.sqrt(2.0 * num_colleges * r * (1.0 - r))
    prob = 1.0 - 2.0 * gauss_tail(u) \
        + math.exp(-u * u) / math.sqrt(2.0 * math.pi * num_colleges * r * (1.0 - r))
    return IntervalResult(num_colleges * r, half, min(prob, 1.0))


def minority_tail(num_colleges: int, loss_chance: float, n: int) -> float:
    """P(the minority party wins at most n seats) when its per-college chance
    is small: the rare-event tail at expected count alpha * loss_chance."""
    if num_colleges < 1:
        raise ValueError("need at least one college")
    if not 0 < loss_chance < 1:
        raise ValueError("loss chance must be inside (0, 1)")
    return rare_event_cdf(num_colleges * loss_chance, n)


@dataclass(frozen=True)
class ScenarioReport:
    scenario: ElectionScenario
    group_sizes: tuple[int, ...]
    group_chances: tuple[float, ...]   # decisive chance per distinct size
    r: float                           # unweighted mean of the group chances
    seats: IntervalResult              # majority-party seat interval
    minority_seats: int
    minority_tail: float               # P(minority wins at most minority_seats)


def scenario_report(scn: ElectionScenario, u: float,
                    minority_seats: int = 15) -> ScenarioReport:
    """Per-size-group college chances, their plain mean r, the seat-count
    interval and the minority rare-event tail.

    r averages one chance per distinct college size (the historical
    split-scenario arithmetic), not per college; with uniform sizes the
    report reduces to the direct single-college path.
    """
    sizes = sorted(set(scn.college_sizes))
    chances = {}
    for mu in sizes:
        win = college_win_chance(scn.a, scn.b, scn.c, mu)
        chances[mu] = win.decisive
    r = math.fsum(chances[mu] for mu in sizes) / len(sizes)
    seats = seat_interval(len(scn.college_sizes), r, u)
    tail = minority_tail(len(scn.college_sizes), 1.0 - r, minority_seats)
    return ScenarioReport(
        scn, tuple(sizes), tuple(chances[mu] for mu in sizes), r, seats,
        minority_seats, tail)
