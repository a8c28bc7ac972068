"""Large-number approximation formulas in double precision.

The Gaussian tail integral used throughout is

    Q(u) = (1/sqrt(pi)) * integral_u^inf exp(-t^2) dt,

i.e. erfc(u)/2 in modern notation, but computed here from first principles:
an alternating power series on [0, 1) and the integration-by-parts continued
fraction for u >= 1.  Every interval formula in this module attaches the
probability P = 1 - 2 Q(u) (plus a formula-specific density term) to limits
of the form center -+ half_width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .solver import bisect_root

__all__ = [
    "IntervalResult",
    "TailQuery",
    "MeanSeries",
    "SQRT_PI",
    "EVEN_MONEY_U",
    "log_factorial",
    "gauss_interior",
    "gauss_tail",
    "gauss_tail_inv",
    "even_money_u",
    "even_money_margin",
    "central_term",
    "binomial_tail_asym",
    "freq_interval",
    "chance_interval",
    "chance_exceeds",
    "predict_interval",
    "two_sample",
    "stability_limits",
    "mean_interval",
    "mean_diff",
    "weighted_combine",
    "uniform_sum_P",
    "irwin_hall_cdf",
    "clt_mean_interval",
    "uniform_moments",
    "discrete_moments",
]

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class IntervalResult:
    """Limits center -+ half_width holding with the attached probability."""

    center: float
    half_width: float
    probability: float

    def __post_init__(self):
        if self.half_width < 0:
            raise ValueError("half_width must be non-negative")
        if not 0 <= self.probability <= 1:
            raise ValueError("probability outside [0, 1]")

    @property
    def low(self) -> float:
        return self.center - self.half_width

    @property
    def high(self) -> float:
        return self.center + self.half_width

    def contains(self, x: float) -> bool:
        return self.low <= x <= self.high


@dataclass(frozen=True)
class TailQuery:
    """At least m successes (equivalently at most n failures) in m+n trials."""

    m: int
    n: int
    p: float
    direction: str = "at_least_m_successes"

    def __post_init__(self):
        if self.m + self.n < 2:
            raise ValueError("need at least two trials")
        if not 0 < self.p < 1:
            raise ValueError("p must be strictly inside (0, 1)")
        if self.direction not in ("at_least_m_successes", "at_most_n_failures"):
            raise ValueError(f"unknown direction {self.direction!r}")


@dataclass(frozen=True)
class MeanSeries:
    """Summary of one observation series: sum, count, and spread l.

    l is the quantity with l^2/2 equal to the mean squared deviation of the
    observed values from their mean.
    """

    sum_s: float
    count_mu: int
    spread_l: float

    def __post_init__(self):
        if self.count_mu < 2:
            raise ValueError("a series needs at least two observations")
        if self.spread_l < 0:
            raise ValueError("spread must be non-negative")

    @property
    def mean(self) -> float:
        return self.sum_s / self.count_mu

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "MeanSeries":
        mu = len(values)
        mean = math.fsum(values) / mu
        msd = math.fsum((v - mean) ** 2 for v in values) / mu
        return cls(math.fsum(values), mu, math.sqrt(2.0 * msd))


# ---------------------------------------------------------------------------
# Stirling series
# ---------------------------------------------------------------------------

def log_factorial(n: int, terms: int = 3) -> float:
    """ln n! from the Stirling form n^n e^-n sqrt(2 pi n) (1 + 1/12n + 1/288n^2).

    `terms` counts the retained series terms (1..3); the series is asymptotic
    and deliberately capped at the three displayed terms.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= terms <= 3:
        raise ValueError("terms must be 1, 2 or 3")
    series = 1.0
    if terms >= 2:
        series += 1.0 / (12.0 * n)
    if terms == 3:
        series += 1.0 / (288.0 * n * n)
    return n * math.log(n) - n + 0.5 * math.log(2.0 * math.pi * n) + math.log(series)


# ---------------------------------------------------------------------------
# Gaussian tail
# ---------------------------------------------------------------------------

def _interior_series(u: float) -> float:
    """Alternating power series for (1/sqrt(pi)) * integral_0^u exp(-t^2) dt.

    Terms are added until they fall below 1e-16 in magnitude; accurate for
    |u| up to about 1 (cancellation erodes it beyond that).
    """
    term = u
    k = 0
    parts = []
    while abs(term) > 1e-16:
        parts.append(term / (2 * k + 1))
        k += 1
        term *= -u * u / k
        if k > 500:  # unreachable for |u| <= ~6; guards against misuse
            break
    return math.fsum(parts) / SQRT_PI


def gauss_interior(u: float) -> float:
    """(1/sqrt(pi)) * integral_0^u exp(-t^2) dt.

    Series below the u = 1 crossover, complement of the continued-fraction
    tail above it, so the interior/tail half-mass identity holds to machine
    precision on the whole line.
    """
    if u < 0:
        raise ValueError("argument must be non-negative")
    if u < 1.0:
        return _interior_series(u)
    return 0.5 - _tail_integral_cf(u) / SQRT_PI


def _tail_integral_cf(u: float) -> float:
    """integral_u^inf exp(-t^2) dt by the integration-by-parts continued
    fraction (1/2) e^{-u^2} / (u + (1/2)/(u + 1/(u + (3/2)/(u + ...)))).

    Modified Lentz evaluation of V = 1/(u + (1/2)/(u + ...)): partial
    numerators 1, 1/2, 1, 3/2, 2, ... and constant denominators u.
    """
    tiny = 1e-300
    f = tiny  # b0 = 0
    c = f
    d = 0.0
    for j in range(1, 400):
        a = 1.0 if j == 1 else (j - 1) / 2.0
        d = u + a * d
        if d == 0.0:
            d = tiny
        c = u + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return 0.5 * math.exp(-u * u) * f


def gauss_tail(u: float) -> float:
    """Q(u) = (1/sqrt(pi)) * integral_u^inf exp(-t^2) dt, for u >= 0.

    Power series below the crossover at u = 1, continued fraction above.
    """
    if u < 0:
        raise ValueError("tail argument must be non-negative")
    if u < 1.0:
        return 0.5 - _interior_series(u)
    return _tail_integral_cf(u) / SQRT_PI


def gauss_tail_inv(q: float) -> float:
    """Inverse of gauss_tail on (0, 1/2]: the u with Q(u) = q."""
    if not 0 < q <= 0.5:
        raise ValueError("gauss_tail maps [0, inf) onto (0, 1/2]")
    if q == 0.5:
        return 0.0
    hi = 1.0
    while gauss_tail(hi) > q:
        hi *= 2.0
        if hi > 1e3:
            raise ValueError("tail probability too small to invert")
    return bisect_root(lambda u: gauss_tail(u) - q, 0.0, hi, tol=1e-14)


def even_money_u() -> float:
    """The root a of 1 - 2Q(a) = 1/2, about 0.4769."""
    return gauss_tail_inv(0.25)


EVEN_MONEY_U = 0.476936276204470  # cached even_money_u(), for direct use


def even_money_margin(mu: int) -> float:
    """Even-money threshold on |successes - failures| over mu fair trials.

    a*sqrt(2 mu) - 1 with a the even-money constant; it is an even bet that
    the lead exceeds the next integer up.
    """
    return EVEN_MONEY_U * math.sqrt(2.0 * mu) - 1.0


# ---------------------------------------------------------------------------
# Binomial approximations
# ---------------------------------------------------------------------------

def central_term(mu: int, p: float = 0.5, g: float = 0.0,
                 correction: bool = False) -> float:
    """Local probability of the count mu*p + (g/2)sqrt(mu) (fair case) or of
    the most probable count shifted g standard-ish units.

    For p = 1/2 this is sqrt(2/(pi mu)) e^{-g^2/2}, optionally with the
    (1 - 1/4mu) second Stirling factor; general p uses
    e^{-u^2}/sqrt(2 pi mu p q) with u = g/sqrt(2).
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    if not 0 < p < 1:
        raise ValueError("p must be inside (0, 1)")
    if p == 0.5:
        u_val = math.sqrt(2.0 / (math.pi * mu)) * math.exp(-g * g / 2.0)
        if correction:
            u_val *= 1.0 - 1.0 / (4.0 * mu)
        return u_val
    u = g / math.sqrt(2.0)
    return math.exp(-u * u) / math.sqrt(2.0 * math.pi * mu * p * (1.0 - p))


def binomial_tail_asym(query: TailQuery) -> float:
    """P(at least m successes in m+n trials) by the exponent-based tail form.

    k^2 = n ln[n/(q(mu+1))] + (m+1) ln[(m+1)/(p(mu+1))]; the branch follows
    the comparison of q/p with n/(m+1), both branches coinciding at equality
    (resolved to the direct-tail branch there).  The second-order branch
    corrections are subsumed by evaluating the exponent exactly.
    """
    m, n, p = query.m, query.n, query.p
    q = 1.0 - p
    mu = m + n
    if n == 0:
        return p**mu
    k2 = n * math.log(n / (q * (mu + 1))) + (m + 1) * math.log((m + 1) / (p * (mu + 1)))
    k = math.sqrt(max(k2, 0.0))
    dens = (mu + n) * math.sqrt(2.0) / (3.0 * math.sqrt(math.pi * mu * m * n)) \
        * math.exp(-k * k)
    if q / p >= n / (m + 1):
        return gauss_tail(k) + dens
    return 1.0 - gauss_tail(k) + dens


def freq_interval(mu: int, p: float, u: float,
                  k_var: float | None = None) -> IntervalResult:
    """Interval for the success count around mu*p with its probability.

    Constant chance: limits mu*p -+ u sqrt(2 mu p q), probability
    1 - 2Q(u) + e^{-u^2}/sqrt(2 pi mu p q).  With the mean-chance dispersion
    k_var (k^2 = 2 sum p_i q_i / mu) the half-width is u k sqrt(mu) and the
    density term e^{-u^2}/(k sqrt(pi mu)).
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    if not 0 < p < 1:
        raise ValueError("p must be inside (0, 1)")
    if u < 0:
        raise ValueError("u must be non-negative")
    q = 1.0 - p
    if k_var is None:
        k_var = math.sqrt(2.0 * p * q)
    half = u * k_var * math.sqrt(mu)
    prob = 1.0 - 2.0 * gauss_tail(u) + math.exp(-u * u) / (k_var * math.sqrt(math.pi * mu))
    return IntervalResult(mu * p, half, min(prob, 1.0))


def chance_interval(m: int, n: int, u: float) -> IntervalResult:
    """Interval for an unknown chance given m successes and n failures."""
    if m < 1 or n < 1:
        raise ValueError("need observed successes and failures")
    if u < 0:
        raise ValueError("u must be non-negative")
    mu = m + n
    half = (u / mu) * math.sqrt(2.0 * m * n / mu)
    prob = 1.0 - 2.0 * gauss_tail(u) + math.exp(-u * u) * math.sqrt(mu / (2.0 * math.pi * m * n))
    return IntervalResult(m / mu, half, min(prob, 1.0))


def chance_exceeds(m: int, n: int, w: float) -> float:
    """P(unknown chance > w) after m successes and n failures."""
    if m < 1 or n < 1:
        raise ValueError("need observed successes and failures")
    if not 0 < w < 1:
        raise ValueError("threshold w must be inside (0, 1)")
    mu = m + n
    u = (w - m / mu) * mu * math.sqrt(mu) / math.sqrt(2.0 * m * n)
    if u >= 0:
        return gauss_tail(u)
    return 1.0 - gauss_tail(-u)


def predict_interval(m: int, n: int, mu_future: int, u: float) -> IntervalResult:
    """Interval for the future failure count n' over mu_future new trials.

    Center n*mu'/mu; the width carries the sqrt(1 + mu'/mu) widening that
    distinguishes prediction from chance estimation.
    """
    if m < 1 or n < 1 or mu_future < 1:
        raise ValueError("need observed counts and a future trial count")
    mu = m + n
    mp = mu_future * m / mu
    np_ = mu_future * n / mu
    inner = mu**3 * mp * np_ + mu_future**3 * m * n
    half = u * math.sqrt(2.0 * inner / (mu * mu_future)) / mu
    dens = math.sqrt(mu * mu_future) / math.sqrt(2.0 * math.pi * mp * np_ * (mu + mu_future)) \
        * math.exp(-u * u * inner / (mu * mu * mp * np_ * (mu + mu_future)))
    prob = 1.0 - 2.0 * gauss_tail(u) + dens
    return IntervalResult(np_, half, min(prob, 1.0))


def two_sample(m: int, mu: int, m1: int, mu1: int, epsilon: float) -> float:
    """P(p1 - p > epsilon) for unknown chances behind two count series.

    delta = m1/mu1 - m/mu; the branch follows the sign of (epsilon - delta),
    both giving 1/2 at equality.
    """
    if not (0 < m < mu and 0 < m1 < mu1):
        raise ValueError("each series needs successes and failures")
    n, n1 = mu - m, mu1 - m1
    delta = m1 / mu1 - m / mu
    scale = mu * mu1 * math.sqrt(mu * mu1) / math.sqrt(
        2.0 * (mu**3 * m1 * n1 + mu1**3 * m * n))
    u = (epsilon - delta) * scale
    if u >= 0:
        return gauss_tail(u)
    return 1.0 - gauss_tail(-u)


def stability_limits(a: int, mu: int, alpha: float,
                     a2: int | None = None, mu2: int | None = None) -> IntervalResult:
    """Limits for a limiting rate, or for the difference of two rates.

    Single series: a/mu -+ alpha sqrt(2 a (mu - a)/mu^3).  With a second
    series the interval is for the rate difference (center at the observed
    difference of rates, limits -+ the root-sum-square width).  Probability
    P = 1 - 2 Q(alpha) in both forms.
    """
    if not 0 < a < mu:
        raise ValueError("counts must satisfy 0 < a < mu")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    var1 = 2.0 * a * (mu - a) / mu**3
    prob = 1.0 - 2.0 * gauss_tail(alpha)
    if a2 is None:
        return IntervalResult(a / mu, alpha * math.sqrt(var1), prob)
    if mu2 is None or not 0 < a2 < mu2:
        raise ValueError("second series needs counts with 0 < a2 < mu2")
    var2 = 2.0 * a2 * (mu2 - a2) / mu2**3
    return IntervalResult(a / mu - a2 / mu2, alpha * math.sqrt(var1 + var2), prob)


# ---------------------------------------------------------------------------
# Mean-value intervals
# ---------------------------------------------------------------------------

def mean_interval(series: MeanSeries, u: float) -> IntervalResult:
    """Limits s/mu -+ u l / sqrt(mu) for the limiting mean, P = 1 - 2Q(u)."""
    if series.spread_l == 0:
        raise ValueError("series has no dispersion information (l = 0)")
    half = u * series.spread_l / math.sqrt(series.count_mu)
    return IntervalResult(series.mean, half, 1.0 - 2.0 * gauss_tail(u))


def mean_diff(s1: MeanSeries, s2: MeanSeries, u: float) -> IntervalResult:
    """Limits for the difference of two limiting means."""
    if s1.spread_l == 0 and s2.spread_l == 0:
        raise ValueError("no dispersion information in either series")
    mu, mu2 = s1.count_mu, s2.count_mu
    half = u * math.sqrt(s2.spread_l**2 * mu + s1.spread_l**2 * mu2) / math.sqrt(mu * mu2)
    return IntervalResult(s1.mean - s2.mean, half, 1.0 - 2.0 * gauss_tail(u))


def weighted_combine(series: Sequence[MeanSeries], u: float) -> IntervalResult:
    """Best-weight combination of several series measuring one constant.

    Weights q_j = (mu_j / l_j^2) / D^2 with D^2 = sum mu_j / l_j^2; limits
    are the weighted mean -+ u/D.
    """
    if not series:
        raise ValueError("need at least one series")
    if all(s.spread_l == 0 for s in series):
        raise ValueError("no dispersion information in any series")
    d2 = math.fsum(s.count_mu / s.spread_l**2 for s in series if s.spread_l > 0)
    center = math.fsum(
        (s.count_mu / s.spread_l**2) / d2 * s.mean for s in series if s.spread_l > 0)
    return IntervalResult(center, u / math.sqrt(d2), 1.0 - 2.0 * gauss_tail(u))


# ---------------------------------------------------------------------------
# Sums of uniform values
# ---------------------------------------------------------------------------

def irwin_hall_cdf(x: float, mu: int) -> float:
    """P(sum of mu independent uniform(0,1) values <= x), exact finite series.

    Alternating series (1/mu!) sum_j (-1)^j C(mu,j) (x-j)^mu over j <= x.
    The terms cancel catastrophically in floating point for mu beyond a few
    dozen, so they are accumulated as exact rationals (the float argument is
    itself a rational) and rounded once at the end.  mu is capped at 170;
    beyond that the central-limit interval is the designated path.
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    if mu > 170:
        raise ValueError("mu capped at 170; use clt_mean_interval beyond")
    if x <= 0.0:
        return 0.0
    if x >= mu:
        return 1.0
    total = Fraction(0)
    xf = Fraction(x)
    sign = 1
    for j in range(int(x) + 1):
        total += sign * math.comb(mu, j) * (xf - j) ** mu
        sign = -sign
    return max(0.0, min(1.0, float(total / math.factorial(mu))))


def uniform_sum_P(mu: int, g: float, h: float, c: float, eps: float) -> float:
    """P(sum of mu uniforms on [h-g, h+g] lies within c -+ eps), exact.

    Reduces to the five-case single-observation table at mu = 1.
    """
    if g <= 0 or eps <= 0:
        raise ValueError("g and eps must be positive")
    lo = (c - eps - mu * (h - g)) / (2.0 * g)
    hi = (c + eps - mu * (h - g)) / (2.0 * g)
    return irwin_hall_cdf(hi, mu) - irwin_hall_cdf(lo, mu)


def uniform_moments(a: float, b: float) -> tuple[float, float]:
    """(k, h) for values uniform on [a, b]: k = (a+b)/2, h = (b-a)^2/24."""
    if b <= a:
        raise ValueError("need a < b")
    return (a + b) / 2.0, (b - a) ** 2 / 24.0


def discrete_moments(values: Sequence[float]) -> tuple[float, float]:
    """(k, h) for equiprobable discrete values:
    k the mean, h = [v sum c^2 - (sum c)^2] / (2 v^2)."""
    v = len(values)
    if v < 1:
        raise ValueError("need at least one value")
    s1 = math.fsum(values)
    s2 = math.fsum(x * x for x in values)
    return s1 / v, (v * s2 - s1 * s1) / (2.0 * v * v)


def clt_mean_interval(mu: int, k: float, h: float, u: float) -> IntervalResult:
    """Limits mu*k -+ 2u sqrt(mu h) for the sum of mu values, P = 1 - 2Q(u).

    (k, h) come from uniform_moments / discrete_moments or any per-trial
    mean and half-mean-square-deviation constants.
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    if h <= 0:
        raise ValueError("dispersion constant h must be positive")
    return IntervalResult(mu * k, 2.0 * u * math.sqrt(mu * h),
                          1.0 - 2.0 * gauss_tail(u))
