"""Inverse estimation of jury parameters from aggregate conviction rates,
plus the appellate, police/military and civil-court variants.

Two observables identify the two unknowns: the overall conviction rate
c = a_i/mu (convictions by at least the required majority) and the
minimal-majority rate gamma = b_i/(N_i mu).  For a candidate odds value t
the gamma-equation is linear in k; the remaining residual in the c-equation
is driven to zero by bracketed bisection inside the feasibility interval
where k stays in (1/2, 1).  The mirrored root (1-k, 1/t) reproduces the same
observables and is exposed as the complement branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .jury import JuryParams, VerdictTally, verdict_probs
from .solver import NoBracketError, bisect_root, scan_bracket

__all__ = [
    "ObservedRates",
    "FitResult",
    "CivilParams",
    "DerivedProbs",
    "AppellateResult",
    "SevenJudgeResult",
    "CivilFirstInstance",
    "CivilAppeal",
    "CivilTFit",
    "InfeasibleError",
    "feasible_t",
    "fit_k_t",
    "complement",
    "derived_probs",
    "appellate_confirm",
    "seven_judge",
    "three_judge_feasibility",
    "civil_first_instance",
    "fit_u_from_split",
    "civil_equal",
    "civil_appeal",
    "fit_civil_t",
]


class InfeasibleError(ValueError):
    """Observed rates are inconsistent with the model (no admissible root)."""

    def __init__(self, message: str, value: float | None = None,
                 scan_table: list | None = None):
        super().__init__(message)
        self.value = value
        self.scan_table = scan_table or []


@dataclass(frozen=True)
class ObservedRates:
    """Aggregate counts behind the two identifying observables.

    mu accused in total; a_i convicted by at least the required majority;
    b_i convicted by exactly the minimal majority (None when only one of the
    two bookkeeping methods is available -- the rates may then be supplied
    directly by the caller).
    """

    mu: int
    a_i: int
    b_i: int | None = None
    n: int = 12
    i: int = 5
    b_rate_subtraction: float | None = None
    b_rate_cases: float | None = None

    def __post_init__(self):
        if not 0 <= self.a_i <= self.mu:
            raise ValueError("need 0 <= a_i <= mu")
        if self.b_i is not None and not 0 <= self.b_i <= self.a_i:
            raise ValueError("need 0 <= b_i <= a_i")

    @property
    def c(self) -> float:
        return self.a_i / self.mu

    @property
    def minimal_majority_rate(self) -> float | None:
        """b_i/mu, preferring direct counts, then case counts, then subtraction."""
        if self.b_i is not None:
            return self.b_i / self.mu
        if self.b_rate_cases is not None:
            return self.b_rate_cases
        return self.b_rate_subtraction

    @property
    def gamma(self) -> float | None:
        rate = self.minimal_majority_rate
        if rate is None:
            return None
        return rate / math.comb(self.n, self.i)


@dataclass(frozen=True)
class FitResult:
    """Fitted prior k and reliability odds t (u = t/(1+t)); the residual is
    the leftover mismatch of the overall-rate equation, reported always."""

    k: float
    t: float
    u: float
    residual: float


def _gamma_model(t: float, k: float, n: int, i: int) -> float:
    # minimal-majority conviction chance over N_i: k u^(n-i) v^i + (1-k) u^i v^(n-i)
    return (k * t ** (n - i) + (1 - k) * t**i) / (1 + t) ** n


def _c_model(t: float, k: float, n: int, i: int) -> float:
    onet = (1 + t) ** n
    U = sum(math.comb(n, j) * t ** (n - j) for j in range(i + 1)) / onet
    V = sum(math.comb(n, j) * t**j for j in range(i + 1)) / onet
    return k * U + (1 - k) * V


def _k_from_gamma(t: float, gamma: float, n: int, i: int) -> float:
    # invert the gamma equation, linear in k
    return (gamma * (1 + t) ** n - t**i) / (t ** (n - i) - t**i)


def feasible_t(gamma: float, n: int = 12, i: int | None = None) -> tuple[float, float]:
    """The t-interval (t > 1) on which the gamma equation admits k in (1/2, 1).

    Feasibility at t means gamma lies strictly between the k = 1/2 boundary
    (t^(n-i) + t^i)/(2 (1+t)^n) and the k = 1 boundary t^(n-i)/(1+t)^n.
    The first boundary falls monotonely for t > 1, the second is unimodal,
    so the feasible set is a single interval; its edges are located by a
    dense log scan and refined by bisection on the active boundary.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if i is None:
        i = (n - 1) // 2 if n % 2 else n // 2 - 1

    def feasible(t: float) -> bool:
        return _gamma_model(t, 0.5, n, i) < gamma < _gamma_model(t, 1.0, n, i)

    t_min, t_max, points = 1.0 + 1e-9, 1e4, 1024
    ratio = (t_max / t_min) ** (1.0 / (points - 1))
    grid = [t_min * ratio**j for j in range(points)]
    flags = [feasible(t) for t in grid]
    if not any(flags):
        table = [(t, _gamma_model(t, 1.0, n, i) - gamma) for t in grid[::64]]
        raise InfeasibleError(
            "minimal-majority rate admits no k in (1/2, 1) at any t > 1",
            scan_table=table)
    first = flags.index(True)
    last = len(flags) - 1 - flags[::-1].index(True)

    def edge(idx_out: int, idx_in: int) -> float:
        a, b = grid[idx_out], grid[idx_in]
        for _ in range(200):
            mid = 0.5 * (a + b)
            if feasible(mid):
                b = mid
            else:
                a = mid
            if abs(b - a) < 1e-12 * b:
                break
        return b

    t_lo = grid[first] if first == 0 else edge(first - 1, first)
    t_hi = grid[last] if last == points - 1 else edge(last + 1, last)
    return t_lo, t_hi


def fit_k_t(c: float, gamma: float, n: int = 12, i: int | None = None) -> FitResult:
    """Recover (k, t) from the overall rate c and minimal-majority gamma.

    Returns the t > 1 branch (u > 1/2); raises InfeasibleError with the scan
    table when no admissible root exists.
    """
    if not 0 < c < 1:
        raise ValueError("c must be inside (0, 1)")
    if i is None:
        i = (n - 1) // 2 if n % 2 else n // 2 - 1
    t_lo, t_hi = feasible_t(gamma, n, i)

    def resid(t: float) -> float:
        return _c_model(t, _k_from_gamma(t, gamma, n, i), n, i) - c

    pad = 1e-9 * (t_hi - t_lo)
    try:
        bracket = scan_bracket(resid, t_lo + pad, t_hi - pad, points=64)
    except NoBracketError as exc:
        raise InfeasibleError(
            "overall rate unreachable inside the feasible interval",
            scan_table=exc.scan_table,
        ) from exc
    t = bisect_root(resid, *bracket, tol=1e-12) if bracket[0] != bracket[1] else bracket[0]
    k = _k_from_gamma(t, gamma, n, i)
    return FitResult(k, t, t / (1 + t), abs(resid(t)))


def complement(fit: FitResult) -> FitResult:
    """The mirrored root (1-k, 1/t): identical observables, the regime where
    mistaken votes outnumber correct ones."""
    t = 1.0 / fit.t
    return FitResult(1.0 - fit.k, t, t / (1 + t), fit.residual)


@dataclass(frozen=True)
class DerivedProbs:
    P: float       # correctness of convictions at >= the required majority
    Pi: float      # correctness of acquittals under the same rule
    D: float       # chance of convicting a non-convictable accused
    Delta: float   # chance of acquitting a convictable accused
    p_min: float   # correctness of a minimal-majority conviction


def derived_probs(fit: FitResult, c_obs: float, tally: VerdictTally) -> DerivedProbs:
    """Decision-quality suite with the observed rate standing in for the
    model conviction chance.

    Solves P * c_obs = k U_i and Pi * (1 - c_obs) = (1-k)(1 - V_i); the
    danger measures follow as D = 1 - k - (1 - c_obs) Pi and
    Delta = k - c_obs P.  c_obs >= k is rejected: the conviction chance
    cannot reach the prior.
    """
    k, t = fit.k, fit.t
    if k > 0.5 and c_obs >= k:
        raise ValueError("observed rate is not below the prior k; inputs inconsistent")
    n, i = tally.n, tally.i
    onet = (1 + t) ** n
    U = sum(math.comb(n, j) * t ** (n - j) for j in range(i + 1)) / onet
    V = sum(math.comb(n, j) * t**j for j in range(i + 1)) / onet
    P = k * U / c_obs
    Pi = (1 - k) * (1 - V) / (1 - c_obs)
    D = 1 - k - (1 - c_obs) * Pi
    Delta = k - c_obs * P
    m = tally.m
    p_min = k * t**m / (k * t**m + 1 - k)
    return DerivedProbs(P, Pi, D, Delta, p_min)


@dataclass(frozen=True)
class AppellateResult:
    P2: float
    t: float
    u: float


def appellate_confirm(k: float, c2: float) -> AppellateResult:
    """Five-judge confirmation of a minimal-majority conviction.

    k is the guilt probability carried over from the first decision, c2 the
    observed confirmation rate.  P2 comes from the closed identity
    (2k - 1) c2 P2 = k (k - 1 + c2); the judges' odds t solve
    1 + 5t + 10t^2 = [(k - c2)/(2k - 1)] (1 + t)^5 on the t > 1 branch.
    """
    if k <= 0.5:
        raise ValueError("identity degenerates for k <= 1/2")
    if not 0 < c2 < k:
        raise ValueError("confirmation rate must lie in (0, k)")
    P2 = k * (k - 1 + c2) / ((2 * k - 1) * c2)
    ratio = (k - c2) / (2 * k - 1)

    def f(t: float) -> float:
        return 1 + 5 * t + 10 * t * t - ratio * (1 + t) ** 5

    # for tiny ratios the root grows like (10/ratio)^(1/3)
    hi = max(1e3, 3.0 * (10.0 / ratio) ** (1.0 / 3.0))
    bracket = scan_bracket(f, 1.0 + 1e-9, hi, points=256)
    t = bisect_root(f, *bracket, tol=1e-12) if bracket[0] != bracket[1] else bracket[0]
    return AppellateResult(P2, t, t / (1 + t))


@dataclass(frozen=True)
class SevenJudgeResult:
    k: float
    P2: float


def seven_judge(c2: float, t: float) -> SevenJudgeResult:
    """Seven-judge court convicting by at least 5 votes to 2, given odds t.

    k is solved linearly from the conviction-rate display; infeasible k is
    reported, never clamped.
    """
    if t <= 0:
        raise ValueError("odds t must be positive")
    onet = (1 + t) ** 7
    A = t**7 + 7 * t**6 + 21 * t**5
    B = 1 + 7 * t + 21 * t * t
    k = (c2 * onet - B) / (A - B)
    if not 0 < k < 1:
        raise InfeasibleError(
            f"implied prior k = {k:.4f} outside (0, 1)", value=k)
    P2 = k * A / (c2 * onet)
    return SevenJudgeResult(k, P2)


def three_judge_feasibility(c1: float, t: float) -> float:
    """Three-judge police court convicting by at least 2 votes to 1.

    Returns the implied k, or raises InfeasibleError when the observed rate
    cannot be matched with the supplied odds.
    """
    if t <= 0:
        raise ValueError("odds t must be positive")
    onet = (1 + t) ** 3
    A = t**3 + 3 * t * t
    B = 1 + 3 * t
    k = (c1 * onet - B) / (A - B)
    if not 0 < k < 1:
        raise InfeasibleError(f"implied prior k = {k:.4f} outside (0, 1)", value=k)
    return k


# ---------------------------------------------------------------------------
# Civil tribunals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CivilParams:
    """First-instance judges u, u', u'' and the appeal judges' reliability v."""

    u: float
    u2: float
    u3: float
    v: float | None = None

    def __post_init__(self):
        for name in ("u", "u2", "u3"):
            val = getattr(self, name)
            if not 0 < val < 1:
                raise ValueError(f"{name} must lie inside (0, 1)")
        if self.v is not None and not 0 < self.v < 1:
            raise ValueError("v must lie inside (0, 1)")


@dataclass(frozen=True)
class CivilFirstInstance:
    c: object    # unanimous-decision chance
    b: object    # split-decision chance
    a: object    # first judge dissents
    a2: object   # second judge dissents
    a3: object   # third judge dissents
    p: object    # correctness of a unanimous decision
    q: object    # correctness of a split decision
    r: object    # correctness not knowing the split


def civil_first_instance(params: CivilParams) -> CivilFirstInstance:
    """Three-judge civil bench: split chances and correctness probabilities.

    b + c = 1 and r = cp + bq hold exactly; all quantities are symmetric
    under permutation of the judges except the per-judge dissent chances.
    """
    u, u2, u3 = params.u, params.u2, params.u3
    w, w2, w3 = 1 - u, 1 - u2, 1 - u3
    c = u * u2 * u3 + w * w2 * w3
    a = u2 * u3 * w + u * w2 * w3
    a2 = u * u3 * w2 + u2 * w * w3
    a3 = u * u2 * w3 + u3 * w * w2
    b = a + a2 + a3
    p = u * u2 * u3 / c
    q = (w * u2 * u3 + w2 * u * u3 + w3 * u * u2) / b
    r = c * p + b * q
    return CivilFirstInstance(c, b, a, a2, a3, p, q, r)


def fit_u_from_split(unanimous_share: float) -> float:
    """Solve u^3 + (1-u)^3 = share for the u > 1/2 root.

    share below 1/4 (the minimum of the left side) is infeasible.
    """
    if not 0.25 <= unanimous_share <= 1:
        raise InfeasibleError("unanimous share must lie in [1/4, 1]")
    # u^3 + (1-u)^3 = 1 - 3u + 3u^2 -> quadratic in u
    disc = math.sqrt(max(0.0, 12.0 * unanimous_share - 3.0))
    return (3.0 + disc) / 6.0


@dataclass(frozen=True)
class EqualBenchRecord:
    u: float
    c: float
    b: float
    p: float
    q: float
    r: float


def civil_equal(u: float) -> EqualBenchRecord:
    """Equal-reliability three-judge bench: c = u^3 + (1-u)^3, cp = u^3,
    bq = 3(1-u)u^2, r = cp + bq."""
    if not 0 < u < 1:
        raise ValueError("u must lie inside (0, 1)")
    c = u**3 + (1 - u) ** 3
    b = 1 - c
    p = u**3 / c
    q = 3 * (1 - u) * u * u / b
    return EqualBenchRecord(u, c, b, p, q, c * p + b * q)


@dataclass(frozen=True)
class CivilAppeal:
    C: float        # confirmation chance
    C_prime: float  # repeal chance
    rho: float      # chance the appeal court itself decides correctly
    P: float        # correctness of a confirmed decision
    P_prime: float  # correctness of a repealing decision
    Gamma: float    # chance a second equal appeal court would concur
    parts: tuple[float, float, float, float]
    # parts = (both right, first wrong second right, first right second wrong,
    #          both wrong); they sum to 1


def civil_appeal(r: float, v: float, confirm_rate: float | None = None) -> CivilAppeal:
    """Seven-judge appeal over a first decision of correctness r.

    rho is the appeal court's own correctness, the at-most-three-mistaken
    tail of the seven judges' votes.  When an observed confirmation rate is
    supplied it replaces the model C in the correctness quotients and the
    decomposition parts use the quotient form rho = (r - C')/(2r - 1),
    exactly as the historical computation proceeds; otherwise everything is
    internally consistent and the quotient equals rho identically.  At
    r = 1/2 the quotient degenerates and the bracket value is used directly.
    """
    if not 0 < r < 1:
        raise ValueError("r must lie inside (0, 1)")
    if not 0 < v < 1:
        raise ValueError("v must lie inside (0, 1)")
    rho = sum(math.comb(7, j) * v ** (7 - j) * (1 - v) ** j for j in range(4))
    C_model = r * rho + (1 - r) * (1 - rho)
    C = confirm_rate if confirm_rate is not None else C_model
    C_prime = 1.0 - C
    P = r * rho / C
    P_prime = (1 - r) * rho / C_prime
    if r == 0.5:
        rho_q = rho
    else:
        rho_q = (r - C_prime) / (2 * r - 1)
    parts = (r * rho_q, (1 - r) * rho_q, r * (1 - rho_q), (1 - r) * (1 - rho_q))
    Gamma = rho * rho + (1 - rho) ** 2
    return CivilAppeal(C, C_prime, rho, P, P_prime, Gamma, parts)


@dataclass(frozen=True)
class CivilTFit:
    t: float
    u: float
    r: float
    residual: float


def civil_forward(t: float) -> float:
    """Confirmation rate implied by common odds t across both instances."""
    r = 1 - (1 + 3 * t) / (1 + t) ** 3
    return r - (2 * r - 1) * (1 + 7 * t + 21 * t * t + 35 * t**3) / (1 + t) ** 7


def fit_civil_t(confirm_rate: float) -> CivilTFit:
    """Recover the common odds t (> 1) from the observed confirmation rate.

    The forward map is invariant under t -> 1/t; the returned branch is the
    honest-judge one with u > 1/2.
    """
    if not 0 < confirm_rate < 1:
        raise ValueError("confirmation rate must lie inside (0, 1)")

    def resid(t: float) -> float:
        return civil_forward(t) - confirm_rate

    try:
        bracket = scan_bracket(resid, 1.0 + 1e-9, 1e4, points=128)
    except NoBracketError as exc:
        raise InfeasibleError(
            "confirmation rate outside the attainable range",
            scan_table=exc.scan_table,
        ) from exc
    t = bisect_root(resid, *bracket, tol=1e-12) if bracket[0] != bracket[1] else bracket[0]
    r = 1 - (1 + 3 * t) / (1 + t) ** 3
    return CivilTFit(t, t / (1 + t), r, abs(resid(t)))
