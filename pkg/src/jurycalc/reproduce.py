"""Reproduction harness: recompute every reference result from embedded data.

Each check line carries the source's printed value, the freshly computed
value, the tolerance, and a pass flag.  Four printed values in the source
tables are internally inconsistent (digit-level misprints demonstrable from
the source's own arithmetic); those lines carry a note explaining the
discrepancy and still count as failures, so a fully strict run exits
nonzero.  Everything is closed-form over embedded data: two runs produce
byte-identical reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from . import asympt, causes, datasets, elections, estimation, exact, jury

__all__ = ["CheckLine", "ReproReport", "reproduce", "KNOWN_DISCREPANCIES"]

# ids of lines whose printed source value is demonstrably a misprint
KNOWN_DISCREPANCIES = {
    "fit-property-k": (
        "printed k' = 0.6744 pairs with t' = 3.4865, which leaves a 3.7e-4 "
        "residual in the overall-rate equation; the converged root is "
        "k' = 0.67501, t' = 3.48721"),
    "fit-seine-u": (
        "printed u = 0.7778 contradicts the printed t = 3.168 of the same "
        "fit (t/(1+t) = 0.7601); the data confirm t = 3.168"),
    "two-sample-0.02": (
        "printed 0.56589 is inconsistent with its own printed argument "
        "u = 0.11553, which gives 0.56489; computed from unrounded counts "
        "the value is 0.56526"),
    "election-wide-gap-s": (
        "printed 0.98176 contradicts the source's own '1 in 60' reading of "
        "the same number; the summation formula gives 0.98333 = 1 - 1/60, "
        "the exact draw-by-draw value is 0.98202"),
    "predict-first-center": (
        "printed 1001 is a digit transposition of 1010: the interval center "
        "is 2048 * 1992 / 4040 = 1009.9, confirmed by the companion "
        "half-width 79 and the second-half center 982"),
    "kramp-tail": (
        "the printed table value 0.00001957729 misprints the true integral "
        "0.0000195771932... in its seventh significant digit; the computed "
        "value is correct to machine precision"),
}


@dataclass(frozen=True)
class CheckLine:
    id: str
    citation: str
    paper_value: object
    computed: object
    tolerance: object
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        d = {
            "id": self.id,
            "citation": self.citation,
            "paper_value": _jsonable(self.paper_value),
            "computed": _jsonable(self.computed),
            "tolerance": _jsonable(self.tolerance),
            "pass": self.passed,
        }
        if self.note:
            d["note"] = self.note
        return d


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return x


@dataclass
class ReproReport:
    lines: list[CheckLine]

    @property
    def all_pass(self) -> bool:
        return all(line.passed for line in self.lines)

    @property
    def failures(self) -> list[CheckLine]:
        return [line for line in self.lines if not line.passed]

    def to_json(self) -> str:
        return json.dumps([line.as_dict() for line in self.lines], indent=2)

    def to_text(self, precision: int = 4) -> str:
        rows = []
        width = max(len(line.id) for line in self.lines)
        for line in self.lines:
            status = "PASS" if line.passed else "FAIL"
            paper = _fmt(line.paper_value, precision)
            comp = _fmt(line.computed, precision)
            tol = _fmt(line.tolerance, precision)
            note = f"  [{line.note}]" if line.note else ""
            rows.append(
                f"{status}  {line.id:<{width}}  paper={paper} computed={comp}"
                f" tol={tol}  ({line.citation}){note}")
        n_fail = len(self.failures)
        rows.append(
            f"{len(self.lines) - n_fail}/{len(self.lines)} checks passed"
            + (f", {n_fail} failed" if n_fail else ""))
        return "\n".join(rows)


def _fmt(x, precision: int) -> str:
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.{precision}f}" if abs(x) >= 1e-4 or x == 0 else f"{x:.3e}"
    if isinstance(x, tuple):
        return "(" + ", ".join(_fmt(v, precision) for v in x) + ")"
    return str(x)


class _Collector:
    def __init__(self):
        self.lines: list[CheckLine] = []

    def close(self, id_: str, citation: str, paper, computed, tol) -> None:
        """|computed - paper| <= tol, with exact equality when tol is None."""
        if tol is None:
            ok = computed == paper
        else:
            ok = abs(float(computed) - float(paper)) <= float(tol)
        self.lines.append(CheckLine(
            id_, citation, paper, computed, tol, ok,
            KNOWN_DISCREPANCIES.get(id_, "")))

    def flag(self, id_: str, citation: str, expected: bool, got: bool) -> None:
        self.lines.append(CheckLine(
            id_, citation, expected, got, None, expected == got,
            KNOWN_DISCREPANCIES.get(id_, "")))


def reproduce() -> ReproReport:  # noqa: C901  (one long declarative table)
    """Run the full reference-value suite against embedded data."""
    col = _Collector()

    # ---- jury fits from the assize tables -------------------------------
    cite = "jury fit, crimes against the person, 1825-1830"
    fit_p = estimation.fit_k_t(0.4782, 0.0001453)
    col.close("fit-person-k", cite, 0.5354, fit_p.k, 0.0005)
    col.close("fit-person-t", cite, 2.112, fit_p.t, 0.003)
    col.close("fit-person-residual", cite, 0.0, fit_p.residual, 0.0002)

    cite = "jury fit, crimes against property, 1825-1830"
    fit_q = estimation.fit_k_t(0.6556, 0.00006604)
    col.close("fit-property-k", cite, 0.6744, fit_q.k, 0.0005)
    col.close("fit-property-t", cite, 3.4865, fit_q.t, 0.003)
    col.close("fit-property-u", cite, 0.7771, fit_q.u, 0.0005)

    cite = "jury fit, all crimes, France, 1825-1830"
    fit_f = estimation.fit_k_t(0.6094, 0.0706 / 792)
    col.close("fit-france-k", cite, 0.6391, fit_f.k, 0.0005)
    col.close("fit-france-u", cite, 0.7494, fit_f.u, 0.0005)

    cite = "jury fit, Seine assize court, 1825-1830"
    fit_s = estimation.fit_k_t(0.6509, 194 / 2963 / 792)
    col.close("fit-seine-k", cite, 0.678, fit_s.k, 0.001)
    col.close("fit-seine-u", cite, 0.7778, fit_s.u, 0.0005)

    # ---- derived decision-quality suite, 1831 ---------------------------
    tally4 = jury.VerdictTally(12, 4)
    cite = "decision quality, person crimes, 1831"
    fit_1831 = estimation.FitResult(0.5354, 2.112, 2.112 / 3.112, 0.0)
    d = estimation.derived_probs(fit_1831, 0.3632, tally4)
    col.close("derived-person-P4", cite, 0.9811, d.P, 0.0005)
    col.close("derived-person-Pi4", cite, 0.7186, d.Pi, 0.0005)
    col.close("derived-person-D4", cite, 0.00689, d.D, 0.0005)
    col.close("derived-person-Delta4", cite, 0.1791, d.Delta, 0.0005)

    cite = "decision quality, property crimes, 1831"
    fit_1831q = estimation.FitResult(0.6744, 3.4865, 3.4865 / 4.4865, 0.0)
    dq = estimation.derived_probs(fit_1831q, 0.6034, tally4)
    col.close("derived-property-P4", cite, 0.9981, dq.P, 0.0005)
    col.close("derived-property-Pi4", cite, 0.8199, dq.Pi, 0.0005)
    col.close("derived-property-D4", cite, 0.0004, dq.D, 0.0005)
    col.close("derived-property-Delta4", cite, 0.0721, dq.Delta, 0.0005)

    cite = "minimal-majority conviction correctness"
    tally5 = jury.VerdictTally(12, 5)
    d5 = estimation.derived_probs(fit_1831, 0.3632, tally5)
    col.close("minmaj-person-p5", cite, 0.8372, d5.p_min, 0.0005)
    d5q = estimation.derived_probs(fit_1831q, 0.6034, tally5)
    col.close("minmaj-property-p5", cite, 0.9618, d5q.p_min, 0.0005)
    fit_w = estimation.FitResult(0.6391, 2.99, 2.99 / 3.99, 0.0)
    d5w = estimation.derived_probs(fit_w, 0.6094, tally5)
    col.close("minmaj-france-w5", cite, 0.9406, d5w.p_min, 0.0005)

    cite = "mirrored-root branch, property crimes"
    comp = estimation.complement(estimation.FitResult(0.6744, 3.4865,
                                                      3.4865 / 4.4865, 0.0))
    dc = estimation.derived_probs(comp, 0.6034, tally4)
    col.close("complement-P4", cite, 0.000675, dc.P, 0.00005)

    # ---- appellate / military / police ----------------------------------
    cite = "assize-court confirmation of minimal-majority convictions"
    app = estimation.appellate_confirm(0.9406, 0.8357)
    col.close("appellate-P2", cite, 0.9916, app.P2, 0.0005)
    col.close("appellate-t", cite, 2.789, app.t, 0.02)

    cite = "military courts, seven judges"
    mil = estimation.seven_judge(2 / 3, 3.0)
    col.close("military-k", cite, 0.8793, mil.k, 0.0005)
    col.close("military-P2", cite, 0.9976, mil.P2, 0.0005)

    cite = "police courts, three judges"
    try:
        estimation.three_judge_feasibility(0.8563, 3.0)
        infeasible = False
    except estimation.InfeasibleError:
        infeasible = True
    col.flag("police-infeasible", cite, True, infeasible)

    # ---- civil tribunals -------------------------------------------------
    cite = "civil bench of three equal judges, even unanimity split"
    u_eq = estimation.fit_u_from_split(0.5)
    bench = estimation.civil_equal(u_eq)
    col.close("civil-u", cite, 0.7888, u_eq, 0.0005)
    col.close("civil-p", cite, 0.9815, bench.p, 0.0005)
    col.close("civil-q", cite, 0.7885, bench.q, 0.0005)
    col.close("civil-r", cite, 0.8850, bench.r, 0.0005)

    cite = "civil appeals, confirmation-rate fit, 1831-1833"
    civil = estimation.fit_civil_t(0.6847)
    col.close("civil-fit-t", cite, 2.157, civil.t, 0.005)
    col.close("civil-fit-u", cite, 0.6832, civil.u, 0.001)
    col.close("civil-fit-r", cite, 0.7626, civil.r, 0.001)

    cite = "civil appeal correctness, 1831-1833"
    appeal = estimation.civil_appeal(0.7626, 0.6832, confirm_rate=0.6847)
    col.close("civil-appeal-P", cite, 0.9479, appeal.P, 0.001)
    col.close("civil-appeal-Pprime", cite, 0.6409, appeal.P_prime, 0.001)
    col.close("civil-appeal-Gamma", cite, 0.7466, appeal.Gamma, 0.001)
    for part, want, tag in zip(appeal.parts,
                               (0.6495, 0.2022, 0.1131, 0.0352),
                               ("both-right", "second-right", "first-right",
                                "both-wrong")):
        col.close(f"civil-appeal-part-{tag}", cite, want, part, 0.001)

    # ---- flat-prior comparison -------------------------------------------
    cite = "flat-reliability-prior error fractions, twelve jurors"
    wanted = [Fraction(1, 8192), Fraction(14, 8192), Fraction(92, 8192),
              Fraction(378, 8192), Fraction(1093, 8192), Fraction(2380, 8192)]
    for i, want in enumerate(wanted):
        col.close(f"flat-prior-error-i{i}", cite, want,
                  jury.laplace_error(12, i), None)
    col.close("flat-prior-interval", cite, 0.915,
              float(jury.laplace_interval(12, 5, Fraction(1, 4))), 0.001)

    # ---- jury closed forms -----------------------------------------------
    cite = "twelve-juror closed forms"
    params = jury.JuryParams(Fraction(1, 2), Fraction(3, 4))
    vp = jury.verdict_probs(params, jury.VerdictTally(12, 5))
    exact_P5 = vp.P_i  # exact rational
    vp_float = jury.verdict_probs(jury.JuryParams(0.5, 0.75),
                                  jury.VerdictTally(12, 5))
    col.close("jury-P5-rational", cite, float(exact_P5), vp_float.P_i, 1e-6)
    col.close("jury-P5-approx", cite, 403 / 409, float(exact_P5), 2e-4)
    vp_half = jury.verdict_probs(jury.JuryParams(Fraction(1, 2), Fraction(1, 2)),
                                 jury.VerdictTally(12, 5))
    col.close("jury-tie-H", cite, Fraction(231, 1024), vp_half.H_i, None)
    cite = "unanimous verdicts, all France parameters"
    stats = jury.unanimity_stats(jury.JuryParams(0.6391, 0.7494), 12)
    col.close("unanimity-gamma0", cite, 0.0201, stats.gamma0, 0.0005)
    col.close("unanimity-delta0", cite, 0.0113, stats.delta0, 0.0005)
    col.close("unanimity-even-bet", cite, 21.73, stats.cases_for_even_bet, 0.02)

    # ---- coin-toss series intervals --------------------------------------
    cite = "coin-toss series, chance interval"
    ci = asympt.chance_interval(2048, 1992, 2.0)
    col.close("chance-interval-R", cite, 0.99555, ci.probability, 0.0005)
    col.close("chance-interval-center", cite, 0.50693, ci.center, 0.0005)
    col.close("chance-interval-half", cite, 0.02225, ci.half_width, 0.0005)
    col.close("chance-exceeds-half", cite, 0.81043,
              asympt.chance_exceeds(2048, 1992, 0.5), 0.0005)

    cite = "coin-toss series, two-sample comparison"
    col.close("two-sample-0.02", cite, 0.56589,
              asympt.two_sample(987, 1992, 1061, 2048, 0.02), 0.0005)
    col.close("two-sample-0.025", cite, 0.43861,
              asympt.two_sample(987, 1992, 1061, 2048, 0.025), 0.0005)

    cite = "coin-toss series, prediction intervals"
    pred1 = asympt.predict_interval(2048, 1992, 2048, 2.0)
    col.close("predict-first-w", cite, 0.99558, pred1.probability, 0.0005)
    col.close("predict-first-half", cite, 79, pred1.half_width, 1.0)
    col.close("predict-first-center", cite, 1001, pred1.center, 1.0)
    pred2 = asympt.predict_interval(2048, 1992, 1992, 2.0)
    col.close("predict-second-w", cite, 0.99560, pred2.probability, 0.0005)
    col.close("predict-second-half", cite, 77, pred2.half_width, 1.0)
    col.close("predict-second-center", cite, 982, pred2.center, 1.0)

    # ---- constants and special values ------------------------------------
    cite = "tail-integral table value"
    col.close("kramp-tail", cite, 0.00001957729,
              asympt.gauss_tail(3.0) * asympt.SQRT_PI, 0.00001957729 * 1e-6)
    cite = "even-money constant"
    col.close("even-money-u", cite, 0.4765, asympt.even_money_u(), 0.0005)
    cite = "central term, one hundred fair trials"
    col.close("central-term", cite, 0.07979, asympt.central_term(100), 0.0005)

    # ---- uniform sums ------------------------------------------------------
    cite = "planetary inclinations, sum below one right angle"
    col.close("planets-P", cite, 1.0 / math.factorial(10),
              asympt.uniform_sum_P(10, 45.0, 45.0, 45.0, 45.0),
              1e-12)
    cite = "planetary eccentricities, sum below 1.25"
    col.close("eccentricities-P", cite,
              (1.25**11 - 0.25**11) / math.factorial(11),
              asympt.uniform_sum_P(11, 0.5, 0.5, 0.625, 0.625), 1e-12)
    cite = "cometary inclinations, mean near the half right angle"
    k_c, h_c = asympt.uniform_moments(0.0, 90.0)
    comets = asympt.clt_mean_interval(138, k_c, h_c, 1.92)
    col.close("comets-P", cite, 0.99338, comets.probability, 0.0005)
    col.close("comets-mean-center", cite, 45.0, comets.center / 138, 0.01)
    col.close("comets-mean-half", cite, 6.0, comets.half_width / 138, 0.01)
    cite = "dice sums, one hundred throws"
    k_d, h_d = asympt.discrete_moments([1, 2, 3, 4, 5, 6])
    dice = asympt.clt_mean_interval(100, k_d, h_d, asympt.EVEN_MONEY_U)
    col.close("dice-center", cite, 350.0, dice.center, 1e-9)
    col.close("dice-half", cite, 11.5, dice.half_width, 0.05)

    # ---- elections ---------------------------------------------------------
    cite = "electoral colleges, one-twentieth margin"
    e1 = elections.college_win_chance(94835, 104830, 199665, 435)
    col.close("election-odd-s", cite, 0.85426, e1.s, 0.001)
    e2 = elections.college_win_chance(95064, 105060, 200124, 436)
    col.close("election-even-s", cite, 0.84279, e2.s, 0.001)
    col.close("election-even-sigma", cite, 0.02218, e2.sigma, 0.001)
    cite = "electoral colleges, one-tenth margin"
    e4 = elections.college_win_chance(89835, 109830, 199665, 435)
    col.close("election-wide-gap-s", cite, 0.98176, e4.s, 0.001)
    cite = "electoral colleges, split sizes"
    scn = elections.ElectionScenario([654] * 153 + [327] * 306, 95062, 105062)
    rep = elections.scenario_report(scn, 2.0)
    col.close("election-split-r", cite, 0.86049, rep.r, 0.001)
    cite = "seat-count interval, 459 colleges"
    seats = elections.seat_interval(459, 0.85426, 2.0)
    col.close("election-seats-R", cite, 0.99682, seats.probability, 0.001)
    col.close("election-seats-center", cite, 392.0, seats.center, 1.0)
    col.close("election-seats-half", cite, 21.0, seats.half_width, 1.0)
    cite = "minority seats, rare-event tail"
    col.close("election-minority-tail", cite, 0.98713,
              elections.minority_tail(459, 0.01824, 15), 0.001)

    # ---- exact kernels -----------------------------------------------------
    cite = "problem of points, double-skill example"
    alpha, _ = exact.problem_of_points(Fraction(2, 3), 4, 2)
    col.close("points-112-243", cite, Fraction(112, 243), alpha, None)
    cite = "sixteen red cards in succession"
    col.close("red-cards", cite, Fraction(1, 601080390),
              exact.hypergeometric(exact.UrnSpec(16, 16), 16, 0), None)
    cite = "lottery odds, three numbers of ninety"
    lot = exact.lottery_odds(90, 5, 3)
    col.close("lottery-fair-multiple", cite, 11748.0, float(lot.fair_multiple), 0.01)
    # the printed drawing count is the classical ln(2)/chance desk value
    col.close("lottery-even-bet", cite, 8143.13, lot.even_bet_drawings_approx, 0.01)
    cite = "three dice, sum of ten"
    dist = exact.sum_convolution([[1, 2, 3, 4, 5, 6]] * 3)
    col.close("dice-M10", cite, Fraction(27, 216), dist.prob(10), None)

    return ReproReport(col.lines)
