"""Historical court statistics: embedded reference tables, CSV ingestion,
rate computation, stability reporting and the coin-toss series fit.

CSV schema (one header line, UTF-8, empty string for absent optionals):

    year,jurisdiction,category,accused,convicted_total,convicted_min_majority,cases_min_majority

The embedded records additionally carry the per-year total case count,
which the fixed CSV schema does not transport; it enables the case-count
bookkeeping of the minimal-majority rate alongside the subtraction method.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .asympt import IntervalResult, stability_limits
from .estimation import ObservedRates

__all__ = [
    "CourtRecord",
    "BuffonCounts",
    "BuffonFit",
    "StabilityReport",
    "CSV_COLUMNS",
    "EMBEDDED",
    "BUFFON_SERIES",
    "MINIMAL_MAJORITY_ERA",
    "load_records",
    "loads_records",
    "dump_records",
    "embedded",
    "rates",
    "stability_report",
    "buffon_fit",
]

CSV_COLUMNS = (
    "year",
    "jurisdiction",
    "category",
    "accused",
    "convicted_total",
    "convicted_min_majority",
    "cases_min_majority",
)

CATEGORIES = ("person", "property", "all")


@dataclass(frozen=True)
class CourtRecord:
    """One year of verdicts for one jurisdiction and crime category.

    convicted_total counts convictions at or above the era's required
    majority; convicted_min_majority / cases_min_majority count the
    minimal-majority subset when the source records it (by accused or by
    case).  cases_total is embedded-data-only context for the case-count
    method and is not part of the CSV schema.
    """

    year: int
    jurisdiction: str
    category: str
    accused: int
    convicted_total: int
    convicted_min_majority: int | None = None
    cases_min_majority: int | None = None
    cases_total: int | None = None

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        if self.accused < 0 or self.convicted_total < 0:
            raise ValueError("counts must be non-negative")
        if self.convicted_total > self.accused:
            raise ValueError(
                f"{self.year} {self.jurisdiction}/{self.category}: "
                "convicted_total exceeds accused")
        for name in ("convicted_min_majority", "cases_min_majority", "cases_total"):
            val = getattr(self, name)
            if val is not None and val < 0:
                raise ValueError(f"{name} must be non-negative when present")


# Era of the minimal majority: 7 votes to 5 through 1830, 8 to 4 from 1831.
MINIMAL_MAJORITY_ERA = {"seven_to_five_through": 1830, "eight_to_four_from": 1831}


def _rec(year, jurisdiction, category, accused, convicted, cases=None,
         cases_min=None) -> CourtRecord:
    return CourtRecord(year, jurisdiction, category, accused, convicted,
                       cases_min_majority=cases_min, cases_total=cases)


def _france_assize_rows() -> list[CourtRecord]:
    rows: list[CourtRecord] = []
    years = (1825, 1826, 1827, 1828, 1829, 1830)
    cases = (5121, 5301, 5287, 5721, 5506, 5068)
    accused = (6652, 6988, 6929, 7396, 7373, 6962)
    convicted = (4037, 4348, 4236, 4551, 4475, 4130)
    # assize-court interventions at the 7-to-5 majority, recorded per case,
    # 1826 onward only
    interventions = {1826: 398, 1827: 373, 1828: 373, 1829: 395, 1830: 372}
    for y, cs, acc, conv in zip(years, cases, accused, convicted):
        rows.append(_rec(y, "france", "all", acc, conv, cases=cs,
                         cases_min=interventions.get(y)))
    person_accused = (1897, 1907, 1911, 1844, 1791, 1666)
    person_convicted = (882, 967, 948, 871, 834, 766)
    property_accused = (4755, 5081, 5018, 5552, 5582, 5296)
    property_convicted = (3155, 3381, 3288, 3680, 3641, 3364)
    for y, acc, conv in zip(years, person_accused, person_convicted):
        rows.append(_rec(y, "france", "person", acc, conv))
    for y, acc, conv in zip(years, property_accused, property_convicted):
        rows.append(_rec(y, "france", "property", acc, conv))
    return rows


def _embedded_records() -> dict[str, tuple[CourtRecord, ...]]:
    data: dict[str, list[CourtRecord]] = {}
    data["france_1825_1830"] = _france_assize_rows()
    data["france_1831"] = [
        _rec(1831, "france", "all", 7606, 4098),
        _rec(1831, "france", "person", 2046, 743),
        _rec(1831, "france", "property", 5560, 3355),
    ]
    # mitigating-circumstances era; the convicted counts belong to the years
    # as rated (4448/7555 and 4105/6964)
    data["france_1832_1833"] = [
        _rec(1832, "france", "all", 7555, 4448),
        _rec(1833, "france", "all", 6964, 4105),
    ]
    seine_years = (1825, 1826, 1827, 1828, 1829, 1830)
    seine_accused = (802, 824, 675, 868, 908, 804)
    seine_convicted = (567, 527, 436, 559, 604, 484)
    seine_cases = {1826: 2963}  # five-year case total 1826-1830, kept on 1826
    seine_interv = {1826: 194}
    data["seine_1825_1830"] = [
        _rec(y, "seine", "all", acc, conv,
             cases=seine_cases.get(y), cases_min=seine_interv.get(y))
        for y, acc, conv in zip(seine_years, seine_accused, seine_convicted)
    ]
    # civil appeals: accused = appeals decided, convicted_total = confirmations
    data["civil_1831_1833"] = [
        _rec(1831, "france", "all", 976 + 388, 976),
        _rec(1832, "france", "all", 5301 + 2405, 5301),
        _rec(1833, "france", "all", 5470 + 2617, 5470),
    ]
    data["civil_paris_1831_1833"] = [
        _rec(1832, "paris", "all", 3297, 2510),
    ]
    return {k: tuple(v) for k, v in data.items()}


EMBEDDED: dict[str, tuple[CourtRecord, ...]] = _embedded_records()

# Coin-toss series: count of runs whose first success came at toss j (j = 1..).
BUFFON_SERIES = (1061, 494, 232, 137, 56, 29, 25, 8, 6)


def embedded(name: str) -> tuple[CourtRecord, ...]:
    try:
        return EMBEDDED[name]
    except KeyError:
        raise KeyError(
            f"no embedded dataset {name!r}; available: {sorted(EMBEDDED)}") from None


def _parse_row(row: dict[str, str], line_no: int) -> CourtRecord:
    def need_int(col: str) -> int:
        raw = (row.get(col) or "").strip()
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"row {line_no}: column {col!r} must be an integer,"
                             f" got {raw!r}") from None

    def opt_int(col: str) -> int | None:
        raw = (row.get(col) or "").strip()
        if raw == "":
            return None
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"row {line_no}: column {col!r} must be an integer"
                             f" or empty, got {raw!r}") from None

    try:
        return CourtRecord(
            year=need_int("year"),
            jurisdiction=(row.get("jurisdiction") or "").strip(),
            category=(row.get("category") or "").strip(),
            accused=need_int("accused"),
            convicted_total=need_int("convicted_total"),
            convicted_min_majority=opt_int("convicted_min_majority"),
            cases_min_majority=opt_int("cases_min_majority"),
        )
    except ValueError as exc:
        raise ValueError(f"row {line_no}: {exc}") from None


def loads_records(text: str) -> tuple[CourtRecord, ...]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_COLUMNS:
        raise ValueError(
            f"header must be exactly {','.join(CSV_COLUMNS)}")
    return tuple(_parse_row(row, i) for i, row in enumerate(reader, start=2))


def load_records(path: str | Path) -> tuple[CourtRecord, ...]:
    """Parse and validate a CSV of court records."""
    return loads_records(Path(path).read_text(encoding="utf-8"))


def dump_records(records: Iterable[CourtRecord]) -> str:
    """Canonical CSV serialization (inverse of load_records)."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([
            r.year, r.jurisdiction, r.category, r.accused, r.convicted_total,
            "" if r.convicted_min_majority is None else r.convicted_min_majority,
            "" if r.cases_min_majority is None else r.cases_min_majority,
        ])
    return out.getvalue()


def _filter(records: Iterable[CourtRecord], jurisdiction: str | None = None,
            category: str | None = None, years: Sequence[int] | None = None
            ) -> list[CourtRecord]:
    keep = []
    for r in records:
        if jurisdiction is not None and r.jurisdiction != jurisdiction:
            continue
        if category is not None and r.category != category:
            continue
        if years is not None and r.year not in years:
            continue
        keep.append(r)
    return keep


def rates(records: Iterable[CourtRecord], jurisdiction: str | None = None,
          category: str | None = None, years: Sequence[int] | None = None,
          later_records: Iterable[CourtRecord] | None = None,
          n: int = 12, i: int = 5) -> ObservedRates:
    """Aggregate the selected records into the two fit observables.

    The minimal-majority rate comes from direct conviction counts when
    present, else from intervention case counts over total cases, else from
    the rate-difference method against `later_records` (a stricter-majority
    period over the same jurisdiction/category).  All computable methods are
    reported on the result.
    """
    sel = _filter(records, jurisdiction, category, years)
    if not sel:
        raise ValueError("filter selects no records")
    mu = sum(r.accused for r in sel)
    a_i = sum(r.convicted_total for r in sel)
    b_i = None
    if all(r.convicted_min_majority is not None for r in sel):
        b_i = sum(r.convicted_min_majority for r in sel)
    case_rows = [r for r in sel
                 if r.cases_min_majority is not None and r.cases_total is not None]
    b_rate_cases = None
    if case_rows:
        b_rate_cases = (sum(r.cases_min_majority for r in case_rows)
                        / sum(r.cases_total for r in case_rows))
    b_rate_sub = None
    if later_records is not None:
        later = _filter(later_records, jurisdiction, category)
        if later:
            mu2 = sum(r.accused for r in later)
            a2 = sum(r.convicted_total for r in later)
            b_rate_sub = a_i / mu - a2 / mu2
    return ObservedRates(mu, a_i, b_i, n=n, i=i,
                         b_rate_subtraction=b_rate_sub, b_rate_cases=b_rate_cases)


@dataclass(frozen=True)
class StabilityReport:
    """Two-period comparison of a conviction rate against its chance limits."""

    rate1: float
    rate2: float
    difference: float
    limits: IntervalResult
    anomalous: bool

    def verdict(self) -> str:
        if self.anomalous:
            return ("observed difference exceeds the limits: grounds to "
                    "believe the underlying causes changed")
        return "observed difference within the limits: no grounds to suspect change"


def stability_report(records: Iterable[CourtRecord], years1: Sequence[int],
                     years2: Sequence[int], alpha: float,
                     jurisdiction: str | None = None,
                     category: str | None = None) -> StabilityReport:
    """Split the records into two periods and test the rate difference
    against the two-series stability limits at confidence parameter alpha."""
    first = _filter(records, jurisdiction, category, years1)
    second = _filter(records, jurisdiction, category, years2)
    if not first or not second:
        raise ValueError("both split halves must select records")
    mu1 = sum(r.accused for r in first)
    a1 = sum(r.convicted_total for r in first)
    mu2 = sum(r.accused for r in second)
    a2 = sum(r.convicted_total for r in second)
    limits = stability_limits(a1, mu1, alpha, a2, mu2)
    diff = a1 / mu1 - a2 / mu2
    return StabilityReport(a1 / mu1, a2 / mu2, diff, limits,
                           abs(diff) > limits.half_width)


@dataclass(frozen=True)
class BuffonCounts:
    """Counts a_j of runs whose first success fell on toss j."""

    counts: tuple[int, ...]

    def __init__(self, counts: Iterable[int]):
        object.__setattr__(self, "counts", tuple(int(c) for c in counts))
        if not self.counts or any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative with at least one entry")
        if sum(self.counts) < 1:
            raise ValueError("need at least one run")

    @property
    def runs(self) -> int:          # m: number of runs = number of successes
        return sum(self.counts)

    @property
    def tosses(self) -> int:        # mu: total tosses across all runs
        return sum(j * a for j, a in enumerate(self.counts, start=1))


@dataclass(frozen=True)
class BuffonFit:
    p_global: float                 # m / mu
    ladder: tuple[float, ...]       # a1/m, 1 - a2/a1, 1 - a3/a2
    ladder_mean: float
    predicted: tuple[int, ...]      # geometric counts at p_global, rounded


def buffon_fit(counts: BuffonCounts, predicted_terms: int = 10) -> BuffonFit:
    """Estimate the success chance from first-success run counts.

    The global estimate is total successes over total tosses; the ladder
    estimates use the leading geometric-decay ratios.  Predicted counts are
    m p (1-p)^(j-1) rounded to the nearest integer.
    """
    a = counts.counts
    m, mu = counts.runs, counts.tosses
    p = m / mu
    ladder = []
    if a[0] > 0:
        ladder.append(a[0] / m)
        if len(a) > 1 and a[1] > 0:
            ladder.append(1.0 - a[1] / a[0])
            if len(a) > 2:
                ladder.append(1.0 - a[2] / a[1])
    mean = math.fsum(ladder) / len(ladder) if ladder else p
    predicted = []
    expect = m * p
    for _ in range(predicted_terms):
        predicted.append(round(expect))
        expect *= 1.0 - p
    return BuffonFit(p, tuple(ladder), mean, tuple(predicted))
