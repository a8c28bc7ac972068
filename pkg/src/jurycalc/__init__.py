"""jurycalc: classical probability calculus for tribunal verdicts.

Subpackages by concern:

- exact        arbitrary-precision combinatorial kernels
- asympt       large-number approximation formulas and interval results
- causes       discrete cause inference and the testimony calculus
- jury         forward verdict-probability model for panels
- estimation   inverse fits of prior guilt and juror reliability; civil courts
- elections    electoral-college majority model
- datasets     embedded 1820s-1830s court statistics, CSV ingestion, rates
- reproduce    the reference-value reproduction harness
"""

from . import asympt, causes, datasets, elections, estimation, exact, jury
from .asympt import IntervalResult, MeanSeries, TailQuery
from .datasets import BuffonCounts, CourtRecord, buffon_fit, rates, stability_report
from .estimation import CivilParams, FitResult, InfeasibleError, ObservedRates, fit_k_t
from .exact import OutcomeDistribution, TrialWeights, UrnSpec, as_probability
from .jury import JuryParams, VerdictTally, verdict_probs
from .reproduce import reproduce

__version__ = "0.1.0"

__all__ = [
    "asympt", "causes", "datasets", "elections", "estimation", "exact", "jury",
    "IntervalResult", "MeanSeries", "TailQuery", "BuffonCounts", "CourtRecord",
    "buffon_fit", "rates", "stability_report", "CivilParams", "FitResult",
    "InfeasibleError", "ObservedRates", "fit_k_t", "OutcomeDistribution",
    "TrialWeights", "UrnSpec", "as_probability", "JuryParams", "VerdictTally",
    "verdict_probs", "reproduce", "__version__",
]
