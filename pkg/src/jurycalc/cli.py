"""Command-line interface.

Numeric arguments accept plain decimals or exact fractions written "a/b".
Global flags: --json for machine-readable output, --precision N for decimal
places in text output, --data PATH to load a CSV of court records in place
of the embedded tables.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import asympt, causes, datasets, elections, estimation, exact, jury
from .reproduce import reproduce

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def number(text: str) -> float:
    """Parse a decimal or an a/b fraction to float."""
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def fraction(text: str) -> Fraction:
    return Fraction(text)


def _emit(args, payload: dict, order: list[str] | None = None) -> None:
    if args.json:
        print(json.dumps(_plain(payload), indent=2))
        return
    keys = order or list(payload)
    for key in keys:
        print(f"{key} = {_fmt(payload[key], args.precision)}")


def _plain(x):
    if is_dataclass(x) and not isinstance(x, type):
        return _plain(asdict(x))
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return {"fraction": f"{x.numerator}/{x.denominator}", "value": float(x)}
    return x


def _fmt(x, precision: int) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator} ({exact.to_decimal(x, precision)})"
    if isinstance(x, float):
        return f"{x:.{precision}f}"
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_fmt(v, precision) for v in x) + ")"
    return str(x)


def _records(args):
    if args.data:
        return datasets.load_records(args.data)
    out = []
    for rows in datasets.EMBEDDED.values():
        out.extend(rows)
    return tuple(out)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_estimate(args) -> int:
    if args.model == "jury":
        if args.c is None or args.gamma is None:
            raise SystemExit("estimate --model jury needs --c and --gamma")
        fit = estimation.fit_k_t(args.c, args.gamma, n=args.n)
        _emit(args, {"k": fit.k, "t": fit.t, "u": fit.u, "residual": fit.residual})
        if args.complement:
            comp = estimation.complement(fit)
            _emit(args, {"k_mirror": comp.k, "t_mirror": comp.t, "u_mirror": comp.u})
    elif args.model == "appellate":
        res = estimation.appellate_confirm(args.k, args.c2)
        _emit(args, {"P2": res.P2, "t": res.t, "u": res.u})
    elif args.model == "seven-judge":
        res = estimation.seven_judge(args.c2, args.t)
        _emit(args, {"k": res.k, "P2": res.P2})
    elif args.model == "three-judge":
        k = estimation.three_judge_feasibility(args.c1, args.t)
        _emit(args, {"k": k})
    elif args.model == "civil":
        fit = estimation.fit_civil_t(args.confirm_rate)
        _emit(args, {"t": fit.t, "u": fit.u, "r": fit.r, "residual": fit.residual})
    return EXIT_OK


def cmd_jury(args) -> int:
    params = jury.JuryParams(args.k, args.u)
    vp = jury.verdict_probs(params, jury.VerdictTally(args.n, args.i))
    payload = {
        "gamma_i": vp.gamma_i, "delta_i": vp.delta_i, "c_i": vp.c_i, "d_i": vp.d_i,
        "p_i": vp.p_i, "q_i": vp.q_i, "P_i": vp.P_i, "Q_i": vp.Q_i,
        "D_i": vp.D_i, "Delta_i": vp.Delta_i, "split_chance": vp.w_i,
    }
    if vp.H_i is not None:
        payload["tie_chance"] = vp.H_i
    stats = jury.unanimity_stats(params, args.n)
    payload.update({
        "unanimous_convict": stats.gamma0, "unanimous_acquit": stats.delta0,
        "cases_for_even_bet": stats.cases_for_even_bet,
    })
    _emit(args, payload)
    return EXIT_OK


def cmd_witness(args) -> int:
    if args.chain:
        honesty = [number(x) for x in args.chain.split(",")]
        y = causes.witness_chain(args.q, honesty)
        _emit(args, {"posterior_truth": y})
    elif args.contradict is not None:
        r1 = causes.contradicting_pair(args.q, args.p, args.contradict)
        _emit(args, {"posterior_falsity": r1})
    elif args.numbered:
        counts = [int(x) for x in args.numbered.split(",")]
        spec = causes.WitnessSpec(args.u, args.v, len(counts))
        res = causes.numbered_witness(spec, counts, args.announced)
        _emit(args, {"p_announced": res.p_announced, "p_other": res.p_other,
                     "w_announced": res.w_announced, "w_other": res.w_other})
    else:
        r = causes.witness_update(args.p, args.q)
        _emit(args, {"posterior_truth": r})
    return EXIT_OK


def cmd_approx(args) -> int:
    if args.what == "tail":
        _emit(args, {"Q": asympt.gauss_tail(args.u),
                     "two_sided": 1.0 - 2.0 * asympt.gauss_tail(args.u)})
    elif args.what == "chance-interval":
        res = asympt.chance_interval(args.m, args.n2, args.u)
        _emit(args, {"center": res.center, "half_width": res.half_width,
                     "probability": res.probability})
    elif args.what == "predict":
        res = asympt.predict_interval(args.m, args.n2, args.future, args.u)
        _emit(args, {"center": res.center, "half_width": res.half_width,
                     "probability": res.probability})
    elif args.what == "two-sample":
        lam = asympt.two_sample(args.m, args.mu, args.m1, args.mu1, args.epsilon)
        _emit(args, {"prob_excess": lam})
    elif args.what == "binomial-tail":
        q = asympt.TailQuery(args.m, args.n2, args.p)
        _emit(args, {"P": asympt.binomial_tail_asym(q)})
    return EXIT_OK


def cmd_elections(args) -> int:
    sizes = []
    for part in args.colleges.split(","):
        if "x" in part:
            count, size = part.split("x")
            sizes.extend([int(size)] * int(count))
        else:
            sizes.append(int(part))
    scn = elections.ElectionScenario(sizes, args.a, args.b)
    rep = elections.scenario_report(scn, args.u, minority_seats=args.minority_seats)
    _emit(args, {
        "group_sizes": rep.group_sizes,
        "group_chances": rep.group_chances,
        "mean_chance": rep.r,
        "seats_center": rep.seats.center,
        "seats_half_width": rep.seats.half_width,
        "seats_probability": rep.seats.probability,
        "minority_tail": rep.minority_tail,
    })
    return EXIT_OK


def cmd_stability(args) -> int:
    records = _records(args)
    years1 = _year_range(args.split.split(":")[0])
    years2 = _year_range(args.split.split(":")[1])
    rep = datasets.stability_report(
        records, years1, years2, args.alpha,
        jurisdiction=args.jurisdiction, category=args.category)
    _emit(args, {
        "rate_first": rep.rate1, "rate_second": rep.rate2,
        "difference": rep.difference, "limit": rep.limits.half_width,
        "probability": rep.limits.probability, "anomalous": rep.anomalous,
        "verdict": rep.verdict(),
    })
    return EXIT_OK


def _year_range(text: str) -> list[int]:
    if "-" in text:
        lo, hi = text.split("-")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def cmd_buffon(args) -> int:
    counts = datasets.BuffonCounts(
        [int(x) for x in args.counts.split(",")] if args.counts
        else datasets.BUFFON_SERIES)
    fit = datasets.buffon_fit(counts)
    _emit(args, {
        "p_global": fit.p_global, "ladder": fit.ladder,
        "ladder_mean": fit.ladder_mean, "predicted": fit.predicted,
    })
    return EXIT_OK


def cmd_lln_demo(args) -> int:
    """Seeded cause-mixture simulation: the observed frequency of an event
    whose chance is drawn each trial from a cause mixture converges to the
    mean chance."""
    rng = random.Random(args.seed)
    chances = [number(x) for x in args.chances.split(",")]
    weights = [number(x) for x in args.weights.split(",")]
    if len(chances) != len(weights) or abs(sum(weights) - 1) > 1e-9:
        raise SystemExit("need matching chance/weight lists with weights summing to 1")
    mean_chance = sum(c * w for c, w in zip(chances, weights))
    hits = 0
    rows = []
    checkpoints = {10, 100, 1000, 10000, args.trials}
    for trial in range(1, args.trials + 1):
        r = rng.random()
        acc = 0.0
        chance = chances[-1]
        for c, w in zip(chances, weights):
            acc += w
            if r < acc:
                chance = c
                break
        if rng.random() < chance:
            hits += 1
        if trial in checkpoints:
            rows.append({"trials": trial, "frequency": hits / trial,
                         "mean_chance": mean_chance})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            print(f"after {row['trials']:>7} trials: frequency "
                  f"{row['frequency']:.{args.precision}f} "
                  f"(mean chance {mean_chance:.{args.precision}f})")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    report = reproduce()
    if args.json:
        print(report.to_json())
    else:
        print(report.to_text(args.precision))
    return EXIT_OK if report.all_pass else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jurycalc",
        description="Verdict-probability calculus and historical reproduction.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--precision", type=int, default=4,
                        help="decimal places in text output (default 4)")
    parser.add_argument("--data", default=None,
                        help="CSV of court records replacing the embedded tables")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="fit model parameters from rates")
    p.add_argument("--model", default="jury",
                   choices=["jury", "appellate", "seven-judge", "three-judge", "civil"])
    p.add_argument("--c", type=number, help="overall conviction rate")
    p.add_argument("--gamma", type=number,
                   help="minimal-majority rate over its vote-split count")
    p.add_argument("--n", type=int, default=12, help="panel size (default 12)")
    p.add_argument("--complement", action="store_true",
                   help="also print the mirrored root")
    p.add_argument("--k", type=number, help="carried-over guilt probability")
    p.add_argument("--c1", type=number, help="three-judge conviction rate")
    p.add_argument("--c2", type=number, help="confirmation/conviction rate")
    p.add_argument("--t", type=number, help="assumed reliability odds")
    p.add_argument("--confirm-rate", type=number, help="civil confirmation rate")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("jury", help="forward verdict probabilities")
    p.add_argument("--k", type=number, required=True)
    p.add_argument("--u", type=number, required=True)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--i", type=int, default=5)
    p.set_defaults(func=cmd_jury)

    p = sub.add_parser("witness", help="testimony updates")
    p.add_argument("--p", type=number, help="witness honesty chance")
    p.add_argument("--q", type=number, help="prior truth probability")
    p.add_argument("--chain", help="comma list of honesty chances (concurring)")
    p.add_argument("--contradict", type=number,
                   help="honesty of a second, contradicting witness")
    p.add_argument("--numbered", help="comma list of per-number ball counts")
    p.add_argument("--announced", type=int, default=0,
                   help="index of the announced number")
    p.add_argument("--u", type=number, help="chance of not being mistaken")
    p.add_argument("--v", type=number, help="chance of not wishing to deceive")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("approx", help="large-number approximations")
    p.add_argument("what", choices=["tail", "chance-interval", "predict",
                                    "two-sample", "binomial-tail"])
    p.add_argument("--u", type=number, default=2.0)
    p.add_argument("--m", type=int)
    p.add_argument("--n2", type=int, help="failure count n")
    p.add_argument("--p", type=number)
    p.add_argument("--future", type=int, help="future trial count")
    p.add_argument("--mu", type=int)
    p.add_argument("--m1", type=int)
    p.add_argument("--mu1", type=int)
    p.add_argument("--epsilon", type=number)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("elections", help="electoral-college model")
    p.add_argument("--a", type=int, required=True, help="party A voters")
    p.add_argument("--b", type=int, required=True, help="party B voters")
    p.add_argument("--colleges", required=True,
                   help="sizes, e.g. '459x435' or '153x654,306x327'")
    p.add_argument("--u", type=number, default=2.0)
    p.add_argument("--minority-seats", type=int, default=15)
    p.set_defaults(func=cmd_elections)

    p = sub.add_parser("stability", help="two-period rate stability test")
    p.add_argument("--split", required=True, help="e.g. 1825-1827:1828-1830")
    p.add_argument("--alpha", type=number, default=2.0)
    p.add_argument("--jurisdiction", default=None)
    p.add_argument("--category", default=None)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("buffon", help="first-success run-series fit")
    p.add_argument("--counts", default=None,
                   help="comma list a_1,a_2,... (default: embedded series)")
    p.set_defaults(func=cmd_buffon)

    p = sub.add_parser("lln-demo", help="seeded cause-mixture frequency demo")
    p.add_argument("--chances", default="1/2,2/3,1/3")
    p.add_argument("--weights", default="1/3,1/3,1/3")
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=1837)
    p.set_defaults(func=cmd_lln_demo)

    p = sub.add_parser("reproduce", help="recompute all reference results")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
