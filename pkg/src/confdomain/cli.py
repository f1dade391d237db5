"""Command-line front end.

Exit codes: 0 success, 2 usage or invalid input, 3 degenerate sample,
4 coverage outside gamma +/- 5 standard errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import confidence as ci
from .coverage import CASES, CoverageExperiment, run_coverage
from .errors import DegenerateSampleError, DomainError
from .estimation import FixedMu, FixedSigma, Full, mle
from .measurement import NormalState, TwoSample, read_sample, sample_mean, sample_sumsq
from .reference import reproduce_table
from .specfun import StdNormal, quantile

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_COVERAGE = 4

DATA_HELP = (
    "sample file: UTF-8, one number per line, blank lines and lines starting "
    "with '#' ignored; '-' reads standard input"
)


class UsageError(Exception):
    pass


def _gamma(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.5 <= value <= 0.9999:
        raise argparse.ArgumentTypeError(f"gamma must lie in [0.5, 0.9999], got {text}")
    return value


def _positive(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be finite and > 0, got {text}")
    return value


def _finite(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text}")
    return value


def _count(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {text}")
    return value


def _estimator(text):
    if text == "mle":
        return ci.Mle()
    if text == "unbiased":
        return ci.Unbiased()
    if text.startswith("scaled:"):
        return ci.Scaled(_positive(text.partition(":")[2]))
    raise argparse.ArgumentTypeError(f"expected mle, unbiased or scaled:<c>, got {text!r}")


def _constraint(text):
    if text == "full":
        return Full()
    head, _, tail = text.partition(":")
    if head == "fixed-sigma" and tail:
        return FixedSigma(_positive(tail))
    if head == "fixed-mu" and tail:
        return FixedMu(_finite(tail))
    raise argparse.ArgumentTypeError(
        f"expected full, fixed-sigma:<sigma> or fixed-mu:<mu>, got {text!r}"
    )


def _estimator_label(est):
    return f"scaled:{est.c!r}" if isinstance(est, ci.Scaled) else est.name


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confdomain",
        description="Confidence domains for the normal family and their coverage.",
        epilog=f"Data files: {DATA_HELP}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    interval = sub.add_parser("interval", help="confidence domain for a measured sample")
    interval.add_argument(
        "kind",
        choices=["mean-known-sigma", "variance", "variance-alpha-point", "mean-t", "mean-diff"],
    )
    interval.add_argument("--data", required=True, help=DATA_HELP)
    interval.add_argument("--data2", help="second sample (mean-diff)")
    interval.add_argument("--gamma", type=_gamma, default=0.95)
    interval.add_argument("--sigma", type=_positive, help="known sigma (mean-known-sigma)")
    interval.add_argument("--sigma1", type=_positive, help="known sigma of --data (mean-diff)")
    interval.add_argument("--sigma2", type=_positive, help="known sigma of --data2 (mean-diff)")
    interval.add_argument(
        "--estimator", type=_estimator, default=ci.Mle(), help="mle | unbiased | scaled:<c>"
    )
    interval.add_argument("--json", action="store_true")

    cov = sub.add_parser("coverage", help="Monte Carlo coverage of a construction")
    cov.add_argument("--case", choices=CASES, required=True)
    cov.add_argument("--mu", type=_finite, default=0.0)
    cov.add_argument("--sigma", type=_positive, default=1.0)
    cov.add_argument("--mu2", type=_finite, default=0.0)
    cov.add_argument("--sigma2", type=_positive, default=1.0)
    cov.add_argument("--n", type=_count, required=True)
    cov.add_argument("--m", type=_count, help="second sample size (mean-diff)")
    cov.add_argument("--gamma", type=_gamma, default=0.95)
    cov.add_argument("--trials", type=_count, default=100_000)
    cov.add_argument("--seed", type=_seed, default=0)
    cov.add_argument("--estimator", type=_estimator, default=ci.Mle())
    cov.add_argument("--json", action="store_true")

    rep = sub.add_parser("reproduce", help="recompute the worked n=3, gamma=0.95 constants")
    rep.add_argument("--json", action="store_true")

    m = sub.add_parser("mle", help="maximum likelihood state under a constraint")
    m.add_argument("--data", required=True, help=DATA_HELP)
    m.add_argument("--constraint", type=_constraint, default=Full())
    m.add_argument("--json", action="store_true")
    return parser


def _domain_fields(domain, **extra):
    out = {"domain": domain.tag, "lo": None, "hi": None, "center": None, "slope": None}
    if isinstance(domain, ci.MeanCone):
        out["center"] = domain.center
        out["slope"] = domain.slope
        if domain.known_sigma is not None:
            piece = domain.slice()
            out["lo"], out["hi"] = piece.lo, piece.hi
    else:
        out["lo"], out["hi"] = domain.lo, domain.hi
        if isinstance(domain, ci.ThetaInterval):
            out["center"] = domain.center
            out["half_width"] = domain.half_width
    out.update(extra)
    return out


def _require(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"interval {args.kind} requires {', '.join(missing)}")


def cmd_interval(args) -> tuple[dict, int]:
    s = read_sample(args.data)
    gamma = args.gamma
    record = {"command": f"interval {args.kind}", "n": s.n, "gamma": gamma}
    if args.kind == "mean-known-sigma":
        _require(args, "sigma")
        cone = ci.interval_mean_known_sigma(s, gamma, args.sigma)
        eta = ci.eta_mean_known_sigma(gamma, s.n, args.sigma).eta
        record["sigma"] = args.sigma
        record.update(_domain_fields(cone))
        record["constants"] = {"z": quantile(StdNormal(), 0.5 * (1 + gamma)), "eta": eta}
    elif args.kind == "variance":
        est = args.estimator
        band = ci.interval_variance(s, gamma, est)
        a = est.divisor(s.n)
        eta = ci.eta_log_sigma(gamma, s.n, a).eta
        record["estimator"] = _estimator_label(est)
        record["sumsq"] = sample_sumsq(s)
        record.update(_domain_fields(band))
        record["constants"] = {
            "eta": eta,
            "exp_minus_eta": math.exp(-eta),
            "exp_eta": math.exp(eta),
            "lo_coefficient": math.exp(-2 * eta) / a,
            "hi_coefficient": math.exp(2 * eta) / a,
        }
    elif args.kind == "variance-alpha-point":
        band = ci.interval_variance_alpha_point(s, gamma)
        chi_lo, chi_hi = ci.chi2_tail_points(gamma, s.n)
        record["sumsq"] = sample_sumsq(s)
        record.update(_domain_fields(band))
        record["constants"] = {
            "chi2_lower": chi_lo,
            "chi2_upper": chi_hi,
            "lo_coefficient": 1 / chi_hi,
            "hi_coefficient": 1 / chi_lo,
            "reconciling_c": ci.alpha_point_reconciliation_c(gamma, s.n),
        }
    elif args.kind == "mean-t":
        piece = ci.interval_mean_t(s, gamma)
        t = ci.t_threshold(gamma, s.n).eta
        record.update(_domain_fields(piece))
        record["constants"] = {"t": t, "standard_error": ci.StudentizedDistance(s).unit}
    else:
        _require(args, "data2", "sigma1", "sigma2")
        ts = TwoSample(s, read_sample(args.data2))
        piece = ci.interval_mean_diff(ts, gamma, args.sigma1, args.sigma2)
        eta = ci.eta_mean_diff(gamma, ts.n, ts.m, args.sigma1, args.sigma2).eta
        record.update({"m": ts.m, "sigma1": args.sigma1, "sigma2": args.sigma2})
        record.update(_domain_fields(piece))
        record["constants"] = {"z": quantile(StdNormal(), 0.5 * (1 + gamma)), "eta": eta}
    return record, EXIT_OK


def cmd_coverage(args) -> tuple[dict, int]:
    state2 = None
    if args.case == "mean-diff":
        if args.m is None:
            raise UsageError("coverage --case mean-diff requires --m")
        state2 = NormalState(args.mu2, args.sigma2)
    exp = CoverageExperiment(
        case=args.case,
        state=NormalState(args.mu, args.sigma),
        n=args.n,
        gamma=args.gamma,
        trials=args.trials,
        seed=args.seed,
        estimator=args.estimator,
        state2=state2,
        m=args.m,
    )
    report = run_coverage(exp)
    record = {"command": "coverage", "case": args.case, "n": args.n, "seed": args.seed}
    if args.case == "variance":
        record["estimator"] = _estimator_label(args.estimator)
    if args.case == "mean-diff":
        record["m"] = args.m
    record.update(report.as_dict())
    record["within_5_stderr"] = report.within(5.0)
    return record, EXIT_OK if report.within(5.0) else EXIT_COVERAGE


def cmd_reproduce(args) -> tuple[dict, int]:
    rows = [row.as_dict() for row in reproduce_table()]
    return {"command": "reproduce", "n": 3, "gamma": 0.95, "rows": rows}, EXIT_OK


def cmd_mle(args) -> tuple[dict, int]:
    s = read_sample(args.data)
    result = mle(s, args.constraint)
    k = args.constraint
    if isinstance(k, FixedSigma):
        label = f"fixed-sigma:{k.sigma1!r}"
    elif isinstance(k, FixedMu):
        label = f"fixed-mu:{k.mu1!r}"
    else:
        label = "full"
    record = {
        "command": "mle",
        "n": s.n,
        "constraint": label,
        "mu": result.state.mu,
        "sigma": result.state.sigma,
        "log_likelihood": result.log_likelihood,
        "sample_mean": sample_mean(s),
    }
    return record, EXIT_OK


COMMANDS = {
    "interval": cmd_interval,
    "coverage": cmd_coverage,
    "reproduce": cmd_reproduce,
    "mle": cmd_mle,
}


def _fmt(value):
    if isinstance(value, bool) or value is None:
        return str(value).lower() if isinstance(value, bool) else "-"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def format_text(record: dict) -> str:
    lines = []
    for key, value in record.items():
        if key == "argv":
            continue
        if key == "rows":
            header = f"{'ref':>5}  {'computed':>12}  {'published':>10}  {'delta':>11}  quantity"
            lines.append(header)
            notes = []
            for row in value:
                published = "-" if row["published"] is None else f"{row['published']:g}"
                delta = "-" if row["delta"] is None else f"{row['delta']:+.2e}"
                mark = "" if row["agrees"] in (None, True) else " *"
                lines.append(
                    f"{row['ref']:>5}  {row['computed']:>12.6g}  {published:>10}  "
                    f"{delta:>11}  {row['quantity']}{mark}"
                )
                if row["note"]:
                    notes.append(f"  * ({row['ref']}) {row['note']}")
            lines.extend(notes)
        elif isinstance(value, dict):
            for sub_key, sub_value in value.items():
                lines.append(f"{key}.{sub_key}: {_fmt(sub_value)}")
        else:
            lines.append(f"{key}: {_fmt(value)}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, code = COMMANDS[args.command](args)
    except DegenerateSampleError as exc:
        print(f"confdomain: degenerate sample: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (DomainError, UsageError, OSError) as exc:
        print(f"confdomain: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    # echo the inputs only; the output format is not part of them
    record["argv"] = [a for a in argv if a != "--json"]
    if args.json:
        print(json.dumps(record))
    else:
        print(format_text(record))
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
