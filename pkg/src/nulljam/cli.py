"""Command line front end.

Subcommands ``solve``, ``sweep-helpers``, ``outage-vs-helpers`` and
``validate`` read a config file (see :mod:`nulljam.config`) and write CSV.
Exit codes: 0 success, 1 config error, 2 validation failure.
"""
import argparse
import csv
import io
import sys

import numpy as np

from .channel import RandomStream, draw_channels
from .config import ConfigError, load_config
from .montecarlo import estimate_outage
from .optimizer import critical_chi, solution_from_chi
from .outage import jamming_eigenvalues, outage_probability

EXIT_OK, EXIT_CONFIG, EXIT_VALIDATION = 0, 1, 2


def fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.9g}"


def write_csv(header, rows, out):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    out.write(buf.getvalue())


def _mean_stderr(values):
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return float(values.mean()), 0.0
    return float(values.mean()), float(values.std(ddof=1) / np.sqrt(values.size))


def _draw_sets(exp, n_helpers):
    """Yield ``(h0, system config with helper channels)`` for each channel draw.

    Draw ``d`` uses stream ``d``; the legitimate channel is drawn first, so
    it is shared across helper counts.
    """
    base = exp.system(n_helpers)
    for d in range(exp.channel_draws):
        draw = draw_channels(base, RandomStream(exp.seed, d), exp.legit_variance)
        yield draw.h0, base.with_helper_channels(draw.h_k)


def solve(exp):
    cfg = exp.system()
    draw = draw_channels(cfg, RandomStream(exp.seed, 0), exp.legit_variance)
    h0 = draw.h0 if exp.h0 is None else exp.h0
    cfg = cfg.with_helper_channels(draw.h_k)
    chi = critical_chi(cfg, tol=exp.group_tol)
    norm_sq = float(np.vdot(h0, h0).real)
    sol = solution_from_chi(chi, cfg.source_snr * norm_sq)
    p = outage_probability(cfg, chi, tol=exp.group_tol)
    header = ["n_helpers", "norm_h0_sq", "chi_eps", "rate", "feasible", "outage_at_chi_eps"]
    return header, [[len(cfg.helpers), norm_sq, sol.chi_eps, sol.rate, sol.feasible, p]]


def sweep_helpers(exp):
    rows = []
    for n in range(exp.n_min, exp.n_max + 1):
        fixed_chi = None
        if exp.isotropic(n):
            fixed_chi = critical_chi(exp.system(n), tol=exp.group_tol)
        rates = []
        for h0, cfg in _draw_sets(exp, n):
            chi = fixed_chi if fixed_chi is not None else critical_chi(cfg, tol=exp.group_tol)
            gain = cfg.source_snr * float(np.vdot(h0, h0).real)
            rates.append(max(solution_from_chi(chi, gain).rate, 0.0))
        rows.append([n, *_mean_stderr(rates)])
    return ["n_helpers", "mean_rate", "stderr_rate"], rows


def outage_vs_helpers(exp):
    rows = []
    for n in range(exp.n_min, exp.n_max + 1):
        # isotropic covariances make the spectrum independent of the helper channels
        shared = jamming_eigenvalues(exp.system(n), tol=exp.group_tol) if exp.isotropic(n) else None
        outages = []
        for h0, cfg in _draw_sets(exp, n):
            groups = shared if shared is not None else jamming_eigenvalues(cfg, tol=exp.group_tol)
            gain = cfg.source_snr * float(np.vdot(h0, h0).real)
            target = exp.target_fraction * np.log2(1.0 + gain)
            chi = (1.0 + gain) / 2.0 ** target - 1.0
            outages.append(outage_probability(cfg, chi, groups=groups))
        rows.append([n, *_mean_stderr(outages)])
    return ["n_helpers", "mean_outage", "stderr"], rows


def validate(exp):
    """Closed form vs Monte Carlo on a log-spaced threshold grid.

    Returns ``(header, rows, failures)`` where failures lists the thresholds
    whose discrepancy exceeds three standard errors.
    """
    cfg = exp.system()
    if not exp.isotropic(exp.helper_count):
        draw = draw_channels(cfg, RandomStream(exp.seed, 0), exp.legit_variance)
        cfg = cfg.with_helper_channels(draw.h_k)
    chi_eps = critical_chi(cfg, tol=exp.group_tol)
    grid = np.geomspace(chi_eps / 20.0, 2.0 * chi_eps, exp.validate_points)
    rows, failures = [], []
    for i, chi in enumerate(grid):
        closed = outage_probability(cfg, chi, tol=exp.group_tol)
        est = estimate_outage(cfg, chi, exp.trials, RandomStream(exp.seed, 1000 + i),
                              workers=exp.workers)
        # floor keeps the score finite when no hit or every trial hit
        se = max(est.std_error, 1.0 / exp.trials)
        score = abs(closed - est.mean) / se
        rows.append([chi, closed, est.mean, est.std_error, score])
        if score > 3.0:
            failures.append(chi)
    header = ["chi", "closed_form", "mc_mean", "mc_stderr", "abs_diff_over_stderr"]
    return header, rows, failures


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nulljam",
        description="Outage-constrained secrecy rates with null-space cooperative jamming.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("solve", "critical threshold and optimal rate for one channel"),
                        ("sweep-helpers", "mean optimal secrecy rate vs number of helpers"),
                        ("outage-vs-helpers", "mean outage at a target rate vs number of helpers"),
                        ("validate", "closed-form outage vs Monte Carlo")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="path to a key = value config file")
        p.add_argument("--seed", type=int, help="override mc.seed")
        p.add_argument("--trials", type=int, help="override mc.trials")
        p.add_argument("--output", default="stdout", help="CSV destination (default stdout)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        exp = load_config(args.config)
        if args.seed is not None:
            if not 0 <= args.seed < 2 ** 64:
                raise ConfigError("--seed", "must be an unsigned 64-bit integer")
            exp.seed = args.seed
        if args.trials is not None:
            if args.trials < 1:
                raise ConfigError("--trials", "must be >= 1")
            exp.trials = args.trials
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    failures = []
    if args.command == "solve":
        header, rows = solve(exp)
    elif args.command == "sweep-helpers":
        header, rows = sweep_helpers(exp)
    elif args.command == "outage-vs-helpers":
        header, rows = outage_vs_helpers(exp)
    else:
        header, rows, failures = validate(exp)

    if args.output in ("-", "stdout"):
        write_csv(header, rows, sys.stdout)
    else:
        with open(args.output, "w", newline="") as fh:
            write_csv(header, rows, fh)

    if failures:
        print(f"validation failed at chi={fmt(failures[0])}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
