# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: main
    Author: czh
    Create Date: 2021/10/19
--------------------------------------
    Change Activity:
        2021/10/27: gen and compare commands
======================================
"""
import logging
import math
import sys
import time
from pathlib import Path

import numpy as np
import pandas as pd
from tensorboardX import SummaryWriter

from WeakDMD.bench.oracle import exact_basis_oracle
from WeakDMD.bench.problems import NoiseSpec, add_noise, get_problem, parse_grid, sample_trajectory
from WeakDMD.bench.sweep import compare_with_exact_dmd, convergence_sweep, sweep_table
from WeakDMD.core.errors import ConfigError, GridMismatch, WeakDmdError
from WeakDMD.core.types import SnapshotSet, TimeGrid
from WeakDMD.metrics.metric import forecast_error, mean_forecast_error
from WeakDMD.models.wdmd import fit, forecast
from WeakDMD.utils.common import init_logger, json_to_file, logger, print_config, seed_everything
from WeakDMD.utils.data_loader import (load_snapshots_csv, modes_frame, snapshots_frame, spectrum_frame,
                                       write_csv)
from experiments.config import RunConfig, build_parser, float_list, get_argparse, int_list, parse_window


def prepare(args):
    config = RunConfig.from_args(args)
    output_dir = Path(config.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    time_ = time.strftime("%Y-%m-%d-%H:%M:%S", time.localtime())
    init_logger(log_file=output_dir / f"{args.command}-{time_}.log",
                level=logging.DEBUG if args.verbose else logging.INFO)
    seed_everything(config.seed)
    print_config(config.to_dict())
    return config, output_dir


def fit_from_args(args, config):
    snapshots = load_snapshots_csv(args.input, layout=args.layout)
    window = config.window or snapshots.full_window()
    trial_layout, test_layout = config.layouts(window)
    model = fit(snapshots, trial_layout, test_layout, window=window, energy=config.energy,
                energy_squared=config.energy_squared, rcond=config.rcond, n_nodes=config.quad_nodes)
    return snapshots, model


def forecast_from_window_end(model, config, steps=None):
    """
    Forecast from the reconstruction at t2; returns (times, M x steps states)
    """
    steps = config.forecast["steps"] if steps is None else steps
    dt = config.forecast["dt"]
    y_start = model.reconstruct(model.window.t2)
    states = forecast(model, y_start, dt, steps, space=config.forecast["space"])
    times = model.window.t2 + dt * np.arange(1, steps + 1)
    return times, states


def do_fit(args):
    config, output_dir = prepare(args)
    _, model = fit_from_args(args, config)
    write_csv(spectrum_frame(model.spectrum), output_dir / "spectrum.csv")
    write_csv(modes_frame(model.modes), output_dir / "modes.csv")
    json_to_file(output_dir / "model_summary.json", model.summary())
    logger.info("***** Fit results *****")
    for index, re, im in model.spectrum.to_rows():
        logger.info("  lambda_%d = %.10g %+.10gi", index + 1, re, im)


def do_eigs(args):
    config, output_dir = prepare(args)
    _, model = fit_from_args(args, config)
    frame = spectrum_frame(model.spectrum)
    write_csv(frame, output_dir / "spectrum.csv")
    print(frame.to_csv(index=False, float_format="%.17g"), end="")


def do_reconstruct(args):
    config, output_dir = prepare(args)
    _, model = fit_from_args(args, config)
    if args.points < 2:
        raise ConfigError(f"--points must be at least 2, got {args.points}")
    t = np.linspace(model.window.t1, model.window.t2, args.points)
    frames = [snapshots_frame(t, model.reconstruct(t), kind="reconstruction")]
    if args.extrapolate is not None:
        if args.extrapolate <= model.window.t2:
            raise ConfigError(f"--extrapolate {args.extrapolate} must exceed the window end {model.window.t2}")
        steps = int(math.ceil((args.extrapolate - model.window.t2) / config.forecast["dt"]))
        times, states = forecast_from_window_end(model, config, steps=steps)
        frames.append(snapshots_frame(times, np.real(states), kind="forecast"))
    write_csv(pd.concat(frames, ignore_index=True), output_dir / "reconstruction.csv")


def _truth_on(times, path, layout):
    reference = load_snapshots_csv(path, layout=layout)
    if times[0] < reference.grid.start or times[-1] > reference.grid.end:
        raise GridMismatch(f"forecast times [{times[0]}, {times[-1]}] leave the truth range "
                           f"[{reference.grid.start}, {reference.grid.end}]")
    values = np.vstack([np.interp(times, reference.t, row) for row in reference.x])
    return SnapshotSet(TimeGrid(times), values)


def do_forecast(args):
    config, output_dir = prepare(args)
    _, model = fit_from_args(args, config)
    times, states = forecast_from_window_end(model, config)
    states = np.real(states)
    write_csv(snapshots_frame(times, states), output_dir / "forecast.csv")
    if args.truth:
        truth = _truth_on(times, args.truth, args.layout)
        errors = forecast_error(truth, SnapshotSet(truth.grid, states))
        start, stop = 0, None
        if args.error_range:
            bounds = args.error_range.split(":")
            try:
                start, stop = int(bounds[0]), int(bounds[1]) if len(bounds) > 1 and bounds[1] else None
            except ValueError:
                raise ConfigError(f"--error-range must look like START:STOP, got {args.error_range!r}")
        try:
            mean = mean_forecast_error(errors, start, stop)
        except IndexError as e:
            raise ConfigError(str(e))
        write_csv(pd.DataFrame({"t": times, "error": errors}), output_dir / "forecast_error.csv")
        json_to_file(output_dir / "forecast_error_summary.json",
                     {"start": start, "stop": stop, "mean_error": mean})
        logger.info("mean forecast error over steps [%s, %s): %.6g", start, stop, mean)


def do_sweep(args):
    config, output_dir = prepare(args)
    snapshots = load_snapshots_csv(args.input, layout=args.layout)
    window = config.window or snapshots.full_window()
    trial_layout, _ = config.layouts(window)
    truth = get_problem(args.truth_problem).spectrum() if args.truth_problem else None
    writer = SummaryWriter(args.log_dir, comment='Sweep') if args.log_dir else None
    try:
        rows = convergence_sweep(snapshots, trial_layout, int_list(args.test_sizes),
                                 window=window, energy=config.energy, truth=truth,
                                 test_overlap=config.test["overlaps"][0], test_p=config.test["p"], writer=writer,
                                 energy_squared=config.energy_squared, rcond=config.rcond,
                                 n_nodes=config.quad_nodes)
    finally:
        if writer is not None:
            writer.close()
    write_csv(sweep_table(rows), output_dir / "sweep.csv")


def do_oracle(args):
    config, output_dir = prepare(args)
    records = []
    for t2 in float_list(args.t2):
        spectrum = exact_basis_oracle(t2, t1=args.t1)
        records.extend((t2, index, re, im) for index, re, im in spectrum.to_rows())
    frame = pd.DataFrame.from_records(records, columns=["t2", "index", "re", "im"])
    write_csv(frame, output_dir / "oracle.csv")
    print(frame.to_csv(index=False, float_format="%.17g"), end="")


def _problem_data(args, config):
    spec = get_problem(args.problem)
    span = parse_window(args.span)
    grid = parse_grid(args.grid, span.t1, span.t2, seed=config.seed)
    noise = NoiseSpec(args.sigma, args.relative_magnitude, config.seed, args.noise_mode)
    return spec, span, grid, noise


def do_gen(args):
    config, output_dir = prepare(args)
    spec, _, grid, noise = _problem_data(args, config)
    clean = sample_trajectory(spec, grid)
    if noise.sigma > 0:
        write_csv(snapshots_frame(clean.t, clean.x), output_dir / "clean.csv")
        noisy = add_noise(clean, noise)
        write_csv(snapshots_frame(noisy.t, noisy.x), output_dir / "snapshots.csv")
    else:
        write_csv(snapshots_frame(clean.t, clean.x), output_dir / "snapshots.csv")


def do_compare(args):
    config, output_dir = prepare(args)
    spec, span, grid, noise = _problem_data(args, config)
    window = config.window or span
    trial_layout, test_layout = config.layouts(window)
    seeds = range(config.seed, config.seed + args.seeds)
    result = compare_with_exact_dmd(spec, grid, noise, seeds, trial_layout, test_layout, energy=config.energy,
                                    rank=args.rank, energy_squared=config.energy_squared, rcond=config.rcond,
                                    n_nodes=config.quad_nodes)
    write_csv(result.table, output_dir / "compare.csv")
    json_to_file(output_dir / "compare_summary.json",
                 {"weak_median": result.weak_median, "exact_median": result.exact_median,
                  "seeds": len(result.table)})


COMMAND_HANDLERS = {
    "fit": do_fit,
    "eigs": do_eigs,
    "reconstruct": do_reconstruct,
    "forecast": do_forecast,
    "sweep": do_sweep,
    "oracle": do_oracle,
    "gen": do_gen,
    "compare": do_compare,
}


def run_command(argv=None):
    """
    Run one command and return its exit code: 0 on success, 1 on a domain error (one
    line `error: <category>: <message>` on stderr), 2 on a usage error.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        build_parser().print_usage(sys.stderr)
        return 2
    try:
        args = get_argparse(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    if args.command is None:
        build_parser().print_usage(sys.stderr)
        return 2
    try:
        COMMAND_HANDLERS[args.command](args)
    except WeakDmdError as e:
        message = " ".join(str(e).split())
        print(f"error: {e.category}: {message}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"error: FileNotFound: {e.filename or e}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
