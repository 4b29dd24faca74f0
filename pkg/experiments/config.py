# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: config
    Author: czh
    Create Date: 2021/10/19
--------------------------------------
    Change Activity:
        2021/10/27: dotted key/value config file
======================================
"""
import argparse
import copy
import json
from pathlib import Path

from WeakDMD.basis.bump import BasisLayout, OVERLAP_MODES
from WeakDMD.core.errors import ConfigError, InvalidWindow
from WeakDMD.core.types import Window
from WeakDMD.utils.data_loader import LAYOUTS


def int_list(text):
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"expected a comma separated list of integers, got {text!r}")


def float_list(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"expected a comma separated list of numbers, got {text!r}")


def _bool(text):
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


def _number(kind):
    def parse(text):
        try:
            return kind(text)
        except ValueError:
            raise ConfigError(f"expected {kind.__name__}, got {text!r}")
    return parse


def parse_window(text):
    try:
        return Window.parse(str(text))
    except InvalidWindow as e:
        raise ConfigError(str(e))


# dotted key -> parser
CONFIG_KEYS = {
    "window": parse_window,
    "trial.counts": int_list,
    "trial.overlaps": float_list,
    "trial.p": _number(int),
    "test.counts": int_list,
    "test.overlaps": float_list,
    "test.p": _number(int),
    "energy": _number(float),
    "energy_squared": _bool,
    "overlap_mode": str,
    "rcond": _number(float),
    "quad_nodes": _number(int),
    "forecast.dt": _number(float),
    "forecast.steps": _number(int),
    "forecast.space": str,
    "seed": _number(int),
    "output_dir": str,
}


class RunConfig(object):
    """
    Resolved run configuration: defaults < config file < command-line flags
    """

    def __init__(self):
        self.window = None
        self.trial = {"counts": [40], "overlaps": [1.2], "p": 3}
        self.test = {"counts": [20], "overlaps": [1.2], "p": 3}
        self.energy = 0.99999
        self.energy_squared = False
        self.overlap_mode = "spacing"
        self.rcond = 1e-10
        self.quad_nodes = 0
        self.forecast = {"dt": 0.01, "steps": 100, "space": "reduced"}
        self.seed = 42
        self.output_dir = "output"

    def __repr__(self):
        return str(self.to_json_string())

    def to_dict(self):
        output = copy.deepcopy(self.__dict__)
        output["window"] = None if self.window is None else f"{self.window.t1}:{self.window.t2}"
        return output

    def to_json_string(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def set(self, key, value):
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown configuration key {key!r}")
        value = CONFIG_KEYS[key](value) if isinstance(value, str) else value
        if "." in key:
            group, name = key.split(".", 1)
            getattr(self, group)[name] = value
        else:
            setattr(self, key, value)

    def load_file(self, path):
        """
        key = value per line, # starts a comment
        """
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(str(path))
        with open(str(path), "r") as fr:
            for lineno, line in enumerate(fr, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
                try:
                    self.set(key.strip(), value.strip())
                except ConfigError as e:
                    raise ConfigError(f"{path}:{lineno}: {e}")
        return self

    def validate(self):
        if self.overlap_mode not in OVERLAP_MODES:
            raise ConfigError(f"overlap_mode must be one of {OVERLAP_MODES}, got {self.overlap_mode!r}")
        if self.forecast["space"] not in ("reduced", "full"):
            raise ConfigError(f"forecast.space must be reduced or full, got {self.forecast['space']!r}")
        if not 0.0 < self.energy <= 1.0:
            raise ConfigError(f"energy must lie in (0, 1], got {self.energy}")
        if self.forecast["dt"] <= 0 or self.forecast["steps"] < 1:
            raise ConfigError("forecast.dt must be positive and forecast.steps at least 1")
        return self

    def layouts(self, window):
        trial = BasisLayout(self.trial["counts"], self.trial["overlaps"], self.trial["p"], window, self.overlap_mode)
        test = BasisLayout(self.test["counts"], self.test["overlaps"], self.test["p"], window, self.overlap_mode)
        return trial, test

    @classmethod
    def from_args(cls, args):
        config = cls()
        if getattr(args, "config", None):
            config.load_file(args.config)
        flags = {
            "window": args.window,
            "energy": args.energy,
            "energy_squared": True if args.energy_squared else None,
            "trial.counts": args.trial_counts,
            "test.counts": args.test_counts,
            "trial.p": args.p,
            "test.p": args.p,
            "trial.overlaps": args.trial_overlaps or args.overlaps,
            "test.overlaps": args.test_overlaps or args.overlaps,
            "overlap_mode": args.overlap_mode,
            "rcond": args.rcond,
            "quad_nodes": args.quad_nodes,
            "forecast.dt": getattr(args, "dt", None),
            "forecast.steps": getattr(args, "steps", None),
            "forecast.space": getattr(args, "space", None),
            "seed": args.seed,
            "output_dir": args.output,
        }
        for key, value in flags.items():
            if value is not None:
                config.set(key, value)
        return config.validate()


def _shared_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=str, default=None, help="key = value configuration file")
    parser.add_argument("--window", type=str, default=None, help="time window T1:T2")
    parser.add_argument("--energy", type=float, default=None, help="singular-value energy kept in (0, 1]")
    parser.add_argument("--energy-squared", action="store_true",
                        help="measure energy with squared singular values")
    parser.add_argument("--p", type=int, default=None, help="bump exponent for trial and test bases")
    parser.add_argument("--trial-counts", type=str, default=None, help="trial tier counts, e.g. 40 or 20,40")
    parser.add_argument("--test-counts", type=str, default=None, help="test tier counts")
    parser.add_argument("--overlaps", type=str, default=None, help="overlap fractions for both bases")
    parser.add_argument("--trial-overlaps", type=str, default=None)
    parser.add_argument("--test-overlaps", type=str, default=None)
    parser.add_argument("--overlap-mode", type=str, default=None, choices=OVERLAP_MODES)
    parser.add_argument("--rcond", type=float, default=None, help="relative cutoff of the Gram pseudo-inverse")
    parser.add_argument("--quad-nodes", type=int, default=None, help="Gauss-Legendre nodes, 0 = exact minimum")
    parser.add_argument("--seed", type=int, default=None, help="random seed")
    parser.add_argument("--layout", type=str, default="time-rows", choices=LAYOUTS, help="input CSV layout")
    parser.add_argument("--output", type=str, default=None, help="output directory")
    parser.add_argument("--log-dir", type=str, default=None, help="tensorboard summary directory")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    return parser


def build_parser():
    shared = _shared_parser()
    parser = argparse.ArgumentParser(prog="weak-dmd", description="weak-form dynamic mode decomposition")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    for name, help_text in (("fit", "fit a model, write spectrum, modes and summary"),
                            ("eigs", "fit a model and write the spectrum only")):
        sub = commands.add_parser(name, parents=[shared], help=help_text)
        sub.add_argument("input", type=str, help="snapshot CSV")

    sub = commands.add_parser("reconstruct", parents=[shared], help="dense reconstruction inside the window")
    sub.add_argument("input", type=str)
    sub.add_argument("--points", type=int, default=1000, help="reconstruction points inside the window")
    sub.add_argument("--extrapolate", type=float, default=None, help="append forecast rows up to this time")

    sub = commands.add_parser("forecast", parents=[shared], help="implicit Euler forecast from the window end")
    sub.add_argument("input", type=str)
    sub.add_argument("--dt", type=float, default=None)
    sub.add_argument("--steps", type=int, default=None)
    sub.add_argument("--space", type=str, default=None, choices=("reduced", "full"))
    sub.add_argument("--truth", type=str, default=None, help="reference CSV for the forecast error")
    sub.add_argument("--error-range", type=str, default=None, help="START:STOP step indices averaged")

    sub = commands.add_parser("sweep", parents=[shared], help="convergence sweep over test-space sizes")
    sub.add_argument("input", type=str)
    sub.add_argument("--test-sizes", type=str, required=True, help="increasing test counts, e.g. 8,16,32")
    sub.add_argument("--truth-problem", type=str, default=None, help="problem whose spectrum scores the sweep")

    sub = commands.add_parser("oracle", parents=[shared], help="exact-basis eigenvalues of the toy oscillator")
    sub.add_argument("--t2", type=str, default="1,5,20,100", help="window ends")
    sub.add_argument("--t1", type=float, default=0.0)

    for name, help_text, grid, span, sigma in (
            ("gen", "sample a synthetic problem to CSV", "nonuniform:2000", "0:10", 0.0),
            ("compare", "weak-DMD against exact DMD over noisy seeds", "uniform:4001", "0:20", 0.2)):
        sub = commands.add_parser(name, parents=[shared], help=help_text)
        sub.add_argument("--problem", type=str, default="toy", help="toy, supercritical or subcritical")
        sub.add_argument("--grid", type=str, default=grid, help="uniform:N, nonuniform:N or random:N")
        sub.add_argument("--span", type=str, default=span, help="sampled time range T0:T1")
        sub.add_argument("--sigma", type=float, default=sigma)
        sub.add_argument("--relative-magnitude", type=float, default=0.15)
        sub.add_argument("--noise-mode", type=str, default="relative", choices=("relative", "absolute"))
    sub.add_argument("--seeds", type=int, default=20, help="number of seeds starting at --seed")
    sub.add_argument("--rank", type=int, default=None, help="exact-DMD rank, defaults to M")
    return parser


def get_argparse(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args
