"""
Command-line front end.

    narrowband spectrum --model tls --gamma 0.1 --gamma-prime 0.1 --min -1 --max 1 --points 5
    narrowband analyze  --model lambda --gamma 0.1 --gamma-prime 0.1 --rabi 2 --delta-control 5
    narrowband verify
    narrowband figure fig4 --out ./out
    narrowband design --target-center -10.099 --target-fwhm 3.9e-3 --gamma 1 --vg 10 --gamma-prime 0.1

Parameter flags may also come from ``--config FILE`` (``key = value`` lines,
keys spelled like the flags); explicit flags win.  ``figure`` writes to
``$NARROWBAND_OUTPUT_DIR`` when ``--out`` is omitted.

Exit codes: 0 success, 1 usage or domain error, 2 verification failure.
"""

import argparse
import json
import os
import sys
from functools import partial

from . import __version__
from .analysis import dip_report, effective_model, lambda_peaks, locate_peaks, narrow_peak, sample_spectrum
from .design import design_control_field
from .errors import NarrowbandError
from .figures import PRESETS, atomic_write_text, curve_csv, render_figure
from .model import LambdaParams, TwoLevelParams, lls_reflection, tls_reflection
from .verify import run_battery

OUTPUT_ENV = "NARROWBAND_OUTPUT_DIR"

PARAM_FLAGS = ("gamma", "gamma-prime", "gamma2", "rabi", "delta-control", "vg", "omega1")
GRID_FLAGS = ("min", "max", "points")
REQUIRED = {"tls": ("gamma",), "lambda": ("gamma", "rabi", "delta-control")}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def read_config(path):
    """Parse ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    values = {}
    with open(path) as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.replace("_", "-")] = value
    return values


def _add_params(p, model=True, grid=True):
    if model:
        p.add_argument("--model", choices=("tls", "lambda"))
    for flag in PARAM_FLAGS:
        p.add_argument(f"--{flag}", metavar="X")
    if grid:
        p.add_argument("--min", metavar="X", help="lower detuning (Delta for tls, x for lambda)")
        p.add_argument("--max", metavar="X", help="upper detuning")
        p.add_argument("--points", metavar="N")
    p.add_argument("--config", metavar="FILE", help="key = value defaults")
    p.add_argument("--out", metavar="PATH")


def build_parser():
    parser = _Parser(prog="narrowband", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_params(sub.add_parser("spectrum", help="write a reflection spectrum as CSV"))
    _add_params(sub.add_parser("analyze", help="JSON report of peaks, dip and effective model"))
    sub.add_parser("verify", help="run the oracle and flux battery")
    fig = sub.add_parser("figure", help="write the datasets of a standard figure")
    fig.add_argument("id", choices=sorted(PRESETS))
    fig.add_argument("--out", metavar="DIR")
    fig.add_argument("--points", metavar="N")
    fig.add_argument("--min", metavar="X")
    fig.add_argument("--max", metavar="X")
    des = sub.add_parser("design", help="find (delta, rabi) for a target narrow line")
    des.add_argument("--target-center", metavar="X")
    des.add_argument("--target-fwhm", metavar="W")
    _add_params(des, model=False, grid=False)
    return parser


def _collect(args, names):
    """Raw strings for ``names`` from flags, falling back to the config file."""
    config = read_config(args.config) if getattr(args, "config", None) else {}
    raw = {}
    for name in names:
        value = getattr(args, name.replace("-", "_"), None)
        if value is None:
            value = config.get(name)
        if value is not None:
            raw[name] = value
    return raw, config


def _float(raw, name, default=None):
    if name not in raw:
        if default is None:
            raise UsageError(f"missing --{name}")
        return default
    try:
        return float(raw[name])
    except ValueError:
        raise UsageError(f"--{name}: not a number: {raw[name]!r}") from None


def _params(model, raw):
    missing = [f for f in REQUIRED[model] if f not in raw]
    if missing:
        raise UsageError(f"model {model!r} needs " + ", ".join(f"--{f}" for f in missing))
    if model == "tls":
        return TwoLevelParams(gamma=_float(raw, "gamma"),
                              gamma_prime=_float(raw, "gamma-prime", 0.0),
                              omega1=_float(raw, "omega1", 0.0))
    return LambdaParams(coupling=_float(raw, "gamma"), v_g=_float(raw, "vg", 1.0),
                        omega1=_float(raw, "omega1", 0.0), delta=_float(raw, "delta-control"),
                        rabi=_float(raw, "rabi"), gamma_prime=_float(raw, "gamma-prime", 0.0),
                        gamma2=_float(raw, "gamma2", 0.0))


def _model_and_params(args):
    raw, config = _collect(args, PARAM_FLAGS + GRID_FLAGS)
    model = args.model or config.get("model")
    if model not in REQUIRED:
        raise UsageError("--model must be 'tls' or 'lambda'")
    return model, _params(model, raw), raw


def _emit(text, out):
    if out:
        atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def _default_range(model, params):
    if model == "tls":
        w = params.gamma + params.gamma_prime
        return -5 * w, 5 * w
    peaks = lambda_peaks(params)
    lo = min(p.center - 5 * p.fwhm for p in peaks)
    hi = max(p.center + 5 * p.fwhm for p in peaks)
    return lo, hi


def cmd_spectrum(args):
    model, params, raw = _model_and_params(args)
    if {"min", "max"} <= raw.keys():
        lo, hi = _float(raw, "min"), _float(raw, "max")
    else:
        lo, hi = _default_range(model, params)
        lo, hi = _float(raw, "min", lo), _float(raw, "max", hi)
    points = int(_float(raw, "points", 401))
    if model == "tls":
        grid = sample_spectrum(partial(tls_reflection, params), lo, hi, points, axis="delta")
        f_c = 0.0
    else:
        grid = sample_spectrum(partial(lls_reflection, params), lo, hi, points, axis="x")
        f_c = 0.0 if params.delta == 0 else -narrow_peak(params).center
    gp = params.gamma_prime if params.gamma_prime > 0 else float("nan")
    _emit(curve_csv(grid, f_c, gp), args.out)
    return 0


def cmd_analyze(args):
    model, params, raw = _model_and_params(args)
    report = {"inputs": {"model": model, **raw}}
    if model == "tls":
        lo, hi = _default_range(model, params)
        lo, hi = _float(raw, "min", lo), _float(raw, "max", hi)
        evaluator = partial(tls_reflection, params)
        report["axis"] = "delta"
        report["peaks"] = [p.as_dict() for p in locate_peaks(evaluator, (lo, hi), 256)]
        report["dip"] = None
    else:
        report["axis"] = "x"
        report["peaks"] = [p.as_dict() for p in lambda_peaks(params)]
        report["dip"] = dip_report(params).as_dict() if params.rabi > 0 else None
        if params.delta != 0:
            eff = effective_model(params)
            report["effective_model"] = {
                "stark_shift": eff.stark_shift,
                "predicted_center": eff.predicted_center,
                "predicted_fwhm": eff.predicted_fwhm,
                "validity": eff.validity,
                "error_bound": eff.error_bound,
            }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def cmd_verify(args):
    results = run_battery()
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return 0 if ok else 2


def cmd_figure(args):
    out = args.out or os.environ.get(OUTPUT_ENV)
    if not out:
        raise UsageError(f"give --out or set {OUTPUT_ENV}")
    raw = {k: v for k, v in (("points", args.points), ("min", args.min), ("max", args.max)) if v is not None}
    points = int(_float(raw, "points")) if "points" in raw else None
    window = None
    if "min" in raw or "max" in raw:
        window = (_float(raw, "min"), _float(raw, "max"))
    result = render_figure(args.id, out, points=points, window=window)
    for path in result["csv"]:
        print(path)
    print(result["report"])
    return 0


def cmd_design(args):
    raw, _ = _collect(args, PARAM_FLAGS + ("target-center", "target-fwhm"))
    if "gamma" not in raw:
        raise UsageError("design needs --gamma")
    res = design_control_field(
        _float(raw, "target-center"), _float(raw, "target-fwhm"),
        coupling=_float(raw, "gamma"), v_g=_float(raw, "vg", 1.0),
        gamma_prime=_float(raw, "gamma-prime", 0.0), gamma2=_float(raw, "gamma2", 0.0),
        omega1=_float(raw, "omega1", 0.0),
    )
    report = {
        "inputs": raw,
        "delta": res.delta,
        "rabi": res.rabi,
        "center": res.center,
        "fwhm": res.fwhm,
        "residuals": list(res.residuals),
        "iterations": res.iterations,
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "figure": cmd_figure,
    "design": cmd_design,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return COMMANDS[args.command](args)
    except (UsageError, NarrowbandError, ValueError, KeyError, OSError) as exc:
        print(f"narrowband {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
