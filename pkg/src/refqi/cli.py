"""Command-line driver: ``refqi <subcommand> [options]``.

Exit codes: 0 on success, 2 for configuration errors, 3 for computation
errors (including rank tables where some indicator column failed, unless
``--allow-partial`` is given).
"""

from __future__ import annotations

import argparse
import sys
import warnings
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from refqi.analysis import INDICATORS, consistency_sweep, evaluate_indicators, rank_table
from refqi.fronts import sample_front, synth_sets, zdt3_segments
from refqi.io import (
    PRESETS,
    ConfigError,
    ExperimentConfig,
    build_config,
    format_number,
    format_point_set,
    load_point_set,
)
from refqi.roi import build_roi

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3


class PartialResult(Exception):
    """Raised after writing output in which some columns could not be computed."""


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _names(text: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in text.split(",") if tok.strip())


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("experiment settings (override preset and config file)")
    g.add_argument("--preset", choices=sorted(PRESETS), help="named experiment setup")
    g.add_argument("--config", type=Path, help="flat 'key = value' config file")
    g.add_argument("--problem", help="DTLZ1, DTLZ2, convDTLZ2, ZDT3 or ZDT3-normalized")
    g.add_argument("--m", type=int, help="number of objectives")
    g.add_argument("--z", type=_floats, help="reference point, e.g. '0.5,0.5'")
    g.add_argument("--w", type=_floats, help="weight vector summing to 1")
    g.add_argument("--zeta", type=float, help="ROI radius")
    g.add_argument("--r", type=float, help="preferred-region radius used by the indicators")
    g.add_argument("--rho", type=float, help="AASF augmentation coefficient")
    g.add_argument("--z-w-offset", dest="z_w_offset", type=float,
                   help="R-metric worst point is z + offset times the unit diagonal")
    g.add_argument("--hv-ref", dest="hv_ref", type=_floats, help="HV-reference point")
    g.add_argument("--pmod-alpha", dest="pmod_alpha", type=float)
    g.add_argument("--pmda-alpha", dest="pmda_alpha", type=float)
    g.add_argument("--pmda-gamma", dest="pmda_gamma", type=float)
    g.add_argument("--rmetric-trim-from-set", dest="rmetric_trim_from_set",
                   action="store_true", default=None,
                   help="trim the R-metric reference set around each set's best point")
    g.add_argument("--n-sample", dest="n_sample", type=int, help="front sample size")
    g.add_argument("--layout", help="synthetic layout for rank/compute/synth")
    g.add_argument("--indicators", type=_names, help="comma-separated indicator names")
    g.add_argument("--sweep", choices=("line", "rect"))
    g.add_argument("--sweep-start", dest="sweep_start", type=_floats)
    g.add_argument("--sweep-stop", dest="sweep_stop", type=_floats)
    g.add_argument("--sweep-step", dest="sweep_step", type=float)
    g.add_argument("--sweep-sample", dest="sweep_sample", type=int,
                   help="front points ranked in a consistency sweep")
    g.add_argument("-o", "--out", help="output file (default: standard output)")
    g.add_argument("--values-out", dest="values_out", help="rank: also write indicator values here")


_CONFIG_KEYS = (
    "problem", "m", "z", "w", "zeta", "r", "rho", "z_w_offset", "hv_ref", "pmod_alpha",
    "pmda_alpha", "pmda_gamma", "rmetric_trim_from_set", "n_sample", "layout", "indicators",
    "sweep", "sweep_start", "sweep_stop", "sweep_step", "sweep_sample", "out", "values_out",
)


def _config(args: argparse.Namespace) -> ExperimentConfig:
    text = args.config.read_text() if args.config else None
    overrides = {k: getattr(args, k) for k in _CONFIG_KEYS if getattr(args, k, None) is not None}
    cfg = build_config(args.preset, text, overrides,
                       source=str(args.config) if args.config else "<config>")
    if cfg.w is not None and min(cfg.w) == 0:
        warnings.warn("a weight is zero: ASF order preservation no longer holds and ROI-A "
                      "based indicators will fail", stacklevel=2)
    return cfg


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _header(cfg: ExperimentConfig) -> list[str]:
    z = ", ".join(format_number(v) for v in cfg.z)
    return [f"# problem = {cfg.problem}", f"# z = {z}"]


def _sets(cfg: ExperimentConfig, files: Sequence[str]) -> tuple[list[np.ndarray], list[str]]:
    if files:
        return [load_point_set(f, cfg.m) for f in files], [Path(f).stem for f in files]
    if cfg.layout is None:
        raise ConfigError("give point-set files or a layout (--layout or a preset)")
    sets = synth_sets(cfg.model(), cfg.layout)
    return sets, [f"P{i + 1}" for i in range(len(sets))]


def _table(names: list[str], columns: list[str], cells: dict[str, list[str]],
           header: list[str]) -> str:
    lines = header + ["\t".join(["set", *columns])]
    for i, name in enumerate(names):
        lines.append("\t".join([name, *(cells[c][i] for c in columns)]))
    return "\n".join(lines) + "\n"


def cmd_rank(args: argparse.Namespace) -> int:
    cfg = _config(args)
    sets, names = _sets(cfg, args.sets)
    table = rank_table(sets, cfg.context(), cfg.indicators)
    header = _header(cfg) + [f"# error {k}: {v}" for k, v in table.errors.items()]
    cols = list(cfg.indicators)
    ranks = {c: ["NA"] * len(sets) if table.ranks[c] is None else [str(int(v)) for v in table.ranks[c]]
             for c in cols}
    _emit(_table(names, cols, ranks, header), cfg.out)
    if cfg.values_out:
        vals = {c: ["NA"] * len(sets) if table.values[c] is None
                else [format_number(v) for v in table.values[c]] for c in cols}
        _emit(_table(names, cols, vals, header), cfg.values_out)
    if table.errors and not args.allow_partial:
        raise PartialResult(f"{len(table.errors)} indicator(s) failed: {', '.join(table.errors)}")
    return EXIT_OK


def cmd_compute(args: argparse.Namespace) -> int:
    cfg = _config(args)
    sets, names = _sets(cfg, args.sets)
    values, errors = evaluate_indicators(sets, cfg.context(), [args.indicator])
    if errors:
        raise ValueError(errors[args.indicator])
    cells = {args.indicator: [format_number(v) for v in values[args.indicator]]}
    _emit(_table(names, [args.indicator], cells, _header(cfg)), cfg.out)
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if cfg.layout is None:
        raise ConfigError("synth needs a layout (--layout or a preset)")
    sets = synth_sets(cfg.model(), cfg.layout)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, P in enumerate(sets, start=1):
            (out / f"P{i:02d}.txt").write_text(format_point_set(P, [f"P{i} of {cfg.layout}"]))
    else:
        _emit("".join(format_point_set(P, [f"P{i}"]) for i, P in enumerate(sets, start=1)), cfg.out)
    return EXIT_OK


def cmd_front(args: argparse.Namespace) -> int:
    cfg = _config(args)
    model = cfg.model()
    if args.what == "ideal-nadir":
        text = format_point_set(np.vstack([model.ideal, model.nadir]), ["ideal", "nadir"])
    else:
        text = format_point_set(sample_front(model, cfg.n_sample),
                                [f"{cfg.n_sample} points on {cfg.problem}"])
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_roi(args: argparse.Namespace) -> int:
    cfg = _config(args)
    spec = cfg.spec()
    sample = cfg.front_sample()
    roi = build_roi(sample, spec, args.kind, radius=args.radius)
    header = [f"ROI-{args.kind}: {int(roi.mask.sum())} of {sample.shape[0]} sample points"]
    if roi.center is not None:
        header.append("center = " + ", ".join(format_number(v) for v in roi.center)
                      + f" (sample index {roi.center_index + 1})")
    if args.mask:
        text = "".join(f"# {h}\n" for h in header) + "\n".join(str(int(b)) for b in roi.mask) + "\n"
    else:
        text = format_point_set(roi.members, header) if roi.members.size else \
            "".join(f"# {h}\n" for h in header)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_consistency(args: argparse.Namespace) -> int:
    cfg = _config(args)
    sample = sample_front(cfg.model(), cfg.sweep_sample)
    result = consistency_sweep(sample, cfg.z_grid(), cfg.spec())
    lines = [f"# problem = {cfg.problem}, {cfg.sweep} sweep, {cfg.sweep_sample} front points",
             "\t".join([f"z{k + 1}" for k in range(cfg.m)] + ["tau"])]
    for z, tau in zip(result.z, result.tau):
        lines.append("\t".join([format_number(v) for v in z] + [format_number(tau)]))
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def cmd_segments(args: argparse.Namespace) -> int:
    segs = zdt3_segments(args.n_dense)
    lines = ["# ZDT3 Pareto-optimal f1 intervals", "start\tstop"]
    lines += [f"{format_number(a)}\t{format_number(b)}" for a, b in segs]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refqi",
        description="Preference-based quality indicators for reference-point optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank point sets by every selected indicator")
    p.add_argument("sets", nargs="*", help="point-set files (default: the layout's sets)")
    p.add_argument("--allow-partial", action="store_true",
                   help="exit 0 even when some indicator column failed")
    _add_config_flags(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("compute", help="evaluate one indicator on one or more point sets")
    p.add_argument("indicator", choices=INDICATORS)
    p.add_argument("sets", nargs="*", help="point-set files (default: the layout's sets)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("synth", help="write the synthetic point sets of a layout")
    p.add_argument("--out-dir", dest="out_dir", help="write one file per set into this directory")
    _add_config_flags(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("front", help="write a front sample or the ideal and nadir points")
    p.add_argument("--what", choices=("sample", "ideal-nadir"), default="sample")
    _add_config_flags(p)
    p.set_defaults(func=cmd_front)

    p = sub.add_parser("roi", help="write the ROI members of the front sample")
    p.add_argument("--kind", choices=("C", "A", "P"), default="C")
    p.add_argument("--radius", type=float, help="ball radius for kinds C and A (default: zeta)")
    p.add_argument("--mask", action="store_true", help="write a 0/1 membership column instead")
    _add_config_flags(p)
    p.set_defaults(func=cmd_roi)

    p = sub.add_parser("consistency", help="Kendall tau between distance and ASF over a z grid")
    _add_config_flags(p)
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("segments", help="write the five ZDT3 front intervals")
    p.add_argument("--n-dense", dest="n_dense", type=int, default=200_001)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_segments)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"refqi: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PartialResult as exc:
        print(f"refqi: partial result: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ValueError, OSError) as exc:
        print(f"refqi: error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
