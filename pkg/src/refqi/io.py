"""Point-set files, flat key-value experiment configs and named presets.

A point-set file holds one point per line with coordinates separated by
commas and/or whitespace. Blank lines and lines starting with ``#`` are
ignored. Numbers are written with Python's shortest round-trip ``repr`` so
that saving and loading reproduces every coordinate bit for bit.

A config file holds one ``key = value`` pair per line. Vectors are written
as comma-separated numbers and lists of names as comma-separated words.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, fields
from pathlib import Path
from typing import IO

import numpy as np

from refqi.analysis import INDICATORS, line_grid, rect_grid
from refqi.core import ArrayLike, as_point_set
from refqi.fronts import LAYOUTS, FrontModel, _lookup, front_model, sample_front
from refqi.scalarize import PreferenceSpec
from refqi.unary import IndicatorContext

_SEP = re.compile(r"[,\s]+")


class ConfigError(ValueError):
    """Invalid experiment configuration."""


def format_number(x: float) -> str:
    """Shortest decimal string that parses back to exactly ``x``."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def parse_point_set(text: str, m: int | None = None, source: str = "<string>") -> np.ndarray:
    """Parse the point-set text format.

    Raises:
        ValueError: On a malformed number, a row whose length differs from
            the first row (or from ``m``), or a non-finite value. Messages
            carry ``source`` and the 1-based line number.
    """
    rows: list[list[float]] = []
    width = m
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = [tok for tok in _SEP.split(stripped) if tok]
        try:
            row = [float(tok) for tok in tokens]
        except ValueError as exc:
            raise ValueError(f"{source}:{lineno}: cannot parse number ({exc})") from None
        if width is None:
            width = len(row)
        if len(row) != width:
            raise ValueError(f"{source}:{lineno}: expected {width} coordinates, found {len(row)}")
        if not all(math.isfinite(v) for v in row):
            raise ValueError(f"{source}:{lineno}: non-finite coordinate")
        rows.append(row)
    if not rows:
        return np.empty((0, m if m is not None else 2))
    try:
        return as_point_set(rows, m)
    except ValueError as exc:
        raise ValueError(f"{source}: {exc}") from None


def load_point_set(path: str | Path, m: int | None = None) -> np.ndarray:
    """Read a point-set file; an empty file yields a ``(0, m)`` array."""
    path = Path(path)
    return parse_point_set(path.read_text(), m, str(path))


def format_point_set(P: ArrayLike, header: Iterable[str] = ()) -> str:
    """Render ``P`` in the point-set format, optional header lines first as comments."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    lines = [f"# {h}" for h in header]
    lines += [", ".join(format_number(v) for v in row) for row in P]
    return "\n".join(lines) + "\n"


def save_point_set(target: str | Path | IO[str], P: ArrayLike, header: Iterable[str] = ()) -> None:
    """Write ``P`` to a path or an open text stream."""
    text = format_point_set(P, header)
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text)


@dataclass
class ExperimentConfig:
    """Validated parameters of one experiment.

    Every field can be set from a config file, a preset or a CLI flag.
    Optional vector fields left as ``None`` take their documented defaults.
    ``z_w_offset`` places the R-metric worst point at ``z + offset * u``
    with ``u`` the unit diagonal.
    """

    problem: str = "DTLZ2"
    m: int = 2
    z: tuple[float, ...] = (0.5, 0.5)
    w: tuple[float, ...] | None = None
    zeta: float = 0.1
    r: float = 0.1
    rho: float = 1e-6
    z_w_offset: float = 2.0
    hv_ref: tuple[float, ...] | None = None
    pmod_alpha: float = 1.5
    pmda_alpha: float = 0.1
    pmda_gamma: float = 1.0 / math.pi
    rmetric_trim_from_set: bool = False
    n_sample: int = 1000
    layout: str | None = None
    indicators: tuple[str, ...] = INDICATORS
    sweep: str = "line"
    sweep_start: tuple[float, ...] = (-3.0, 3.0)
    sweep_stop: tuple[float, ...] = (3.0, -3.0)
    sweep_step: float = 0.01
    sweep_sample: int = 100
    out: str | None = None
    values_out: str | None = None

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        """Check the config; build the spec and context once to reuse their checks.

        Raises:
            ConfigError: Describing the first invalid setting.
        """
        try:
            _lookup(self.problem)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if len(self.z) != self.m:
            raise ConfigError(f"z has {len(self.z)} entries but m = {self.m}")
        if self.layout is not None and self.layout not in LAYOUTS:
            raise ConfigError(f"unknown layout {self.layout!r}; expected one of {', '.join(LAYOUTS)}")
        bad = [name for name in self.indicators if name not in INDICATORS]
        if bad:
            raise ConfigError(f"unknown indicators {bad}; choose from {', '.join(INDICATORS)}")
        if self.sweep not in ("line", "rect"):
            raise ConfigError(f"sweep must be 'line' or 'rect', got {self.sweep!r}")
        if not self.sweep_step > 0:
            raise ConfigError(f"sweep_step must be positive, got {self.sweep_step!r}")
        if self.n_sample < 2 or self.sweep_sample < 2:
            raise ConfigError("sample sizes must be at least 2")
        if not self.z_w_offset > 0:
            raise ConfigError(f"z_w_offset must be positive, got {self.z_w_offset!r}")
        try:
            front_model(self.problem, self.m)
            self.context(sample=np.eye(self.m))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def spec(self) -> PreferenceSpec:
        z = np.asarray(self.z, dtype=float)
        return PreferenceSpec(
            z=z,
            w=None if self.w is None else np.asarray(self.w, dtype=float),
            rho=self.rho,
            zeta=self.zeta,
            r=self.r,
            z_w=z + self.z_w_offset / math.sqrt(self.m),
        )

    def model(self) -> FrontModel:
        return front_model(self.problem, self.m)

    def front_sample(self) -> np.ndarray:
        return sample_front(self.model(), self.n_sample)

    def context(self, sample: np.ndarray | None = None) -> IndicatorContext:
        """Indicator context over ``sample`` (default: the configured front sample)."""
        model = self.model()
        return IndicatorContext(
            spec=self.spec(),
            front_sample=self.front_sample() if sample is None else sample,
            hv_ref=None if self.hv_ref is None else np.asarray(self.hv_ref, dtype=float),
            ideal=model.ideal,
            nadir=model.nadir,
            pmod_alpha=self.pmod_alpha,
            pmda_alpha=self.pmda_alpha,
            pmda_gamma=self.pmda_gamma,
            rmetric_trim_from_set=self.rmetric_trim_from_set,
        )

    def z_grid(self) -> np.ndarray:
        if self.sweep == "line":
            return line_grid(self.sweep_start, self.sweep_stop, self.sweep_step)
        return rect_grid(self.sweep_start, self.sweep_stop, self.sweep_step)

    def to_text(self) -> str:
        """Render as a config document that :func:`parse_config` reads back unchanged."""
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            lines.append(f"{f.name} = {_render(value)}")
        return "\n".join(lines) + "\n"


def _render(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, tuple):
        return ", ".join(_render(v) for v in value)
    return str(value)


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in _SEP.split(text.strip()) if tok)


def _names(text: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in text.split(",") if tok.strip())


def _boolean(text: str) -> bool:
    key = text.strip().lower()
    if key in ("1", "true", "yes", "on"):
        return True
    if key in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _optional_str(text: str) -> str | None:
    text = text.strip()
    return None if text.lower() in ("", "none") else text


_PARSERS = {
    "problem": str.strip,
    "m": int,
    "z": _floats,
    "w": _floats,
    "zeta": float,
    "r": float,
    "rho": float,
    "z_w_offset": float,
    "hv_ref": _floats,
    "pmod_alpha": float,
    "pmda_alpha": float,
    "pmda_gamma": float,
    "rmetric_trim_from_set": _boolean,
    "n_sample": int,
    "layout": _optional_str,
    "indicators": _names,
    "sweep": str.strip,
    "sweep_start": _floats,
    "sweep_stop": _floats,
    "sweep_step": float,
    "sweep_sample": int,
    "out": _optional_str,
    "values_out": _optional_str,
}


def parse_settings(text: str, source: str = "<config>") -> dict[str, object]:
    """Parse ``key = value`` lines into typed values without validating them together."""
    settings: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            settings[key] = _PARSERS[key](raw)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {exc}") from None
    return settings


# Named experiment setups. Values are config text so presets and files share one parser.
PRESETS: dict[str, str] = {
    "table2a": "problem = DTLZ2\nz = 0.5, 0.5\nlayout = two-objective-10\n",
    "table2b": "problem = DTLZ2\nz = -0.1, -0.1\nlayout = two-objective-10\n",
    "table2a-dtlz1": "problem = DTLZ1\nz = 0.5, 0.5\nlayout = two-objective-10\n",
    "table2a-convdtlz2": "problem = convDTLZ2\nz = 0.5, 0.5\nlayout = two-objective-10\n",
    "three-objective": "problem = DTLZ2\nm = 3\nz = 0.5, 0.5, 0.5\nlayout = three-objective-13\n",
    "tableS9": ("problem = ZDT3-normalized\nz = 0.55, 0.6\nr = 0.25\nzeta = 0.25\n"
                "layout = zdt3-7\n"),
    "fig3d": "problem = DTLZ2\nsweep = line\n",
    "figS1": "problem = DTLZ1\nsweep = line\n",
    "fig4d": "problem = convDTLZ2\nsweep = line\n",
    "figS3": ("problem = DTLZ2\nsweep = rect\nsweep_start = -3, -3\nsweep_stop = 3, 3\n"
              "sweep_step = 0.05\n"),
    "figS3-convdtlz2": ("problem = convDTLZ2\nsweep = rect\nsweep_start = -3, -3\n"
                        "sweep_stop = 3, 3\nsweep_step = 0.05\n"),
}


def build_config(preset: str | None = None, text: str | None = None,
                 overrides: Mapping[str, object] | None = None,
                 source: str = "<config>") -> ExperimentConfig:
    """Layer a preset, a config document and explicit overrides, later ones winning.

    Raises:
        ConfigError: For an unknown preset or key, or an invalid combination.
    """
    settings: dict[str, object] = {}
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
        settings.update(parse_settings(PRESETS[preset], f"preset {preset}"))
    if text is not None:
        settings.update(parse_settings(text, source))
    if overrides:
        unknown = [k for k in overrides if k not in _PARSERS]
        if unknown:
            raise ConfigError(f"unknown settings {unknown}")
        settings.update({k: v for k, v in overrides.items() if v is not None})
    if "z" in settings and "m" not in settings:
        settings["m"] = len(settings["z"])  # type: ignore[arg-type]
    try:
        return ExperimentConfig(**settings)  # type: ignore[arg-type]
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path, preset: str | None = None) -> ExperimentConfig:
    """Read a config file, optionally on top of a preset."""
    path = Path(path)
    return build_config(preset, path.read_text(), source=str(path))


__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "PRESETS",
    "build_config",
    "format_number",
    "format_point_set",
    "load_config",
    "load_point_set",
    "parse_point_set",
    "parse_settings",
    "save_point_set",
]
