"""Parameter sweeps over the steady state, with a plain-text config format
and a fixed CSV output contract.

Config files are UTF-8 `key = value` lines; `#` starts a comment. Keys are
the SystemParams fields plus axis, start, stop, points and scale. The CSV
always carries the header x,g2_a,n_a,n_b,n_c, one row per grid point, every
value in scientific notation with 10 significant digits, LF line endings.
Points whose solve fails are kept as rows of nan so the grid stays intact.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from .fock import DEFAULT_TRUNCATION, FockTruncation, build_space
from .model import (
    DegenerateSteadyStateError,
    SystemParams,
    build_liouvillian,
    steady_state,
)
from .observables import UndefinedCorrelationError, g2_zero, mean_occupation

OBSERVABLE_COLUMNS = ("g2_a", "n_a", "n_b", "n_c")
CSV_HEADER = "x," + ",".join(OBSERVABLE_COLUMNS)

AXES = ("delta_a", "g")
SCALES = ("linear", "log")

_PARAM_KEYS = tuple(f.name for f in fields(SystemParams))
_SWEEP_KEYS = ("axis", "start", "stop", "points", "scale")

# observable values this far below zero are roundoff, not physics
_NEGATIVE_FLOOR = -1e-12


class ConfigError(ValueError):
    """Config parse failure; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class SweepSpec:
    """One-axis grid over delta_a or g, everything else held at `base`."""

    axis: str
    start: float
    stop: float
    points: int
    base: SystemParams
    scale: str = "linear"
    trunc: FockTruncation = DEFAULT_TRUNCATION

    def __post_init__(self) -> None:
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.scale not in SCALES:
            raise ValueError(f"scale must be one of {SCALES}, got {self.scale!r}")
        if self.points < 2:
            raise ValueError(f"points must be at least 2, got {self.points}")
        if not (self.start < self.stop):
            raise ValueError(f"start must be below stop, got [{self.start}, {self.stop}]")
        if self.scale == "log" and self.start <= 0:
            raise ValueError("log scale needs a positive start")

    def grid(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class ObservableRecord:
    """One sweep row. A failed solve leaves the observables as nan."""

    x: float
    g2_a: float
    n_a: float
    n_b: float
    n_c: float

    def __post_init__(self) -> None:
        for name in OBSERVABLE_COLUMNS:
            value = getattr(self, name)
            if math.isnan(value):
                continue
            if value < 0.0:
                if value < _NEGATIVE_FLOOR:
                    raise ValueError(f"{name} = {value!r} is negative")
                object.__setattr__(self, name, 0.0)

    @classmethod
    def gap(cls, x: float) -> "ObservableRecord":
        return cls(x, math.nan, math.nan, math.nan, math.nan)

    @property
    def is_gap(self) -> bool:
        return math.isnan(self.g2_a)


def parse_config(text: str, trunc: FockTruncation = DEFAULT_TRUNCATION
                 ) -> tuple[SystemParams, SweepSpec]:
    """Parse a sweep config document into (base parameters, sweep spec)."""
    seen: dict[str, str] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {raw.strip()!r}", lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if not key or not value:
            raise ConfigError(f"expected key = value, got {raw.strip()!r}", lineno)
        if key not in _PARAM_KEYS and key not in _SWEEP_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        seen[key] = value
        lines[key] = lineno

    def parse_float(key: str) -> float:
        try:
            value = float(seen[key])
        except ValueError:
            raise ConfigError(f"{key} must be a number, got {seen[key]!r}", lines[key]) from None
        if not math.isfinite(value):
            raise ConfigError(f"{key} must be finite", lines[key])
        return value

    param_kwargs = {}
    for key in _PARAM_KEYS:
        if key in seen:
            param_kwargs[key] = parse_float(key)
    try:
        base = SystemParams(**{
            "delta_a": 0.0, "delta_b": 0.0, "delta_c": 0.0, "g": 0.0, "f_a": 0.0,
            **param_kwargs})
    except ValueError as exc:
        bad = next((k for k in param_kwargs if k in str(exc)), None)
        raise ConfigError(str(exc), lines.get(bad)) from None

    if "axis" not in seen:
        raise ConfigError("axis is required")
    axis = seen["axis"]
    if axis not in AXES:
        raise ConfigError(f"axis must be one of {AXES}, got {axis!r}", lines["axis"])
    for key in ("start", "stop", "points"):
        if key not in seen:
            raise ConfigError(f"{key} is required")
    try:
        points = int(seen["points"])
    except ValueError:
        raise ConfigError(f"points must be an integer, got {seen['points']!r}",
                          lines["points"]) from None
    if points < 2:
        raise ConfigError(f"points must be at least 2, got {points}", lines["points"])
    scale = seen.get("scale", "linear")
    if scale not in SCALES:
        raise ConfigError(f"scale must be one of {SCALES}, got {scale!r}", lines["scale"])
    start = parse_float("start")
    stop = parse_float("stop")
    if not (start < stop):
        raise ConfigError(f"start must be below stop, got [{start}, {stop}]", lines["stop"])
    if scale == "log" and start <= 0:
        raise ConfigError("log scale needs a positive start", lines["start"])
    spec = SweepSpec(axis=axis, start=start, stop=stop, points=points,
                     base=base, scale=scale, trunc=trunc)
    return base, spec


def solve_point(params: SystemParams, trunc: FockTruncation, x: float
                ) -> ObservableRecord:
    """Steady-state observables at one grid point; failures become a gap."""
    space = build_space(trunc)
    try:
        rho = steady_state(build_liouvillian(params, space))
        return ObservableRecord(
            x=x,
            g2_a=g2_zero(rho, space, "a"),
            n_a=mean_occupation(rho, space, "a"),
            n_b=mean_occupation(rho, space, "b"),
            n_c=mean_occupation(rho, space, "c"),
        )
    except (DegenerateSteadyStateError, UndefinedCorrelationError, ValueError,
            np.linalg.LinAlgError):
        return ObservableRecord.gap(x)


def _point_task(args: tuple[SystemParams, FockTruncation, float]) -> ObservableRecord:
    return solve_point(*args)


def point_params(spec: SweepSpec, x: float) -> SystemParams:
    return replace(spec.base, **{spec.axis: x})


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[ObservableRecord]:
    """Solve every grid point in order. Each point is an independent solve,
    so parallel and serial runs return identical records."""
    if workers < 1:
        raise ValueError("workers must be at least 1")
    tasks = [(point_params(spec, float(x)), spec.trunc, float(x)) for x in spec.grid()]
    if workers == 1:
        return [_point_task(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_point_task, tasks, chunksize=8))


def _format(value: float) -> str:
    return "nan" if math.isnan(value) else f"{value:.9e}"


def emit_csv(records: list[ObservableRecord]) -> str:
    """Render records in the fixed column order, LF endings, trailing newline."""
    out = [CSV_HEADER]
    for rec in records:
        out.append(",".join(_format(getattr(rec, name)) for name in ("x",) + OBSERVABLE_COLUMNS))
    return "\n".join(out) + "\n"


def parse_csv(text: str) -> list[ObservableRecord]:
    """Inverse of emit_csv, for tooling that re-reads sweep output."""
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"expected header {CSV_HEADER!r}")
    records = []
    for raw in lines[1:]:
        parts = raw.split(",")
        if len(parts) != 5:
            raise ValueError(f"expected 5 fields, got {raw!r}")
        records.append(ObservableRecord(*(float(p) for p in parts)))
    return records
