"""Grid sweeps over (omega, t): injected energy, noisy state, all measures."""

from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
import json
import math

from joblib import Parallel, delayed
import numpy as np

from . import __version__
from .exceptions import ConfigError, NMXStateError
from .measures import MEASURE_NAMES, DiscordOptimizerConfig, MeasureSet, measure_all
from .noise import QuadratureConfig, epsilon_at
from .presets import kernel_from_spec, load_preset
from .state import EvalPoint, rho_normalized

FORMATS = ("csv", "json")


def _grid(value, name):
    if isinstance(value, dict):
        try:
            grid = np.linspace(float(value["start"]), float(value["stop"]), int(value["num"]))
        except KeyError as exc:
            raise ConfigError(f"{name} needs start, stop and num (missing {exc.args[0]!r})") from None
    else:
        grid = np.atleast_1d(np.asarray(value, dtype=float))
    if grid.ndim != 1 or grid.size == 0:
        raise ConfigError(f"{name} must be a non-empty list")
    if np.any(np.diff(grid) <= 0):
        raise ConfigError(f"{name} must be strictly increasing")
    return tuple(float(x) for x in grid)


@dataclass(frozen=True)
class SweepConfig:
    kernel: dict
    omega_grid: tuple
    t_grid: tuple
    quadrature: QuadratureConfig = QuadratureConfig()
    discord: DiscordOptimizerConfig = DiscordOptimizerConfig()
    output: str = None
    format: str = "csv"
    name: str = "custom"

    def __post_init__(self):
        if self.omega_grid[0] <= 0:
            raise ConfigError("omega_grid values must be positive")
        if self.t_grid[0] < 0:
            raise ConfigError("t_grid values must be nonnegative")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        self.kernel_for(self.omega_grid[0])

    @classmethod
    def from_dict(cls, data):
        """Build a config from a JSON-style mapping.

        A ``preset`` key loads that preset first; the remaining keys override
        it (the ``kernel`` and ``discord`` blocks are merged key by key).
        """
        data = dict(data)
        if "preset" in data:
            base = load_preset(data.pop("preset"))
            for key in ("kernel", "discord"):
                if key in data:
                    data[key] = {**base.get(key, {}), **data[key]}
            data = {**base, **data}
        try:
            kernel = dict(data["kernel"])
            omega_grid = _grid(data["omega_grid"], "omega_grid")
            t_grid = _grid(data["t_grid"], "t_grid")
        except KeyError as exc:
            raise ConfigError(f"config is missing {exc.args[0]!r}") from None
        try:
            quadrature = QuadratureConfig(int(data.get("panels", 64)))
            discord = DiscordOptimizerConfig(**data.get("discord", {}))
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        return cls(
            kernel=kernel,
            omega_grid=omega_grid,
            t_grid=t_grid,
            quadrature=quadrature,
            discord=discord,
            output=data.get("output"),
            format=data.get("format", "csv"),
            name=data.get("name", "custom"),
        )

    @classmethod
    def from_preset(cls, name, **overrides):
        return cls.from_dict({"preset": name, **overrides})

    def kernel_for(self, omega):
        try:
            return kernel_from_spec(self.kernel, omega)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def to_dict(self):
        return {
            "name": self.name,
            "kernel": dict(self.kernel),
            "omega_grid": list(self.omega_grid),
            "t_grid": list(self.t_grid),
            "panels": self.quadrature.panels,
            "discord": {
                "theta_grid": self.discord.theta_grid,
                "phi_grid": self.discord.phi_grid,
                "refine_iters": self.discord.refine_iters,
                "tol": self.discord.tol,
            },
            "format": self.format,
        }

    def with_overrides(self, **changes):
        return replace(self, **changes)


def load_config(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return SweepConfig.from_dict(data)


NAN_MEASURES = MeasureSet(*([math.nan] * len(MEASURE_NAMES)))


@dataclass(frozen=True)
class SweepRow:
    point: EvalPoint
    measures: MeasureSet
    error: str = ""

    def values(self):
        return (self.point.omega, self.point.t, self.point.epsilon) + self.measures.as_tuple()


@dataclass
class SweepTable:
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.rows)

    def omegas(self):
        return sorted({row.point.omega for row in self.rows})

    def series(self, omega):
        """Rows at one frequency, ordered in t."""
        return sorted((r for r in self.rows if r.point.omega == omega), key=lambda r: r.point.t)

    def column(self, name, omega=None):
        rows = self.rows if omega is None else self.series(omega)
        if name in ("omega", "t", "epsilon"):
            return np.array([getattr(r.point, name) for r in rows])
        return np.array([getattr(r.measures, name) for r in rows])


def evaluate_point(kernel_spec, omega, t, quadrature, discord):
    """One sweep row; numerical failures are recorded, not raised."""
    try:
        eps = max(epsilon_at(kernel_from_spec(kernel_spec, omega), omega, t, quadrature), 0.0)
    except NMXStateError as exc:
        return SweepRow(EvalPoint(omega, t, math.nan), NAN_MEASURES, f"epsilon: {exc}")
    point = EvalPoint(omega, t, eps)
    try:
        return SweepRow(point, measure_all(rho_normalized(eps), discord))
    except NMXStateError as exc:
        return SweepRow(point, NAN_MEASURES, f"{type(exc).__name__}: {exc}")


def run_sweep(cfg, n_jobs=None, reproducible=False):
    """Evaluate every (omega, t) grid point, rows ordered by (omega, t).

    Rows are independent; ``n_jobs`` spreads them over worker processes and
    the table comes back in grid order either way.
    """
    tasks = [(omega, t) for omega in cfg.omega_grid for t in cfg.t_grid]
    args = (cfg.quadrature, cfg.discord)
    if n_jobs in (None, 1):
        rows = [evaluate_point(cfg.kernel, omega, t, *args) for omega, t in tasks]
    else:
        rows = Parallel(n_jobs=n_jobs)(
            delayed(evaluate_point)(cfg.kernel, omega, t, *args) for omega, t in tasks
        )
    metadata = {
        "tool": "nmxstate",
        "version": __version__,
        "panels": cfg.quadrature.panels,
        "config": cfg.to_dict(),
    }
    if not reproducible:
        metadata["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return SweepTable(rows, metadata)
