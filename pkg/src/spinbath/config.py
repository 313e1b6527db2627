"""Scenario configuration: dataclasses plus JSON loading with field paths."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import ConfigurationError
from .model import DEFAULT_DELTA, NAMED_STATES, validate_density_matrix

TOPOLOGIES = ("local", "global")
FAMILIES = ("mixed", "pure", "ghz_pairs")
ENGINES = ("kernels", "oracle")
SIGNS = ("equal", "opposite")


@dataclass(frozen=True)
class TimeGrid:
    t_max: float = 20.0
    n_points: int = 2000

    def __post_init__(self):
        if not (isinstance(self.t_max, (int, float)) and self.t_max > 0 and math.isfinite(self.t_max)):
            raise ConfigurationError("must be a positive number", "time_grid.t_max")
        if not isinstance(self.n_points, int) or self.n_points < 2:
            raise ConfigurationError("must be an integer >= 2", "time_grid.n_points")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, float(self.t_max), self.n_points)


@dataclass(frozen=True)
class OutputPaths:
    csv: Optional[str] = None
    svg: Optional[str] = None


InitialState = Union[str, tuple]


@dataclass(frozen=True)
class ScenarioConfig:
    topology: str = "local"
    family: str = "mixed"
    n_modes: int = 6
    seed: int = 0
    name: str = "scenario"
    alpha: float = math.pi / 4
    delta: float = DEFAULT_DELTA
    beta: Optional[float] = None
    block_size: int = 2
    pair_sign: str = "equal"
    omega_s: float = 1.0
    omega_range: tuple = (1.0, 2.0)
    c_range: tuple = (0.1, 0.2)
    time_grid: TimeGrid = field(default_factory=TimeGrid)
    initial_state: InitialState = "bell_phi_plus"
    engine: str = "kernels"
    stream: tuple = ()
    output: OutputPaths = field(default_factory=OutputPaths)

    def __post_init__(self):
        def need(cond, path, msg):
            if not cond:
                raise ConfigurationError(msg, path)

        need(self.topology in TOPOLOGIES, "topology", f"must be one of {TOPOLOGIES}")
        need(self.family in FAMILIES, "family", f"must be one of {FAMILIES}")
        need(self.engine in ENGINES, "engine", f"must be one of {ENGINES}")
        need(self.pair_sign in SIGNS, "pair_sign", f"must be one of {SIGNS}")
        need(isinstance(self.n_modes, int) and self.n_modes >= 1, "n_modes",
             "must be an integer >= 1")
        need(isinstance(self.seed, int) and self.seed >= 0, "seed",
             "must be a non-negative integer")
        need(isinstance(self.block_size, int) and self.block_size >= 1, "block_size",
             "must be a positive integer")
        if self.family == "ghz_pairs":
            need(self.n_modes % self.block_size == 0, "n_modes",
                 f"must be divisible by block_size={self.block_size}")
            need(self.pair_sign == "equal" or self.block_size == 2, "pair_sign",
                 "opposite couplings need block_size 2")
        need(-1.0 <= self.delta <= 1.0, "delta", "must lie in [-1, 1]")
        need(self.beta is None or self.beta >= 0, "beta", "must be >= 0")
        need(self.omega_s > 0, "omega_s", "must be positive")
        for name in ("omega_range", "c_range"):
            rng = getattr(self, name)
            need(len(rng) == 2 and rng[0] < rng[1], name, "must be an interval [lo, hi] with lo < hi")
        if isinstance(self.initial_state, str):
            need(self.initial_state in NAMED_STATES, "initial_state",
                 f"must be one of {sorted(NAMED_STATES)} or an explicit matrix")
        else:
            rho = np.asarray(self.initial_state, dtype=complex)
            need(rho.shape == (4, 4), "initial_state", "explicit state must be 4x4")
            report = validate_density_matrix(rho)
            need(report.passed, "initial_state", f"explicit state is not a density matrix ({report})")

    @property
    def rho0(self) -> np.ndarray:
        if isinstance(self.initial_state, str):
            return NAMED_STATES[self.initial_state].copy()
        return np.asarray(self.initial_state, dtype=complex)

    @property
    def times(self) -> np.ndarray:
        return self.time_grid.times

    def to_dict(self) -> dict:
        d = asdict(self)
        if not isinstance(self.initial_state, str):
            rho = self.rho0
            d["initial_state"] = {"real": rho.real.tolist(), "imag": rho.imag.tolist()}
        d["omega_range"] = list(self.omega_range)
        d["c_range"] = list(self.c_range)
        d["stream"] = list(self.stream)
        return d


def _parse_state(raw):
    if isinstance(raw, str):
        return raw
    if isinstance(raw, dict):
        try:
            real = np.asarray(raw["real"], dtype=float)
            imag = np.asarray(raw.get("imag", np.zeros_like(real)), dtype=float)
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigurationError(f"cannot read explicit matrix ({exc})", "initial_state")
        if real.shape != (4, 4) or imag.shape != (4, 4):
            raise ConfigurationError("explicit state must be 4x4", "initial_state")
        rho = real + 1j * imag
        return tuple(tuple(complex(x) for x in row) for row in rho)
    raise ConfigurationError("must be a state name or {'real': ..., 'imag': ...}", "initial_state")


def config_from_dict(raw: dict) -> ScenarioConfig:
    if not isinstance(raw, dict):
        raise ConfigurationError("configuration must be a JSON object")
    known = {f.name for f in fields(ScenarioConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigurationError("unknown field", unknown[0])
    kw = dict(raw)
    if "time_grid" in kw:
        tg = kw["time_grid"]
        if not isinstance(tg, dict):
            raise ConfigurationError("must be an object", "time_grid")
        extra = sorted(set(tg) - {"t_max", "n_points"})
        if extra:
            raise ConfigurationError("unknown field", f"time_grid.{extra[0]}")
        kw["time_grid"] = TimeGrid(**tg)
    if "output" in kw:
        out = kw["output"]
        if not isinstance(out, dict) or set(out) - {"csv", "svg"}:
            raise ConfigurationError("must be an object with optional csv/svg paths", "output")
        kw["output"] = OutputPaths(**out)
    if "initial_state" in kw:
        kw["initial_state"] = _parse_state(kw["initial_state"])
    for key in ("omega_range", "c_range", "stream"):
        if key in kw:
            if not isinstance(kw[key], (list, tuple)):
                raise ConfigurationError("must be a list", key)
            kw[key] = tuple(kw[key])
    for key in ("alpha", "delta", "omega_s"):
        if key in kw and not isinstance(kw[key], (int, float)):
            raise ConfigurationError("must be a number", key)
    return ScenarioConfig(**kw)


def load_config(path) -> ScenarioConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigurationError(f"cannot read configuration: {exc}", str(path))
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"invalid JSON: {exc}", str(path))
    return config_from_dict(raw)
