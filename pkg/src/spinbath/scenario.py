"""Scenario runner and figure-reproduction harness."""
from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from . import kernels as K
from .config import ScenarioConfig
from .entanglement import ConcurrenceSeries, concurrence_series, is_xstate
from .errors import ConfigurationError
from .kernels import DephasingCoefficients
from .model import (HERMITIAN_TOL, PSD_TOL, TRACE_TOL, Bath, BathSpec, MixedDiagonal,
                    SystemSpec, sample_bath, thermal_populations)
from .oracle import dephasing_exact, rdm_exact
from .rdm import rdm_global, rdm_local

log = logging.getLogger(__name__)

KERNEL_ORACLE_TOL = 1e-10

# figure id -> (topology, bath size, initial system state)
FIGURES = {
    2: ("local", 6, "bell_phi_plus"),
    3: ("local", 60, "bell_phi_plus"),
    4: ("local", 400, "bell_phi_plus"),
    5: ("global", 6, "separable_plus_plus"),
    6: ("global", 60, "separable_plus_plus"),
    7: ("global", 200, "separable_plus_plus"),
    8: ("global", 800, "separable_plus_plus"),
}
FIGURE_FAMILIES = ("mixed", "pure", "ghz_pairs")


@dataclass(frozen=True)
class ScenarioResult:
    coefficients: DephasingCoefficients
    concurrence: ConcurrenceSeries
    rdms: np.ndarray
    metadata: dict


def build_bath(config: ScenarioConfig) -> BathSpec:
    seed = np.random.SeedSequence(config.seed, spawn_key=tuple(config.stream))
    family = "ghz" if config.family == "ghz_pairs" else config.family
    spec = sample_bath(seed, config.n_modes, config.omega_range, config.c_range,
                       topology=config.topology, family=family, alpha=config.alpha,
                       delta=config.delta, block_size=config.block_size,
                       sign=config.pair_sign)
    if config.beta is not None and family == "mixed":
        baths = []
        for bath in spec.baths:
            n_plus = tuple(thermal_populations(config.beta, m.omega)[0] for m in bath.modes)
            baths.append(Bath(bath.modes, MixedDiagonal(n_plus)))
        spec = dataclasses.replace(spec, baths=tuple(baths))
    return spec


def _local_kernel(bath: Bath, t):
    st = bath.state
    if bath.family == "mixed":
        return K.local_f_mixed(bath.modes, t)
    if bath.family == "pure":
        return K.local_f_pure(bath.modes, st.alpha, t)
    if st.block_size == 2 and len(set(st.signs)) == 1:
        blocks = bath.blocks()
        if all(b[0].omega == b[1].omega and abs(b[0].c) == abs(b[1].c) for b in blocks):
            return K.local_f_pairs([b[0] for b in blocks], st.signs[0], t)
    return K.local_f_blocks(bath.blocks(), t)


def _global_kernel(bath: Bath, t):
    if bath.family == "mixed":
        f, g = K.global_fg_mixed(bath.modes, bath.deltas, t)
        return f, g, np.conj(g)
    if bath.family == "pure":
        alphas = bath.state.alpha
        f, g = K.global_fg_pure(bath.modes, t, alphas)
        return f, g, K.global_g_lower(bath.modes, t, alphas)
    if bath.state.block_size != 2:
        raise ConfigurationError("closed-form global GHZ kernels exist for pairs only; "
                                 "use engine=oracle", "block_size")
    f, g = K.global_fg_pairs(bath.modes, t)
    return f, g, np.conj(g)


def evolve(bath: BathSpec, config: ScenarioConfig, t):
    """(f, g, rdms) on the grid ``t`` using the configured engine."""
    rho0 = config.rho0
    if config.engine == "oracle":
        table = dephasing_exact(bath, t)
        rdms = rdm_exact(bath, SystemSpec(config.omega_s), rho0, t)
        g = table[..., 0, 1] if bath.topology == "global" else None
        return table[..., 0, 3], g, rdms
    if bath.topology == "local":
        f_a = _local_kernel(bath.baths[0], t)
        f_b = _local_kernel(bath.baths[1], t)
        return f_a * f_b, None, rdm_local(rho0, f_a, f_b, config.omega_s, t)
    f, g, h = _global_kernel(bath.baths[0], t)
    return f, g, rdm_global(rho0, f, g, config.omega_s, t, g_lower=h)


def state_diagnostics(rdms, rho0) -> dict:
    """Worst-case validity defects over a (T, 4, 4) stack."""
    herm = np.abs(rdms - np.swapaxes(rdms.conj(), -1, -2)).max()
    trace = np.abs(np.trace(rdms, axis1=-2, axis2=-1) - 1).max()
    hpart = 0.5 * (rdms + np.swapaxes(rdms.conj(), -1, -2))
    min_eig = np.linalg.eigvalsh(hpart).min()
    diag = np.abs(rdms.diagonal(axis1=-2, axis2=-1) - np.diagonal(rho0)).max()
    return {
        "max_hermiticity_defect": float(herm),
        "max_trace_defect": float(trace),
        "min_eigenvalue": float(min_eig),
        "max_diagonal_drift": float(diag),
        "valid": bool(herm <= HERMITIAN_TOL and trace <= TRACE_TOL and min_eig >= PSD_TOL),
    }


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    t = config.times
    bath = build_bath(config)
    f, g, rdms = evolve(bath, config, t)
    rho0 = config.rho0
    xform = is_xstate(rho0)
    conc = concurrence_series(rdms, xstate=xform)
    coeffs = DephasingCoefficients(t, np.asarray(f), None if g is None else np.asarray(g))
    metadata = {
        "name": config.name,
        "seed": config.seed,
        "stream": list(config.stream),
        "topology": config.topology,
        "family": config.family,
        "n_modes": config.n_modes,
        "n_spins": bath.n_spins,
        "engine": config.engine,
        "omega_s": config.omega_s,
        "concurrence_route": "xstate" if xform else "general",
        "tolerances": {"kernel_oracle": KERNEL_ORACLE_TOL, "hermiticity": HERMITIAN_TOL,
                       "trace": TRACE_TOL, "min_eigenvalue": PSD_TOL},
        "state_validity": state_diagnostics(rdms, rho0),
        "version": __version__,
        "config": config.to_dict(),
        "bath": [{"omega": b.omegas.tolist(), "c": b.couplings.tolist()} for b in bath.baths],
    }
    if not metadata["state_validity"]["valid"]:
        log.warning("scenario %s emitted invalid states: %s", config.name,
                    metadata["state_validity"])
    return ScenarioResult(coeffs, ConcurrenceSeries(t, conc), rdms, metadata)


def figure_configs(fig_id: int, seed: int = 0, t_max: float = 20.0,
                   n_points: int = 2000, pair_sign: str = "equal") -> dict:
    """One ScenarioConfig per bath family of a figure, each on its own stream."""
    if fig_id not in FIGURES:
        raise ConfigurationError(f"figure id must be one of {sorted(FIGURES)}", "id")
    from .config import TimeGrid

    topology, size, state = FIGURES[fig_id]
    out = {}
    for index, family in enumerate(FIGURE_FAMILIES):
        out[family] = ScenarioConfig(
            name=f"fig{fig_id}_{family}", topology=topology, family=family,
            n_modes=size, seed=seed, stream=(fig_id, index), initial_state=state,
            pair_sign=pair_sign, time_grid=TimeGrid(t_max, n_points))
    return out


def reproduce_figure(fig_id: int, seed: int = 0, out_dir=".", *, t_max: float = 20.0,
                     n_points: int = 2000, pair_sign: str = "equal") -> list[Path]:
    """Run the three bath families of a figure and write its CSV, SVG and metadata."""
    from .output import emit_outputs

    configs = figure_configs(fig_id, seed, t_max, n_points, pair_sign)
    results = {family: run_scenario(cfg) for family, cfg in configs.items()}
    topology, size, _ = FIGURES[fig_id]
    title = f"Fig. {fig_id}: {size}-spin {topology} environment (seed {seed})"
    return emit_outputs(results, ("csv", "svg", "json"), Path(out_dir) / f"fig{fig_id}",
                        title=title)
