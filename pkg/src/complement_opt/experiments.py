"""Experiment harness: named studies, CSV emission and run manifests.

Each study produces plain records so callers can post-process or plot as they
like; ``run_experiment`` routes a declarative :class:`ExperimentSpec` to the
right study and persists one CSV per experiment plus a JSON manifest capturing
enough provenance (parameters, budget, seed, versions) to reproduce the file.
CSV floats are serialized with 17 significant digits, so identical spec + seed
reruns are byte-identical; the manifest additionally records wall time and is
therefore excluded from that guarantee.
"""
from __future__ import annotations

import json
import math
import platform
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .collisions import CouplingConfig, make_config, reservoir_limit_concurrence, continuous_limit_gap
from .errors import DegenerateOutcomeError, DomainError
from .measurement import (
    complementarity_after,
    delta_d_pair,
    delta_d_total,
    gamma_coefficients,
    per_qubit_distinguishability,
    postselected_state,
    uniform_gamma,
)
from .optimize import Objective, OptimizerBudget, curve, maximize, objective_value

PRESETS: dict[str, dict] = {
    "strong": {"g": 4.0, "T": 2.0 * math.pi, "N_total": 20},
    "weak": {"g": 0.25, "T": 2.0 * math.pi, "N_total": 20},
}

EXPERIMENTS = (
    "quantity-vs-n",
    "uniform-sweep",
    "distinguishability",
    "delta-d",
    "table",
    "continuous-limit",
)

_DEFAULT_LIMIT_N = (64, 128, 256, 512, 1024, 2048, 4096)


def preset_config(name: str) -> CouplingConfig:
    if name not in PRESETS:
        raise DomainError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return make_config(**PRESETS[name])


@dataclass(frozen=True)
class ExperimentSpec:
    """Declarative description of one study.

    ``preset`` is a label used for file naming and the manifest; ``cfg`` is
    the coupling actually used.  Fields irrelevant to a given experiment are
    ignored by it.
    """

    name: str
    cfg: CouplingConfig | None = None
    preset: str | None = None
    objective: Objective | None = None
    n_max: int = 20
    theta_steps: int = 60
    phi: float = 0.0
    reservoir_k: float | None = None
    limit_k: float = 3.0
    limit_T: float = 1.0
    limit_N: tuple[int, ...] = _DEFAULT_LIMIT_N


@dataclass(frozen=True)
class CurveRecord:
    """One optimized point of a quantity-vs-n study."""

    n: int
    V: float
    P: float
    C: float
    reservoir_C: float
    outcome_probability: float
    angles: tuple[float, ...]


def run_quantity_vs_n(
    cfg: CouplingConfig,
    objective: Objective,
    n_max: int,
    budget: OptimizerBudget | None = None,
    seed: int = 0,
    reservoir_k: float | None = None,
) -> list[CurveRecord]:
    """Optimized complementarity triple for each n, with the many-probe
    exponential-decay concurrence as a companion column.

    The companion maps collision index to elapsed time t_n = n * dt and uses
    rate ``reservoir_k`` (defaults to the coupling's own k = g^2 T / N).
    """
    k = cfg.k if reservoir_k is None else reservoir_k
    records = []
    for result in curve(cfg, objective, n_max, budget, seed=seed):
        t = result.achieved
        records.append(
            CurveRecord(
                n=result.n,
                V=t.V,
                P=t.P,
                C=t.C,
                reservoir_C=reservoir_limit_concurrence(k, result.n * cfg.dt),
                outcome_probability=result.outcome_probability,
                angles=tuple(
                    float(x) for pair in result.basis.angles for x in pair
                ),
            )
        )
    return records


@dataclass(frozen=True)
class UniformSweepResult:
    """V, P, C on the (n, theta) grid of identical-basis measurements.

    Matrices are indexed [n-1, theta]; impossible post-selections (for
    example theta = pi/2 with n >= 2) are NaN.
    """

    ns: np.ndarray
    thetas: np.ndarray
    phi: float
    V: np.ndarray
    P: np.ndarray
    C: np.ndarray


def run_uniform_sweep(
    cfg: CouplingConfig,
    n_max: int,
    theta_steps: int = 60,
    phi: float = 0.0,
) -> UniformSweepResult:
    """Sweep a shared measurement angle theta over [0, pi] for n = 1..n_max."""
    cfg.check_n(n_max)
    thetas = np.linspace(0.0, math.pi, theta_steps + 1)
    ns = np.arange(1, n_max + 1)
    shape = (n_max, thetas.size)
    V = np.full(shape, np.nan)
    P = np.full(shape, np.nan)
    C = np.full(shape, np.nan)
    for i, n in enumerate(ns):
        for j, theta in enumerate(thetas):
            try:
                t = complementarity_after(uniform_gamma(cfg, theta, phi, int(n)))
            except DegenerateOutcomeError:
                continue
            V[i, j], P[i, j], C[i, j] = t.V, t.P, t.C
    return UniformSweepResult(ns=ns, thetas=thetas, phi=phi, V=V, P=P, C=C)


def run_distinguishability_profile(cfg: CouplingConfig) -> list[tuple[int, float, float]]:
    """(i, information on probe i, pair information a^(2i)) for i = 1..N."""
    return [
        (
            i,
            per_qubit_distinguishability(cfg, i),
            cfg.a ** (2 * i),
        )
        for i in range(1, cfg.N_total + 1)
    ]


def run_delta_d(
    cfg: CouplingConfig,
    objective: Objective,
    n_max: int,
    budget: OptimizerBudget | None = None,
    seed: int = 0,
) -> list[tuple[int, float, float, float]]:
    """(n, optimized V, total information change, pair information change)."""
    rows = []
    for result in curve(cfg, objective, n_max, budget, seed=seed):
        v = min(result.achieved.V, 1.0)
        rows.append(
            (result.n, result.achieved.V, delta_d_total(v), delta_d_pair(cfg, result.n, v))
        )
    return rows


@dataclass(frozen=True)
class TableStateRow:
    """Post-selected pair state for one (objective, coupling, n) cell."""

    objective: str
    preset: str
    n: int
    c00: complex
    c01: complex
    c10: complex
    achieved: float
    outcome_probability: float


def _canonical_phase(c00: complex, c01: complex, c10: complex) -> tuple[complex, complex, complex]:
    """Fix the global phase: c10 real >= 0, falling back to c00 then c01.

    Amplitudes below 1e-6 are treated as zero when picking the reference, so
    solver dust cannot hijack the phase convention.
    """
    for ref in (c10, c00, c01):
        if abs(ref) > 1e-6:
            rot = np.conj(ref) / abs(ref)
            return c00 * rot, c01 * rot, c10 * rot
    return c00, c01, c10


def run_table_states(
    budget: OptimizerBudget | None = None,
    seed: int = 0,
    ns: Sequence[int] = (1, 2, 10),
    presets: Sequence[str] = ("strong", "weak"),
) -> list[TableStateRow]:
    """Optimized post-selected states for every (objective, preset, n) cell,
    phase-canonicalized for comparison."""
    rows = []
    for objective in Objective:
        for preset in presets:
            cfg = preset_config(preset)
            for n in ns:
                result = maximize(cfg, int(n), objective, budget, seed=seed)
                state = postselected_state(
                    gamma_coefficients(cfg, result.basis, int(n))
                )
                c00, c01, c10 = _canonical_phase(state.c00, state.c01, state.c10)
                rows.append(
                    TableStateRow(
                        objective=objective.value,
                        preset=preset,
                        n=int(n),
                        c00=complex(c00),
                        c01=complex(c01),
                        c10=complex(c10),
                        achieved=objective_value(result.achieved, objective),
                        outcome_probability=result.outcome_probability,
                    )
                )
    return rows


def run_continuous_limit_convergence(
    k: float, T: float, N_list: Iterable[int]
) -> list[tuple[int, float]]:
    """(N, |cos^N sqrt(kT/N) - exp(-kT/2)|) along an N schedule."""
    return [(int(N), continuous_limit_gap(k, T, int(N))) for N in N_list]


# ---------------------------------------------------------------------------
# persistence

def _fmt(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return ""
        return f"{x:.17g}"
    return str(x)


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _angles_field(angles: Sequence[float]) -> str:
    return " ".join(f"{a:.17g}" for a in angles)


def write_curve_csv(records: Sequence[CurveRecord], path: Path) -> None:
    _write_csv(
        path,
        ["n", "V", "P", "C", "reservoir_C", "outcome_probability", "angles"],
        [
            (r.n, r.V, r.P, r.C, r.reservoir_C, r.outcome_probability, _angles_field(r.angles))
            for r in records
        ],
    )


def write_sweep_csv(sweep: UniformSweepResult, path: Path) -> None:
    rows = []
    for i, n in enumerate(sweep.ns):
        for j, theta in enumerate(sweep.thetas):
            rows.append(
                (int(n), float(theta), sweep.V[i, j], sweep.P[i, j], sweep.C[i, j])
            )
    _write_csv(path, ["n", "theta", "V", "P", "C"], rows)


def write_profile_csv(rows: Sequence[tuple[int, float, float]], path: Path) -> None:
    _write_csv(path, ["i", "d_qa_qi", "d_qa_qb"], rows)


def write_delta_d_csv(rows: Sequence[tuple[int, float, float, float]], path: Path) -> None:
    _write_csv(path, ["n", "V", "delta_d_total", "delta_d_pair"], rows)


def write_table_csv(rows: Sequence[TableStateRow], path: Path) -> None:
    _write_csv(
        path,
        [
            "objective", "preset", "n",
            "c00_re", "c00_im", "c01_re", "c01_im", "c10_re", "c10_im",
            "achieved", "outcome_probability",
        ],
        [
            (
                r.objective, r.preset, r.n,
                r.c00.real, r.c00.imag, r.c01.real, r.c01.imag,
                r.c10.real, r.c10.imag,
                r.achieved, r.outcome_probability,
            )
            for r in rows
        ],
    )


def write_limit_csv(rows: Sequence[tuple[int, float]], path: Path) -> None:
    _write_csv(path, ["N", "gap"], rows)


def _file_stem(spec: ExperimentSpec) -> str:
    parts = []
    if spec.preset:
        parts.append(spec.preset)
    if spec.objective is not None:
        parts.append(spec.objective.value)
    return "-".join(parts) if parts else spec.name


def run_experiment(
    spec: ExperimentSpec,
    budget: OptimizerBudget | None = None,
    seed: int = 0,
    out_dir: Path | str = "results",
) -> dict:
    """Execute one named study and persist CSV + manifest.

    Returns {"csv": Path, "manifest": Path}.  Layout is
    ``<out_dir>/<experiment>/<preset>-<objective>.csv`` (components dropped
    when not applicable) with ``manifest.json`` alongside.
    """
    if spec.name not in EXPERIMENTS:
        raise DomainError(f"unknown experiment {spec.name!r}; choose from {EXPERIMENTS}")
    budget = budget or OptimizerBudget()
    directory = Path(out_dir) / spec.name
    directory.mkdir(parents=True, exist_ok=True)
    csv_path = directory / f"{_file_stem(spec)}.csv"

    needs_cfg = spec.name in ("quantity-vs-n", "uniform-sweep", "distinguishability", "delta-d")
    if needs_cfg and spec.cfg is None:
        raise DomainError(f"experiment {spec.name!r} requires a coupling configuration")
    needs_objective = spec.name in ("quantity-vs-n", "delta-d")
    if needs_objective and spec.objective is None:
        raise DomainError(f"experiment {spec.name!r} requires an objective")

    started = time.perf_counter()
    if spec.name == "quantity-vs-n":
        write_curve_csv(
            run_quantity_vs_n(
                spec.cfg, spec.objective, spec.n_max, budget, seed, spec.reservoir_k
            ),
            csv_path,
        )
    elif spec.name == "uniform-sweep":
        write_sweep_csv(
            run_uniform_sweep(spec.cfg, spec.n_max, spec.theta_steps, spec.phi), csv_path
        )
    elif spec.name == "distinguishability":
        write_profile_csv(run_distinguishability_profile(spec.cfg), csv_path)
    elif spec.name == "delta-d":
        write_delta_d_csv(
            run_delta_d(spec.cfg, spec.objective, spec.n_max, budget, seed), csv_path
        )
    elif spec.name == "table":
        write_table_csv(run_table_states(budget, seed), csv_path)
    else:
        write_limit_csv(
            run_continuous_limit_convergence(spec.limit_k, spec.limit_T, spec.limit_N),
            csv_path,
        )
    wall = time.perf_counter() - started

    manifest = {
        "experiment": spec.name,
        "preset": spec.preset,
        "objective": spec.objective.value if spec.objective else None,
        "coupling": (
            {"g": spec.cfg.g, "T": spec.cfg.T, "N_total": spec.cfg.N_total}
            if spec.cfg
            else None
        ),
        "n_max": spec.n_max,
        "theta_steps": spec.theta_steps,
        "phi": spec.phi,
        "reservoir_k": spec.reservoir_k,
        "limit": {"k": spec.limit_k, "T": spec.limit_T, "N": list(spec.limit_N)},
        "budget": asdict(budget),
        "seed": seed,
        "versions": {
            "complement_opt": __version__,
            "numpy": np.__version__,
            "python": platform.python_version(),
        },
        "wall_time_s": wall,
        "outputs": [csv_path.name],
    }
    manifest_path = directory / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return {"csv": csv_path, "manifest": manifest_path}
