"""Scenario runner: state menus, time sweeps, exponent fits, data collapse.

Turns a declarative scenario (model + initial-state family + time grid)
into per-cut entropy series and capacity bounds, with deterministic
seeding per realization so parallel runs reproduce bit-identical output.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from gecsim.complexity import LN2, gec_upper_bound
from gecsim.gaussian import ProductState, StateLabel, entropy_profile, evolve, initial_correlation
from gecsim.lattice import ModelSpec, SingleParticleHamiltonian, build_hamiltonian
from gecsim.quasiparticle import QuasiparticleInput, gec_prediction


@dataclass(frozen=True)
class StateSpec:
    """Initial-state family: which pattern, and how many random realizations."""

    kind: StateLabel
    prefix: int = 0
    count: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind is StateLabel.ALTERNATING_PREFIX:
            if self.prefix <= 0 or self.prefix % 2:
                raise ValueError(f"prefix must be positive and even, got {self.prefix}")
        if self.count < 1:
            raise ValueError("count must be >= 1")

    @property
    def realizations(self) -> int:
        return self.count if self.kind is StateLabel.UNIFORM_RANDOM else 1


@dataclass(frozen=True)
class Scenario:
    model: ModelSpec
    state: StateSpec
    t_grid: np.ndarray
    quasiparticle_overlay: bool = False
    symmetric_profile: bool = False

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        if t.size == 0 or t[0] < 0 or np.any(np.diff(t) <= 0):
            raise ValueError("t_grid must be nonempty, start at t >= 0 and be strictly increasing")
        t.setflags(write=False)
        object.__setattr__(self, "t_grid", t)
        if self.quasiparticle_overlay and not self.model.is_tight_binding:
            raise ValueError("quasiparticle overlay applies to the tight-binding model only")


@dataclass(frozen=True)
class SeriesResult:
    """One realization: per-cut entropies (nats) and capacity bounds over time."""

    t_grid: np.ndarray
    profiles: np.ndarray  # shape (T, L-1)
    E_g: np.ndarray
    E_g_upper: np.ndarray
    E_g_qp: np.ndarray | None = None


@dataclass(frozen=True)
class ScenarioResult:
    scenario: Scenario
    realizations: list[SeriesResult]

    @property
    def E_g_mean(self) -> np.ndarray:
        return np.mean([r.E_g for r in self.realizations], axis=0)

    @property
    def E_g_min(self) -> np.ndarray:
        return np.min([r.E_g for r in self.realizations], axis=0)

    @property
    def E_g_max(self) -> np.ndarray:
        return np.max([r.E_g for r in self.realizations], axis=0)


@dataclass(frozen=True)
class FitResult:
    gamma: float
    intercept: float
    window: tuple
    r_squared: float

    def __post_init__(self):
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValueError(f"r_squared out of [0, 1]: {self.r_squared}")


@dataclass(frozen=True)
class CollapseResult:
    """Rescaled series per system size on a common t/L grid, plus their spread."""

    L_list: tuple
    t_over_L: np.ndarray
    eg_over_L2: np.ndarray  # shape (len(L_list), len(t_over_L))
    spread: float


def generate_state(spec: StateSpec, L: int, N: int, realization: int = 0) -> ProductState:
    """Materialize one initial product state; deterministic under (seed, realization)."""
    if spec.kind is StateLabel.NEEL:
        return ProductState.neel(L)
    if spec.kind is StateLabel.DOMAIN_WALL:
        return ProductState.domain_wall(L, N)
    rng = np.random.default_rng([spec.seed, realization])
    occ = np.zeros(L, dtype=np.int8)
    if spec.kind is StateLabel.ALTERNATING_PREFIX:
        p = spec.prefix
        remainder = N - p // 2
        if p > L or remainder < 0 or remainder > L - p:
            raise ValueError(f"prefix {p} incompatible with L={L}, N={N}")
        occ[0:p:2] = 1
        tail = rng.choice(L - p, size=remainder, replace=False)
        occ[p + tail] = 1
    elif spec.kind is StateLabel.UNIFORM_RANDOM:
        occ[rng.choice(L, size=N, replace=False)] = 1
    else:
        raise ValueError(f"unhandled state kind {spec.kind}")
    return ProductState(occ, label=spec.kind)


def simulate_series(
    h: SingleParticleHamiltonian,
    state: ProductState,
    t_grid: np.ndarray,
    use_symmetry: bool = False,
) -> SeriesResult:
    """Evolve one product state over a time grid and profile every cut."""
    C0 = initial_correlation(state)
    T = len(t_grid)
    L = h.L
    profiles = np.empty((T, L - 1))
    for i, t in enumerate(t_grid):
        profiles[i] = entropy_profile(evolve(C0, h, t), use_symmetry=use_symmetry).S
    E_g = profiles.sum(axis=1) / LN2
    E_g_upper = np.array([gec_upper_bound(L, t) for t in t_grid])
    return SeriesResult(t_grid=np.asarray(t_grid, float), profiles=profiles, E_g=E_g, E_g_upper=E_g_upper)


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("FCL_THREADS", "1")))
    except ValueError:
        return 1


def run_scenario(scn: Scenario) -> ScenarioResult:
    """Run every realization of a scenario; overlay the quasiparticle capacity if asked."""
    h = build_hamiltonian(scn.model)
    qp_series = None
    if scn.quasiparticle_overlay:
        qp = QuasiparticleInput(L=scn.model.L)
        qp_series = np.array([gec_prediction(qp, t) for t in scn.t_grid])

    def one(realization: int) -> SeriesResult:
        state = generate_state(scn.state, scn.model.L, scn.model.N, realization)
        res = simulate_series(h, state, scn.t_grid, use_symmetry=scn.symmetric_profile)
        if qp_series is not None:
            res = SeriesResult(res.t_grid, res.profiles, res.E_g, res.E_g_upper, E_g_qp=qp_series)
        return res

    n = scn.state.realizations
    workers = min(_worker_count(), n)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            realizations = list(pool.map(one, range(n)))
    else:
        realizations = [one(r) for r in range(n)]
    return ScenarioResult(scenario=scn, realizations=realizations)


def fit_growth_exponent(t: np.ndarray, E_g: np.ndarray, window: tuple) -> FitResult:
    """Least-squares power-law fit E_g ~ t^gamma on (ln t, ln E_g) inside `window`."""
    t = np.asarray(t, float)
    E_g = np.asarray(E_g, float)
    t_min, t_max = window
    mask = (t >= t_min) & (t <= t_max)
    if mask.sum() < 8:
        raise ValueError(f"fit window [{t_min}, {t_max}] contains {mask.sum()} points, need >= 8")
    bad = np.nonzero(mask & (E_g <= 0))[0]
    if bad.size:
        raise ValueError(f"nonpositive E_g inside the fit window at row {bad[0]}")
    x = np.log(t[mask])
    y = np.log(E_g[mask])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - float((resid**2).sum()) / ss_tot)
    return FitResult(gamma=float(slope), intercept=float(intercept), window=(float(t_min), float(t_max)), r_squared=r2)


def default_fit_window(t: np.ndarray, E_g: np.ndarray, tight_binding: bool, L: int) -> tuple:
    """Ballistic window [1, L/4] for tight binding; [1, half-saturation time] otherwise."""
    if tight_binding:
        return (1.0, L / 4.0)
    target = 0.5 * E_g[-1]
    above = np.nonzero(E_g >= target)[0]
    t_star = float(t[above[0]]) if above.size else float(t[-1])
    return (1.0, max(t_star, 2.0))


def collapse_set(
    L_list,
    alpha=None,
    boundary=None,
    state_kind: StateLabel = StateLabel.NEEL,
    t_over_L_max: float = 0.5,
    dt: float = 0.25,
    seed: int = 0,
    grid_points: int = 101,
) -> CollapseResult:
    """Run one state family at several sizes and measure the E_g/L^2 vs t/L spread.

    Spread is the maximum over a common t/L grid of (max - min) across
    sizes, with each rescaled series linearly interpolated onto the grid.
    """
    from gecsim.lattice import NEAREST_NEIGHBOR, Boundary

    if len(L_list) == 0:
        raise ValueError("L_list must be nonempty")
    if alpha is None:
        alpha = NEAREST_NEIGHBOR
    if boundary is None:
        boundary = Boundary.PERIODIC
    x_grid = np.linspace(0.0, t_over_L_max, grid_points)
    curves = np.empty((len(L_list), grid_points))
    for i, L in enumerate(sorted(L_list)):
        model = ModelSpec(L=L, alpha=alpha, boundary=boundary)
        t_grid = np.arange(0.0, t_over_L_max * L + dt / 2, dt)
        scn = Scenario(model=model, state=StateSpec(kind=state_kind, seed=seed), t_grid=t_grid, symmetric_profile=True)
        res = run_scenario(scn).realizations[0]
        curves[i] = np.interp(x_grid, res.t_grid / L, res.E_g / L**2)
    spread = 0.0 if len(L_list) < 2 else float((curves.max(axis=0) - curves.min(axis=0)).max())
    return CollapseResult(L_list=tuple(sorted(L_list)), t_over_L=x_grid, eg_over_L2=curves, spread=spread)
