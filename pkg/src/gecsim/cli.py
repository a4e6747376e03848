"""Command-line entry point.

Subcommands: simulate (exact dynamics -> CSV series), quasiparticle
(analytic predictions for the tight-binding model), verify (certify the
Gaussian engine against the many-body oracle), fit (power-law exponent)
and collapse (multi-size rescaled series).

Exit codes: 2 for configuration errors, 3 for numerical-health failures,
1 for a verification breach.
"""

from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import click
import numpy as np

import gecsim
from gecsim.complexity import DEFAULT_C, LN2
from gecsim.experiments import (
    Scenario,
    StateSpec,
    collapse_set,
    fit_growth_exponent,
    generate_state,
    run_scenario,
)
from gecsim.gaussian import NumericalHealthError, ProductState, StateLabel
from gecsim.io import (
    read_series_csv,
    write_collapse_csv,
    write_envelope_csv,
    write_fit_json,
    write_gec_csv,
    write_manifest,
    write_profile_csv,
    write_qp_profile_csv,
)
from gecsim.lattice import NEAREST_NEIGHBOR, Boundary, ModelSpec, ValidationError
from gecsim.quasiparticle import QuasiparticleInput, entropy_finite_size, entropy_scaling, gec_prediction

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ConfigError(ValueError):
    pass


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _parse_state(text: str, seed: int) -> StateSpec:
    """Parse neel | domainwall | altprefix:<p> | random:<n>."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "neel":
            return StateSpec(StateLabel.NEEL, seed=seed)
        if kind == "domainwall":
            return StateSpec(StateLabel.DOMAIN_WALL, seed=seed)
        if kind == "altprefix":
            return StateSpec(StateLabel.ALTERNATING_PREFIX, prefix=int(arg), seed=seed)
        if kind == "random":
            return StateSpec(StateLabel.UNIFORM_RANDOM, count=int(arg) if arg else 1, seed=seed)
    except ValueError as exc:
        raise ConfigError(f"state {text!r}: {exc}") from exc
    raise ConfigError(f"unknown state {text!r} (expected neel|domainwall|altprefix:<p>|random:<n>)")


_SCENARIO_KEYS = {
    "name", "L", "model", "alpha", "boundary", "state", "seed",
    "tmax", "dt", "quasiparticle", "allow_odd_L", "c",
}
_CONFIG_KEYS = {"out", "seed", "quadrature_points", "scenarios"}


@dataclass(frozen=True)
class ScenarioConfig:
    """One declarative simulation job; strict keys, lossless round-trip."""

    name: str
    L: int
    model: str = "tb"
    alpha: float | None = None
    boundary: str = "open"
    state: str = "neel"
    seed: int = 0
    tmax: float = 10.0
    dt: float = 0.25
    quasiparticle: bool = False
    allow_odd_L: bool = False
    c: float = DEFAULT_C

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioConfig":
        unknown = set(raw) - _SCENARIO_KEYS
        if unknown:
            raise ConfigError(f"unknown scenario field(s): {', '.join(sorted(unknown))}")
        try:
            return cls(**raw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def to_model(self) -> ModelSpec:
        if self.model == "tb":
            alpha = NEAREST_NEIGHBOR
        elif self.model == "lr":
            if self.alpha is None:
                raise ConfigError("alpha: required for model 'lr'")
            alpha = self.alpha
        else:
            raise ConfigError(f"model: must be 'tb' or 'lr', got {self.model!r}")
        try:
            boundary = Boundary(self.boundary)
        except ValueError:
            raise ConfigError(f"boundary: must be 'open' or 'periodic', got {self.boundary!r}") from None
        return ModelSpec(L=self.L, alpha=alpha, boundary=boundary, allow_odd_L=self.allow_odd_L)

    def to_scenario(self) -> Scenario:
        if self.dt <= 0 or self.tmax < 0:
            raise ConfigError(f"dt/tmax: need dt > 0 and tmax >= 0, got dt={self.dt}, tmax={self.tmax}")
        t_grid = np.arange(0.0, self.tmax + self.dt / 2, self.dt)
        return Scenario(
            model=self.to_model(),
            state=_parse_state(self.state, self.seed),
            t_grid=t_grid,
            quasiparticle_overlay=self.quasiparticle,
        )


@dataclass(frozen=True)
class RunConfig:
    """Top-level config: scenario list plus output directory and shared knobs."""

    out: str
    scenarios: list = field(default_factory=list)
    seed: int = 0
    quadrature_points: int = 8192

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        unknown = set(raw) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        scenarios = [ScenarioConfig.from_dict(s) for s in raw.get("scenarios", [])]
        return cls(
            out=raw.get("out", "."),
            scenarios=scenarios,
            seed=raw.get("seed", 0),
            quadrature_points=raw.get("quadrature_points", 8192),
        )

    def to_dict(self) -> dict:
        return {
            "out": self.out,
            "seed": self.seed,
            "quadrature_points": self.quadrature_points,
            "scenarios": [asdict(s) for s in self.scenarios],
        }


def _manifest_base(cfg: ScenarioConfig, extra: dict | None = None) -> dict:
    payload = {
        "model": cfg.model,
        "alpha": cfg.alpha,
        "L": cfg.L,
        "boundary": cfg.boundary,
        "state": cfg.state,
        "seed": cfg.seed,
        "c": cfg.c,
        "dt": cfg.dt,
        "tmax": cfg.tmax,
        "version": gecsim.__version__,
    }
    if extra:
        payload.update(extra)
    return payload


def _run_one_scenario(cfg: ScenarioConfig, out_dir: Path):
    scn = cfg.to_scenario()
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.time()
    result = run_scenario(scn)
    elapsed = time.time() - started

    reals = result.realizations
    upper = np.array([cfg.c * (cfg.L - 1) * t for t in scn.t_grid])
    qp = reals[0].E_g_qp
    if len(reals) == 1:
        write_gec_csv(out_dir / "gec.csv", scn.t_grid, reals[0].E_g, upper, qp)
        write_profile_csv(out_dir / "entropy_profile.csv", scn.t_grid, reals[0].profiles)
    else:
        write_gec_csv(out_dir / "gec.csv", scn.t_grid, result.E_g_mean, upper, qp)
        write_envelope_csv(out_dir / "gec_envelope.csv", scn.t_grid, result.E_g_mean, result.E_g_min, result.E_g_max)
        mean_profile = np.mean([r.profiles for r in reals], axis=0)
        write_profile_csv(out_dir / "entropy_profile.csv", scn.t_grid, mean_profile)
        rdir = out_dir / "realizations"
        rdir.mkdir(exist_ok=True)
        for i, r in enumerate(reals):
            write_gec_csv(rdir / f"gec_r{i:03d}.csv", scn.t_grid, r.E_g, upper, qp)
    write_manifest(
        out_dir / "manifest.json",
        _manifest_base(cfg, {"N": scn.model.N, "realizations": len(reals), "wall_time_s": round(elapsed, 3)}),
    )


@click.group()
def main():
    """Free-fermion entanglement dynamics and circuit-cost bounds."""


def _scenario_options(f):
    opts = [
        click.option("--L", "L", type=int, default=None, help="Number of lattice sites (even)."),
        click.option("--model", type=click.Choice(["tb", "lr"]), default="tb"),
        click.option("--alpha", type=float, default=None, help="Hopping exponent for model 'lr'."),
        click.option("--boundary", type=click.Choice(["open", "periodic"]), default="open"),
        click.option("--state", default="neel", help="neel | domainwall | altprefix:<p> | random:<n>"),
        click.option("--seed", type=int, default=0),
        click.option("--tmax", type=float, default=10.0),
        click.option("--dt", type=float, default=0.25),
        click.option("--c", "c", type=float, default=DEFAULT_C),
        click.option("--allow-odd-L", "allow_odd_L", is_flag=True),
        click.option("--out", default="run_out", help="Output directory."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


@main.command()
@_scenario_options
@click.option("--quasiparticle", is_flag=True, help="Overlay the quasiparticle capacity prediction.")
@click.option("--config", "config_path", type=click.Path(), default=None, help="JSON config with one or more scenarios.")
def simulate(config_path, out, **flags):
    """Evolve initial states exactly and write capacity/entropy series."""
    try:
        if config_path is not None:
            try:
                raw = json.loads(Path(config_path).read_text())
            except FileNotFoundError:
                raise ConfigError(f"config file not found: {config_path}")
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{config_path}: {exc}")
            run_cfg = RunConfig.from_dict(raw)
            if not run_cfg.scenarios:
                raise ConfigError("config contains no scenarios")
        else:
            if flags["L"] is None:
                raise ConfigError("L: required (or pass --config)")
            cfg = ScenarioConfig(name="run", **{k: v for k, v in flags.items() if k != "L"}, L=flags["L"])
            run_cfg = RunConfig(out=out, scenarios=[cfg], seed=cfg.seed)
        base = Path(run_cfg.out if config_path else out)
        jobs = run_cfg.scenarios
        try:
            workers = max(1, int(os.environ.get("FCL_THREADS", "1")))
        except ValueError:
            workers = 1
        targets = [base / job.name if len(jobs) > 1 else base for job in jobs]
        if workers > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(_run_one_scenario, jobs, targets))
        else:
            for job, target in zip(jobs, targets):
                _run_one_scenario(job, target)
    except NumericalHealthError as exc:
        _fail(EXIT_NUMERICAL, str(exc))
    except (ConfigError, ValidationError, ValueError) as exc:
        _fail(EXIT_CONFIG, str(exc))


@main.command()
@_scenario_options
@click.option("--ell", "ells", type=int, multiple=True, help="Cut positions to predict (default L/2).")
@click.option("--quadrature-points", type=int, default=8192)
def quasiparticle(out, ells, quadrature_points, **flags):
    """Write quasiparticle entropy and capacity predictions (tight-binding only)."""
    try:
        if flags["model"] != "tb":
            raise ConfigError("quasiparticle predictions apply to the tight-binding model only (got model 'lr')")
        if flags["L"] is None:
            raise ConfigError("L: required")
        L = flags["L"]
        cfg = ScenarioConfig(name="qp", **{k: v for k, v in flags.items() if k != "L"}, L=L)
        cfg.to_model()  # validates L and boundary
        if not ells:
            ells = (L // 2,)
        bad = [e for e in ells if not 1 <= e <= L - 1]
        if bad:
            raise ConfigError(f"ell: must be in [1, {L - 1}], got {bad[0]}")
        qp = QuasiparticleInput(L=L, quadrature_points=quadrature_points)
        t_grid = np.arange(0.0, cfg.tmax + cfg.dt / 2, cfg.dt)
        scaling = np.array([[entropy_scaling(qp, min(e, L - e), t) for e in ells] for t in t_grid])
        finite = np.array([[entropy_finite_size(qp, e, t) for e in ells] for t in t_grid])
        eg = np.array([gec_prediction(qp, t) for t in t_grid])
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_qp_profile_csv(out_dir / "qp_profile.csv", t_grid, ells, scaling, finite)
        upper = np.array([cfg.c * (L - 1) * t for t in t_grid])
        write_gec_csv(out_dir / "qp_gec.csv", t_grid, eg, upper, eg)
        write_manifest(out_dir / "manifest.json", _manifest_base(cfg, {"quadrature_points": quadrature_points, "ells": list(ells)}))
    except (ConfigError, ValidationError, ValueError) as exc:
        _fail(EXIT_CONFIG, str(exc))


@main.command()
@click.option("--max-L", "max_L", type=int, default=8)
@click.option("--seeds", type=int, default=3, help="Random product states per size.")
@click.option("--tolerance", type=float, default=1e-9)
def verify(max_L, seeds, tolerance):
    """Cross-check the Gaussian engine against the many-body oracle."""
    from gecsim.fock import MAX_SITES, FockState, build_manybody_hamiltonian, entropy_partial_trace, evolve_fock
    from gecsim.gaussian import block_entropy, evolve, initial_correlation
    from gecsim.lattice import build_hamiltonian

    if max_L > MAX_SITES:
        _fail(EXIT_CONFIG, f"max-L: oracle guard is L <= {MAX_SITES}, got {max_L}")
    if max_L < 2:
        _fail(EXIT_CONFIG, f"max-L: must be >= 2, got {max_L}")
    # test hook: scales the single-particle matrix to fault-inject a broken propagator
    corruption = float(os.environ.get("GECSIM_FAULT_SCALE", "1.0"))
    times = (0.3, 1.1, 2.7, 5.0)
    worst = (0.0, None)
    for L in range(4, max_L + 1, 2):
        spec = ModelSpec(L=L)
        h = build_hamiltonian(spec)
        h_evolve = h
        if corruption != 1.0:
            from gecsim.lattice import SingleParticleHamiltonian

            h_evolve = SingleParticleHamiltonian(spec=spec, matrix=h.matrix * corruption)
        states = [ProductState.neel(L), ProductState.domain_wall(L)]
        for s in range(seeds):
            states.append(generate_state(StateSpec(StateLabel.UNIFORM_RANDOM, seed=s), L, L // 2))
        H_mb = build_manybody_hamiltonian(h, L // 2)
        for state in states:
            C0 = initial_correlation(state)
            psi0 = FockState.from_product(state)
            for t in times:
                Ct = evolve(C0, h_evolve, t)
                psit = evolve_fock(psi0, H_mb, t)
                for ell in range(1, L):
                    dev = abs(block_entropy(Ct, ell) - entropy_partial_trace(psit, ell))
                    if dev > worst[0]:
                        occ = "".join(map(str, state.occupations))
                        worst = (dev, (L, occ, t, ell))
    click.echo(f"max |gaussian - oracle| entropy deviation: {worst[0]:.3e}")
    if worst[0] > tolerance:
        L, occ, t, ell = worst[1]
        click.echo(f"breach at L={L} state={occ} t={t} ell={ell}", err=True)
        sys.exit(1)


@main.command()
@click.option("--input", "input_path", type=click.Path(), required=True, help="gec.csv-style series file.")
@click.option("--t-min", type=float, default=None)
@click.option("--t-max", type=float, default=None)
@click.option("--column", default="E_g")
@click.option("--out", default="fit.json")
def fit(input_path, t_min, t_max, column, out):
    """Least-squares power-law exponent on a (t, E_g) series."""
    try:
        try:
            cols = read_series_csv(input_path)
        except FileNotFoundError:
            raise ConfigError(f"input file not found: {input_path}")
        if "t" not in cols or column not in cols:
            raise ConfigError(f"{input_path}: need columns 't' and {column!r}, found {sorted(cols)}")
        t, y = cols["t"], cols[column]
        window = (t_min if t_min is not None else 1.0, t_max if t_max is not None else float(t[-1]))
        result = fit_growth_exponent(t, y, window)
        write_fit_json(out, result)
        click.echo(f"gamma = {result.gamma:.6g} (r^2 = {result.r_squared:.6g})")
    except (ConfigError, ValueError) as exc:
        _fail(EXIT_CONFIG, str(exc))


@main.command()
@click.option("--L", "L_list", type=int, multiple=True, required=True)
@click.option("--model", type=click.Choice(["tb", "lr"]), default="tb")
@click.option("--alpha", type=float, default=None)
@click.option("--boundary", type=click.Choice(["open", "periodic"]), default="open")
@click.option("--state", default="neel")
@click.option("--seed", type=int, default=0)
@click.option("--t-over-l-max", type=float, default=0.5)
@click.option("--dt", type=float, default=0.25)
@click.option("--out", default="collapse_out")
def collapse(L_list, model, alpha, boundary, state, seed, t_over_l_max, dt, out):
    """Run one state at several sizes and write the rescaled collapse series."""
    try:
        if model == "lr" and alpha is None:
            raise ConfigError("alpha: required for model 'lr'")
        spec = _parse_state(state, seed)
        result = collapse_set(
            list(L_list),
            alpha=NEAREST_NEIGHBOR if model == "tb" else alpha,
            boundary=Boundary(boundary),
            state_kind=spec.kind,
            t_over_L_max=t_over_l_max,
            dt=dt,
            seed=seed,
        )
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_collapse_csv(out_dir / "collapse.csv", result.L_list, result.t_over_L, result.eg_over_L2)
        write_manifest(out_dir / "manifest.json", {
            "model": model,
            "alpha": alpha,
            "boundary": boundary,
            "state": state,
            "seed": seed,
            "L_list": list(result.L_list),
            "dt": dt,
            "t_over_L_max": t_over_l_max,
            "collapse_spread": result.spread,
            "version": gecsim.__version__,
        })
        click.echo(f"collapse spread = {result.spread:.6g}")
    except (ConfigError, ValidationError, ValueError) as exc:
        _fail(EXIT_CONFIG, str(exc))


if __name__ == "__main__":
    main()
