"""Scenario configuration, the build pipeline from config to mixture model,
and the experiment runner that writes plot-ready artifact files.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from fluidris import tomlmini
from fluidris.channel import (
    CorrelationModel,
    PhaseConfig,
    SpectralModel,
    build_correlation,
    build_coupling,
    spectral_group,
)
from fluidris.errors import ConfigurationError
from fluidris.geometry import UpaGeometry
from fluidris.metrics import (
    LinkBudget,
    ergodic_capacity,
    gain_threshold,
    outage_asymptotic,
    outage_exact,
)
from fluidris.mixture import MixtureModel, cdf_g0, coefficients, pdf_g0
from fluidris.montecarlo import McConfig, sample_g0, wilson_interval
from fluidris.selection import (
    ActiveSet,
    SelectionPolicy,
    pattern_json,
    pattern_text,
    select_contiguous,
    select_fluid,
)

__all__ = ["BuiltScenario", "Scenario", "compare_scenarios", "load_scenario", "run_scenario"]

_V_DEFAULT_SNR = (30.0, 130.0, 5.0)


@dataclass(frozen=True)
class Scenario:
    """One experiment: geometry, selection policy, link budget, seeds, sweep."""

    name: str = "scenario"
    geometry: UpaGeometry = field(default_factory=lambda: UpaGeometry(20, 20, 0.15, 0.125))
    selection: SelectionPolicy = field(default_factory=lambda: SelectionPolicy(mode="fluid", m_on=25))
    budget: LinkBudget = field(default_factory=LinkBudget)
    phase_seed: int = 101
    mc: McConfig = field(default_factory=McConfig)
    snr_db: tuple = field(default_factory=lambda: _snr_grid(*_V_DEFAULT_SNR))
    cluster_tol: float = 1e-6
    rank_tol: float = 1e-10

    def to_dict(self) -> dict:
        return {
            "scenario": {"name": self.name, "phase_seed": self.phase_seed},
            "geometry": {
                "m_x": self.geometry.m_x,
                "m_z": self.geometry.m_z,
                "d_w": self.geometry.d_w,
                "lambda_c_m": self.geometry.lambda_c,
            },
            "selection": {
                "mode": self.selection.mode,
                "m_on": self.selection.m_on,
                "tau_init": self.selection.tau_init,
                "relaxation_step": self.selection.relaxation_step,
            },
            "budget": {
                "p_tx_w": self.budget.p_tx_w,
                "n0_w": self.budget.n0_w,
                "rho_f": self.budget.rho_f,
                "rho_u": self.budget.rho_u,
                "d_f_m": self.budget.d_f_m,
                "d_u_m": self.budget.d_u_m,
                "alpha_f": self.budget.alpha_f,
                "alpha_u": self.budget.alpha_u,
                "r0_bps_hz": self.budget.r0_bps_hz,
            },
            "mc": (
                {"trials": self.mc.trials, "seed": self.mc.seed, "batch": self.mc.batch}
                if self.mc is not None
                else {"trials": 0}
            ),
            "sweep": {"snr_db": list(self.snr_db)},
            "spectral": {"cluster_tol": self.cluster_tol, "rank_tol": self.rank_tol},
        }


def _snr_grid(start: float, stop: float, step: float) -> tuple:
    if step <= 0 or stop < start:
        raise ConfigurationError("SNR sweep must have positive step and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(start + i * step for i in range(n))


def _require(table: dict, section: str, key: str, kind, default=None):
    sec = table.get(section, {})
    if key not in sec:
        if default is not None:
            return default
        raise ConfigurationError(f"config missing [{section}] {key}")
    val = sec[key]
    if kind is float and isinstance(val, int):
        val = float(val)
    if not isinstance(val, kind):
        raise ConfigurationError(f"config field [{section}] {key} has wrong type {type(val).__name__}")
    return val


def scenario_from_dict(doc: dict) -> Scenario:
    geom = UpaGeometry(
        m_x=_require(doc, "geometry", "m_x", int, 20),
        m_z=_require(doc, "geometry", "m_z", int, 20),
        d_w=_require(doc, "geometry", "d_w", float, 0.15),
        lambda_c=_require(doc, "geometry", "lambda_c_m", float, 0.125),
    )
    policy = SelectionPolicy(
        mode=_require(doc, "selection", "mode", str, "fluid"),
        m_on=_require(doc, "selection", "m_on", int, 25),
        tau_init=_require(doc, "selection", "tau_init", float, 0.3),
        relaxation_step=_require(doc, "selection", "relaxation_step", float, 0.07),
    )
    budget = LinkBudget(
        p_tx_w=_require(doc, "budget", "p_tx_w", float, 1.0),
        n0_w=_require(doc, "budget", "n0_w", float, 1.0),
        rho_f=_require(doc, "budget", "rho_f", float, 10.0),
        rho_u=_require(doc, "budget", "rho_u", float, 10.0),
        d_f_m=_require(doc, "budget", "d_f_m", float, 20.0),
        d_u_m=_require(doc, "budget", "d_u_m", float, 40.0),
        alpha_f=_require(doc, "budget", "alpha_f", float, 2.1),
        alpha_u=_require(doc, "budget", "alpha_u", float, 2.1),
        r0_bps_hz=_require(doc, "budget", "r0_bps_hz", float, 0.1),
    )
    trials = _require(doc, "mc", "trials", int, 1_000_000)
    mc = (
        McConfig(
            trials=trials,
            seed=_require(doc, "mc", "seed", int, 20250811),
            batch=_require(doc, "mc", "batch", int, 250_000),
        )
        if trials > 0
        else None
    )
    sweep = doc.get("sweep", {})
    if "snr_db" in sweep:
        grid = tuple(float(x) for x in sweep["snr_db"])
    else:
        grid = _snr_grid(
            _require(doc, "sweep", "snr_db_start", float, _V_DEFAULT_SNR[0]),
            _require(doc, "sweep", "snr_db_stop", float, _V_DEFAULT_SNR[1]),
            _require(doc, "sweep", "snr_db_step", float, _V_DEFAULT_SNR[2]),
        )
    return Scenario(
        name=_require(doc, "scenario", "name", str, "scenario"),
        geometry=geom,
        selection=policy,
        budget=budget,
        phase_seed=_require(doc, "scenario", "phase_seed", int, 101),
        mc=mc,
        snr_db=grid,
        cluster_tol=_require(doc, "spectral", "cluster_tol", float, 1e-6),
        rank_tol=_require(doc, "spectral", "rank_tol", float, 1e-10),
    )


def load_scenario(path) -> Scenario:
    """Read a scenario from a .toml or .json config file."""
    p = Path(path)
    if not p.is_file():
        raise ConfigurationError(f"config file not found: {p}")
    text = p.read_text()
    if p.suffix == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"invalid JSON config {p}: {exc}") from exc
    elif p.suffix == ".toml":
        doc = tomlmini.loads(text)
    else:
        raise ConfigurationError(f"config must be .toml or .json, got {p.suffix!r}")
    if not isinstance(doc, dict):
        raise ConfigurationError("config root must be a table")
    return scenario_from_dict(doc)


@dataclass(frozen=True)
class BuiltScenario:
    """All derived channel objects for a scenario."""

    scenario: Scenario
    active: ActiveSet
    corr: CorrelationModel
    phase: PhaseConfig
    coupling: np.ndarray
    composite: np.ndarray
    spectral: SpectralModel
    mixture: MixtureModel


def build_scenario(sc: Scenario) -> BuiltScenario:
    """Run the full pipeline selection -> correlation -> coupling -> mixture."""
    if sc.selection.mode == "fluid":
        active = select_fluid(sc.geometry, sc.selection)
    else:
        active = select_contiguous(sc.geometry, sc.selection.m_on)
    corr = build_correlation(sc.geometry, active)
    phase = PhaseConfig.sample(len(active), seed=sc.phase_seed)
    a, c = build_coupling(corr, phase)
    spectral = spectral_group(c, cluster_tol=sc.cluster_tol, rank_tol=sc.rank_tol)
    mixture = coefficients(spectral)
    return BuiltScenario(
        scenario=sc,
        active=active,
        corr=corr,
        phase=phase,
        coupling=a,
        composite=c,
        spectral=spectral,
        mixture=mixture,
    )


def _write_csv(path: Path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(x) if isinstance(x, float) else str(x) for x in row))
    path.write_text("\n".join(lines) + "\n")


def run_scenario(sc: Scenario, out_dir) -> dict:
    """Produce the artifact files for one scenario; returns the file map."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    built = build_scenario(sc)
    mix = built.mixture

    files = {}
    files["pattern_txt"] = out / f"{sc.name}_pattern.txt"
    files["pattern_txt"].write_text(pattern_text(sc.geometry, built.active))
    files["pattern_json"] = out / f"{sc.name}_pattern.json"
    files["pattern_json"].write_text(pattern_json(sc.geometry, built.active))

    samples = sample_g0(built.corr, built.phase, sc.mc) if sc.mc is not None else None

    # analytic density on a quantile-spanned grid, plus an empirical histogram
    mean = built.spectral.trace_c
    hi = mean
    while cdf_g0(mix, hi) < 0.999:
        hi *= 1.5
    grid = np.linspace(mean * 1e-4, hi, 400)
    files["pdf_csv"] = out / f"{sc.name}_pdf.csv"
    _write_csv(
        files["pdf_csv"],
        ["g", "pdf_analytic", "cdf_analytic"],
        zip(grid.tolist(), pdf_g0(mix, grid).tolist(), cdf_g0(mix, grid).tolist()),
    )
    if samples is not None:
        counts, edges = np.histogram(samples, bins=80, range=(0.0, hi), density=True)
        files["hist_csv"] = out / f"{sc.name}_mc_hist.csv"
        _write_csv(
            files["hist_csv"],
            ["bin_lo", "bin_hi", "density"],
            zip(edges[:-1].tolist(), edges[1:].tolist(), counts.tolist()),
        )

    op_rows = []
    ec_rows = []
    n = 0 if samples is None else samples.shape[0]
    for snr in sc.snr_db:
        b = sc.budget.at_snr_db(snr)
        rt = gain_threshold(b)
        res = outage_asymptotic(mix, b)
        ec_q = ergodic_capacity(mix, b)
        ec_mb = ergodic_capacity(mix, b, method="mellin_barnes")
        if samples is not None:
            fails = int(np.count_nonzero(samples < rt))
            w_lo, w_hi = wilson_interval(fails, n)
            cvals = np.log1p(b.effective_gain * samples) / math.log(2.0)
            ec_mc = float(cvals.mean())
            half = 2.5758293035489004 * float(cvals.std(ddof=1)) / math.sqrt(n)
            op_rows.append((snr, rt, res.exact, res.asymptotic, fails / n, w_lo, w_hi))
            ec_rows.append((snr, ec_q, ec_mb, ec_mc, ec_mc - half, ec_mc + half))
        else:
            op_rows.append((snr, rt, res.exact, res.asymptotic))
            ec_rows.append((snr, ec_q, ec_mb))

    files["outage_csv"] = out / f"{sc.name}_outage.csv"
    op_header = ["snr_db", "r_tilde", "op_exact", "op_asymptotic"]
    ec_header = ["snr_db", "ec_quadrature", "ec_mellin_barnes"]
    if samples is not None:
        op_header += ["op_mc", "wilson_lo", "wilson_hi"]
        ec_header += ["ec_mc", "ec_ci_lo", "ec_ci_hi"]
    _write_csv(files["outage_csv"], op_header, op_rows)
    files["capacity_csv"] = out / f"{sc.name}_capacity.csv"
    _write_csv(files["capacity_csv"], ec_header, ec_rows)

    prov = {
        "config": sc.to_dict(),
        "package_version": _package_version(),
        "selection": {
            "tau_used": built.active.tau_used,
            "stride_used": built.active.stride_used,
            "max_corr": built.active.max_corr,
            "indices": list(built.active.indices),
        },
        "spectral": json.loads(built.spectral.to_json()),
        "mixture": {
            "regime": mix.regime,
            "condition_estimate": mix.condition_estimate,
            "n_terms": int(mix.weights.shape[0]),
        },
        "files": {k: v.name for k, v in files.items()},
    }
    files["provenance"] = out / f"{sc.name}_provenance.json"
    files["provenance"].write_text(json.dumps(prov, indent=2, sort_keys=True) + "\n")
    return files


def _package_version() -> str:
    from fluidris import __version__

    return __version__


def compare_scenarios(scenarios, out_csv) -> Path:
    """Aligned-by-SNR comparison CSV across two or more scenarios."""
    if len(scenarios) < 2:
        raise ConfigurationError("compare needs at least two scenario configs")
    grids = {tuple(sc.snr_db) for sc in scenarios}
    if len(grids) != 1:
        raise ConfigurationError("scenarios have mismatched SNR grids; cannot align columns")
    names = [sc.name for sc in scenarios]
    if len(set(names)) != len(names):
        raise ConfigurationError("scenario names must be unique for comparison")
    built = [build_scenario(sc) for sc in scenarios]
    grid = scenarios[0].snr_db
    header = ["snr_db"]
    for name in names:
        header += [f"op_exact_{name}", f"ec_{name}"]
    rows = []
    for snr in grid:
        row = [snr]
        for sc, bs in zip(scenarios, built):
            b = sc.budget.at_snr_db(snr)
            row.append(outage_exact(bs.mixture, b))
            row.append(ergodic_capacity(bs.mixture, b))
        rows.append(tuple(row))
    out = Path(out_csv)
    out.parent.mkdir(parents=True, exist_ok=True)
    _write_csv(out, header, rows)
    return out
