"""Experiment orchestration: sweeps, stability bisection, scaling fits, export.

Every command is a pure function of (params, seed): sweeps shard into
independent points, optionally dispatched to a process pool, and results are
merged by point index so the output is identical regardless of completion
order or parallelism degree.  Per-point random streams derive from
(seed, index) through numpy's SeedSequence, keeping reruns bit-identical.
"""

from __future__ import annotations

import hashlib
import json
import math
import time as _time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import __version__
from .errors import BracketError, ConfigError, DomainError
from .linmodes import (
    NoShearSystem,
    classify_no_shear,
    fitted_exponent_report,
    ghost_energy,
    integrate_affine_mode,
    integrate_coupled_linear,
    inviscid_exponents,
    no_shear_eigenvalues,
    verify_mode_bound,
)
from .multipliers import CutoffConfig, DissipationConfig, FrequencyMode
from .profiles import admit, profile_from_dict, profile_spectrum
from .sim import SimConfig, simulate, write_snapshot

__all__ = [
    "ExperimentConfig",
    "SweepResult",
    "ThresholdResult",
    "ScalingFit",
    "default_mode_panel",
    "stability_predicate",
    "threshold_bisect",
    "scaling_fit",
    "run_experiment",
    "export",
    "read_sweep_csv",
]

COMMANDS = ("eigen", "exponents", "mode", "coupled", "admit", "simulate",
            "threshold", "scaling")

#: default safety factor on the stability envelope and panel horizon padding
ENVELOPE_SAFETY = 2.0


# ---------------------------------------------------------------------------
# stability predicate and bisection
# ---------------------------------------------------------------------------

def default_mode_panel(nu: float) -> list[FrequencyMode]:
    """k in {1, 2, 4} x critical times {0, C/2, C, 2C} with C = nu^(-1/3).

    The panel covers the resonant and non-resonant regimes of the per-mode
    energy estimate.
    """
    C = nu ** (-1.0 / 3.0)
    return [FrequencyMode(k, k * r) for k in (1, 2, 4)
            for r in (0.0, 0.5 * C, C, 2.0 * C)]


def panel_horizon(nu: float) -> float:
    return 4.0 * nu ** (-1.0 / 3.0) + 20.0


def stability_predicate(nu: float, alpha: float, modes=None,
                        safety: float = ENVELOPE_SAFETY, t_end: float | None = None,
                        rtol: float = 1e-8) -> bool:
    """True when every panel trajectory stays within safety x its envelope."""
    if modes is None:
        modes = default_mode_panel(nu)
    horizon = t_end if t_end is not None else panel_horizon(nu)
    cut = CutoffConfig.from_nu(nu) if nu < 1 else CutoffConfig(2.0)
    for mode in modes:
        traj = integrate_affine_mode(mode, alpha, nu, horizon,
                                     omega0=1.0, theta0=0.5j, rtol=rtol)
        report = verify_mode_bound(traj, cut)
        if report.ratio > safety * report.envelope:
            return False
    return True


@dataclass
class ThresholdResult:
    nu: float
    alpha_star: float
    transition_found: bool
    bracket: tuple
    iterations: int
    certified_alpha: float
    certified_stable: bool


def threshold_bisect(nu: float, tol: float = 1e-3, predicate=None, modes=None,
                     bracket: tuple = (-1.0, 0.0)) -> ThresholdResult:
    """Bisect the slope axis for the empirical stability boundary.

    The predicate must be monotone over the bracket (checked at the
    endpoints): stable near 0, possibly unstable at the negative end.  Returns
    the stable-side endpoint as alpha_star; when the predicate never fails on
    the bracket the lower end is returned with ``transition_found=False``.
    The certified point -nu^(1/3)/100 is always evaluated explicitly.
    """
    if predicate is None:
        def predicate(alpha):
            return stability_predicate(nu, alpha, modes=modes)
    lo, hi = bracket
    if not lo < hi:
        raise ConfigError("bracket must be increasing")

    certified_alpha = -(nu ** (1.0 / 3.0)) / 100.0
    certified_stable = bool(predicate(certified_alpha))

    if not predicate(hi):
        raise BracketError(f"predicate unstable at the bracket end {hi}; cannot bisect")
    if predicate(lo):
        return ThresholdResult(nu=nu, alpha_star=lo, transition_found=False,
                               bracket=(lo, hi), iterations=0,
                               certified_alpha=certified_alpha,
                               certified_stable=certified_stable)

    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
        iterations += 1
    return ThresholdResult(nu=nu, alpha_star=hi, transition_found=True,
                           bracket=(lo, hi), iterations=iterations,
                           certified_alpha=certified_alpha,
                           certified_stable=certified_stable)


@dataclass
class ScalingFit:
    exponent: float
    prefactor: float
    stderr: float
    ci95: tuple
    n_points: int


def scaling_fit(pairs) -> ScalingFit:
    """Least-squares slope of log|alpha_star| against log nu, with a 95% CI.

    Exploratory: the theory proves a sufficient threshold scaling like
    nu^(1/3), so no hard tolerance is attached to the fitted exponent.
    """
    pairs = [(float(nu), float(a)) for nu, a in pairs]
    if len(pairs) < 4:
        raise ConfigError("scaling fit needs at least 4 (nu, alpha_star) pairs")
    if any(a >= 0 for _, a in pairs):
        raise DomainError("scaling fit requires negative alpha_star values")
    x = np.log([nu for nu, _ in pairs])
    y = np.log([abs(a) for _, a in pairs])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    dof = len(pairs) - 2
    sxx = float(np.sum((x - x.mean()) ** 2))
    stderr = math.sqrt(float(np.sum(resid**2)) / dof / sxx) if dof > 0 else float("inf")
    tq = stats.t.ppf(0.975, dof) if dof > 0 else float("inf")
    return ScalingFit(exponent=float(slope), prefactor=float(math.exp(intercept)),
                      stderr=stderr, ci95=(float(slope - tq * stderr),
                                           float(slope + tq * stderr)),
                      n_points=len(pairs))


# ---------------------------------------------------------------------------
# sweep machinery
# ---------------------------------------------------------------------------

@dataclass
class ExperimentConfig:
    command: str
    params: dict
    out: str | None = None
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; expected one of {COMMANDS}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def canonical_hash(self) -> str:
        payload = json.dumps({"command": self.command, "params": self.params,
                              "seed": self.seed}, sort_keys=True, default=str)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class SweepResult:
    command: str
    rows: list
    provenance: dict = field(default_factory=dict)

    @property
    def failed_rows(self) -> list:
        return [r for r in self.rows if "error" in r]


def _point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def _expand_points(command: str, params: dict) -> list[dict]:
    """Shard a command's parameter set into independent sweep points."""
    if command == "eigen":
        modes = params.get("modes", [[1, 0.0]])
        return [{"alpha": a, "nu": params.get("nu", 0.0), "mu": params.get("mu", 0.0),
                 "k": int(k), "xi": float(xi)}
                for a in params["alphas"] for k, xi in modes]
    if command == "exponents":
        return [{"alpha": a, "fit": params.get("fit", False),
                 "t_end": params.get("t_end", 1e4)} for a in params["alphas"]]
    if command == "mode":
        alphas = params.get("alphas", [params.get("alpha")])
        modes = params.get("modes")
        if modes is None:
            modes = [[m.k, m.xi] for m in default_mode_panel(params["nu"])]
        return [{"nu": params["nu"], "alpha": a, "k": int(k), "xi": float(xi),
                 "t_end": params.get("t_end"), "dissipation": params.get("dissipation", "full")}
                for a in alphas for k, xi in modes]
    if command == "coupled":
        return [dict(params)]
    if command == "admit":
        orders = params.get("orders", [params.get("N", 2)])
        nus = params.get("nus", [params["nu"]] if "nu" in params else None)
        if nus is None:
            raise ConfigError("admit needs 'nu' or 'nus'")
        return [{"profile": params["profile"], "N": int(N), "nu": float(nu)}
                for N in orders for nu in nus]
    if command == "simulate":
        seeds = params.get("seeds", [params.get("seed", 0)])
        base = {k: v for k, v in params.items() if k not in ("seeds",)}
        return [dict(base, seed=int(s)) for s in seeds]
    if command == "threshold":
        return [{"nu": float(nu), "tol": params.get("tol", 1e-3),
                 "safety": params.get("safety", ENVELOPE_SAFETY)}
                for nu in params["nus"]]
    if command == "scaling":
        return [dict(params)]
    raise ConfigError(f"unknown command {command!r}")


def _run_point(command: str, point: dict, seed: int) -> dict:
    if command == "eigen":
        sys = NoShearSystem(mode=FrequencyMode(point["k"], point["xi"]),
                            alpha=point["alpha"],
                            diss=DissipationConfig(nu_y=point["nu"], mu_y=point["mu"]))
        lam1, lam2 = no_shear_eigenvalues(sys)
        row = {"alpha": point["alpha"], "k": point["k"], "xi": point["xi"],
               "nu": point["nu"], "mu": point["mu"],
               "lambda1_re": lam1.real, "lambda1_im": lam1.imag,
               "lambda2_re": lam2.real, "lambda2_im": lam2.imag}
        if sys.diss.one_coefficient_vanishes():
            row["classification"] = classify_no_shear(sys)
        return row

    if command == "exponents":
        if point["fit"]:
            rep = fitted_exponent_report(point["alpha"], t_end=point["t_end"])
        else:
            rep = inviscid_exponents(point["alpha"])
        row = {"alpha": point["alpha"], "beta1_re": rep.beta1.real,
               "beta1_im": rep.beta1.imag, "beta2_re": rep.beta2.real,
               "beta2_im": rep.beta2.imag, "c": rep.c,
               "double_root": rep.double_root}
        row.update({f"rate_{k}": v for k, v in rep.predicted_rates.items()})
        if rep.fitted_beta is not None:
            row["fitted_beta"] = rep.fitted_beta
            row["fit_window_lo"], row["fit_window_hi"] = rep.fit_window
        return row

    if command == "mode":
        nu = point["nu"]
        t_end = point["t_end"] if point["t_end"] else panel_horizon(nu)
        traj = integrate_affine_mode(FrequencyMode(point["k"], point["xi"]),
                                     point["alpha"], nu, t_end,
                                     omega0=1.0, theta0=0.5j,
                                     dissipation=point["dissipation"])
        report = verify_mode_bound(traj)
        return {"nu": nu, "alpha": point["alpha"], "k": point["k"], "xi": point["xi"],
                "ratio": report.ratio, "envelope": report.envelope,
                "envelope_display": report.envelope_display, "passed": report.passed,
                "t_at_max": report.t_at_max}

    if command == "coupled":
        nu = point["nu"]
        spectrum = profile_spectrum(profile_from_dict(point["profile"]))
        dxi = point.get("dxi", 0.25)
        xi_max = point.get("xi_max", 6.0)
        half = int(round(xi_max / dxi))
        xi = dxi * np.arange(-half, half + 1)
        k_columns = tuple(point.get("k_columns", (1, 2)))
        rng = np.random.default_rng(seed)
        shape = (len(k_columns), xi.size)
        envelope = np.exp(-2.0 * xi**2)
        omega0 = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * envelope
        vartheta0 = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * envelope
        t_end = point.get("t_end", 3.0 * nu ** (-1.0 / 3.0))
        ctraj = integrate_coupled_linear(spectrum, k_columns, xi, nu, t_end,
                                         omega0, vartheta0,
                                         rtol=point.get("rtol", 1e-9))
        energy = ghost_energy(ctraj, order=int(point.get("N", 0)))
        running_min = np.minimum.accumulate(energy)
        max_rel_increase = float(np.max(energy / np.maximum(running_min, 1e-300)) - 1.0)
        return {"nu": nu, "t_end": t_end, "energy_initial": float(energy[0]),
                "energy_final": float(energy[-1]),
                "max_relative_increase": max_rel_increase,
                "monotone": max_rel_increase <= point.get("tolerance", 1e-3),
                "truncation_flag": ctraj.truncation_flag}

    if command == "admit":
        report = admit(profile_from_dict(point["profile"]), point["N"], point["nu"])
        return {"N": point["N"], "nu": point["nu"],
                "value_main": report.value_main, "value_sobolev": report.value_sobolev,
                "threshold_main": report.threshold_main,
                "threshold_sobolev": report.threshold_sobolev,
                "passed_main": report.passed_main, "passed_sobolev": report.passed_sobolev,
                "admissible": report.admissible, "alpha_surrogate": report.alpha_surrogate}

    if command == "simulate":
        point = dict(point)
        artifacts_dir = point.pop("artifacts_dir", None)
        snapshots = point.pop("snapshots", False)
        cfg = SimConfig.from_dict(point)
        result = simulate(cfg)
        row = {"seed": cfg.seed, "nu": cfg.nu, "epsilon": cfg.epsilon,
               "t_final": float(result.times[-1])}
        row.update({f"flag_{k}": v for k, v in result.flags.items()})
        row.update({f"verdict_{k}": v for k, v in result.verdicts.items()})
        row.update({f"ledger_{k}": v for k, v in result.ledger.line_sums(cfg.nu).items()})
        if artifacts_dir is not None:
            from pathlib import Path

            out = Path(artifacts_dir)
            out.mkdir(parents=True, exist_ok=True)
            result.write_timeseries_csv(out / f"timeseries_seed{cfg.seed}.csv")
            if snapshots:
                write_snapshot(result.final_state, str(out / f"snapshot_seed{cfg.seed}"))
        return row

    if command == "threshold":
        result = threshold_bisect(point["nu"], tol=point["tol"])
        return {"nu": point["nu"], "alpha_star": result.alpha_star,
                "transition_found": result.transition_found,
                "iterations": result.iterations,
                "certified_alpha": result.certified_alpha,
                "certified_stable": result.certified_stable,
                "abs_alpha_star_over_certified":
                    abs(result.alpha_star) / abs(result.certified_alpha)}

    if command == "scaling":
        fit = scaling_fit(point["pairs"])
        return {"exponent": fit.exponent, "prefactor": fit.prefactor,
                "stderr": fit.stderr, "ci95_lo": fit.ci95[0], "ci95_hi": fit.ci95[1],
                "n_points": fit.n_points}

    raise ConfigError(f"unknown command {command!r}")


def _run_indexed(args):
    command, point, seed, index = args
    try:
        row = _run_point(command, point, seed)
    except Exception as exc:  # per-point failures never abort the sweep
        row = {"error": f"{type(exc).__name__}: {exc}"}
    row["index"] = index
    return index, row


def run_experiment(cfg: ExperimentConfig) -> SweepResult:
    """Dispatch a command over its sweep points, serial or process-parallel."""
    try:
        points = _expand_points(cfg.command, cfg.params)
    except KeyError as exc:
        raise ConfigError(f"command {cfg.command!r} needs parameter {exc}") from exc
    tasks = [(cfg.command, point, _point_seed(cfg.seed, i), i)
             for i, point in enumerate(points)]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            indexed = list(pool.map(_run_indexed, tasks))
    else:
        indexed = [_run_indexed(task) for task in tasks]
    rows = [row for _, row in sorted(indexed, key=lambda pair: pair[0])]
    provenance = {"config_hash": cfg.canonical_hash(), "code_version": __version__,
                  "command": cfg.command, "n_points": len(points),
                  "timestamp": _time.strftime("%Y-%m-%dT%H:%M:%S")}
    return SweepResult(command=cfg.command, rows=rows, provenance=provenance)


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def _columns(rows: list) -> list:
    keys = set()
    for row in rows:
        keys.update(row)
    keys.discard("index")
    return ["index"] + sorted(keys)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        value = value.item()  # numpy scalars -> python scalars
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def export(result: SweepResult, path, fmt: str = "csv") -> None:
    """Write the sweep rows with a stable column order.

    Provenance (which carries a timestamp) is only included in the json
    format under its own key; csv output is bit-identical across reruns.
    """
    if fmt == "csv":
        cols = _columns(result.rows)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(cols) + "\n")
            for row in result.rows:
                fh.write(",".join(_format_cell(row.get(c)) for c in cols) + "\n")
    elif fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump({"command": result.command, "rows": result.rows,
                       "provenance": result.provenance}, fh, indent=2,
                      sort_keys=True, default=str)
    else:
        raise ConfigError(f"unknown export format {fmt!r}")


def _parse_cell(text: str):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_sweep_csv(path) -> list:
    """Parse an exported csv back into a list of row dicts."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(",")
        rows = []
        for line in fh:
            cells = line.rstrip("\n").split(",")
            rows.append({key: _parse_cell(cell) for key, cell in zip(header, cells)
                         if cell != ""})
    return rows
