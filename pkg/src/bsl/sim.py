"""Nonlinear pseudospectral solver with bootstrap-norm monitoring.

Integrates the perturbation system in sheared coordinates with vertical
dissipation in both fields,

    d_t omega + v . grad_t omega = nu (d_y - t d_x)^2 omega + d_x theta
    d_t theta + v . grad_t theta = nu (d_y - t d_x)^2 theta + T'(y) v2

with v recovered mode-wise from omega (see :mod:`bsl.spectral` for the sign
conventions).  The background profile enters only through T'; the forcing
that sustains it is implicit, so zero perturbation data stays exactly zero.

Time stepping is a Lawson (integrating-factor) RK4: the vertical dissipation
exponent nu * int (xi - k tau)^2 dtau is a cubic polynomial evaluated exactly
per step and mode, so the stiff part never restricts the step; the explicit
tableau only sees the buoyancy coupling, the profile shifts and the dealiased
transport products.

Every quantity of the bootstrap system is evaluated on the fly: decaying
weight M = A*B on the fluctuations, capped weight H on the temperature, the
indicator-restricted resonant norm, the velocity-type norm with symbol
1/sqrt(k^2+(xi-kt)^2), and the shear-average pairs.  Sup-type entries are
tracked as running maxima and the L2-in-time entries as trapezoid integrals;
the ledger lines are compared against 16 eps^2 (vorticity groups) and
16 nu eps^2 (temperature groups).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError
from .multipliers import CutoffConfig, weight_a, weight_b, weight_h
from .profiles import (
    TemperatureProfile,
    profile_from_dict,
    profile_spectrum,
    profile_to_dict,
)
from .spectral import Grid2D, SpectralField, biot_savart, hermitian_symmetrize, nonlinear_transport

__all__ = [
    "SimConfig",
    "SimState",
    "BootstrapLedger",
    "SimResult",
    "build_initial_state",
    "nonlinear_rhs",
    "time_step",
    "bootstrap_norms",
    "simulate",
    "write_snapshot",
    "read_snapshot",
]

BLOWUP_FACTOR = 1e6

#: ledger entries tracked as running maxima (squared sup-type norms)
SUP_ENTRIES = ("omega_neq_sup", "theta_neq_sup", "omega_avg_sup", "theta_avg_sup")
#: ledger entries accumulated as time integrals of the listed integrands
INT_ENTRIES = ("omega_neq_vdiss", "omega_neq_res", "omega_neq_vel",
               "theta_neq_vdiss", "theta_neq_res", "theta_neq_vel",
               "omega_avg_vdiss", "theta_avg_vdiss")
CHI_ENTRIES = ("omega_neq_chi_out", "omega_neq_chi_in",
               "theta_neq_chi_out", "theta_neq_chi_in")


@dataclass
class SimConfig:
    """Nonlinear run configuration.

    ``epsilon`` scales the initial data; the regime hypothesis eps < nu^2 is
    evaluated and recorded, not enforced.  ``shear=False`` freezes the moving
    frame at t = 0 (no background shear), which leaves the stability theory's
    hypotheses; such runs are flagged.
    """

    nu: float
    profile: TemperatureProfile
    epsilon: float
    K: int = 32
    J: int = 32
    Ly: float = 16.0 * math.pi
    t_end: float = 10.0
    order: int = 2
    cfl: float = 0.4
    dt_max: float = 0.05
    seed: int = 0
    shear: bool = True
    diag_interval: float = 0.5
    init_spec: dict = field(default_factory=lambda: {"type": "random"})

    def __post_init__(self):
        if self.nu < 0:
            raise ConfigError("nu must be >= 0")
        if self.epsilon < 0:
            raise ConfigError("epsilon must be >= 0")
        if self.t_end <= 0:
            raise ConfigError("t_end must be positive")
        if not 0 < self.cfl <= 1.0:
            raise ConfigError("cfl must lie in (0, 1]")

    @property
    def grid(self) -> Grid2D:
        return Grid2D(self.K, self.J, self.Ly)

    def regime_ok(self) -> bool:
        """Small-data hypothesis 0 < eps < nu^2."""
        return 0.0 < self.epsilon < self.nu**2

    @classmethod
    def from_dict(cls, d: dict) -> "SimConfig":
        d = dict(d)
        grid = d.pop("grid", {})
        dt = d.pop("dt", {})
        # accept flat dotted keys as well
        for key in list(d):
            if key.startswith("grid."):
                grid[key.split(".", 1)[1]] = d.pop(key)
            elif key.startswith("dt."):
                dt[key.split(".", 1)[1]] = d.pop(key)
        profile = d.pop("profile", None)
        if profile is None:
            raise ConfigError("simulation config needs a 'profile' entry")
        kwargs = {
            "nu": d.pop("nu", None),
            "profile": profile_from_dict(profile) if isinstance(profile, dict) else profile,
            "epsilon": d.pop("epsilon", None),
            "t_end": d.pop("t_end", 10.0),
            "order": int(d.pop("N", d.pop("order", 2))),
            "seed": int(d.pop("seed", 0)),
        }
        if kwargs["nu"] is None or kwargs["epsilon"] is None:
            raise ConfigError("simulation config needs 'nu' and 'epsilon'")
        for name, source, default in (("K", grid, 32), ("J", grid, 32)):
            kwargs[name] = int(source.get(name, default))
        kwargs["Ly"] = float(grid.get("Ly", 16.0 * math.pi))
        kwargs["cfl"] = float(dt.get("cfl", 0.4))
        kwargs["dt_max"] = float(dt.get("max", 0.05))
        for opt in ("shear", "diag_interval", "init_spec"):
            if opt in d:
                kwargs[opt] = d.pop(opt)
        unknown = set(d) - {"command", "out"}
        if unknown:
            raise ConfigError(f"unknown simulation config keys: {sorted(unknown)}")
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "nu": self.nu, "epsilon": self.epsilon,
            "profile": profile_to_dict(self.profile),
            "grid": {"K": self.K, "J": self.J, "Ly": self.Ly},
            "t_end": self.t_end, "N": self.order,
            "dt": {"cfl": self.cfl, "max": self.dt_max},
            "seed": self.seed, "shear": self.shear,
            "diag_interval": self.diag_interval, "init_spec": self.init_spec,
        }


@dataclass
class SimState:
    """Spectral perturbation fields at one time."""

    omega: SpectralField
    theta: SpectralField
    t: float

    def copy(self) -> "SimState":
        return SimState(self.omega.copy(), self.theta.copy(), self.t)


# ---------------------------------------------------------------------------
# initial data
# ---------------------------------------------------------------------------

def _norm_pair(state: SimState, cfg: SimConfig) -> tuple[float, float]:
    """(||omega||_HN, ||d_x theta||_HN)."""
    kk, _ = cfg.grid.meshes()
    omega_norm = state.omega.sobolev_norm(cfg.order)
    theta_x = state.theta.copy()
    theta_x.coeffs *= 1j * kk
    return omega_norm, theta_x.sobolev_norm(cfg.order)


def build_initial_state(cfg: SimConfig) -> SimState:
    """Seeded smooth initial data scaled to the configured amplitude.

    Random data populates modes up to |k|, |j| <= 3 with a Gaussian spectral
    envelope and is normalized so ||omega||_HN + nu^(-1/2) ||d_x theta||_HN
    equals epsilon/2 (strictly inside the small-data ball).  A
    ``{"type": "single_mode", ...}`` spec places one Hermitian mode pair with
    explicit amplitudes instead, bypassing normalization.
    """
    grid = cfg.grid
    omega = SpectralField.zeros(grid)
    theta = SpectralField.zeros(grid)
    spec = cfg.init_spec
    kind = spec.get("type", "random")

    if cfg.epsilon == 0.0:
        return SimState(omega, theta, 0.0)

    if kind == "single_mode":
        k, j = int(spec.get("k", 1)), int(spec.get("j", 0))
        if abs(k) > grid.K or abs(j) > grid.J:
            raise ConfigError("single-mode init outside the grid")
        amp_o = complex(spec.get("amp_omega", 1.0)) * cfg.epsilon
        amp_t = complex(spec.get("amp_theta", 0.0)) * cfg.epsilon
        ik, ij = grid.K + k, grid.J + j
        omega.coeffs[ik, ij] = amp_o
        omega.coeffs[grid.K - k, grid.J - j] = np.conj(amp_o)
        theta.coeffs[ik, ij] = amp_t
        theta.coeffs[grid.K - k, grid.J - j] = np.conj(amp_t)
        if k == 0 and j == 0:
            raise ConfigError("mean mode cannot carry initial data")
        return SimState(omega, theta, 0.0)

    if kind != "random":
        raise ConfigError(f"unknown init type {kind!r}")

    rng = np.random.default_rng(cfg.seed)
    reach_k, reach_j = min(3, grid.K), min(3, grid.J)
    kk, xx = grid.meshes()
    envelope = np.exp(-(kk**2 + xx**2))
    band = (np.abs(kk) <= reach_k) & (np.abs(np.arange(-grid.J, grid.J + 1))[None, :] <= reach_j)
    for fld in (omega, theta):
        raw = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
        fld.coeffs = hermitian_symmetrize(raw * envelope * band)
        fld.coeffs[grid.K, grid.J] = 0.0
    state = SimState(omega, theta, 0.0)

    omega_norm, thetax_norm = _norm_pair(state, cfg)
    nu_for_scale = cfg.nu if cfg.nu > 0 else 1.0
    size = omega_norm + thetax_norm / math.sqrt(nu_for_scale)
    if size == 0.0:
        raise ConfigError("degenerate random initial data")
    scale = 0.5 * cfg.epsilon / size
    omega.coeffs *= scale
    theta.coeffs *= scale
    return state


# ---------------------------------------------------------------------------
# right-hand side and time stepping
# ---------------------------------------------------------------------------

def _frame_time(cfg: SimConfig, t: float) -> float:
    return t if cfg.shear else 0.0


def _profile_shifts(cfg: SimConfig) -> list[tuple[int, complex]]:
    spectrum = profile_spectrum(cfg.profile)
    shifts = []
    for f, m in zip(spectrum.freqs, spectrum.masses):
        if abs(m) == 0.0:
            continue
        s = f / cfg.grid.dxi
        if abs(s - round(s)) > 1e-9:
            raise ConfigError(
                f"profile frequency {f} is not a multiple of the grid spacing "
                f"{cfg.grid.dxi}; choose Ly accordingly")
        s = int(round(s))
        if abs(s) > 2 * cfg.grid.J:
            raise ConfigError("profile frequency outside the resolved grid")
        shifts.append((s, complex(m)))
    return shifts


def _apply_shifts(coeffs: np.ndarray, shifts) -> np.ndarray:
    """sum_a mass_a * coeffs shifted by the atom's j-offset (zero fill)."""
    out = np.zeros_like(coeffs)
    n = coeffs.shape[1]
    for s, m in shifts:
        if s == 0:
            out += m * coeffs
        elif s > 0:
            out[:, s:] += m * coeffs[:, :n - s]
        else:
            out[:, :s] += m * coeffs[:, -s:]
    return out


def nonlinear_rhs(state: SimState, cfg: SimConfig, shifts=None,
                  include_transport: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Explicit tendencies (buoyancy, profile forcing, transport), no dissipation.

    Returns (d omega, d theta) coefficient arrays.  The k = 0 columns receive
    only the fluctuation-feedback part of the transport, the linear couplings
    vanishing there identically.
    """
    if shifts is None:
        shifts = _profile_shifts(cfg)
    grid = cfg.grid
    kk, _ = grid.meshes()
    tau = _frame_time(cfg, state.t)
    v1, v2 = biot_savart(state.omega, tau)

    d_omega = 1j * kk * state.theta.coeffs
    d_theta = _apply_shifts(v2.coeffs, shifts)
    if include_transport:
        d_omega = d_omega - nonlinear_transport(state.omega, v1, v2, tau).coeffs
        d_theta = d_theta - nonlinear_transport(state.theta, v1, v2, tau).coeffs
    return d_omega, d_theta


def _step_decay(cfg: SimConfig, t0: float, t1: float) -> np.ndarray:
    """Per-mode vertical-dissipation decay exp(-nu int_t0^t1 (xi - k tau)^2)."""
    grid = cfg.grid
    kk, xx = grid.meshes()
    if cfg.shear:
        p = xx - kk * t0
        q = xx - kk * t1
        expo = cfg.nu * (t1 - t0) * (p * p + p * q + q * q) / 3.0
    else:
        expo = cfg.nu * (t1 - t0) * xx**2 * np.ones_like(kk)
    return np.exp(-expo)


def time_step(state: SimState, cfg: SimConfig, dt: float, shifts=None) -> SimState:
    """One Lawson RK4 step of length dt.

    The four explicit stages see only the smooth couplings; the dissipation
    enters through exact decay factors, all of which point forward in time and
    are therefore bounded by one.
    """
    if dt <= 0:
        raise ConfigError("dt must be positive")
    if shifts is None:
        shifts = _profile_shifts(cfg)
    t, h = state.t, dt
    grid = cfg.grid

    half = _step_decay(cfg, t, t + h / 2)       # decay over [t, t+h/2]
    full = _step_decay(cfg, t, t + h)           # decay over [t, t+h]
    tail = _step_decay(cfg, t + h / 2, t + h)   # decay over [t+h/2, t+h]

    def pack(o, th, tt):
        return SimState(SpectralField(o, grid), SpectralField(th, grid), tt)

    o0, th0 = state.omega.coeffs, state.theta.coeffs
    n1o, n1t = nonlinear_rhs(state, cfg, shifts)

    u2 = pack(half * (o0 + 0.5 * h * n1o), half * (th0 + 0.5 * h * n1t), t + h / 2)
    n2o, n2t = nonlinear_rhs(u2, cfg, shifts)

    u3 = pack(half * o0 + 0.5 * h * n2o, half * th0 + 0.5 * h * n2t, t + h / 2)
    n3o, n3t = nonlinear_rhs(u3, cfg, shifts)

    u4 = pack(full * o0 + h * tail * n3o, full * th0 + h * tail * n3t, t + h)
    n4o, n4t = nonlinear_rhs(u4, cfg, shifts)

    new_o = full * o0 + (h / 6.0) * (full * n1o + 2.0 * tail * (n2o + n3o) + n4o)
    new_t = full * th0 + (h / 6.0) * (full * n1t + 2.0 * tail * (n2t + n3t) + n4t)
    out = pack(new_o, new_t, t + h)
    if not (np.all(np.isfinite(new_o)) and np.all(np.isfinite(new_t))):
        raise DomainError(f"non-finite coefficients after step at t = {t}")
    return out


def advective_dt(state: SimState, cfg: SimConfig) -> float:
    """Step-size bound from transport speed, coupling strength and dt_max."""
    grid = cfg.grid
    tau = _frame_time(cfg, state.t)
    v1, v2 = biot_savart(state.omega, tau)
    v1max = float(np.abs(v1.to_physical().real).max())
    v2max = float(np.abs(v2.to_physical().real).max())
    kc = (2 * grid.K) // 3
    xi_eff = grid.xi_active_max + (kc * tau if cfg.shear else 0.0)
    transport_rate = kc * v1max + xi_eff * v2max
    wave_rate = math.sqrt(max(kc, 1) * cfg.profile.derivative_sup() + 1.0)
    return cfg.cfl * min(cfg.dt_max / cfg.cfl, 1.0 / (transport_rate + wave_rate))


# ---------------------------------------------------------------------------
# bootstrap diagnostics
# ---------------------------------------------------------------------------

def bootstrap_norms(state: SimState, cfg: SimConfig) -> dict:
    """Instantaneous value of every bootstrap quantity (squared norms).

    Sup-type entries are the quantities whose running maxima the ledger
    tracks; the *_vdiss/_res/_vel entries are the integrands of the
    L2-in-time norms.  The chi entries give the projection split along
    |xi - k t| >= |k| used when trading horizontal against vertical
    dissipation.
    """
    grid = cfg.grid
    nu = cfg.nu
    if nu <= 0:
        cut_c = 2.0
        h_nu = 1.0  # uncapped weights are not meaningful without dissipation
    else:
        cut_c = nu ** (-1.0 / 3.0) if nu < 1 else 2.0
        h_nu = nu
    kk, xx = grid.meshes()
    t = _frame_time(cfg, state.t)
    bracket = (1.0 + kk**2 + xx**2) ** cfg.order

    fluct = kk != 0
    u = xx - kk * t
    dsq = kk**2 + u**2

    with np.errstate(divide="ignore", invalid="ignore"):
        m2 = np.where(fluct, (weight_a(t, np.where(fluct, kk, 1), xx)
                              * weight_b(t, np.where(fluct, kk, 1), xx, cut_c)) ** 2, 0.0)
    h2 = weight_h(t, kk, xx, h_nu, squared=True)
    chi = (np.abs(u) >= np.abs(kk)).astype(float)
    resonant = 1.0 - chi

    o2 = np.abs(state.omega.coeffs) ** 2
    t2 = np.abs(state.theta.coeffs) ** 2

    def total(weights, values):
        return float(np.sum(bracket * weights * values))

    out = {
        "omega_neq_sup": total(m2, o2),
        "omega_neq_vdiss": nu * total(m2 * u**2, o2),
        "omega_neq_res": nu * total(m2 * resonant * fluct, o2),
        "omega_neq_vel": total(np.where(fluct, m2 / np.where(fluct, dsq, 1.0), 0.0), o2),
        "theta_neq_sup": total(m2 * h2, t2),
        "theta_neq_vdiss": nu * total(m2 * h2 * u**2, t2),
        "theta_neq_res": nu * total(m2 * h2 * resonant * fluct, t2),
        "theta_neq_vel": total(np.where(fluct, m2 * h2 / np.where(fluct, dsq, 1.0), 0.0), t2),
        "omega_avg_sup": total(~fluct, o2),
        "omega_avg_vdiss": nu * total(~fluct * xx**2, o2),
        "theta_avg_sup": total(~fluct * h2, t2),
        "theta_avg_vdiss": nu * total(~fluct * h2 * xx**2, t2),
        "omega_neq_chi_out": total(m2 * chi * fluct, o2),
        "omega_neq_chi_in": total(m2 * resonant * fluct, o2),
        "theta_neq_chi_out": total(m2 * h2 * chi * fluct, t2),
        "theta_neq_chi_in": total(m2 * h2 * resonant * fluct, t2),
    }
    return out


@dataclass
class BootstrapLedger:
    """Running maxima and time integrals of the bootstrap quantities."""

    maxima: dict = field(default_factory=lambda: {k: 0.0 for k in SUP_ENTRIES + CHI_ENTRIES})
    integrals: dict = field(default_factory=lambda: {k: 0.0 for k in INT_ENTRIES})
    last_t: float | None = None
    last_snapshot: dict | None = None

    def update(self, t: float, snapshot: dict) -> None:
        for key in self.maxima:
            self.maxima[key] = max(self.maxima[key], snapshot[key])
        if self.last_snapshot is not None:
            dt = t - self.last_t
            for key in self.integrals:
                self.integrals[key] += 0.5 * dt * (snapshot[key] + self.last_snapshot[key])
        self.last_t = t
        self.last_snapshot = dict(snapshot)

    def line_sums(self, nu: float) -> dict:
        """The four bootstrap lines and their bounds (16 eps^2 scale factors)."""
        return {
            "omega_neq": (self.maxima["omega_neq_sup"] + self.integrals["omega_neq_vdiss"]
                          + self.integrals["omega_neq_res"] + self.integrals["omega_neq_vel"]),
            "theta_neq": (self.maxima["theta_neq_sup"] + self.integrals["theta_neq_vdiss"]
                          + self.integrals["theta_neq_res"] + self.integrals["theta_neq_vel"]),
            "omega_avg": self.maxima["omega_avg_sup"] + self.integrals["omega_avg_vdiss"],
            "theta_avg": self.maxima["theta_avg_sup"] + self.integrals["theta_avg_vdiss"],
        }

    def verdicts(self, epsilon: float, nu: float) -> dict:
        sums = self.line_sums(nu)
        bounds = {"omega_neq": 16.0 * epsilon**2, "theta_neq": 16.0 * nu * epsilon**2,
                  "omega_avg": 16.0 * epsilon**2, "theta_avg": 16.0 * nu * epsilon**2}
        return {key: bool(sums[key] <= bounds[key]) for key in sums} | {
            f"{key}_bound": bounds[key] for key in sums}


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

@dataclass
class SimResult:
    config: SimConfig
    times: np.ndarray
    series: dict
    ledger: BootstrapLedger
    verdicts: dict
    flags: dict
    final_state: SimState

    def write_timeseries_csv(self, path) -> None:
        names = sorted(self.series)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(["t"] + names) + "\n")
            for i, t in enumerate(self.times):
                row = [repr(float(t))] + [repr(float(self.series[n][i])) for n in names]
                fh.write(",".join(row) + "\n")


def simulate(cfg: SimConfig, state: SimState | None = None) -> SimResult:
    """Run to t_end with CFL-limited steps, updating the ledger per interval.

    Early exit with the ``instability_observed`` flag when the solution norm
    exceeds BLOWUP_FACTOR times its initial size.  The final verdicts compare
    the ledger lines against their bootstrap bounds and the solution size
    against 10 nu^(-2/3) times the initial size, in both the raw and the
    nu-weighted normalization.
    """
    shifts = _profile_shifts(cfg)
    if state is None:
        state = build_initial_state(cfg)

    nu_w = cfg.nu if cfg.nu > 0 else 1.0
    omega_norm0, thetax_norm0 = _norm_pair(state, cfg)
    size0_sq = omega_norm0**2 + thetax_norm0**2 / nu_w
    raw0 = omega_norm0 + thetax_norm0

    horizon = cfg.grid.xi_active_max
    flags = {
        "regime_ok": cfg.regime_ok(),
        "outside_hypotheses": (not cfg.shear) or cfg.nu == 0.0,
        "resonance_horizon": horizon,
        "horizon_exceeded": bool(cfg.shear and cfg.t_end > horizon),
        "instability_observed": False,
    }

    ledger = BootstrapLedger()
    times = [0.0]
    series: dict[str, list] = {}

    def record(st: SimState):
        snap = bootstrap_norms(st, cfg)
        ledger.update(st.t, snap)
        omega_norm, thetax_norm = _norm_pair(st, cfg)
        snap = dict(snap)
        snap["omega_hn"] = omega_norm
        snap["theta_x_hn"] = thetax_norm
        for key, val in snap.items():
            series.setdefault(key, []).append(val)
        return omega_norm, thetax_norm

    record(state)

    next_diag = cfg.diag_interval
    blown_up = False
    while state.t < cfg.t_end - 1e-12 and not blown_up:
        dt = min(advective_dt(state, cfg), cfg.t_end - state.t, next_diag - state.t)
        proposed = time_step(state, cfg, dt, shifts)
        # reject the step if transport sped up past the budget it was taken with
        if advective_dt(proposed, cfg) < dt / 1.5:
            proposed = time_step(state, cfg, dt / 2.0, shifts)
        state = proposed
        if state.t >= next_diag - 1e-12 or state.t >= cfg.t_end - 1e-12:
            times.append(state.t)
            omega_norm, thetax_norm = record(state)
            next_diag = state.t + cfg.diag_interval
            if raw0 > 0 and omega_norm + thetax_norm > BLOWUP_FACTOR * raw0:
                flags["instability_observed"] = True
                blown_up = True

    verdicts = ledger.verdicts(cfg.epsilon, cfg.nu)
    omega_norm, thetax_norm = _norm_pair(state, cfg)
    conclusion_scale = 10.0 * nu_w ** (-2.0 / 3.0)
    size_sq = max(np.array(series["omega_hn"]) ** 2
                  + np.array(series["theta_x_hn"]) ** 2 / nu_w) if series else 0.0
    verdicts["conclusion_scaled"] = bool(size0_sq == 0.0 or size_sq <= conclusion_scale * size0_sq)
    raw_max = max(np.array(series["omega_hn"]) + np.array(series["theta_x_hn"])) if series else 0.0
    verdicts["conclusion_raw"] = bool(raw0 == 0.0 or raw_max <= conclusion_scale * raw0)
    verdicts["conclusion_ratio_scaled"] = float(size_sq / size0_sq) if size0_sq > 0 else 0.0
    verdicts["conclusion_ratio_raw"] = float(raw_max / raw0) if raw0 > 0 else 0.0

    return SimResult(config=cfg, times=np.asarray(times), series=series, ledger=ledger,
                     verdicts=verdicts, flags=flags, final_state=state)


# ---------------------------------------------------------------------------
# snapshot IO
# ---------------------------------------------------------------------------

def write_snapshot(state: SimState, path_base: str) -> None:
    """Flat binary dump with a JSON header.

    Layout: for each field (omega, then theta) the centered coefficient array
    row-major over (k, j), each complex value stored as little-endian float64
    (re, im) pairs.
    """
    grid = state.omega.grid
    header = {
        "format": "bsl-snapshot-v1",
        "endianness": "little",
        "scalar": "float64",
        "layout": "row-major over (k, j); complex as (re, im) pairs",
        "fields": ["omega", "theta"],
        "K": grid.K, "J": grid.J, "Ly": grid.Ly, "t": state.t,
    }
    with open(path_base + ".json", "w", encoding="utf-8") as fh:
        json.dump(header, fh, indent=2, sort_keys=True)
    with open(path_base + ".bin", "wb") as fh:
        for fld in (state.omega, state.theta):
            fh.write(np.ascontiguousarray(fld.coeffs).astype("<c16").tobytes())


def read_snapshot(path_base: str) -> SimState:
    with open(path_base + ".json", "r", encoding="utf-8") as fh:
        header = json.load(fh)
    if header.get("format") != "bsl-snapshot-v1":
        raise ConfigError(f"unknown snapshot format {header.get('format')!r}")
    grid = Grid2D(header["K"], header["J"], header["Ly"])
    count = grid.shape[0] * grid.shape[1]
    with open(path_base + ".bin", "rb") as fh:
        raw = np.frombuffer(fh.read(), dtype="<c16")
    if raw.size != 2 * count:
        raise ConfigError("snapshot payload does not match the grid in its header")
    omega = SpectralField(raw[:count].reshape(grid.shape).astype(complex), grid)
    theta = SpectralField(raw[count:].reshape(grid.shape).astype(complex), grid)
    return SimState(omega, theta, float(header["t"]))
