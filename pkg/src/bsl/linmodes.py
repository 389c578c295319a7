"""Frequency-local linear evolution near Couette flow.

Covers, in increasing order of coupling:

* the no-shear 2x2 constant-coefficient system for one mode, with its
  eigenvalue dichotomy in the sign of the temperature slope;
* the inviscid sheared problem, whose vorticity amplitude obeys the
  oscillator u'' + alpha/(1+t^2) u = 0 after shifting to the critical time;
  power-law exponents beta = (1 +/- sqrt(1-4*alpha))/2 describe its long-time
  behaviour and a high-accuracy adaptive integration of the oscillator serves
  as the oracle for them;
* the viscous per-mode system in the moving frame, integrated with an exact
  exponential integrating factor for the dissipation (whose exponent is a
  cubic polynomial in time) and an embedded adaptive Runge-Kutta pair for the
  buoyancy coupling;
* the coupled evolution across vertical frequencies for a non-affine
  temperature profile, where multiplication by T' becomes a frequency shift
  per spectral atom.

Stability of the affine problem is certified against an explicit growth
envelope built from the capped mode energy; the coupled problem is monitored
through the decaying-weight ("ghost") energy, which the theory predicts to be
non-increasing whenever the profile passes the admissibility conditions.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConfigError, DomainError, IntegrationFailure
from .multipliers import (
    CutoffConfig,
    DissipationConfig,
    FrequencyMode,
    weight_a,
    weight_b,
)
from .profiles import ProfileSpectrum
from .rk import adaptive_if_rk, phi_increment

__all__ = [
    "NoShearSystem",
    "ModeTrajectory",
    "ExponentReport",
    "BoundReport",
    "CoupledTrajectory",
    "no_shear_matrix",
    "no_shear_eigenvalues",
    "classify_no_shear",
    "inviscid_exponents",
    "integrate_schrodinger",
    "fit_growth_exponent",
    "fitted_exponent_report",
    "integrate_affine_mode",
    "stability_envelope",
    "verify_mode_bound",
    "integrate_coupled_linear",
    "ghost_energy",
    "orr_ratio",
    "write_trajectory_csv",
    "read_trajectory_csv",
]


# ---------------------------------------------------------------------------
# no shear: constant-coefficient dichotomy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NoShearSystem:
    """One mode of the linearization around rest and an affine profile of slope alpha."""

    mode: FrequencyMode
    alpha: float
    diss: DissipationConfig = DissipationConfig()


def no_shear_matrix(sys: NoShearSystem) -> np.ndarray:
    """Explicit 2x2 system matrix for (omega, theta) at one mode."""
    k, xi = sys.mode.k, sys.mode.xi
    if k == 0:
        raise DomainError("no-shear mode analysis requires k != 0")
    q = k * k + xi * xi
    return np.array([[-sys.diss.nu * q, 1j * k],
                     [1j * k * sys.alpha / q, -sys.diss.mu * q]], dtype=complex)


def no_shear_eigenvalues(sys: NoShearSystem) -> tuple[complex, complex]:
    """Closed-form eigenvalues, largest real part first.

    lambda = -(nu+mu)/2 q +/- sqrt(((nu-mu)/2 q)^2 - alpha k^2 / q), q = k^2+xi^2.
    When one coefficient vanishes and alpha < 0 the plus branch is strictly
    positive: partial dissipation cannot remove the buoyancy instability.
    """
    k, xi = sys.mode.k, sys.mode.xi
    if k == 0:
        raise DomainError("no-shear mode analysis requires k != 0")
    q = k * k + xi * xi
    mean = 0.5 * (sys.diss.nu + sys.diss.mu) * q
    radicand = complex((0.5 * (sys.diss.nu - sys.diss.mu) * q) ** 2
                       - sys.alpha * k * k / q)
    root = np.sqrt(radicand)
    lam1, lam2 = -mean + root, -mean - root
    if lam2.real > lam1.real:
        lam1, lam2 = lam2, lam1
    return complex(lam1), complex(lam2)


def classify_no_shear(sys: NoShearSystem) -> str:
    """Dichotomy in the slope sign: "stable", "exponentially_unstable" or "marginal".

    Requires at least one of nu, mu to vanish; with both positive the energy
    argument behind the dichotomy does not apply.
    """
    if not sys.diss.one_coefficient_vanishes():
        raise ConfigError("classification requires at least one of nu, mu to be zero")
    if sys.alpha > 0:
        return "stable"
    if sys.alpha < 0:
        return "exponentially_unstable"
    return "marginal"


# ---------------------------------------------------------------------------
# inviscid exponents and the oscillator oracle
# ---------------------------------------------------------------------------

@dataclass
class ExponentReport:
    """Indicial exponents of u'' + alpha/t^2 u = 0 and the derived decay rates."""

    alpha: float
    beta1: complex
    beta2: complex
    c: float
    double_root: bool
    predicted_rates: dict
    fitted_beta: float | None = None
    fit_window: tuple | None = None


def inviscid_exponents(alpha: float) -> ExponentReport:
    """Exponents beta = (1 +/- sqrt(1-4*alpha))/2 with the principal branch.

    c = Re(sqrt(1-4*alpha))/2 controls the long-time rates: vorticity grows
    like t^(1/2+c) while theta and the fluctuating horizontal velocity decay
    like t^(-1/2+c) and the vertical velocity like t^(-3/2+c).
    """
    root = np.sqrt(complex(1.0 - 4.0 * alpha))
    beta1 = (1.0 + root) / 2.0
    beta2 = (1.0 - root) / 2.0
    c = 0.5 * root.real
    return ExponentReport(
        alpha=alpha, beta1=complex(beta1), beta2=complex(beta2), c=c,
        double_root=(1.0 - 4.0 * alpha == 0.0),
        predicted_rates={
            "omega_growth": 0.5 + c,
            "theta_decay": -0.5 + c,
            "v1_fluct_decay": -0.5 + c,
            "v2_decay": -1.5 + c,
        },
    )


@dataclass
class ModeTrajectory:
    """Sampled per-mode trajectory (struct-of-arrays).

    For the oscillator oracle ``omega`` holds u and ``theta`` holds u'; for
    the viscous mode integrations omega and theta are the mode amplitudes and
    ``mode``/``alpha``/``nu`` record the configuration.
    """

    times: np.ndarray
    omega: np.ndarray
    theta: np.ndarray
    mode: FrequencyMode | None = None
    alpha: float | None = None
    nu: float | None = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0):
            raise ConfigError("trajectory sample times must be strictly increasing")
        if not (np.all(np.isfinite(self.omega)) and np.all(np.isfinite(self.theta))):
            raise IntegrationFailure("non-finite trajectory samples")

    def quadratic_energy(self) -> np.ndarray:
        k = self.mode.k if self.mode is not None else 1
        return np.abs(self.omega) ** 2 + k * k * np.abs(self.theta) ** 2


def integrate_schrodinger(alpha: float, t_end: float, rtol: float = 1e-10,
                          u0: complex = 1.0, du0: complex = 0.0,
                          t_eval: np.ndarray | None = None) -> ModeTrajectory:
    """High-accuracy solution of u'' + alpha/(1+t^2) u = 0 from t = 0.

    This is the oracle for the inviscid sheared mode problem; its long-time
    amplitude follows the t^beta1 power law of ``inviscid_exponents``.
    """
    if t_end <= 0:
        raise ConfigError("t_end must be positive")

    def rhs(t, y):
        return [y[1], -alpha / (1.0 + t * t) * y[0]]

    if t_eval is None:
        tail = np.geomspace(max(1e-2, t_end * 1e-6), t_end, 600)
        t_eval = np.concatenate([[0.0], tail])
    sol = solve_ivp(rhs, (0.0, t_end), [complex(u0), complex(du0)], method="DOP853",
                    rtol=rtol, atol=rtol * 1e-3, t_eval=t_eval, dense_output=False)
    if not sol.success:
        raise IntegrationFailure(f"oscillator integration failed: {sol.message}")
    return ModeTrajectory(times=sol.t, omega=sol.y[0], theta=sol.y[1], alpha=alpha,
                          diagnostics={"amplitude": np.abs(sol.y[0])})


def fit_growth_exponent(traj: ModeTrajectory, window: tuple, component: str = "omega") -> float:
    """Least-squares slope of log|u| against log t over the given time window."""
    lo, hi = window
    if lo <= 0:
        raise DomainError("fit window must start at positive time")
    mask = (traj.times >= lo) & (traj.times <= hi)
    if mask.sum() < 2:
        raise DomainError("fit window contains fewer than two samples")
    values = np.abs(getattr(traj, component)[mask])
    if np.any(values <= 0):
        raise DomainError("nonpositive amplitudes in fit window")
    slope, _ = np.polyfit(np.log(traj.times[mask]), np.log(values), 1)
    return float(slope)


def fitted_exponent_report(alpha: float, t_end: float = 1e4, rtol: float = 1e-10,
                           u0: complex = 1.0, du0: complex = 2.0) -> ExponentReport:
    """Exponent report with ``fitted_beta`` measured from the oscillator oracle.

    The fit window defaults to [t_end/100, t_end] over log-spaced samples.
    """
    report = inviscid_exponents(alpha)
    traj = integrate_schrodinger(alpha, t_end, rtol=rtol, u0=u0, du0=du0)
    report.fit_window = (t_end / 100.0, t_end)
    report.fitted_beta = fit_growth_exponent(traj, report.fit_window)
    return report


# ---------------------------------------------------------------------------
# viscous affine mode in the moving frame
# ---------------------------------------------------------------------------

def integrate_affine_mode(mode: FrequencyMode, alpha: float, nu: float, t_end: float,
                          omega0: complex = 1.0, theta0: complex = 0.0,
                          rtol: float = 1e-9, dissipation: str = "full",
                          cutoff: CutoffConfig | None = None,
                          max_step: float | None = None,
                          t_eval: np.ndarray | None = None) -> ModeTrajectory:
    """Integrate one mode of the sheared affine problem.

    The state is (omega, k*theta) with

        d/dt omega     = -nu * g(t) * omega + i * (k*theta)
        d/dt (k*theta) =  i * alpha / (1 + (xi/k - t)^2) * omega

    where g(t) = k^2 + (xi - k t)^2 for ``dissipation="full"`` and
    g(t) = (xi - k t)^2 for ``dissipation="vertical"``.  The dissipation is
    applied exactly through its cubic antiderivative; the coupling is handled
    by an embedded adaptive Runge-Kutta pair.
    """
    if mode.k == 0:
        raise DomainError("affine mode integration requires k != 0")
    if nu < 0:
        raise ConfigError("nu must be >= 0")
    if t_end <= 0:
        raise ConfigError("t_end must be positive")
    if dissipation not in ("full", "vertical"):
        raise ConfigError(f"unknown dissipation symbol {dissipation!r}")

    k, xi = mode.k, mode.xi
    include_k2 = dissipation == "full"
    r = xi / k

    def explicit_rhs(t, y):
        return np.array([1j * y[1], 1j * alpha / (1.0 + (r - t) ** 2) * y[0]])

    if nu == 0.0:
        def decay(a, b):
            return _ONES2
    else:
        def decay(a, b):
            return np.array([math.exp(-phi_increment(nu, k, xi, a, b,
                                                     include_k2=include_k2)), 1.0])

    if max_step is None:
        # resolve the resonant sweep (O(1/k) features) and keep dense samples
        max_step = min(0.5 / abs(k), max(t_end / 400.0, 1e-3))

    y0 = np.array([complex(omega0), complex(k) * complex(theta0)])
    times, states = adaptive_if_rk(explicit_rhs, decay, (0.0, t_end), y0,
                                   rtol=rtol, atol=rtol * 1e-4, max_step=max_step,
                                   t_eval=t_eval)

    omega = states[:, 0]
    theta = states[:, 1] / k
    cut = cutoff if cutoff is not None else (
        CutoffConfig.from_nu(nu) if 0 < nu < 1 else CutoffConfig(2.0))
    alpha_hat = max(abs(alpha), nu ** (1.0 / 3.0) if nu > 0 else 0.0)
    u = xi - k * times
    capped = np.minimum(u * u, cut.C**2)
    diagnostics = {
        "quadratic_energy": np.abs(omega) ** 2 + k * k * np.abs(theta) ** 2,
        "capped_energy": alpha_hat * np.abs(omega) ** 2 + (k * k + capped) * np.abs(theta) ** 2,
        "weight_A": weight_a(times, k, xi),
        "weight_B": weight_b(times, k, xi, cut.C),
    }
    return ModeTrajectory(times=times, omega=omega, theta=theta, mode=mode,
                          alpha=alpha, nu=nu, diagnostics=diagnostics)


_ONES2 = np.ones(2)


def stability_envelope(alpha: float, nu: float, cutoff: CutoffConfig) -> tuple[float, float]:
    """Growth envelopes for the quadratic mode energy ratio.

    Returns (proof_form, display_form) with alpha_hat = max(|alpha|, nu^(1/3)):

        proof:   (1 + 1/alpha_hat) (1+C^2)^(1+alpha_hat) exp(pi alpha_hat/(nu C^4))
        display: (1 + 1/alpha_hat) (1+C^2) exp(alpha_hat/(nu C^2))

    The two exponents reflect an internal inconsistency of the underlying
    estimate; the proof form is the one certified, the display form is
    reported alongside.
    """
    if nu <= 0:
        raise ConfigError("envelope requires nu > 0")
    a_hat = max(abs(alpha), nu ** (1.0 / 3.0))
    C = cutoff.C
    common = 1.0 + 1.0 / a_hat
    proof = common * (1.0 + C * C) ** (1.0 + a_hat) * math.exp(
        math.pi * a_hat / (nu * C**4))
    display = common * (1.0 + C * C) * math.exp(a_hat / (nu * C * C))
    return proof, display


@dataclass
class BoundReport:
    """Measured growth of one trajectory against its stability envelope."""

    ratio: float
    envelope: float
    envelope_display: float
    passed: bool
    alpha_hat: float
    t_at_max: float


def verify_mode_bound(traj: ModeTrajectory, cutoff: CutoffConfig | None = None) -> BoundReport:
    """Compare sup_t (|omega|^2 + k^2 |theta|^2) / initial against the envelope."""
    if traj.mode is None or traj.alpha is None or traj.nu is None:
        raise DomainError("bound verification needs a trajectory from integrate_affine_mode")
    if traj.nu <= 0:
        raise ConfigError("bound verification requires nu > 0")
    cut = cutoff if cutoff is not None else (
        CutoffConfig.from_nu(traj.nu) if traj.nu < 1 else CutoffConfig(2.0))
    q = traj.quadratic_energy()
    if q[0] == 0.0:
        raise DomainError("zero initial mode energy: growth ratio undefined")
    idx = int(np.argmax(q))
    ratio = float(q[idx] / q[0])
    proof, display = stability_envelope(traj.alpha, traj.nu, cut)
    return BoundReport(ratio=ratio, envelope=proof, envelope_display=display,
                       passed=ratio <= proof,
                       alpha_hat=max(abs(traj.alpha), traj.nu ** (1.0 / 3.0)),
                       t_at_max=float(traj.times[idx]))


# ---------------------------------------------------------------------------
# coupled columns for non-affine profiles
# ---------------------------------------------------------------------------

@dataclass
class CoupledTrajectory:
    """Column-coupled linear evolution on a truncated frequency grid.

    omega and vartheta (= the x-derivative of theta) have shape
    (n_times, n_columns, n_xi) over the padded grid.
    """

    k_columns: tuple
    xi: np.ndarray
    times: np.ndarray
    omega: np.ndarray
    vartheta: np.ndarray
    pad: int
    nu: float
    truncation_flag: bool
    pad_energy_fraction: float


def _atom_shifts(spectrum: ProfileSpectrum, dxi: float) -> list[tuple[int, complex]]:
    shifts = []
    for f, m in zip(spectrum.freqs, spectrum.masses):
        if abs(m) == 0.0:
            continue
        s = f / dxi
        if abs(s - round(s)) > 1e-9:
            raise ConfigError(
                f"profile atom frequency {f} is not a multiple of the grid spacing {dxi}")
        shifts.append((int(round(s)), complex(m)))
    return shifts


def integrate_coupled_linear(spectrum: ProfileSpectrum, k_columns, xi: np.ndarray,
                             nu: float, t_end: float,
                             omega0: np.ndarray, vartheta0: np.ndarray,
                             rtol: float = 1e-9, n_samples: int = 200,
                             dissipation: str = "vertical") -> CoupledTrajectory:
    """Evolve (omega, d_x theta) on a truncated grid for a non-affine profile.

    Per column k != 0:

        d/dt omega(xi)    = -nu * g(t, xi) * omega(xi) + vartheta(xi)
        d/dt vartheta(xi) = -k^2 * sum_a mass_a * omega(xi - f_a)
                                     / (k^2 + (xi - f_a - k t)^2)

    i.e. multiplication by T' acts as a sum of frequency shifts by the atoms
    of its spectrum.  The grid is padded internally by the largest shift so
    that every requested mode sees its full coupling stencil; the returned
    ``pad_energy_fraction`` reports how much amplitude reached the outermost
    pad band (a nonzero value flags under-resolution in xi).
    """
    if nu < 0:
        raise ConfigError("nu must be >= 0")
    if dissipation not in ("full", "vertical"):
        raise ConfigError(f"unknown dissipation symbol {dissipation!r}")
    xi = np.asarray(xi, dtype=float)
    if xi.size < 2:
        raise ConfigError("xi grid needs at least two points")
    dxi_all = np.diff(xi)
    dxi = dxi_all[0]
    if not np.allclose(dxi_all, dxi, rtol=1e-12, atol=1e-12):
        raise ConfigError("xi grid must be uniform")
    k_columns = tuple(int(k) for k in k_columns)
    if any(k == 0 for k in k_columns):
        raise DomainError("the k = 0 column is excluded from the coupled evolution")

    omega0 = np.atleast_2d(np.asarray(omega0, dtype=complex))
    vartheta0 = np.atleast_2d(np.asarray(vartheta0, dtype=complex))
    if omega0.shape != (len(k_columns), xi.size) or vartheta0.shape != omega0.shape:
        raise ConfigError("initial data must have shape (n_columns, n_xi)")

    shifts = _atom_shifts(spectrum, dxi)
    pad = max((abs(s) for s, _ in shifts), default=0)
    n = xi.size + 2 * pad
    xi_pad = xi[0] - pad * dxi + dxi * np.arange(n)
    include_k2 = dissipation == "full"

    t_eval = np.linspace(0.0, t_end, n_samples)
    all_omega = np.empty((n_samples, len(k_columns), n), dtype=complex)
    all_vartheta = np.empty_like(all_omega)

    for col, k in enumerate(k_columns):
        w0 = np.zeros(n, dtype=complex)
        v0 = np.zeros(n, dtype=complex)
        w0[pad:pad + xi.size] = omega0[col]
        v0[pad:pad + xi.size] = vartheta0[col]
        y0 = np.concatenate([w0, v0])

        def explicit_rhs(t, y, k=k):
            w, v = y[:n], y[n:]
            dv = np.zeros(n, dtype=complex)
            g = w / (k * k + (xi_pad - k * t) ** 2)
            for s, m in shifts:
                if s >= 0:
                    dv[s:] += m * g[:n - s] if s else m * g
                else:
                    dv[:s] += m * g[-s:]
            return np.concatenate([v, -k * k * dv])

        if nu == 0.0:
            ones = np.ones(2 * n)

            def decay(a, b, ones=ones):
                return ones
        else:
            def decay(a, b, k=k):
                d = np.exp(-phi_increment(nu, k, xi_pad, a, b, include_k2=include_k2))
                return np.concatenate([d, np.ones(n)])

        times, states = adaptive_if_rk(explicit_rhs, decay, (0.0, t_end), y0,
                                       rtol=rtol, atol=rtol * 1e-4,
                                       max_step=min(0.5 / abs(k), t_end / 50.0),
                                       t_eval=t_eval)
        all_omega[:, col, :] = states[:, :n]
        all_vartheta[:, col, :] = states[:, n:]

    if pad > 0:
        band = np.concatenate([all_omega[-1, :, :1], all_omega[-1, :, -1:]], axis=1)
        total = np.abs(all_omega[-1]).max() + 1e-300
        pad_fraction = float(np.abs(band).max() / total)
    else:
        pad_fraction = 0.0

    return CoupledTrajectory(k_columns=k_columns, xi=xi_pad, times=t_eval,
                             omega=all_omega, vartheta=all_vartheta, pad=pad, nu=nu,
                             truncation_flag=pad_fraction > 1e-8,
                             pad_energy_fraction=pad_fraction)


def ghost_energy(ctraj: CoupledTrajectory, order: int = 0,
                 alpha_floor: float | None = None) -> np.ndarray:
    """Decaying-weight energy of a coupled trajectory at each sample time.

    E(t) = sum over modes of (1+k^2+xi^2)^N *
           [ alpha_hat |M omega|^2 + (k^2 + min((xi-kt)^2, nu^(-2/3))) |M theta|^2 ]

    with M = A*B at cutoff C = nu^(-1/3) and theta recovered from the stored
    x-derivative.  For an admissible profile this is non-increasing.
    """
    nu = ctraj.nu
    if nu <= 0:
        raise ConfigError("ghost energy requires nu > 0")
    cut = CutoffConfig.from_nu(nu) if nu < 1 else CutoffConfig(2.0)
    a_hat = alpha_floor if alpha_floor is not None else nu ** (1.0 / 3.0)
    ks = np.asarray(ctraj.k_columns, dtype=float)[:, None]
    xx = ctraj.xi[None, :]
    bracket = (1.0 + ks**2 + xx**2) ** order
    out = np.empty(ctraj.times.size)
    for i, t in enumerate(ctraj.times):
        m2 = (weight_a(t, ks, xx) * weight_b(t, ks, xx, cut.C)) ** 2
        h2 = ks**2 + np.minimum((xx - ks * t) ** 2, nu ** (-2.0 / 3.0))
        theta2 = np.abs(ctraj.vartheta[i]) ** 2 / ks**2
        out[i] = float(np.sum(bracket * m2 * (a_hat * np.abs(ctraj.omega[i]) ** 2
                                              + h2 * theta2)))
    return out


# ---------------------------------------------------------------------------
# velocity decay ratio
# ---------------------------------------------------------------------------

def orr_ratio(coeffs: np.ndarray, k: np.ndarray, xi: np.ndarray, t: float) -> float:
    """t * ||v1_fluct||_L2 / ||omega||_H1 for a vorticity field at time t.

    v1 is recovered mode-wise through the moving-frame stream function,
    |v1_hat| = |xi - k t| |omega_hat| / (k^2 + (xi - k t)^2); only k != 0
    contributes.  The unmixing argument keeps this ratio bounded by a constant
    of order one.
    """
    if t <= 0:
        raise DomainError("ratio defined for t > 0")
    coeffs = np.asarray(coeffs, dtype=complex)
    kk = np.asarray(k, dtype=float)[:, None]
    xx = np.asarray(xi, dtype=float)[None, :]
    fluct = kk != 0
    if not np.any(np.abs(coeffs) > 0):
        raise DomainError("zero vorticity field: ratio undefined")
    u = xx - kk * t
    with np.errstate(divide="ignore", invalid="ignore"):
        v1 = np.where(fluct, np.abs(u) / (kk**2 + u**2), 0.0) * np.abs(coeffs)
    v1_norm = math.sqrt(float(np.sum(v1**2)))
    h1 = math.sqrt(float(np.sum((1.0 + kk**2 + xx**2) * np.abs(np.where(fluct, coeffs, 0)) ** 2)))
    if h1 == 0.0:
        raise DomainError("zero fluctuating vorticity: ratio undefined")
    return t * v1_norm / h1


# ---------------------------------------------------------------------------
# trajectory IO
# ---------------------------------------------------------------------------

_TRAJ_COLUMNS = ["t", "re_omega", "im_omega", "re_theta", "im_theta", "energy"]


def write_trajectory_csv(traj: ModeTrajectory, path) -> None:
    """Columnar dump (t, Re omega, Im omega, Re theta, Im theta, E)."""
    energy = traj.quadratic_energy()
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(_TRAJ_COLUMNS)
        for i, t in enumerate(traj.times):
            writer.writerow([repr(float(t)),
                             repr(float(traj.omega[i].real)), repr(float(traj.omega[i].imag)),
                             repr(float(traj.theta[i].real)), repr(float(traj.theta[i].imag)),
                             repr(float(energy[i]))])


def read_trajectory_csv(path) -> dict:
    """Parse a trajectory dump back into arrays keyed by column name."""
    with open(path, "r", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != _TRAJ_COLUMNS:
            raise ConfigError(f"unexpected trajectory header {header}")
        rows = np.array([[float(x) for x in row] for row in reader])
    return {name: rows[:, i] for i, name in enumerate(_TRAJ_COLUMNS)}
