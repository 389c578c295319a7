"""Time-dependent Fourier weights, resonant windows and weighted mode energies.

Everything here is frequency-pointwise: a mode is a pair (k, xi) with integer
horizontal wavenumber k and real vertical frequency xi, advected by Couette
shear so that the effective vertical frequency at time t is xi - k*t.

Two decaying exponential weights are provided in closed form:

* ``multiplier_A`` -- arctan weight, exp(-2 * int_0^t dtau / (1 + (xi/k - tau)^2)),
  which decays while the mode is anywhere near its critical time xi/k.
* ``multiplier_B`` -- resonant-window weight, the same construction with
  integrand 1/sqrt(1 + (xi/k - tau)^2) restricted to |xi/k - tau| <= C,
  evaluated via asinh differences over the clipped window.

Their product M = A*B and the capped frequency weight
H = sqrt(k^2 + min((xi - k t)^2, nu^(-2/3))) are the building blocks of every
weighted norm used by the linear and nonlinear solvers.

All functions are pure; scalar wrappers validate their inputs while the
underlying ``weight_*`` helpers broadcast over numpy arrays so grid sweeps can
be vectorized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError

__all__ = [
    "FrequencyMode",
    "ModeState",
    "DissipationConfig",
    "CutoffConfig",
    "MultiplierWeights",
    "TimeWindow",
    "weight_a",
    "weight_b",
    "weight_h",
    "multiplier_A",
    "multiplier_B",
    "multiplier_H",
    "multiplier_M",
    "evaluate_weights",
    "resonant_window",
    "resonant_half_crossings",
    "mode_energy",
    "weighted_sobolev_norm",
]


@dataclass(frozen=True)
class FrequencyMode:
    """One Fourier mode: integer horizontal wavenumber k, vertical frequency xi.

    k = 0 is allowed only where an operation explicitly supports shear
    averages; all decaying weights require k != 0.
    """

    k: int
    xi: float

    def __post_init__(self):
        if self.k != int(self.k):
            raise DomainError(f"horizontal wavenumber must be an integer, got {self.k}")

    @property
    def critical_time(self) -> float:
        """Time xi/k at which the effective vertical frequency crosses zero."""
        if self.k == 0:
            raise DomainError("critical time undefined for k = 0")
        return self.xi / self.k


@dataclass
class ModeState:
    """Complex amplitudes (omega, theta) of one mode at time t."""

    omega: complex
    theta: complex
    t: float = 0.0

    def is_finite(self) -> bool:
        return bool(np.isfinite([self.omega.real, self.omega.imag,
                                 self.theta.real, self.theta.imag, self.t]).all())


@dataclass(frozen=True)
class DissipationConfig:
    """Nonnegative dissipation coefficients for velocity (nu_*) and temperature (mu_*)."""

    nu_x: float = 0.0
    nu_y: float = 0.0
    mu_x: float = 0.0
    mu_y: float = 0.0

    def __post_init__(self):
        for name in ("nu_x", "nu_y", "mu_x", "mu_y"):
            if getattr(self, name) < 0:
                raise ConfigError(f"dissipation coefficient {name} must be >= 0")

    @property
    def nu(self) -> float:
        """Vertical velocity dissipation, the coefficient the stability theory scales with."""
        return self.nu_y

    @property
    def mu(self) -> float:
        """Vertical thermal dissipation."""
        return self.mu_y

    def one_coefficient_vanishes(self) -> bool:
        """True when at least one of nu, mu is zero (hypothesis of the no-shear dichotomy)."""
        return self.nu == 0.0 or self.mu == 0.0


@dataclass(frozen=True)
class CutoffConfig:
    """Cutoff C > 1 delimiting the resonant time window |xi/k - t| <= C.

    The convention used throughout is C = nu^(-1/3); ``from_nu`` applies it.
    """

    C: float

    def __post_init__(self):
        if not self.C > 1.0:
            raise ConfigError(f"cutoff must satisfy C > 1, got {self.C}")

    @classmethod
    def from_nu(cls, nu: float) -> "CutoffConfig":
        if nu <= 0:
            raise ConfigError(f"nu must be positive, got {nu}")
        return cls(C=nu ** (-1.0 / 3.0))


@dataclass(frozen=True)
class MultiplierWeights:
    """Weights A, B, M = A*B and H evaluated at one (t, k, xi)."""

    A: float
    B: float
    M: float
    H: float


@dataclass(frozen=True)
class TimeWindow:
    """Closed time interval [start, end] with start <= end."""

    start: float
    end: float

    @property
    def duration(self) -> float:
        return self.end - self.start

    def contains(self, t: float) -> bool:
        return self.start <= t <= self.end


# ---------------------------------------------------------------------------
# array kernels (broadcast over t, k, xi; caller guarantees k != 0)
# ---------------------------------------------------------------------------

def weight_a(t, k, xi):
    """Arctan weight exp(-2 [arctan(xi/k) - arctan(xi/k - t)]), broadcasting."""
    r = np.asarray(xi) / np.asarray(k)
    return np.exp(-2.0 * (np.arctan(r) - np.arctan(r - np.asarray(t))))


def weight_b(t, k, xi, C):
    """Resonant-window weight via asinh differences over the clipped window.

    Equals exp(-2 * int) with int = asinh(xi/k - lo) - asinh(xi/k - hi) taken
    over [lo, hi] = [max(0, xi/k - C), min(t, xi/k + C)]; 1.0 when the window
    has not been entered.
    """
    t = np.asarray(t, dtype=float)
    r = np.asarray(xi, dtype=float) / np.asarray(k, dtype=float)
    lo = np.maximum(0.0, r - C)
    hi = np.minimum(t, r + C)
    integral = np.where(hi > lo, np.arcsinh(r - lo) - np.arcsinh(r - hi), 0.0)
    return np.exp(-2.0 * integral)


def weight_h(t, k, xi, nu, squared=False):
    """Capped frequency weight sqrt(k^2 + min((xi - k t)^2, nu^(-2/3))).

    With ``squared=True`` the alternative convention without the outer square
    root, k^2 + min((xi - k t)^2, nu^(-2/3)), is returned instead.  Valid for
    k = 0, where the weight reduces to min(|xi|, nu^(-1/3)).
    """
    u = np.asarray(xi, dtype=float) - np.asarray(k, dtype=float) * np.asarray(t, dtype=float)
    h2 = np.asarray(k, dtype=float) ** 2 + np.minimum(u**2, nu ** (-2.0 / 3.0))
    return h2 if squared else np.sqrt(h2)


# ---------------------------------------------------------------------------
# scalar operations
# ---------------------------------------------------------------------------

def _require_nonzero_k(mode: FrequencyMode):
    if mode.k == 0:
        raise DomainError("weight undefined for k = 0 (shear-average column)")


def multiplier_A(t: float, mode: FrequencyMode) -> float:
    """Arctan weight at time t; 1 at t = 0, decreasing, always above exp(-2*pi)."""
    _require_nonzero_k(mode)
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return float(weight_a(t, mode.k, mode.xi))


def multiplier_B(t: float, mode: FrequencyMode, cutoff: CutoffConfig) -> float:
    """Resonant-window weight at time t; constant outside the window."""
    _require_nonzero_k(mode)
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return float(weight_b(t, mode.k, mode.xi, cutoff.C))


def multiplier_H(t: float, mode: FrequencyMode, nu: float, squared: bool = False) -> float:
    """Capped frequency weight; requires nu > 0."""
    if nu <= 0:
        raise ConfigError(f"nu must be positive, got {nu}")
    return float(weight_h(t, mode.k, mode.xi, nu, squared=squared))


def multiplier_M(t: float, mode: FrequencyMode, cutoff: CutoffConfig) -> float:
    """Product weight M = A * B."""
    return multiplier_A(t, mode) * multiplier_B(t, mode, cutoff)


def evaluate_weights(t: float, mode: FrequencyMode, cutoff: CutoffConfig,
                     nu: float) -> MultiplierWeights:
    """All four weights at one (t, k, xi), with M = A*B computed exactly."""
    a = multiplier_A(t, mode)
    b = multiplier_B(t, mode, cutoff)
    return MultiplierWeights(A=a, B=b, M=a * b, H=multiplier_H(t, mode, nu))


def resonant_window(mode: FrequencyMode, cutoff: CutoffConfig) -> TimeWindow | None:
    """Nonnegative times with |xi/k - t| <= C, or None when entirely at t < 0."""
    _require_nonzero_k(mode)
    r = mode.critical_time
    if r + cutoff.C < 0:
        return None
    return TimeWindow(start=max(0.0, r - cutoff.C), end=r + cutoff.C)


def resonant_half_crossings(t: float, mode: FrequencyMode, cutoff: CutoffConfig) -> int:
    """How many halves of the resonant window [xi/k - C, xi/k + C] have been entered.

    0 before the window, 1 while approaching the critical time, 2 once past it.
    Each completed half contributes at most asinh(C) to the B exponent, so
    B >= exp(-2 * asinh(C) * halves) and M >= exp(-2*pi) * exp(-2 * asinh(C) * halves).
    """
    window = resonant_window(mode, cutoff)
    if window is None or t < window.start:
        return 0
    return 1 if t <= mode.critical_time else 2


def mode_energy(state: ModeState, mode: FrequencyMode, alpha: float,
                cutoff: CutoffConfig, alpha_floor: float = 0.0) -> float:
    """Capped quadratic energy |alpha| |omega|^2 + (k^2 + min((xi-kt)^2, C^2)) |theta|^2.

    ``alpha_floor`` substitutes max(|alpha|, alpha_floor) for |alpha|, the
    floor being nu^(1/3) in the stability estimates.
    """
    a = max(abs(alpha), alpha_floor)
    u = mode.xi - mode.k * state.t
    cap = min(u * u, cutoff.C**2)
    return a * abs(state.omega) ** 2 + (mode.k**2 + cap) * abs(state.theta) ** 2


def weighted_sobolev_norm(coeffs: np.ndarray, k: np.ndarray, xi: np.ndarray,
                          order: int, weight=None) -> float:
    """Discrete weighted Sobolev norm sqrt(sum (1 + k^2 + xi^2)^N |w * f|^2).

    Parameters
    ----------
    coeffs : complex array, shape (len(k), len(xi)) or broadcastable
    k, xi : 1d arrays of wavenumbers / frequencies defining the mode grid
    order : Sobolev order N >= 0
    weight : optional array broadcastable to coeffs (defaults to 1)
    """
    if order < 0:
        raise ConfigError(f"Sobolev order must be >= 0, got {order}")
    coeffs = np.asarray(coeffs)
    kk = np.asarray(k, dtype=float)[:, None]
    xx = np.asarray(xi, dtype=float)[None, :]
    w = np.ones_like(coeffs, dtype=float) if weight is None else np.asarray(weight)
    bracket = (1.0 + kk**2 + xx**2) ** order
    return float(np.sqrt(np.sum(bracket * np.abs(w * coeffs) ** 2)))


#: Hard lower bound for the arctan weight: the integrand has total mass < pi.
A_FLOOR = math.exp(-2.0 * math.pi)


def m_lower_envelope(t: float, mode: FrequencyMode, cutoff: CutoffConfig) -> float:
    """Provable lower bound for M at (t, k, xi): exp(-2pi) * exp(-2 asinh(C) * halves)."""
    halves = resonant_half_crossings(t, mode, cutoff)
    return A_FLOOR * math.exp(-2.0 * math.asinh(cutoff.C) * halves)
