"""Temperature profiles, their derivative spectra, and smallness conditions.

A profile is described through its derivative T'(y): an affine profile has
constant T', a trigonometric one is a finite cosine sum, and a sampled one
carries T' on a uniform periodic grid.  The Fourier transform of T' is then a
finite collection of atoms (frequency, complex mass), with T'(y) =
sum_a mass_a * exp(i * freq_a * y), plus an optional sampled density for
non-atomic spectra.

Two smallness conditions gate linear stability at dissipation nu:

* the convolution-kernel condition: the supremum over output frequencies xi of
  sum_a |mass_a| * ((1+|z|)/(1+|xi|) + (1+|xi|)/(1+|z|))^N
              * (1 + min(nu^(-2/3), |z-xi|^(2/3)))   with z = xi + freq_a,
  which must stay below nu^(1/3)/100;
* the weighted-mass condition: sum_a (1+|freq_a|)^(N+5) |mass_a|, which must
  stay below 4^(-N) * nu^(1/3).

``kernel_bound_check`` verifies numerically that the Schur-test kernel ratio
(frequency ratio x B-weight ratio x Sobolev ratio) is indeed controlled by
(1+|xi-zeta|)^(N+5) times an explicit constant, which is what makes the
weighted-mass condition sufficient.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError
from .multipliers import CutoffConfig, FrequencyMode, multiplier_B

__all__ = [
    "TemperatureProfile",
    "ProfileSpectrum",
    "AdmissibilityReport",
    "KernelBoundReport",
    "profile_spectrum",
    "condition_main",
    "condition_sobolev",
    "kernel_bound_check",
    "admit",
    "profile_from_dict",
    "profile_to_dict",
    "load_profile",
]

MAIN_THRESHOLD_FACTOR = 1.0 / 100.0  # threshold nu^(1/3)/100 for the kernel condition


@dataclass(frozen=True)
class TemperatureProfile:
    """Temperature profile described through its derivative T'.

    kind is one of "affine" (T' = slope), "trigonometric"
    (T' = sum a*cos(w*y + phi) over ``terms``) or "sampled" (T' given on an
    even-sized uniform grid over one period).
    """

    kind: str
    slope: float = 0.0
    terms: tuple = ()
    period: float = 0.0
    values: tuple = ()
    description: str = ""

    def __post_init__(self):
        if self.kind == "affine":
            pass
        elif self.kind == "trigonometric":
            for term in self.terms:
                if len(term) != 3:
                    raise ConfigError("trigonometric terms are (amplitude, frequency, phase)")
                if not all(math.isfinite(x) for x in term):
                    raise ConfigError("trigonometric term entries must be finite")
        elif self.kind == "sampled":
            if self.period <= 0:
                raise ConfigError("sampled profile needs a positive period")
            n = len(self.values)
            if n == 0 or n % 2 != 0:
                raise ConfigError("sampled profile needs an even, nonzero sample count")
        else:
            raise ConfigError(f"unknown profile kind {self.kind!r}")

    @classmethod
    def affine(cls, slope, description=""):
        return cls(kind="affine", slope=float(slope), description=description)

    @classmethod
    def trigonometric(cls, terms, description=""):
        terms = tuple(tuple(float(x) for x in term) for term in terms)
        return cls(kind="trigonometric", terms=terms, description=description)

    @classmethod
    def sampled(cls, period, values, description=""):
        return cls(kind="sampled", period=float(period),
                   values=tuple(float(v) for v in values), description=description)

    def derivative_sup(self) -> float:
        """Crude upper bound on sup_y |T'(y)| (used for time-step control)."""
        if self.kind == "affine":
            return abs(self.slope)
        if self.kind == "trigonometric":
            return float(sum(abs(a) for a, _, _ in self.terms))
        return float(np.max(np.abs(self.values))) if self.values else 0.0


@dataclass(frozen=True)
class ProfileSpectrum:
    """Atomic Fourier representation of T': T'(y) = sum mass_a exp(i freq_a y)."""

    freqs: np.ndarray
    masses: np.ndarray
    density_grid: np.ndarray | None = None
    density_values: np.ndarray | None = None

    @property
    def total_mass(self) -> float:
        total = float(np.sum(np.abs(self.masses)))
        if self.density_grid is not None:
            total += float(np.trapezoid(np.abs(self.density_values), self.density_grid))
        return total

    @property
    def max_frequency(self) -> float:
        top = float(np.max(np.abs(self.freqs))) if self.freqs.size else 0.0
        if self.density_grid is not None and self.density_grid.size:
            top = max(top, float(np.max(np.abs(self.density_grid))))
        return top

    def is_empty(self) -> bool:
        return self.freqs.size == 0 and self.density_grid is None


def profile_spectrum(profile: TemperatureProfile) -> ProfileSpectrum:
    """Fourier atoms of T'; exact for affine and trigonometric profiles.

    Sampled profiles use the discrete transform, placing atoms at integer
    multiples of 2*pi/period.
    """
    if profile.kind == "affine":
        return ProfileSpectrum(freqs=np.array([0.0]),
                               masses=np.array([profile.slope], dtype=complex))

    if profile.kind == "trigonometric":
        atoms: dict[float, complex] = {}
        for a, w, phi in profile.terms:
            if w == 0.0:
                atoms[0.0] = atoms.get(0.0, 0j) + a * math.cos(phi)
                continue
            half = 0.5 * a
            atoms[w] = atoms.get(w, 0j) + half * complex(math.cos(phi), math.sin(phi))
            atoms[-w] = atoms.get(-w, 0j) + half * complex(math.cos(phi), -math.sin(phi))
        freqs = np.array(sorted(atoms), dtype=float)
        masses = np.array([atoms[f] for f in freqs], dtype=complex)
        return ProfileSpectrum(freqs=freqs, masses=masses)

    # sampled: v_j at y_j = j * period / n
    values = np.asarray(profile.values, dtype=float)
    n = values.size
    coeffs = np.fft.fft(values) / n
    m = np.fft.fftfreq(n, d=1.0 / n)  # integer mode numbers
    freqs = 2.0 * math.pi / profile.period * m
    order = np.argsort(freqs)
    return ProfileSpectrum(freqs=freqs[order], masses=coeffs[order].astype(complex))


# ---------------------------------------------------------------------------
# smallness conditions
# ---------------------------------------------------------------------------

def _frequency_ratio(xi, z):
    return (1.0 + np.abs(z)) / (1.0 + np.abs(xi)) + (1.0 + np.abs(xi)) / (1.0 + np.abs(z))


def _default_xi_grid(spectrum: ProfileSpectrum, n_log=160, radius=None) -> np.ndarray:
    """Candidate output frequencies: atom-shifted points plus a log-spaced grid."""
    top = spectrum.max_frequency
    if radius is None:
        radius = 4.0 * (1.0 + top) + 10.0
    pieces = [np.array([0.0]), np.geomspace(1e-3, radius, n_log),
              -np.geomspace(1e-3, radius, n_log)]
    if spectrum.freqs.size:
        pieces.append(spectrum.freqs.astype(float))
        pieces.append(-spectrum.freqs.astype(float))
    return np.unique(np.concatenate(pieces))


def condition_main(spectrum: ProfileSpectrum, order: int, nu: float,
                   xi_grid: np.ndarray | None = None, return_details: bool = False):
    """Supremum form of the convolution-kernel smallness condition.

    Returns the value (a float); with ``return_details=True`` also a dict with
    the threshold, verdict and the evaluation grid metadata.
    """
    if nu <= 0:
        raise ConfigError(f"nu must be positive, got {nu}")
    if order < 0:
        raise ConfigError(f"order must be >= 0, got {order}")

    threshold = MAIN_THRESHOLD_FACTOR * nu ** (1.0 / 3.0)
    if spectrum.is_empty():
        value = 0.0
        details = {"threshold": threshold, "passed": True, "grid_size": 0,
                   "grid_radius": 0.0, "argmax_xi": 0.0}
        return (value, details) if return_details else value

    grid = _default_xi_grid(spectrum) if xi_grid is None else np.asarray(xi_grid, dtype=float)
    cap = nu ** (-2.0 / 3.0)

    xi = grid[:, None]
    totals = np.zeros(grid.shape[0])
    if spectrum.freqs.size:
        z = xi + spectrum.freqs[None, :]
        weights = (np.abs(spectrum.masses)[None, :]
                   * _frequency_ratio(xi, z) ** order
                   * (1.0 + np.minimum(cap, np.abs(spectrum.freqs)[None, :] ** (2.0 / 3.0))))
        totals += weights.sum(axis=1)
    if spectrum.density_grid is not None:
        z = xi + spectrum.density_grid[None, :]
        integrand = (np.abs(spectrum.density_values)[None, :]
                     * _frequency_ratio(xi, z) ** order
                     * (1.0 + np.minimum(cap, np.abs(spectrum.density_grid)[None, :] ** (2.0 / 3.0))))
        totals += np.trapezoid(integrand, spectrum.density_grid, axis=1)

    best = int(np.argmax(totals))
    value = float(totals[best])
    if return_details:
        return value, {"threshold": threshold, "passed": value < threshold,
                       "grid_size": int(grid.size), "grid_radius": float(np.max(np.abs(grid))),
                       "argmax_xi": float(grid[best])}
    return value


def condition_sobolev(spectrum: ProfileSpectrum, order: int, nu: float,
                      return_details: bool = False):
    """Weighted-mass condition sum (1+|freq|)^(N+5) |mass|, threshold 4^(-N) nu^(1/3)."""
    if nu <= 0:
        raise ConfigError(f"nu must be positive, got {nu}")
    if order < 0:
        raise ConfigError(f"order must be >= 0, got {order}")

    value = float(np.sum((1.0 + np.abs(spectrum.freqs)) ** (order + 5)
                         * np.abs(spectrum.masses))) if spectrum.freqs.size else 0.0
    if spectrum.density_grid is not None:
        weighted = (1.0 + np.abs(spectrum.density_grid)) ** (order + 5) * np.abs(
            spectrum.density_values)
        # a sampled density must decay at the grid edges or the weighted
        # integral cannot be trusted to converge
        edge = max(weighted[0], weighted[-1])
        if edge > 1e-8 * (np.max(weighted) + 1e-300):
            raise DomainError(
                "weighted spectrum does not decay at the truncation radius; "
                "the weighted-mass integral is divergent or under-resolved")
        value += float(np.trapezoid(weighted, spectrum.density_grid))

    threshold = 4.0 ** (-order) * nu ** (1.0 / 3.0)
    if return_details:
        return value, {"threshold": threshold, "passed": value <= threshold}
    return value


@dataclass
class KernelBoundReport:
    max_ratio: float
    declared_constant: float
    passed: bool
    n_samples: int
    sobolev_branch_max: float
    sobolev_branch_ok: bool


def kernel_declared_constant(order: int) -> float:
    """Constant budget for the kernel ratio: sqrt(2) (frequency ratio) x
    16 (B-ratio fourth power) x (1 + 3^N) (Sobolev ratio case split)."""
    return math.sqrt(2.0) * 16.0 * (1.0 + 3.0**order)


def kernel_bound_check(spectrum: ProfileSpectrum, order: int, nu: float,
                       samples: int = 10000, seed: int = 0) -> KernelBoundReport:
    """Sample the Schur-test kernel ratio and compare with (1+|xi-zeta|)^(N+5).

    The ratio is sqrt((k^2+(xi-kt)^2)/(k^2+(zeta-kt)^2)) * B(t,k,xi)/B(t,k,zeta)
    * (1+|xi|^N)/(1+|zeta|^N).  Half the samples constrain xi - zeta to the
    atom frequencies of the profile (the only separations its kernel sees);
    the rest are unconstrained.
    """
    if nu <= 0:
        raise ConfigError(f"nu must be positive, got {nu}")
    rng = np.random.default_rng(seed)
    cutoff = CutoffConfig.from_nu(nu) if nu < 1.0 else CutoffConfig(2.0)
    horizon = 3.0 * cutoff.C
    declared = kernel_declared_constant(order)

    freqs = spectrum.freqs[np.abs(spectrum.masses) > 0] if spectrum.freqs.size else np.array([])

    max_ratio = 0.0
    branch_max = 0.0
    branch_ok = True
    for i in range(samples):
        k = int(rng.choice([1, 2, 3, 4]))
        t = rng.uniform(0.0, horizon)
        zeta = rng.uniform(-20.0, 20.0)
        if freqs.size and i % 2 == 0:
            xi = zeta + float(rng.choice(freqs))
        else:
            xi = rng.uniform(-20.0, 20.0)

        sep = abs(xi - zeta)
        sqrt_ratio = math.sqrt((k**2 + (xi - k * t) ** 2) / (k**2 + (zeta - k * t) ** 2))
        b_ratio = (multiplier_B(t, FrequencyMode(k, xi), cutoff)
                   / multiplier_B(t, FrequencyMode(k, zeta), cutoff))
        sob_ratio = (1.0 + abs(xi) ** order) / (1.0 + abs(zeta) ** order)
        ratio = sqrt_ratio * b_ratio * sob_ratio / (1.0 + sep) ** (order + 5)
        max_ratio = max(max_ratio, ratio)

        if abs(xi) >= 3.0 * abs(zeta):
            bound = 1.5**order * (1.0 + sep**order)
            branch_max = max(branch_max, sob_ratio / bound)
            branch_ok = branch_ok and sob_ratio <= bound * (1 + 1e-12)

    return KernelBoundReport(max_ratio=max_ratio, declared_constant=declared,
                             passed=max_ratio <= declared, n_samples=samples,
                             sobolev_branch_max=branch_max, sobolev_branch_ok=branch_ok)


# ---------------------------------------------------------------------------
# aggregation and IO
# ---------------------------------------------------------------------------

@dataclass
class AdmissibilityReport:
    """Both smallness conditions for one profile at (N, nu)."""

    profile: TemperatureProfile
    order: int
    nu: float
    value_main: float
    value_sobolev: float
    threshold_main: float
    threshold_sobolev: float
    passed_main: bool
    passed_sobolev: bool
    alpha_surrogate: float
    grid_info: dict = field(default_factory=dict)

    #: documented surrogate: both conditions reduce to |slope| for an affine
    #: profile, so each value is mapped back to that scale before taking the min
    SURROGATE_FORMULA = "min(value_main / 2^N, value_sobolev)"

    @property
    def admissible(self) -> bool:
        return self.passed_main and self.passed_sobolev

    def to_dict(self) -> dict:
        return {
            "profile": profile_to_dict(self.profile),
            "order": self.order,
            "nu": self.nu,
            "value_main": self.value_main,
            "value_sobolev": self.value_sobolev,
            "thresholds": {"main": self.threshold_main, "sobolev": self.threshold_sobolev},
            "verdicts": {"main": self.passed_main, "sobolev": self.passed_sobolev,
                         "admissible": self.admissible},
            "alpha_surrogate": self.alpha_surrogate,
            "alpha_surrogate_formula": self.SURROGATE_FORMULA,
            "evaluation_grid": self.grid_info,
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def admit(profile: TemperatureProfile, order: int, nu: float) -> AdmissibilityReport:
    """Evaluate both smallness conditions and aggregate them into a report."""
    spectrum = profile_spectrum(profile)
    value_main, main_info = condition_main(spectrum, order, nu, return_details=True)
    value_sob, sob_info = condition_sobolev(spectrum, order, nu, return_details=True)
    surrogate = min(value_main / 2.0**order, value_sob)
    return AdmissibilityReport(
        profile=profile, order=order, nu=nu,
        value_main=value_main, value_sobolev=value_sob,
        threshold_main=main_info["threshold"], threshold_sobolev=sob_info["threshold"],
        passed_main=main_info["passed"], passed_sobolev=sob_info["passed"],
        alpha_surrogate=surrogate,
        grid_info={k: v for k, v in main_info.items() if k.startswith(("grid", "argmax"))},
    )


def profile_to_dict(profile: TemperatureProfile) -> dict:
    d = {"kind": profile.kind}
    if profile.kind == "affine":
        d["slope"] = profile.slope
    elif profile.kind == "trigonometric":
        d["terms"] = [list(t) for t in profile.terms]
    else:
        d["period"] = profile.period
        d["values"] = list(profile.values)
    if profile.description:
        d["description"] = profile.description
    return d


def profile_from_dict(d: dict) -> TemperatureProfile:
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError("profile config must be a mapping with a 'kind' tag")
    kind = d["kind"]
    desc = d.get("description", "")
    try:
        if kind == "affine":
            return TemperatureProfile.affine(d["slope"], description=desc)
        if kind == "trigonometric":
            return TemperatureProfile.trigonometric(d["terms"], description=desc)
        if kind == "sampled":
            return TemperatureProfile.sampled(d["period"], d["values"], description=desc)
    except KeyError as exc:
        raise ConfigError(f"profile config missing field {exc}") from exc
    raise ConfigError(f"unknown profile kind {kind!r}")


def load_profile(path) -> TemperatureProfile:
    """Read a profile from a JSON config file."""
    with open(path, "r", encoding="utf-8") as fh:
        return profile_from_dict(json.load(fh))
