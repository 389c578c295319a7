"""Truncated 2D Fourier fields in sheared coordinates and pseudospectral products.

Fields live on the rectangle of modes k in [-K, K] (integer, x-period 2*pi)
and xi_j = j * 2*pi/Ly for j in [-J, J]; coefficients are stored centered,
``coeffs[i_k, i_j]``.  Real fields satisfy the Hermitian symmetry
f(-k, -xi) = conj(f(k, xi)).

In coordinates moving with the shear, the gradient carries the effective
vertical wavenumber xi - k*t, while the mode indices themselves never drift:
transport products are plain convolutions, computed pseudospectrally on the
collocation grid and truncated by the 2/3 rule (with 2K+1 points per
direction, keeping |k| <= floor(2K/3) makes the truncated product alias-free).

The sign conventions fix omega = d_y v1 - d_x v2, so the Biot-Savart law reads
v1 = -i (xi - k t) omega / D, v2 = i k omega / D with D = k^2 + (xi - k t)^2;
the buoyancy then enters the vorticity equation as +d_x theta and the
temperature forcing as +T'(y) v2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .multipliers import weighted_sobolev_norm

__all__ = [
    "Grid2D",
    "SpectralField",
    "hermitian_symmetrize",
    "shear_split",
    "biot_savart",
    "nonlinear_transport",
]


@dataclass(frozen=True)
class Grid2D:
    """Mode rectangle |k| <= K, |j| <= J with vertical box length Ly."""

    K: int
    J: int
    Ly: float

    def __post_init__(self):
        if self.K < 1 or self.J < 1:
            raise ConfigError("grid needs K >= 1 and J >= 1")
        if self.Ly <= 0:
            raise ConfigError("Ly must be positive")

    @property
    def shape(self) -> tuple[int, int]:
        return (2 * self.K + 1, 2 * self.J + 1)

    @property
    def k(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    @property
    def xi(self) -> np.ndarray:
        return 2.0 * np.pi / self.Ly * np.arange(-self.J, self.J + 1)

    @property
    def dxi(self) -> float:
        return 2.0 * np.pi / self.Ly

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        return self.k[:, None].astype(float), self.xi[None, :]

    def dealias_mask(self) -> np.ndarray:
        kc, jc = (2 * self.K) // 3, (2 * self.J) // 3
        kk = np.abs(np.arange(-self.K, self.K + 1))[:, None]
        jj = np.abs(np.arange(-self.J, self.J + 1))[None, :]
        return (kk <= kc) & (jj <= jc)

    @property
    def xi_active_max(self) -> float:
        """Largest vertical frequency inside the dealiased band."""
        return self.dxi * ((2 * self.J) // 3)


@dataclass
class SpectralField:
    """Centered complex coefficient array on a Grid2D."""

    coeffs: np.ndarray
    grid: Grid2D

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != self.grid.shape:
            raise ConfigError(
                f"coefficient shape {self.coeffs.shape} != grid shape {self.grid.shape}")

    @classmethod
    def zeros(cls, grid: Grid2D) -> "SpectralField":
        return cls(np.zeros(grid.shape, dtype=complex), grid)

    def copy(self) -> "SpectralField":
        return SpectralField(self.coeffs.copy(), self.grid)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        flipped = np.conj(self.coeffs[::-1, ::-1])
        scale = np.abs(self.coeffs).max() + 1e-300
        return bool(np.abs(self.coeffs - flipped).max() <= tol * max(scale, 1.0))

    def to_physical(self) -> np.ndarray:
        """Collocation values; real part is the field for Hermitian coefficients."""
        n = self.coeffs.size
        return np.fft.ifft2(np.fft.ifftshift(self.coeffs)) * n

    @classmethod
    def from_physical(cls, values: np.ndarray, grid: Grid2D) -> "SpectralField":
        coeffs = np.fft.fftshift(np.fft.fft2(values)) / values.size
        return cls(coeffs, grid)

    def sobolev_norm(self, order: int, weight=None) -> float:
        return weighted_sobolev_norm(self.coeffs, self.grid.k, self.grid.xi, order,
                                     weight=weight)

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def dealias(self) -> "SpectralField":
        return SpectralField(self.coeffs * self.grid.dealias_mask(), self.grid)


def hermitian_symmetrize(coeffs: np.ndarray) -> np.ndarray:
    """Project a centered coefficient array onto Hermitian symmetry."""
    return 0.5 * (coeffs + np.conj(coeffs[::-1, ::-1]))


def shear_split(field: SpectralField) -> tuple[SpectralField, SpectralField]:
    """Split into the x-average (k = 0 column) and the fluctuation; exact sum."""
    avg = SpectralField.zeros(field.grid)
    k0 = field.grid.K
    avg.coeffs[k0, :] = field.coeffs[k0, :]
    fluct = SpectralField(field.coeffs - avg.coeffs, field.grid)
    return avg, fluct


def biot_savart(omega: SpectralField, t: float) -> tuple[SpectralField, SpectralField]:
    """Velocity from vorticity in the moving frame.

    v1 = -i (xi - k t) omega / D, v2 = i k omega / D, D = k^2 + (xi - k t)^2.
    The mean mode (0, 0) must vanish; the moving-frame divergence
    i k v1 + i (xi - k t) v2 is identically zero.
    """
    grid = omega.grid
    kk, xx = grid.meshes()
    center = (grid.K, grid.J)
    scale = np.abs(omega.coeffs).max()
    if abs(omega.coeffs[center]) > 1e-12 * max(scale, 1.0):
        raise DomainError("vorticity must be mean-free for the velocity reconstruction")
    u = xx - kk * t
    denom = kk**2 + u**2
    denom[center] = 1.0  # excluded mode
    v1 = SpectralField(-1j * u * omega.coeffs / denom, grid)
    v2 = SpectralField(1j * kk * omega.coeffs / denom, grid)
    v1.coeffs[center] = 0.0
    v2.coeffs[center] = 0.0
    return v1, v2


def nonlinear_transport(f: SpectralField, v1: SpectralField, v2: SpectralField,
                        t: float) -> SpectralField:
    """Dealiased transform of v . grad_t f.

    grad_t = (d_x, d_y - t d_x) has Fourier symbol (i k, i (xi - k t)).  The
    product is formed on the collocation grid and truncated by the 2/3 rule;
    transport by a divergence-free field leaves the (0, 0) mean untouched.
    """
    grid = f.grid
    if v1.grid != grid or v2.grid != grid:
        raise ConfigError("transport requires all fields on one grid")
    kk, xx = grid.meshes()
    fx = SpectralField(1j * kk * f.coeffs, grid).to_physical()
    fy = SpectralField(1j * (xx - kk * t) * f.coeffs, grid).to_physical()
    product = v1.to_physical() * fx + v2.to_physical() * fy
    return SpectralField.from_physical(product, grid).dealias()
