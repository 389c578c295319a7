"""An oscillating profile couples frequencies, yet a weighted energy still decays.

For non-constant T' the mode equations no longer decouple: multiplication by
T' shifts vertical frequencies by the atoms of its spectrum.  The remedy is to
weight each mode with the decaying multiplier M = A*B and the capped weight H;
the built-in decay of the weights absorbs every coupling term as long as the
profile passes the admissibility conditions.  The resulting "ghost" energy is
non-increasing even though individual mode amplitudes oscillate and grow.

Runs the frequency-coupled linear evolution for T' = a cos(y) and writes the
energy trace.
"""

import csv
import sys

import numpy as np

from bsl import TemperatureProfile, ghost_energy, integrate_coupled_linear, profile_spectrum
from bsl.profiles import condition_sobolev

nu, order = 1e-2, 2
amplitude = 1e-4
profile = TemperatureProfile.trigonometric([(amplitude, 1.0, 0.0)])
spectrum = profile_spectrum(profile)
value = condition_sobolev(spectrum, order, nu)
print(f"T' = {amplitude} cos(y): weighted mass {value:.4g} vs threshold "
      f"{4.0**-order * nu**(1/3):.4g}")

dxi = 0.25
xi = dxi * np.arange(-40, 41)
rng = np.random.default_rng(0)
shape = (2, xi.size)
envelope = np.exp(-2.0 * xi**2)
omega0 = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * envelope
vartheta0 = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * envelope

ctraj = integrate_coupled_linear(spectrum, (1, 2), xi, nu, 3.0 * nu ** (-1 / 3),
                                 omega0, vartheta0, rtol=1e-10, n_samples=150)
energy = ghost_energy(ctraj, order=order)
drops = np.diff(energy)
print(f"E(0) = {energy[0]:.4e}, E(end) = {energy[-1]:.4e}, "
      f"largest step increase = {max(drops.max(), 0.0):.2e}")
print("monotone non-increasing:", bool(np.all(drops <= 1e-12 * energy[0])))

out = sys.argv[1] if len(sys.argv) > 1 else "ghost_energy_demo.csv"
with open(out, "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["t", "ghost_energy"])
    writer.writerows(zip(ctraj.times, energy))
print(f"wrote {out}")
