"""Which temperature profiles are small enough for shear to stabilize?

Two computable conditions on the derivative spectrum of T' gate the linear
theory at dissipation nu: a sup-over-frequencies convolution-kernel bound
(threshold nu^(1/3)/100) and a (1+|freq|)^(N+5)-weighted mass bound
(threshold 4^(-N) nu^(1/3)).  For an affine profile both collapse to plain
slope conditions; for oscillating profiles the weighted mass punishes high
frequencies hard.

Prints the full JSON report for one profile and a verdict table for several.
"""

from bsl import TemperatureProfile, admit

nu, order = 1e-2, 2

profiles = [
    ("affine, slope nu^(1/3)/300", TemperatureProfile.affine(nu ** (1 / 3) / 300)),
    ("affine, inverted, slope -nu^(1/3)/300", TemperatureProfile.affine(-nu ** (1 / 3) / 300)),
    ("affine, slope -nu^(1/3)", TemperatureProfile.affine(-nu ** (1 / 3))),
    ("1e-4 cos(y)", TemperatureProfile.trigonometric([(1e-4, 1.0, 0.0)])),
    ("1e-4 cos(3y)", TemperatureProfile.trigonometric([(1e-4, 3.0, 0.0)])),
    ("5e-6 (cos(y) + cos(2y+1))",
     TemperatureProfile.trigonometric([(5e-6, 1.0, 0.0), (5e-6, 2.0, 1.0)])),
]

print(f"N = {order}, nu = {nu}: thresholds {nu**(1/3)/100:.3e} (kernel), "
      f"{4.0**-order * nu**(1/3):.3e} (weighted mass)\n")
print(f"{'profile':<40} {'kernel value':>13} {'mass value':>12} {'admissible':>11}")
for name, profile in profiles:
    report = admit(profile, order, nu)
    print(f"{name:<40} {report.value_main:13.3e} {report.value_sobolev:12.3e} "
          f"{str(report.admissible):>11}")

print("\nFull report for the oscillating two-frequency profile:")
print(admit(profiles[-1][1], order, nu).to_json())
