"""The decaying Fourier weights that power every stability estimate.

Each mode (k, xi) crosses its critical time xi/k once; the arctan weight A
decays a bounded total amount near it, and the window weight B decays only
inside |xi/k - t| <= C.  Their product M = A*B loses a fixed factor per
resonance crossing and is constant otherwise, which is exactly the budget the
energy method spends to absorb the buoyancy coupling.  The capped weight
H = sqrt(k^2 + min((xi-kt)^2, nu^(-2/3))) measures effective frequency.

Writes a CSV with the weights along time for a few modes.
"""

import csv
import sys

import numpy as np

from bsl import CutoffConfig, FrequencyMode, evaluate_weights, resonant_window

nu = 1e-2
cutoff = CutoffConfig.from_nu(nu)
modes = [FrequencyMode(1, 0.0), FrequencyMode(1, 10.0), FrequencyMode(2, 10.0)]

print(f"cutoff C = nu^(-1/3) = {cutoff.C:.3f}")
for mode in modes:
    window = resonant_window(mode, cutoff)
    desc = f"[{window.start:.2f}, {window.end:.2f}]" if window else "empty"
    w_end = evaluate_weights(30.0, mode, cutoff, nu)
    print(f"mode (k={mode.k}, xi={mode.xi:5.1f}): window {desc:>16}, "
          f"M(30) = {w_end.M:.4f}")

out = sys.argv[1] if len(sys.argv) > 1 else "weights_demo.csv"
times = np.linspace(0.0, 30.0, 301)
with open(out, "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["t"] + [f"{q}_k{m.k}_xi{m.xi:g}" for m in modes
                             for q in ("A", "B", "M", "H")])
    for t in times:
        row = [t]
        for m in modes:
            w = evaluate_weights(t, m, cutoff, nu)
            row += [w.A, w.B, w.M, w.H]
        writer.writerow(row)
print(f"wrote {out}")
