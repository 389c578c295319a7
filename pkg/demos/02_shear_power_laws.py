"""Couette shear turns exponential buoyancy growth into power laws.

In sheared coordinates the inviscid mode amplitude solves the oscillator
u'' + alpha/(1+t^2) u = 0, whose long-time behaviour is t^beta with
beta = (1 +/- sqrt(1-4*alpha))/2.  Vorticity always grows (Re beta_1 > 0),
but the vertical velocity gains a factor t^-2 from unmixing, so it decays as
long as alpha > -2: even an inverted gradient is tolerated once shear is on.

We integrate the oscillator to t = 1e4 and compare fitted slopes to the
predicted exponents, including the marginal case alpha = -2.
"""

from bsl import fitted_exponent_report

print(f"{'alpha':>7} {'beta_1':>8} {'fitted':>8} {'rel err':>9}   "
      f"{'omega rate':>10} {'v2 rate':>8}")
for alpha in (-6.0, -2.0, -0.5, 0.2):
    rep = fitted_exponent_report(alpha)
    rel = abs(rep.fitted_beta - rep.beta1.real) / abs(rep.beta1.real)
    print(f"{alpha:7.2f} {rep.beta1.real:8.4f} {rep.fitted_beta:8.4f} {rel:9.2e}   "
          f"t^{rep.predicted_rates['omega_growth']:+.2f} "
          f"  t^{rep.predicted_rates['v2_decay']:+.2f}")

print("\nThe vertical velocity rate hits t^0 exactly at alpha = -2: the"
      "\nmarginal point between shear-assisted decay and buoyancy growth.")
