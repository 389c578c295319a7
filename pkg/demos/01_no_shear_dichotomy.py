"""Without shear, the sign of the temperature gradient decides everything.

A mode of the linearized system around rest and an affine profile T = alpha*y
obeys a constant-coefficient 2x2 system.  With hotter fluid above (alpha > 0)
the eigenvalues are damped or purely oscillatory; with colder fluid above
(alpha < 0) one eigenvalue is strictly positive no matter how small the
gradient is, and partial dissipation cannot remove the growth.  We tabulate
the eigenvalues and then confirm the growth rate with a direct time
integration of the mode system.
"""

import numpy as np
from scipy.integrate import solve_ivp

from bsl import DissipationConfig, FrequencyMode, NoShearSystem, classify_no_shear
from bsl.linmodes import no_shear_eigenvalues, no_shear_matrix

print(f"{'alpha':>8} {'nu':>5} {'mu':>5} {'lambda_1':>22} {'classification':>24}")
for alpha in (1.0, 1e-3, 0.0, -1e-6, -1e-3, -1.0):
    for nu, mu in ((0.0, 0.0), (0.1, 0.0)):
        sys = NoShearSystem(mode=FrequencyMode(1, 0.0), alpha=alpha,
                            diss=DissipationConfig(nu_y=nu, mu_y=mu))
        lam1, _ = no_shear_eigenvalues(sys)
        print(f"{alpha:8.0e} {nu:5.2f} {mu:5.2f} {lam1:22.6f} {classify_no_shear(sys):>24}")

print("\nGrowth-rate check for alpha = -0.5, nu = 0.1 (thermal diffusion off):")
sys = NoShearSystem(mode=FrequencyMode(1, 0.0), alpha=-0.5,
                    diss=DissipationConfig(nu_y=0.1))
lam1, _ = no_shear_eigenvalues(sys)
mat = no_shear_matrix(sys)
sol = solve_ivp(lambda t, y: mat @ y, (0, 20), [1.0 + 0j, 0.1j], method="DOP853",
                rtol=1e-10, atol=1e-12, t_eval=np.linspace(10, 20, 41))
rate = np.polyfit(sol.t, np.log(np.linalg.norm(sol.y, axis=0)), 1)[0]
print(f"  predicted Re(lambda_1) = {lam1.real:.6f}")
print(f"  measured  growth rate  = {rate:.6f}  (rel err {abs(rate-lam1.real)/lam1.real:.2e})")
