"""
Cross-checking the series against a Newton solve
=================================================

The oracle solves the complement equation on a truncated Fourier basis and
reads the resonance coefficient off the sine projection of the residual.
Its estimate converges to the series value like r^2.
"""

import numpy as np

from asymwave import SpectralGrid, build_table, evaluate_expansion, ls_solve, psi_estimates
from asymwave import resonance_coefficient, solve_kernel_params

ks = solve_kernel_params("whitham-inf", 2, 3, {"T": 1.0})
grid = SpectralGrid(40)
nhat = resonance_coefficient("whitham-inf", ks)

estimates = {}
for e in (7, 8, 9):
    r = 2.0**-e
    est = psi_estimates("whitham-inf", ks.mu0, ks, (r, r), (0.0, 0.2), grid)
    estimates[e] = est.psi3
    print(f"r = 2^-{e}: Psi3 = {est.psi3:.8f}, k1 Psi3 - k2 Psi4 = {2 * est.psi3 - 3 * est.psi4:.1e}")

# Richardson extrapolation in r^2
extrap = (16 * estimates[9] - estimates[7]) / 15
print(f"extrapolated {extrap:.8f}  vs  series {nhat:.8f}")

# the truncated series also reproduces the whole solved profile
table = build_table("whitham-inf", ks, ks.mu0, 3)
for s in (1.0, 0.5):
    r = (2.0**-6 * s, 2.0**-7 * s)
    sol = ls_solve("whitham-inf", ks.mu0, ks, r, (0.0, 0.2), grid)
    pred = np.zeros(grid.n_modes + 1, dtype=complex)
    for k, c in evaluate_expansion(table, r, (0.0, 0.2)).items():
        if 0 <= k <= grid.n_modes:
            pred[k] += c
    print(f"scale {s}: max |newton - series| = {np.abs(sol.coefficients - pred).max():.3e}")
