"""
Taylor-Fourier coefficients and the resonance coefficient
==========================================================

The reduced solution is expanded in powers of the two kernel amplitudes.
The coefficient that lands back on mode k1 at order k1 + k2 - 1 decides
whether asymmetric waves can bifurcate.
"""

from asymwave import build_table, resonance_coefficient, scaled_constant_C, solve_kernel_params
from asymwave.expansion import resonance_index

ks = solve_kernel_params("whitham-inf", 2, 3, {"T": 1.0})
table = build_table("whitham-inf", ks, ks.mu0, 4)

# second-order entries, one for each way of reaching modes 4 and 5
print("u_hat (2,0),(0,0) =", table.u_hat((2, 0), (0, 0)))
print("u_hat (1,1),(0,0) =", table.u_hat((1, 1), (0, 0)))

alpha, gamma = resonance_index(2, 3)
print("resonance index:", alpha, gamma, "wavenumber", table.wavenumber(alpha, gamma))
print("n_hat at the resonance index:", resonance_coefficient("whitham-inf", ks))

# on infinite depth the surface tension only rescales the coefficient
for k1, k2 in [(2, 3), (2, 5), (3, 4), (5, 7)]:
    C, spread = scaled_constant_C(k1, k2, (0.25, 1.0, 4.0))
    print(f"C({k1},{k2}) = {C:.10g}  (spread {spread:.1e})")
