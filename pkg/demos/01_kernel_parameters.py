"""
Kernel parameters for a pair of wavenumbers
===========================================

For the infinite-depth Whitham and Babenko models the parameters at which
two modes k1 < k2 are simultaneously neutral have closed forms.  The finite
depth Whitham model needs a root search instead.
"""

import numpy as np

from asymwave import get_model, solve_kernel_params

# infinite-depth Whitham, (2, 3) with unit surface tension
ks = solve_kernel_params("whitham-inf", 2, 3, {"T": 1.0})
print("whitham-inf mu0:", ks.mu0)

# the symbol vanishes at 2 and 3 and nowhere else in the checked range
model = get_model("whitham-inf")
k = np.arange(1, 11)
print("l(k), k = 1..10:", np.round(model.symbol(ks.mu0, k), 4))
print("certificate:", ks.certificate)

# Babenko on infinite depth: nu0 = sqrt(1/k1 + 1/k2), beta0 = 1/(k1 k2)
print("babenko-inf mu0:", solve_kernel_params("babenko-inf", 2, 3).mu0)

# finite depth: a kernel only exists when the symbol is not monotone
print("whitham-fin mu0:", solve_kernel_params("whitham-fin", 2, 3, {"T": 0.1, "d": 1.0}).mu0)
