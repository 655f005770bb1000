"""Invariant checks behind ``asymwave verify``.

Each check returns a :class:`CheckResult`; none of them raise on failure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expansion import build_table, resonance_coefficient, evaluate_expansion
from .models import get_model, solve_kernel_params
from .oracle import (
    SpectralGrid,
    evaluate_functional,
    inner,
    ls_solve,
    psi_estimates,
    residual,
)

__all__ = [
    "CheckResult",
    "check_scaling",
    "check_factorization",
    "check_gradient",
    "check_depth",
    "check_oracle",
    "CHECKS",
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.value:.3e} (tol {self.tolerance:.1e}) {self.detail}".rstrip()


def check_scaling(k1=2, k2=3, T_samples=(0.25, 0.5, 1.0, 2.0, 4.0), tol=1e-8) -> CheckResult:
    """``n_hat(T) T^((k1+k2-3)/4)`` is independent of ``T`` (infinite-depth Whitham)."""
    expo = (k1 + k2 - 3) / 4.0
    vals = []
    for T in T_samples:
        ks = solve_kernel_params("whitham-inf", k1, k2, {"T": T})
        vals.append(resonance_coefficient("whitham-inf", ks) * T**expo)
    vals = np.array(vals)
    spread = float((vals.max() - vals.min()) / abs(vals.mean()))
    return CheckResult(f"scaling ({k1},{k2})", spread <= tol, spread, tol,
                       f"C = {vals.mean():.12g}")


def check_factorization(model="whitham-inf", k1=2, k2=3, fixed=None, r=2.0**-7,
                        theta=(0.0, 0.2), n_modes=None, tol=1e-6) -> CheckResult:
    """``k1 Psi_3 = k2 Psi_4`` from the oracle solve."""
    ks = solve_kernel_params(model, k1, k2, fixed)
    grid = SpectralGrid(n_modes or 8 * (k1 + k2))
    est = psi_estimates(model, ks.mu0, ks, (r, r), theta, grid)
    a, b = k1 * est.psi3, k2 * est.psi4
    rel = abs(a - b) / abs(a)
    return CheckResult(f"factorization {model} ({k1},{k2})", rel <= tol, rel, tol,
                       f"Psi3 = {est.psi3:.10g}")


def _random_direction(rng, n_modes, zero_mean, count=6):
    phi = np.zeros(n_modes + 1, dtype=complex)
    ks = np.arange(1, count + 1)
    phi[ks] = (rng.standard_normal(count) + 1j * rng.standard_normal(count)) / ks**2
    if not zero_mean:
        phi[0] = rng.standard_normal()
    return phi


def gradient_slopes(model="whitham-inf", k1=2, k2=3, fixed=None, amplitude=1e-2, n_dirs=5,
                    seed=0, steps=(1e-2, 1e-3, 1e-4), n_modes=32):
    """Log-log slopes of the central-difference error of the functional
    against ``<residual, phi>`` for ``n_dirs`` random directions."""
    model = get_model(model)
    ks = solve_kernel_params(model, k1, k2, fixed)
    mu = ks.mu0
    grid = SpectralGrid(n_modes)
    rng = np.random.default_rng(seed)
    u = amplitude * _random_direction(rng, n_modes, model.zero_mean)
    F = residual(model, mu, u, grid)
    slopes = []
    for _ in range(n_dirs):
        phi = _random_direction(rng, n_modes, model.zero_mean)
        exact = inner(F, phi)
        errs = []
        for h in steps:
            fd = (evaluate_functional(model, mu, u + h * phi, grid)
                  - evaluate_functional(model, mu, u - h * phi, grid)) / (2.0 * h)
            errs.append(abs(fd - exact))
        slope = np.polyfit(np.log(steps), np.log(errs), 1)[0]
        slopes.append(float(slope))
    return slopes


def check_gradient(model="whitham-inf", seed=0, tol=0.1, **kw) -> CheckResult:
    slopes = gradient_slopes(model, seed=seed, **kw)
    worst = max(abs(s - 2.0) for s in slopes)
    return CheckResult(f"gradient {get_model(model).name}", worst <= tol, worst, tol,
                       "slopes " + ", ".join(f"{s:.3f}" for s in slopes))


def depth_covariance_error(k1=2, k2=3, d=2.0, T=0.1, order=4):
    """Largest relative deviation from ``u_hat(c,kappa,T,d) = d^(-(n-1)/2) u_hat(c/sqrt d, kappa d, T/d^2, 1)``."""
    ks = solve_kernel_params("whitham-fin", k1, k2, {"T": T, "d": d})
    mu = ks.mu0
    mu1 = {"c": mu["c"] / math.sqrt(d), "kappa": mu["kappa"] * d, "T": mu["T"] / d**2, "d": 1.0}
    ta = build_table("whitham-fin", ks, mu, order)
    tb = build_table("whitham-fin", ks, mu1, order)
    sel = (ta.orders >= 1) & (ta.orders <= order)
    lhs = ta.u[sel]
    rhs = d ** (-(ta.orders[sel] - 1) / 2.0) * tb.u[sel]
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    nz = scale > 0
    return float(np.max(np.abs(lhs - rhs)[nz] / scale[nz])) if nz.any() else 0.0


def check_depth(k1=2, k2=3, d=2.0, T=0.1, order=4, tol=1e-9) -> CheckResult:
    err = depth_covariance_error(k1, k2, d, T, order)
    return CheckResult(f"depth covariance d={d:g} ({k1},{k2})", err <= tol, err, tol)


def oracle_expansion_errors(model="whitham-inf", k1=2, k2=3, fixed=None, r=(2.0**-6, 2.0**-7),
                            theta=(0.0, 0.2), order=3, n_modes=None):
    """Sup-norm distance between the Newton solution and the order-``order``
    expansion at ``r`` and ``r/2``."""
    ks = solve_kernel_params(model, k1, k2, fixed)
    grid = SpectralGrid(n_modes or 8 * (k1 + k2))
    table = build_table(model, ks, ks.mu0, order)
    errs = []
    for s in (1.0, 0.5):
        rr = (r[0] * s, r[1] * s)
        sol = ls_solve(model, ks.mu0, ks, rr, theta, grid)
        pred = np.zeros(grid.n_modes + 1, dtype=complex)
        for kk, c in evaluate_expansion(table, rr, theta).items():
            if 0 <= kk <= grid.n_modes:
                pred[kk] += c
        errs.append(float(np.abs(sol.coefficients - pred).max()))
    return errs


def check_oracle(model="whitham-inf", k1=2, k2=3, fixed=None, order=3, n_modes=None) -> CheckResult:
    """Psi_3 extrapolation and expansion/Newton agreement."""
    ks = solve_kernel_params(model, k1, k2, fixed)
    grid = SpectralGrid(n_modes or 8 * (k1 + k2))
    nhat = resonance_coefficient(model, ks)
    p7 = psi_estimates(model, ks.mu0, ks, (2.0**-7, 2.0**-7), (0.0, 0.2), grid).psi3
    p9 = psi_estimates(model, ks.mu0, ks, (2.0**-9, 2.0**-9), (0.0, 0.2), grid).psi3
    extrap = (16.0 * p9 - p7) / 15.0
    rel = abs(extrap - nhat) / abs(nhat)
    e1, e2 = oracle_expansion_errors(model, k1, k2, fixed, order=order, n_modes=n_modes)
    ratio = e1 / e2
    need = 2.0 ** (order + 1) * 0.9 / 2.0
    ok = rel <= 1e-4 and ratio >= need
    return CheckResult(f"oracle {get_model(model).name} ({k1},{k2})", ok, rel, 1e-4,
                       f"halving ratio {ratio:.2f} (need >= {need:.1f})")


CHECKS = {
    "scaling": check_scaling,
    "factorization": check_factorization,
    "gradient": check_gradient,
    "depth": check_depth,
    "oracle": check_oracle,
}
