import math

import numpy as np
import pytest

from asymwave.checks import gradient_slopes
from asymwave.expansion import resonance_coefficient
from asymwave.models import DomainError, get_model, solve_kernel_params
from asymwave.oracle import (
    NewtonError,
    SpectralGrid,
    evaluate_functional,
    ls_solve,
    psi_estimates,
    psi_theta_spread,
    residual,
)


def test_grid_round_trip():
    grid = SpectralGrid(20)
    rng = np.random.default_rng(0)
    c = rng.standard_normal(21) + 1j * rng.standard_normal(21)
    c[0] = c[0].real
    assert np.allclose(grid.spectrum(grid.values(c)), c, atol=1e-13, rtol=0)
    assert grid.n_phys > 2 * grid.n_modes


def test_grid_validation():
    with pytest.raises(DomainError):
        SpectralGrid(0)


@pytest.mark.parametrize("name", ["whitham-inf", "babenko-inf"])
def test_residual_of_zero(name):
    ks = solve_kernel_params(name, 2, 3)
    grid = SpectralGrid(40)
    assert np.all(residual(name, ks.mu0, np.zeros(41), grid) == 0)


def test_whitham_residual_of_cosine(wi23):
    grid = SpectralGrid(40)
    eps = 1e-3
    u = np.zeros(41, dtype=complex)
    u[2] = eps / 2
    res = residual("whitham-inf", wi23.mu0, u, grid)
    assert abs(res[2]) < 1e-15
    assert res[4] == pytest.approx(eps**2 / 4, rel=1e-12)
    assert res[0] == 0


def test_babenko_residual_of_cosine():
    mu = {"nu": math.sqrt(5 / 6), "beta": 1 / 6}
    grid = SpectralGrid(40)
    errs = []
    for eps in (1e-3, 5e-4):
        u = np.zeros(41, dtype=complex)
        u[1] = eps / 2
        res = residual("babenko-inf", mu, u, grid)
        assert res[1].real == pytest.approx(eps / 6, rel=1e-2)
        errs.append(abs(res[1] - eps / 6))
    assert errs[1] < errs[0] / 3


def test_babenko_branch_safety(bi23):
    u = np.zeros(41, dtype=complex)
    u[1] = 0.5  # Hu = cos x, Du = -sin x: the square root touches zero at x = pi
    with pytest.raises(DomainError):
        residual("babenko-inf", bi23.mu0, u, SpectralGrid(40))


def test_zero_amplitude_solve(wi23):
    sol = ls_solve("whitham-inf", wi23.mu0, wi23, (0.0, 0.0), (0.1, 0.2))
    assert np.all(sol.w == 0)
    assert sol.residual_norm == 0


@pytest.mark.parametrize("name", ["whitham-inf", "babenko-inf", "whitham-fin"])
def test_solution_structure(name):
    fixed = {"T": 0.1, "d": 1.0} if name == "whitham-fin" else None
    ks = solve_kernel_params(name, 2, 3, fixed)
    sol = ls_solve(name, ks.mu0, ks, (0.01, 0.02), (0.3, 0.5))
    assert sol.w[2] == 0 and sol.w[3] == 0
    if get_model(name).zero_mean:
        assert sol.w[0] == 0
    assert sol.residual_norm <= 1e-12


@pytest.mark.parametrize("name", ["whitham-inf", "babenko-inf"])
def test_equal_phases_give_symmetric_solution(name):
    ks = solve_kernel_params(name, 2, 3)
    tb = 0.7
    sol = ls_solve(name, ks.mu0, ks, (0.02, 0.01), (tb, tb))
    # even about x = -tb  <=>  u_k exp(-i k tb) real
    shifted = sol.coefficients * np.exp(-1j * np.arange(len(sol.w)) * tb)
    assert np.abs(shifted.imag).max() < 1e-10 * np.abs(shifted).max()


def test_newton_quadratic_convergence(wi23):
    sol = ls_solve("whitham-inf", wi23.mu0, wi23, (0.03, 0.03), (0.0, 0.2), tol=1e-13)
    h = sol.history
    orders = [math.log(c / b) / math.log(b / a)
              for a, b, c in zip(h, h[1:], h[2:]) if a < 1e-4 and c > 1e-18]
    assert orders and min(orders) > 1.7


def test_newton_failure_reports_residual(wi23):
    with pytest.raises(NewtonError) as info:
        ls_solve("whitham-inf", wi23.mu0, wi23, (0.05, 0.05), (0.0, 0.2), max_iter=1, tol=1e-30)
    assert info.value.residual_norm > 0


def test_functional_at_zero(wi23, bi23):
    grid = SpectralGrid(16)
    assert evaluate_functional("whitham-inf", wi23.mu0, np.zeros(17), grid) == 0
    beta = bi23.mu0["beta"]
    assert evaluate_functional("babenko-inf", bi23.mu0, np.zeros(17), grid) == pytest.approx(
        2 * math.pi * beta, rel=1e-14)


@pytest.mark.parametrize("name", ["whitham-inf", "babenko-inf", "whitham-fin", "babenko-fin"])
def test_functional_translation_invariant(name):
    fixed = {"T": 0.1, "d": 1.0} if name == "whitham-fin" else None
    ks = solve_kernel_params(name, 2, 3, fixed)
    grid = SpectralGrid(16)
    rng = np.random.default_rng(3)
    u = np.zeros(17, dtype=complex)
    u[1:7] = 0.01 * (rng.standard_normal(6) + 1j * rng.standard_normal(6))
    shifted = u * np.exp(1j * np.arange(17) * 0.37)
    a = evaluate_functional(name, ks.mu0, u, grid)
    b = evaluate_functional(name, ks.mu0, shifted, grid)
    assert a == pytest.approx(b, rel=1e-12)


@pytest.mark.parametrize("name", ["whitham-inf", "babenko-inf", "whitham-fin", "babenko-fin"])
def test_gradient_identity(name):
    fixed = {"T": 0.1, "d": 1.0} if name == "whitham-fin" else None
    slopes = gradient_slopes(name, fixed=fixed, seed=11)
    assert all(abs(s - 2.0) <= 0.1 for s in slopes)


def test_psi_limits(wi23):
    model = get_model("whitham-inf")
    mu = dict(wi23.mu0)
    mu["c"] += 0.01
    l1 = float(model.symbol(mu, [2])[0])
    l2 = float(model.symbol(mu, [3])[0])
    r = 1e-4
    est = psi_estimates(model, mu, wi23, (r, r), (0.0, 0.2))
    assert est.psi1 == pytest.approx(l1, abs=50 * r)
    assert est.psi2 == pytest.approx(l2, abs=50 * r)


def test_psi_factorization_identity(wi23):
    est = psi_estimates("whitham-inf", wi23.mu0, wi23, (1e-3, 1e-3), (0.0, 0.2))
    assert 2 * est.psi3 == pytest.approx(3 * est.psi4, rel=1e-6)


def test_psi_small_phase_rejected(wi23):
    with pytest.raises(DomainError):
        psi_estimates("whitham-inf", wi23.mu0, wi23, (1e-3, 1e-3), (0.0, 0.001))


def test_psi_theta_spread(wi23):
    vals, spread = psi_theta_spread("whitham-inf", wi23.mu0, wi23, (2.0**-9, 2.0**-9),
                                    [(0.0, 0.2), (0.1, 0.5), (0.3, 0.1)])
    assert spread < 1e-3
    assert np.allclose(vals, resonance_coefficient("whitham-inf", wi23), rtol=1e-2)


# the finite-depth models carry larger r^4 terms, so they use smaller amplitudes
@pytest.mark.parametrize("name,e", [("babenko-inf", 7), ("babenko-fin", 9), ("whitham-fin", 9)])
def test_psi3_extrapolates_to_resonance(name, e):
    fixed = {"T": 0.1, "d": 1.0} if name == "whitham-fin" else None
    ks = solve_kernel_params(name, 2, 3, fixed)
    big = psi_estimates(name, ks.mu0, ks, (2.0**-e,) * 2, (0.0, 0.2)).psi3
    small = psi_estimates(name, ks.mu0, ks, (2.0 ** -(e + 2),) * 2, (0.0, 0.2)).psi3
    extrap = (16 * small - big) / 15
    tol = 1e-4
    assert extrap == pytest.approx(resonance_coefficient(name, ks), rel=tol)


def test_k1_equal_one_sine_projection():
    ks = solve_kernel_params("babenko-inf", 1, 2)
    est = psi_estimates("babenko-inf", ks.mu0, ks, (2.0**-9,) * 2, (0.0, 0.7))
    assert est.psi3 == pytest.approx(resonance_coefficient("babenko-inf", ks), rel=1e-4)


def test_sine_projection_slope(wi23):
    # below 2^-7 the O(r^2) correction to Psi_3 is under 2 percent
    rs = [2.0**-e for e in range(7, 12)]
    sines = [abs(psi_estimates("whitham-inf", wi23.mu0, wi23, (r, r), (0.0, 0.2)).projections["sin1"])
             for r in rs]
    slope = np.polyfit(np.log(rs), np.log(sines), 1)[0]
    assert slope == pytest.approx(4.0, abs=0.05)


@pytest.mark.parametrize("name", ["whitham-inf", "babenko-inf"])
def test_sine_projections_vanish_at_equal_phases(name):
    ks = solve_kernel_params(name, 2, 3)
    grid = SpectralGrid(40)
    th = 0.4
    sol = ls_solve(name, ks.mu0, ks, (2.0**-5, 2.0**-5), (th, th), grid)
    F = residual(name, ks.mu0, sol, grid)
    for k in (2, 3):
        assert abs((F[k] * np.exp(-1j * k * th)).imag) < 1e-10
