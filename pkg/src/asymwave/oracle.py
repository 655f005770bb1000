"""Pseudo-spectral Lyapunov-Schmidt solver used as an independent check.

The kernel part ``v = r1 cos(k1 (x + theta1)) + r2 cos(k2 (x + theta2))`` is
prescribed and the complement ``w`` is found by Newton iteration on the
projected equation ``L w + P_W N(v + w) = 0`` truncated to ``|k| <= n_modes``.
The nonlinearity is evaluated from its closed form on an oversampled grid,
never from the series used in :mod:`asymwave.expansion`.

Mode coefficients are stored for ``k = 0..n_modes`` (complex, with
``u_{-k} = conj(u_k)``) so that ``u(x) = sum_k u_k exp(i k x)``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .models import DomainError, KernelSpec, get_model

__all__ = [
    "SpectralGrid",
    "TruncatedSolution",
    "NewtonError",
    "PsiEstimates",
    "kernel_coefficients",
    "inner",
    "residual",
    "ls_solve",
    "psi_estimates",
    "psi_theta_spread",
    "evaluate_functional",
]

log = logging.getLogger(__name__)


class NewtonError(RuntimeError):
    def __init__(self, message, residual_norm):
        super().__init__(message)
        self.residual_norm = residual_norm


class SpectralGrid:
    """Equispaced grid on [0, 2*pi) with ``oversample * (2 n_modes + 1)`` points."""

    def __init__(self, n_modes: int, oversample: int = 4):
        if n_modes < 1 or oversample < 2:
            raise DomainError("need n_modes >= 1 and oversample >= 2")
        self.n_modes = int(n_modes)
        self.oversample = int(oversample)
        self.n_phys = self.oversample * (2 * self.n_modes + 1)
        self.x = 2.0 * np.pi * np.arange(self.n_phys) / self.n_phys
        self.modes = np.arange(self.n_modes + 1)
        self.fine_modes = np.arange(self.n_phys // 2 + 1)

    def pad(self, u_hat):
        out = np.zeros(self.n_phys // 2 + 1, dtype=complex)
        out[: len(u_hat)] = u_hat
        return out

    def fine_values(self, spec):
        return np.fft.irfft(spec, n=self.n_phys) * self.n_phys

    def fine_spectrum(self, values):
        return np.fft.rfft(values) / self.n_phys

    def values(self, u_hat):
        return self.fine_values(self.pad(u_hat))

    def spectrum(self, values):
        return self.fine_spectrum(values)[: self.n_modes + 1]

    def integrate(self, values) -> float:
        return float(2.0 * np.pi * np.mean(values))


def inner(a_hat, b_hat) -> float:
    """``int_0^{2 pi} a b dx`` for real functions given by mode coefficients."""
    n = min(len(a_hat), len(b_hat))
    a, b = np.asarray(a_hat[:n]), np.asarray(b_hat[:n])
    s = (a[0] * np.conj(b[0])).real + 2.0 * np.sum(a[1:] * np.conj(b[1:])).real
    return float(2.0 * np.pi * s)


def kernel_coefficients(kernel: KernelSpec, r, theta, n_modes: int):
    v = np.zeros(n_modes + 1, dtype=complex)
    for kk, rr, tt in ((kernel.k1, r[0], theta[0]), (kernel.k2, r[1], theta[1])):
        v[kk] = 0.5 * rr * np.exp(1j * kk * tt)
    return v


@dataclass
class TruncatedSolution:
    kernel: KernelSpec
    r: tuple
    theta: tuple
    w: np.ndarray
    residual_norm: float
    iterations: int = 0
    history: list = field(default_factory=list)

    @property
    def v(self):
        return kernel_coefficients(self.kernel, self.r, self.theta, len(self.w) - 1)

    @property
    def coefficients(self):
        return self.v + self.w


def _linear_part(model, mu, u_hat, modes):
    sym = np.zeros(len(modes))
    nz = modes != 0
    sym[nz] = model.symbol(mu, modes[nz])
    if not model.zero_mean:
        sym[0] = float(model.symbol(mu, np.array([0]))[0])
    return sym * u_hat


def residual(model, mu, u, grid: SpectralGrid):
    """Mode coefficients of ``L(mu) u + N(mu, u)`` for ``|k| <= n_modes``.

    ``u`` is either a :class:`TruncatedSolution` or an array of mode
    coefficients.  Mode 0 is removed on zero-mean models.
    """
    model = get_model(model)
    mu = model.check_params(mu)
    u_hat = u.coefficients if isinstance(u, TruncatedSolution) else np.asarray(u, dtype=complex)
    u_hat = u_hat[: grid.n_modes + 1]
    if model.zero_mean:
        u_hat = u_hat.copy()
        u_hat[0] = 0.0
    out = _linear_part(model, mu, u_hat, grid.modes) + model.nonlinearity_spectrum(mu, u_hat, grid)
    if model.zero_mean:
        out[0] = 0.0
    return out


def evaluate_functional(model, mu, u, grid: SpectralGrid) -> float:
    """Quadrature of the energy functional whose gradient is the residual."""
    model = get_model(model)
    mu = model.check_params(mu)
    u_hat = u.coefficients if isinstance(u, TruncatedSolution) else np.asarray(u, dtype=complex)
    u_hat = u_hat[: grid.n_modes + 1]
    return grid.integrate(model.functional_density(mu, u_hat, grid))


def _complement_modes(model, kernel, n_modes):
    modes = np.arange(n_modes + 1)
    keep = (modes != kernel.k1) & (modes != kernel.k2)
    if model.zero_mean:
        keep &= modes != 0
    return modes[keep]


def ls_solve(model, mu, kernel: KernelSpec, r, theta, grid: SpectralGrid | None = None,
             tol: float = 1e-12, max_iter: int = 50, w0=None) -> TruncatedSolution:
    """Solve ``L w + P_W N(v + w) = 0`` for the complement coefficients ``w``.

    Newton's method with a central-difference Jacobian and dense solve.
    After the sup-norm residual drops below ``tol`` the iteration keeps
    polishing while the residual still falls by a factor of 10.
    """
    model = get_model(model)
    mu = model.check_params(mu)
    if grid is None:
        grid = SpectralGrid(8 * (kernel.k1 + kernel.k2))
    if grid.n_modes < kernel.k2:
        raise DomainError("grid must resolve both kernel modes")
    r = (float(r[0]), float(r[1]))
    theta = (float(theta[0]), float(theta[1]))
    v = kernel_coefficients(kernel, r, theta, grid.n_modes)
    cm = _complement_modes(model, kernel, grid.n_modes)
    has_zero = len(cm) and cm[0] == 0
    n_re = len(cm)

    def unpack(x):
        w = np.zeros(grid.n_modes + 1, dtype=complex)
        w[cm] = x[:n_re]
        if has_zero:
            w[cm[1:]] += 1j * x[n_re:]
        else:
            w[cm] += 1j * x[n_re:]
        return w

    def pack(c):
        c = c[cm]
        im = c[1:].imag if has_zero else c.imag
        return np.concatenate([c.real, im])

    def F(x):
        return pack(residual(model, mu, v + unpack(x), grid))

    x = pack(w0) if w0 is not None else np.zeros(2 * n_re - (1 if has_zero else 0))
    res = F(x)
    norm = float(np.abs(res).max()) if res.size else 0.0
    history = [norm]
    it = 0
    converged = norm <= tol
    while it < max_iter:
        if converged:
            if len(history) >= 2 and history[-1] > 0.1 * history[-2]:
                break
            if norm == 0.0:
                break
        scale = max(1.0, float(np.abs(x).max()) if x.size else 1.0)
        h = 1e-6 * scale
        J = np.empty((x.size, x.size))
        for j in range(x.size):
            e = np.zeros(x.size)
            e[j] = h
            J[:, j] = (F(x + e) - F(x - e)) / (2.0 * h)
        x_new = x - np.linalg.solve(J, res)
        res_new = F(x_new)
        norm_new = float(np.abs(res_new).max())
        it += 1
        if converged and norm_new >= norm:
            break
        x, res, norm = x_new, res_new, norm_new
        history.append(norm)
        log.debug("newton %d: residual %.3e", it, norm)
        if norm <= tol:
            converged = True
    if not converged:
        raise NewtonError(f"Newton did not converge in {max_iter} iterations "
                          f"(residual {norm:.3e})", norm)
    return TruncatedSolution(kernel=kernel, r=r, theta=theta, w=unpack(x), residual_norm=norm,
                             iterations=it, history=history)


@dataclass
class PsiEstimates:
    psi1: float
    psi2: float
    psi3: float
    psi4: float
    solution: TruncatedSolution
    projections: dict


def psi_estimates(model, mu, kernel: KernelSpec, r, theta, grid: SpectralGrid | None = None,
                  min_phase: float = 0.1, tol: float = 1e-12) -> PsiEstimates:
    """Divide the four kernel projections of the residual by their factored prefactors.

    With ``c_i`` the coefficient of ``exp(i k_i (x + theta_i))`` in the
    residual, the cosine projections are ``2 Re c_i`` and the sine
    projections are carried by ``Im c_i``; as ``r -> 0`` the quotients tend to
    ``l(k1)``, ``l(k2)`` and the resonance coefficients.
    """
    model = get_model(model)
    k1, k2 = kernel.k1, kernel.k2
    r1, r2 = float(r[0]), float(r[1])
    if not (r1 > 0 and r2 > 0):
        raise DomainError("psi estimates need r1, r2 > 0")
    s = math.sin(k1 * k2 * (theta[1] - theta[0]))
    if abs(s) < min_phase:
        raise DomainError(
            f"|sin(k1 k2 (theta2 - theta1))| = {abs(s):.3g} < {min_phase}; "
            "choose phases with a larger separation")
    sol = ls_solve(model, mu, kernel, (r1, r2), theta, grid, tol=tol)
    if grid is None:
        grid = SpectralGrid(len(sol.w) - 1)
    F = residual(model, mu, sol, grid)
    c1 = F[k1] * np.exp(-1j * k1 * theta[0])
    c2 = F[k2] * np.exp(-1j * k2 * theta[1])
    psi1 = 2.0 * c1.real / r1
    psi2 = 2.0 * c2.real / r2
    psi3 = c1.imag / (r1 ** (k2 - 1) * r2**k1 * s)
    psi4 = c2.imag / (r1**k2 * r2 ** (k1 - 1) * (-s))
    proj = {
        "cos1": 2.0 * math.pi * c1.real,
        "cos2": 2.0 * math.pi * c2.real,
        "sin1": -2.0 * math.pi * c1.imag,
        "sin2": -2.0 * math.pi * c2.imag,
    }
    return PsiEstimates(float(psi1), float(psi2), float(psi3), float(psi4), sol, proj)


def psi_theta_spread(model, mu, kernel: KernelSpec, r, thetas, grid=None):
    """Psi_3 estimates over several phase pairs and their relative spread."""
    vals = np.array([psi_estimates(model, mu, kernel, r, th, grid).psi3 for th in thetas])
    mean = float(vals.mean())
    return vals, float((vals.max() - vals.min()) / abs(mean))
