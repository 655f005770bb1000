"""Taylor-Fourier coefficients of the reduced solution and the resonance data.

The solution of the complement equation is written as

    u = sum_{|alpha|+|gamma| >= 1} u_hat[alpha, gamma] r^(alpha+gamma) E^(alpha-gamma),
    E = (exp(i k1 (x + theta1)), exp(i k2 (x + theta2))),

and ``N(mu, u)`` likewise with coefficients ``n_hat``.  Coefficients are
stored in dense arrays indexed by ``(alpha1, alpha2, gamma1, gamma2)``.  A
product of two such series is a 4-D discrete convolution, so the ordered
composition sums of the recursion become repeated truncated convolutions.

Orders are filled in increasing order: the order-n slice of ``N(mu, u)``
only involves coefficients of order < n, and

    u_hat = -ell(k) * n_hat,    ell(k) = 1/l_mu(k) off the kernel, 0 on it.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import convolve

from .models import DomainError, KernelSpec, Model, get_model

__all__ = [
    "SMALL_DIVISOR",
    "SmallDivisorWarning",
    "SeriesAlgebra",
    "CoefficientTable",
    "TransversalityData",
    "resonance_index",
    "build_table",
    "resonance_table",
    "resonance_coefficient",
    "scaled_constant_C",
    "transversality_jacobian",
    "evaluate_expansion",
]

SMALL_DIVISOR = 1e8
SCALING_RTOL = 1e-6


class SmallDivisorWarning(RuntimeWarning):
    pass


class SeriesAlgebra:
    """Truncated multiplication of coefficient arrays over a box of indices."""

    def __init__(self, shape, k1: int, k2: int, max_order: int):
        self.shape = tuple(int(s) for s in shape)
        idx = np.indices(self.shape)
        self.order = idx.sum(axis=0)
        self.k = (idx[0] - idx[2]) * k1 + (idx[1] - idx[3]) * k2
        self.max_order = max_order
        self._keep = self.order <= max_order
        self._slices = tuple(slice(0, s) for s in self.shape)

    def zeros(self):
        return np.zeros(self.shape)

    def one(self):
        out = self.zeros()
        out[0, 0, 0, 0] = 1.0
        return out

    def mul(self, a, b):
        out = convolve(a, b, mode="full", method="direct")[self._slices]
        return np.where(self._keep, out, 0.0)


def resonance_index(k1: int, k2: int):
    """Multi-index pair ``((0, k1), (k2 - 1, 0))`` of the resonance coefficient."""
    return (0, k1), (k2 - 1, 0)


@dataclass
class CoefficientTable:
    model: Model
    kernel: KernelSpec
    mu: dict
    order: int
    u: np.ndarray
    n: np.ndarray
    k: np.ndarray
    orders: np.ndarray
    ell: np.ndarray
    warnings: list = field(default_factory=list)

    @property
    def shape(self):
        return self.u.shape

    def _index(self, alpha, gamma):
        ix = (alpha[0], alpha[1], gamma[0], gamma[1])
        if any(i < 0 for i in ix) or any(i >= s for i, s in zip(ix, self.u.shape)):
            raise KeyError(f"index {alpha},{gamma} outside the table box {self.u.shape}")
        if self.orders[ix] > self.order:
            raise KeyError(f"index {alpha},{gamma} beyond table order {self.order}")
        return ix

    def u_hat(self, alpha, gamma) -> float:
        return float(self.u[self._index(alpha, gamma)])

    def n_hat(self, alpha, gamma) -> float:
        return float(self.n[self._index(alpha, gamma)])

    def wavenumber(self, alpha, gamma) -> int:
        return int(self.k[self._index(alpha, gamma)])

    def entries(self):
        """Yield ``(alpha, gamma, u_hat, n_hat)`` for every stored index."""
        for ix in zip(*np.nonzero(self.orders <= self.order)):
            yield (ix[0], ix[1]), (ix[2], ix[3]), float(self.u[ix]), float(self.n[ix])

    def order_scale(self, n: int) -> float:
        """Largest ``|n_hat|`` among stored entries of order ``n``."""
        sel = self.orders == n
        return float(np.abs(self.n[sel]).max()) if sel.any() else 0.0


def _ell(model, mu, kernel, k):
    ell = np.zeros(k.shape)
    mask = ~np.isin(k, kernel.kernel_modes)
    if model.zero_mean:
        mask &= k != 0
    with np.errstate(divide="ignore"):
        ell[mask] = 1.0 / model.symbol(mu, k[mask])
    return ell


def build_table(model, kernel: KernelSpec, mu, order: int, box=None) -> CoefficientTable:
    """All ``u_hat`` and ``n_hat`` up to ``order``.

    ``box`` optionally bounds each of ``(alpha1, alpha2, gamma1, gamma2)``;
    since every part of a composition is dominated componentwise by the
    whole, the recursion closes on any such box.
    """
    model = get_model(model)
    mu = model.check_params(mu)
    if order < 1:
        raise DomainError("table order must be at least 1")
    shape = tuple(order + 1 for _ in range(4)) if box is None else tuple(int(b) + 1 for b in box)
    alg = SeriesAlgebra(shape, kernel.k1, kernel.k2, order)
    ell = _ell(model, mu, kernel, alg.k)

    U = alg.zeros()
    Nn = alg.zeros()
    first = alg.order == 1
    U[first] = 0.5
    notes = []
    big = (np.abs(ell) > SMALL_DIVISOR) & (alg.order >= 2) & (alg.order <= order)
    if big.any():
        ks = sorted({int(x) for x in alg.k[big]})
        msg = f"small divisor: |ell(k)| > {SMALL_DIVISOR:g} at k in {ks}"
        notes.append(msg)
        warnings.warn(msg, SmallDivisorWarning, stacklevel=2)

    for n in range(2, order + 1):
        sel = alg.order == n
        if not sel.any():
            continue
        series = model.nonlinear_series(mu, U, alg, n)
        Nn[sel] = series[sel]
        U[sel] = -ell[sel] * series[sel]
        bad = ~np.isfinite(U) | ~np.isfinite(Nn)
        if bad.any():
            ix = tuple(int(i) for i in np.argwhere(bad)[0])
            raise FloatingPointError(
                f"non-finite coefficient at alpha={ix[:2]}, gamma={ix[2:]} (order {n})")

    if box is None:
        # swapping alpha and gamma negates k; symbols are even, so u_hat is unchanged
        for arr in (U, Nn):
            swapped = arr.transpose(2, 3, 0, 1)
            gap = np.abs(arr - swapped).max()
            if gap > 1e-12 * max(1.0, np.abs(arr).max()):
                raise AssertionError(f"index symmetry violated by {gap:.3e}")

    return CoefficientTable(model=model, kernel=kernel, mu=mu, order=order, u=U, n=Nn,
                            k=alg.k, orders=alg.order, ell=ell, warnings=notes)


def resonance_table(model, kernel: KernelSpec, mu=None, neighbours: bool = True) -> CoefficientTable:
    """Table on a small box around the resonance index.

    The tight box ``(0, k1, k2 - 1, 0)`` already determines the resonance
    coefficient but holds no other entry of the same order.  With
    ``neighbours`` the box grows to ``(1, k1, k2 - 1, 1)`` so that
    :meth:`CoefficientTable.order_scale` has same-order entries to compare to.
    """
    k1, k2 = kernel.k1, kernel.k2
    mu = kernel.mu0 if mu is None else mu
    pad = 1 if neighbours else 0
    return build_table(model, kernel, mu, k1 + k2 - 1, box=(pad, k1, k2 - 1, pad))


def resonance_coefficient(model, kernel: KernelSpec, mu=None) -> float:
    """``n_hat[(0, k1), (k2 - 1, 0)]`` at ``mu`` (default: ``kernel.mu0``)."""
    table = resonance_table(model, kernel, mu, neighbours=False)
    return table.n_hat(*resonance_index(kernel.k1, kernel.k2))


def scaled_constant_C(k1: int, k2: int, T_samples=(0.5, 1.0, 2.0)):
    """Surface-tension independent constant of the infinite-depth Whitham
    resonance coefficient, ``n_hat(T) * T^((k1+k2-3)/4)``.

    Returns ``(C, spread)`` with ``spread`` the relative max-min deviation
    across the samples.  The law is exact, so a spread above 1e-6 raises.
    """
    from .models import solve_kernel_params

    T_samples = [float(t) for t in T_samples]
    if len(T_samples) < 2 or min(T_samples) <= 0:
        raise DomainError("need at least two positive surface tension samples")
    expo = (k1 + k2 - 3) / 4.0
    vals = []
    for T in T_samples:
        ks = solve_kernel_params("whitham-inf", k1, k2, {"T": T})
        vals.append(resonance_coefficient("whitham-inf", ks) * T**expo)
    vals = np.array(vals)
    C = float(vals.mean())
    spread = float((vals.max() - vals.min()) / abs(C)) if C != 0 else float("inf")
    if spread > SCALING_RTOL:
        raise ArithmeticError(f"scaling law violated for ({k1},{k2}): spread {spread:.3e}")
    return C, spread


@dataclass
class TransversalityData:
    params: tuple
    matrix: np.ndarray | None
    det: float | None
    det_error: float | None
    steps: dict
    degenerate: bool = False

    @property
    def marker(self):
        return "degenerate-parameters" if self.degenerate else None


def _central(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def transversality_jacobian(model, kernel: KernelSpec, params=None, rel_step=1e-5) -> TransversalityData:
    """Jacobian of ``(l(k1), l(k2), n_hat_res)`` with respect to three parameters at ``mu0``.

    Linear rows use analytic derivatives when the model provides them.  The
    resonance row is a central difference with step ``rel_step * |mu_i|``;
    the determinant is recomputed at half the step and the relative change
    reported as ``det_error``.
    """
    model = get_model(model)
    params = tuple(params) if params is not None else model.transversality_params
    if params is None or len(model.param_names) < 3:
        return TransversalityData(params=(), matrix=None, det=None, det_error=None,
                                  steps={}, degenerate=True)
    if len(params) != 3 or any(p not in model.param_names for p in params):
        raise DomainError(f"need three parameter names of {model.param_names}, got {params}")
    mu0 = dict(kernel.mu0)
    k1, k2 = kernel.k1, kernel.k2

    def shifted(name, value):
        mu = dict(mu0)
        mu[name] = value
        return mu

    def l_row(kk, name, h):
        d = model.symbol_derivative(mu0, kk, name)
        if d is not None:
            return d
        return _central(lambda v: float(model.symbol(shifted(name, v), np.array([kk]))[0]), mu0[name], h)

    def n_row(name, h):
        return _central(lambda v: resonance_coefficient(model, kernel, shifted(name, v)), mu0[name], h)

    def matrix(scale):
        steps = {p: scale * rel_step * abs(mu0[p]) for p in params}
        M = np.array([
            [l_row(k1, p, steps[p]) for p in params],
            [l_row(k2, p, steps[p]) for p in params],
            [n_row(p, steps[p]) for p in params],
        ])
        return M, steps

    M, steps = matrix(1.0)
    M_half, _ = matrix(0.5)
    det = float(np.linalg.det(M))
    det_half = float(np.linalg.det(M_half))
    err = abs(det_half - det) / abs(det_half) if det_half != 0 else float("inf")
    return TransversalityData(params=params, matrix=M_half, det=det_half, det_error=err, steps=steps)


def evaluate_expansion(table: CoefficientTable, r, theta, max_order=None) -> dict:
    """Complex Fourier coefficients ``{k: c_k}`` of the truncated expansion.

    Returns every wavenumber reached by the table (both signs), so the
    coefficients satisfy ``c_{-k} = conj(c_k)``.
    """
    r1, r2 = (float(x) for x in r)
    t1, t2 = (float(x) for x in theta)
    k1, k2 = table.kernel.k1, table.kernel.k2
    top = table.order if max_order is None else min(int(max_order), table.order)
    out: dict = {}
    for ix in zip(*np.nonzero((table.orders <= top) & (table.orders >= 1))):
        a1, a2, g1, g2 = (int(i) for i in ix)
        coef = table.u[ix]
        if coef == 0.0:
            continue
        amp = r1 ** (a1 + g1) * r2 ** (a2 + g2)
        phase = (a1 - g1) * k1 * t1 + (a2 - g2) * k2 * t2
        kk = int(table.k[ix])
        out[kk] = out.get(kk, 0.0) + coef * amp * complex(math.cos(phase), math.sin(phase))
    return out
