"""Equation models: linear/multilinear Fourier symbols and kernel parameters.

Every model describes a steady equation ``L(mu) u + N(mu, u) = 0`` for
2*pi-periodic ``u``.  ``L`` is a Fourier multiplier with even symbol
``l_mu(k)`` and ``N`` is a sum of m-linear Fourier operators.  Each model
exposes three views of its nonlinearity that are kept deliberately separate:

* ``nonlinear_symbol`` -- the m-linear symbol on a tuple of wavenumbers;
* ``nonlinear_series`` -- the same algebra acting on Taylor-Fourier
  coefficient arrays (used by :mod:`asymwave.expansion`);
* ``nonlinearity_spectrum`` / ``functional_density`` -- the closed form
  evaluated pointwise on a grid (used by :mod:`asymwave.oracle`).

Parameter vectors are plain ``dict`` objects keyed by parameter name.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "DomainError",
    "KernelError",
    "Model",
    "WhithamInfinite",
    "WhithamFinite",
    "BabenkoInfinite",
    "BabenkoFinite",
    "KernelCertificate",
    "KernelSpec",
    "MODELS",
    "get_model",
    "linear_symbol",
    "nonlinear_symbol",
    "babenko_b_coeff",
    "solve_kernel_params",
    "verify_kernel_dimension",
]

KERNEL_RTOL = 1e-10


class DomainError(ValueError):
    """Input outside the domain where an operation is defined."""


class KernelError(RuntimeError):
    """Kernel parameters could not be found or the kernel is not simple."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


# ---------------------------------------------------------------------------
# Series coefficients of 1/sqrt((1+h)^2 + d^2)
# ---------------------------------------------------------------------------

def _sqrt_inverse_coeff(m: int) -> Fraction:
    # Taylor coefficients of (1 + x)^(-1/2)
    return Fraction((-1) ** m * math.comb(2 * m, m), 4**m)


@lru_cache(maxsize=None)
def _b_exact(j: int, k: int) -> Fraction:
    """Coefficient of h^j d^(2k) in (1 + 2h + h^2 + d^2)^(-1/2), all j, k >= 0."""
    total = Fraction(0)
    for m in range(max(-(-(j + 2 * k) // 2), k), j + k + 1):
        q = j + k - m
        p = 2 * m - j - 2 * k
        if p < 0 or q < 0:
            continue
        weight = math.factorial(m) // (math.factorial(p) * math.factorial(q) * math.factorial(k))
        total += _sqrt_inverse_coeff(m) * weight * 2**p
    return total


def _b(j: int, k: int) -> float:
    if j < 0 or k < 0:
        return 0.0
    return float(_b_exact(j, k))


def babenko_b_coeff(j: int, k: int) -> float:
    """Coefficient ``b_{j,k}`` of ``(Hu)^j (Du)^(2k)`` in the expansion of
    ``1/sqrt((Du)^2 + (1+Hu)^2)``.

    Only the terms with ``j + 2k >= 2`` are free coefficients; the constant
    and linear parts are fixed to ``1`` and ``-Hu``.
    """
    if j < 0 or k < 0 or j + 2 * k < 2:
        raise DomainError(f"b_{{j,k}} requires j, k >= 0 and j + 2k >= 2, got ({j}, {k})")
    return _b(j, k)


# ---------------------------------------------------------------------------
# Kernel data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelCertificate:
    passed: bool
    k_check: int
    min_gap: float
    min_gap_k: int
    growth_onset: float
    offending: tuple[int, ...] = ()
    residuals: tuple[float, float] = (0.0, 0.0)


@dataclass(frozen=True)
class KernelSpec:
    k1: int
    k2: int
    mu0: dict
    coprime: bool
    certificate: KernelCertificate | None = None

    @property
    def kernel_modes(self) -> tuple[int, int, int, int]:
        return (self.k1, -self.k1, self.k2, -self.k2)


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Model:
    """Base class; subclasses fill in the symbols and closed forms."""

    name: str = ""
    param_names: tuple[str, ...] = ()
    zero_mean: bool = True
    max_degree: int | None = None
    exploratory: bool = False
    fixed_names: tuple[str, ...] = ()
    fixed_defaults: Mapping[str, float] = field(default_factory=dict)
    transversality_params: tuple[str, ...] | None = None

    # -- parameter handling -------------------------------------------------
    def check_params(self, mu: Mapping[str, float]) -> dict:
        missing = [p for p in self.param_names if p not in mu]
        if missing:
            raise DomainError(f"{self.name}: missing parameters {missing}")
        out = {p: float(mu[p]) for p in self.param_names}
        bad = [p for p, v in out.items() if not v > 0]
        if bad:
            raise DomainError(f"{self.name}: parameters must be positive, got {bad}")
        return out

    # -- symbols --------------------------------------------------------------
    def symbol(self, mu, k):
        """Vectorized ``l_mu(k)``; values at k=0 are undefined on zero-mean models."""
        raise NotImplementedError

    def symbol_derivative(self, mu, k, name):
        """Analytic ``d l_mu(k) / d mu[name]`` or ``None`` when not available."""
        return None

    def nonlinear_symbol(self, mu, ks):
        raise NotImplementedError

    def growth_onset(self, mu) -> float:
        """Wavenumber beyond which ``l_mu(|k|)`` is strictly increasing."""
        raise NotImplementedError

    # -- series view (Taylor-Fourier coefficient arrays) ----------------------
    def nonlinear_series(self, mu, U, algebra, degree):
        """Coefficient array of ``N(mu, u)`` for the series ``U``, using
        multilinear terms up to ``degree``."""
        raise NotImplementedError

    # -- pointwise view (grid) ---------------------------------------------------
    def nonlinearity_spectrum(self, mu, u_hat, grid):
        """Fine-grid spectrum of ``N(mu, u)`` from its closed form."""
        raise NotImplementedError

    def functional_density(self, mu, u_hat, grid):
        raise NotImplementedError

    # -- kernel -----------------------------------------------------------------
    def kernel_params(self, k1, k2, fixed):
        raise NotImplementedError


def _sum_k(ks):
    return int(sum(int(k) for k in ks))


@dataclass(frozen=True)
class _Whitham(Model):
    max_degree: int | None = 2

    def multiplier(self, mu, xi):
        raise NotImplementedError

    def symbol(self, mu, k):
        k = np.abs(np.asarray(k, dtype=float))
        return -mu["c"] + self.multiplier(mu, mu["kappa"] * k)

    def nonlinear_symbol(self, mu, ks):
        if len(ks) != 2:
            raise DomainError(f"{self.name} is quadratic; got degree {len(ks)}")
        if self.zero_mean and _sum_k(ks) == 0:
            return 0.0
        return 1.0

    def nonlinear_series(self, mu, U, algebra, degree):
        out = algebra.mul(U, U)
        if self.zero_mean:
            out[algebra.k == 0] = 0.0
        return out

    def nonlinearity_spectrum(self, mu, u_hat, grid):
        u = grid.values(u_hat)
        spec = grid.spectrum(u * u)
        if self.zero_mean:
            spec[0] = 0.0
        return spec

    def functional_density(self, mu, u_hat, grid):
        u = grid.values(u_hat)
        Lu = grid.values(u_hat * self.symbol(mu, grid.modes) if not self.zero_mean
                         else _masked_symbol_apply(self, mu, u_hat, grid))
        return 0.5 * u * Lu + u**3 / 3.0


def _masked_symbol_apply(model, mu, u_hat, grid):
    k = grid.modes
    sym = np.zeros(k.shape)
    nz = k != 0
    sym[nz] = model.symbol(mu, k[nz])
    return u_hat * sym


@dataclass(frozen=True)
class WhithamInfinite(_Whitham):
    """Capillary-gravity Whitham equation on infinite depth (zero mean)."""

    name: str = "whitham-inf"
    param_names: tuple[str, ...] = ("c", "kappa", "T")
    fixed_names: tuple[str, ...] = ("T",)
    fixed_defaults: Mapping[str, float] = field(default_factory=lambda: {"T": 1.0})
    transversality_params: tuple[str, ...] | None = ("c", "kappa", "T")

    def multiplier(self, mu, xi):
        with np.errstate(divide="ignore"):
            return np.sqrt(1.0 / xi + mu["T"] * xi)

    def symbol_derivative(self, mu, k, name):
        k = abs(float(k))
        xi = mu["kappa"] * k
        m = float(self.multiplier(mu, xi))
        if name == "c":
            return -1.0
        if name == "kappa":
            return k * (mu["T"] - 1.0 / xi**2) / (2.0 * m)
        if name == "T":
            return xi / (2.0 * m)
        return None

    def growth_onset(self, mu):
        # m'(xi) > 0 exactly for xi > 1/sqrt(T)
        return 1.0 / (mu["kappa"] * math.sqrt(mu["T"]))

    def kernel_params(self, k1, k2, fixed):
        T = float(fixed.get("T", self.fixed_defaults["T"]))
        if not T > 0:
            raise DomainError("T must be positive")
        kappa = 1.0 / math.sqrt(k1 * k2 * T)
        c = T**0.25 * math.sqrt(math.sqrt(k1 / k2) + math.sqrt(k2 / k1))
        return {"c": c, "kappa": kappa, "T": T}


def _tanh_ratio(x, d):
    # tanh(x d)/x with its limit d at x = 0
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, float(d))
    nz = x != 0
    out[nz] = np.tanh(x[nz] * d) / x[nz]
    return out


@dataclass(frozen=True)
class WhithamFinite(_Whitham):
    """Capillary-gravity Whitham equation on depth ``d``; mode 0 is kept."""

    name: str = "whitham-fin"
    param_names: tuple[str, ...] = ("c", "kappa", "T", "d")
    zero_mean: bool = False
    fixed_names: tuple[str, ...] = ("T", "d")
    fixed_defaults: Mapping[str, float] = field(default_factory=lambda: {"T": 0.1, "d": 1.0})
    transversality_params: tuple[str, ...] | None = ("c", "kappa", "T")

    def multiplier(self, mu, xi):
        xi = np.asarray(xi, dtype=float)
        return np.sqrt((1.0 + mu["T"] * xi**2) * _tanh_ratio(xi, mu["d"]))

    def symbol_derivative(self, mu, k, name):
        if name == "c":
            return -1.0
        return None

    def growth_onset(self, mu):
        # d/dxi[(1/xi + T xi) tanh(xi d)] >= (T - 1/xi^2) tanh(xi d) > 0 past 1/sqrt(T)
        return 1.0 / (mu["kappa"] * math.sqrt(mu["T"]))

    def kernel_params(self, k1, k2, fixed):
        T = float(fixed.get("T", self.fixed_defaults["T"]))
        d = float(fixed.get("d", self.fixed_defaults["d"]))
        if not (T > 0 and d > 0):
            raise DomainError("T and d must be positive")
        probe = {"c": 1.0, "kappa": 1.0, "T": T, "d": d}

        def gap(kappa):
            return float(self.multiplier(probe, kappa * k1) - self.multiplier(probe, kappa * k2))

        grid = np.logspace(-6, 6, 1201)
        vals = np.array([gap(x) for x in grid])
        scale = np.abs(vals).max()
        roots = []
        for i in range(len(grid) - 1):
            a, b = vals[i], vals[i + 1]
            if a > 1e-12 * scale and b <= 0:
                roots.append(i)
        if not roots:
            raise KernelError(
                f"no kernel parameters for ({k1},{k2}) at T={T}, d={d}: "
                "symbol is monotone (needs T < d^2/3)"
            )
        i = roots[0]
        kappa = brentq(gap, grid[i], grid[i + 1], xtol=1e-13 * grid[i], rtol=4 * np.finfo(float).eps,
                       maxiter=500)
        c = float(self.multiplier(probe, kappa * k1))
        return {"c": c, "kappa": kappa, "T": T, "d": d}


@dataclass(frozen=True)
class _Babenko(Model):
    """Shared algebra of the capillary-gravity Babenko equations.

    With ``A = H u`` and ``B = D u`` the nonlinearity is

        g [u A + H(u^2/2)] + T [D^2 u - D(B/S) + H((1+A)/S)],
        S = sqrt(B^2 + (1+A)^2),

    followed by removal of the mean.  Expanding ``1/S`` in ``b_{j,k}``
    gives, for every degree m >= 2,

        T * sum_{p+2q=m} (b_{p,q} + b_{p-1,q}) H(A^p B^{2q})
      - T * sum_{p+2q+1=m} b_{p,q} D(A^p B^{2q+1})

    where ``b_{0,0} = 1`` and ``b_{1,0} = -1`` are the fixed low-order terms.
    """

    max_degree: int | None = None
    # parameter names for gravity coefficient and surface tension
    _g: str = "g"
    _tension: str = "T"

    def h(self, mu, k):
        """Symbol of H (even)."""
        raise NotImplementedError

    def dk(self, mu, k):
        """Symbol of D divided by i (odd)."""
        raise NotImplementedError

    def speed2(self, mu):
        raise NotImplementedError

    def gravity(self, mu):
        return mu[self._g]

    def tension(self, mu):
        return mu[self._tension]

    def symbol(self, mu, k):
        k = np.asarray(k, dtype=float)
        return -self.speed2(mu) * self.h(mu, k) + self.gravity(mu) + self.tension(mu) * self.dk(mu, k) ** 2

    def nonlinear_symbol(self, mu, ks):
        ks = [int(k) for k in ks]
        m = len(ks)
        if m < 2:
            raise DomainError("Babenko nonlinearity starts at degree 2")
        K = sum(ks)
        if K == 0:
            return 0.0
        h = lambda k: float(self.h(mu, k))
        dk = lambda k: float(self.dk(mu, k))
        g = self.gravity(mu)
        T = self.tension(mu)
        if m == 2:
            # u1 H u2 + H(u1 u2/2) + T D(D u1 H u2) - T H(D u1 D u2 / 2)
            k1, k2 = ks
            return (g * (h(k2) + 0.5 * h(K))
                    - T * dk(K) * dk(k1) * h(k2)
                    + 0.5 * T * h(K) * dk(k1) * dk(k2))
        total = 0.0
        for p in range(m + 1):
            q = m - p
            slots = np.prod([h(k) for k in ks[:p]]) * np.prod([dk(k) for k in ks[p:]])
            if q % 2 == 0:
                coef = (_b(p, q // 2) + _b(p - 1, q // 2)) * (-1) ** (q // 2) * h(K)
            else:
                s = (q - 1) // 2
                coef = _b(p, s) * (-1) ** s * dk(K)
            total += coef * slots
        return T * total

    def nonlinear_series(self, mu, U, algebra, degree):
        k = algebra.k
        hK = self.h(mu, k)
        dK = self.dk(mu, k)
        A = hK * U
        Bt = dK * U
        g = self.gravity(mu)
        T = self.tension(mu)

        out = g * (algebra.mul(U, A) + 0.5 * hK * algebra.mul(U, U))

        # powers[p][q] = A^p Bt^q
        one = algebra.one()
        powB = [one]
        for _ in range(degree):
            powB.append(algebra.mul(powB[-1], Bt))
        h_part = np.zeros_like(U)
        d_part = np.zeros_like(U)
        row = powB[:]  # row[q] = A^p Bt^q for the current p
        for p in range(degree + 1):
            for q in range(degree - p + 1):
                m = p + q
                if m < 2:
                    continue
                if q % 2 == 0:
                    coef = (_b(p, q // 2) + _b(p - 1, q // 2)) * (-1) ** (q // 2)
                    if coef:
                        h_part += coef * row[q]
                else:
                    s = (q - 1) // 2
                    coef = _b(p, s) * (-1) ** s
                    if coef:
                        d_part += coef * row[q]
            if p < degree:
                row = [algebra.mul(row[q], A) for q in range(degree - p)]
        out = out + T * (hK * h_part + dK * d_part)
        out[k == 0] = 0.0
        return out

    def _operators(self, mu, u_hat, grid):
        kf = grid.fine_modes
        A = grid.fine_values(grid.pad(u_hat) * self.h(mu, kf))
        B = grid.fine_values(grid.pad(u_hat) * 1j * self.dk(mu, kf))
        S2 = B**2 + (1.0 + A) ** 2
        if S2.min() < 0.25:
            raise DomainError(
                "square-root branch safety violated: (Du)^2 + (1+Hu)^2 < 1/4 "
                "on the grid; use a smaller amplitude"
            )
        return A, B, np.sqrt(S2)

    def nonlinearity_spectrum(self, mu, u_hat, grid):
        kf = grid.fine_modes
        hf = self.h(mu, kf)
        df = 1j * self.dk(mu, kf)
        df[np.abs(kf) == grid.n_phys // 2] = 0.0
        u = grid.fine_values(grid.pad(u_hat))
        A, B, S = self._operators(mu, u_hat, grid)
        g = self.gravity(mu)
        T = self.tension(mu)
        spec = g * (grid.fine_spectrum(u * A) + hf * grid.fine_spectrum(0.5 * u * u))
        spec += T * (df * df * grid.pad(u_hat)
                     - df * grid.fine_spectrum(B / S)
                     + hf * grid.fine_spectrum((1.0 + A) / S))
        spec[0] = 0.0
        return spec[: grid.n_modes + 1]

    def functional_density(self, mu, u_hat, grid):
        u = grid.fine_values(grid.pad(u_hat))
        A, B, S = self._operators(mu, u_hat, grid)
        return (0.5 * self.gravity(mu) * u * u * (1.0 + A)
                - 0.5 * self.speed2(mu) * u * A
                + self.tension(mu) * S)


@dataclass(frozen=True)
class BabenkoInfinite(_Babenko):
    """Babenko equation on infinite depth in the scaled variables (nu, beta)."""

    name: str = "babenko-inf"
    param_names: tuple[str, ...] = ("nu", "beta")
    _tension: str = "beta"

    def h(self, mu, k):
        return np.abs(np.asarray(k, dtype=float))

    def dk(self, mu, k):
        return np.asarray(k, dtype=float)

    def speed2(self, mu):
        return mu["nu"] ** 2

    def gravity(self, mu):
        return 1.0

    def symbol_derivative(self, mu, k, name):
        k = abs(float(k))
        if name == "nu":
            return -2.0 * mu["nu"] * k
        if name == "beta":
            return k * k
        return None

    def growth_onset(self, mu):
        return mu["nu"] ** 2 / (2.0 * mu["beta"])

    def kernel_params(self, k1, k2, fixed):
        return {"nu": math.sqrt(1.0 / k1 + 1.0 / k2), "beta": 1.0 / (k1 * k2)}


def _coth_ratio(x, d):
    # x coth(x d), with limit 1/d at x = 0
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, 1.0 / d)
    nz = x != 0
    out[nz] = x[nz] / np.tanh(x[nz] * d)
    return out


@dataclass(frozen=True)
class BabenkoFinite(_Babenko):
    """Babenko equation on finite depth; symbols follow the infinite-depth
    algebra with ``|k| -> kappa k coth(kappa k d)`` and ``k -> kappa k``."""

    name: str = "babenko-fin"
    param_names: tuple[str, ...] = ("c", "g", "T", "kappa", "d")
    exploratory: bool = True
    fixed_names: tuple[str, ...] = ("g", "kappa", "d")
    fixed_defaults: Mapping[str, float] = field(
        default_factory=lambda: {"g": 1.0, "kappa": 1.0, "d": 1.0})
    transversality_params: tuple[str, ...] | None = ("c", "T", "d")

    def h(self, mu, k):
        return _coth_ratio(mu["kappa"] * np.asarray(k, dtype=float), mu["d"])

    def dk(self, mu, k):
        return mu["kappa"] * np.asarray(k, dtype=float)

    def speed2(self, mu):
        return mu["c"] ** 2

    def symbol_derivative(self, mu, k, name):
        k = float(k)
        if name == "c":
            return -2.0 * mu["c"] * float(self.h(mu, k))
        if name == "g":
            return 1.0
        if name == "T":
            return (mu["kappa"] * k) ** 2
        return None

    def growth_onset(self, mu):
        # f(x) = -c^2 x coth(x d) + T x^2 has f' >= 2 T x - c^2 coth(x d) > 0
        # for x > a coth(a d) with a = c^2 / (2T)
        a = mu["c"] ** 2 / (2.0 * mu["T"])
        return a / math.tanh(a * mu["d"]) / mu["kappa"]

    def kernel_params(self, k1, k2, fixed):
        g = float(fixed.get("g", self.fixed_defaults["g"]))
        kappa = float(fixed.get("kappa", self.fixed_defaults["kappa"]))
        d = float(fixed.get("d", self.fixed_defaults["d"]))
        if not (g > 0 and kappa > 0 and d > 0):
            raise DomainError("g, kappa and d must be positive")
        probe = {"kappa": kappa, "d": d}
        h1, h2 = float(self.h(probe, k1)), float(self.h(probe, k2))
        # c^2 h_i - T kappa^2 k_i^2 = g for i = 1, 2
        mat = np.array([[h1, -(kappa * k1) ** 2], [h2, -(kappa * k2) ** 2]])
        c2, T = np.linalg.solve(mat, [g, g])
        if not (c2 > 0 and T > 0):
            raise KernelError(f"no positive (c^2, T) for ({k1},{k2}) at g={g}, kappa={kappa}, d={d}")
        return {"c": math.sqrt(c2), "g": g, "T": float(T), "kappa": kappa, "d": d}


MODELS = {
    "whitham-inf": WhithamInfinite(),
    "whitham-fin": WhithamFinite(),
    "babenko-inf": BabenkoInfinite(),
    "babenko-fin": BabenkoFinite(),
}


MODEL_ALIASES = {
    "whitham-infinite": "whitham-inf",
    "whitham-finite": "whitham-fin",
    "babenko-infinite": "babenko-inf",
    "babenko-finite": "babenko-fin",
}


def get_model(model) -> Model:
    if isinstance(model, Model):
        return model
    try:
        return MODELS[MODEL_ALIASES.get(model, model)]
    except KeyError:
        raise DomainError(f"unknown model {model!r}; choose from {sorted(MODELS)}") from None


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def linear_symbol(model, mu, k: int) -> float:
    """``l_mu(k)`` for one integer wavenumber."""
    model = get_model(model)
    mu = model.check_params(mu)
    if model.zero_mean and int(k) == 0:
        raise DomainError(f"{model.name} is posed on zero-mean functions; mode 0 does not exist")
    return float(model.symbol(mu, np.array([int(k)]))[0])


def nonlinear_symbol(model, mu, m: int, wavenumbers) -> float:
    """Unsymmetrized m-linear symbol ``n_{m,mu}(k_1, ..., k_m)``."""
    model = get_model(model)
    mu = model.check_params(mu)
    ks = [int(k) for k in wavenumbers]
    if len(ks) != m:
        raise DomainError(f"expected {m} wavenumbers, got {len(ks)}")
    if m < 2:
        raise DomainError("multilinear terms start at degree 2")
    if model.max_degree is not None and m > model.max_degree:
        raise DomainError(f"{model.name} has no degree-{m} term (max {model.max_degree})")
    return float(model.nonlinear_symbol(mu, ks))


def _kernel_scale(model, mu):
    return 1.0 + abs(float(model.symbol(mu, np.array([1.0]))[0]))


def verify_kernel_dimension(model, mu0, k1: int, k2: int, k_check: int | None = None) -> KernelCertificate:
    """Check that ``l_mu0`` vanishes on {k1, k2} and nowhere else.

    Modes ``1..k_check`` (and 0 when the model keeps it) are scanned
    directly; beyond ``k_check`` the symbol must be positive and past its
    monotone-growth onset.
    """
    model = get_model(model)
    mu0 = model.check_params(mu0)
    if k_check is None:
        k_check = 16 * k2
    k_check = max(int(k_check), k2 + 1)
    start = 1 if model.zero_mean else 0
    ks = np.arange(start, k_check + 1)
    vals = model.symbol(mu0, ks)
    tol = KERNEL_RTOL * _kernel_scale(model, mu0)
    res = (float(abs(vals[k1 - start])), float(abs(vals[k2 - start])))
    others = (ks != k1) & (ks != k2)
    gaps = np.abs(vals[others])
    i = int(np.argmin(gaps))
    offending = tuple(int(k) for k in ks[others][gaps <= tol])
    onset = float(model.growth_onset(mu0))
    tail_ok = onset <= k_check and vals[-1] > 0
    passed = max(res) <= tol and not offending and tail_ok
    return KernelCertificate(
        passed=bool(passed),
        k_check=k_check,
        min_gap=float(gaps[i]),
        min_gap_k=int(ks[others][i]),
        growth_onset=onset,
        offending=offending,
        residuals=res,
    )


def solve_kernel_params(model, k1: int, k2: int, fixed: Mapping[str, float] | None = None,
                        k_check: int | None = None) -> KernelSpec:
    """Parameters ``mu0`` with ``l_mu0(k1) = l_mu0(k2) = 0``.

    Raises :class:`KernelError` when no positive solution exists or the
    resulting kernel has extra modes.
    """
    model = get_model(model)
    k1, k2 = int(k1), int(k2)
    if not 1 <= k1 < k2:
        raise DomainError(f"need 1 <= k1 < k2, got ({k1}, {k2})")
    mu0 = model.check_params(model.kernel_params(k1, k2, dict(fixed or {})))
    cert = verify_kernel_dimension(model, mu0, k1, k2, k_check)
    if max(cert.residuals) > KERNEL_RTOL * _kernel_scale(model, mu0):
        raise KernelError(f"kernel residual {max(cert.residuals):.3e} too large for ({k1},{k2})")
    if not cert.passed:
        raise KernelError(
            f"kernel for ({k1},{k2}) is not simple; extra zeros at {cert.offending}",
            offending=cert.offending,
        )
    return KernelSpec(k1=k1, k2=k2, mu0=mu0, coprime=math.gcd(k1, k2) == 1, certificate=cert)
