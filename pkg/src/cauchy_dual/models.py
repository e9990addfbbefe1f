"""Finite realizations of two concrete operators.

* the weighted shift ``(x1, x2, ...) -> (x2, 0, 2 x4, 0, 3 x6, ...)`` cut to
  its leading 2N x 2N section;
* a Hermitian integral operator on L^2([a, b]) discretized by the Nystrom
  method, together with the spectral formula for the dual of ``T - lambda_k I``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import PreconditionError
from .linalg import (
    DEFAULT_CONFIG,
    ToleranceConfig,
    adjoint,
    hermitian_eig,
    rank_cutoff,
)


@dataclass(frozen=True)
class ShiftTruncation:
    N: int
    matrix: np.ndarray


def weighted_shift(N: int) -> ShiftTruncation:
    """Entry (2n-1, 2n) = n for n = 1..N (1-based); everything else zero."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    T = np.zeros((2 * N, 2 * N), dtype=np.complex128)
    n = np.arange(1, N + 1)
    T[2 * n - 2, 2 * n - 1] = n
    return ShiftTruncation(N, T)


def shift_dual_closed_form(N: int) -> np.ndarray:
    """Closed form of the dual: e_{2n} -> e_{2n-1} / n."""
    W = np.zeros((2 * N, 2 * N), dtype=np.complex128)
    n = np.arange(1, N + 1)
    W[2 * n - 2, 2 * n - 1] = 1.0 / n
    return W


# -- kernels -----------------------------------------------------------------

Kernel = Callable[[np.ndarray, np.ndarray, dict], np.ndarray]

KERNELS: dict[str, Kernel] = {}


def register_kernel(name: str):
    def deco(fn: Kernel) -> Kernel:
        KERNELS[name] = fn
        return fn

    return deco


_PROFILES = {
    "one": lambda x: np.ones_like(x),
    "x": lambda x: x,
    "sin": lambda x: np.sin(np.pi * x),
    "exp": np.exp,
}


@register_kernel("zero")
def _zero(x, y, params):
    return np.zeros(np.broadcast(x, y).shape)


@register_kernel("min")
def _min(x, y, params):
    return np.minimum(x, y)


@register_kernel("rank1")
def _rank1(x, y, params):
    phi = _PROFILES[params.get("phi", "sin")]
    return phi(x) * np.conj(phi(y))


@register_kernel("gaussian")
def _gaussian(x, y, params):
    ell = float(params.get("length", 0.3))
    return np.exp(-((x - y) ** 2) / (2 * ell**2))


@register_kernel("exp_abs")
def _exp_abs(x, y, params):
    return np.exp(-np.abs(x - y) / float(params.get("length", 1.0)))


@register_kernel("hermitian_phase")
def _hermitian_phase(x, y, params):
    # complex but Hermitian: K(x, y) = conj(K(y, x))
    return np.exp(1j * float(params.get("freq", 2.0)) * (x - y)) * np.minimum(x, y)


RULES = ("trapezoid", "gauss_legendre")


@dataclass(frozen=True)
class KernelSpec:
    kernel: str
    a: float = 0.0
    b: float = 1.0
    m: int = 200
    rule: str = "trapezoid"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"need at least 2 nodes, got m={self.m}")
        if not self.b > self.a:
            raise ValueError(f"interval must satisfy a < b, got [{self.a}, {self.b}]")
        if self.rule not in RULES:
            raise ValueError(f"unknown quadrature rule {self.rule!r}; expected one of {RULES}")
        self.kernel_function()

    def kernel_function(self) -> Kernel:
        name = self.kernel[len("expr:") :] if self.kernel.startswith("expr:") else self.kernel
        try:
            return KERNELS[name]
        except KeyError:
            raise ValueError(f"unknown kernel {self.kernel!r}; built-ins are {sorted(KERNELS)}") from None


def quadrature(rule: str, a: float, b: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    if rule == "trapezoid":
        x = np.linspace(a, b, m)
        wts = np.full(m, (b - a) / (m - 1))
        wts[[0, -1]] *= 0.5
    elif rule == "gauss_legendre":
        t, wts = np.polynomial.legendre.leggauss(m)
        x = 0.5 * (b - a) * t + 0.5 * (a + b)
        wts = 0.5 * (b - a) * wts
    else:
        raise ValueError(f"unknown quadrature rule {rule!r}")
    return x, wts


@dataclass(frozen=True)
class SpectralDecomposition:
    """``T = sum_n lambda_n phi_n phi_n*`` with eigenvalues in descending order."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    quadrature_weights: np.ndarray | None = None
    nodes: np.ndarray | None = None

    def reconstruct(self) -> np.ndarray:
        Q = self.eigenvectors
        return (Q * self.eigenvalues) @ adjoint(Q)

    def eigenfunction_values(self, k: int) -> np.ndarray:
        """Samples of the L^2-normalized k-th eigenfunction (1-based) at the nodes."""
        return self.eigenvectors[:, k - 1] / np.sqrt(self.quadrature_weights)


def nystrom(spec: KernelSpec, cfg: ToleranceConfig = DEFAULT_CONFIG) -> tuple[np.ndarray, SpectralDecomposition]:
    """Symmetrized Nystrom matrix ``W^1/2 K W^1/2`` and its eigen-decomposition.

    The weighted matrix is Hermitian-symmetrized, so the operator is exactly
    Hermitian; its eigenvalues equal those of the
    plain Nystrom matrix ``K W``.
    """
    x, wts = quadrature(spec.rule, spec.a, spec.b, spec.m)
    try:
        K = np.asarray(spec.kernel_function()(x[:, None], x[None, :], spec.params), dtype=np.complex128)
    except Exception as exc:
        raise ValueError(f"kernel {spec.kernel!r} failed to evaluate: {exc}") from exc
    if K.shape != (spec.m, spec.m) or not np.all(np.isfinite(K)):
        raise ValueError(f"kernel {spec.kernel!r} produced invalid samples")
    s = np.sqrt(wts)
    A = s[:, None] * K * s[None, :]
    # symmetrize after weighting: s_i K_ij s_j and s_j K_ji s_i round differently
    A = 0.5 * (A + adjoint(A))
    lam, Q = hermitian_eig(A, cfg)
    return A, SpectralDecomposition(lam, Q, wts, x)


def min_kernel_eigenvalues(k) -> np.ndarray:
    """Eigenvalues of ``f -> int_0^1 min(x, y) f(y) dy``: 1 / ((k - 1/2)^2 pi^2)."""
    k = np.asarray(k, dtype=np.float64)
    return 1.0 / ((k - 0.5) ** 2 * np.pi**2)


def spectral_dual_shift(decomp: SpectralDecomposition, k: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``sum_{n : lambda_n != lambda_k} (lambda_n - lambda_k)^-1 phi_n phi_n*``.

    ``k`` is 1-based. Terms with ``|lambda_n - lambda_k|`` at or below the rank
    cutoff of the shifted operator are left out, so a repeated eigenvalue drops
    its whole eigenspace, exactly as the pseudoinverse would.
    """
    lam = np.asarray(decomp.eigenvalues, dtype=np.float64)
    Q = decomp.eigenvectors
    if not 1 <= k <= lam.size:
        raise ValueError(f"eigen-index k must lie in [1, {lam.size}], got {k}")
    lk = lam[k - 1]
    shape = (lam.size, lam.size)
    if abs(lk) <= rank_cutoff(np.max(np.abs(lam)), shape, cfg):
        raise PreconditionError(f"lambda_{k} = {lk:.3e} is numerically zero", residual=float(abs(lk)))
    gaps = lam - lk
    keep = np.abs(gaps) > rank_cutoff(np.max(np.abs(gaps)), shape, cfg)
    Qk = Q[:, keep]
    return (Qk / gaps[keep]) @ adjoint(Qk)
