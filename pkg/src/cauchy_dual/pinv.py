"""Moore-Penrose inverse, Penrose-condition residuals and polar decomposition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .linalg import (
    DEFAULT_CONFIG,
    Projector,
    ToleranceConfig,
    adjoint,
    as_matrix,
    carrier_projector,
    null_projector,
    psd_sqrt,
    range_projector,
    rel_residual,
    subspace_relation,
    svd,
)


def pinv(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Moore-Penrose inverse ``V_r diag(1/sigma_r) U_r*``.

    Singular values at or below the rank cutoff are treated as exact zeros.
    """
    f = svd(A, cfg)
    r = f.numerical_rank
    return (f.V[:, :r] / f.sigma[:r]) @ adjoint(f.U[:, :r])


@dataclass(frozen=True)
class PenroseResiduals:
    r1: float  # AXA = A
    r2: float  # XAX = X
    r3: float  # (AX)* = AX
    r4: float  # (XA)* = XA

    @property
    def max(self) -> float:
        return max(self.r1, self.r2, self.r3, self.r4)

    def is_mp_inverse(self, tol: float) -> bool:
        return self.max <= tol


def penrose_residuals(A, X) -> PenroseResiduals:
    A = as_matrix(A)
    X = as_matrix(X)
    if X.shape != (A.shape[1], A.shape[0]):
        raise ShapeError(f"X must be {A.shape[1]}x{A.shape[0]} for A of shape {A.shape}, got {X.shape}")
    AX = A @ X
    XA = X @ A
    return PenroseResiduals(
        r1=rel_residual(AX @ A, A),
        r2=rel_residual(XA @ X, X),
        r3=rel_residual(adjoint(AX), AX),
        r4=rel_residual(adjoint(XA), XA),
    )


def mp_property_battery(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> dict[str, float]:
    """Residuals of the standard Moore-Penrose identities for ``A``.

    Identities are relative residuals; subspace statements are projector
    distances (compare with ``cfg.subspace_tol``).
    """
    A = as_matrix(A)
    Ah = adjoint(A)
    X = pinv(A, cfg)
    Xh_direct = pinv(Ah, cfg)
    P_range = range_projector(A, cfg).matrix
    P_carrier = carrier_projector(A, cfg).matrix
    return {
        "penrose": penrose_residuals(A, X).max,
        "domain_split": rel_residual(P_range + null_projector(Ah, cfg).matrix, np.eye(A.shape[0])),
        "null_of_pinv": subspace_relation(null_projector(X, cfg), null_projector(Ah, cfg), cfg).equal_residual,
        "range_of_pinv": subspace_relation(range_projector(X, cfg), P_carrier, cfg).equal_residual,
        "pinv_A_is_carrier_projector": rel_residual(X @ A, P_carrier),
        "A_pinv_is_range_projector": rel_residual(A @ X, P_range),
        "double_pinv": rel_residual(pinv(X, cfg), A),
        "adjoint_commutes": rel_residual(Xh_direct, adjoint(X)),
        "null_of_adjoint_pinv": subspace_relation(null_projector(Xh_direct, cfg), null_projector(A, cfg), cfg).equal_residual,
        "gram_pinv": rel_residual(pinv(Ah @ A, cfg), X @ Xh_direct),
        "cogram_pinv": rel_residual(pinv(A @ Ah, cfg), Xh_direct @ X),
    }


@dataclass(frozen=True)
class PolarDecomposition:
    """``T = U_T |T|`` with ``U_T`` a partial isometry from R(|T|) onto R(T)."""

    U_T: np.ndarray
    absT: np.ndarray
    initial_projector: Projector
    final_projector: Projector

    def residuals(self, T) -> dict[str, float]:
        U = self.U_T
        return {
            "factorization": rel_residual(U @ self.absT, T),
            "initial_space": rel_residual(adjoint(U) @ U, self.initial_projector.matrix),
            "final_space": rel_residual(U @ adjoint(U), self.final_projector.matrix),
        }


def abs_op(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``|A| = (A* A)^(1/2)``."""
    A = as_matrix(A)
    return psd_sqrt(adjoint(A) @ A, cfg)


def polar(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> PolarDecomposition:
    A = as_matrix(A)
    absT = abs_op(A, cfg)
    U = A @ pinv(absT, cfg)
    return PolarDecomposition(
        U_T=U,
        absT=absT,
        initial_projector=range_projector(absT, cfg),
        final_projector=range_projector(A, cfg),
    )


def partial_isometry_from_svd(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``U_r V_r*`` from the SVD frames; the second route to ``U_T``."""
    f = svd(A, cfg)
    r = f.numerical_rank
    return f.U[:, :r] @ adjoint(f.V[:, :r])


def polar_identities(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> dict[str, float]:
    """Residuals relating the pseudoinverse to the polar factors of ``A`` and ``A*``."""
    A = as_matrix(A)
    Ah = adjoint(A)
    pd = polar(A, cfg)
    pd_adj = polar(Ah, cfg)
    X = pinv(A, cfg)
    abs_pinv = pinv(pd.absT, cfg)
    out = {f"polar_{k}": v for k, v in pd.residuals(A).items()}
    out.update(
        U_T_routes_agree=rel_residual(pd.U_T, partial_isometry_from_svd(A, cfg)),
        partial_isometry=rel_residual(pd.U_T @ adjoint(pd.U_T) @ pd.U_T, pd.U_T),
        U_T_U_Tadj_is_range_projector=rel_residual(pd.U_T @ pd_adj.U_T, range_projector(A, cfg).matrix),
        U_Tadj_U_T_is_carrier_projector=rel_residual(pd_adj.U_T @ pd.U_T, carrier_projector(A, cfg).matrix),
        pinv_from_polar=rel_residual(X, abs_pinv @ pd_adj.U_T),
        adjoint_pinv_from_polar=rel_residual(pinv(Ah, cfg), pd.U_T @ abs_pinv),
    )
    return out


def spectral_norm(A) -> float:
    return float(np.linalg.norm(A, 2))


def pinv_norm_gap(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """Relative gap between ``||A^+||_2`` and ``|| |A|^+ ||_2``."""
    a = spectral_norm(pinv(A, cfg))
    b = spectral_norm(pinv(abs_op(A, cfg), cfg))
    return abs(a - b) / (1.0 + max(a, b))


def psd_root_pinv_gap(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """For positive ``A``: residual of ``(A^+)^(1/2) = (A^(1/2))^+``."""
    return rel_residual(psd_sqrt(pinv(A, cfg), cfg), pinv(psd_sqrt(A, cfg), cfg))


def polar_product_battery(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> dict[str, float]:
    """Pseudoinverses and ranges of the products ``A|A|`` and ``|A|A*``.

    Left and right sides are computed independently (separate SVDs).
    """
    A = as_matrix(A)
    Ah = adjoint(A)
    absA = abs_op(A, cfg)
    abs_pinv = pinv(absA, cfg)
    left = A @ absA
    right = absA @ Ah
    return {
        "pinv_A_absA": rel_residual(pinv(left, cfg), abs_pinv @ pinv(A, cfg)),
        "pinv_absA_Aadj": rel_residual(pinv(right, cfg), pinv(Ah, cfg) @ abs_pinv),
        "range_A_absA": subspace_relation(range_projector(left, cfg), range_projector(A, cfg), cfg).equal_residual,
        "range_absA_Aadj": subspace_relation(range_projector(right, cfg), range_projector(Ah, cfg), cfg).equal_residual,
    }


__all__ = [
    "PenroseResiduals",
    "PolarDecomposition",
    "abs_op",
    "mp_property_battery",
    "partial_isometry_from_svd",
    "penrose_residuals",
    "pinv",
    "pinv_norm_gap",
    "polar",
    "polar_identities",
    "polar_product_battery",
    "psd_root_pinv_gap",
    "spectral_norm",
]
