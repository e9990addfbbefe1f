"""The generalized Cauchy dual ``w(T) = T (T*T)^+``.

Three routes compute the same operator:

* ``product``       -- ``T @ pinv(T* T)``
* ``adjoint_pinv``  -- ``pinv(T)*``  (default; one SVD)
* ``regularized``   -- ``T @ inv(T* T + P_N(T))`` by a dense solve

In finite dimensions every operator is bounded and everywhere defined, so the
closures that appear in the infinite-dimensional statements are just the plain
matrix products used below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal

import numpy as np

from .classify import classify, is_normal, is_selfadjoint
from .errors import RouteFailure, ShapeError
from .linalg import (
    DEFAULT_CONFIG,
    ToleranceConfig,
    adjoint,
    as_matrix,
    carrier_projector,
    fro,
    null_projector,
    range_projector,
    rel_residual,
    subspace_relation,
)
from .pinv import abs_op, partial_isometry_from_svd, pinv, polar

Route = Literal["product", "adjoint_pinv", "regularized"]
ROUTES: tuple[str, ...] = ("product", "adjoint_pinv", "regularized")

#: Largest 2-norm condition number accepted by the regularized route.
REGULARIZED_COND_CAP = 1e12


def _regularized(A, cfg):
    n = A.shape[1]
    P_null = null_projector(A, cfg).matrix
    G = adjoint(A) @ A + P_null
    cond = float(np.linalg.cond(G))
    if not np.isfinite(cond) or cond > REGULARIZED_COND_CAP:
        raise RouteFailure(f"T*T + P_N(T) is too ill-conditioned (cond={cond:.3e} > {REGULARIZED_COND_CAP:.0e})")
    try:
        G_inv = np.linalg.solve(G, np.eye(n, dtype=np.complex128))
    except np.linalg.LinAlgError as exc:
        raise RouteFailure(f"dense solve failed: {exc}") from exc
    X = pinv(A, cfg)
    cert = rel_residual(G_inv, X @ adjoint(X) + P_null)
    if cert > cfg.identity_tol:
        raise RouteFailure(f"inverse certificate failed: residual {cert:.3e} > {cfg.identity_tol:.1e}")
    return A @ G_inv, {"condition_number": cond, "inverse_certificate": cert}


def cauchy_dual(A, cfg: ToleranceConfig = DEFAULT_CONFIG, route: Route = "adjoint_pinv") -> np.ndarray:
    """``w(A)`` by a single route, without cross-checking."""
    A = as_matrix(A)
    if route == "adjoint_pinv":
        return adjoint(pinv(A, cfg))
    if route == "product":
        return A @ pinv(adjoint(A) @ A, cfg)
    if route == "regularized":
        return _regularized(A, cfg)[0]
    raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")


w = cauchy_dual


@dataclass(frozen=True)
class DualComputation:
    dual: np.ndarray
    route: str
    cross_route_residual: float
    route_residuals: dict[str, float] = field(default_factory=dict)
    certificates: dict[str, float] = field(default_factory=dict)
    failed_routes: dict[str, str] = field(default_factory=dict)


def dual(A, route: Route = "adjoint_pinv", cfg: ToleranceConfig = DEFAULT_CONFIG) -> DualComputation:
    """``w(A)`` by ``route``, cross-validated against the other two routes.

    A route that fails (only ``regularized`` can) is recorded in
    ``failed_routes``; if it is the requested route, :class:`RouteFailure`
    propagates and the caller may retry with ``adjoint_pinv``.
    """
    A = as_matrix(A)
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    results: dict[str, np.ndarray] = {}
    certificates: dict[str, float] = {}
    failed: dict[str, str] = {}
    for r in ROUTES:
        try:
            if r == "regularized":
                results[r], certificates = _regularized(A, cfg)
            else:
                results[r] = cauchy_dual(A, cfg, r)
        except RouteFailure as exc:
            if r == route:
                raise
            failed[r] = str(exc)
    pairwise = {f"{a}~{b}": rel_residual(results[a], results[b]) for a, b in combinations(results, 2)}
    return DualComputation(
        dual=results[route],
        route=route,
        cross_route_residual=max(pairwise.values(), default=0.0),
        route_residuals=pairwise,
        certificates=certificates,
        failed_routes=failed,
    )


def dual_identity_battery(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> dict[str, float]:
    """Residuals of the basic identities satisfied by ``w``."""
    A = as_matrix(A)
    Ah = adjoint(A)
    wA = w(A, cfg)
    wAh = w(Ah, cfg)
    P_carrier = carrier_projector(A, cfg).matrix
    P_range = range_projector(A, cfg).matrix
    return {
        "equals_adjoint_of_pinv": rel_residual(w(A, cfg, "product"), adjoint(pinv(A, cfg))),
        "involution": rel_residual(w(wA, cfg), A),
        "adjoint_of_dual": rel_residual(adjoint(wA), wAh),
        "Tadj_w_is_carrier_projector": rel_residual(Ah @ wA, P_carrier),
        "w_adj_T_is_carrier_projector": rel_residual(wAh @ A, P_carrier),
        "w_Tadj_is_range_projector": rel_residual(wA @ Ah, P_range),
        "T_w_adj_is_range_projector": rel_residual(A @ wAh, P_range),
        "dual_of_gram": rel_residual(adjoint(wA) @ wA, w(Ah @ A, cfg)),
    }


def dual_polar(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> dict[str, float]:
    """Residuals tying ``w(A)`` to the polar decomposition of ``A``."""
    A = as_matrix(A)
    pd = polar(A, cfg)
    wA = w(A, cfg)
    abs_pinv = pinv(pd.absT, cfg)
    abs_w = abs_op(wA, cfg)
    U_w = polar(wA, cfg).U_T
    return {
        "w_is_U_times_abs_pinv": rel_residual(wA, pd.U_T @ abs_pinv),
        "abs_w_is_w_abs": rel_residual(abs_w, w(pd.absT, cfg)),
        "w_abs_is_abs_pinv": rel_residual(w(pd.absT, cfg), abs_pinv),
        "U_of_w_is_U": rel_residual(U_w, pd.U_T),
        "w_is_U_times_abs_w": rel_residual(wA, pd.U_T @ abs_w),
        "U_is_w_times_abs": rel_residual(pd.U_T, wA @ pd.absT),
        "U_matches_svd_frames": rel_residual(pd.U_T, partial_isometry_from_svd(A, cfg)),
    }


def power_gap(A, n: int, cfg: ToleranceConfig = DEFAULT_CONFIG, relative: bool = False) -> float:
    """``||w(A^n) - w(A)^n||_F``, both sides from separate pseudoinverses.

    With ``relative=True`` the residual is divided by ``1 + max`` of the two
    norms, as elsewhere in the package.
    """
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"power_gap needs a square matrix, got {A.shape}")
    if n < 1:
        raise ValueError(f"power must be a positive integer, got {n}")
    lhs = w(np.linalg.matrix_power(A, n), cfg)
    rhs = np.linalg.matrix_power(w(A, cfg), n)
    return rel_residual(lhs, rhs) if relative else fro(lhs - rhs)


def lemma_commutation_gap(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """``T (T*T)^+`` against ``(T*T)^+ T``; equal for quasinormal EP ``T``."""
    A = as_matrix(A)
    gp = pinv(adjoint(A) @ A, cfg)
    return rel_residual(A @ gp, gp @ A)


def gram_power_pinv_gap(A, n: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """``((T*T)^n)^+`` against ``((T*T)^+)^n``."""
    A = as_matrix(A)
    G = adjoint(A) @ A
    return rel_residual(pinv(np.linalg.matrix_power(G, n), cfg), np.linalg.matrix_power(pinv(G, cfg), n))


def regularized_battery(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> dict[str, float]:
    """The regularized inverse ``(T*T + P_N(T))^-1`` and what it reproduces."""
    A = as_matrix(A)
    n = A.shape[1]
    P_null = null_projector(A, cfg).matrix
    G = adjoint(A) @ A + P_null
    wA, cert = _regularized(A, cfg)
    G_inv = np.linalg.solve(G, np.eye(n, dtype=np.complex128))
    return {
        "inverse_certificate": cert["inverse_certificate"],
        "pinv_from_regularized": rel_residual(pinv(A, cfg), G_inv @ adjoint(A)),
        "dual_from_regularized": rel_residual(wA, w(A, cfg)),
    }


@dataclass(frozen=True)
class CheckReport:
    """Residuals of an identity whose hypotheses were verified first.

    When ``hypothesis_met`` is False the residuals are still reported but
    nothing is asserted about them.
    """

    residuals: dict[str, float]
    hypotheses: dict[str, float]
    hypothesis_met: bool
    notes: dict[str, object] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def as_dict(self) -> dict:
        return {
            "residuals": dict(self.residuals),
            "hypotheses": dict(self.hypotheses),
            "hypothesis_met": self.hypothesis_met,
            "verdict": "checked" if self.hypothesis_met else "hypothesis-not-met",
            **({"notes": dict(self.notes)} if self.notes else {}),
        }


def product_law_check(S, T, cfg: ToleranceConfig = DEFAULT_CONFIG) -> CheckReport:
    """``w(ST)`` against ``w(S) w(T)`` for EP ``S`` with R(S) = R(T)."""
    S = as_matrix(S)
    T = as_matrix(T)
    if S.shape[0] != S.shape[1] or T.shape != S.shape:
        raise ShapeError(f"product law needs square S and T of equal size, got {S.shape} and {T.shape}")
    cls = classify(S, cfg)
    ranges = subspace_relation(range_projector(S, cfg), range_projector(T, cfg), cfg)
    hyp = {"S_ep": cls.residuals["ep"], "ranges_equal": ranges.equal_residual}
    met = bool(cls.ep) and ranges.kind == "equal"
    return CheckReport(
        residuals={"product_law": rel_residual(w(S @ T, cfg), w(S, cfg) @ w(T, cfg))},
        hypotheses=hyp,
        hypothesis_met=met,
    )


def dual_of_pinv_products(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> dict[str, float]:
    A = as_matrix(A)
    X = pinv(A, cfg)
    wA = w(A, cfg)
    wX = w(X, cfg)
    P_carrier = carrier_projector(A, cfg).matrix
    P_range = range_projector(A, cfg).matrix
    return {
        "w_pinv_w_is_carrier_projector": rel_residual(wX @ wA, P_carrier),
        "w_w_pinv_is_range_projector": rel_residual(wA @ wX, P_range),
        "w_fixes_carrier_projector": rel_residual(w(P_carrier, cfg), P_carrier),
        "w_fixes_range_projector": rel_residual(w(P_range, cfg), P_range),
    }


def equivalence_verdicts(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> dict[str, tuple[bool, ...]]:
    """Boolean verdicts whose coincidence is asserted by the characterization theorems.

    Keys: ``selfadjoint_three_way`` (T = T*, T = (w(T*)T)T*, T* = TT*w(T)),
    ``selfadjoint_dual``, ``normal_dual`` and ``abs_commutation_dual``
    (|T|T* = T|T| versus |w(T)|w(T)* = w(T)|w(T)|).
    """
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"equivalence theorems need a square matrix, got {A.shape}")
    tol = cfg.identity_tol
    Ah = adjoint(A)
    wA = w(A, cfg)
    wAh = w(Ah, cfg)
    absA = abs_op(A, cfg)
    abs_w = abs_op(wA, cfg)
    return {
        "selfadjoint_three_way": (
            is_selfadjoint(A, cfg),
            rel_residual(A, (wAh @ A) @ Ah) <= tol,
            rel_residual(Ah, A @ Ah @ wA) <= tol,
        ),
        "selfadjoint_dual": (is_selfadjoint(A, cfg), is_selfadjoint(wA, cfg)),
        "normal_dual": (is_normal(A, cfg), is_normal(wA, cfg)),
        "abs_commutation_dual": (
            rel_residual(absA @ Ah, A @ absA) <= tol,
            rel_residual(abs_w @ adjoint(wA), wA @ abs_w) <= tol,
        ),
    }
