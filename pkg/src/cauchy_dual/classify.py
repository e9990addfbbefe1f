"""Tolerance-aware operator-class predicates."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    DEFAULT_CONFIG,
    ToleranceConfig,
    adjoint,
    as_matrix,
    fro,
    hermitian_residual,
    range_projector,
    rel_residual,
    subspace_relation,
)


@dataclass(frozen=True)
class OperatorClassification:
    """Verdicts for each operator class, plus the residual behind each verdict.

    Square-only classes are ``None`` for rectangular input. Verdicts are closed
    under the implications selfadjoint => normal => quasinormal => EP => hypo-EP,
    so a borderline residual can never produce a contradictory set of answers.
    """

    selfadjoint: bool | None
    normal: bool | None
    quasinormal_commutation: bool | None
    quasinormal_paper_literal: bool | None
    ep: bool | None
    hypo_ep: bool | None
    partial_isometry: bool
    psd: bool | None
    residuals: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        keys = (
            "selfadjoint",
            "normal",
            "quasinormal_commutation",
            "quasinormal_paper_literal",
            "ep",
            "hypo_ep",
            "partial_isometry",
            "psd",
        )
        return {"verdicts": {k: getattr(self, k) for k in keys}, "residuals": dict(self.residuals)}


def is_selfadjoint(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    A = np.asarray(A)
    return A.shape[0] == A.shape[1] and hermitian_residual(A) <= cfg.identity_tol


def is_normal(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    A = np.asarray(A)
    if A.shape[0] != A.shape[1]:
        return False
    Ah = adjoint(A)
    return is_selfadjoint(A, cfg) or rel_residual(A @ Ah, Ah @ A) <= cfg.identity_tol


def classify(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> OperatorClassification:
    A = as_matrix(A)
    Ah = adjoint(A)
    pi_res = rel_residual(A @ Ah @ A, A)
    res = {"partial_isometry": pi_res}
    if A.shape[0] != A.shape[1]:
        return OperatorClassification(None, None, None, None, None, None, pi_res <= cfg.identity_tol, None, res)

    gram = Ah @ A
    rel = subspace_relation(range_projector(A, cfg), range_projector(Ah, cfg), cfg)
    res.update(
        selfadjoint=hermitian_residual(A),
        normal=rel_residual(A @ Ah, gram),
        quasinormal_commutation=rel_residual(A @ gram, gram @ A),
        quasinormal_paper_literal=rel_residual(gram @ A, A @ A @ Ah),
        ep=rel.equal_residual,
        hypo_ep=rel.contained_residual,
    )
    tol = cfg.identity_tol
    sa = res["selfadjoint"] <= tol
    normal = sa or res["normal"] <= tol
    qn = normal or res["quasinormal_commutation"] <= tol
    ep = qn or rel.kind == "equal"
    hypo = ep or rel.kind in ("equal", "contained")

    psd = False
    if sa:
        lam = np.linalg.eigvalsh(0.5 * (A + Ah))
        res["psd"] = float(max(0.0, -lam[0]))
        psd = lam[0] >= -tol * (1.0 + fro(A))
    return OperatorClassification(
        selfadjoint=sa,
        normal=normal,
        quasinormal_commutation=qn,
        quasinormal_paper_literal=res["quasinormal_paper_literal"] <= tol,
        ep=ep,
        hypo_ep=hypo,
        partial_isometry=pi_res <= tol,
        psd=bool(psd),
        residuals=res,
    )
