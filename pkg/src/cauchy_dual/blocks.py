"""Direct sums and structured 2x2 block pseudoinverse / dual formulas.

Every structured formula is checked against the dense pseudoinverse of the
assembled operator. Hypotheses are verified with projector products; a failed
hypothesis never raises, it only turns the report into "hypothesis-not-met"
(the residuals are still reported).

Block shapes follow the operator on H (+) K with H = C^p, K = C^q:
``T1`` is p x p, ``T2`` p x q, ``T3`` q x p and ``T4`` q x q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dual import w
from .errors import ShapeError
from .linalg import (
    DEFAULT_CONFIG,
    ToleranceConfig,
    adjoint,
    as_matrix,
    fro,
    range_projector,
    rel_residual,
)
from .pinv import abs_op, pinv

LAYOUTS = ("direct_sum", "upper_1x2", "lower_triangular", "full_2x2")
SLOTS = {
    "direct_sum": ("T1", "T2"),
    "upper_1x2": ("T1", "T2"),
    "lower_triangular": ("T1", "T3", "T4"),
    "full_2x2": ("T1", "T2", "T3", "T4"),
}


def direct_sum(A, B) -> np.ndarray:
    A = as_matrix(A)
    B = as_matrix(B)
    out = np.zeros((A.shape[0] + B.shape[0], A.shape[1] + B.shape[1]), dtype=np.complex128)
    out[: A.shape[0], : A.shape[1]] = A
    out[A.shape[0] :, A.shape[1] :] = B
    return out


def _zeros(r, c):
    return np.zeros((r, c), dtype=np.complex128)


@dataclass(frozen=True)
class BlockOperator:
    """A block operator and its partition; ``assemble()`` gives the dense matrix."""

    layout: str
    blocks: dict[str, np.ndarray]
    row_sizes: tuple[int, int]
    col_sizes: tuple[int, int]

    def assemble(self) -> np.ndarray:
        b = self.blocks
        (r1, r2), (c1, c2) = self.row_sizes, self.col_sizes
        if self.layout == "direct_sum":
            return direct_sum(b["T1"], b["T2"])
        if self.layout == "upper_1x2":
            return np.block([[b["T1"], b["T2"]], [_zeros(r2, c1), _zeros(r2, c2)]])
        if self.layout == "lower_triangular":
            return np.block([[b["T1"], _zeros(r1, c2)], [b["T3"], b["T4"]]])
        return np.block([[b["T1"], b["T2"]], [b["T3"], b["T4"]]])


def make_block_operator(layout: str, blocks: dict) -> BlockOperator:
    """Validate block shapes for ``layout`` and wrap them."""
    if layout not in LAYOUTS:
        raise ValueError(f"unknown layout {layout!r}; expected one of {LAYOUTS}")
    missing = [s for s in SLOTS[layout] if s not in blocks]
    if missing:
        raise ShapeError(f"layout {layout} is missing blocks {missing}")
    b = {s: as_matrix(blocks[s]) for s in SLOTS[layout]}
    if layout == "direct_sum":
        return BlockOperator(layout, b, (b["T1"].shape[0], b["T2"].shape[0]), (b["T1"].shape[1], b["T2"].shape[1]))

    T1 = b["T1"]
    p = T1.shape[0]
    if T1.shape != (p, p):
        raise ShapeError(f"T1 must be square, got {T1.shape}")
    if layout == "upper_1x2":
        q = b["T2"].shape[1]
    else:
        q = b["T4"].shape[0] if "T4" in b else b["T3"].shape[0]
    expected = {"T1": (p, p), "T2": (p, q), "T3": (q, p), "T4": (q, q)}
    for s, M in b.items():
        if M.shape != expected[s]:
            raise ShapeError(f"{s} must be {expected[s][0]}x{expected[s][1]} for p={p}, q={q}; got {M.shape}")
    return BlockOperator(layout, b, (p, q), (p, q))


@dataclass(frozen=True)
class BlockReport:
    layout: str
    residuals: dict[str, float]
    hypotheses: dict[str, float]
    hypothesis_met: bool
    extras: dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def as_dict(self) -> dict:
        return {
            "layout": self.layout,
            "residuals": dict(self.residuals),
            "hypotheses": dict(self.hypotheses),
            "hypothesis_met": self.hypothesis_met,
            "verdict": "checked" if self.hypothesis_met else "hypothesis-not-met",
            "extras": dict(self.extras),
        }


def _overlap(A, B, cfg):
    """``||P_R(A) P_R(B)||_F``: zero exactly when the ranges are orthogonal."""
    return fro(range_projector(A, cfg).matrix @ range_projector(B, cfg).matrix)


def direct_sum_pinv(A, B, cfg: ToleranceConfig = DEFAULT_CONFIG) -> BlockReport:
    T = direct_sum(A, B)
    return BlockReport(
        layout="direct_sum",
        residuals={
            "pinv": rel_residual(direct_sum(pinv(A, cfg), pinv(B, cfg)), pinv(T, cfg)),
            "dual": rel_residual(direct_sum(w(A, cfg), w(B, cfg)), w(T, cfg)),
        },
        hypotheses={},
        hypothesis_met=True,
    )


def upper_block_pinv(T1, T2, cfg: ToleranceConfig = DEFAULT_CONFIG):
    """Structured pinv, dual and ``w(|T|)`` of ``[[T1, T2], [0, 0]]``.

    Hypothesis: R(T1) _|_ R(T2). Returns ``(pinv, dual, abs_dual, report)``
    where the three matrices are the structured (block-formula) versions.
    """
    op = make_block_operator("upper_1x2", {"T1": T1, "T2": T2})
    T1, T2 = op.blocks["T1"], op.blocks["T2"]
    p, q = op.row_sizes
    T = op.assemble()

    hyp = {"range_T1_perp_range_T2": _overlap(T1, T2, cfg)}
    met = hyp["range_T1_perp_range_T2"] <= cfg.subspace_tol

    structured_pinv = np.block([[pinv(T1, cfg), _zeros(p, q)], [pinv(T2, cfg), _zeros(q, q)]])
    structured_dual = np.block([[w(T1, cfg), w(T2, cfg)], [_zeros(q, p), _zeros(q, q)]])
    structured_abs_dual = direct_sum(w(abs_op(T1, cfg), cfg), w(abs_op(T2, cfg), cfg))

    report = BlockReport(
        layout="upper_1x2",
        residuals={
            "pinv": rel_residual(structured_pinv, pinv(T, cfg)),
            "dual": rel_residual(structured_dual, w(T, cfg)),
            "abs_dual": rel_residual(structured_abs_dual, w(abs_op(T, cfg), cfg)),
        },
        hypotheses=hyp,
        hypothesis_met=met,
    )
    return structured_pinv, structured_dual, structured_abs_dual, report


def lower_tri_pinv(T1, T3, T4, cfg: ToleranceConfig = DEFAULT_CONFIG):
    """Structured pinv and dual of ``[[T1, 0], [T3, T4]]``.

    Hypotheses: R(T1*) (+) R(T3*) is an orthogonal decomposition of all of H,
    and R(T3) _|_ R(T4). Returns ``(pinv, dual, S_report, report)``;
    ``S_report`` covers ``S = T1*T1 + T3*T3`` and the factorizations
    ``T1^+ = S^+ T1*``, ``T3^+ = S^+ T3*``.
    """
    op = make_block_operator("lower_triangular", {"T1": T1, "T3": T3, "T4": T4})
    T1, T3, T4 = op.blocks["T1"], op.blocks["T3"], op.blocks["T4"]
    p, q = op.row_sizes
    T = op.assemble()

    P1 = range_projector(adjoint(T1), cfg).matrix
    P3 = range_projector(adjoint(T3), cfg).matrix
    hyp = {
        "corange_T1_perp_corange_T3": fro(P1 @ P3),
        "coranges_span_H": fro(P1 + P3 - np.eye(p)),
        "range_T3_perp_range_T4": _overlap(T3, T4, cfg),
    }
    met = all(v <= cfg.subspace_tol for v in hyp.values())

    G1 = adjoint(T1) @ T1
    G3 = adjoint(T3) @ T3
    S_pinv = pinv(G1 + G3, cfg)
    S_report = BlockReport(
        layout="lower_triangular",
        residuals={
            "S_pinv_sum": rel_residual(S_pinv, pinv(G1, cfg) + pinv(G3, cfg)),
            "T1_pinv_via_S": rel_residual(pinv(T1, cfg), S_pinv @ adjoint(T1)),
            "T3_pinv_via_S": rel_residual(pinv(T3, cfg), S_pinv @ adjoint(T3)),
        },
        hypotheses=hyp,
        hypothesis_met=met,
    )

    structured_pinv = np.block([[pinv(T1, cfg), pinv(T3, cfg)], [_zeros(q, p), pinv(T4, cfg)]])
    structured_dual = np.block([[w(T1, cfg), _zeros(p, q)], [w(T3, cfg), w(T4, cfg)]])
    report = BlockReport(
        layout="lower_triangular",
        residuals={
            "pinv": rel_residual(structured_pinv, pinv(T, cfg)),
            "dual": rel_residual(structured_dual, w(T, cfg)),
        },
        hypotheses=hyp,
        hypothesis_met=met,
    )
    return structured_pinv, structured_dual, S_report, report


def full_2x2_pinv(T1, T2, T3, T4, cfg: ToleranceConfig = DEFAULT_CONFIG):
    """Structured pinv and dual of ``[[T1, T2], [T3, T4]]``.

    Hypotheses: R(T1*) _|_ R(T3*), R(T2*) _|_ R(T4*), R(T1) _|_ R(T2),
    R(T3) _|_ R(T4). Returns ``(pinv, dual, report)``.
    """
    op = make_block_operator("full_2x2", {"T1": T1, "T2": T2, "T3": T3, "T4": T4})
    T1, T2, T3, T4 = (op.blocks[s] for s in ("T1", "T2", "T3", "T4"))
    T = op.assemble()

    hyp = {
        "corange_T1_perp_corange_T3": _overlap(adjoint(T1), adjoint(T3), cfg),
        "corange_T2_perp_corange_T4": _overlap(adjoint(T2), adjoint(T4), cfg),
        "range_T1_perp_range_T2": _overlap(T1, T2, cfg),
        "range_T3_perp_range_T4": _overlap(T3, T4, cfg),
    }
    met = all(v <= cfg.subspace_tol for v in hyp.values())

    structured_pinv = np.block([[pinv(T1, cfg), pinv(T3, cfg)], [pinv(T2, cfg), pinv(T4, cfg)]])
    structured_dual = np.block([[w(T1, cfg), w(T2, cfg)], [w(T3, cfg), w(T4, cfg)]])
    report = BlockReport(
        layout="full_2x2",
        residuals={
            "pinv": rel_residual(structured_pinv, pinv(T, cfg)),
            "dual": rel_residual(structured_dual, w(T, cfg)),
        },
        hypotheses=hyp,
        hypothesis_met=met,
    )
    return structured_pinv, structured_dual, report


def check_block_operator(op: BlockOperator, cfg: ToleranceConfig = DEFAULT_CONFIG) -> BlockReport:
    """Dispatch on ``op.layout`` and return the main report."""
    b = op.blocks
    if op.layout == "direct_sum":
        return direct_sum_pinv(b["T1"], b["T2"], cfg)
    if op.layout == "upper_1x2":
        return upper_block_pinv(b["T1"], b["T2"], cfg)[-1]
    if op.layout == "lower_triangular":
        _, _, s_rep, rep = lower_tri_pinv(b["T1"], b["T3"], b["T4"], cfg)
        return BlockReport(rep.layout, {**rep.residuals, **s_rep.residuals}, rep.hypotheses, rep.hypothesis_met)
    return full_2x2_pinv(b["T1"], b["T2"], b["T3"], b["T4"], cfg)[-1]
