"""Theorem registry, randomized verification runs and counterexample search.

Each registered check receives a fresh ``numpy`` generator derived from
``(master seed, trial index)``, so serial and parallel runs produce identical
reports. A check returns a :class:`Trial` listing named assertions; the
theorem passes when every asserted bound holds in every trial.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import blocks, models
from .dual import (
    ROUTES,
    cauchy_dual,
    dual,
    dual_identity_battery,
    dual_of_pinv_products,
    dual_polar,
    equivalence_verdicts,
    gram_power_pinv_gap,
    lemma_commutation_gap,
    power_gap,
    product_law_check,
    regularized_battery,
)
from .classify import classify
from .errors import CauchyDualError
from .generators import (
    RNG_NAME,
    gen_ep,
    gen_normal_ep,
    gen_orthogonal_range_blocks,
    gen_random,
    gen_range_matched_pair,
    make_rng,
    trial_seed,
)
from .io import matrix_to_json
from .linalg import (
    DEFAULT_CONFIG,
    ToleranceConfig,
    adjoint,
    fro,
    null_projector,
    range_projector,
    rel_residual,
    subspace_relation,
)
from .pinv import (
    mp_property_battery,
    pinv_norm_gap,
    polar_identities,
    polar_product_battery,
    psd_root_pinv_gap,
)

DEFAULT_SIZE = {"max_dim": 8, "max_power": 5, "N": 50, "m": 200}
DEFAULT_TRIALS = 25
SEED_ENV = "CAUCHY_DUAL_SEED"


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


@dataclass
class Assertion:
    """``value <= bound`` (op "le") or ``value > bound`` (op "gt")."""

    name: str
    value: float
    bound: float
    op: str = "le"
    asserted: bool = True

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        return self.value <= self.bound if self.op == "le" else self.value > self.bound

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "value": float(self.value),
            "bound": float(self.bound),
            "op": self.op,
            "asserted": self.asserted,
            "passed": self.passed,
        }


@dataclass
class Trial:
    assertions: list[Assertion] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    hypothesis_met: bool = True

    def le(self, name, value, bound, asserted=True):
        self.assertions.append(Assertion(name, float(value), float(bound), "le", asserted))

    def gt(self, name, value, bound, asserted=True):
        self.assertions.append(Assertion(name, float(value), float(bound), "gt", asserted))

    def holds(self, name, flag: bool):
        self.gt(name, 1.0 if flag else 0.0, 0.5)

    def all_le(self, residuals: dict, bound: float, prefix: str = ""):
        for k, v in residuals.items():
            self.le(prefix + k, v, bound)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions if a.asserted)


Check = Callable[[np.random.Generator, dict, ToleranceConfig, dict], Trial]


@dataclass(frozen=True)
class TheoremCase:
    theorem_id: str
    statement: str
    generator: str
    check: Check


REGISTRY: dict[str, TheoremCase] = {}


def register(theorem_id: str, statement: str, generator: str):
    def deco(fn: Check) -> Check:
        if theorem_id in REGISTRY:
            raise ValueError(f"duplicate theorem id {theorem_id}")
        REGISTRY[theorem_id] = TheoremCase(theorem_id, statement, generator, fn)
        return fn

    return deco


# -- size helpers --------------------------------------------------------------


def _dim(rng, size, lo=2):
    return int(rng.integers(lo, max(lo, size["max_dim"]) + 1))


def _deficient_rect(rng, size, keep):
    m, n = _dim(rng, size), _dim(rng, size)
    rank = int(rng.integers(0, min(m, n)))
    A = gen_random(m, n, rank, rng)
    keep["T"] = A
    return A


def _deficient_square(rng, size):
    n = _dim(rng, size)
    return n, int(rng.integers(1, n))


def _block_dims(rng, size):
    half = max(2, size["max_dim"] // 2)
    return int(rng.integers(2, half + 1)), int(rng.integers(1, half + 1))


def _id(cfg, factor=10.0):
    # identity tolerances scale with cfg so a corrupted config is detectable
    return cfg.identity_tol * factor


# -- registered results ------------------------------------------------------------


@register("thm-1.7", "Moore-Penrose properties (1)-(10) in finite-dimensional form", "gen_random, rank-deficient")
def _thm_1_7(rng, size, cfg, keep):
    res = mp_property_battery(_deficient_rect(rng, size, keep), cfg)
    t = Trial()
    subspace = {"null_of_pinv", "range_of_pinv", "null_of_adjoint_pinv"}
    for k, v in res.items():
        t.le(k, v, cfg.subspace_tol if k in subspace else _id(cfg))
    return t


@register("thm-1.8", "(T1 (+) T2)^+ = T1^+ (+) T2^+ and w(T1 (+) T2) = w(T1) (+) w(T2)", "two gen_random blocks")
def _thm_1_8(rng, size, cfg, keep):
    A = _deficient_rect(rng, size, keep)
    B = _deficient_rect(rng, size, {})
    keep["B"] = B
    t = Trial()
    t.all_le(blocks.direct_sum_pinv(A, B, cfg).residuals, _id(cfg))
    return t


@register("ep-powers", "T EP => T^n EP and R(T^n) = R(T)", "gen_ep")
def _ep_powers(rng, size, cfg, keep):
    n, rank = _deficient_square(rng, size)
    T = keep["T"] = gen_ep(n, rank, rng)
    P = range_projector(T, cfg)
    t = Trial()
    for k in range(1, size["max_power"] + 1):
        Tk = np.linalg.matrix_power(T, k)
        t.le(f"ep[n={k}]", subspace_relation(range_projector(Tk, cfg), range_projector(adjoint(Tk), cfg), cfg).equal_residual, cfg.subspace_tol)
        t.le(f"range[n={k}]", subspace_relation(range_projector(Tk, cfg), P, cfg).equal_residual, cfg.subspace_tol)
    return t


@register("quasinormal-powers", "(T*T)^n = (T*)^n T^n = (T^n)* T^n and T^n quasinormal", "gen_normal_ep")
def _qn_powers(rng, size, cfg, keep):
    n, rank = _deficient_square(rng, size)
    T = keep["T"] = gen_normal_ep(n, rank, rng)
    Th = adjoint(T)
    t = Trial()
    t.holds("quasinormal", bool(classify(T, cfg).quasinormal_commutation))
    for k in range(1, size["max_power"] + 1):
        Tk = np.linalg.matrix_power(T, k)
        gram_k = np.linalg.matrix_power(Th @ T, k)
        mixed = np.linalg.matrix_power(Th, k) @ Tk
        t.le(f"gram_power[n={k}]", rel_residual(gram_k, mixed), _id(cfg))
        t.le(f"adjoint_power[n={k}]", rel_residual(mixed, adjoint(Tk) @ Tk), _id(cfg))
        G = adjoint(Tk) @ Tk
        t.le(f"power_quasinormal[n={k}]", rel_residual(Tk @ G, G @ Tk), _id(cfg))
    return t


@register("ex-1.8", "weighted shift: w(T) e_2n = e_(2n-1) / n, w(T) e_(2n-1) = 0", "finite section, N from size")
def _ex_1_8(rng, size, cfg, keep):
    N = int(size["N"])
    S = models.weighted_shift(N)
    T = S.matrix
    pattern = models.shift_dual_closed_form(N) != 0
    expected = models.shift_dual_closed_form(N)
    t = Trial(info={"N": N})
    for route in ROUTES:
        W = cauchy_dual(T, cfg, route)
        t.le(f"pattern[{route}]", np.max(np.abs(W[pattern] - expected[pattern])), _id(cfg, 0.01))
        t.le(f"off_pattern[{route}]", np.max(np.abs(W[~pattern])), _id(cfg, 1e-4))
    odd = np.zeros(2 * N)
    odd[0::2] = 1.0
    t.le("null_space_is_odd_span", fro(null_projector(T, cfg).matrix - np.diag(odd)), cfg.subspace_tol)
    T2 = T @ T
    W = cauchy_dual(T, cfg)
    t.le("square_is_zero", fro(T2), 0.0)
    t.le("dual_of_square_is_zero", fro(cauchy_dual(T2, cfg)), _id(cfg, 0.01))
    t.le("square_of_dual_is_zero", fro(W @ W), _id(cfg, 0.01))
    t.holds("not_quasinormal", classify(T, cfg).quasinormal_commutation is False)
    return t


@register("ex-1.9", "w(T - lambda_k I) = sum_{n != k} (lambda_n - lambda_k)^-1 phi_n phi_n*", "Nystrom, min kernel on [0,1]")
def _ex_1_9(rng, size, cfg, keep):
    k = int(rng.integers(1, 6))
    rule = models.RULES[int(rng.integers(0, 2))]
    spec = models.KernelSpec("min", 0.0, 1.0, int(size["m"]), rule)
    A, dec = models.nystrom(spec, cfg)
    lk = dec.eigenvalues[k - 1]
    formula = models.spectral_dual_shift(dec, k, cfg)
    dense = cauchy_dual(A - lk * np.eye(A.shape[0]), cfg)
    Q = dec.eigenvectors
    t = Trial(info={"k": k, "rule": rule})
    t.le("spectral_vs_dense_dual", rel_residual(formula, dense), _id(cfg, 1e4))
    t.le("eigenvectors_orthonormal", fro(adjoint(Q) @ Q - np.eye(Q.shape[1])), cfg.orth_tol * Q.shape[1])
    t.le("reconstruction", rel_residual(dec.reconstruct(), A), cfg.recon_tol)
    # discretization accuracy is O(h^2) and not part of the identity; report only
    kk = np.arange(1, 6)
    exact = models.min_kernel_eigenvalues(kk)
    for j, err in zip(kk, np.abs(dec.eigenvalues[:5] - exact) / exact):
        t.le(f"analytic_eigenvalue[k={j}]", err, 1e-4, asserted=False)
    return t


@register("prop-2.1", "w(T) = (T^+)*, w(w(T)) = T, w(T)* = w(T*), projector identities, w(T)*w(T) = w(T*T)", "gen_random")
def _prop_2_1(rng, size, cfg, keep):
    t = Trial()
    t.all_le(dual_identity_battery(_deficient_rect(rng, size, keep), cfg), _id(cfg))
    return t


def _equivalence_input(rng, size, keep):
    n = _dim(rng, size)
    rank = int(rng.integers(1, n + 1))
    kind = ("selfadjoint", "positive", "normal", "generic")[int(rng.integers(0, 4))]
    if kind == "selfadjoint":
        T = gen_normal_ep(n, rank, rng, "real")
    elif kind == "positive":
        T = gen_normal_ep(n, rank, rng, "positive")
    elif kind == "normal":
        T = gen_normal_ep(n, rank, rng, "complex")
    else:
        T = gen_random(n, n, rank, rng)
    keep["T"] = T
    return T, kind


def _equivalence_check(key):
    def check(rng, size, cfg, keep):
        T, kind = _equivalence_input(rng, size, keep)
        verdicts = equivalence_verdicts(T, cfg)[key]
        t = Trial(info={"kind": kind, "verdicts": list(verdicts)})
        t.le("verdict_disagreements", float(len(set(verdicts)) - 1), 0.0)
        return t

    return check


register("thm-2.2", "T = T*  <=>  T = (w(T*)T)T*  <=>  T* = TT*w(T)", "selfadjoint/normal/generic mix")(
    _equivalence_check("selfadjoint_three_way")
)
register("thm-2.3", "T selfadjoint <=> w(T) selfadjoint", "selfadjoint/normal/generic mix")(
    _equivalence_check("selfadjoint_dual")
)
register("thm-2.4", "T normal <=> w(T) normal", "selfadjoint/normal/generic mix")(_equivalence_check("normal_dual"))
register("thm-2.15", "|T|T* = T|T|  <=>  |w(T)|w(T)* = w(T)|w(T)|", "selfadjoint/normal/generic mix")(
    _equivalence_check("abs_commutation_dual")
)


@register("lemma-2.5", "T^+ = |T|^+ U_T*, (T*)^+ = U_T |T|^+ and the polar factor identities", "gen_random")
def _lemma_2_5(rng, size, cfg, keep):
    t = Trial()
    t.all_le(polar_identities(_deficient_rect(rng, size, keep), cfg), _id(cfg))
    return t


@register("thm-2.6", "w(T) = U_T |T|^+ and ||T^+|| = || |T|^+ ||", "gen_random")
def _thm_2_6(rng, size, cfg, keep):
    A = _deficient_rect(rng, size, keep)
    t = Trial()
    t.le("w_is_U_times_abs_pinv", dual_polar(A, cfg)["w_is_U_times_abs_pinv"], _id(cfg))
    t.le("pinv_norm_equals_abs_pinv_norm", pinv_norm_gap(A, cfg), _id(cfg))
    return t


@register("remark-2.7", "positive T: (T^+)^(1/2) = (T^(1/2))^+", "gen_normal_ep positive")
def _remark_2_7(rng, size, cfg, keep):
    n, rank = _deficient_square(rng, size)
    T = keep["T"] = gen_normal_ep(n, rank, rng, "positive")
    t = Trial()
    t.le("root_of_pinv", psd_root_pinv_gap(T, cfg), _id(cfg))
    return t


@register("remark-2.8", "selfadjoint T: w(T^2) = w(T)^2", "gen_normal_ep real")
def _remark_2_8(rng, size, cfg, keep):
    n, rank = _deficient_square(rng, size)
    T = keep["T"] = gen_normal_ep(n, rank, rng, "real")
    t = Trial()
    t.le("square_law", power_gap(T, 2, cfg, relative=True), _id(cfg))
    return t


@register("cor-2.9", "|w(T)| = w(|T|)", "gen_random")
def _cor_2_9(rng, size, cfg, keep):
    res = dual_polar(_deficient_rect(rng, size, keep), cfg)
    t = Trial()
    for k in ("abs_w_is_w_abs", "w_abs_is_abs_pinv"):
        t.le(k, res[k], _id(cfg))
    return t


@register("thm-2.10", "U_T = w(T)|T| and w(T) = U_T |w(T)| is the polar decomposition of w(T)", "gen_random")
def _thm_2_10(rng, size, cfg, keep):
    res = dual_polar(_deficient_rect(rng, size, keep), cfg)
    t = Trial()
    for k in ("U_of_w_is_U", "w_is_U_times_abs_w", "U_is_w_times_abs", "U_matches_svd_frames"):
        t.le(k, res[k], _id(cfg))
    return t


@register("lemma-2.11", "R(T|T|) = R(T) and R(|T|T*) = R(T*)", "gen_random")
def _lemma_2_11(rng, size, cfg, keep):
    res = polar_product_battery(_deficient_rect(rng, size, keep), cfg)
    t = Trial()
    t.le("range_A_absA", res["range_A_absA"], cfg.subspace_tol)
    t.le("range_absA_Aadj", res["range_absA_Aadj"], cfg.subspace_tol)
    return t


@register("lemma-2.13", "(T|T|)^+ = |T|^+ T^+", "gen_random")
def _lemma_2_13(rng, size, cfg, keep):
    t = Trial()
    t.le("pinv_A_absA", polar_product_battery(_deficient_rect(rng, size, keep), cfg)["pinv_A_absA"], _id(cfg))
    return t


@register("lemma-2.14", "(|T|T*)^+ = (T*)^+ |T|^+", "gen_random")
def _lemma_2_14(rng, size, cfg, keep):
    t = Trial()
    t.le("pinv_absA_Aadj", polar_product_battery(_deficient_rect(rng, size, keep), cfg)["pinv_absA_Aadj"], _id(cfg))
    return t


@register("lemma-2.16", "quasinormal EP T: T(T*T)^+ = (T*T)^+ T and ((T*T)^n)^+ = ((T*T)^+)^n", "gen_normal_ep")
def _lemma_2_16(rng, size, cfg, keep):
    n, rank = _deficient_square(rng, size)
    T = keep["T"] = gen_normal_ep(n, rank, rng)
    t = Trial()
    t.le("commutation", lemma_commutation_gap(T, cfg), _id(cfg))
    for k in range(1, size["max_power"] + 1):
        t.le(f"gram_power_pinv[n={k}]", gram_power_pinv_gap(T, k, cfg), _id(cfg))
    return t


@register("lemma-2.17", "(T*T + P_N(T))^-1 = T^+(T*)^+ + P_N(T), T^+ = (T*T + P_N)^-1 T*, w(T) = T(T*T + P_N)^-1", "gen_random")
def _lemma_2_17(rng, size, cfg, keep):
    A = _deficient_rect(rng, size, keep)
    t = Trial()
    t.all_le(regularized_battery(A, cfg), _id(cfg))
    comp = dual(A, "adjoint_pinv", cfg)
    t.le("route_agreement", comp.cross_route_residual, _id(cfg))
    return t


@register("thm-2.18", "quasinormal EP T: w(T^n) = w(T)^n", "gen_normal_ep (quasinormal = normal in finite dimensions)")
def _thm_2_18(rng, size, cfg, keep):
    n, rank = _deficient_square(rng, size)
    kind = ("complex", "real", "unit")[int(rng.integers(0, 3))]
    T = keep["T"] = gen_normal_ep(n, rank, rng, kind)
    P_null = null_projector(T, cfg)
    t = Trial(info={"kind": kind})
    for k in range(1, size["max_power"] + 1):
        t.le(f"power_gap[n={k}]", power_gap(T, k, cfg), _id(cfg, 100.0))
        Tk = np.linalg.matrix_power(T, k)
        t.le(f"null_space[n={k}]", subspace_relation(null_projector(Tk, cfg), P_null, cfg).equal_residual, cfg.subspace_tol)
    return t


COUNTEREXAMPLE = np.array([[1.0, 0.0], [1.0, 0.0]], dtype=np.complex128)


@register("remark-counterexample", "T = [[1,0],[1,0]]: w(T) = T/2, w(T^2) = w(T) != w(T)^2 = T/4", "fixed matrix")
def _remark_counterexample(rng, size, cfg, keep):
    T = keep["T"] = COUNTEREXAMPLE
    W = cauchy_dual(T, cfg)
    gap = power_gap(T, 2, cfg)
    t = Trial(info={"gap": gap})
    t.le("dual_is_half_T", np.max(np.abs(W - 0.5 * T)), _id(cfg, 0.01))
    t.le("square_is_T", fro(T @ T - T), 0.0)
    t.le("gap_is_quarter_norm", abs(gap - 0.25 * fro(T)), _id(cfg, 0.01))
    t.gt("gap_exceeds", gap, 0.3)
    return t


@register("dual-pinv-products", "w(T^+)w(T) = P_R(T*), w(T)w(T^+) = P_R(T), w(P) = P", "gen_random")
def _dual_pinv_products(rng, size, cfg, keep):
    t = Trial()
    t.all_le(dual_of_pinv_products(_deficient_rect(rng, size, keep), cfg), _id(cfg))
    return t


@register("thm-2.20", "S EP, R(S) = R(T)  =>  w(ST) = w(S)w(T)", "gen_range_matched_pair")
def _thm_2_20(rng, size, cfg, keep):
    n = _dim(rng, size)
    rank = int(rng.integers(1, n + 1))
    S, T = gen_range_matched_pair(n, rank, rng)
    keep.update(S=S, T=T)
    rep = product_law_check(S, T, cfg)
    t = Trial(hypothesis_met=rep.hypothesis_met)
    t.holds("hypotheses_verified", rep.hypothesis_met)
    t.le("product_law", rep.residuals["product_law"], _id(cfg))
    # a range mismatch must be detected
    r_bad = int(rng.integers(1, n))
    bad = product_law_check(gen_ep(n, r_bad, rng), gen_random(n, n, int(rng.integers(1, n)), rng), cfg)
    t.holds("mismatch_flagged", not bad.hypothesis_met)
    t.info["mismatch_residual"] = bad.residuals["product_law"]
    return t


@register("thm-2.22", "[[T1,T2],[0,0]]^+ = [[T1^+,0],[T2^+,0]]; w(T) = [[w(T1),w(T2)],[0,0]]; w(|T|) = w(|T1|) (+) w(|T2|)", "gen_orthogonal_range_blocks upper_1x2")
def _thm_2_22(rng, size, cfg, keep):
    p, q = _block_dims(rng, size)
    r1 = int(rng.integers(0, p + 1))
    r2 = int(rng.integers(0, min(p - r1, q) + 1))
    b = gen_orthogonal_range_blocks((p, q), {"T1": r1, "T2": r2}, rng, "upper_1x2")
    keep.update(b)
    rep = blocks.upper_block_pinv(b["T1"], b["T2"], cfg)[-1]
    t = Trial(hypothesis_met=rep.hypothesis_met)
    t.holds("hypotheses_verified", rep.hypothesis_met)
    t.all_le(rep.residuals, _id(cfg))
    bad = blocks.upper_block_pinv(gen_random(p, p, int(rng.integers(1, p + 1)), rng), gen_random(p, q, 1, rng), cfg)[-1]
    t.holds("violation_flagged", not bad.hypothesis_met)
    return t


@register("lower-tri", "[[T1,0],[T3,T4]]^+ = [[T1^+,T3^+],[0,T4^+]] with S^+ = (T1*T1)^+ + (T3*T3)^+", "gen_orthogonal_range_blocks lower_triangular")
def _lower_tri(rng, size, cfg, keep):
    p, q = _block_dims(rng, size)
    r3 = int(rng.integers(0, min(p, q) + 1))
    r4 = int(rng.integers(0, q - r3 + 1))
    b = gen_orthogonal_range_blocks((p, q), {"T1": p - r3, "T3": r3, "T4": r4}, rng, "lower_triangular")
    keep.update(b)
    _, _, s_rep, rep = blocks.lower_tri_pinv(b["T1"], b["T3"], b["T4"], cfg)
    t = Trial(hypothesis_met=rep.hypothesis_met)
    t.holds("hypotheses_verified", rep.hypothesis_met)
    t.all_le(rep.residuals, _id(cfg))
    t.all_le(s_rep.residuals, _id(cfg))
    # deficient T1 with no T3 leaves part of H uncovered
    bad = blocks.lower_tri_pinv(gen_random(p, p, p - 1, rng), np.zeros((q, p)), b["T4"], cfg)[-1]
    t.holds("violation_flagged", not bad.hypothesis_met)
    return t


@register("full-2x2", "[[T1,T2],[T3,T4]]^+ = [[T1^+,T3^+],[T2^+,T4^+]] under four orthogonality conditions", "gen_orthogonal_range_blocks full_2x2")
def _full_2x2(rng, size, cfg, keep):
    p, q = _block_dims(rng, size)
    r1 = int(rng.integers(1, p + 1))
    r2 = int(rng.integers(0, min(p - r1, q) + 1))
    r3 = int(rng.integers(0, min(p - r1, q) + 1))
    r4 = int(rng.integers(0, q - max(r2, r3) + 1))
    b = gen_orthogonal_range_blocks((p, q), {"T1": r1, "T2": r2, "T3": r3, "T4": r4}, rng, "full_2x2")
    keep.update(b)
    rep = blocks.full_2x2_pinv(b["T1"], b["T2"], b["T3"], b["T4"], cfg)[-1]
    t = Trial(hypothesis_met=rep.hypothesis_met)
    t.holds("hypotheses_verified", rep.hypothesis_met)
    t.all_le(rep.residuals, _id(cfg))
    # R(T2) inside R(T1) breaks the third condition
    T2_bad = b["T1"] @ gen_random(p, q, 1, rng)
    bad = blocks.full_2x2_pinv(b["T1"], T2_bad, b["T3"], b["T4"], cfg)[-1]
    t.holds("violation_flagged", not bad.hypothesis_met)
    return t


#: Every result the registry must cover; a meta-test compares this with REGISTRY.
RESULT_IDS = (
    "thm-1.7", "thm-1.8", "ep-powers", "quasinormal-powers", "ex-1.8", "ex-1.9",
    "prop-2.1", "thm-2.2", "thm-2.3", "thm-2.4", "lemma-2.5", "thm-2.6", "remark-2.7",
    "remark-2.8", "cor-2.9", "thm-2.10", "lemma-2.11", "lemma-2.13", "lemma-2.14",
    "thm-2.15", "lemma-2.16", "lemma-2.17", "thm-2.18", "remark-counterexample",
    "dual-pinv-products", "thm-2.20", "thm-2.22", "lower-tri", "full-2x2",
)  # fmt: skip


# -- running -------------------------------------------------------------------


@dataclass
class VerificationReport:
    theorem_id: str
    trials: int
    seed: int
    tolerances: dict
    size: dict
    max_residual: float
    verdict: str
    cases: list[dict]
    wall_time: float
    rng: str = RNG_NAME

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def as_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "trials": self.trials,
            "seed": self.seed,
            "rng": self.rng,
            "tolerances": self.tolerances,
            "size": self.size,
            "max_residual": self.max_residual,
            "verdict": self.verdict,
            "wall_time": self.wall_time,
            "cases": self.cases,
        }


class UnknownTheoremError(CauchyDualError, KeyError):
    def __init__(self, theorem_id):
        super().__init__(f"unknown theorem id {theorem_id!r}; registered ids: {', '.join(sorted(REGISTRY))}")

    def __str__(self):
        return self.args[0]


def resolve_size(size_params: dict | None) -> dict:
    size = dict(DEFAULT_SIZE)
    for k, v in (size_params or {}).items():
        if k not in DEFAULT_SIZE:
            raise ValueError(f"unknown size parameter {k!r}; expected one of {sorted(DEFAULT_SIZE)}")
        size[k] = int(v)
    if size["max_dim"] < 2:
        raise ValueError("max_dim must be at least 2")
    return size


def _run_trial(case: TheoremCase, index: int, seed: int, size: dict, cfg: ToleranceConfig) -> dict:
    rng = make_rng(trial_seed(seed, index))
    keep: dict = {}
    try:
        trial = case.check(rng, size, cfg, keep)
    except (CauchyDualError, np.linalg.LinAlgError, ValueError, ArithmeticError) as exc:
        trial = Trial(info={"error": f"{type(exc).__name__}: {exc}"})
        trial.le("exception", np.inf, 0.0)
    asserted = [a for a in trial.assertions if a.asserted and a.op == "le"]
    record = {
        "trial": index,
        "passed": trial.passed,
        "hypothesis_met": trial.hypothesis_met,
        "max_residual": max((a.value for a in asserted), default=0.0),
        "assertions": [a.as_dict() for a in trial.assertions],
    }
    if trial.info:
        record["info"] = trial.info
    if not trial.passed:
        record["matrices"] = {k: matrix_to_json(v) for k, v in keep.items()}
    return record


def run_theorem(
    theorem_id: str,
    trials: int = DEFAULT_TRIALS,
    seed: int | None = None,
    size_params: dict | None = None,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    jobs: int = 1,
) -> VerificationReport:
    """Run ``trials`` seeded trials of one registered theorem."""
    if theorem_id not in REGISTRY:
        raise UnknownTheoremError(theorem_id)
    if trials < 0:
        raise ValueError("trials must be non-negative")
    seed = default_seed() if seed is None else int(seed)
    size = resolve_size(size_params)
    case = REGISTRY[theorem_id]
    start = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(lambda i: _run_trial(case, i, seed, size, cfg), range(trials)))
    else:
        cases = [_run_trial(case, i, seed, size, cfg) for i in range(trials)]
    elapsed = time.perf_counter() - start

    if any(not c["passed"] for c in cases):
        verdict = "fail"
    elif cases and not any(c["hypothesis_met"] for c in cases):
        verdict = "hypothesis-not-met"
    else:
        verdict = "pass"
    return VerificationReport(
        theorem_id=theorem_id,
        trials=trials,
        seed=seed,
        tolerances=cfg.as_dict(),
        size=size,
        max_residual=max((c["max_residual"] for c in cases), default=0.0),
        verdict=verdict,
        cases=cases,
        wall_time=elapsed,
    )


def run_all(
    trials: int = DEFAULT_TRIALS,
    seed: int | None = None,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    size_params: dict | None = None,
    jobs: int = 1,
) -> list[VerificationReport]:
    return [run_theorem(tid, trials, seed, size_params, cfg, jobs) for tid in REGISTRY]


# -- counterexample search ---------------------------------------------------------

SEARCH_PROPERTIES = ("dual-power", "dual-product")
SEARCH_RESTRICTIONS = {"dual-power": (None, "normal_ep"), "dual-product": (None, "range_matched")}


def search_counterexample(
    property_id: str,
    trials: int = 1000,
    seed: int | None = None,
    size_params: dict | None = None,
    restrict: str | None = None,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    dim: int | None = None,
    rank: int | None = None,
    threshold: float = 0.1,
) -> dict:
    """Look for the worst violation of a law whose hypotheses are dropped.

    ``dual-power`` measures ``||w(T^n) - w(T)^n||_F`` on random square ``T``
    (``restrict="normal_ep"`` draws from the hypothesis class instead);
    ``dual-product`` measures ``||w(ST) - w(S)w(T)||_F`` for EP ``S`` and an
    unrelated ``T`` (``restrict="range_matched"`` enforces R(S) = R(T)).
    ``dim``/``rank`` pin the matrix size; otherwise both are drawn per trial.
    """
    if property_id not in SEARCH_PROPERTIES:
        raise ValueError(f"unknown property {property_id!r}; expected one of {SEARCH_PROPERTIES}")
    if restrict not in SEARCH_RESTRICTIONS[property_id]:
        raise ValueError(f"restriction {restrict!r} not available for {property_id}")
    seed = default_seed() if seed is None else int(seed)
    size = resolve_size(size_params)
    best = None
    gaps = []
    for i in range(trials):
        rng = make_rng(trial_seed(seed, i))
        n = dim if dim is not None else _dim(rng, size)
        r = rank if rank is not None else int(rng.integers(1, n))
        if property_id == "dual-power":
            power = int(rng.integers(2, size["max_power"] + 1))
            T = gen_normal_ep(n, r, rng) if restrict == "normal_ep" else gen_random(n, n, r, rng)
            gap = power_gap(T, power, cfg)
            witness = {"T": T}
            extra = {"power": power}
        else:
            if restrict == "range_matched":
                S, T = gen_range_matched_pair(n, r, rng)
            else:
                S, T = gen_ep(n, r, rng), gen_random(n, n, r, rng)
            gap = fro(cauchy_dual(S @ T, cfg) - cauchy_dual(S, cfg) @ cauchy_dual(T, cfg))
            witness = {"S": S, "T": T}
            extra = {}
        gaps.append(gap)
        if best is None or gap > best["gap"]:
            best = {"trial": i, "gap": gap, "witness": witness, **extra}

    out = {
        "property_id": property_id,
        "restrict": restrict,
        "trials": trials,
        "seed": seed,
        "rng": RNG_NAME,
        "threshold": threshold,
        "max_gap": max(gaps, default=0.0),
        "violators": int(sum(g > threshold for g in gaps)),
        "best": None,
    }
    if best is not None:
        out["best"] = {
            "trial": best["trial"],
            "gap": best["gap"],
            **({"power": best["power"]} if "power" in best else {}),
            "matrices": {k: matrix_to_json(v) for k, v in best["witness"].items()},
            "classification": {k: classify(v, cfg).as_dict()["verdicts"] for k, v in best["witness"].items()},
        }
    return out
