"""Dense complex linear algebra substrate.

Every operator is a complex128 ``numpy`` array. Functions here never mutate
their inputs. Rank decisions all go through :func:`rank_cutoff` so that
pseudoinverses, projectors and square roots agree on what "zero" means.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import FactorizationError, PreconditionError, ShapeError

EPS = np.finfo(np.float64).eps

#: Sweep cap for the one-sided Jacobi SVD.
JACOBI_MAX_SWEEPS = 60


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerance policy shared by every check in the package.

    ``identity_tol`` is compared against relative Frobenius residuals
    (see :func:`rel_residual`); ``subspace_tol`` against absolute Frobenius
    distances between orthogonal projectors.
    """

    rank_safety: float = 10.0
    identity_tol: float = 1e-10
    subspace_tol: float = 1e-8
    orth_tol: float = 1e-10
    recon_tol: float = 1e-10

    def __post_init__(self):
        for name in ("rank_safety", "identity_tol", "subspace_tol", "orth_tol", "recon_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    def as_dict(self) -> dict:
        return {
            "rank_safety": self.rank_safety,
            "identity_tol": self.identity_tol,
            "subspace_tol": self.subspace_tol,
            "orth_tol": self.orth_tol,
            "recon_tol": self.recon_tol,
        }


DEFAULT_CONFIG = ToleranceConfig()


def as_matrix(A) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array (copying only when needed)."""
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got shape {M.shape}")
    if M.shape[0] < 1 or M.shape[1] < 1:
        raise ShapeError(f"matrix must have positive dimensions, got {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def adjoint(A) -> np.ndarray:
    return np.asarray(A).conj().T


def fro(A) -> float:
    return float(np.linalg.norm(A, "fro"))


def rel_residual(X, Y) -> float:
    """``||X - Y||_F / (1 + max(||X||_F, ||Y||_F))``."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape:
        raise ShapeError(f"cannot compare shapes {X.shape} and {Y.shape}")
    return fro(X - Y) / (1.0 + max(fro(X), fro(Y)))


def rank_cutoff(sigma_max: float, shape: tuple[int, int], cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    return float(sigma_max) * max(shape) * EPS * cfg.rank_safety


@dataclass(frozen=True)
class SvdFactorization:
    """Full SVD ``A = U diag(sigma) V*`` plus the numerical rank."""

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray
    numerical_rank: int
    cutoff: float

    @property
    def shape(self) -> tuple[int, int]:
        return (self.U.shape[0], self.V.shape[0])

    def reconstruct(self) -> np.ndarray:
        m, n = self.shape
        k = len(self.sigma)
        return (self.U[:, :k] * self.sigma) @ adjoint(self.V[:, :k])


def _jacobi_svd(A: np.ndarray, max_sweeps: int = JACOBI_MAX_SWEEPS):
    # one-sided Hestenes-Jacobi; requires rows >= cols
    m, n = A.shape
    G = A.copy()
    V = np.eye(n, dtype=np.complex128)
    tol = EPS * m
    for sweep in range(1, max_sweeps + 1):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                gp, gq = G[:, p], G[:, q]
                alpha = float(np.vdot(gp, gp).real)
                beta = float(np.vdot(gq, gq).real)
                gamma = np.vdot(gp, gq)
                mag = abs(gamma)
                if mag == 0.0 or mag <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                phase = gamma / mag
                zeta = (beta - alpha) / (2.0 * mag)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                gq_aligned = gq * np.conj(phase)
                G[:, p], G[:, q] = c * gp - s * gq_aligned, s * gp + c * gq_aligned
                vp, vq_aligned = V[:, p].copy(), V[:, q] * np.conj(phase)
                V[:, p], V[:, q] = c * vp - s * vq_aligned, s * vp + c * vq_aligned
        if not rotated:
            break
    else:
        raise FactorizationError(
            f"one-sided Jacobi SVD did not converge in {max_sweeps} sweeps", iterations=max_sweeps
        )

    sigma = np.linalg.norm(G, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    G = G[:, order]
    V = V[:, order]
    keep = sigma > (sigma[0] if n else 0.0) * EPS * max(m, n)
    r = int(np.count_nonzero(keep))
    Ur = G[:, :r] / sigma[:r]
    # complete to a unitary frame; QR of [Ur | I] keeps span(Ur) in its leading block
    Q, _ = np.linalg.qr(np.hstack([Ur, np.eye(m, dtype=np.complex128)]))
    U = np.hstack([Ur, Q[:, r:m]])
    return U, sigma, V


def svd(A, cfg: ToleranceConfig = DEFAULT_CONFIG, method: Literal["lapack", "jacobi"] = "lapack") -> SvdFactorization:
    """Full singular value decomposition with a numerical rank.

    ``method="lapack"`` delegates to ``numpy.linalg.svd``; ``"jacobi"`` runs a
    pure one-sided Jacobi iteration (slow, but independent of LAPACK's SVD
    driver, which makes it useful as a cross-check).

    The rank cutoff is ``sigma_max * max(m, n) * eps * cfg.rank_safety``.
    """
    A = as_matrix(A)
    m, n = A.shape
    if method == "lapack":
        try:
            U, sigma, Vh = np.linalg.svd(A, full_matrices=True)
        except np.linalg.LinAlgError as exc:
            raise FactorizationError(f"LAPACK SVD failed: {exc}", iterations=None) from exc
        V = adjoint(Vh)
    elif method == "jacobi":
        if m >= n:
            U, sigma, V = _jacobi_svd(A)
        else:
            V, sigma, U = _jacobi_svd(adjoint(A))
    else:
        raise ValueError(f"unknown SVD method {method!r}")
    sigma = np.asarray(sigma, dtype=np.float64)
    smax = float(sigma[0]) if sigma.size else 0.0
    cutoff = rank_cutoff(smax, A.shape, cfg)
    rank = int(np.count_nonzero(sigma > cutoff))
    return SvdFactorization(U=U, sigma=sigma, V=V, numerical_rank=rank, cutoff=cutoff)


def hermitian_residual(A) -> float:
    A = np.asarray(A)
    return fro(A - adjoint(A)) / (1.0 + fro(A))


def hermitian_eig(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and a unitary eigenvector matrix of a Hermitian ``A``."""
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"hermitian_eig needs a square matrix, got {A.shape}")
    asym = hermitian_residual(A)
    if asym > cfg.identity_tol:
        raise PreconditionError(f"matrix is not Hermitian (relative asymmetry {asym:.3e})", residual=asym)
    H = 0.5 * (A + adjoint(A))
    lam, Q = np.linalg.eigh(H)
    return lam[::-1].copy(), Q[:, ::-1].copy()


@dataclass(frozen=True)
class Projector:
    """Orthogonal projector onto a subspace of dimension ``subspace_dim``."""

    matrix: np.ndarray
    subspace_dim: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def residuals(self) -> dict[str, float]:
        P = self.matrix
        scale = 1.0 + fro(P)
        return {
            "idempotent": fro(P @ P - P) / scale,
            "hermitian": fro(P - adjoint(P)) / scale,
            "trace": abs(np.trace(P).real - self.subspace_dim),
        }


def range_projector(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Projector:
    """Projector onto R(A) built from the leading left singular vectors."""
    f = svd(A, cfg)
    Ur = f.U[:, : f.numerical_rank]
    return Projector(Ur @ adjoint(Ur), f.numerical_rank)


def null_projector(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Projector:
    """Projector onto N(A), i.e. ``I - P_{R(A*)}``."""
    A = as_matrix(A)
    carrier = range_projector(adjoint(A), cfg)
    n = A.shape[1]
    return Projector(np.eye(n) - carrier.matrix, n - carrier.subspace_dim)


def carrier_projector(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Projector:
    """Projector onto N(A)^perp = R(A*)."""
    return range_projector(adjoint(as_matrix(A)), cfg)


@dataclass(frozen=True)
class SubspaceRelation:
    kind: Literal["equal", "contained", "incomparable"]
    equal_residual: float
    contained_residual: float


def subspace_relation(P, Q, cfg: ToleranceConfig = DEFAULT_CONFIG) -> SubspaceRelation:
    """Compare range(P) with range(Q): equal, P inside Q, or neither."""
    P = P.matrix if isinstance(P, Projector) else np.asarray(P)
    Q = Q.matrix if isinstance(Q, Projector) else np.asarray(Q)
    if P.shape != Q.shape or P.shape[0] != P.shape[1]:
        raise ShapeError(f"projector shapes {P.shape} and {Q.shape} are not the same square size")
    eq = fro(P - Q)
    inside = fro(Q @ P - P)
    if eq <= cfg.subspace_tol:
        kind = "equal"
    elif inside <= cfg.subspace_tol:
        kind = "contained"
    else:
        kind = "incomparable"
    return SubspaceRelation(kind, eq, inside)


def psd_sqrt(A, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Hermitian positive square root via the eigen-decomposition.

    Eigenvalues at or below the rank cutoff of ``A`` are set to zero, so the
    root has exactly the numerical rank of ``A``. Eigenvalues more negative
    than ``-identity_tol * (1 + ||A||_F)`` raise :class:`PreconditionError`.
    """
    lam, Q = hermitian_eig(A, cfg)
    floor = -cfg.identity_tol * (1.0 + fro(A))
    if lam.size and lam[-1] < floor:
        raise PreconditionError(
            f"matrix is indefinite (most negative eigenvalue {lam[-1]:.3e})", residual=float(lam[-1])
        )
    cut = rank_cutoff(max(float(np.max(np.abs(lam))), 0.0), A.shape, cfg)
    roots = np.where(lam > cut, np.sqrt(np.clip(lam, 0.0, None)), 0.0)
    B = (Q * roots) @ adjoint(Q)
    return 0.5 * (B + adjoint(B))
