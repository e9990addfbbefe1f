"""Seeded random matrices for each hypothesis class.

All generators are pure functions of their arguments. ``seed`` may be an int,
a ``numpy.random.SeedSequence`` or an existing ``numpy.random.Generator``; ints
and seed sequences drive a Philox counter-based bit generator.
"""

from __future__ import annotations

import numpy as np

from .linalg import adjoint

RNG_NAME = "numpy.random.Philox"

#: Range of singular values / eigenvalue moduli used by the generators. Kept
#: narrow so that powers up to the fifth stay well conditioned.
SIGMA_RANGE = (0.5, 2.0)
NORMAL_MODULUS_RANGE = (0.7, 1.4)


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.Generator(np.random.Philox(int(seed)))


def trial_seed(master: int, index: int) -> np.random.SeedSequence:
    """Independent stream for trial ``index`` of a run seeded with ``master``."""
    return np.random.SeedSequence(entropy=int(master), spawn_key=(int(index),))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary (QR of a complex Gaussian with phase fix)."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def _check_rank(rank: int, limit: int):
    if not 0 <= rank <= limit:
        raise ValueError(f"rank must lie in [0, {limit}], got {rank}")


def _sigmas(rng, k):
    return np.sort(rng.uniform(*SIGMA_RANGE, size=k))[::-1]


def gen_random(m: int, n: int, rank: int, seed) -> np.ndarray:
    """``U_r diag(sigma) V_r*`` with Haar frames and sigma in ``SIGMA_RANGE``."""
    _check_rank(rank, min(m, n))
    rng = make_rng(seed)
    U = random_unitary(m, rng)[:, :rank]
    V = random_unitary(n, rng)[:, :rank]
    return (U * _sigmas(rng, rank)) @ adjoint(V)


def gen_ep(n: int, rank: int, seed) -> np.ndarray:
    """``Q [[A, 0], [0, 0]] Q*`` with ``A`` invertible: R(T) = R(T*)."""
    _check_rank(rank, n)
    rng = make_rng(seed)
    Q = random_unitary(n, rng)[:, :rank]
    core = gen_random(rank, rank, rank, rng)
    return Q @ core @ adjoint(Q)


def gen_normal_ep(n: int, rank: int, seed, kind: str = "complex") -> np.ndarray:
    """``Q diag(lambda_1..lambda_r, 0..0) Q*`` with nonzero lambdas.

    ``kind`` picks the eigenvalues: ``"complex"`` (random phase), ``"real"``
    (random sign, so the result is selfadjoint), ``"positive"`` (PSD) or
    ``"unit"`` (unit modulus; unitary when ``rank == n``).
    """
    _check_rank(rank, n)
    rng = make_rng(seed)
    Q = random_unitary(n, rng)
    modulus = rng.uniform(*NORMAL_MODULUS_RANGE, size=rank)
    if kind == "complex":
        lam = modulus * np.exp(2j * np.pi * rng.uniform(size=rank))
    elif kind == "real":
        lam = modulus * rng.choice([-1.0, 1.0], size=rank)
    elif kind == "positive":
        lam = modulus.astype(np.complex128)
    elif kind == "unit":
        lam = np.exp(2j * np.pi * rng.uniform(size=rank))
    else:
        raise ValueError(f"unknown eigenvalue kind {kind!r}")
    d = np.zeros(n, dtype=np.complex128)
    d[:rank] = lam
    return (Q * d) @ adjoint(Q)


def gen_range_matched_pair(n: int, rank: int, seed, M=None) -> tuple[np.ndarray, np.ndarray]:
    """EP ``S`` and ``T = S M`` with ``M`` invertible, so R(S) = R(T)."""
    rng = make_rng(seed)
    S = gen_ep(n, rank, rng)
    if M is None:
        M = gen_random(n, n, n, rng)
    return S, S @ np.asarray(M, dtype=np.complex128)


def _frames(U, sizes):
    out, start = [], 0
    for k in sizes:
        out.append(U[:, start : start + k])
        start += k
    return out


def _block(rng, left, right):
    k = left.shape[1]
    return (left * _sigmas(rng, k)) @ adjoint(right)


LAYOUTS = ("upper_1x2", "lower_triangular", "full_2x2")


def gen_orthogonal_range_blocks(dims, ranks, seed, layout: str = "full_2x2") -> dict[str, np.ndarray]:
    """Blocks whose ranges (and, where needed, co-ranges) are mutually orthogonal.

    ``dims = (p, q)`` are the sizes of the two coordinate spaces H = C^p and
    K = C^q; block ``T1`` is p x p, ``T2`` p x q, ``T3`` q x p, ``T4`` q x q.
    ``ranks`` maps block names to ranks. Orthogonality is produced by carving
    disjoint column sets out of one Haar unitary per space:

    * ``upper_1x2`` (T1, T2): R(T1) _|_ R(T2) in H.
    * ``lower_triangular`` (T1, T3, T4): R(T1*) (+) R(T3*) = H, so
      rank(T1) + rank(T3) must equal p; R(T3) _|_ R(T4) in K.
    * ``full_2x2`` (T1..T4): R(T1*) _|_ R(T3*), R(T2*) _|_ R(T4*),
      R(T1) _|_ R(T2), R(T3) _|_ R(T4).
    """
    p, q = dims
    rng = make_rng(seed)
    r = {name: int(ranks.get(name, 0)) for name in ("T1", "T2", "T3", "T4")}

    def need(total, cap, what):
        if total > cap:
            raise ValueError(f"infeasible request: {what} needs dimension {total} > {cap}")

    if layout == "upper_1x2":
        need(r["T1"] + r["T2"], p, "R(T1) + R(T2) in H")
        _check_rank(r["T1"], p)
        _check_rank(r["T2"], q)
        c1, c2 = _frames(random_unitary(p, rng), (r["T1"], r["T2"]))
        d1 = random_unitary(p, rng)[:, : r["T1"]]
        d2 = random_unitary(q, rng)[:, : r["T2"]]
        return {"T1": _block(rng, c1, d1), "T2": _block(rng, c2, d2)}

    if layout == "lower_triangular":
        if r["T1"] + r["T3"] != p:
            raise ValueError(f"infeasible request: rank(T1) + rank(T3) must equal p={p}")
        need(r["T3"] + r["T4"], q, "R(T3) + R(T4) in K")
        _check_rank(r["T3"], min(p, q))
        row1, row3 = _frames(random_unitary(p, rng), (r["T1"], r["T3"]))
        col1 = random_unitary(p, rng)[:, : r["T1"]]
        col3, col4 = _frames(random_unitary(q, rng), (r["T3"], r["T4"]))
        row4 = random_unitary(q, rng)[:, : r["T4"]]
        return {"T1": _block(rng, col1, row1), "T3": _block(rng, col3, row3), "T4": _block(rng, col4, row4)}

    if layout == "full_2x2":
        need(r["T1"] + r["T3"], p, "R(T1*) + R(T3*) in H")
        need(r["T2"] + r["T4"], q, "R(T2*) + R(T4*) in K")
        need(r["T1"] + r["T2"], p, "R(T1) + R(T2) in H")
        need(r["T3"] + r["T4"], q, "R(T3) + R(T4) in K")
        col1, col2 = _frames(random_unitary(p, rng), (r["T1"], r["T2"]))
        col3, col4 = _frames(random_unitary(q, rng), (r["T3"], r["T4"]))
        row1, row3 = _frames(random_unitary(p, rng), (r["T1"], r["T3"]))
        row2, row4 = _frames(random_unitary(q, rng), (r["T2"], r["T4"]))
        return {
            "T1": _block(rng, col1, row1),
            "T2": _block(rng, col2, row2),
            "T3": _block(rng, col3, row3),
            "T4": _block(rng, col4, row4),
        }

    raise ValueError(f"unknown layout {layout!r}; expected one of {LAYOUTS}")
