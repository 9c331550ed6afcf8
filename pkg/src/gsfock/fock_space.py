"""Deformed scalar product on the tensor algebra, level by level.

The monomials ``x^{j_1} (x) ... (x) x^{j_n}`` are orthonormal for the free
product, so the Gram matrix of the deformed product at level ``n`` is simply
the matrix of ``P_n``. The vacuum (level 0) has norm 1.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import multilinear as ml
from .exceptions import InconsistencyError
from .statistics_ops import DEFAULT_TOL, BraidOperator, TildeOperator

_P_CACHE: dict[tuple[str, int], np.ndarray] = {}


def fingerprint(matrix: np.ndarray) -> str:
    """Hash of the exact entry bytes (plus shape) of an operator matrix."""
    m = np.ascontiguousarray(matrix, dtype=complex)
    h = hashlib.sha256(repr(m.shape).encode())
    h.update(m.tobytes())
    return h.hexdigest()


def clear_cache() -> None:
    _P_CACHE.clear()


def r_operator(Tt: TildeOperator, n: int) -> np.ndarray:
    """``R_n = id + T~1 + T~1 T~2 + ... + T~1 ... T~(n-1)`` on ``E^(x)n``."""
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")
    N = Tt.N
    size = ml.level_size(N, n)
    R = ml.identity(size)
    S = R
    for k in range(1, n):
        S = ml.rmul_placed(S, Tt.matrix, k, n)
        R = R + S
    return R


def p_operator(Tt: TildeOperator, n: int) -> np.ndarray:
    """Gram operator ``P_n`` via ``P_1 = id``, ``P_{n+1} = (id (x) P_n) R_{n+1}``.

    Results are memoised per (operator fingerprint, level) and returned read-only.
    """
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")
    key = (fingerprint(Tt.matrix), n)
    cached = _P_CACHE.get(key)
    if cached is not None:
        return cached
    N = Tt.N
    if n <= 1:
        P = ml.identity(ml.level_size(N, n))
    else:
        prev = p_operator(Tt, n - 1)
        R = r_operator(Tt, n).reshape(N, N ** (n - 1), N**n)
        # (id_E (x) P_{n-1}) is block diagonal; apply it block by block
        P = np.einsum("xy,ayc->axc", prev, R).reshape(N**n, N**n)
    P.setflags(write=False)
    _P_CACHE[key] = P
    return P


def _kernel_tol(tol: float, eigenvalues: np.ndarray) -> float:
    top = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return tol * max(1.0, top)


@dataclass
class FockLevel:
    n: int
    N: int
    gram: np.ndarray
    eigenvalues: np.ndarray
    kernel_dim: int
    kernel_basis: np.ndarray
    hermitian_residual: float
    consistent: bool

    @property
    def size(self) -> int:
        return self.gram.shape[0]


def gram(Tt: TildeOperator, n: int, tol: float = DEFAULT_TOL) -> FockLevel:
    """Gram matrix of the deformed product at level ``n`` with its eigen-analysis."""
    G = p_operator(Tt, n)
    herm = ml.max_abs(G - ml.adjoint(G))
    consistent = herm <= tol * max(1.0, ml.max_abs(G))
    Gs = (G + ml.adjoint(G)) / 2
    w, V = np.linalg.eigh(Gs)
    zero = np.abs(w) <= _kernel_tol(tol, w)
    return FockLevel(
        n=n,
        N=Tt.N,
        gram=G,
        eigenvalues=w,
        kernel_dim=int(zero.sum()),
        kernel_basis=V[:, zero],
        hermitian_residual=herm,
        consistent=bool(consistent),
    )


@dataclass(frozen=True)
class PositivityReport:
    positive_definite: bool
    positive_semidefinite: bool
    min_eigenvalue: float
    max_eigenvalue: float
    kernel_dim: int


def positivity_report(level: FockLevel, tol: float = DEFAULT_TOL) -> PositivityReport:
    """Classify a level by eigenvalue signs, treating ``|lambda| <= tol*max(1, lambda_max)`` as zero."""
    if not level.consistent:
        raise InconsistencyError(
            f"Gram matrix at level {level.n} is not Hermitian "
            f"(residual {level.hermitian_residual:.3e})"
        )
    w = level.eigenvalues
    ktol = _kernel_tol(tol, w)
    negative = int(np.sum(w < -ktol))
    zero = int(np.sum(np.abs(w) <= ktol))
    return PositivityReport(
        positive_definite=negative == 0 and zero == 0,
        positive_semidefinite=negative == 0,
        min_eigenvalue=float(w.min()),
        max_eigenvalue=float(w.max()),
        kernel_dim=zero,
    )


def _column_space(M: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis of the column space by pivoted QR (deterministic)."""
    rows = M.shape[0]
    if M.size == 0:
        return np.zeros((rows, 0), dtype=complex)
    Q, R, _ = scipy.linalg.qr(M, mode="economic", pivoting=True)
    d = np.abs(np.diag(R))
    if d.size == 0 or d[0] == 0.0:
        return np.zeros((rows, 0), dtype=complex)
    rank = int(np.sum(d > tol * max(1.0, d[0])))
    return Q[:, :rank]


def orthogonal_complement(V: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the free-product complement of ``span(V)``."""
    size = V.shape[0]
    if V.shape[1] == 0:
        return ml.identity(size)
    proj = ml.identity(size) - V @ ml.adjoint(V)
    C = _column_space(proj, tol)
    return C[:, : size - V.shape[1]]


def ideal_component(B: BraidOperator | None, n: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the level-``n`` part of the ideal generated by ``id - B``.

    Returns an ``N^n x d`` matrix; ``d = 0`` for ``n < 2`` or when no braid is given.
    """
    if B is None:
        raise ValueError("a braid operator is required")
    N = B.N
    size = ml.level_size(N, n)
    if n < 2:
        return np.zeros((size, 0), dtype=complex)
    gen = ml.identity(N * N) - B.matrix
    images = [ml.place(gen, i, n) for i in range(1, n)]
    return _column_space(np.hstack(images), tol)


@dataclass
class QuotientLevel:
    n: int
    ideal_basis: np.ndarray
    complement_basis: np.ndarray
    induced_gram: np.ndarray
    containment_residual: float
    well_defined: bool
    ideal_dim: int = field(init=False)
    quotient_dim: int = field(init=False)

    def __post_init__(self):
        self.ideal_dim = self.ideal_basis.shape[1]
        self.quotient_dim = self.complement_basis.shape[1]


def quotient_structure(
    Tt: TildeOperator, B: BraidOperator | None, n: int, tol: float = DEFAULT_TOL
) -> QuotientLevel:
    """Quotient of level ``n`` by the braid ideal, with the induced Gram matrix.

    The quotient is well defined when every ideal vector lies in the kernel of the
    Gram matrix; an ill-defined quotient is reported, not raised.
    """
    G = p_operator(Tt, n)
    size = G.shape[0]
    if B is None:
        V = np.zeros((size, 0), dtype=complex)
    else:
        V = ideal_component(B, n, tol)
    C = ml.identity(size) if V.shape[1] == 0 else orthogonal_complement(V, tol)
    containment = ml.max_abs(G @ V)
    well_defined = containment <= tol * max(1.0, ml.max_abs(G))
    induced = ml.adjoint(C) @ G @ C
    return QuotientLevel(
        n=n,
        ideal_basis=V,
        complement_basis=C,
        induced_gram=induced,
        containment_residual=containment,
        well_defined=bool(well_defined),
    )
