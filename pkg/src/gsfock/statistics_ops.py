"""Cross operator, its rearrangement, braid operator, and checkers for their laws.

Matrix conventions (0-based, ``N`` generators):

* cross operator ``T : E* (x) E -> E (x) E*`` with ``T(x*^i (x) x^j) = sum T^{ij}_{kl} x^k (x) x*^l``
  is stored with ``T^{ij}_{kl}`` at row ``k*N + l``, column ``i*N + j``;
* every operator on ``E (x) E`` (the rearranged cross, the braid) uses the same
  row = output index, column = input index layout.

Every residual is the entrywise max-modulus norm. Tolerances are relative: a
check passes when ``residual <= tol * max(1, largest input magnitude)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import multilinear as ml
from .exceptions import InputError

DEFAULT_TOL = 1e-10


def _scaled_tol(tol: float, *mats: np.ndarray) -> float:
    scale = max([1.0] + [ml.max_abs(m) for m in mats])
    return tol * scale


@dataclass(frozen=True, eq=False)
class _TwoLegOperator:
    matrix: np.ndarray

    def __post_init__(self):
        m = ml.as_complex_matrix(self.matrix, type(self).__name__)
        ml.one_particle_dim(m)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def N(self) -> int:
        return ml.one_particle_dim(self.matrix)

    def tensor(self) -> np.ndarray:
        """Entries as a 4-index array ``t[k, l, i, j]`` (output pair first)."""
        N = self.N
        return self.matrix.reshape(N, N, N, N)

    def __eq__(self, other):
        return type(self) is type(other) and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


class CrossOperator(_TwoLegOperator):
    """Matrix of the elementary cross ``T : E* (x) E -> E (x) E*``."""

    def element(self, i: int, j: int, k: int, l: int) -> complex:
        """``T^{ij}_{kl}``."""
        N = self.N
        return complex(self.matrix[k * N + l, i * N + j])


class TildeOperator(_TwoLegOperator):
    """Rearranged cross acting on ``E (x) E``; ``(T~)^{ij}_{kl} = T^{ki}_{lj}``."""


class BraidOperator(_TwoLegOperator):
    """Exchange operator ``B`` on ``E (x) E``."""

    def element(self, i: int, j: int, k: int, l: int) -> complex:
        """``B^{ij}_{kl}``, the coefficient of ``x^k (x) x^l`` in ``B(x^i (x) x^j)``."""
        N = self.N
        return complex(self.matrix[k * N + l, i * N + j])

    @property
    def invertible(self) -> bool:
        return bool(np.linalg.cond(self.matrix) < 1e12)


@dataclass(frozen=True)
class Pairing:
    """Canonical pairing ``g(x*^i (x) x^j) = delta^{ij}`` as a ``1 x N^2`` row vector."""

    N: int

    @property
    def matrix(self) -> np.ndarray:
        return np.eye(self.N, dtype=complex).reshape(1, self.N * self.N)


def tilde(T: CrossOperator) -> TildeOperator:
    # t[k,l,i,j] = T^{ij}_{kl};  tt[k,l,i,j] = T^{ki}_{lj} = t[l,j,k,i]
    tt = np.einsum("ljki->klij", T.tensor())
    N = T.N
    return TildeOperator(tt.reshape(N * N, N * N))


def untilde(Tt: TildeOperator) -> CrossOperator:
    """Inverse of :func:`tilde`."""
    # t[a,b,c,d] = tt[c,a,d,b]
    N = Tt.N
    t = np.einsum("cadb->abcd", Tt.tensor())
    return CrossOperator(t.reshape(N * N, N * N))


@dataclass(frozen=True)
class CrossStructure:
    hermitian: bool
    invertible: bool
    hermitian_residual: float
    min_singular_value: float


def check_cross_structure(T: CrossOperator, tol: float = DEFAULT_TOL) -> CrossStructure:
    """Hermiticity and invertibility of ``T`` (both demanded, neither fatal)."""
    m = T.matrix
    herm_res = ml.max_abs(m - ml.adjoint(m))
    smin = float(np.linalg.svd(m, compute_uv=False).min())
    t = _scaled_tol(tol, m)
    return CrossStructure(
        hermitian=herm_res <= t,
        invertible=smin > t,
        hermitian_residual=herm_res,
        min_singular_value=smin,
    )


def _braid_residual(m: np.ndarray) -> float:
    b1 = ml.place(m, 1, 3)
    b2 = ml.place(m, 2, 3)
    return ml.max_abs(b1 @ b2 @ b1 - b2 @ b1 @ b2)


def check_yang_baxter(Tt: TildeOperator) -> float:
    """Residual of ``T~1 T~2 T~1 = T~2 T~1 T~2`` on ``E^(x)3``."""
    return _braid_residual(Tt.matrix)


def check_braid_relation(B: BraidOperator) -> float:
    """Residual of ``B1 B2 B1 = B2 B1 B2`` on ``E^(x)3``."""
    return _braid_residual(B.matrix)


@dataclass(frozen=True)
class ConsistencyReport:
    mixed_yb_residual: float
    projector_residual: float
    passed: bool


def check_consistency(
    T: CrossOperator, B: BraidOperator | None, tol: float = DEFAULT_TOL
) -> ConsistencyReport:
    """Check the two relations coupling the cross ``T`` with the braid ``B``.

    Leg reading of the mixed relation ``B1 T2 T1 = T2 T1 B2``: both sides map
    ``E* (x) E (x) E -> E (x) E (x) E*``; every carrier space has dimension ``N``
    so each factor is a placed ``N^3 x N^3`` matrix. The second relation is
    ``(id + T~)(id - B) = 0``. Without a braid nothing is imposed.
    """
    if B is None:
        return ConsistencyReport(0.0, 0.0, True)
    if B.N != T.N:
        raise InputError(f"dimension mismatch: cross has N={T.N}, braid has N={B.N}")
    t, b = T.matrix, B.matrix
    t1, t2 = ml.place(t, 1, 3), ml.place(t, 2, 3)
    b1, b2 = ml.place(b, 1, 3), ml.place(b, 2, 3)
    mixed = ml.max_abs(b1 @ t2 @ t1 - t2 @ t1 @ b2)
    eye = ml.identity(T.N**2)
    proj = ml.max_abs((eye + tilde(T).matrix) @ (eye - b))
    passed = max(mixed, proj) <= _scaled_tol(tol, t, b)
    return ConsistencyReport(mixed, proj, passed)


def check_norm_bound(Tt: TildeOperator, tol: float = DEFAULT_TOL) -> tuple[float, bool]:
    """``(||T~||, ||T~|| <= 1 + tol)``."""
    norm = ml.operator_norm(Tt.matrix)
    return norm, norm <= 1.0 + tol
