"""Dense complex tensor-index engine.

Index convention (used everywhere in the package): the multi-index
``(j_1, ..., j_n)`` over an alphabet of size ``N`` corresponds to the flat
index ``sum_k j_k * N**(n - k)``, i.e. the leftmost tensor factor is the most
significant digit. This is exactly the convention of :func:`numpy.kron`.

All indices are 0-based. A generator written ``x^1 .. x^N`` in the literature
is ``0 .. N-1`` here.
"""
from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

import numpy as np

from .exceptions import InputError, SizeLimitError

#: Largest allowed side length of any matrix built by this module.
MAX_LEVEL_SIZE = 65536


def as_complex_matrix(data, name: str = "matrix") -> np.ndarray:
    """Coerce ``data`` to a finite 2-D complex array, raising InputError otherwise."""
    try:
        arr = np.array(data, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not numeric ({exc})") from None
    if arr.ndim != 2:
        raise InputError(f"{name}: expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: entries must be finite")
    return arr


def _check_size(size: int) -> None:
    if size > MAX_LEVEL_SIZE:
        raise SizeLimitError(f"dimension {size} exceeds the maximum level size {MAX_LEVEL_SIZE}")


def level_size(N: int, n: int) -> int:
    """Dimension ``N**n`` of the level-``n`` tensor power, with the size limit enforced."""
    size = N**n
    _check_size(size)
    return size


def one_particle_dim(A: np.ndarray) -> int:
    """Return ``N`` for a square matrix of side ``N**2``."""
    rows, cols = A.shape
    N = math.isqrt(rows)
    if rows != cols or N * N != rows:
        raise InputError(f"expected an N^2 x N^2 matrix, got shape {A.shape}")
    return N


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product ``A (x) B`` with the leftmost-most-significant convention."""
    _check_size(A.shape[0] * B.shape[0])
    _check_size(A.shape[1] * B.shape[1])
    return np.kron(A, B)


def identity(size: int) -> np.ndarray:
    return np.eye(size, dtype=complex)


def place(A: np.ndarray, i: int, n: int) -> np.ndarray:
    """Embed a two-leg operator at legs ``(i, i+1)`` of an ``n``-fold tensor power.

    Returns ``id^(i-1) (x) A (x) id^(n-i-1)``. Positions are 1-based, ``1 <= i <= n-1``.
    """
    N = one_particle_dim(A)
    if not 1 <= i <= n - 1:
        raise InputError(f"position {i} out of range for arity {n}")
    level_size(N, n)
    left = identity(N ** (i - 1))
    right = identity(N ** (n - i - 1))
    return np.kron(np.kron(left, A), right)


def apply_placed(A: np.ndarray, i: int, n: int, X: np.ndarray) -> np.ndarray:
    """Compute ``place(A, i, n) @ X`` without materialising the big matrix.

    ``X`` has ``N**n`` rows and any number of columns.
    """
    N = one_particle_dim(A)
    if not 1 <= i <= n - 1:
        raise InputError(f"position {i} out of range for arity {n}")
    cols = X.shape[1]
    Xr = X.reshape(N ** (i - 1), N * N, N ** (n - i - 1), cols)
    out = np.einsum("ab,xbyc->xayc", A, Xr)
    return out.reshape(N**n, cols)


def rmul_placed(X: np.ndarray, A: np.ndarray, i: int, n: int) -> np.ndarray:
    """Compute ``X @ place(A, i, n)`` without materialising the big matrix."""
    N = one_particle_dim(A)
    if not 1 <= i <= n - 1:
        raise InputError(f"position {i} out of range for arity {n}")
    rows = X.shape[0]
    Xr = X.reshape(rows, N ** (i - 1), N * N, N ** (n - i - 1))
    out = np.einsum("rxay,ab->rxby", Xr, A)
    return out.reshape(rows, N**n)


def adjoint(A: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(A).T


def operator_norm(A: np.ndarray) -> float:
    """Largest singular value."""
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def max_abs(A: np.ndarray) -> float:
    """Entrywise max-modulus norm, the residual norm used throughout the package."""
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(A)))


def flat_index(letters: Sequence[int], N: int) -> int:
    """Flat position of a multi-index (leftmost letter most significant)."""
    idx = 0
    for j in letters:
        if not 0 <= j < N:
            raise InputError(f"letter {j} outside alphabet of size {N}")
        idx = idx * N + j
    return idx


def multi_index(flat: int, N: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`flat_index`."""
    if not 0 <= flat < N**n:
        raise InputError(f"flat index {flat} outside level of size {N**n}")
    letters = []
    for _ in range(n):
        flat, r = divmod(flat, N)
        letters.append(r)
    return tuple(reversed(letters))


def multi_indices(N: int, n: int) -> Iterator[tuple[int, ...]]:
    """All multi-indices of length ``n`` in flat-index order."""
    return itertools.product(range(N), repeat=n)


def basis_vector(letters: Sequence[int], N: int) -> np.ndarray:
    v = np.zeros(N ** len(letters), dtype=complex)
    v[flat_index(letters, N)] = 1.0
    return v


def flip(N: int) -> np.ndarray:
    """The transposition ``x^i (x) x^j -> x^j (x) x^i`` on ``E (x) E``."""
    tau = np.zeros((N * N, N * N), dtype=complex)
    for i in range(N):
        for j in range(N):
            tau[j * N + i, i * N + j] = 1.0
    return tau
