"""Creation and annihilation operators on the truncated Fock space.

Creation prepends a letter, ``a+_i (x^J) = x^i (x) x^J``. Annihilation contracts
the leftmost factor after twisting with ``R_n``::

    a_i |level n  =  (c_i (x) id^(n-1)) R_n

where ``c_i`` is the i-th coordinate functional. With this choice creation is
adjoint to annihilation for the deformed product, which :func:`verify_adjointness`
checks numerically rather than assumes.

Commutation-relation conventions
--------------------------------
``"cross"`` (default) reads the relation as
``a_i a+_j - sum_kl T^{ij}_{kl} a+_k a_l = delta_ij``: the output index ``k`` of
the cross, attached to ``x^k``, labels the creator. This is the reading that
yields the canonical relations for ``T = tau``. ``"literal"`` swaps the roles
(``a+_l a_k``); it is kept for comparison and fails for bosons.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import multilinear as ml
from .exceptions import ConstructionError, InputError
from .fock_space import QuotientLevel, p_operator, quotient_structure, r_operator
from .statistics_ops import DEFAULT_TOL, BraidOperator, CrossOperator, Pairing, tilde

CONVENTIONS = ("cross", "literal")


def creation_matrix(N: int, i: int, n: int) -> np.ndarray:
    """``a+_i`` from level ``n-1`` to level ``n`` (an ``N^n x N^(n-1)`` 0/1 matrix)."""
    if not 0 <= i < N:
        raise InputError(f"generator {i} outside 0..{N - 1}")
    if n < 1:
        raise InputError(f"creation targets levels >= 1, got {n}")
    size = ml.level_size(N, n - 1)
    e = np.zeros((N, 1), dtype=complex)
    e[i, 0] = 1.0
    return np.kron(e, ml.identity(size))


def annihilation_matrix(T: CrossOperator, i: int, n: int) -> np.ndarray:
    """``a_i`` from level ``n`` to level ``n-1``."""
    N = T.N
    if not 0 <= i < N:
        raise InputError(f"generator {i} outside 0..{N - 1}")
    if n < 1:
        raise InputError(f"annihilation acts on levels >= 1, got {n}")
    block = N ** (n - 1)
    R = r_operator(tilde(T), n)
    return R[i * block : (i + 1) * block, :].copy()


def annihilation_word(T: CrossOperator, word: Sequence[int], n: int) -> np.ndarray:
    """Annihilation by ``x*^{w_1} (x) ... (x) x*^{w_k}`` from level ``n`` to ``n-k``.

    The rightmost letter is adjacent to the state and acts first, so for ``T = 0``
    the word ``(i_2, i_1)`` sends ``x^{j_1} x^{j_2} x^{j_3}`` to
    ``delta(i_1, j_1) delta(i_2, j_2) x^{j_3}``.
    """
    k = len(word)
    if k > n:
        raise InputError(f"word of length {k} cannot act on level {n}")
    out = ml.identity(ml.level_size(T.N, n))
    for step, letter in enumerate(reversed(word)):
        out = annihilation_matrix(T, letter, n - step) @ out
    return out


@dataclass
class CrossSymmetryLadder:
    """Extension of ``R = T + g`` to ``E* (x) E^(x)l`` by moving the hole rightwards.

    For each ``l`` two branches are stored, both with the hole as the first input
    factor: ``transport[l]`` (hole carried past all ``l`` particles, ending last)
    and ``contraction[l]`` (the scalar-valued branch, hole paired with one particle).
    """

    T: CrossOperator
    transport: dict[int, np.ndarray] = field(default_factory=dict)
    contraction: dict[int, np.ndarray] = field(default_factory=dict)

    def build(self, l: int) -> None:
        T, N = self.T.matrix, self.T.N
        g = Pairing(N).matrix
        size = ml.level_size(N, l + 1)
        moved = ml.identity(size)
        contraction = np.zeros((N ** (l - 1), size), dtype=complex)
        for m in range(1, l + 1):
            # hole sits at slot m; pair it with the particle at slot m+1
            pair = np.kron(np.kron(ml.identity(N ** (m - 1)), g), ml.identity(N ** (l - m)))
            contraction = contraction + pair @ moved
            moved = ml.apply_placed(T, m, l + 1, moved)
        self.transport[l] = moved
        self.contraction[l] = contraction

    def annihilation(self, i: int, l: int) -> np.ndarray:
        """Scalar branch evaluated on ``x*^i (x) (.)``: level ``l`` to ``l-1``."""
        if l not in self.contraction:
            self.build(l)
        N = self.T.N
        block = N**l
        return self.contraction[l][:, i * block : (i + 1) * block]


@dataclass
class WickRepresentation:
    """Matrices of all creation/annihilation operators up to level ``n_max``.

    ``creation[i][n]`` maps level ``n-1`` to ``n``; ``annihilation[i][n]`` maps
    level ``n`` to ``n-1`` (``n = 1..n_max``).
    """

    T: CrossOperator
    n_max: int
    creation: list[dict[int, np.ndarray]]
    annihilation: list[dict[int, np.ndarray]]
    residuals: dict[str, float] = field(default_factory=dict)
    convention: str = "cross"

    @property
    def N(self) -> int:
        return self.T.N

    def gram(self, n: int) -> np.ndarray:
        return p_operator(tilde(self.T), n)


def build_representation(T: CrossOperator, n_max: int) -> WickRepresentation:
    if n_max < 1:
        raise InputError(f"n_max must be >= 1, got {n_max}")
    N = T.N
    Tt = tilde(T)
    creation: list[dict[int, np.ndarray]] = [{} for _ in range(N)]
    annihilation: list[dict[int, np.ndarray]] = [{} for _ in range(N)]
    for n in range(1, n_max + 1):
        R = r_operator(Tt, n)
        block = N ** (n - 1)
        for i in range(N):
            creation[i][n] = creation_matrix(N, i, n)
            annihilation[i][n] = R[i * block : (i + 1) * block, :]
    return WickRepresentation(T=T, n_max=n_max, creation=creation, annihilation=annihilation)


def _as_rep(T_or_rep, n_max: int) -> WickRepresentation:
    if isinstance(T_or_rep, WickRepresentation):
        return T_or_rep
    return build_representation(T_or_rep, n_max)


def verify_adjointness(T, n_max: int, tol: float = DEFAULT_TOL) -> float:
    """``max_{i,n} ||(A+_i)^dag G_n - G_{n-1} A-_i||``.

    ``tol`` is accepted for interface symmetry; the caller compares the residual.
    """
    rep = _as_rep(T, n_max)
    Tt = tilde(rep.T)
    worst = 0.0
    for n in range(1, rep.n_max + 1):
        G_n = p_operator(Tt, n)
        G_prev = p_operator(Tt, n - 1)
        for i in range(rep.N):
            lhs = ml.adjoint(rep.creation[i][n]) @ G_n
            rhs = G_prev @ rep.annihilation[i][n]
            worst = max(worst, ml.max_abs(lhs - rhs))
    rep.residuals["adjointness"] = worst
    return worst


def _cross_coefficients(T: CrossOperator, convention: str) -> np.ndarray:
    """Array ``c[i, j, p, q]``: coefficient of ``a+_p a_q`` in ``a_i a+_j``."""
    if convention not in CONVENTIONS:
        raise InputError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    t = T.tensor()  # t[k, l, i, j] = T^{ij}_{kl}
    if convention == "cross":
        return np.einsum("klij->ijkl", t)
    return np.einsum("klij->ijlk", t)


def _crel_residual(
    N: int,
    coeffs: np.ndarray,
    cre,
    ann,
    dims: Sequence[int],
    n_max: int,
) -> float:
    """Residual of the cross relation on levels ``0..n_max-1``.

    ``cre(i, n)``/``ann(i, n)`` return (possibly induced) operators between
    levels ``n-1`` and ``n``; ``dims[n]`` is the dimension of level ``n``.
    """
    worst = 0.0
    for m in range(n_max):
        eye = np.eye(dims[m], dtype=complex)
        if m >= 1:
            normal = np.array([[cre(p, m) @ ann(q, m) for q in range(N)] for p in range(N)])
        for i in range(N):
            for j in range(N):
                lhs = ann(i, m + 1) @ cre(j, m + 1)
                if m >= 1:
                    lhs = lhs - np.einsum("pq,pqab->ab", coeffs[i, j], normal)
                if i == j:
                    lhs = lhs - eye
                worst = max(worst, ml.max_abs(lhs))
    return worst


def verify_crel(T, n_max: int, tol: float = DEFAULT_TOL, convention: str = "cross") -> float:
    """Max residual of ``a_i a+_j - T-term - delta_ij`` over levels ``0..n_max-1``.

    The top level is excluded because ``a_i a+_j`` would leave the truncation.
    """
    rep = _as_rep(T, n_max)
    N = rep.N
    coeffs = _cross_coefficients(rep.T, convention)
    dims = [N**m for m in range(rep.n_max + 1)]
    worst = _crel_residual(
        N,
        coeffs,
        lambda i, n: rep.creation[i][n],
        lambda i, n: rep.annihilation[i][n],
        dims,
        rep.n_max,
    )
    rep.residuals[f"crel[{convention}]"] = worst
    rep.convention = convention
    return worst


def verify_representation_theorem(T, n_max: int, tol: float = DEFAULT_TOL) -> float:
    """Generator-level check of the Wick-algebra representation condition.

    With ``Psi`` restricted to ``E* (x) E`` equal to ``T + g`` the condition on
    generators is exactly the cross commutation relation, so this re-runs
    :func:`verify_crel` and records the result under its own name.
    """
    rep = _as_rep(T, n_max)
    res = verify_crel(rep, n_max, tol)
    rep.residuals["representation_theorem"] = res
    return res


@dataclass
class QuotientRepresentation:
    """Creation/annihilation operators induced on the braid quotients.

    Coordinates at level ``n`` are taken in ``levels[n].complement_basis``.
    """

    rep: WickRepresentation
    B: BraidOperator
    levels: list[QuotientLevel]
    creation: list[dict[int, np.ndarray]]
    annihilation: list[dict[int, np.ndarray]]
    descent_residual: float

    @property
    def dims(self) -> list[int]:
        return [lv.quotient_dim for lv in self.levels]


def build_quotient_representation(
    T,
    B: BraidOperator,
    n_max: int,
    tol: float = DEFAULT_TOL,
    levels: Sequence[QuotientLevel] | None = None,
) -> QuotientRepresentation:
    """Induce the Fock operators on ``TE / I`` level by level.

    ``levels`` may supply precomputed quotient levels ``0..n_max``. Raises
    ConstructionError when some ideal level is not inside the Gram kernel.
    """
    rep = _as_rep(T, n_max)
    Tt = tilde(rep.T)
    N = rep.N
    if levels is None:
        levels = [quotient_structure(Tt, B, n, tol) for n in range(rep.n_max + 1)]
    levels = list(levels[: rep.n_max + 1])
    bad = [lv.n for lv in levels if not lv.well_defined]
    if bad:
        raise ConstructionError(f"quotient is ill-defined at levels {bad}: ideal not in Gram kernel")
    creation: list[dict[int, np.ndarray]] = [{} for _ in range(N)]
    annihilation: list[dict[int, np.ndarray]] = [{} for _ in range(N)]
    descent = 0.0
    for n in range(1, rep.n_max + 1):
        C_hi, C_lo = levels[n].complement_basis, levels[n - 1].complement_basis
        V_hi, V_lo = levels[n].ideal_basis, levels[n - 1].ideal_basis
        for i in range(N):
            Ap, Am = rep.creation[i][n], rep.annihilation[i][n]
            creation[i][n] = ml.adjoint(C_hi) @ Ap @ C_lo
            annihilation[i][n] = ml.adjoint(C_lo) @ Am @ C_hi
            # ideal vectors must map into the ideal for the induced maps to be well defined
            descent = max(
                descent,
                ml.max_abs(ml.adjoint(C_hi) @ Ap @ V_lo),
                ml.max_abs(ml.adjoint(C_lo) @ Am @ V_hi),
            )
    return QuotientRepresentation(rep, B, levels, creation, annihilation, descent)


@dataclass(frozen=True)
class BrelReport:
    aa_residual: float
    cc_residual: float
    crel_residual: float
    descent_residual: float
    quotient_dims: tuple[int, ...]


def verify_brel(
    T,
    B: BraidOperator,
    n_max: int,
    tol: float = DEFAULT_TOL,
    quotient: QuotientRepresentation | None = None,
) -> BrelReport:
    """Braided relations on the quotient representation.

    * creators: ``a+_i a+_j - sum_kl B^{ij}_{kl} a+_k a+_l = 0`` (the ideal relation
      ``x^i x^j = B(x^i x^j)`` read through left multiplication);
    * annihilators: ``a_i a_j - sum_kl conj(B^{ji}_{kl}) a_l a_k = 0`` (adjoint of
      the creator relation);
    * the cross relation, evaluated on the quotient.
    """
    q = quotient or build_quotient_representation(T, B, n_max, tol)
    N = q.rep.N
    b = B.tensor()  # b[k, l, i, j] = B^{ij}_{kl}
    dims = q.dims
    cre = lambda i, n: q.creation[i][n]  # noqa: E731
    ann = lambda i, n: q.annihilation[i][n]  # noqa: E731

    cc = 0.0
    for m in range(q.rep.n_max - 1):
        pairs = np.array([[cre(k, m + 2) @ cre(l, m + 1) for l in range(N)] for k in range(N)])
        for i in range(N):
            for j in range(N):
                lhs = pairs[i, j] - np.einsum("kl,klab->ab", b[:, :, i, j], pairs)
                cc = max(cc, ml.max_abs(lhs))

    aa = 0.0
    for m in range(2, q.rep.n_max + 1):
        pairs = np.array([[ann(p, m - 1) @ ann(r, m) for r in range(N)] for p in range(N)])
        for i in range(N):
            for j in range(N):
                # sum_kl conj(B^{ji}_{kl}) a_l a_k = sum_kl conj(b[k,l,j,i]) pairs[l,k]
                rhs = np.einsum("kl,lkab->ab", np.conj(b[:, :, j, i]), pairs)
                aa = max(aa, ml.max_abs(pairs[i, j] - rhs))

    coeffs = _cross_coefficients(q.rep.T, "cross")
    crel = _crel_residual(N, coeffs, cre, ann, dims, q.rep.n_max)
    q.rep.residuals.update(brel_aa=aa, brel_cc=cc, brel_crel=crel)
    return BrelReport(aa, cc, crel, q.descent_residual, tuple(dims))


def number_operator_spectrum(
    T,
    B: BraidOperator | None,
    n_max: int,
    tol: float = DEFAULT_TOL,
    quotient: QuotientRepresentation | None = None,
) -> np.ndarray:
    """Eigenvalues of ``sum_i a+_i a_i`` on levels ``0..n_max-1`` (of the quotient if ``B``)."""
    if B is None:
        rep = _as_rep(T, n_max)
        cre = lambda i, n: rep.creation[i][n]  # noqa: E731
        ann = lambda i, n: rep.annihilation[i][n]  # noqa: E731
        dims = [rep.N**m for m in range(n_max + 1)]
        N = rep.N
    else:
        q = quotient or build_quotient_representation(T, B, n_max, tol)
        cre = lambda i, n: q.creation[i][n]  # noqa: E731
        ann = lambda i, n: q.annihilation[i][n]  # noqa: E731
        dims = q.dims
        N = q.rep.N
    values = [0.0]  # vacuum
    for m in range(1, n_max):
        if dims[m] == 0:
            continue
        number = sum(cre(i, m) @ ann(i, m) for i in range(N))
        values.extend(np.linalg.eigvals(number))
    return np.sort_complex(np.asarray(values, dtype=complex))
