"""Preset statistics families and colour statistics from a commutation factor.

A commutation factor is a bicharacter ``eps`` on a finite Abelian group ``G``;
given a grading ``i -> |i|`` of the generators it yields twisted flips::

    T(x*^i (x) x^j) = eps(|j|, |i|) x^j (x) x*^i
    B(x^i (x) x^j)  = eps(|i|, |j|) x^j (x) x^i
"""
from __future__ import annotations

import cmath
import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import multilinear as ml
from .exceptions import InputError, ValidationError
from .statistics_ops import DEFAULT_TOL, BraidOperator, CrossOperator

#: Largest group order for which a bicharacter table is stored.
MAX_GROUP_ORDER = 64


@dataclass(frozen=True)
class AbelianGroup:
    """``Z_{m_1} + ... + Z_{m_r}``; elements are integer tuples reduced mod ``factors``."""

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(m) for m in self.factors)
        if not factors or any(m < 1 for m in factors):
            raise InputError(f"cyclic orders must be positive, got {self.factors}")
        object.__setattr__(self, "factors", factors)
        if self.order > MAX_GROUP_ORDER:
            raise InputError(f"group order {self.order} exceeds {MAX_GROUP_ORDER}")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(m) for m in self.factors)))

    def element(self, value) -> tuple[int, ...]:
        if isinstance(value, (int, np.integer)):
            value = (int(value),)
        value = tuple(int(v) for v in value)
        if len(value) != len(self.factors):
            raise InputError(f"element {value} has wrong rank for group {self.factors}")
        return tuple(v % m for v, m in zip(value, self.factors))

    def add(self, a, b) -> tuple[int, ...]:
        a, b = self.element(a), self.element(b)
        return tuple((x + y) % m for x, y, m in zip(a, b, self.factors))

    def index(self, a) -> int:
        """Position of ``a`` in :meth:`elements` order."""
        idx = 0
        for v, m in zip(self.element(a), self.factors):
            idx = idx * m + v
        return idx


@dataclass(frozen=True, eq=False)
class Bicharacter:
    """Explicit table ``table[index(a), index(b)] = eps(a, b)``."""

    group: AbelianGroup
    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=complex)
        n = self.group.order
        if t.shape != (n, n):
            raise InputError(f"epsilon table must be {n}x{n}, got shape {t.shape}")
        if not np.all(np.isfinite(t)):
            raise InputError("epsilon table entries must be finite")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_function(cls, group: AbelianGroup, fn: Callable) -> "Bicharacter":
        elems = group.elements()
        table = [[complex(fn(a, b)) for b in elems] for a in elems]
        return cls(group, np.array(table))

    def __call__(self, a, b) -> complex:
        return complex(self.table[self.group.index(a), self.group.index(b)])


def parity_bicharacter(group: AbelianGroup) -> Bicharacter:
    """``eps(a, b) = (-1)^(sum_r a_r b_r)`` over the even-order factors (1 on odd ones)."""
    even = [m % 2 == 0 for m in group.factors]

    def eps(a, b):
        s = sum(x * y for x, y, e in zip(a, b, even) if e)
        return (-1) ** s

    return Bicharacter.from_function(group, eps)


def root_of_unity_bicharacter(m: int, power: int = 1) -> Bicharacter:
    """``eps(a, b) = exp(2 pi i power a b / m)`` on ``Z_m``."""
    group = AbelianGroup((m,))
    return Bicharacter.from_function(
        group, lambda a, b: cmath.exp(2j * math.pi * power * a[0] * b[0] / m)
    )


@dataclass(frozen=True)
class BicharacterReport:
    bicharacter_ok: bool
    symmetric_ok: bool
    max_bicharacter_residual: float
    max_symmetry_residual: float


def check_bicharacter(epsilon: Bicharacter, tol: float = DEFAULT_TOL) -> BicharacterReport:
    """Exhaustively check both multiplicativity laws and ``eps(a,b) eps(b,a) = 1``."""
    G = epsilon.group
    elems = G.elements()
    bi = 0.0
    for a, b, c in itertools.product(elems, repeat=3):
        bc = G.add(b, c)
        ab = G.add(a, b)
        bi = max(
            bi,
            abs(epsilon(a, bc) - epsilon(a, b) * epsilon(a, c)),
            abs(epsilon(ab, c) - epsilon(a, c) * epsilon(b, c)),
        )
    sym = max(abs(epsilon(a, b) * epsilon(b, a) - 1.0) for a, b in itertools.product(elems, repeat=2))
    return BicharacterReport(bi <= tol, sym <= tol, bi, sym)


@dataclass(frozen=True)
class Grading:
    degrees: tuple[tuple[int, ...], ...]

    @property
    def N(self) -> int:
        return len(self.degrees)


@dataclass(eq=False)
class StatisticsSpec:
    name: str
    N: int
    cross: CrossOperator
    braid: BraidOperator | None = None
    parameters: dict = field(default_factory=dict)

    def same_operators(self, other: "StatisticsSpec") -> bool:
        if self.cross != other.cross:
            return False
        if (self.braid is None) != (other.braid is None):
            return False
        return self.braid is None or self.braid == other.braid


def _check_N(N: int) -> int:
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise InputError(f"dimension must be a positive integer, got {N!r}")
    return int(N)


def family_boltzmann(N: int) -> StatisticsSpec:
    """Infinite (Boltzmann) statistics: ``T = 0``, no braid."""
    N = _check_N(N)
    return StatisticsSpec("boltzmann", N, CrossOperator(np.zeros((N * N, N * N))))


def family_boson(N: int) -> StatisticsSpec:
    N = _check_N(N)
    tau = ml.flip(N)
    return StatisticsSpec("boson", N, CrossOperator(tau), BraidOperator(tau))


def family_fermion(N: int) -> StatisticsSpec:
    """Fermions as Z_2 colour statistics with every generator odd."""
    N = _check_N(N)
    group = AbelianGroup((2,))
    spec = family_color(group, parity_bicharacter(group), Grading(((1,),) * N))
    spec.name = "fermion"
    return spec


def family_quon(N: int, q: float) -> StatisticsSpec:
    """``T = q tau``. No braid: for ``|q| < 1`` no nontrivial braid quotient exists."""
    N = _check_N(N)
    q = float(q)
    if abs(q) > 1:
        warnings.warn(f"|q| = {abs(q)} > 1 violates the norm bound", stacklevel=2)
    return StatisticsSpec("quon", N, CrossOperator(q * ml.flip(N)), parameters={"q": q})


def color_operators(epsilon: Bicharacter, degrees: Grading) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of the twisted flips ``(T, B)``."""
    N = degrees.N
    T = np.zeros((N * N, N * N), dtype=complex)
    B = np.zeros((N * N, N * N), dtype=complex)
    for i, j in itertools.product(range(N), repeat=2):
        di, dj = degrees.degrees[i], degrees.degrees[j]
        T[j * N + i, i * N + j] = epsilon(dj, di)
        B[j * N + i, i * N + j] = epsilon(di, dj)
    return T, B


def family_color(group: AbelianGroup, epsilon: Bicharacter, degrees: Grading) -> StatisticsSpec:
    """Colour statistics. Raises ValidationError if ``epsilon`` is not a bicharacter.

    A non-symmetric bicharacter is accepted (with a warning); its flag is kept in
    ``parameters`` so that callers can decide.
    """
    if epsilon.group != group:
        raise InputError("epsilon is defined on a different group")
    if degrees.N < 1:
        raise InputError("at least one generator degree is required")
    degrees = Grading(tuple(group.element(d) for d in degrees.degrees))
    report = check_bicharacter(epsilon)
    if not report.bicharacter_ok:
        raise ValidationError(
            f"epsilon violates the bicharacter laws (residual {report.max_bicharacter_residual:.3e})"
        )
    if not report.symmetric_ok:
        warnings.warn("epsilon is not symmetric: eps(a,b) eps(b,a) != 1", stacklevel=2)
    T, B = color_operators(epsilon, degrees)
    return StatisticsSpec(
        "color",
        degrees.N,
        CrossOperator(T),
        BraidOperator(B),
        parameters={
            "group": list(group.factors),
            "degrees": [list(d) for d in degrees.degrees],
            "symmetric": report.symmetric_ok,
        },
    )


def load_custom(cross, braid=None, name: str = "custom") -> StatisticsSpec:
    """Wrap user matrices; no algebraic checks are performed here."""
    T = CrossOperator(cross)
    B = None if braid is None else BraidOperator(braid)
    if B is not None and B.N != T.N:
        raise InputError(f"braid has N={B.N} but cross has N={T.N}")
    return StatisticsSpec(name, T.N, T, B)

