"""The three graded algebras: exterior R, polynomial S (windowed) and S/J^2.

Monomials are tuples of variable indices: strictly increasing for the
exterior algebra, weakly increasing for the polynomial ring, and of length
at most one for the two-step algebra.  A tuple ``(i0, ..., ik)`` stands for
the product ``x_i0 x_i1 ... x_ik`` in that order, so acting on a module it
is ``A_i0 A_i1 ... A_ik`` (rightmost first).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb

KINDS = ("exterior", "symmetric", "twostep")


@dataclass(frozen=True)
class Relation:
    """A quadratic relation sum c * A_a[d+1] A_b[d] = 0, one per (a, b, c) term."""

    name: str
    pair: tuple[int, int]
    terms: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class AlgebraKind:
    kind: str
    nvars: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown algebra kind {self.kind!r}; expected one of {KINDS}")
        if self.nvars < 2:
            raise ValueError("nvars must be at least 2")

    @property
    def n(self) -> int:
        """Dimension of the projective space, nvars - 1."""
        return self.nvars - 1

    def degree_dim(self, d: int) -> int:
        return degree_dim(self, d)

    def monomials(self, d: int) -> list[tuple[int, ...]]:
        return monomials(self, d)

    def multiply(self, j: int, mono: tuple[int, ...]):
        return multiply(self, j, mono)

    def relations(self) -> tuple[Relation, ...]:
        return relations(self)

    def __str__(self):
        return f"{self.kind}[{self.nvars}]"


def exterior(nvars: int) -> AlgebraKind:
    return AlgebraKind("exterior", nvars)


def symmetric(nvars: int) -> AlgebraKind:
    return AlgebraKind("symmetric", nvars)


def twostep(nvars: int) -> AlgebraKind:
    return AlgebraKind("twostep", nvars)


def degree_dim(a: AlgebraKind, d: int) -> int:
    n = a.nvars - 1
    if d < 0:
        return 0
    if a.kind == "exterior":
        return comb(n + 1, d)
    if a.kind == "symmetric":
        return comb(n + d, n)
    return {0: 1, 1: n + 1}.get(d, 0)


@lru_cache(maxsize=None)
def _monomials(kind: str, nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    if d < 0:
        return ()
    if kind == "exterior":
        return tuple(combinations(range(nvars), d))
    if kind == "symmetric":
        return tuple(combinations_with_replacement(range(nvars), d))
    if d == 0:
        return ((),)
    if d == 1:
        return tuple((j,) for j in range(nvars))
    return ()


def monomials(a: AlgebraKind, d: int) -> list[tuple[int, ...]]:
    """Monomial basis of degree d in lexicographic order."""
    return list(_monomials(a.kind, a.nvars, d))


def monomial_sign(A, B) -> int:
    """Sign of x_A * x_B = sign * x_{A u B} in the exterior algebra (0 if they meet)."""
    A, B = sorted(A), sorted(B)
    if set(A) & set(B):
        return 0
    inversions = sum(1 for a in A for b in B if a > b)
    return -1 if inversions % 2 else 1


def multiply(a: AlgebraKind, j: int, mono: tuple[int, ...]):
    """x_j * mono as (sign, monomial), or None when the product vanishes."""
    if a.kind == "exterior":
        if j in mono:
            return None
        below = sum(1 for i in mono if i < j)
        return (-1 if below % 2 else 1), tuple(sorted(mono + (j,)))
    if a.kind == "symmetric":
        return 1, tuple(sorted(mono + (j,)))
    if mono:
        return None
    return 1, (j,)


@lru_cache(maxsize=None)
def _relations(kind: str, nvars: int) -> tuple[Relation, ...]:
    rels = []
    if kind == "exterior":
        for j in range(nvars):
            rels.append(Relation("square-zero", (j, j), ((j, j, 1),)))
        for j, k in combinations(range(nvars), 2):
            rels.append(Relation("anticommute", (j, k), ((j, k, 1), (k, j, 1))))
    elif kind == "symmetric":
        for j, k in combinations(range(nvars), 2):
            rels.append(Relation("commute", (j, k), ((j, k, 1), (k, j, -1))))
    else:
        for j in range(nvars):
            for k in range(nvars):
                rels.append(Relation("product-zero", (j, k), ((j, k, 1),)))
    return tuple(rels)


def relations(a: AlgebraKind) -> tuple[Relation, ...]:
    return _relations(a.kind, a.nvars)
