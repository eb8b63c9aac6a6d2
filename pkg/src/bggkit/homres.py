"""Minimal free resolutions: covers, syzygies, cosyzygies and Betti tables."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import qlinalg as ql
from .grmodule import (DegreewiseModule, GradedMap, ModuleError, cover, graded_dual,
                       syzygy_of)


def projective_cover(M: DegreewiseModule) -> tuple[DegreewiseModule, GradedMap]:
    """Minimal free module P with a surjection p: P -> M."""
    c = cover(M)
    P = c.free
    mats = {d: c.p(d) for d in P.degrees() if M.dim(d) and P.dim(d)}
    return P, GradedMap(P, M, mats)


def syzygy(M: DegreewiseModule) -> DegreewiseModule:
    """Kernel of the minimal projective cover."""
    return syzygy_of(M)


def injective_envelope(M: DegreewiseModule) -> DegreewiseModule:
    """Dual of the projective cover of the dual; a free module over R."""
    return graded_dual(projective_cover(graded_dual(M))[0])


def cosyzygy(M: DegreewiseModule) -> DegreewiseModule:
    if M.kind != "exterior":
        raise ModuleError("cosyzygy is defined for exterior-algebra modules")
    hit = M._cache.get("cosyz")
    if hit is None:
        hit = M._cache["cosyz"] = graded_dual(syzygy(graded_dual(M)))
    return hit


def generator_degrees(M: DegreewiseModule) -> list[int]:
    return list(cover(M).gen_degrees)


@dataclass
class BettiTable:
    entries: dict[tuple[int, int], int]
    bound: int

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def row(self, i: int) -> dict[int, int]:
        return {j: b for (ii, j), b in sorted(self.entries.items()) if ii == i}

    def total(self, i: int) -> int:
        return sum(self.row(i).values())

    def render(self) -> str:
        """Grid with rows j - i and columns i."""
        if not self.entries:
            return "(zero)"
        offs = sorted({j - i for i, j in self.entries})
        width = max(len(str(v)) for v in self.entries.values()) + 1
        head = "      " + "".join(f"{i:>{width}}" for i in range(self.bound + 1))
        lines = [head]
        for o in offs:
            cells = []
            for i in range(self.bound + 1):
                v = self.entries.get((i, i + o), 0)
                cells.append(f"{(v if v else '.'):>{width}}")
            lines.append(f"{o:>4}: " + "".join(cells))
        return "\n".join(lines)


def syzygy_chain(M: DegreewiseModule, length: int) -> list[DegreewiseModule]:
    """[M, Omega M, ..., Omega^length M]."""
    out = [M]
    for _ in range(length):
        out.append(syzygy(out[-1]))
    return out


def betti_table(M: DegreewiseModule, bound: int) -> BettiTable:
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    entries = {}
    for i, K in enumerate(syzygy_chain(M, bound)):
        for j, b in Counter(generator_degrees(K)).items():
            entries[(i, j)] = b
    return BettiTable(entries, bound)


@dataclass
class LinearityReport:
    linear: bool
    bound: int
    generation_degree: int | None
    witness: tuple[int, int] | None = None
    table: BettiTable | None = field(default=None, repr=False)

    def __bool__(self):
        return self.linear


def single_generation_degree(M: DegreewiseModule) -> int | None:
    degs = sorted(set(generator_degrees(M)))
    if len(degs) > 1:
        raise ModuleError(f"module is generated in several degrees: {degs}")
    return degs[0] if degs else None


def is_linear(M: DegreewiseModule, bound: int) -> LinearityReport:
    """Is the minimal resolution linear through homological degree ``bound``?"""
    g = single_generation_degree(M)
    table = betti_table(M, bound)
    if g is None:
        return LinearityReport(True, bound, None, None, table)
    for (i, j) in sorted(table.entries):
        if j - g != i:
            return LinearityReport(False, bound, g, (i, j - g), table)
    return LinearityReport(True, bound, g, None, table)
