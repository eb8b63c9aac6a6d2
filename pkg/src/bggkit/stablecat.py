"""The stable category of graded modules over the exterior algebra."""

from __future__ import annotations

from dataclasses import dataclass

from . import qlinalg as ql
from .grmodule import (DegreewiseModule, ModuleError, cover, hom0,
                       is_isomorphic_0, shift, strip_free_summands, truncate_above)
from .homres import cosyzygy, projective_cover, syzygy


def _require_exterior(*mods):
    for M in mods:
        if M.kind != "exterior":
            raise ModuleError("stable category operations need exterior-algebra modules")


@dataclass(frozen=True)
class StableHomReport:
    hom_dim: int
    proj_factoring_dim: int

    @property
    def stable_dim(self) -> int:
        return self.hom_dim - self.proj_factoring_dim


def stable_hom0(M: DegreewiseModule, N: DegreewiseModule) -> StableHomReport:
    """Hom_0(M, N) modulo maps that factor through a free module.

    A map factors through some free module iff it factors through the
    projective cover q: P(N) -> N, so the factoring subspace is the image of
    q o - : Hom_0(M, P(N)) -> Hom_0(M, N).  Both spaces are stored as images
    of the generators of M, where post-composition with q is block diagonal.
    """
    _require_exterior(M, N)
    H = hom0(M, N)
    if H.dim == 0:
        return StableHomReport(0, 0)
    P, q = projective_cover(N)
    if P.is_zero():
        return StableHomReport(H.dim, 0)
    HP = hom0(M, P)
    if HP.dim == 0:
        return StableHomReport(H.dim, 0)
    gens = cover(M).gen_list
    Q = ql.block_diag([q.at(g) for g, _ in gens])
    fact = ql.rank(Q * HP.coords.basis)
    return StableHomReport(H.dim, fact)


def stable_dim(M: DegreewiseModule, N: DegreewiseModule) -> int:
    return stable_hom0(M, N).stable_dim


def omega_power(M: DegreewiseModule, i: int) -> DegreewiseModule:
    """Omega^i of the stripped core (cosyzygies for negative i)."""
    _require_exterior(M)
    core = strip_free_summands(M).core
    if i == 0:
        return core
    key = ("omega", i)
    hit = core._cache.get(key)
    if hit is not None:
        return hit
    step = 1 if i > 0 else -1
    prev = omega_power(M, i - step)
    out = syzygy(prev) if i > 0 else cosyzygy(prev)
    core._cache[key] = out
    return out


def tau(M: DegreewiseModule, i: int = 1) -> DegreewiseModule:
    """Omega^{2i} M (n i + i), with n = nvars - 1."""
    _require_exterior(M)
    if i < 1:
        raise ValueError("tau power must be at least 1")
    n = M.nvars - 1
    return shift(omega_power(M, 2 * i), n * i + i)


def tau_below(M: DegreewiseModule, i: int, top: int) -> DegreewiseModule:
    """tau(M, i) / tau(M, i)_{>top}, without building the full syzygies.

    Omega(X) in degrees <= H only depends on X in degrees <= H, so each
    syzygy step can work on the quotient by degrees above H.
    """
    _require_exterior(M)
    if i < 1:
        raise ValueError("tau power must be at least 1")
    core = strip_free_summands(M).core
    key = ("tau_below", i, top)
    hit = core._cache.get(key)
    if hit is not None:
        return hit
    s = (M.nvars - 1) * i + i
    H = top + s
    X = truncate_above(core, H)
    for _ in range(2 * i):
        X = truncate_above(syzygy(X), H)
    out = core._cache[key] = shift(X, s)
    return out


def stable_dim_from_tau(B: DegreewiseModule, C: DegreewiseModule, i: int) -> int:
    """stable Hom(tau^i B, C)_0 using only the degrees of tau^i B that can matter.

    Maps into C and into its projective cover P(C) vanish above the top
    degree of P(C), so the quotient of tau^i B by higher degrees has the
    same Hom spaces and the same factoring subspace.
    """
    _require_exterior(B, C)
    if C.is_zero():
        return 0
    top = max(C.hi, projective_cover(C)[0].hi)
    return stable_dim(tau_below(B, i, top), C)


def stable_dim_balanced(B: DegreewiseModule, C: DegreewiseModule, i: int) -> int:
    """stable Hom(tau^i B, C)_0 as stable Hom(Omega^i B(s), Omega^{-i} C)_0.

    Omega is an autoequivalence of the stable category, so half the
    syzygies can be moved to the target as cosyzygies.
    """
    _require_exterior(B, C)
    if i < 1:
        raise ValueError("tau power must be at least 1")
    s = (B.nvars - 1) * i + i
    return stable_dim(shift(omega_power(B, i), s), omega_power(C, -i))


@dataclass(frozen=True)
class SerreReport:
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def serre_check(X: DegreewiseModule, Y: DegreewiseModule, m: int) -> SerreReport:
    """Compare stable Hom(X, Omega^{-m} Y) with stable Hom(Y, Omega^{m+1} X (n+1))."""
    _require_exterior(X, Y)
    n = X.nvars - 1
    lhs = stable_dim(X, omega_power(Y, -m))
    rhs = stable_dim(Y, shift(omega_power(X, m + 1), n + 1))
    return SerreReport(lhs, rhs)


def is_stably_isomorphic(M: DegreewiseModule, N: DegreewiseModule) -> bool:
    _require_exterior(M, N)
    a = strip_free_summands(M).core
    b = strip_free_summands(N).core
    if a.dims != b.dims:
        return False
    return is_isomorphic_0(a, b)
