"""Graded modules presented degreewise.

A module is a finite list of graded pieces Q^{dims[d]} together with, for
each variable x_j and degree d, the matrix ``A_j[d]`` of x_j acting from
degree d to degree d + 1.  Polynomial-ring modules are finite windows
[lo, hi] of infinite modules: the data is exactly the quotient module
X / X_{>hi}, so every construction below is an honest finite-dimensional
computation over S and relations landing above ``hi`` are vacuous.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_mat

from . import qlinalg as ql
from .algebra import AlgebraKind, monomials, multiply, relations
from .qlinalg import RatMatrix, Subspace


class ModuleError(ValueError):
    pass


class WindowError(ModuleError):
    pass


class DegreewiseModule:
    """Graded module given by piece dimensions and per-variable action maps."""

    def __init__(self, algebra: AlgebraKind, dims: Mapping[int, int],
                 action: Mapping[tuple[int, int], RatMatrix] | None = None,
                 window: tuple[int, int] | None = None):
        self.algebra = algebra
        action = action or {}
        support = [d for d, k in dims.items() if k > 0]
        if any(k < 0 for k in dims.values()):
            raise ModuleError("negative piece dimension")
        if algebra.kind == "symmetric":
            if window is None:
                window = (min(support), max(support)) if support else (0, -1)
            lo, hi = window
            if any(d > hi or d < lo for d in support):
                raise WindowError(f"pieces outside window {window}")
            if support:
                lo = min(support)
            else:
                lo = hi + 1
        else:
            if support:
                lo, hi = min(support), max(support)
            else:
                lo, hi = 0, -1
        self.lo, self.hi = lo, hi
        self._dims = tuple(dims.get(d, 0) for d in range(lo, hi + 1))
        self._act: dict[tuple[int, int], RatMatrix] = {}
        for (j, d), A in action.items():
            if not 0 <= j < algebra.nvars:
                raise ModuleError(f"variable index {j} out of range")
            r, c = A.nrows(), A.ncols()
            if (r, c) != (self.dim(d + 1), self.dim(d)):
                if r * c == 0 and self.dim(d + 1) * self.dim(d) == 0:
                    continue
                raise ModuleError(
                    f"action matrix for x_{j} at degree {d} has shape {(r, c)}, "
                    f"expected {(self.dim(d + 1), self.dim(d))}")
            if r and c and not ql.is_zero(A):
                self._act[(j, d)] = A
        self._cache: dict = {}

    @property
    def nvars(self) -> int:
        return self.algebra.nvars

    @property
    def kind(self) -> str:
        return self.algebra.kind

    @property
    def truncated(self) -> bool:
        """True for windowed polynomial-ring modules."""
        return self.algebra.kind == "symmetric"

    @property
    def window(self) -> tuple[int, int]:
        return self.lo, self.hi

    def dim(self, d: int) -> int:
        if self.lo <= d <= self.hi:
            return self._dims[d - self.lo]
        return 0

    @property
    def dims(self) -> dict[int, int]:
        return {d: k for d, k in zip(range(self.lo, self.hi + 1), self._dims) if k}

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def total_dim(self) -> int:
        return sum(self._dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def act(self, j: int, d: int) -> RatMatrix:
        A = self._act.get((j, d))
        if A is None:
            return fmpq_mat(self.dim(d + 1), self.dim(d))
        return A

    def actions(self) -> dict[tuple[int, int], RatMatrix]:
        return dict(self._act)

    def __eq__(self, other):
        if not isinstance(other, DegreewiseModule):
            return NotImplemented
        if self.algebra != other.algebra or self.dims != other.dims:
            return False
        if self.truncated and self.hi != other.hi:
            return False
        return self._act == other._act

    def __hash__(self):
        return hash((self.algebra, tuple(sorted(self.dims.items()))))

    def __repr__(self):
        pieces = ", ".join(f"{d}:{k}" for d, k in self.dims.items())
        w = f", window=[{self.lo},{self.hi}]" if self.truncated else ""
        return f"DegreewiseModule({self.algebra}, {{{pieces}}}{w})"


def zero_module(a: AlgebraKind, hi: int = 0) -> DegreewiseModule:
    return DegreewiseModule(a, {}, window=(hi + 1, hi) if a.kind == "symmetric" else None)


def _same_window(M: DegreewiseModule, N: DegreewiseModule):
    if M.algebra != N.algebra:
        raise ModuleError(f"algebra mismatch: {M.algebra} vs {N.algebra}")
    if M.truncated and M.hi != N.hi:
        raise WindowError(f"window tops differ: {M.hi} vs {N.hi}")


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    relation: str
    pair: tuple[int, int]
    degree: int


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: Violation | None = None

    def __bool__(self):
        return self.ok


def relation_residue(M: DegreewiseModule, rel, d: int) -> RatMatrix:
    acc = fmpq_mat(M.dim(d + 2), M.dim(d))
    for a, b, c in rel.terms:
        acc += c * (M.act(a, d + 1) * M.act(b, d))
    return acc


def validate(M: DegreewiseModule) -> ValidationReport:
    """Check every quadratic relation of the algebra on every degree."""
    for d in M.degrees():
        if M.dim(d) == 0 or M.dim(d + 2) == 0:
            continue
        for rel in relations(M.algebra):
            if not ql.is_zero(relation_residue(M, rel, d)):
                return ValidationReport(False, Violation(rel.name, rel.pair, d))
    return ValidationReport(True)


# --------------------------------------------------------------------------
# constructors


def construct_free(a: AlgebraKind, generator_degrees: Iterable[int],
                   hi: int | None = None) -> DegreewiseModule:
    """Direct sum of rank-one free modules with generators in the given degrees.

    Polynomial-ring free modules need the window top ``hi``.  The basis of
    each degree is the list of labels (generator index, monomial), ordered
    by generator then monomial.
    """
    gens = sorted(generator_degrees)
    if a.kind == "symmetric" and hi is None:
        raise WindowError("a free polynomial-ring module needs a window top hi")
    labels: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
    top = {"exterior": a.nvars, "twostep": 1}.get(a.kind)
    for i, g in enumerate(gens):
        kmax = top if top is not None else hi - g
        for k in range(0, kmax + 1):
            for m in monomials(a, k):
                labels.setdefault(g + k, []).append((i, m))
    index = {d: {lab: t for t, lab in enumerate(ls)} for d, ls in labels.items()}
    action = {}
    for d, ls in labels.items():
        if d + 1 not in labels:
            continue
        nxt = index[d + 1]
        for j in range(a.nvars):
            ent = {}
            for t, (i, m) in enumerate(ls):
                prod = multiply(a, j, m)
                if prod is None:
                    continue
                sign, m2 = prod
                row = nxt.get((i, m2))
                if row is not None:
                    ent[(row, t)] = sign
            action[(j, d)] = ql.sparse(len(labels[d + 1]), len(ls), ent)
    dims = {d: len(ls) for d, ls in labels.items()}
    window = None
    if a.kind == "symmetric":
        window = (min(gens) if gens else hi + 1, hi)
    F = DegreewiseModule(a, dims, action, window=window)
    F._cache["free"] = (tuple(gens), labels, index)
    return F


def free_data(F: DegreewiseModule):
    """(generator degrees, labels per degree, label index) of a constructed free module."""
    return F._cache.get("free")


def construct_simple(a: AlgebraKind, d: int, hi: int | None = None) -> DegreewiseModule:
    window = None
    if a.kind == "symmetric":
        window = (d, d if hi is None else hi)
    return DegreewiseModule(a, {d: 1}, window=window)


def shift(M: DegreewiseModule, i: int) -> DegreewiseModule:
    """M(i), whose degree-d piece is the degree-(d+i) piece of M."""
    dims = {d - i: k for d, k in M.dims.items()}
    action = {(j, d - i): A for (j, d), A in M.actions().items()}
    window = (M.lo - i, M.hi - i) if M.truncated else None
    return DegreewiseModule(M.algebra, dims, action, window)


def truncate_above(M: DegreewiseModule, h: int) -> DegreewiseModule:
    """The quotient M / M_{>h}."""
    if M.truncated:
        raise WindowError("truncate_above is for exterior and two-step modules")
    dims = {d: n for d, n in M.dims.items() if d <= h}
    action = {(j, d): A for (j, d), A in M.actions().items() if d + 1 <= h}
    return DegreewiseModule(M.algebra, dims, action)


def truncate(M: DegreewiseModule, k: int) -> DegreewiseModule:
    """M_{>=k}."""
    dims = {d: n for d, n in M.dims.items() if d >= k}
    action = {(j, d): A for (j, d), A in M.actions().items() if d >= k}
    window = (max(M.lo, k), M.hi) if M.truncated else None
    if M.truncated and k > M.hi:
        window = (M.hi + 1, M.hi)
    return DegreewiseModule(M.algebra, dims, action, window)


def direct_sum(M: DegreewiseModule, N: DegreewiseModule) -> DegreewiseModule:
    _same_window(M, N)
    degs = set(M.dims) | set(N.dims)
    dims = {d: M.dim(d) + N.dim(d) for d in degs}
    action = {}
    for j in range(M.nvars):
        for d in degs:
            if dims.get(d, 0) and dims.get(d + 1, 0):
                action[(j, d)] = ql.block_diag([M.act(j, d), N.act(j, d)])
    window = (min(M.lo, N.lo), M.hi) if M.truncated else None
    return DegreewiseModule(M.algebra, dims, action, window)


def direct_sum_all(mods: Sequence[DegreewiseModule]) -> DegreewiseModule:
    out = mods[0]
    for N in mods[1:]:
        out = direct_sum(out, N)
    return out


def graded_dual(M: DegreewiseModule) -> DegreewiseModule:
    """Vector-space dual: degree d is the dual of degree -d, x_j acts by transposes."""
    if M.kind != "exterior":
        raise ModuleError("graded_dual is defined for exterior-algebra modules")
    dims = {-d: k for d, k in M.dims.items()}
    action = {(j, -d - 1): A.transpose() for (j, d), A in M.actions().items()}
    return DegreewiseModule(M.algebra, dims, action)


# --------------------------------------------------------------------------
# monomial actions, submodules and quotients


def mono_action(M: DegreewiseModule, mono: tuple[int, ...], d: int) -> RatMatrix:
    """Matrix of x_mono from degree d to degree d + len(mono)."""
    key = ("mono", mono, d)
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    if not mono:
        out = ql.identity(M.dim(d))
    else:
        inner = mono_action(M, mono[1:], d)
        out = M.act(mono[0], d + len(mono) - 1) * inner
    M._cache[key] = out
    return out


def submodule_generated(M: DegreewiseModule,
                        vectors: Mapping[int, RatMatrix]) -> dict[int, Subspace]:
    """Degreewise echelon bases of the submodule generated by the given columns."""
    sub: dict[int, Subspace] = {}
    for d in M.degrees():
        parts = []
        if d in vectors and vectors[d].ncols():
            parts.append(vectors[d])
        prev = sub.get(d - 1)
        if prev is not None and prev.dim:
            for j in range(M.nvars):
                parts.append(M.act(j, d - 1) * prev.basis)
        span = ql.hstack(parts) if parts else fmpq_mat(M.dim(d), 0)
        sub[d] = ql.echelon_subspace(M.dim(d), span)
    return sub


def _quotient_projector(S: Subspace) -> tuple[list[int], RatMatrix]:
    n = S.ambient_dim
    comp = ql.complement_indices(S)
    # v -> (v - B v[piv])[comp]
    I = ql.identity(n)
    if S.dim:
        P = I - S.basis * ql.select_rows(I, S.pivots)
    else:
        P = I
    return comp, ql.select_rows(P, comp)


def quotient(M: DegreewiseModule, sub: Mapping[int, Subspace]):
    """M / sub for a submodule given degreewise; returns (Q, projections)."""
    proj = {}
    dims = {}
    for d in M.degrees():
        S = sub.get(d) or Subspace(M.dim(d), fmpq_mat(M.dim(d), 0), ())
        comp, P = _quotient_projector(S)
        proj[d] = (comp, P)
        dims[d] = len(comp)
    action = {}
    for j in range(M.nvars):
        for d in M.degrees():
            if dims.get(d) and dims.get(d + 1):
                comp, _ = proj[d]
                _, P1 = proj[d + 1]
                action[(j, d)] = P1 * ql.select_cols(M.act(j, d), comp)
    Q = DegreewiseModule(M.algebra, dims, action, M.window if M.truncated else None)
    return Q, {d: P for d, (_, P) in proj.items()}


# --------------------------------------------------------------------------
# projective covers and presentations


class Cover:
    """Minimal projective cover P -> M with lazily computed kernels and relations."""

    def __init__(self, M: DegreewiseModule):
        self.module = M
        a = M.algebra
        gen_cols: dict[int, list[int]] = {}
        for d in M.degrees():
            n = M.dim(d)
            if n == 0:
                continue
            parts = [M.act(j, d - 1) for j in range(a.nvars)] if M.dim(d - 1) else []
            jm = ql.hstack(parts) if parts else fmpq_mat(n, 0)
            comp = ql.complement_indices(ql.echelon_subspace(n, jm))
            if comp:
                gen_cols[d] = comp
        self.gen_cols = gen_cols
        self.gen_list = [(d, c) for d in sorted(gen_cols) for c in gen_cols[d]]
        self.gen_degrees = [d for d, _ in self.gen_list]
        self.free = construct_free(a, self.gen_degrees, hi=M.hi if M.truncated else None)
        self._labels = free_data(self.free)[1]
        self._p: dict[int, RatMatrix] = {}
        self._ker: dict[int, Subspace] = {}
        self._sec: dict[int, RatMatrix] = {}
        self._rel: dict[int, RatMatrix] = {}

    def labels(self, d: int):
        return self._labels.get(d, [])

    def p(self, d: int) -> RatMatrix:
        if d not in self._p:
            M = self.module
            labels = self.labels(d)
            rows, L = M.dim(d), len(labels)
            flat = [0] * (rows * L)
            seen = {}
            for t, (i, m) in enumerate(labels):
                g, c = self.gen_list[i]
                if (m, g) not in seen:
                    A = mono_action(M, m, g)
                    seen[(m, g)] = (A.entries(), A.ncols())
                ent, nc = seen[(m, g)]
                for r in range(rows):
                    flat[r * L + t] = ent[r * nc + c]
            self._p[d] = fmpq_mat(rows, L, flat)
        return self._p[d]

    def kernel(self, d: int) -> Subspace:
        if d not in self._ker:
            self._ker[d] = ql.kernel(self.p(d))
        return self._ker[d]

    def section(self, d: int) -> RatMatrix:
        """A right inverse of p at degree d."""
        if d not in self._sec:
            n = self.module.dim(d)
            s = ql.solve(self.p(d), ql.identity(n))
            assert s is not None, "cover map is not surjective"
            self._sec[d] = s
        return self._sec[d]

    def relations(self, e: int) -> RatMatrix:
        """Minimal generators of ker(P -> M) in degree e, as columns in P_e."""
        if e not in self._rel:
            K = self.kernel(e)
            if K.dim == 0:
                self._rel[e] = fmpq_mat(self.free.dim(e), 0)
            else:
                Kp = self.kernel(e - 1)
                parts = []
                if Kp.dim:
                    for j in range(self.module.nvars):
                        parts.append(K.coords(self.free.act(j, e - 1) * Kp.basis))
                span = ql.hstack(parts) if parts else fmpq_mat(K.dim, 0)
                comp = ql.complement_indices(ql.echelon_subspace(K.dim, span))
                self._rel[e] = ql.select_cols(K.basis, comp)
        return self._rel[e]

    def syzygy_module(self) -> DegreewiseModule:
        P = self.free
        dims = {d: self.kernel(d).dim for d in P.degrees()}
        action = {}
        for j in range(P.nvars):
            for d in P.degrees():
                if dims.get(d) and dims.get(d + 1):
                    K0, K1 = self.kernel(d), self.kernel(d + 1)
                    action[(j, d)] = K1.coords(P.act(j, d) * K0.basis)
        return DegreewiseModule(P.algebra, dims, action, P.window if P.truncated else None)


def cover(M: DegreewiseModule) -> Cover:
    c = M._cache.get("cover")
    if c is None:
        c = M._cache["cover"] = Cover(M)
    return c


# --------------------------------------------------------------------------
# graded maps and Hom


@dataclass
class GradedMap:
    source: DegreewiseModule
    target: DegreewiseModule
    mats: dict[int, RatMatrix]

    def at(self, d: int) -> RatMatrix:
        m = self.mats.get(d)
        if m is None:
            return fmpq_mat(self.target.dim(d), self.source.dim(d))
        return m

    def degrees(self):
        return sorted(set(self.source.dims) & set(self.target.dims))

    def is_homomorphism(self) -> bool:
        S, T = self.source, self.target
        for d in S.degrees():
            for j in range(S.nvars):
                lhs = self.at(d + 1) * S.act(j, d)
                rhs = T.act(j, d) * self.at(d)
                if lhs != rhs:
                    return False
        return True

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other."""
        degs = set(other.source.dims) & set(self.target.dims)
        return GradedMap(other.source, self.target,
                         {d: self.at(d) * other.at(d) for d in degs})

    def is_invertible(self) -> bool:
        S, T = self.source, self.target
        if S.dims != T.dims:
            return False
        return all(ql.det(self.at(d)) != 0 for d in S.dims)


class HomSpace:
    """Hom_0(M, N), stored as generator images (one slot per generator of M)."""

    def __init__(self, M: DegreewiseModule, N: DegreewiseModule, coords: Subspace):
        self.source, self.target = M, N
        self.coords = coords
        self.cov = cover(M)

    @property
    def dim(self) -> int:
        return self.coords.dim

    @cached_property
    def slots(self) -> list[tuple[int, int]]:
        """(offset, size) per generator of the source."""
        out, off = [], 0
        for g, _ in self.cov.gen_list:
            k = self.target.dim(g)
            out.append((off, k))
            off += k
        return out

    def to_map(self, v: RatMatrix) -> GradedMap:
        M, N, cov = self.source, self.target, self.cov
        ent = v.entries()
        images = []
        for off, k in self.slots:
            images.append(fmpq_mat(k, 1, ent[off:off + k]))
        mats = {}
        for d in M.degrees():
            if M.dim(d) == 0 or N.dim(d) == 0:
                continue
            cols = []
            for i, m in cov.labels(d):
                g, _ = cov.gen_list[i]
                cols.append(mono_action(N, m, g) * images[i])
            F = ql.hstack(cols) if cols else fmpq_mat(N.dim(d), 0)
            mats[d] = F * cov.section(d)
        return GradedMap(M, N, mats)

    def vector_of(self, f: GradedMap) -> RatMatrix:
        parts = [ql.select_cols(f.at(g), [c]) for g, c in self.cov.gen_list]
        return ql.vstack(parts, ncols=1)

    @cached_property
    def basis(self) -> list[GradedMap]:
        B = self.coords.basis
        return [self.to_map(ql.select_cols(B, [t])) for t in range(self.dim)]

    def __iter__(self):
        yield self.dim
        yield self.basis


def _relation_system(M: DegreewiseModule, N: DegreewiseModule, slots) -> RatMatrix:
    """Linear conditions on generator images of M in N imposed by M's relations."""
    cov = cover(M)
    U = sum(k for _, k in slots)
    row_blocks = []
    for e in cov.free.degrees():
        ne = N.dim(e)
        if ne == 0:
            continue
        R = cov.relations(e)
        if R.ncols() == 0:
            continue
        labels = cov.labels(e)
        ent = R.entries()
        nr = R.ncols()
        for t in range(nr):
            blocks: dict[int, RatMatrix] = {}
            for l, (i, m) in enumerate(labels):
                c = ent[l * nr + t]
                if c == 0 or slots[i][1] == 0:
                    continue
                g, _ = cov.gen_list[i]
                term = c * mono_action(N, m, g)
                blocks[i] = blocks[i] + term if i in blocks else term
            if blocks:
                row_blocks.append(blocks)
    if not row_blocks:
        return fmpq_mat(0, U)
    sizes = [k for _, k in slots]
    ne_sizes = []
    big = {}
    for r, blocks in enumerate(row_blocks):
        some = next(iter(blocks.values()))
        ne_sizes.append(some.nrows())
        for i, B in blocks.items():
            big[(r, i)] = B
    return ql.block(big, ne_sizes, sizes)


def hom0(M: DegreewiseModule, N: DegreewiseModule) -> HomSpace:
    """Degree-zero homomorphisms M -> N."""
    _same_window(M, N)
    key = ("hom", id(N))
    hit = M._cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    space = _hom0(M, N)
    M._cache[key] = (N, space)
    return space


def _hom0(M: DegreewiseModule, N: DegreewiseModule) -> HomSpace:
    cov = cover(M)
    slots = []
    off = 0
    for g, _ in cov.gen_list:
        slots.append((off, N.dim(g)))
        off += N.dim(g)
    U = off
    if U == 0:
        return HomSpace(M, N, Subspace(0, fmpq_mat(0, 0), ()))
    C = _relation_system(M, N, slots)
    return HomSpace(M, N, ql.kernel(C))


def hom_dim(M: DegreewiseModule, N: DegreewiseModule) -> int:
    return hom0(M, N).dim


def syzygy_of(M: DegreewiseModule) -> DegreewiseModule:
    hit = M._cache.get("syz")
    if hit is None:
        hit = M._cache["syz"] = cover(M).syzygy_module()
    return hit


def _slots(M: DegreewiseModule, N: DegreewiseModule):
    out, off = [], 0
    for g, _ in cover(M).gen_list:
        out.append((off, N.dim(g)))
        off += N.dim(g)
    return out, off


def ext1_dim_resolution(M: DegreewiseModule, N: DegreewiseModule) -> int:
    """dim Ext^1_0(M, N) from the first three terms of the minimal resolution of M.

    Hom_0(P_0, N) -> Hom_0(P_1, N) -> Hom_0(P_2, N) are the relation systems
    of M and of its syzygy; an independent route to ``ext1_0(M, N).dim``.
    """
    _same_window(M, N)
    s0, u0 = _slots(M, N)
    K = syzygy_of(M)
    s1, u1 = _slots(K, N)
    if u1 == 0:
        return 0
    b = ql.rank(_relation_system(M, N, s0)) if u0 else 0
    z = u1 - ql.rank(_relation_system(K, N, s1))
    return z - b


# --------------------------------------------------------------------------
# extensions


@dataclass
class ExtensionClass:
    """Cocycle phi_j[d]: M_d -> N_{d+1} of an extension 0 -> N -> E -> M -> 0."""

    source: DegreewiseModule
    target: DegreewiseModule
    cocycle: dict[tuple[int, int], RatMatrix]

    def phi(self, j: int, d: int) -> RatMatrix:
        m = self.cocycle.get((j, d))
        if m is None:
            return fmpq_mat(self.target.dim(d + 1), self.source.dim(d))
        return m

    def realize(self) -> DegreewiseModule:
        """The middle term N + M with block action [[A^N, phi], [0, A^M]]."""
        M, N = self.source, self.target
        degs = set(M.dims) | set(N.dims)
        dims = {d: N.dim(d) + M.dim(d) for d in degs}
        action = {}
        for j in range(M.nvars):
            for d in degs:
                if dims.get(d) and dims.get(d + 1, 0):
                    action[(j, d)] = ql.block(
                        {(0, 0): N.act(j, d), (0, 1): self.phi(j, d), (1, 1): M.act(j, d)},
                        [N.dim(d + 1), M.dim(d + 1)], [N.dim(d), M.dim(d)])
        window = (min(M.lo, N.lo), M.hi) if M.truncated else None
        return DegreewiseModule(M.algebra, dims, action, window)

    def is_cocycle(self) -> bool:
        return bool(validate(self.realize()))


class ExtSpace:
    """Ext^1_0(M, N) as cocycles modulo coboundaries."""

    def __init__(self, M, N, layout, cocycles: Subspace, coboundary: RatMatrix,
                 basis_cols: list[int]):
        self.source, self.target = M, N
        self.layout = layout
        self.cocycles = cocycles
        self.coboundary = coboundary
        self._basis_cols = basis_cols

    @property
    def dim(self) -> int:
        return len(self._basis_cols)

    @property
    def nparams(self) -> int:
        return sum(s for _, _, s in self.layout.values())

    def to_class(self, v: RatMatrix) -> ExtensionClass:
        ent = v.entries()
        coc, off = {}, 0
        for key, (r, c, size) in self.layout.items():
            coc[key] = ql.unvec(fmpq_mat(size, 1, ent[off:off + size]), r, c)
            off += size
        return ExtensionClass(self.source, self.target, coc)

    def vector_of(self, cls: ExtensionClass) -> RatMatrix:
        parts = []
        for (j, d) in self.layout:
            parts.append(ql.vec(cls.phi(j, d)))
        return ql.vstack(parts, ncols=1)

    @cached_property
    def basis(self) -> list[ExtensionClass]:
        B = self.cocycles.basis
        return [self.to_class(ql.select_cols(B, [t])) for t in self._basis_cols]

    @cached_property
    def coboundary_space(self) -> Subspace:
        return ql.echelon_subspace(self.coboundary.nrows(), self.coboundary)

    def is_trivial(self, cls: ExtensionClass) -> bool:
        """Is the class a coboundary (the extension splits)?"""
        v = self.vector_of(cls)
        B = self.coboundary_space
        if B.dim == 0:
            return ql.is_zero(v)
        return ql.is_zero(v - B.basis * ql.select_rows(v, B.pivots))

    def __iter__(self):
        yield self.dim
        yield self.basis


def ext1_0(M: DegreewiseModule, N: DegreewiseModule) -> ExtSpace:
    """Degree-zero Ext^1(M, N): extensions 0 -> N -> E -> M -> 0."""
    _same_window(M, N)
    key = ("ext1", id(N))
    hit = M._cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    space = _ext1_0(M, N)
    M._cache[key] = (N, space)
    return space


def _ext1_0(M: DegreewiseModule, N: DegreewiseModule) -> ExtSpace:
    a = M.algebra
    layout: dict[tuple[int, int], tuple[int, int, int]] = {}
    for j in range(a.nvars):
        for d in M.degrees():
            r, c = N.dim(d + 1), M.dim(d)
            if r and c:
                layout[(j, d)] = (r, c, r * c)
    offsets, off = {}, 0
    for key, (r, c, s) in layout.items():
        offsets[key] = off
        off += s
    U = off
    keys = list(layout)
    col_sizes = [layout[k][2] for k in keys]
    kidx = {k: t for t, k in enumerate(keys)}

    # cocycle equations: one block row per relation instance
    row_sizes, blocks = [], {}
    for d in M.degrees():
        r2, c0 = N.dim(d + 2), M.dim(d)
        if not (r2 and c0):
            continue
        for rel in relations(a):
            row = {}
            for x, y, coef in rel.terms:
                # A^N_x[d+1] phi_y[d] + phi_x[d+1] A^M_y[d]
                if (y, d) in kidx:
                    t = kidx[(y, d)]
                    term = coef * ql.kron(ql.identity(c0), N.act(x, d + 1))
                    row[t] = row[t] + term if t in row else term
                if (x, d + 1) in kidx:
                    t = kidx[(x, d + 1)]
                    term = coef * ql.kron(M.act(y, d).transpose(), ql.identity(r2))
                    row[t] = row[t] + term if t in row else term
            if row:
                ri = len(row_sizes)
                row_sizes.append(r2 * c0)
                for t, B in row.items():
                    blocks[(ri, t)] = B
    if U == 0:
        Z = Subspace(0, fmpq_mat(0, 0), ())
    elif row_sizes:
        Z = ql.kernel(ql.block(blocks, row_sizes, col_sizes))
    else:
        Z = ql.full_space(U)

    # coboundaries phi_j[d] = A^N_j[d] psi_d - psi_{d+1} A^M_j[d]
    psi_keys = [d for d in M.degrees() if M.dim(d) and N.dim(d)]
    pidx = {d: t for t, d in enumerate(psi_keys)}
    psi_sizes = [N.dim(d) * M.dim(d) for d in psi_keys]
    cb = {}
    for (j, d), t in kidx.items():
        r, c = N.dim(d + 1), M.dim(d)
        if d in pidx:
            cb[(t, pidx[d])] = ql.kron(ql.identity(c), N.act(j, d))
        if d + 1 in pidx:
            cb[(t, pidx[d + 1])] = -ql.kron(M.act(j, d).transpose(), ql.identity(r))
    Cob = ql.block(cb, col_sizes, psi_sizes) if U else fmpq_mat(0, sum(psi_sizes))
    basis_cols = ql.extend_basis(Cob, Z.basis) if Z.dim else []
    layout3 = {k: (layout[k][0], layout[k][1], layout[k][2]) for k in keys}
    return ExtSpace(M, N, layout3, Z, Cob, basis_cols)


# --------------------------------------------------------------------------
# endomorphism rings and indecomposability


@dataclass(frozen=True)
class EndReport:
    end_dim: int
    rad_dim: int
    residue_dim: int
    local: bool

    @property
    def indecomposable(self) -> bool:
        return self.local

    def __str__(self):
        if self.local:
            return f"local with residue division algebra of Q-dimension {self.residue_dim}"
        return f"not local (End dim {self.end_dim}, semisimple quotient dim {self.residue_dim})"


def _minpoly_irreducible(L: RatMatrix) -> bool:
    poly = L.minpoly()
    _, factors = poly.factor()
    return len(factors) == 1 and factors[0][1] == 1


def end0_is_local(M: DegreewiseModule, seed: int = 0, samples: int = 8) -> EndReport:
    """Decide whether End_0(M) is local, i.e. M is indecomposable over Q.

    The radical is the kernel of the trace form (a, b) -> tr_M(ab), valid in
    characteristic zero.  The semisimple quotient is a division algebra iff
    it has no zero divisors; elements whose minimal polynomial factors over
    Q expose zero divisors.  Basis elements, pairwise sums and seeded random
    combinations are tested; an all-irreducible outcome is reported local.
    """
    if M.is_zero():
        raise ModuleError("the zero module has no local endomorphism ring")
    H = hom0(M, M)
    maps = H.basis
    h = len(maps)
    T = fmpq_mat(h, h)
    for a in range(h):
        for b in range(a, h):
            s = fmpq(0)
            for d in M.dims:
                s += ql.trace(maps[a].at(d) * maps[b].at(d))
            T[a, b] = s
            T[b, a] = s
    rad = ql.kernel(T)
    r = h - rad.dim
    if r == 1:
        return EndReport(h, rad.dim, 1, True)

    # structure constants of End in the hom basis
    piv = H.coords.pivots
    def coords_of(f: GradedMap) -> RatMatrix:
        return ql.select_rows(H.vector_of(f), piv)
    mult = [[coords_of(maps[a].compose(maps[b])) for b in range(h)] for a in range(h)]

    rad_e = ql.echelon_subspace(h, rad.basis)
    comp, P = _quotient_projector(rad_e)

    def left_mult(x: RatMatrix) -> RatMatrix:
        xe = x.entries()
        cols = []
        for c in comp:
            acc = fmpq_mat(h, 1)
            for a in range(h):
                if xe[a] != 0:
                    acc += xe[a] * mult[a][c]
            cols.append(P * acc)
        return ql.hstack(cols)

    rng = random.Random(seed)
    candidates = []
    E = ql.identity(h)
    for c in comp:
        candidates.append(ql.select_cols(E, [c]))
    for i in range(len(comp)):
        for k in range(i + 1, len(comp)):
            candidates.append(ql.select_cols(E, [comp[i]]) + ql.select_cols(E, [comp[k]]))
    for _ in range(samples):
        candidates.append(ql.column(rng.randint(-50, 50) for _ in range(h)))
    for x in candidates:
        L = left_mult(x)
        if ql.is_zero(L):
            continue
        if not _minpoly_irreducible(L):
            return EndReport(h, rad.dim, r, False)
    return EndReport(h, rad.dim, r, True)


# --------------------------------------------------------------------------
# free summands


@dataclass(frozen=True)
class StripResult:
    core: DegreewiseModule
    free_part: tuple[int, ...]


def strip_free_summands(M: DegreewiseModule) -> StripResult:
    """Split M = core + free, with no free summand left in the core.

    A copy of R(-g) splits off along m in M_g exactly when the top monomial
    x_0...x_n does not kill m (free modules are injective); the top
    monomial map in degree g therefore counts those summands.
    """
    if M.kind != "exterior":
        raise ModuleError("strip_free_summands is defined for exterior-algebra modules")
    hit = M._cache.get("strip")
    if hit is not None:
        return hit
    top = tuple(range(M.nvars))
    gens: dict[int, RatMatrix] = {}
    free_part = []
    for g in M.degrees():
        if M.dim(g) == 0 or M.dim(g + M.nvars) == 0:
            continue
        Tg = mono_action(M, top, g)
        _, piv = ql.rref(Tg)
        if piv:
            gens[g] = ql.select_cols(ql.identity(M.dim(g)), piv)
            free_part.extend([g] * len(piv))
    if not free_part:
        res = StripResult(M, ())
    else:
        sub = submodule_generated(M, gens)
        core, _ = quotient(M, sub)
        res = StripResult(core, tuple(free_part))
    M._cache["strip"] = res
    return res


# --------------------------------------------------------------------------
# isomorphism


def find_isomorphism(M: DegreewiseModule, N: DegreewiseModule, seed: int = 0,
                     trials: int = 6) -> GradedMap | None:
    """Search Hom_0(M, N) for an invertible element.

    Random combinations with coefficients in [-10^6, 10^6]: a nonzero
    determinant polynomial of degree D vanishes at such a point with
    probability at most D / (2 * 10^6 + 1) per trial.
    """
    if M.algebra != N.algebra or M.dims != N.dims:
        return None
    if M.truncated and M.hi != N.hi:
        return None
    if M.is_zero():
        return GradedMap(M, N, {})
    H = hom0(M, N)
    if H.dim == 0 or hom0(N, M).dim != H.dim:
        return None
    rng = random.Random(seed)
    B = H.coords.basis
    for t in range(trials):
        if t == 0 and H.dim == 1:
            x = ql.column([1])
        else:
            x = ql.column(rng.randint(-10**6, 10**6) for _ in range(H.dim))
        f = H.to_map(B * x)
        if f.is_invertible():
            return f
    return None


def is_isomorphic_0(M: DegreewiseModule, N: DegreewiseModule) -> bool:
    return find_isomorphism(M, N) is not None


# --------------------------------------------------------------------------
# random modules


def random_module(a: AlgebraKind, profile: Mapping[int, int], seed: int,
                  entry_range: int = 2) -> DegreewiseModule:
    """Random module with the given piece dimensions satisfying all relations.

    Action matrices are chosen one variable at a time, degree by degree.
    Each choice of A_j[d] solves the linear (possibly inhomogeneous)
    conditions from every relation instance in which it is the last factor
    to be chosen, and is a random small-integer point of that affine space.
    If the system is inconsistent, the lower-degree maps of x_j are reset to
    zero, which makes it homogeneous.
    """
    rng = random.Random(seed)
    profile = {d: k for d, k in profile.items() if k > 0}
    if not profile:
        return zero_module(a)
    lo, hi = min(profile), max(profile)
    dims = {d: profile.get(d, 0) for d in range(lo, hi + 1)}
    act: dict[tuple[int, int], RatMatrix] = {}
    rels = relations(a)
    order = lambda f: (f[0], f[1])

    def get(var, deg):
        m = act.get((var, deg))
        if m is None:
            return fmpq_mat(dims.get(deg + 1, 0), dims.get(deg, 0))
        return m

    def system(j, d):
        r, c = dims.get(d + 1, 0), dims.get(d, 0)
        rows, rhs = [], []
        for e in (d - 1, d):
            r2, c0 = dims.get(e + 2, 0), dims.get(e, 0)
            if not (r2 and c0):
                continue
            for rel in rels:
                factors = [((x, e + 1), (y, e)) for x, y, _ in rel.terms]
                flat = [f for pair in factors for f in pair]
                if max(flat, key=order) != (j, d):
                    continue
                coef_mat = fmpq_mat(r2 * c0, r * c)
                const = fmpq_mat(r2, c0)
                for (x, y, coef), (f1, f2) in zip(rel.terms, factors):
                    if f1 == (j, d):
                        coef_mat += coef * ql.kron(get(y, e).transpose(), ql.identity(r2))
                    elif f2 == (j, d):
                        coef_mat += coef * ql.kron(ql.identity(c0), get(x, e + 1))
                    else:
                        const += coef * (get(x, e + 1) * get(y, e))
                rows.append(coef_mat)
                rhs.append(-ql.vec(const))
        return rows, rhs

    def sample(j, d):
        r, c = dims.get(d + 1, 0), dims.get(d, 0)
        rows, rhs = system(j, d)
        if rows:
            A = ql.vstack(rows)
            b = ql.vstack(rhs)
            sol = ql.solve_affine(A, b)
            if sol is None:
                return None
            x0, K = sol
        else:
            x0, K = fmpq_mat(r * c, 1), ql.full_space(r * c)
        coeffs = ql.column(rng.randint(-entry_range, entry_range) for _ in range(K.dim))
        x = x0 + K.basis * coeffs if K.dim else x0
        return ql.unvec(x, r, c)

    for j in range(a.nvars):
        for d in range(lo, hi):
            if not (dims.get(d) and dims.get(d + 1)):
                continue
            X = None
            for _ in range(3):
                X = sample(j, d)
                if X is not None:
                    break
            if X is None:
                for dd in range(lo, d):
                    act.pop((j, dd), None)
                X = sample(j, d)
                assert X is not None
            act[(j, d)] = X
    window = (lo, hi) if a.kind == "symmetric" else None
    M = DegreewiseModule(a, dims, act, window)
    return M
