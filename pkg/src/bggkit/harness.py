"""Seeded verification sweeps shared by the CLI, scripts and tests."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from . import qlinalg as ql
from .algebra import exterior, twostep
from .grmodule import ext1_0, ext1_dim_resolution, random_module
from .koszul import (CONCLUSION_FAILS, lemma11_check, lemma12_check, lemma14_check,
                     random_linear_presentation)
from .corpus import linear_symmetric_builders
from .stablecat import serre_check


@dataclass
class SweepSummary:
    suite: str
    seed: int
    total: int = 0
    outcomes: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def records(self) -> dict:
        rec = {"suite": self.suite, "seed": self.seed, "total": self.total,
               "failures": len(self.failures)}
        for k, v in self.outcomes.items():
            rec[f"count.{k.replace(' ', '-')}"] = v
        return rec


def twostep_profile(t: int, rng: random.Random) -> tuple[int, dict]:
    nvars = 2 + t % 2
    return nvars, {0: rng.randint(1, 3), 1: rng.randint(0, 3)}


def sweep_lemma14(seed: int = 0, count: int = 200) -> SweepSummary:
    """Random two-step modules with pieces at most (3, 3) over 2 and 3 variables."""
    out = SweepSummary("lemma14", seed)
    rng = random.Random(seed)
    for t in range(count):
        nvars, prof = twostep_profile(t, rng)
        M = random_module(twostep(nvars), prof, rng.randrange(10**9))
        res = lemma14_check(M)
        out.total += 1
        out.outcomes[res.status if not res.reason else f"{res.status}:{res.reason}"] += 1
        if res.status == CONCLUSION_FAILS:
            out.failures.append((t, nvars, M.dims, res))
    return out


SERRE_PROFILES = {
    2: [{0: 2, 1: 2}, {0: 2, 1: 3, 2: 1}, {0: 3, 1: 2}, {0: 1, 1: 2, 2: 2}],
    3: [{0: 2, 1: 3}, {0: 2, 1: 4, 2: 2}, {0: 1, 1: 3, 2: 2}, {0: 3, 1: 3, 2: 1}],
}


def random_exterior(nvars: int, idx: int, seed: int):
    profs = SERRE_PROFILES.get(nvars, [{0: 2, 1: 2}])
    return random_module(exterior(nvars), profs[idx % len(profs)], seed)


def sweep_serre(seed: int = 0, count: int = 10, nvars: int = 2,
                ms=range(-2, 3)) -> SweepSummary:
    """Serre duality dimension check on seeded random exterior pairs."""
    out = SweepSummary("serre", seed)
    rng = random.Random(seed)
    for t in range(count):
        X = random_exterior(nvars, t, rng.randrange(10**9))
        Y = random_exterior(nvars, t + 1, rng.randrange(10**9))
        for m in ms:
            rep = serre_check(X, Y, m)
            out.total += 1
            out.outcomes["equal" if rep.equal else "unequal"] += 1
            if not rep.equal:
                out.failures.append((t, m, rep))
    return out


@dataclass
class PresentationPair:
    """Seeds of two random linear presentations, rebuildable at any window top."""

    nvars: int
    source: tuple[int, int, int]
    target: tuple[int, int, int]
    hi: int

    def build(self, hi: int | None = None):
        h = self.hi if hi is None else hi
        M = random_linear_presentation(self.nvars, *self.source[:2], h, self.source[2])
        N = random_linear_presentation(self.nvars, *self.target[:2], h, self.target[2])
        return M, N


def lemma11_classes(seed: int, count: int):
    """Seeded extension classes between random linear-presentation windows.

    Pairs alternate between 2 variables (window top 4) and 3 variables
    (window top 3).  Each pair contributes the zero class, basis classes, a
    random combination, a pure coboundary and a basis class plus a
    coboundary.
    """
    rng = random.Random(seed)
    classes = []
    pairs = []
    while len(classes) < count:
        nvars = 2 + len(pairs) % 2
        hi = 4 if nvars == 2 else 3
        pair = PresentationPair(
            nvars,
            (rng.randint(1, 2), rng.randint(1, 2), rng.randrange(10**9)),
            (rng.randint(1, 2), rng.randint(0, 2), rng.randrange(10**9)), hi)
        M, N = pair.build()
        X = ext1_0(M, N)
        U = X.nparams
        cands = [X.to_class(ql.zeros(U, 1))] if U else []
        cands += X.basis
        if X.dim:
            x = ql.column(rng.randint(-3, 3) for _ in range(X.dim))
            v = ql.hstack([X.vector_of(c) for c in X.basis]) * x
            cands.append(X.to_class(v))
        cob = X.coboundary
        if cob.ncols() and U:
            y = ql.column(rng.randint(-3, 3) for _ in range(cob.ncols()))
            cands.append(X.to_class(cob * y))
            if X.dim:
                cands.append(X.to_class(X.vector_of(X.basis[0]) + cob * y))
        for c in cands:
            classes.append((len(pairs), c))
        pairs.append(pair)
    return classes[:count], pairs


def lemma11_window_dims(pair: PresentationPair) -> tuple[int, int]:
    """Ext^1 dimension of a pair at window tops hi and hi + 2."""
    a = ext1_dim_resolution(*pair.build())
    b = ext1_dim_resolution(*pair.build(pair.hi + 2))
    return a, b


def sweep_lemma11(seed: int = 0, count: int = 100) -> SweepSummary:
    out = SweepSummary("lemma11", seed)
    classes, pairs = lemma11_classes(seed, count)
    for pair_id, cls in classes:
        res = lemma11_check(cls)
        out.total += 1
        out.outcomes["split" if res.split_S else "nonsplit"] += 1
        if not res.agree:
            out.failures.append((pair_id, res))
    for pair_id, pair in enumerate(pairs):
        a, b = lemma11_window_dims(pair)
        out.outcomes["window-stable" if a == b else "window-unstable"] += 1
        if a != b:
            out.failures.append((pair_id, "window", a, b))
    return out


def lemma12_instances(seed: int, count: int, nvars_list=(2, 3)):
    rng = random.Random(seed)
    builders = [(nv, nm, b) for nv in nvars_list
                for nm, b in sorted(linear_symmetric_builders(nv).items())]
    inst = []
    for t in range(count):
        nv, nm, b = builders[t % len(builders)]
        m = rng.randint(0, 2)
        r = rng.randint(1, 2)
        inst.append((nv, nm, b, m, r))
    return inst


def sweep_lemma12(seed: int = 0, count: int = 50) -> SweepSummary:
    out = SweepSummary("lemma12", seed)
    for nv, nm, b, m, r in lemma12_instances(seed, count):
        res = lemma12_check(b, m, r, hi=m + 3)
        out.total += 1
        out.outcomes["holds" if res.holds else "fails"] += 1
        if not (res.holds and res.window_stable):
            out.failures.append((nv, nm, m, r, res))
    return out


SUITES = {
    "lemma14": sweep_lemma14,
    "serre": sweep_serre,
    "lemma11": sweep_lemma11,
    "lemma12": sweep_lemma12,
}
