"""Named modules and seeded generators shared by tests, harnesses and the CLI.

Expected values are theory predictions.  Every one of them is recomputed
by the test suite; nothing here is used as ground truth by the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import qlinalg as ql
from .algebra import exterior, symmetric, twostep
from .bgg import is_nice, sheaf_module_for_twist
from .grmodule import (DegreewiseModule, ModuleError, construct_free, construct_simple,
                       direct_sum, random_module, shift, strip_free_summands, truncate)
from .koszul import koszul_dual, random_linear_presentation
from .stablecat import omega_power

NAMES = ("simple:d", "free", "radical:p", "twistmod:t", "nonsheaf-pair", "loewy2-rigid")


@dataclass
class CorpusEntry:
    name: str
    module: DegreewiseModule
    expected: dict = field(default_factory=dict)


def _int_arg(name: str, prefix: str) -> int:
    try:
        return int(name[len(prefix):])
    except ValueError:
        raise ModuleError(f"bad corpus name {name!r}; expected {prefix}<integer>") from None


def builtin(name: str, nvars: int) -> CorpusEntry:
    """Look up a named module.

    simple:d is k(d), the simple module sitting in degree -d; radical:p is
    the p-th power of the radical of R; twistmod:t is the module of O(t).
    """
    E = exterior(nvars)
    n = nvars - 1
    if name.startswith("simple:"):
        d = _int_arg(name, "simple:")
        M = shift(construct_simple(E, 0), d)
        return CorpusEntry(name, M, {"nice": d == 0, "rank": 1, "end_stable_dim": 1,
                                     "exceptional": True, "sheaf_degree": -d})
    if name == "free":
        return CorpusEntry(name, construct_free(E, [0]),
                           {"nice": True, "rank": 0, "end_stable_dim": 0, "stably_zero": True})
    if name.startswith("radical:"):
        p = _int_arg(name, "radical:")
        if p < 0:
            raise ModuleError("radical power must be nonnegative")
        M = truncate(construct_free(E, [0]), p)
        exp = {"stably_zero": p == 0 or p > n + 1}
        if p == 1:
            exp.update({"stably_isomorphic_to": "omega:simple:0", "end_stable_dim": 1})
        if p == n + 1:
            exp.update({"end_stable_dim": 1})
        return CorpusEntry(name, M, exp)
    if name.startswith("twistmod:"):
        t = _int_arg(name, "twistmod:")
        return CorpusEntry(name, sheaf_module_for_twist(t, nvars),
                           {"nice": True, "rank": 1, "end_stable_dim": 1, "exceptional": True})
    if name == "nonsheaf-pair":
        k = construct_simple(E, 0)
        return CorpusEntry(name, direct_sum(k, shift(k, 1)),
                           {"nice": False, "end_stable_dim": 2, "indecomposable": False})
    if name == "loewy2-rigid":
        T = twostep(nvars)
        action = {}
        for j in range(nvars):
            row = [1 if t == j else 0 for t in range(nvars)]
            action[(j, 0)] = ql.matrix([row])
        M = DegreewiseModule(T, {0: nvars, 1: 1}, action)
        return CorpusEntry(name, M, {"end_dim": 1, "ext1_self": 0, "lemma14": "verified"})
    raise ModuleError(f"unknown corpus name {name!r}; known names: {', '.join(NAMES)}")


def random_nice(nvars: int, profile: dict, seed: int, attempts: int = 10,
                trials: int = 8) -> DegreewiseModule | None:
    """First stripped seeded random module passing is_nice, or None."""
    E = exterior(nvars)
    for a in range(attempts):
        M = random_module(E, profile, seed * 1000 + a)
        core = strip_free_summands(M).core
        if core.is_zero():
            continue
        if is_nice(core, trials, seed).nice:
            return core
    return None


def nice_corpus(nvars: int, seeds=(), profiles=None) -> dict[str, DegreewiseModule]:
    """Nice modules: twist modules for t in [-2, 2] plus random hits."""
    out = {f"twistmod:{t}": sheaf_module_for_twist(t, nvars) for t in range(-2, 3)}
    if profiles is None:
        # a generic nvars x 1 block of linear forms never drops rank, so these
        # are genuine bundles; larger blocks degenerate at complex points
        profiles = [{0: nvars, 1: 1}, {-1: 1, 0: nvars}]
    for p_i, prof in enumerate(profiles):
        for s in seeds:
            M = random_nice(nvars, prof, s)
            if M is not None:
                out[f"random-nice:{p_i}:{s}"] = M
    return out


def exterior_corpus(nvars: int) -> dict[str, DegreewiseModule]:
    """The named exterior modules used by the sweeps."""
    names = ["simple:0", "simple:1", "simple:-1", "free", "radical:1", "radical:2",
             "twistmod:-1", "twistmod:1", "nonsheaf-pair"]
    out = {nm: builtin(nm, nvars).module for nm in names}
    out["omega2:simple:0"] = omega_power(construct_simple(exterior(nvars), 0), 2)
    return out


def linear_exterior_corpus(nvars: int) -> dict[str, DegreewiseModule]:
    """Linear exterior modules generated in degree 0."""
    E = exterior(nvars)
    k = construct_simple(E, 0)
    R = construct_free(E, [0])
    J1 = shift(truncate(R, 1), 1)
    W = shift(omega_power(k, 2), 2)
    return {"k": k, "R": R, "J(1)": J1, "omega2k(2)": W, "k+J(1)": direct_sum(k, J1)}


def linear_symmetric_builders(nvars: int) -> dict[str, Callable[[int], DegreewiseModule]]:
    """Linear polynomial-ring modules generated in degree 0, as functions of the window top."""
    S = symmetric(nvars)
    out: dict[str, Callable[[int], DegreewiseModule]] = {
        "S": lambda hi: construct_free(S, [0], hi=hi),
        "k_S": lambda hi: construct_simple(S, 0, hi=hi),
        "S^2": lambda hi: construct_free(S, [0, 0], hi=hi),
    }
    for nm, M in linear_exterior_corpus(nvars).items():
        if nm in ("k", "R"):
            continue
        out[f"E({nm})"] = (lambda M: lambda hi: koszul_dual(M, hi).dual)(M)
    return out


def linear_presentation_builders(nvars: int, count: int, seed: int = 0):
    """Seeded cokernels of random linear maps S(-1)^b -> S^a with a <= 2, b <= 2."""
    out = {}
    for t in range(count):
        a = 1 + (seed + t) % 2
        b = 1 + (seed + 3 * t) % 2
        s = seed * 7919 + t
        out[f"pres:{a}:{b}:{s}"] = (lambda a, b, s: lambda hi:
                                     random_linear_presentation(nvars, a, b, hi, s))(a, b, s)
    return out
