import pytest
from hypothesis import given, strategies as st

from bggkit.algebra import exterior, twostep
from bggkit.grmodule import (ModuleError, construct_free, construct_simple, direct_sum,
                             graded_dual, is_isomorphic_0, random_module, shift,
                             strip_free_summands, truncate, truncate_above)
from bggkit.homres import generator_degrees, projective_cover
from bggkit.stablecat import (is_stably_isomorphic, omega_power, serre_check, stable_dim,
                              stable_dim_balanced, stable_dim_from_tau, stable_hom0, tau,
                              tau_below)
from oracles import stable_dim_via_envelope

E2, E3 = exterior(2), exterior(3)
seeds = st.integers(0, 10**6)


def k(a=E2, d=0):
    return shift(construct_simple(a, 0), d)


def radical(a=E2):
    return truncate(construct_free(a, [0]), 1)


def rnd(nvars, seed, idx=0):
    profs = [{0: 2, 1: 2}, {0: 2, 1: 3, 2: 1}, {0: 1, 1: 2, 2: 2}]
    return random_module(exterior(nvars), profs[idx % len(profs)], seed)


def test_stable_hom_examples():
    r = stable_hom0(k(), k())
    assert (r.hom_dim, r.proj_factoring_dim, r.stable_dim) == (1, 0, 1)
    assert stable_dim(construct_free(E2, [0]), rnd(2, 4)) == 0
    r = stable_hom0(shift(radical(), 1), k())
    assert (r.hom_dim, r.stable_dim) == (2, 2)
    with pytest.raises(ModuleError):
        stable_hom0(construct_free(twostep(2), [0]), construct_free(twostep(2), [0]))


def test_identity_of_free_module_factors():
    R = construct_free(E3, [0])
    r = stable_hom0(R, R)
    assert r.hom_dim == 1 and r.stable_dim == 0


@pytest.mark.parametrize("nvars", [2, 3])
@given(s1=seeds, s2=seeds)
def test_stable_hom_matches_envelope_oracle(nvars, s1, s2):
    M, N = rnd(nvars, s1, s1), rnd(nvars, s2, s2 // 3)
    for X, Y in [(M, N), (N, M), (M, k(exterior(nvars), 1)), (k(exterior(nvars)), N)]:
        r = stable_hom0(X, Y)
        assert 0 <= r.stable_dim <= r.hom_dim
        assert r.stable_dim == stable_dim_via_envelope(X, Y, projective_cover, graded_dual)


@given(seeds, seeds, st.integers(-2, 2))
def test_stable_hom_invariant_under_strip_and_shift(s1, s2, i):
    M, N = rnd(2, s1, 1), rnd(2, s2, 2)
    base = stable_dim(M, N)
    Mf = direct_sum(M, construct_free(E2, [0, 1]))
    Nf = direct_sum(N, construct_free(E2, [-1]))
    assert stable_dim(Mf, Nf) == base
    assert stable_dim(strip_free_summands(Mf).core, N) == base
    assert stable_dim(shift(M, i), shift(N, i)) == base


def test_omega_power_examples():
    assert omega_power(k(), 1) == radical()
    assert is_isomorphic_0(omega_power(omega_power(k(), 1), -1), k())
    R = construct_free(E2, [0, 2])
    for i in (-2, -1, 0, 1, 2):
        assert omega_power(R, i).is_zero()


@given(seeds)
def test_omega_round_trip_recovers_core(seed):
    M = rnd(2, seed, seed)
    core = strip_free_summands(M).core
    assert is_isomorphic_0(omega_power(omega_power(M, 1), -1), core)
    assert is_isomorphic_0(omega_power(omega_power(M, -1), 1), core)


def test_tau_examples():
    t = tau(k(E3), 1)
    assert set(generator_degrees(t)) == {-1}
    assert tau(construct_free(E3, [0]), 2).is_zero()
    assert is_stably_isomorphic(tau(k(), 2), tau(tau(k(), 1), 1))
    with pytest.raises(ValueError):
        tau(k(), 0)


@given(seeds)
def test_tau_composes(seed):
    M = rnd(2, seed, seed)
    assert is_stably_isomorphic(tau(M, 2), tau(tau(M, 1), 1))


def test_serre_examples():
    r = serre_check(k(), k(), 0)
    assert (r.lhs, r.rhs) == (1, 1) and r.equal
    R = construct_free(E2, [0])
    for m in (-1, 0, 1):
        r = serre_check(R, k(), m)
        assert (r.lhs, r.rhs) == (0, 0)


@pytest.mark.parametrize("nvars", [2, 3])
@given(s1=seeds, s2=seeds, m=st.integers(-2, 2))
def test_serre_duality_dimensions(nvars, s1, s2, m):
    X, Y = rnd(nvars, s1, s1), rnd(nvars, s2, s2)
    assert serre_check(X, Y, m).equal


@given(seeds, seeds)
def test_auslander_reiten_specialization(s1, s2):
    X, Y = rnd(2, s1, s1), rnd(2, s2, s2)
    lhs = stable_dim(X, omega_power(Y, -1))
    assert lhs == stable_dim(Y, tau(X, 1))


def test_stable_isomorphism_examples():
    M = rnd(2, 11, 1)
    assert is_stably_isomorphic(M, direct_sum(M, construct_free(E2, [0])))
    assert not is_stably_isomorphic(k(), radical())
    assert is_stably_isomorphic(omega_power(omega_power(k(), 1), -1), k())


@given(seeds, st.integers(1, 2), st.integers(-3, 2))
def test_tau_below_is_a_quotient_of_tau(seed, i, top):
    M = rnd(3, seed, seed)
    assert tau_below(M, i, top) == truncate_above(tau(M, i), top)


@pytest.mark.parametrize("i", [1, 2])
@given(s1=seeds, s2=seeds)
def test_three_routes_to_ar_hom_agree(i, s1, s2):
    X, Y = rnd(3, s1, s1), rnd(3, s2, s2)
    full = stable_dim(tau(X, i), Y)
    assert stable_dim_from_tau(X, Y, i) == full
    assert stable_dim_balanced(X, Y, i) == full
