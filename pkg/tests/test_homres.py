import pytest
from hypothesis import given, strategies as st

from bggkit import qlinalg as ql
from bggkit.algebra import exterior, symmetric, twostep
from bggkit.grmodule import (ModuleError, construct_free, construct_simple, cover, direct_sum,
                             is_isomorphic_0, quotient, random_module, shift,
                             strip_free_summands, submodule_generated, truncate, validate)
from bggkit.homres import (betti_table, cosyzygy, generator_degrees, injective_envelope,
                           is_linear, projective_cover, syzygy, syzygy_chain)
from bggkit.koszul import koszul_dual
from bggkit.corpus import linear_exterior_corpus

E2, E3 = exterior(2), exterior(3)
seeds = st.integers(0, 10**6)


def k(a=E2):
    return construct_simple(a, 0)


def radical(a=E2):
    return truncate(construct_free(a, [0]), 1)


def test_projective_cover_examples():
    R = construct_free(E2, [0])
    P, p = projective_cover(k())
    assert P == R and p.is_homomorphism()
    P, p = projective_cover(radical())
    assert P == construct_free(E2, [1, 1])
    P, p = projective_cover(R)
    assert P == R and p.is_invertible()
    P, _ = projective_cover(truncate(k(), 1))
    assert P.is_zero()


@pytest.mark.parametrize("a,profile", [(E3, {0: 2, 1: 3, 2: 2}), (twostep(3), {0: 2, 1: 3}),
                                       (exterior(4), {0: 1, 1: 3, 2: 2})])
@given(seed=seeds)
def test_cover_is_surjective_and_minimal(a, profile, seed):
    M = random_module(a, profile, seed)
    c = cover(M)
    P, p = projective_cover(M)
    assert p.is_homomorphism()
    for d in M.degrees():
        if M.dim(d):
            assert ql.rank(p.at(d)) == M.dim(d)
    # kernel sits inside J P, so no degree-zero units in the differential
    for d in P.degrees():
        K = c.kernel(d)
        if K.dim == 0:
            continue
        parts = [P.act(j, d - 1) for j in range(a.nvars)] if P.dim(d - 1) else []
        assert parts
        JP = ql.echelon_subspace(P.dim(d), ql.hstack(parts))
        assert JP.contains(K.basis)


def test_syzygy_examples():
    assert syzygy(k()).dims == {1: 2, 2: 1}
    assert syzygy(k()) == radical()
    assert syzygy(construct_free(E2, [0, 3])).is_zero()
    assert syzygy(syzygy(k())).dims == {2: 3, 3: 2}


def test_cosyzygy_examples():
    assert cosyzygy(k()).dims == {-2: 1, -1: 2}
    assert cosyzygy(construct_free(E2, [0])).is_zero()
    back = strip_free_summands(cosyzygy(syzygy(k())))
    assert is_isomorphic_0(back.core, k())
    with pytest.raises(ModuleError):
        cosyzygy(construct_free(twostep(2), [0]))


def test_injective_envelope_of_simple():
    # the socle generator of R(n+1) sits in degree 0
    assert is_isomorphic_0(injective_envelope(k()), construct_free(E2, [-2]))


@given(seeds)
def test_syzygy_and_cosyzygy_are_stably_inverse(seed):
    M = strip_free_summands(random_module(E2, {0: 2, 1: 3, 2: 1}, seed)).core
    a = strip_free_summands(cosyzygy(syzygy(M))).core
    b = strip_free_summands(syzygy(cosyzygy(M))).core
    assert is_isomorphic_0(a, M)
    assert is_isomorphic_0(b, M)


@given(seeds)
def test_syzygies_have_no_free_summands(seed):
    M = random_module(E3, {0: 2, 1: 3, 2: 1}, seed)
    K = syzygy(M)
    assert validate(K)
    assert strip_free_summands(K).free_part == ()


@pytest.mark.parametrize("nvars,bound", [(2, 3), (3, 2)])
def test_betti_table_of_simple(nvars, bound):
    from math import comb
    t = betti_table(k(exterior(nvars)), bound)
    for i in range(bound + 1):
        assert t.row(i) == {i: comb(i + nvars - 1, nvars - 1)}
    assert t[(1, 2)] == 0


def test_betti_table_of_free():
    t = betti_table(construct_free(E3, [0, 0, 2]), 3)
    assert t.entries == {(0, 0): 2, (0, 2): 1}
    assert t.render().splitlines()[1].split()[1:] == ["2", ".", ".", "."]
    with pytest.raises(ValueError):
        betti_table(k(), -1)


@given(seeds)
def test_betti_rows_match_syzygy_generators(seed):
    M = random_module(E2, {0: 2, 1: 2, 2: 1}, seed)
    t = betti_table(M, 3)
    chain = syzygy_chain(M, 3)
    for i, K in enumerate(chain):
        assert t.total(i) == len(generator_degrees(K))
        assert all(j >= min(M.degrees()) + i for (ii, j) in t.entries if ii == i)


@given(seeds)
def test_betti_table_is_shift_equivariant(seed):
    M = random_module(E2, {0: 2, 1: 3}, seed)
    t, u = betti_table(M, 2), betti_table(shift(M, -2), 2)
    assert u.entries == {(i, j + 2): b for (i, j), b in t.entries.items()}


def test_linearity_examples():
    assert is_linear(k(), 4)
    assert is_linear(k(E3), 3)
    assert is_linear(shift(radical(), 1), 3)
    R = construct_free(E2, [0])
    soc = submodule_generated(R, {2: ql.identity(1)})
    Q, _ = quotient(R, soc)
    assert Q.dims == {0: 1, 1: 2}
    rep = is_linear(Q, 2)
    assert not rep and rep.witness == (1, 2)


def test_linearity_needs_single_generation_degree():
    with pytest.raises(ModuleError, match=r"\[0, 2\]"):
        is_linear(direct_sum(k(), shift(k(), -2)), 2)


def test_symmetric_side_resolution():
    S = symmetric(2)
    kS = construct_simple(S, 0, hi=5)
    assert syzygy(kS).dims == {1: 2, 2: 3, 3: 4, 4: 5, 5: 6}
    # Koszul complex ranks 1, 2, 1 up to the window edge
    t = betti_table(kS, 2)
    assert t[(0, 0)] == 1 and t[(1, 1)] == 2 and t[(2, 2)] == 1


@pytest.mark.parametrize("nvars", [2, 3])
def test_linear_betti_numbers_match_koszul_dual(nvars):
    for name, M in linear_exterior_corpus(nvars).items():
        t = betti_table(M, 4)
        D = koszul_dual(M, 4).dual
        for j in range(5):
            assert t[(j, j)] == D.dim(j), (name, j)
