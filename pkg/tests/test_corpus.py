import pytest

from bggkit.algebra import exterior
from bggkit.bgg import is_nice, rigidity_report, sheaf_rank, concentration_degree
from bggkit.corpus import (NAMES, builtin, exterior_corpus, linear_exterior_corpus,
                           linear_presentation_builders, linear_symmetric_builders,
                           nice_corpus, random_nice)
from bggkit.grmodule import (ModuleError, construct_simple, end0_is_local, ext1_0, hom0,
                             is_isomorphic_0, validate)
from bggkit.homres import is_linear
from bggkit.koszul import lemma14_check
from bggkit.stablecat import is_stably_isomorphic, omega_power, stable_dim


def check_expected(entry):
    """Recompute every expected value of a corpus entry."""
    M = entry.module
    for key, want in entry.expected.items():
        if key == "nice":
            got = is_nice(M).nice
        elif key == "rank":
            got = sheaf_rank(M)
        elif key == "end_stable_dim":
            got = stable_dim(M, M)
        elif key == "exceptional":
            got = rigidity_report(M, M.nvars - 1).exceptional
        elif key == "sheaf_degree":
            got = concentration_degree(M)
        elif key == "stably_zero":
            got = stable_dim(M, M) == 0
        elif key == "indecomposable":
            got = end0_is_local(M).local
        elif key == "stably_isomorphic_to":
            assert want == "omega:simple:0"
            got, want = is_stably_isomorphic(M, omega_power(construct_simple(M.algebra, 0), 1)), True
        elif key == "end_dim":
            got = hom0(M, M).dim
        elif key == "ext1_self":
            got = ext1_0(M, M).dim
        elif key == "lemma14":
            got = lemma14_check(M).status
        else:
            raise AssertionError(f"unchecked expectation {key}")
        assert got == want, (entry.name, key, got, want)


CASES = ["simple:0", "simple:2", "simple:-1", "free", "radical:0", "radical:1", "radical:2",
         "radical:3", "radical:5", "twistmod:-2", "twistmod:-1", "twistmod:0", "twistmod:1",
         "twistmod:2", "nonsheaf-pair", "loewy2-rigid"]


@pytest.mark.parametrize("nvars", [2, 3])
@pytest.mark.parametrize("name", CASES)
def test_expected_values_are_recomputed(name, nvars):
    e = builtin(name, nvars)
    assert validate(e.module)
    check_expected(e)


def test_builtin_examples():
    e = builtin("simple:0", 3)
    assert e.expected["rank"] == 1 and e.expected["exceptional"]
    assert builtin("twistmod:-1", 3).module.dims == {0: 3, 1: 3, 2: 1}
    assert builtin("nonsheaf-pair", 2).module.dims == {-1: 1, 0: 1}
    assert builtin("simple:2", 2).module.dims == {-2: 1}


def test_unknown_names_list_the_known_ones():
    with pytest.raises(ModuleError, match="radical:p"):
        builtin("banana", 2)
    with pytest.raises(ModuleError):
        builtin("simple:x", 2)
    assert len(NAMES) == 6


def test_random_nice_examples():
    assert random_nice(2, {0: 1}, 0) == construct_simple(exterior(2), 0)
    a = random_nice(2, {0: 2, 1: 1}, 7)
    assert a == random_nice(2, {0: 2, 1: 1}, 7)
    for s in range(6):
        M = random_nice(3, {0: 4, 1: 1}, s)
        if M is not None:
            assert validate(M) and is_nice(M).nice


def test_nice_corpus_members_are_nice():
    C = nice_corpus(3, seeds=range(3))
    assert {f"twistmod:{t}" for t in range(-2, 3)} <= set(C)
    for name, M in C.items():
        assert is_nice(M).nice, name


def test_exterior_corpus_is_valid():
    for nvars in (2, 3):
        for name, M in exterior_corpus(nvars).items():
            assert validate(M), name


@pytest.mark.parametrize("nvars", [2, 3])
def test_linear_corpora(nvars):
    for name, M in linear_exterior_corpus(nvars).items():
        assert is_linear(M, 4), name
    for name, b in linear_symmetric_builders(nvars).items():
        X = b(4)
        assert validate(X) and X.hi == 4, name
    pres = linear_presentation_builders(nvars, 3, seed=1)
    assert len(pres) == 3
    for b in pres.values():
        assert validate(b(3))


def test_twist_modules_are_distinct():
    C = nice_corpus(3)
    mods = list(C.values())
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            assert not is_isomorphic_0(mods[i], mods[j])
