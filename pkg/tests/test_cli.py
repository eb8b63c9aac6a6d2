import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from bggkit import cli, fileformat
from bggkit.algebra import exterior, symmetric, twostep
from bggkit.corpus import builtin
from bggkit.fileformat import FormatError
from bggkit.grmodule import (ExtensionClass, construct_free, construct_simple, direct_sum,
                             ext1_0, random_module, shift)
from bggkit.koszul import random_linear_presentation

seeds = st.integers(0, 10**6)


def records(text):
    out = {}
    for line in text.splitlines():
        if "=" in line and " " not in line.split("=", 1)[0]:
            k, v = line.split("=", 1)
            out[k] = v
    return out


@pytest.fixture
def files(tmp_path):
    E2, E3 = exterior(2), exterior(3)
    mods = {
        "k2": construct_simple(E2, 0),
        "k3": construct_simple(E3, 0),
        "pair": builtin("nonsheaf-pair", 2).module,
        "pair3": builtin("nonsheaf-pair", 3).module,
        "R3": construct_free(E3, [0]),
        "kk": direct_sum(construct_simple(E2, 0), construct_simple(E2, 0)),
        "loewy": builtin("loewy2-rigid", 2).module,
        "gamma": construct_free(twostep(2), [0]),
        "S": construct_free(symmetric(2), [0], hi=4),
        "pres": random_linear_presentation(2, 2, 1, 4, 1),
        "twist3": builtin("twistmod:-1", 3).module,
    }
    paths = {}
    for name, M in mods.items():
        p = tmp_path / f"{name}.json"
        fileformat.write_module(M, p)
        paths[name] = str(p)
    broken = {"algebra": {"kind": "exterior", "nvars": 2}, "window": [0, 2],
              "dims": {"0": 1, "1": 1, "2": 1},
              "action": {"0": {"0": [["1"]], "1": [["1"]]}}}
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(broken))
    paths["broken"] = str(p)
    p = tmp_path / "garbage.json"
    p.write_text("{not json")
    paths["garbage"] = str(p)
    return paths


def run(*argv):
    return cli.run([str(a) for a in argv])


# ---- documented examples ----------------------------------------------------

def test_cohomology_of_structure_sheaf_on_line(files):
    out, code = run("cohomology", files["k2"], "--dmin", -3, "--dmax", 3, "--qmin", 0,
                    "--qmax", 2)
    assert code == 0
    assert "h 0 1 2" in out and "h 1 -2 1" in out and "h 0 -1 0" in out
    assert records(out)["euler"] == "ok"


def test_theorem15_on_simple(files):
    out, code = run("theorem15", files["k3"], "--format", "machine")
    rec = records(out)
    assert code == 0
    assert (rec["verified"], rec["end"], rec["ext1"]) == ("true", "1", "0")


def test_validate_broken_file(files):
    out, code = run("validate", files["broken"])
    assert code == 2
    rec = records(out)
    assert rec["violation"] == "square-zero" and rec["var"] == "0" and rec["degree"] == "0"


# ---- exit-code contract -----------------------------------------------------

@pytest.mark.parametrize("cmd,ok,bad,extra", [
    ("nice", "k2", "pair", []),
    ("linear", "k2", None, ["--bound", "2"]),
    ("rigid", "k2", "kk", []),
    ("rank", "k2", None, []),
    ("arvanish", ("k3", "k3"), None, ["--imax", "2"]),
    ("lemma14", "loewy", None, []),
    ("theorem15", "k2", None, []),
])
def test_exit_codes(files, cmd, ok, bad, extra):
    good = [files[f] for f in ok] if isinstance(ok, tuple) else [files[ok]]
    assert run(cmd, *good, *extra)[1] == 0
    if bad:
        assert run(cmd, files[bad], *extra)[1] == 1
    for broken in ("broken", "garbage"):
        n = len(good)
        assert run(cmd, *([files[broken]] * n), *extra)[1] == 2
    assert run(cmd, "/nonexistent/file.json", *([files[ok[0]]] if n == 2 else []), *extra)[1] == 2


def test_linear_fails_with_witness(tmp_path):
    from bggkit import qlinalg as ql
    from bggkit.grmodule import quotient, submodule_generated
    R = construct_free(exterior(2), [0])
    Q, _ = quotient(R, submodule_generated(R, {2: ql.identity(1)}))
    p = tmp_path / "q.json"
    fileformat.write_module(Q, p)
    out, code = run("linear", p, "--bound", 2)
    assert code == 1
    assert records(out)["witness.i"] == "1" and records(out)["witness.j"] == "2"


def test_rank_fails_for_non_bundle(files):
    out, code = run("rank", files["pair3"])
    assert code == 1 and records(out)["error"] == "not-a-bundle"


def test_input_errors_from_module_preconditions(files):
    assert run("arvanish", files["k2"], files["k2"])[1] == 2
    assert run("dual", files["pair"])[1] == 2
    assert run("gamma", files["k2"])[1] == 2
    assert run("lemma14", files["k2"])[1] == 2
    assert run("nosuchcommand")[1] == 2
    assert run("corpus", "banana")[1] == 2


# ---- every command runs ------------------------------------------------------

def test_remaining_commands(files, tmp_path):
    out, code = run("betti", files["k2"], "--length", 3, "--format", "machine")
    assert code == 0 and records(out)["beta.3.3"] == "4"
    out, code = run("serre", files["k2"], files["k2"], "--m", 0)
    assert code == 0 and records(out)["equal"] == "true"
    out, code = run("tau", files["k3"], "--out", tmp_path / "tau.json")
    assert code == 0 and fileformat.read_module(tmp_path / "tau.json").dims == \
        {-1: 6, 0: 8, 1: 3}
    out, code = run("scan", files["k3"], files["twist3"], "--imax", 2)
    assert code == 0 and records(out)["status"] == "distinct-components"
    out, code = run("dual", files["k2"], "--hi", 3, "--round-trip")
    assert code == 0 and records(out)["dual.dims"] == "0:1,1:2,2:3,3:4"
    assert records(out)["round_trip"] == "true"
    out, code = run("gamma", files["S"])
    assert code == 0 and records(out)["gamma.dims"] == "0:1,1:2"
    out, code = run("lemma12", files["S"], "--m", 1)
    assert code == 0 and records(out)["holds"] == "true"
    out, code = run("lemma13", files["pres"], "--i", 1)
    assert code == 0 and records(out)["status"] in ("verified", "hypothesis-fails")
    out, code = run("lemma14", files["gamma"])
    assert code == 0 and records(out)["reason"] == "projective"
    out, code = run("corpus", "twistmod:1", "--nvars", 2)
    assert code == 0 and records(out)["expected.rank"] == "1"


def test_lemma11_command(files, tmp_path):
    M = random_linear_presentation(2, 1, 0, 4, 0)
    N = random_linear_presentation(2, 1, 1, 4, 5)
    X = ext1_0(M, N)
    cls = X.basis[0] if X.dim else ExtensionClass(M, N, {})
    p = tmp_path / "ext.json"
    fileformat.write_extension(cls, p)
    out, code = run("lemma11", p)
    assert code == 0 and records(out)["agree"] == "true"
    assert run("lemma11", files["k2"])[1] == 2


@pytest.mark.parametrize("suite", ["lemma14", "serre", "lemma11", "lemma12"])
def test_sweeps(suite):
    out, code = run("sweep", suite, "--seed", 3, "--count", 3, "--format", "machine")
    rec = records(out)
    assert code == 0 and rec["failures"] == "0" and rec["seed"] == "3"


def test_machine_format_has_only_records(files):
    out, _ = run("nice", files["k2"], "--format", "machine")
    assert all("=" in line for line in out.splitlines())
    rec = records(out)
    assert rec["seed"] == "0" and rec["status"] == "nice-certified-randomized"


def test_output_is_deterministic(files):
    a = run("nice", files["pair"], "--seed", 5)
    assert a == run("nice", files["pair"], "--seed", 5)


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "bggkit", "validate", files["k2"],
                          "--format", "machine"], capture_output=True, text=True)
    assert res.returncode == 0 and "valid=true" in res.stdout


# ---- file format -------------------------------------------------------------

@pytest.mark.parametrize("name", ["simple:1", "free", "radical:1", "twistmod:2",
                                  "nonsheaf-pair", "loewy2-rigid"])
def test_export_round_trip(name, tmp_path):
    out, code = run("corpus", name, "--nvars", 3, "--export", "--format", "machine")
    assert code == 0
    assert fileformat.loads_module(out) == builtin(name, 3).module
    p = tmp_path / "x.json"
    assert run("corpus", name, "--nvars", 2, "--export", "--out", p)[1] == 0
    assert fileformat.read_module(p) == builtin(name, 2).module


@given(seeds)
def test_serialization_is_exact(seed):
    M = random_module(exterior(3), {0: 2, 1: 3, 2: 1}, seed, entry_range=9)
    M = shift(M, seed % 5 - 2)
    assert fileformat.loads_module(fileformat.dumps_module(M)) == M


def test_rationals_survive(tmp_path):
    from bggkit import qlinalg as ql
    from bggkit.grmodule import DegreewiseModule
    M = DegreewiseModule(exterior(2), {0: 1, 1: 1},
                         {(0, 0): ql.matrix([["2/3"]]), (1, 0): ql.matrix([["-7/5"]])})
    text = fileformat.dumps_module(M)
    assert "2/3" in text and "-7/5" in text
    assert fileformat.loads_module(text) == M


@pytest.mark.parametrize("obj,where", [
    ({"algebra": {"kind": "exterior", "nvars": 2}, "window": [0, 0], "dims": {"0": 1},
      "action": {"0": {"0": [["1"]]}}}, "action"),
    ({"algebra": {"kind": "weird", "nvars": 2}, "window": [0, 0], "dims": {"0": 1}}, "kind"),
    ({"algebra": {"kind": "exterior", "nvars": 2}, "window": [0, 1], "dims": {"0": 1, "1": 1},
      "action": {"0": {"0": [["x"]]}}}, "0"),
    ({"algebra": {"kind": "symmetric", "nvars": 2}, "dims": {"0": 1}}, "window"),
    ({"algebra": {"kind": "exterior", "nvars": 2}, "window": [0, 0], "dims": {"3": 1}},
     "outside window"),
])
def test_malformed_files_name_the_problem(obj, where):
    with pytest.raises(FormatError, match=where):
        fileformat.module_from_dict(obj)


def test_extension_round_trip():
    M = shift(construct_simple(exterior(2), 0), 1)
    N = construct_simple(exterior(2), 0)
    cls = ext1_0(M, N).basis[0]
    back = fileformat.extension_from_dict(json.loads(json.dumps(fileformat.extension_to_dict(cls))))
    assert back.source == M and back.target == N
    assert back.realize() == cls.realize()
