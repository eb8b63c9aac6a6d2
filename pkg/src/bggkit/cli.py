"""Command-line front end.

Every command prints a human-readable report followed by ``key=value``
records; ``--format machine`` prints the records only.  Exit status is 0
when the property holds, 1 when it fails and 2 for invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import bgg, corpus, fileformat, grmodule, harness, homres, koszul, stablecat
from .fileformat import FormatError
from .grmodule import ModuleError, validate


@dataclass
class Report:
    human: list[str] = field(default_factory=list)
    records: dict = field(default_factory=dict)
    extra: list[str] = field(default_factory=list)
    exit_code: int = 0

    def render(self, fmt: str) -> str:
        recs = [f"{k}={_fmt(v)}" for k, v in sorted(self.records.items())]
        recs += self.extra
        if fmt == "machine":
            return "\n".join(recs)
        return "\n".join(self.human + ([""] if self.human else []) + recs)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, dict):
        return ",".join(f"{k}:{_fmt(x)}" for k, x in sorted(v.items()))
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    if v is None:
        return "none"
    return str(v)


class InputError(Exception):
    """Invalid input; ``records`` become key=value lines."""

    def __init__(self, message: str = "", **records):
        super().__init__(message or " ".join(f"{k}={v}" for k, v in records.items()))
        self.records = records or {"message": message}


def load(path: str) -> grmodule.DegreewiseModule:
    try:
        M = fileformat.read_module(path)
    except FileNotFoundError:
        raise InputError(file=path, error="not-found") from None
    except FormatError as e:
        raise InputError(file=path, error=str(e)) from None
    rep = validate(M)
    if not rep:
        v = rep.violation
        raise InputError(violation=v.relation, var=v.pair[0], degree=v.degree, file=path)
    return M


def _dims(M) -> str:
    return _fmt(M.dims) if M.dims else "zero"


def _module_out(rep: Report, M, args, prefix="result"):
    rep.records[f"{prefix}.dims"] = _dims(M)
    rep.human.append(f"{prefix}: {M!r}")
    if getattr(args, "out", None):
        fileformat.write_module(M, args.out)
        rep.records["written"] = args.out


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> Report:
    M = load(args.file)
    return Report([f"valid {M!r}"], {"valid": True, "dims": _dims(M), "kind": M.kind})


def cmd_betti(args) -> Report:
    M = load(args.file)
    T = homres.betti_table(M, args.length)
    rec = {f"beta.{i}.{j}": b for (i, j), b in T.entries.items()}
    rec["length"] = args.length
    return Report([T.render()], rec)


def cmd_linear(args) -> Report:
    M = load(args.file)
    try:
        r = homres.is_linear(M, args.bound)
    except ModuleError as e:
        raise InputError(str(e)) from None
    rec = {"linear": r.linear, "bound": args.bound, "generation_degree": r.generation_degree}
    if r.witness:
        rec["witness.i"], rec["witness.j"] = r.witness
    text = "linear through bound" if r.linear else f"not linear, witness {r.witness}"
    return Report([text], rec, exit_code=0 if r.linear else 1)


def cmd_nice(args) -> Report:
    M = load(args.file)
    v = bgg.is_nice(M, args.trials, args.seed)
    rec = {"status": v.status, "seed": args.seed, "trials": args.trials,
           "points": v.points_tested}
    if v.witness:
        rec["witness"] = [str(c) for c in v.witness]
        rec["homology"] = v.homology.dims
    return Report([v.status], rec, exit_code=0 if v.nice else 1)


def cmd_cohomology(args) -> Report:
    M = load(args.file)
    try:
        T = bgg.cohomology_table(M, args.dmin, args.dmax, args.qmin, args.qmax)
    except bgg.InternalInconsistency as e:
        return Report([str(e)], {"error": "euler-mismatch"}, exit_code=1)
    rec = {"n": T.n, "dmin": args.dmin, "dmax": args.dmax, "qmin": args.qmin,
           "qmax": args.qmax, "euler": "ok"}
    return Report([T.render()], rec, extra=T.records())


def cmd_rank(args) -> Report:
    M = load(args.file)
    try:
        r = bgg.sheaf_rank(M, args.trials, args.seed)
    except bgg.NotABundle as e:
        return Report([str(e)], {"error": "not-a-bundle", "seed": args.seed}, exit_code=1)
    return Report([f"rank {r}"], {"rank": r, "seed": args.seed, "trials": args.trials})


def cmd_rigid(args) -> Report:
    M = load(args.file)
    r = bgg.rigidity_report(M, args.extbound)
    rec = {"end": r.end_stable_dim, "indecomposable": r.indecomposable,
           "residue_dim": r.residue_dim, "exceptional": r.exceptional}
    for i, v in r.ext_self_dims.items():
        rec[f"ext{i}"] = v
    return Report([f"{r}"], rec, exit_code=0 if r.exceptional else 1)


def cmd_theorem15(args) -> Report:
    M = load(args.file)
    r = bgg.theorem15_check(M, args.trials, args.seed)
    rec = {"status": r.status, "verified": r.status == bgg.VERIFIED, "seed": args.seed,
           "end": r.end_stable_dim, "ext1": r.ext1, "residue_dim": r.residue_dim}
    if r.reason:
        rec["reason"] = r.reason.replace(" ", "-")
    return Report([f"{r.status} {r.reason}".strip()], rec,
                  exit_code=1 if r.status == bgg.COUNTEREXAMPLE else 0)


def cmd_serre(args) -> Report:
    X, Y = load(args.filex), load(args.filey)
    r = stablecat.serre_check(X, Y, args.m)
    return Report([f"lhs {r.lhs} rhs {r.rhs}"], {"lhs": r.lhs, "rhs": r.rhs, "equal": r.equal,
                                                 "m": args.m}, exit_code=0 if r.equal else 1)


def cmd_tau(args) -> Report:
    M = load(args.file)
    rep = Report(records={"power": args.power})
    _module_out(rep, stablecat.tau(M, args.power), args)
    return rep


def cmd_arvanish(args) -> Report:
    B, C = load(args.fileb), load(args.filec)
    try:
        rows = bgg.ar_vanishing_check(B, C, args.imax)
    except ModuleError as e:
        raise InputError(str(e)) from None
    rec = {f"stable.{r.i}": r.stable_dim for r in rows}
    ok = all(r.passed for r in rows)
    rec["pass"] = ok
    return Report([f"i={r.i} stable={r.stable_dim}" for r in rows], rec, exit_code=0 if ok else 1)


def cmd_scan(args) -> Report:
    B, C = load(args.fileb), load(args.filec)
    try:
        r = bgg.component_scan(B, C, args.imax)
    except ModuleError as e:
        raise InputError(str(e)) from None
    return Report([r.status], {"status": r.status, "same_component": r.same_component,
                               "power": r.power, "imax": args.imax})


def cmd_dual(args) -> Report:
    M = load(args.file)
    try:
        c = koszul.koszul_dual(M, args.hi, round_trip=args.round_trip)
    except ModuleError as e:
        raise InputError(str(e)) from None
    rep = Report(records={"hi": args.hi})
    if c.round_trip_ok is not None:
        rep.records["round_trip"] = c.round_trip_ok
    _module_out(rep, c.dual, args, "dual")
    return rep


def cmd_gamma(args) -> Report:
    M = load(args.file)
    try:
        G = koszul.gamma_reduce(M)
    except ModuleError as e:
        raise InputError(str(e)) from None
    rep = Report()
    _module_out(rep, G, args, "gamma")
    return rep


def cmd_lemma11(args) -> Report:
    try:
        cls = fileformat.read_extension(args.file)
    except (FormatError, FileNotFoundError) as e:
        raise InputError(file=args.file, error=str(e)) from None
    if not cls.is_cocycle():
        raise InputError(error="cocycle-condition-fails", file=args.file)
    r = koszul.lemma11_check(cls)
    return Report([f"split_S={r.split_S} split_Gamma={r.split_Gamma}"],
                  {"split_S": r.split_S, "split_Gamma": r.split_Gamma, "agree": r.agree},
                  exit_code=0 if r.agree else 1)


def cmd_lemma12(args) -> Report:
    M = load(args.file)
    r = koszul.lemma12_check(M, args.m, args.r)
    return Report([f"ext1 dim {r.ext_dim}"], {"ext1": r.ext_dim, "holds": r.holds, "m": args.m,
                                              "r": args.r}, exit_code=0 if r.holds else 1)


def cmd_lemma13(args) -> Report:
    M = load(args.file)
    r = koszul.lemma13_check(M, args.i)
    return Report([r.status], {"status": r.status, "ext_to_C": r.ext_to_C,
                               "ext_self": r.ext_self, "i": args.i},
                  exit_code=1 if r.status == koszul.CONCLUSION_FAILS else 0)


def cmd_lemma14(args) -> Report:
    M = load(args.file)
    try:
        r = koszul.lemma14_check(M)
    except ModuleError as e:
        raise InputError(str(e)) from None
    rec = {"status": r.status, "end": r.end_dim, "residue_dim": r.residue_dim}
    if r.reason:
        rec["reason"] = r.reason.replace(" ", "-")
    return Report([f"{r.status} {r.reason}".strip()], rec,
                  exit_code=1 if r.status == koszul.CONCLUSION_FAILS else 0)


def cmd_corpus(args) -> Report:
    try:
        e = corpus.builtin(args.name, args.nvars)
    except (ModuleError, ValueError) as err:
        raise InputError(str(err)) from None
    if args.export:
        return Report([], {}, extra=[fileformat.dumps_module(e.module)]) if not args.out else \
            _export(e, args)
    rec = {"name": e.name, "dims": _dims(e.module), "nvars": args.nvars}
    for k, v in e.expected.items():
        rec[f"expected.{k}"] = v
    return Report([f"{e.name}: {e.module!r}"], rec)


def _export(e, args) -> Report:
    fileformat.write_module(e.module, args.out)
    return Report([f"wrote {args.out}"], {"name": e.name, "written": args.out})


def cmd_sweep(args) -> Report:
    fn = harness.SUITES[args.suite]
    s = fn(seed=args.seed, count=args.count)
    human = [f"{s.suite}: {s.total} cases, {len(s.failures)} failures"]
    human += [f"  {k}: {v}" for k, v in sorted(s.outcomes.items())]
    return Report(human, s.records(), exit_code=0 if s.ok else 1)


COMMANDS = {
    "validate": cmd_validate, "betti": cmd_betti, "linear": cmd_linear, "nice": cmd_nice,
    "cohomology": cmd_cohomology, "rank": cmd_rank, "rigid": cmd_rigid,
    "theorem15": cmd_theorem15, "serre": cmd_serre, "tau": cmd_tau, "arvanish": cmd_arvanish,
    "scan": cmd_scan, "dual": cmd_dual, "gamma": cmd_gamma, "lemma11": cmd_lemma11,
    "lemma12": cmd_lemma12, "lemma13": cmd_lemma13, "lemma14": cmd_lemma14,
    "corpus": cmd_corpus, "sweep": cmd_sweep,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"usage: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "machine"], default="human")
    p = _Parser(prog="bggkit", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, *files, **opts):
        sp = sub.add_parser(name, parents=[common])
        for f in files:
            sp.add_argument(f)
        for flag, (typ, default) in opts.items():
            sp.add_argument(f"--{flag}", type=typ, default=default,
                            required=default is None and typ is not bool)
        return sp

    add("validate", "file")
    add("betti", "file", length=(int, 3))
    add("linear", "file", bound=(int, 3))
    add("nice", "file", trials=(int, 8), seed=(int, 0))
    add("cohomology", "file", dmin=(int, -3), dmax=(int, 3), qmin=(int, 0), qmax=(int, 2))
    add("rank", "file", trials=(int, 8), seed=(int, 0))
    add("rigid", "file", extbound=(int, 2))
    add("theorem15", "file", trials=(int, 8), seed=(int, 0))
    add("serre", "filex", "filey", m=(int, 0))
    add("tau", "file", power=(int, 1), out=(str, ""))
    add("arvanish", "fileb", "filec", imax=(int, 3))
    add("scan", "fileb", "filec", imax=(int, 4))
    sp = add("dual", "file", hi=(int, 4), out=(str, ""))
    sp.add_argument("--round-trip", action="store_true")
    add("gamma", "file", out=(str, ""))
    add("lemma11", "file")
    add("lemma12", "file", m=(int, 0), r=(int, 1))
    add("lemma13", "file", i=(int, 1))
    add("lemma14", "file")
    sp = add("corpus", "name", nvars=(int, 3), out=(str, ""))
    sp.add_argument("--export", action="store_true")
    sp = sub.add_parser("sweep", parents=[common])
    sp.add_argument("suite", choices=sorted(harness.SUITES))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    return p


def run(argv: list[str]) -> tuple[str, int]:
    fmt = "machine" if "--format=machine" in argv or _flag_value(argv) == "machine" else "human"
    try:
        args = build_parser().parse_args(argv)
        rep = COMMANDS[args.command](args)
        fmt = args.format
    except InputError as e:
        recs = {"status": "invalid-input", **e.records}
        return Report(records=recs).render("machine"), 2
    except (ModuleError, FormatError) as e:
        return Report(records={"status": "invalid-input", "message": str(e)}).render("machine"), 2
    return rep.render(fmt), rep.exit_code


def _flag_value(argv):
    if "--format" in argv:
        i = argv.index("--format")
        if i + 1 < len(argv):
            return argv[i + 1]
    return None


def main(argv=None) -> int:
    out, code = run(sys.argv[1:] if argv is None else argv)
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
