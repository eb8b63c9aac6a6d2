"""JSON module files.

Layout::

    {"algebra": {"kind": "exterior", "nvars": 2},
     "window": [0, 2],
     "dims": {"0": 1, "1": 2, "2": 1},
     "action": {"0": {"0": [["1"], ["0"]], ...}, ...}}

Matrices are lists of rows of rational strings ("p" or "p/q").  Extension
files hold {"source": module, "target": module, "cocycle": {j: {d: matrix}}}.
"""

from __future__ import annotations

import json
from pathlib import Path

from flint import fmpq_mat

from . import qlinalg as ql
from .algebra import AlgebraKind
from .grmodule import DegreewiseModule, ExtensionClass, ModuleError


class FormatError(ValueError):
    pass


def _rat_str(x) -> str:
    return str(x)


def matrix_to_rows(A: fmpq_mat) -> list[list[str]]:
    c = A.ncols()
    ent = A.entries()
    return [[_rat_str(x) for x in ent[i * c:(i + 1) * c]] for i in range(A.nrows())]


def _parse_matrix(rows, where: str, shape: tuple[int, int]) -> fmpq_mat:
    r, c = shape
    if not isinstance(rows, list) or len(rows) != r:
        raise FormatError(f"{where}: expected {r} rows, got {rows!r:.60}")
    for row in rows:
        if not isinstance(row, list) or len(row) != c:
            raise FormatError(f"{where}: expected rows of length {c}")
    try:
        return ql.matrix([[str(x) for x in row] for row in rows], ncols=c)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise FormatError(f"{where}: bad rational entry ({e})") from None


def module_to_dict(M: DegreewiseModule) -> dict:
    act = {}
    for (j, d), A in sorted(M.actions().items()):
        act.setdefault(str(j), {})[str(d)] = matrix_to_rows(A)
    return {
        "algebra": {"kind": M.kind, "nvars": M.nvars},
        "window": [M.lo, M.hi],
        "dims": {str(d): k for d, k in M.dims.items()},
        "action": act,
    }


def module_from_dict(obj) -> DegreewiseModule:
    if not isinstance(obj, dict):
        raise FormatError("top level: expected an object")
    try:
        alg = obj["algebra"]
        a = AlgebraKind(alg["kind"], int(alg["nvars"]))
    except (KeyError, TypeError) as e:
        raise FormatError(f"algebra: missing field {e}") from None
    except ValueError as e:
        raise FormatError(f"algebra: {e}") from None
    try:
        dims = {int(d): int(k) for d, k in obj.get("dims", {}).items()}
    except (ValueError, AttributeError):
        raise FormatError("dims: expected a map of integer strings to integers") from None
    window = obj.get("window")
    if window is None and a.kind == "symmetric":
        raise FormatError("window: required for polynomial-ring modules")
    if window is not None:
        if not (isinstance(window, list) and len(window) == 2):
            raise FormatError("window: expected [lo, hi]")
        window = (int(window[0]), int(window[1]))
        for d, k in dims.items():
            if k and not window[0] <= d <= window[1]:
                raise FormatError(f"dims: degree {d} outside window {list(window)}")
    action = {}
    for js, per in obj.get("action", {}).items():
        try:
            j = int(js)
        except ValueError:
            raise FormatError(f"action: bad variable index {js!r}") from None
        if not 0 <= j < a.nvars:
            raise FormatError(f"action: variable index {j} out of range")
        for ds, rows in per.items():
            try:
                d = int(ds)
            except ValueError:
                raise FormatError(f"action[{j}]: bad degree {ds!r}") from None
            shape = (dims.get(d + 1, 0), dims.get(d, 0))
            action[(j, d)] = _parse_matrix(rows, f"action[{j}][{d}]", shape)
    try:
        return DegreewiseModule(a, dims, action, window if a.kind == "symmetric" else None)
    except ModuleError as e:
        raise FormatError(str(e)) from None


def dumps_module(M: DegreewiseModule) -> str:
    return json.dumps(module_to_dict(M), indent=1, sort_keys=True)


def loads_module(text: str) -> DegreewiseModule:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return module_from_dict(obj)


def read_module(path) -> DegreewiseModule:
    return loads_module(Path(path).read_text(encoding="utf-8"))


def write_module(M: DegreewiseModule, path) -> None:
    Path(path).write_text(dumps_module(M) + "\n", encoding="utf-8")


def extension_to_dict(cls: ExtensionClass) -> dict:
    coc = {}
    for (j, d), A in sorted(cls.cocycle.items()):
        coc.setdefault(str(j), {})[str(d)] = matrix_to_rows(A)
    return {"source": module_to_dict(cls.source), "target": module_to_dict(cls.target),
            "cocycle": coc}


def extension_from_dict(obj) -> ExtensionClass:
    if not isinstance(obj, dict) or "source" not in obj or "target" not in obj:
        raise FormatError("extension: expected keys source, target, cocycle")
    M = module_from_dict(obj["source"])
    N = module_from_dict(obj["target"])
    coc = {}
    for js, per in obj.get("cocycle", {}).items():
        j = int(js)
        for ds, rows in per.items():
            d = int(ds)
            coc[(j, d)] = _parse_matrix(rows, f"cocycle[{j}][{d}]", (N.dim(d + 1), M.dim(d)))
    return ExtensionClass(M, N, coc)


def read_extension(path) -> ExtensionClass:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return extension_from_dict(obj)


def write_extension(cls: ExtensionClass, path) -> None:
    Path(path).write_text(json.dumps(extension_to_dict(cls), indent=1, sort_keys=True) + "\n",
                          encoding="utf-8")
