"""Module input files and the shipped example corpus.

An input file is UTF-8 JSON::

    {"label": "m^2", "characteristic": 32003, "variables": ["x", "y"],
     "matrix": [["y", "0"], ["-x", "y"], ["0", "-x"]]}

Rows are generators, columns are relations.  A label of the form
``m^a1+m^a2+...`` marks a direct sum of powers of the maximal ideal of
k[x, y]; such inputs are integrally closed by construction.
"""

import json
import re
from importlib import resources
from pathlib import Path

from .kernel import ParseError, PolyRing, field_for
from .presented import NotGradedError, PresentedModule

CORPUS = ("coker_xy", "m2", "x4_x3y_xy3_y4", "m_plus_m", "m_plus_m2", "linear_d3", "free2")
_POWERS = re.compile(r"^m\^\d+(\+m\^\d+)*$")


class InputError(ValueError):
    """Malformed or out-of-scope module input."""


def corpus_path(name):
    """Path of a shipped corpus file (name without ``.json``)."""
    ref = resources.files("pdcore") / "corpus" / f"{name}.json"
    return Path(str(ref))


def load_corpus(name, characteristic=None):
    return load_module_file(corpus_path(name), characteristic)


def load_module_file(path, characteristic=None):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return module_from_dict(data, characteristic)


def module_from_dict(data, characteristic=None):
    """Build a PresentedModule from the decoded JSON of an input file."""
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    for key in ("characteristic", "variables", "matrix"):
        if key not in data:
            raise InputError(f"missing field {key!r}")
    char = data["characteristic"] if characteristic is None else characteristic
    if not isinstance(char, int) or char < 0:
        raise InputError("characteristic must be 0 or a prime")
    try:
        ring = PolyRing(field_for(char), data["variables"])
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None
    matrix = data["matrix"]
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise InputError("matrix must be a list of rows")
    rows = []
    for i, row in enumerate(matrix):
        parsed = []
        for j, text in enumerate(row):
            if not isinstance(text, str):
                raise InputError(f"entry ({i}, {j}) is not a string")
            try:
                parsed.append(ring.parse(text))
            except ParseError as exc:
                raise InputError(f"entry ({i}, {j}) {text!r}: {exc}") from None
        rows.append(parsed)
    try:
        E = PresentedModule(ring, rows, n=len(rows), label=data.get("label"))
        E.grading()
    except NotGradedError as exc:
        raise InputError(f"presentation is not graded: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return E


def powers_presentation(ring, exponents):
    """Presentation of m^a1 + ... + m^ak over k[x, y] (block diagonal).

    m^a is generated by x^a, x^(a-1) y, ..., y^a with relations
    y g_i - x g_(i+1).
    """
    x, y = ring.gens()
    zero = ring.zero
    blocks = []
    for a in exponents:
        blocks.append([[y if r == c else -x if r == c + 1 else zero for c in range(a)]
                       for r in range(a + 1)])
    n = sum(len(b) for b in blocks)
    m = sum(len(b[0]) for b in blocks)
    mat = [[zero] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for r, row in enumerate(b):
            for c, v in enumerate(row):
                mat[r0 + r][c0 + c] = v
        r0 += len(b)
        c0 += len(b[0])
    return mat


def powers_exponents(E):
    """Exponents (a1, ..., ak) if E is labelled and presented as a direct
    sum of powers of m in two variables, else None."""
    if E.ring.nvars != 2 or not E.label or not _POWERS.match(E.label):
        return None
    exps = [int(t[2:]) for t in E.label.split("+")]
    if any(a < 1 for a in exps):
        return None
    if powers_presentation(E.ring, exps) != E.matrix:
        return None
    return exps


def module_to_dict(E):
    return {
        "label": E.label,
        "characteristic": E.ring.field.characteristic,
        "variables": list(E.ring.var_names),
        "matrix": [[str(x) for x in row] for row in E.matrix],
    }
