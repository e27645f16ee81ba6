"""JSON input and output for presentations and raw double complexes.

Three document types share one versioned schema (``schema/input.schema.json``):

``real``
    ``{"n": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}], "J": [[...]]}``
``coframe``
    ``{"m": 3, "d": [{"k": 3, "terms": [{"i": 1, "j": 2, "bar_j": false, "c": "-1"}]}]}``
``bicomplex``
    ``{"P": 1, "Q": 1, "dims": [[1, 1], [1, 1]], "del": [{"p": 0, "q": 0, "matrix": [["1"]]}]}``

Every document also carries ``"schema_version": 1``.  Scalars are JSON
integers or exact strings (``"-3/4"``, ``"1/2-5/3 i"``); JSON floats are
rejected so that nothing passes through binary floating point.

>>> doc = to_document(builtin("heisenberg"))
>>> doc["brackets"] == [{"i": 1, "j": 2, "k": 3, "c": "1"}]
True
>>> from_document(doc) == builtin("heisenberg")
True
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .bicomplex import Bicomplex
from .exact_linalg import GaussianRational, QMatrix, format_gaussian, parse_gaussian
from .lie import ComplexCoframePresentation, LieAlgebraPresentation, UnknownExample, builtin

SCHEMA_VERSION = 1
BUILTIN_PREFIX = "builtin:"


class ParseError(ValueError):
    """Text that is not JSON; carries the location and what was expected there."""

    def __init__(self, source: str, line: int, col: int, expected: str):
        self.source, self.line, self.col, self.expected = source, line, col, expected
        super().__init__(f"{source}:{line}:{col}: {expected}")


class SchemaError(ValueError):
    """Well-formed JSON that does not describe a valid input."""

    def __init__(self, path: str, message: str):
        self.path, self.message = path, message
        super().__init__(f"{path}: {message}")


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("bicohom").joinpath("schema/input.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _where(path) -> str:
    out = "$"
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def parse_text(text: str, source: str = "<input>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(source, exc.lineno, exc.colno, exc.msg) from None
    validate_document(doc)
    return doc


def validate_document(doc) -> None:
    validator = jsonschema.Draft202012Validator(schema())
    err = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if err is not None:
        raise SchemaError(_where(err.absolute_path), err.message)


# -- decoding ------------------------------------------------------------------


def _num(x, path) -> GaussianRational:
    if isinstance(x, bool):
        raise SchemaError(path, "expected a number")
    if isinstance(x, int):
        return GaussianRational(x)
    try:
        return parse_gaussian(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(path, f"cannot read {x!r} as an exact Gaussian rational ({exc})") from None


def _matrix(rows, path, cols: int) -> QMatrix:
    for r, row in enumerate(rows):
        if len(row) != cols:
            raise SchemaError(f"{path}[{r}]", f"expected {cols} entries, got {len(row)}")
    return QMatrix.from_rows([[_num(x, f"{path}[{r}][{c}]") for c, x in enumerate(row)]
                              for r, row in enumerate(rows)], cols=cols)


def from_document(doc: dict):
    """Presentation or :class:`Bicomplex` described by a schema-valid document."""
    validate_document(doc)
    kind = doc["type"]
    name = doc.get("name", "")
    if kind == "real":
        n = doc["n"]
        entries = []
        for t, b in enumerate(doc["brackets"]):
            path = f"$.brackets[{t}]"
            if max(b["i"], b["j"], b["k"]) > n:
                raise SchemaError(path, f"index exceeds n = {n}")
            entries.append((b["i"], b["j"], b["k"], _num(b["c"], path + ".c")))
        J = None
        if "J" in doc:
            if len(doc["J"]) != n:
                raise SchemaError("$.J", f"expected {n} rows")
            J = _matrix(doc["J"], "$.J", n)
        try:
            return LieAlgebraPresentation.from_brackets(n, entries, name, J)
        except ValueError as exc:
            raise SchemaError("$.brackets", str(exc)) from None
    if kind == "coframe":
        m = doc["m"]
        terms: dict = {}
        for t, eq in enumerate(doc["d"]):
            path = f"$.d[{t}]"
            k = eq["k"]
            if k > m:
                raise SchemaError(path + ".k", f"index exceeds m = {m}")
            lst = terms.setdefault(k, [])
            for s, term in enumerate(eq["terms"]):
                tp = f"{path}.terms[{s}]"
                if max(term["i"], term["j"]) > m:
                    raise SchemaError(tp, f"index exceeds m = {m}")
                lst.append((term["i"], term.get("bar_i", False), term["j"], term["bar_j"],
                            _num(term["c"], tp + ".c")))
        return ComplexCoframePresentation(m, terms, name)
    return _bicomplex_from(doc)


def _bicomplex_from(doc: dict) -> Bicomplex:
    P, Q = doc["P"], doc["Q"]
    grid = doc["dims"]
    if len(grid) != P + 1 or any(len(col) != Q + 1 for col in grid):
        raise SchemaError("$.dims", f"expected a {P + 1} x {Q + 1} array indexed dims[p][q]")
    dims = {(p, q): grid[p][q] for p in range(P + 1) for q in range(Q + 1)}

    def dim(p, q):
        return dims.get((p, q), 0)

    def blocks(key, target):
        out = {}
        for t, blk in enumerate(doc.get(key, [])):
            p, q = blk["p"], blk["q"]
            path = f"$.{key}[{t}]"
            if (p, q) not in dims:
                raise SchemaError(path, f"bidegree ({p},{q}) lies outside the box")
            if (p, q) in out:
                raise SchemaError(path, f"duplicate block at ({p},{q})")
            rows = blk["matrix"]
            want = dim(*target(p, q))
            if len(rows) != want:
                raise SchemaError(path + ".matrix", f"expected {want} rows, got {len(rows)}")
            out[(p, q)] = _matrix(rows, path + ".matrix", dim(p, q))
        return out

    dl = blocks("del", lambda p, q: (p + 1, q))
    dbl = blocks("delbar", lambda p, q: (p, q + 1))
    conj = None
    if "conj" in doc:
        if P != Q:
            raise SchemaError("$.conj", "conjugation data needs P == Q")
        conj = blocks("conj", lambda p, q: (q, p))
    return Bicomplex(P, Q, dims, dl, dbl, conj)


# -- encoding ------------------------------------------------------------------


def _rows(M: QMatrix) -> list:
    return [[format_gaussian(x) for x in row] for row in M.to_rows()]


def to_document(obj) -> dict:
    """Inverse of :func:`from_document` (labels on bicomplexes are not stored)."""
    doc: dict = {"schema_version": SCHEMA_VERSION}
    if isinstance(obj, LieAlgebraPresentation):
        doc.update(type="real", n=obj.n)
        doc["brackets"] = [{"i": i, "j": j, "k": k, "c": format_gaussian(v)}
                           for (i, j, k), v in sorted(obj.c.items())]
        if obj.complex_structure is not None:
            doc["J"] = _rows(obj.complex_structure.J)
    elif isinstance(obj, ComplexCoframePresentation):
        doc.update(type="coframe", m=obj.m)
        doc["d"] = [{"k": k, "terms": [{"i": i, "bar_i": bi, "j": j, "bar_j": bj, "c": format_gaussian(c)}
                                       for i, bi, j, bj, c in obj.terms[k]]}
                    for k in sorted(obj.terms)]
    elif isinstance(obj, Bicomplex):
        doc.update(type="bicomplex", P=obj.P, Q=obj.Q)
        doc["dims"] = [[obj.dim(p, q) for q in range(obj.Q + 1)] for p in range(obj.P + 1)]
        for key, get in (("del", obj.del_), ("delbar", obj.delbar)):
            doc[key] = [{"p": p, "q": q, "matrix": _rows(get(p, q))}
                        for p, q in obj.bidegrees() if not get(p, q).is_zero()]
        if obj.has_conj:
            doc["conj"] = [{"p": p, "q": q, "matrix": _rows(obj.conj(p, q))}
                           for p, q in obj.bidegrees() if obj.dim(p, q)]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    if getattr(obj, "name", ""):
        doc["name"] = obj.name
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_input(spec: str):
    """``builtin:<name>`` or a path to a JSON document."""
    if spec.startswith(BUILTIN_PREFIX):
        return builtin(spec[len(BUILTIN_PREFIX):])
    path = Path(spec)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(spec, 0, 0, f"cannot read file ({exc.strerror})") from None
    return from_document(parse_text(text, spec))


__all__ = ["ParseError", "SchemaError", "UnknownExample", "SCHEMA_VERSION", "schema", "parse_text",
           "validate_document", "from_document", "to_document", "dumps", "load_input"]
