import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicohom.bicomplex import Bicomplex, random_bicomplex
from bicohom.exact_linalg import GaussianRational
from bicohom.formats import (SCHEMA_VERSION, ParseError, SchemaError, dumps, from_document, load_input, parse_text,
                             schema, to_document, validate_document)
from bicohom.lie import (ComplexCoframePresentation, LieAlgebraPresentation, UnknownExample, builtin, iwasawa,
                         to_bicomplex)

BUILTINS = ["iwasawa", "iwasawa-real", "torus:1", "torus:2", "kodaira-thurston", "heisenberg"]


def real_doc(**extra):
    doc = {"schema_version": 1, "type": "real", "n": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "c": 1}]}
    doc.update(extra)
    return doc


def test_schema_is_draft_2020_12():
    s = schema()
    assert s["$schema"].endswith("2020-12/schema")
    assert SCHEMA_VERSION == 1


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_round_trip(name):
    obj = builtin(name)
    doc = to_document(obj)
    validate_document(doc)
    assert from_document(json.loads(dumps(doc))) == obj


@pytest.mark.parametrize("name", ["iwasawa", "kodaira-thurston"])
def test_bicomplex_round_trip(name):
    B = to_bicomplex(builtin(name))
    assert from_document(json.loads(dumps(to_document(B)))) == B


@given(st.integers(0, 10_000), st.integers(0, 3), st.integers(0, 3), st.booleans())
def test_random_bicomplex_round_trip(seed, P, Q, real):
    B = random_bicomplex(seed, P, Q, 3, real)
    text = dumps(to_document(B))
    assert from_document(parse_text(text)) == B
    assert dumps(to_document(from_document(json.loads(text)))) == text


def test_coframe_round_trip():
    cf = iwasawa()
    back = from_document(to_document(cf))
    assert isinstance(back, ComplexCoframePresentation) and back.terms == cf.terms


def test_exact_scalars():
    doc = real_doc(brackets=[{"i": 1, "j": 2, "k": 3, "c": "-3/4+1/2 i"}])
    g = from_document(doc)
    assert isinstance(g, LieAlgebraPresentation)
    assert g.c[(1, 2, 3)] == GaussianRational(Fraction(-3, 4), Fraction(1, 2))


def test_floats_rejected():
    with pytest.raises(SchemaError) as err:
        from_document(real_doc(brackets=[{"i": 1, "j": 2, "k": 3, "c": 0.5}]))
    assert err.value.path == "$.brackets[0].c"


def test_missing_version_and_unknown_keys():
    doc = real_doc()
    del doc["schema_version"]
    with pytest.raises(SchemaError):
        validate_document(doc)
    with pytest.raises(SchemaError):
        validate_document(real_doc(schema_version=2))
    with pytest.raises(SchemaError):
        validate_document(real_doc(extra=1))


def test_semantic_errors_have_paths():
    with pytest.raises(SchemaError) as err:
        from_document(real_doc(brackets=[{"i": 1, "j": 4, "k": 3, "c": 1}]))
    assert err.value.path == "$.brackets[0]"
    with pytest.raises(SchemaError) as err:
        from_document(real_doc(brackets=[{"i": 1, "j": 2, "k": 3, "c": "1/0"}]))
    assert err.value.path == "$.brackets[0].c"
    bad = {"schema_version": 1, "type": "bicomplex", "P": 1, "Q": 0, "dims": [[1], [1]],
           "del": [{"p": 0, "q": 0, "matrix": [["1", "2"]]}]}
    with pytest.raises(SchemaError):
        from_document(bad)


def test_parse_error_location():
    with pytest.raises(ParseError) as err:
        parse_text('{"schema_version": 1,\n  "type": }', "x.json")
    assert (err.value.source, err.value.line, err.value.col) == ("x.json", 2, 11)
    assert str(err.value).startswith("x.json:2:11:")


def test_raw_bicomplex_document():
    doc = {"schema_version": 1, "type": "bicomplex", "P": 1, "Q": 1, "dims": [[1, 1], [1, 1]],
           "del": [{"p": 0, "q": 0, "matrix": [[1]]}, {"p": 0, "q": 1, "matrix": [[-1]]}],
           "delbar": [{"p": 0, "q": 0, "matrix": [[1]]}, {"p": 1, "q": 0, "matrix": [[1]]}]}
    B = from_document(doc)
    assert isinstance(B, Bicomplex) and B.dims == {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1}


def test_load_input(tmp_path):
    assert load_input("builtin:heisenberg") == builtin("heisenberg")
    path = tmp_path / "h.json"
    path.write_text(dumps(to_document(builtin("heisenberg"))))
    assert load_input(str(path)) == builtin("heisenberg")
    with pytest.raises(UnknownExample):
        load_input("builtin:nope")
