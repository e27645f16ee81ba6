from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicohom import cohomology as C
from bicohom.bicomplex import conjugate, validate
from bicohom.exact_linalg import GaussianRational, QMatrix
from bicohom.lie import (CATALOG, ComplexCoframePresentation, ExteriorDGA, JacobiViolation, LieAlgebraPresentation,
                         NotAlmostComplex, NotIntegrable, UnknownExample, build_bicomplex, build_bicomplex_coframe,
                         builtin, ce_differential, central_series, coframe_from_complex_structure, iwasawa,
                         jacobi_check, nijenhuis, to_bicomplex)

LIE_BUILTINS = ["iwasawa", "iwasawa-real", "torus:1", "torus:2", "kodaira-thurston", "heisenberg"]
COMPLEX_BUILTINS = ["iwasawa", "iwasawa-real", "torus:1", "torus:2", "torus:3", "kodaira-thurston"]


def lie(n, entries, J=None, name=""):
    return LieAlgebraPresentation.from_brackets(n, entries, name, J)


def broken_h3_plus_r3():
    """h_3 + R^3 with [x1, x2] = x3 and J pairing x1 with x3, x2 with x4, x5 with x6."""
    J = [[0] * 6 for _ in range(6)]
    for a, b in [(0, 2), (1, 3), (4, 5)]:
        J[b][a], J[a][b] = 1, -1
    return lie(6, [(1, 2, 3, 1)], J, "h3+R3")


# -- Jacobi and the CE differential ---------------------------------------------------


def test_jacobi_examples():
    assert jacobi_check(lie(4, [])).ok
    assert jacobi_check(builtin("heisenberg")).ok
    assert jacobi_check(lie(3, [(1, 2, 3, 1), (1, 3, 1, 1)])).triple == (1, 2, 3)


def test_two_bracket_algebra_satisfies_jacobi():
    # [x1,x2] = x3, [x1,x3] = x2 is the semidirect product R x R^2; the only triple cancels
    assert jacobi_check(lie(3, [(1, 2, 3, 1), (1, 3, 2, 1)])).ok


def test_jacobi_violation_raised_where_required():
    bad = lie(3, [(1, 2, 3, 1), (1, 3, 1, 1)])
    with pytest.raises(JacobiViolation):
        ce_differential(bad)
    with pytest.raises(JacobiViolation):
        central_series(bad)


def test_ce_differential_examples():
    T = ce_differential(lie(4, []))
    assert all(M.is_zero() for M in T.d)
    A = builtin("heisenberg").dga()
    assert A.d({(2,): 1}) == {(0, 1): GaussianRational(-1)}
    assert A.d({(0,): 1}) == {} and A.d({(1,): 1}) == {}


@pytest.mark.parametrize("name", LIE_BUILTINS)
def test_d_squared_zero_everywhere(name):
    A = builtin(name).dga()
    for k in range(A.n):
        assert (A.d_matrix(k + 1) @ A.d_matrix(k)).is_zero()


@st.composite
def dga_elements(draw, A):
    k = draw(st.integers(0, A.n))
    basis = A.basis(k)
    coefs = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
    return k, {m: GaussianRational(c) for m, c in zip(basis, coefs) if c}


@given(st.data())
def test_leibniz_and_graded_commutativity(data):
    A = builtin(data.draw(st.sampled_from(["iwasawa", "kodaira-thurston", "heisenberg"]))).dga()
    (i, a), (j, b) = data.draw(dga_elements(A)), data.draw(dga_elements(A))
    lhs = A.d(A.wedge(a, b))
    rhs = A.wedge(A.d(a), b)
    for m, c in A.wedge(a, A.d(b)).items():
        rhs[m] = rhs.get(m, GaussianRational()) + (-1) ** i * c
    assert {m: c for m, c in lhs.items() if c} == {m: c for m, c in rhs.items() if c}
    ab, ba = A.wedge(a, b), A.wedge(b, a)
    sign = (-1) ** (i * j)
    assert {m: c for m, c in ab.items() if c} == {m: sign * c for m, c in ba.items() if c}


# -- complex structures ---------------------------------------------------------------


def test_nijenhuis_examples():
    J = QMatrix.from_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    assert nijenhuis(lie(4, []), J).is_integrable
    skew = QMatrix.from_rows([[1, -2, 0, 0], [1, -1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    assert nijenhuis(lie(4, []), skew).is_integrable
    assert nijenhuis(builtin("iwasawa-real")).is_integrable
    res = nijenhuis(broken_h3_plus_r3())
    assert not res.is_integrable
    assert res.nonzero()[0] == (1, 2)
    assert res.values[(1, 2)] == [0, 0, 1, 0, 0, 0]


def test_integrability_gate():
    with pytest.raises(NotIntegrable):
        build_bicomplex(broken_h3_plus_r3())
    with pytest.raises(NotIntegrable):
        coframe_from_complex_structure(broken_h3_plus_r3())
    assert validate(build_bicomplex(builtin("iwasawa-real"))).ok


def test_not_almost_complex():
    g = lie(2, [], [[1, 0], [0, 1]])
    with pytest.raises(NotAlmostComplex):
        nijenhuis(g)
    with pytest.raises(NotAlmostComplex):
        build_bicomplex(lie(3, [(1, 2, 3, 1)]))


def test_coframe_with_02_part_rejected():
    cf = ComplexCoframePresentation(2, {1: [(1, True, 2, True, 1)]})
    with pytest.raises(NotIntegrable):
        build_bicomplex_coframe(cf)


def test_coframe_violating_d_squared():
    # d phi1 = phi2 ^ phibar2, d phi2 = phi1 ^ phibar1 gives d^2 != 0
    cf = ComplexCoframePresentation(2, {1: [(2, False, 2, True, 1)], 2: [(1, False, 1, True, 1)]})
    with pytest.raises(JacobiViolation):
        build_bicomplex_coframe(cf)


def test_realified_iwasawa_matches_coframe():
    cf = coframe_from_complex_structure(builtin("iwasawa-real"))
    assert cf.terms == iwasawa().terms
    a, b = to_bicomplex(builtin("iwasawa-real")), to_bicomplex(builtin("iwasawa"))
    for t in C.THEORIES:
        assert C.all_tables(a)[t].same_numbers(C.all_tables(b)[t])


def test_kodaira_thurston():
    cf = coframe_from_complex_structure(builtin("kodaira-thurston"))
    assert cf.terms == {2: [(1, False, 1, True, GaussianRational(0, 1) / 2)]}
    B = to_bicomplex(builtin("kodaira-thurston"))
    assert validate(B).ok
    assert C.dolbeault(B)[(0, 1)] == 2


@pytest.mark.parametrize("name", COMPLEX_BUILTINS)
def test_bicomplex_dims_and_real_structure(name):
    B = to_bicomplex(builtin(name))
    m = B.P
    assert all(B.dim(p, q) == comb(m, p) * comb(m, q) for p, q in B.bidegrees())
    assert B.has_conj and validate(B).ok
    assert validate(conjugate(B)).ok
    assert C.bott_chern(B).same_numbers(C.bott_chern(B).transpose())


@pytest.mark.parametrize("m", [1, 2, 3])
def test_torus_zero_differentials(m):
    B = to_bicomplex(builtin(f"torus:{m}"))
    assert all(B.del_(*pq).is_zero() and B.delbar(*pq).is_zero() for pq in B.bidegrees())
    for t in C.THEORIES[1:]:
        assert C.all_tables(B)[t].entries == B.dims


@pytest.mark.parametrize("name", COMPLEX_BUILTINS)
def test_serre_type_duality(name):
    B = to_bicomplex(builtin(name))
    n = B.P
    bc, a = C.bott_chern(B), C.aeppli(B)
    assert all(a[(p, q)] == bc[(n - p, n - q)] for p, q in B.bidegrees())


# -- central series and catalog ----------------------------------------------------------


def test_central_series_examples():
    assert central_series(lie(4, [])) == ([0, 4], 1)
    assert central_series(builtin("heisenberg")) == ([0, 1, 3], 2)
    sl2 = lie(3, [(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1)])
    assert central_series(sl2) == ([0], "not nilpotent")
    assert central_series(builtin("iwasawa-real")) == ([0, 2, 6], 2)
    assert central_series(iwasawa().lie_algebra())[1] == 2


def test_catalog():
    for name in ["iwasawa", "iwasawa-real", "kodaira-thurston", "heisenberg", "torus:4"]:
        builtin(name)
    with pytest.raises(UnknownExample) as err:
        builtin("s6")
    assert "iwasawa" in str(err.value) and "torus:<m>" in str(err.value)
    for bad in ["torus:0", "torus:", "torus:x"]:
        with pytest.raises(UnknownExample):
            builtin(bad)
    assert len(CATALOG) == 5


def test_bracket_input_validation():
    with pytest.raises(ValueError):
        lie(2, [(1, 3, 1, 1)])
    with pytest.raises(ValueError):
        lie(2, [(1, 1, 2, 1)])
    g = lie(3, [(2, 1, 3, 1)])
    assert g.c == {(1, 2, 3): GaussianRational(-1)}


def test_exterior_labels():
    A = ExteriorDGA(3, [{}, {}, {(0, 1): -1}])
    assert A.label((0, 2)) == "e1^e3" and A.label(()) == "1"
    assert iwasawa().dga().label((0, 3)) == "phi1^phibar1"
