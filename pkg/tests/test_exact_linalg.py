from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bicohom.exact_linalg import (AmbientMismatch, GaussianRational, NotASubspace, QMatrix, Subspace, apply,
                                  format_gaussian, image_basis, intersect, kernel_basis, parse_gaussian,
                                  preimage, quotient_dim, rref, solve, sum_)

small = st.integers(-3, 3)
gauss = st.builds(GaussianRational, small, small)
frac = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))


@st.composite
def matrices(draw, max_rows=5, max_cols=5, complex_=True, rows=None, cols=None):
    r = draw(st.integers(0, max_rows)) if rows is None else rows
    c = draw(st.integers(0, max_cols)) if cols is None else cols
    elem = st.one_of(small, gauss) if complex_ else small
    return QMatrix.from_rows([[draw(elem) for _ in range(c)] for _ in range(r)], cols=c)


@st.composite
def subspace_pair(draw):
    n = draw(st.integers(0, 5))
    U = Subspace.span(draw(matrices(rows=n)))
    V = Subspace.span(draw(matrices(rows=n)))
    return U, V


def to_sympy(M: QMatrix) -> sympy.Matrix:
    return sympy.Matrix(M.rows, M.cols, lambda i, j: sympy.Rational(M[i, j].re) + sympy.I * sympy.Rational(M[i, j].im))


# -- scalars -------------------------------------------------------------------


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a.conjugate().conjugate() == a
    assert a.norm() >= 0 and (a.norm() == 0) == (not a)
    if b:
        assert (a / b) * b == a


@given(frac, frac)
def test_format_parse_roundtrip(x, y):
    z = GaussianRational(x, y)
    assert parse_gaussian(format_gaussian(z)) == z


@pytest.mark.parametrize("text,value", [
    ("1", (1, 0)), ("-1/2", (Fraction(-1, 2), 0)), ("i", (0, 1)), ("-i", (0, -1)),
    ("3-2i", (3, -2)), ("1/2+5/3 i", (Fraction(1, 2), Fraction(5, 3))), (" -2/4 - i ", (Fraction(-1, 2), -1)),
])
def test_parse_examples(text, value):
    assert parse_gaussian(text) == GaussianRational(*value)


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1+", "i i", "nan"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_gaussian(bad)


def test_fractions_stay_reduced():
    z = GaussianRational(Fraction(6, 4), Fraction(-10, 20))
    assert (z.re.numerator, z.re.denominator) == (3, 2)
    assert format_gaussian(z) == "3/2-1/2 i"


# -- rref ----------------------------------------------------------------------


def test_rref_examples():
    R, piv, r = rref(QMatrix.identity(2))
    assert R == QMatrix.identity(2) and piv == [0, 1] and r == 2
    R, piv, r = rref(QMatrix.from_rows([[1, 2], [2, 4]]))
    assert R == QMatrix.from_rows([[1, 2], [0, 0]]) and piv == [0] and r == 1


def test_empty_matrices_are_first_class():
    for shape in [(0, 3), (3, 0), (0, 0)]:
        M = QMatrix.zeros(*shape)
        assert M.rank() == 0
        assert kernel_basis(M).dim == shape[1]
        assert image_basis(M).dim == 0
    assert (QMatrix.zeros(2, 0) @ QMatrix.zeros(0, 3)) == QMatrix.zeros(2, 3)


@given(matrices())
def test_rref_idempotent_and_rank(M):
    R, piv, r = rref(M)
    assert rref(R)[0] == R
    assert r == len(piv)
    assert Subspace.from_rows(R) == Subspace.from_rows(M)
    for row, c in enumerate(piv):
        assert R[row, c] == 1
        assert all(not R[i, c] for i in range(R.rows) if i != row)


@given(matrices(max_rows=4, max_cols=4))
def test_rank_matches_sympy(M):
    assert M.rank() == (to_sympy(M).rank() if M.rows and M.cols else 0)


@given(matrices(max_rows=4, max_cols=4, complex_=False))
def test_rref_denominators_divide_a_minor(M):
    """Each entry of the rref of an integer matrix has denominator dividing the pivot minor."""
    R, piv, r = rref(M)
    if not r:
        return
    # the pivot rows of the rref come from some r x r nonsingular minor on the pivot columns
    dets = []
    for rows in combinations(range(M.rows), r):
        d = to_sympy(M.submatrix(rows, piv)).det()
        if d:
            dets.append(int(d))
    for i in range(R.rows):
        for j in range(R.cols):
            den = R[i, j].re.denominator
            assert any(d % den == 0 for d in dets)


# -- kernels, images, subspaces ---------------------------------------------------


@given(matrices())
def test_rank_nullity(M):
    K = kernel_basis(M)
    assert M.rank() + K.dim == M.cols
    assert (M @ K.basis).is_zero()
    assert image_basis(M).dim == M.rank()


def test_kernel_examples():
    assert kernel_basis(QMatrix.zeros(0, 3)).dim == 3
    assert kernel_basis(QMatrix.identity(3)).dim == 0


def test_heisenberg_kernel_and_image():
    from bicohom.lie import builtin
    A = builtin("heisenberg").dga()
    d1 = A.d_matrix(1)
    K = kernel_basis(d1)
    assert K == Subspace.span(QMatrix.from_columns([[1, 0, 0], [0, 1, 0]], rows=3))
    im = image_basis(d1)
    assert im.dim == 1
    assert im.contains(A.vector(2, {(0, 1): 1}))


@given(subspace_pair())
def test_grassmann(pair):
    U, V = pair
    assert U.dim + V.dim == sum_(U, V).dim + intersect(U, V).dim
    assert intersect(U, V).contains_subspace(intersect(V, U))
    assert sum_(U, V).contains_subspace(U) and U.contains_subspace(intersect(U, V))


def test_subspace_examples():
    U = Subspace.span(QMatrix.from_columns([[1, 0, 0, 0], [0, 1, 0, 0]], rows=4))
    V = Subspace.span(QMatrix.from_columns([[0, 0, 1, 0], [0, 0, 0, 1]], rows=4))
    assert sum_(U, V).dim == 4 and intersect(U, V).dim == 0
    assert sum_(U, U) == U == intersect(U, U)
    with pytest.raises(AmbientMismatch):
        sum_(U, Subspace.zero(3))


def test_canonical_basis_equality():
    a = Subspace.span(QMatrix.from_columns([[1, 1, 0], [0, 1, 1]], rows=3))
    b = Subspace.span(QMatrix.from_columns([[1, 2, 1], [2, 3, 1]], rows=3))
    assert a == b and a.basis == b.basis


@given(matrices(rows=3), st.data())
def test_preimage(M, data):
    W = Subspace.span(data.draw(matrices(rows=M.rows)))
    pre = preimage(M, W)
    for v in pre.basis.column_vectors():
        assert W.contains(M @ v)
    # everything mapping into W is found
    assert pre.contains_subspace(kernel_basis(M))
    assert apply(M, pre).dim == intersect(W, image_basis(M)).dim


def test_preimage_trivial_cases():
    M = QMatrix.from_rows([[1, 2, 0], [0, 0, 1]])
    assert preimage(M, Subspace.full(2)) == Subspace.full(3)
    assert preimage(M, Subspace.zero(2)) == kernel_basis(M)
    with pytest.raises(AmbientMismatch):
        preimage(M, Subspace.full(3))


def test_quotient_dim():
    V = Subspace.full(3)
    W = Subspace.span(QMatrix.column([1, 1, 0]))
    assert quotient_dim(V, Subspace.zero(3)) == 3
    assert quotient_dim(V, V) == 0
    assert quotient_dim(V, W) == 2
    with pytest.raises(NotASubspace):
        quotient_dim(W, V)


@given(matrices(rows=4, cols=3), st.lists(st.one_of(small, gauss), min_size=3, max_size=3))
def test_solve(M, x):
    b = M @ QMatrix.column(x)
    sol = solve(M, b)
    assert sol is not None and M @ sol == b


def test_solve_inconsistent():
    assert solve(QMatrix.from_rows([[1, 0], [1, 0]]), QMatrix.column([1, 2])) is None


@given(matrices(rows=3, cols=3))
def test_inverse(M):
    if M.rank() == 3:
        assert M @ M.inverse() == QMatrix.identity(3)


@given(matrices(), st.data())
def test_matmul_matches_sympy(A, data):
    B = data.draw(matrices(rows=A.cols, max_cols=4))
    assert to_sympy(A @ B) == (to_sympy(A) * to_sympy(B)).applyfunc(sympy.expand)
