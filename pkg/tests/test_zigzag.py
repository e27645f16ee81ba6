import random
from collections import Counter
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicohom import cohomology as C
from bicohom.bicomplex import (Bicomplex, _random_invertible, change_basis, conjugate, direct_sum, from_shapes,
                               random_bicomplex, random_bicomplex_with_shapes)
from bicohom.exact_linalg import QMatrix
from bicohom.lie import builtin, to_bicomplex
from bicohom.shapes import ZigzagShape, all_shapes, fits
from bicohom.zigzag import ZigzagDecomposition, decompose, multiplicity_of, reconstruct

GOLDEN = Path(__file__).parent / "golden"
seeds = st.integers(0, 10_000)
boxes = st.integers(0, 3)


def tables_match(B, D):
    rec, direct = reconstruct(D), C.all_tables(B)
    return all(rec[t].same_numbers(direct[t]) for t in C.THEORIES)


# -- shapes -------------------------------------------------------------------------


def test_shape_validation():
    with pytest.raises(ValueError):
        ZigzagShape.zigzag(0, 0, "vertical", 1)
    with pytest.raises(ValueError):
        ZigzagShape.zigzag(0, 0, "diagonal", 3)
    with pytest.raises(ValueError):
        ZigzagShape.from_vertices([(0, 0), (2, 0)])


def test_zigzag_anchor_is_least_vertex():
    for s in all_shapes(3, 3):
        if s.kind == "zigzag":
            assert min(s.vertices()) == (s.p, s.q)
            assert ZigzagShape.from_vertices(s.vertices()) == s
            assert {p + q for p, q in s.vertices()} == {s.degree, s.degree + 1}


def test_mirror_is_involution():
    for s in all_shapes(2, 3):
        m = s.mirror()
        assert m.mirror() == s
        assert sorted(m.vertices()) == sorted((q, p) for p, q in s.vertices())


def test_all_shapes_fit():
    shapes = all_shapes(2, 1)
    assert all(fits(s, 2, 1) for s in shapes)
    assert len(shapes) == len(set(shapes))


# -- decomposition examples --------------------------------------------------------------


def test_square_complex():
    B = from_shapes({ZigzagShape.square(0, 0): 1})
    D = decompose(B)
    assert D.multiplicities == Counter({ZigzagShape.square(0, 0): 1})


def test_torus_is_dots():
    B = to_bicomplex(builtin("torus:2"))
    D = decompose(B)
    assert D.only_dots_and_squares()
    assert all(s.kind == "dot" for s, _ in D.shapes())
    assert all(multiplicity_of(B, ZigzagShape.dot(*pq)) == B.dim(*pq) for pq in B.bidegrees())
    assert multiplicity_of(B, ZigzagShape.square(0, 0)) == 0


def test_iwasawa_pinned():
    B = to_bicomplex(builtin("iwasawa"))
    D = decompose(B)
    lines = [f"{m} {s}" for s, m in D.shapes()]
    assert lines == (GOLDEN / "iwasawa_zigzag.txt").read_text().splitlines()
    # d phi^3 = -phi^1 ^ phi^2 and its conjugate
    assert D[ZigzagShape.zigzag(1, 0, "horizontal", 2)] == 1
    assert D[ZigzagShape.zigzag(0, 1, "vertical", 2)] == 1
    assert D == D.mirror()
    assert tables_match(B, D)


def test_reconstruct_single_shapes():
    dot = ZigzagDecomposition(Counter({ZigzagShape.dot(1, 2): 1}), 2, 2)
    rec = reconstruct(dot)
    assert rec[C.DE_RHAM][3] == 1
    assert all(rec[t][(1, 2)] == 1 for t in C.THEORIES[1:])
    sq = ZigzagDecomposition(Counter({ZigzagShape.square(0, 0): 1}), 1, 1)
    assert all(not any(reconstruct(sq)[t].entries.values()) for t in C.THEORIES)


@pytest.mark.parametrize("shape", [ZigzagShape.zigzag(0, 0, "vertical", 2), ZigzagShape.zigzag(0, 0, "horizontal", 2),
                                   ZigzagShape.zigzag(1, 0, "vertical", 3), ZigzagShape.zigzag(0, 1, "horizontal", 4)])
def test_reconstruct_matches_direct_on_one_zigzag(shape):
    B = from_shapes({shape: 1})
    D = decompose(B)
    assert D.multiplicities == Counter({shape: 1})
    assert tables_match(B, D)


def test_vertical_length_two_counts():
    # s --delbar--> t with s = (0,0), t = (0,1)
    B = Bicomplex(0, 1, {(0, 0): 1, (0, 1): 1},
                  delbar={(0, 0): QMatrix.from_rows([[1]])})
    D = decompose(B)
    assert D.multiplicities == Counter({ZigzagShape.zigzag(0, 0, "vertical", 2): 1})
    tabs = C.all_tables(B)
    assert tabs[C.DOLBEAULT].entries == {(0, 0): 0, (0, 1): 0}
    assert tabs[C.CONJ_DOLBEAULT].entries == {(0, 0): 1, (0, 1): 1}
    assert tabs[C.BOTT_CHERN].entries == {(0, 0): 0, (0, 1): 1}
    assert tabs[C.AEPPLI].entries == {(0, 0): 1, (0, 1): 0}
    assert tables_match(B, D)


def test_render_is_ascii():
    text = decompose(to_bicomplex(builtin("iwasawa"))).render()
    assert text.isascii()
    assert "p->" in text and "Square(1,1)" in text


# -- properties ----------------------------------------------------------------------


@given(seeds, boxes, boxes, st.booleans())
def test_recovers_hidden_multiset(seed, P, Q, real):
    B, hidden = random_bicomplex_with_shapes(seed, P, Q, 3, real)
    D = decompose(B)
    assert +D.multiplicities == +hidden
    assert D.dims() == {pq: n for pq, n in B.dims.items() if n}
    assert tables_match(B, D)


@given(seeds, boxes, boxes)
def test_square_count_is_rank_ddbar(seed, P, Q):
    B = random_bicomplex(seed, P, Q, 3)
    D = decompose(B)
    for p, q in B.bidegrees():
        assert D[ZigzagShape.square(p, q)] == B.ddbar(p, q).rank()


@given(seeds, seeds, boxes, boxes)
def test_direct_sum_is_union(s1, s2, P, Q):
    B1, B2 = random_bicomplex(s1, P, Q, 2), random_bicomplex(s2, P, Q, 2)
    assert decompose(direct_sum(B1, B2)).multiplicities == \
        decompose(B1).multiplicities + decompose(B2).multiplicities


@given(seeds, boxes, boxes)
def test_conjugate_mirrors(seed, P, Q):
    B = random_bicomplex(seed, P, Q, 3)
    assert decompose(conjugate(B)) == decompose(B).mirror()


@given(seeds, boxes, boxes)
def test_basis_independent(seed, P, Q):
    B = random_bicomplex(seed, P, Q, 3)
    rng = random.Random(seed + 1)
    g = {pq: _random_invertible(rng, B.dim(*pq), True) for pq in B.bidegrees()}
    assert decompose(change_basis(B, g)) == decompose(B)


@given(seeds, boxes, boxes)
def test_ddbar_iff_dots_and_squares(seed, P, Q):
    B = random_bicomplex(seed, P, Q, 3)
    assert decompose(B).only_dots_and_squares() == C.satisfies_ddbar(B).holds
