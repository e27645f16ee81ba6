"""Decomposition of a double complex into squares, zigzags and dots.

Squares are split off first: lifts of a basis of ``im del delbar`` span a
subcomplex that is a direct sum of squares, and squares are direct summands,
so the quotient carries everything else and has ``del delbar = 0``.

What remains between two adjacent antidiagonals k, k+1 is a representation of
a type-A quiver: at each source ``s_a`` the space ``A/(ker del & ker delbar)``,
at each sink ``t_a`` the space ``im del + im delbar``.  Its interval summands
are the zigzags, counted by Moebius inversion of the rank of the map from the
limit to the colimit over each interval.  The remaining vectors
(``ker del & ker delbar`` modulo images) are dots.

>>> from bicohom.bicomplex import from_shapes
>>> from bicohom.shapes import ZigzagShape
>>> z = ZigzagShape.zigzag(0, 1, "horizontal", 3)
>>> sorted(map(str, decompose(from_shapes({z: 2})).multiplicities.elements()))
['Zigzag((0,1),H,3)', 'Zigzag((0,1),H,3)']
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .bicomplex import Bicomplex, Bidegree, check
from .cohomology import (AEPPLI, BOTT_CHERN, CONJ_DOLBEAULT, DE_RHAM, DOLBEAULT, CohomologyTable,
                         InternalInconsistency)
from .exact_linalg import QMatrix, Subspace, image_basis, intersect, kernel_basis, sum_, sum_all
from .shapes import DOT, SQUARE, ZigzagShape, _walk_vertex


@dataclass(frozen=True)
class ZigzagDecomposition:
    multiplicities: Counter
    P: int
    Q: int

    def __getitem__(self, shape: ZigzagShape) -> int:
        return self.multiplicities.get(shape, 0)

    def shapes(self) -> list[tuple[ZigzagShape, int]]:
        return sorted(((s, m) for s, m in self.multiplicities.items() if m), key=lambda t: t[0].sort_key())

    def dims(self) -> dict[Bidegree, int]:
        out: Counter = Counter()
        for s, m in self.multiplicities.items():
            for v in s.vertices():
                out[v] += m
        return dict(out)

    def only_dots_and_squares(self) -> bool:
        return all(s.kind in (DOT, SQUARE) for s, m in self.multiplicities.items() if m)

    def mirror(self) -> "ZigzagDecomposition":
        return ZigzagDecomposition(Counter({s.mirror(): m for s, m in self.multiplicities.items() if m}),
                                   self.Q, self.P)

    def __eq__(self, other):
        if not isinstance(other, ZigzagDecomposition):
            return NotImplemented
        return +self.multiplicities == +other.multiplicities

    def render(self) -> str:
        """ASCII listing followed by a grid of how many shapes touch each bidegree."""
        lines = [f"{m} x {s}" for s, m in self.shapes()]
        counts = self.dims()
        width = max([len(str(n)) for n in counts.values()] + [1])
        lines.append("")
        for q in range(self.Q, -1, -1):
            lines.append(f"q={q} | " + " ".join(str(counts.get((p, q), 0)).rjust(width) for p in range(self.P + 1)))
        lines.append("      " + "-" * ((width + 1) * (self.P + 1)))
        lines.append("  p->  " + " ".join(str(p).rjust(width) for p in range(self.P + 1)))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# phase 1: squares


def _square_lifts(B: Bicomplex) -> dict[Bidegree, QMatrix]:
    """At each (p,q), standard vectors whose del delbar images form a basis of im del delbar."""
    out = {}
    for p, q in B.bidegrees():
        M = B.ddbar(p, q)
        n = B.dim(p, q)
        if M.rows == 0 or n == 0:
            out[(p, q)] = QMatrix.zeros(n, 0)
            continue
        _, pivots, _ = M.rref()
        out[(p, q)] = QMatrix.identity(n).submatrix(range(n), pivots)
    return out


def _split_squares(B: Bicomplex) -> tuple[Counter, Bicomplex]:
    lifts = _square_lifts(B)
    squares = Counter({ZigzagShape.square(p, q): V.cols for (p, q), V in lifts.items() if V.cols})
    spans: dict[Bidegree, list[QMatrix]] = {pq: [] for pq in B.bidegrees()}
    for (p, q), V in lifts.items():
        if not V.cols:
            continue
        spans[(p, q)].append(V)
        spans[(p + 1, q)].append(B.del_(p, q) @ V)
        spans[(p, q + 1)].append(B.delbar(p, q) @ V)
        spans[(p + 1, q + 1)].append(B.ddbar(p, q) @ V)
    S = {pq: Subspace.span(QMatrix.hstack(vs, rows=B.dim(*pq))) for pq, vs in spans.items()}
    expected = Counter()
    for s, m in squares.items():
        for v in s.vertices():
            expected[v] += m
    for pq, sub in S.items():
        if sub.dim != expected[pq]:
            raise InternalInconsistency(f"square summands are not independent at {pq}")
    if not squares:
        return squares, B
    return squares, _quotient(B, S)


def _projection(sub: Subspace) -> tuple[list[int], QMatrix]:
    """Complement coordinates C of ``sub`` and the matrix of A -> A/sub in the basis e_C."""
    n = sub.ambient_dim
    comp = sub.coordinate_complement()
    if sub.dim == 0:
        return comp, QMatrix.identity(n)
    R = sub.rows
    # y - R^T y[pivots] has no pivot components; keep the complement rows
    sel = QMatrix.identity(n).submatrix(sub.pivots, range(n))
    full = QMatrix.identity(n) - R.transpose() @ sel
    return comp, full.submatrix(comp, range(n))


def _quotient(B: Bicomplex, S: dict[Bidegree, Subspace]) -> Bicomplex:
    proj, incl = {}, {}
    for pq in B.bidegrees():
        comp, pi = _projection(S[pq])
        proj[pq] = pi
        n = B.dim(*pq)
        incl[pq] = QMatrix.identity(n).submatrix(range(n), comp)
    dims = {pq: incl[pq].cols for pq in B.bidegrees()}

    def induced(M, src, tgt):
        if tgt not in proj:
            return QMatrix.zeros(0, dims[src])
        return proj[tgt] @ M @ incl[src]

    dl = {(p, q): induced(B.del_(p, q), (p, q), (p + 1, q)) for p, q in B.bidegrees()}
    dbl = {(p, q): induced(B.delbar(p, q), (p, q), (p, q + 1)) for p, q in B.bidegrees()}
    return Bicomplex(B.P, B.Q, dims, dl, dbl)


# ---------------------------------------------------------------------------
# phase 2: zigzags by the interval rank invariant


class _PairRep:
    """Quiver representation between antidiagonals k and k+1 of a complex with del delbar = 0."""

    def __init__(self, B: Bicomplex, k: int):
        self.B = B
        self.k = k
        self.npos = 2 * (B.P + 1) + 1
        self.src = {}   # position -> (complement basis matrix in A^{s})
        self.sink_dim = {}
        for pos in range(self.npos):
            p, q = _walk_vertex(k, pos)
            n = B.dim(p, q) if p >= 0 and q >= 0 else 0
            if pos % 2:
                K = intersect(kernel_basis(B.del_(p, q)), kernel_basis(B.delbar(p, q))) if n else Subspace.zero(0)
                comp = K.coordinate_complement() if n else []
                self.src[pos] = QMatrix.identity(n).submatrix(range(n), comp) if n else QMatrix.zeros(0, 0)
            else:
                self.sink_dim[pos] = n
        self._rk = {}

    def vertex(self, pos):
        return _walk_vertex(self.k, pos)

    def arrow(self, s: int, t: int) -> QMatrix:
        """Map from the source space at position s to the ambient sink space at t = s -+ 1."""
        p, q = self.vertex(s)
        V = self.src[s]
        if t == s - 1:
            return self.B.delbar(p, q) @ V if V.rows else QMatrix.zeros(self.sink_dim[t], V.cols)
        return self.B.del_(p, q) @ V if V.rows else QMatrix.zeros(self.sink_dim[t], V.cols)

    def rank(self, i: int, j: int) -> int:
        """Rank of lim -> colim over positions i..j (0 if the range leaves the walk)."""
        if i < 0 or j >= self.npos or i > j:
            return 0
        if (i, j) not in self._rk:
            self._rk[(i, j)] = self._rank(i, j)
        return self._rk[(i, j)]

    def _rank(self, i, j):
        sources = [pos for pos in range(i, j + 1) if pos % 2]
        sinks = [pos for pos in range(i, j + 1) if pos % 2 == 0]
        if not sources or not sinks:
            return 0
        sdims = [self.src[s].cols for s in sources]
        soff = [sum(sdims[:a]) for a in range(len(sources))]
        tdims = [self.sink_dim[t] for t in sinks]
        toff = {t: sum(tdims[:a]) for a, t in enumerate(sinks)}
        ns, nt = sum(sdims), sum(tdims)
        if ns == 0 or nt == 0:
            return 0

        def embed(block: QMatrix, row_off: int, nrows: int, col_off: int, ncols: int) -> QMatrix:
            top = QMatrix.zeros(row_off, block.cols)
            bot = QMatrix.zeros(nrows - row_off - block.rows, block.cols)
            col = QMatrix.vstack([top, block, bot])
            left = QMatrix.zeros(nrows, col_off)
            right = QMatrix.zeros(nrows, ncols - col_off - block.cols)
            return QMatrix.hstack([left, col, right])

        # limit: families (x_s) agreeing at every sink fed by two sources of the interval
        cons = []
        for t in sinks:
            feeders = [s for s in (t - 1, t + 1) if i <= s <= j]
            if len(feeders) == 2:
                a, b = feeders
                ia, ib = sources.index(a), sources.index(b)
                row = embed(self.arrow(a, t), 0, self.sink_dim[t], soff[ia], ns) - \
                    embed(self.arrow(b, t), 0, self.sink_dim[t], soff[ib], ns)
                cons.append(row)
        lim = kernel_basis(QMatrix.vstack(cons, cols=ns)) if cons else Subspace.full(ns)
        if lim.dim == 0:
            return 0
        # colimit: sink spaces modulo f_{s,t1} x - f_{s,t2} x for sources with both sinks inside
        rels = []
        for s in sources:
            outs = [t for t in (s - 1, s + 1) if i <= t <= j]
            if len(outs) == 2:
                t1, t2 = outs
                a = embed(self.arrow(s, t1), toff[t1], nt, 0, self.src[s].cols)
                b = embed(self.arrow(s, t2), toff[t2], nt, 0, self.src[s].cols)
                rels.append(a - b)
        R = Subspace.span(QMatrix.hstack(rels, rows=nt)) if rels else Subspace.zero(nt)
        # the family's common image, read off at the first sink through an adjacent source
        t0 = sinks[0]
        s0 = t0 + 1 if t0 + 1 <= j else t0 - 1
        i0 = sources.index(s0)
        pick = embed(QMatrix.identity(sdims[i0]), 0, sdims[i0], soff[i0], ns)
        img = embed(self.arrow(s0, t0), toff[t0], nt, 0, sdims[i0]) @ pick @ lim.basis
        return sum_(image_basis(img), R).dim - R.dim

    def intervals(self) -> Counter:
        out: Counter = Counter()
        for i in range(self.npos):
            for j in range(i + 1, self.npos):
                m = self.rank(i, j) - self.rank(i - 1, j) - self.rank(i, j + 1) + self.rank(i - 1, j + 1)
                if m < 0:
                    raise InternalInconsistency(f"negative interval multiplicity on [{i},{j}] at k={self.k}")
                if m:
                    out[ZigzagShape.from_walk(self.k, i, j - i + 1)] += m
        return out


def _zigzags_and_dots(B: Bicomplex) -> Counter:
    out: Counter = Counter()
    for k in range(B.top_degree):
        out.update(_PairRep(B, k).intervals())
    for p, q in B.bidegrees():
        if not B.dim(p, q):
            continue
        kb = intersect(kernel_basis(B.del_(p, q)), kernel_basis(B.delbar(p, q)))
        im = sum_all([image_basis(B.del_(p - 1, q)) if p else Subspace.zero(B.dim(p, q)),
                      image_basis(B.delbar(p, q - 1)) if q else Subspace.zero(B.dim(p, q))], B.dim(p, q))
        n = kb.dim - im.dim
        if n:
            out[ZigzagShape.dot(p, q)] += n
    return out


def decompose(B: Bicomplex) -> ZigzagDecomposition:
    """Multiset of indecomposable summands of ``B``."""
    check(B)

    def compute():
        squares, rest = _split_squares(B)
        for pq in rest.bidegrees():
            if not rest.ddbar(*pq).is_zero():
                raise InternalInconsistency("del delbar survives after removing squares")
        mult = squares + _zigzags_and_dots(rest)
        D = ZigzagDecomposition(mult, B.P, B.Q)
        dims = D.dims()
        for pq in B.bidegrees():
            if dims.get(pq, 0) != B.dim(*pq):
                raise InternalInconsistency(f"decomposition misses dimensions at {pq}")
        return D
    return B.cached("decompose", compute)


def multiplicity_of(B: Bicomplex, shape: ZigzagShape) -> int:
    return decompose(B)[shape]


# ---------------------------------------------------------------------------
# counting


def shape_contributions(shape: ZigzagShape) -> dict[str, Counter]:
    """Cohomology carried by a single indecomposable."""
    out = {t: Counter() for t in (DE_RHAM, DOLBEAULT, CONJ_DOLBEAULT, BOTT_CHERN, AEPPLI)}
    if shape.kind == SQUARE:
        return out
    vs = shape.vertices()
    arrows = shape.arrows()
    for idx, v in enumerate(vs):
        kinds = {a[2] for a in arrows if idx in (a[0], a[1])}
        if "delbar" not in kinds:
            out[DOLBEAULT][v] += 1
        if "del" not in kinds:
            out[CONJ_DOLBEAULT][v] += 1
        if not any(a[0] == idx for a in arrows):
            out[BOTT_CHERN][v] += 1
        if not any(a[1] == idx for a in arrows):
            out[AEPPLI][v] += 1
    if len(vs) % 2 == 1:
        degs = Counter(p + q for p, q in vs)
        out[DE_RHAM][degs.most_common(1)[0][0]] += 1
    return out


def reconstruct(D: ZigzagDecomposition) -> dict[str, CohomologyTable]:
    """The five cohomology tables determined by the multiset alone."""
    acc = {t: Counter() for t in (DE_RHAM, DOLBEAULT, CONJ_DOLBEAULT, BOTT_CHERN, AEPPLI)}
    for s, m in D.multiplicities.items():
        for t, c in shape_contributions(s).items():
            for key, n in c.items():
                acc[t][key] += n * m
    pqs = [(p, q) for p in range(D.P + 1) for q in range(D.Q + 1)]
    out = {}
    for t, c in acc.items():
        if t == DE_RHAM:
            out[t] = CohomologyTable(t, {k: c.get(k, 0) for k in range(D.P + D.Q + 1)}, D.P, D.Q)
        else:
            out[t] = CohomologyTable(t, {pq: c.get(pq, 0) for pq in pqs}, D.P, D.Q)
    return out
