"""Bounded double complexes over Q(i).

A :class:`Bicomplex` lives on the rectangle ``[0,P] x [0,Q]``.  The maps
``del_(p,q)`` and ``delbar(p,q)`` go to ``(p+1,q)`` and ``(p,q+1)``; outside the
rectangle every space is zero.  The differentials anticommute, so
``d = del + delbar`` squares to zero on the total complex.

Optional conjugation data ``conj[(p,q)]`` is a matrix ``C`` from ``(p,q)`` to
``(q,p)``.  It describes the antilinear map ``x -> C @ conj(x)``.

>>> from bicohom.shapes import ZigzagShape
>>> B = from_shapes({ZigzagShape.square(0, 0): 1})
>>> validate(B).ok, total(B).dims
(True, [1, 2, 1])
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .exact_linalg import GaussianRational, QMatrix
from .shapes import SQUARE, ZigzagShape, all_shapes, fits

Bidegree = tuple[int, int]


class ShapeMismatch(ValueError):
    """A differential's shape disagrees with the declared dimensions."""


class InvalidBicomplex(ValueError):
    """The double complex axioms fail."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid bicomplex: " + "; ".join(f"{a} at {pq}" for a, pq in report.violations))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[str, Bidegree], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class TotalComplex:
    """Single-graded complex: ``d[k]`` maps degree k to degree k+1."""
    dims: list[int]
    d: list[QMatrix]
    blocks: list[list[Bidegree]] = field(default_factory=list)
    block_dims: list[dict[Bidegree, int]] = field(default_factory=list)

    def offsets(self, k: int) -> dict[Bidegree, int]:
        """Starting index of each bidegree block inside degree k."""
        out, pos = {}, 0
        for pq in self.blocks[k]:
            out[pq] = pos
            pos += self.block_dims[k][pq]
        return out


class Bicomplex:
    """Immutable bounded double complex with anticommuting differentials."""

    __slots__ = ("P", "Q", "_dims", "_del", "_delbar", "_conj", "labels", "_cache")

    def __init__(self, P: int, Q: int, dims: Mapping[Bidegree, int],
                 del_: Mapping[Bidegree, QMatrix] | None = None,
                 delbar: Mapping[Bidegree, QMatrix] | None = None,
                 conj: Mapping[Bidegree, QMatrix] | None = None,
                 labels: Mapping[Bidegree, list[str]] | None = None):
        if P < 0 or Q < 0:
            raise ShapeMismatch("the bounding box must have P, Q >= 0")
        self.P, self.Q = P, Q
        self._dims = {}
        for (p, q), n in dims.items():
            if not (0 <= p <= P and 0 <= q <= Q):
                if n:
                    raise ShapeMismatch(f"bidegree {(p, q)} lies outside the box [0,{P}]x[0,{Q}]")
                continue
            if n < 0:
                raise ShapeMismatch(f"negative dimension at {(p, q)}")
            self._dims[(p, q)] = int(n)
        for pq in self.bidegrees():
            self._dims.setdefault(pq, 0)
        self._del = self._fill(del_ or {}, (1, 0), "del")
        self._delbar = self._fill(delbar or {}, (0, 1), "delbar")
        self._conj = None
        if conj is not None:
            if P != Q:
                raise ShapeMismatch("conjugation data needs a square box")
            self._conj = {}
            for pq in self.bidegrees():
                n = self.dim(*pq)
                C = conj.get(pq, QMatrix.zeros(self.dim(pq[1], pq[0]), n))
                if C.shape != (self.dim(pq[1], pq[0]), n):
                    raise ShapeMismatch(f"conj at {pq} has shape {C.shape}")
                self._conj[pq] = C
        self.labels = dict(labels) if labels else None
        self._cache = {}

    def _fill(self, maps, step, name):
        out = {}
        for pq, M in maps.items():
            if pq not in self._dims:
                raise ShapeMismatch(f"{name} given at {pq}, outside the box")
        for p, q in self.bidegrees():
            src = self.dim(p, q)
            tgt = self.dim(p + step[0], q + step[1])
            M = maps.get((p, q))
            if M is None:
                M = QMatrix.zeros(tgt, src)
            elif M.shape != (tgt, src):
                raise ShapeMismatch(f"{name} at {(p, q)} has shape {M.shape}, expected {(tgt, src)}")
            out[(p, q)] = M
        return out

    # -- access ---------------------------------------------------------------

    def bidegrees(self) -> list[Bidegree]:
        return [(p, q) for p in range(self.P + 1) for q in range(self.Q + 1)]

    def dim(self, p: int, q: int) -> int:
        return self._dims.get((p, q), 0)

    @property
    def dims(self) -> dict[Bidegree, int]:
        return dict(self._dims)

    @property
    def top_degree(self) -> int:
        return self.P + self.Q

    def del_(self, p: int, q: int) -> QMatrix:
        if (p, q) in self._del:
            return self._del[(p, q)]
        return QMatrix.zeros(self.dim(p + 1, q), self.dim(p, q))

    def delbar(self, p: int, q: int) -> QMatrix:
        if (p, q) in self._delbar:
            return self._delbar[(p, q)]
        return QMatrix.zeros(self.dim(p, q + 1), self.dim(p, q))

    def ddbar(self, p: int, q: int) -> QMatrix:
        """del delbar from (p,q) to (p+1,q+1)."""
        return self.del_(p, q + 1) @ self.delbar(p, q)

    @property
    def has_conj(self) -> bool:
        return self._conj is not None

    def conj(self, p: int, q: int) -> QMatrix:
        if self._conj is None:
            raise ValueError("this bicomplex carries no conjugation data")
        return self._conj[(p, q)]

    def cached(self, key, fn):
        """Memoize a derived quantity; the complex is immutable so this is safe."""
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def __eq__(self, other):
        if not isinstance(other, Bicomplex):
            return NotImplemented
        return (self.P, self.Q, self._dims, self._del, self._delbar, self._conj) == (
            other.P, other.Q, other._dims, other._del, other._delbar, other._conj)

    def __hash__(self):
        return hash((self.P, self.Q, tuple(sorted(self._dims.items()))))

    def __repr__(self):
        nz = {pq: n for pq, n in sorted(self._dims.items()) if n}
        return f"Bicomplex(P={self.P}, Q={self.Q}, dims={nz})"


# ---------------------------------------------------------------------------
# axioms


def validate(B: Bicomplex) -> ValidationReport:
    """Every violated identity, each tagged with the source bidegree."""
    bad = []
    for p, q in B.bidegrees():
        if not (B.del_(p + 1, q) @ B.del_(p, q)).is_zero():
            bad.append(("del^2 = 0", (p, q)))
        if not (B.delbar(p, q + 1) @ B.delbar(p, q)).is_zero():
            bad.append(("delbar^2 = 0", (p, q)))
        if not (B.del_(p, q + 1) @ B.delbar(p, q) + B.delbar(p + 1, q) @ B.del_(p, q)).is_zero():
            bad.append(("del delbar + delbar del = 0", (p, q)))
    if B.has_conj:
        for p, q in B.bidegrees():
            C = B.conj(p, q)
            if B.conj(q, p) @ C.conj() != QMatrix.identity(B.dim(p, q)):
                bad.append(("conj is an involution", (p, q)))
            # sigma del = delbar sigma  with sigma(x) = C conj(x)
            if p + 1 <= B.P and B.conj(p + 1, q) @ B.del_(p, q).conj() != B.delbar(q, p) @ C:
                bad.append(("conj intertwines del and delbar", (p, q)))
    return ValidationReport(tuple(bad))


def check(B: Bicomplex) -> Bicomplex:
    """Raise InvalidBicomplex unless the axioms hold (memoized)."""
    rep = B.cached("validate", lambda: validate(B))
    if not rep.ok:
        raise InvalidBicomplex(rep)
    return B


# ---------------------------------------------------------------------------
# constructions


def antidiagonal(B: Bicomplex, k: int) -> list[Bidegree]:
    """Bidegrees with p + q = k inside the box, by increasing p."""
    return [(p, k - p) for p in range(max(0, k - B.Q), min(B.P, k) + 1)]


def total(B: Bicomplex) -> TotalComplex:
    """Total complex with blocks ordered by increasing p on each antidiagonal."""
    check(B)
    return B.cached("total", lambda: _total(B))


def _total(B: Bicomplex) -> TotalComplex:
    top = B.top_degree
    blocks = [antidiagonal(B, k) for k in range(top + 1)]
    dims = [sum(B.dim(*pq) for pq in blocks[k]) for k in range(top + 1)]
    ds = []
    for k in range(top + 1):
        tgt = blocks[k + 1] if k < top else []
        rows = []
        for t in tgt:
            row = []
            for s in blocks[k]:
                if t == (s[0] + 1, s[1]):
                    row.append(B.del_(*s))
                elif t == (s[0], s[1] + 1):
                    row.append(B.delbar(*s))
                else:
                    row.append(QMatrix.zeros(B.dim(*t), B.dim(*s)))
            rows.append(QMatrix.hstack(row, rows=B.dim(*t)))
        ds.append(QMatrix.vstack(rows, cols=dims[k]))
    for k in range(top):
        if not (ds[k + 1] @ ds[k]).is_zero():
            raise AssertionError(f"total differential does not square to zero in degree {k}")
    return TotalComplex(dims, ds, blocks, [{pq: B.dim(*pq) for pq in bl} for bl in blocks])


def direct_sum(B1: Bicomplex, B2: Bicomplex) -> Bicomplex:
    """Block direct sum on the union of the two boxes."""
    P, Q = max(B1.P, B2.P), max(B1.Q, B2.Q)
    pqs = [(p, q) for p in range(P + 1) for q in range(Q + 1)]
    dims = {pq: B1.dim(*pq) + B2.dim(*pq) for pq in pqs}
    dl = {pq: QMatrix.block_diag([B1.del_(*pq), B2.del_(*pq)]) for pq in pqs}
    dbl = {pq: QMatrix.block_diag([B1.delbar(*pq), B2.delbar(*pq)]) for pq in pqs}

    def cj(B, p, q):
        if B.P >= p and B.Q >= q and B.P >= q and B.Q >= p:
            return B.conj(p, q)
        return QMatrix.zeros(B.dim(q, p), B.dim(p, q))

    conj = None
    if B1.has_conj and B2.has_conj and P == Q:
        conj = {pq: QMatrix.block_diag([cj(B1, *pq), cj(B2, *pq)]) for pq in pqs}
    labels = None
    if B1.labels and B2.labels:
        labels = {pq: B1.labels.get(pq, []) + B2.labels.get(pq, []) for pq in pqs}
    return Bicomplex(P, Q, dims, dl, dbl, conj, labels)


def conjugate(B: Bicomplex) -> Bicomplex:
    """The conjugate complex: (p,q) -> (q,p), del <-> delbar, entries conjugated.

    When ``B`` carries conjugation data ``C``, the matrices ``conj(C)`` give an
    isomorphism ``B -> conjugate(B)``.
    """
    dims = {(q, p): n for (p, q), n in B.dims.items()}
    dl = {(q, p): B.delbar(p, q).conj() for p, q in B.bidegrees()}
    dbl = {(q, p): B.del_(p, q).conj() for p, q in B.bidegrees()}
    conj = None
    if B.has_conj:
        conj = {(p, q): B.conj(q, p).conj() for p, q in B.bidegrees()}
    labels = None
    if B.labels:
        labels = {(q, p): v for (p, q), v in B.labels.items()}
    return Bicomplex(B.Q, B.P, dims, dl, dbl, conj, labels)


def change_basis(B: Bicomplex, g: Mapping[Bidegree, QMatrix]) -> Bicomplex:
    """Apply invertible ``g[(p,q)]`` at every bidegree (new coordinates = g @ old)."""
    ginv = {pq: g[pq].inverse() for pq in B.bidegrees()}

    def G(p, q):
        return g[(p, q)] if (p, q) in g else QMatrix.identity(B.dim(p, q))

    dl = {(p, q): G(p + 1, q) @ B.del_(p, q) @ ginv[(p, q)] for p, q in B.bidegrees()}
    dbl = {(p, q): G(p, q + 1) @ B.delbar(p, q) @ ginv[(p, q)] for p, q in B.bidegrees()}
    conj = None
    if B.has_conj:
        conj = {(p, q): G(q, p) @ B.conj(p, q) @ ginv[(p, q)].conj() for p, q in B.bidegrees()}
    return Bicomplex(B.P, B.Q, B.dims, dl, dbl, conj)


def _box_for(shapes) -> tuple[int, int]:
    P = Q = 0
    for s in shapes:
        for p, q in s.vertices():
            P, Q = max(P, p), max(Q, q)
    return P, Q


def from_shapes(multiset: Mapping[ZigzagShape, int], P: int | None = None, Q: int | None = None,
                real: bool = False) -> Bicomplex:
    """Direct sum of indecomposables with the given multiplicities (standard bases).

    With ``real=True`` the multiset must be closed under mirroring
    ``(p,q) -> (q,p)``; conjugation data pairing each copy with a copy of the
    mirror shape is attached.
    """
    shapes = sorted((s for s, m in multiset.items() if m > 0), key=ZigzagShape.sort_key)
    bP, bQ = _box_for(shapes)
    P = bP if P is None else P
    Q = bQ if Q is None else Q
    if real:
        P = Q = max(P, Q)
    for s in shapes:
        if not fits(s, P, Q):
            raise ShapeMismatch(f"{s} does not fit in [0,{P}]x[0,{Q}]")
    dims: Counter = Counter()
    # placement[(shape, copy)] = list of basis indices, one per vertex
    placement: dict[tuple[ZigzagShape, int], list[int]] = {}
    for s in shapes:
        for c in range(multiset[s]):
            idx = []
            for v in s.vertices():
                idx.append(dims[v])
                dims[v] += 1
            placement[(s, c)] = idx
    entries = {"del": {}, "delbar": {}}
    for (s, c), idx in placement.items():
        vs = s.vertices()
        for a, b, kind, sign in s.arrows():
            entries[kind][(vs[a], idx[a], vs[b], idx[b])] = sign

    def build(kind, step):
        out = {}
        for p in range(P + 1):
            for q in range(Q + 1):
                src, tgt = (p, q), (p + step[0], q + step[1])
                rows = [[0] * dims[src] for _ in range(dims[tgt])]
                out[src] = rows
        for (sv, si, tv, ti), sign in entries[kind].items():
            out[sv][ti][si] = sign
        return {pq: QMatrix.from_rows(r, cols=dims[pq]) for pq, r in out.items()}

    conj = None
    if real:
        conj_rows = {(p, q): [[0] * dims[(p, q)] for _ in range(dims[(q, p)])]
                     for p in range(P + 1) for q in range(Q + 1)}
        for (s, c), idx in placement.items():
            m = s.mirror()
            if multiset.get(m, 0) != multiset[s]:
                raise ValueError(f"multiset is not closed under mirroring: {s} vs {m}")
            midx = placement[(m, c)]
            mvs = m.vertices()
            for j, (p, q) in enumerate(s.vertices()):
                k = mvs.index((q, p))
                sign = -1 if (s.kind == SQUARE and j == 3) else 1
                conj_rows[(p, q)][midx[k]][idx[j]] = sign
        conj = {pq: QMatrix.from_rows(r, cols=dims[pq]) for pq, r in conj_rows.items()}
    return Bicomplex(P, Q, dict(dims), build("del", (1, 0)), build("delbar", (0, 1)), conj)


# ---------------------------------------------------------------------------
# random generation


def _random_invertible(rng: random.Random, n: int, gaussian: bool) -> QMatrix:
    """Product of a unit lower, a unit upper triangular matrix and a permutation."""
    def entry():
        if gaussian and rng.random() < 0.3:
            return GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))
        return rng.randint(-2, 2)

    L = [[1 if i == j else (entry() if j < i else 0) for j in range(n)] for i in range(n)]
    U = [[rng.choice((1, 1, -1, 2)) if i == j else (entry() if j > i else 0) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    Pm = [[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)]
    return QMatrix.from_rows(L, cols=n) @ QMatrix.from_rows(U, cols=n) @ QMatrix.from_rows(Pm, cols=n)


def random_shapes(rng: random.Random, P: int, Q: int, max_dim: int, real: bool = False) -> Counter:
    """A random multiset of shapes fitting in the box with every dims(p,q) <= max_dim."""
    cands = all_shapes(P, Q)
    squares = [s for s in cands if s.kind == SQUARE]
    load: Counter = Counter()
    out: Counter = Counter()
    attempts = rng.randint(1, 3 * (P + 1) * (Q + 1))
    for _ in range(attempts):
        pool = squares if squares and rng.random() < 0.25 else cands
        s = rng.choice(pool)
        group = [s]
        if real and s.mirror() != s:
            group.append(s.mirror())
        need = Counter(v for g in group for v in g.vertices())
        if all(load[v] + n <= max_dim for v, n in need.items()):
            load.update(need)
            out.update(group)
    return out


def random_bicomplex_with_shapes(seed: int, P: int, Q: int, max_dim: int,
                                 real: bool = False) -> tuple[Bicomplex, Counter]:
    """Random bicomplex together with the hidden multiset it was built from."""
    rng = random.Random(seed)
    if real:
        P = Q = max(P, Q)
    shapes = random_shapes(rng, P, Q, max_dim, real)
    B = from_shapes(shapes, P, Q, real=real)
    gaussian = rng.random() < 0.3
    g = {pq: _random_invertible(rng, B.dim(*pq), gaussian) for pq in B.bidegrees()}
    return change_basis(B, g), shapes


def random_bicomplex(seed: int, P: int, Q: int, max_dim: int, real: bool = False) -> Bicomplex:
    """Deterministic pseudo-random bicomplex: a hidden sum of shapes under a random basis change."""
    return random_bicomplex_with_shapes(seed, P, Q, max_dim, real)[0]
