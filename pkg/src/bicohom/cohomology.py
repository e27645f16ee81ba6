"""Cohomology of bounded double complexes.

Every theory is computed from exact subspaces of each ``A^{p,q}`` (or of the
total complex).  Tables always cover the full rectangle, zeros included.

>>> from bicohom.bicomplex import from_shapes
>>> from bicohom.shapes import ZigzagShape
>>> B = from_shapes({ZigzagShape.dot(0, 0): 1, ZigzagShape.square(0, 0): 1})
>>> de_rham(B).entries
{0: 1, 1: 0, 2: 0}
>>> delta_k(B, 0), satisfies_ddbar(B).holds
(0, True)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bicomplex import Bicomplex, Bidegree, check, total
from .exact_linalg import (QMatrix, Subspace, apply, image_basis, intersect, kernel_basis, preimage,
                           quotient_dim, sum_)

DE_RHAM = "deRham"
DOLBEAULT = "Dolbeault"
CONJ_DOLBEAULT = "ConjDolbeault"
BOTT_CHERN = "BottChern"
AEPPLI = "Aeppli"
THEORIES = (DE_RHAM, DOLBEAULT, CONJ_DOLBEAULT, BOTT_CHERN, AEPPLI)


class InternalInconsistency(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class CohomologyTable:
    """Dimensions keyed by bidegree, or by total degree for de Rham."""
    theory: str
    entries: dict
    P: int
    Q: int

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    @property
    def bigraded(self) -> bool:
        return self.theory != DE_RHAM

    def degree(self, k: int) -> int:
        """Sum over the antidiagonal p+q = k (or the entry itself for de Rham)."""
        if not self.bigraded:
            return self[k]
        return sum(n for (p, q), n in self.entries.items() if p + q == k)

    def by_degree(self) -> list[int]:
        return [self.degree(k) for k in range(self.P + self.Q + 1)]

    def transpose(self) -> "CohomologyTable":
        if not self.bigraded:
            return self
        return CohomologyTable(self.theory, {(q, p): n for (p, q), n in self.entries.items()}, self.Q, self.P)

    def same_numbers(self, other: "CohomologyTable") -> bool:
        keys = set(self.entries) | set(other.entries)
        return all(self[k] == other[k] for k in keys)


# ---------------------------------------------------------------------------
# per-bidegree subspaces


class _Spaces:
    """Memoized kernels and images at each bidegree of a valid bicomplex."""

    def __init__(self, B: Bicomplex):
        self.B = B
        self._memo = {}

    def _get(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def ker_del(self, p, q):
        return self._get(("kd", p, q), lambda: kernel_basis(self.B.del_(p, q)))

    def ker_delbar(self, p, q):
        return self._get(("kdb", p, q), lambda: kernel_basis(self.B.delbar(p, q)))

    def ker_ddbar(self, p, q):
        return self._get(("kddb", p, q), lambda: kernel_basis(self.B.ddbar(p, q)))

    def im_del(self, p, q):
        """Image of del landing in (p,q)."""
        return self._get(("id", p, q), lambda: image_basis(self.B.del_(p - 1, q)) if p > 0
                         else Subspace.zero(self.B.dim(p, q)))

    def im_delbar(self, p, q):
        return self._get(("idb", p, q), lambda: image_basis(self.B.delbar(p, q - 1)) if q > 0
                         else Subspace.zero(self.B.dim(p, q)))

    def im_ddbar(self, p, q):
        return self._get(("iddb", p, q), lambda: image_basis(self.B.ddbar(p - 1, q - 1)) if p > 0 and q > 0
                         else Subspace.zero(self.B.dim(p, q)))

    def ker_both(self, p, q):
        return self._get(("kb", p, q), lambda: intersect(self.ker_del(p, q), self.ker_delbar(p, q)))

    def im_sum(self, p, q):
        return self._get(("is", p, q), lambda: sum_(self.im_del(p, q), self.im_delbar(p, q)))


def _spaces(B: Bicomplex) -> _Spaces:
    check(B)
    return B.cached("spaces", lambda: _Spaces(B))


def _table(B: Bicomplex, theory: str, fn) -> CohomologyTable:
    return CohomologyTable(theory, {pq: fn(*pq) for pq in B.bidegrees()}, B.P, B.Q)


# ---------------------------------------------------------------------------
# the five theories


def de_rham(B: Bicomplex) -> CohomologyTable:
    """Betti numbers of the total complex: b_k = dim ker d_k - rank d_{k-1}."""
    T = total(B)

    def compute():
        ranks = [d.rank() for d in T.d]
        b = {k: T.dims[k] - ranks[k] - (ranks[k - 1] if k else 0) for k in range(len(T.dims))}
        return CohomologyTable(DE_RHAM, b, B.P, B.Q)
    return B.cached(DE_RHAM, compute)


def dolbeault(B: Bicomplex) -> CohomologyTable:
    S = _spaces(B)
    return B.cached(DOLBEAULT, lambda: _table(
        B, DOLBEAULT, lambda p, q: quotient_dim(S.ker_delbar(p, q), S.im_delbar(p, q))))


def conj_dolbeault(B: Bicomplex) -> CohomologyTable:
    S = _spaces(B)
    return B.cached(CONJ_DOLBEAULT, lambda: _table(
        B, CONJ_DOLBEAULT, lambda p, q: quotient_dim(S.ker_del(p, q), S.im_del(p, q))))


def bott_chern(B: Bicomplex) -> CohomologyTable:
    """(ker del & ker delbar) / im del delbar."""
    S = _spaces(B)
    return B.cached(BOTT_CHERN, lambda: _table(
        B, BOTT_CHERN, lambda p, q: quotient_dim(S.ker_both(p, q), S.im_ddbar(p, q))))


def aeppli(B: Bicomplex) -> CohomologyTable:
    """ker del delbar / (im del + im delbar)."""
    S = _spaces(B)
    return B.cached(AEPPLI, lambda: _table(
        B, AEPPLI, lambda p, q: quotient_dim(S.ker_ddbar(p, q), S.im_sum(p, q))))


def all_tables(B: Bicomplex) -> dict[str, CohomologyTable]:
    return {DE_RHAM: de_rham(B), DOLBEAULT: dolbeault(B), CONJ_DOLBEAULT: conj_dolbeault(B),
            BOTT_CHERN: bott_chern(B), AEPPLI: aeppli(B)}


# ---------------------------------------------------------------------------
# Varouchas spaces


_VAROUCHAS_NAMES = "abcdef"


@dataclass(frozen=True)
class VarouchasTable:
    a: dict
    b: dict
    c: dict
    d: dict
    e: dict
    f: dict
    P: int
    Q: int
    exactness: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return all(self.exactness.values())

    def table(self, name: str) -> dict:
        return getattr(self, name)

    def shift_relations(self) -> dict[str, bool]:
        """c^{p,q} = d^{p,q+1} and e^{p,q} = b^{p+1,q}; these hold on every double complex."""
        pqs = list(self.a)
        return {
            "c^{p,q} = d^{p,q+1}": all(self.c[(p, q)] == self.d.get((p, q + 1), 0) for p, q in pqs),
            "e^{p,q} = b^{p+1,q}": all(self.e[(p, q)] == self.b.get((p + 1, q), 0) for p, q in pqs),
        }

    def conjugation_relations(self) -> dict[str, bool]:
        """The relations that need a real structure exchanging (p,q) and (q,p)."""
        pqs = list(self.a)

        def t(x, y):
            return all(x[(p, q)] == y.get((q, p), 0) for p, q in pqs)
        return {
            "a^{p,q} = a^{q,p}": t(self.a, self.a),
            "f^{p,q} = f^{q,p}": t(self.f, self.f),
            "d^{p,q} = b^{q,p}": t(self.d, self.b),
            "e^{p,q} = c^{q,p}": t(self.e, self.c),
        }


def _check_exact(seq: list[tuple[Subspace, Subspace]]) -> bool:
    """Exactness of 0 -> N1/D1 -> ... -> Nm/Dm -> 0 with identity-induced maps.

    Each map N_i/D_i -> N_{i+1}/D_{i+1} needs N_i <= N_{i+1} and D_i <= D_{i+1}.
    Image of map i lifted: N_i + D_{i+1}; kernel of map i+1 lifted: N_{i+1} & D_{i+2}.
    """
    for (n1, d1), (n2, d2) in zip(seq, seq[1:]):
        if not (n2.contains_subspace(n1) and d2.contains_subspace(d1)):
            return False
    if intersect(seq[0][0], seq[1][1]) != seq[0][1]:
        return False
    for i in range(len(seq) - 2):
        image = sum_(seq[i][0], seq[i + 1][1])
        kernel = intersect(seq[i + 1][0], seq[i + 2][1])
        if image != kernel:
            return False
    return sum_(seq[-2][0], seq[-1][1]) == seq[-1][0]


def varouchas(B: Bicomplex) -> VarouchasTable:
    """Dimensions of the spaces A..F plus exactness of both five-term sequences.

    Raises InternalInconsistency if a sequence fails to be exact or its
    alternating dimension sum is nonzero.
    """
    S = _spaces(B)
    out = {n: {} for n in _VAROUCHAS_NAMES}
    exactness = {}
    for p, q in B.bidegrees():
        kd, kdb, kddb = S.ker_del(p, q), S.ker_delbar(p, q), S.ker_ddbar(p, q)
        idl, idb, iddb = S.im_del(p, q), S.im_delbar(p, q), S.im_ddbar(p, q)
        quot = {
            "a": (intersect(idb, idl), iddb),
            "b": (intersect(kdb, idl), iddb),
            "c": (kddb, sum_(kdb, idl)),
            "d": (intersect(idb, kd), iddb),
            "e": (kddb, sum_(kd, idb)),
            "f": (kddb, sum_(kdb, kd)),
        }
        for n, (num, den) in quot.items():
            out[n][(p, q)] = quotient_dim(num, den)
        h_dbar = (kdb, idb)
        h_a = (kddb, S.im_sum(p, q))
        h_bc = (S.ker_both(p, q), iddb)
        seqs = {
            1: [quot["a"], quot["b"], h_dbar, h_a, quot["c"]],
            2: [quot["d"], h_bc, h_dbar, quot["e"], quot["f"]],
        }
        for i, seq in seqs.items():
            ok = _check_exact(seq)
            alt = sum((-1) ** j * (num.dim - den.dim) for j, (num, den) in enumerate(seq))
            exactness[(i, p, q)] = ok and alt == 0
            if not exactness[(i, p, q)]:
                raise InternalInconsistency(f"Varouchas sequence {i} is not exact at {(p, q)}")
    return VarouchasTable(**out, P=B.P, Q=B.Q, exactness=exactness)


def varouchas_identity(B: Bicomplex) -> dict[Bidegree, bool]:
    """h_BC + h_A = h_dbar + h_del + f + a at every bidegree."""
    V = varouchas(B)
    bc, a_, hd, hc = bott_chern(B), aeppli(B), dolbeault(B), conj_dolbeault(B)
    return {pq: bc[pq] + a_[pq] == hd[pq] + hc[pq] + V.f[pq] + V.a[pq] for pq in B.bidegrees()}


def varouchas_identity_transposed(B: Bicomplex) -> dict[Bidegree, bool]:
    """h_BC^{p,q} + h_A^{q,p} = h_dbar^{p,q} + h_del^{p,q} + f^{p,q} + a^{p,q}.

    Equivalent to the untransposed identity only when h_A is symmetric, which a
    real structure guarantees.
    """
    V = varouchas(B)
    bc, a_, hd, hc = bott_chern(B), aeppli(B), dolbeault(B), conj_dolbeault(B)
    return {(p, q): bc[(p, q)] + a_[(q, p)] == hd[(p, q)] + hc[(p, q)] + V.f[(p, q)] + V.a[(p, q)]
            for p, q in B.bidegrees()}


# ---------------------------------------------------------------------------
# Frolicher spectral sequence


@dataclass(frozen=True)
class SpectralPage:
    r: int
    entries: dict
    differential_ranks: dict

    def degree(self, k: int) -> int:
        return sum(n for (p, q), n in self.entries.items() if p + q == k)


class _Filtration:
    """Column filtration F^p A^k on the total complex."""

    def __init__(self, B: Bicomplex):
        self.B = B
        self.T = total(B)
        self.top = B.top_degree
        self._memo = {}

    def F(self, p: int, k: int) -> Subspace:
        if not 0 <= k <= self.top:
            return Subspace.zero(0)
        key = ("F", p, k)
        if key not in self._memo:
            n = self.T.dims[k]
            off = self.T.offsets(k)
            cols = []
            for (pp, qq), start in off.items():
                if pp >= p:
                    cols.extend(range(start, start + self.B.dim(pp, qq)))
            I = QMatrix.identity(n)
            self._memo[key] = Subspace.span(I.submatrix(range(n), cols)) if cols else Subspace.zero(n)
        return self._memo[key]

    def d(self, k: int) -> QMatrix:
        return self.T.d[k]

    def Z(self, r: int, p: int, k: int) -> Subspace:
        """F^p A^k & d^{-1}(F^{p+r} A^{k+1}); Z_0 = F^p."""
        if not 0 <= k <= self.top:
            return Subspace.zero(0)
        key = ("Z", r, p, k)
        if key not in self._memo:
            if r == 0:
                val = self.F(p, k)
            elif k == self.top:
                val = self.F(p, k)
            else:
                val = intersect(self.F(p, k), preimage(self.d(k), self.F(p + r, k + 1)))
            self._memo[key] = val
        return self._memo[key]

    def Bd(self, r: int, p: int, k: int) -> Subspace:
        """Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1} inside A^k."""
        key = ("B", r, p, k)
        if key not in self._memo:
            val = self.Z(r - 1, p + 1, k)
            if k >= 1:
                val = sum_(val, apply(self.d(k - 1), self.Z(r - 1, p - r + 1, k - 1)))
            self._memo[key] = val
        return self._memo[key]

    def E_dim(self, r: int, p: int, k: int) -> int:
        return quotient_dim(self.Z(r, p, k), self.Bd(r, p, k))

    def d_rank(self, r: int, p: int, k: int) -> int:
        """Rank of d_r: E_r^{p, k-p} -> E_r^{p+r, k+1-p-r}."""
        if k >= self.top:
            return 0
        tgt = self.Bd(r, p + r, k + 1)
        img = apply(self.d(k), self.Z(r, p, k))
        return sum_(img, tgt).dim - tgt.dim

    def cocycles(self, k: int) -> Subspace:
        if ("ker", k) not in self._memo:
            self._memo[("ker", k)] = kernel_basis(self.d(k)) if k < self.top else Subspace.full(self.T.dims[k])
        return self._memo[("ker", k)]

    def coboundaries(self, k: int) -> Subspace:
        if ("im", k) not in self._memo:
            self._memo[("im", k)] = image_basis(self.d(k - 1)) if k else Subspace.zero(self.T.dims[k])
        return self._memo[("im", k)]

    def E_inf_dim(self, p: int, k: int) -> int:
        ker, im = self.cocycles(k), self.coboundaries(k)
        num = intersect(self.F(p, k), ker)
        den = sum_(intersect(self.F(p + 1, k), ker), intersect(self.F(p, k), im))
        return quotient_dim(num, den)


def _filtration(B: Bicomplex) -> _Filtration:
    return B.cached("filtration", lambda: _Filtration(B))


def _page(B: Bicomplex, r: int) -> SpectralPage:
    def compute():
        Fl = _filtration(B)
        entries, ranks = {}, {}
        for p, q in B.bidegrees():
            entries[(p, q)] = Fl.E_dim(r, p, p + q)
            ranks[(p, q)] = Fl.d_rank(r, p, p + q)
        return SpectralPage(r, entries, ranks)
    return B.cached(("page", r), compute)


def e_infinity(B: Bicomplex) -> dict[Bidegree, int]:
    """Graded pieces of the induced filtration on total cohomology."""
    Fl = _filtration(B)
    return B.cached("E_inf", lambda: {(p, q): Fl.E_inf_dim(p, p + q) for p, q in B.bidegrees()})


def frolicher(B: Bicomplex, r_max: int | None = None) -> list[SpectralPage]:
    """Pages E_1, E_2, ... up to the first page equal to E_infinity (or ``r_max``).

    Every page is cross-checked: its dimensions must equal the previous page
    minus the ranks of the incoming and outgoing differentials.
    """
    if r_max is not None and r_max < 1:
        raise ValueError("r_max must be at least 1")
    check(B)
    hard_stop = B.P + B.Q + 2
    limit = hard_stop if r_max is None else min(r_max, hard_stop)
    einf = e_infinity(B)
    pages = []
    for r in range(1, limit + 1):
        page = _page(B, r)
        if pages:
            prev = pages[-1]
            for p, q in B.bidegrees():
                incoming = prev.differential_ranks.get((p - r + 1, q + r - 2), 0)
                expect = prev.entries[(p, q)] - prev.differential_ranks[(p, q)] - incoming
                if page.entries[(p, q)] != expect:
                    raise InternalInconsistency(f"page {r} disagrees with page {r - 1} at {(p, q)}")
        pages.append(page)
        if page.entries == einf:
            if any(page.differential_ranks.values()):
                raise InternalInconsistency(f"E_{r} equals E_infinity but d_{r} is nonzero")
            break
    else:
        if limit == hard_stop:
            raise InternalInconsistency("spectral sequence did not stabilise within the box")
    return pages


def degeneration_page(B: Bicomplex) -> int:
    """Least r with E_r = E_infinity."""
    return frolicher(B)[-1].r


# ---------------------------------------------------------------------------
# ddbar-lemma


def delta_k(B: Bicomplex, k: int) -> int:
    """sum_{p+q=k} (h_BC + h_A) - 2 b_k."""
    return bott_chern(B).degree(k) + aeppli(B).degree(k) - 2 * de_rham(B)[k]


def deltas(B: Bicomplex) -> list[int]:
    return [delta_k(B, k) for k in range(B.top_degree + 1)]


@dataclass(frozen=True)
class DdbarResult:
    holds: bool
    deltas: list[int]
    injective: dict

    def __bool__(self):
        return self.holds


def bc_to_aeppli_injective(B: Bicomplex, p: int, q: int) -> bool:
    """Is H_BC^{p,q} -> H_A^{p,q} injective?  Kernel is (ker del & ker delbar & (im del + im delbar)) / im ddbar."""
    S = _spaces(B)
    return intersect(S.ker_both(p, q), S.im_sum(p, q)).dim == S.im_ddbar(p, q).dim


def satisfies_ddbar(B: Bicomplex) -> DdbarResult:
    """Decide the ddbar-lemma by Delta_k = 0 and by direct injectivity; they must agree."""
    ds = deltas(B)
    inj = {pq: bc_to_aeppli_injective(B, *pq) for pq in B.bidegrees()}
    by_delta = all(x == 0 for x in ds)
    by_map = all(inj.values())
    if by_delta != by_map:
        raise InternalInconsistency(f"Delta criterion says {by_delta}, injectivity says {by_map}")
    return DdbarResult(by_delta, ds, inj)


# ---------------------------------------------------------------------------
# conditions on the total complex


class _TotalOps:
    """del, delbar and d as maps between total degrees."""

    def __init__(self, B: Bicomplex):
        self.B = B
        T = total(B)
        self.T = T
        self.top = B.top_degree
        self.dl, self.db = [], []
        for k in range(self.top + 1):
            src = T.blocks[k]
            tgt = T.blocks[k + 1] if k < self.top else []
            for name, store, step in (("del", self.dl, (1, 0)), ("delbar", self.db, (0, 1))):
                rows = []
                for t in tgt:
                    row = []
                    for s in src:
                        if t == (s[0] + step[0], s[1] + step[1]):
                            row.append(B.del_(*s) if name == "del" else B.delbar(*s))
                        else:
                            row.append(QMatrix.zeros(B.dim(*t), B.dim(*s)))
                    rows.append(QMatrix.hstack(row, rows=B.dim(*t)))
                store.append(QMatrix.vstack(rows, cols=T.dims[k]))

    def n(self, k):
        return self.T.dims[k] if 0 <= k <= self.top else 0

    def _ker(self, M, k):
        return kernel_basis(M) if k < self.top else Subspace.full(self.n(k))

    def _im(self, maps, k, steps=1):
        if k - steps < 0:
            return Subspace.zero(self.n(k))
        M = maps(k - steps)
        return image_basis(M)

    def ker_del(self, k):
        return self._ker(self.dl[k], k)

    def ker_delbar(self, k):
        return self._ker(self.db[k], k)

    def ker_d(self, k):
        return self._ker(self.T.d[k], k)

    def ddbar(self, k):
        """del delbar : A^k -> A^{k+2}."""
        if k + 2 > self.top:
            return QMatrix.zeros(0, self.n(k))
        return self.dl[k + 1] @ self.db[k]

    def ker_ddbar(self, k):
        return kernel_basis(self.ddbar(k)) if k + 2 <= self.top else Subspace.full(self.n(k))

    def im_del(self, k):
        return self._im(lambda j: self.dl[j], k)

    def im_delbar(self, k):
        return self._im(lambda j: self.db[j], k)

    def im_d(self, k):
        return self._im(lambda j: self.T.d[j], k)

    def im_ddbar(self, k):
        return self._im(self.ddbar, k, steps=2)


LEMMA_515_LABELS = ("(a)_k", "(b)_k", "(c)_k", "(a*)_{k-1}", "(b*)_{k-1}", "(c*)_{k-1}")


def lemma_515(B: Bicomplex, k: int) -> tuple[bool, bool, bool, bool, bool, bool]:
    """The six conditions on A^k and A^{k-1}, each an exact subspace equality."""
    if not 1 <= k <= B.top_degree:
        raise ValueError(f"k must lie in 1..{B.top_degree}")
    O = B.cached("total_ops", lambda: _TotalOps(check(B)))
    kd, kdb, idl, idb, iddb = O.ker_del(k), O.ker_delbar(k), O.im_del(k), O.im_delbar(k), O.im_ddbar(k)
    kb = intersect(kd, kdb)
    a = intersect(kb, O.im_d(k)) == iddb
    b = intersect(kdb, idl) == iddb and intersect(kd, idb) == iddb
    c = intersect(kb, sum_(idl, idb)) == iddb
    j = k - 1
    kd1, kdb1, idl1, idb1, kddb1 = O.ker_del(j), O.ker_delbar(j), O.im_del(j), O.im_delbar(j), O.ker_ddbar(j)
    ims = sum_(idl1, idb1)
    a_s = sum_(ims, O.ker_d(j)) == kddb1
    b_s = sum_(idb1, kd1) == kddb1 and sum_(idl1, kdb1) == kddb1
    c_s = sum_(ims, intersect(kd1, kdb1)) == kddb1
    return (a, b, c, a_s, b_s, c_s)


# ---------------------------------------------------------------------------
# inequalities


@dataclass(frozen=True)
class InequalityReport:
    n: int
    checks: list  # (name, k, lhs, rhs, holds)
    ddbar_characterization: bool

    @property
    def violations(self) -> list:
        return [c for c in self.checks if not c[4]]

    def holds(self, name: str) -> bool:
        return all(c[4] for c in self.checks if c[0] == name)

    @property
    def names(self) -> list[str]:
        return list(dict.fromkeys(c[0] for c in self.checks))


BC_BOUND = "h_BC^k <= min(k+1, 2n-k+1) (h_dbar^k + h_dbar^{k-1})"
A_BOUND = "h_A^k <= min(k+1, 2n-k+1) (h_dbar^k + h_dbar^{k+1})"
BC_BOUND_SYM = "h_BC^k <= min(k+1, 2n-k+1) (s^k + s^{k-1}), s = (h_dbar + h_del)/2"
A_BOUND_SYM = "h_A^k <= min(k+1, 2n-k+1) (s^k + s^{k+1}), s = (h_dbar + h_del)/2"
DIFF_BOUND = "|h_A^k - h_BC^k| <= 2(n+1) (h_dbar^k + h_dbar^{k+1})"


def inequality_suite(B: Bicomplex, n: int) -> InequalityReport:
    """Evaluate the Bott-Chern/Aeppli upper bounds in every degree.

    The plain bounds use Dolbeault numbers only; the symmetrised ones average
    Dolbeault and conjugate Dolbeault, which coincide when a real structure is
    present.  Violations are reported, never raised.
    """
    hd, hc = dolbeault(B), conj_dolbeault(B)
    bc, ae = bott_chern(B), aeppli(B)
    top = 2 * n

    def h(t, k):
        return t.degree(k) if 0 <= k <= B.top_degree else 0

    def s(k):
        return Fraction(h(hd, k) + h(hc, k), 2)

    checks = []
    for k in range(top + 1):
        m = min(k + 1, 2 * n - k + 1)
        bk, ak = h(bc, k), h(ae, k)
        rows = [
            (BC_BOUND, bk, m * (h(hd, k) + h(hd, k - 1))),
            (A_BOUND, ak, m * (h(hd, k) + h(hd, k + 1))),
            (BC_BOUND_SYM, bk, m * (s(k) + s(k - 1))),
            (A_BOUND_SYM, ak, m * (s(k) + s(k + 1))),
            (DIFF_BOUND, abs(ak - bk), 2 * (n + 1) * (h(hd, k) + h(hd, k + 1))),
        ]
        checks.extend((name, k, lhs, rhs, lhs <= rhs) for name, lhs, rhs in rows)
    gap = sum(abs(h(bc, k) - h(ae, k)) for k in range(top + 1))
    char = (gap == 0) == satisfies_ddbar(B).holds
    return InequalityReport(n, checks, char)


def frolicher_inequality(B: Bicomplex) -> list[bool]:
    """b_k <= sum_{p+q=k} h_dbar^{p,q} for each k."""
    b, hd = de_rham(B), dolbeault(B)
    return [b[k] <= hd.degree(k) for k in range(B.top_degree + 1)]
