"""Double complexes of Lie algebras with a complex structure.

Two ways in:

* real structure constants ``[x_i, x_j] = sum_k c_ij^k x_k`` plus an
  endomorphism ``J`` with ``J^2 = -1`` (:func:`build_bicomplex`);
* complex structure equations ``d phi^k = ...`` in a (1,0)-coframe
  (:func:`build_bicomplex_coframe`).

Both end in an :class:`ExteriorDGA` on generators ``phi^1..phi^m,
phibar^1..phibar^m`` whose differential is split by bidegree.  Indices in the
public data are 1-based, as in the usual notation ``c_12^3``.

>>> g = builtin("heisenberg")
>>> jacobi_check(g).ok, central_series(g)
(True, ([0, 1, 3], 2))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .bicomplex import Bicomplex, TotalComplex
from .exact_linalg import GaussianRational, QMatrix, Subspace, intersect_all, preimage

Scalar = GaussianRational


class JacobiViolation(ValueError):
    pass


class NotAlmostComplex(ValueError):
    pass


class NotIntegrable(ValueError):
    """The complex structure has a nonzero (0,2) component in d phi, so d != del + delbar."""


class UnknownExample(KeyError):
    def __str__(self):
        return self.args[0] if self.args else "unknown example"


def _g(x) -> GaussianRational:
    return GaussianRational.coerce(x)


# ---------------------------------------------------------------------------
# exterior algebra


def _sort_sign(word) -> tuple[tuple[int, ...], int] | None:
    """Sort a word of generators; None if a generator repeats."""
    if len(set(word)) != len(word):
        return None
    w = list(word)
    sign = 1
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] > w[j]:
                sign = -sign
    return tuple(sorted(w)), sign


class ExteriorDGA:
    """Free graded-commutative algebra on ``ngens`` degree-one generators.

    ``dgens[a]`` maps sorted pairs ``(b, c)`` (0-based, b < c) to the
    coefficient of ``g^b ^ g^c`` in ``d g^a``.  Elements are dicts from sorted
    index tuples to scalars.
    """

    def __init__(self, ngens: int, dgens: list[dict], names: list[str] | None = None):
        self.n = ngens
        self.dgens = [{k: _g(v) for k, v in dg.items() if _g(v)} for dg in dgens]
        self.names = names or [f"e{i + 1}" for i in range(ngens)]
        self._basis = {}
        self._index = {}
        self._dmat = {}

    def basis(self, k: int) -> list[tuple[int, ...]]:
        if k not in self._basis:
            self._basis[k] = list(combinations(range(self.n), k)) if 0 <= k <= self.n else []
        return self._basis[k]

    def index(self, k: int) -> dict:
        if k not in self._index:
            self._index[k] = {m: i for i, m in enumerate(self.basis(k))}
        return self._index[k]

    def label(self, mono: tuple[int, ...]) -> str:
        return "^".join(self.names[i] for i in mono) if mono else "1"

    # -- products -------------------------------------------------------------

    @staticmethod
    def _add(acc: dict, mono, coef):
        v = acc.get(mono, GaussianRational()) + coef
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)

    def wedge(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                r = _sort_sign(ma + mb)
                if r is None:
                    continue
                mono, sign = r
                self._add(out, mono, ca * cb * sign)
        return out

    def d_mono(self, mono: tuple[int, ...]) -> dict:
        out: dict = {}
        for r, gen in enumerate(mono):
            sign = -1 if r % 2 else 1
            for (b, c), coef in self.dgens[gen].items():
                res = _sort_sign(mono[:r] + (b, c) + mono[r + 1:])
                if res is None:
                    continue
                m, s = res
                self._add(out, m, coef * (sign * s))
        return out

    def d(self, a: dict) -> dict:
        out: dict = {}
        for m, c in a.items():
            for m2, c2 in self.d_mono(m).items():
                self._add(out, m2, c * c2)
        return out

    def d_matrix(self, k: int) -> QMatrix:
        """Matrix of d : Lambda^k -> Lambda^{k+1} in the lexicographic monomial bases."""
        if k not in self._dmat:
            rows, cols = len(self.basis(k + 1)), len(self.basis(k))
            ent = [[0] * cols for _ in range(rows)]
            idx = self.index(k + 1)
            for j, m in enumerate(self.basis(k)):
                for m2, c in self.d_mono(m).items():
                    ent[idx[m2]][j] = c
            self._dmat[k] = QMatrix.from_rows(ent, cols=cols)
        return self._dmat[k]

    # -- coordinates ----------------------------------------------------------

    def vector(self, k: int, elem: dict) -> QMatrix:
        idx = self.index(k)
        vals = [GaussianRational()] * len(idx)
        for m, c in elem.items():
            if len(m) != k:
                raise ValueError(f"element is not homogeneous of degree {k}")
            vals[idx[m]] = c
        return QMatrix.column(vals) if vals else QMatrix.zeros(0, 1)

    def element(self, k: int, vec: QMatrix) -> dict:
        return {m: v for m, v in zip(self.basis(k), vec.entries()) if v}

    def total_complex(self) -> TotalComplex:
        dims = [comb(self.n, k) for k in range(self.n + 1)]
        ds = [self.d_matrix(k) for k in range(self.n + 1)]
        for k in range(self.n):
            if not (ds[k + 1] @ ds[k]).is_zero():
                raise JacobiViolation(f"d^2 != 0 on forms of degree {k}")
        return TotalComplex(dims, ds)

    def d_squared_zero(self) -> bool:
        """d^2 = 0 on generators; d^2 is a derivation so this covers the whole algebra."""
        return all(not self.d(self.d({(a,): GaussianRational(1)})) for a in range(self.n))


# ---------------------------------------------------------------------------
# real Lie algebras


@dataclass(frozen=True)
class LieAlgebraPresentation:
    """Structure constants ``c[(i, j, k)] = c_ij^k`` with 1-based ``i < j``."""
    n: int
    c: dict
    name: str = ""
    complex_structure: "ComplexStructure | None" = None

    @classmethod
    def from_brackets(cls, n: int, entries, name: str = "", J=None) -> "LieAlgebraPresentation":
        """``entries`` is an iterable of ``(i, j, k, value)``; i > j flips the sign."""
        c: dict = {}
        for i, j, k, v in entries:
            v = _g(v)
            if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
                raise ValueError(f"bracket index out of range in ({i},{j},{k})")
            if i == j:
                if v:
                    raise ValueError("[x_i, x_i] must vanish")
                continue
            if i > j:
                i, j, v = j, i, -v
            c[(i, j, k)] = c.get((i, j, k), GaussianRational()) + v
        c = {key: v for key, v in c.items() if v}
        cs = ComplexStructure(J) if J is not None and not isinstance(J, ComplexStructure) else J
        return cls(n, c, name, cs)

    def bracket(self, x: list, y: list) -> list:
        out = [GaussianRational()] * self.n
        for (i, j, k), v in self.c.items():
            t = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
            if t:
                out[k - 1] = out[k - 1] + v * t
        return out

    def basis_vector(self, i: int) -> list:
        return [GaussianRational(1 if j == i else 0) for j in range(self.n)]

    def dga(self) -> ExteriorDGA:
        """Chevalley-Eilenberg algebra: d e^k = - sum_{i<j} c_ij^k e^i ^ e^j."""
        dgens = [dict() for _ in range(self.n)]
        for (i, j, k), v in self.c.items():
            dgens[k - 1][(i - 1, j - 1)] = -v
        return ExteriorDGA(self.n, dgens)


@dataclass(frozen=True)
class JacobiResult:
    ok: bool
    triple: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.ok


def jacobi_check(g: LieAlgebraPresentation) -> JacobiResult:
    """First triple i<j<k (1-based) violating Jacobi, cross-checked against d^2 = 0."""
    e = g.basis_vector
    bad = None
    for i, j, k in combinations(range(g.n), 3):
        x, y, z = e(i), e(j), e(k)
        s = [a + b + c for a, b, c in zip(g.bracket(g.bracket(x, y), z), g.bracket(g.bracket(y, z), x),
                                          g.bracket(g.bracket(z, x), y))]
        if any(s):
            bad = (i + 1, j + 1, k + 1)
            break
    via_d = g.dga().d_squared_zero()
    if via_d != (bad is None):
        raise AssertionError("Jacobi check and d^2 = 0 disagree")
    return JacobiResult(bad is None, bad)


def ce_differential(g: LieAlgebraPresentation) -> TotalComplex:
    """The Chevalley-Eilenberg complex as a single-graded complex."""
    r = jacobi_check(g)
    if not r.ok:
        raise JacobiViolation(f"Jacobi identity fails on x{r.triple[0]}, x{r.triple[1]}, x{r.triple[2]}")
    return g.dga().total_complex()


def central_series(g: LieAlgebraPresentation) -> tuple[list[int], int | str]:
    """Dimensions of Z^0 = 0 < Z^1 < ... and the nilpotency step (or 'not nilpotent')."""
    r = jacobi_check(g)
    if not r.ok:
        raise JacobiViolation(f"Jacobi identity fails on {r.triple}")
    n = g.n
    # ad_j: x -> [x, x_j]
    ads = []
    for j in range(n):
        cols = [g.bracket(g.basis_vector(i), g.basis_vector(j)) for i in range(n)]
        ads.append(QMatrix.from_columns(cols, rows=n) if n else QMatrix.zeros(0, 0))
    Z = Subspace.zero(n)
    dims = [0]
    while True:
        nxt = intersect_all([preimage(ad, Z) for ad in ads], n)
        if nxt.dim == Z.dim:
            break
        Z = nxt
        dims.append(Z.dim)
    if dims[-1] == n:
        return dims, len(dims) - 1
    return dims, "not nilpotent"


# ---------------------------------------------------------------------------
# complex structures


@dataclass(frozen=True)
class ComplexStructure:
    J: QMatrix

    def __init__(self, J):
        M = J if isinstance(J, QMatrix) else QMatrix.from_rows(J)
        object.__setattr__(self, "J", M)

    @property
    def n(self) -> int:
        return self.J.rows

    def check(self):
        if self.J.rows != self.J.cols or self.J.rows % 2:
            raise NotAlmostComplex("J must be a square matrix of even size")
        if self.J @ self.J != -QMatrix.identity(self.J.rows):
            raise NotAlmostComplex("J^2 != -1")


@dataclass(frozen=True)
class NijenhuisResult:
    values: dict          # (a, b) 1-based, a < b -> list of coordinates
    is_integrable: bool

    def nonzero(self) -> list[tuple[int, int]]:
        return [ab for ab, v in self.values.items() if any(v)]


def _apply(M: QMatrix, x: list) -> list:
    return (M @ QMatrix.column(x)).entries() if x else []


def nijenhuis(g: LieAlgebraPresentation, J: ComplexStructure | QMatrix | None = None) -> NijenhuisResult:
    """N_J(x_a, x_b) = [x_a,x_b] + J[Jx_a,x_b] + J[x_a,Jx_b] - [Jx_a,Jx_b] on all basis pairs.

    Cross-checked against the (0,2) part of d on the (1,0)-coframe.
    """
    cs = _as_cs(g, J)
    cs.check()
    M = cs.J
    vals = {}
    for a, b in combinations(range(g.n), 2):
        x, y = g.basis_vector(a), g.basis_vector(b)
        Jx, Jy = _apply(M, x), _apply(M, y)
        t1 = g.bracket(x, y)
        t2 = _apply(M, g.bracket(Jx, y))
        t3 = _apply(M, g.bracket(x, Jy))
        t4 = g.bracket(Jx, Jy)
        vals[(a + 1, b + 1)] = [p + q + r - s for p, q, r, s in zip(t1, t2, t3, t4)]
    integrable = not any(any(v) for v in vals.values())
    if integrable != (not _has_02_part(g, cs)):
        raise AssertionError("Nijenhuis tensor and (0,2)-component criterion disagree")
    return NijenhuisResult(vals, integrable)


def _as_cs(g, J) -> ComplexStructure:
    if J is None:
        if g.complex_structure is None:
            raise NotAlmostComplex(f"no complex structure given for {g.name or 'this algebra'}")
        return g.complex_structure
    return J if isinstance(J, ComplexStructure) else ComplexStructure(J)


# ---------------------------------------------------------------------------
# coframes


@dataclass(frozen=True)
class ComplexCoframePresentation:
    """``terms[k]`` lists ``(i, bar_i, j, bar_j, coef)`` for d phi^k (all 1-based).

    A term ``(i, False, j, True, c)`` is ``c phi^i ^ phibar^j``.
    """
    m: int
    terms: dict = field(default_factory=dict)
    name: str = ""

    def generator(self, i: int, bar: bool) -> int:
        if not 1 <= i <= self.m:
            raise ValueError(f"coframe index {i} out of range 1..{self.m}")
        return i - 1 + (self.m if bar else 0)

    def dgens(self) -> list[dict]:
        """d on all 2m generators; d phibar is the conjugate of d phi."""
        m = self.m
        out = [dict() for _ in range(2 * m)]
        for k, terms in self.terms.items():
            for i, bi, j, bj, c in terms:
                a, b = self.generator(i, bi), self.generator(j, bj)
                if a == b:
                    continue
                c = _g(c)
                if a > b:
                    a, b, c = b, a, -c
                tgt = out[k - 1]
                tgt[(a, b)] = tgt.get((a, b), GaussianRational()) + c
        for k in range(m):
            for (a, b), c in out[k].items():
                ca, cb = (a + m) % (2 * m), (b + m) % (2 * m)
                cc = c.conjugate()
                if ca > cb:
                    ca, cb, cc = cb, ca, -cc
                tgt = out[k + m]
                tgt[(ca, cb)] = tgt.get((ca, cb), GaussianRational()) + cc
        return [{key: v for key, v in d.items() if v} for d in out]

    def dga(self) -> ExteriorDGA:
        names = [f"phi{i + 1}" for i in range(self.m)] + [f"phibar{i + 1}" for i in range(self.m)]
        return ExteriorDGA(2 * self.m, self.dgens(), names)

    def lie_algebra(self) -> LieAlgebraPresentation:
        """The complexified Lie algebra dual to this coframe (c_bc^a = -coefficient)."""
        entries = []
        for a, dg in enumerate(self.dgens()):
            for (b, c), v in dg.items():
                entries.append((b + 1, c + 1, a + 1, -v))
        return LieAlgebraPresentation.from_brackets(2 * self.m, entries, self.name)


def _coframe_matrix(g: LieAlgebraPresentation, cs: ComplexStructure) -> QMatrix:
    """Rows phi^a = e^i - i (e^i o J) for the first m independent choices of i."""
    n = g.n
    m = n // 2
    J = cs.J
    rows = []
    for i in range(n):
        cand = [GaussianRational(1 if j == i else 0) - GaussianRational(0, 1) * J[i, j] for j in range(n)]
        trial = QMatrix.from_rows(rows + [cand], cols=n)
        if trial.rank() == len(rows) + 1:
            rows.append(cand)
        if len(rows) == m:
            break
    return QMatrix.from_rows(rows, cols=n)


def _coframe_dgens(g: LieAlgebraPresentation, cs: ComplexStructure) -> list[dict]:
    """d on theta = (phi, phibar) as coefficients of theta^b ^ theta^c."""
    n = g.n
    Phi = _coframe_matrix(g, cs)
    T = QMatrix.vstack([Phi, Phi.conj()])
    Tinv = T.inverse()
    real = g.dga()
    # real d e^k as antisymmetric matrices W_k, d e^k = sum_{i<j} W_k[i,j] e^i ^ e^j
    W = []
    for k in range(n):
        rows = [[GaussianRational()] * n for _ in range(n)]
        for (i, j), v in real.dgens[k].items():
            rows[i][j] = v
            rows[j][i] = -v
        W.append(QMatrix.from_rows(rows, cols=n))
    out = []
    Trows = T.to_rows()
    for a in range(n):
        Wa = QMatrix.zeros(n, n)
        for k in range(n):
            if Trows[a][k]:
                Wa = Wa + W[k].scale(Trows[a][k])
        Wt = Tinv.transpose() @ Wa @ Tinv
        out.append({(b, c): Wt[b, c] for b in range(n) for c in range(b + 1, n) if Wt[b, c]})
    return out


def _has_02_part(g: LieAlgebraPresentation, cs: ComplexStructure) -> bool:
    m = g.n // 2
    dgens = _coframe_dgens(g, cs)
    return any(b >= m and c >= m for a in range(m) for (b, c) in dgens[a])


def coframe_from_complex_structure(g: LieAlgebraPresentation, J=None) -> ComplexCoframePresentation:
    """Structure equations of the (1,0)-coframe phi^a = e^i - i e^i o J."""
    cs = _as_cs(g, J)
    cs.check()
    r = jacobi_check(g)
    if not r.ok:
        raise JacobiViolation(f"Jacobi identity fails on {r.triple}")
    m = g.n // 2
    dgens = _coframe_dgens(g, cs)
    terms = {}
    for a in range(m):
        lst = []
        for (b, c), v in sorted(dgens[a].items()):
            if b >= m and c >= m:
                raise NotIntegrable(f"d phi^{a + 1} has a (0,2) component; J is not integrable")
            lst.append((b % m + 1, b >= m, c % m + 1, c >= m, v))
        if lst:
            terms[a + 1] = lst
    cf = ComplexCoframePresentation(m, terms, g.name)
    if cf.dgens() != dgens:
        raise AssertionError("the coframe differential is not real")
    return cf


def build_bicomplex_coframe(cf: ComplexCoframePresentation) -> Bicomplex:
    """Lambda^{p,q} with lexicographic monomials, d split into del and delbar, conj attached."""
    m = cf.m
    A = cf.dga()
    for a in range(m):
        for (b, c) in A.dgens[a]:
            if b >= m and c >= m:
                raise NotIntegrable(f"d phi^{a + 1} has a (0,2) component")
    if not A.d_squared_zero():
        raise JacobiViolation("the structure equations do not satisfy d^2 = 0")

    def bideg(mono):
        p = sum(1 for x in mono if x < m)
        return p, len(mono) - p

    bases = {(p, q): [] for p in range(m + 1) for q in range(m + 1)}
    for k in range(2 * m + 1):
        for mono in A.basis(k):
            bases[bideg(mono)].append(mono)
    index = {pq: {mono: i for i, mono in enumerate(b)} for pq, b in bases.items()}
    dl, dbl = {}, {}
    for (p, q), basis in bases.items():
        tgt_d, tgt_db = (p + 1, q), (p, q + 1)
        nd = len(bases.get(tgt_d, []))
        ndb = len(bases.get(tgt_db, []))
        md = [[0] * len(basis) for _ in range(nd)]
        mdb = [[0] * len(basis) for _ in range(ndb)]
        for j, mono in enumerate(basis):
            for m2, c in A.d_mono(mono).items():
                bd = bideg(m2)
                if bd == tgt_d:
                    md[index[bd][m2]][j] = c
                elif bd == tgt_db:
                    mdb[index[bd][m2]][j] = c
                else:
                    raise NotIntegrable(f"d has a component of bidegree {bd} on {A.label(mono)}")
        dl[(p, q)] = QMatrix.from_rows(md, cols=len(basis))
        dbl[(p, q)] = QMatrix.from_rows(mdb, cols=len(basis))
    conj = {}
    for (p, q), basis in bases.items():
        rows = [[0] * len(basis) for _ in range(len(bases[(q, p)]))]
        sign = -1 if (p * q) % 2 else 1
        for j, mono in enumerate(basis):
            I = [x for x in mono if x < m]
            Jb = [x - m for x in mono if x >= m]
            image = tuple(Jb) + tuple(x + m for x in I)
            rows[index[(q, p)][image]][j] = sign
        conj[(p, q)] = QMatrix.from_rows(rows, cols=len(basis))
    labels = {pq: [A.label(mono) for mono in b] for pq, b in bases.items()}
    dims = {pq: len(b) for pq, b in bases.items()}
    return Bicomplex(m, m, dims, dl, dbl, conj, labels)


def build_bicomplex(g: LieAlgebraPresentation, J=None) -> Bicomplex:
    """Bicomplex of an integrable (g, J) via its (1,0)-coframe."""
    cs = _as_cs(g, J)
    cs.check()
    res = nijenhuis(g, cs)
    if not res.is_integrable:
        a, b = res.nonzero()[0]
        raise NotIntegrable(f"N_J(x{a}, x{b}) != 0; J is not integrable")
    return build_bicomplex_coframe(coframe_from_complex_structure(g, cs))


def to_bicomplex(pres) -> Bicomplex:
    if isinstance(pres, ComplexCoframePresentation):
        return build_bicomplex_coframe(pres)
    return build_bicomplex(pres)


def to_dga(pres) -> ExteriorDGA:
    return pres.dga()


# ---------------------------------------------------------------------------
# catalogue


def _standard_J(n: int) -> QMatrix:
    """J x_{2a-1} = x_{2a}, J x_{2a} = -x_{2a-1}."""
    rows = [[0] * n for _ in range(n)]
    for a in range(0, n, 2):
        rows[a + 1][a] = 1
        rows[a][a + 1] = -1
    return QMatrix.from_rows(rows, cols=n)


def iwasawa() -> ComplexCoframePresentation:
    """d phi^1 = d phi^2 = 0, d phi^3 = -phi^1 ^ phi^2."""
    return ComplexCoframePresentation(3, {3: [(1, False, 2, False, -1)]}, "iwasawa")


def iwasawa_real() -> LieAlgebraPresentation:
    """Realification of the complex Heisenberg algebra with the standard J."""
    return LieAlgebraPresentation.from_brackets(
        6, [(1, 3, 5, 1), (2, 4, 5, -1), (1, 4, 6, 1), (2, 3, 6, 1)], "iwasawa-real", _standard_J(6))


def torus(m: int) -> LieAlgebraPresentation:
    return LieAlgebraPresentation.from_brackets(2 * m, [], f"torus:{m}", _standard_J(2 * m))


def kodaira_thurston() -> LieAlgebraPresentation:
    """h_3 + R with [x1, x2] = -x3 (so d e^3 = e^1 ^ e^2), J x1 = x2, J x3 = x4."""
    return LieAlgebraPresentation.from_brackets(4, [(1, 2, 3, -1)], "kodaira-thurston", _standard_J(4))


def heisenberg() -> LieAlgebraPresentation:
    """Real Heisenberg algebra [x1, x2] = x3, so d e^3 = -e^1 ^ e^2."""
    return LieAlgebraPresentation.from_brackets(3, [(1, 2, 3, 1)], "heisenberg")


CATALOG = ("iwasawa", "iwasawa-real", "torus:<m>", "kodaira-thurston", "heisenberg")


def builtin(name: str):
    """Look up a named example; ``torus:m`` is the abelian algebra of complex dimension m."""
    if name == "iwasawa":
        return iwasawa()
    if name == "iwasawa-real":
        return iwasawa_real()
    if name == "kodaira-thurston":
        return kodaira_thurston()
    if name == "heisenberg":
        return heisenberg()
    if name.startswith("torus:"):
        tail = name.split(":", 1)[1]
        if tail.isdigit() and int(tail) >= 1:
            return torus(int(tail))
    raise UnknownExample(f"unknown example {name!r}; available: {', '.join(CATALOG)}")

