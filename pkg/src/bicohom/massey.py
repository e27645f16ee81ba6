"""Cup products and triple Massey products on a finite exterior DGA.

Classes are handled through a fixed model of each ``H^k``: representatives
are the earliest canonical vectors of ``ker d`` completing a basis of
``im d``, and the coordinates of a closed form are its coefficients on those
representatives modulo exact forms.

>>> from bicohom.lie import builtin
>>> M = CohomologyModel(builtin("heisenberg").dga())
>>> e1, e2 = M.basis_class(1, 0), M.basis_class(1, 1)
>>> r = triple_massey(M, e1, e1, e2)
>>> r.defined, r.vanishes, M.dga.element(2, r.representative.coords)
(True, False, {(0, 2): GaussianRational('-1')})
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import QMatrix, Subspace, image_basis, kernel_basis, solve
from .lie import ExteriorDGA


class NotClosed(ValueError):
    pass


class Unsupported(NotImplementedError):
    pass


@dataclass(frozen=True)
class DgaElement:
    degree: int
    coords: QMatrix   # column vector in the lexicographic monomial basis

    def __add__(self, other: "DgaElement") -> "DgaElement":
        if other.degree != self.degree:
            raise ValueError("cannot add elements of different degrees")
        return DgaElement(self.degree, self.coords + other.coords)

    def scale(self, z) -> "DgaElement":
        return DgaElement(self.degree, self.coords.scale(z))

    def is_zero(self) -> bool:
        return self.coords.is_zero()


@dataclass(frozen=True)
class MasseyResult:
    defined: bool
    representative: DgaElement | None = None
    indeterminacy: Subspace | None = None    # inside H^N coordinates
    vanishes: bool | None = None
    class_coords: QMatrix | None = None
    reason: str = ""


class CohomologyModel:
    """Exterior DGA together with chosen bases of its cohomology."""

    def __init__(self, dga: ExteriorDGA):
        self.dga = dga
        self.top = dga.n
        self._cache = {}

    def dim(self, k: int) -> int:
        return len(self.dga.basis(k))

    def d(self, k: int) -> QMatrix:
        return self.dga.d_matrix(k)

    def cocycles(self, k: int) -> Subspace:
        return self._memo(("Z", k), lambda: kernel_basis(self.d(k)))

    def coboundaries(self, k: int) -> Subspace:
        return self._memo(("B", k), lambda: image_basis(self.d(k - 1)) if k > 0 else Subspace.zero(self.dim(k)))

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def representatives(self, k: int) -> QMatrix:
        """Columns are closed forms whose classes form a basis of H^k."""
        return self._memo(("H", k), lambda: self.coboundaries(k).complement_in(self.cocycles(k)))

    def betti(self, k: int) -> int:
        return self.representatives(k).cols

    # -- elements ---------------------------------------------------------------

    def element(self, k: int, coords) -> DgaElement:
        v = coords if isinstance(coords, QMatrix) else QMatrix.column(list(coords))
        if v.shape != (self.dim(k), 1):
            raise ValueError(f"degree {k} forms have {self.dim(k)} coordinates")
        return DgaElement(k, v)

    def from_dict(self, k: int, elem: dict) -> DgaElement:
        return DgaElement(k, self.dga.vector(k, elem))

    def basis_class(self, k: int, i: int) -> DgaElement:
        R = self.representatives(k)
        if not 0 <= i < R.cols:
            raise IndexError(f"H^{k} has dimension {R.cols}")
        return DgaElement(k, R.submatrix(range(R.rows), [i]))

    def wedge(self, a: DgaElement, b: DgaElement) -> DgaElement:
        k = a.degree + b.degree
        if a.degree < 0 or b.degree < 0 or k > self.top:
            return DgaElement(k, QMatrix.zeros(self.dim(k), 1))
        prod = self.dga.wedge(self.dga.element(a.degree, a.coords), self.dga.element(b.degree, b.coords))
        return self.from_dict(k, prod)

    def differential(self, a: DgaElement) -> DgaElement:
        return DgaElement(a.degree + 1, self.d(a.degree) @ a.coords)

    def is_closed(self, a: DgaElement) -> bool:
        return (self.d(a.degree) @ a.coords).is_zero()

    def class_of(self, a: DgaElement) -> QMatrix:
        """Coordinates of [a] in the chosen basis of H^k."""
        if not self.is_closed(a):
            raise NotClosed(f"degree {a.degree} form is not closed")
        k = a.degree
        R = self.representatives(k)
        if R.cols == 0:
            return QMatrix.zeros(0, 1)
        Bm = self.coboundaries(k).basis
        x = solve(QMatrix.hstack([R, Bm], rows=self.dim(k)), a.coords)
        if x is None:
            raise AssertionError("closed form not in the span of representatives and coboundaries")
        return x.submatrix(range(R.cols), [0])

    def is_exact(self, a: DgaElement) -> bool:
        return self.coboundaries(a.degree).contains(a.coords)

    def primitive(self, a: DgaElement) -> DgaElement | None:
        """Particular solution of d x = a with all free variables zero."""
        k = a.degree
        if k == 0:
            # only the zero form has a (degree -1) primitive
            return None if not a.is_zero() else DgaElement(-1, QMatrix.zeros(0, 1))
        x = solve(self.d(k - 1), a.coords)
        return None if x is None else DgaElement(k - 1, x)


def cup(M: CohomologyModel, a: DgaElement, b: DgaElement) -> DgaElement:
    """Representative a ^ b of the product class; raises NotClosed on open input."""
    for x in (a, b):
        if not M.is_closed(x):
            raise NotClosed(f"degree {x.degree} representative is not closed")
    return M.wedge(a, b)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def triple_massey(M: CohomologyModel, a12: DgaElement, a23: DgaElement, a34: DgaElement,
                  alpha13: DgaElement | None = None, alpha24: DgaElement | None = None) -> MasseyResult:
    """<a12, a23, a34> with its indeterminacy.

    Primitives default to the row-reduced particular solutions; passing
    ``alpha13`` / ``alpha24`` overrides them (they must still satisfy the
    defining equations).
    """
    for x in (a12, a23, a34):
        if not M.is_closed(x):
            raise NotClosed(f"degree {x.degree} representative is not closed")
    p, q, r = a12.degree, a23.degree, a34.degree
    N = p + q + r - 1
    if N > M.top:
        return MasseyResult(False, reason="target degree exceeds the top degree")
    u = M.wedge(a12, a23).scale(_sign(p))
    v = M.wedge(a23, a34).scale(_sign(q))
    if alpha13 is None:
        alpha13 = M.primitive(u)
    elif M.differential(alpha13).coords != u.coords:
        raise ValueError("alpha13 does not satisfy d alpha13 = (-1)^|a12| a12 a23")
    if alpha24 is None:
        alpha24 = M.primitive(v)
    elif M.differential(alpha24).coords != v.coords:
        raise ValueError("alpha24 does not satisfy d alpha24 = (-1)^|a23| a23 a34")
    if alpha13 is None or alpha24 is None:
        which = "a12.a23" if alpha13 is None else "a23.a34"
        return MasseyResult(False, reason=f"{which} is not zero in cohomology")
    rep = M.wedge(a12, alpha24).scale(_sign(p)) + M.wedge(alpha13, a34).scale(_sign(alpha13.degree))
    if not M.is_closed(rep):
        raise AssertionError("Massey representative is not closed")
    cls = M.class_of(rep)
    hN = M.betti(N)
    gens = []
    for i in range(M.betti(q + r - 1)):
        gens.append(M.class_of(M.wedge(a12, M.basis_class(q + r - 1, i))))
    for i in range(M.betti(p + q - 1)):
        gens.append(M.class_of(M.wedge(a34, M.basis_class(p + q - 1, i))))
    ind = Subspace.span(QMatrix.hstack(gens, rows=hN)) if gens else Subspace.zero(hN)
    return MasseyResult(True, rep, ind, ind.contains(cls), cls)


def massey(M: CohomologyModel, *classes: DgaElement) -> MasseyResult:
    if len(classes) == 3:
        return triple_massey(M, *classes)
    raise Unsupported("only triple Massey products are implemented")


@dataclass(frozen=True)
class MasseyWitness:
    indices: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]  # (degree, basis index)
    result: MasseyResult


def massey_scan(M: CohomologyModel, max_degree: int = 2) -> list[MasseyWitness]:
    """Non-vanishing products of basis classes with degrees >= 1 summing to at most max_degree + 1."""
    found = []
    slots = [(k, i) for k in range(1, M.top + 1) for i in range(M.betti(k))]
    for x in slots:
        for y in slots:
            for z in slots:
                if x[0] + y[0] + z[0] > max_degree + 1:
                    continue
                res = triple_massey(M, M.basis_class(*x), M.basis_class(*y), M.basis_class(*z))
                if res.defined and not res.vanishes:
                    found.append(MasseyWitness((x, y, z), res))
    return found
