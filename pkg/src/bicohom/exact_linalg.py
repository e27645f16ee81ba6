"""Exact linear algebra over the Gaussian rationals Q(i).

Matrices are stored as a common positive denominator together with integer
numerators (real part, and an imaginary part only when some entry is
non-real).  Row reduction is fraction-free Gauss-Jordan elimination on the
integer numerators, so the hot loops only ever touch Python ints; the
division by the final pivot happens once, when the reduced form is
normalised.

Subspaces are stored in canonical form: the rows of the reduced row echelon
form of their spanning set.  Two subspaces are equal exactly when their
canonical bases are equal.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction


class LinAlgError(ValueError):
    pass


class AmbientMismatch(LinAlgError):
    pass


class NotASubspace(LinAlgError):
    pass


class ShapeError(LinAlgError):
    pass


# ---------------------------------------------------------------------------
# scalars


class GaussianRational:
    """An element ``re + im*i`` of Q(i), with ``re`` and ``im`` Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return parse_gaussian(x)
        if isinstance(x, (int, _RationalABC)):
            return cls(x, 0)
        if isinstance(x, complex):
            raise TypeError("floating point complex numbers are not exact; use GaussianRational")
        if isinstance(x, float):
            raise TypeError("floats are not exact; pass a Fraction or a 'num/den' string")
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|^2."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({format_gaussian(self)!r})"

    def __str__(self):
        return format_gaussian(self)


I = GaussianRational(0, 1)


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``"a/b+c/d i"`` style strings (``"1"``, ``"-1/2"``, ``"i"``, ``"3-2i"``)."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty number")
    try:
        if not s.endswith("i"):
            return GaussianRational(Fraction(s), 0)
        body = s[:-1]
        k = max(body.rfind("+"), body.rfind("-"))
        if k > 0:
            re_txt, im_txt = body[:k], body[k:]
        else:
            re_txt, im_txt = "0", body
        if im_txt in ("", "+"):
            im_val = Fraction(1)
        elif im_txt == "-":
            im_val = Fraction(-1)
        else:
            im_val = Fraction(im_txt)
        return GaussianRational(Fraction(re_txt), im_val)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a Gaussian rational: {text!r}") from None


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_gaussian(z) -> str:
    """Canonical string form: ``"a/b"``, ``"c/d i"`` or ``"a/b+c/d i"``."""
    z = GaussianRational.coerce(z)
    if z.im == 0:
        return _fmt_frac(z.re)
    im = _fmt_frac(abs(z.im))
    if z.re == 0:
        return ("-" if z.im < 0 else "") + f"{im} i"
    return f"{_fmt_frac(z.re)}{'-' if z.im < 0 else '+'}{im} i"


# ---------------------------------------------------------------------------
# Gaussian integer helpers used by the elimination kernels


def _ff_gauss_jordan_real(rows: list[list[int]], ncols: int):
    """Fraction-free Gauss-Jordan elimination in place.

    On return the first ``rank`` rows are the reduced row echelon form scaled
    by ``det`` (every pivot entry equals ``det``).
    """
    m = len(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and rows[p][c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        piv = pr[c]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == 0:
                if piv != prev:
                    rows[i] = [x * piv // prev for x in row]
            else:
                rows[i] = [(x * piv - f * y) // prev for x, y in zip(row, pr)]
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, prev


def _ff_gauss_jordan_complex(re_rows: list[list[int]], im_rows: list[list[int]], ncols: int):
    """Complex analogue of :func:`_ff_gauss_jordan_real` over Z[i]."""
    m = len(re_rows)
    prev_r, prev_i = 1, 0
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and re_rows[p][c] == 0 and im_rows[p][c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            re_rows[r], re_rows[p] = re_rows[p], re_rows[r]
            im_rows[r], im_rows[p] = im_rows[p], im_rows[r]
        prr, pri = re_rows[r], im_rows[r]
        vr, vi = prr[c], pri[c]
        real_prev = prev_i == 0
        n = prev_r if real_prev else prev_r * prev_r + prev_i * prev_i
        # divide by prev: over Z directly when prev is real, else via conj(prev) / |prev|^2
        cr, ci = prev_r, -prev_i
        for i in range(m):
            if i == r:
                continue
            xr_row, xi_row = re_rows[i], im_rows[i]
            fr, fi = xr_row[c], xi_row[c]
            if fr == 0 and fi == 0:
                if vi == 0 and vr == prev_r and real_prev:
                    continue
                pairs = ((xr * vr - xi * vi, xr * vi + xi * vr) for xr, xi in zip(xr_row, xi_row))
            else:
                pairs = ((xr * vr - xi * vi - (fr * yr - fi * yi), xr * vi + xi * vr - (fr * yi + fi * yr))
                         for xr, xi, yr, yi in zip(xr_row, xi_row, prr, pri))
            new_r = []
            new_i = []
            for tr, ti in pairs:
                if real_prev:
                    ur, ui = tr, ti
                else:
                    ur = tr * cr - ti * ci
                    ui = tr * ci + ti * cr
                qr, rem1 = divmod(ur, n)
                qi, rem2 = divmod(ui, n)
                if rem1 or rem2:
                    raise ArithmeticError("inexact Gaussian-integer division")
                new_r.append(qr)
                new_i.append(qi)
            re_rows[i] = new_r
            im_rows[i] = new_i
        prev_r, prev_i = vr, vi
        pivots.append(c)
        r += 1
    return pivots, (prev_r, prev_i)


# ---------------------------------------------------------------------------
# matrices


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class QMatrix:
    """Immutable dense matrix over Q(i).

    Entries are ``(re[k] + im[k] i) / den`` in row-major order.  ``im`` is
    ``None`` for real matrices, which keeps the common case on a pure
    integer path.
    """

    __slots__ = ("rows", "cols", "_re", "_im", "_den", "_hash")

    def __init__(self, rows: int, cols: int, re: Sequence[int], im: Sequence[int] | None = None, den: int = 1):
        if rows < 0 or cols < 0:
            raise ShapeError("negative matrix dimension")
        if len(re) != rows * cols or (im is not None and len(im) != rows * cols):
            raise ShapeError("entry count does not match the shape")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        re = list(re)
        im = list(im) if im is not None else None
        if im is not None and not any(im):
            im = None
        if den < 0:
            den = -den
            re = [-x for x in re]
            if im is not None:
                im = [-x for x in im]
        g = den
        for x in re:
            if g == 1:
                break
            g = gcd(g, x)
        if im is not None:
            for x in im:
                if g == 1:
                    break
                g = gcd(g, x)
        if g > 1:
            den //= g
            re = [x // g for x in re]
            if im is not None:
                im = [x // g for x in im]
        self.rows = rows
        self.cols = cols
        self._re = tuple(re)
        self._im = tuple(im) if im is not None else None
        self._den = den
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        re = [0] * (n * n)
        for i in range(n):
            re[i * n + i] = 1
        return cls(n, n, re)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        """Build from nested sequences of ints, Fractions, GaussianRationals or strings."""
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if cols is None:
            if nrows == 0:
                raise ShapeError("cannot infer the column count of an empty matrix; pass cols=")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        entries = [GaussianRational.coerce(x) for r in rows for x in r]
        return cls._from_entries(nrows, cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "QMatrix":
        cols = list(columns)
        return cls.from_rows([[c[i] for c in cols] for i in range(rows)], cols=len(cols))

    @classmethod
    def _from_entries(cls, rows: int, cols: int, entries: Sequence[GaussianRational]) -> "QMatrix":
        den = 1
        for z in entries:
            if z.re.denominator != 1:
                den = _lcm(den, z.re.denominator)
            if z.im.denominator != 1:
                den = _lcm(den, z.im.denominator)
        re = [z.re.numerator * (den // z.re.denominator) for z in entries]
        if any(z.im for z in entries):
            im = [z.im.numerator * (den // z.im.denominator) for z in entries]
        else:
            im = None
        return cls(rows, cols, re, im, den)

    @classmethod
    def column(cls, values: Sequence) -> "QMatrix":
        return cls.from_rows([[v] for v in values], cols=1)

    # -- access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_real(self) -> bool:
        return self._im is None

    def __getitem__(self, key) -> GaussianRational:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        k = i * self.cols + j
        im = self._im[k] if self._im is not None else 0
        return GaussianRational(Fraction(self._re[k], self._den), Fraction(im, self._den))

    def entries(self) -> list[GaussianRational]:
        d = self._den
        im = self._im if self._im is not None else (0,) * len(self._re)
        return [GaussianRational(Fraction(a, d), Fraction(b, d)) for a, b in zip(self._re, im)]

    def to_rows(self) -> list[list[GaussianRational]]:
        e = self.entries()
        return [e[i * self.cols:(i + 1) * self.cols] for i in range(self.rows)]

    def column_vectors(self) -> list["QMatrix"]:
        return [self.submatrix(range(self.rows), [j]) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(self._re) and self._im is None

    def _int_rows(self):
        c = self.cols
        re = [list(self._re[i * c:(i + 1) * c]) for i in range(self.rows)]
        im = None if self._im is None else [list(self._im[i * c:(i + 1) * c]) for i in range(self.rows)]
        return re, im

    # -- algebra --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._den, self._re, self._im) == (
            other.rows, other.cols, other._den, other._re, other._im)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._den, self._re, self._im))
        return self._hash

    def _combine(self, other: "QMatrix", sign: int) -> "QMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        den = _lcm(self._den, other._den)
        a, b = den // self._den, den // other._den
        re = [a * x + sign * b * y for x, y in zip(self._re, other._re)]
        if self._im is None and other._im is None:
            im = None
        else:
            zi = (0,) * len(self._re)
            si = self._im if self._im is not None else zi
            oi = other._im if other._im is not None else zi
            im = [a * x + sign * b * y for x, y in zip(si, oi)]
        return QMatrix(self.rows, self.cols, re, im, den)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return QMatrix(self.rows, self.cols, [-x for x in self._re],
                       None if self._im is None else [-x for x in self._im], self._den)

    def scale(self, z) -> "QMatrix":
        z = GaussianRational.coerce(z)
        d = _lcm(z.re.denominator, z.im.denominator)
        zr = z.re.numerator * (d // z.re.denominator)
        zi = z.im.numerator * (d // z.im.denominator)
        sim = self._im if self._im is not None else (0,) * len(self._re)
        re = [x * zr - y * zi for x, y in zip(self._re, sim)]
        im = [x * zi + y * zr for x, y in zip(self._re, sim)] if (zi or self._im is not None) else None
        return QMatrix(self.rows, self.cols, re, im, self._den * d)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        n, k, m = self.rows, self.cols, other.cols
        den = self._den * other._den
        if k == 0 or n == 0 or m == 0:
            return QMatrix.zeros(n, m)
        ocols_re = [other._re[j::m] for j in range(m)]
        arows_re = [self._re[i * k:(i + 1) * k] for i in range(n)]
        if self._im is None and other._im is None:
            re = [sum(x * y for x, y in zip(ar, bc)) for ar in arows_re for bc in ocols_re]
            return QMatrix(n, m, re, None, den)
        zero = (0,) * (n * k)
        ai = self._im if self._im is not None else zero
        bi = other._im if other._im is not None else (0,) * (k * m)
        arows_im = [ai[i * k:(i + 1) * k] for i in range(n)]
        ocols_im = [bi[j::m] for j in range(m)]
        re, im = [], []
        for i in range(n):
            ar, aim = arows_re[i], arows_im[i]
            for j in range(m):
                br, bim = ocols_re[j], ocols_im[j]
                re.append(sum(x * y for x, y in zip(ar, br)) - sum(x * y for x, y in zip(aim, bim)))
                im.append(sum(x * y for x, y in zip(ar, bim)) + sum(x * y for x, y in zip(aim, br)))
        return QMatrix(n, m, re, im, den)

    def transpose(self) -> "QMatrix":
        r, c = self.rows, self.cols
        re = [self._re[i * c + j] for j in range(c) for i in range(r)]
        im = None if self._im is None else [self._im[i * c + j] for j in range(c) for i in range(r)]
        return QMatrix(c, r, re, im, self._den)

    @property
    def T(self) -> "QMatrix":
        return self.transpose()

    def conj(self) -> "QMatrix":
        if self._im is None:
            return self
        return QMatrix(self.rows, self.cols, self._re, [-x for x in self._im], self._den)

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "QMatrix":
        ri, ci = list(row_idx), list(col_idx)
        c = self.cols
        re = [self._re[i * c + j] for i in ri for j in ci]
        im = None if self._im is None else [self._im[i * c + j] for i in ri for j in ci]
        return QMatrix(len(ri), len(ci), re, im, self._den)

    @staticmethod
    def hstack(mats: Sequence["QMatrix"], rows: int | None = None) -> "QMatrix":
        mats = list(mats)
        if not mats:
            if rows is None:
                raise ShapeError("hstack of nothing needs rows=")
            return QMatrix.zeros(rows, 0)
        return QMatrix.vstack([m.transpose() for m in mats]).transpose()

    @staticmethod
    def vstack(mats: Sequence["QMatrix"], cols: int | None = None) -> "QMatrix":
        mats = list(mats)
        if not mats:
            if cols is None:
                raise ShapeError("vstack of nothing needs cols=")
            return QMatrix.zeros(0, cols)
        c = mats[0].cols
        if any(m.cols != c for m in mats):
            raise ShapeError("column counts differ in vstack")
        den = 1
        for m in mats:
            den = _lcm(den, m._den)
        re: list[int] = []
        complex_ = any(m._im is not None for m in mats)
        im: list[int] | None = [] if complex_ else None
        for m in mats:
            f = den // m._den
            re.extend(x * f for x in m._re)
            if complex_:
                im.extend((x * f for x in m._im) if m._im is not None else [0] * len(m._re))
        return QMatrix(sum(m.rows for m in mats), c, re, im, den)

    @staticmethod
    def block_diag(mats: Sequence["QMatrix"]) -> "QMatrix":
        mats = list(mats)
        R = sum(m.rows for m in mats)
        C = sum(m.cols for m in mats)
        rows = [[GaussianRational()] * C for _ in range(R)]
        r0 = c0 = 0
        for m in mats:
            for i, row in enumerate(m.to_rows()):
                rows[r0 + i][c0:c0 + m.cols] = row
            r0 += m.rows
            c0 += m.cols
        return QMatrix._from_entries(R, C, [x for row in rows for x in row])

    # -- elimination ----------------------------------------------------------

    def rref(self) -> tuple["QMatrix", list[int], int]:
        """Reduced row echelon form, pivot columns and rank.

        The returned ``R`` has the same shape as ``self`` (zero rows at the bottom).
        """
        R, pivots = _rref_rows(self)
        rank = len(pivots)
        pad = QMatrix.zeros(self.rows - rank, self.cols)
        return QMatrix.vstack([R, pad], cols=self.cols), pivots, rank

    def rank(self) -> int:
        return len(_rref_rows(self)[1])

    def inverse(self) -> "QMatrix":
        if self.rows != self.cols:
            raise ShapeError("only square matrices are invertible")
        n = self.rows
        aug = QMatrix.hstack([self, QMatrix.identity(n)])
        R, pivots = _rref_rows(aug)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise LinAlgError("matrix is singular")
        return R.submatrix(range(n), range(n, 2 * n))

    def __repr__(self):
        body = "; ".join(", ".join(format_gaussian(x) for x in row) for row in self.to_rows())
        return f"QMatrix({self.rows}x{self.cols} [{body}])"


def _rref_rows(M: QMatrix) -> tuple[QMatrix, list[int]]:
    """Nonzero rows of rref(M) as a matrix, plus pivot columns."""
    re, im = M._int_rows()
    c = M.cols
    if M.rows == 0 or c == 0:
        return QMatrix.zeros(0, c), []
    if im is None:
        pivots, det = _ff_gauss_jordan_real(re, c)
        r = len(pivots)
        flat = [x for row in re[:r] for x in row]
        if r == 0:
            return QMatrix.zeros(0, c), []
        return QMatrix(r, c, flat, None, det), pivots
    pivots, (dr, di) = _ff_gauss_jordan_complex(re, im, c)
    r = len(pivots)
    if r == 0:
        return QMatrix.zeros(0, c), []
    # divide by det = dr + di i: multiply by conj(det) / |det|^2
    n = dr * dr + di * di
    fr, fi = [], []
    for rr, ri in zip(re[:r], im[:r]):
        for x, y in zip(rr, ri):
            fr.append(x * dr + y * di)
            fi.append(y * dr - x * di)
    return QMatrix(r, c, fr, fi, n), pivots


def rref(M: QMatrix) -> tuple[QMatrix, list[int], int]:
    return M.rref()


def solve(M: QMatrix, b: QMatrix) -> QMatrix | None:
    """A particular solution of ``M x = b`` with all free variables zero, or None."""
    if b.rows != M.rows:
        raise ShapeError("right-hand side has the wrong number of rows")
    n = M.cols
    k = b.cols
    R, pivots = _rref_rows(QMatrix.hstack([M, b]))
    if any(p >= n for p in pivots):
        return None
    rows = R.to_rows()
    zero = GaussianRational()
    x = [[zero] * k for _ in range(n)]
    for i, p in enumerate(pivots):
        x[p] = rows[i][n:]
    return QMatrix._from_entries(n, k, [v for row in x for v in row]) if n else QMatrix.zeros(0, k)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of Q(i)^n held in canonical (row-reduced) form.

    ``basis`` is the ``ambient_dim x dim`` matrix whose columns are the rows
    of the reduced row echelon form of any spanning set.
    """

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim: int, rows: QMatrix, pivots: list[int]):
        self.ambient_dim = ambient_dim
        self._rows = rows
        self._pivots = pivots

    @classmethod
    def span(cls, vectors: QMatrix) -> "Subspace":
        """Span of the columns of ``vectors``."""
        return cls.from_rows(vectors.transpose())

    @classmethod
    def from_rows(cls, rows: QMatrix) -> "Subspace":
        R, pivots = _rref_rows(rows)
        return cls(rows.cols, R, pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, QMatrix.zeros(0, n), [])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, QMatrix.identity(n), list(range(n)))

    @property
    def dim(self) -> int:
        return len(self._pivots)

    @property
    def basis(self) -> QMatrix:
        return self._rows.transpose()

    @property
    def rows(self) -> QMatrix:
        return self._rows

    @property
    def pivots(self) -> list[int]:
        return list(self._pivots)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self):
        return hash((self.ambient_dim, self._rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def coordinates(self, v: QMatrix) -> QMatrix | None:
        """Coordinates of the column(s) ``v`` in the canonical basis, or None if not contained."""
        if v.rows != self.ambient_dim:
            raise AmbientMismatch("vector has the wrong length")
        if self.dim == 0:
            return QMatrix.zeros(0, v.cols) if v.is_zero() else None
        coords = v.submatrix(self._pivots, range(v.cols))
        if self.basis @ coords != v:
            return None
        return coords

    def contains(self, v: QMatrix) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        if other.dim == 0:
            return True
        return self.coordinates(other.basis) is not None

    def annihilator_rows(self) -> QMatrix:
        """Rows spanning {a : a . u = 0 for all u in self} (bilinear pairing)."""
        return kernel_basis(self._rows).basis.transpose() if self.dim else QMatrix.identity(self.ambient_dim)

    def complement_in(self, V: "Subspace") -> QMatrix:
        """Columns extending a basis of ``self`` to one of ``V`` (earliest canonical vectors of V)."""
        self._check(V)
        chosen: list[QMatrix] = []
        cur = self
        for v in V.basis.column_vectors():
            if not cur.contains(v):
                chosen.append(v)
                cur = sum_(cur, Subspace.span(v))
        return QMatrix.hstack(chosen, rows=self.ambient_dim)

    def coordinate_complement(self) -> list[int]:
        """Standard basis indices spanning a complement (the non-pivot coordinates)."""
        ps = set(self._pivots)
        return [j for j in range(self.ambient_dim) if j not in ps]


def kernel_basis(M: QMatrix) -> Subspace:
    n = M.cols
    if M.rows == 0 or n == 0:
        return Subspace.full(n)
    R, pivots = _rref_rows(M)
    free = [j for j in range(n) if j not in set(pivots)]
    if not free:
        return Subspace.zero(n)
    # kernel vector for free column f: e_f - sum_i R[i, f] e_{pivot_i}; scaled integers
    den = R._den
    re_rows = []
    im_rows = [] if R._im is not None else None
    c = R.cols
    for f in free:
        vr = [0] * n
        vr[f] = den
        vi = [0] * n if im_rows is not None else None
        for i, p in enumerate(pivots):
            vr[p] = -R._re[i * c + f]
            if vi is not None:
                vi[p] = -R._im[i * c + f]
        re_rows.extend(vr)
        if vi is not None:
            im_rows.extend(vi)
    K = QMatrix(len(free), n, re_rows, im_rows, den)
    return Subspace.from_rows(K)


def image_basis(M: QMatrix) -> Subspace:
    return Subspace.span(M)


def sum_(U: Subspace, V: Subspace) -> Subspace:
    U._check(V)
    if U.dim == 0:
        return V
    if V.dim == 0:
        return U
    return Subspace.from_rows(QMatrix.vstack([U.rows, V.rows]))


def sum_all(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    spaces = [s for s in spaces]
    for s in spaces:
        if s.ambient_dim != ambient_dim:
            raise AmbientMismatch("ambient dimensions differ")
    nonzero = [s.rows for s in spaces if s.dim]
    if not nonzero:
        return Subspace.zero(ambient_dim)
    return Subspace.from_rows(QMatrix.vstack(nonzero))


def intersect(U: Subspace, V: Subspace) -> Subspace:
    U._check(V)
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(U.ambient_dim)
    if U.dim == U.ambient_dim:
        return V
    if V.dim == V.ambient_dim:
        return U
    return kernel_basis(QMatrix.vstack([U.annihilator_rows(), V.annihilator_rows()]))


def intersect_all(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    out = Subspace.full(ambient_dim)
    for s in spaces:
        out = intersect(out, s)
    return out


def preimage(M: QMatrix, W: Subspace) -> Subspace:
    """{x : M x in W}."""
    if W.ambient_dim != M.rows:
        raise AmbientMismatch(f"target subspace lives in dim {W.ambient_dim}, map lands in dim {M.rows}")
    if W.dim == W.ambient_dim:
        return Subspace.full(M.cols)
    return kernel_basis(W.annihilator_rows() @ M)


def apply(M: QMatrix, U: Subspace) -> Subspace:
    """Image M(U)."""
    if U.ambient_dim != M.cols:
        raise AmbientMismatch("subspace does not live in the domain of the map")
    if U.dim == 0:
        return Subspace.zero(M.rows)
    return Subspace.span(M @ U.basis)


def quotient_dim(V: Subspace, W: Subspace) -> int:
    """dim V/W, checking that W is contained in V."""
    V._check(W)
    if not V.contains_subspace(W):
        raise NotASubspace("the denominator is not contained in the numerator")
    return V.dim - W.dim


# public alias with the natural name; ``sum`` would shadow the builtin inside this module
subspace_sum = sum_
