"""Indecomposable double complexes: dots, squares and zigzags.

A zigzag of length >= 2 lives on two adjacent antidiagonals k and k+1.
Walking along those antidiagonals by increasing p, the bidegrees alternate

    t_0, s_0, t_1, s_1, ...      t_a = (a, k+1-a),  s_a = (a, k-a)

with arrows ``s_a --dbar--> t_a`` and ``s_a --del--> t_{a+1}``.  A zigzag is a
contiguous run of this walk.  Its canonical name is its anchor (the
lexicographically least bidegree, always a source s_a), whether the run also
contains the vertex directly above the anchor (``first_step="vertical"``) or
starts at the anchor and leaves it horizontally (``"horizontal"``), and the
number of vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

DOT = "dot"
SQUARE = "square"
ZIGZAG = "zigzag"

_KIND_ORDER = {DOT: 0, SQUARE: 1, ZIGZAG: 2}


def _walk_vertex(k: int, pos: int) -> tuple[int, int]:
    if pos % 2 == 0:
        a = pos // 2
        return (a, k + 1 - a)
    a = (pos - 1) // 2
    return (a, k - a)


@dataclass(frozen=True)
class ZigzagShape:
    kind: str
    p: int
    q: int
    first_step: str | None = None
    length: int = 1

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if self.kind == ZIGZAG:
            if self.length < 2:
                raise ValueError("a zigzag has length >= 2; length one is a dot")
            if self.first_step not in ("horizontal", "vertical"):
                raise ValueError("first_step must be 'horizontal' or 'vertical'")
        elif self.first_step is not None:
            raise ValueError("only zigzags carry a first_step")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def dot(cls, p: int, q: int) -> "ZigzagShape":
        return cls(DOT, p, q)

    @classmethod
    def square(cls, p: int, q: int) -> "ZigzagShape":
        return cls(SQUARE, p, q, None, 4)

    @classmethod
    def zigzag(cls, p: int, q: int, first_step: str, length: int) -> "ZigzagShape":
        return cls(ZIGZAG, p, q, first_step, length)

    @classmethod
    def from_walk(cls, k: int, start: int, length: int) -> "ZigzagShape":
        """The zigzag occupying walk positions ``start .. start+length-1`` between k and k+1."""
        if length == 1:
            return cls.dot(*_walk_vertex(k, start))
        if start % 2 == 0:
            a = start // 2
            return cls.zigzag(a, k - a, "vertical", length)
        a = (start - 1) // 2
        return cls.zigzag(a, k - a, "horizontal", length)

    @classmethod
    def from_vertices(cls, vertices: Iterable[tuple[int, int]]) -> "ZigzagShape":
        """Canonical zigzag (or dot) with exactly these bidegrees."""
        vs = sorted(set(vertices))
        if len(vs) == 1:
            return cls.dot(*vs[0])
        degs = {p + q for p, q in vs}
        k = min(degs)
        if degs != {k, k + 1}:
            raise ValueError("zigzag vertices must fill two adjacent antidiagonals")
        pos = sorted(2 * p if p + q == k + 1 else 2 * p + 1 for p, q in vs)
        if pos != list(range(pos[0], pos[0] + len(pos))):
            raise ValueError("zigzag vertices are not connected")
        return cls.from_walk(k, pos[0], len(pos))

    # -- structure ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree of the anchor (the lower antidiagonal for zigzags)."""
        return self.p + self.q

    def _walk(self) -> tuple[int, int]:
        anchor_pos = 2 * self.p + 1
        start = anchor_pos - 1 if self.first_step == "vertical" else anchor_pos
        return start, self.length

    def vertices(self) -> list[tuple[int, int]]:
        """Bidegrees of the basis vectors, in a fixed order."""
        if self.kind == DOT:
            return [(self.p, self.q)]
        if self.kind == SQUARE:
            p, q = self.p, self.q
            return [(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)]
        start, n = self._walk()
        return [_walk_vertex(self.degree, start + j) for j in range(n)]

    def arrows(self) -> list[tuple[int, int, str, int]]:
        """(source index, target index, 'del' | 'delbar', sign) into ``vertices()``."""
        if self.kind == DOT:
            return []
        if self.kind == SQUARE:
            # a -> b, a -> c, b -> e, c -> -e : del delbar = -delbar del
            return [(0, 1, "del", 1), (0, 2, "delbar", 1), (1, 3, "delbar", 1), (2, 3, "del", -1)]
        start, n = self._walk()
        out = []
        for j in range(n - 1):
            pos = start + j
            if pos % 2 == 0:
                # t_a, s_a : s_a --delbar--> t_a
                out.append((j + 1, j, "delbar", 1))
            else:
                # s_a, t_{a+1} : s_a --del--> t_{a+1}
                out.append((j, j + 1, "del", 1))
        return out

    def mirror(self) -> "ZigzagShape":
        """Image under complex conjugation (p, q) -> (q, p)."""
        if self.kind == DOT:
            return ZigzagShape.dot(self.q, self.p)
        if self.kind == SQUARE:
            return ZigzagShape.square(self.q, self.p)
        return ZigzagShape.from_vertices((q, p) for p, q in self.vertices())

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.p + self.q, self.p, self.q, self.length, self.first_step or "")

    def __str__(self):
        if self.kind == DOT:
            return f"Dot({self.p},{self.q})"
        if self.kind == SQUARE:
            return f"Square({self.p},{self.q})"
        step = "H" if self.first_step == "horizontal" else "V"
        return f"Zigzag(({self.p},{self.q}),{step},{self.length})"


def fits(shape: ZigzagShape, P: int, Q: int) -> bool:
    return all(0 <= p <= P and 0 <= q <= Q for p, q in shape.vertices())


def all_shapes(P: int, Q: int) -> list[ZigzagShape]:
    """Every indecomposable shape that fits in the box [0,P] x [0,Q]."""
    out = [ZigzagShape.dot(p, q) for p in range(P + 1) for q in range(Q + 1)]
    out += [ZigzagShape.square(p, q) for p in range(P) for q in range(Q)]
    for k in range(P + Q):
        npos = 2 * (P + 1) + 1
        for start in range(npos):
            for length in range(2, npos - start + 1):
                z = ZigzagShape.from_walk(k, start, length)
                if fits(z, P, Q):
                    out.append(z)
    return sorted(set(out), key=ZigzagShape.sort_key)
