"""
Diagram types and converters.

Two independent routes lead from a petal sequence to a planar diagram:

* ``petal_to_grid`` + ``grid_to_pd``: the petal arc presentation drawn as a
  grid diagram, verticals over horizontals;
* ``petal_to_pd_geometric``: the central multi-crossing perturbed into
  C(p, 2) ordinary crossings, ordered with exact rational geometry.

``braid_to_pd`` provides ground-truth diagrams for braid closures.
All diagram producers go through :func:`assemble_pd`, which fixes the
orientation convention in one place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .errors import DegenerateGeometry, MalformedDiagram, MalformedGrid, MultiComponentClosure
from .sequence import PetalSequence

__all__ = [
    "PlanarDiagram", "GridDiagram", "BraidWord", "assemble_pd",
    "petal_to_grid", "grid_to_pd", "grid_crossing_count", "grid_spans",
    "petal_to_pd_geometric", "braid_to_pd", "circle_nodes",
]


# ---------------------------------------------------------------------------
# planar diagrams

def _over_enters_at_d(x: tuple[int, int, int, int], n_edges: int) -> bool:
    """True when the over-strand runs d -> b (a positive crossing)."""
    a, b, c, d = x
    if n_edges > 2:
        if (b - d) % n_edges == 1:
            return True
        if (d - b) % n_edges == 1:
            return False
        raise MalformedDiagram(f"over-strand labels of {x} are not consecutive")
    # one crossing: use the kink structure instead of label arithmetic
    if b == a:
        return True
    if b == c:
        return False
    raise MalformedDiagram(f"cannot orient {x}")


@dataclass(frozen=True)
class PlanarDiagram:
    """Crossings ``(a, b, c, d)``: arcs listed counterclockwise from the
    incoming under-arc.  Arcs are numbered 1..2c along the orientation."""

    crossings: tuple[tuple[int, int, int, int], ...]

    def __init__(self, crossings: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in x) for x in crossings))
        self._check()

    def _check(self):
        n = len(self.crossings)
        n_edges = 2 * n
        seen: dict[int, int] = {}
        for x in self.crossings:
            if len(x) != 4:
                raise MalformedDiagram(f"crossing {x} does not have four arcs")
            for v in x:
                seen[v] = seen.get(v, 0) + 1
        if n == 0:
            return
        if sorted(seen) != list(range(1, n_edges + 1)) or any(k != 2 for k in seen.values()):
            raise MalformedDiagram("every arc 1..2c must appear exactly twice")
        succ = {}
        for x in self.crossings:
            a, b, c, d = x
            if (c - a) % n_edges != 1:
                raise MalformedDiagram(f"under-strand of {x} is not oriented a -> c")
            succ[a] = c
            if _over_enters_at_d(x, n_edges):
                succ[d] = b
            else:
                succ[b] = d
        if len(succ) != n_edges:
            raise MalformedDiagram("arc successor map is not a bijection")
        e, steps = 1, 0
        while True:
            e = succ[e]
            steps += 1
            if e == 1:
                break
        if steps != n_edges:
            raise MalformedDiagram("diagram has more than one component")

    def __len__(self):
        return len(self.crossings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def signs(self) -> list[int]:
        n_edges = 2 * len(self.crossings)
        return [1 if _over_enters_at_d(x, n_edges) else -1 for x in self.crossings]

    def mirror(self) -> "PlanarDiagram":
        """Switch every crossing; the result represents the mirror knot."""
        out = []
        for x, s in zip(self.crossings, self.signs()):
            a, b, c, d = x
            out.append((d, a, b, c) if s > 0 else (b, c, d, a))
        return PlanarDiagram(out)

    def to_json(self) -> dict:
        return {"crossings": [list(x) for x in self.crossings]}

    @classmethod
    def from_json(cls, obj) -> "PlanarDiagram":
        if isinstance(obj, dict):
            obj = obj["crossings"]
        return cls(obj)


Passage = tuple[Hashable, bool, tuple]  # (crossing key, is_over, direction vector)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def assemble_pd(passages: Sequence[Passage]) -> PlanarDiagram:
    """Build a diagram from the crossings met along one traversal.

    ``passages`` lists, in traversal order, every time the curve passes
    through a crossing: its key, whether this pass is the over-strand, and
    the planar direction of travel there.  Each key must occur exactly twice,
    once over and once under.  Arc ``i+1`` is the arc arriving at passage ``i``.
    """
    n_edges = len(passages)
    if n_edges == 0:
        return PlanarDiagram(())
    slots: dict[Hashable, dict] = {}
    for i, (key, over, direction) in enumerate(passages):
        entry = slots.setdefault(key, {})
        role = "over" if over else "under"
        if role in entry:
            raise MalformedDiagram(f"crossing {key!r} passed twice as {role}")
        entry[role] = (i + 1, (i + 1) % n_edges + 1, direction)
    crossings = []
    for key, entry in slots.items():
        if len(entry) != 2:
            raise MalformedDiagram(f"crossing {key!r} is not passed once over and once under")
        u_in, u_out, u = entry["under"]
        o_in, o_out, v = entry["over"]
        turn = _cross(u, v)
        if turn == 0:
            raise DegenerateGeometry(f"strands are parallel at crossing {key!r}")
        if turn < 0:
            crossings.append((u_in, o_out, u_out, o_in))
        else:
            crossings.append((u_in, o_in, u_out, o_out))
    return PlanarDiagram(crossings)


# ---------------------------------------------------------------------------
# grid diagrams

@dataclass(frozen=True)
class GridDiagram:
    """``o_row[c]`` / ``x_row[c]``: 1-based rows of the markers in column ``c+1``."""

    size: int
    o_row: tuple[int, ...]
    x_row: tuple[int, ...]

    def __post_init__(self):
        n = self.size
        rows = list(range(1, n + 1))
        if len(self.o_row) != n or len(self.x_row) != n:
            raise MalformedGrid("marker arrays must have length size")
        if sorted(self.o_row) != rows or sorted(self.x_row) != rows:
            raise MalformedGrid("O and X rows must each be permutations of 1..size")
        if any(o == x for o, x in zip(self.o_row, self.x_row)):
            raise MalformedGrid("a column holds O and X in the same row")

    def to_json(self) -> dict:
        return {"size": self.size, "o": list(self.o_row), "x": list(self.x_row)}

    @classmethod
    def from_json(cls, obj) -> "GridDiagram":
        try:
            return cls(int(obj["size"]), tuple(obj["o"]), tuple(obj["x"]))
        except (KeyError, TypeError) as exc:
            raise MalformedGrid(f"bad grid object: {exc}") from None

    def horizontals(self) -> dict[int, tuple[int, int]]:
        """row -> (column of X, column of O), 1-based; horizontals run X -> O."""
        x_col = {r: c + 1 for c, r in enumerate(self.x_row)}
        o_col = {r: c + 1 for c, r in enumerate(self.o_row)}
        return {r: (x_col[r], o_col[r]) for r in range(1, self.size + 1)}


def _unknot_grid(n: int) -> GridDiagram:
    # staircase: column c joins rows c and c+1, the last column closes up
    o = tuple(range(1, n + 1))
    x = tuple(range(2, n + 1)) + (1,)
    return GridDiagram(n, o, x)


def petal_to_grid(s: PetalSequence) -> GridDiagram:
    """Arc presentation of the petal knot: one page per petal.

    Petal ``j`` sits in column ``1 + ((j-1)k mod p)`` with ``k = (p+1)/2``
    and joins heights ``a_j`` (O) and ``a_{j+1}`` (X).
    """
    lv = s.levels
    p = len(lv)
    if p <= 3:
        return _unknot_grid(max(p, 2))
    k = (p + 1) // 2
    o = [0] * p
    x = [0] * p
    for j in range(p):
        col = (j * k) % p
        o[col] = lv[j]
        x[col] = lv[(j + 1) % p]
    return GridDiagram(p, tuple(o), tuple(x))


def grid_spans(g: GridDiagram) -> list[int]:
    """Horizontal span (in columns) of every row."""
    return [abs(xc - oc) for xc, oc in g.horizontals().values()]


def grid_crossing_count(g: GridDiagram) -> int:
    hz = g.horizontals()
    count = 0
    for c in range(1, g.size + 1):
        lo, hi = sorted((g.o_row[c - 1], g.x_row[c - 1]))
        for r in range(lo + 1, hi):
            a, b = sorted(hz[r])
            if a < c < b:
                count += 1
    return count


def grid_to_pd(g: GridDiagram) -> PlanarDiagram:
    """Planar diagram of a grid with every vertical crossing over every horizontal."""
    n = g.size
    hz = g.horizontals()
    o_col = {r: c + 1 for c, r in enumerate(g.o_row)}
    start = o_col[1]
    passages: list[Passage] = []
    col = start
    for step in range(n):
        if step and col == start:
            raise MalformedGrid("grid has more than one component")
        o, x = g.o_row[col - 1], g.x_row[col - 1]
        step = 1 if x > o else -1
        for r in range(o + step, x, step):
            a, b = sorted(hz[r])
            if a < col < b:
                passages.append(((col, r), True, (0, step)))
        # horizontal from X (this column) to the O in row x
        nxt = o_col[x]
        hstep = 1 if nxt > col else -1
        for c in range(col + hstep, nxt, hstep):
            lo, hi = sorted((g.o_row[c - 1], g.x_row[c - 1]))
            if lo < x < hi:
                passages.append(((c, x), False, (hstep, 0)))
        col = nxt
    if col != start:
        raise MalformedGrid("grid does not close up")
    return assemble_pd(passages)


# ---------------------------------------------------------------------------
# geometric conversion

@lru_cache(maxsize=None)
def circle_nodes(p: int) -> tuple[tuple[Fraction, Fraction], ...]:
    """2p rational points approximating angles m*pi/p on the unit circle.

    Node ``m + p`` is exactly the negative of node ``m``, so opposite nodes
    span exact diameters.  Only the cyclic order matters downstream, and the
    approximation error (1e-9) is far below the node spacing.
    """
    half = []
    for m in range(p):
        ang = math.pi * m / p
        half.append((Fraction(math.cos(ang)).limit_denominator(10**9),
                     Fraction(math.sin(ang)).limit_denominator(10**9)))
    return tuple(half) + tuple((-x, -y) for x, y in half)


def _strand_lines(p: int):
    nodes = circle_nodes(p)
    delta = Fraction(1, 64 * p * p)
    lines = []
    for j in range(p):
        start_node = (j * (p + 1)) % (2 * p)
        sx, sy = nodes[start_node]
        ex, ey = nodes[(start_node + p) % (2 * p)]
        dx, dy = ex - sx, ey - sy
        off = delta * (j + 1)
        ox, oy = -dy * off, dx * off
        lines.append(((sx + ox, sy + oy), (dx, dy)))
    return lines


@lru_cache(maxsize=32)
def _geometric_layout(p: int):
    """Crossing order along each strand of the perturbed multi-crossing."""
    lines = _strand_lines(p)
    params: list[list[tuple[Fraction, int]]] = [[] for _ in range(p)]
    points = {}
    for i in range(p):
        (pi_, di) = lines[i]
        for j in range(i + 1, p):
            (pj, dj) = lines[j]
            den = _cross(di, dj)
            if den == 0:
                raise DegenerateGeometry(f"strands {i} and {j} are parallel")
            wx, wy = pj[0] - pi_[0], pj[1] - pi_[1]
            t = _cross((wx, wy), dj) / den
            u = _cross((wx, wy), di) / den
            if not (0 < t < 1 and 0 < u < 1):
                raise DegenerateGeometry(f"strands {i} and {j} meet outside the disk")
            pt = (pi_[0] + t * di[0], pi_[1] + t * di[1])
            if pt in points:
                raise DegenerateGeometry(f"triple point at {pt}")
            points[pt] = (i, j)
            params[i].append((t, j))
            params[j].append((u, i))
    order = []
    for i in range(p):
        ts = sorted(params[i])
        if any(ts[k][0] == ts[k + 1][0] for k in range(len(ts) - 1)):
            raise DegenerateGeometry(f"coincident crossings on strand {i}")
        order.append(tuple(other for _, other in ts))
    return tuple(d for _, d in lines), tuple(order)


def petal_to_pd_geometric(s: PetalSequence) -> PlanarDiagram:
    """Perturb the central p-fold crossing into C(p, 2) double crossings.

    Strand ``j`` is a diameter from node ``(j-1)(p+1) mod 2p`` to the
    antipodal node, shifted sideways by a distinct rational offset; outer
    arcs between adjacent nodes carry no crossings.  At every crossing the
    strand with the larger level is on top.
    """
    lv = s.levels
    p = len(lv)
    if p == 1:
        return PlanarDiagram(())
    directions, order = _geometric_layout(p)
    passages: list[Passage] = []
    for j in range(p):
        for other in order[j]:
            key = (min(j, other), max(j, other))
            passages.append((key, lv[j] > lv[other], directions[j]))
    return assemble_pd(passages)


# ---------------------------------------------------------------------------
# braids

@dataclass(frozen=True)
class BraidWord:
    """Braid on ``strands`` strands; letter ``+i``/``-i`` is sigma_i to the power +-1."""

    strands: int
    letters: tuple[int, ...]

    def __init__(self, strands: int, letters: Iterable[int]):
        letters = tuple(int(v) for v in letters)
        if strands < 1:
            raise ValueError("a braid needs at least one strand")
        for v in letters:
            if v == 0 or abs(v) >= strands:
                raise ValueError(f"letter {v} invalid on {strands} strands")
        object.__setattr__(self, "strands", strands)
        object.__setattr__(self, "letters", letters)

    def permutation(self) -> list[int]:
        """Bottom position (1-based) -> top position."""
        pos = list(range(self.strands + 1))  # pos[bottom] = current
        where = list(range(self.strands + 1))  # where[current] = bottom
        for v in self.letters:
            i = abs(v)
            a, b = where[i], where[i + 1]
            where[i], where[i + 1] = b, a
            pos[a], pos[b] = i + 1, i
        return pos[1:]


def braid_to_pd(w: BraidWord) -> PlanarDiagram:
    """Diagram of the braid closure, strands running upward.

    For a positive letter the strand moving right passes over, which makes
    the crossing sign equal to the letter's sign.
    """
    perm = w.permutation()
    k = w.strands
    # single component iff the permutation is one k-cycle
    seen, cur = 0, 1
    while True:
        cur = perm[cur - 1]
        seen += 1
        if cur == 1:
            break
    if seen != k:
        raise MultiComponentClosure(f"closure of {w.letters} has more than one component")
    passages: list[Passage] = []
    pos = 1
    for _ in range(k):
        for idx, v in enumerate(w.letters):
            i = abs(v)
            if pos == i:
                passages.append((idx, v > 0, (1, 1)))
                pos = i + 1
            elif pos == i + 1:
                passages.append((idx, v < 0, (-1, 1)))
                pos = i
    return assemble_pd(passages)
