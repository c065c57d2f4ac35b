"""
Polygonal (stick) realisations of petal knots and their projections.

Construction for a sequence with p >= 5 petals.  Strand j of the petal
projection is the diameter from rim node ``(j-1)(p+1) mod 2p`` to the
opposite node; as a stick it is the horizontal segment H_j through the
axis at height a_j.  The end of H_j and the start of H_{j+1} are adjacent
rim nodes, joined by a short rim stick that crosses nothing in projection.
That gives a 2p-stick petal knot.

The top strand (level p) is then unfolded: H_top and its two rim sticks
are replaced by a single chord from the end of H_{top-1} to the start of
H_{top+1}.  Those two horizontals are tilted about their axis points so
that the chord's endpoints sit at height p + 1, which keeps the chord above
every remaining horizontal.  The axis heights, and hence the knot, do not
change.  The result has 2(p - 1) sticks.

All coordinates are exact rationals; embeddedness and projections are
decided without any floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Iterable, Iterator, Sequence

from .diagrams import PlanarDiagram, assemble_pd, circle_nodes
from .errors import NonGenericDirection
from .sequence import PetalSequence

__all__ = [
    "StickConformation", "petal_to_sticks", "project_to_pd", "generic_directions",
    "certify_embedded", "segments_intersect",
]

Point = tuple[Fraction, Fraction, Fraction]


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _dot(p, q):
    return sum(a * b for a, b in zip(p, q))


def _cross3(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def _cross2(p, q):
    return p[0] * q[1] - p[1] * q[0]


def _to_point(v) -> Point:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class StickConformation:
    """Closed polygon; the last vertex joins the first."""

    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable[Sequence]):
        verts = tuple(_to_point(v) for v in vertices)
        n = len(verts)
        if n < 3:
            raise ValueError("a closed polygon needs at least three vertices")
        for i in range(n):
            a, b, c = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
            if a == b:
                raise ValueError(f"vertices {i} and {(i + 1) % n} coincide")
            if _cross3(_sub(b, a), _sub(c, b)) == (0, 0, 0):
                raise ValueError(f"vertices {i}..{(i + 2) % n} are collinear")
        object.__setattr__(self, "vertices", verts)

    @property
    def n_segments(self) -> int:
        return len(self.vertices)

    def segments(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def to_json(self) -> list[list[str]]:
        return [[f"{x.numerator}/{x.denominator}" for x in v] for v in self.vertices]

    @classmethod
    def from_json(cls, obj) -> "StickConformation":
        return cls([[Fraction(x) for x in v] for v in obj])


TRIANGLE = ((0, 0, 0), (1, 0, 0), (0, 1, 0))


def petal_to_sticks(s: PetalSequence) -> StickConformation:
    lv = s.levels
    p = len(lv)
    if p < 5:
        return StickConformation(TRIANGLE)
    nodes = circle_nodes(p)
    lift = Fraction(p + 1)

    def start(j):
        return nodes[(j * (p + 1)) % (2 * p)]

    def end(j):
        return nodes[(j * (p + 1) + p) % (2 * p)]

    top = lv.index(p)
    before, after = (top - 1) % p, (top + 1) % p
    verts = []
    for step in range(1, p):
        j = (top + step) % p
        a = Fraction(lv[j])
        z_start = z_end = a
        if j == after:
            z_start, z_end = lift, 2 * a - lift
        elif j == before:
            z_start, z_end = 2 * a - lift, lift
        sx, sy = start(j)
        ex, ey = end(j)
        verts.append((sx, sy, z_start))
        verts.append((ex, ey, z_end))
    return StickConformation(verts)


# ---------------------------------------------------------------------------
# exact segment predicates

def _on_segment_2d(p, a, b) -> bool:
    """p is collinear with a, b; is it within the closed segment?"""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _segments_intersect_2d(a, b, c, d) -> bool:
    d1 = _cross2(_sub(b, a), _sub(c, a))
    d2 = _cross2(_sub(b, a), _sub(d, a))
    d3 = _cross2(_sub(d, c), _sub(a, c))
    d4 = _cross2(_sub(d, c), _sub(b, c))
    if ((d1 > 0) != (d2 > 0)) and d1 and d2 and ((d3 > 0) != (d4 > 0)) and d3 and d4:
        return True
    return ((d1 == 0 and _on_segment_2d(c, a, b)) or (d2 == 0 and _on_segment_2d(d, a, b))
            or (d3 == 0 and _on_segment_2d(a, c, d)) or (d4 == 0 and _on_segment_2d(b, c, d)))


def segments_intersect(seg1, seg2) -> bool:
    """Exact test whether two closed 3D segments share a point."""
    a, b = seg1
    c, d = seg2
    normal = _cross3(_sub(b, a), _sub(c, a))
    if _dot(normal, _sub(d, a)) != 0:
        return False
    if normal == (0, 0, 0):
        normal = _cross3(_sub(b, a), _sub(d, a))
    if normal == (0, 0, 0):
        # all four points collinear: drop the coordinate with least spread
        direction = _sub(b, a)
        keep = sorted(range(3), key=lambda i: abs(direction[i]), reverse=True)[:2]
    else:
        drop = max(range(3), key=lambda i: abs(normal[i]))
        keep = [i for i in range(3) if i != drop]

    def flat(q):
        return (q[keep[0]], q[keep[1]])

    if normal == (0, 0, 0):
        i = keep[0]
        lo1, hi1 = sorted((a[i], b[i]))
        lo2, hi2 = sorted((c[i], d[i]))
        if direction[i] == 0:
            i = keep[1]
            lo1, hi1 = sorted((a[i], b[i]))
            lo2, hi2 = sorted((c[i], d[i]))
        return max(lo1, lo2) <= min(hi1, hi2)
    return _segments_intersect_2d(flat(a), flat(b), flat(c), flat(d))


def certify_embedded(c: StickConformation) -> bool:
    """True iff non-adjacent segments are disjoint and adjacent ones meet only
    at their shared vertex (exact arithmetic)."""
    segs = c.segments()
    n = len(segs)
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                # consecutive segments are not collinear (checked on
                # construction), so they meet exactly at the shared vertex
                continue
            if segments_intersect(segs[i], segs[j]):
                return False
    return True


# ---------------------------------------------------------------------------
# projections

def _basis(direction: Point):
    a, b, _ = direction
    u = (-b, a, Fraction(0)) if (a, b) != (0, 0) else (Fraction(1), Fraction(0), Fraction(0))
    w = _cross3(direction, u)
    return u, w


def generic_directions() -> Iterator[Point]:
    """Deterministic stream of rational, nearly vertical viewing directions."""
    for k in count(1):
        yield _to_point((Fraction(k, 7 * k + 3), Fraction(2 * k + 1, 11 * k + 5) * (-1) ** k, 1))


def project_to_pd(c: StickConformation, direction: Sequence) -> PlanarDiagram:
    """Diagram of the projection along ``direction``, seen from the side it
    points to; points with larger ``x . direction`` are on top."""
    d = _to_point(direction)
    if d == (0, 0, 0):
        raise NonGenericDirection("zero direction")
    u, w = _basis(d)
    flat = [(_dot(v, u), _dot(v, w)) for v in c.vertices]
    depth = [_dot(v, d) for v in c.vertices]
    n = len(flat)
    segs = [(i, (i + 1) % n) for i in range(n)]
    for i, j in segs:
        if flat[i] == flat[j]:
            raise NonGenericDirection(f"segment {i} is parallel to the direction")
    hits: list[list[tuple[Fraction, int]]] = [[] for _ in range(n)]
    points = {}
    over = {}
    for s1 in range(n):
        a, b = (flat[k] for k in segs[s1])
        da = _sub(b, a)
        for s2 in range(s1 + 1, n):
            adjacent = s2 == s1 + 1 or (s1 == 0 and s2 == n - 1)
            cc, dd = (flat[k] for k in segs[s2])
            db = _sub(dd, cc)
            den = _cross2(da, db)
            if adjacent:
                if den == 0:
                    raise NonGenericDirection(f"segments {s1} and {s2} project onto one line")
                continue
            if den == 0:
                if _cross2(da, _sub(cc, a)) == 0 and _segments_intersect_2d(a, b, cc, dd):
                    raise NonGenericDirection(f"segments {s1} and {s2} overlap in projection")
                continue
            t = _cross2(_sub(cc, a), db) / den
            v = _cross2(_sub(cc, a), da) / den
            if not (0 <= t <= 1 and 0 <= v <= 1):
                continue
            if t in (0, 1) or v in (0, 1):
                raise NonGenericDirection(f"a vertex projects onto segment {s1} or {s2}")
            pt = (a[0] + t * da[0], a[1] + t * da[1])
            if pt in points:
                raise NonGenericDirection(f"triple point at {pt}")
            points[pt] = (s1, s2)
            i0, i1 = segs[s1]
            j0, j1 = segs[s2]
            z1 = depth[i0] + t * (depth[i1] - depth[i0])
            z2 = depth[j0] + v * (depth[j1] - depth[j0])
            if z1 == z2:
                raise NonGenericDirection(f"segments {s1} and {s2} intersect")
            over[(s1, s2)] = s1 if z1 > z2 else s2
            hits[s1].append((t, s2))
            hits[s2].append((v, s1))
    passages = []
    for s in range(n):
        a, b = (flat[k] for k in segs[s])
        direction2 = _sub(b, a)
        for _, other in sorted(hits[s]):
            key = (min(s, other), max(s, other))
            passages.append((key, over[key] == s, direction2))
    return assemble_pd(passages)
