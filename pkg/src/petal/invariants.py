"""
Knot invariants of planar diagrams: Kauffman bracket, Jones, Alexander,
determinant and the combined fingerprint used as a knot-table key.

The bracket is computed by contracting crossings one at a time while
keeping a table of boundary matchings (the open arc ends and how the
smoothings chosen so far pair them up).  Polynomials inside the hot loop
are Kronecker-packed into Python ints: a Laurent polynomial sum c_e A^e is
stored as sum c_e 2^(B(e+OFF)).  Multiplying by A is a left shift by B
bits, adding two states is one big-int addition.  Python ints are
unbounded, so nothing can overflow; B is chosen from an a-priori bound on
the coefficients so that decoding is unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagrams import PlanarDiagram
from .errors import MalformedDiagram, StateSpaceTooLarge, TooManyCrossings
from .polynomial import LaurentPolynomial

__all__ = [
    "kauffman_bracket", "bracket_bruteforce", "writhe", "jones", "jones_from_bracket",
    "alexander", "determinant", "Fingerprint", "fingerprint", "DELTA",
]

DEFAULT_MAX_WIDTH = 24
BRUTEFORCE_LIMIT = 16

DELTA = LaurentPolynomial({2: -1, -2: -1}, "A")


# ---------------------------------------------------------------------------
# packed polynomials

def _pack_params(n_crossings: int) -> tuple[int, int]:
    # Before normalisation the state sum has |exponent| <= c + 2(c + 1), and
    # the sum of |coefficients| is at most 2^c * 2^(c+1).
    bits = 2 * n_crossings + 4
    offset = 3 * n_crossings + 4
    return bits, offset


def _unpack(value: int, bits: int, offset: int, var: str = "A") -> LaurentPolynomial:
    coeffs = {}
    base = 1 << bits
    half = base >> 1
    e = -offset
    while value:
        digit = value & (base - 1)
        if digit >= half:
            digit -= base
        value = (value - digit) >> bits
        if digit:
            coeffs[e] = digit
        e += 1
    return LaurentPolynomial(coeffs, var)


# ---------------------------------------------------------------------------
# contraction engine

def _contraction_order(crossings) -> list[int]:
    """Greedy order: next crossing shares the most arcs with the boundary."""
    n = len(crossings)
    where: dict[int, list[int]] = {}
    for i, x in enumerate(crossings):
        for v in set(x):
            where.setdefault(v, []).append(i)
    done = [False] * n
    score = [0] * n
    open_arcs: set[int] = set()
    order = []
    for _ in range(n):
        best, best_key = -1, None
        for i in range(n):
            if done[i]:
                continue
            x = crossings[i]
            new = sum(1 for v in set(x) if v not in open_arcs)
            key = (score[i] - new, -i)
            if best_key is None or key > best_key:
                best, best_key = i, key
        done[best] = True
        order.append(best)
        for v in set(crossings[best]):
            if v in open_arcs:
                open_arcs.discard(v)
            elif not all(done[j] for j in where[v]):
                open_arcs.add(v)
            for j in where[v]:
                if not done[j]:
                    score[j] += 1
    return order


def _join(partner: dict, x: int, y: int) -> int:
    """Connect arc ends x and y in-place; returns the number of loops closed."""
    if x == y:
        return 1
    px = partner.pop(x, None)
    if px == y:
        del partner[y]
        return 1
    py = partner.pop(y, None)
    if px is None and py is None:
        partner[x] = y
        partner[y] = x
    elif py is None:
        partner[px] = y
        partner[y] = px
    elif px is None:
        partner[py] = x
        partner[x] = py
    else:
        partner[px] = py
        partner[py] = px
    return 0


def kauffman_bracket(d: PlanarDiagram, max_width: int = DEFAULT_MAX_WIDTH,
                     order: list[int] | None = None) -> LaurentPolynomial:
    """Kauffman bracket in A, normalised so the crossingless unknot is 1.

    ``max_width`` caps the number of open arc ends carried between steps;
    ``order`` overrides the greedy contraction order.
    """
    crossings = d.crossings
    n = len(crossings)
    if n == 0:
        return LaurentPolynomial.constant(1, "A")
    bits, offset = _pack_params(n)
    two = 2 * bits
    if order is None:
        order = _contraction_order(crossings)
    states: dict[tuple, int] = {(): 1 << (bits * offset)}
    for i in order:
        a, b, c, dd = crossings[i]
        nxt: dict[tuple, int] = {}
        for key, val in states.items():
            for (p1, p2, shift_up) in (((a, b), (c, dd), True), ((a, dd), (b, c), False)):
                partner = dict(key)
                loops = _join(partner, *p1) + _join(partner, *p2)
                v = val << bits if shift_up else val >> bits
                for _ in range(loops):
                    v = -(v << two) - (v >> two)
                k2 = tuple(sorted(partner.items()))
                nxt[k2] = nxt.get(k2, 0) + v
        states = {k: v for k, v in nxt.items() if v}
        if states and len(next(iter(states))) > max_width:
            raise StateSpaceTooLarge(f"boundary width exceeds {max_width}")
    total = states.get((), 0)
    return _unpack(total, bits, offset).divmod_exact(DELTA)


def bracket_bruteforce(d: PlanarDiagram) -> LaurentPolynomial:
    """Full state sum over all 2^c smoothings (independent oracle)."""
    crossings = d.crossings
    n = len(crossings)
    if n > BRUTEFORCE_LIMIT:
        raise TooManyCrossings(f"{n} crossings exceeds the brute-force limit {BRUTEFORCE_LIMIT}")
    if n == 0:
        return LaurentPolynomial.constant(1, "A")
    labels = sorted({v for x in crossings for v in x})
    index = {v: i for i, v in enumerate(labels)}
    tally: dict[tuple[int, int], int] = {}
    for mask in range(1 << n):
        parent = list(range(len(labels)))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        def union(u, v):
            ru, rv = find(index[u]), find(index[v])
            if ru != rv:
                parent[ru] = rv
                return 1
            return 0

        merged = 0
        a_count = 0
        for k, (a, b, c, dd) in enumerate(crossings):
            if mask >> k & 1:
                merged += union(a, dd) + union(b, c)
            else:
                a_count += 1
                merged += union(a, b) + union(c, dd)
        loops = len(labels) - merged
        key = (a_count - (n - a_count), loops)
        tally[key] = tally.get(key, 0) + 1
    total = LaurentPolynomial({}, "A")
    for (e, loops), count in tally.items():
        total = total + LaurentPolynomial.monomial(e, count, "A") * DELTA ** (loops - 1)
    return total


def writhe(d: PlanarDiagram) -> int:
    return sum(d.signs())


def jones_from_bracket(bracket: LaurentPolynomial, w: int) -> LaurentPolynomial:
    """V(t) = (-A^3)^(-w) <D> with t = A^(-4)."""
    sign = -1 if w % 2 else 1
    normalised = bracket.shift(-3 * w) * sign
    return normalised.rescale(-1, 4, "t")


def jones(d: PlanarDiagram, **kwargs) -> LaurentPolynomial:
    return jones_from_bracket(kauffman_bracket(d, **kwargs), writhe(d))


# ---------------------------------------------------------------------------
# Alexander polynomial

def _wirtinger_arcs(d: PlanarDiagram) -> dict[int, int]:
    """Map every edge label to the index of the over-arc containing it."""
    labels = sorted({v for x in d.crossings for v in x})
    parent = {v: v for v in labels}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for a, b, c, dd in d.crossings:
        parent[find(b)] = find(dd)
    roots = sorted({find(v) for v in labels})
    idx = {r: i for i, r in enumerate(roots)}
    return {v: idx[find(v)] for v in labels}


def _bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (entries may be huge)."""
    m = [r[:] for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _sparse_det(rows: list[dict[int, int]], n: int) -> int:
    """Determinant, up to sign, of an n x n integer matrix given as sparse rows.

    Pivots equal to +-1 are eliminated first (exact, no division, little
    fill-in on Wirtinger matrices); whatever is left goes to Bareiss.  Row
    and column permutation signs are not tracked.
    """
    rows = [dict(r) for r in rows]
    live_rows = set(range(n))
    live_cols = set(range(n))
    sign = 1
    while True:
        best = None
        for i in live_rows:
            r = rows[i]
            for j, v in r.items():
                if v == 1 or v == -1:
                    if best is None or len(r) < best[0]:
                        best = (len(r), i, j)
                    break
            if best is not None and best[0] <= 2:
                break
        if best is None:
            break
        _, i, j = best
        pivot_row = rows[i]
        pv = pivot_row[j]
        sign *= pv
        for k in live_rows:
            if k == i:
                continue
            r = rows[k]
            f = r.get(j)
            if not f:
                continue
            f *= pv  # pv = +-1, so f / pv == f * pv
            for c, v in pivot_row.items():
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        live_rows.discard(i)
        live_cols.discard(j)
        for k in live_rows:
            rows[k].pop(j, None)
    cols = sorted(live_cols)
    dense = [[rows[i].get(c, 0) for c in cols] for i in sorted(live_rows)]
    return sign * _bareiss_det(dense)


def alexander(d: PlanarDiagram) -> LaurentPolynomial:
    """Alexander polynomial from the Wirtinger presentation, normalised so
    that it is symmetric under t -> 1/t and takes the value 1 at t = 1."""
    n = len(d.crossings)
    if n <= 1:
        return LaurentPolynomial.constant(1)
    arc = _wirtinger_arcs(d)
    if len(set(arc.values())) != n:
        raise MalformedDiagram("diagram does not have one over-arc per crossing")
    # Entries are polynomials in t with non-negative exponents, evaluated at
    # t = 2^bits.  Each row has absolute coefficient sum <= 4, so every minor
    # of size k has coefficients below 4^k and degree at most k.
    bits = 2 * n + 4
    t = 1 << bits
    rows = []
    for x, s in zip(d.crossings, d.signs()):
        a, b, c, dd = x
        row: dict[int, int] = {}
        for col, v in ((arc[b], 1 - t), (arc[a], t if s > 0 else -1), (arc[c], -1 if s > 0 else t)):
            if col < n - 1:
                row[col] = row.get(col, 0) + v
        rows.append({k: v for k, v in row.items() if v})
    packed = _sparse_det(rows[:-1], n - 1)
    poly = _unpack(packed, bits, 0, "t")
    if poly.is_zero():
        raise MalformedDiagram("Alexander matrix is singular")
    lo, hi = poly.min_exp(), poly.max_exp()
    if (lo + hi) % 2:
        raise MalformedDiagram("Alexander polynomial has odd span")
    poly = poly.shift(-(lo + hi) // 2)
    if poly(1) < 0:
        poly = -poly
    return poly


def _determinant_from(alex: LaurentPolynomial) -> int:
    return abs(int(alex(-1)))


def determinant(d: PlanarDiagram) -> int:
    return _determinant_from(alexander(d))


# ---------------------------------------------------------------------------
# fingerprints

@dataclass(frozen=True)
class Fingerprint:
    jones: LaurentPolynomial
    alexander: LaurentPolynomial
    determinant: int

    def mirror(self) -> "Fingerprint":
        """Fingerprint of the mirror image: only Jones changes (t -> 1/t)."""
        return Fingerprint(self.jones.reflect(), self.alexander, self.determinant)

    def to_json(self) -> dict:
        return {"jones": self.jones.to_json(), "alexander": self.alexander.to_json(),
                "determinant": self.determinant}

    @classmethod
    def from_json(cls, obj) -> "Fingerprint":
        return cls(LaurentPolynomial.from_json(obj["jones"]),
                   LaurentPolynomial.from_json(obj["alexander"]),
                   int(obj["determinant"]))


def fingerprint(d: PlanarDiagram) -> Fingerprint:
    alex = alexander(d)
    fp = Fingerprint(jones(d), alex, _determinant_from(alex))
    assert fp.determinant == abs(fp.alexander(-1))
    return fp
