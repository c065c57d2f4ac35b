"""
Petal sequences: the level at which each strand crosses the central
multi-crossing, read in traversal order.  Larger level = higher strand.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import Empty, EvenLength, IndexOutOfRange, NotAPermutation

__all__ = [
    "PetalSequence", "validate", "parse_sequence", "canonicalize", "is_canonical",
    "orbit", "reduce", "reduce_step", "stabilize", "compose", "mirror",
    "torus_sequence", "random_sequence", "rank_relabel",
]


@dataclass(frozen=True)
class PetalSequence:
    """An odd-length permutation of 1..p, read cyclically.

    Instances are only created through :func:`validate`, so every
    ``PetalSequence`` in circulation satisfies the invariants.  The stored
    order is the order given; use :func:`canonicalize` for a dedupe key.
    """

    levels: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.levels)

    def __len__(self):
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)

    def __getitem__(self, i):
        return self.levels[i]

    def __str__(self):
        return " ".join(map(str, self.levels))

    def __repr__(self):
        return f"PetalSequence({self.levels})"


def validate(levels: Iterable[int]) -> PetalSequence:
    levels = tuple(levels)
    if not levels:
        raise Empty("empty sequence")
    for a in levels:
        if isinstance(a, bool) or not isinstance(a, int):
            raise NotAPermutation(f"non-integer level {a!r}")
    p = len(levels)
    if sorted(levels) != list(range(1, p + 1)):
        raise NotAPermutation(f"{levels} is not a permutation of 1..{p}")
    if p % 2 == 0:
        raise EvenLength(f"petal sequences have odd length, got {p}")
    return PetalSequence(levels)


_SPLIT = re.compile(r"[\s,]+")


def parse_sequence(text: str) -> PetalSequence:
    """Parse ``"1 3 5 2 4"``, ``"(1,3,5,2,4)"`` and similar forms."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    tokens = [t for t in _SPLIT.split(body) if t]
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise NotAPermutation(f"cannot parse {text!r} as integers") from None
    return validate(values)


def orbit(s: PetalSequence) -> set[tuple[int, ...]]:
    """All rotations of ``s`` and of its reversal (at most 2p tuples)."""
    lv = s.levels
    rev = lv[::-1]
    out = set()
    for i in range(len(lv)):
        out.add(lv[i:] + lv[:i])
        out.add(rev[i:] + rev[:i])
    return out


def canonicalize(s: PetalSequence) -> PetalSequence:
    """Lexicographically least member of the rotation x reversal orbit."""
    lv = s.levels
    p = len(lv)
    i = lv.index(1)
    fwd = lv[i:] + lv[:i]
    # the least rotation starts with 1; only two candidates remain
    bwd = (1,) + tuple(reversed(fwd[1:]))
    return PetalSequence(min(fwd, bwd)) if p > 1 else s


def is_canonical(levels: tuple[int, ...]) -> bool:
    return levels[0] == 1 and (len(levels) < 3 or levels[1] < levels[-1])


def rank_relabel(values: Iterable[int]) -> tuple[int, ...]:
    """Order-preserving bijection of distinct integers onto 1..n."""
    values = tuple(values)
    rank = {v: i + 1 for i, v in enumerate(sorted(values))}
    return tuple(rank[v] for v in values)


def _first_adjacent_pair(lv: tuple[int, ...]) -> Optional[int]:
    p = len(lv)
    if p < 3:
        return None
    for i in range(p):
        if abs(lv[i] - lv[(i + 1) % p]) == 1:
            return i
    return None


def reduce_step(s: PetalSequence) -> Optional[PetalSequence]:
    """Remove the leftmost cyclically adjacent pair of consecutive levels, or return None."""
    lv = s.levels
    i = _first_adjacent_pair(lv)
    if i is None:
        return None
    j = (i + 1) % len(lv)
    kept = [a for k, a in enumerate(lv) if k != i and k != j]
    return PetalSequence(rank_relabel(kept))


def reduce(s: PetalSequence) -> PetalSequence:
    """Apply :func:`reduce_step` until no adjacent pair is left."""
    while True:
        nxt = reduce_step(s)
        if nxt is None:
            return s
        s = nxt


def stabilize(s: PetalSequence, position: int) -> PetalSequence:
    """Insert a removable loop before index ``position`` (0..p).

    The new pair is ``(v, v+1)`` where ``v`` is the level currently at
    ``position`` (the last level when ``position == p``); existing levels
    ``>= v`` move up by two.
    """
    lv = s.levels
    p = len(lv)
    if not isinstance(position, int) or not 0 <= position <= p:
        raise IndexOutOfRange(f"position {position} outside 0..{p}")
    v = lv[position] if position < p else lv[-1]
    bumped = [a + 2 if a >= v else a for a in lv]
    return PetalSequence(tuple(bumped[:position]) + (v, v + 1) + tuple(bumped[position:]))


def _rotate_to(lv: tuple[int, ...], value: int, last: bool) -> tuple[int, ...]:
    i = lv.index(value)
    if last:
        i += 1
    return lv[i:] + lv[:i]


def compose(a: PetalSequence, b: PetalSequence) -> PetalSequence:
    """Connected sum with ``len(a) + len(b) - 1`` petals.

    The top strand of ``a`` is merged with the bottom strand of ``b`` and
    every strand of ``b`` is stacked above all strands of ``a``.
    """
    m = len(a)
    low = _rotate_to(a.levels, m, last=True)
    high = _rotate_to(b.levels, 1, last=False)
    return PetalSequence(low + tuple(y + m - 1 for y in high[1:]))


def mirror(s: PetalSequence) -> PetalSequence:
    p = len(s)
    return PetalSequence(tuple(p + 1 - a for a in s.levels))


def torus_sequence(r: int) -> PetalSequence:
    """Sequence with 2r+1 petals representing the (r, r+1) torus knot up to mirror."""
    if r < 2:
        raise ValueError("torus_sequence needs r >= 2")
    p = 2 * r + 1
    return PetalSequence(tuple(1 + (j * r) % p for j in range(p)))


def random_sequence(p: int, seed: int) -> PetalSequence:
    """Uniform random permutation of 1..p, deterministic in ``seed``."""
    if p < 1:
        raise Empty("p must be positive")
    if p % 2 == 0:
        raise EvenLength(f"petal sequences have odd length, got {p}")
    levels = list(range(1, p + 1))
    random.Random(seed).shuffle(levels)
    return PetalSequence(tuple(levels))
