"""
Exhaustive enumeration of petal sequences up to rotation and reversal.

Every search goes through :func:`fingerprint_table`, which fingerprints the
irreducible canonical sequences of one length (via the grid path) and
caches the result in memory.  A sequence that reduces is never a witness
at its own length, since the knot it represents already has a shorter
representation.

For the largest searches (p = 11 has 1,814,400 canonical sequences) a
vectorised determinant filter runs first: the determinant of a grid
diagram can be read off the winding-number matrix of its lattice points,
so whole batches are screened with numpy and only survivors get an exact
fingerprint.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterator, Optional

import numpy as np

from .diagrams import grid_to_pd, petal_to_grid
from .errors import BudgetExceeded, EvenLength, NotFound
from .identify import KnotDatabase, KnotRecord, default_database
from .invariants import Fingerprint, fingerprint
from .sequence import PetalSequence, canonicalize, reduce

__all__ = [
    "enumerate_sequences", "count_canonical", "fingerprint_table", "classify_all",
    "ClassificationReport", "representable_names", "find_fingerprint", "petal_number",
    "verify_table", "RowResult", "sequence_fingerprint", "batch_determinants",
    "scan_determinants", "MAX_PETALS",
]

log = logging.getLogger(__name__)

MAX_PETALS = 11
# p = 11 exhaustive classification is about an hour of CPU; above that
# only the determinant-filtered scan is practical.
LARGE_PETALS = 13


def _check_p(p: int):
    if p < 1:
        raise ValueError("p must be positive")
    if p % 2 == 0:
        raise EvenLength(f"petal sequences have odd length, got {p}")


def enumerate_sequences(p: int, prefix: tuple[int, ...] = ()) -> Iterator[PetalSequence]:
    """Canonical sequences (a_1 = 1, a_2 < a_p) of length p in lexicographic order.

    ``prefix`` restricts the stream to sequences starting ``(1,) + prefix``.
    """
    _check_p(p)
    if p == 1:
        if not prefix:
            yield PetalSequence((1,))
        return
    rest = [v for v in range(2, p + 1) if v not in prefix]
    for tail in itertools.permutations(rest):
        levels = (1,) + prefix + tail
        if levels[1] < levels[-1]:
            yield PetalSequence(levels)


def count_canonical(p: int) -> int:
    _check_p(p)
    if p < 3:
        return 1
    n = 1
    for k in range(2, p):
        n *= k
    return n // 2


def sequence_fingerprint(s: PetalSequence) -> Fingerprint:
    return fingerprint(grid_to_pd(petal_to_grid(s)))


def _fingerprint_chunk(args):
    p, prefix = args
    out = []
    for s in enumerate_sequences(p, prefix):
        if len(reduce(s)) < p:
            continue
        out.append((s.levels, sequence_fingerprint(s)))
    return out


def _prefixes(p: int) -> list[tuple[int, ...]]:
    return [()] if p < 3 else [(v,) for v in range(2, p + 1)]


_TABLES: dict[int, tuple] = {}


def _compute_table(p: int, jobs: int) -> tuple:
    work = [(p, pre) for pre in _prefixes(p)]
    t0 = time.time()
    if jobs > 1 and len(work) > 1:
        with Pool(jobs) as pool:
            chunks = pool.map(_fingerprint_chunk, work)
    else:
        chunks = [_fingerprint_chunk(w) for w in work]
    rows = tuple(itertools.chain.from_iterable(chunks))
    log.info("fingerprinted %d irreducible sequences at p=%d in %.1fs", len(rows), p, time.time() - t0)
    return rows


def fingerprint_table(p: int, jobs: int = 1, allow_large: bool = False) -> tuple:
    """``(levels, Fingerprint)`` for every irreducible canonical sequence of length p.

    Chunks are keyed by the second entry and concatenated in prefix order,
    which is the serial enumeration order, so the result does not depend
    on ``jobs``.  Results are cached per ``p``.
    """
    _check_p(p)
    if p > MAX_PETALS - 2 and not allow_large:
        raise BudgetExceeded(f"exhaustive fingerprinting at p={p} needs allow_large=True")
    if p not in _TABLES:
        _TABLES[p] = _compute_table(p, max(1, jobs))
    return _TABLES[p]


@dataclass
class ClassificationReport:
    petals: int
    identified: dict[str, list[tuple[int, ...]]] = field(default_factory=dict)
    unidentified: list[tuple[tuple[int, ...], Fingerprint]] = field(default_factory=list)

    def names(self) -> set[str]:
        return set(self.identified)

    def to_json(self) -> dict:
        return {
            "petals": self.petals,
            "identified": {k: [list(s) for s in v] for k, v in sorted(self.identified.items())},
            "unidentified": [{"sequence": list(s), "fingerprint": f.to_json()}
                             for s, f in self.unidentified],
        }

    @classmethod
    def from_json(cls, obj) -> "ClassificationReport":
        return cls(int(obj["petals"]),
                   {k: [tuple(s) for s in v] for k, v in obj["identified"].items()},
                   [(tuple(u["sequence"]), Fingerprint.from_json(u["fingerprint"]))
                    for u in obj["unidentified"]])


def classify_all(p: int, db: Optional[KnotDatabase] = None, jobs: int = 1,
                 max_sequences: Optional[int] = None, allow_large: bool = False,
                 include_reducible: bool = True) -> ClassificationReport:
    """Bucket the canonical sequences of length p by knot type.

    Irreducible sequences are fingerprinted directly.  With
    ``include_reducible`` the remaining sequences are listed under the knot
    of their reduced form, so ``identified`` covers every knot representable
    with p petals; without it only irreducible witnesses are reported.
    A sequence matching several table knots is listed under each of them.
    """
    _check_p(p)
    if max_sequences is not None and count_canonical(p) > max_sequences:
        raise BudgetExceeded(f"p={p} has {count_canonical(p)} canonical sequences, cap is {max_sequences}")
    db = db or default_database()
    table = fingerprint_table(p, jobs, allow_large)
    fps = dict(table)
    if include_reducible:
        for s in enumerate_sequences(p):
            if s.levels in fps:
                continue
            r = canonicalize(reduce(s))
            fingerprint_table(r.p, jobs, allow_large)
            fps[s.levels] = _lookup(r)
    report = ClassificationReport(p)
    for levels in sorted(fps):
        fp = fps[levels]
        names = db.names_for(fp)
        if not names:
            report.unidentified.append((levels, fp))
        for name in names:
            report.identified.setdefault(name, []).append(levels)
    report.identified = dict(sorted(report.identified.items()))
    return report


_INDEX: dict[int, dict] = {}


def _lookup(s: PetalSequence) -> Fingerprint:
    if s.p not in _INDEX:
        _INDEX[s.p] = dict(_TABLES[s.p])
    return _INDEX[s.p][s.levels]


def representable_names(p_max: int, db: Optional[KnotDatabase] = None,
                        jobs: int = 1) -> dict[str, int]:
    """Table knots with a representation of at most ``p_max`` petals -> least such p."""
    found: dict[str, int] = {}
    for p in range(1, p_max + 1, 2):
        for name in classify_all(p, db, jobs=jobs).identified:
            found.setdefault(name, p)
    return found


def find_fingerprint(f: Fingerprint, p: int, jobs: int = 1) -> list[tuple[int, ...]]:
    """Canonical irreducible sequences of length p whose fingerprint is ``f`` or its mirror."""
    targets = {(f.jones, f.alexander), (f.jones.reflect(), f.alexander)}
    return [lv for lv, g in fingerprint_table(p, jobs) if (g.jones, g.alexander) in targets]


# ---------------------------------------------------------------------------
# determinant filter for large searches

def batch_determinants(levels: np.ndarray) -> np.ndarray:
    """Knot determinants of the petal grids for a batch of sequences.

    ``levels`` has shape (N, p).  Uses det(M) = +-2^(p-1) det(K), where
    M[x, y] = (-1)^w(x, y) and w is the winding number of the grid knot
    around lattice point (x, y), 0 <= x, y < p.
    """
    levels = np.asarray(levels, dtype=np.int64)
    n_seq, p = levels.shape
    k = (p + 1) // 2
    cols = (np.arange(p) * k) % p
    o = np.empty_like(levels)
    x = np.empty_like(levels)
    o[:, cols] = levels - 1
    x[:, cols] = np.roll(levels, -1, axis=1) - 1
    lo = np.minimum(o, x)[:, :, None]
    hi = np.maximum(o, x)[:, :, None]
    y = np.arange(p)[None, None, :]
    parity = ((lo < y) & (y <= hi)).astype(np.int64)  # vertical c passes lattice row y
    # winding parity at (x, y) is the parity of verticals strictly right of x
    w = np.flip(np.cumsum(np.flip(parity, axis=1), axis=1), axis=1)
    m = 1.0 - 2.0 * (w & 1)
    det = np.abs(np.linalg.det(m)) / 2.0 ** (p - 1)
    return det


def scan_determinants(p: int, targets: set[int], batch: int = 20000,
                      progress: bool = False) -> Iterator[PetalSequence]:
    """Canonical sequences of length p whose determinant lies in ``targets``.

    Sequences whose floating-point determinant is not close to an integer
    are passed through as well, so the filter never drops a candidate.
    """
    buf = []
    seen = 0
    t0 = time.time()

    def flush():
        arr = np.array([s.levels for s in buf], dtype=np.int64)
        dets = batch_determinants(arr)
        rounded = np.rint(dets)
        keep = np.isin(rounded, list(targets)) | (np.abs(dets - rounded) > 0.25)
        for i in np.nonzero(keep)[0]:
            yield buf[i]

    for s in enumerate_sequences(p):
        buf.append(s)
        if len(buf) == batch:
            yield from flush()
            seen += len(buf)
            buf = []
            if progress:
                log.info("scanned %d/%d sequences at p=%d (%.0fs)", seen, count_canonical(p), p, time.time() - t0)
    if buf:
        yield from flush()


def _scan_for_records(p: int, records: list[KnotRecord], db: KnotDatabase,
                      progress: bool = False) -> dict[str, list[tuple[int, ...]]]:
    wanted = {r.name for r in records}
    dets = {r.fingerprint.determinant for r in records}
    hits: dict[str, list[tuple[int, ...]]] = {}
    for s in scan_determinants(p, dets, progress=progress):
        for name in db.names_for(sequence_fingerprint(s)):
            if name in wanted:
                hits.setdefault(name, []).append(s.levels)
    return hits


# ---------------------------------------------------------------------------
# petal numbers and table verification

def petal_number(target: KnotRecord | str, p_max: int = MAX_PETALS,
                 db: Optional[KnotDatabase] = None) -> tuple[int, list[tuple[int, ...]]]:
    """Least p <= p_max with a sequence representing the target (up to mirror),
    and every canonical witness at that p."""
    db = db or default_database()
    rec = db[target] if isinstance(target, str) else target
    for p in range(1, p_max + 1, 2):
        if p <= MAX_PETALS - 2:
            witnesses = classify_all(p, db, include_reducible=False).identified.get(rec.name, [])
        else:
            witnesses = _scan_for_records(p, [rec], db).get(rec.name, [])
        if witnesses:
            return p, sorted(witnesses)
    raise NotFound(p_max)


@dataclass
class RowResult:
    name: str
    petals: int
    identifies: bool
    minimal: Optional[bool]  # None when the exclusion search was not run
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.identifies and self.minimal is not False

    def to_json(self) -> dict:
        return {"name": self.name, "petals": self.petals, "identifies": self.identifies,
                "minimal": self.minimal, "passed": self.passed, "detail": self.detail}


def verify_table(db: Optional[KnotDatabase] = None, p_max: int = 13,
                 search_max: int = MAX_PETALS - 2, jobs: int = 1,
                 progress: bool = False) -> list[RowResult]:
    """Check every row with table petal number <= p_max.

    (a) the listed sequence identifies as the named knot, up to mirror;
    (b) no sequence with table_petal_number - 2 petals represents it.
    (b) is only run when table_petal_number - 2 <= search_max.
    """
    db = db or default_database()
    rows = [r for r in db if r.table_petal_number <= p_max]
    shallow_max = min(search_max, MAX_PETALS - 2)
    known = representable_names(shallow_max, db, jobs) if shallow_max >= 1 else {}
    deep = [r for r in rows if shallow_max < r.table_petal_number - 2 <= search_max]
    deep_hits: dict[str, list] = {}
    for p in sorted({r.table_petal_number - 2 for r in deep}):
        group = [r for r in deep if r.table_petal_number - 2 == p]
        deep_hits.update(_scan_for_records(p, group, db, progress=progress))
    results = []
    for r in rows:
        names = db.names_for(sequence_fingerprint(r.table_sequence))
        ok_a = r.name in names
        below = r.table_petal_number - 2
        if r.table_petal_number == 1:
            minimal, detail = True, "p=1 is the least possible"
        elif below > search_max:
            minimal, detail = None, f"exclusion at p={below} not run"
        elif r in deep:
            hits = deep_hits.get(r.name, [])
            minimal = not hits
            detail = f"exhaustive p={below}: " + ("no representation" if minimal else f"found {hits[0]}")
        else:
            first = known.get(r.name)
            minimal = first is None or first > below
            detail = f"exhaustive p<={below}: " + ("no representation" if minimal else f"found at p={first}")
        if not ok_a:
            detail = f"sequence identifies as {names or 'nothing'}; " + detail
        results.append(RowResult(r.name, r.table_petal_number, ok_a, minimal, detail))
    return results
