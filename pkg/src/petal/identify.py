"""
Knot table: reference diagrams for the unknot and the prime knots up to
nine crossings, with fingerprints computed at load time.

Only diagrams and petal data are shipped; every invariant is recomputed
here, so a bug in the invariant engine shows up as a failed identification
instead of being masked by stored values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .diagrams import PlanarDiagram
from .errors import CorruptRecord, MalformedDiagram, MissingData, PetalError
from .invariants import Fingerprint, fingerprint
from .sequence import PetalSequence, validate

__all__ = [
    "KnotRecord", "KnotDatabase", "load_table", "default_database", "identify",
    "collision_report", "AS_STORED", "MIRRORED", "AMPHICHIRAL",
]

AS_STORED = "as-stored"
MIRRORED = "mirrored"
AMPHICHIRAL = "amphichiral-ambiguous"


@dataclass(frozen=True)
class KnotRecord:
    name: str
    crossing_number: int
    table_petal_number: int
    table_sequence: PetalSequence
    pd: PlanarDiagram
    fingerprint: Fingerprint
    mirror_fingerprint: Fingerprint

    @property
    def amphichiral(self) -> bool:
        return self.fingerprint == self.mirror_fingerprint


def _key(f: Fingerprint):
    return (f.jones, f.alexander)


class KnotDatabase:
    """Immutable lookup structure over a list of records."""

    def __init__(self, records):
        self.records: tuple[KnotRecord, ...] = tuple(records)
        self.by_name = {r.name: r for r in self.records}
        self._index: dict[tuple, list[tuple[str, str]]] = {}
        for r in self.records:
            self._index.setdefault(_key(r.fingerprint), []).append((r.name, "stored"))
            self._index.setdefault(_key(r.mirror_fingerprint), []).append((r.name, "mirror"))

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, name: str) -> KnotRecord:
        return self.by_name[name]

    def __contains__(self, name):
        return name in self.by_name

    def restrict(self, names) -> "KnotDatabase":
        names = set(names)
        return KnotDatabase(r for r in self.records if r.name in names)

    def identify(self, f: Fingerprint) -> list[tuple[str, str]]:
        """All records matching ``f`` in Jones and Alexander, with chirality."""
        hits: dict[str, set[str]] = {}
        for name, side in self._index.get(_key(f), ()):
            hits.setdefault(name, set()).add(side)
        out = []
        for r in self.records:
            sides = hits.get(r.name)
            if not sides:
                continue
            # redundant given Jones and Alexander agree; kept as a consistency check
            assert f.determinant == r.fingerprint.determinant, r.name
            if sides == {"stored", "mirror"}:
                out.append((r.name, AMPHICHIRAL))
            elif sides == {"stored"}:
                out.append((r.name, AS_STORED))
            else:
                out.append((r.name, MIRRORED))
        return out

    def names_for(self, f: Fingerprint) -> list[str]:
        return [name for name, _ in self.identify(f)]

    def collision_report(self) -> list[list[str]]:
        """Groups of distinct knots sharing a (Jones, Alexander) pair."""
        groups = []
        for entries in self._index.values():
            names = sorted({name for name, _ in entries})
            if len(names) > 1 and names not in groups:
                groups.append(names)
        return sorted(groups)

    def composite_hint(self, f: Fingerprint) -> list[tuple[str, str]]:
        """Pairs of nontrivial table knots whose connected sum (either
        chirality) would have fingerprint ``f``."""
        out = []
        nontrivial = [r for r in self.records if r.crossing_number > 0]
        for i, r1 in enumerate(nontrivial):
            for r2 in nontrivial[i:]:
                if r1.fingerprint.alexander * r2.fingerprint.alexander != f.alexander:
                    continue
                for f1 in {r1.fingerprint, r1.mirror_fingerprint}:
                    for f2 in {r2.fingerprint, r2.mirror_fingerprint}:
                        if f1.jones * f2.jones == f.jones and (r1.name, r2.name) not in out:
                            out.append((r1.name, r2.name))
        return out


def _record_from(obj) -> KnotRecord:
    try:
        name = str(obj["name"])
        crossing_number = int(obj["crossing_number"])
        p = int(obj["table_petal_number"])
        seq = validate(tuple(obj["table_sequence"]))
        pd = PlanarDiagram(obj["pd"])
    except (KeyError, TypeError, ValueError, PetalError) as exc:
        raise CorruptRecord(f"bad record {obj.get('name', '?') if isinstance(obj, dict) else obj!r}: {exc}") from None
    if p % 2 == 0 or len(seq) != p:
        raise CorruptRecord(f"{name}: petal number {p} does not match sequence length {len(seq)}")
    if len(pd) != crossing_number:
        raise CorruptRecord(f"{name}: diagram has {len(pd)} crossings, expected {crossing_number}")
    try:
        fp = fingerprint(pd)
    except MalformedDiagram as exc:
        raise CorruptRecord(f"{name}: {exc}") from None
    return KnotRecord(name, crossing_number, p, seq, pd, fp, fp.mirror())


def load_table(path: str | Path | None = None) -> KnotDatabase:
    """Load reference records; ``None`` reads the data shipped with the package."""
    try:
        if path is None:
            text = resources.files("petal").joinpath("data/knots.json").read_text()
        else:
            text = Path(path).read_text()
    except (FileNotFoundError, IsADirectoryError) as exc:
        raise MissingData(f"reference data not found: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptRecord(f"reference data is not valid JSON: {exc}") from None
    if not isinstance(raw, list):
        raise CorruptRecord("reference data must be a JSON array")
    return KnotDatabase(_record_from(obj) for obj in raw)


@lru_cache(maxsize=1)
def default_database() -> KnotDatabase:
    return load_table()


def identify(f: Fingerprint, db: KnotDatabase | None = None) -> list[tuple[str, str]]:
    return (db or default_database()).identify(f)


def collision_report(db: KnotDatabase | None = None) -> list[list[str]]:
    return (db or default_database()).collision_report()
