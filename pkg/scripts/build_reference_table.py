#!/usr/bin/env python3
"""
Regenerate ``src/petal/data/knots.json`` and ``tests/data/knotinfo_reference.json``
from a KnotInfo CSV dump (the ``database_knotinfo`` wheel ships one).

Petal data (minimal sequences) is kept from the existing knots.json unless
``--sequences`` points at a JSON list of ``[name, petal_number, sequence]``.
Only planar diagram codes are taken from KnotInfo; invariants are never
shipped in the package data.  The KnotInfo Jones/Alexander strings go to the
test fixture so the invariant engine can be cross-checked independently.

``--mirror NAME`` stores the mirror image of that knot's diagram; this is how
the pipeline chirality pin (3_1 matches (1,3,5,2,4) as stored) is applied.
"""

import argparse
import csv
import json
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, "..", "src"))

from petal.diagrams import PlanarDiagram  # noqa: E402

PKG_DATA = os.path.join(HERE, "..", "src", "petal", "data", "knots.json")
TEST_DATA = os.path.join(HERE, "..", "tests", "data", "knotinfo_reference.json")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("knotinfo_csv")
    parser.add_argument("--sequences", default=None)
    parser.add_argument("--mirror", action="append", default=[])
    args = parser.parse_args(argv)

    if args.sequences:
        with open(args.sequences) as fh:
            petal = {name: (p, seq) for name, p, seq in json.load(fh)}
    else:
        with open(PKG_DATA) as fh:
            petal = {r["name"]: (r["table_petal_number"], r["table_sequence"])
                     for r in json.load(fh) if r["name"] != "0_1"}

    csv.field_size_limit(sys.maxsize)
    with open(args.knotinfo_csv) as fh:
        info = {row["name"]: row for row in csv.DictReader(fh, delimiter="|")}

    records = [{"name": "0_1", "crossing_number": 0, "pd": [],
                "table_petal_number": 1, "table_sequence": [1]}]
    reference = {"0_1": {"jones": "1", "alexander": "1", "pd": []}}
    for name, (p, seq) in petal.items():
        row = info[name]
        pd = json.loads(row["pd_notation"])
        if name in args.mirror:
            pd = [list(x) for x in PlanarDiagram(pd).mirror().crossings]
        records.append({"name": name, "crossing_number": int(row["crossing_number"]),
                        "pd": pd, "table_petal_number": p, "table_sequence": seq})
        reference[name] = {"jones": row["jones_polynomial"],
                           "alexander": row["alexander_polynomial"],
                           "pd": json.loads(row["pd_notation"])}

    with open(PKG_DATA, "w") as fh:
        json.dump(records, fh, separators=(",", ":"))
        fh.write("\n")
    with open(TEST_DATA, "w") as fh:
        json.dump(reference, fh, indent=1)
        fh.write("\n")
    print(f"wrote {len(records)} records", file=sys.stderr)


if __name__ == "__main__":
    main()
