import json
import re
from pathlib import Path

import pytest

from petal.identify import default_database
from petal.polynomial import LaurentPolynomial

DATA = Path(__file__).parent / "data"


def parse_knotinfo_poly(text: str) -> LaurentPolynomial:
    """Parse KnotInfo's polynomial strings, e.g. 't^(-2)-t^(-1)+ 1-t+ t^2'."""
    s = text.replace(" ", "")
    # protect negative exponents from the term split below
    s = re.sub(r"\^\((-?\d+)\)", lambda m: "^" + m.group(1).replace("-", "m"), s)
    s = re.sub(r"\^(\d+)", r"^\1", s)
    coeffs = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        if "t" in body:
            c_part, _, e_part = body.partition("t")
            c_part = c_part.rstrip("*")
            c = int(c_part) if c_part else 1
            e_part = e_part.lstrip("^")
            e = int(e_part.replace("m", "-")) if e_part else 1
        else:
            c, e = int(body), 0
        if sign == "-":
            c = -c
        coeffs[e] = coeffs.get(e, 0) + c
    return LaurentPolynomial(coeffs)


def normalise_alexander(poly: LaurentPolynomial) -> LaurentPolynomial:
    lo, hi = poly.min_exp(), poly.max_exp()
    poly = poly.shift(-(lo + hi) // 2)
    return -poly if poly(1) < 0 else poly


@pytest.fixture(scope="session")
def db():
    return default_database()


@pytest.fixture(scope="session")
def knotinfo():
    with open(DATA / "knotinfo_reference.json") as fh:
        raw = json.load(fh)
    return {name: {"jones": parse_knotinfo_poly(r["jones"]),
                   "alexander": normalise_alexander(parse_knotinfo_poly(r["alexander"]))}
            for name, r in raw.items()}


_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    def record(number, failures, detail=""):
        line = f"criterion {number:>2}: {'PASS' if not failures else 'FAIL'}"
        if detail:
            line += f"  ({detail})"
        if failures:
            line += f"  first failures: {failures[:3]}"
        _VERDICTS.append(line)
        print(line)
        assert not failures, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
