import itertools
import json
from fractions import Fraction

import pytest

from petal.errors import NonGenericDirection
from petal.invariants import fingerprint
from petal.sequence import parse_sequence
from petal.sticks import (StickConformation, certify_embedded, generic_directions, petal_to_sticks,
                          project_to_pd, segments_intersect)


def names_over_directions(conf, db, k=6):
    return [db.names_for(fingerprint(project_to_pd(conf, d)))
            for d in itertools.islice(generic_directions(), k)]


def test_short_sequences_give_a_triangle():
    for text in ["1", "1 2 3", "1 3 2"]:
        conf = petal_to_sticks(parse_sequence(text))
        assert conf.n_segments == 3
        assert certify_embedded(conf)
        assert len(project_to_pd(conf, (0, 0, 1))) == 0


def test_trefoil_and_figure_eight(db):
    tre = petal_to_sticks(parse_sequence("1 3 5 2 4"))
    assert tre.n_segments == 8
    assert certify_embedded(tre)
    assert all(n == ["3_1"] for n in names_over_directions(tre, db))
    fig = petal_to_sticks(parse_sequence("1 3 5 2 7 4 6"))
    assert fig.n_segments == 12
    assert certify_embedded(fig)
    assert all(n == ["4_1"] for n in names_over_directions(fig, db))


def test_chirality_is_kept(db):
    conf = petal_to_sticks(parse_sequence("1 3 5 2 4"))
    target = db["3_1"].fingerprint
    for d in itertools.islice(generic_directions(), 5):
        assert fingerprint(project_to_pd(conf, d)) == target


def test_axis_view_is_not_generic():
    # every horizontal passes through the axis, so they all meet there
    conf = petal_to_sticks(parse_sequence("1 3 5 2 7 4 6"))
    with pytest.raises(NonGenericDirection):
        project_to_pd(conf, (0, 0, 1))
    with pytest.raises(NonGenericDirection):
        project_to_pd(conf, (0, 0, 0))


def test_json_roundtrip():
    conf = petal_to_sticks(parse_sequence("1 4 7 3 6 2 5"))
    again = StickConformation.from_json(json.loads(json.dumps(conf.to_json())))
    assert again == conf


def test_conformation_validation():
    with pytest.raises(ValueError):
        StickConformation([(0, 0, 0), (1, 0, 0)])
    with pytest.raises(ValueError):
        StickConformation([(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0)])
    with pytest.raises(ValueError):
        StickConformation([(0, 0, 0), (0, 0, 0), (1, 0, 0), (0, 1, 0)])


def test_segments_intersect_cases():
    o, x, y, z = (0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)
    mid = (Fraction(1), Fraction(1), Fraction(0))
    assert segments_intersect((o, (2, 2, 0)), (x, y))
    assert not segments_intersect((o, (2, 2, 0)), ((2, 0, 1), (0, 2, 1)))  # skew
    assert segments_intersect((o, x), (x, y))  # shared endpoint
    assert not segments_intersect((o, x), (y, (2, 2, 0)))  # parallel
    assert segments_intersect((o, x), ((1, 0, 0), (3, 0, 0)))  # collinear overlap
    assert not segments_intersect((o, (1, 0, 0)), ((2, 0, 0), (3, 0, 0)))  # collinear apart
    assert segments_intersect((o, z), ((0, 0, 1), (0, 1, 1)))  # T junction
    assert segments_intersect((mid, z), (o, (2, 2, 0)))


def test_a_colliding_polygon_is_rejected():
    # a bow tie: the two diagonals of a square cross at its centre
    bow = StickConformation([(0, 0, 0), (2, 2, 0), (2, 0, 0), (0, 2, 0)])
    assert not certify_embedded(bow)


def test_rows_up_to_nine_petals(db):
    for record in db:
        if not 5 <= record.table_petal_number <= 9:
            continue
        conf = petal_to_sticks(record.table_sequence)
        assert conf.n_segments <= 2 * (record.table_petal_number - 1)
        assert certify_embedded(conf), record.name
        names = db.names_for(fingerprint(project_to_pd(conf, next(generic_directions()))))
        assert record.name in names
