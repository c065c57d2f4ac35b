import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from petal.errors import Empty, EvenLength, IndexOutOfRange, NotAPermutation
from petal.sequence import (PetalSequence, canonicalize, compose, is_canonical, mirror, orbit,
                            parse_sequence, random_sequence, reduce, reduce_step, stabilize,
                            torus_sequence, validate)


@st.composite
def sequences(draw, max_p=11):
    p = draw(st.sampled_from([p for p in range(1, max_p + 1, 2)]))
    return validate(draw(st.permutations(range(1, p + 1))))


def test_validate_examples():
    s = validate((1, 3, 5, 2, 4))
    assert s.p == 5 and s.levels == (1, 3, 5, 2, 4)
    with pytest.raises(EvenLength):
        validate((1, 3, 2, 4))
    with pytest.raises(NotAPermutation):
        validate((1, 2, 2))
    with pytest.raises(NotAPermutation):
        validate((0, 1, 2))
    with pytest.raises(NotAPermutation):
        validate((1, 2.0, 3))
    with pytest.raises(Empty):
        validate(())


def test_validate_preserves_order():
    assert validate((3, 5, 2, 4, 1)).levels == (3, 5, 2, 4, 1)


def test_parse_forms():
    for text in ["1 3 5 2 4", "(1,3,5,2,4)", "1, 3, 5, 2, 4", " (1 3 5 2 4) "]:
        assert parse_sequence(text).levels == (1, 3, 5, 2, 4)
    with pytest.raises(NotAPermutation):
        parse_sequence("1 a 3")
    assert str(parse_sequence("(1,3,2)")) == "1 3 2"


def test_canonicalize_examples():
    assert canonicalize(validate((3, 5, 2, 4, 1))).levels == (1, 3, 5, 2, 4)
    assert canonicalize(validate((1,))).levels == (1,)
    # oracle: explicit orbit minimum
    s = validate((1, 3, 5, 2, 4))
    assert canonicalize(s).levels == min(orbit(s))


@given(sequences())
def test_canonicalize_is_orbit_minimum(s):
    c = canonicalize(s)
    assert c.levels == min(orbit(s))
    assert canonicalize(c) == c
    assert is_canonical(c.levels)
    assert validate(c.levels) == c


def test_orbit_sizes_divide_group_order():
    for p in (3, 5, 7):
        for perm in itertools.permutations(range(1, p + 1)):
            assert (2 * p) % len(orbit(PetalSequence(perm))) == 0


def test_reduce_examples():
    assert reduce(validate((1, 3, 2))).levels == (1,)
    remark = validate((1, 9, 3, 5, 7, 10, 2, 4, 8, 11, 6))
    assert reduce(remark) == remark
    assert reduce_step(remark) is None
    s = validate((1, 2, 5, 3, 7, 4, 6))
    assert reduce_step(s).levels == (3, 1, 5, 2, 4)
    # the fixed point continues past the single step
    assert reduce(s).levels == (1,)


def test_reduce_wraps_cyclically():
    # the only pair, (3, 4), sits across the end of the sequence
    assert reduce_step(validate((4, 2, 5, 1, 3))).levels == (2, 3, 1)


@given(sequences())
def test_reduce_is_idempotent_and_irreducible(s):
    r = reduce(s)
    assert reduce(r) == r
    assert len(r) <= len(s) and len(r) % 2 == 1
    if len(r) >= 3:
        assert all(abs(r[i] - r[(i + 1) % len(r)]) != 1 for i in range(len(r)))


def test_every_short_sequence_reduces_to_one():
    for perm in itertools.permutations((1, 2, 3)):
        assert reduce(validate(perm)).levels == (1,)


def test_stabilize():
    s = stabilize(validate((1,)), 0)
    assert len(s) == 3 and reduce(s).levels == (1,)
    t = validate((1, 3, 5, 2, 4))
    for k in range(6):
        u = stabilize(t, k)
        assert len(u) == 7
        validate(u.levels)
    with pytest.raises(IndexOutOfRange):
        stabilize(t, 6)
    with pytest.raises(IndexOutOfRange):
        stabilize(t, -1)


@given(sequences(max_p=9), st.data())
def test_stabilize_then_reduce_never_grows(s, data):
    k = data.draw(st.integers(0, s.p))
    u = stabilize(s, k)
    validate(u.levels)
    assert len(reduce(u)) <= s.p


def test_compose_length_and_identity():
    t = validate((1, 3, 5, 2, 4))
    assert compose(validate((1,)), t).p == 5
    assert compose(t, t).p == 9
    assert compose(t, validate((1, 3, 5, 2, 7, 4, 6))).p == 11


@given(sequences(max_p=7), sequences(max_p=7))
def test_compose_is_a_permutation(a, b):
    c = compose(a, b)
    assert c.p == a.p + b.p - 1
    validate(c.levels)


def test_mirror():
    assert mirror(validate((1,))).levels == (1,)
    assert mirror(validate((1, 3, 5, 2, 4))).levels == (5, 3, 1, 4, 2)


@given(sequences())
def test_mirror_involution(s):
    assert mirror(mirror(s)) == s


def test_torus_sequences():
    assert torus_sequence(2).levels == (1, 3, 5, 2, 4)
    assert torus_sequence(3).levels == (1, 4, 7, 3, 6, 2, 5)
    assert torus_sequence(4).levels == (1, 5, 9, 4, 8, 3, 7, 2, 6)
    with pytest.raises(ValueError):
        torus_sequence(1)


def test_random_sequence_determinism():
    assert random_sequence(1, 99).levels == (1,)
    assert random_sequence(5, 7) == random_sequence(5, 7)
    with pytest.raises(EvenLength):
        random_sequence(4, 0)


def test_random_sequence_uniform():
    n = 100_000
    counts = Counter(random_sequence(5, seed).levels for seed in range(n))
    assert len(counts) == 120
    expected = n / 120
    sigma = (expected * (1 - 1 / 120)) ** 0.5
    assert all(abs(c - expected) < 4 * sigma for c in counts.values())
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    # 119 degrees of freedom; the 99.9% quantile is about 170
    assert chi2 < 170


@settings(max_examples=50)
@given(st.permutations(range(1, 8)))
def test_validate_commutes_with_canonicalize(perm):
    c = canonicalize(validate(perm))
    assert validate(c.levels) == c
