"""Tests for the cone-sweep spectrum enumeration."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from torusnorm.ball import norm_eval, unit_ball
from torusnorm.oracle import brute_spectrum
from torusnorm.spectrum import spectrum, spectrum_multiset
from util import bouquet, fixture, grid, random_torus


def fracs(items, g):
    return [it.value.as_fraction(g.scale) for it in items]


def test_bouquet_spectrum():
    g = bouquet()
    ball = unit_ball(g)
    assert fracs(spectrum(ball, 12), g) == [1] * 4 + [2] * 8
    assert spectrum_multiset(ball, 12) == [
        (g.weight_from_fraction(1), 4, True),
        (g.weight_from_fraction(2), 8, True),
    ]


def test_grid_3_3_spectrum():
    g = grid(3, 3)
    ball = unit_ball(g)
    items = spectrum(ball, 4)
    assert fracs(items, g) == [3, 3, 3, 3]
    assert sorted(it.cls for it in items) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert fracs(spectrum(ball, 8), g) == [3] * 4 + [6] * 4


def test_grid_3_4_multiset_truncation():
    g = grid(3, 4)
    ball = unit_ball(g)
    assert fracs(spectrum(ball, 8), g) == [3, 3, 4, 4, 6, 6, 7, 7]
    groups = [
        (v.as_fraction(g.scale), m, complete)
        for v, m, complete in spectrum_multiset(ball, 8)
    ]
    # The value-7 group really has four classes; at k = 8 it is cut short.
    assert groups == [(3, 2, True), (4, 2, True), (6, 2, True), (7, 2, False)]
    groups10 = [
        (v.as_fraction(g.scale), m, complete)
        for v, m, complete in spectrum_multiset(ball, 10)
    ]
    assert groups10 == [(3, 2, True), (4, 2, True), (6, 2, True), (7, 4, True)]


def test_isospec_fixtures_have_equal_spectra():
    ga = fixture("isospec_hexagon.tgf")
    gb = fixture("isospec_octagon.tgf")
    sa = fracs(spectrum(unit_ball(ga), 16), ga)
    sb = fracs(spectrum(unit_ball(gb), 16), gb)
    assert sa == sb == [2] * 4 + [3] * 4 + [4] * 8


def test_spectrum_rejects_bad_k():
    ball = unit_ball(bouquet())
    with pytest.raises(ValueError):
        spectrum(ball, 0)


def test_spectrum_shape_invariants():
    rng = random.Random(20260816 + 5)
    for _ in range(5):
        g = random_torus(rng, max_vertices=8)
        ball = unit_ball(g)
        items = spectrum(ball, 40)
        assert len(items) == 40
        seen = set()
        prev = None
        for it in items:
            assert it.cls != (0, 0)
            assert it.cls not in seen
            seen.add(it.cls)
            assert it.value == norm_eval(ball, it.cls)
            if prev is not None:
                assert not it.value < prev
            prev = it.value


def test_spectrum_matches_oracle():
    rng = random.Random(20260816 + 6)
    for _ in range(4):
        g = random_torus(rng, max_vertices=6)
        ball = unit_ball(g)
        items = spectrum(ball, 25)
        flat = []
        for w, classes in brute_spectrum(g, 25):
            flat += [(w, cls) for cls in classes]
        for it, (w, _) in zip(items, flat):
            assert it.value == w
        # Same classes per value group, not just same values.
        by_value: dict = {}
        for it in items:
            by_value.setdefault(it.value, set()).add(it.cls)
        for w, classes in brute_spectrum(g, 25):
            if w in by_value and len(by_value[w]) == len(classes):
                assert by_value[w] == set(classes)


def test_spectrum_r2_fixture():
    g = fixture("r2_bouquet.tgf")
    ball = unit_ball(g)
    items = spectrum(ball, 20)
    prev = None
    for it in items:
        if prev is not None:
            assert not it.value < prev
        prev = it.value
    # Lightest class is the loop with weight 2*o1 - o2 (about 0.586).
    assert items[0].value.coeffs == (2, -1)


def test_multiset_total_matches_k():
    g = grid(2, 4)
    ball = unit_ball(g)
    for k in (1, 5, 9, 16):
        groups = spectrum_multiset(ball, k)
        assert sum(m for _, m, _ in groups) == k
