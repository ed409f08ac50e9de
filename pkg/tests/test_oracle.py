"""Self-consistency tests for the brute-force reference implementations."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from torusnorm.basis import good_short_basis
from torusnorm.oracle import brute_norm, brute_spectrum
from util import bouquet, grid, random_torus


def test_brute_norm_bouquet():
    g = bouquet()
    good_short_basis(g)
    w, cert = brute_norm(g, (1, 0))
    assert w.as_fraction(g.scale) == 1
    assert cert.window >= 1
    assert cert.boundary_distance is None or not cert.boundary_distance < w


def test_brute_norm_grid():
    g = grid(3, 4)
    good_short_basis(g)
    assert brute_norm(g, (1, 1))[0].as_fraction(g.scale) == 7
    assert brute_norm(g, (2, 0))[0].as_fraction(g.scale) == 6
    assert brute_norm(g, (0, -1))[0].as_fraction(g.scale) == 4


def test_brute_norm_rejects_zero_class():
    g = bouquet()
    good_short_basis(g)
    with pytest.raises(ValueError):
        brute_norm(g, (0, 0))


def test_brute_norm_axioms():
    rng = random.Random(20260816 + 1)
    for trial in range(6):
        g = random_torus(rng, max_vertices=6)
        good_short_basis(g)
        for _ in range(6):
            ax = rng.randint(-3, 3)
            ay = rng.randint(-3, 3)
            bx = rng.randint(-3, 3)
            by = rng.randint(-3, 3)
            if (ax, ay) == (0, 0) or (bx, by) == (0, 0):
                continue
            na = brute_norm(g, (ax, ay))[0]
            assert brute_norm(g, (-ax, -ay))[0] == na
            k = rng.randint(2, 3)
            assert brute_norm(g, (k * ax, k * ay))[0] == na * k
            if (ax + bx, ay + by) != (0, 0):
                nsum = brute_norm(g, (ax + bx, ay + by))[0]
                assert not na + brute_norm(g, (bx, by))[0] < nsum


def test_brute_spectrum_bouquet():
    g = bouquet()
    good_short_basis(g)
    groups = brute_spectrum(g, 4)
    assert groups[0][0].as_fraction(g.scale) == 1
    assert sorted(groups[0][1]) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_brute_spectrum_grid():
    g = grid(3, 3)
    good_short_basis(g)
    groups = brute_spectrum(g, 8)
    values = [(w.as_fraction(g.scale), len(classes)) for w, classes in groups]
    assert values == [(3, 4), (6, 8)]


def test_brute_spectrum_shape():
    g = grid(2, 3, Fraction(1, 2), Fraction(3, 4))
    good_short_basis(g)
    groups = brute_spectrum(g, 10)
    prev = None
    total = 0
    for w, classes in groups:
        if prev is not None:
            assert prev < w
        prev = w
        assert len(classes) % 2 == 0  # central symmetry
        for cls in classes:
            assert tuple(-c for c in cls) in classes
        total += len(classes)
    assert total >= 10
