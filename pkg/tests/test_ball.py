"""Tests for the tight-sum dichotomy, the class list H, and norm queries."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from torusnorm.ball import (
    ball_as_json,
    compute_H,
    norm_eval,
    shortest_homotopic_length,
    tight_cycle,
    tight_sum,
    unit_ball,
)
from torusnorm.basis import good_short_basis
from torusnorm.oracle import brute_norm
from torusnorm.surface import homology_class, parse_graph, reverse_walk
from util import (
    bouquet,
    bouquet_a,
    bouquet_b,
    fixture,
    fixture_names,
    grid,
    grid_col_cycle,
    grid_diag,
    grid_row_cycle,
    random_torus,
)

TOUCH_REGRESSIONS = {
    "touch_at_shared_vertex": """vertices 3
edge 0 0 1 3/2
edge 1 0 2 9/4
edge 2 2 1 2
edge 3 1 2 2
edge 4 0 2 1/4
edge 5 1 2 2
rotation 0 1.0 0.0 4.0
rotation 1 0.1 2.1 5.0 3.0
rotation 2 1.1 4.1 5.1 2.0 3.1
""",
    "touch_with_parallel_edges": """vertices 3
edge 0 0 1 1/4
edge 1 0 2 5/2
edge 2 2 1 3/4
edge 3 1 0 5/2
edge 4 1 0 5/2
rotation 0 3.1 4.1 1.0 0.0
rotation 1 0.1 4.0 3.0 2.1
rotation 2 1.1 2.0
""",
}


def frac(w, g):
    return w.as_fraction(g.scale)


# -- tight_sum -----------------------------------------------------------------


def test_tight_sum_bouquet():
    g = bouquet()
    good_short_basis(g)
    c = tight_sum(g, bouquet_a(g), bouquet_b(g))
    assert c.homology_class == (1, 1)
    assert frac(c.weight, g) == 2


def test_tight_sum_grid():
    g = grid(3, 3)
    good_short_basis(g)
    c = tight_sum(g, grid_row_cycle(g, 3, 3), grid_col_cycle(g, 3, 3))
    assert c.homology_class == (1, 1)
    assert frac(c.weight, g) == 6
    assert c.is_simple()


def test_tight_sum_heavy_loop():
    g = bouquet(Fraction(1), Fraction(10))
    good_short_basis(g)
    c = tight_sum(g, bouquet_a(g), bouquet_b(g))
    assert frac(c.weight, g) == 11


# -- compute_H and unit_ball -----------------------------------------------------


def test_bouquet_H_prunes_diagonal():
    g = bouquet()
    H = compute_H(g)
    assert [e.cls for e in H] == [(1, 0), (0, 1), (-1, 0), (0, -1)]
    assert all(frac(e.weight, g) == 1 for e in H)


def test_bouquet_ball_is_a_square():
    ball = unit_ball(bouquet())
    assert len(ball.extremal) == 4
    assert {e.cls for e in ball.extremal} == {(1, 0), (0, 1), (-1, 0), (0, -1)}


def test_grid_ball_is_a_quadrilateral():
    for m, n in [(2, 3), (3, 3), (4, 4)]:
        g = grid(m, n)
        ball = unit_ball(g)
        got = {e.cls: frac(e.weight, g) for e in ball.extremal}
        assert got == {(1, 0): m, (-1, 0): m, (0, 1): n, (0, -1): n}


def test_grid_diag_ball_is_a_hexagon():
    g = grid_diag(2, 2)
    ball = unit_ball(g)
    got = {e.cls: frac(e.weight, g) for e in ball.extremal}
    assert got == {
        (1, 0): 2, (-1, 0): 2, (0, 1): 2, (0, -1): 2, (1, 1): 3, (-1, -1): 3,
    }


def test_staircase_H_contains_the_full_ladder():
    g = fixture("staircase_4.tgf")
    ball = unit_ball(g)
    hcls = {e.cls for e in ball.H}
    want = {(0, 1), (0, -1)}
    want |= {(s, s * j) for j in range(5) for s in (1, -1)}
    assert want <= hcls


def test_isospec_fixture_extremal_counts():
    assert len(unit_ball(fixture("isospec_hexagon.tgf")).extremal) == 6
    assert len(unit_ball(fixture("isospec_octagon.tgf")).extremal) == 8


def test_H_invariants_on_fixtures():
    for name in fixture_names():
        g = fixture(name)
        ball = unit_ball(g)
        H = ball.H
        n = len(H)
        assert len(ball.extremal) <= 4 * g.num_vertices + 5
        for i, e in enumerate(H):
            x, y = e.cls
            nx, ny = H[(i + 1) % n].cls
            assert x * ny - nx * y == 1, f"{name}: cones not unimodular"
            assert (-x, -y) in {h.cls for h in H}, f"{name}: not symmetric"
            assert e.cycle.is_simple()
            assert homology_class(g, e.cycle.darts) == e.cls
            assert e.cycle.weight == e.weight


def test_touch_regressions_match_oracle():
    for text in TOUCH_REGRESSIONS.values():
        g = parse_graph(text)
        ball = unit_ball(g)
        assert len(ball.H) == 6
        for x in range(-2, 3):
            for y in range(-2, 3):
                if (x, y) == (0, 0):
                    continue
                assert norm_eval(ball, (x, y)) == brute_norm(g, (x, y))[0]


# -- queries ---------------------------------------------------------------------


def test_norm_eval_zero_and_values():
    g = grid(3, 3)
    ball = unit_ball(g)
    assert frac(norm_eval(ball, (0, 0)), g) == 0
    assert frac(norm_eval(ball, (1, 2)), g) == 9
    assert frac(norm_eval(ball, (-2, -1)), g) == 9
    assert frac(norm_eval(ball, (5, 0)), g) == 15


def test_norm_eval_matches_oracle_on_random_graphs():
    rng = random.Random(20260816 + 2)
    for _ in range(6):
        g = random_torus(rng, max_vertices=7)
        ball = unit_ball(g)
        for x in range(-2, 3):
            for y in range(-2, 3):
                if (x, y) == (0, 0):
                    continue
                assert norm_eval(ball, (x, y)) == brute_norm(g, (x, y))[0]


def test_norm_axioms_random():
    rng = random.Random(20260816 + 3)
    g = random_torus(rng, max_vertices=9)
    ball = unit_ball(g)
    for _ in range(200):
        a = (rng.randint(-20, 20), rng.randint(-20, 20))
        b = (rng.randint(-20, 20), rng.randint(-20, 20))
        k = rng.randint(1, 5)
        na = norm_eval(ball, a)
        assert norm_eval(ball, (-a[0], -a[1])) == na
        assert norm_eval(ball, (k * a[0], k * a[1])) == na * k
        assert (na == ball.graph.zero_weight()) == (a == (0, 0))
        nsum = norm_eval(ball, (a[0] + b[0], a[1] + b[1]))
        assert not na + norm_eval(ball, b) < nsum


def test_shortest_homotopic_length():
    g = grid(3, 3)
    ball = unit_ball(g)
    row = grid_row_cycle(g, 3, 3).darts
    col = grid_col_cycle(g, 3, 3).darts
    assert frac(shortest_homotopic_length(ball, g, row + reverse_walk(row)), g) == 0
    assert frac(shortest_homotopic_length(ball, g, col * 3), g) == 9
    face = g.faces()[0]
    start = g.dart_vertex(face[0])
    detour = tuple(2 * (0 * 3 + j) for j in range(3))  # row through vertex 0
    if start == 0:
        assert frac(shortest_homotopic_length(ball, g, face + detour), g) == 3


def test_tight_cycle():
    g = bouquet()
    ball = unit_ball(g)
    c = tight_cycle(ball, g, (2, 1))
    assert frac(c.weight, g) == 3
    assert homology_class(g, c.darts) == (2, 1)
    gg = grid(3, 3)
    bb = unit_ball(gg)
    c = tight_cycle(bb, gg, (2, 0))
    assert frac(c.weight, gg) == 6
    first = bb.H[0]
    assert tight_cycle(bb, gg, first.cls).darts == first.cycle.darts
    with pytest.raises(ValueError):
        tight_cycle(bb, gg, (0, 0))


def test_tight_cycle_weight_matches_norm_random():
    rng = random.Random(20260816 + 4)
    g = random_torus(rng, max_vertices=8)
    ball = unit_ball(g)
    for _ in range(25):
        a = (rng.randint(-6, 6), rng.randint(-6, 6))
        if a == (0, 0):
            continue
        c = tight_cycle(ball, g, a)
        assert c.weight == norm_eval(ball, a)
        assert homology_class(g, c.darts) == a


def test_ball_as_json_shape():
    g = grid_diag(2, 2)
    ball = unit_ball(g)
    data = ball_as_json(ball)
    assert set(data) == {"H", "extremal"}
    assert len(data["H"]) == len(ball.H)
    entry = data["H"][0]
    assert set(entry) == {"class", "weight", "cycle"}
    assert entry["weight"] == {
        "num": int(frac(ball.H[0].weight, g)),
        "den": 1,
    } or set(entry["weight"]) == {"num", "den"}
    r2 = fixture("r2_bouquet.tgf")
    data2 = ball_as_json(unit_ball(r2))
    assert "coeffs" in data2["H"][0]["weight"]
