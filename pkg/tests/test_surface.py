"""Tests for parsing, validation, weights, homology and intersections."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from torusnorm.basis import good_short_basis
from torusnorm.surface import (
    Cycle,
    EmbeddedGraph,
    GeneratorSystem,
    NotClosedError,
    ParseError,
    RATIONAL,
    Weight,
    WeightOrderError,
    algebraic_intersection,
    homology_class,
    parse_graph,
    reverse_walk,
    to_text,
    validate,
    walk_weight,
)
from util import (
    bouquet,
    bouquet_text,
    fixture,
    fixture_names,
    fixture_text,
    grid,
    grid_col_cycle,
    grid_row_cycle,
    random_torus_text,
)


# -- parsing and serialization ------------------------------------------------


def test_parse_bouquet():
    g = bouquet()
    assert g.num_vertices == 1
    assert g.num_edges == 2
    assert g.rotation[0] == (0, 2, 1, 3)
    assert g.edge_weight(0).as_fraction(g.scale) == 1


def test_parse_comments_and_blank_lines():
    g = parse_graph("# a torus\n\nvertices 1\nedge 0 0 0 1\nedge 1 0 0 1\n\nrotation 0 0.0 1.0 0.1 1.1\n")
    assert validate(g).ok


def test_parse_rational_weights_share_one_scale():
    g = parse_graph(bouquet_text("1/2", "1/3"))
    assert g.scale == 6
    assert g.edge_weight(0).coeffs == (3,)
    assert g.edge_weight(1).coeffs == (2,)
    assert g.edge_weight(0).as_fraction(g.scale) == Fraction(1, 2)


def test_parse_rejects_malformed_input():
    for text in [
        "edge 0 0 0 1\n",  # no vertices line
        "vertices 1\nedge 0 0 0 1\nrotation 0 0.0 0.1\nrotation 0 0.0 0.1\n",
        "vertices 1\nedge 0 0 1 1\nrotation 0 0.0 0.1\n",  # endpoint out of range
        "vertices 1\nedge 0 0 0 1\nrotation 0 0.0 5.1\n",  # unknown edge in rotation
        "vertices 1\nedge 0 0 0 0x1\nrotation 0 0.0 0.1\n",  # bad weight token
        "vertices 1\nedge 0 0 0 1 2\nrotation 0 0.0 0.1\n",  # too many coefficients
        "vertices 1\ngenerators 2\ngen 1 1.0 6\nedge 0 0 0 1\nrotation 0 0.0 0.1\n",
    ]:
        with pytest.raises(ParseError):
            parse_graph(text)


def test_to_text_round_trip_on_fixtures():
    for name in fixture_names():
        g = fixture(name)
        text = to_text(g)
        h = parse_graph(text)
        assert h.num_vertices == g.num_vertices
        assert h.rotation == g.rotation
        assert [e[:2] for e in h.edges] == [e[:2] for e in g.edges]
        assert [e[2].coeffs for e in h.edges] == [e[2].coeffs for e in g.edges]
        assert h.scale == g.scale
        assert h.system.r == g.system.r
        assert to_text(h) == text


# -- validation ---------------------------------------------------------------


def test_validate_bouquet_report():
    rep = validate(bouquet())
    assert rep.ok
    assert (rep.num_vertices, rep.num_edges, rep.num_faces) == (1, 2, 1)
    assert rep.summary() == "OK genus=1 V=1 E=2 F=1"


def test_validate_sphere_rotation_rejected():
    # Interleaving both loops is the torus; nesting them is the sphere.
    g = parse_graph("vertices 1\nedge 0 0 0 1\nedge 1 0 0 1\nrotation 0 0.0 0.1 1.0 1.1\n")
    rep = validate(g)
    assert not rep.ok
    assert rep.num_faces == 3
    assert any("Euler" in p for p in rep.problems)


def test_validate_grid():
    rep = validate(grid(3, 3))
    assert rep.ok
    assert rep.num_faces == 9


def test_validate_disconnected():
    g = parse_graph(
        "vertices 2\n"
        "edge 0 0 0 1\nedge 1 0 0 1\nedge 2 1 1 1\nedge 3 1 1 1\n"
        "rotation 0 0.0 1.0 0.1 1.1\n"
        "rotation 1 2.0 3.0 2.1 3.1\n"
    )
    rep = validate(g)
    assert not rep.ok
    assert any("disconnected" in p for p in rep.problems)


def _rejected(text: str) -> bool:
    try:
        g = parse_graph(text)
    except ParseError:
        return True
    return not validate(g).ok


def _corruptions(text: str) -> list[str]:
    """Single-field corruptions: vertex count, endpoint, weight sign,
    and a dart dropped from or duplicated in a rotation line."""
    lines = text.splitlines()
    first_edge = next(i for i, l in enumerate(lines) if l.startswith("edge"))
    first_rot = next(i for i, l in enumerate(lines) if l.startswith("rotation"))
    etok = lines[first_edge].split()
    rtok = lines[first_rot].split()
    num_vertices = int(lines[0].split()[1])
    out = []

    def with_line(i: int, line: str) -> str:
        return "\n".join(lines[:i] + [line] + lines[i + 1 :]) + "\n"

    out.append(with_line(0, f"vertices {num_vertices + 1}"))
    ncoeff = len(etok) - 4
    for bad in ("0", "-1"):
        out.append(with_line(first_edge, " ".join(etok[:4] + [bad] * ncoeff)))
    if num_vertices > 1:
        u = (int(etok[2]) + 1) % num_vertices
        out.append(with_line(first_edge, " ".join(etok[:2] + [str(u)] + etok[3:])))
    out.append(with_line(first_rot, " ".join(rtok[:-1])))
    out.append(with_line(first_rot, " ".join(rtok + [rtok[2]])))
    return out


def test_validate_rejects_single_field_corruptions():
    for name in fixture_names():
        text = fixture_text(name)
        assert validate(parse_graph(text)).ok
        for corrupted in _corruptions(text):
            assert _rejected(corrupted), f"{name}: corruption not rejected"


# -- weights ------------------------------------------------------------------


def test_weight_arithmetic_is_exact():
    w = Weight((3,))
    v = Weight((2,))
    assert (w + v).coeffs == (5,)
    assert (w - v).coeffs == (1,)
    assert (w * 4).coeffs == (12,)
    assert (-w).coeffs == (-3,)
    assert w != v
    assert w == Weight((3,))
    assert v < w < w + v


def test_weight_r2_comparisons():
    sysd = GeneratorSystem([("1.0", 6), ("1.414213", 6)])
    one = Weight((1, 0), sysd)
    rt2 = Weight((0, 1), sysd)
    assert one < rt2
    assert rt2 - one < one
    # Proportional coefficient vectors compare exactly, no intervals needed.
    assert Weight((2, 2), sysd) > Weight((1, 1), sysd)
    assert Weight((1, 1), sysd) == Weight((1, 1), sysd)


def test_weight_order_error_at_stated_precision():
    coarse = GeneratorSystem([("2.0", 1), ("1.0", 1)])
    a = Weight((1, 0), coarse)
    b = Weight((0, 2), coarse)
    with pytest.raises(WeightOrderError):
        a < b  # noqa: B015 (the comparison itself must raise)


def test_weight_incompatible_systems_rejected():
    other = GeneratorSystem([("1", None)])
    with pytest.raises(ValueError):
        Weight((1,), RATIONAL) + Weight((1,), other)


# -- homology and intersections ----------------------------------------------


def test_homology_of_basis_and_faces():
    g = bouquet()
    basis = good_short_basis(g)
    assert homology_class(g, basis.a.darts) == (1, 0)
    assert homology_class(g, basis.b.darts) == (0, 1)
    for face in g.faces():
        assert homology_class(g, face) == (0, 0)


def test_homology_additivity_and_reversal():
    g = grid(3, 3)
    good_short_basis(g)
    row = grid_row_cycle(g, 3, 3).darts
    col = grid_col_cycle(g, 3, 3).darts
    both = row + col  # share vertex 0
    assert (
        homology_class(g, both)
        == tuple(map(sum, zip(homology_class(g, row), homology_class(g, col))))
    )
    assert homology_class(g, reverse_walk(row)) == tuple(
        -c for c in homology_class(g, row)
    )


def test_homology_rejects_open_walk():
    g = grid(3, 3)
    good_short_basis(g)
    with pytest.raises(NotClosedError):
        homology_class(g, (0,))


def test_intersection_pairing():
    g = bouquet()
    basis = good_short_basis(g)
    assert algebraic_intersection(g, basis.a, basis.b) == 1
    assert algebraic_intersection(g, basis.a, basis.a) == 0
    assert algebraic_intersection(g, basis.b, basis.a) == -1


def test_intersection_is_bilinear_formula():
    rng = random.Random(20260816)
    for trial in range(10):
        g = bouquet() if trial == 0 else grid(2 + trial % 3, 2 + trial // 3 % 3)
        basis = good_short_basis(g)
        a, b = basis.a, basis.b
        for u, v in [(a, b), (b, a), (a, a)]:
            xu, yu = homology_class(g, u.darts)
            xv, yv = homology_class(g, v.darts)
            assert algebraic_intersection(g, u, v) == xu * yv - xv * yu


def test_random_torus_texts_validate():
    rng = random.Random(20260816)
    for _ in range(25):
        assert validate(parse_graph(random_torus_text(rng))).ok


def test_cycle_helpers():
    g = grid(3, 4)
    row = grid_row_cycle(g, 3, 4)
    assert row.is_simple()
    assert len(row) == 4
    assert row.weight == walk_weight(g, row.darts)
    rev = row.reversed()
    assert rev.darts == tuple(d ^ 1 for d in reversed(row.darts))
    assert rev.weight == row.weight
