#!/usr/bin/env python3
"""Regenerate the derived fixtures in tests/fixtures.

Two fixture families are products of the reconstruction machinery rather
than hand-written text, so they are frozen by this script and a test
diffs the committed files against its output.

* staircase_K.tgf for K = 1..5: reconstructions of a norm family whose
  ball gains extremal directions as K grows.  Directions are (0,1) plus
  (1,j) for j = 0..K with values c = (2K^2+2K-1)/(2K^2) and
  t_j = 1 + j + j(j-1)/(2K^2); the quadratic bump keeps every direction
  strictly extremal (consecutive slopes of t_j differ, and the two
  boundary corners against (0,1) turn strictly).  The family gives the
  ball machinery inputs with growing |H|.

* isospec_hexagon.tgf / isospec_octagon.tgf: two arrangements of four
  weight-1/2 curves with equal length spectra but different unit balls
  (a hexagon with 6 extremal points and an octagon with 8).  Slopes and
  offsets are pinned here so the arrangements stay simple (12 vertices,
  24 edges each).
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from torusnorm.reconstruct import NormSpec, _arrangement_graph, graph_from_norm
from torusnorm.surface import to_text

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

HALF = Fraction(1, 2)

ISOSPEC = {
    "isospec_hexagon.tgf": (
        [(1, 2), (-1, 2), (1, 0), (1, 0)],
        [
            (Fraction(1, 5), Fraction(1, 7)),
            (Fraction(2, 5), Fraction(2, 7)),
            (Fraction(3, 5), Fraction(3, 7)),
            (Fraction(4, 5), Fraction(5, 7)),
        ],
    ),
    "isospec_octagon.tgf": (
        [(1, 0), (0, 1), (1, 2), (-2, 1)],
        [
            (Fraction(1, 5), Fraction(1, 7)),
            (Fraction(2, 5), Fraction(2, 7)),
            (Fraction(3, 5), Fraction(3, 7)),
            (Fraction(4, 5), Fraction(4, 7)),
        ],
    ),
}


def staircase_spec(k: int) -> NormSpec:
    directions = [(0, 1)] + [(1, j) for j in range(k + 1)]
    values = [Fraction(2 * k * k + 2 * k - 1, 2 * k * k)]
    values += [1 + j + Fraction(j * (j - 1), 2 * k * k) for j in range(k + 1)]
    return NormSpec.of(directions, values)


def generate() -> dict[str, str]:
    out: dict[str, str] = {}
    for k in range(1, 6):
        out[f"staircase_{k}.tgf"] = to_text(graph_from_norm(staircase_spec(k)))
    for name, (slopes, offsets) in ISOSPEC.items():
        curves = list(zip(slopes, offsets))
        g, _ = _arrangement_graph(curves, lambda i, dt: HALF)
        out[name] = to_text(g)
    return out


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    for name, text in sorted(generate().items()):
        (FIXTURES / name).write_text(text)
        print(f"wrote {name} ({len(text.splitlines())} lines)")


if __name__ == "__main__":
    main()
