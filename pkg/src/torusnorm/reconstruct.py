"""Reconstruction: realize a rational polyhedral norm by a weighted graph.

A norm with finitely many extremal directions is realized by drawing one
closed geodesic per direction pair on the square torus and weighting the
resulting arrangement graph.  All geometry is exact: curves are straight
segments with rational offsets, intersections come from solving lattice
congruences over ``Fraction``, and vertex identity is the exact position
in the fundamental square, so the vertex-count formula is asserted
rather than hoped for.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .surface import EmbeddedGraph, homology_class, parse_graph

Vec = tuple[int, int]


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _canonical(vec: Sequence[int]) -> Vec:
    """Representative of the +-pair in the upper half plane.

    q > 0, or q = 0 and p > 0; raises on zero or imprimitive vectors.
    """
    p, q = int(vec[0]), int(vec[1])
    if (p, q) == (0, 0):
        raise ValueError("direction (0, 0) is not allowed")
    if math.gcd(abs(p), abs(q)) != 1:
        raise ValueError(f"direction {(p, q)} is not primitive")
    if q < 0 or (q == 0 and p < 0):
        return (-p, -q)
    return (p, q)


def _as_fraction(v) -> Fraction:
    if isinstance(v, float):
        return Fraction(str(v))
    return Fraction(v)


@dataclass(frozen=True)
class NormSpec:
    """Extremal data of a polyhedral norm on the plane.

    ``directions`` holds one primitive representative per +-pair of
    extremal directions, in the upper half plane, sorted by angle;
    ``values`` are their norms.  Build instances through :meth:`of`,
    which canonicalizes input and checks every invariant (primitivity,
    non-collinearity, positivity, strict convexity of the implied
    polygon).
    """

    directions: tuple[Vec, ...]
    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, directions: Iterable[Sequence[int]], values: Iterable) -> "NormSpec":
        dirs = [tuple(d) for d in directions]
        vals = [_as_fraction(v) for v in values]
        if len(dirs) != len(vals):
            raise ValueError("directions and values differ in length")
        by_dir: dict[Vec, Fraction] = {}
        for d, v in zip(dirs, vals):
            if v <= 0:
                raise ValueError(f"norm value for {tuple(d)} must be positive")
            c = _canonical(d)
            if c in by_dir and by_dir[c] != v:
                raise ValueError(f"conflicting values for direction pair {c}")
            by_dir[c] = v

        def angle_key(d: Vec):
            p, q = d
            return (0, 0) if q == 0 else (1, Fraction(-p, q))

        order = sorted(by_dir, key=angle_key)
        if len(order) < 2:
            raise ValueError("a norm needs at least 2 extremal direction pairs")
        spec = cls(tuple(order), tuple(by_dir[d] for d in order))
        full = spec._full()
        m = len(full)
        for i in range(m):
            (da, va), (db, vb), (dc, vc) = full[i - 1], full[i], full[(i + 1) % m]
            wa = (Fraction(da[0], 1) / va, Fraction(da[1], 1) / va)
            wb = (Fraction(db[0], 1) / vb, Fraction(db[1], 1) / vb)
            wc = (Fraction(dc[0], 1) / vc, Fraction(dc[1], 1) / vc)
            turn = _cross((wb[0] - wa[0], wb[1] - wa[1]), (wc[0] - wb[0], wc[1] - wb[1]))
            if turn <= 0:
                raise ValueError(
                    f"direction {db} is not extremal for the given values"
                )
        return spec

    def _full(self) -> list[tuple[Vec, Fraction]]:
        """Both half planes, counterclockwise; consecutive cones are proper."""
        out = [(d, v) for d, v in zip(self.directions, self.values)]
        out += [((-d[0], -d[1]), v) for d, v in zip(self.directions, self.values)]
        return out

    def value(self, alpha: Sequence[int]) -> Fraction:
        """Piecewise-linear extension at an integer (or rational) vector."""
        a = (Fraction(alpha[0]), Fraction(alpha[1]))
        if a == (0, 0):
            return Fraction(0)
        full = self._full()
        m = len(full)
        for i in range(m):
            di, vi = full[i]
            dj, vj = full[(i + 1) % m]
            lo = _cross(di, a)
            hi = _cross(a, dj)
            if lo >= 0 and hi > 0:
                det = _cross(di, dj)
                assert det > 0
                return (hi * vi + lo * vj) / det
        raise AssertionError("cone location failed")


def norm_spec_from_json(text: str) -> NormSpec:
    """Parse ``{"directions": [[p, q], ...], "values": [...]}``.

    Values may be integers, fractions as strings ("3/2"), or decimal
    literals; floats are read as their decimal meaning.
    """
    data = json.loads(text)
    if not isinstance(data, dict) or "directions" not in data or "values" not in data:
        raise ValueError('norm JSON needs "directions" and "values" keys')
    return NormSpec.of(data["directions"], data["values"])


def spec_of_ball(ball) -> NormSpec:
    """Extremal data of a computed unit ball as a NormSpec.

    Requires exact rational weights (a single exact generator); other
    generator systems have no faithful Fraction values.
    """
    g = ball.graph
    if not (g.system.r == 1 and g.system.precision[0] is None):
        raise ValueError("norm extraction needs exact rational weights")
    dirs, vals = [], []
    for e in ball.extremal:
        p, q = e.cls
        if q > 0 or (q == 0 and p > 0):
            dirs.append(e.cls)
            vals.append(e.weight.as_fraction(g.scale))
    return NormSpec.of(dirs, vals)


# ---------------------------------------------------------------------------
# Curve arrangements on the square torus


class _Degenerate(Exception):
    """Arrangement hits a triple point or coincident intersection."""


Curve = tuple[Vec, tuple[Fraction, Fraction]]


def _intersections(i: int, j: int, ci: Curve, cj: Curve):
    """All crossings of two non-parallel curves, as (t on i, s on j).

    The curve ``((p, q), (x, y))`` is t -> (x + t p, y + t q) mod 1 for
    t in [0, 1).  Crossings solve the system modulo integer translates;
    the translate window is bounded by the parameter ranges.
    """
    (pi, qi), (xi, yi) = ci
    (pj, qj), (xj, yj) = cj
    det = pi * (-qj) - (-pj) * qi
    assert det != 0
    m_lo = math.floor(xi - xj + min(0, pi) - max(0, pj)) - 1
    m_hi = math.ceil(xi - xj + max(0, pi) - min(0, pj)) + 1
    k_lo = math.floor(yi - yj + min(0, qi) - max(0, qj)) - 1
    k_hi = math.ceil(yi - yj + max(0, qi) - min(0, qj)) + 1
    found = []
    for m in range(m_lo, m_hi + 1):
        for k in range(k_lo, k_hi + 1):
            dx = xj - xi + m
            dy = yj - yi + k
            t = Fraction(dx * (-qj) - (-pj) * dy, det)
            s = Fraction(pi * dy - qi * dx, det)
            if 0 <= t < 1 and 0 <= s < 1:
                found.append((t, s))
    assert len(found) == abs(pi * qj - pj * qi), (
        "crossing count disagrees with the intersection number"
    )
    return found


def _arrangement_graph(
    curves: Sequence[Curve],
    arc_value: Callable[[int, Fraction], Fraction],
) -> tuple[EmbeddedGraph, list[tuple[int, ...]]]:
    """Arrangement graph of the curve system, plus one cycle per curve.

    ``arc_value(i, dt)`` is the weight of an arc of curve i spanning
    parameter length dt.  Raises _Degenerate when two crossings coincide
    (which also covers triple points).  The marking is fixed so that
    every curve's homology class is its slope vector.
    """
    n = len(curves)
    position_of: dict[tuple[Fraction, Fraction], int] = {}
    crossing: list[tuple[int, Fraction, int, Fraction]] = []
    events: list[list[tuple[Fraction, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if _cross(curves[i][0], curves[j][0]) == 0:
                continue
            (pi, qi), (xi, yi) = curves[i]
            for t, s in _intersections(i, j, curves[i], curves[j]):
                pos = ((xi + t * pi) % 1, (yi + t * qi) % 1)
                if pos in position_of:
                    raise _Degenerate(f"coincident crossings at {pos}")
                vid = len(crossing)
                position_of[pos] = vid
                crossing.append((i, t, j, s))
                events[i].append((t, vid))
                events[j].append((s, vid))
    expected = sum(
        abs(_cross(curves[i][0], curves[j][0]))
        for i in range(n)
        for j in range(i + 1, n)
    )
    assert len(crossing) == expected, "vertex count formula violated"

    edges: list[tuple[int, int, Fraction]] = []
    out_dart: dict[tuple[int, int], int] = {}
    in_dart: dict[tuple[int, int], int] = {}
    cycles: list[tuple[int, ...]] = []
    for i in range(n):
        evs = sorted(events[i])
        assert evs, "every curve must cross some other curve"
        assert all(evs[k][0] != evs[k + 1][0] for k in range(len(evs) - 1))
        cyc = []
        for k, (t, vid) in enumerate(evs):
            t2, vid2 = evs[(k + 1) % len(evs)]
            dt = t2 - t if k + 1 < len(evs) else t2 + 1 - t
            eid = len(edges)
            edges.append((vid, vid2, arc_value(i, dt)))
            out_dart[(i, vid)] = 2 * eid
            in_dart[(i, vid2)] = 2 * eid + 1
            cyc.append(2 * eid)
        cycles.append(tuple(cyc))

    lines = [f"vertices {len(crossing)}"]
    for eid, (u, v, w) in enumerate(edges):
        lines.append(f"edge {eid} {u} {v} {w}")
    for vid, (i, _t, j, _s) in enumerate(crossing):
        if _cross(curves[i][0], curves[j][0]) < 0:
            i, j = j, i
        darts = (
            out_dart[(i, vid)],
            out_dart[(j, vid)],
            in_dart[(i, vid)],
            in_dart[(j, vid)],
        )
        tokens = " ".join(f"{d >> 1}.{d & 1}" for d in darts)
        lines.append(f"rotation {vid} {tokens}")
    g = parse_graph("\n".join(lines) + "\n")
    g.require_valid()
    assert g.num_vertices == expected
    assert all(len(r) == 4 for r in g.rotation)

    # marking: two non-parallel curves pin the coordinates, then every
    # curve must sit in the class of its slope vector
    slope0 = curves[0][0]
    jj = next(j for j in range(1, n) if _cross(slope0, curves[j][0]) != 0)
    prov0 = g.provisional_class(cycles[0])
    provj = g.provisional_class(cycles[jj])
    dj = curves[jj][0]
    det = _cross(prov0, provj)
    assert det != 0
    num = (
        (slope0[0] * provj[1] - dj[0] * prov0[1],
         dj[0] * prov0[0] - slope0[0] * provj[0]),
        (slope0[1] * provj[1] - dj[1] * prov0[1],
         dj[1] * prov0[0] - slope0[1] * provj[0]),
    )
    assert all(e % det == 0 for row in num for e in row)
    matrix = tuple(tuple(e // det for e in row) for row in num)
    g.fix_coords(matrix)
    for i in range(n):
        assert homology_class(g, cycles[i]) == curves[i][0], (
            "curve class does not match its slope"
        )
    return g, cycles


def _offsets(n: int, attempt: int) -> list[tuple[Fraction, Fraction]]:
    """Deterministic distinct offsets; the denominators grow on retry."""
    bx = n + 1 + 3 * attempt
    return [(Fraction(i + 1, bx), Fraction(i + 1, bx + 1)) for i in range(n)]


_MAX_ATTEMPTS = 32


def graph_from_norm(spec: NormSpec) -> EmbeddedGraph:
    """Weighted 4-valent graph on the torus whose norm is ``spec``.

    One closed geodesic per direction pair, at deterministic generic
    offsets; each arrangement edge is weighted by the norm of its lift's
    displacement.  The result is validated, 4-regular, has exactly
    sum_{i<j} |cross(d_i, d_j)| vertices, and is marked so curve classes
    equal their slopes.
    """
    dirs = spec.directions
    if len(dirs) < 2:
        raise ValueError("a norm needs at least 2 extremal direction pairs")
    for attempt in range(_MAX_ATTEMPTS):
        curves = [(d, off) for d, off in zip(dirs, _offsets(len(dirs), attempt))]
        try:
            g, _cycles = _arrangement_graph(
                curves, lambda i, dt: dt * spec.values[i]
            )
        except _Degenerate:
            continue
        return g
    raise ValueError(
        f"offsets fail genericity after {_MAX_ATTEMPTS} retries "
        "(degenerate spec)"
    )
