"""Shared builders for test graphs.

Graphs are built through the text format on purpose: every test that uses a
builder also exercises the parser.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from torusnorm.surface import Cycle, EmbeddedGraph, parse_graph

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def fixture_names() -> list[str]:
    return sorted(p.name for p in FIXTURES.glob("*.tgf"))


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


def fixture(name: str) -> EmbeddedGraph:
    return parse_graph(fixture_text(name))


def dart_token(d: int) -> str:
    return f"{d >> 1}.{d & 1}"


def bouquet_text(wa="1", wb="1") -> str:
    """One vertex, loops a (edge 0) and b (edge 1), rotation a0 b0 a1 b1."""
    return (
        "vertices 1\n"
        f"edge 0 0 0 {wa}\n"
        f"edge 1 0 0 {wb}\n"
        "rotation 0 0.0 1.0 0.1 1.1\n"
    )


def bouquet(wa="1", wb="1") -> EmbeddedGraph:
    return parse_graph(bouquet_text(wa, wb))


def grid_text(m: int, n: int, wh="1", wv="1") -> str:
    """Torus grid C_m x C_n: vertex (i,j) -> id i*n+j, horizontal edge
    h(i,j): (i,j)->(i,j+1 mod n) with id i*n+j, vertical edge v(i,j):
    (i,j)->(i+1 mod m,j) with id m*n+i*n+j.  Rotation at each vertex is
    east, north, west, south (counterclockwise)."""
    assert m >= 2 and n >= 2
    lines = [f"vertices {m * n}"]

    def vid(i, j):
        return (i % m) * n + (j % n)

    def h(i, j):
        return i * n + j

    def v(i, j):
        return m * n + i * n + j

    for i in range(m):
        for j in range(n):
            lines.append(f"edge {h(i, j)} {vid(i, j)} {vid(i, j + 1)} {wh}")
    for i in range(m):
        for j in range(n):
            lines.append(f"edge {v(i, j)} {vid(i, j)} {vid(i + 1, j)} {wv}")
    for i in range(m):
        for j in range(n):
            east = dart_token(2 * h(i, j))
            north = dart_token(2 * v(i, j))
            west = dart_token(2 * h(i, (j - 1) % n) + 1)
            south = dart_token(2 * v((i - 1) % m, j) + 1)
            lines.append(f"rotation {vid(i, j)} {east} {north} {west} {south}")
    return "\n".join(lines) + "\n"


def grid(m: int, n: int, wh="1", wv="1") -> EmbeddedGraph:
    return parse_graph(grid_text(m, n, wh, wv))


def grid_diag_text(m: int, n: int, wh="1", wv="1", wd="1") -> str:
    """Torus grid plus one diagonal edge (0,0)->(1,1) with id 2*m*n, drawn
    inside the face with corners (0,0),(0,1),(1,1),(1,0)."""
    diag = 2 * m * n
    lines = []
    for line in grid_text(m, n, wh, wv).splitlines():
        parts = line.split()
        if parts[0] == "rotation" and parts[1] == "0":
            parts = parts[:3] + [f"{diag}.0"] + parts[3:]
        elif parts[0] == "rotation" and parts[1] == str(n + 1):
            parts = parts[:5] + [f"{diag}.1"] + parts[5:]
        lines.append(" ".join(parts))
        if parts[0] == "edge" and int(parts[1]) == diag - 1:
            lines.append(f"edge {diag} 0 {n + 1} {wd}")
    return "\n".join(lines) + "\n"


def grid_diag(m: int, n: int, wh="1", wv="1", wd="1") -> EmbeddedGraph:
    return parse_graph(grid_diag_text(m, n, wh, wv, wd))


def random_torus_text(rng, max_vertices=12, max_extra=3, weight_den=4) -> str:
    """Random cellular torus embedding by rejection sampling.

    Random connected multigraph (spanning tree plus extra edges, loops
    allowed) with a random rotation per vertex; accepted when the face
    count lands on E - V, i.e. genus one.  Weights are random positive
    quarters by default so denominators get exercised.
    """
    from torusnorm.surface import InvalidGraphError, validate

    while True:
        V = rng.randint(1, max_vertices)
        E = V + rng.randint(1, max_extra)
        ends = [(rng.randrange(v), v) for v in range(1, V)]
        while len(ends) < E:
            ends.append((rng.randrange(V), rng.randrange(V)))
        at = [[] for _ in range(V)]
        for e, (u, v) in enumerate(ends):
            at[u].append(2 * e)
            at[v].append(2 * e + 1)
        for lst in at:
            rng.shuffle(lst)
        lines = [f"vertices {V}"]
        for e, (u, v) in enumerate(ends):
            num = rng.randint(1, 3 * weight_den)
            lines.append(f"edge {e} {u} {v} {num}/{weight_den}")
        for v in range(V):
            toks = " ".join(dart_token(d) for d in at[v])
            lines.append(f"rotation {v} {toks}")
        text = "\n".join(lines) + "\n"
        g = parse_graph(text)
        if len(g.faces()) != E - V:
            continue
        try:
            g.require_valid()
        except InvalidGraphError:
            continue
        return text


def random_torus(rng, max_vertices=12, max_extra=3, weight_den=4) -> EmbeddedGraph:
    return parse_graph(random_torus_text(rng, max_vertices, max_extra, weight_den))


def grid_row_cycle(g: EmbeddedGraph, m: int, n: int, i: int = 0) -> Cycle:
    return Cycle.of(g, [2 * (i * n + j) for j in range(n)])


def grid_col_cycle(g: EmbeddedGraph, m: int, n: int, j: int = 0) -> Cycle:
    return Cycle.of(g, [2 * (m * n + i * n + j) for i in range(m)])


def bouquet_a(g: EmbeddedGraph) -> Cycle:
    return Cycle.of(g, [0])


def bouquet_b(g: EmbeddedGraph) -> Cycle:
    return Cycle.of(g, [2])
