"""Universal-cover machinery: lifting walks, certified shortest searches in
the lifted plane, and cutting the torus along one cycle (annulus) or along
the union of a good pair (hexagonal disk).

Lifted vertices are pairs ``(v, (tx, ty))``: a base vertex plus the Z^2
translation of the fundamental-domain copy it lies in.  Internal searches
run in the provisional coordinates of :mod:`torusnorm.surface` (no marking
needed); the public :func:`lift_walk` speaks marked coordinates.

Cut domains are plain graphs with back-references to the base graph: every
cut edge remembers the base dart its forward traversal projects to, so paths
found inside a cut domain project to walks of the base graph directly.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from torusnorm.surface import (
    Cycle,
    EmbeddedGraph,
    InvalidGraphError,
    Weight,
    twin,
    walk_vertices,
)

LiftedVertex = tuple[int, tuple[int, int]]


def _edge_costs(g: EmbeddedGraph):
    """Per-edge costs plus the zero: plain ints for r = 1 (fast heap keys),
    exact Weights otherwise."""
    if g.system.r == 1:
        return [w.coeffs[0] for (_, _, w) in g.edges], 0
    return [w for (_, _, w) in g.edges], g.zero_weight()


def _internal_cost(g: EmbeddedGraph, value):
    """Convert a public Weight to the internal distance representation."""
    if value is None:
        return None
    if g.system.r == 1 and isinstance(value, Weight):
        return value.coeffs[0]
    return value


# ---------------------------------------------------------------------------
# Lifting


def lift_walk(g: EmbeddedGraph, walk: Sequence[int], start: LiftedVertex):
    """Lift a walk to the universal cover from the given lifted vertex.

    Returns ``(lifted_darts, end)`` where ``lifted_darts`` is a list of
    ``(dart, translation_of_tail)`` and ``end`` is the lifted endpoint.
    Translations are in marked coordinates; for a closed walk,
    ``end - start`` equals the walk's homology class.
    """
    v, (tx, ty) = start
    if walk and g.dart_vertex(walk[0]) != v:
        raise ValueError("walk does not start at the projection of start")
    lifted = []
    for d in walk:
        if g.dart_vertex(d) != v:
            raise ValueError(f"dart {d} does not continue the walk")
        lifted.append((d, (tx, ty)))
        ox, oy = g.to_coords(g.dart_offset(d))
        tx, ty = tx + ox, ty + oy
        v = g.head(d)
    return lifted, (v, (tx, ty))


# ---------------------------------------------------------------------------
# Certified windowed search


class _Pruned(Exception):
    pass


def _windowed_systole_run(g, source, W, cutoff, costs, zero):
    """One Dijkstra over the window max(|tx|,|ty|) <= W.

    Returns (candidate_dist, target_node, parents, certified); raises
    _Pruned when every continuation is at least the cutoff.
    """
    rot = g.rotation
    offs = [g.dart_offset(d) for d in range(2 * g.num_edges)]
    heads = [g.head(d) for d in range(2 * g.num_edges)]
    start = (source, 0, 0)
    dist = {start: zero}
    parents: dict = {}
    heap = [(zero, 0, start)]
    counter = 1
    done = set()
    min_boundary = None
    while heap:
        dsum, _, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        if cutoff is not None and cutoff < dsum:
            raise _Pruned
        v, tx, ty = node
        if v == source and (tx, ty) != (0, 0):
            certified = min_boundary is None or not min_boundary < dsum
            return dsum, node, parents, certified
        if max(abs(tx), abs(ty)) == W:
            if min_boundary is None or dsum < min_boundary:
                min_boundary = dsum
        for d in rot[v]:
            ox, oy = offs[d]
            nx, ny = tx + ox, ty + oy
            if abs(nx) > W or abs(ny) > W:
                continue
            nnode = (heads[d], nx, ny)
            if nnode in done:
                continue
            nd = dsum + costs[d >> 1]
            old = dist.get(nnode)
            if old is None or nd < old:
                dist[nnode] = nd
                parents[nnode] = (node, d)
                heapq.heappush(heap, (nd, counter, nnode))
                counter += 1
    return None, None, parents, min_boundary is None


def certified_systole_search(
    g: EmbeddedGraph, v: int, cutoff=None
) -> Cycle | None:
    """Shortest non-trivial closed walk through ``v``.

    Dijkstra over an expanding window of fundamental-domain copies around
    ``(v, (0,0))``; the answer is accepted only with a certificate (its
    weight is at most every distance at which the window boundary was
    reached), otherwise the window doubles.  With a ``cutoff``, returns None
    as soon as every continuation weighs strictly more than the cutoff, so
    cutoff-equal candidates are still reported.
    """
    g.require_valid()
    costs, zero = _edge_costs(g)
    cutoff = _internal_cost(g, cutoff)
    W = 2
    while True:
        assert W <= 1 << 20, "systole window diverged"
        try:
            dsum, node, parents, certified = _windowed_systole_run(
                g, v, W, cutoff, costs, zero
            )
        except _Pruned:
            return None
        if node is not None and certified:
            darts = []
            cur = node
            while cur != (v, 0, 0):
                cur, d = parents[cur]
                darts.append(d)
            darts.reverse()
            return Cycle.of(g, darts)
        W *= 2


# ---------------------------------------------------------------------------
# Cut domains


@dataclass(frozen=True)
class CutEdge:
    u: int
    v: int
    base_dart: int  # traversing u -> v projects to this dart


class CutDomain:
    """A graph obtained by cutting the base surface open.

    ``base_vertex[i]`` is the preimage of cut vertex ``i``; every edge
    carries the base dart of its forward traversal.  Searches on the domain
    therefore hand back base-dart walks directly.
    """

    def __init__(self, graph: EmbeddedGraph, num_vertices: int,
                 cut_edges: list[CutEdge], base_vertex: list[int]):
        self.graph = graph
        self.num_vertices = num_vertices
        self.cut_edges = cut_edges
        self.base_vertex = base_vertex
        self._adj: list[list[tuple[int, int]]] | None = None

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per vertex: (neighbor, directed base dart) pairs."""
        if self._adj is None:
            adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
            for ce in self.cut_edges:
                adj[ce.u].append((ce.v, ce.base_dart))
                adj[ce.v].append((ce.u, twin(ce.base_dart)))
            self._adj = adj
        return self._adj

    def dijkstra(self, sources: Sequence[int], targets: Iterable[int] | None = None,
                 cutoff=None):
        """Multi-source Dijkstra.  Returns (dist, parents); ``parents`` maps a
        vertex to (previous vertex, base dart).  Stops early once all targets
        are settled or the frontier passes the cutoff (cutoff-equal vertices
        are still settled)."""
        costs, zero = _edge_costs(self.graph)
        cutoff = _internal_cost(self.graph, cutoff)
        adj = self.adjacency()
        dist: dict[int, object] = {}
        parents: dict[int, tuple[int, int]] = {}
        heap = []
        counter = 0
        for s in sources:
            dist[s] = zero
            heap.append((zero, counter, s))
            counter += 1
        heapq.heapify(heap)
        done: set[int] = set()
        remaining = set(targets) if targets is not None else None
        while heap:
            dsum, _, u = heapq.heappop(heap)
            if u in done:
                continue
            done.add(u)
            if cutoff is not None and cutoff < dsum:
                break
            if remaining is not None:
                remaining.discard(u)
                if not remaining:
                    break
            for v, d in adj[u]:
                if v in done:
                    continue
                nd = dsum + costs[d >> 1]
                old = dist.get(v)
                if old is None or nd < old:
                    dist[v] = nd
                    parents[v] = (u, d)
                    heapq.heappush(heap, (nd, counter, v))
                    counter += 1
        return dist, parents

    def walk_from_parents(self, parents, source_set: set[int], target: int):
        """Base-dart walk from some source to ``target`` along parent links."""
        darts = []
        cur = target
        while cur not in source_set:
            cur, d = parents[cur]
            darts.append(d)
        darts.reverse()
        return tuple(darts), cur


class Annulus(CutDomain):
    """Torus cut along one simple non-trivial cycle.

    ``left[i]``/``right[i]`` are the two copies of the i-th cycle vertex; the
    left boundary circle keeps the darts on the cycle's left (counterclockwise
    from the outgoing to the incoming cycle end)."""

    def __init__(self, graph, num_vertices, cut_edges, base_vertex,
                 cycle: Cycle, left: list[int], right: list[int]):
        super().__init__(graph, num_vertices, cut_edges, base_vertex)
        self.cycle = cycle
        self.left = left
        self.right = right


def _strictly_between(rotpos: dict[int, int], n: int, start: int, end: int,
                      probe: int) -> bool:
    """probe strictly counterclockwise-between start and end in a rotation."""
    a = (rotpos[probe] - rotpos[start]) % n
    b = (rotpos[end] - rotpos[start]) % n
    return 0 < a < b


def _passages(g: EmbeddedGraph, cyc: Cycle) -> dict[int, tuple[int, int]]:
    """Per-vertex (incoming end, outgoing dart) of a simple cycle."""
    out: dict[int, tuple[int, int]] = {}
    darts = cyc.darts
    for i, d in enumerate(darts):
        v = g.dart_vertex(d)
        assert v not in out
        out[v] = (darts[i - 1] ^ 1, d)
    return out


def _arc_members(rotation: list[int], rotpos: dict[int, int], start: int,
                 end: int) -> list[int]:
    """Darts strictly counterclockwise-between start and end."""
    n = len(rotation)
    members = []
    i = (rotpos[start] + 1) % n
    while rotation[i] != end:
        members.append(rotation[i])
        i = (i + 1) % n
    return members


def _first_after(rotation, start: int, candidates) -> int:
    """First member of ``candidates`` strictly counterclockwise after start."""
    n = len(rotation)
    s = rotation.index(start)
    for step in range(1, n):
        d = rotation[(s + step) % n]
        if d in candidates:
            return d
    raise AssertionError("no candidate end found in rotation")


def _double_tangential_runs(g: EmbeddedGraph, cyc_a: Cycle, cyc_b: Cycle):
    """Reroute the second cycle off runs it shares tangentially with the first.

    Two tight cycles may traverse a common path without crossing along it
    (any crossing sits elsewhere); the union of their images then pinches
    the complement apart and the single-face trace fails.  Each such run
    gets a parallel copy of its edges, embedded right next to the originals
    on the second cycle's side, and the second cycle moves onto the copies.
    Copies keep the original weights; ``dart_base`` maps every dart of the
    returned graph onto the dart of ``g`` it lies over.

    Runs along which the cycles do cross are left shared: they become the
    hexagon seam the disk cut already knows how to trace.
    """
    a_darts = list(cyc_a.darts)
    b_darts = list(cyc_b.darts)
    shared = {d >> 1 for d in a_darts} & {d >> 1 for d in b_darts}
    if not shared:
        return g, cyc_a, cyc_b, None
    flags = [d >> 1 in shared for d in a_darts]
    if all(flags):
        raise InvalidGraphError("cycles share every edge (pair is not good)")
    if len(shared) == len(b_darts):
        raise InvalidGraphError(
            "one cycle runs inside the other (pair is not good)"
        )
    la, lb = len(a_darts), len(b_darts)
    start0 = next(i for i in range(la) if not flags[i])
    order = [(start0 + i) % la for i in range(la)]
    runs: list[list[int]] = []
    k = 0
    while k < la:
        if not flags[order[k]]:
            k += 1
            continue
        run = []
        while k < la and flags[order[k]]:
            run.append(order[k])
            k += 1
        runs.append(run)

    b_pos = {}
    for j, d in enumerate(b_darts):
        b_pos[d] = j
    new_edges: list[tuple[int, int, Weight]] = []
    inserts: dict[int, list[tuple[int, int, bool]]] = {}
    b_replace: dict[int, int] = {}
    next_edge = g.num_edges
    doubled = False
    for run in runs:
        darts_r = [a_darts[p] for p in run]
        m = len(darts_r)
        u0 = g.dart_vertex(darts_r[0])
        um = g.head(darts_r[-1])
        a_end0 = a_darts[(run[0] - 1) % la] ^ 1
        a_end1 = a_darts[(run[-1] + 1) % la]
        same_dir = darts_r[0] in b_pos
        if same_dir:
            j0 = b_pos[darts_r[0]]
            assert [b_darts[(j0 + i) % lb] for i in range(m)] == darts_r, (
                "shared run is not contiguous on the second cycle"
            )
            b_end0 = b_darts[(j0 - 1) % lb] ^ 1
            b_end1 = b_darts[(j0 + m) % lb]
        else:
            j0 = b_pos[darts_r[-1] ^ 1]
            assert [
                b_darts[(j0 + i) % lb] for i in range(m)
            ] == [d ^ 1 for d in reversed(darts_r)], (
                "shared run is not contiguous on the second cycle"
            )
            b_end1 = b_darts[(j0 - 1) % lb] ^ 1
            b_end0 = b_darts[(j0 + m) % lb]
        beta_first_0 = (
            _first_after(g.rotation[u0], darts_r[0], {a_end0, b_end0})
            == b_end0
        )
        beta_first_1 = (
            _first_after(g.rotation[um], darts_r[-1] ^ 1, {a_end1, b_end1})
            == b_end1
        )
        if beta_first_0 == beta_first_1:
            continue  # the cycles cross along this run: keep it shared
        doubled = True
        copy_darts = []
        for rd in darts_r:
            eid = next_edge
            next_edge += 1
            new_edges.append(
                (g.dart_vertex(rd), g.head(rd), g.edge_weight(rd >> 1))
            )
            t, h = 2 * eid, 2 * eid + 1
            copy_darts.append(t)
            # hug the original on the second cycle's side: for the
            # counterclockwise side, tail end right after the original
            # tail end and head end right before the original head end
            # (the strip between original and copy stays empty)
            inserts.setdefault(g.dart_vertex(rd), []).append(
                (rd, t, not beta_first_0)
            )
            inserts.setdefault(g.head(rd), []).append(
                (rd ^ 1, h, beta_first_0)
            )
        if same_dir:
            for i in range(m):
                b_replace[(j0 + i) % lb] = copy_darts[i]
        else:
            for i in range(m):
                b_replace[(j0 + i) % lb] = copy_darts[m - 1 - i] ^ 1
    if not doubled:
        return g, cyc_a, cyc_b, None

    rotation = [list(r) for r in g.rotation]
    for v, items in inserts.items():
        for anchor, new_dart, before in items:
            i = rotation[v].index(anchor)
            rotation[v].insert(i if before else i + 1, new_dart)
    g2 = EmbeddedGraph(
        g.num_vertices,
        list(g.edges) + new_edges,
        rotation,
        g.system,
        g.scale,
    )
    assert len(g2.faces()) == len(g.faces()) + len(new_edges), (
        "doubling changed the genus"
    )
    base_of_copy: dict[int, int] = {}
    for items in inserts.values():
        for anchor, new_dart, _ in items:
            base_of_copy[new_dart] = anchor
    dart_base = [base_of_copy.get(d, d) for d in range(2 * g2.num_edges)]
    b_new = tuple(
        b_replace.get(j, b_darts[j]) for j in range(lb)
    )
    cyc_a2 = Cycle(g2, tuple(a_darts), cyc_a.weight, cyc_a.prov_class)
    cyc_b2 = Cycle(g2, b_new, cyc_b.weight, cyc_b.prov_class)
    return g2, cyc_a2, cyc_b2, dart_base


def cut_annulus(g: EmbeddedGraph, cycle: Cycle) -> Annulus:
    """Cut the torus along a simple non-trivial cycle."""
    g.require_valid()
    if not cycle.is_simple():
        raise InvalidGraphError("cut cycle must be simple")
    if cycle.prov_class == (0, 0):
        raise InvalidGraphError("cut cycle must be non-trivial")
    darts = cycle.darts
    m = len(darts)
    pos_of_vertex = {g.dart_vertex(darts[i]): i for i in range(m)}
    cycle_edges = {d >> 1 for d in darts}

    interior: dict[int, int] = {}
    nid = 0
    for v in range(g.num_vertices):
        if v not in pos_of_vertex:
            interior[v] = nid
            nid += 1
    left = list(range(nid, nid + m))
    nid += m
    right = list(range(nid, nid + m))
    nid += m
    base_vertex = [0] * nid
    for v, i in interior.items():
        base_vertex[i] = v
    for i in range(m):
        base_vertex[left[i]] = g.dart_vertex(darts[i])
        base_vertex[right[i]] = g.dart_vertex(darts[i])

    rotpos = {
        v: {d: i for i, d in enumerate(g.rotation[v])} for v in pos_of_vertex
    }

    def end_copy(d: int) -> int:
        """Cut vertex receiving the dart-end d (a non-cycle edge end)."""
        v = g.dart_vertex(d)
        if v not in pos_of_vertex:
            return interior[v]
        i = pos_of_vertex[v]
        out_end = darts[i]
        in_end = darts[i - 1] ^ 1
        n = len(g.rotation[v])
        if _strictly_between(rotpos[v], n, out_end, in_end, d):
            return left[i]
        return right[i]

    cut_edges: list[CutEdge] = []
    for e in range(g.num_edges):
        if e in cycle_edges:
            continue
        cut_edges.append(CutEdge(end_copy(2 * e), end_copy(2 * e + 1), 2 * e))
    for i in range(m):
        j = (i + 1) % m
        cut_edges.append(CutEdge(left[i], left[j], darts[i]))
        cut_edges.append(CutEdge(right[i], right[j], darts[i]))
    return Annulus(g, nid, cut_edges, base_vertex, cycle, left, right)


@dataclass(frozen=True)
class BoundarySide:
    """One maximal run of the disk boundary walk.

    ``kind`` is 'a' (edges only in the first cycle), 'b' (only in the
    second) or 's' (shared); ``forward`` says whether the run traverses the
    corresponding cycle's darts in their own direction.  ``positions`` are
    the boundary indices of the run's darts in face-walk order.
    """

    kind: str
    forward: bool
    positions: tuple[int, ...]


class HexDisk(CutDomain):
    """Torus cut along the union of a good pair: a disk whose boundary walk
    traverses each union edge twice.

    ``boundary_darts[i]`` is the base dart at boundary position i;
    ``boundary_corner[i]`` is the cut vertex the dart leaves from (corners
    are indexed by boundary position; position i+1 receives the head).
    """

    def __init__(self, graph, num_vertices, cut_edges, base_vertex,
                 boundary_darts: tuple[int, ...], boundary_corner: tuple[int, ...],
                 sides: tuple[BoundarySide, ...], corner_of_end):
        super().__init__(graph, num_vertices, cut_edges, base_vertex)
        self.boundary_darts = boundary_darts
        self.boundary_corner = boundary_corner
        self.sides = sides
        self.corner_of_end = corner_of_end

    def corner_after(self, i: int) -> int:
        """Corner receiving the head of boundary dart i."""
        return self.boundary_corner[(i + 1) % len(self.boundary_corner)]


def cut_disk(g: EmbeddedGraph, cyc_a: Cycle, cyc_b: Cycle) -> HexDisk:
    """Cut the torus along the union of two cycles forming a good pair.

    The union must have exactly one complementary face (this is what makes
    the pair cut the torus into a single disk); otherwise the pair is not
    good and InvalidGraphError is raised.  Vertices where the cycles touch
    without crossing are not intersections of the underlying curves and
    are resolved by nudging one cycle off the vertex; runs shared without
    crossing are doubled first so each curve has its own copy.
    """
    g.require_valid()
    base_g = g
    g, cyc_a, cyc_b, dart_base = _double_tangential_runs(g, cyc_a, cyc_b)
    k_darts: set[int] = set()
    for d in cyc_a.darts:
        k_darts.add(d)
        k_darts.add(d ^ 1)
    for d in cyc_b.darts:
        k_darts.add(d)
        k_darts.add(d ^ 1)
    k_vertices = set(walk_vertices(g, cyc_a.darts)) | set(
        walk_vertices(g, cyc_b.darts)
    )
    # rotation restricted to the union
    k_rot: dict[int, list[int]] = {
        v: [d for d in g.rotation[v] if d in k_darts] for v in k_vertices
    }
    k_rotpos = {v: {d: i for i, d in enumerate(r)} for v, r in k_rot.items()}

    # Tangential touches: both cycles pass a vertex with four distinct
    # ends whose pairs do not interleave.  The curves do not intersect
    # there: one of them is nudged off the vertex through a free side (an
    # angular gap holding no other edge end), so the vertex splits into
    # one 2-valent strand per cycle and the face trace pairs each
    # passage's own ends.  Corners of the nudged strand sit off the
    # vertex and own no edge ends.
    touch_partner: dict[int, int] = {}
    touch_pushed: dict[int, tuple[int, int]] = {}
    pass_a = _passages(g, cyc_a)
    pass_b = _passages(g, cyc_b)
    for v, pa in pass_a.items():
        pb = pass_b.get(v)
        if pb is None or len({*pa, *pb}) != 4:
            continue
        rot = g.rotation[v]
        rotpos = {d: i for i, d in enumerate(rot)}
        n = len(rot)
        if _strictly_between(rotpos, n, pa[0], pa[1], pb[0]) != _strictly_between(
            rotpos, n, pa[0], pa[1], pb[1]
        ):
            continue
        for pair, other in ((pb, pa), (pa, pb)):
            arc1 = _arc_members(rot, rotpos, pair[0], pair[1])
            free = _arc_members(rot, rotpos, pair[1], pair[0]) if other[0] in arc1 else arc1
            if not free:
                touch_partner[pair[0]] = pair[1]
                touch_partner[pair[1]] = pair[0]
                touch_partner[other[0]] = other[1]
                touch_partner[other[1]] = other[0]
                touch_pushed[v] = pair
                break
        else:
            raise InvalidGraphError(
                "cycles touch at a vertex with no free side (pair is not good)"
            )

    def k_next_in_face(d: int) -> int:
        t = d ^ 1
        if t in touch_partner:
            return touch_partner[t]
        v = g.dart_vertex(t)
        r = k_rot[v]
        return r[(k_rotpos[v][t] + 1) % len(r)]

    # trace the single face of the union
    start = cyc_a.darts[0]
    walk = []
    d = start
    seen = set()
    while d not in seen:
        seen.add(d)
        walk.append(d)
        d = k_next_in_face(d)
    if d != start or len(walk) != len(k_darts):
        raise InvalidGraphError(
            "cycle union does not cut the torus into a single disk "
            "(pair is not good)"
        )
    L = len(walk)

    interior: dict[int, int] = {}
    nid = 0
    for v in range(g.num_vertices):
        if v not in k_vertices:
            interior[v] = nid
            nid += 1
    boundary_corner = tuple(range(nid, nid + L))
    nid += L
    base_vertex = [0] * nid
    for v, i in interior.items():
        base_vertex[i] = v
    for i, d in enumerate(walk):
        base_vertex[boundary_corner[i]] = g.dart_vertex(d)

    # corner ownership of non-union dart ends: corner i (between boundary
    # darts walk[i-1] and walk[i]) owns the full-rotation arc strictly ccw
    # from twin(walk[i-1]) to walk[i]
    full_rotpos = {
        v: {d: i for i, d in enumerate(g.rotation[v])} for v in k_vertices
    }
    corner_at: dict[tuple[int, int], int] = {}  # (vertex, probe dart) -> corner

    def corner_of_end(probe: int) -> int:
        v = g.dart_vertex(probe)
        if v not in k_vertices:
            return interior[v]
        key = (v, probe)
        if key in corner_at:
            return corner_at[key]
        n = len(g.rotation[v])
        pushed = touch_pushed.get(v)
        for i, d in enumerate(walk):
            if g.dart_vertex(d) != v:
                continue
            if pushed is not None and d in pushed:
                continue
            frm = walk[i - 1] ^ 1
            if d == frm:
                # vertex of union-degree 1 cannot happen on a cycle union
                raise AssertionError("degenerate corner")
            if _strictly_between(full_rotpos[v], n, frm, d, probe):
                corner_at[key] = boundary_corner[i]
                return boundary_corner[i]
        raise AssertionError("dart end not owned by any corner")

    k_edges = {d >> 1 for d in k_darts}
    cut_edges: list[CutEdge] = []
    for e in range(g.num_edges):
        if e in k_edges:
            continue
        cut_edges.append(CutEdge(corner_of_end(2 * e), corner_of_end(2 * e + 1), 2 * e))
    for i, d in enumerate(walk):
        cut_edges.append(
            CutEdge(boundary_corner[i], boundary_corner[(i + 1) % L], d)
        )

    # classify boundary runs into the disk's sides
    a_edges = {d >> 1 for d in cyc_a.darts}
    b_edges = {d >> 1 for d in cyc_b.darts}
    a_forward = set(cyc_a.darts)
    b_forward = set(cyc_b.darts)

    def kind_of(d: int) -> str:
        e = d >> 1
        if e in a_edges and e in b_edges:
            return "s"
        return "a" if e in a_edges else "b"

    kinds = [kind_of(d) for d in walk]
    sides: list[BoundarySide] = []
    if all(k == kinds[0] for k in kinds):
        raise InvalidGraphError("cycle union degenerates to one side")
    # rotate so a run boundary falls at index 0
    startidx = next(i for i in range(L) if kinds[i] != kinds[i - 1])
    i = startidx
    while True:
        j = i
        run = []
        while True:
            run.append(j % L)
            j += 1
            if kinds[j % L] != kinds[i % L] or len(run) == L:
                break
        rd = walk[run[0]]
        if kinds[i % L] == "s":
            forward = rd in a_forward
        elif kinds[i % L] == "a":
            forward = rd in a_forward
        else:
            forward = rd in b_forward
        sides.append(
            BoundarySide(kinds[i % L], forward, tuple(r % L for r in run))
        )
        i = j
        if i % L == startidx:
            break
    kinds_found = sorted(s.kind for s in sides)
    if kinds_found not in (["a", "a", "b", "b"], ["a", "a", "b", "b", "s", "s"]):
        raise InvalidGraphError(
            f"unexpected side structure {kinds_found} (pair is not good)"
        )
    out_walk = list(walk)
    if dart_base is not None:
        # project doubled edges back onto the base graph; the closure over
        # the unprojected walk keeps serving corner lookups in the scratch
        # graph, where the copies actually live
        cut_edges = [
            CutEdge(ce.u, ce.v, dart_base[ce.base_dart]) for ce in cut_edges
        ]
        out_walk = [dart_base[d] for d in out_walk]
    return HexDisk(
        base_g, nid, cut_edges, base_vertex, tuple(out_walk), boundary_corner,
        tuple(sides), corner_of_end,
    )


def cut_along(g: EmbeddedGraph, cycles) -> CutDomain:
    """Cut along one simple cycle (annulus) or a good pair (hexagonal disk)."""
    if isinstance(cycles, Cycle):
        return cut_annulus(g, cycles)
    a, b = cycles
    return cut_disk(g, a, b)
