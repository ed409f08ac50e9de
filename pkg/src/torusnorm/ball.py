"""Unit ball of the homology norm.

The core is a mediant search over angular sectors: starting from a good
short basis, each sector spanned by two known tight cycles is split at
their class sum; the sum gets a tight representative by searching inside
the disk obtained by cutting along the pair (or two glued copies of it),
and the sector is pruned exactly when the norm is additive there.  The
surviving classes, mirrored through the origin, carry every extremal
direction of the unit ball; norm queries then reduce to locating a cone
between consecutive classes and combining the two stored weights.

All geometry is exact: angular comparisons are integer cross products and
hull predicates are integer combinations of Weights.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd

from torusnorm.basis import GoodBasis, good_short_basis
from torusnorm.cover import _edge_costs, _internal_cost, cut_disk
from torusnorm.surface import (
    Cycle,
    EmbeddedGraph,
    InvalidGraphError,
    Weight,
    check_closed,
    homology_class,
    twin,
    walk_vertices,
    walk_weight,
)


def _cross(p, q) -> int:
    return p[0] * q[1] - p[1] * q[0]


@dataclass(frozen=True)
class HEntry:
    """One direction of the search result: a primitive homology class, a
    tight simple cycle representing it, and the norm of the class."""

    cls: tuple[int, int]
    cycle: Cycle
    weight: Weight


# ---------------------------------------------------------------------------
# Search regions: one disk copy, or two copies glued along a seam


class _Region:
    """Plane search domain assembled from copies of a cut disk.

    Vertices are dense ints; edges remember the base dart of their forward
    traversal so paths project back to the base graph directly.
    """

    def __init__(self, g: EmbeddedGraph):
        self.graph = g
        self.base_vertex: list[int] = []
        self.adj: list[list[tuple[int, int]]] = []
        self.edges: list[tuple[int, int, int]] = []
        self.seam: set[int] = set()

    def add_vertex(self, base_v: int) -> int:
        self.base_vertex.append(base_v)
        self.adj.append([])
        return len(self.base_vertex) - 1

    def add_edge(self, u: int, v: int, dart: int) -> None:
        self.adj[u].append((v, dart))
        self.adj[v].append((u, twin(dart)))
        self.edges.append((u, v, dart))

    def dijkstra(self, source: int, cutoff=None):
        """Single-source Dijkstra; returns (dist, parents) with parents
        mapping a vertex to (previous vertex, base dart).  Vertices beyond
        the cutoff are left unsettled (cutoff-equal ones are settled)."""
        costs, zero = _edge_costs(self.graph)
        cutoff = _internal_cost(self.graph, cutoff)
        dist = {source: zero}
        parents: dict[int, tuple[int, int]] = {}
        heap = [(zero, 0, source)]
        counter = 1
        done: set[int] = set()
        while heap:
            dsum, _, u = heapq.heappop(heap)
            if u in done:
                continue
            done.add(u)
            if cutoff is not None and cutoff < dsum:
                done.discard(u)
                break
            for v, d in self.adj[u]:
                if v in done:
                    continue
                nd = dsum + costs[d >> 1]
                old = dist.get(v)
                if old is None or nd < old:
                    dist[v] = nd
                    parents[v] = (u, d)
                    heapq.heappush(heap, (nd, counter, v))
                    counter += 1
        return dist, parents, done

    def path_to(self, parents, source: int, target: int):
        verts = [target]
        darts: list[int] = []
        cur = target
        while cur != source:
            cur, d = parents[cur]
            darts.append(d)
            verts.append(cur)
        verts.reverse()
        darts.reverse()
        return verts, darts


def _side_corners(disk, side) -> list[int]:
    """Corner ids along a boundary side, in run order (length + 1 many)."""
    cs = [disk.boundary_corner[p] for p in side.positions]
    cs.append(disk.corner_after(side.positions[-1]))
    return cs


def _single_region(disk):
    """The disk itself as a region; returns (region, vertex map)."""
    region = _Region(disk.graph)
    vmap = [region.add_vertex(disk.base_vertex[v]) for v in range(disk.num_vertices)]
    for ce in disk.cut_edges:
        region.add_edge(vmap[ce.u], vmap[ce.v], ce.base_dart)
    return region, vmap


def _double_region(disk, seam0, seam1):
    """Two copies of the disk glued along a seam: corner k of copy 0's
    ``seam0`` side is identified with corner (len-k) of copy 1's ``seam1``
    side.  Returns (region, map0, map1)."""
    region = _Region(disk.graph)
    map0 = [region.add_vertex(disk.base_vertex[v]) for v in range(disk.num_vertices)]
    cs0 = _side_corners(disk, seam0)
    cs1 = _side_corners(disk, seam1)
    assert len(cs0) == len(cs1)
    ident: dict[int, int] = {}
    for k, c1 in enumerate(reversed(cs1)):
        c0 = cs0[k]
        assert disk.base_vertex[c0] == disk.base_vertex[c1], "seam mismatch"
        ident[c1] = map0[c0]
        region.seam.add(map0[c0])
    map1 = [
        ident[v] if v in ident else region.add_vertex(disk.base_vertex[v])
        for v in range(disk.num_vertices)
    ]
    L = len(disk.boundary_darts)
    skip = {
        (disk.boundary_corner[p], disk.boundary_corner[(p + 1) % L], disk.boundary_darts[p])
        for p in seam1.positions
    }
    for ce in disk.cut_edges:
        if (ce.u, ce.v, ce.base_dart) in skip:
            continue
        region.add_edge(map1[ce.u], map1[ce.v], ce.base_dart)
    for ce in disk.cut_edges:
        region_u, region_v = map0[ce.u], map0[ce.v]
        region.add_edge(region_u, region_v, ce.base_dart)
    return region, map0, map1


def _region_lines(region: _Region, a_edges: set[int], b_edges: set[int]):
    """Maximal paths of region edges projecting into one of the cut cycles.

    These are exactly the intersections of the region with the geodesic
    lines bounding (or crossing) it; shared edges belong to one line of
    each family.  Ordered: both a-lines first, then b-lines with the
    seam-crossing one last.
    """
    lines = []
    for edge_ids in (a_edges, b_edges):
        sub: dict[int, list[tuple[int, int]]] = {}
        for u, v, d in region.edges:
            if (d >> 1) in edge_ids:
                sub.setdefault(u, []).append((v, d))
                sub.setdefault(v, []).append((u, twin(d)))
        seen: set[int] = set()
        group = []
        for start in sorted(sub):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y, _ in sub[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            ends = sorted(x for x in comp if len(sub[x]) == 1)
            assert len(ends) == 2, "line is not a simple path"
            verts = [ends[0]]
            darts = []
            prev = None
            while verts[-1] != ends[1]:
                nxt = [(y, d) for y, d in sub[verts[-1]] if y != prev]
                assert len(nxt) == 1, "line is not a simple path"
                prev = verts[-1]
                verts.append(nxt[0][0])
                darts.append(nxt[0][1])
            group.append((verts, darts))
        group.sort(key=lambda item: (bool(set(item[0]) & region.seam), min(item[0])))
        lines.extend(group)
    assert len(lines) <= 5, f"{len(lines)} lines in search region"
    return lines


def _enforce_line_property(region: _Region, lines, verts, darts):
    """Bigon removal: make the path meet every line in one connected
    subpath by replacing, per line, the stretch between its first and last
    visit with the equally heavy stretch of the line itself."""
    g = region.graph
    for _pass in range(6):
        changed = False
        for lverts, ldarts in lines:
            pos = {v: i for i, v in enumerate(lverts)}
            hits = [t for t, v in enumerate(verts) if v in pos]
            if len(hits) < 2:
                continue
            i, j = hits[0], hits[-1]
            pi, pj = pos[verts[i]], pos[verts[j]]
            if pi <= pj:
                seg_v = lverts[pi:pj + 1]
                seg_d = ldarts[pi:pj]
            else:
                seg_v = lverts[pj:pi + 1][::-1]
                seg_d = [twin(d) for d in ldarts[pj:pi]][::-1]
            if verts[i:j + 1] == seg_v:
                continue
            assert walk_weight(g, darts[i:j]) == walk_weight(g, seg_d), (
                "line detour is not weight-neutral"
            )
            verts = verts[:i] + seg_v + verts[j + 1:]
            darts = darts[:i] + seg_d + darts[j:]
            changed = True
        if not changed:
            return verts, darts
    raise AssertionError("line normalization did not stabilize")


# ---------------------------------------------------------------------------
# Tight representative of a class sum


class _Candidates:
    """Keeps the first-found minimum-weight candidate in evaluation order.

    ``bound`` is the additive weight of the pair: by subadditivity the
    tight value never exceeds it, so searches prune beyond it from the
    start.  ``append`` holds darts tacked on after the in-region path (the
    shared path of the two cycles); they are outside the region, so the
    line normalization later runs on the path part only.
    """

    def __init__(self, g: EmbeddedGraph, bound: Weight):
        self.g = g
        self.bound = bound
        self.best = None

    @property
    def cutoff(self) -> Weight:
        return self.bound if self.best is None else min(self.bound, self.best[0])

    def offer(self, weight: Weight, region, lines, verts, darts, append=()) -> None:
        if self.bound < weight:
            return
        if self.best is None or weight < self.best[0]:
            self.best = (weight, region, lines, verts, darts, tuple(append))


def _sides_by_kind(disk):
    by: dict[tuple[str, bool], object] = {}
    for s in disk.sides:
        key = (s.kind, s.forward)
        assert key not in by, "duplicate boundary side"
        by[key] = s
    return by


def tight_sum(g: EmbeddedGraph, c_alpha: Cycle, c_beta: Cycle) -> Cycle:
    """Minimum-weight representative of the class sum of a good pair.

    Cuts along the union and searches the two convex regions where a tight
    representative must have a lift: two disk copies glued along a cycle
    side (both gluings), and the single disk entered and left through the
    shared path (both directions).  Candidates are filtered by homology
    class, the lightest wins (first in this fixed order on ties), and the
    winner's crossings with the region's geodesic lines are normalized to
    connected overlaps.
    """
    if not c_alpha.is_simple() or not c_beta.is_simple():
        raise InvalidGraphError("tight_sum requires simple cycles")
    disk = cut_disk(g, c_alpha, c_beta)
    gamma = (
        c_alpha.prov_class[0] + c_beta.prov_class[0],
        c_alpha.prov_class[1] + c_beta.prov_class[1],
    )
    a_edges = {d >> 1 for d in c_alpha.darts}
    b_edges = {d >> 1 for d in c_beta.darts}
    by_kind = _sides_by_kind(disk)
    cand = _Candidates(g, c_alpha.weight + c_beta.weight)

    def corners_with_base(v: int) -> list[int]:
        return [c for c in disk.boundary_corner if disk.base_vertex[c] == v]

    # two copies of the disk glued along one cycle side (the neighboring
    # copy across a geodesic line always borders it with the reversed run
    # of the same cycle); corner-to-corner paths crossing the seam realize
    # the class sum when its tight representative spans two domains
    for kind in ("b", "a"):
        for seam0, seam1 in (
            (by_kind[(kind, True)], by_kind[(kind, False)]),
            (by_kind[(kind, False)], by_kind[(kind, True)]),
        ):
            region, map0, map1 = _double_region(disk, seam0, seam1)
            lines = _region_lines(region, a_edges, b_edges)
            copy1_corners = [map1[c] for c in disk.boundary_corner]
            for c0 in disk.boundary_corner:
                src = map0[c0]
                base = disk.base_vertex[c0]
                dist, parents, done = region.dijkstra(src, cutoff=cand.cutoff)
                for tgt in copy1_corners:
                    if tgt == src or tgt not in done:
                        continue
                    if region.base_vertex[tgt] != base:
                        continue
                    verts, darts = region.path_to(parents, src, tgt)
                    if g.provisional_class(darts) != gamma:
                        continue
                    cand.offer(walk_weight(g, darts), region, lines, verts, darts)

    # single disk: corner-to-corner paths closing up in the base graph,
    # optionally continued along the shared path of the two cycles
    region1, vmap = _single_region(disk)
    lines1 = _region_lines(region1, a_edges, b_edges)
    appends: list[tuple[tuple[int, ...], int, int]] = [((), None, None)]
    if ("s", True) in by_kind:
        run = by_kind[("s", True)]
        p_darts = tuple(disk.boundary_darts[p] for p in run.positions)
        p_start = g.dart_vertex(p_darts[0])
        p_end = g.head(p_darts[-1])
        p_rev = tuple(twin(d) for d in reversed(p_darts))
        appends.append((p_darts, p_end, p_start))
        appends.append((p_rev, p_start, p_end))
    for append_darts, src_base, tgt_base in appends:
        for c0 in disk.boundary_corner:
            base = disk.base_vertex[c0]
            if src_base is not None and base != src_base:
                continue
            want = base if tgt_base is None else tgt_base
            tgts = [vmap[c] for c in corners_with_base(want)]
            src = vmap[c0]
            dist, parents, done = region1.dijkstra(src, cutoff=cand.cutoff)
            for tgt in tgts:
                if tgt == src or tgt not in done:
                    continue
                verts, darts = region1.path_to(parents, src, tgt)
                full_d = tuple(darts) + append_darts
                if g.provisional_class(full_d) != gamma:
                    continue
                cand.offer(
                    walk_weight(g, full_d), region1, lines1, verts, darts,
                    append_darts,
                )

    assert cand.best is not None, "no representative of the class sum found"
    weight, region, lines, verts, darts, append = cand.best
    verts, darts = _enforce_line_property(region, lines, list(verts), list(darts))
    cyc = Cycle.of(g, tuple(darts) + append)
    assert cyc.prov_class == gamma
    assert cyc.weight == weight, "line normalization changed the weight"
    return cyc


# ---------------------------------------------------------------------------
# Algorithm: mediant search over sectors


def compute_H(g: EmbeddedGraph, basis: GoodBasis | None = None) -> list[HEntry]:
    """Sorted list of tight cycles covering all extremal directions.

    Mediant subdivision over the upper half plane seeded with the good
    basis, mirrored through the origin at the end.  The while-loop runs at
    most twice the output size (asserted); consecutive classes always span
    unimodular positively oriented cones (asserted).
    """
    if basis is None:
        basis = good_short_basis(g)
    a, b = basis.a, basis.b
    cls_a = homology_class(g, a.darts)
    cls_b = homology_class(g, b.darts)
    assert _cross(cls_a, cls_b) == 1, "basis is not positively oriented"

    h1 = HEntry(cls_a, a, a.weight)
    h2 = HEntry(cls_b, b, b.weight)
    h1bar = HEntry((-cls_a[0], -cls_a[1]), a.reversed(), a.weight)
    upper = [h1, h2, h1bar]
    stack = [(h1, h2), (h2, h1bar)]
    iterations = 0
    while stack:
        h, hp = stack.pop()
        iterations += 1
        c2 = tight_sum(g, h.cycle, hp.cycle)
        w2 = c2.weight
        if w2 < h.weight + hp.weight:
            cls2 = (h.cls[0] + hp.cls[0], h.cls[1] + hp.cls[1])
            assert homology_class(g, c2.darts) == cls2
            hnew = HEntry(cls2, c2, w2)
            idx = upper.index(h)
            assert upper[idx + 1] is hp
            upper.insert(idx + 1, hnew)
            stack.append((h, hnew))
            stack.append((hnew, hp))

    full = upper[:-1]
    full = full + [
        HEntry((-e.cls[0], -e.cls[1]), e.cycle.reversed(), e.weight) for e in full
    ]
    assert iterations <= 2 * len(full), "sector iterations exceed twice |H|"
    n = len(full)
    for i in range(n):
        ci, cj = full[i].cls, full[(i + 1) % n].cls
        assert _cross(ci, cj) == 1, "consecutive classes not unimodular"
        assert gcd(abs(ci[0]), abs(ci[1])) == 1
        assert full[i].cycle.is_simple(), "H entry cycle not simple"
    return full


# ---------------------------------------------------------------------------
# Unit ball and queries


@dataclass
class UnitBall:
    """Full sorted class list plus its extremal subset.

    Points are kept symbolic as (class, weight) pairs: the geometric point
    is class/weight.  ``H`` partitions the nonzero classes into the cones
    spanned by consecutive entries (first ray excluded, second included).
    """

    graph: EmbeddedGraph
    H: list[HEntry]
    extremal: list[HEntry]

    def sector_of(self, alpha: tuple[int, int]) -> tuple[int, int, int]:
        """Cone index i plus coordinates (u, v) with
        alpha = u*H[i].cls + v*H[i+1].cls, u >= 0, v >= 1."""
        assert alpha != (0, 0)
        H = self.H
        n = len(H)
        ref = H[0].cls

        def angle_rank(vec):
            cr = _cross(ref, vec)
            dot = ref[0] * vec[0] + ref[1] * vec[1]
            if cr == 0:
                return (0, 0) if dot > 0 else (1, 0)
            return (0, 1) if cr > 0 else (1, 1)

        def strictly_before(x, y) -> bool:
            hx, hy = angle_rank(x), angle_rank(y)
            if hx[0] != hy[0]:
                return hx[0] < hy[0]
            c = _cross(x, y)
            if c != 0:
                return c > 0
            return hx[1] < hy[1]

        lo, hi = 0, n
        while lo < hi:
            mid = (lo + hi) // 2
            if strictly_before(H[mid].cls, alpha):
                lo = mid + 1
            else:
                hi = mid
        i = (lo - 1) % n
        u = _cross(alpha, H[(i + 1) % n].cls)
        v = _cross(H[i].cls, alpha)
        assert u >= 0 and v >= 1, "cone location failed"
        return i, u, v


def unit_ball(g: EmbeddedGraph, H: list[HEntry] | None = None) -> UnitBall:
    """Convex hull of the normalized classes, keeping the angular order.

    Consecutive-triple tests run until no point is dropped; a point is
    dropped exactly when it lies on the segment of its neighbors, decided
    by an integer combination of the three weights (never negative, by
    subadditivity)."""
    if H is None:
        H = compute_H(g)
    pts = list(H)
    while True:
        n = len(pts)
        assert n >= 4, "hull degenerated"
        drop: set[int] = set()
        for k in range(n):
            A, B, C = pts[(k - 1) % n], pts[k], pts[(k + 1) % n]
            D = _cross(A.cls, C.cls)
            assert D >= 0, "hull neighbors span more than a half plane"
            if D == 0:
                # neighbors are antipodal (4-point ball): B is extremal
                continue
            t = (
                _cross(B.cls, C.cls) * A.weight
                + _cross(A.cls, B.cls) * C.weight
                - D * B.weight
            )
            s = t.sign()
            assert s >= 0, "normalized point outside its neighbor segment"
            if s == 0:
                drop.add(k)
        if not drop:
            break
        pts = [p for k, p in enumerate(pts) if k not in drop]
    V = g.num_vertices
    assert len(pts) <= 4 * V + 5, "extremal count exceeds 4V+5"
    have = {p.cls: p.weight for p in pts}
    for p in pts:
        neg = (-p.cls[0], -p.cls[1])
        assert have.get(neg) == p.weight, "extremal set not centrally symmetric"
    return UnitBall(graph=g, H=H, extremal=pts)


def norm_eval(ball: UnitBall, alpha) -> Weight:
    """Norm of a homology class: locate the cone, combine the two weights."""
    alpha = tuple(alpha)
    if alpha == (0, 0):
        return ball.graph.zero_weight()
    i, u, v = ball.sector_of(alpha)
    H = ball.H
    return u * H[i].weight + v * H[(i + 1) % len(H)].weight


def shortest_homotopic_length(ball: UnitBall, g: EmbeddedGraph, walk) -> Weight:
    """Minimum weight among closed walks homotopic to the given one."""
    check_closed(g, walk)
    return norm_eval(ball, homology_class(g, walk))


def tight_cycle(ball: UnitBall, g: EmbeddedGraph, alpha) -> Cycle:
    """A closed walk of class alpha realizing the norm: copies of the two
    cone cycles concatenated at a shared vertex."""
    alpha = tuple(alpha)
    if alpha == (0, 0):
        raise ValueError("class must be non-zero")
    i, u, v = ball.sector_of(alpha)
    H = ball.H
    ci, cj = H[i].cycle, H[(i + 1) % len(H)].cycle
    if u == 0:
        darts = cj.darts * v
    else:
        vi = walk_vertices(g, ci.darts)
        vj = walk_vertices(g, cj.darts)
        shared = [x for x in vi if x in set(vj)]
        assert shared, "consecutive cycles share no vertex"
        s = shared[0]
        ri = vi.index(s)
        rj = vj.index(s)
        di = ci.darts[ri:] + ci.darts[:ri]
        dj = cj.darts[rj:] + cj.darts[:rj]
        darts = di * u + dj * v
    out = Cycle.of(g, darts)
    assert homology_class(g, out.darts) == alpha
    assert out.weight == norm_eval(ball, alpha)
    return out


def ball_as_json(ball: UnitBall) -> dict:
    """JSON-ready form: every entry carries its class, weight and cycle."""
    g = ball.graph

    def weight_json(w: Weight):
        if g.system.r == 1:
            q = w.as_fraction(g.scale)
            return {"num": q.numerator, "den": q.denominator}
        return {"coeffs": list(w.coeffs)}

    def entry_json(e: HEntry):
        return {
            "class": list(e.cls),
            "weight": weight_json(e.weight),
            "cycle": list(e.cycle.darts),
        }

    return {
        "H": [entry_json(e) for e in ball.H],
        "extremal": [entry_json(e) for e in ball.extremal],
    }
