"""Good short basis: a systole cycle plus a shortest crossing partner,
normalized so the two cycles intersect in a single connected path.

``good_short_basis`` is also the place where a graph's public homology
coordinates get fixed: the basis classes become (1,0) and (0,1) unless the
graph was already marked, in which case the existing marking is kept and the
basis simply reports its classes in it.
"""

from __future__ import annotations

from dataclasses import dataclass

from torusnorm.cover import Annulus, certified_systole_search, cut_annulus
from torusnorm.surface import (
    Cycle,
    EmbeddedGraph,
    algebraic_intersection,
    canonical_rotation,
    reverse_walk,
    walk_weight,
)


@dataclass(frozen=True)
class GoodBasis:
    """Positively oriented basis pair: ``a`` is a systole, ``b`` is shortest
    among closed walks crossing it once, and the two intersect in a single
    connected path (possibly one vertex)."""

    a: Cycle
    b: Cycle


def systole_cycle(g: EmbeddedGraph) -> Cycle:
    """Shortest non-trivial closed walk, returned as a tight simple cycle.

    Minimum over per-vertex certified searches; ties broken by the
    lexicographically least canonical dart sequence.
    """
    g.require_valid()
    best: Cycle | None = None
    for v in range(g.num_vertices):
        c = certified_systole_search(g, v, cutoff=None if best is None else best.weight)
        if c is None:
            continue
        if (
            best is None
            or c.weight < best.weight
            or (c.weight == best.weight
                and canonical_rotation(c.darts) < canonical_rotation(best.darts))
        ):
            best = c
    assert best is not None, "no non-trivial closed walk found"
    assert best.is_simple(), "systole is not simple"
    return Cycle.of(g, canonical_rotation(best.darts))


def _boundary_arc(ann: Annulus, p: int, q: int):
    """Lighter of the two arcs along a boundary circle from cycle position p
    to position q, as base darts (ties prefer the forward arc).  Both circles
    project to the same cycle darts, so one helper serves both."""
    darts = ann.cycle.darts
    m = len(darts)
    fwd = tuple(darts[(p + t) % m] for t in range((q - p) % m))
    bwd = reverse_walk(tuple(darts[(q + t) % m] for t in range((p - q) % m)))
    g = ann.graph
    if walk_weight(g, bwd) < walk_weight(g, fwd):
        return bwd
    return fwd


def _normalized_crossing_walk(ann: Annulus, i: int, cut_walk, cut_vertices):
    """Glue the annulus path left[i] -> right[i] back into a closed base walk
    whose intersection with the cut cycle is one connected path.

    Implements the boundary-subpath replacement: the prefix up to the last
    vertex on the left circle is replaced by an arc of the cycle, then the
    suffix from the first vertex on the right circle likewise.  Both
    replacements must preserve the weight exactly.
    """
    g = ann.graph
    left_pos = {cv: idx for idx, cv in enumerate(ann.left)}
    right_pos = {cv: idx for idx, cv in enumerate(ann.right)}

    j = max(t for t, cv in enumerate(cut_vertices) if cv in left_pos)
    jp = j + min(
        t for t, cv in enumerate(cut_vertices[j:]) if cv in right_pos
    )

    prefix_arc = _boundary_arc(ann, i, left_pos[cut_vertices[j]])
    suffix_arc = _boundary_arc(ann, right_pos[cut_vertices[jp]], i)
    middle = cut_walk[j:jp]
    assert walk_weight(g, prefix_arc) == walk_weight(g, cut_walk[:j])
    assert walk_weight(g, suffix_arc) == walk_weight(g, cut_walk[jp:])
    return prefix_arc + tuple(middle) + suffix_arc


def good_short_basis(g: EmbeddedGraph) -> GoodBasis:
    """Compute a good short basis and (if not already done) mark the graph
    so its classes become (1,0) and (0,1).

    The partner cycle is found by cutting along the systole and taking the
    cheapest path between the two copies of a cycle vertex; candidates tied
    on weight are all normalized and the lexicographically least canonical
    dart sequence wins.
    """
    a = systole_cycle(g)
    ann = cut_annulus(g, a)
    m = len(a.darts)

    best_w = None
    candidates: list[tuple[int, tuple, list]] = []
    for i in range(m):
        src, dst = ann.left[i], ann.right[i]
        dist, parents = ann.dijkstra([src], targets=[dst], cutoff=best_w)
        if dst not in dist:
            continue
        d = dist[dst]
        if best_w is not None and best_w < d:
            continue
        walk, _ = ann.walk_from_parents(parents, {src}, dst)
        cut_vertices = [src]
        cur = dst
        rev = []
        while cur != src:
            prev, _dart = parents[cur]
            rev.append(cur)
            cur = prev
        cut_vertices += list(reversed(rev))
        if best_w is None or d < best_w:
            best_w = d
            candidates = []
        candidates.append((i, walk, cut_vertices))
    assert candidates, "no crossing walk found in the annulus"

    best_b: Cycle | None = None
    for i, walk, cut_vertices in candidates:
        darts = _normalized_crossing_walk(ann, i, walk, cut_vertices)
        b = Cycle.of(g, darts)
        s = algebraic_intersection(g, a, b)
        assert s in (1, -1), f"basis pairing is {s}"
        if s == -1:
            b = b.reversed()
        if best_b is None or (
            canonical_rotation(b.darts) < canonical_rotation(best_b.darts)
        ):
            best_b = b
    assert best_b is not None
    b = Cycle.of(g, canonical_rotation(best_b.darts))
    assert b.is_simple(), "crossing partner is not simple after normalization"
    assert not b.weight < a.weight

    if not g.has_coords():
        g.fix_marking(a.darts, b.darts)
    return GoodBasis(a=a, b=b)
