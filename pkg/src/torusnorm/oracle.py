"""Brute-force reference implementations, kept independent of the fast path.

Both operations materialize a finite window of the universal cover (all
translations with max(|tx|, |ty|) <= W in the internal provisional
coordinates) and run plain Dijkstra over it, expanding the window until a
certificate holds:

* a single value is certified once it is at most the smallest distance at
  which any search reached the window boundary (a shorter walk would have to
  leave the window, which already costs at least that much);
* a spectrum prefix is certified once its last value is strictly below that
  boundary distance, which additionally guarantees the final tie group is
  complete.

Nothing here is shared with the production search code on purpose: these
routines exist to check it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from torusnorm.surface import EmbeddedGraph, Weight

_WINDOW_LIMIT = 1 << 16


@dataclass(frozen=True)
class OracleCertificate:
    """Window at which the value was certified, and the smallest distance at
    which the boundary was reached (None if the window was never exited)."""

    window: int
    boundary_distance: Weight | None


def _costs(g: EmbeddedGraph):
    if g.system.r == 1:
        return [w.coeffs[0] for (_, _, w) in g.edges], 0
    return [w for (_, _, w) in g.edges], g.zero_weight()


def _as_weight(g: EmbeddedGraph, value) -> Weight:
    if isinstance(value, Weight):
        return value
    return Weight((value,), g.system)


def _window_sweep(g: EmbeddedGraph, W: int):
    """Exhaustive Dijkstra from every (v, (0,0)) over the window.

    Returns (best, boundary_min): best maps a provisional translation to the
    smallest closed-walk weight realizing it inside the window, boundary_min
    is the smallest distance at which any run reached the window boundary.
    """
    costs, zero = _costs(g)
    rot = g.rotation
    offs = [g.dart_offset(d) for d in range(2 * g.num_edges)]
    heads = [g.head(d) for d in range(2 * g.num_edges)]
    best: dict[tuple[int, int], object] = {}
    boundary_min = None
    for source in range(g.num_vertices):
        dist = {(source, 0, 0): zero}
        heap = [(zero, 0, source, 0, 0)]
        counter = 1
        done = set()
        while heap:
            dsum, _, v, tx, ty = heapq.heappop(heap)
            node = (v, tx, ty)
            if node in done:
                continue
            done.add(node)
            if v == source and (tx, ty) != (0, 0):
                cur = best.get((tx, ty))
                if cur is None or dsum < cur:
                    best[(tx, ty)] = dsum
            if max(abs(tx), abs(ty)) == W:
                if boundary_min is None or dsum < boundary_min:
                    boundary_min = dsum
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
                    heapq.heappush(heap, (nd, counter, heads[d], nx, ny))
                    counter += 1
    assert boundary_min is not None, "window boundary unreachable"
    return best, boundary_min


def brute_norm(g: EmbeddedGraph, alpha: tuple[int, int], window: int = 2):
    """Smallest weight of a closed walk with homology class ``alpha``.

    Returns ``(weight, certificate)``.  Searches the lifted window directly
    and doubles it until the result is at most the cheapest window exit.
    """
    g.require_valid()
    if tuple(alpha) == (0, 0):
        raise ValueError("class must be non-zero")
    tau = g.from_coords(tuple(alpha))
    W = max(window, abs(tau[0]), abs(tau[1]))
    while True:
        assert W <= _WINDOW_LIMIT, "oracle window diverged"
        best, boundary_min = _window_sweep(g, W)
        value = best.get(tau)
        if value is not None and not boundary_min < value:
            return _as_weight(g, value), OracleCertificate(W, _as_weight(g, boundary_min))
        W *= 2


def brute_spectrum(g: EmbeddedGraph, k: int):
    """First k values of the marked length spectrum, with complete tie groups.

    Returns a list of ``(weight, classes)`` groups sorted by weight; classes
    are sorted homology classes in marked coordinates, every group is
    complete, and the total class count is at least k.
    """
    g.require_valid()
    if k < 1:
        raise ValueError("k must be positive")
    W = 2
    while True:
        assert W <= _WINDOW_LIMIT, "oracle window diverged"
        best, boundary_min = _window_sweep(g, W)
        values = sorted(best.values())
        if len(values) >= k and values[k - 1] < boundary_min:
            vk = values[k - 1]
            groups: dict = {}
            for tau, val in best.items():
                if not vk < val:
                    groups.setdefault(_as_weight(g, val), []).append(
                        g.to_coords(tau)
                    )
            out = [(w, sorted(cls)) for w, cls in groups.items()]
            out.sort(key=lambda item: item[0])
            return out
        W *= 2
