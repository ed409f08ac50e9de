"""Unmarked length spectrum enumeration.

Sweeps all cones between consecutive ball directions in parallel, growing
the norm radius.  Each cone keeps two fronts of already swept lattice
points: those whose horizontal successor is not yet swept and those whose
vertical successor is not yet swept.  The next point of a cone is always
the successor of a front bottom, so a global heap over cones keyed by that
candidate norm yields the spectrum in nondecreasing order.

Every emitted point enters both fronts (its two successors are strictly
heavier at that moment) and leaves a front exactly when its successor in
that direction is emitted, which keeps the fronts exact without cleanup
passes.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from torusnorm.ball import UnitBall
from torusnorm.surface import Weight


@dataclass(frozen=True)
class SpectrumItem:
    value: Weight
    cls: tuple[int, int]


class _ConeSweep:
    """Fronts of one cone spanned by consecutive ball entries."""

    __slots__ = ("wi", "wj", "front_h", "front_v")

    def __init__(self, wi: Weight, wj: Weight):
        self.wi = wi
        self.wj = wj
        self.front_h: deque[tuple[int, int]] = deque()
        self.front_v: deque[tuple[int, int]] = deque([(0, 0)])

    def norm(self, xy: tuple[int, int]) -> Weight:
        return xy[0] * self.wi + xy[1] * self.wj

    def candidate(self) -> tuple[Weight, tuple[int, int]] | None:
        """Minimum-norm unswept point: successor of a front bottom."""
        best = None
        if self.front_h:
            x, y = self.front_h[0]
            best = (self.norm((x + 1, y)), (x + 1, y))
        if self.front_v:
            x, y = self.front_v[0]
            cv = (self.norm((x, y + 1)), (x, y + 1))
            if best is None or cv[0] < best[0] or (cv[0] == best[0] and cv[1] < best[1]):
                best = cv
        return best

    def emit(self, xy: tuple[int, int]) -> None:
        if self.front_h and (self.front_h[0][0] + 1, self.front_h[0][1]) == xy:
            self.front_h.popleft()
        if self.front_v and (self.front_v[0][0], self.front_v[0][1] + 1) == xy:
            self.front_v.popleft()
        self.front_h.append(xy)
        self.front_v.append(xy)


def spectrum(ball: UnitBall, k: int) -> list[SpectrumItem]:
    """First k values of the length spectrum with their classes.

    Nondecreasing values; each class appears at most once; multiplicity
    shows as repeated values.  Ties are broken by cone index, then by cone
    coordinates, so the output is deterministic.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    H = ball.H
    n = len(H)
    cones = [_ConeSweep(H[i].weight, H[(i + 1) % n].weight) for i in range(n)]
    stamps = [0] * n
    heap: list = []

    def push(i: int) -> None:
        cand = cones[i].candidate()
        assert cand is not None
        value, xy = cand
        stamps[i] += 1
        heapq.heappush(heap, (value, i, xy, stamps[i]))

    for i in range(n):
        push(i)
    out: list[SpectrumItem] = []
    while len(out) < k:
        value, i, xy, stamp = heapq.heappop(heap)
        if stamp != stamps[i]:
            continue
        cones[i].emit(xy)
        ci = H[i].cls
        cj = H[(i + 1) % n].cls
        cls = (xy[0] * ci[0] + xy[1] * cj[0], xy[0] * ci[1] + xy[1] * cj[1])
        assert cls != (0, 0)
        out.append(SpectrumItem(value=value, cls=cls))
        assert len(out) < 2 or not value < out[-2].value
        push(i)
    return out


def spectrum_multiset(ball: UnitBall, k: int) -> list[tuple[Weight, int, bool]]:
    """Consecutive equal values grouped as (value, multiplicity, complete).

    ``complete`` is False on the last group when the k-th value continues
    past the cutoff, i.e. the reported multiplicity is only a lower bound.
    """
    items = spectrum(ball, k + 1)
    tail = items.pop()
    groups: list[tuple[Weight, int, bool]] = []
    for it in items:
        if groups and groups[-1][0] == it.value:
            value, mult, comp = groups[-1]
            groups[-1] = (value, mult + 1, comp)
        else:
            groups.append((it.value, 1, True))
    if groups and groups[-1][0] == tail.value:
        value, mult, _ = groups[-1]
        groups[-1] = (value, mult, False)
    return groups
