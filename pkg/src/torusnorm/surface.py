"""Weighted graphs cellularly embedded on the torus.

This module owns the rotation-system representation, the exact weight
arithmetic, parsing/serialization of the text format, validation, and the
homology layer (integer coordinates of closed walks and algebraic
intersection numbers).

Dart convention
---------------
Edge ``e`` (ids are 0-based) joining ``u`` to ``v`` contributes two darts:
dart ``2*e`` is the end at ``u``, traversed ``u -> v``; dart ``2*e + 1`` is
the end at ``v``, traversed ``v -> u``.  The twin of a dart is ``d ^ 1``.
The rotation system lists, for every vertex, the darts leaving it in
counterclockwise order; counterclockwise is the positive orientation of the
surface, which fixes the sign of all intersection numbers (flipping it would
negate them but change no norm or spectrum value).

Faces are the orbits of ``d -> rotation_successor(twin(d))``.  A closed walk
is a dart sequence in which every dart starts at the vertex where the
previous one ended, cyclically.

Weights
-------
Edge weights are positive reals of the form ``sum_i c_i * o_i`` where the
generators ``o_1..o_r`` are positive, linearly independent over Q, and known
through decimal approximations of stated precision.  The coefficients are
exact integers, so equality, addition and integer scaling are exact;  strict
comparison falls back to interval evaluation of the stated decimals when the
coefficient vectors do not settle the sign on their own.  The everyday
rational case is ``r = 1`` with ``o_1 = 1``:  the parser clears denominators
across the whole instance and the graph remembers the common scale so that
reported values can be unscaled.

Homology coordinates
--------------------
A tree-cotree decomposition assigns every dart an offset in Z^2 (zero on a
spanning tree, unit vectors on the two leftover edges, face-consistent on the
rest); the offset sum of a closed walk is its homology class in a provisional
basis.  Public coordinates go through a set-once *marking*: an oriented
Z^2-basis change fixed either from two cycles with intersection number +1
(the good short basis, in the default pipeline) or from an explicit matrix
(reconstruction fixes the marking to its input coordinates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Raised for malformed instance text."""


class InvalidGraphError(ValueError):
    """Raised when an operation needs a property that validation rejects."""


class WeightOrderError(ArithmeticError):
    """Raised when a weight comparison cannot be settled at the precision cap."""


class NotClosedError(ValueError):
    """Raised when a walk that must be closed is not."""


# ---------------------------------------------------------------------------
# Weights


class GeneratorSystem:
    """The positive reals ``o_1..o_r`` that edge weights are built from.

    Each generator carries a decimal approximation and the number of digits
    after the point that are known to be correct, so the true value lies in
    ``[approx - 10^-prec, approx + 10^-prec]``.  A precision of ``None``
    marks the generator as exact (used by the default rational system).
    """

    __slots__ = ("approx", "precision", "text", "r")

    def __init__(self, gens: Sequence[tuple[str, int | None]]):
        if not gens:
            raise ParseError("generator system needs r >= 1 generators")
        approx = []
        precision = []
        text = []
        for dec, prec in gens:
            try:
                val = Fraction(dec)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad generator value {dec!r}") from exc
            if prec is not None:
                if prec < 1:
                    raise ParseError("generator precision must be >= 1 digit")
                if val - Fraction(1, 10**prec) <= 0:
                    raise ParseError(
                        f"generator {dec!r} is not certifiably positive at "
                        f"{prec} digits"
                    )
            elif val <= 0:
                raise ParseError("generators must be positive")
            approx.append(val)
            precision.append(prec)
            text.append(str(dec))
        self.approx = tuple(approx)
        self.precision = tuple(precision)
        self.text = tuple(text)
        self.r = len(approx)

    @property
    def is_default_rational(self) -> bool:
        return self.r == 1 and self.precision[0] is None and self.approx[0] == 1

    def max_digits(self) -> int:
        digits = [p for p in self.precision if p is not None]
        return max(digits) if digits else 0

    def __repr__(self):
        return f"GeneratorSystem({list(zip(self.text, self.precision))!r})"


#: the r = 1, o_1 = 1 system used for rational weights
RATIONAL = GeneratorSystem([("1", None)])


class Weight:
    """Exact integer coefficient vector over a generator system.

    Supports addition, subtraction, negation and integer scaling exactly.
    Ordering is exact whenever the difference vector is single-signed
    (which covers equal and proportional vectors); otherwise the sign is
    settled by interval evaluation of the generator decimals, escalating
    the digits used up to the stated precision.  A comparison that is still
    ambiguous at the cap raises :class:`WeightOrderError` -- by the declared
    linear independence this can only mean the stated precision is too
    coarse, never that the values are equal.
    """

    __slots__ = ("coeffs", "system")

    def __init__(self, coeffs: Sequence[int], system: GeneratorSystem = RATIONAL):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != system.r:
            raise ValueError(f"expected {system.r} coefficients, got {len(coeffs)}")
        self.coeffs = coeffs
        self.system = system

    # -- arithmetic --------------------------------------------------------

    def _check_compat(self, other: "Weight"):
        if self.system is not other.system:
            raise ValueError("weights from different generator systems")

    def __add__(self, other: "Weight") -> "Weight":
        self._check_compat(other)
        return Weight([a + b for a, b in zip(self.coeffs, other.coeffs)], self.system)

    def __sub__(self, other: "Weight") -> "Weight":
        self._check_compat(other)
        return Weight([a - b for a, b in zip(self.coeffs, other.coeffs)], self.system)

    def __neg__(self) -> "Weight":
        return Weight([-a for a in self.coeffs], self.system)

    def __mul__(self, k: int) -> "Weight":
        if not isinstance(k, int):
            return NotImplemented
        return Weight([k * a for a in self.coeffs], self.system)

    __rmul__ = __mul__

    def zero(self) -> "Weight":
        return Weight([0] * self.system.r, self.system)

    # -- ordering ----------------------------------------------------------

    def interval(self, digits: int | None = None) -> tuple[Fraction, Fraction]:
        """Enclosing interval of the real value at the given digit budget."""
        lo = hi = Fraction(0)
        for c, val, prec in zip(self.coeffs, self.system.approx, self.system.precision):
            if c == 0:
                continue
            if prec is None:
                err = Fraction(0)
            else:
                use = prec if digits is None else min(digits, prec)
                err = Fraction(1, 10**use)
            if c > 0:
                lo += c * (val - err)
                hi += c * (val + err)
            else:
                lo += c * (val + err)
                hi += c * (val - err)
        return lo, hi

    def sign(self) -> int:
        """Sign of the real value: -1, 0 or +1.

        Exact when the coefficient vector is single-signed; interval-based
        otherwise (zero is then impossible by linear independence).
        """
        if all(c == 0 for c in self.coeffs):
            return 0
        if all(c >= 0 for c in self.coeffs):
            return 1
        if all(c <= 0 for c in self.coeffs):
            return -1
        cap = self.system.max_digits()
        digits = 6
        while True:
            lo, hi = self.interval(min(digits, cap))
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if digits >= cap:
                raise WeightOrderError(
                    f"cannot order weight {self.coeffs} at the stated generator "
                    f"precision ({cap} digits)"
                )
            digits *= 2

    def is_positive(self) -> bool:
        return self.sign() > 0

    def __lt__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        if self.system.r == 1:
            return self.coeffs[0] < other.coeffs[0]
        return (self - other).sign() < 0

    def __le__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        if self.system.r == 1:
            return self.coeffs[0] <= other.coeffs[0]
        return (self - other).sign() <= 0

    def __gt__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return other.__lt__(self)

    def __ge__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return other.__le__(self)

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self.system is other.system and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.system), self.coeffs))

    # -- reporting ---------------------------------------------------------

    def as_fraction(self, scale: int = 1) -> Fraction:
        """Exact rational value for r = 1 systems, unscaled by ``scale``."""
        if self.system.r != 1 or self.system.precision[0] is not None:
            raise ValueError("as_fraction needs the exact rational system")
        return Fraction(self.coeffs[0] * self.system.approx[0], scale)

    def approx_float(self, scale: int = 1) -> float:
        mid = sum(c * v for c, v in zip(self.coeffs, self.system.approx))
        return float(mid) / scale

    def __repr__(self):
        if self.system.r == 1:
            return f"Weight({self.coeffs[0]})"
        return f"Weight{self.coeffs}"


# ---------------------------------------------------------------------------
# Embedded graphs


def twin(d: int) -> int:
    return d ^ 1


def dart_edge(d: int) -> int:
    return d >> 1


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...]
    num_vertices: int
    num_edges: int
    num_faces: int | None  # None when the rotation is too broken to trace

    def summary(self) -> str:
        if self.ok:
            return (
                f"OK genus=1 V={self.num_vertices} E={self.num_edges} "
                f"F={self.num_faces}"
            )
        return "INVALID: " + "; ".join(self.problems)


class EmbeddedGraph:
    """A weighted graph with a rotation system, intended to live on the torus.

    Construction performs only type-level checks; use :func:`validate` for the
    full torus-embedding contract.  Instances are immutable after
    construction except for the set-once coordinate marking.
    """

    def __init__(
        self,
        num_vertices: int,
        edges: Sequence[tuple[int, int, Weight]],
        rotation: Sequence[Sequence[int]],
        system: GeneratorSystem = RATIONAL,
        scale: int = 1,
    ):
        self.num_vertices = int(num_vertices)
        self.edges = tuple((int(u), int(v), w) for (u, v, w) in edges)
        self.rotation = tuple(tuple(int(d) for d in r) for r in rotation)
        self.system = system
        self.scale = int(scale)
        for u, v, w in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ParseError(f"edge endpoint out of range: {(u, v)}")
            if w.system is not system:
                raise ParseError("edge weight from a foreign generator system")
        self._rot_pos: dict[int, tuple[int, int]] | None = None
        self._faces: tuple[tuple[int, ...], ...] | None = None
        self._report: ValidationReport | None = None
        self._offsets: dict[int, tuple[int, int]] | None = None
        self._orient_sign: int | None = None
        self._coords: tuple[tuple[int, int], tuple[int, int]] | None = None
        self._fundamental: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def dart_vertex(self, d: int) -> int:
        u, v, _ = self.edges[d >> 1]
        return u if d & 1 == 0 else v

    def head(self, d: int) -> int:
        return self.dart_vertex(d ^ 1)

    def edge_weight(self, e: int) -> Weight:
        return self.edges[e][2]

    def weight_from_fraction(self, q: Fraction | int) -> Weight:
        """Scaled Weight for an unscaled rational value (r = 1 systems)."""
        q = Fraction(q) * self.scale
        if q.denominator != 1:
            raise ValueError(f"value {q} does not land on the instance scale")
        return Weight([q.numerator], self.system)

    def zero_weight(self) -> Weight:
        return Weight([0] * self.system.r, self.system)

    def _rotation_positions(self) -> dict[int, tuple[int, int]]:
        if self._rot_pos is None:
            pos: dict[int, tuple[int, int]] = {}
            for v, rot in enumerate(self.rotation):
                for i, d in enumerate(rot):
                    pos[d] = (v, i)
            self._rot_pos = pos
        return self._rot_pos

    def rot_next(self, d: int) -> int:
        v, i = self._rotation_positions()[d]
        rot = self.rotation[v]
        return rot[(i + 1) % len(rot)]

    def next_in_face(self, d: int) -> int:
        return self.rot_next(d ^ 1)

    # -- faces and validation ----------------------------------------------

    def _rotation_problems(self) -> list[str]:
        problems = []
        if len(self.rotation) != self.num_vertices:
            problems.append(
                f"rotation lists {len(self.rotation)} vertices, expected "
                f"{self.num_vertices}"
            )
            return problems
        seen: dict[int, int] = {}
        for v, rot in enumerate(self.rotation):
            for d in rot:
                if not 0 <= d < 2 * self.num_edges:
                    problems.append(f"rotation at vertex {v} names unknown dart {d}")
                    continue
                if d in seen:
                    problems.append(f"dart {d} appears at vertices {seen[d]} and {v}")
                else:
                    seen[d] = v
                if self.dart_vertex(d) != v:
                    problems.append(
                        f"dart {d} listed at vertex {v} but belongs to vertex "
                        f"{self.dart_vertex(d)}"
                    )
        for d in range(2 * self.num_edges):
            if d not in seen:
                problems.append(f"dart {d} missing from the rotation system")
        return problems

    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Face walks as dart tuples (each dart in exactly one face)."""
        if self._faces is None:
            if self._rotation_problems():
                raise InvalidGraphError(
                    "cannot trace faces of a malformed rotation system"
                )
            visited = [False] * (2 * self.num_edges)
            faces = []
            for d0 in range(2 * self.num_edges):
                if visited[d0]:
                    continue
                walk = []
                d = d0
                while not visited[d]:
                    visited[d] = True
                    walk.append(d)
                    d = self.next_in_face(d)
                assert d == d0, "face tracing left its orbit"
                faces.append(tuple(walk))
            self._faces = tuple(faces)
        return self._faces

    def _connected(self) -> bool:
        if self.num_vertices == 0:
            return False
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * self.num_vertices
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        return all(seen)

    def require_valid(self):
        rep = validate(self)
        if not rep.ok:
            raise InvalidGraphError(rep.summary())

    # -- homology offsets ----------------------------------------------------

    def _spanning_tree(self):
        """BFS tree: (tree edge set, parent vertex, parent edge, depth)."""
        V = self.num_vertices
        adj: list[list[tuple[int, int]]] = [[] for _ in range(V)]
        for e, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, e))
            adj[v].append((u, e))
        parent = [-1] * V
        parent_edge = [-1] * V
        depth = [0] * V
        seen = [False] * V
        seen[0] = True
        order = [0]
        qi = 0
        tree: set[int] = set()
        while qi < len(order):
            u = order[qi]
            qi += 1
            for v, e in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    parent_edge[v] = e
                    depth[v] = depth[u] + 1
                    tree.add(e)
                    order.append(v)
        if len(order) != V:
            raise InvalidGraphError("graph is disconnected")
        return tree, parent, parent_edge, depth

    def _tree_dart(self, child: int, parent_edge: list[int]) -> int:
        """Dart traversing the tree edge from ``child`` toward its parent."""
        e = parent_edge[child]
        u, v, _ = self.edges[e]
        return 2 * e if u == child else 2 * e + 1

    def _tree_path_darts(self, a: int, b: int, parent, parent_edge, depth):
        """Darts of the spanning-tree path from ``a`` to ``b``."""
        up_a: list[int] = []
        up_b: list[int] = []
        x, y = a, b
        while depth[x] > depth[y]:
            up_a.append(self._tree_dart(x, parent_edge))
            x = parent[x]
        while depth[y] > depth[x]:
            up_b.append(self._tree_dart(y, parent_edge))
            y = parent[y]
        while x != y:
            up_a.append(self._tree_dart(x, parent_edge))
            x = parent[x]
            up_b.append(self._tree_dart(y, parent_edge))
            y = parent[y]
        return tuple(up_a) + tuple(twin(d) for d in reversed(up_b))

    def _compute_offsets(self):
        """Per-dart Z^2 offsets: zero on a spanning tree, unit vectors on the
        two leftover edges, and face-consistent on the rest.  Also records
        the two fundamental cycles (leftover edge + tree path), which are
        simple and realize the provisional classes (1,0) and (0,1)."""
        self.require_valid()
        tree, parent, parent_edge, depth = self._spanning_tree()
        faces = self.faces()
        F = len(faces)
        face_of: dict[int, int] = {}
        for i, f in enumerate(faces):
            for d in f:
                face_of[d] = i
        dadj: list[list[tuple[int, int]]] = [[] for _ in range(F)]
        for e in range(self.num_edges):
            if e in tree:
                continue
            f1, f2 = face_of[2 * e], face_of[2 * e + 1]
            dadj[f1].append((f2, e))
            dadj[f2].append((f1, e))
        dseen = [False] * F
        dseen[0] = True
        dorder = [0]
        dparent_edge = [-1] * F
        dtree: set[int] = set()
        qi = 0
        while qi < len(dorder):
            f = dorder[qi]
            qi += 1
            for gface, e in dadj[f]:
                if not dseen[gface]:
                    dseen[gface] = True
                    dparent_edge[gface] = e
                    dtree.add(e)
                    dorder.append(gface)
        assert all(dseen), "dual graph of a connected embedding is connected"
        leftover = [
            e for e in range(self.num_edges) if e not in tree and e not in dtree
        ]
        assert len(leftover) == 2, (
            f"tree-cotree on a torus leaves 2 edges, got {len(leftover)}"
        )
        off: dict[int, tuple[int, int]] = {}
        for e in tree:
            off[2 * e] = (0, 0)
            off[2 * e + 1] = (0, 0)
        off[2 * leftover[0]] = (1, 0)
        off[2 * leftover[0] + 1] = (-1, 0)
        off[2 * leftover[1]] = (0, 1)
        off[2 * leftover[1] + 1] = (0, -1)
        for f in reversed(dorder[1:]):
            e = dparent_edge[f]
            d_f = 2 * e if face_of[2 * e] == f else 2 * e + 1
            sx = sy = 0
            for d in faces[f]:
                if d == d_f:
                    continue
                ox, oy = off[d]
                sx += ox
                sy += oy
            off[d_f] = (-sx, -sy)
            off[d_f ^ 1] = (sx, sy)
        assert len(off) == 2 * self.num_edges
        for f in faces:
            assert sum(off[d][0] for d in f) == 0
            assert sum(off[d][1] for d in f) == 0
        self._offsets = off
        fund = []
        for e in leftover:
            u, v, _ = self.edges[e]
            path = self._tree_path_darts(v, u, parent, parent_edge, depth)
            fund.append((2 * e,) + path)
        self._fundamental = (fund[0], fund[1])
        assert self.provisional_class(fund[0]) == (1, 0)
        assert self.provisional_class(fund[1]) == (0, 1)

    def dart_offset(self, d: int) -> tuple[int, int]:
        if self._offsets is None:
            self._compute_offsets()
        return self._offsets[d]

    def provisional_class(self, walk: Sequence[int]) -> tuple[int, int]:
        """Homology class of a closed walk in the provisional basis."""
        check_closed(self, walk)
        if self._offsets is None:
            self._compute_offsets()
        off = self._offsets
        x = y = 0
        for d in walk:
            ox, oy = off[d]
            x += ox
            y += oy
        return (x, y)

    def orientation_sign(self) -> int:
        """Global sign relating provisional determinants to intersection
        numbers, calibrated once from the rotation system by running the
        crossing rule on the two fundamental cycles."""
        if self._orient_sign is None:
            if self._offsets is None:
                self._compute_offsets()
            f1, f2 = self._fundamental
            s = _simple_cycle_crossing(self, f1, f2)
            assert s in (-1, 1), f"fundamental cycles must cross once, got {s}"
            self._orient_sign = s
        return self._orient_sign

    # -- coordinate marking --------------------------------------------------

    def fix_coords(self, matrix: tuple[tuple[int, int], tuple[int, int]]):
        """Set-once: public coordinates are ``matrix @ provisional``.

        The matrix must be unimodular and positively oriented (determinant
        equal to the graph's orientation sign), so that the intersection
        pairing in public coordinates is exactly ``x_u*y_v - x_v*y_u``.
        """
        (a, b), (c, d) = matrix
        det = a * d - b * c
        if det not in (-1, 1):
            raise ValueError("coordinate marking must be unimodular")
        if det != self.orientation_sign():
            raise ValueError("coordinate marking must be positively oriented")
        m = ((int(a), int(b)), (int(c), int(d)))
        if self._coords is not None:
            if self._coords != m:
                raise ValueError("coordinate marking already fixed differently")
            return
        self._coords = m

    def fix_marking(self, a_walk: Sequence[int], b_walk: Sequence[int]):
        """Set-once: coordinates in which ``a_walk`` is (1,0), ``b_walk`` (0,1).

        Requires algebraic_intersection(a, b) = +1.
        """
        ap = self.provisional_class(a_walk)
        bp = self.provisional_class(b_walk)
        dd = ap[0] * bp[1] - ap[1] * bp[0]
        if dd not in (-1, 1):
            raise ValueError("marking cycles do not form a homology basis")
        # inverse of the column matrix [ap bp]: rows of the marking matrix
        inv = ((bp[1] * dd, -bp[0] * dd), (-ap[1] * dd, ap[0] * dd))
        # dd in {-1, 1} so dividing by it is multiplying by it
        self.fix_coords(inv)

    def has_coords(self) -> bool:
        return self._coords is not None

    def to_coords(self, prov: tuple[int, int]) -> tuple[int, int]:
        if self._coords is None:
            raise InvalidGraphError("no coordinate marking fixed yet")
        (a, b), (c, d) = self._coords
        return (a * prov[0] + b * prov[1], c * prov[0] + d * prov[1])

    def from_coords(self, xy: tuple[int, int]) -> tuple[int, int]:
        if self._coords is None:
            raise InvalidGraphError("no coordinate marking fixed yet")
        (a, b), (c, d) = self._coords
        det = a * d - b * c  # +-1
        x, y = xy
        return (det * (d * x - b * y), det * (a * y - c * x))


def validate(g: EmbeddedGraph) -> ValidationReport:
    """Full torus-embedding check: well-formed rotation, positive weights,
    connectivity, and Euler characteristic zero."""
    if g._report is not None:
        return g._report
    problems = list(g._rotation_problems())
    for e, (_, _, w) in enumerate(g.edges):
        try:
            if not w.is_positive():
                problems.append(f"edge {e} has nonpositive weight")
        except WeightOrderError:
            problems.append(f"edge {e} weight positivity undecidable at stated precision")
    connected = g._connected()
    if not connected:
        problems.append("graph is disconnected")
    num_faces = None
    if not g._rotation_problems():
        num_faces = len(g.faces())
        chi = g.num_vertices - g.num_edges + num_faces
        if chi != 0:
            genus = (2 - chi) / 2
            problems.append(
                f"Euler characteristic {chi} (genus {genus}), expected 0 (torus)"
            )
    rep = ValidationReport(
        ok=not problems,
        problems=tuple(problems),
        num_vertices=g.num_vertices,
        num_edges=g.num_edges,
        num_faces=num_faces,
    )
    g._report = rep
    return rep


# ---------------------------------------------------------------------------
# Walks and cycles


def check_closed(g: EmbeddedGraph, walk: Sequence[int]):
    if not walk:
        raise NotClosedError("empty walk")
    for d in walk:
        if not 0 <= d < 2 * g.num_edges:
            raise NotClosedError(f"unknown dart {d}")
    for i, d in enumerate(walk):
        nxt = walk[(i + 1) % len(walk)]
        if g.head(d) != g.dart_vertex(nxt):
            raise NotClosedError(
                f"dart {nxt} does not start where dart {d} ends"
            )


def walk_weight(g: EmbeddedGraph, walk: Sequence[int]) -> Weight:
    total = g.zero_weight()
    for d in walk:
        total = total + g.edge_weight(d >> 1)
    return total


def walk_vertices(g: EmbeddedGraph, walk: Sequence[int]) -> tuple[int, ...]:
    return tuple(g.dart_vertex(d) for d in walk)


def reverse_walk(walk: Sequence[int]) -> tuple[int, ...]:
    return tuple(d ^ 1 for d in reversed(walk))


def is_simple_cycle(g: EmbeddedGraph, walk: Sequence[int]) -> bool:
    """No repeated vertices and no repeated edges."""
    verts = walk_vertices(g, walk)
    if len(set(verts)) != len(verts):
        return False
    edges = [d >> 1 for d in walk]
    return len(set(edges)) == len(edges)


def canonical_rotation(walk: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least cyclic rotation (for deterministic ties)."""
    w = tuple(walk)
    return min(w[i:] + w[:i] for i in range(len(w)))


@dataclass(frozen=True)
class Cycle:
    """A closed walk with its weight and provisional class cached."""

    graph: EmbeddedGraph
    darts: tuple[int, ...]
    weight: Weight
    prov_class: tuple[int, int]

    @classmethod
    def of(cls, g: EmbeddedGraph, darts: Sequence[int]) -> "Cycle":
        darts = tuple(darts)
        return cls(g, darts, walk_weight(g, darts), g.provisional_class(darts))

    @property
    def homology_class(self) -> tuple[int, int]:
        return self.graph.to_coords(self.prov_class)

    def reversed(self) -> "Cycle":
        return Cycle(
            self.graph,
            reverse_walk(self.darts),
            self.weight,
            (-self.prov_class[0], -self.prov_class[1]),
        )

    def is_simple(self) -> bool:
        return is_simple_cycle(self.graph, self.darts)

    def __len__(self):
        return len(self.darts)


# ---------------------------------------------------------------------------
# Homology operations


def homology_class(g: EmbeddedGraph, walk: Sequence[int]) -> tuple[int, int]:
    """Class of a closed walk in the marked coordinates (the fixed basis)."""
    return g.to_coords(g.provisional_class(walk))


def algebraic_intersection(
    g: EmbeddedGraph, c: Sequence[int] | Cycle, d: Sequence[int] | Cycle
) -> int:
    """Intersection pairing of two closed walks.

    Bilinear and antisymmetric; depends only on homology classes; positive
    orientation is counterclockwise rotation.  Computed from provisional
    classes and the calibrated orientation sign, which agrees with the
    rotation-order crossing rule on simple cycles.
    """
    cp = c.prov_class if isinstance(c, Cycle) else g.provisional_class(c)
    dp = d.prov_class if isinstance(d, Cycle) else g.provisional_class(d)
    return g.orientation_sign() * (cp[0] * dp[1] - cp[1] * dp[0])


def _arc_side(rot: tuple[int, ...], pos: dict[int, int], out_end: int,
              in_end: int, probe: int) -> str:
    """LEFT if ``probe`` lies strictly ccw-between ``out_end`` and ``in_end``.

    ``out_end``/``in_end`` are the two ends of a cycle at a vertex (the dart
    it leaves by and the twin of the dart it arrived by); darts strictly
    between them going counterclockwise from the out-end sit on the cycle's
    left.
    """
    n = len(rot)
    io, ii, ip = pos[out_end], pos[in_end], pos[probe]
    assert probe != out_end and probe != in_end
    span = (ii - io) % n
    return "L" if 0 < (ip - io) % n < span else "R"


def _simple_cycle_crossing(g: EmbeddedGraph, c: Sequence[int], d: Sequence[int]) -> int:
    """Algebraic crossing number of two simple cycles from the rotation order.

    Shared subpaths are handled as corridors: the strand of ``d`` enters and
    leaves a maximal shared component on a side of ``c`` determined by
    rotation-arc membership; a crossing is counted iff the sides differ, with
    sign +1 when ``d`` enters on the right of ``c``.
    """
    c = tuple(c)
    d = tuple(d)
    if not (is_simple_cycle(g, c) and is_simple_cycle(g, d)):
        raise ValueError("crossing rule needs simple cycles")
    edges_c = {dt >> 1 for dt in c}
    edges_d = {dt >> 1 for dt in d}
    shared = edges_c & edges_d
    if edges_c == edges_d:
        return 0  # same cycle up to direction: self-intersection is zero
    pos_in_d = {g.dart_vertex(dt): j for j, dt in enumerate(d)}
    rotpos = {}
    for v, rot in enumerate(g.rotation):
        rotpos[v] = {dt: i for i, dt in enumerate(rot)}

    def c_ends_at(i):
        """(out_end, in_end) of c at position i (vertex tail of c[i])."""
        return c[i], c[i - 1] ^ 1

    def d_ends_at(v):
        j = pos_in_d[v]
        return d[j], d[j - 1] ^ 1

    m = len(c)
    used_vertices: set[int] = set()
    total = 0

    # corridors: maximal cyclic runs of shared edges along c
    run_flags = [c[i] >> 1 in shared for i in range(m)]
    if any(run_flags):
        # find run starts (a shared edge whose predecessor isn't shared)
        starts = [i for i in range(m) if run_flags[i] and not run_flags[i - 1]]
        for s in starts:
            ln = 0
            while run_flags[(s + ln) % m]:
                ln += 1
            i_start = s
            i_end = (s + ln) % m
            v_start = g.dart_vertex(c[i_start])
            v_end = g.dart_vertex(c[i_end])
            for i in range(ln + 1):
                used_vertices.add(g.dart_vertex(c[(s + i) % m]))
            # d's free ends at the two corridor endpoints
            sides = {}
            for vv, ci in ((v_start, i_start), (v_end, i_end)):
                out_c, in_c = c_ends_at(ci)
                out_d, in_d = d_ends_at(vv)
                free = [x for x in (out_d, in_d) if (x >> 1) not in shared]
                assert len(free) == 1, "corridor endpoint has one free d-strand"
                rot = g.rotation[vv]
                kind = "out" if free[0] == out_d else "in"
                sides[kind] = _arc_side(rot, rotpos[vv], out_c, in_c, free[0])
            assert set(sides) == {"out", "in"}, "one entry and one exit strand"
            if sides["in"] != sides["out"]:
                total += 1 if sides["in"] == "R" else -1

    # isolated shared vertices
    verts_c = set(walk_vertices(g, c))
    for j, dt in enumerate(d):
        v = g.dart_vertex(dt)
        if v not in verts_c or v in used_vertices:
            continue
        i = next(i for i in range(m) if g.dart_vertex(c[i]) == v)
        out_c, in_c = c_ends_at(i)
        out_d, in_d = d[j], d[j - 1] ^ 1
        rot = g.rotation[v]
        side_in = _arc_side(rot, rotpos[v], out_c, in_c, in_d)
        side_out = _arc_side(rot, rotpos[v], out_c, in_c, out_d)
        if side_in != side_out:
            total += 1 if side_in == "R" else -1
    return total


# ---------------------------------------------------------------------------
# Text format


def _parse_weight_token(tokens: list[str], system: GeneratorSystem) -> list[Fraction] | list[int]:
    if system.r == 1 and system.precision[0] is None:
        if len(tokens) != 1:
            raise ParseError(f"expected one rational weight, got {tokens!r}")
        try:
            q = Fraction(tokens[0])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad weight {tokens[0]!r}") from exc
        return [q]
    if len(tokens) != system.r:
        raise ParseError(
            f"expected {system.r} integer coefficients, got {tokens!r}"
        )
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"bad coefficient in {tokens!r}") from exc


def parse_graph(text: str) -> EmbeddedGraph:
    """Parse the line-oriented instance format.

    ``vertices V`` / optional ``generators r`` + ``gen i decimal digits``
    lines / ``edge id u v c1 .. cr`` (or one ``p/q`` when r = 1) /
    ``rotation v dart..`` with darts written ``edge.0`` / ``edge.1`` in
    counterclockwise order.  ``#`` starts a comment.  Rational weights are
    scaled to a common denominator; the graph remembers the scale.
    """
    num_vertices: int | None = None
    gen_lines: dict[int, tuple[str, int]] = {}
    num_gens: int | None = None
    edge_lines: dict[int, tuple[int, int, list]] = {}
    rotation_lines: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "vertices":
                num_vertices = int(parts[1])
            elif key == "generators":
                num_gens = int(parts[1])
            elif key == "gen":
                idx = int(parts[1])
                gen_lines[idx] = (parts[2], int(parts[3]))
            elif key == "edge":
                e = int(parts[1])
                u, v = int(parts[2]), int(parts[3])
                if e in edge_lines:
                    raise ParseError(f"duplicate edge id {e}")
                edge_lines[e] = (u, v, parts[4:])
            elif key == "rotation":
                v = int(parts[1])
                if v in rotation_lines:
                    raise ParseError(f"duplicate rotation line for vertex {v}")
                darts = []
                for tok in parts[2:]:
                    eid, _, side = tok.partition(".")
                    if side not in ("0", "1"):
                        raise ParseError(f"bad dart token {tok!r}")
                    darts.append(2 * int(eid) + int(side))
                rotation_lines[v] = darts
            else:
                raise ParseError(f"unknown directive {key!r}")
        except ParseError:
            raise
        except (IndexError, ValueError) as exc:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}") from exc
    if num_vertices is None:
        raise ParseError("missing 'vertices' line")
    if num_gens is None and gen_lines:
        raise ParseError("gen lines without a generators count")
    if num_gens is not None:
        if sorted(gen_lines) != list(range(1, num_gens + 1)):
            raise ParseError("gen indices must cover 1..r exactly once")
        system = GeneratorSystem([gen_lines[i] for i in range(1, num_gens + 1)])
    else:
        system = RATIONAL
    if sorted(edge_lines) != list(range(len(edge_lines))):
        raise ParseError("edge ids must cover 0..E-1")
    raw_weights = []
    for e in range(len(edge_lines)):
        u, v, toks = edge_lines[e]
        raw_weights.append(_parse_weight_token(toks, system))
    scale = 1
    edges = []
    if system.r == 1 and system.precision[0] is None:
        for vals in raw_weights:
            scale = scale * vals[0].denominator // math.gcd(scale, vals[0].denominator)
        for e in range(len(edge_lines)):
            u, v, _ = edge_lines[e]
            q = raw_weights[e][0] * scale
            edges.append((u, v, Weight([q.numerator], system)))
    else:
        for e in range(len(edge_lines)):
            u, v, _ = edge_lines[e]
            edges.append((u, v, Weight(raw_weights[e], system)))
    rotation = [tuple(rotation_lines.get(v, ())) for v in range(num_vertices)]
    extra = set(rotation_lines) - set(range(num_vertices))
    if extra:
        raise ParseError(f"rotation lines for unknown vertices {sorted(extra)}")
    for v, darts in rotation_lines.items():
        for d in darts:
            if d >> 1 >= len(edge_lines):
                raise ParseError(
                    f"rotation at vertex {v} names unknown edge {d >> 1}"
                )
    return EmbeddedGraph(num_vertices, edges, rotation, system, scale)


def parse_file(path) -> EmbeddedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def to_text(g: EmbeddedGraph) -> str:
    """Serialize back to the instance format (weights unscaled)."""
    out = [f"vertices {g.num_vertices}"]
    if not g.system.is_default_rational:
        out.append(f"generators {g.system.r}")
        for i in range(g.system.r):
            out.append(
                f"gen {i + 1} {g.system.text[i]} {g.system.precision[i]}"
            )
    rational = g.system.r == 1 and g.system.precision[0] is None
    for e, (u, v, w) in enumerate(g.edges):
        if rational:
            q = w.as_fraction(g.scale)
            tok = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
            out.append(f"edge {e} {u} {v} {tok}")
        else:
            out.append(f"edge {e} {u} {v} " + " ".join(str(c) for c in w.coeffs))
    for v, rot in enumerate(g.rotation):
        toks = " ".join(f"{d >> 1}.{d & 1}" for d in rot)
        out.append(f"rotation {v} {toks}")
    return "\n".join(out) + "\n"
