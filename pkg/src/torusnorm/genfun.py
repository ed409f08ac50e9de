"""Isospectrality tests: ball matching and spectrum generating functions.

Two instruments live here.  The marked test compares two unit balls up to
an integer change of homology basis: a 2x2 matrix of determinant +-1 that
carries one ball onto the other, found by anchoring one adjacent extremal
pair and trying all candidate image pairs.  The unmarked test compares
length spectra as multisets through their generating functions: the full
class list of a ball packages the spectrum into a short factored rational
function with one term per adjacent pair of classes, and two such
functions are compared either by exact dense expansion of the
cross-multiplied difference or by randomized evaluation at big integer
points with one-sided error.

Exponent bookkeeping: an exponent vector is a cycle weight's integer
coefficient vector over the graph's generator system, already multiplied
by the instance scale when fractional weights were cleared at parse time.
Two instances are brought to a joint scale before any comparison; the
display normal form additionally divides out the joint gcd of all
exponents so that the series variable counts the natural spectral unit.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

from torusnorm.ball import UnitBall
from torusnorm.surface import EmbeddedGraph, GeneratorSystem, Weight


@dataclass(frozen=True)
class Gl2Match:
    """An integer basis change carrying one unit ball onto another."""

    matrix: tuple[tuple[int, int], tuple[int, int]]

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def apply(self, cls: tuple[int, int]) -> tuple[int, int]:
        (a, b), (c, d) = self.matrix
        return (a * cls[0] + b * cls[1], c * cls[0] + d * cls[1])

    def inverse(self) -> "Gl2Match":
        (a, b), (c, d) = self.matrix
        s = self.det
        assert s in (1, -1)
        return Gl2Match(((d * s, -b * s), (-c * s, a * s)))


@dataclass(frozen=True)
class GenFun:
    """Factored generating function of the non-zero length spectrum.

    ``lambdas`` holds one integer exponent vector per ball class, in the
    ball's cyclic order; term ``i`` of the factored form is
    ``z^{lambdas[i+1]} / ((1 - z^{lambdas[i]}) (1 - z^{lambdas[i+1]}))``
    with indices mod ``t``.  Components may be negative (a positive weight
    value does not need positive coefficients), which expansion handles by
    splitting each vector into its positive and negative parts.
    """

    lambdas: tuple[tuple[int, ...], ...]
    scale: int
    system: GeneratorSystem

    @property
    def t(self) -> int:
        return len(self.lambdas)

    @property
    def r(self) -> int:
        return self.system.r

    def degree_bound(self) -> int:
        """Total degree bound of the cleared-denominator form."""
        return sum(abs(c) for lam in self.lambdas for c in lam)

    def value_at(self, point: Sequence[int]) -> Fraction:
        """Exact value of the factored form at an integer point.

        Raises ZeroDivisionError when a coordinate is zero (negative
        exponents) or some denominator factor vanishes at the point.
        """
        if len(point) != self.r:
            raise ValueError(f"expected {self.r} coordinates, got {len(point)}")
        if any(v == 0 for v in point):
            raise ZeroDivisionError("zero coordinate")
        monos = [_monomial_value(point, lam) for lam in self.lambdas]
        total = Fraction(0)
        for i, mono in enumerate(monos):
            nxt = monos[(i + 1) % len(monos)]
            total += nxt / ((1 - mono) * (1 - nxt))
        return total


def _monomial_value(point: Sequence[int], lam: Sequence[int]) -> Fraction:
    val = Fraction(1)
    for v, e in zip(point, lam):
        val *= Fraction(v) ** e
    return val


def generating_function(ball: UnitBall) -> GenFun:
    """Package a ball's class weights into the factored spectrum series."""
    lambdas = tuple(entry.weight.coeffs for entry in ball.H)
    assert len(lambdas) >= 4
    return GenFun(lambdas=lambdas, scale=ball.graph.scale, system=ball.graph.system)


# -- cross-instance weight comparison ---------------------------------------


def _comparable_mode(g1: EmbeddedGraph, g2: EmbeddedGraph) -> str:
    """How weights of two instances can be compared exactly.

    Exact rational instances (r = 1, exact generator) always compare
    through plain fractions.  Everything else needs literally the same
    generator system on both sides, in which case coefficient vectors
    compare componentwise.
    """
    s1, s2 = g1.system, g2.system
    if (
        s1.r == 1
        and s2.r == 1
        and s1.precision[0] is None
        and s2.precision[0] is None
    ):
        return "fraction"
    if s1.r != s2.r or s1.approx != s2.approx or s1.precision != s2.precision:
        raise ValueError(
            "instances use different weight generator systems; declare both "
            "over one common system to compare them"
        )
    return "vector"


def _value_key(g: EmbeddedGraph, w: Weight, mode: str):
    if mode == "fraction":
        return w.as_fraction(g.scale)
    assert g.scale == 1
    return w.coeffs


# -- marked spectrum ---------------------------------------------------------


def marked_equal(ball1: UnitBall, ball2: UnitBall) -> Gl2Match | None:
    """Find a determinant +-1 basis change carrying ball1 onto ball2.

    Returns None when none exists (different marked spectra).  One
    adjacent extremal pair of ball1 is anchored; every adjacent pair of
    ball2, in both rotational directions, is tried as its image.  Since a
    valid matrix sends primitive classes to primitive classes along the
    same ray, matching extremal points must have exactly equal weights, so
    candidate pairs are pre-filtered by weight and the matrix is solved on
    the classes alone.
    """
    e1, e2 = ball1.extremal, ball2.extremal
    if len(e1) != len(e2):
        return None
    mode = _comparable_mode(ball1.graph, ball2.graph)
    keys1 = [_value_key(ball1.graph, p.weight, mode) for p in e1]
    keys2 = [_value_key(ball2.graph, p.weight, mode) for p in e2]
    targets = {p.cls: k for p, k in zip(e2, keys2)}
    c0, c1 = e1[0].cls, e1[1].cls
    det0 = c0[0] * c1[1] - c0[1] * c1[0]
    assert det0 > 0, "extremal classes are not strictly sorted"
    n = len(e1)
    for j in range(n):
        for step in (1, -1):
            jn = (j + step) % n
            if keys1[0] != keys2[j] or keys1[1] != keys2[jn]:
                continue
            m = _solve_gl2(c0, c1, e2[j].cls, e2[jn].cls, det0)
            if m is None:
                continue
            match = Gl2Match(m)
            if all(
                targets.get(match.apply(p.cls)) == k for p, k in zip(e1, keys1)
            ):
                return match
    return None


def _solve_gl2(c0, c1, d0, d1, det0) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Integer solution M of M c0 = d0, M c1 = d1 with det +-1, or None."""
    # M = [d0 d1] adj([c0 c1]) / det0, entry by entry over the integers.
    raw = (
        d0[0] * c1[1] - d1[0] * c0[1],
        -d0[0] * c1[0] + d1[0] * c0[0],
        d0[1] * c1[1] - d1[1] * c0[1],
        -d0[1] * c1[0] + d1[1] * c0[0],
    )
    if any(x % det0 for x in raw):
        return None
    a, b, c, d = (x // det0 for x in raw)
    if a * d - b * c not in (1, -1):
        return None
    return ((a, b), (c, d))


# -- joint scaling and normal form -------------------------------------------


def _unit(gf: GenFun) -> Fraction | None:
    """Spectral value of one exponent unit, when exactly rational."""
    s = gf.system
    if s.r == 1 and s.precision[0] is None:
        return Fraction(s.approx[0], gf.scale)
    return None


def _rescaled(gf: GenFun, mult: int) -> GenFun:
    if mult == 1:
        return gf
    lambdas = tuple(tuple(c * mult for c in lam) for lam in gf.lambdas)
    return GenFun(lambdas=lambdas, scale=gf.scale * mult, system=gf.system)


def _joint_scale(gf1: GenFun, gf2: GenFun) -> tuple[GenFun, GenFun]:
    """Bring two instances to one exponent unit before comparing."""
    u1, u2 = _unit(gf1), _unit(gf2)
    if u1 is not None and u2 is not None:
        common = Fraction(
            gcd(u1.numerator * u2.denominator, u2.numerator * u1.denominator),
            u1.denominator * u2.denominator,
        )
        m1, m2 = u1 / common, u2 / common
        if m1.denominator != 1 or m2.denominator != 1:
            raise ValueError("joint scaling produced non-integral exponents")
        return _rescaled(gf1, m1.numerator), _rescaled(gf2, m2.numerator)
    if gf1.system.r != gf2.system.r or gf1.system.approx != gf2.system.approx:
        raise ValueError(
            "instances use different weight generator systems; declare both "
            "over one common system to compare them"
        )
    assert gf1.scale == 1 and gf2.scale == 1
    return gf1, gf2


def joint_normal_form(*gfs: GenFun) -> tuple[GenFun, ...]:
    """Display normal form: joint scale, then divide out the joint gcd.

    With one argument this reduces the instance by its own exponent gcd.
    The outputs are meant for printing and golden-form comparison; the
    reduced exponents no longer combine with the stored scale, so do not
    feed them back into joint operations with unreduced instances.
    """
    if not gfs:
        return ()
    units = [_unit(gf) for gf in gfs]
    if all(u is not None for u in units):
        common = units[0]
        for u in units[1:]:
            common = Fraction(
                gcd(common.numerator * u.denominator, u.numerator * common.denominator),
                common.denominator * u.denominator,
            )
        mults = [u / common for u in units]
        assert all(m.denominator == 1 for m in mults)
        scaled = [_rescaled(gf, m.numerator) for gf, m in zip(gfs, mults)]
    else:
        for gf in gfs[1:]:
            _joint_scale(gfs[0], gf)
        scaled = list(gfs)
    g = 0
    for gf in scaled:
        for lam in gf.lambdas:
            for c in lam:
                g = gcd(g, abs(c))
    if g <= 1:
        return tuple(scaled)
    return tuple(
        GenFun(
            lambdas=tuple(tuple(c // g for c in lam) for lam in gf.lambdas),
            scale=gf.scale,
            system=gf.system,
        )
        for gf in scaled
    )


# -- dense polynomial expansion ----------------------------------------------


class _DensePoly:
    """Dense exact-integer polynomial with fixed per-variable degree caps."""

    __slots__ = ("bounds", "strides", "coeffs")

    def __init__(self, bounds: Sequence[int]):
        self.bounds = tuple(int(b) for b in bounds)
        strides = []
        size = 1
        for b in reversed(self.bounds):
            strides.append(size)
            size *= b + 1
        self.strides = tuple(reversed(strides))
        self.coeffs = [0] * size

    def _flat(self, mono: Sequence[int]) -> int:
        return sum(m * s for m, s in zip(mono, self.strides))

    def add_monomial(self, mono: Sequence[int], coeff: int = 1):
        self.coeffs[self._flat(mono)] += coeff

    def add(self, other: "_DensePoly"):
        assert self.bounds == other.bounds
        for i, c in enumerate(other.coeffs):
            if c:
                self.coeffs[i] += c

    def shift_add(self, src: "_DensePoly", shift: Sequence[int], sign: int):
        """Add sign * z^shift * src into self."""
        assert self.bounds == src.bounds
        offset = self._flat(shift)
        for mono in product(*(range(b + 1) for b in src.bounds)):
            idx = src._flat(mono)
            c = src.coeffs[idx]
            if c == 0:
                continue
            assert all(
                m + s <= b for m, s, b in zip(mono, shift, self.bounds)
            ), "degree cap violated"
            self.coeffs[idx + offset] += sign * c

    def mul_binomial(self, first: Sequence[int], second: Sequence[int]) -> "_DensePoly":
        """Product with (z^first - z^second)."""
        out = _DensePoly(self.bounds)
        out.shift_add(self, first, 1)
        out.shift_add(self, second, -1)
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, _DensePoly)
            and self.bounds == other.bounds
            and self.coeffs == other.coeffs
        )

    def as_dict(self) -> dict[tuple[int, ...], int]:
        out = {}
        for mono in product(*(range(b + 1) for b in self.bounds)):
            c = self.coeffs[self._flat(mono)]
            if c:
                out[mono] = c
        return out


def _split(lam: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    pos = tuple(max(c, 0) for c in lam)
    neg = tuple(max(-c, 0) for c in lam)
    return neg, pos


def _cleared_parts(gf: GenFun, bounds: Sequence[int]):
    """Cleared-denominator numerator and denominator binomial factors.

    Clearing term i over the common denominator prod_j (z^neg_j - z^pos_j)
    leaves numerator summand z^{pos_{i+1}} z^{neg_i} times the product of
    every other entry's binomial.
    """
    t = gf.t
    splits = [_split(lam) for lam in gf.lambdas]
    num = _DensePoly(bounds)
    for i in range(t):
        i_next = (i + 1) % t
        term = _DensePoly(bounds)
        mono = tuple(
            a + b for a, b in zip(splits[i_next][1], splits[i][0])
        )
        term.add_monomial(mono)
        for j in range(t):
            if j == i or j == i_next:
                continue
            term = term.mul_binomial(*splits[j])
        num.add(term)
    return num, [splits[j] for j in range(t)]


def _joint_bounds(*gfs: GenFun) -> tuple[int, ...]:
    r = gfs[0].r
    return tuple(
        sum(abs(lam[j]) for gf in gfs for lam in gf.lambdas) for j in range(r)
    )


def unmarked_equal_det(gf1: GenFun, gf2: GenFun, *, r_cap: int = 2) -> bool:
    """Exact spectrum comparison by dense expansion.

    Cross-multiplies the two cleared-denominator forms and expands the
    difference with big-integer coefficients; true iff identically zero.
    Guarded by ``r_cap`` because the dense representation is exponential
    in the number of generators.
    """
    gf1, gf2 = _joint_scale(gf1, gf2)
    if gf1.r > r_cap:
        raise ValueError(
            f"dense expansion capped at r <= {r_cap}; use unmarked_equal_rand"
        )
    bounds = _joint_bounds(gf1, gf2)
    num1, fac1 = _cleared_parts(gf1, bounds)
    num2, fac2 = _cleared_parts(gf2, bounds)
    lhs = num1
    for f in fac2:
        lhs = lhs.mul_binomial(*f)
    rhs = num2
    for f in fac1:
        rhs = rhs.mul_binomial(*f)
    return lhs == rhs


def ehrhart_form(gf: GenFun) -> tuple[dict[tuple[int, ...], int], dict[tuple[int, ...], int]]:
    """The series 1 + F as an exact polynomial fraction (numerator, denominator).

    The added 1 counts the zero class, matching the lattice-point series
    of the norm's integer dilates.  Exponents are taken exactly as stored;
    reduce through joint_normal_form first when comparing instances.
    """
    bounds = _joint_bounds(gf)
    num, factors = _cleared_parts(gf, bounds)
    den = _DensePoly(bounds)
    den.add_monomial((0,) * gf.r)
    for f in factors:
        den = den.mul_binomial(*f)
    num.add(den)
    return num.as_dict(), den.as_dict()


def series_prefix(form, k: int) -> list[int]:
    """First k power-series coefficients of a univariate polynomial fraction."""
    num, den = form
    if any(len(mono) != 1 for mono in (*num, *den)):
        raise ValueError("series expansion is univariate only")
    d0 = den.get((0,), 0)
    if d0 not in (1, -1):
        raise ValueError("denominator has no invertible constant term")
    out = []
    for n in range(k):
        c = num.get((n,), 0)
        for m in range(1, n + 1):
            c -= den.get((m,), 0) * out[n - m]
        out.append(c * d0)
    return out


# -- randomized identity test ------------------------------------------------


@dataclass(frozen=True)
class RandVerdict:
    """Outcome of the randomized spectrum comparison.

    A False ``equal`` is certain and carries the witness point; a True
    ``equal`` holds except with probability at most ``bound``.
    """

    equal: bool
    trials: int
    seed: int
    bound: str
    sample_bound: int
    witness: tuple[int, ...] | None
    witness_trial: int | None


def _sample_bound(gf1: GenFun, gf2: GenFun) -> int:
    # Difference numerator degree <= T, denominator product plus the
    # coordinate factors (excluded so negative exponents stay evaluable)
    # <= T + r; the margin keeps the per-trial failure below 1/2 after
    # conditioning on valid samples.
    t_total = gf1.degree_bound() + gf2.degree_bound()
    return t_total + 2 * (t_total + gf1.r)


def _run_trial(gf1: GenFun, gf2: GenFun, d: int, seed: int, k: int):
    rng = random.Random(seed * 1_000_003 + k)
    for _ in range(10_000):
        point = tuple(rng.randint(-d + 1, d) for _ in range(gf1.r))
        try:
            if gf1.value_at(point) != gf2.value_at(point):
                return point
            return None
        except ZeroDivisionError:
            continue
    raise RuntimeError("could not sample a valid evaluation point")


def unmarked_equal_rand(
    gf1: GenFun,
    gf2: GenFun,
    trials: int,
    seed: int,
    *,
    threads: int = 1,
) -> RandVerdict:
    """Randomized spectrum comparison with one-sided error.

    Evaluates both factored forms at integer points drawn from
    {-d+1, ..., d}, resampling while a coordinate is zero or a
    denominator factor vanishes.  A value mismatch is a certain
    "different" with the witness point recorded; agreement on every trial
    is "probably equal" with failure probability at most 2^-trials.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    gf1, gf2 = _joint_scale(gf1, gf2)
    d = _sample_bound(gf1, gf2)
    witness = None
    witness_trial = None
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(
                    lambda k: _run_trial(gf1, gf2, d, seed, k), range(trials)
                )
            )
        for k, point in enumerate(results):
            if point is not None:
                witness, witness_trial = point, k
                break
    else:
        for k in range(trials):
            point = _run_trial(gf1, gf2, d, seed, k)
            if point is not None:
                witness, witness_trial = point, k
                break
    if witness is not None:
        return RandVerdict(
            equal=False,
            trials=trials,
            seed=seed,
            bound="0",
            sample_bound=d,
            witness=witness,
            witness_trial=witness_trial,
        )
    return RandVerdict(
        equal=True,
        trials=trials,
        seed=seed,
        bound=f"2^-{trials}",
        sample_bound=d,
        witness=None,
        witness_trial=None,
    )
