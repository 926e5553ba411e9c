"""Exact Stanley depth via interval partitions of the characteristic poset.

For monomial ideals I ⊆ J of S and a cap vector g dominating every generator
exponent, the characteristic poset is the set of exponent vectors a <= g with
x^a in J but not in I.  A partition of it into intervals [a, b] gives the
Stanley decomposition ⊕ x^a K[{x_j : b_j = g_j}], and every optimal Stanley
decomposition arises this way (Herzog–Vladoiu–Zheng).  So

    sdepth(J/I) = max over interval partitions of min rho(b),
    rho(b) = #{j : b_j = g_j}.

Points are numbered along the lex order of the box, which is a linear
extension of the componentwise order.  Point sets are Python ints used as
bitsets; up-sets and down-sets of every point are precomputed, so the mask of
an interval is ``up[a] & down[b]``.
"""
from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass, field
from math import prod
from typing import Optional, Sequence

from . import monomials as mono
from .errors import HypothesisError, ResourceLimitError
from .monomials import MonomialIdeal, RingContext

log = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = 2 ** 20
_DEADLINE_CHECK_EVERY = 2048


def max_points_cap() -> int:
    value = os.environ.get("SDEPTHKIT_MAX_POSET")
    return int(value) if value else DEFAULT_MAX_POINTS


def rho(b: Sequence[int], g: Sequence[int]) -> int:
    """Number of coordinates where ``b`` reaches the cap ``g``."""
    return sum(1 for x, y in zip(b, g) if x == y)


@dataclass(frozen=True)
class Interval:
    lower: tuple
    upper: tuple


@dataclass(frozen=True)
class IntervalPartition:
    intervals: tuple
    d: int


@dataclass(eq=False)
class CharacteristicPoset:
    """The flagged point set {a <= g : x^a in J, x^a not in I}."""

    upper_ideal: MonomialIdeal
    lower_ideal: MonomialIdeal
    g: tuple
    points: list
    kind: str
    index: dict = field(repr=False, default_factory=dict)
    rho: list = field(repr=False, default_factory=list)
    _up: Optional[list] = field(default=None, repr=False)
    _down: Optional[list] = field(default=None, repr=False)

    @property
    def ring(self) -> RingContext:
        return self.lower_ideal.ring

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def box_size(self) -> int:
        return prod(c + 1 for c in self.g)

    def __len__(self):
        return len(self.points)

    def flags(self, a) -> tuple:
        """(in J, in I) for a box point ``a``."""
        return mono.contains(self.upper_ideal, a), mono.contains(self.lower_ideal, a)

    def _neighbours(self, i, step):
        a = self.points[i]
        for j in range(self.n):
            c = list(a)
            c[j] += step
            k = self.index.get(tuple(c))
            if k is not None:
                yield k

    @property
    def up(self) -> list:
        """``up[i]``: bitset of points b >= points[i]."""
        if self._up is None:
            # the poset is convex, so the up-set is generated by unit steps
            up = [0] * len(self.points)
            for i in range(len(self.points) - 1, -1, -1):
                mask = 1 << i
                for k in self._neighbours(i, 1):
                    mask |= up[k]
                up[i] = mask
            self._up = up
        return self._up

    @property
    def down(self) -> list:
        """``down[i]``: bitset of points c <= points[i]."""
        if self._down is None:
            down = [0] * len(self.points)
            for i in range(len(self.points)):
                mask = 1 << i
                for k in self._neighbours(i, -1):
                    mask |= down[k]
                down[i] = mask
            self._down = down
        return self._down

    def interval_mask(self, a, b) -> int:
        return self.up[self.index[tuple(a)]] & self.down[self.index[tuple(b)]]


def default_caps(upper: MonomialIdeal, lower: MonomialIdeal) -> tuple:
    gu, gl = upper.exponent_bound(), lower.exponent_bound()
    return tuple(max(1, x, y) for x, y in zip(gu, gl))


def build_poset(upper: MonomialIdeal, lower: MonomialIdeal, g=None, max_points=None) -> CharacteristicPoset:
    """Enumerate the characteristic poset of J/I with J = ``upper``, I = ``lower``.

    Pass ``MonomialIdeal.unit(ring)`` as ``upper`` for the quotient S/I and the
    zero ideal as ``lower`` for the ideal J itself.
    """
    if upper.ring.n != lower.ring.n:
        raise mono.RingMismatchError("J and I live in different rings")
    if not all(mono.contains(upper, h) for h in lower.generators):
        raise HypothesisError(f"I = ({lower}) is not contained in J = ({upper})")
    need = default_caps(upper, lower)
    if g is None:
        g = need
    else:
        g = tuple(int(c) for c in g)
        if len(g) != upper.n:
            raise ValueError(f"cap vector has length {len(g)}, ring has n={upper.n}")
        bad = [j for j, (c, m) in enumerate(zip(g, need)) if c < m]
        if bad:
            raise HypothesisError(f"cap vector {g} does not dominate generator exponents {need}")
    cap = max_points_cap() if max_points is None else max_points
    size = prod(c + 1 for c in g)
    if size > cap:
        raise ResourceLimitError(f"box of {size} points exceeds the cap of {cap}")

    if upper.is_unit:
        kind = "quotient"
    elif lower.is_zero:
        kind = "ideal"
    else:
        kind = "module"
    points = [
        a for a in mono.box(g)
        if mono.contains(upper, a) and not mono.contains(lower, a)
    ]
    index = {a: i for i, a in enumerate(points)}
    return CharacteristicPoset(
        upper_ideal=upper,
        lower_ideal=lower,
        g=g,
        points=points,
        kind=kind,
        index=index,
        rho=[rho(a, g) for a in points],
    )


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Search:
    """Exhaustive exact-cover search for a partition with every rho(upper) >= d."""

    def __init__(self, poset: CharacteristicPoset, d: int, deadline=None):
        self.poset = poset
        self.d = d
        self.deadline = deadline
        self.nodes = 0
        up, down = poset.up, poset.down
        points, rhos = poset.points, poset.rho
        tops = 0
        for i, r in enumerate(rhos):
            if r >= d:
                tops |= 1 << i
        self.down = down
        # candidate intervals per lower point: (mask, upper index), smallest
        # admissible uppers first: increasing rho, then degree, then lex
        self.cands = []
        for i in range(len(points)):
            uppers = sorted(
                _bits(up[i] & tops), key=lambda b: (rhos[b], sum(points[b]), points[b])
            )
            self.cands.append([(up[i] & down[b], b) for b in uppers])

    def _coverable(self, rest: int, region: int) -> bool:
        cands = self.cands
        for c in _bits(rest & region):
            for m, _ in cands[c]:
                if not m & ~rest:
                    break
            else:
                return False
        return True

    def run(self) -> Optional[list]:
        full = (1 << len(self.poset.points)) - 1
        if not full:
            return []
        if not self._coverable(full, full):
            return None
        failed = set()
        cands = self.cands
        path = []
        stack = [[full, 0]]
        while stack:
            frame = stack[-1]
            uncovered, pos = frame
            if not uncovered:
                return path
            self.nodes += 1
            if self.deadline is not None and self.nodes % _DEADLINE_CHECK_EVERY == 0:
                if time.monotonic() > self.deadline:
                    raise ResourceLimitError("time limit exceeded in interval search")
            a = (uncovered & -uncovered).bit_length() - 1
            options = cands[a]
            while pos < len(options):
                mask, b = options[pos]
                pos += 1
                if mask & ~uncovered:
                    continue
                rest = uncovered ^ mask
                if rest in failed or not self._coverable(rest, self.down[b]):
                    continue
                frame[1] = pos
                path.append((a, b))
                stack.append([rest, 0])
                break
            else:
                failed.add(uncovered)
                stack.pop()
                if path:
                    path.pop()
        return None


def feasible_partition(poset: CharacteristicPoset, d: int, deadline=None) -> Optional[IntervalPartition]:
    """An interval partition whose upper points all have rho >= d, or None."""
    if not 0 <= d <= poset.n:
        raise ValueError(f"d={d} out of range 0..{poset.n}")
    if deadline is not None and time.monotonic() > deadline:
        raise ResourceLimitError("time limit exceeded before interval search")
    found = _Search(poset, d, deadline).run()
    if found is None:
        return None
    pts = poset.points
    intervals = tuple(Interval(pts[a], pts[b]) for a, b in found)
    achieved = min((poset.rho[b] for _, b in found), default=poset.n)
    return IntervalPartition(intervals, achieved)


@dataclass(frozen=True)
class SdepthResult:
    """Outcome of an exact computation; ``partition`` lives on ``poset`` (free variables stripped)."""

    value: int
    partition: IntervalPartition
    poset: Optional[CharacteristicPoset]
    kept: tuple
    n: int

    @property
    def free(self) -> tuple:
        return tuple(sorted(set(range(self.n)) - set(self.kept)))


def _strip(upper: MonomialIdeal, lower: MonomialIdeal):
    used = sorted(upper.support() | lower.support())
    if not used or len(used) == upper.n:
        return upper, lower, tuple(range(upper.n)) if used else ()
    return mono.restrict(upper, used), mono.restrict(lower, used), tuple(used)


def _search_top(upper: MonomialIdeal, lower: MonomialIdeal) -> int:
    if lower.is_zero:
        return upper.n
    return mono.krull_dim_quotient(lower)


def compute_sdepth(
    upper: MonomialIdeal,
    lower: MonomialIdeal,
    *,
    g=None,
    reduce_free: bool = True,
    strategy: str = "descending",
    max_points=None,
    time_limit=None,
    deadline=None,
) -> SdepthResult:
    """sdepth of J/I (J = ``upper``, I = ``lower``) with the witnessing partition.

    With ``reduce_free`` the variables outside both supports are removed first
    and added back to the value (sdepth of M[y] is sdepth M + 1).
    ``strategy`` is ``"descending"`` (scan d = top, top-1, ...) or ``"binary"``.
    ``deadline`` (a ``time.monotonic()`` instant) takes precedence over
    ``time_limit`` (seconds from now); overrunning raises ResourceLimitError.
    """
    if upper.ring.n != lower.ring.n:
        raise mono.RingMismatchError("J and I live in different rings")
    if upper == lower:
        raise HypothesisError("J/I is the zero module")
    if lower.is_unit:
        raise HypothesisError("I is the unit ideal; the module is zero")
    n = upper.n
    if deadline is None and time_limit is not None:
        deadline = time.monotonic() + time_limit
    if reduce_free and g is None:
        up_r, low_r, kept = _strip(upper, lower)
    else:
        up_r, low_r, kept = upper, lower, tuple(range(n))
    extra = n - len(kept)
    if not kept:
        # no generators involve any variable: the module is S itself
        return SdepthResult(n, IntervalPartition((), 0), None, (), n)
    poset = build_poset(up_r, low_r, g, max_points)
    top = min(_search_top(up_r, low_r), poset.n)

    if strategy == "descending":
        for d in range(top, -1, -1):
            part = feasible_partition(poset, d, deadline)
            if part is not None:
                log.debug("sdepth %s found at d=%d", poset.kind, d)
                return SdepthResult(d + extra, part, poset, kept, n)
        raise AssertionError("d = 0 is always feasible")
    if strategy == "binary":
        lo, hi = 0, top
        best = feasible_partition(poset, 0, deadline)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            part = feasible_partition(poset, mid, deadline)
            if part is not None:
                lo, best = mid, part
            else:
                hi = mid - 1
        return SdepthResult(lo + extra, best, poset, kept, n)
    raise ValueError(f"unknown strategy {strategy!r}")


def sdepth_ideal(ideal: MonomialIdeal, **opts) -> int:
    if ideal.is_zero:
        raise HypothesisError("sdepth of the zero ideal is not defined")
    return compute_sdepth(ideal, MonomialIdeal.zero(ideal.ring), **opts).value


def sdepth_quotient(ideal: MonomialIdeal, **opts) -> int:
    if ideal.is_unit:
        raise HypothesisError("S/I is zero for the unit ideal")
    return compute_sdepth(MonomialIdeal.unit(ideal.ring), ideal, **opts).value


def sdepth_module(upper: MonomialIdeal, lower: MonomialIdeal, **opts) -> int:
    return compute_sdepth(upper, lower, **opts).value


def partition_to_decomposition(partition: IntervalPartition, poset: CharacteristicPoset, ring=None, kept=None):
    """Turn [a, b] into the Stanley space x^a K[{x_j : b_j = g_j}].

    ``ring`` and ``kept`` lift a partition computed on a stripped poset back
    to the full ring; every free variable joins every Z.
    """
    from .decomposition import StanleyDecomposition, StanleySpace

    g = poset.g
    if ring is None:
        ring, kept = poset.ring, tuple(range(poset.n))
    free = [j for j in range(ring.n) if j not in set(kept)]
    spaces = []
    for iv in partition.intervals:
        u = [0] * ring.n
        for j, e in zip(kept, iv.lower):
            u[j] = e
        z = {kept[j] for j in range(poset.n) if iv.upper[j] == g[j]} | set(free)
        spaces.append(StanleySpace(tuple(u), frozenset(z)))
    upper = mono.embed(poset.upper_ideal, kept, ring)
    lower = mono.embed(poset.lower_ideal, kept, ring)
    return StanleyDecomposition(upper, lower, tuple(spaces))


def optimal_decomposition(upper: MonomialIdeal, lower: MonomialIdeal, **opts):
    """A Stanley decomposition of J/I attaining sdepth(J/I)."""
    from .decomposition import StanleyDecomposition, StanleySpace

    res = compute_sdepth(upper, lower, **opts)
    if res.poset is None:
        ring = upper.ring
        return StanleyDecomposition(upper, lower, (StanleySpace(ring.one(), frozenset(range(ring.n))),))
    return partition_to_decomposition(res.partition, res.poset, upper.ring, res.kept)
