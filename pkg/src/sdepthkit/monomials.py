"""Monomials and monomial ideals of K[x_1, ..., x_n].

A monomial is a tuple of non-negative exponents.  A :class:`MonomialIdeal`
always stores its unique minimal generating set, sorted, so two ideals are
equal exactly when their dataclass fields are equal.  The unit ideal is the
ideal generated by the constant monomial ``1 = (0, ..., 0)``; it exists so
that a quotient S/I can be handled as the module pair (S, I).

Box lemma used by the membership oracles: membership of ``x^a`` in a monomial
ideal only depends on ``min(a_j, g_j + 1)`` per coordinate when ``g`` bounds
the generator exponents, so two ideals agree everywhere once they agree on
the box ``[0, g + 1]^n``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import HypothesisError, RingMismatchError

MAX_EXPONENT = 2 ** 16

Monomial = tuple  # tuple[int, ...] of length ring.n


@dataclass(frozen=True)
class RingContext:
    """The polynomial ring K[x_1, ..., x_n]; only ``n`` and the names matter."""

    n: int
    variable_names: tuple = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"ring needs at least one variable, got n={self.n!r}")
        names = tuple(self.variable_names) or tuple(f"x{i + 1}" for i in range(self.n))
        if len(names) != self.n:
            raise ValueError(f"expected {self.n} variable names, got {len(names)}")
        if len(set(names)) != self.n:
            raise ValueError(f"variable names must be unique: {names}")
        object.__setattr__(self, "variable_names", names)

    def index(self, name: str) -> int:
        try:
            return self.variable_names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def one(self) -> Monomial:
        return (0,) * self.n

    def variable(self, i: int, power: int = 1) -> Monomial:
        exps = [0] * self.n
        exps[i] = power
        return tuple(exps)


def check_monomial(m: Sequence[int], ring: RingContext) -> Monomial:
    m = tuple(int(e) for e in m)
    if len(m) != ring.n:
        raise RingMismatchError(f"monomial {m} has {len(m)} exponents, ring has n={ring.n}")
    for e in m:
        if e < 0:
            raise ValueError(f"negative exponent in {m}")
        if e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} exceeds the cap {MAX_EXPONENT}")
    return m


def divides(u: Monomial, m: Monomial) -> bool:
    return all(a <= b for a, b in zip(u, m))


def lcm(u: Monomial, v: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(u, v))


def gcd(u: Monomial, v: Monomial) -> Monomial:
    return tuple(min(a, b) for a, b in zip(u, v))


def mul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def support(m: Monomial) -> frozenset:
    return frozenset(i for i, e in enumerate(m) if e)


def format_monomial(m: Monomial, ring: RingContext) -> str:
    """Render ``m`` in the ideal grammar, e.g. ``x1^2*x3``; ``1`` for the unit."""
    factors = []
    for name, e in zip(ring.variable_names, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) or "1"


def _minimal(gens: Iterable[Monomial]) -> tuple:
    # ascending total degree: a divisor is always seen before its multiples
    ordered = sorted(set(gens), key=lambda m: (sum(m), m))
    kept = []
    for m in ordered:
        if not any(divides(g, m) for g in kept):
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by generators; minimality is restored on construction."""

    ring: RingContext
    generators: tuple = field(default=())

    def __post_init__(self):
        gens = [check_monomial(g, self.ring) for g in self.generators]
        object.__setattr__(self, "generators", _minimal(gens))

    @classmethod
    def zero(cls, ring: RingContext) -> "MonomialIdeal":
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: RingContext) -> "MonomialIdeal":
        return cls(ring, (ring.one(),))

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def is_unit(self) -> bool:
        return self.generators == (self.ring.one(),)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def __contains__(self, m) -> bool:
        return contains(self, m)

    def __len__(self) -> int:
        return len(self.generators)

    def support(self) -> frozenset:
        """Variables occurring in some minimal generator (= support of the radical)."""
        s = set()
        for g in self.generators:
            s |= support(g)
        return frozenset(s)

    def exponent_bound(self) -> tuple:
        """Componentwise maximum of the generator exponents."""
        bound = [0] * self.n
        for g in self.generators:
            for i, e in enumerate(g):
                if e > bound[i]:
                    bound[i] = e
        return tuple(bound)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return ", ".join(format_monomial(g, self.ring) for g in self.generators)

    def __repr__(self) -> str:
        return f"MonomialIdeal(n={self.n}, ({self}))"


def minimalize(gens: Iterable[Sequence[int]], ring: RingContext) -> MonomialIdeal:
    return MonomialIdeal(ring, tuple(tuple(g) for g in gens))


def _same_ring(*ideals: MonomialIdeal) -> RingContext:
    ring = ideals[0].ring
    for other in ideals[1:]:
        if other.ring.n != ring.n:
            raise RingMismatchError(f"ideals live in rings with n={ring.n} and n={other.ring.n}")
    return ring


def contains(ideal: MonomialIdeal, m: Sequence[int]) -> bool:
    m = tuple(m)
    if len(m) != ideal.n:
        raise RingMismatchError(f"monomial {m} does not live in a ring with n={ideal.n}")
    return any(divides(g, m) for g in ideal.generators)


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(a, b)
    return MonomialIdeal(ring, tuple(lcm(g, h) for g in a.generators for h in b.generators))


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(a, b)
    return MonomialIdeal(ring, a.generators + b.generators)


def colon(ideal: MonomialIdeal, w: Sequence[int]) -> MonomialIdeal:
    """The ideal (I : w) = {m : m*w in I}."""
    w = check_monomial(w, ideal.ring)
    return MonomialIdeal(
        ideal.ring,
        tuple(tuple(max(e - f, 0) for e, f in zip(g, w)) for g in ideal.generators),
    )


def radical(ideal: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(
        ideal.ring,
        tuple(tuple(1 if e else 0 for e in g) for g in ideal.generators),
    )


def _require_proper_nonzero(ideal: MonomialIdeal, what: str):
    if ideal.is_zero:
        raise HypothesisError(f"{what} is not defined for the zero ideal")
    if ideal.is_unit:
        raise HypothesisError(f"{what} is not defined for the unit ideal")


def is_irreducible(ideal: MonomialIdeal) -> bool:
    """True when every minimal generator is a pure power of a variable."""
    _require_proper_nonzero(ideal, "irreducibility")
    return all(len(support(g)) == 1 for g in ideal.generators)


def is_primary(ideal: MonomialIdeal) -> bool:
    """True when every variable of the support has a pure power among the generators."""
    _require_proper_nonzero(ideal, "primary test")
    pure = {next(iter(support(g))) for g in ideal.generators if len(support(g)) == 1}
    return ideal.support() <= pure


def min_vertex_cover(edges: Iterable[frozenset], n: int) -> int:
    """Size of a smallest set of variables meeting every set in ``edges``."""
    edges = [e for e in set(edges)]
    if not edges:
        return 0
    for k in range(1, n + 1):
        for cover in itertools.combinations(range(n), k):
            cs = set(cover)
            if all(e & cs for e in edges):
                return k
    raise AssertionError("every non-empty edge is met by the full vertex set")


def krull_dim_quotient(ideal: MonomialIdeal) -> int:
    """Krull dimension of S/I: n minus the least number of variables hitting all supports."""
    if ideal.is_unit:
        raise HypothesisError("S/I is the zero module for the unit ideal; its dimension is -infinity")
    edges = [support(g) for g in radical(ideal).generators]
    return ideal.n - min_vertex_cover(edges, ideal.n)


def restrict(ideal: MonomialIdeal, variables: Iterable[int]) -> MonomialIdeal:
    """I ∩ K[x_A], as an ideal of the subring on A (variables kept in ascending order)."""
    keep = sorted(set(variables))
    if not keep:
        raise ValueError("cannot restrict to an empty set of variables")
    for i in keep:
        if not 0 <= i < ideal.n:
            raise IndexError(f"variable index {i} out of range for n={ideal.n}")
    ring = RingContext(len(keep), tuple(ideal.ring.variable_names[i] for i in keep))
    keep_set = set(keep)
    gens = tuple(
        tuple(g[i] for i in keep) for g in ideal.generators if support(g) <= keep_set
    )
    return MonomialIdeal(ring, gens)


def _fresh_names(ring: RingContext, extra: int) -> tuple:
    names = list(ring.variable_names)
    taken = set(names)
    k = ring.n
    while len(names) < ring.n + extra:
        k += 1
        candidate = f"x{k}"
        if candidate not in taken:
            names.append(candidate)
            taken.add(candidate)
    return tuple(names)


def extend(ideal: MonomialIdeal, extra: int) -> MonomialIdeal:
    """The extension I*S[y_1..y_extra]: same generators, ``extra`` new free variables."""
    if extra < 0:
        raise ValueError("extra must be non-negative")
    ring = RingContext(ideal.n + extra, _fresh_names(ideal.ring, extra))
    return MonomialIdeal(ring, tuple(g + (0,) * extra for g in ideal.generators))


def embed(ideal: MonomialIdeal, positions: Sequence[int], ring: RingContext) -> MonomialIdeal:
    """Inverse of :func:`restrict`: place a subring ideal into ``ring`` at ``positions``."""
    def lift(g):
        exps = [0] * ring.n
        for i, e in zip(positions, g):
            exps[i] = e
        return tuple(exps)
    return MonomialIdeal(ring, tuple(lift(g) for g in ideal.generators))


def permute(ideal: MonomialIdeal, perm: Sequence[int]) -> MonomialIdeal:
    """Reorder variables so that new variable k is old variable ``perm[k]``."""
    if sorted(perm) != list(range(ideal.n)):
        raise ValueError(f"{perm} is not a permutation of range({ideal.n})")
    ring = RingContext(ideal.n, tuple(ideal.ring.variable_names[i] for i in perm))
    return MonomialIdeal(ring, tuple(tuple(g[i] for i in perm) for g in ideal.generators))


@dataclass(frozen=True)
class SupportLayout:
    """Variable order putting supp(Q) first, the overlap in the middle, supp(Q') last.

    After applying ``permutation`` (see :func:`permute`), supp√Q = {1..t} and
    supp√Q' = {r+1..p}; variables p+1..n are free.
    """

    permutation: tuple
    r: int
    t: int
    p: int
    n: int

    @property
    def only_q(self) -> tuple:
        return self.permutation[: self.r]

    @property
    def overlap(self) -> tuple:
        return self.permutation[self.r : self.t]

    @property
    def only_q2(self) -> tuple:
        return self.permutation[self.t : self.p]

    @property
    def free(self) -> tuple:
        return self.permutation[self.p :]


def layout(q: MonomialIdeal, q2: MonomialIdeal) -> SupportLayout:
    ring = _same_ring(q, q2)
    if q.is_zero or q2.is_zero:
        raise HypothesisError("layout needs two non-zero ideals")
    a, b = q.support(), q2.support()
    only_a = sorted(a - b)
    both = sorted(a & b)
    only_b = sorted(b - a)
    free = sorted(set(range(ring.n)) - a - b)
    perm = tuple(only_a + both + only_b + free)
    r = len(only_a)
    t = r + len(both)
    p = t + len(only_b)
    return SupportLayout(perm, r, t, p, ring.n)


def box(bound: Sequence[int]) -> Iterator[Monomial]:
    """All exponent vectors ``a`` with ``0 <= a <= bound``, in lex order."""
    return itertools.product(*(range(b + 1) for b in bound))


def standard_monomials(ideal: MonomialIdeal, variables: Sequence[int]) -> list:
    """Monomials of K[x_A] (as full-length tuples) outside ``ideal``.

    Requires a pure power of every variable of A in the ideal, otherwise the
    set is infinite.
    """
    variables = sorted(set(variables))
    caps = {}
    for g in ideal.generators:
        s = support(g)
        if len(s) == 1:
            (i,) = s
            caps[i] = min(caps.get(i, g[i]), g[i])
    missing = [i for i in variables if i not in caps]
    if missing and not ideal.is_unit:
        raise HypothesisError(
            f"infinitely many standard monomials: no pure power of variables {missing}"
        )
    if ideal.is_unit:
        return []
    result = []
    for exps in itertools.product(*(range(caps[i]) for i in variables)):
        m = [0] * ideal.n
        for i, e in zip(variables, exps):
            m[i] = e
        m = tuple(m)
        if not contains(ideal, m):
            result.append(m)
    return result
