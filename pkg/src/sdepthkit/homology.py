"""Multigraded Betti numbers, projective dimension and depth of monomial ideals.

Indexing: a :class:`BettiTable` holds the Betti numbers of the ideal I itself,

    beta_{i,a}(I) = dim H~_{i-1}(K^a(I); K),

where K^a(I) = {squarefree F ⊆ supp(a) : x^(a - F) in I} is the upper Koszul
simplicial complex.  So beta_0 counts minimal generators, beta_{i,a}(S/I) =
beta_{i-1,a}(I) for i >= 1, pd(S/I) = pd(I) + 1, and by Auslander–Buchsbaum
depth(S/I) = n - pd(S/I), depth(I) = depth(S/I) + 1.

Only multidegrees that are lcms of generator subsets can carry Betti numbers.
All linear algebra is exact: fraction-free elimination over Z for
characteristic 0, elimination mod p otherwise.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from . import monomials as mono
from .errors import HypothesisError, ResourceLimitError
from .monomials import MonomialIdeal

TAYLOR_MAX_GENERATORS = 20


@dataclass(frozen=True)
class SimplicialComplexK:
    """A simplicial complex on vertices 0..n_vertices-1 given by its facets.

    ``facets == ()`` is the void complex; ``(frozenset(),)`` is {∅}.
    """

    n_vertices: int
    facets: tuple

    @classmethod
    def from_faces(cls, n_vertices: int, faces: Iterable) -> "SimplicialComplexK":
        faces = {frozenset(f) for f in faces}
        maximal = [f for f in faces if not any(f < g for g in faces)]
        return cls(n_vertices, tuple(sorted(maximal, key=lambda f: (len(f), sorted(f)))))

    def faces(self) -> list:
        """All faces grouped by size: ``faces()[k]`` lists the faces with k vertices."""
        found = set()
        for facet in self.facets:
            for k in range(len(facet) + 1):
                found.update(frozenset(c) for c in itertools.combinations(sorted(facet), k))
        if not found:
            return []
        top = max(len(f) for f in found)
        by_size = [[] for _ in range(top + 1)]
        for f in found:
            by_size[len(f)].append(tuple(sorted(f)))
        return [sorted(level) for level in by_size]


def matrix_rank(rows: list, char: int = 0) -> int:
    """Exact rank of an integer matrix over Q (char 0) or GF(char)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    if char:
        m = [[x % char for x in r] for r in m]
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        if char:
            inv = pow(p, -1, char)
            for i in range(rank + 1, len(m)):
                f = m[i][col] * inv % char
                if f:
                    m[i] = [(x - f * y) % char for x, y in zip(m[i], m[rank])]
        else:
            # Bareiss step: exact division by the previous pivot
            for i in range(rank + 1, len(m)):
                f = m[i][col]
                m[i] = [(p * x - f * y) // prev for x, y in zip(m[i], m[rank])]
            prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def _boundary(source: list, target: list) -> list:
    # rows indexed by target faces, columns by source faces
    pos = {f: i for i, f in enumerate(target)}
    mat = [[0] * len(source) for _ in target]
    for j, face in enumerate(source):
        for k in range(len(face)):
            sub = face[:k] + face[k + 1 :]
            if sub in pos:  # Taylor faces whose lcm drops are not in the target
                mat[pos[sub]][j] = -1 if k % 2 else 1
    return mat


def reduced_homology_ranks(c: SimplicialComplexK, char: int = 0) -> list:
    """Ranks of reduced homology; entry k+1 is the rank of H~_k (k = -1, 0, ...)."""
    levels = c.faces()
    if not levels:
        return []
    ranks_d = [0] * (len(levels) + 1)  # ranks_d[k]: rank of boundary from size k to size k-1
    for k in range(1, len(levels)):
        if levels[k] and levels[k - 1]:
            ranks_d[k] = matrix_rank(_boundary(levels[k], levels[k - 1]), char)
    return [len(levels[k]) - ranks_d[k] - ranks_d[k + 1] for k in range(len(levels))]


def upper_koszul(ideal: MonomialIdeal, a) -> SimplicialComplexK:
    a = tuple(a)
    supp = [j for j, e in enumerate(a) if e]
    faces = []
    for k in range(len(supp) + 1):
        for f in itertools.combinations(supp, k):
            b = list(a)
            for j in f:
                b[j] -= 1
            if mono.contains(ideal, b):
                faces.append(f)
    return SimplicialComplexK.from_faces(ideal.n, faces)


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,a} of an ideal, keyed by (i, a)."""

    n: int
    char: int
    entries: dict = field(default_factory=dict)

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)

    def proj_dim(self) -> int:
        return max((i for (i, _), v in self.entries.items() if v), default=0)

    def quotient_entries(self) -> dict:
        """Betti numbers of S/I: shift homological degree by one, add beta_{0,0} = 1."""
        shifted = {(i + 1, a): v for (i, a), v in self.entries.items()}
        shifted[(0, (0,) * self.n)] = 1
        return shifted

    def __eq__(self, other):
        return (
            isinstance(other, BettiTable)
            and self.n == other.n
            and self.char == other.char
            and {k: v for k, v in self.entries.items() if v}
            == {k: v for k, v in other.entries.items() if v}
        )

    def __str__(self) -> str:
        lines = [f"Betti numbers (char {self.char}):"]
        for (i, a), v in sorted(self.entries.items()):
            if v:
                lines.append(f"  beta_{i},{a} = {v}")
        return "\n".join(lines)


def lcm_lattice(generators) -> set:
    """All lcms of non-empty subsets of ``generators``."""
    found = set()
    for g in generators:
        found |= {mono.lcm(x, g) for x in found}
        found.add(tuple(g))
    return found


def _require(ideal: MonomialIdeal):
    if ideal.is_zero or ideal.is_unit:
        raise HypothesisError("Betti numbers and depth need a non-zero proper ideal")


def betti(ideal: MonomialIdeal, char: int = 0) -> BettiTable:
    _require(ideal)
    entries = {}
    for a in sorted(lcm_lattice(ideal.generators)):
        ranks = reduced_homology_ranks(upper_koszul(ideal, a), char)
        for k, r in enumerate(ranks):
            if r:
                entries[(k, a)] = r  # H~_{k-1} -> beta_k
    return BettiTable(ideal.n, char, entries)


def taylor_betti_oracle(ideal: MonomialIdeal, char: int = 0) -> BettiTable:
    """Betti numbers from the Taylor complex tensored with K.

    In multidegree a the basis is the generator subsets with lcm exactly a;
    the differential keeps only the faces whose lcm stays a.
    """
    _require(ideal)
    gens = list(ideal.generators)
    if len(gens) > TAYLOR_MAX_GENERATORS:
        raise ResourceLimitError(f"Taylor oracle is limited to {TAYLOR_MAX_GENERATORS} generators")
    by_lcm = defaultdict(lambda: defaultdict(list))
    for k in range(1, len(gens) + 1):
        for sigma in itertools.combinations(range(len(gens)), k):
            a = gens[sigma[0]]
            for s in sigma[1:]:
                a = mono.lcm(a, gens[s])
            by_lcm[a][k].append(sigma)
    entries = {}
    for a, levels in by_lcm.items():
        sizes = sorted(levels)
        rank_d = {}
        for k in sizes:
            if k - 1 in levels:
                rank_d[k] = matrix_rank(_boundary(levels[k], levels[k - 1]), char)
        for k in sizes:
            h = len(levels[k]) - rank_d.get(k, 0) - rank_d.get(k + 1, 0)
            if h:
                entries[(k - 1, a)] = h
    return BettiTable(ideal.n, char, entries)


def proj_dim_quotient(ideal: MonomialIdeal, char: int = 0) -> int:
    return betti(ideal, char).proj_dim() + 1


def depth_quotient(ideal: MonomialIdeal, char: int = 0) -> int:
    return ideal.n - proj_dim_quotient(ideal, char)


def depth_ideal(ideal: MonomialIdeal, char: int = 0) -> int:
    return depth_quotient(ideal, char) + 1
