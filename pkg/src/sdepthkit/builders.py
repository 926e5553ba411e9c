"""Constructive Stanley decompositions for primary quotients and intersections
of two irreducible ideals.

Sub-decompositions of ideals living on a block of variables come from the
exact engine (:func:`sdepthkit.poset.optimal_decomposition`) and are lifted to
the full ring, with the remaining variables made free.
"""
from __future__ import annotations

from . import monomials as mono
from .decomposition import StanleyDecomposition, StanleySpace
from .errors import HypothesisError
from .monomials import MonomialIdeal, RingContext
from .poset import optimal_decomposition


def build_primary_quotient(q: MonomialIdeal) -> StanleyDecomposition:
    """S/Q = ⊕ u K[x_j : j outside supp Q], u over the standard monomials in supp Q."""
    if not mono.is_primary(q):
        raise HypothesisError(f"({q}) is not primary")
    supp = sorted(q.support())
    free = frozenset(range(q.n)) - set(supp)
    spaces = [StanleySpace(u, free) for u in mono.standard_monomials(q, supp)]
    return StanleyDecomposition.of_quotient(q, spaces)


def _block_spaces(ideal: MonomialIdeal, block, ring: RingContext) -> list:
    """Spaces of an optimal decomposition of ``ideal`` (an ideal of K[block]),
    lifted to ``ring``; variables outside the block are not added here."""
    block = sorted(block)
    if ideal.is_unit:
        return [StanleySpace(ring.one(), frozenset(block))]
    if ideal.is_zero:
        return []
    local = optimal_decomposition(ideal, MonomialIdeal.zero(ideal.ring))
    lifted = []
    for s in local.spaces:
        u = [0] * ring.n
        for j, e in zip(block, s.u):
            u[j] = e
        lifted.append(StanleySpace(tuple(u), frozenset(block[j] for j in s.z)))
    return lifted


def _products(factors: list, shift, free) -> list:
    """All products of one space per factor, times ``shift``, with ``free`` added to Z."""
    result = [StanleySpace(shift, frozenset(free))]
    for spaces in factors:
        result = [
            StanleySpace(mono.mul(a.u, b.u), a.z | b.z) for a in result for b in spaces
        ]
    return result


def _check_irreducible_pair(q, q2):
    if q.ring.n != q2.ring.n:
        raise mono.RingMismatchError("Q and Q' live in different rings")
    for name, ideal in (("Q", q), ("Q'", q2)):
        if ideal.is_zero or ideal.is_unit or not mono.is_irreducible(ideal):
            raise HypothesisError(f"{name} = ({ideal}) must be a non-zero irreducible ideal")


def build_product(q: MonomialIdeal, q2: MonomialIdeal) -> StanleyDecomposition:
    """Q ∩ Q' = (Q ∩ K[A])(Q' ∩ K[B]) S for disjoint supports A, B."""
    _check_irreducible_pair(q, q2)
    a, b = sorted(q.support()), sorted(q2.support())
    if set(a) & set(b):
        raise HypothesisError("supports of Q and Q' are not disjoint")
    ring = q.ring
    free = sorted(set(range(ring.n)) - set(a) - set(b))
    factors = [
        _block_spaces(mono.restrict(q, a), a, ring),
        _block_spaces(mono.restrict(q2, b), b, ring),
    ]
    spaces = _products(factors, ring.one(), free)
    return StanleyDecomposition.of_ideal(mono.intersect(q, q2), spaces)


def build_split(q: MonomialIdeal, q2: MonomialIdeal) -> StanleyDecomposition:
    """Split Q ∩ Q' along the monomials w of the overlap block M.

        Q ∩ Q' = (Q ∩ Q' ∩ K[M]) S  ⊕  ⊕_w  w ((Q ∩ Q' : w) ∩ K[rest])

    with w running over the monomials of K[M] outside Q ∩ Q'.  Each colon
    piece is a product of a Q-block and a Q'-block ideal (or a polynomial ring
    when w already lies in one of them).  Free variables are carried along.
    """
    _check_irreducible_pair(q, q2)
    lay = mono.layout(q, q2)
    if not lay.overlap:
        return build_product(q, q2)
    ring = q.ring
    only_q, mid, only_q2, free = (
        list(lay.only_q), sorted(lay.overlap), list(lay.only_q2), list(lay.free)
    )
    rest = sorted(only_q + only_q2 + free)
    x = mono.intersect(q, q2)

    spaces = [
        StanleySpace(s.u, s.z | frozenset(rest))
        for s in _block_spaces(mono.restrict(x, mid), mid, ring)
    ]
    q_block = mono.restrict(q, only_q) if only_q else None
    q2_block = mono.restrict(q2, only_q2) if only_q2 else None
    for w in mono.standard_monomials(x, mid):
        factors = []
        for ideal, block, block_ideal in ((q, only_q, q_block), (q2, only_q2, q2_block)):
            if mono.contains(ideal, w):
                factors.append([StanleySpace(ring.one(), frozenset(block))])
            elif block_ideal is None:
                factors = None  # (Q:w) has no generator left in K[rest]
                break
            else:
                factors.append(_block_spaces(block_ideal, block, ring))
        if factors is not None:
            spaces.extend(_products(factors, w, free))
    return StanleyDecomposition.of_ideal(x, spaces)
