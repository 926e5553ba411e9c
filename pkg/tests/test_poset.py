import itertools
import time

import pytest
from hypothesis import given, settings, strategies as st

from sdepthkit import decomposition as dec
from sdepthkit import monomials as mono
from sdepthkit import poset
from sdepthkit.errors import HypothesisError, ResourceLimitError
from sdepthkit.monomials import MonomialIdeal, RingContext

from conftest import all_irreducibles, ideals, irreducibles, rings


def naive_sdepth(upper, lower):
    """Max over all interval partitions of min rho, by plain recursion on sets."""
    g = tuple(max(1, a, b) for a, b in zip(upper.exponent_bound(), lower.exponent_bound()))
    pts = [a for a in itertools.product(*(range(c + 1) for c in g))
           if mono.contains(upper, a) and not mono.contains(lower, a)]
    pset = set(pts)

    def leq(a, b):
        return all(x <= y for x, y in zip(a, b))

    def interval(a, b):
        return {c for c in pts if leq(a, c) and leq(c, b)}

    best = {}

    def solve(uncovered):
        if not uncovered:
            return len(g)
        if uncovered in best:
            return best[uncovered]
        a = min(uncovered)  # lex-least is minimal among the uncovered points
        result = -1
        for b in pts:
            if not leq(a, b):
                continue
            iv = interval(a, b)
            if not iv <= uncovered or not all(c in pset for c in iv):
                continue
            r = sum(1 for x, y in zip(b, g) if x == y)
            if r <= result:
                continue
            result = max(result, min(r, solve(uncovered - iv)))
        best[uncovered] = result
        return result

    return solve(frozenset(pts))


small = ideals(max_n=3, max_exp=2, max_gens=3)


@settings(max_examples=40)
@given(small)
def test_quotient_matches_naive_oracle(i):
    assert poset.sdepth_quotient(i) == naive_sdepth(MonomialIdeal.unit(i.ring), i)


@settings(max_examples=40)
@given(small)
def test_ideal_matches_naive_oracle(i):
    assert poset.sdepth_ideal(i) == naive_sdepth(i, MonomialIdeal.zero(i.ring))


@settings(max_examples=30)
@given(st.data())
def test_module_matches_naive_oracle(data):
    ring = data.draw(rings(max_n=3))
    j = data.draw(ideals(ring=ring, max_exp=2, max_gens=3))
    i = mono.intersect(j, data.draw(ideals(ring=ring, max_exp=2, max_gens=3)))
    if i == j:
        with pytest.raises(HypothesisError):
            poset.sdepth_module(j, i)
        return
    assert poset.sdepth_module(j, i) == naive_sdepth(j, i)


@settings(max_examples=30)
@given(ideals(max_n=3, max_exp=2, max_gens=4))
def test_optimal_decomposition_validates(i):
    for upper, lower in ((i, MonomialIdeal.zero(i.ring)), (MonomialIdeal.unit(i.ring), i)):
        d = poset.optimal_decomposition(upper, lower)
        report = dec.validate(d)
        assert report.valid
        assert report.sdepth == poset.sdepth_module(upper, lower)


@settings(max_examples=30)
@given(ideals(max_n=3, max_exp=2, max_gens=3))
def test_larger_cap_gives_same_value(i):
    for upper, lower in ((i, MonomialIdeal.zero(i.ring)), (MonomialIdeal.unit(i.ring), i)):
        g = poset.default_caps(upper, lower)
        base = poset.compute_sdepth(upper, lower).value
        assert poset.compute_sdepth(upper, lower, g=tuple(c + 1 for c in g)).value == base


@settings(max_examples=30)
@given(ideals(max_n=4, max_exp=2, max_gens=4))
def test_binary_and_descending_agree(i):
    for upper, lower in ((i, MonomialIdeal.zero(i.ring)), (MonomialIdeal.unit(i.ring), i)):
        a = poset.compute_sdepth(upper, lower, strategy="descending").value
        b = poset.compute_sdepth(upper, lower, strategy="binary").value
        assert a == b


@settings(max_examples=30)
@given(ideals(max_n=3, max_exp=2, max_gens=3))
def test_free_variable_stripping_agrees(i):
    e = mono.extend(i, 1)
    for upper, lower in ((e, MonomialIdeal.zero(e.ring)), (MonomialIdeal.unit(e.ring), e)):
        assert (poset.compute_sdepth(upper, lower, reduce_free=False).value
                == poset.compute_sdepth(upper, lower).value)


@settings(max_examples=25)
@given(st.data())
def test_irreducible_ideal_closed_form(data):
    ring = data.draw(rings(max_n=4))
    q = data.draw(irreducibles(ring))
    m = len(q.support())
    assert poset.sdepth_ideal(q) == ring.n - m // 2
    assert poset.sdepth_quotient(q) == ring.n - m


def test_maximal_ideal_values():
    for n, expected in zip(range(1, 6), (1, 1, 2, 2, 3)):
        ring = RingContext(n)
        m = MonomialIdeal(ring, tuple(ring.variable(j) for j in range(n)))
        assert poset.sdepth_ideal(m) == expected


def test_principal_ideal_and_isolated_point():
    ring = RingContext(2)
    assert poset.sdepth_ideal(MonomialIdeal(ring, ((1, 1),))) == 2
    # S/(x1^2, x1*x2): x1 is an isolated point
    assert poset.sdepth_quotient(MonomialIdeal(ring, ((2, 0), (1, 1)))) == 0


def test_no_generator_in_support_is_whole_ring():
    ring = RingContext(3)
    res = poset.compute_sdepth(MonomialIdeal.unit(ring), MonomialIdeal.zero(ring))
    assert res.value == 3


def test_poset_counts_and_kind():
    ring = RingContext(2)
    i = MonomialIdeal(ring, ((2, 0), (0, 2)))
    p = poset.build_poset(MonomialIdeal.unit(ring), i)
    assert p.kind == "quotient" and len(p) == 4 and p.g == (2, 2)
    p = poset.build_poset(i, MonomialIdeal.zero(ring))
    assert p.kind == "ideal" and len(p) == 5


def test_interval_masks_are_intervals():
    ring = RingContext(2)
    p = poset.build_poset(MonomialIdeal(ring, ((1, 0), (0, 1))), MonomialIdeal.zero(ring))
    for a, b in itertools.product(p.points, repeat=2):
        mask = p.interval_mask(a, b)
        got = {p.points[k] for k in range(len(p)) if mask >> k & 1}
        want = {c for c in p.points if all(x <= y <= z for x, y, z in zip(a, c, b))}
        assert got == want


def test_bad_inputs():
    ring = RingContext(2)
    i = MonomialIdeal(ring, ((1, 0),))
    j = MonomialIdeal(ring, ((0, 1),))
    with pytest.raises(HypothesisError):
        poset.build_poset(i, j)
    with pytest.raises(HypothesisError):
        poset.build_poset(MonomialIdeal.unit(ring), MonomialIdeal(ring, ((2, 0),)), g=(1, 1))
    with pytest.raises(HypothesisError):
        poset.sdepth_ideal(MonomialIdeal.zero(ring))
    with pytest.raises(HypothesisError):
        poset.sdepth_quotient(MonomialIdeal.unit(ring))
    with pytest.raises(ValueError):
        poset.compute_sdepth(i, MonomialIdeal.zero(ring), strategy="sideways")


def test_point_cap_and_env_override(monkeypatch):
    ring = RingContext(3)
    i = MonomialIdeal(ring, ((5, 0, 0), (0, 5, 0), (0, 0, 5)))
    with pytest.raises(ResourceLimitError):
        poset.sdepth_quotient(i, max_points=100)
    monkeypatch.setenv("SDEPTHKIT_MAX_POSET", "100")
    with pytest.raises(ResourceLimitError):
        poset.sdepth_quotient(i)
    monkeypatch.delenv("SDEPTHKIT_MAX_POSET")
    assert poset.sdepth_quotient(i) == 0


def test_deadline_in_the_past_raises():
    ring = RingContext(5)
    m = MonomialIdeal(ring, tuple(ring.variable(j, 2) for j in range(5)))
    with pytest.raises(ResourceLimitError):
        poset.compute_sdepth(m, MonomialIdeal.zero(ring), reduce_free=False,
                             g=(3,) * 5, deadline=time.monotonic() - 1)


def test_exhaustive_irreducible_ideals_n3():
    for q in all_irreducibles(3):
        assert poset.sdepth_ideal(q) == 3 - len(q.support()) // 2
