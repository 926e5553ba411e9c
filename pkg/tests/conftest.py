import itertools

import pytest
from hypothesis import settings, strategies as st

from sdepthkit.monomials import MonomialIdeal, RingContext

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def rings(draw, max_n=4):
    return RingContext(draw(st.integers(1, max_n)))


@st.composite
def monomials_in(draw, ring, max_exp=3):
    return tuple(draw(st.lists(st.integers(0, max_exp), min_size=ring.n, max_size=ring.n)))


@st.composite
def ideals(draw, ring=None, max_n=4, max_exp=3, max_gens=4, nonzero=True, proper=True):
    """Small monomial ideals; by default non-zero and proper."""
    ring = ring or draw(rings(max_n))
    gens = draw(st.lists(monomials_in(ring, max_exp), min_size=1 if nonzero else 0, max_size=max_gens))
    if proper:
        gens = [g for g in gens if any(g)] or [ring.variable(0)]
    return MonomialIdeal(ring, tuple(gens))


@st.composite
def irreducibles(draw, ring, max_exp=2):
    supp = draw(st.sets(st.integers(0, ring.n - 1), min_size=1))
    return MonomialIdeal(
        ring, tuple(ring.variable(j, draw(st.integers(1, max_exp))) for j in sorted(supp))
    )


def all_irreducibles(n, max_exp=2):
    ring = RingContext(n)
    for mask in range(1, 2 ** n):
        supp = [j for j in range(n) if mask >> j & 1]
        for exps in itertools.product(range(1, max_exp + 1), repeat=len(supp)):
            yield MonomialIdeal(ring, tuple(ring.variable(j, e) for j, e in zip(supp, exps)))


@pytest.fixture
def ring3():
    return RingContext(3)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
