"""Closed-form Stanley depth bounds with explicit hypothesis checks, and the
conjecture predicates (sdepth >= depth, sdepth I >= 1 + sdepth S/I).

Every evaluator returns a :class:`BoundReport`.  A report whose hypotheses
fail carries ``value=None``; it never falls back to a default number.
All dimensions are computed from the ideals, never supplied by the caller.

Ceiling and floor of a/2 are written ``-(-a // 2)`` and ``a // 2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import homology
from . import monomials as mono
from . import poset
from .errors import HypothesisError
from .monomials import MonomialIdeal

LOWER, UPPER, EXACT = "lower", "upper", "exact"


def ceil_half(a: int) -> int:
    return -(-a // 2)


@dataclass
class BoundReport:
    name: str
    kind: str
    target: str
    value: Optional[int] = None
    hypotheses: list = field(default_factory=list)
    inputs: dict = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return all(ok for _, ok in self.hypotheses)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "target": self.target,
            "value": self.value,
            "applicable": self.applicable,
            "hypotheses": [[text, ok] for text, ok in self.hypotheses],
            "inputs": dict(self.inputs),
        }


def _report(name, kind, target, hypotheses, compute) -> BoundReport:
    rep = BoundReport(name, kind, target, hypotheses=list(hypotheses))
    if rep.applicable:
        rep.value, rep.inputs = compute()
    return rep


def _nonzero_proper(ideal: MonomialIdeal) -> bool:
    return not ideal.is_zero and not ideal.is_unit


def _irreducible(ideal: MonomialIdeal) -> bool:
    return _nonzero_proper(ideal) and mono.is_irreducible(ideal)


def _primary(ideal: MonomialIdeal) -> bool:
    return _nonzero_proper(ideal) and mono.is_primary(ideal)


def _prime(ideal: MonomialIdeal) -> bool:
    return _irreducible(ideal) and all(max(g) == 1 for g in ideal.generators)


def _dims(q: MonomialIdeal, q2: MonomialIdeal) -> dict:
    return {
        "dim_S/Q": mono.krull_dim_quotient(q),
        "dim_S/Q'": mono.krull_dim_quotient(q2),
        "dim_S/(Q+Q')": mono.krull_dim_quotient(mono.ideal_sum(q, q2)),
    }


def two_component_value(dim_q: int, dim_q2: int, dim_sum: int) -> int:
    """max{min{dim S/Q', ⌈(dim S/Q + dim S/(Q+Q'))/2⌉}, min{dim S/Q, ⌈(dim S/Q' + dim S/(Q+Q'))/2⌉}}."""
    return max(
        min(dim_q2, ceil_half(dim_q + dim_sum)),
        min(dim_q, ceil_half(dim_q2 + dim_sum)),
    )


def _pair_formula(q, q2):
    dims = _dims(q, q2)
    value = two_component_value(dims["dim_S/Q"], dims["dim_S/Q'"], dims["dim_S/(Q+Q')"])
    return value, dims


def _distinct_primes(q, q2) -> bool:
    return mono.radical(q) != mono.radical(q2)


def _irredundant(q, q2) -> bool:
    # Q ⊆ Q' collapses Q∩Q' to Q, and the two-component value no longer applies
    x = mono.intersect(q, q2)
    return x != q and x != q2


IRREDUNDANT = "neither ideal contains the other"


def thm_low(q: MonomialIdeal, q2: MonomialIdeal) -> BoundReport:
    """Lower bound for sdepth S/(Q ∩ Q'), Q and Q' irreducible."""
    return _report(
        "thm_low", LOWER, "S/(Q∩Q')",
        [("Q non-zero irreducible", _irreducible(q)), ("Q' non-zero irreducible", _irreducible(q2))],
        lambda: _pair_formula(q, q2),
    )


def thm_up(q: MonomialIdeal, q2: MonomialIdeal) -> BoundReport:
    """Upper bound for sdepth S/(Q ∩ Q'), Q and Q' primary with different radicals.

    Both ceilings use the same shape: ⌈(dim S/Q' + dim S/(Q+Q'))/2⌉ in the
    second term, mirroring the first.
    """
    return _report(
        "thm_up", UPPER, "S/(Q∩Q')",
        [
            ("Q non-zero primary", _primary(q)),
            ("Q' non-zero primary", _primary(q2)),
            ("different associated primes", _primary(q) and _primary(q2) and _distinct_primes(q, q2)),
            (IRREDUNDANT, _irredundant(q, q2)),
        ],
        lambda: _pair_formula(q, q2),
    )


def prop_up(q: MonomialIdeal, q2: MonomialIdeal) -> BoundReport:
    """Upper bound for the case dim S/(Q+Q') = 0."""
    hyps = [
        ("Q non-zero primary", _primary(q)),
        ("Q' non-zero primary", _primary(q2)),
    ]
    if all(ok for _, ok in hyps):
        hyps.append(("different associated primes", _distinct_primes(q, q2)))
        hyps.append((IRREDUNDANT, _irredundant(q, q2)))
        hyps.append(("dim S/(Q+Q') = 0", mono.krull_dim_quotient(mono.ideal_sum(q, q2)) == 0))
    return _report("prop_up", UPPER, "S/(Q∩Q')", hyps, lambda: _pair_formula(q, q2))


def cor_eg(q: MonomialIdeal, q2: MonomialIdeal) -> BoundReport:
    """Exact value of sdepth S/(Q ∩ Q') for irreducible Q, Q' with different radicals."""
    both = _irreducible(q) and _irreducible(q2)
    return _report(
        "cor_eg", EXACT, "S/(Q∩Q')",
        [
            ("Q non-zero irreducible", _irreducible(q)),
            ("Q' non-zero irreducible", _irreducible(q2)),
            ("different associated primes", both and _distinct_primes(q, q2)),
            (IRREDUNDANT, _irredundant(q, q2)),
        ],
        lambda: _pair_formula(q, q2),
    )


def cor_pr(p: MonomialIdeal, p2: MonomialIdeal) -> BoundReport:
    """Exact value of sdepth S/(P ∩ P') for incomparable monomial primes."""
    both = _prime(p) and _prime(p2)
    return _report(
        "cor_pr", EXACT, "S/(P∩P')",
        [
            ("P non-zero monomial prime", _prime(p)),
            ("P' non-zero monomial prime", _prime(p2)),
            ("P, P' incomparable", both and not (p.support() <= p2.support() or p2.support() <= p.support())),
        ],
        lambda: _pair_formula(p, p2),
    )


def cor_facets(fsize: int, f2size: int, overlap: int) -> BoundReport:
    """sdepth K[Δ] for a complex with exactly two facets F, F'."""
    hyps = [
        ("0 <= |F∩F'| <= min(|F|, |F'|)", 0 <= overlap <= min(fsize, f2size)),
        ("facets distinct and incomparable", overlap < fsize and overlap < f2size),
    ]
    return _report(
        "cor_facets", EXACT, "K[Δ]", hyps,
        lambda: (
            max(min(f2size, ceil_half(fsize + overlap)), min(fsize, ceil_half(f2size + overlap))),
            {"|F|": fsize, "|F'|": f2size, "|F∩F'|": overlap},
        ),
    )


def _layout_inputs(q, q2):
    lay = mono.layout(q, q2)
    return lay, {"n": lay.n, "r": lay.r, "t": lay.t, "p": lay.p}


def _irreducible_pair_hyps(q, q2):
    hyps = [("Q non-zero irreducible", _irreducible(q)), ("Q' non-zero irreducible", _irreducible(q2))]
    return hyps, all(ok for _, ok in hyps)


def _distinct_layout_case(lay) -> bool:
    # excluded combination r = 0, t = p means equal radicals
    return not (lay.r == 0 and lay.t == lay.p)


def lemma_ea(q: MonomialIdeal, q2: MonomialIdeal) -> BoundReport:
    """Disjoint supports covering all variables: sdepth(Q∩Q') >= ⌈r/2⌉ + ⌈(n-r)/2⌉."""
    hyps, ok = _irreducible_pair_hyps(q, q2)
    if ok:
        lay, _ = _layout_inputs(q, q2)
        hyps += [("supports disjoint (t = r)", lay.t == lay.r), ("no free variables (p = n)", lay.p == lay.n)]

    def compute():
        lay, inputs = _layout_inputs(q, q2)
        return ceil_half(lay.r) + ceil_half(lay.n - lay.r), inputs

    return _report("lemma_ea", LOWER, "Q∩Q'", hyps, compute)


def lemma_lb(q: MonomialIdeal, q2: MonomialIdeal) -> BoundReport:
    """No free variables: sdepth(Q∩Q') >= ⌈r/2⌉ + ⌈(n-t)/2⌉."""
    hyps, ok = _irreducible_pair_hyps(q, q2)
    if ok:
        lay, _ = _layout_inputs(q, q2)
        hyps += [("different associated primes", _distinct_layout_case(lay)), ("no free variables (p = n)", lay.p == lay.n)]

    def compute():
        lay, inputs = _layout_inputs(q, q2)
        return ceil_half(lay.r) + ceil_half(lay.n - lay.t), inputs

    return _report("lemma_lb", LOWER, "Q∩Q'", hyps, compute)


def lemma_lob(q: MonomialIdeal, q2: MonomialIdeal) -> BoundReport:
    """sdepth(Q∩Q') >= n - p + ⌈r/2⌉ + ⌈(p-t)/2⌉."""
    hyps, ok = _irreducible_pair_hyps(q, q2)
    if ok:
        lay, _ = _layout_inputs(q, q2)
        hyps.append(("different associated primes", _distinct_layout_case(lay)))

    def compute():
        lay, inputs = _layout_inputs(q, q2)
        return lay.n - lay.p + ceil_half(lay.r) + ceil_half(lay.p - lay.t), inputs

    return _report("lemma_lob", LOWER, "Q∩Q'", hyps, compute)


def thm_Lob(q: MonomialIdeal, q2: MonomialIdeal) -> BoundReport:
    """sdepth(Q∩Q') >= dim S/(Q+Q') + ⌈(dim S/Q' - dim S/(Q+Q'))/2⌉ + ⌈(dim S/Q - dim S/(Q+Q'))/2⌉.

    ``inputs["weak"]`` holds the coarser ⌈(dim S/Q + dim S/Q')/2⌉.
    """
    hyps, _ = _irreducible_pair_hyps(q, q2)

    def compute():
        dims = _dims(q, q2)
        dq, dq2, ds = dims["dim_S/Q"], dims["dim_S/Q'"], dims["dim_S/(Q+Q')"]
        dims["weak"] = ceil_half(dq + dq2)
        return ds + ceil_half(dq2 - ds) + ceil_half(dq - ds), dims

    return _report("thm_Lob", LOWER, "Q∩Q'", hyps, compute)


def remark_tr(q: MonomialIdeal, q2: MonomialIdeal) -> BoundReport:
    """Equal radicals: sdepth(Q∩Q') >= 1 + dim S/Q."""
    hyps, ok = _irreducible_pair_hyps(q, q2)
    hyps.append(("equal radicals", ok and not _distinct_primes(q, q2)))
    return _report(
        "remark_tr", LOWER, "Q∩Q'", hyps,
        lambda: (1 + mono.krull_dim_quotient(q), {"dim_S/Q": mono.krull_dim_quotient(q)}),
    )


def ky_o_bound(ideal: MonomialIdeal) -> BoundReport:
    """sdepth(I) >= n - ⌊|G(I)|/2⌋."""
    return _report(
        "ky_o", LOWER, "I",
        [("I non-zero", not ideal.is_zero)],
        lambda: (ideal.n - len(ideal.generators) // 2, {"n": ideal.n, "|G(I)|": len(ideal.generators)}),
    )


def _sum_dim(*ideals) -> int:
    total = ideals[0]
    for other in ideals[1:]:
        total = mono.ideal_sum(total, other)
    return mono.krull_dim_quotient(total)


def _triple_hyps(q1, q2, q3):
    hyps = [(f"Q{i} non-zero irreducible", _irreducible(q)) for i, q in enumerate((q1, q2, q3), 1)]
    return hyps, all(ok for _, ok in hyps)


def lemma_3(q1: MonomialIdeal, q2: MonomialIdeal, q3: MonomialIdeal) -> BoundReport:
    """Lower bound for sdepth((Q2∩Q3)/(Q1∩Q2∩Q3))."""
    hyps, _ = _triple_hyps(q1, q2, q3)

    def compute():
        d123, d12, d13 = _sum_dim(q1, q2, q3), _sum_dim(q1, q2), _sum_dim(q1, q3)
        dims = {"dim_S/(Q1+Q2+Q3)": d123, "dim_S/(Q1+Q2)": d12, "dim_S/(Q1+Q3)": d13}
        return d123 + ceil_half(d12 - d123) + ceil_half(d13 - d123), dims

    return _report("lemma_3", LOWER, "(Q2∩Q3)/(Q1∩Q2∩Q3)", hyps, compute)


def prop_s31(q1: MonomialIdeal, q2: MonomialIdeal, q3: MonomialIdeal, **engine) -> BoundReport:
    """Lower bound for sdepth S/(Q1∩Q2∩Q3) when dim S/(Q1+Q2+Q3) = 0.

    Needs the exact sdepth of the three pairwise quotients; ``engine`` is
    passed to :func:`sdepthkit.poset.sdepth_quotient`.
    """
    hyps, ok = _triple_hyps(q1, q2, q3)
    if ok:
        hyps.append(("dim S/(Q1+Q2+Q3) = 0", _sum_dim(q1, q2, q3) == 0))

    def compute():
        d12, d13, d23 = _sum_dim(q1, q2), _sum_dim(q1, q3), _sum_dim(q2, q3)
        s23 = poset.sdepth_quotient(mono.intersect(q2, q3), **engine)
        s13 = poset.sdepth_quotient(mono.intersect(q1, q3), **engine)
        s12 = poset.sdepth_quotient(mono.intersect(q1, q2), **engine)
        value = max(
            min(s23, ceil_half(d12) + ceil_half(d13)),
            min(s13, ceil_half(d12) + ceil_half(d23)),
            min(s12, ceil_half(d23) + ceil_half(d13)),
        )
        inputs = {
            "dim_S/(Q1+Q2)": d12, "dim_S/(Q1+Q3)": d13, "dim_S/(Q2+Q3)": d23,
            "sdepth_S/(Q2∩Q3)": s23, "sdepth_S/(Q1∩Q3)": s13, "sdepth_S/(Q1∩Q2)": s12,
        }
        return value, inputs

    return _report("prop_s31", LOWER, "S/(Q1∩Q2∩Q3)", hyps, compute)


def _sdepth_or_inf(upper, lower, **engine):
    if upper == lower:
        return None  # zero module: no constraint
    return poset.sdepth_module(upper, lower, **engine)


def _min_opt(*values):
    present = [v for v in values if v is not None]
    return min(present) if present else None


def exact_sequence_bound(i: MonomialIdeal, j: MonomialIdeal, **engine) -> BoundReport:
    """sdepth S/(I∩J) >= max{min{sdepth S/I, sdepth I/(I∩J)}, min{sdepth S/J, sdepth J/(I∩J)}}."""
    hyps = [("I proper", not i.is_unit), ("J proper", not j.is_unit)]

    def compute():
        x = mono.intersect(i, j)
        unit = MonomialIdeal.unit(i.ring)
        s_i = _sdepth_or_inf(unit, i, **engine)
        s_j = _sdepth_or_inf(unit, j, **engine)
        m_i = _sdepth_or_inf(i, x, **engine)
        m_j = _sdepth_or_inf(j, x, **engine)
        value = max(_min_opt(s_i, m_i), _min_opt(s_j, m_j))
        return value, {"sdepth_S/I": s_i, "sdepth_S/J": s_j, "sdepth_I/(I∩J)": m_i, "sdepth_J/(I∩J)": m_j}

    return _report("exact_sequence", LOWER, "S/(I∩J)", hyps, compute)


def prop_low(q: MonomialIdeal, q2: MonomialIdeal, **engine) -> BoundReport:
    """Lower bound for sdepth S/(Q∩Q'), Q and Q' primary, supports covering all variables.

    In the layout supp Q = {1..t}, supp Q' = {r+1..n}, with v (resp. w) over
    the monomials of the overlap block outside Q' (resp. Q):

        max{ min_v {r,   sdepth(Q' ∩ K[x_{t+1..n}]), sdepth((Q':v) ∩ K[x_{t+1..n}])},
             min_w {n-t, sdepth(Q ∩ K[x_{1..r}]),    sdepth((Q:w) ∩ K[x_{1..r}])} }

    The minimum runs over all three terms for every v; the constants do not
    depend on v so this is the only reading.  Only finitely many distinct
    colon ideals occur; each is computed once.
    """
    hyps = [("Q non-zero primary", _primary(q)), ("Q' non-zero primary", _primary(q2))]
    if all(ok for _, ok in hyps):
        lay = mono.layout(q, q2)
        hyps += [
            ("different associated primes", _distinct_primes(q, q2)),
            ("supports cover all variables (p = n)", lay.p == lay.n),
            ("1 <= r <= t < n", 1 <= lay.r and lay.t < lay.n),
        ]

    def side(ideal, block, mid, constant):
        values = {}
        for w in mono.standard_monomials(ideal, mid):
            restricted = mono.restrict(mono.colon(ideal, w), block)
            if restricted not in values:
                values[restricted] = poset.sdepth_ideal(restricted, **engine)
        return min([constant, *values.values()]), len(values)

    def compute():
        lay = mono.layout(q, q2)
        mid = list(lay.overlap)
        first, nv = side(q2, lay.only_q2, mid, lay.r)
        second, nw = side(q, lay.only_q, mid, lay.n - lay.t)
        inputs = {"n": lay.n, "r": lay.r, "t": lay.t, "p": lay.p,
                  "first": first, "second": second, "colon_ideals_v": nv, "colon_ideals_w": nw}
        return max(first, second), inputs

    return _report("prop_low", LOWER, "S/(Q∩Q')", hyps, compute)


def pair_bounds(q: MonomialIdeal, q2: MonomialIdeal) -> list:
    """Every closed-form report for a pair (no exact sdepth computations)."""
    return [
        thm_low(q, q2), thm_up(q, q2), prop_up(q, q2), cor_eg(q, q2), cor_pr(q, q2),
        lemma_ea(q, q2), lemma_lb(q, q2), lemma_lob(q, q2), thm_Lob(q, q2),
        remark_tr(q, q2), ky_o_bound(mono.intersect(q, q2)),
    ]


def triple_bounds(q1, q2, q3, **engine) -> list:
    return [lemma_3(q1, q2, q3), prop_s31(q1, q2, q3, **engine)]


# conjecture predicates


def _require_nonzero_proper(ideal):
    if not _nonzero_proper(ideal):
        raise HypothesisError("predicates need a non-zero proper ideal")


def check_question_as(ideal: MonomialIdeal, **engine) -> bool:
    """sdepth I >= 1 + sdepth S/I."""
    _require_nonzero_proper(ideal)
    return poset.sdepth_ideal(ideal, **engine) >= 1 + poset.sdepth_quotient(ideal, **engine)


def check_conjecture_ideal(ideal: MonomialIdeal, char: int = 0, **engine) -> bool:
    """sdepth I >= depth I."""
    _require_nonzero_proper(ideal)
    return poset.sdepth_ideal(ideal, **engine) >= homology.depth_ideal(ideal, char)


def check_conjecture_quotient(ideal: MonomialIdeal, char: int = 0, **engine) -> bool:
    """sdepth S/I >= depth S/I."""
    _require_nonzero_proper(ideal)
    return poset.sdepth_quotient(ideal, **engine) >= homology.depth_quotient(ideal, char)
