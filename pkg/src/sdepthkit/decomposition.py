"""Stanley spaces, Stanley decompositions of J/I, and their validation.

A decomposition carries its target as the pair (J, I): the quotient S/I is
(unit, I) and the ideal I itself is (I, zero).

Validation combines exact pairwise tests with a coverage count over the box
[0, G+1]^n, where G bounds the exponents of I, J and every u_i.  Membership in
J, in I and in each space x^u K[Z] is decided by min(a_j, G_j + 1) alone, so
the box is enough.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import monomials as mono
from .errors import GrammarError, HypothesisError
from .monomials import MonomialIdeal, RingContext


@dataclass(frozen=True)
class StanleySpace:
    """The K-subspace u*K[Z]; ``z`` holds 0-based variable indices."""

    u: tuple
    z: frozenset

    @property
    def dim(self) -> int:
        return len(self.z)


def space_contains(space: StanleySpace, m) -> bool:
    """True iff u divides m and m/u only involves variables of Z."""
    return all(
        e == f or (f > e and j in space.z)
        for j, (e, f) in enumerate(zip(space.u, m))
    )


def spaces_meet(s: StanleySpace, t: StanleySpace) -> bool:
    # coordinatewise: a fixed exponent must be reachable from the other side
    for j, (a, b) in enumerate(zip(s.u, t.u)):
        in_s, in_t = j in s.z, j in t.z
        if not in_s and not in_t and a != b:
            return False
        if not in_s and in_t and a < b:
            return False
        if in_s and not in_t and b < a:
            return False
    return True


@dataclass(frozen=True)
class StanleyDecomposition:
    upper: MonomialIdeal
    lower: MonomialIdeal
    spaces: tuple

    @property
    def ring(self) -> RingContext:
        return self.upper.ring

    @classmethod
    def of_quotient(cls, ideal: MonomialIdeal, spaces) -> "StanleyDecomposition":
        return cls(MonomialIdeal.unit(ideal.ring), ideal, tuple(spaces))

    @classmethod
    def of_ideal(cls, ideal: MonomialIdeal, spaces) -> "StanleyDecomposition":
        return cls(ideal, MonomialIdeal.zero(ideal.ring), tuple(spaces))


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    kind: Optional[str] = None  # "outside" | "overlap" | "gap"
    witness: Optional[tuple] = None
    sdepth: Optional[int] = None


def _in_target(d: StanleyDecomposition, m) -> bool:
    return mono.contains(d.upper, m) and not mono.contains(d.lower, m)


def _outside_witness(d: StanleyDecomposition, s: StanleySpace):
    if not mono.contains(d.upper, s.u):
        return s.u
    for h in d.lower.generators:
        if all(h[j] <= s.u[j] for j in range(len(h)) if j not in s.z):
            return tuple(max(e, f) if j in s.z else e for j, (e, f) in enumerate(zip(s.u, h)))
    return None


def validation_box(d: StanleyDecomposition) -> tuple:
    bound = [max(a, b) for a, b in zip(d.upper.exponent_bound(), d.lower.exponent_bound())]
    for s in d.spaces:
        bound = [max(a, b) for a, b in zip(bound, s.u)]
    return tuple(b + 1 for b in bound)


def validate(d: StanleyDecomposition) -> ValidationReport:
    """Check that the spaces lie in J\\I, are pairwise disjoint and cover J\\I."""
    n = d.ring.n
    for s in d.spaces:
        if len(s.u) != n or any(not 0 <= j < n for j in s.z):
            raise mono.RingMismatchError(f"space {s} does not live in a ring with n={n}")
    for s in d.spaces:
        w = _outside_witness(d, s)
        if w is not None:
            return ValidationReport(False, "outside", w)
    spaces = d.spaces
    for i, s in enumerate(spaces):
        for t in spaces[i + 1 :]:
            if spaces_meet(s, t):
                return ValidationReport(False, "overlap", mono.lcm(s.u, t.u))
    # disjoint spaces inside the target: coverage reduces to a count
    for m in mono.box(validation_box(d)):
        if _in_target(d, m) and not any(space_contains(s, m) for s in spaces):
            return ValidationReport(False, "gap", m)
    return ValidationReport(True, sdepth=min((s.dim for s in spaces), default=n))


def sdepth_of(d: StanleyDecomposition) -> int:
    report = validate(d)
    if not report.valid:
        raise HypothesisError(f"invalid decomposition: {report.kind} at {report.witness}")
    return report.sdepth


# text format: one space per line, "u ; Z"


def format_space(space: StanleySpace, ring: RingContext) -> str:
    z = ",".join(ring.variable_names[j] for j in sorted(space.z))
    u = mono.format_monomial(space.u, ring)
    return f"{u} ; {z}" if z else f"{u} ;"


def format_decomposition(d: StanleyDecomposition) -> str:
    return "".join(format_space(s, d.ring) + "\n" for s in d.spaces)


def parse_space(line: str, ring: RingContext) -> StanleySpace:
    from .harness import parse_monomial

    if ";" not in line:
        raise GrammarError("expected 'u ; Z'", len(line))
    left, right = line.split(";", 1)
    u = parse_monomial(left, ring, allow_one=True)
    names = [p.strip() for p in right.split(",")] if right.strip() else []
    z = set()
    for name in names:
        if name not in ring.variable_names:
            raise GrammarError(f"unknown variable {name!r}", line.index(";") + 1)
        z.add(ring.index(name))
    return StanleySpace(u, frozenset(z))


def parse_spaces(text: str, ring: RingContext) -> tuple:
    return tuple(
        parse_space(line, ring)
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    )
