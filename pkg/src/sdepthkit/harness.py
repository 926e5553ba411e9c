"""Problem parsing, random instance families and batch verification.

Ideal grammar (whitespace between tokens is ignored)::

    ideal  := "0" | term ("," term)*
    term   := factor ("*" factor)*
    factor := var ("^" uint)?

Randomness comes from NumPy's PCG64 bit generator seeded explicitly, so an
:class:`ExperimentConfig` always produces the same instance stream.  Records
are JSON Lines (``SCHEMA_VERSION``); the ``timing_s`` field is the only
non-deterministic part and is excluded from :func:`determinism_digest`.
"""
from __future__ import annotations

import concurrent.futures
import csv
import hashlib
import json
import logging
import re
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterator, Optional

import numpy as np

from . import __version__, decomposition, formulas, homology, poset
from . import monomials as mono
from .errors import GrammarError, HypothesisError, ResourceLimitError, SdepthError
from .monomials import MAX_EXPONENT, MonomialIdeal, RingContext

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
BOUNDS_IDEAL_BUDGET_S = 10.0
FAMILIES = ("irreducible-pair", "irreducible-triple", "primary-pair")

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[*^,])|(?P<bad>\S))")


def _tokens(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        if m.lastgroup is None:
            break
        kind = m.lastgroup
        if kind == "bad":
            raise GrammarError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind, value=None):
        tok = self.peek()
        if tok is None:
            raise GrammarError(f"unexpected end of input, expected {value or kind}", len(self.text))
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise GrammarError(f"expected {value or kind}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def factor(self, exps):
        _, name, at = self.take("name")
        if name not in self.ring.variable_names:
            raise GrammarError(f"unknown variable {name!r}", at)
        power = 1
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.i += 1
            _, digits, at = self.take("int")
            power = int(digits)
            if power > MAX_EXPONENT:
                raise GrammarError(f"exponent {power} exceeds {MAX_EXPONENT}", at)
        j = self.ring.index(name)
        exps[j] += power
        if exps[j] > MAX_EXPONENT:
            raise GrammarError(f"exponent of {name} exceeds {MAX_EXPONENT}", at)

    def term(self):
        exps = [0] * self.ring.n
        self.factor(exps)
        while (tok := self.peek()) is not None and tok[1] == "*":
            self.i += 1
            self.factor(exps)
        return tuple(exps)

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise GrammarError(f"unexpected {tok[1]!r}", tok[2])


def parse_monomial(text: str, ring: RingContext, allow_one: bool = False) -> tuple:
    p = _Parser(text, ring)
    tok = p.peek()
    if allow_one and tok is not None and tok[0] == "int" and tok[1] == "1":
        p.i += 1
        p.done()
        return ring.one()
    m = p.term()
    p.done()
    return m


def parse_ideal(text: str, ring: RingContext) -> MonomialIdeal:
    p = _Parser(text, ring)
    tok = p.peek()
    if tok is None:
        raise GrammarError("empty ideal; write 0 for the zero ideal", 0)
    if tok[0] == "int" and tok[1] == "0":
        p.i += 1
        p.done()
        return MonomialIdeal.zero(ring)
    gens = [p.term()]
    while (tok := p.peek()) is not None and tok[1] == ",":
        p.i += 1
        gens.append(p.term())
    p.done()
    return MonomialIdeal(ring, tuple(gens))


# random instances


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_irreducible(rng: np.random.Generator, n: int, max_exp: int) -> MonomialIdeal:
    """Support uniform among non-empty subsets, exponents uniform in [1, max_exp]."""
    if n < 1 or max_exp < 1:
        raise ValueError("need n >= 1 and max_exp >= 1")
    ring = RingContext(n)
    mask = int(rng.integers(1, 2 ** n))
    gens = [
        ring.variable(j, int(rng.integers(1, max_exp + 1)))
        for j in range(n) if mask >> j & 1
    ]
    return MonomialIdeal(ring, tuple(gens))


def random_primary(rng: np.random.Generator, n: int, max_exp: int, extra: int = 2) -> MonomialIdeal:
    """A random irreducible ideal plus up to ``extra`` monomials in its support.

    Each extra exponent is drawn below the pure power of that variable, so
    the extra monomials are not absorbed by the pure powers.
    """
    q = random_irreducible(rng, n, max_exp)
    pure = [max(g) for g in q.generators]
    where = [g.index(e) for g, e in zip(q.generators, pure)]
    gens = list(q.generators)
    for _ in range(int(rng.integers(0, extra + 1))):
        m = [0] * n
        for j, e in zip(where, pure):
            m[j] = int(rng.integers(0, e))
        if any(m):
            gens.append(tuple(m))
    return MonomialIdeal(q.ring, tuple(gens))


# problems and records


@dataclass
class ProblemSpec:
    """A single computation.

    ``target`` selects the module: ``"ideal"`` (the ideal I), ``"quotient"``
    (S/I) or ``"module"`` (J/I).  Pair and triple tasks read Q1..Q3.
    """

    ring: RingContext
    ideals: dict
    task: str
    target: str = "ideal"
    char: int = 0
    decomposition_text: Optional[str] = None

    def __post_init__(self):
        for name, ideal in self.ideals.items():
            if ideal.ring.n != self.ring.n:
                raise mono.RingMismatchError(f"{name} does not live in the problem ring")


@dataclass
class ResultRecord:
    instance: dict
    status: str = "ok"
    values: dict = field(default_factory=dict)
    bounds: list = field(default_factory=list)
    predicates: dict = field(default_factory=dict)
    timing_s: float = 0.0
    engine_version: str = __version__
    schema: int = SCHEMA_VERSION
    message: Optional[str] = None

    def to_dict(self, with_timing: bool = True) -> dict:
        d = asdict(self)
        if not with_timing:
            d.pop("timing_s")
        return d

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_dict(with_timing), sort_keys=True, ensure_ascii=False)


def determinism_digest(records) -> str:
    h = hashlib.sha256()
    for rec in records:
        h.update(rec.to_json(with_timing=False).encode())
        h.update(b"\n")
    return h.hexdigest()


def _echo(ideals: dict) -> dict:
    return {name: str(ideal) for name, ideal in ideals.items()}


def _target_pair(spec: ProblemSpec):
    ring = spec.ring
    if spec.target == "ideal":
        return spec.ideals["I"], MonomialIdeal.zero(ring)
    if spec.target == "quotient":
        return MonomialIdeal.unit(ring), spec.ideals["I"]
    if spec.target == "module":
        return spec.ideals["J"], spec.ideals["I"]
    raise ValueError(f"unknown target {spec.target!r}")


def _qs(spec: ProblemSpec) -> list:
    qs = [spec.ideals[k] for k in ("Q1", "Q2", "Q3") if k in spec.ideals]
    if len(qs) < 2:
        raise HypothesisError("pair/triple tasks need Q1 and Q2")
    return qs


def _intersection(qs):
    x = qs[0]
    for q in qs[1:]:
        x = mono.intersect(x, q)
    return x


def run(spec: ProblemSpec, **engine) -> ResultRecord:
    """Execute one :class:`ProblemSpec`; errors propagate to the caller."""
    rec = ResultRecord(
        instance={"n": spec.ring.n, "task": spec.task, "target": spec.target,
                  "char": spec.char, "ideals": _echo(spec.ideals)}
    )
    start = time.perf_counter()
    task = spec.task
    if task in ("sdepth", "decompose", "validate"):
        upper, lower = _target_pair(spec)
        if task == "sdepth":
            res = poset.compute_sdepth(upper, lower, **engine)
            rec.values = {"sdepth": res.value, "intervals": len(res.partition.intervals)}
        elif task == "decompose":
            d = poset.optimal_decomposition(upper, lower, **engine)
            rec.values = {
                "sdepth": decomposition.sdepth_of(d),
                "decomposition": decomposition.format_decomposition(d),
            }
        else:
            spaces = decomposition.parse_spaces(spec.decomposition_text or "", spec.ring)
            report = decomposition.validate(decomposition.StanleyDecomposition(upper, lower, spaces))
            rec.values = {"valid": report.valid, "violation": report.kind,
                          "witness": list(report.witness) if report.witness else None,
                          "sdepth": report.sdepth, "spaces": len(spaces)}
    elif task in ("depth", "dim"):
        if spec.target == "module":
            raise HypothesisError(f"{task} is only available for an ideal or a quotient")
        ideal = spec.ideals["I"]
        if task == "dim":
            rec.values = {"dim": ideal.n if spec.target == "ideal" else mono.krull_dim_quotient(ideal)}
        elif spec.target == "ideal":
            rec.values = {"depth": homology.depth_ideal(ideal, spec.char)}
        else:
            rec.values = {"depth": homology.depth_quotient(ideal, spec.char)}
    elif task == "bounds":
        qs = _qs(spec)
        x = _intersection(qs)
        if len(qs) == 2:
            reports = formulas.pair_bounds(*qs) + [formulas.prop_low(*qs, **engine)]
            rec.values = {"sdepth_quotient": poset.sdepth_quotient(x, **engine)}
            # the ideal can be much harder than the quotient; give it a budget
            budget = dict(engine)
            if "deadline" not in budget and "time_limit" not in budget:
                budget["time_limit"] = BOUNDS_IDEAL_BUDGET_S
            try:
                rec.values["sdepth_ideal"] = poset.sdepth_ideal(x, **budget)
            except ResourceLimitError as exc:
                rec.values["sdepth_ideal"] = None
                rec.message = f"sdepth_ideal skipped: {exc}"
        else:
            reports = formulas.triple_bounds(*qs, **engine)
            rec.values = {"sdepth_quotient": poset.sdepth_quotient(x, **engine)}
        rec.bounds = [r.to_dict() for r in reports]
    elif task == "verify":
        ideal = spec.ideals["I"] if "I" in spec.ideals else _intersection(_qs(spec))
        rec.values = _exact_values(ideal, spec.char, **engine)
        rec.predicates = _predicates(rec.values)
    else:
        raise ValueError(f"unknown task {task!r}")
    rec.timing_s = time.perf_counter() - start
    return rec


def _exact_values(x: MonomialIdeal, char: int, quotient_only=False, **engine) -> dict:
    values = {
        "dim_quotient": mono.krull_dim_quotient(x),
        "sdepth_quotient": poset.sdepth_quotient(x, **engine),
        "depth_quotient": homology.depth_quotient(x, char),
    }
    if not quotient_only:
        values["sdepth_ideal"] = poset.sdepth_ideal(x, **engine)
        values["depth_ideal"] = values["depth_quotient"] + 1
    return values


def _predicates(values: dict) -> dict:
    preds = {"conjecture_quotient": values["sdepth_quotient"] >= values["depth_quotient"]}
    if "sdepth_ideal" in values:
        preds["question_as"] = values["sdepth_ideal"] >= 1 + values["sdepth_quotient"]
        preds["conjecture_ideal"] = values["sdepth_ideal"] >= values["depth_ideal"]
    return preds


# experiments


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int
    family: str = "irreducible-pair"
    count: int = 200
    n_min: int = 1
    n_max: int = 4
    max_exp: int = 2
    char: int = 0
    max_points: int = poset.DEFAULT_MAX_POINTS
    time_limit: float = 60.0
    check_char2: bool = True
    workers: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.max_exp < 1 or self.count < 0:
            raise ValueError("need max_exp >= 1 and count >= 0")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def generate_instances(cfg: ExperimentConfig) -> list:
    """The deterministic list of (index, n, {name: ideal}) for a config."""
    rng = make_rng(cfg.seed)
    out = []
    for k in range(cfg.count):
        n = int(rng.integers(cfg.n_min, cfg.n_max + 1))
        if cfg.family == "irreducible-pair":
            ideals = {f"Q{i}": random_irreducible(rng, n, cfg.max_exp) for i in (1, 2)}
        elif cfg.family == "irreducible-triple":
            ideals = {f"Q{i}": random_irreducible(rng, n, cfg.max_exp) for i in (1, 2, 3)}
        else:
            ideals = {f"Q{i}": random_primary(rng, n, cfg.max_exp) for i in (1, 2)}
        out.append((k, n, ideals))
    return out


def _pair_checks(q, q2, values, reports, rec):
    by_name = {r.name: r for r in reports}
    sq, si = values["sdepth_quotient"], values.get("sdepth_ideal")
    checks = {}
    eg = by_name.get("cor_eg")
    if eg is not None and eg.applicable:
        checks["cor_eg_exact"] = eg.value == sq
    low, up = by_name.get("thm_low"), by_name.get("thm_up")
    if low is not None and low.applicable:
        checks["thm_low_holds"] = low.value <= sq
    if up is not None and up.applicable:
        checks["thm_up_holds"] = sq <= up.value
    if si is not None:
        for name in ("thm_Lob", "lemma_lob", "lemma_lb", "lemma_ea", "remark_tr", "ky_o"):
            r = by_name.get(name)
            if r is not None and r.applicable:
                checks[f"{name}_holds"] = r.value <= si
    pl = by_name.get("prop_low")
    if pl is not None and pl.applicable:
        checks["prop_low_holds"] = pl.value <= sq
    rec.predicates.update(checks)


def _ky_winner(reports) -> Optional[str]:
    by_name = {r.name: r for r in reports}
    ours = by_name["lemma_lob"] if by_name["lemma_lob"].applicable else by_name["thm_Lob"]
    ky = by_name["ky_o"]
    if not (ours.applicable and ky.applicable):
        return None
    if ours.value > ky.value:
        return "lemma_lob"
    if ours.value < ky.value:
        return "ky_o"
    return "tie"


def evaluate_instance(cfg: ExperimentConfig, index: int, n: int, ideals: dict) -> ResultRecord:
    rec = ResultRecord(instance={"index": index, "family": cfg.family, "n": n, "ideals": _echo(ideals)})
    start = time.perf_counter()
    engine = {"max_points": cfg.max_points, "deadline": time.monotonic() + cfg.time_limit}
    try:
        qs = [ideals[k] for k in sorted(ideals)]
        x = _intersection(qs)
        triple = cfg.family == "irreducible-triple"
        values = _exact_values(x, cfg.char, quotient_only=triple, **engine)
        if cfg.check_char2 and cfg.char != 2:
            d2 = homology.depth_quotient(x, 2)
            values["depth_quotient_char2"] = d2
            values["char_sensitive"] = d2 != values["depth_quotient"]
        rec.values = values
        rec.predicates = _predicates(values)
        if triple:
            reports = formulas.triple_bounds(*qs, **engine)
            lower = mono.intersect(qs[1], qs[2])
            if lower != x:
                s = poset.sdepth_module(lower, x, **engine)
                values["sdepth_lemma_3_module"] = s
                rec.predicates["lemma_3_holds"] = reports[0].value <= s
            s31 = reports[1]
            if s31.applicable:
                rec.predicates["prop_s31_holds"] = s31.value <= values["sdepth_quotient"]
        else:
            reports = formulas.pair_bounds(*qs)
            if cfg.family == "primary-pair":
                reports.append(formulas.prop_low(*qs, **engine))
            _pair_checks(qs[0], qs[1], values, reports, rec)
            winner = _ky_winner(reports) if cfg.family == "irreducible-pair" else None
            if winner is not None:
                values["ky_comparison"] = winner
        rec.bounds = [r.to_dict() for r in reports]
    except ResourceLimitError as exc:
        rec.status, rec.message = "skipped", str(exc)
        rec.values, rec.predicates, rec.bounds = {}, {}, []
    except SdepthError as exc:
        rec.status, rec.message = "error", f"{type(exc).__name__}: {exc}"
    rec.timing_s = time.perf_counter() - start
    return rec


def _evaluate_args(args):
    return evaluate_instance(*args)


def experiment(cfg: ExperimentConfig) -> Iterator[ResultRecord]:
    """Records in instance order, computed serially or in a process pool."""
    jobs = [(cfg, k, n, ideals) for k, n, ideals in generate_instances(cfg)]
    if cfg.workers <= 1:
        for job in jobs:
            yield _evaluate_args(job)
        return
    with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        # map() yields in submission order, which keeps the stream deterministic
        yield from pool.map(_evaluate_args, jobs, chunksize=4)


def summarize(records) -> dict:
    records = list(records)
    status = Counter(r.status for r in records)
    preds = Counter()
    totals = Counter()
    ky = Counter()
    ties = 0
    char_flags = 0
    for r in records:
        for name, ok in r.predicates.items():
            totals[name] += 1
            preds[name] += bool(ok)
        if "ky_comparison" in r.values:
            ky[r.values["ky_comparison"]] += 1
        if r.values.get("char_sensitive"):
            char_flags += 1
        by_name = {b["name"]: b for b in r.bounds}
        low, up = by_name.get("thm_low"), by_name.get("thm_up")
        if low and up and low["applicable"] and up["applicable"] and low["value"] == up["value"]:
            ties += 1
    summary = {
        "records": len(records),
        "ok": status["ok"],
        "skipped": status["skipped"],
        "errors": status["error"],
        "thm_low_thm_up_ties": ties,
        "char_sensitive": char_flags,
    }
    for name in sorted(totals):
        summary[f"{name}_passed"] = preds[name]
        summary[f"{name}_total"] = totals[name]
    for name in sorted(ky):
        summary[f"ky_winner_{name}"] = ky[name]
    return summary


def all_predicates_pass(summary: dict) -> bool:
    return all(
        summary[k] == summary[k.replace("_passed", "_total")]
        for k in summary if k.endswith("_passed")
    )


def write_jsonl(records, path) -> list:
    records = list(records)
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
    return records


def write_summary_csv(summary: dict, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["schema", SCHEMA_VERSION])
        for key, value in summary.items():
            w.writerow([key, value])


def record_from_json(line: str) -> ResultRecord:
    return ResultRecord(**json.loads(line))


def replay(rec: ResultRecord, cfg: ExperimentConfig) -> ResultRecord:
    """Re-run an experiment record from its own instance echo."""
    n = rec.instance["n"]
    ring = RingContext(n)
    ideals = {name: parse_ideal(text, ring) for name, text in rec.instance["ideals"].items()}
    return evaluate_instance(cfg, rec.instance["index"], n, ideals)
