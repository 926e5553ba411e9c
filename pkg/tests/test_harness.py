import json

import pytest
from hypothesis import given, strategies as st

from sdepthkit import harness
from sdepthkit import monomials as mono
from sdepthkit.errors import GrammarError, HypothesisError
from sdepthkit.harness import ExperimentConfig, ProblemSpec, parse_ideal
from sdepthkit.monomials import MonomialIdeal, RingContext

from conftest import ideals

PRIMARY_Q = "x1^2, x2^2, x3^2, x4^2, x1*x2*x4, x1*x3*x4"


def test_parse_examples():
    ring = RingContext(6)
    q = parse_ideal(PRIMARY_Q, ring)
    assert len(q) == 6 and mono.is_primary(q) and not mono.is_irreducible(q)
    assert parse_ideal("0", ring).is_zero
    assert parse_ideal(" x1 ^ 2 *x2,x2^3 ", ring) == MonomialIdeal(ring, ((2, 1, 0, 0, 0, 0), (0, 3, 0, 0, 0, 0)))
    assert parse_ideal("x1*x1", ring) == parse_ideal("x1^2", ring)


@pytest.mark.parametrize("text,position", [
    ("x1^2 x2", 5),
    ("x1,", 3),
    ("", 0),
    ("x1^", 3),
    ("x1 + x2", 3),
    ("0, x1", 1),
])
def test_parse_syntax_errors(text, position):
    with pytest.raises(GrammarError) as err:
        parse_ideal(text, RingContext(3))
    assert err.value.position == position
    assert f"position {position}" in str(err.value)


def test_parse_unknown_variable_and_overflow():
    ring = RingContext(2)
    with pytest.raises(GrammarError, match="unknown variable"):
        parse_ideal("x3", ring)
    with pytest.raises(GrammarError, match="exceeds"):
        parse_ideal("x1^70000", ring)
    with pytest.raises(GrammarError, match="exceeds"):
        parse_ideal("x1^40000*x1^40000", ring)


@given(ideals(max_n=4, max_exp=4, max_gens=5))
def test_str_parse_round_trip(i):
    assert parse_ideal(str(i), i.ring) == i


def test_random_irreducible_seed_42_fixture():
    rng = harness.make_rng(42)
    got = [str(harness.random_irreducible(rng, 3, 2)) for _ in range(3)]
    assert got == ["x1^2", "x3, x1", "x3, x2^2, x1"]


@given(st.integers(0, 2 ** 64 - 1), st.integers(1, 5), st.integers(1, 3))
def test_random_irreducible_properties(seed, n, max_exp):
    q = harness.random_irreducible(harness.make_rng(seed), n, max_exp)
    assert not q.is_zero and mono.is_irreducible(q)
    assert all(1 <= max(g) <= max_exp for g in q.generators)


def test_random_irreducible_one_variable():
    q = harness.random_irreducible(harness.make_rng(1), 1, 3)
    assert len(q.generators) == 1 and q.generators[0][0] in (1, 2, 3)
    with pytest.raises(ValueError):
        harness.random_irreducible(harness.make_rng(1), 0, 3)


@given(st.integers(0, 2 ** 32), st.integers(1, 4))
def test_random_primary_is_primary(seed, n):
    q = harness.random_primary(harness.make_rng(seed), n, 3)
    assert mono.is_primary(q)


def spec_for(n, task, target="ideal", **texts):
    ring = RingContext(n)
    return ProblemSpec(ring, {k: parse_ideal(v, ring) for k, v in texts.items()}, task, target)


def test_run_sdepth_and_depth():
    rec = harness.run(spec_for(3, "sdepth", I="x1^2, x2^2, x3^2, x1*x2, x1*x3"))
    assert rec.values["sdepth"] == 1 and rec.status == "ok"
    rec = harness.run(spec_for(3, "depth", "quotient", I="x1*x2, x2*x3, x1*x3"))
    assert rec.values == {"depth": 1}
    rec = harness.run(spec_for(3, "dim", "quotient", I="x1*x2, x2*x3, x1*x3"))
    assert rec.values == {"dim": 1}
    with pytest.raises(HypothesisError):
        harness.run(spec_for(2, "depth", "module", J="x1", I="x1^2"))


def test_run_bounds_on_primary_pair(monkeypatch):
    monkeypatch.setattr(harness, "BOUNDS_IDEAL_BUDGET_S", 0.5)
    rec = harness.run(spec_for(6, "bounds", "pair", Q1=PRIMARY_Q, Q2="x4^2, x5, x6"))
    bounds = {b["name"]: b for b in rec.bounds}
    assert bounds["thm_up"]["value"] == 2
    assert rec.values["sdepth_quotient"] == 1


def test_run_decompose_and_validate():
    rec = harness.run(spec_for(2, "decompose", "quotient", I="x1^2, x1*x2"))
    assert rec.values["sdepth"] == 0
    spec = spec_for(2, "validate", "quotient", I="x1^2, x1*x2")
    spec.decomposition_text = rec.values["decomposition"]
    assert harness.run(spec).values["valid"]
    spec.decomposition_text = "1 ; x2\n"
    out = harness.run(spec).values
    assert not out["valid"] and out["violation"] == "gap"


def test_run_verify():
    rec = harness.run(spec_for(3, "verify", "pair", Q1="x1", Q2="x2", Q3="x3"))
    assert all(rec.predicates.values())


def test_problem_spec_ring_check():
    with pytest.raises(mono.RingMismatchError):
        ProblemSpec(RingContext(3), {"I": parse_ideal("x1", RingContext(2))}, "sdepth")


def small_config(**kw):
    base = dict(seed=11, count=12, n_max=3, time_limit=30.0)
    base.update(kw)
    return ExperimentConfig(**base)


@pytest.mark.parametrize("family", harness.FAMILIES)
def test_experiment_is_deterministic(family):
    a = list(harness.experiment(small_config(family=family)))
    b = list(harness.experiment(small_config(family=family)))
    assert harness.determinism_digest(a) == harness.determinism_digest(b)
    assert [r.to_json(with_timing=False) for r in a] == [r.to_json(with_timing=False) for r in b]
    summary = harness.summarize(a)
    assert summary["records"] == 12 and summary["errors"] == 0
    assert harness.all_predicates_pass(summary)


def test_worker_pool_keeps_order():
    serial = list(harness.experiment(small_config()))
    pooled = list(harness.experiment(small_config(workers=2)))
    assert harness.determinism_digest(serial) == harness.determinism_digest(pooled)


def test_records_replay_from_echo(tmp_path):
    cfg = small_config(count=6)
    path = tmp_path / "out.jsonl"
    records = harness.write_jsonl(harness.experiment(cfg), path)
    lines = path.read_text().splitlines()
    assert len(lines) == 6
    for line, rec in zip(lines, records):
        loaded = harness.record_from_json(line)
        again = harness.replay(loaded, cfg)
        assert again.values == rec.values and again.predicates == rec.predicates
        assert json.loads(line)["schema"] == harness.SCHEMA_VERSION


def test_resource_cap_gives_skipped_record():
    records = list(harness.experiment(small_config(count=5, max_points=2)))
    assert {r.status for r in records} == {"skipped"}
    assert harness.summarize(records)["skipped"] == 5


def test_summary_csv(tmp_path):
    summary = harness.summarize(harness.experiment(small_config(count=4)))
    path = tmp_path / "summary.csv"
    harness.write_summary_csv(summary, path)
    rows = path.read_text().splitlines()
    assert rows[0] == f"schema,{harness.SCHEMA_VERSION}"
    assert "records,4" in rows


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(seed=1, family="three-ideals")
    with pytest.raises(ValueError):
        ExperimentConfig(seed=-1)
    with pytest.raises(ValueError):
        ExperimentConfig(seed=1, n_min=3, n_max=2)


def test_pair_experiment_seed_7_all_exact():
    cfg = ExperimentConfig(seed=7, family="irreducible-pair", count=200, n_max=4, max_exp=2)
    summary = harness.summarize(harness.experiment(cfg))
    assert summary["errors"] == summary["skipped"] == 0
    assert summary["cor_eg_exact_total"] > 0
    assert summary["cor_eg_exact_passed"] == summary["cor_eg_exact_total"]
    assert harness.all_predicates_pass(summary)
