from __future__ import annotations

from dataclasses import replace

import pytest

from cotrace.codec import dumps, loads
from cotrace.common import InputError, Limits
from cotrace.fincat import automorphisms, cyclic_group
from cotrace.laws import (
    LAWS,
    DroppedRelLift,
    DroppedSpanLift,
    SuiteConfig,
    check_lift_universal_property,
    evaluate,
    make_bicategory,
    replay,
    run_law,
    run_law_suite,
    select_laws,
)
from cotrace.prof import ProfBicategory, hom_profunctor
from cotrace.rel import FinSet, RelBicategory, RelCell
from cotrace.samples import PoolSampler, RelSampler, SpanSampler, replay_case
from cotrace.span import SpanBicategory, SpanCell, span_scalar
from tests.conftest import constant_span, finset

CHEAP = SuiteConfig(max_size=1, rel_max_size=1, samples=20)


def test_every_instance_law_is_registered() -> None:
    expected = {
        "lift-universal-property",
        "extension-universal-property",
        "trace-closed-form",
        "cotrace-closed-form",
        "spread-cotrace-adjunction",
        "trace-cospread-adjunction",
        "trace-cyclicity",
        "cotrace-cyclicity",
        "enrichment-agreement",
        "enriched-composition",
        "two-trace-bijection",
        "codim-monoid",
        "dim-module",
        "zigzag",
        "prof-yoneda",
    }
    assert expected <= set(LAWS)
    assert LAWS["prof-yoneda"].instances == ("prof",)


def test_exhaustive_rel_run_passes() -> None:
    config = SuiteConfig(max_size=2, rel_max_size=2)
    report = run_law(LAWS["trace-closed-form"], "rel", config)
    assert report.passed
    assert report.mode == "exhaustive"
    # empty set: 1 relation, one point: 2, two points: 16
    assert report.cases == 19


def test_rel_is_exhaustive_up_to_three_points_by_default() -> None:
    report = run_law(LAWS["trace-closed-form"], "rel", SuiteConfig())
    assert report.passed
    assert report.mode == "exhaustive"
    # 1 + 2 + 16 + 512 endo-relations
    assert report.cases == 531


def test_rel_falls_back_to_the_largest_size_that_fits() -> None:
    law = LAWS["lift-universal-property"]
    report = run_law(law, "rel", SuiteConfig(max_size=1))
    assert report.passed
    assert report.mode == "exhaustive"
    # sum of 2^(ab + bc + ca) over three sets of size at most 2
    assert report.cases == 5053


def test_sampled_span_run_passes() -> None:
    report = run_law(LAWS["scalar-fixed-point"], "span", CHEAP)
    assert report.passed
    assert report.mode == "sampled"
    assert 0 < report.cases <= 20


def test_rel_lift_mutation_is_caught_and_replays() -> None:
    (report,) = run_law_suite(
        SuiteConfig(max_size=1), ["rel"], ["lift-universal-property"], "rel-lift"
    )
    assert report.status == "counterexample"
    assert report.mode == "exhaustive"
    witness = report.witness
    assert witness is not None
    assert witness["law"] == "lift-universal-property"
    assert witness["mutation"] == "rel-lift"

    loaded = loads(dumps(witness))
    assert len(loaded.case) == 3
    replayed = replay(loaded)
    assert replayed.status == "counterexample"
    assert replayed.mode == "replay"

    clean = loads(dumps({**witness, "mutation": None}))
    assert replay(clean).passed


def test_mutation_leaves_other_instances_alone() -> None:
    assert type(make_bicategory("span", mutation="rel-lift")) is SpanBicategory
    assert type(make_bicategory("rel", mutation="rel-lift")) is DroppedRelLift
    assert type(make_bicategory("span", mutation="span-lift")) is DroppedSpanLift


def test_span_lift_mutation_against_explicit_candidates() -> None:
    f = g = h = constant_span(1)
    assert check_lift_universal_property(SpanBicategory(), f, g, [h]).passed
    report = check_lift_universal_property(DroppedSpanLift(), f, g, [h])
    assert report.status == "counterexample"
    assert report.witness is not None


def test_sampled_counterexample_is_shrunk_and_replays() -> None:
    config = SuiteConfig(max_size=1, samples=100)
    law = LAWS["lift-universal-property"]
    report = run_law(law, "span", config, mutation="span-lift")
    assert report.status == "counterexample"
    assert report.mode == "sampled"
    witness = report.witness
    assert witness is not None
    assert witness["mutation"] == "span-lift"

    bicat = DroppedSpanLift()
    case = replay_case(law.build, SpanSampler(bicat, 1), witness["choices"])
    assert evaluate(law, bicat, case) is not None
    assert replay(loads(dumps(witness))).status == "counterexample"
    # smallest failure: three one-point sets, f and g empty, one apex element in h
    assert sum(witness["choices"]) <= 6


@pytest.mark.slow
@pytest.mark.parametrize("law_id", ["cotrace-tensor", "pairing"])
def test_span_existence_laws_pass_at_the_default_config(law_id: str) -> None:
    report = run_law(LAWS[law_id], "span", SuiteConfig())
    assert report.status == "pass", report.message
    assert report.mode == "sampled"


def _loops_and_an_edge() -> SpanCell:
    """p: 0→0, q: 0→1, r: 1→1."""
    return SpanCell(
        finset(2),
        finset(2),
        FinSet(("p", "q", "r")),
        {"p": "0", "q": "0", "r": "1"},
        {"p": "0", "q": "1", "r": "1"},
    )


ADJUNCTIONS = ["spread-cotrace-adjunction", "trace-cospread-adjunction"]


@pytest.mark.parametrize("law_id", ADJUNCTIONS)
def test_adjunction_transposes_are_natural_bijections(law_id: str) -> None:
    case = (span_scalar(["x", "y"]), _loops_and_an_edge())
    assert evaluate(LAWS[law_id], SpanBicategory(), case) is None


def test_pairing_is_unital_and_associative_on_spans() -> None:
    f = _loops_and_an_edge()
    assert evaluate(LAWS["pairing"], SpanBicategory(), (f, f, f)) is None


def test_conjugating_by_a_swap_keeps_traces() -> None:
    f = RelCell(finset(2), finset(2), frozenset({("0", "1"), ("1", "1")}))
    swap = ({"0": "1", "1": "0"},)
    assert evaluate(LAWS["conjugation-invariance"], RelBicategory(), (f, swap)) is None


def test_conjugating_by_a_category_automorphism_keeps_traces() -> None:
    c3 = cyclic_group(3)
    flip = automorphisms(c3)[1]
    maps = (dict(flip.obj_map), dict(flip.mor_map))
    case = (hom_profunctor(c3), maps)
    assert evaluate(LAWS["conjugation-invariance"], ProfBicategory(), case) is None
def test_budget_exceeded_is_reported() -> None:
    config = SuiteConfig(limits=Limits(enumeration_cap=1, iso_budget=1))
    bicat = SpanBicategory(config.limits)
    sampler = PoolSampler(SpanSampler(bicat, 1), [finset(1)], [constant_span(3)])
    report = run_law(LAWS["cotrace-closed-form"], "span", config, sampler=sampler)
    assert report.status == "budget-exceeded"
    assert not report.passed
    assert report.to_dict()["status"] == "budget-exceeded"


def test_pool_runs_are_exhaustive() -> None:
    bicat = RelBicategory()
    sampler = PoolSampler(RelSampler(bicat, 1), [finset(2)], [])
    report = run_law(LAWS["zigzag"], "rel", CHEAP, sampler=sampler)
    assert report.passed
    assert report.cases == 1


def test_unknown_names_are_input_errors() -> None:
    with pytest.raises(InputError):
        select_laws(["no-such-law"])
    with pytest.raises(InputError):
        make_bicategory("vect")
    with pytest.raises(InputError):
        run_law_suite(CHEAP, ["rel"], mutation="everything")


def test_reports_are_ordered_and_parallel_runs_agree() -> None:
    laws = ["zigzag", "codim-monoid", "scalar-fixed-point"]
    serial = run_law_suite(CHEAP, ["rel", "span"], laws)
    assert [(r.law, r.instance) for r in serial] == sorted(
        (r.law, r.instance) for r in serial
    )
    parallel = run_law_suite(replace(CHEAP, jobs=2), ["rel", "span"], laws)
    assert [r.to_dict() for r in parallel] == [r.to_dict() for r in serial]


@pytest.mark.slow
@pytest.mark.parametrize("tag", ["rel", "span"])
def test_whole_suite_passes(tag: str) -> None:
    config = SuiteConfig(max_size=1, rel_max_size=1, samples=10)
    reports = run_law_suite(config, [tag])
    failing = [r.to_dict() for r in reports if not r.passed]
    assert failing == []


@pytest.mark.slow
def test_whole_suite_passes_on_prof() -> None:
    reports = run_law_suite(SuiteConfig(max_size=1, samples=5), ["prof"])
    failing = [r.to_dict() for r in reports if not r.passed]
    assert failing == []
