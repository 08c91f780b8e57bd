from __future__ import annotations

import pytest
from hypothesis import find, given, settings
from hypothesis import strategies as st

from cotrace.fincat import cyclic_group
from cotrace.prof import ProfBicategory, validate_profunctor
from cotrace.rel import RelBicategory
from cotrace.samples import (
    Draw,
    DrawnCase,
    PrefixDraw,
    ProfSampler,
    Reject,
    RelSampler,
    SpanSampler,
    case_strategy,
    enumerate_cases,
    replay_case,
)
from cotrace.span import SpanBicategory
from tests.conftest import finset


def endo(sampler, draw: Draw) -> tuple:
    return (sampler.endo(draw),)


def function(sampler, draw: Draw) -> tuple:
    a, b = sampler.object(draw), sampler.object(draw)
    return (sampler.function(draw, a, b),)


def c2_profunctor(sampler, draw: Draw) -> tuple:
    c2 = cyclic_group(2)
    return (sampler.cell(draw, c2, c2),)


def test_prefix_draw_follows_then_clamps_the_prefix() -> None:
    draw = PrefixDraw([5, 1])
    assert draw.choose(3) == 2
    assert draw.choose(3) == 1
    assert draw.choose(3) == 0
    assert draw.sequence == [2, 1, 0]
    with pytest.raises(Reject):
        draw.choose(0)


def test_enumeration_counts_every_endo_relation() -> None:
    sampler = RelSampler(RelBicategory(), 2)
    cases = enumerate_cases(endo, sampler, 100)
    assert cases is not None
    assert len(cases) == 1 + 2 + 16
    assert cases[0].choices == (0, 0)


def test_enumeration_gives_up_past_the_limit() -> None:
    sampler = RelSampler(RelBicategory(), 2)
    assert enumerate_cases(endo, sampler, 10) is None


def test_rejected_draws_are_skipped() -> None:
    sampler = RelSampler(RelBicategory(), 1)
    cases = enumerate_cases(function, sampler, 100)
    assert cases is not None
    # ∅→∅, ∅→1, 1→1; nothing maps 1→∅
    assert len(cases) == 3


@given(st.data())
def test_drawn_cases_replay_from_their_choices(data: st.DataObject) -> None:
    sampler = SpanSampler(SpanBicategory(), 2)
    drawn = data.draw(case_strategy(endo, sampler))
    assert isinstance(drawn, DrawnCase)
    assert replay_case(endo, sampler, drawn.choices) == drawn.case


@given(st.data())
def test_drawn_profunctors_are_valid(data: st.DataObject) -> None:
    sampler = ProfSampler(ProfBicategory(), 2)
    drawn = data.draw(case_strategy(endo, sampler))
    assert validate_profunctor(drawn.case[0])


def test_bijections_of_three_points() -> None:
    sampler = RelSampler(RelBicategory(), 3)
    a = finset(3)

    def swap(sampler, draw: Draw) -> tuple:
        return sampler.automorphism(draw, a)

    cases = enumerate_cases(swap, sampler, 100)
    assert cases is not None
    images = {tuple(maps[0][x] for x in a) for _, (maps,) in cases}
    assert len(images) == 6


def test_quotients_reach_small_profunctors_over_c2() -> None:
    sampler = ProfSampler(ProfBicategory(), 2)
    drawn = find(
        case_strategy(c2_profunctor, sampler),
        lambda d: d.case[0].size() == 2,
        settings=settings(database=None, max_examples=2000),
    )
    p = drawn.case[0]
    assert p.size() == 2
    assert validate_profunctor(p)


def test_s3_is_offered_only_from_three_objects_up() -> None:
    def arrows(max_size: int) -> list[int]:
        sampler = ProfSampler(ProfBicategory(), max_size)
        return [len(c.morphisms) for c in sampler.objects()]

    assert 6 not in arrows(2)
    assert 6 in arrows(3)
    assert 3 in arrows(2)
