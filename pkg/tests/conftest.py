from __future__ import annotations

from pathlib import Path

import pytest

from cotrace.prof import ProfBicategory
from cotrace.rel import FinSet, RelBicategory
from cotrace.span import SpanBicategory, SpanCell

DATA = Path(__file__).parent / "data"


def finset(n: int) -> FinSet:
    return FinSet(tuple(str(i) for i in range(n)))


def constant_span(size: int) -> SpanCell:
    """A span over the point with ``size`` apex elements."""
    point = finset(1)
    apex = [f"s{i}" for i in range(size)]
    legs = dict.fromkeys(apex, "0")
    return SpanCell(point, point, FinSet(tuple(apex)), legs, legs)


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def rel() -> RelBicategory:
    return RelBicategory()


@pytest.fixture
def span() -> SpanBicategory:
    return SpanBicategory()


@pytest.fixture
def prof() -> ProfBicategory:
    return ProfBicategory()
