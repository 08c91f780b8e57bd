from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cotrace.common import BudgetExceeded
from cotrace.search import UnionFind, natural_maps


def test_union_find_keeps_least_root() -> None:
    classes = UnionFind(["c", "a", "b", "d"])
    assert classes.union("c", "b") == "b"
    assert classes.union("b", "a") == "a"
    assert classes.classes() == {"a": "a", "b": "a", "c": "a", "d": "d"}


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=20))
def test_union_find_is_an_equivalence(pairs: list[tuple[int, int]]) -> None:
    classes = UnionFind(range(10))
    for a, b in pairs:
        classes.union(a, b)
    roots = classes.classes()
    for a, b in pairs:
        assert roots[a] == roots[b]
    for item, root in roots.items():
        assert root <= item
        assert roots[root] == root


def test_unconstrained_families_in_order() -> None:
    families = list(
        natural_maps({"k": ["a", "b"]}, {"k": ["x", "y"]}, [], budget=100)
    )
    assert len(families) == 4
    assert families[0] == {"k": {"a": "x", "b": "x"}}
    assert families[-1] == {"k": {"a": "y", "b": "y"}}


def test_injective_families() -> None:
    families = natural_maps(
        {"k": ["a", "b"]}, {"k": ["x", "y"]}, [], injective=True, budget=100
    )
    assert len(list(families)) == 2


def test_naturality_propagates_along_arrows() -> None:
    arrow = ("1", "2", {"a": "b"}, {"x": "u", "y": "v"})
    families = list(
        natural_maps(
            {"1": ["a"], "2": ["b"]},
            {"1": ["x", "y"], "2": ["u", "v"]},
            [arrow],
            budget=100,
        )
    )
    assert families == [
        {"1": {"a": "x"}, "2": {"b": "u"}},
        {"1": {"a": "y"}, "2": {"b": "v"}},
    ]


def test_budget_is_enforced() -> None:
    with pytest.raises(BudgetExceeded):
        list(natural_maps({"k": ["a", "b"]}, {"k": ["x", "y"]}, [], budget=1))
