from __future__ import annotations

import pytest

from cotrace.common import InputError, check_labels, graph_label, is_label, join_label
from cotrace.fincat import (
    FinCat,
    FinFunctor,
    Morphism,
    automorphisms,
    cyclic_group,
    discrete_category,
    identity_functor,
    opposite_category,
    product_category,
    rename_category,
    symmetric_group,
    terminal_category,
    validate_category,
    validate_functor,
    walking_arrow,
)


@pytest.mark.parametrize(
    "category",
    [
        terminal_category(),
        discrete_category(2),
        walking_arrow(),
        cyclic_group(3),
        symmetric_group(3),
        opposite_category(walking_arrow()),
        product_category(walking_arrow(), cyclic_group(2)),
        rename_category(cyclic_group(2), lambda x: f"g{x}"),
    ],
)
def test_standard_categories_validate(category: FinCat) -> None:
    assert validate_category(category).ok


def test_product_sizes() -> None:
    product = product_category(walking_arrow(), cyclic_group(2))
    assert len(product.objects) == 2
    assert len(product.morphisms) == 6


def test_symmetric_group_composition_is_function_composition() -> None:
    s3 = symmetric_group(3)
    # (g∘f)(i) = g(f(i))
    assert s3.compose("102", "021") == "120"
    assert len(s3.morphisms) == 6


def test_corrupted_cyclic_group_reports_associativity() -> None:
    c3 = cyclic_group(3)
    comp = dict(c3.comp)
    comp[("1", "1")] = "1"
    broken = FinCat(c3.objects, c3.morphisms, c3.identities, comp)
    result = validate_category(broken)
    assert not result
    assert result.law == "associativity"
    assert result.labels == ("1", "1", "2")


def test_missing_composite_is_reported() -> None:
    arrow = walking_arrow()
    comp = dict(arrow.comp)
    del comp[("u", "id0")]
    result = validate_category(
        FinCat(arrow.objects, arrow.morphisms, arrow.identities, comp)
    )
    assert result.law == "missing-composite"
    assert result.labels == ("u", "id0")


def test_identity_must_be_an_endomorphism() -> None:
    arrow = walking_arrow()
    result = validate_category(
        FinCat(arrow.objects, arrow.morphisms, {"0": "u", "1": "id1"}, arrow.comp)
    )
    assert result.law == "identity"


def test_unknown_endpoint() -> None:
    category = FinCat(("x",), (Morphism("f", "x", "y"),), {"x": "f"}, {})
    assert validate_category(category).law == "endpoints"


def test_functors() -> None:
    c2 = cyclic_group(2)
    assert validate_functor(identity_functor(c2)).ok
    trivial = FinFunctor(c2, terminal_category(), {"o": "*"}, {"0": "*", "1": "*"})
    assert validate_functor(trivial).ok
    swap = FinFunctor(c2, c2, {"o": "o"}, {"0": "1", "1": "0"})
    assert validate_functor(swap).law == "identity"


def test_labels() -> None:
    assert join_label("a", "b") == "a∘b"
    assert join_label("a∘b", "c") == "⟨a∘b⟩∘c"
    assert is_label(join_label("a∘b", "c"))
    assert is_label(graph_label({"x": "y", "z": "w"}))
    assert is_label(graph_label({}))
    assert not is_label("a∘")
    assert not is_label("")
    assert check_labels(["b", "a"], "here") == ("a", "b")
    with pytest.raises(InputError, match="duplicate"):
        check_labels(["a", "a"], "here")
    with pytest.raises(InputError, match=r"here\[0\]"):
        check_labels(["{"], "here")


@pytest.mark.parametrize(
    ("category", "count"),
    [
        (cyclic_group(3), 2),
        (symmetric_group(3), 6),
        (discrete_category(2), 2),
        (walking_arrow(), 1),
    ],
)
def test_automorphisms(category: FinCat, count: int) -> None:
    found = automorphisms(category)
    assert len(found) == count
    assert found[0] == identity_functor(category)
    assert all(validate_functor(f) for f in found)
