from __future__ import annotations

import pytest

from cotrace.bicat import cotrace, dims, spread, trace
from cotrace.common import InputError, Limits, join_label
from cotrace.fincat import (
    FinCat,
    cyclic_group,
    discrete_category,
    identity_functor,
    symmetric_group,
    walking_arrow,
)
from cotrace.prof import (
    ProfBicategory,
    Profunctor,
    coend_diag,
    end_diag,
    functor_coprofunctor,
    functor_profunctor,
    hom_profunctor,
    prof_capabilities,
    prof_compose,
    prof_find_iso,
    prof_has_two_cell,
    prof_lift,
    prof_quotient,
    prof_scalar,
    prof_transpose,
    prof_two_cells,
    tabulate,
    validate_profunctor,
)

BICAT = ProfBicategory()

SMALL = [cyclic_group(2), discrete_category(2), walking_arrow()]


@pytest.mark.parametrize("category", [*SMALL, symmetric_group(3)])
def test_hom_profunctor_validates(category: FinCat) -> None:
    assert validate_profunctor(hom_profunctor(category)).ok


@pytest.mark.parametrize("category", SMALL)
def test_identity_is_a_unit_up_to_iso(category: FinCat) -> None:
    hom = hom_profunctor(category)
    assert prof_find_iso(prof_compose(hom, hom), hom) is not None


@pytest.mark.parametrize("category", SMALL)
def test_yoneda_for_lifts(category: FinCat) -> None:
    hom = hom_profunctor(category)
    assert prof_find_iso(prof_lift(hom, hom), hom) is not None


@pytest.mark.parametrize("category", SMALL)
def test_identity_functor_represents_hom(category: FinCat) -> None:
    functor = identity_functor(category)
    hom = hom_profunctor(category)
    assert prof_find_iso(functor_profunctor(functor), hom) is not None
    assert prof_find_iso(functor_coprofunctor(functor), hom) is not None


@pytest.mark.parametrize(
    ("category", "count"),
    [(cyclic_group(2), 2), (walking_arrow(), 1), (symmetric_group(3), 1)],
)
def test_endo_two_cells_are_the_center(category: FinCat, count: int) -> None:
    hom = hom_profunctor(category)
    assert len(prof_two_cells(hom, hom)) == count


@pytest.mark.parametrize(
    ("category", "classes", "center"),
    [
        (symmetric_group(3), 3, 1),
        (cyclic_group(3), 3, 3),
        (walking_arrow(), 2, 1),
        (discrete_category(2), 2, 1),
    ],
)
def test_closed_form_dims(category: FinCat, classes: int, center: int) -> None:
    hom = hom_profunctor(category)
    assert len(coend_diag(hom)) == classes
    assert len(end_diag(hom)) == center


@pytest.mark.parametrize(
    ("category", "dim", "codim"),
    [(cyclic_group(2), 2, 2), (walking_arrow(), 2, 1), (discrete_category(2), 2, 1)],
)
def test_generic_dims(category: FinCat, dim: int, codim: int) -> None:
    d, c = dims(BICAT, category)
    assert len(BICAT.scalar_elements(d)) == dim
    assert len(BICAT.scalar_elements(c)) == codim


def test_trace_and_cotrace_of_a_scalar() -> None:
    s = prof_scalar(["x", "y", "z"])
    assert prof_find_iso(trace(BICAT, s), s) is not None
    assert prof_find_iso(cotrace(BICAT, s), s) is not None


def test_transpose_of_transpose() -> None:
    hom = hom_profunctor(walking_arrow())
    twice = prof_transpose(prof_transpose(hom))
    assert twice.sets == hom.sets
    assert validate_profunctor(prof_transpose(hom)).ok


def test_broken_action_is_rejected() -> None:
    hom = hom_profunctor(cyclic_group(2))
    lact = dict(hom.lact)
    key = next(k for k in lact if k[0] == "1")
    lact[key] = {x: "0" for x in lact[key]}
    broken = Profunctor(hom.src, hom.tgt, hom.sets, lact, hom.ract)
    assert not validate_profunctor(broken).ok


def test_missing_component_is_rejected() -> None:
    hom = hom_profunctor(walking_arrow())
    sets = dict(hom.sets)
    del sets[("1", "0")]
    result = validate_profunctor(Profunctor(hom.src, hom.tgt, sets, hom.lact, hom.ract))
    assert result.law == "missing-component"


def test_capabilities_carry_limits() -> None:
    limits = Limits(iso_budget=10)
    assert prof_capabilities(limits).limits == limits
    assert prof_capabilities().tag == "prof"


def test_hom_of_c2_has_two_endo_cells() -> None:
    hom = hom_profunctor(cyclic_group(2))
    assert len(prof_two_cells(hom, hom)) == 2
    assert prof_has_two_cell(hom, hom)


def test_no_cell_into_the_empty_profunctor() -> None:
    c2 = cyclic_group(2)
    hom = hom_profunctor(c2)
    empty = tabulate(c2, c2, lambda b, a: (), lambda *_: "", lambda *_: "")
    assert validate_profunctor(empty).ok
    assert not prof_has_two_cell(hom, empty)
    assert prof_has_two_cell(empty, hom)


@pytest.mark.parametrize("category", SMALL)
def test_spread_is_hom_times_the_scalar(category: FinCat) -> None:
    v = ("x", "y")
    decode = {
        join_label(m.label, x): (m.label, x) for m in category.morphisms for x in v
    }

    def left(beta: str, a: str, e: str) -> str:
        m, x = decode[e]
        return join_label(category.compose(m, beta), x)

    def right(alpha: str, b: str, e: str) -> str:
        m, x = decode[e]
        return join_label(category.compose(alpha, m), x)

    expected = tabulate(
        category,
        category,
        lambda b, a: [join_label(m, x) for m in category.hom(b, a) for x in v],
        left,
        right,
    )
    assert validate_profunctor(expected).ok
    assert prof_find_iso(spread(BICAT, prof_scalar(v), category), expected) is not None


def _c2_representable() -> Profunctor:
    """C2(-, o) × C2(o, -), four elements in the one component."""
    c2 = cyclic_group(2)
    (o,) = c2.objects
    decode = {join_label(m, n): (m, n) for m in c2.hom(o, o) for n in c2.hom(o, o)}

    def left(beta: str, a: str, e: str) -> str:
        m, n = decode[e]
        return join_label(c2.compose(m, beta), n)

    def right(alpha: str, b: str, e: str) -> str:
        m, n = decode[e]
        return join_label(m, c2.compose(alpha, n))

    return tabulate(c2, c2, lambda b, a: list(decode), left, right)


def test_quotient_of_a_representable_is_hom() -> None:
    free = _c2_representable()
    (o,) = free.src.objects
    merged = prof_quotient(free, [((o, o), join_label("0", "0"), join_label("1", "1"))])
    assert merged.size() == 2
    assert validate_profunctor(merged).ok
    assert prof_find_iso(merged, hom_profunctor(free.src)) is not None


def test_merging_everything_collapses_to_a_point() -> None:
    hom = hom_profunctor(cyclic_group(2))
    merged = prof_quotient(hom, [(("o", "o"), "0", "1")])
    assert merged.size() == 1
    assert validate_profunctor(merged).ok


def test_quotient_rejects_unknown_elements() -> None:
    hom = hom_profunctor(cyclic_group(2))
    with pytest.raises(InputError, match="cannot merge"):
        prof_quotient(hom, [(("o", "o"), "0", "2")])
