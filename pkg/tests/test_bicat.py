from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotrace.bicat import (
    Bicategory,
    Cell,
    Obj,
    TwoCell,
    codim_monoid,
    cospread,
    cotrace,
    enriched_compose,
    enriched_identity,
    enrichment_hom,
    enrichment_hom_named,
    find_iso,
    kan_monoid,
    lax_monoid,
    module_structure,
    monoid_isomorphism,
    name,
    pairing,
    realize,
    scalar_braid,
    trace,
    two_cell_monoid,
    two_trace,
    two_trace_correspondence,
)
from cotrace.common import UNIT, EndpointMismatch
from cotrace.fincat import cyclic_group, symmetric_group, walking_arrow
from cotrace.prof import ProfBicategory, hom_profunctor, prof_scalar
from cotrace.rel import (
    FinSet,
    RelBicategory,
    RelCell,
    rel_full,
    rel_identity,
    unit_set,
)
from cotrace.span import SpanBicategory, SpanCell, span_identity, span_scalar
from tests.conftest import constant_span, finset

REL = RelBicategory()
SPAN = SpanBicategory()
PROF = ProfBicategory()


@st.composite
def parallel_relations(draw) -> tuple[RelCell, RelCell]:
    a, b = finset(draw(st.integers(0, 2))), finset(draw(st.integers(0, 2)))
    pairs = [(x, y) for x in a for y in b]
    subsets = st.sets(st.sampled_from(pairs)) if pairs else st.just(set())
    return RelCell(a, b, frozenset(draw(subsets))), RelCell(
        a, b, frozenset(draw(subsets))
    )


@settings(max_examples=50)
@given(parallel_relations())
def test_rel_enrichment_is_inclusion(cells: tuple[RelCell, RelCell]) -> None:
    f, g = cells
    inhabited = bool(REL.scalar_elements(enrichment_hom(REL, f, g)))
    assert inhabited == (f.pairs <= g.pairs)


@settings(max_examples=50)
@given(parallel_relations())
def test_rel_name_and_realize_round_trip(cells: tuple[RelCell, RelCell]) -> None:
    f, _ = cells
    assert realize(REL, name(REL, f), f.src, f.tgt) == f


def test_span_enrichment_counts_two_cells() -> None:
    f, g = constant_span(2), constant_span(3)
    hom = enrichment_hom(SPAN, f, g)
    assert len(SPAN.scalar_elements(hom)) == 9
    assert find_iso(SPAN, hom, enrichment_hom_named(SPAN, f, g)) is not None


def test_span_enriched_composition_has_units() -> None:
    f = constant_span(2)
    composition = enriched_compose(SPAN, f, f, f)
    unit = enriched_identity(SPAN, f)
    assert len(composition.right) == 4
    for x in composition.right:
        assert composition(unit, x) == x
        assert composition(x, unit) == x


def test_span_enriched_composition_is_associative() -> None:
    f = constant_span(2)
    composition = enriched_compose(SPAN, f, f, f)
    for x in composition.right:
        for y in composition.right:
            for z in composition.right:
                assert composition(z, composition(y, x)) == composition(
                    composition(z, y), x
                )


def test_two_trace_of_a_constant_span() -> None:
    f = constant_span(2)
    assert len(two_trace(SPAN, f)) == 2
    correspondence = two_trace_correspondence(SPAN, f)
    assert len(set(correspondence.values())) == 2
    assert set(correspondence.values()) <= set(
        SPAN.scalar_elements(cotrace(SPAN, f))
    )


def test_rel_two_trace() -> None:
    two = finset(2)
    assert len(two_trace(REL, rel_full(two, two))) == 1
    assert two_trace(REL, RelCell(two, two, frozenset())) == []


def test_scalar_braid_swaps_factors() -> None:
    s, t = span_scalar(["a", "b"]), span_scalar(["x"])
    swap = scalar_braid(SPAN, s, t)
    assert swap.map == {"a∘x": "x∘a", "b∘x": "x∘b"}


def test_codim_monoid_of_a_group_is_its_center() -> None:
    prof = ProfBicategory()
    c2 = cyclic_group(2)
    monoid = codim_monoid(prof, c2)
    assert len(monoid.elements) == 2
    ends = two_cell_monoid(prof, hom_profunctor(c2))
    assert monoid_isomorphism(monoid, ends) is not None


def test_module_structure_unit_acts_trivially() -> None:
    structure = module_structure(SPAN, finset(2))
    assert len(structure.carrier) == 2
    for x in structure.carrier:
        assert structure.action[(structure.monoid.unit, x)] == x


def test_trace_needs_an_endo_cell() -> None:
    with pytest.raises(EndpointMismatch):
        trace(REL, rel_full(finset(1), finset(2)))
    assert REL.scalar_elements(trace(REL, rel_identity(finset(1)))) == (UNIT,)


def _loops_and_an_edge() -> SpanCell:
    return SpanCell(
        finset(2),
        finset(2),
        FinSet(("p", "q", "r")),
        {"p": "0", "q": "0", "r": "1"},
        {"p": "0", "q": "1", "r": "1"},
    )


@pytest.mark.parametrize(
    ("bicat", "s"),
    [
        (REL, RelCell(unit_set(), unit_set(), frozenset({(UNIT, UNIT)}))),
        (REL, RelCell(unit_set(), unit_set(), frozenset())),
        (SPAN, span_scalar(["x", "y"])),
        (PROF, prof_scalar(["x", "y", "z"])),
    ],
)
def test_cospread_at_the_unit_is_the_scalar(bicat: Bicategory, s: Cell) -> None:
    assert find_iso(bicat, cospread(bicat, s, bicat.unit()), s) is not None


@pytest.mark.parametrize(
    ("bicat", "a"),
    [
        (REL, finset(2)),
        (SPAN, finset(2)),
        (PROF, cyclic_group(3)),
        (PROF, walking_arrow()),
        pytest.param(PROF, symmetric_group(3), marks=pytest.mark.slow),
    ],
)
def test_monoids_on_the_cotrace_agree(bicat: Bicategory, a: Obj) -> None:
    codim = codim_monoid(bicat, a)
    for other in (kan_monoid(bicat, a), lax_monoid(bicat, a)):
        assert monoid_isomorphism(codim, other) is not None


def test_lax_monoid_of_c3_is_the_group() -> None:
    monoid = lax_monoid(PROF, cyclic_group(3))
    assert len(monoid.elements) == 3
    for g in monoid.elements:
        if g != monoid.unit:
            assert monoid.mul[(g, g)] != monoid.unit
            assert monoid.mul[(g, monoid.mul[(g, g)])] == monoid.unit


def test_pairing_with_the_identity_is_a_bijection_onto_the_trace() -> None:
    g = _loops_and_an_edge()
    table = pairing(SPAN, span_identity(finset(2)), g)
    assert len(table.left) == 1
    assert len(table.right) == len(table.target) == 2
    (phi,) = table.left
    assert sorted(table(phi, x) for x in table.right) == sorted(table.target)


def test_pairing_needs_cells_on_one_object() -> None:
    with pytest.raises(EndpointMismatch):
        pairing(SPAN, span_identity(finset(1)), _loops_and_an_edge())


def _loop_at_zero() -> SpanCell:
    two = finset(2)
    return SpanCell(two, two, FinSet(("a",)), {"a": "0"}, {"a": "0"})


def _invertible(bicat: Bicategory, cell: TwoCell) -> bool:
    source, target = cell.src_cell, cell.tgt_cell
    key = bicat.two_cell_key
    ident_src = key(bicat.identity_two_cell(source))
    ident_tgt = key(bicat.identity_two_cell(target))
    return any(
        key(bicat.vcompose(cell, back)) == ident_src
        and key(bicat.vcompose(back, cell)) == ident_tgt
        for back in bicat.two_cells(target, source)
    )


@pytest.mark.parametrize(
    ("bicat", "f"),
    [
        (REL, RelCell(finset(2), finset(2), frozenset({("0", "1"), ("1", "1")}))),
        (SPAN, _loops_and_an_edge()),
        (PROF, hom_profunctor(walking_arrow())),
        (PROF, hom_profunctor(cyclic_group(2))),
    ],
)
def test_unitor_and_associator_cells_are_invertible(bicat: Bicategory, f: Cell) -> None:
    assert _invertible(bicat, bicat.unitor_cell(f))
    assert _invertible(bicat, bicat.unitor_cell_inv(f))
    assert _invertible(bicat, bicat.associator_cell(f, f, f))
    there_and_back = bicat.vcompose(bicat.unitor_cell_inv(f), bicat.unitor_cell(f))
    assert bicat.two_cell_key(there_and_back) == bicat.two_cell_key(
        bicat.identity_two_cell(f)
    )


@pytest.mark.parametrize(
    ("bicat", "f", "g"),
    [
        (SPAN, _loops_and_an_edge(), _loop_at_zero()),
        (SPAN, _loop_at_zero(), _loops_and_an_edge()),
        (SPAN, constant_span(2), constant_span(1)),
        (SPAN, constant_span(0), constant_span(1)),
        (PROF, hom_profunctor(cyclic_group(2)), hom_profunctor(cyclic_group(2))),
    ],
)
def test_existence_matches_enumeration(bicat: Bicategory, f: Cell, g: Cell) -> None:
    assert bicat.has_two_cell(f, g) == bool(bicat.two_cells(f, g))
