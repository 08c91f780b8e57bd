"""The bicategory Span(FinSet): spans, pullback composition, apex maps."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass

from cotrace.bicat import Bicategory
from cotrace.common import (
    DEFAULT_LIMITS,
    UNIT,
    BudgetExceeded,
    EndpointMismatch,
    InputError,
    Limits,
    graph_label,
    join_label,
)
from cotrace.rel import FinSet, product_set, unit_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpanCell:
    """A span src ← apex → tgt."""

    src: FinSet
    tgt: FinSet
    apex: FinSet
    leg_src: Mapping[str, str]
    leg_tgt: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "leg_src", dict(self.leg_src))
        object.__setattr__(self, "leg_tgt", dict(self.leg_tgt))
        for name, leg, end in (
            ("leg_src", self.leg_src, self.src),
            ("leg_tgt", self.leg_tgt, self.tgt),
        ):
            if set(leg) != set(self.apex.elements):
                raise InputError("leg is not total on the apex", where=name)
            for x, y in leg.items():
                if y not in end:
                    raise InputError(f"{x} ↦ {y} leaves the endpoint", where=name)

    def fiber(self, a: str, b: str) -> tuple[str, ...]:
        return tuple(
            s for s in self.apex if self.leg_src[s] == a and self.leg_tgt[s] == b
        )


@dataclass(frozen=True)
class SpanTwoCell:
    src_cell: SpanCell
    tgt_cell: SpanCell
    map: Mapping[str, str]

    def __post_init__(self) -> None:
        _same_endpoints(self.src_cell, self.tgt_cell)
        object.__setattr__(self, "map", dict(self.map))
        f, g = self.src_cell, self.tgt_cell
        if set(self.map) != set(f.apex.elements):
            raise InputError("apex map is not total")
        for s, t in self.map.items():
            if t not in g.apex:
                raise InputError(f"apex map sends {s} outside the target apex")
            if g.leg_src[t] != f.leg_src[s] or g.leg_tgt[t] != f.leg_tgt[s]:
                raise InputError(f"apex map does not commute with the legs at {s}")


def _same_endpoints(f: SpanCell, g: SpanCell) -> None:
    if f.src != g.src or f.tgt != g.tgt:
        raise EndpointMismatch("spans must share source and target")


def _require_endo(f: SpanCell, name: str) -> None:
    if f.src != f.tgt:
        raise EndpointMismatch(f"{name}: span is not an endo-span")


def span_identity(a: FinSet) -> SpanCell:
    """The span a ← a → a with identity legs."""
    ident = {x: x for x in a}
    return SpanCell(a, a, a, ident, ident)


def span_graph(a: FinSet, b: FinSet, mapping: Mapping[str, str]) -> SpanCell:
    """a ← a → b with legs id and ``mapping``."""
    return SpanCell(a, b, a, {x: x for x in a}, {x: mapping[x] for x in a})


def span_reverse(f: SpanCell) -> SpanCell:
    """Swap the legs: the span read backwards."""
    return SpanCell(f.tgt, f.src, f.apex, f.leg_tgt, f.leg_src)


def span_scalar(elements: Iterable[str]) -> SpanCell:
    """An endo-span on the point whose apex holds the given elements."""
    point = unit_set()
    apex = FinSet(tuple(elements))
    legs = {s: UNIT for s in apex}
    return SpanCell(point, point, apex, legs, legs)


def span_compose(f: SpanCell, g: SpanCell) -> SpanCell:
    """f then g, over the canonical pullback of f.leg_tgt and g.leg_src."""
    if f.tgt != g.src:
        raise EndpointMismatch("span_compose: f.tgt != g.src")
    pairs = [(s, t) for s in f.apex for t in g.apex if f.leg_tgt[s] == g.leg_src[t]]
    return SpanCell(
        f.src,
        g.tgt,
        FinSet(tuple(join_label(s, t) for s, t in pairs)),
        {join_label(s, t): f.leg_src[s] for s, t in pairs},
        {join_label(s, t): g.leg_tgt[t] for s, t in pairs},
    )


def span_tensor(f: SpanCell, g: SpanCell) -> SpanCell:
    """Componentwise product of two spans."""
    pairs = list(itertools.product(f.apex, g.apex))
    return SpanCell(
        product_set(f.src, g.src),
        product_set(f.tgt, g.tgt),
        product_set(f.apex, g.apex),
        {join_label(s, t): join_label(f.leg_src[s], g.leg_src[t]) for s, t in pairs},
        {join_label(s, t): join_label(f.leg_tgt[s], g.leg_tgt[t]) for s, t in pairs},
    )


def _lift_entries(
    f: SpanCell, g: SpanCell, cap: int
) -> dict[str, tuple[str, str, dict[str, str]]]:
    if f.tgt != g.tgt:
        raise EndpointMismatch("span_lift: f.tgt != g.tgt")
    plans = []
    total = 0
    for a in g.src:
        for b in f.src:
            fiber = [x for x in f.apex if f.leg_src[x] == b]
            options = [list(g.fiber(a, f.leg_tgt[x])) for x in fiber]
            total += math.prod(len(o) for o in options)
            plans.append((a, b, fiber, options))
    if total > cap:
        raise BudgetExceeded(f"span_lift would build {total} apex elements (cap {cap})")
    entries = {}
    for a, b, fiber, options in plans:
        for choice in itertools.product(*options):
            phi = dict(zip(fiber, choice, strict=True))
            entries[join_label(a, b, graph_label(phi))] = (a, b, phi)
    logger.debug("span_lift: %d apex elements", len(entries))
    return entries


def span_lift(f: SpanCell, g: SpanCell, *, cap: int | None = None) -> SpanCell:
    """Right lift f ⊸ g for f: B→C, g: A→C.

    Over (a, b) the apex holds the functions phi from the fiber of f.leg_src
    over b into the fiber of g.leg_src over a with g.leg_tgt∘phi = f.leg_tgt.
    """
    cap = DEFAULT_LIMITS.enumeration_cap if cap is None else cap
    entries = _lift_entries(f, g, cap)
    return SpanCell(
        g.src,
        f.src,
        FinSet(tuple(entries)),
        {label: a for label, (a, _, _) in entries.items()},
        {label: b for label, (_, b, _) in entries.items()},
    )


def span_trace_closed(f: SpanCell) -> SpanCell:
    """The loops of f: apex elements whose two legs agree."""
    _require_endo(f, "span_trace_closed")
    return span_scalar(s for s in f.apex if f.leg_src[s] == f.leg_tgt[s])


def span_cotrace_closed(f: SpanCell, *, cap: int | None = None) -> SpanCell:
    """Mutual sections: maps A → apex that both legs send back to id_A."""
    _require_endo(f, "span_cotrace_closed")
    options = [f.fiber(a, a) for a in f.src]
    total = math.prod(len(o) for o in options)
    cap = DEFAULT_LIMITS.enumeration_cap if cap is None else cap
    if total > cap:
        raise BudgetExceeded(f"span_cotrace_closed would build {total} sections")
    return span_scalar(
        graph_label(dict(zip(f.src, choice, strict=True)))
        for choice in itertools.product(*options)
    )


def span_two_cells(
    f: SpanCell, g: SpanCell, *, cap: int | None = None
) -> list[SpanTwoCell]:
    """Every apex map f ⇒ g over the legs; each element maps into its fiber."""
    _same_endpoints(f, g)
    cap = DEFAULT_LIMITS.enumeration_cap if cap is None else cap
    sources = list(f.apex)
    options = [g.fiber(f.leg_src[s], f.leg_tgt[s]) for s in sources]
    total = math.prod(len(o) for o in options)
    if total > cap:
        raise BudgetExceeded(f"{total} apex maps exceed the cap {cap}")
    return [
        SpanTwoCell(f, g, dict(zip(sources, choice, strict=True)))
        for choice in itertools.product(*options)
    ]


def span_has_two_cell(f: SpanCell, g: SpanCell) -> bool:
    """True iff g has an element over every (a, b) that f does."""
    _same_endpoints(f, g)
    return all(g.fiber(f.leg_src[s], f.leg_tgt[s]) for s in f.apex)


def span_find_iso(f: SpanCell, g: SpanCell) -> SpanTwoCell | None:
    """Match the fibers over each (a, b) by size; any such bijection commutes."""
    _same_endpoints(f, g)
    mapping = {}
    for a in f.src:
        for b in f.tgt:
            left, right = f.fiber(a, b), g.fiber(a, b)
            if len(left) != len(right):
                return None
            mapping.update(zip(left, right, strict=True))
    return SpanTwoCell(f, g, mapping)


class SpanBicategory(Bicategory[FinSet, SpanCell, SpanTwoCell]):
    """Capability table of Span(FinSet)."""

    tag = "span"

    def unit(self) -> FinSet:
        return unit_set()

    def tensor(self, a: FinSet, b: FinSet) -> FinSet:
        return product_set(a, b)

    def dual(self, a: FinSet) -> FinSet:
        return a

    def carriers(self, a: FinSet) -> tuple[tuple[str, ...], ...]:
        return (a.elements,)

    def rename(self, a: FinSet, rename: Callable[[str], str]) -> FinSet:
        return FinSet(tuple(rename(x) for x in a))

    def src(self, f: SpanCell) -> FinSet:
        return f.src

    def tgt(self, f: SpanCell) -> FinSet:
        return f.tgt

    def identity(self, a: FinSet) -> SpanCell:
        return span_identity(a)

    def compose(self, f: SpanCell, g: SpanCell) -> SpanCell:
        return span_compose(f, g)

    def tensor_cells(self, f: SpanCell, g: SpanCell) -> SpanCell:
        return span_tensor(f, g)

    def dual_cell(self, f: SpanCell) -> SpanCell:
        return span_reverse(f)

    def graph_cell(
        self, src: FinSet, tgt: FinSet, maps: tuple[Mapping[str, str], ...]
    ) -> SpanCell:
        return span_graph(src, tgt, maps[0])

    def cograph_cell(
        self, src: FinSet, tgt: FinSet, maps: tuple[Mapping[str, str], ...]
    ) -> SpanCell:
        return span_reverse(span_graph(src, tgt, maps[0]))

    def coev(self, a: FinSet) -> SpanCell:
        return SpanCell(
            unit_set(),
            product_set(a, a),
            a,
            {x: UNIT for x in a},
            {x: join_label(x, x) for x in a},
        )

    def ev(self, a: FinSet) -> SpanCell:
        return span_reverse(self.coev(a))

    def lift(self, f: SpanCell, g: SpanCell) -> SpanCell:
        return span_lift(f, g, cap=self.limits.enumeration_cap)

    def evaluation(self, f: SpanCell, g: SpanCell) -> SpanTwoCell:
        lift = self.lift(f, g)
        entries = _lift_entries(f, g, self.limits.enumeration_cap)
        composite = span_compose(lift, f)
        mapping = {}
        for label, x in itertools.product(lift.apex, f.apex):
            if lift.leg_tgt[label] == f.leg_src[x]:
                mapping[join_label(label, x)] = entries[label][2][x]
        return SpanTwoCell(composite, g, mapping)

    def two_cells(self, f: SpanCell, g: SpanCell) -> list[SpanTwoCell]:
        return span_two_cells(f, g, cap=self.limits.enumeration_cap)

    def identity_two_cell(self, f: SpanCell) -> SpanTwoCell:
        return SpanTwoCell(f, f, {s: s for s in f.apex})

    def vcompose(self, alpha: SpanTwoCell, beta: SpanTwoCell) -> SpanTwoCell:
        if alpha.tgt_cell != beta.src_cell:
            raise EndpointMismatch("vcompose: 2-cells do not meet")
        return SpanTwoCell(
            alpha.src_cell,
            beta.tgt_cell,
            {s: beta.map[t] for s, t in alpha.map.items()},
        )

    def horizontal(self, alpha: SpanTwoCell, beta: SpanTwoCell) -> SpanTwoCell:
        source = span_compose(alpha.src_cell, beta.src_cell)
        target = span_compose(alpha.tgt_cell, beta.tgt_cell)
        mapping = {}
        for s, t in itertools.product(alpha.src_cell.apex, beta.src_cell.apex):
            if alpha.src_cell.leg_tgt[s] == beta.src_cell.leg_src[t]:
                mapping[join_label(s, t)] = join_label(alpha.map[s], beta.map[t])
        return SpanTwoCell(source, target, mapping)

    def tensor_two_cells(self, alpha: SpanTwoCell, beta: SpanTwoCell) -> SpanTwoCell:
        return SpanTwoCell(
            span_tensor(alpha.src_cell, beta.src_cell),
            span_tensor(alpha.tgt_cell, beta.tgt_cell),
            {
                join_label(s, t): join_label(alpha.map[s], beta.map[t])
                for s, t in itertools.product(alpha.map, beta.map)
            },
        )

    def two_cell_key(self, cell: SpanTwoCell) -> tuple:
        return tuple(sorted(cell.map.items()))

    def find_iso(self, f: SpanCell, g: SpanCell) -> SpanTwoCell | None:
        return span_find_iso(f, g)

    def has_two_cell(self, f: SpanCell, g: SpanCell) -> bool:
        return span_has_two_cell(f, g)

    def unitor_cell(self, f: SpanCell) -> SpanTwoCell:
        source = span_compose(span_identity(f.src), f)
        return SpanTwoCell(source, f, {join_label(f.leg_src[t], t): t for t in f.apex})

    def unitor_cell_inv(self, f: SpanCell) -> SpanTwoCell:
        target = span_compose(span_identity(f.src), f)
        return SpanTwoCell(f, target, {t: join_label(f.leg_src[t], t) for t in f.apex})

    def associator_cell(self, f: SpanCell, g: SpanCell, h: SpanCell) -> SpanTwoCell:
        mapping = {
            join_label(join_label(s, t), u): join_label(s, join_label(t, u))
            for s in f.apex
            for t in g.apex
            for u in h.apex
            if f.leg_tgt[s] == g.leg_src[t] and g.leg_tgt[t] == h.leg_src[u]
        }
        return SpanTwoCell(
            span_compose(span_compose(f, g), h),
            span_compose(f, span_compose(g, h)),
            mapping,
        )

    def scalar_elements(self, s: SpanCell) -> tuple[str, ...]:
        return s.apex.elements

    def apply_scalar_cell(self, cell: SpanTwoCell, element: str) -> str:
        return cell.map[element]

    def scalar_point(self, s: SpanCell, element: str) -> SpanTwoCell:
        return SpanTwoCell(span_identity(unit_set()), s, {UNIT: element})

    def lift_element_of(self, p: SpanCell, q: SpanCell, cell: SpanTwoCell) -> str:
        return join_label(UNIT, UNIT, graph_label(cell.map))

    def scalar_swap(self, s: SpanCell, t: SpanCell) -> SpanTwoCell:
        return SpanTwoCell(
            span_compose(s, t),
            span_compose(t, s),
            {join_label(x, y): join_label(y, x) for x in s.apex for y in t.apex},
        )

    def trace_closed(self, f: SpanCell) -> SpanCell:
        return span_trace_closed(f)

    def cotrace_closed(self, f: SpanCell) -> SpanCell:
        return span_cotrace_closed(f, cap=self.limits.enumeration_cap)


def span_capabilities(limits: Limits = DEFAULT_LIMITS) -> SpanBicategory:
    """The Span instance of the capability interface."""
    return SpanBicategory(limits)
