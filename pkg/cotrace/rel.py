"""The bicategory Rel: finite sets, relations, inclusions."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass

from cotrace.bicat import Bicategory
from cotrace.common import (
    DEFAULT_LIMITS,
    UNIT,
    EndpointMismatch,
    InputError,
    Limits,
    join_label,
)


@dataclass(frozen=True)
class FinSet:
    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        elements = tuple(sorted(self.elements))
        if len(set(elements)) != len(elements):
            raise InputError(f"duplicate elements in {elements}")
        object.__setattr__(self, "elements", elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self.elements


def unit_set() -> FinSet:
    """The one-point set, the unit object."""
    return FinSet((UNIT,))


def product_set(a: FinSet, b: FinSet) -> FinSet:
    """Cartesian product with elements labelled x∘y."""
    return FinSet(tuple(join_label(x, y) for x in a for y in b))


@dataclass(frozen=True)
class RelCell:
    src: FinSet
    tgt: FinSet
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for a, b in self.pairs:
            if a not in self.src or b not in self.tgt:
                raise InputError(f"pair ({a}, {b}) outside src × tgt")


@dataclass(frozen=True)
class RelTwoCell:
    """An inclusion ``src_cell ⊆ tgt_cell``; carries no data."""

    src_cell: RelCell
    tgt_cell: RelCell

    def __post_init__(self) -> None:
        _same_endpoints(self.src_cell, self.tgt_cell)
        if not self.src_cell.pairs <= self.tgt_cell.pairs:
            raise InputError("2-cell source is not included in its target")


def _same_endpoints(f: RelCell, g: RelCell) -> None:
    if f.src != g.src or f.tgt != g.tgt:
        raise EndpointMismatch("relations must share source and target")


def rel_identity(a: FinSet) -> RelCell:
    """The diagonal relation on a."""
    return RelCell(a, a, frozenset((x, x) for x in a))


def rel_full(a: FinSet, b: FinSet) -> RelCell:
    """Every pair a × b."""
    return RelCell(a, b, frozenset((x, y) for x in a for y in b))


def rel_compose(r: RelCell, s: RelCell) -> RelCell:
    """r then s: pairs (a, c) with some b, aRb and bSc."""
    if r.tgt != s.src:
        raise EndpointMismatch("rel_compose: r.tgt != s.src")
    after: dict[str, set[str]] = {}
    for b, c in s.pairs:
        after.setdefault(b, set()).add(c)
    pairs = {(a, c) for a, b in r.pairs for c in after.get(b, ())}
    return RelCell(r.src, s.tgt, frozenset(pairs))


def rel_transpose(r: RelCell) -> RelCell:
    """The converse relation."""
    return RelCell(r.tgt, r.src, frozenset((b, a) for a, b in r.pairs))


def rel_tensor(r: RelCell, s: RelCell) -> RelCell:
    """Componentwise product of two relations."""
    pairs = {
        (join_label(a, c), join_label(b, d)) for a, b in r.pairs for c, d in s.pairs
    }
    return RelCell(
        product_set(r.src, s.src), product_set(r.tgt, s.tgt), frozenset(pairs)
    )


def rel_graph(a: FinSet, b: FinSet, mapping: Mapping[str, str]) -> RelCell:
    """The graph of a function a → b."""
    return RelCell(a, b, frozenset((x, mapping[x]) for x in a))


def rel_lift(r: RelCell, s: RelCell) -> RelCell:
    """Right lift r ⊸ s for r: B→C, s: A→C: pairs (a, b) with bRc ⇒ aSc."""
    if r.tgt != s.tgt:
        raise EndpointMismatch("rel_lift: r.tgt != s.tgt")
    pairs = {
        (a, b)
        for a in s.src
        for b in r.src
        if all((a, c) in s.pairs for b2, c in r.pairs if b2 == b)
    }
    return RelCell(s.src, r.src, frozenset(pairs))


def rel_extension(g: RelCell, f: RelCell) -> RelCell:
    """Right extension g ⟜ f for g: A→C, f: A→B: pairs (b, c) with aFb ⇒ aGc."""
    if g.src != f.src:
        raise EndpointMismatch("rel_extension: g.src != f.src")
    pairs = {
        (b, c)
        for b in f.tgt
        for c in g.tgt
        if all((a, c) in g.pairs for a, b2 in f.pairs if b2 == b)
    }
    return RelCell(f.tgt, g.tgt, frozenset(pairs))


def _scalar(flag: bool) -> RelCell:
    point = unit_set()
    return RelCell(point, point, frozenset({(UNIT, UNIT)} if flag else ()))


def _require_endo(r: RelCell, name: str) -> None:
    if r.src != r.tgt:
        raise EndpointMismatch(f"{name}: relation is not an endo-relation")


def rel_trace_closed(r: RelCell) -> RelCell:
    """Full scalar iff r has a fixed pair aRa."""
    _require_endo(r, "rel_trace_closed")
    return _scalar(any(a == b for a, b in r.pairs))


def rel_cotrace_closed(r: RelCell) -> RelCell:
    """Full scalar iff r is reflexive."""
    _require_endo(r, "rel_cotrace_closed")
    return _scalar(all((a, a) in r.pairs for a in r.src))


def rel_two_cells(f: RelCell, g: RelCell) -> list[RelTwoCell]:
    """The inclusion f ⊆ g if it holds; otherwise nothing."""
    _same_endpoints(f, g)
    return [RelTwoCell(f, g)] if f.pairs <= g.pairs else []


class RelBicategory(Bicategory[FinSet, RelCell, RelTwoCell]):
    """Capability table of Rel."""

    tag = "rel"

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

    def src(self, f: RelCell) -> FinSet:
        return f.src

    def tgt(self, f: RelCell) -> FinSet:
        return f.tgt

    def identity(self, a: FinSet) -> RelCell:
        return rel_identity(a)

    def compose(self, f: RelCell, g: RelCell) -> RelCell:
        return rel_compose(f, g)

    def tensor_cells(self, f: RelCell, g: RelCell) -> RelCell:
        return rel_tensor(f, g)

    def dual_cell(self, f: RelCell) -> RelCell:
        return rel_transpose(f)

    def graph_cell(
        self, src: FinSet, tgt: FinSet, maps: tuple[Mapping[str, str], ...]
    ) -> RelCell:
        return rel_graph(src, tgt, maps[0])

    def cograph_cell(
        self, src: FinSet, tgt: FinSet, maps: tuple[Mapping[str, str], ...]
    ) -> RelCell:
        return rel_transpose(rel_graph(src, tgt, maps[0]))

    def coev(self, a: FinSet) -> RelCell:
        pairs = frozenset((UNIT, join_label(x, x)) for x in a)
        return RelCell(unit_set(), product_set(a, a), pairs)

    def ev(self, a: FinSet) -> RelCell:
        pairs = frozenset((join_label(x, x), UNIT) for x in a)
        return RelCell(product_set(a, a), unit_set(), pairs)

    def lift(self, f: RelCell, g: RelCell) -> RelCell:
        return rel_lift(f, g)

    def evaluation(self, f: RelCell, g: RelCell) -> RelTwoCell:
        return RelTwoCell(rel_compose(self.lift(f, g), f), g)

    def two_cells(self, f: RelCell, g: RelCell) -> list[RelTwoCell]:
        return rel_two_cells(f, g)

    def identity_two_cell(self, f: RelCell) -> RelTwoCell:
        return RelTwoCell(f, f)

    def vcompose(self, alpha: RelTwoCell, beta: RelTwoCell) -> RelTwoCell:
        if alpha.tgt_cell != beta.src_cell:
            raise EndpointMismatch("vcompose: 2-cells do not meet")
        return RelTwoCell(alpha.src_cell, beta.tgt_cell)

    def horizontal(self, alpha: RelTwoCell, beta: RelTwoCell) -> RelTwoCell:
        return RelTwoCell(
            rel_compose(alpha.src_cell, beta.src_cell),
            rel_compose(alpha.tgt_cell, beta.tgt_cell),
        )

    def tensor_two_cells(self, alpha: RelTwoCell, beta: RelTwoCell) -> RelTwoCell:
        return RelTwoCell(
            rel_tensor(alpha.src_cell, beta.src_cell),
            rel_tensor(alpha.tgt_cell, beta.tgt_cell),
        )

    def two_cell_key(self, cell: RelTwoCell) -> tuple:
        return ()

    def find_iso(self, f: RelCell, g: RelCell) -> RelTwoCell | None:
        _same_endpoints(f, g)
        return RelTwoCell(f, g) if f == g else None

    def has_two_cell(self, f: RelCell, g: RelCell) -> bool:
        _same_endpoints(f, g)
        return f.pairs <= g.pairs

    def unitor_cell(self, f: RelCell) -> RelTwoCell:
        return RelTwoCell(rel_compose(rel_identity(f.src), f), f)

    def unitor_cell_inv(self, f: RelCell) -> RelTwoCell:
        return RelTwoCell(f, rel_compose(rel_identity(f.src), f))

    def associator_cell(self, f: RelCell, g: RelCell, h: RelCell) -> RelTwoCell:
        return RelTwoCell(
            rel_compose(rel_compose(f, g), h), rel_compose(f, rel_compose(g, h))
        )

    def scalar_elements(self, s: RelCell) -> tuple[str, ...]:
        return (UNIT,) if s.pairs else ()

    def apply_scalar_cell(self, cell: RelTwoCell, element: str) -> str:
        return element

    def scalar_point(self, s: RelCell, element: str) -> RelTwoCell:
        return RelTwoCell(rel_identity(unit_set()), s)

    def lift_element_of(self, p: RelCell, q: RelCell, cell: RelTwoCell) -> str:
        return UNIT

    def scalar_swap(self, s: RelCell, t: RelCell) -> RelTwoCell:
        return RelTwoCell(rel_compose(s, t), rel_compose(t, s))

    def trace_closed(self, f: RelCell) -> RelCell:
        return rel_trace_closed(f)

    def cotrace_closed(self, f: RelCell) -> RelCell:
        return rel_cotrace_closed(f)


def rel_capabilities(limits: Limits = DEFAULT_LIMITS) -> RelBicategory:
    """The Rel capability table with the given limits."""
    return RelBicategory(limits)


def all_relations(a: FinSet, b: FinSet) -> Iterable[RelCell]:
    """Every relation a → b, smallest first."""
    cells = [(x, y) for x in a for y in b]
    for mask in range(1 << len(cells)):
        yield RelCell(
            a, b, frozenset(pair for i, pair in enumerate(cells) if mask >> i & 1)
        )
