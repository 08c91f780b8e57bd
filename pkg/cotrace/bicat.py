"""The generic layer.

Every instance implements :class:`Bicategory` (its capability table). The
constructions below are written once against that interface: name and
realization, spread, trace, cotrace, cospread, extensions via duals, the
scalar enrichment and its element-level composition, 2-traces, dimensions,
the codimension monoid acting on the dimension, and the pairing of cotraces
with traces. Trace, spread, realization and cospread also act on 2-cells.

Composition is written in diagrammatic order: ``compose(f, g)`` is "f then
g", i.e. g∘f. A right lift ``lift(f, g)`` comes with an evaluation 2-cell
``compose(lift(f, g), f) ⇒ g``.
"""

from __future__ import annotations

import itertools
import logging
from abc import ABC, abstractmethod
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING, ClassVar

from cotrace.common import DEFAULT_LIMITS, EndpointMismatch, Limits, join_label

if TYPE_CHECKING:
    from cotrace.fincat import FinCat
    from cotrace.prof import Profunctor, ProfTwoCell
    from cotrace.rel import FinSet, RelCell, RelTwoCell
    from cotrace.span import SpanCell, SpanTwoCell

logger = logging.getLogger(__name__)

type Obj = FinSet | FinCat
type Cell = RelCell | SpanCell | Profunctor
type TwoCell = RelTwoCell | SpanTwoCell | ProfTwoCell
LabelMaps = tuple[Mapping[str, str], ...]


class Bicategory[O, C, T](ABC):
    """Capability table: the structural cells one instance supplies.

    ``O``, ``C`` and ``T`` are the instance's objects, 1-cells and 2-cells.
    """

    tag: ClassVar[str]

    def __init__(self, limits: Limits = DEFAULT_LIMITS) -> None:
        self.limits = limits

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.limits})"

    # objects
    @abstractmethod
    def unit(self) -> O: ...

    @abstractmethod
    def tensor(self, a: O, b: O) -> O: ...

    @abstractmethod
    def dual(self, a: O) -> O: ...

    @abstractmethod
    def carriers(self, a: O) -> tuple[tuple[str, ...], ...]:
        """Label sets a structure map acts on (elements; or objects, morphisms)."""

    @abstractmethod
    def rename(self, a: O, rename: Callable[[str], str]) -> O: ...

    # 1-cells
    @abstractmethod
    def src(self, f: C) -> O: ...

    @abstractmethod
    def tgt(self, f: C) -> O: ...

    @abstractmethod
    def identity(self, a: O) -> C: ...

    @abstractmethod
    def compose(self, f: C, g: C) -> C: ...

    @abstractmethod
    def tensor_cells(self, f: C, g: C) -> C: ...

    @abstractmethod
    def dual_cell(self, f: C) -> C: ...

    @abstractmethod
    def graph_cell(self, src: O, tgt: O, maps: LabelMaps) -> C:
        """The 1-cell induced by a structure map (function or functor)."""

    @abstractmethod
    def cograph_cell(self, src: O, tgt: O, maps: LabelMaps) -> C:
        """Right adjoint of :meth:`graph_cell`, a 1-cell tgt → src."""

    @abstractmethod
    def coev(self, a: O) -> C:
        """I → A⊗A*."""

    @abstractmethod
    def ev(self, a: O) -> C:
        """A*⊗A → I."""

    @abstractmethod
    def lift(self, f: C, g: C) -> C: ...

    @abstractmethod
    def evaluation(self, f: C, g: C) -> T: ...

    # 2-cells
    @abstractmethod
    def two_cells(self, f: C, g: C) -> list[T]: ...

    @abstractmethod
    def identity_two_cell(self, f: C) -> T: ...

    @abstractmethod
    def vcompose(self, alpha: T, beta: T) -> T:
        """alpha then beta."""

    @abstractmethod
    def horizontal(self, alpha: T, beta: T) -> T:
        """alpha: h ⇒ h', beta: k ⇒ k' give compose(h, k) ⇒ compose(h', k')."""

    @abstractmethod
    def tensor_two_cells(self, alpha: T, beta: T) -> T: ...

    @abstractmethod
    def two_cell_key(self, cell: T) -> tuple:
        """Hashable form of the 2-cell data between fixed endpoints."""

    @abstractmethod
    def find_iso(self, f: C, g: C) -> T | None: ...

    @abstractmethod
    def has_two_cell(self, f: C, g: C) -> bool:
        """Whether some 2-cell f ⇒ g exists; never lists them."""

    @abstractmethod
    def unitor_cell(self, f: C) -> T:
        """compose(identity, f) ⇒ f."""

    @abstractmethod
    def unitor_cell_inv(self, f: C) -> T:
        """f ⇒ compose(identity, f)."""

    @abstractmethod
    def associator_cell(self, f: C, g: C, h: C) -> T:
        """compose(compose(f, g), h) ⇒ compose(f, compose(g, h))."""

    # scalars
    @abstractmethod
    def scalar_elements(self, s: C) -> tuple[str, ...]:
        """Underlying set of a scalar I → I."""

    @abstractmethod
    def apply_scalar_cell(self, cell: T, element: str) -> str: ...

    @abstractmethod
    def scalar_point(self, s: C, element: str) -> T:
        """The 2-cell identity(unit) ⇒ s picking ``element``."""

    @abstractmethod
    def lift_element_of(self, p: C, q: C, cell: T) -> str:
        """Element of the scalar lift(p, q) named by a 2-cell p ⇒ q."""

    @abstractmethod
    def scalar_swap(self, s: C, t: C) -> T: ...

    @abstractmethod
    def trace_closed(self, f: C) -> C:
        """The trace computed directly from the cell data."""

    @abstractmethod
    def cotrace_closed(self, f: C) -> C:
        """The cotrace computed directly from the cell data."""

    # derived structure
    def whiskering(self, h: C, h2: C, f: C) -> Callable[[T], T]:
        """Map alpha: h ⇒ h2 to compose(h, f) ⇒ compose(h2, f)."""
        ident = self.identity_two_cell(f)
        return lambda alpha: self.horizontal(alpha, ident)

    def lift_element_cells(self, p: C, q: C) -> dict[str, T]:
        return {self.lift_element_of(p, q, cell): cell for cell in self.two_cells(p, q)}

    def _structure(
        self, sources: Sequence[O], build: Callable[..., tuple[str, str]]
    ) -> LabelMaps:
        per_object = [self.carriers(a) for a in sources]
        maps = []
        for layer in zip(*per_object, strict=True):
            maps.append(dict(build(*labels) for labels in itertools.product(*layer)))
        return tuple(maps)

    def left_unitor(self, a: O) -> C:
        """I⊗A → A."""
        i = self.unit()
        maps = self._structure([i, a], lambda u, x: (join_label(u, x), x))
        return self.graph_cell(self.tensor(i, a), a, maps)

    def left_unitor_inv(self, a: O) -> C:
        i = self.unit()
        maps = self._structure([i, a], lambda u, x: (x, join_label(u, x)))
        return self.graph_cell(a, self.tensor(i, a), maps)

    def right_unitor(self, a: O) -> C:
        """A⊗I → A."""
        i = self.unit()
        maps = self._structure([a, i], lambda x, u: (join_label(x, u), x))
        return self.graph_cell(self.tensor(a, i), a, maps)

    def right_unitor_inv(self, a: O) -> C:
        i = self.unit()
        maps = self._structure([a, i], lambda x, u: (x, join_label(x, u)))
        return self.graph_cell(a, self.tensor(a, i), maps)

    def associator(self, a: O, b: O, c: O) -> C:
        """(A⊗B)⊗C → A⊗(B⊗C)."""
        maps = self._structure(
            [a, b, c],
            lambda x, y, z: (
                join_label(join_label(x, y), z),
                join_label(x, join_label(y, z)),
            ),
        )
        return self.graph_cell(
            self.tensor(self.tensor(a, b), c), self.tensor(a, self.tensor(b, c)), maps
        )

    def associator_inv(self, a: O, b: O, c: O) -> C:
        maps = self._structure(
            [a, b, c],
            lambda x, y, z: (
                join_label(x, join_label(y, z)),
                join_label(join_label(x, y), z),
            ),
        )
        return self.graph_cell(
            self.tensor(a, self.tensor(b, c)), self.tensor(self.tensor(a, b), c), maps
        )

    def braid(self, a: O, b: O) -> C:
        """A⊗B → B⊗A."""
        maps = self._structure(
            [a, b], lambda x, y: (join_label(x, y), join_label(y, x))
        )
        return self.graph_cell(self.tensor(a, b), self.tensor(b, a), maps)

    def renamed(self, a: O, suffix: str) -> tuple[O, C, C]:
        """A relabelled copy A' of A with inverse equivalences A' → A and A → A'."""

        def rename(label: str) -> str:
            return join_label(label, suffix)

        copy = self.rename(a, rename)
        forward = tuple({rename(x): x for x in layer} for layer in self.carriers(a))
        backward = tuple({x: rename(x) for x in layer} for layer in self.carriers(a))
        return (
            copy,
            self.graph_cell(copy, a, forward),
            self.graph_cell(a, copy, backward),
        )


def _require_endo(bicat: Bicategory, f: Cell, name: str) -> Obj:
    a = bicat.src(f)
    if a != bicat.tgt(f):
        raise EndpointMismatch(f"{name}: expected an endo-1-cell")
    return a


def compose_all(bicat: Bicategory, cells: Sequence[Cell]) -> Cell:
    """cells[0] then cells[1] then …"""
    return reduce(bicat.compose, cells)


def name(bicat: Bicategory, f: Cell) -> Cell:
    """⟨f⟩ = (f⊗A*)∘coev_A : I → B⊗A*."""
    a = bicat.src(f)
    return bicat.compose(
        bicat.coev(a), bicat.tensor_cells(f, bicat.identity(bicat.dual(a)))
    )


def realize(bicat: Bicategory, p: Cell, a: Obj, b: Obj) -> Cell:
    """A 1-cell A → B from p: I → B⊗A*, through ev_A and the unitors."""
    return compose_all(
        bicat,
        [
            bicat.left_unitor_inv(a),
            bicat.tensor_cells(p, bicat.identity(a)),
            bicat.associator(b, bicat.dual(a), a),
            bicat.tensor_cells(bicat.identity(b), bicat.ev(a)),
            bicat.right_unitor(b),
        ],
    )


def braided_ev(bicat: Bicategory, a: Obj) -> Cell:
    """ev∘b : A⊗A* → I."""
    return bicat.compose(bicat.braid(a, bicat.dual(a)), bicat.ev(a))


def spread(bicat: Bicategory, s: Cell, a: Obj) -> Cell:
    """l∘(s⊗A)∘l• : A → A."""
    return compose_all(
        bicat,
        [
            bicat.left_unitor_inv(a),
            bicat.tensor_cells(s, bicat.identity(a)),
            bicat.left_unitor(a),
        ],
    )


def trace(bicat: Bicategory, f: Cell) -> Cell:
    """ev∘b∘(f⊗A*)∘coev."""
    a = _require_endo(bicat, f, "trace")
    return bicat.compose(name(bicat, f), braided_ev(bicat, a))


def cotrace(bicat: Bicategory, f: Cell) -> Cell:
    """The lift of ⟨f⟩ through ⟨id_A⟩."""
    a = _require_endo(bicat, f, "cotrace")
    return bicat.lift(name(bicat, bicat.identity(a)), name(bicat, f))


def cospread(bicat: Bicategory, s: Cell, a: Obj) -> Cell:
    """Right adjoint of the trace: the realization of (ev∘b) ⊸ s."""
    return realize(bicat, bicat.lift(braided_ev(bicat, a), s), a, a)


def extension_via_duals(bicat: Bicategory, g: Cell, f: Cell) -> Cell:
    """Right extension g ⟜ f (g: A→C, f: A→B) as the dual of a lift of duals."""
    if bicat.src(g) != bicat.src(f):
        raise EndpointMismatch("extension_via_duals: g and f must share a source")
    return bicat.dual_cell(bicat.lift(bicat.dual_cell(f), bicat.dual_cell(g)))


def enrichment_hom(bicat: Bicategory, f: Cell, g: Cell) -> Cell:
    """The scalar cotrace(f ⊸ g) between parallel 1-cells."""
    return cotrace(bicat, bicat.lift(f, g))


def enrichment_hom_named(bicat: Bicategory, f: Cell, g: Cell) -> Cell:
    """The same hom-object computed as ⟨f⟩ ⊸ ⟨g⟩."""
    return bicat.lift(name(bicat, f), name(bicat, g))


@dataclass(frozen=True)
class EnrichedComposition:
    """Element-level composition hom(g,h) × hom(f,g) → hom(f,h)."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    target: tuple[str, ...]
    table: Mapping[tuple[str, str], str]

    def __call__(self, y: str, x: str) -> str:
        return self.table[(y, x)]


def enriched_compose(
    bicat: Bicategory, f: Cell, g: Cell, h: Cell
) -> EnrichedComposition:
    nf, ng, nh = name(bicat, f), name(bicat, g), name(bicat, h)
    fg = bicat.lift_element_cells(nf, ng)
    gh = bicat.lift_element_cells(ng, nh)
    table = {
        (y, x): bicat.lift_element_of(nf, nh, bicat.vcompose(cell_x, cell_y))
        for y, cell_y in gh.items()
        for x, cell_x in fg.items()
    }
    target = bicat.scalar_elements(bicat.lift(nf, nh))
    return EnrichedComposition(tuple(gh), tuple(fg), target, table)


def enriched_identity(bicat: Bicategory, f: Cell) -> str:
    nf = name(bicat, f)
    return bicat.lift_element_of(nf, nf, bicat.identity_two_cell(nf))


def two_trace(bicat: Bicategory, f: Cell) -> list[TwoCell]:
    """The 2-cells id_A ⇒ f."""
    a = _require_endo(bicat, f, "two_trace")
    return bicat.two_cells(bicat.identity(a), f)


def name_two_cell(bicat: Bicategory, theta: TwoCell, f: Cell, g: Cell) -> TwoCell:
    """⟨theta⟩ : ⟨f⟩ ⇒ ⟨g⟩ for theta: f ⇒ g."""
    a = bicat.src(f)
    dual_id = bicat.identity_two_cell(bicat.identity(bicat.dual(a)))
    return bicat.horizontal(
        bicat.identity_two_cell(bicat.coev(a)),
        bicat.tensor_two_cells(theta, dual_id),
    )


def two_trace_correspondence(bicat: Bicategory, f: Cell) -> dict[str, str]:
    """Send each 2-cell id ⇒ f (by key) to its element of cotrace(f)."""
    a = _require_endo(bicat, f, "two_trace_correspondence")
    ident = bicat.identity(a)
    n_id, n_f = name(bicat, ident), name(bicat, f)
    return {
        repr(bicat.two_cell_key(theta)): bicat.lift_element_of(
            n_id, n_f, name_two_cell(bicat, theta, ident, f)
        )
        for theta in two_trace(bicat, f)
    }


def cotrace_element(bicat: Bicategory, theta: TwoCell, f: Cell) -> str:
    """The element of cotrace(f) named by theta: id_A ⇒ f."""
    a = _require_endo(bicat, f, "cotrace_element")
    ident = bicat.identity(a)
    return bicat.lift_element_of(
        name(bicat, ident), name(bicat, f), name_two_cell(bicat, theta, ident, f)
    )


def two_trace_cells(bicat: Bicategory, f: Cell) -> dict[str, TwoCell]:
    """Inverse of the 2-trace correspondence: cotrace element ↦ 2-cell id ⇒ f."""
    return {cotrace_element(bicat, theta, f): theta for theta in two_trace(bicat, f)}


def trace_two_cell(bicat: Bicategory, alpha: TwoCell, f: Cell, g: Cell) -> TwoCell:
    """trace(alpha): trace(f) ⇒ trace(g) for alpha: f ⇒ g."""
    a = _require_endo(bicat, f, "trace_two_cell")
    whisker = bicat.whiskering(name(bicat, f), name(bicat, g), braided_ev(bicat, a))
    return whisker(name_two_cell(bicat, alpha, f, g))


def spread_two_cell(bicat: Bicategory, sigma: TwoCell, a: Obj) -> TwoCell:
    """spread(sigma): spread(s, a) ⇒ spread(t, a) for sigma: s ⇒ t."""
    keep = bicat.identity_two_cell
    middle = bicat.tensor_two_cells(sigma, keep(bicat.identity(a)))
    return bicat.horizontal(
        bicat.horizontal(keep(bicat.left_unitor_inv(a)), middle),
        keep(bicat.left_unitor(a)),
    )


def realize_two_cell(bicat: Bicategory, sigma: TwoCell, a: Obj, b: Obj) -> TwoCell:
    """realize(sigma) for sigma: p ⇒ q between cells I → B⊗A*."""
    keep = bicat.identity_two_cell
    cells = [
        keep(bicat.left_unitor_inv(a)),
        bicat.tensor_two_cells(sigma, keep(bicat.identity(a))),
        keep(bicat.associator(b, bicat.dual(a), a)),
        keep(bicat.tensor_cells(bicat.identity(b), bicat.ev(a))),
        keep(bicat.right_unitor(b)),
    ]
    return reduce(bicat.horizontal, cells)


def lift_two_cell(
    bicat: Bicategory, f: Cell, tau: TwoCell, g: Cell, g2: Cell
) -> TwoCell | None:
    """The 2-cell lift(f, g) ⇒ lift(f, g2) induced by tau: g ⇒ g2.

    Found as the unique sigma whose whiskered evaluation equals ev∘tau;
    None when no candidate factors.
    """
    source, target = bicat.lift(f, g), bicat.lift(f, g2)
    wanted = bicat.two_cell_key(bicat.vcompose(bicat.evaluation(f, g), tau))
    whisker = bicat.whiskering(source, target, f)
    evaluation = bicat.evaluation(f, g2)
    for sigma in bicat.two_cells(source, target):
        if bicat.two_cell_key(bicat.vcompose(whisker(sigma), evaluation)) == wanted:
            return sigma
    return None


def cospread_two_cell(
    bicat: Bicategory, tau: TwoCell, s: Cell, t: Cell, a: Obj
) -> TwoCell | None:
    """cospread(tau): cospread(s, a) ⇒ cospread(t, a) for tau: s ⇒ t."""
    lifted = lift_two_cell(bicat, braided_ev(bicat, a), tau, s, t)
    return None if lifted is None else realize_two_cell(bicat, lifted, a, a)


def lax_product(bicat: Bicategory, theta: TwoCell, theta2: TwoCell, a: Obj) -> TwoCell:
    """The cell id ⇒ compose(f, f2) built from theta: id ⇒ f and theta2: id ⇒ f2."""
    ident = bicat.identity(a)
    split = bicat.unitor_cell_inv(ident)
    return bicat.vcompose(split, bicat.horizontal(theta, theta2))


def pairing_two_cell(bicat: Bicategory, theta: TwoCell, g: Cell) -> TwoCell:
    """g ⇒ compose(id, g) ⇒ compose(f, g) for theta: id ⇒ f."""
    return bicat.vcompose(
        bicat.unitor_cell_inv(g),
        bicat.horizontal(theta, bicat.identity_two_cell(g)),
    )


@dataclass(frozen=True)
class Pairing:
    """Element-level pairing cotrace(f) × trace(g) → trace(f;g)."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    target: tuple[str, ...]
    table: Mapping[tuple[str, str], str]

    def __call__(self, phi: str, x: str) -> str:
        return self.table[(phi, x)]


def pairing(bicat: Bicategory, f: Cell, g: Cell) -> Pairing:
    """Act by each 2-cell id ⇒ f on trace(g), landing in trace(compose(f, g))."""
    a = _require_endo(bicat, f, "pairing")
    if bicat.src(g) != a or bicat.tgt(g) != a:
        raise EndpointMismatch("pairing: g must be an endo-cell of the same object")
    fg = bicat.compose(f, g)
    cells = two_trace_cells(bicat, f)
    right = bicat.scalar_elements(trace(bicat, g))
    whisker = bicat.whiskering(name(bicat, g), name(bicat, fg), braided_ev(bicat, a))
    table = {}
    for phi, theta in cells.items():
        acting = whisker(name_two_cell(bicat, pairing_two_cell(bicat, theta, g), g, fg))
        for x in right:
            table[(phi, x)] = bicat.apply_scalar_cell(acting, x)
    target = bicat.scalar_elements(trace(bicat, fg))
    return Pairing(tuple(cells), right, target, table)


def dims(bicat: Bicategory, a: Obj) -> tuple[Cell, Cell]:
    """(Dim A, coDim A) = (trace(id_A), cotrace(id_A))."""
    ident = bicat.identity(a)
    return trace(bicat, ident), cotrace(bicat, ident)


@dataclass(frozen=True)
class Monoid:
    elements: tuple[str, ...]
    unit: str
    mul: Mapping[tuple[str, str], str]


@dataclass(frozen=True)
class ModuleStructure:
    """coDim(A) as a monoid acting on the left of Dim(A)."""

    monoid: Monoid
    carrier: tuple[str, ...]
    action: Mapping[tuple[str, str], str]


def codim_monoid(bicat: Bicategory, a: Obj) -> Monoid:
    ident = bicat.identity(a)
    composition = enriched_compose(bicat, ident, ident, ident)
    return Monoid(composition.left, enriched_identity(bicat, ident), composition.table)


def module_structure(bicat: Bicategory, a: Obj) -> ModuleStructure:
    ident = bicat.identity(a)
    monoid = codim_monoid(bicat, a)
    n_id = name(bicat, ident)
    cells = bicat.lift_element_cells(n_id, n_id)
    whisker = bicat.whiskering(n_id, n_id, braided_ev(bicat, a))
    dim = bicat.scalar_elements(trace(bicat, ident))
    action = {}
    for phi, cell in cells.items():
        acting = whisker(cell)
        for x in dim:
            action[(phi, x)] = bicat.apply_scalar_cell(acting, x)
    return ModuleStructure(monoid, dim, action)


def kan_monoid(bicat: Bicategory, a: Obj) -> Monoid:
    """The monad ⟨id⟩ ⊸ ⟨id⟩ with multiplication read off the evaluation.

    ``mul[(x, y)]`` names the factorization of
    (L;L);n ⇒ L;(L;n) ⇒ L;n ⇒ n restricted to the point (x, y) of L;L.
    """
    n = name(bicat, bicat.identity(a))
    lifted = bicat.lift(n, n)
    evaluation = bicat.evaluation(n, n)
    point = bicat.identity(bicat.unit())
    keep_n = bicat.identity_two_cell(n)

    def factor(at: TwoCell, cell: TwoCell) -> str:
        restricted = bicat.vcompose(
            bicat.unitor_cell_inv(n), bicat.horizontal(at, keep_n)
        )
        return bicat.lift_element_of(n, n, bicat.vcompose(restricted, cell))

    gamma = bicat.vcompose(
        bicat.vcompose(
            bicat.associator_cell(lifted, lifted, n),
            bicat.horizontal(bicat.identity_two_cell(lifted), evaluation),
        ),
        evaluation,
    )
    elements = bicat.scalar_elements(lifted)
    points = {x: bicat.scalar_point(lifted, x) for x in elements}
    split = bicat.unitor_cell_inv(point)
    mul = {
        (x, y): factor(
            bicat.vcompose(split, bicat.horizontal(points[x], points[y])), gamma
        )
        for x in elements
        for y in elements
    }
    unit = factor(bicat.identity_two_cell(point), bicat.unitor_cell(n))
    return Monoid(elements, unit, mul)


def lax_monoid(bicat: Bicategory, a: Obj) -> Monoid:
    """cotrace(id_A) under the horizontal product of 2-cells id ⇒ id."""
    ident = bicat.identity(a)
    cells = two_trace_cells(bicat, ident)
    back = bicat.unitor_cell(ident)

    def product(y: TwoCell, x: TwoCell) -> str:
        cell = bicat.vcompose(lax_product(bicat, x, y, a), back)
        return cotrace_element(bicat, cell, ident)

    unit = cotrace_element(bicat, bicat.identity_two_cell(ident), ident)
    mul = {(y, x): product(cells[y], cells[x]) for y in cells for x in cells}
    return Monoid(tuple(cells), unit, mul)


def two_cell_monoid(bicat: Bicategory, f: Cell) -> Monoid:
    """End(f) under vertical composition, labelled by 2-cell keys."""
    cells = {repr(bicat.two_cell_key(c)): c for c in bicat.two_cells(f, f)}
    unit = repr(bicat.two_cell_key(bicat.identity_two_cell(f)))
    mul = {
        (y, x): repr(bicat.two_cell_key(bicat.vcompose(cx, cy)))
        for y, cy in cells.items()
        for x, cx in cells.items()
    }
    return Monoid(tuple(cells), unit, mul)


def monoid_isomorphism(m1: Monoid, m2: Monoid) -> dict[str, str] | None:
    """A multiplication- and unit-preserving bijection, by brute force."""
    if len(m1.elements) != len(m2.elements):
        return None
    rest1 = [x for x in m1.elements if x != m1.unit]
    rest2 = [x for x in m2.elements if x != m2.unit]
    for image in itertools.permutations(rest2):
        mapping = dict(zip(rest1, image, strict=True))
        mapping[m1.unit] = m2.unit
        if all(
            mapping[m1.mul[(y, x)]] == m2.mul[(mapping[y], mapping[x])]
            for y in m1.elements
            for x in m1.elements
        ):
            return mapping
    return None


def scalar_braid(bicat: Bicategory, s: Cell, t: Cell) -> TwoCell:
    """The invertible swap compose(s, t) ⇒ compose(t, s) of scalars."""
    return bicat.scalar_swap(s, t)


def find_iso(bicat: Bicategory, f: Cell, g: Cell) -> TwoCell | None:
    """An invertible 2-cell f ⇒ g, None if none exists.

    Raises BudgetExceeded when the search gives up before deciding.
    """
    found = bicat.find_iso(f, g)
    logger.debug("find_iso[%s]: %s", bicat.tag, "found" if found else "none")
    return found
