"""The law suite: brute-force oracles for every property of the generic layer.

Each law pairs a case builder (see :mod:`cotrace.samples`) with a check that
returns ``None`` on success or a short description of what went wrong.
Checks never raise for a failing law; :func:`run_law` turns results into
:class:`LawReport` records. Sampled runs go through Hypothesis, which
shrinks a counterexample before it is reported.
"""

from __future__ import annotations

import logging
import zlib
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Literal

from hypothesis import HealthCheck, Phase, Verbosity, given, seed, settings
from hypothesis.errors import Unsatisfiable

from cotrace.bicat import (
    Bicategory,
    Cell,
    Obj,
    TwoCell,
    braided_ev,
    codim_monoid,
    compose_all,
    cospread,
    cotrace,
    cotrace_element,
    enriched_compose,
    enriched_identity,
    enrichment_hom,
    enrichment_hom_named,
    extension_via_duals,
    find_iso,
    kan_monoid,
    lax_monoid,
    lax_product,
    lift_two_cell,
    module_structure,
    monoid_isomorphism,
    name,
    name_two_cell,
    pairing,
    realize,
    scalar_braid,
    spread,
    spread_two_cell,
    trace,
    trace_two_cell,
    two_cell_monoid,
    two_trace,
    two_trace_cells,
    two_trace_correspondence,
)
from cotrace.codec import InstanceFile, dump_case
from cotrace.common import (
    DEFAULT_LIMITS,
    BudgetExceeded,
    InputError,
    Limits,
)
from cotrace.prof import ProfBicategory, end_diag
from cotrace.rel import FinSet, RelBicategory, RelCell
from cotrace.samples import (
    SAMPLERS,
    Builder,
    Draw,
    DrawnCase,
    PoolSampler,
    Sampler,
    case_strategy,
    enumerate_cases,
)
from cotrace.span import SpanBicategory, SpanCell

logger = logging.getLogger(__name__)

Status = Literal["pass", "counterexample", "budget-exceeded"]
Check = Callable[..., str | None]

ALL_INSTANCES = ("rel", "span", "prof")
# 2-cells tried per naturality square
NATURALITY_SAMPLE = 8


@dataclass(frozen=True)
class Law:
    id: str
    build: Builder
    check: Check
    instances: tuple[str, ...] = ALL_INSTANCES


@dataclass(frozen=True)
class LawReport:
    law: str
    instance: str
    cases: int
    status: Status
    mode: str = "exhaustive"
    witness: dict[str, Any] | None = None
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "law": self.law,
            "instance": self.instance,
            "cases": self.cases,
            "status": self.status,
            "mode": self.mode,
        }
        if self.message:
            data["message"] = self.message
        if self.witness is not None:
            data["witness"] = self.witness
        return data


@dataclass(frozen=True)
class SuiteConfig:
    max_size: int = 2
    rel_max_size: int = 3
    samples: int = 200
    seed: int = 0
    limits: Limits = DEFAULT_LIMITS
    jobs: int = 1
    exhaustive_cap: int = 20_000


LAWS: dict[str, Law] = {}


def law(
    law_id: str, build: Builder, instances: tuple[str, ...] = ALL_INSTANCES
) -> Callable[[Check], Check]:
    """Register a check under ``law_id``."""

    def register(check: Check) -> Check:
        if law_id in LAWS:
            raise ValueError(f"law {law_id} registered twice")
        LAWS[law_id] = Law(law_id, build, check, instances)
        return check

    return register


# instances and mutations


class DroppedRelLift(RelBicategory):
    """Rel whose lift loses its greatest pair."""

    def lift(self, f: RelCell, g: RelCell) -> RelCell:
        full = super().lift(f, g)
        if not full.pairs:
            return full
        return RelCell(full.src, full.tgt, full.pairs - {max(full.pairs)})


class DroppedSpanLift(SpanBicategory):
    """Span whose lift loses its greatest apex element."""

    def lift(self, f: SpanCell, g: SpanCell) -> SpanCell:
        full = super().lift(f, g)
        if not len(full.apex):
            return full
        keep = full.apex.elements[:-1]
        return SpanCell(
            full.src,
            full.tgt,
            FinSet(keep),
            {x: full.leg_src[x] for x in keep},
            {x: full.leg_tgt[x] for x in keep},
        )


INSTANCES: dict[str, type[Bicategory]] = {
    "rel": RelBicategory,
    "span": SpanBicategory,
    "prof": ProfBicategory,
}

MUTATIONS: dict[str, tuple[str, type[Bicategory]]] = {
    "rel-lift": ("rel", DroppedRelLift),
    "span-lift": ("span", DroppedSpanLift),
}


def make_bicategory(
    tag: str, limits: Limits = DEFAULT_LIMITS, mutation: str | None = None
) -> Bicategory:
    """The capability table for ``tag``, mutated when the mutation targets it."""
    if tag not in INSTANCES:
        raise InputError(f"unknown instance {tag!r}", where="instance")
    cls = INSTANCES[tag]
    if mutation is not None:
        if mutation not in MUTATIONS:
            raise InputError(f"unknown mutation {mutation!r}", where="mutation")
        target, mutated = MUTATIONS[mutation]
        if target == tag:
            cls = mutated
    return cls(limits)


# case builders


def endo_case(s: Sampler, d: Draw) -> tuple:
    return (s.endo(d),)


def object_case(s: Sampler, d: Draw) -> tuple:
    return (s.object(d),)


def cell_case(s: Sampler, d: Draw) -> tuple:
    a, b = s.object(d), s.object(d)
    return (s.cell(d, a, b),)


def scalar_case(s: Sampler, d: Draw) -> tuple:
    return (s.scalar(d),)


def two_scalars(s: Sampler, d: Draw) -> tuple:
    return s.scalar(d), s.scalar(d)


def scalar_endo(s: Sampler, d: Draw) -> tuple:
    scalar = s.scalar(d)
    return scalar, s.endo(d)


def lift_case(s: Sampler, d: Draw) -> tuple:
    """(f: B→C, g: A→C, h: A→B)."""
    a, b, c = s.object(d), s.object(d), s.object(d)
    return s.cell(d, b, c), s.cell(d, a, c), s.cell(d, a, b)


def extension_case(s: Sampler, d: Draw) -> tuple:
    """(g: A→C, f: A→B, h: B→C)."""
    a, b, c = s.object(d), s.object(d), s.object(d)
    return s.cell(d, a, c), s.cell(d, a, b), s.cell(d, b, c)


def opposed(s: Sampler, d: Draw) -> tuple:
    a, b = s.object(d), s.object(d)
    return s.cell(d, a, b), s.cell(d, b, a)


def parallel(s: Sampler, d: Draw) -> tuple:
    a, b = s.object(d), s.object(d)
    return s.cell(d, a, b), s.cell(d, a, b)


def parallel3(s: Sampler, d: Draw) -> tuple:
    a, b = s.object(d), s.object(d)
    return s.cell(d, a, b), s.cell(d, a, b), s.cell(d, a, b)


def endo_triple(s: Sampler, d: Draw) -> tuple:
    a = s.object(d)
    return s.cell(d, a, a), s.cell(d, a, a), s.cell(d, a, a)


def conjugation_case(s: Sampler, d: Draw) -> tuple:
    """(f: A→A, structure maps of an automorphism of A)."""
    a = s.object(d)
    return s.cell(d, a, a), s.automorphism(d, a)


def two_endos(s: Sampler, d: Draw) -> tuple:
    return s.endo(d), s.endo(d)


def chain(s: Sampler, d: Draw) -> tuple:
    a, b, c, e = s.object(d), s.object(d), s.object(d), s.object(d)
    return s.cell(d, a, b), s.cell(d, b, c), s.cell(d, c, e)


def frobenius_case(s: Sampler, d: Draw) -> tuple:
    """(A, B, a function A → B, g: A → B)."""
    a, b = s.object(d), s.object(d)
    return a, b, s.function(d, a, b), s.cell(d, a, b)


# checks


def _iso(bicat: Bicategory, f: Cell, g: Cell, what: str) -> str | None:
    if find_iso(bicat, f, g) is None:
        return f"{what}: no invertible 2-cell"
    return None


def _first(*results: str | None) -> str | None:
    return next((r for r in results if r is not None), None)


def _count(bicat: Bicategory, f: Cell, g: Cell) -> int:
    return len(bicat.two_cells(f, g))


def lift_factorization(bicat: Bicategory, f: Cell, g: Cell, h: Cell) -> str | None:
    """Each gamma: compose(h, f) ⇒ g factors exactly once through the lift."""
    lifted = bicat.lift(f, g)
    evaluation = bicat.evaluation(f, g)
    whisker = bicat.whiskering(h, lifted, f)
    produced = Counter(
        bicat.two_cell_key(bicat.vcompose(whisker(sigma), evaluation))
        for sigma in bicat.two_cells(h, lifted)
    )
    for gamma in bicat.two_cells(bicat.compose(h, f), g):
        key = bicat.two_cell_key(gamma)
        count = produced.pop(key, 0)
        if count != 1:
            return f"2-cell {key!r} factors {count} times through the lift"
    if produced:
        return f"{sum(produced.values())} factorizations hit no 2-cell"
    return None


def _rel_residuation(
    bicat: Bicategory, f: RelCell, g: RelCell, h: RelCell
) -> str | None:
    below = bicat.compose(h, f).pairs <= g.pairs
    inside = h.pairs <= bicat.lift(f, g).pairs
    if below != inside:
        return f"residuation fails: h∘f ⊆ g is {below}, h ⊆ f⊸g is {inside}"
    return None


def check_lift_universal_property(
    bicat: Bicategory, f: Cell, g: Cell, candidates: Iterable[Cell]
) -> LawReport:
    """Run the lift factorization check over explicit candidates h."""
    cases = 0
    for h in candidates:
        cases += 1
        try:
            message = _check_lift(bicat, f, g, h)
        except BudgetExceeded as exc:
            return LawReport(
                "lift-universal-property",
                bicat.tag,
                cases,
                "budget-exceeded",
                message=str(exc),
            )
        if message is not None:
            return LawReport(
                "lift-universal-property",
                bicat.tag,
                cases,
                "counterexample",
                witness=dump_case(bicat.tag, (f, g, h)),
                message=message,
            )
    return LawReport("lift-universal-property", bicat.tag, cases, "pass")


@law("lift-universal-property", lift_case)
def _check_lift(bicat: Bicategory, f: Cell, g: Cell, h: Cell) -> str | None:
    message = lift_factorization(bicat, f, g, h)
    if message is None and bicat.tag == "rel":
        message = _rel_residuation(bicat, f, g, h)
    return message


@law("extension-universal-property", extension_case)
def _check_extension(bicat: Bicategory, g: Cell, f: Cell, h: Cell) -> str | None:
    ext = extension_via_duals(bicat, g, f)
    left, right = _count(bicat, bicat.compose(f, h), g), _count(bicat, h, ext)
    if left != right:
        return f"{left} 2-cells f;h ⇒ g but {right} 2-cells h ⇒ g⟜f"
    return None


@law("trace-closed-form", endo_case)
def _check_trace_closed(bicat: Bicategory, f: Cell) -> str | None:
    return _iso(bicat, trace(bicat, f), bicat.trace_closed(f), "trace vs closed form")


@law("cotrace-closed-form", endo_case)
def _check_cotrace_closed(bicat: Bicategory, f: Cell) -> str | None:
    return _iso(
        bicat, cotrace(bicat, f), bicat.cotrace_closed(f), "cotrace vs closed form"
    )


def _transposes_differ(table: dict[tuple, tuple[str | None, ...]], count: int) -> bool:
    return len(set(table.values())) != count


@law("spread-cotrace-adjunction", scalar_endo)
def _check_spread_adjunction(bicat: Bicategory, s: Cell, f: Cell) -> str | None:
    """Hom(spread s, f) ≅ Hom(s, cotrace f), natural in s and in f.

    alpha is sent to the function e ↦ the cotrace element of
    id ⇒ spread(I) ⇒ spread(s) ⇒ f, where the middle step spreads the point e.
    """
    a = bicat.src(f)
    unit_spread = spread(bicat, bicat.identity(bicat.unit()), a)
    iso = find_iso(bicat, bicat.identity(a), unit_spread)
    if iso is None:
        return "spread of the unit scalar is not the identity"
    key = bicat.two_cell_key
    thetas = two_trace_cells(bicat, f)
    element_of = {key(theta): phi for phi, theta in thetas.items()}
    elements = bicat.scalar_elements(s)
    points = {
        e: bicat.vcompose(iso, spread_two_cell(bicat, bicat.scalar_point(s, e), a))
        for e in elements
    }

    def transpose(alpha: TwoCell) -> tuple[str | None, ...]:
        return tuple(
            element_of.get(key(bicat.vcompose(points[e], alpha))) for e in elements
        )

    alphas = bicat.two_cells(spread(bicat, s, a), f)
    table = {key(alpha): transpose(alpha) for alpha in alphas}
    if any(None in images for images in table.values()):
        return "a transpose names no element of cotrace(f)"
    if _transposes_differ(table, len(alphas)):
        return "two 2-cells spread(s) ⇒ f share a transpose"
    expected = len(bicat.scalar_elements(cotrace(bicat, f))) ** len(elements)
    if len(alphas) != expected:
        return f"{len(alphas)} 2-cells spread(s) ⇒ f but {expected} s ⇒ cotrace(f)"
    sample = alphas[:NATURALITY_SAMPLE]
    for tau in bicat.two_cells(s, s)[:NATURALITY_SAMPLE]:
        moved = spread_two_cell(bicat, tau, a)
        for alpha in sample:
            images = dict(zip(elements, table[key(alpha)], strict=True))
            wanted = tuple(images[bicat.apply_scalar_cell(tau, e)] for e in elements)
            if table.get(key(bicat.vcompose(moved, alpha))) != wanted:
                return "transpose is not natural in s"
    for kappa in bicat.two_cells(f, f)[:NATURALITY_SAMPLE]:
        acting = {
            phi: element_of[key(bicat.vcompose(theta, kappa))]
            for phi, theta in thetas.items()
        }
        for alpha in sample:
            wanted = tuple(acting[phi] for phi in table[key(alpha)])
            if table.get(key(bicat.vcompose(alpha, kappa))) != wanted:
                return "transpose is not natural in f"
    return None


@law("trace-cospread-adjunction", scalar_endo)
def _check_cospread_adjunction(bicat: Bicategory, s: Cell, f: Cell) -> str | None:
    """Hom(trace f, s) ≅ Hom(f, cospread s), natural in f and in s.

    gamma: ⟨f⟩ ⇒ ev⊸s is sent to trace f ⇒ (ev⊸s);ev ⇒ s; naming then
    carries Hom(f, cospread s) onto those gammas.
    """
    a = bicat.src(f)
    bev = braided_ev(bicat, a)
    lifted = bicat.lift(bev, s)
    named, cosp = name(bicat, f), cospread(bicat, s, a)
    back = find_iso(bicat, name(bicat, cosp), lifted)
    if back is None:
        return "cospread(s) does not name the lift it realizes"
    key = bicat.two_cell_key
    whisker = bicat.whiskering(named, lifted, bev)
    evaluation = bicat.evaluation(bev, s)
    traced = bicat.scalar_elements(trace(bicat, f))

    def transpose(gamma: TwoCell) -> tuple[str, ...]:
        cell = bicat.vcompose(whisker(gamma), evaluation)
        return tuple(bicat.apply_scalar_cell(cell, x) for x in traced)

    gammas = bicat.two_cells(named, lifted)
    table = {key(gamma): transpose(gamma) for gamma in gammas}
    if _transposes_differ(table, len(gammas)):
        return "two 2-cells ⟨f⟩ ⇒ ev⊸s share a transpose"
    expected = len(bicat.scalar_elements(s)) ** len(traced)
    if len(gammas) != expected:
        return f"|Hom(trace f, s)| = {expected} but |Hom(⟨f⟩, ev⊸s)| = {len(gammas)}"
    betas = bicat.two_cells(f, cosp)
    carried = {
        key(bicat.vcompose(name_two_cell(bicat, beta, f, cosp), back)) for beta in betas
    }
    onto = len(carried) == len(betas) == len(gammas) and carried <= table.keys()
    if not onto:
        return "naming does not carry Hom(f, cospread s) onto Hom(⟨f⟩, ev⊸s)"
    sample = gammas[:NATURALITY_SAMPLE]
    for kappa in bicat.two_cells(f, f)[:NATURALITY_SAMPLE]:
        moved = trace_two_cell(bicat, kappa, f, f)
        named_kappa = name_two_cell(bicat, kappa, f, f)
        for gamma in sample:
            images = dict(zip(traced, table[key(gamma)], strict=True))
            wanted = tuple(images[bicat.apply_scalar_cell(moved, x)] for x in traced)
            if table.get(key(bicat.vcompose(named_kappa, gamma))) != wanted:
                return "transpose is not natural in f"
    for tau in bicat.two_cells(s, s)[: NATURALITY_SAMPLE // 2]:
        lifted_tau = lift_two_cell(bicat, bev, tau, s, s)
        if lifted_tau is None:
            return "a 2-cell s ⇒ s has no lift through ev"
        for gamma in sample:
            wanted = tuple(bicat.apply_scalar_cell(tau, y) for y in table[key(gamma)])
            if table.get(key(bicat.vcompose(gamma, lifted_tau))) != wanted:
                return "transpose is not natural in s"
    return None


@law("scalar-fixed-point", scalar_case)
def _check_scalar_fixed_point(bicat: Bicategory, s: Cell) -> str | None:
    return _first(
        _iso(bicat, trace(bicat, s), s, "trace of a scalar"),
        _iso(bicat, cotrace(bicat, s), s, "cotrace of a scalar"),
    )


@law("trace-cyclicity", opposed)
def _check_trace_cyclicity(bicat: Bicategory, f: Cell, g: Cell) -> str | None:
    return _iso(
        bicat,
        trace(bicat, bicat.compose(f, g)),
        trace(bicat, bicat.compose(g, f)),
        "trace(f;g) vs trace(g;f)",
    )


@law("cotrace-cyclicity", parallel)
def _check_cotrace_cyclicity(bicat: Bicategory, f: Cell, g: Cell) -> str | None:
    return _iso(
        bicat,
        cotrace(bicat, bicat.lift(f, g)),
        cotrace(bicat, extension_via_duals(bicat, g, f)),
        "cotrace(f⊸g) vs cotrace(g⟜f)",
    )


@law("conjugation-invariance", conjugation_case)
def _check_conjugation(bicat: Bicategory, f: Cell, maps: tuple) -> str | None:
    a = bicat.src(f)
    copy, forward, backward = bicat.renamed(a, "c")
    conjugate = compose_all(bicat, [forward, f, backward])
    if bicat.src(conjugate) != copy:
        return "conjugate is not an endo-cell of the copy"
    permuted = compose_all(
        bicat, [bicat.graph_cell(a, a, maps), f, bicat.cograph_cell(a, a, maps)]
    )
    return _first(
        _iso(bicat, cotrace(bicat, conjugate), cotrace(bicat, f), "conjugate cotrace"),
        _iso(bicat, trace(bicat, conjugate), trace(bicat, f), "conjugate trace"),
        _iso(bicat, cotrace(bicat, permuted), cotrace(bicat, f), "permuted cotrace"),
        _iso(bicat, trace(bicat, permuted), trace(bicat, f), "permuted trace"),
    )


@law("dual-invariance-trace", endo_case)
def _check_dual_trace(bicat: Bicategory, f: Cell) -> str | None:
    return _iso(
        bicat, trace(bicat, bicat.dual_cell(f)), trace(bicat, f), "trace(f*)"
    )


@law("dual-invariance-cotrace", endo_case)
def _check_dual_cotrace(bicat: Bicategory, f: Cell) -> str | None:
    return _iso(
        bicat, cotrace(bicat, bicat.dual_cell(f)), cotrace(bicat, f), "cotrace(f*)"
    )


@law("trace-tensor", two_endos)
def _check_trace_tensor(bicat: Bicategory, f: Cell, e: Cell) -> str | None:
    return _iso(
        bicat,
        trace(bicat, bicat.tensor_cells(f, e)),
        bicat.compose(trace(bicat, f), trace(bicat, e)),
        "trace(f⊗e)",
    )


@law("cotrace-tensor", two_endos)
def _check_cotrace_tensor(bicat: Bicategory, f: Cell, e: Cell) -> str | None:
    source = bicat.compose(cotrace(bicat, f), cotrace(bicat, e))
    if not bicat.has_two_cell(source, cotrace(bicat, bicat.tensor_cells(f, e))):
        return "no 2-cell cotrace(f);cotrace(e) ⇒ cotrace(f⊗e)"
    return None


@law("linearity-copower", scalar_endo)
def _check_copower(bicat: Bicategory, s: Cell, f: Cell) -> str | None:
    a = bicat.src(f)
    return _iso(
        bicat,
        trace(bicat, bicat.compose(f, spread(bicat, s, a))),
        bicat.compose(trace(bicat, f), s),
        "trace(f;spread s)",
    )


@law("linearity-power", scalar_endo)
def _check_power(bicat: Bicategory, s: Cell, f: Cell) -> str | None:
    a = bicat.src(f)
    return _iso(
        bicat,
        cotrace(bicat, bicat.lift(spread(bicat, s, a), f)),
        bicat.lift(s, cotrace(bicat, f)),
        "cotrace(spread s ⊸ f)",
    )


@law("pairing", endo_triple)
def _check_pairing(bicat: Bicategory, f: Cell, f2: Cell, g: Cell) -> str | None:
    """cotrace(f) × trace(g) → trace(f;g) is unital and associative."""
    a = bicat.src(g)
    ident = bicat.identity(a)
    paired = pairing(bicat, f, g)
    if not set(paired.table.values()) <= set(paired.target):
        return "pairing lands outside trace(f;g)"
    unit_pairing = pairing(bicat, ident, g)
    unit = cotrace_element(bicat, bicat.identity_two_cell(ident), ident)
    untouch = trace_two_cell(bicat, bicat.unitor_cell(g), bicat.compose(ident, g), g)
    for x in unit_pairing.right:
        if bicat.apply_scalar_cell(untouch, unit_pairing(unit, x)) != x:
            return f"unit law fails at {x}"
    ff2, f2g = bicat.compose(f, f2), bicat.compose(f2, g)
    inner, outer = pairing(bicat, f2, g), pairing(bicat, f, f2g)
    joint = pairing(bicat, ff2, g)
    regroup = trace_two_cell(
        bicat,
        bicat.associator_cell(f, f2, g),
        bicat.compose(ff2, g),
        bicat.compose(f, f2g),
    )
    cells, cells2 = two_trace_cells(bicat, f), two_trace_cells(bicat, f2)
    for phi, theta in cells.items():
        for psi, theta2 in cells2.items():
            product = cotrace_element(bicat, lax_product(bicat, theta, theta2, a), ff2)
            for x in inner.right:
                regrouped = bicat.apply_scalar_cell(regroup, joint(product, x))
                if outer(phi, inner(psi, x)) != regrouped:
                    return f"associativity fails at ({phi}, {psi}, {x})"
    return None


@law("adjoint-relation", scalar_endo)
def _check_adjoint_relation(bicat: Bicategory, s: Cell, f: Cell) -> str | None:
    a = bicat.src(f)
    return _iso(
        bicat,
        cotrace(bicat, bicat.lift(f, cospread(bicat, s, a))),
        bicat.lift(trace(bicat, f), s),
        "cotrace(f ⊸ cospread s)",
    )


@law("frobenius-form", frobenius_case)
def _check_frobenius(
    bicat: Bicategory, a: Obj, b: Obj, maps: tuple, g: Cell
) -> str | None:
    f = bicat.graph_cell(a, b, maps)
    adjoint = bicat.cograph_cell(a, b, maps)
    return _iso(
        bicat,
        enrichment_hom(bicat, f, g),
        cotrace(bicat, bicat.compose(g, adjoint)),
        "hom(f, g) vs cotrace(g;f†)",
    )


@law("enrichment-agreement", parallel)
def _check_enrichment(bicat: Bicategory, f: Cell, g: Cell) -> str | None:
    return _iso(
        bicat,
        enrichment_hom(bicat, f, g),
        enrichment_hom_named(bicat, f, g),
        "cotrace(f⊸g) vs ⟨f⟩⊸⟨g⟩",
    )


@law("enriched-composition", parallel3)
def _check_enriched_composition(
    bicat: Bicategory, f: Cell, g: Cell, h: Cell
) -> str | None:
    fgh = enriched_compose(bicat, f, g, h)
    fgg = enriched_compose(bicat, f, g, g)
    ffg = enriched_compose(bicat, f, f, g)
    ghh = enriched_compose(bicat, g, h, h)
    fhh = enriched_compose(bicat, f, h, h)
    if not set(fgh.table.values()) <= set(fgh.target):
        return "composite lands outside hom(f, h)"
    unit_f, unit_g = enriched_identity(bicat, f), enriched_identity(bicat, g)
    for x in fgg.right:
        if fgg(unit_g, x) != x:
            return f"left unit law fails at {x}"
        if ffg(x, unit_f) != x:
            return f"right unit law fails at {x}"
    for z in ghh.left:
        for y in ghh.right:
            for x in fgh.right:
                if fhh(z, fgh(y, x)) != fgh(ghh(z, y), x):
                    return f"associativity fails at ({z}, {y}, {x})"
    return None


@law("two-trace-bijection", endo_case)
def _check_two_trace(bicat: Bicategory, f: Cell) -> str | None:
    cells = two_trace(bicat, f)
    correspondence = two_trace_correspondence(bicat, f)
    elements = set(bicat.scalar_elements(cotrace(bicat, f)))
    if len(correspondence) != len(cells):
        return "2-cells id ⇒ f share a key"
    if len(set(correspondence.values())) != len(cells):
        return "two 2-cells name the same cotrace element"
    if set(correspondence.values()) != elements:
        return f"{len(cells)} 2-cells but {len(elements)} cotrace elements"
    return None


@law("codim-monoid", object_case)
def _check_codim_monoid(bicat: Bicategory, a: Obj) -> str | None:
    monoid = codim_monoid(bicat, a)
    xs = monoid.elements
    if monoid.unit not in xs:
        return "unit is not an element"
    for x in xs:
        if monoid.mul[(monoid.unit, x)] != x or monoid.mul[(x, monoid.unit)] != x:
            return f"unit law fails at {x}"
    for z in xs:
        for y in xs:
            for x in xs:
                zy = monoid.mul[(z, y)]
                if monoid.mul[(z, monoid.mul[(y, x)])] != monoid.mul[(zy, x)]:
                    return f"associativity fails at ({z}, {y}, {x})"
    return None


@law("dim-module", object_case)
def _check_dim_module(bicat: Bicategory, a: Obj) -> str | None:
    module = module_structure(bicat, a)
    monoid, act = module.monoid, module.action
    for x in module.carrier:
        if act[(monoid.unit, x)] != x:
            return f"unit acts non-trivially on {x}"
        for phi in monoid.elements:
            if act[(phi, x)] not in module.carrier:
                return f"{phi} moves {x} out of Dim"
            for psi in monoid.elements:
                if act[(phi, act[(psi, x)])] != act[(monoid.mul[(phi, psi)], x)]:
                    return f"action not associative at ({phi}, {psi}, {x})"
    return None


@law("three-monoid", object_case)
def _check_three_monoid(bicat: Bicategory, a: Obj) -> str | None:
    """coDim(A) agrees with End(id), the lift monad and the lax product."""
    codim = codim_monoid(bicat, a)
    others = {
        "End(id)": two_cell_monoid(bicat, bicat.identity(a)),
        "the lift monad": kan_monoid(bicat, a),
        "the lax product": lax_monoid(bicat, a),
    }
    for label, other in others.items():
        if monoid_isomorphism(codim, other) is None:
            return f"coDim is not isomorphic to {label}"
    return None


@law("scalar-symmetry", two_scalars)
def _check_scalar_symmetry(bicat: Bicategory, s: Cell, t: Cell) -> str | None:
    there = scalar_braid(bicat, s, t)
    back = scalar_braid(bicat, t, s)
    round_trip = bicat.vcompose(there, back)
    if bicat.two_cell_key(round_trip) != bicat.two_cell_key(
        bicat.identity_two_cell(bicat.compose(s, t))
    ):
        return "swapping twice is not the identity"
    return None


@law("name-realization", cell_case)
def _check_name_realization(bicat: Bicategory, f: Cell) -> str | None:
    round_trip = realize(bicat, name(bicat, f), bicat.src(f), bicat.tgt(f))
    return _iso(bicat, round_trip, f, "realize(name f)")


@law("zigzag", object_case)
def _check_zigzag(bicat: Bicategory, a: Obj) -> str | None:
    dual = bicat.dual(a)
    snake = compose_all(
        bicat,
        [
            bicat.right_unitor_inv(dual),
            bicat.tensor_cells(bicat.identity(dual), bicat.coev(a)),
            bicat.associator_inv(dual, a, dual),
            bicat.tensor_cells(bicat.ev(a), bicat.identity(dual)),
            bicat.left_unitor(dual),
        ],
    )
    return _first(
        _iso(
            bicat, realize(bicat, bicat.coev(a), a, a), bicat.identity(a), "A zigzag"
        ),
        _iso(bicat, snake, bicat.identity(dual), "A* zigzag"),
    )


@law("composition-coherence", chain)
def _check_coherence(bicat: Bicategory, f: Cell, g: Cell, h: Cell) -> str | None:
    left_id = bicat.identity(bicat.src(f))
    right_id = bicat.identity(bicat.tgt(f))
    return _first(
        _iso(
            bicat,
            bicat.compose(bicat.compose(f, g), h),
            bicat.compose(f, bicat.compose(g, h)),
            "associativity",
        ),
        _iso(bicat, bicat.compose(left_id, f), f, "left unit"),
        _iso(bicat, bicat.compose(f, right_id), f, "right unit"),
    )


@law("prof-yoneda", cell_case, ("prof",))
def _check_yoneda(bicat: Bicategory, q: Cell) -> str | None:
    lifted = bicat.lift(bicat.identity(bicat.tgt(q)), q)
    return _iso(bicat, lifted, q, "Hom ⊸ Q")


@law("prof-coyoneda", cell_case, ("prof",))
def _check_coyoneda(bicat: Bicategory, p: Cell) -> str | None:
    return _first(
        _iso(bicat, bicat.compose(p, bicat.identity(bicat.tgt(p))), p, "P;Hom"),
        _iso(bicat, bicat.compose(bicat.identity(bicat.src(p)), p), p, "Hom;P"),
    )


@law("prof-end-underlying", endo_case, ("prof",))
def _check_end_underlying(bicat: Bicategory, f: Cell) -> str | None:
    families = end_diag(f, cap=bicat.limits.enumeration_cap)
    natural = _count(bicat, bicat.identity(bicat.src(f)), f)
    if len(families) != natural:
        return f"end has {len(families)} elements, Nat(Hom, P) has {natural}"
    return None


# running


def evaluate(law: Law, bicat: Bicategory, case: Sequence[Any]) -> str | None:
    """Run one check; input errors raised inside it count as failures."""
    try:
        return law.check(bicat, *case)
    except InputError as exc:
        return f"raised {type(exc).__name__}: {exc}"


class LawFailure(Exception):
    """A sampled case broke the law; raised inside the Hypothesis test."""

    def __init__(self, message: str, drawn: DrawnCase) -> None:
        super().__init__(message)
        self.message = message
        self.drawn = drawn


def _hypothesis_settings(config: SuiteConfig) -> settings:
    return settings(
        max_examples=config.samples,
        database=None,
        deadline=None,
        derandomize=False,
        print_blob=False,
        report_multiple_bugs=False,
        verbosity=Verbosity.quiet,
        suppress_health_check=list(HealthCheck),
        phases=[Phase.generate, Phase.shrink],
    )


@dataclass(frozen=True)
class SampledRun:
    cases: int
    status: Status = "pass"
    drawn: DrawnCase | None = None
    message: str = ""


def sample_law(
    law: Law, tag: str, bicat: Bicategory, sampler: Sampler, config: SuiteConfig
) -> SampledRun:
    """Draw up to ``config.samples`` cases; a failure comes back shrunk.

    The case count stops at the first failing case.
    """
    count = 0
    failed = False

    @seed(zlib.crc32(f"{config.seed}:{law.id}:{tag}".encode()))
    @_hypothesis_settings(config)
    @given(case_strategy(law.build, sampler))
    def search(drawn: DrawnCase) -> None:
        nonlocal count, failed
        if not failed:
            count += 1
        message = evaluate(law, bicat, drawn.case)
        if message is not None:
            failed = True
            raise LawFailure(message, drawn)

    try:
        search()
    except LawFailure as exc:
        return SampledRun(count, "counterexample", exc.drawn, exc.message)
    except BudgetExceeded as exc:
        logger.warning("law %s on %s: %s", law.id, tag, exc)
        return SampledRun(count, "budget-exceeded", message=str(exc))
    except Unsatisfiable:
        logger.warning("law %s on %s: no case could be drawn", law.id, tag)
    return SampledRun(count)


def _witness(
    law: Law, tag: str, case: tuple, choices: Sequence[int], mutation: str | None
) -> dict[str, Any]:
    witness = dump_case(tag, case)
    witness["law"] = law.id
    witness["choices"] = list(choices)
    if mutation is not None:
        witness["mutation"] = mutation
    return witness


def _exhaustive(
    law: Law, tag: str, bicat: Bicategory, config: SuiteConfig
) -> tuple[Sampler, list[DrawnCase] | None]:
    """The largest size up to ``rel_max_size`` whose cases fit the cap."""
    top = max(config.max_size, config.rel_max_size)
    for size in range(top, config.max_size - 1, -1):
        sampler = SAMPLERS[tag](bicat, size)
        if not sampler.exhaustive:
            break
        cases = enumerate_cases(law.build, sampler, config.exhaustive_cap)
        if cases is not None:
            return sampler, cases
    return SAMPLERS[tag](bicat, config.max_size), None


def run_law(
    law: Law,
    tag: str,
    config: SuiteConfig,
    mutation: str | None = None,
    sampler: Sampler | None = None,
) -> LawReport:
    """Run ``law`` on instance ``tag``: exhaustively when feasible, else sampled."""
    bicat = make_bicategory(tag, config.limits, mutation)
    if sampler is None:
        sampler, cases = _exhaustive(law, tag, bicat, config)
    elif sampler.exhaustive:
        cases = enumerate_cases(law.build, sampler, config.exhaustive_cap)
    else:
        cases = None
    if cases is None:
        logger.info("law %s on %s: sampled run", law.id, tag)
        run = sample_law(law, tag, bicat, sampler, config)
        witness = None
        if run.drawn is not None:
            witness = _witness(law, tag, run.drawn.case, run.drawn.choices, mutation)
        logger.info("law %s on %s: %s (%d cases)", law.id, tag, run.status, run.cases)
        return LawReport(
            law.id, tag, run.cases, run.status, "sampled", witness, run.message
        )
    logger.info("law %s on %s: exhaustive run", law.id, tag)
    for count, drawn in enumerate(cases, start=1):
        try:
            message = evaluate(law, bicat, drawn.case)
        except BudgetExceeded as exc:
            logger.warning("law %s on %s: %s", law.id, tag, exc)
            return LawReport(law.id, tag, count, "budget-exceeded", message=str(exc))
        if message is None:
            continue
        logger.info("law %s on %s: counterexample after %d cases", law.id, tag, count)
        witness = _witness(law, tag, drawn.case, drawn.choices, mutation)
        return LawReport(
            law.id, tag, count, "counterexample", witness=witness, message=message
        )
    logger.info("law %s on %s: pass (%d cases)", law.id, tag, len(cases))
    return LawReport(law.id, tag, len(cases), "pass")


def select_laws(laws: Iterable[str] | None = None) -> list[Law]:
    if laws is None:
        return [LAWS[key] for key in sorted(LAWS)]
    selected = []
    for law_id in laws:
        if law_id not in LAWS:
            raise InputError(f"unknown law {law_id!r}", where="--law")
        selected.append(LAWS[law_id])
    return sorted(selected, key=lambda item: item.id)


Pool = tuple[Sequence[Obj], Sequence[Cell]]


def _run_task(
    law_id: str,
    tag: str,
    config: SuiteConfig,
    mutation: str | None,
    pool: Pool | None,
) -> LawReport:
    law = LAWS[law_id]
    sampler = None
    if pool is not None:
        bicat = make_bicategory(tag, config.limits, mutation)
        base = SAMPLERS[tag](bicat, config.max_size)
        sampler = PoolSampler(base, *pool)
    return run_law(law, tag, config, mutation, sampler)


def run_law_suite(
    config: SuiteConfig,
    instances: Iterable[str] | None = None,
    laws: Iterable[str] | None = None,
    mutation: str | None = None,
    pool: Pool | None = None,
) -> list[LawReport]:
    """One report per (law, instance), ordered by law id then instance."""
    tags = list(ALL_INSTANCES if instances is None else instances)
    for tag in tags:
        if tag not in INSTANCES:
            raise InputError(f"unknown instance {tag!r}", where="--instance")
    if mutation is not None and mutation not in MUTATIONS:
        raise InputError(f"unknown mutation {mutation!r}", where="--mutate")
    tasks = [
        (item.id, tag, config, mutation, pool)
        for item in select_laws(laws)
        for tag in tags
        if tag in item.instances
    ]
    logger.info("running %d law checks with %d job(s)", len(tasks), config.jobs)
    if config.jobs > 1 and tasks:
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            reports = list(executor.map(_run_task, *zip(*tasks, strict=True)))
    else:
        reports = [_run_task(*task) for task in tasks]
    failed = sum(not report.passed for report in reports)
    logger.info("suite finished: %d of %d checks failed", failed, len(reports))
    return sorted(reports, key=lambda report: (report.law, report.instance))


def replay(
    instance_file: InstanceFile,
    law_id: str | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> LawReport:
    """Re-run the law recorded in a witness file on its recorded case."""
    law_id = law_id or instance_file.law
    if law_id is None:
        raise InputError("no law given for replay", where="law")
    if law_id not in LAWS:
        raise InputError(f"unknown law {law_id!r}", where="law")
    if instance_file.case is None:
        raise InputError("file carries no case to replay", where="case")
    law = LAWS[law_id]
    tag = instance_file.instance
    bicat = make_bicategory(tag, limits, instance_file.mutation)
    try:
        message = evaluate(law, bicat, instance_file.case)
    except BudgetExceeded as exc:
        return LawReport(law_id, tag, 1, "budget-exceeded", "replay", message=str(exc))
    if message is None:
        return LawReport(law_id, tag, 1, "pass", "replay")
    witness = _witness(
        law, tag, instance_file.case, instance_file.choices, instance_file.mutation
    )
    return LawReport(law_id, tag, 1, "counterexample", "replay", witness, message)
