"""Case generation for the law suite.

A case is built by a function that asks a :class:`Draw` for choices. The
same builder serves three modes: exhaustive enumeration of every choice
sequence (small-first), sampling through a Hypothesis strategy, and replay
of a recorded choice sequence. The per-instance samplers turn choices into
objects, cells, scalars and structure maps.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import TypeVar

from hypothesis import assume
from hypothesis import strategies as st

from cotrace.bicat import Bicategory, Cell, LabelMaps, Obj
from cotrace.common import join_label
from cotrace.fincat import (
    FinCat,
    automorphisms,
    cyclic_group,
    discrete_category,
    symmetric_group,
    terminal_category,
    walking_arrow,
)
from cotrace.prof import Profunctor, prof_quotient, prof_scalar, tabulate
from cotrace.rel import FinSet, RelCell, unit_set
from cotrace.span import SpanCell, span_scalar

T = TypeVar("T")


class Reject(Exception):
    """The drawn choices do not describe a usable case."""


class Draw(ABC):
    """Source of bounded choices; records every choice it hands out."""

    def __init__(self) -> None:
        self.choices: list[tuple[int, int]] = []

    @abstractmethod
    def _next(self, n: int) -> int: ...

    def choose(self, n: int) -> int:
        """An index in range(n)."""
        if n <= 0:
            raise Reject("nothing to choose from")
        value = self._next(n)
        self.choices.append((value, n))
        return value

    def pick(self, options: Sequence[T]) -> T:
        return options[self.choose(len(options))]

    @property
    def sequence(self) -> list[int]:
        return [value for value, _ in self.choices]


class PrefixDraw(Draw):
    """Replays a prefix, clamped to each range, then always answers 0."""

    def __init__(self, prefix: Sequence[int] = ()) -> None:
        super().__init__()
        self.prefix = list(prefix)

    def _next(self, n: int) -> int:
        pos = len(self.choices)
        return min(self.prefix[pos], n - 1) if pos < len(self.prefix) else 0


class DataDraw(Draw):
    """Choices drawn from Hypothesis, so they shrink towards 0."""

    def __init__(self, draw: Callable[[st.SearchStrategy[int]], int]) -> None:
        super().__init__()
        self.draw = draw

    def _next(self, n: int) -> int:
        return self.draw(st.integers(min_value=0, max_value=n - 1))


@dataclass(frozen=True)
class DrawnCase:
    choices: tuple[int, ...]
    case: tuple


class Sampler(ABC):
    """Turns choices into cells of one instance."""

    exhaustive = False

    def __init__(self, bicat: Bicategory, max_size: int) -> None:
        self.bicat = bicat
        self.max_size = max_size

    @abstractmethod
    def objects(self) -> list[Obj]: ...

    @abstractmethod
    def cell(self, draw: Draw, a: Obj, b: Obj) -> Cell: ...

    @abstractmethod
    def scalar(self, draw: Draw) -> Cell: ...

    @abstractmethod
    def function(self, draw: Draw, a: Obj, b: Obj) -> LabelMaps:
        """Structure maps of a function or functor a → b."""

    @abstractmethod
    def automorphism(self, draw: Draw, a: Obj) -> LabelMaps:
        """Structure maps of an invertible function or functor a → a."""

    def object(self, draw: Draw) -> Obj:
        return draw.pick(self.objects())

    def endo(self, draw: Draw) -> Cell:
        a = self.object(draw)
        return self.cell(draw, a, a)


def _sets(max_size: int) -> list[FinSet]:
    return [FinSet(tuple(str(i) for i in range(n))) for n in range(max_size + 1)]


def _function(draw: Draw, a: FinSet, b: FinSet) -> LabelMaps:
    if len(a) and not len(b):
        raise Reject("no function into the empty set")
    return ({x: draw.pick(b.elements) for x in a},)


def _bijection(draw: Draw, a: FinSet) -> LabelMaps:
    images = draw.pick(list(itertools.permutations(a.elements)))
    return (dict(zip(a.elements, images, strict=True)),)


class RelSampler(Sampler):
    exhaustive = True

    def objects(self) -> list[FinSet]:
        return _sets(self.max_size)

    def cell(self, draw: Draw, a: FinSet, b: FinSet) -> RelCell:
        pairs = [(x, y) for x in a for y in b]
        mask = draw.choose(1 << len(pairs))
        return RelCell(a, b, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))

    def scalar(self, draw: Draw) -> RelCell:
        point = unit_set()
        return self.cell(draw, point, point)

    def function(self, draw: Draw, a: FinSet, b: FinSet) -> LabelMaps:
        return _function(draw, a, b)

    def automorphism(self, draw: Draw, a: FinSet) -> LabelMaps:
        return _bijection(draw, a)


class SpanSampler(Sampler):
    max_apex = 3

    def objects(self) -> list[FinSet]:
        return _sets(self.max_size)

    def cell(self, draw: Draw, a: FinSet, b: FinSet) -> SpanCell:
        size = draw.choose(self.max_apex + 1) if len(a) and len(b) else 0
        apex = [f"s{i}" for i in range(size)]
        return SpanCell(
            a,
            b,
            FinSet(tuple(apex)),
            {s: draw.pick(a.elements) for s in apex},
            {s: draw.pick(b.elements) for s in apex},
        )

    def scalar(self, draw: Draw) -> SpanCell:
        return span_scalar(f"x{i}" for i in range(draw.choose(self.max_apex + 1)))

    def function(self, draw: Draw, a: FinSet, b: FinSet) -> LabelMaps:
        return _function(draw, a, b)

    def automorphism(self, draw: Draw, a: FinSet) -> LabelMaps:
        return _bijection(draw, a)


def small_categories() -> list[FinCat]:
    return [
        terminal_category(),
        cyclic_group(2),
        discrete_category(2),
        walking_arrow(),
        cyclic_group(3),
        symmetric_group(3),
    ]


class ProfSampler(Sampler):
    """Quotients of sums of representables b(-, x) × a(y, -) and a constant part.

    A representable is drawn at most twice, once when the hom tables are large;
    up to two merges of elements in one component follow, closed under the
    actions. Categories with more than ``3 * (max_size - 1)`` morphisms (at
    least 3) are not offered.
    """

    large_product = 16

    def objects(self) -> list[FinCat]:
        bound = max(1, self.max_size)
        arrows = 3 * max(1, self.max_size - 1)
        return [
            c
            for c in small_categories()
            if len(c.objects) <= bound and len(c.morphisms) <= arrows
        ]

    def cell(self, draw: Draw, a: FinCat, b: FinCat) -> Profunctor:
        big = len(a.morphisms) * len(b.morphisms) > self.large_product
        reps = [
            (draw.pick(b.objects), draw.pick(a.objects))
            for _ in range(draw.choose(2 if big else 3))
        ]
        constant = [join_label("k", str(i)) for i in range(draw.choose(2))]
        decode: dict[str, tuple[int, str, str]] = {}

        def component(b2: str, a2: str) -> list[str]:
            elements = list(constant)
            for i, (x, y) in enumerate(reps):
                for m in b.hom(b2, x):
                    for n in a.hom(y, a2):
                        label = join_label(f"r{i}", m, n)
                        decode[label] = (i, m, n)
                        elements.append(label)
            return elements

        def left(beta: str, a2: str, e: str) -> str:
            if e not in decode:
                return e
            i, m, n = decode[e]
            return join_label(f"r{i}", b.compose(m, beta), n)

        def right(alpha: str, b2: str, e: str) -> str:
            if e not in decode:
                return e
            i, m, n = decode[e]
            return join_label(f"r{i}", m, a.compose(alpha, n))

        free = tabulate(a, b, component, left, right)
        merges = []
        for _ in range(draw.choose(3)):
            pairs = [
                (key, x, y)
                for key, xs in free.sets.items()
                for x, y in itertools.combinations(xs, 2)
            ]
            if not pairs:
                break
            merges.append(draw.pick(pairs))
        return prof_quotient(free, merges) if merges else free

    def scalar(self, draw: Draw) -> Profunctor:
        return prof_scalar(f"x{i}" for i in range(draw.choose(3)))

    def function(self, draw: Draw, a: FinCat, b: FinCat) -> LabelMaps:
        """A constant functor, or the identity when a is b."""
        options = [
            (
                {x: target for x in a.objects},
                {m.label: b.identities[target] for m in a.morphisms},
            )
            for target in b.objects
        ]
        if a == b:
            options.append(
                ({x: x for x in a.objects}, {m.label: m.label for m in a.morphisms})
            )
        return draw.pick(options)

    def automorphism(self, draw: Draw, a: FinCat) -> LabelMaps:
        functor = draw.pick(automorphisms(a))
        return (dict(functor.obj_map), dict(functor.mor_map))


SAMPLERS: dict[str, type[Sampler]] = {
    "rel": RelSampler,
    "span": SpanSampler,
    "prof": ProfSampler,
}


class PoolSampler(Sampler):
    """Objects and cells taken from a loaded instance file."""

    exhaustive = True

    def __init__(
        self, base: Sampler, objects: Sequence[Obj], cells: Sequence[Cell]
    ) -> None:
        super().__init__(base.bicat, base.max_size)
        self.base = base
        self.pool_objects = list(objects)
        self.pool_cells = list(cells)

    def objects(self) -> list[Obj]:
        return self.pool_objects

    def cell(self, draw: Draw, a: Obj, b: Obj) -> Cell:
        options = [
            f
            for f in self.pool_cells
            if self.bicat.src(f) == a and self.bicat.tgt(f) == b
        ]
        if not options:
            raise Reject("no cell in the pool has these endpoints")
        return draw.pick(options)

    def scalar(self, draw: Draw) -> Cell:
        unit = self.bicat.unit()
        options = [
            f
            for f in self.pool_cells
            if self.bicat.src(f) == unit and self.bicat.tgt(f) == unit
        ]
        return draw.pick(options) if options else self.base.scalar(draw)

    def function(self, draw: Draw, a: Obj, b: Obj) -> LabelMaps:
        return self.base.function(draw, a, b)

    def automorphism(self, draw: Draw, a: Obj) -> LabelMaps:
        return self.base.automorphism(draw, a)


Builder = Callable[[Sampler, Draw], tuple]


def build(builder: Builder, sampler: Sampler, draw: Draw) -> tuple | None:
    try:
        return builder(sampler, draw)
    except Reject:
        return None


def case_strategy(builder: Builder, sampler: Sampler) -> st.SearchStrategy[DrawnCase]:
    """Cases drawn by Hypothesis; rejected draws are filtered out."""

    @st.composite
    def cases(draw: st.DrawFn) -> DrawnCase:
        source = DataDraw(draw)
        case = build(builder, sampler, source)
        assume(case is not None)
        return DrawnCase(tuple(source.sequence), case)

    return cases()


def enumerate_cases(
    builder: Builder, sampler: Sampler, limit: int
) -> list[DrawnCase] | None:
    """Every case in choice order, or None when there are more than ``limit``."""
    cases = []
    prefix: list[int] = []
    while True:
        draw = PrefixDraw(prefix)
        case = build(builder, sampler, draw)
        if case is not None:
            if len(cases) == limit:
                return None
            cases.append(DrawnCase(tuple(draw.sequence), case))
        choices = draw.choices
        i = len(choices) - 1
        while i >= 0 and choices[i][0] + 1 >= choices[i][1]:
            i -= 1
        if i < 0:
            return cases
        prefix = [value for value, _ in choices[:i]] + [choices[i][0] + 1]


def replay_case(builder: Builder, sampler: Sampler, choices: Sequence[int]) -> tuple:
    case = build(builder, sampler, PrefixDraw(choices))
    if case is None:
        raise Reject("recorded choices no longer build a case")
    return case
