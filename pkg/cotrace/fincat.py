"""Finite categories as explicit tables, functors, and derived categories."""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

from cotrace.common import UNIT, join_label


@dataclass(frozen=True)
class Validation:
    """Outcome of a table scan: ok, or the first violated law."""

    ok: bool
    law: str | None = None
    labels: tuple[str, ...] = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


VALID = Validation(True)


@dataclass(frozen=True)
class Morphism:
    """An arrow src → tgt, named by its label."""

    label: str
    src: str
    tgt: str


@dataclass(frozen=True)
class FinCat:
    """A finite category; ``comp[(g, f)]`` is g∘f, defined iff tgt(f) = src(g)."""

    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identities: Mapping[str, str]
    comp: Mapping[tuple[str, str], str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(sorted(self.objects)))
        object.__setattr__(
            self, "morphisms", tuple(sorted(self.morphisms, key=lambda m: m.label))
        )
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "comp", dict(self.comp))

    @cached_property
    def by_label(self) -> dict[str, Morphism]:
        return {m.label: m for m in self.morphisms}

    @cached_property
    def homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        table: dict[tuple[str, str], list[str]] = {
            (x, y): [] for x in self.objects for y in self.objects
        }
        for m in self.morphisms:
            table.setdefault((m.src, m.tgt), []).append(m.label)
        return {key: tuple(labels) for key, labels in table.items()}

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self.homs.get((x, y), ())

    def src(self, label: str) -> str:
        return self.by_label[label].src

    def tgt(self, label: str) -> str:
        return self.by_label[label].tgt

    def compose(self, g: str, f: str) -> str:
        """g∘f."""
        return self.comp[(g, f)]


@dataclass(frozen=True)
class FinFunctor:
    """Object and morphism maps; see validate_functor."""

    src: FinCat
    tgt: FinCat
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]


def validate_category(c: FinCat) -> Validation:
    """Scan the tables; report the first violated law with its labels."""
    if len(set(c.objects)) != len(c.objects):
        dup = next(x for x in c.objects if c.objects.count(x) > 1)
        return Validation(False, "duplicate-object", (dup,), "duplicate object")
    labels = [m.label for m in c.morphisms]
    if len(set(labels)) != len(labels):
        dup = next(x for x in labels if labels.count(x) > 1)
        return Validation(False, "duplicate-morphism", (dup,), "duplicate morphism")
    objects = set(c.objects)
    for m in c.morphisms:
        if m.src not in objects or m.tgt not in objects:
            return Validation(False, "endpoints", (m.label,), "unknown endpoint")
    for x in c.objects:
        ident = c.identities.get(x)
        if ident is None or ident not in c.by_label:
            return Validation(False, "identity", (x,), "missing identity")
        if c.src(ident) != x or c.tgt(ident) != x:
            return Validation(False, "identity", (x, ident), "identity not an endo")
    for g, f in c.comp:
        if g not in c.by_label or f not in c.by_label or c.src(g) != c.tgt(f):
            return Validation(
                False, "spurious-composite", (g, f), "composite of non-composable pair"
            )
    for f in c.morphisms:
        for g in c.morphisms:
            if g.src != f.tgt:
                continue
            h = c.comp.get((g.label, f.label))
            if h is None:
                return Validation(
                    False, "missing-composite", (g.label, f.label), "no composite"
                )
            if h not in c.by_label or c.src(h) != f.src or c.tgt(h) != g.tgt:
                return Validation(
                    False, "composite-endpoints", (g.label, f.label), "bad composite"
                )
    for f in c.morphisms:
        left = c.comp[(c.identities[f.tgt], f.label)]
        right = c.comp[(f.label, c.identities[f.src])]
        if left != f.label or right != f.label:
            return Validation(False, "identity-law", (f.label,), "identity law fails")
    for h in c.morphisms:
        for g in c.morphisms:
            if g.tgt != h.src:
                continue
            hg = c.comp[(h.label, g.label)]
            for f in c.morphisms:
                if f.tgt != g.src:
                    continue
                lhs = c.comp[(h.label, c.comp[(g.label, f.label)])]
                rhs = c.comp[(hg, f.label)]
                if lhs != rhs:
                    return Validation(
                        False,
                        "associativity",
                        (h.label, g.label, f.label),
                        f"{lhs} != {rhs}",
                    )
    return VALID


def validate_functor(functor: FinFunctor) -> Validation:
    """Check that a functor preserves endpoints, identities and composites."""
    a, b = functor.src, functor.tgt
    for x in a.objects:
        if functor.obj_map.get(x) not in b.objects:
            return Validation(False, "object-map", (x,), "object not mapped")
    for m in a.morphisms:
        image = functor.mor_map.get(m.label)
        if image not in b.by_label:
            return Validation(False, "morphism-map", (m.label,), "morphism not mapped")
        if b.src(image) != functor.obj_map[m.src] or b.tgt(image) != (
            functor.obj_map[m.tgt]
        ):
            return Validation(False, "endpoints", (m.label,), "endpoints not preserved")
    for x in a.objects:
        if functor.mor_map[a.identities[x]] != b.identities[functor.obj_map[x]]:
            return Validation(False, "identity", (x,), "identity not preserved")
    for (g, f), h in a.comp.items():
        if b.comp[(functor.mor_map[g], functor.mor_map[f])] != functor.mor_map[h]:
            return Validation(False, "composition", (g, f), "composite not preserved")
    return VALID


def opposite_category(c: FinCat) -> FinCat:
    """Same objects, every arrow reversed."""
    return FinCat(
        objects=c.objects,
        morphisms=tuple(Morphism(m.label, m.tgt, m.src) for m in c.morphisms),
        identities=c.identities,
        comp={(f, g): h for (g, f), h in c.comp.items()},
    )


def product_category(a: FinCat, b: FinCat) -> FinCat:
    """Componentwise product; labels are ``x∘y`` pairs."""
    morphisms = tuple(
        Morphism(
            join_label(m.label, n.label),
            join_label(m.src, n.src),
            join_label(m.tgt, n.tgt),
        )
        for m in a.morphisms
        for n in b.morphisms
    )
    comp = {
        (join_label(g1, g2), join_label(f1, f2)): join_label(h1, h2)
        for (g1, f1), h1 in a.comp.items()
        for (g2, f2), h2 in b.comp.items()
    }
    return FinCat(
        objects=tuple(join_label(x, y) for x in a.objects for y in b.objects),
        morphisms=morphisms,
        identities={
            join_label(x, y): join_label(a.identities[x], b.identities[y])
            for x in a.objects
            for y in b.objects
        },
        comp=comp,
    )


def identity_functor(c: FinCat) -> FinFunctor:
    """The identity functor on c."""
    return FinFunctor(
        src=c,
        tgt=c,
        obj_map={x: x for x in c.objects},
        mor_map={m.label: m.label for m in c.morphisms},
    )


def rename_category(c: FinCat, rename: Callable[[str], str]) -> FinCat:
    """Apply one injective renaming to object and morphism labels."""
    return FinCat(
        objects=tuple(rename(x) for x in c.objects),
        morphisms=tuple(
            Morphism(rename(m.label), rename(m.src), rename(m.tgt))
            for m in c.morphisms
        ),
        identities={rename(x): rename(i) for x, i in c.identities.items()},
        comp={(rename(g), rename(f)): rename(h) for (g, f), h in c.comp.items()},
    )


def terminal_category() -> FinCat:
    """One object, one morphism, both labelled ``*``."""
    return FinCat(
        objects=(UNIT,),
        morphisms=(Morphism(UNIT, UNIT, UNIT),),
        identities={UNIT: UNIT},
        comp={(UNIT, UNIT): UNIT},
    )


def discrete_category(objects: int | Iterable[str]) -> FinCat:
    """Only identities; ``idx`` is the identity on x."""
    labels = (
        [str(i) for i in range(objects)] if isinstance(objects, int) else list(objects)
    )
    return FinCat(
        objects=tuple(labels),
        morphisms=tuple(Morphism(f"id{x}", x, x) for x in labels),
        identities={x: f"id{x}" for x in labels},
        comp={(f"id{x}", f"id{x}"): f"id{x}" for x in labels},
    )


def walking_arrow() -> FinCat:
    """0 → 1 with one non-identity arrow ``u``."""
    return FinCat(
        objects=("0", "1"),
        morphisms=(
            Morphism("id0", "0", "0"),
            Morphism("id1", "1", "1"),
            Morphism("u", "0", "1"),
        ),
        identities={"0": "id0", "1": "id1"},
        comp={
            ("id0", "id0"): "id0",
            ("id1", "id1"): "id1",
            ("u", "id0"): "u",
            ("id1", "u"): "u",
        },
    )


def monoid_category(
    elements: Iterable[str], unit: str, mul: Callable[[str, str], str], obj: str = "o"
) -> FinCat:
    """One-object category of a finite monoid; comp(g, f) = mul(g, f)."""
    labels = list(elements)
    return FinCat(
        objects=(obj,),
        morphisms=tuple(Morphism(x, obj, obj) for x in labels),
        identities={obj: unit},
        comp={(g, f): mul(g, f) for g in labels for f in labels},
    )


def cyclic_group(n: int) -> FinCat:
    """Z/n as a one-object category with morphisms 0..n-1."""
    return monoid_category(
        [str(i) for i in range(n)], "0", lambda g, f: str((int(g) + int(f)) % n)
    )


def symmetric_group(n: int) -> FinCat:
    """Permutations of 0..n-1 written as strings; (g∘f)(i) = g(f(i))."""
    perms = ["".join(map(str, p)) for p in itertools.permutations(range(n))]

    def mul(g: str, f: str) -> str:
        return "".join(g[int(f[i])] for i in range(n))

    return monoid_category(perms, "".join(map(str, range(n))), mul)


def automorphisms(c: FinCat, *, limit: int = 5040) -> list[FinFunctor]:
    """Automorphisms of c, identity first, among the first ``limit`` candidates.

    Candidates permute the objects and, hom-set by hom-set, the morphisms.
    """
    found = []
    tried = 0
    keys = list(c.homs)
    for images in itertools.permutations(c.objects):
        obj_map = dict(zip(c.objects, images, strict=True))
        targets = [c.hom(obj_map[x], obj_map[y]) for x, y in keys]
        if any(len(c.hom(*key)) != len(t) for key, t in zip(keys, targets)):
            continue
        for picked in itertools.product(*map(itertools.permutations, targets)):
            tried += 1
            if tried > limit:
                return found
            mor_map = {
                m: n
                for key, chosen in zip(keys, picked, strict=True)
                for m, n in zip(c.hom(*key), chosen, strict=True)
            }
            functor = FinFunctor(c, c, obj_map, mor_map)
            if validate_functor(functor):
                found.append(functor)
    return found
