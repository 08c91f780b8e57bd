"""The bicategory of FinSet-valued profunctors between finite categories.

A profunctor P: 𝒜 ⇸ ℬ is a functor ℬ^op × 𝒜 → FinSet stored as tables:
``sets[(b, a)]`` is P(b, a), ``lact[(beta, b, a)]`` maps P(b, a) → P(b', a)
for beta: b' → b, ``ract[(alpha, b, a)]`` maps P(b, a) → P(b, a') for
alpha: a → a'. Composition is a coend, computed as a union-find quotient;
lifts are sets of natural families found by :mod:`cotrace.search`.
"""

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
from cotrace.fincat import (
    VALID,
    FinCat,
    FinFunctor,
    Validation,
    opposite_category,
    product_category,
    rename_category,
    terminal_category,
)
from cotrace.rel import FinSet
from cotrace.search import UnionFind, natural_maps

logger = logging.getLogger(__name__)

Table = Mapping[str, str]


@dataclass(frozen=True)
class Profunctor:
    src: FinCat
    tgt: FinCat
    sets: Mapping[tuple[str, str], tuple[str, ...]]
    lact: Mapping[tuple[str, str, str], Table]
    ract: Mapping[tuple[str, str, str], Table]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "sets", {key: tuple(sorted(xs)) for key, xs in self.sets.items()}
        )
        object.__setattr__(self, "lact", {k: dict(m) for k, m in self.lact.items()})
        object.__setattr__(self, "ract", {k: dict(m) for k, m in self.ract.items()})

    def at(self, b: str, a: str) -> tuple[str, ...]:
        return self.sets.get((b, a), ())

    def size(self) -> int:
        return sum(len(xs) for xs in self.sets.values())


@dataclass(frozen=True)
class ProfTwoCell:
    """A natural family of functions P(b, a) → Q(b, a)."""

    src_cell: Profunctor
    tgt_cell: Profunctor
    maps: Mapping[tuple[str, str], Table]

    def __post_init__(self) -> None:
        _same_endpoints(self.src_cell, self.tgt_cell)
        object.__setattr__(self, "maps", {k: dict(m) for k, m in self.maps.items()})


@dataclass(frozen=True)
class QuotientSet:
    """Representatives of a quotient; ``class_of`` sends raw labels to them."""

    carrier: FinSet
    class_of: Mapping[str, str]
    parts: Mapping[str, tuple[str, ...]]

    def __len__(self) -> int:
        return len(self.carrier)


@dataclass(frozen=True)
class Composite:
    """A coend composite together with its quotient data per component."""

    profunctor: Profunctor
    components: Mapping[tuple[str, str], QuotientSet]

    def klass(self, c: str, a: str, y: str, b: str, x: str) -> str:
        return self.components[(c, a)].class_of[join_label(y, b, x)]

    def parts(self, c: str, a: str, rep: str) -> tuple[str, ...]:
        return self.components[(c, a)].parts[rep]


def _same_endpoints(p: Profunctor, q: Profunctor) -> None:
    if p.src != q.src or p.tgt != q.tgt:
        raise EndpointMismatch("profunctors must share source and target")


def _require_endo(p: Profunctor, name: str) -> None:
    if p.src != p.tgt:
        raise EndpointMismatch(f"{name}: profunctor is not an endo-profunctor")


def _is_identity(c: FinCat, label: str) -> bool:
    return c.identities[c.src(label)] == label


def tabulate(
    src: FinCat,
    tgt: FinCat,
    component: Callable[[str, str], Iterable[str]],
    left: Callable[[str, str, str], str],
    right: Callable[[str, str, str], str],
) -> Profunctor:
    """Build the tables from callbacks ``left(beta, a, x)``, ``right(alpha, b, x)``."""
    sets = {(b, a): tuple(component(b, a)) for b in tgt.objects for a in src.objects}
    lact = {
        (m.label, m.tgt, a): {x: left(m.label, a, x) for x in sets[(m.tgt, a)]}
        for m in tgt.morphisms
        for a in src.objects
    }
    ract = {
        (m.label, b, m.src): {x: right(m.label, b, x) for x in sets[(b, m.src)]}
        for m in src.morphisms
        for b in tgt.objects
    }
    return Profunctor(src, tgt, sets, lact, ract)


def validate_profunctor(p: Profunctor) -> Validation:
    """Check the tables are complete, functorial in each variable, and commute."""
    a_cat, b_cat = p.src, p.tgt
    for b in b_cat.objects:
        for a in a_cat.objects:
            xs = p.sets.get((b, a))
            if xs is None:
                return Validation(False, "missing-component", (b, a), "no set")
            if len(set(xs)) != len(xs):
                return Validation(False, "duplicate-element", (b, a), "duplicates")
    for m in b_cat.morphisms:
        for a in a_cat.objects:
            table = p.lact.get((m.label, m.tgt, a))
            if table is None or set(table) != set(p.at(m.tgt, a)):
                return Validation(False, "left-action", (m.label, a), "not total")
            if any(y not in p.at(m.src, a) for y in table.values()):
                return Validation(False, "left-action", (m.label, a), "bad image")
    for m in a_cat.morphisms:
        for b in b_cat.objects:
            table = p.ract.get((m.label, b, m.src))
            if table is None or set(table) != set(p.at(b, m.src)):
                return Validation(False, "right-action", (m.label, b), "not total")
            if any(y not in p.at(b, m.tgt) for y in table.values()):
                return Validation(False, "right-action", (m.label, b), "bad image")
    for b, ident in b_cat.identities.items():
        for a in a_cat.objects:
            if any(x != y for x, y in p.lact[(ident, b, a)].items()):
                return Validation(False, "left-identity", (ident, a), "not identity")
    for a, ident in a_cat.identities.items():
        for b in b_cat.objects:
            if any(x != y for x, y in p.ract[(ident, b, a)].items()):
                return Validation(False, "right-identity", (ident, b), "not identity")
    for (g, f), h in b_cat.comp.items():
        for a in a_cat.objects:
            outer = p.lact[(h, b_cat.tgt(g), a)]
            first = p.lact[(g, b_cat.tgt(g), a)]
            second = p.lact[(f, b_cat.tgt(f), a)]
            if any(second[first[x]] != y for x, y in outer.items()):
                return Validation(False, "left-composition", (g, f), "not functorial")
    for (g, f), h in a_cat.comp.items():
        for b in b_cat.objects:
            outer = p.ract[(h, b, a_cat.src(f))]
            first = p.ract[(f, b, a_cat.src(f))]
            second = p.ract[(g, b, a_cat.src(g))]
            if any(second[first[x]] != y for x, y in outer.items()):
                return Validation(False, "right-composition", (g, f), "not functorial")
    for beta in b_cat.morphisms:
        for alpha in a_cat.morphisms:
            left = p.lact[(beta.label, beta.tgt, alpha.src)]
            right = p.ract[(alpha.label, beta.tgt, alpha.src)]
            left2 = p.lact[(beta.label, beta.tgt, alpha.tgt)]
            right2 = p.ract[(alpha.label, beta.src, alpha.src)]
            for x in p.at(beta.tgt, alpha.src):
                if right2[left[x]] != left2[right[x]]:
                    return Validation(
                        False,
                        "actions-commute",
                        (beta.label, alpha.label),
                        f"disagree at {x}",
                    )
    return VALID


def hom_profunctor(c: FinCat) -> Profunctor:
    """Hom(b, a) = c(b, a); acting by pre- and postcomposition."""
    return tabulate(
        c,
        c,
        c.hom,
        lambda beta, a, m: c.compose(m, beta),
        lambda alpha, b, m: c.compose(alpha, m),
    )


def functor_profunctor(functor: FinFunctor) -> Profunctor:
    """F_*: 𝒜 ⇸ ℬ with F_*(b, a) = ℬ(b, Fa)."""
    b_cat, obj, mor = functor.tgt, functor.obj_map, functor.mor_map
    return tabulate(
        functor.src,
        b_cat,
        lambda b, a: b_cat.hom(b, obj[a]),
        lambda beta, a, m: b_cat.compose(m, beta),
        lambda alpha, b, m: b_cat.compose(mor[alpha], m),
    )


def functor_coprofunctor(functor: FinFunctor) -> Profunctor:
    """F^*: ℬ ⇸ 𝒜 with F^*(a, b) = ℬ(Fa, b), the right adjoint of F_*."""
    b_cat, obj, mor = functor.tgt, functor.obj_map, functor.mor_map
    return tabulate(
        b_cat,
        functor.src,
        lambda a, b: b_cat.hom(obj[a], b),
        lambda alpha, b, m: b_cat.compose(m, mor[alpha]),
        lambda beta, a, m: b_cat.compose(beta, m),
    )


def prof_scalar(elements: Iterable[str]) -> Profunctor:
    """A finite set as a profunctor 1 ⇸ 1."""
    point = terminal_category()
    xs = tuple(elements)
    ident = {x: x for x in xs}
    return Profunctor(
        point,
        point,
        {(UNIT, UNIT): xs},
        {(UNIT, UNIT, UNIT): ident},
        {(UNIT, UNIT, UNIT): ident},
    )


def _quotient(
    raw: Mapping[str, tuple[str, ...]], pairs: Iterable[tuple[str, str]]
) -> QuotientSet:
    classes = UnionFind(raw)
    for left, right in pairs:
        classes.union(left, right)
    class_of = classes.classes()
    reps = sorted(set(class_of.values()))
    return QuotientSet(FinSet(tuple(reps)), class_of, {r: raw[r] for r in reps})


def prof_composite(p: Profunctor, q: Profunctor) -> Composite:
    """p then q, with the coend quotient of every component kept."""
    if p.tgt != q.src:
        raise EndpointMismatch("prof_compose: p.tgt != q.src")
    a_cat, b_cat, c_cat = p.src, p.tgt, q.tgt
    components = {}
    for c in c_cat.objects:
        for a in a_cat.objects:
            raw = {
                join_label(y, b, x): (y, b, x)
                for b in b_cat.objects
                for y in q.at(c, b)
                for x in p.at(b, a)
            }
            pairs = []
            for m in b_cat.morphisms:
                if _is_identity(b_cat, m.label):
                    continue
                forward = q.ract[(m.label, c, m.src)]
                backward = p.lact[(m.label, m.tgt, a)]
                for y in q.at(c, m.src):
                    for x in p.at(m.tgt, a):
                        pairs.append(
                            (
                                join_label(forward[y], m.tgt, x),
                                join_label(y, m.src, backward[x]),
                            )
                        )
            components[(c, a)] = _quotient(raw, pairs)
    sets = {key: quotient.carrier.elements for key, quotient in components.items()}
    lact = {}
    for m in c_cat.morphisms:
        for a in a_cat.objects:
            table = {}
            for rep, (y, b, x) in components[(m.tgt, a)].parts.items():
                y2 = q.lact[(m.label, m.tgt, b)][y]
                table[rep] = components[(m.src, a)].class_of[join_label(y2, b, x)]
            lact[(m.label, m.tgt, a)] = table
    ract = {}
    for m in a_cat.morphisms:
        for c in c_cat.objects:
            table = {}
            for rep, (y, b, x) in components[(c, m.src)].parts.items():
                x2 = p.ract[(m.label, b, m.src)][x]
                table[rep] = components[(c, m.tgt)].class_of[join_label(y, b, x2)]
            ract[(m.label, c, m.src)] = table
    logger.debug(
        "prof_compose: %d raw elements, %d classes",
        sum(len(q.class_of) for q in components.values()),
        sum(len(xs) for xs in sets.values()),
    )
    return Composite(Profunctor(a_cat, c_cat, sets, lact, ract), components)


def prof_compose(p: Profunctor, q: Profunctor) -> Profunctor:
    """Coend composite (q ⊗_ℬ p)(c, a) of p: 𝒜 ⇸ ℬ and q: ℬ ⇸ 𝒞."""
    return prof_composite(p, q).profunctor


def coend_diag(p: Profunctor) -> QuotientSet:
    """⊔_A P(A, A) modulo ract(m)(z) ∼ lact(m)(z) for z in P(A', A), m: A → A'."""
    _require_endo(p, "coend_diag")
    c = p.src
    raw = {
        join_label(obj, x): (obj, x) for obj in c.objects for x in p.at(obj, obj)
    }
    pairs = []
    for m in c.morphisms:
        if _is_identity(c, m.label):
            continue
        right = p.ract[(m.label, m.tgt, m.src)]
        left = p.lact[(m.label, m.tgt, m.src)]
        for z in p.at(m.tgt, m.src):
            pairs.append((join_label(m.tgt, right[z]), join_label(m.src, left[z])))
    return _quotient(raw, pairs)


def end_diag(p: Profunctor, *, cap: int | None = None) -> FinSet:
    """Families (x_A in P(A, A)) with ract(m)(x_A) = lact(m)(x_A') for m: A → A'."""
    _require_endo(p, "end_diag")
    c = p.src
    cap = DEFAULT_LIMITS.enumeration_cap if cap is None else cap
    options = [p.at(x, x) for x in c.objects]
    total = math.prod(len(o) for o in options)
    if total > cap:
        raise BudgetExceeded(f"end_diag would scan {total} families (cap {cap})")
    checks = [
        (m.src, m.tgt, p.ract[(m.label, m.src, m.src)], p.lact[(m.label, m.tgt, m.tgt)])
        for m in c.morphisms
        if not _is_identity(c, m.label)
    ]
    families = []
    for choice in itertools.product(*options):
        family = dict(zip(c.objects, choice, strict=True))
        if all(right[family[s]] == left[family[t]] for s, t, right, left in checks):
            families.append(graph_label(family))
    return FinSet(tuple(families))


def _naturality_arrows(p: Profunctor, q: Profunctor) -> list:
    arrows = []
    for (beta, b, a), table in p.lact.items():
        if not _is_identity(p.tgt, beta):
            arrows.append(((b, a), (p.tgt.src(beta), a), table, q.lact[(beta, b, a)]))
    for (alpha, b, a), table in p.ract.items():
        if not _is_identity(p.src, alpha):
            arrows.append(((b, a), (b, p.src.tgt(alpha)), table, q.ract[(alpha, b, a)]))
    return arrows


def is_natural(cell: ProfTwoCell) -> bool:
    p, q = cell.src_cell, cell.tgt_cell
    for source, target, src_map, tgt_map in _naturality_arrows(p, q):
        phi, psi = cell.maps[source], cell.maps[target]
        if any(psi[src_map[x]] != tgt_map[phi[x]] for x in phi):
            return False
    return True


def prof_two_cells(
    p: Profunctor, q: Profunctor, *, cap: int | None = None
) -> list[ProfTwoCell]:
    """Every natural transformation p ⇒ q, in canonical order."""
    _same_endpoints(p, q)
    cap = DEFAULT_LIMITS.enumeration_cap if cap is None else cap
    families = natural_maps(p.sets, q.sets, _naturality_arrows(p, q), budget=cap)
    return [ProfTwoCell(p, q, family) for family in families]


def prof_has_two_cell(p: Profunctor, q: Profunctor, *, cap: int | None = None) -> bool:
    """True iff some natural transformation p ⇒ q exists; stops at the first."""
    _same_endpoints(p, q)
    cap = DEFAULT_LIMITS.enumeration_cap if cap is None else cap
    families = natural_maps(p.sets, q.sets, _naturality_arrows(p, q), budget=cap)
    return next(families, None) is not None


def prof_quotient(
    p: Profunctor, identify: Iterable[tuple[tuple[str, str], str, str]]
) -> Profunctor:
    """The least quotient of p that merges each ``(component, x, y)`` pair.

    Merging is closed under both actions, so the result is again a profunctor
    and the projection p ⇒ quotient is natural.
    """
    keys = {
        join_label(b, a, x): (b, a, x) for (b, a), xs in p.sets.items() for x in xs
    }
    classes = UnionFind(keys)
    for (b, a), x, y in identify:
        if x not in p.at(b, a) or y not in p.at(b, a):
            raise InputError(f"cannot merge {x} and {y} outside P({b}, {a})")
        classes.union(join_label(b, a, x), join_label(b, a, y))
    moves = _naturality_arrows(p, p)
    changed = True
    while changed:
        changed = False
        for (b, a), (b2, a2), table, _ in moves:
            image: dict[str, str] = {}
            for x, y in table.items():
                root = classes.find(join_label(b, a, x))
                moved = join_label(b2, a2, y)
                if root in image and classes.find(image[root]) != classes.find(moved):
                    classes.union(image[root], moved)
                    changed = True
                image.setdefault(root, moved)
    class_of = classes.classes()

    def rep(b: str, a: str, x: str) -> str:
        return keys[class_of[join_label(b, a, x)]][2]

    sets = {
        (b, a): tuple(sorted({rep(b, a, x) for x in xs}))
        for (b, a), xs in p.sets.items()
    }
    lact = {
        (beta, b, a): {
            rep(b, a, x): rep(p.tgt.src(beta), a, y) for x, y in table.items()
        }
        for (beta, b, a), table in p.lact.items()
    }
    ract = {
        (alpha, b, a): {
            rep(b, a, x): rep(b, p.src.tgt(alpha), y) for x, y in table.items()
        }
        for (alpha, b, a), table in p.ract.items()
    }
    merged = p.size() - sum(len(xs) for xs in sets.values())
    logger.debug("prof_quotient: merged %d elements", merged)
    return Profunctor(p.src, p.tgt, sets, lact, ract)


def prof_find_iso(
    p: Profunctor, q: Profunctor, *, budget: int | None = None
) -> ProfTwoCell | None:
    """A natural bijection p ⇒ q, or None once the search space is exhausted."""
    _same_endpoints(p, q)
    if any(len(xs) != len(q.at(*key)) for key, xs in p.sets.items()):
        return None
    budget = DEFAULT_LIMITS.iso_budget if budget is None else budget
    found = next(
        natural_maps(
            p.sets, q.sets, _naturality_arrows(p, q), injective=True, budget=budget
        ),
        None,
    )
    return None if found is None else ProfTwoCell(p, q, found)


def _family_label(family: Mapping[str, Table]) -> str:
    return graph_label(
        {join_label(c, x): y for c, table in family.items() for x, y in table.items()}
    )


def _lift_families(
    p: Profunctor, q: Profunctor, cap: int
) -> dict[tuple[str, str], dict[str, dict[str, dict[str, str]]]]:
    if p.tgt != q.tgt:
        raise EndpointMismatch("prof_lift: p.tgt != q.tgt")
    c_cat = p.tgt
    result = {}
    for b in p.src.objects:
        for a in q.src.objects:
            arrows = [
                (m.tgt, m.src, p.lact[(m.label, m.tgt, b)], q.lact[(m.label, m.tgt, a)])
                for m in c_cat.morphisms
                if not _is_identity(c_cat, m.label)
            ]
            families = natural_maps(
                {c: p.at(c, b) for c in c_cat.objects},
                {c: q.at(c, a) for c in c_cat.objects},
                arrows,
                budget=cap,
            )
            result[(b, a)] = {_family_label(fam): fam for fam in families}
    return result


def prof_lift(p: Profunctor, q: Profunctor, *, cap: int | None = None) -> Profunctor:
    """Right lift p ⊸ q for p: ℬ ⇸ 𝒞, q: 𝒜 ⇸ 𝒞.

    (p ⊸ q)(b, a) is the set of families phi_c: P(c, b) → Q(c, a) natural
    in c; ℬ acts through p, 𝒜 through q.
    """
    cap = DEFAULT_LIMITS.enumeration_cap if cap is None else cap
    families = _lift_families(p, q, cap)
    c_cat = p.tgt
    sets = {key: tuple(fams) for key, fams in families.items()}
    lact = {}
    for beta in p.src.morphisms:
        for a in q.src.objects:
            table = {}
            for label, fam in families[(beta.tgt, a)].items():
                moved = {
                    c: {
                        x: fam[c][p.ract[(beta.label, c, beta.src)][x]]
                        for x in p.at(c, beta.src)
                    }
                    for c in c_cat.objects
                }
                table[label] = _family_label(moved)
            lact[(beta.label, beta.tgt, a)] = table
    ract = {}
    for alpha in q.src.morphisms:
        for b in p.src.objects:
            table = {}
            for label, fam in families[(b, alpha.src)].items():
                moved = {
                    c: {
                        x: q.ract[(alpha.label, c, alpha.src)][y]
                        for x, y in fam[c].items()
                    }
                    for c in c_cat.objects
                }
                table[label] = _family_label(moved)
            ract[(alpha.label, b, alpha.src)] = table
    return Profunctor(q.src, p.src, sets, lact, ract)


def _tensor_tables(
    left: Mapping[tuple[str, str, str], Table],
    right: Mapping[tuple[str, str, str], Table],
) -> dict[tuple[str, str, str], dict[str, str]]:
    return {
        (join_label(m, n), join_label(b, b2), join_label(a, a2)): {
            join_label(x, y): join_label(t1[x], t2[y]) for x in t1 for y in t2
        }
        for (m, b, a), t1 in left.items()
        for (n, b2, a2), t2 in right.items()
    }


def prof_tensor(p: Profunctor, q: Profunctor) -> Profunctor:
    """P × Q between product categories."""
    sets = {
        (join_label(b, b2), join_label(a, a2)): tuple(
            join_label(x, y) for x in xs for y in ys
        )
        for (b, a), xs in p.sets.items()
        for (b2, a2), ys in q.sets.items()
    }
    return Profunctor(
        product_category(p.src, q.src),
        product_category(p.tgt, q.tgt),
        sets,
        _tensor_tables(p.lact, q.lact),
        _tensor_tables(p.ract, q.ract),
    )


def prof_transpose(p: Profunctor) -> Profunctor:
    """P*: ℬ^op ⇸ 𝒜^op with P*(a, b) = P(b, a)."""
    return Profunctor(
        opposite_category(p.tgt),
        opposite_category(p.src),
        {(a, b): xs for (b, a), xs in p.sets.items()},
        {(m, a, b): t for (m, b, a), t in p.ract.items()},
        {(m, a, b): t for (m, b, a), t in p.lact.items()},
    )


def prof_coev(c: FinCat) -> Profunctor:
    """1 ⇸ 𝒜 × 𝒜^op with component (x, y) = 𝒜(x, y)."""
    target = product_category(c, opposite_category(c))
    sets = {(join_label(x, y), UNIT): c.hom(x, y) for x in c.objects for y in c.objects}
    lact = {}
    for u in c.morphisms:
        for v in c.morphisms:
            table = {
                m: c.compose(v.label, c.compose(m, u.label))
                for m in c.hom(u.tgt, v.src)
            }
            lact[(join_label(u.label, v.label), join_label(u.tgt, v.src), UNIT)] = table
    ract = {(UNIT, key[0], UNIT): {m: m for m in xs} for key, xs in sets.items()}
    return Profunctor(terminal_category(), target, sets, lact, ract)


def prof_ev(c: FinCat) -> Profunctor:
    """𝒜^op × 𝒜 ⇸ 1 with component (y, x) = 𝒜(y, x)."""
    source = product_category(opposite_category(c), c)
    sets = {(UNIT, join_label(y, x)): c.hom(y, x) for y in c.objects for x in c.objects}
    ract = {}
    for u in c.morphisms:
        for v in c.morphisms:
            table = {
                m: c.compose(v.label, c.compose(m, u.label))
                for m in c.hom(u.tgt, v.src)
            }
            ract[(join_label(u.label, v.label), UNIT, join_label(u.tgt, v.src))] = table
    lact = {(UNIT, UNIT, key[1]): {m: m for m in xs} for key, xs in sets.items()}
    return Profunctor(source, terminal_category(), sets, lact, ract)


def _functor(src: FinCat, tgt: FinCat, maps: tuple[Table, ...]) -> FinFunctor:
    return FinFunctor(src, tgt, maps[0], maps[1])


class ProfBicategory(Bicategory[FinCat, Profunctor, ProfTwoCell]):
    """Capability table of FinSet-Prof."""

    tag = "prof"

    def unit(self) -> FinCat:
        return terminal_category()

    def tensor(self, a: FinCat, b: FinCat) -> FinCat:
        return product_category(a, b)

    def dual(self, a: FinCat) -> FinCat:
        return opposite_category(a)

    def carriers(self, a: FinCat) -> tuple[tuple[str, ...], ...]:
        return (a.objects, tuple(m.label for m in a.morphisms))

    def rename(self, a: FinCat, rename: Callable[[str], str]) -> FinCat:
        return rename_category(a, rename)

    def src(self, f: Profunctor) -> FinCat:
        return f.src

    def tgt(self, f: Profunctor) -> FinCat:
        return f.tgt

    def identity(self, a: FinCat) -> Profunctor:
        return hom_profunctor(a)

    def compose(self, f: Profunctor, g: Profunctor) -> Profunctor:
        return prof_compose(f, g)

    def tensor_cells(self, f: Profunctor, g: Profunctor) -> Profunctor:
        return prof_tensor(f, g)

    def dual_cell(self, f: Profunctor) -> Profunctor:
        return prof_transpose(f)

    def graph_cell(
        self, src: FinCat, tgt: FinCat, maps: tuple[Table, ...]
    ) -> Profunctor:
        return functor_profunctor(_functor(src, tgt, maps))

    def cograph_cell(
        self, src: FinCat, tgt: FinCat, maps: tuple[Table, ...]
    ) -> Profunctor:
        return functor_coprofunctor(_functor(src, tgt, maps))

    def coev(self, a: FinCat) -> Profunctor:
        return prof_coev(a)

    def ev(self, a: FinCat) -> Profunctor:
        return prof_ev(a)

    def lift(self, f: Profunctor, g: Profunctor) -> Profunctor:
        return prof_lift(f, g, cap=self.limits.enumeration_cap)

    def evaluation(self, f: Profunctor, g: Profunctor) -> ProfTwoCell:
        families = _lift_families(f, g, self.limits.enumeration_cap)
        composite = prof_composite(self.lift(f, g), f)
        maps = {}
        for (c, a), quotient in composite.components.items():
            maps[(c, a)] = {
                rep: families[(b, a)][label][c][y]
                for rep, (y, b, label) in quotient.parts.items()
            }
        return ProfTwoCell(composite.profunctor, g, maps)

    def two_cells(self, f: Profunctor, g: Profunctor) -> list[ProfTwoCell]:
        return prof_two_cells(f, g, cap=self.limits.enumeration_cap)

    def identity_two_cell(self, f: Profunctor) -> ProfTwoCell:
        return ProfTwoCell(f, f, {k: {x: x for x in xs} for k, xs in f.sets.items()})

    def vcompose(self, alpha: ProfTwoCell, beta: ProfTwoCell) -> ProfTwoCell:
        if alpha.tgt_cell != beta.src_cell:
            raise EndpointMismatch("vcompose: 2-cells do not meet")
        return ProfTwoCell(
            alpha.src_cell,
            beta.tgt_cell,
            {
                key: {x: beta.maps[key][y] for x, y in table.items()}
                for key, table in alpha.maps.items()
            },
        )

    def _horizontal_map(
        self,
        source: Composite,
        target: Composite,
        alpha: ProfTwoCell,
        beta: ProfTwoCell,
    ) -> ProfTwoCell:
        maps = {}
        for (c, a), quotient in source.components.items():
            maps[(c, a)] = {
                rep: target.klass(
                    c, a, beta.maps[(c, b)][y], b, alpha.maps[(b, a)][x]
                )
                for rep, (y, b, x) in quotient.parts.items()
            }
        return ProfTwoCell(source.profunctor, target.profunctor, maps)

    def horizontal(self, alpha: ProfTwoCell, beta: ProfTwoCell) -> ProfTwoCell:
        source = prof_composite(alpha.src_cell, beta.src_cell)
        target = prof_composite(alpha.tgt_cell, beta.tgt_cell)
        return self._horizontal_map(source, target, alpha, beta)

    def whiskering(
        self, h: Profunctor, h2: Profunctor, f: Profunctor
    ) -> Callable[[ProfTwoCell], ProfTwoCell]:
        source, target = prof_composite(h, f), prof_composite(h2, f)
        ident = self.identity_two_cell(f)
        return lambda alpha: self._horizontal_map(source, target, alpha, ident)

    def tensor_two_cells(self, alpha: ProfTwoCell, beta: ProfTwoCell) -> ProfTwoCell:
        maps = {
            (join_label(b, b2), join_label(a, a2)): {
                join_label(x, y): join_label(t1[x], t2[y]) for x in t1 for y in t2
            }
            for (b, a), t1 in alpha.maps.items()
            for (b2, a2), t2 in beta.maps.items()
        }
        return ProfTwoCell(
            prof_tensor(alpha.src_cell, beta.src_cell),
            prof_tensor(alpha.tgt_cell, beta.tgt_cell),
            maps,
        )

    def two_cell_key(self, cell: ProfTwoCell) -> tuple:
        return tuple(
            sorted(
                (key, tuple(sorted(table.items()))) for key, table in cell.maps.items()
            )
        )

    def find_iso(self, f: Profunctor, g: Profunctor) -> ProfTwoCell | None:
        return prof_find_iso(f, g, budget=self.limits.iso_budget)

    def has_two_cell(self, f: Profunctor, g: Profunctor) -> bool:
        return prof_has_two_cell(f, g, cap=self.limits.enumeration_cap)

    def unitor_cell(self, f: Profunctor) -> ProfTwoCell:
        composite = prof_composite(hom_profunctor(f.src), f)
        maps = {
            (c, a): {
                rep: f.ract[(x, c, b)][y]
                for rep, (y, b, x) in quotient.parts.items()
            }
            for (c, a), quotient in composite.components.items()
        }
        return ProfTwoCell(composite.profunctor, f, maps)

    def unitor_cell_inv(self, f: Profunctor) -> ProfTwoCell:
        composite = prof_composite(hom_profunctor(f.src), f)
        maps = {
            (c, a): {y: composite.klass(c, a, y, a, f.src.identities[a]) for y in xs}
            for (c, a), xs in f.sets.items()
        }
        return ProfTwoCell(f, composite.profunctor, maps)

    def associator_cell(
        self, f: Profunctor, g: Profunctor, h: Profunctor
    ) -> ProfTwoCell:
        fg, gh = prof_composite(f, g), prof_composite(g, h)
        left = prof_composite(fg.profunctor, h)
        right = prof_composite(f, gh.profunctor)
        maps = {}
        for (d, a), quotient in left.components.items():
            table = {}
            for rep, (z, c, w) in quotient.parts.items():
                y, b, x = fg.parts(c, a, w)
                table[rep] = right.klass(d, a, gh.klass(d, b, z, c, y), b, x)
            maps[(d, a)] = table
        return ProfTwoCell(left.profunctor, right.profunctor, maps)

    def scalar_elements(self, s: Profunctor) -> tuple[str, ...]:
        return s.at(UNIT, UNIT)

    def apply_scalar_cell(self, cell: ProfTwoCell, element: str) -> str:
        return cell.maps[(UNIT, UNIT)][element]

    def scalar_point(self, s: Profunctor, element: str) -> ProfTwoCell:
        point = hom_profunctor(terminal_category())
        return ProfTwoCell(point, s, {(UNIT, UNIT): {UNIT: element}})

    def lift_element_of(
        self, p: Profunctor, q: Profunctor, cell: ProfTwoCell
    ) -> str:
        return _family_label({c: table for (c, _), table in cell.maps.items()})

    def scalar_swap(self, s: Profunctor, t: Profunctor) -> ProfTwoCell:
        source, target = prof_composite(s, t), prof_composite(t, s)
        table = {
            rep: target.klass(UNIT, UNIT, x, b, y)
            for rep, (y, b, x) in source.components[(UNIT, UNIT)].parts.items()
        }
        return ProfTwoCell(source.profunctor, target.profunctor, {(UNIT, UNIT): table})

    def trace_closed(self, f: Profunctor) -> Profunctor:
        return prof_scalar(coend_diag(f).carrier)

    def cotrace_closed(self, f: Profunctor) -> Profunctor:
        return prof_scalar(end_diag(f, cap=self.limits.enumeration_cap))


def prof_capabilities(limits: Limits = DEFAULT_LIMITS) -> ProfBicategory:
    """The Prof instance of the capability interface."""
    return ProfBicategory(limits)
