"""Finite searches: natural families of functions and union-find quotients."""

from __future__ import annotations

import logging
from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from typing import Generic, TypeVar

from cotrace.common import BudgetExceeded

logger = logging.getLogger(__name__)

K = TypeVar("K", bound=Hashable)
T = TypeVar("T", bound=Hashable)

# (source key, target key, map on source sets, map on target sets)
Arrow = tuple[K, K, Mapping[str, str], Mapping[str, str]]
Family = dict[K, dict[str, str]]


class UnionFind(Generic[T]):
    """Disjoint sets with path compression; the root of a class is its least item."""

    def __init__(self, items: Iterable[T] = ()) -> None:
        self._parent: dict[T, T] = {}
        for item in items:
            self.add(item)

    def add(self, item: T) -> None:
        self._parent.setdefault(item, item)

    def find(self, item: T) -> T:
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, a: T, b: T) -> T:
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return root_a
        low, high = sorted((root_a, root_b))
        self._parent[high] = low
        return low

    def classes(self) -> dict[T, T]:
        return {item: self.find(item) for item in self._parent}


class _FamilySearch(Generic[K]):
    def __init__(
        self,
        src_sets: Mapping[K, Sequence[str]],
        tgt_sets: Mapping[K, Sequence[str]],
        arrows: Iterable[Arrow],
        injective: bool,
        budget: int,
    ) -> None:
        self.src_sets = src_sets
        self.tgt_sets = tgt_sets
        self.injective = injective
        self.budget = budget
        self.nodes = 0
        self.outgoing: dict[K, list[tuple[K, Mapping[str, str], Mapping[str, str]]]]
        self.outgoing = {key: [] for key in src_sets}
        for source, target, src_map, tgt_map in arrows:
            self.outgoing[source].append((target, src_map, tgt_map))
        self.variables = [(key, x) for key in sorted(src_sets) for x in src_sets[key]]
        self.assignment: dict[tuple[K, str], str] = {}
        self.used: dict[K, set[str]] = {key: set() for key in src_sets}

    def _assign(self, var: tuple[K, str], value: str, trail: list) -> bool:
        stack = [(var, value)]
        while stack:
            (key, x), y = stack.pop()
            current = self.assignment.get((key, x))
            if current is not None:
                if current != y:
                    return False
                continue
            if self.injective and y in self.used[key]:
                return False
            self.assignment[(key, x)] = y
            self.used[key].add(y)
            trail.append((key, x))
            for target, src_map, tgt_map in self.outgoing[key]:
                stack.append(((target, src_map[x]), tgt_map[y]))
        return True

    def _undo(self, trail: list) -> None:
        for key, x in reversed(trail):
            self.used[key].discard(self.assignment.pop((key, x)))

    def solve(self, index: int = 0) -> Iterator[Family]:
        while index < len(self.variables) and self.variables[index] in self.assignment:
            index += 1
        if index == len(self.variables):
            yield {
                key: {x: self.assignment[(key, x)] for x in xs}
                for key, xs in self.src_sets.items()
            }
            return
        key, x = self.variables[index]
        for y in self.tgt_sets[key]:
            self.nodes += 1
            if self.nodes > self.budget:
                logger.warning("natural-family search passed %d nodes", self.budget)
                raise BudgetExceeded(f"search passed its budget of {self.budget} nodes")
            trail: list = []
            if self._assign((key, x), y, trail):
                yield from self.solve(index + 1)
            self._undo(trail)


def natural_maps(
    src_sets: Mapping[K, Sequence[str]],
    tgt_sets: Mapping[K, Sequence[str]],
    arrows: Iterable[Arrow],
    *,
    injective: bool = False,
    budget: int,
) -> Iterator[Family]:
    """Yield every family (phi_k: src_sets[k] → tgt_sets[k]) natural along arrows.

    An arrow (k, k2, s, t) demands phi_k2(s(x)) == t(phi_k(x)) for x in
    src_sets[k]. Families come in lexicographic order of their values.
    Raises BudgetExceeded once more than ``budget`` search nodes are explored.
    """
    search = _FamilySearch(src_sets, tgt_sets, arrows, injective, budget)
    yield from search.solve()
    logger.debug("natural-family search: %d nodes", search.nodes)
