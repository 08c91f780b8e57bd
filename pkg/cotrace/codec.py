"""JSON instance files.

Objects and cells are named; every reference is resolved and every payload
validated on load, with the field path of the first problem in the error.
Dumping is canonical (sorted keys and labels) so a dumped model loads back
equal to itself.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from cotrace.bicat import Cell, Obj
from cotrace.common import InputError, check_labels
from cotrace.fincat import FinCat, Morphism, Validation, validate_category
from cotrace.prof import Profunctor, validate_profunctor
from cotrace.rel import FinSet, RelCell
from cotrace.span import SpanCell

INSTANCE_TAGS = ("rel", "span", "prof")
KEY_SEPARATOR = "|"


@dataclass(frozen=True)
class InstanceFile:
    """A loaded file; ``case`` is set for counterexample witnesses."""

    instance: str
    objects: Mapping[str, Obj]
    cells: Mapping[str, Cell]
    case: tuple | None = None
    law: str | None = None
    mutation: str | None = None
    choices: tuple[int, ...] = ()


def _objects_field(tag: str) -> str:
    return "categories" if tag == "prof" else "sets"


def _mapping(value: Any, where: str) -> dict:
    if not isinstance(value, dict):
        raise InputError("expected an object", where=where)
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise InputError("expected an array", where=where)
    return value


def _str(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise InputError("expected a string", where=where)
    return value


def _required(spec: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in spec:
        raise InputError(f"missing field {key!r}", where=where)
    return spec[key]


def _labels(value: Any, where: str) -> tuple[str, ...]:
    items = [_str(item, f"{where}[{i}]") for i, item in enumerate(_list(value, where))]
    return check_labels(items, where)


def _table(value: Any, where: str) -> dict[str, str]:
    table = _mapping(value, where)
    return {_str(k, where): _str(v, f"{where}.{k}") for k, v in table.items()}


def _split(key: str, parts: int, where: str) -> tuple[str, ...]:
    pieces = tuple(key.split(KEY_SEPARATOR))
    if len(pieces) != parts:
        raise InputError(f"key {key!r} needs {parts} '|'-separated parts", where=where)
    return pieces


def _resolve(objects: Mapping[str, Obj], value: Any, where: str) -> Obj:
    label = _str(value, where)
    if label not in objects:
        raise InputError(f"unresolved reference {label!r}", where=where)
    return objects[label]


def _failure(kind: str, result: Validation, where: str) -> InputError:
    labels = ", ".join(result.labels)
    return InputError(
        f"{kind} fails {result.law} at ({labels}): {result.message}", where=where
    )


def load_category(spec: Any, where: str) -> FinCat:
    """A category from its tables; rejected with the first violated law."""
    spec = _mapping(spec, where)
    objects = _labels(_required(spec, "objects", where), f"{where}.objects")
    morphisms = []
    raw = _list(_required(spec, "morphisms", where), f"{where}.morphisms")
    for i, item in enumerate(raw):
        at = f"{where}.morphisms[{i}]"
        item = _mapping(item, at)
        morphisms.append(
            Morphism(
                _str(_required(item, "label", at), f"{at}.label"),
                _str(_required(item, "src", at), f"{at}.src"),
                _str(_required(item, "tgt", at), f"{at}.tgt"),
            )
        )
    check_labels([m.label for m in morphisms], f"{where}.morphisms")
    identities = _table(spec.get("identities", {}), f"{where}.identities")
    comp = {}
    for key, h in _table(spec.get("comp", {}), f"{where}.comp").items():
        g, f = _split(key, 2, f"{where}.comp")
        comp[(g, f)] = h
    category = FinCat(tuple(objects), tuple(morphisms), identities, comp)
    result = validate_category(category)
    if not result:
        raise _failure("category", result, where)
    return category


def _load_rel(spec: dict, src: FinSet, tgt: FinSet, where: str) -> RelCell:
    pairs = set()
    for i, pair in enumerate(_list(spec.get("pairs", []), f"{where}.pairs")):
        at = f"{where}.pairs[{i}]"
        pair = _list(pair, at)
        if len(pair) != 2:
            raise InputError("a pair has two entries", where=at)
        a, b = _str(pair[0], at), _str(pair[1], at)
        if a not in src or b not in tgt:
            raise InputError(f"unresolved reference in ({a}, {b})", where=at)
        pairs.add((a, b))
    return RelCell(src, tgt, frozenset(pairs))


def _load_leg(spec: dict, key: str, apex: FinSet, end: FinSet, where: str) -> dict:
    at = f"{where}.{key}"
    leg = _table(_required(spec, key, where), at)
    for x in apex:
        if x not in leg:
            raise InputError(f"no image for apex element {x!r}", where=at)
    for x, y in leg.items():
        if x not in apex:
            raise InputError(f"unresolved reference {x!r}", where=at)
        if y not in end:
            raise InputError(f"unresolved reference {y!r}", where=f"{at}.{x}")
    return leg


def _load_span(spec: dict, src: FinSet, tgt: FinSet, where: str) -> SpanCell:
    apex = FinSet(_labels(_required(spec, "apex", where), f"{where}.apex"))
    return SpanCell(
        src,
        tgt,
        apex,
        _load_leg(spec, "leg_src", apex, src, where),
        _load_leg(spec, "leg_tgt", apex, tgt, where),
    )


def _action(
    spec: dict,
    field: str,
    category: FinCat,
    other: FinCat,
    sets: Mapping[tuple[str, str], tuple[str, ...]],
    left: bool,
    where: str,
) -> dict[tuple[str, str, str], dict[str, str]]:
    """Action tables keyed (morphism, b, a); missing identity tables default."""
    at = f"{where}.{field}"
    given = {}
    for key, table in _mapping(spec.get(field, {}), at).items():
        m, b, a = _split(key, 3, at)
        if m not in category.by_label:
            raise InputError(f"unresolved reference {m!r}", where=f"{at}.{key}")
        own, rest = (b, a) if left else (a, b)
        end = category.tgt(m) if left else category.src(m)
        if own != end or rest not in other.objects:
            raise InputError("key does not match the morphism", where=f"{at}.{key}")
        given[(m, b, a)] = _table(table, f"{at}.{key}")
    tables = {}
    for m in category.morphisms:
        for x in other.objects:
            key = (m.label, m.tgt, x) if left else (m.label, x, m.src)
            if key in given:
                tables[key] = given[key]
            elif category.identities[m.src] == m.label:
                tables[key] = {e: e for e in sets[key[1:]]}
            else:
                tables[key] = {}
    return tables


def _load_prof(spec: dict, src: FinCat, tgt: FinCat, where: str) -> Profunctor:
    sets = {(b, a): () for b in tgt.objects for a in src.objects}
    at = f"{where}.sets"
    for key, labels in _mapping(spec.get("sets", {}), at).items():
        b, a = _split(key, 2, at)
        if (b, a) not in sets:
            raise InputError(f"unresolved reference {key!r}", where=at)
        sets[(b, a)] = _labels(labels, f"{at}.{key}")
    lact = _action(spec, "lact", tgt, src, sets, True, where)
    ract = _action(spec, "ract", src, tgt, sets, False, where)
    profunctor = Profunctor(src, tgt, sets, lact, ract)
    result = validate_profunctor(profunctor)
    if not result:
        raise _failure("profunctor", result, where)
    return profunctor


_CELL_LOADERS: dict[str, Callable[[dict, Any, Any, str], Cell]] = {
    "rel": _load_rel,
    "span": _load_span,
    "prof": _load_prof,
}


def _load_case(
    items: Any, objects: Mapping[str, Obj], cells: Mapping[str, Cell]
) -> tuple:
    case = []
    for i, item in enumerate(_list(items, "case")):
        at = f"case[{i}]"
        item = _mapping(item, at)
        if len(item) != 1:
            raise InputError("expected one of object, cell, maps", where=at)
        ((kind, value),) = item.items()
        if kind == "object":
            case.append(_resolve(objects, value, f"{at}.object"))
        elif kind == "cell":
            case.append(_resolve(cells, value, f"{at}.cell"))
        elif kind == "maps":
            tables = _list(value, f"{at}.maps")
            case.append(
                tuple(_table(t, f"{at}.maps[{j}]") for j, t in enumerate(tables))
            )
        else:
            raise InputError(f"unknown case entry {kind!r}", where=at)
    return tuple(case)


def load_instance(data: Any, source: str = "<input>") -> InstanceFile:
    """Validate a decoded JSON document into an :class:`InstanceFile`."""
    data = _mapping(data, source)
    tag = data.get("instance")
    if tag not in INSTANCE_TAGS:
        raise InputError(f"unknown instance {tag!r}", where="instance")
    field = _objects_field(tag)
    objects: dict[str, Obj] = {}
    for label, spec in _mapping(data.get(field, {}), field).items():
        where = f"{field}.{label}"
        if tag == "prof":
            objects[label] = load_category(spec, where)
        else:
            objects[label] = FinSet(_labels(spec, where))
    cells: dict[str, Cell] = {}
    for label, spec in _mapping(data.get("cells", {}), "cells").items():
        where = f"cells.{label}"
        spec = _mapping(spec, where)
        src = _resolve(objects, _required(spec, "src", where), f"{where}.src")
        tgt = _resolve(objects, _required(spec, "tgt", where), f"{where}.tgt")
        cells[label] = _CELL_LOADERS[tag](spec, src, tgt, where)
    case = None
    if "case" in data:
        case = _load_case(data["case"], objects, cells)
    law = data.get("law")
    mutation = data.get("mutation")
    choices = _list(data.get("choices", []), "choices")
    if not all(isinstance(c, int) for c in choices):
        raise InputError("choices are integers", where="choices")
    return InstanceFile(
        tag,
        objects,
        cells,
        case,
        None if law is None else _str(law, "law"),
        None if mutation is None else _str(mutation, "mutation"),
        tuple(choices),
    )


def loads(text: str, source: str = "<input>") -> InstanceFile:
    """Decode and validate; JSON syntax errors carry their line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, where=f"{source}:{exc.lineno}:{exc.colno}") from exc
    return load_instance(data, source)


# dumping


class _Namer:
    """Names by equality; the models hold dicts, so they cannot be hashed."""

    def __init__(self, prefix: str, known: Mapping[str, Any] | None = None) -> None:
        self.prefix = prefix
        self.items: list[tuple[Any, str]] = [
            (value, label) for label, value in (known or {}).items()
        ]
        self._fresh = 0

    def __call__(self, item: Any) -> str:
        for known, label in self.items:
            if known == item:
                return label
        taken = {label for _, label in self.items}
        while f"{self.prefix}{self._fresh}" in taken:
            self._fresh += 1
        label = f"{self.prefix}{self._fresh}"
        self.items.append((item, label))
        return label


def _key(*parts: str) -> str:
    return KEY_SEPARATOR.join(parts)


def dump_object(obj: Obj) -> Any:
    if isinstance(obj, FinSet):
        return list(obj.elements)
    return {
        "objects": list(obj.objects),
        "morphisms": [
            {"label": m.label, "src": m.src, "tgt": m.tgt} for m in obj.morphisms
        ],
        "identities": dict(sorted(obj.identities.items())),
        "comp": {_key(g, f): h for (g, f), h in sorted(obj.comp.items())},
    }


def dump_cell(cell: Cell, name_of: Callable[[Obj], str]) -> dict[str, Any]:
    data: dict[str, Any] = {"src": name_of(cell.src), "tgt": name_of(cell.tgt)}
    if isinstance(cell, RelCell):
        data["pairs"] = [list(pair) for pair in sorted(cell.pairs)]
    elif isinstance(cell, SpanCell):
        data["apex"] = list(cell.apex.elements)
        data["leg_src"] = dict(sorted(cell.leg_src.items()))
        data["leg_tgt"] = dict(sorted(cell.leg_tgt.items()))
    else:
        data["sets"] = {_key(*key): list(xs) for key, xs in sorted(cell.sets.items())}
        for field in ("lact", "ract"):
            tables = getattr(cell, field)
            data[field] = {
                _key(*key): dict(sorted(table.items()))
                for key, table in sorted(tables.items())
            }
    return data


def _document(tag: str, objects: _Namer, cells: dict[str, Any]) -> dict[str, Any]:
    return {
        "instance": tag,
        _objects_field(tag): {label: dump_object(obj) for obj, label in objects.items},
        "cells": cells,
    }


def dump_instance(
    tag: str, cells: Mapping[str, Cell], objects: Mapping[str, Obj] | None = None
) -> dict[str, Any]:
    """An instance file for named cells; unnamed endpoints get fresh names."""
    namer = _Namer("k" if tag == "prof" else "s", objects)
    body = {label: dump_cell(cell, namer) for label, cell in cells.items()}
    return _document(tag, namer, body)


def dump_case(tag: str, case: Sequence[Any]) -> dict[str, Any]:
    """An instance file holding the objects and cells of a case, in order."""
    objects = _Namer("k" if tag == "prof" else "s")
    cells = _Namer("c")
    entries = []
    for item in case:
        if isinstance(item, FinSet | FinCat):
            entries.append({"object": objects(item)})
        elif isinstance(item, tuple):
            entries.append({"maps": [dict(sorted(m.items())) for m in item]})
        else:
            entries.append({"cell": cells(item)})
    body = {label: dump_cell(cell, objects) for cell, label in cells.items}
    document = _document(tag, objects, body)
    document["case"] = entries
    return document


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
