from __future__ import annotations

import json
from pathlib import Path

import pytest

from cotrace.codec import dump_case, dump_instance, dumps, load_instance, loads
from cotrace.common import InputError
from cotrace.fincat import cyclic_group, symmetric_group
from cotrace.prof import hom_profunctor
from cotrace.rel import RelCell
from tests.conftest import constant_span, finset


def read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def test_rel_instance_loads(data_dir: Path) -> None:
    instance = loads(read(data_dir / "rel_diag.json"))
    assert instance.instance == "rel"
    assert set(instance.cells) == {"R", "D", "F", "E"}
    assert instance.cells["D"].pairs == frozenset({("0", "0"), ("1", "1")})
    assert instance.case is None


def test_categories_load_equal_to_the_builders(data_dir: Path) -> None:
    assert loads(read(data_dir / "c3.json")).objects["C3"] == cyclic_group(3)
    s3 = loads(read(data_dir / "s3.json")).objects["S3"]
    assert s3 == symmetric_group(3)


def test_corrupt_category_names_the_failing_law(data_dir: Path) -> None:
    with pytest.raises(InputError, match=r"associativity at \(1, 1, 2\)") as info:
        loads(read(data_dir / "corrupt.json"), "corrupt.json")
    assert info.value.where == "categories.C3"


def test_syntax_errors_carry_line_and_column(data_dir: Path) -> None:
    with pytest.raises(InputError, match=r"^syntax\.json:3:\d+: "):
        loads(read(data_dir / "syntax.json"), "syntax.json")


def test_unresolved_reference(data_dir: Path) -> None:
    with pytest.raises(InputError, match="unresolved reference 'B'") as info:
        loads(read(data_dir / "bad_ref.json"))
    assert info.value.where == "cells.R.tgt"


@pytest.mark.parametrize(
    ("document", "where"),
    [
        ({"instance": "vect"}, "instance"),
        ({"instance": "rel", "sets": {"A": ["0", "0"]}}, "sets.A"),
        ({"instance": "rel", "sets": {"A": ["a}"]}}, "sets.A[0]"),
        (
            {
                "instance": "rel",
                "sets": {"A": ["0"]},
                "cells": {"R": {"src": "A", "tgt": "A", "pairs": [["0", "1"]]}},
            },
            "cells.R.pairs[0]",
        ),
        (
            {
                "instance": "span",
                "sets": {"A": ["0"]},
                "cells": {
                    "S": {
                        "src": "A",
                        "tgt": "A",
                        "apex": ["s"],
                        "leg_src": {},
                        "leg_tgt": {"s": "0"},
                    }
                },
            },
            "cells.S.leg_src",
        ),
        ({"instance": "rel", "choices": ["x"]}, "choices"),
    ],
)
def test_invalid_documents(document: dict, where: str) -> None:
    with pytest.raises(InputError) as info:
        load_instance(document)
    assert info.value.where == where


def test_prof_cells_round_trip() -> None:
    c2 = cyclic_group(2)
    hom = hom_profunctor(c2)
    document = dump_instance("prof", {"H": hom}, {"C2": c2})
    assert document["cells"]["H"]["src"] == "C2"
    loaded = loads(dumps(document))
    assert loaded.cells["H"] == hom


def test_missing_identity_actions_default() -> None:
    c2 = cyclic_group(2)
    document = json.loads(dumps(dump_instance("prof", {"H": hom_profunctor(c2)})))
    for field in ("lact", "ract"):
        document["cells"]["H"][field] = {
            key: table
            for key, table in document["cells"]["H"][field].items()
            if not key.startswith("0|")
        }
    assert load_instance(document).cells["H"] == hom_profunctor(c2)


def test_span_dump_is_canonical() -> None:
    text = dumps(dump_instance("span", {"K": constant_span(2)}))
    assert text.endswith("\n")
    assert text == dumps(json.loads(text))
    assert loads(text).cells["K"] == constant_span(2)


def test_case_dump_shares_equal_cells() -> None:
    two = finset(2)
    cell = RelCell(two, two, frozenset({("0", "1")}))
    document = dump_case("rel", (two, cell, cell))
    assert document["case"] == [{"object": "s0"}, {"cell": "c0"}, {"cell": "c0"}]
    loaded = load_instance(document)
    assert loaded.case == (two, cell, cell)
