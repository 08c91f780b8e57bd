from __future__ import annotations

import json
from pathlib import Path

import pytest

from cotrace.cli import dispatch, parse_instance_file
from cotrace.common import InputError


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def replay_transcript(
    capsys: pytest.CaptureFixture[str], golden: str, extra: list[str]
) -> str:
    """Re-run every ``$ cotrace`` line of a transcript and rebuild it."""
    produced = []
    for line in golden.splitlines():
        if not line.startswith("$ cotrace "):
            continue
        code, out, _ = run(capsys, *line.removeprefix("$ cotrace ").split(), *extra)
        assert code == 0, line
        produced.append(f"{line}\n{out}")
    return "".join(produced)


@pytest.mark.parametrize("fixture", ["rel_diag", "span_const", "c3", "s3"])
def test_golden_transcripts(
    capsys: pytest.CaptureFixture[str], data_dir: Path, fixture: str
) -> None:
    golden = (data_dir / "golden" / f"{fixture}.txt").read_text(encoding="utf-8")
    extra = ["--input", str(data_dir / f"{fixture}.json")]
    assert replay_transcript(capsys, golden, extra) == golden


def test_json_scalar(capsys: pytest.CaptureFixture[str], data_dir: Path) -> None:
    code, out, _ = run(
        capsys,
        "trace",
        "--input",
        str(data_dir / "span_const.json"),
        "--cell",
        "K",
        "--format",
        "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["cardinality"] == 2
    assert payload["value"] == "2"
    assert len(payload["elements"]) == 2


def test_json_cell_is_an_instance_file(
    capsys: pytest.CaptureFixture[str], data_dir: Path, tmp_path: Path
) -> None:
    out_file = tmp_path / "lift.json"
    code, out, _ = run(
        capsys,
        "lift",
        "--input",
        str(data_dir / "rel_diag.json"),
        "--cells",
        "D",
        "D",
        "--format",
        "json",
        "--report",
        str(out_file),
    )
    assert code == 0
    assert json.loads(out_file.read_text(encoding="utf-8")) == json.loads(out)
    code, out, _ = run(capsys, "cotrace", "--input", str(out_file), "--cell", "result")
    assert (code, out) == (0, "*\n")


@pytest.mark.parametrize(
    ("argv", "message"),
    [
        (["dims", "--input", "corrupt.json", "--object", "C3"], "associativity"),
        (["check-laws", "--input", "corrupt.json"], "associativity"),
        (["trace", "--input", "rel_diag.json", "--cell", "Q"], "unknown cell"),
        (["dims", "--input", "rel_diag.json", "--object", "Q"], "unknown object"),
        (["trace", "--input", "missing.json", "--cell", "R"], "missing.json"),
        (["trace", "--cell", "R"], "--input is required"),
        (["lift", "--input", "rel_diag.json", "--cells", "R", "D"], "lift"),
        (["frobnicate"], "invalid choice"),
        (["check-laws", "--law", "no-such-law"], "invalid choice"),
        (["check-laws", "--samples", "0"], "at least 1"),
    ],
)
def test_input_errors_exit_2(
    capsys: pytest.CaptureFixture[str],
    data_dir: Path,
    argv: list[str],
    message: str,
) -> None:
    argv = [str(data_dir / a) if a.endswith(".json") else a for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert message in err


def test_parse_instance_file(data_dir: Path, tmp_path: Path) -> None:
    instance = parse_instance_file(data_dir / "rel_diag.json")
    assert instance.instance == "rel"
    assert set(instance.cells) == {"R", "D", "F", "E"}

    missing = tmp_path / "missing.json"
    with pytest.raises(InputError) as info:
        parse_instance_file(missing)
    assert info.value.where == str(missing)


def test_help_exits_0(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "check-laws" in out


def test_check_laws_golden(capsys: pytest.CaptureFixture[str], data_dir: Path) -> None:
    golden = (data_dir / "golden" / "check_laws.txt").read_text(encoding="utf-8")
    assert replay_transcript(capsys, golden, []) == golden


def test_check_laws_on_a_pool(
    capsys: pytest.CaptureFixture[str], data_dir: Path
) -> None:
    code, out, _ = run(
        capsys,
        "check-laws",
        "--input",
        str(data_dir / "rel_diag.json"),
        "--law",
        "trace-cyclicity",
    )
    assert code == 0
    assert out.splitlines()[-1] == "1/1 passed"


def test_mutation_report_and_witness_replay(
    capsys: pytest.CaptureFixture[str], tmp_path: Path
) -> None:
    report_file = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        "check-laws",
        "--instance",
        "rel",
        "--law",
        "lift-universal-property",
        "--mutate",
        "rel-lift",
        "--max-size",
        "1",
        "--report",
        str(report_file),
    )
    assert code == 1
    assert "counterexample" in out
    (entry,) = json.loads(report_file.read_text(encoding="utf-8"))
    assert entry["status"] == "counterexample"

    witness = tmp_path / "witness.json"
    witness.write_text(json.dumps(entry["witness"]), encoding="utf-8")
    code, out, _ = run(capsys, "check-laws", "--input", str(witness))
    assert code == 1
    assert "replay" in out

    del entry["witness"]["mutation"]
    witness.write_text(json.dumps(entry["witness"]), encoding="utf-8")
    code, out, _ = run(capsys, "check-laws", "--input", str(witness))
    assert code == 0


def test_log_file(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    log = tmp_path / "logs" / "cotrace.log"
    code, _, _ = run(
        capsys,
        "check-laws",
        "--instance",
        "rel",
        "--law",
        "zigzag",
        "--max-size",
        "1",
        "--log-file",
        str(log),
        "-vv",
    )
    assert code == 0
    assert "law zigzag on rel" in log.read_text(encoding="utf-8")
