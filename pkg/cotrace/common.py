"""Shared helpers: element labels, errors, limits and logging."""

from __future__ import annotations

import logging
import sys
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path

UNIT = "*"
SEPARATOR = "∘"
OPEN, CLOSE = "⟨", "⟩"
MAPS_TO = "↦"
RESERVED = frozenset("∘⟨⟩{}↦;|")


class CotraceError(Exception):
    """Base class for every error raised by the package."""


class InputError(CotraceError, ValueError):
    """Malformed or inconsistent input, optionally with its position."""

    def __init__(self, message: str, *, where: str | None = None) -> None:
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class EndpointMismatch(InputError):
    """Cells whose endpoints do not line up."""


class BudgetExceeded(CotraceError, RuntimeError):
    """An enumeration or search would pass its configured cap."""


@dataclass(frozen=True)
class Limits:
    enumeration_cap: int = 10**6
    iso_budget: int = 200_000


DEFAULT_LIMITS = Limits()


def _wrap(part: str) -> str:
    if any(ch in RESERVED for ch in part):
        return f"{OPEN}{part}{CLOSE}"
    return part


def join_label(*parts: str) -> str:
    """Render a tuple of labels as one label, e.g. ``a∘b``."""
    return SEPARATOR.join(_wrap(part) for part in parts)


def graph_label(mapping: Mapping[str, str]) -> str:
    """Canonical label for a finite function given by its graph."""
    entries = (f"{_wrap(k)}{MAPS_TO}{_wrap(v)}" for k, v in sorted(mapping.items()))
    return "{" + ";".join(entries) + "}"


def _scan_part(text: str, pos: int) -> int | None:
    if pos >= len(text):
        return None
    ch = text[pos]
    if ch == OPEN:
        end = _scan_label(text, pos + 1)
        if end is None or end >= len(text) or text[end] != CLOSE:
            return None
        return end + 1
    if ch == "{":
        pos += 1
        if pos < len(text) and text[pos] == "}":
            return pos + 1
        while True:
            pos = _scan_part(text, pos)
            if pos is None or pos >= len(text) or text[pos] != MAPS_TO:
                return None
            pos = _scan_part(text, pos + 1)
            if pos is None or pos >= len(text):
                return None
            if text[pos] == "}":
                return pos + 1
            if text[pos] != ";":
                return None
            pos += 1
    start = pos
    while pos < len(text) and text[pos] not in RESERVED:
        pos += 1
    return pos if pos > start else None


def _scan_label(text: str, pos: int) -> int | None:
    end = _scan_part(text, pos)
    while end is not None and end < len(text) and text[end] == SEPARATOR:
        end = _scan_part(text, end + 1)
    return end


def is_label(text: str) -> bool:
    """True for plain labels and for labels built by join/graph_label."""
    return isinstance(text, str) and _scan_label(text, 0) == len(text)


def check_labels(labels: Iterable[str], where: str) -> tuple[str, ...]:
    """Reject duplicates and labels that collide with the reserved syntax."""
    seen: set[str] = set()
    for index, label in enumerate(labels):
        if not is_label(label):
            raise InputError(f"bad label {label!r}", where=f"{where}[{index}]")
        if label in seen:
            raise InputError(f"duplicate label {label!r}", where=where)
        seen.add(label)
    return tuple(sorted(seen))


def setup_logging(
    level: int = logging.WARNING, log_path: Path | None = None
) -> logging.Logger:
    """Log to stderr and optionally to a file."""
    logger = logging.getLogger("cotrace")
    logger.setLevel(level)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    formatter = logging.Formatter("%(asctime)s %(levelname)s %(message)s")

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    if log_path is not None:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path, encoding="utf-8")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger
