"""Bundled reference designs and the verdicts they are expected to earn."""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files

from .design import loads
from .errors import ParameterError


@dataclass(frozen=True)
class Expectation:
    kind: str
    base_blocks: int
    strict: bool
    optimal: bool | None = None
    m: int = 0
    n: int = 0


@dataclass(frozen=True)
class NamedDataset:
    key: str
    design: object
    expected: Expectation
    source: str


EXPECTED = {
    "ex-2.3": Expectation("packing", 48, True, True, 6, 6),
    "ex-3.1": Expectation("g-design", 14, True, None, 10, 2),
    "ex-3.5-g28": Expectation("g-design", 14, True, None, 2, 8),
    "ex-5.3": Expectation("fan", 5, False, None, 3, 3),
    "lem-6.13": Expectation("packing", 48, True, True, 3, 12),
}

KEYS = tuple(EXPECTED)


def raw_text(key: str) -> str:
    if key not in EXPECTED:
        raise ParameterError(f"unknown dataset {key!r}; choose from {', '.join(KEYS)}")
    return (files("oospc") / "data" / f"{key}.json").read_text(encoding="utf-8")


def load_builtin(key: str) -> NamedDataset:
    text = raw_text(key)
    return NamedDataset(key, loads(text), EXPECTED[key], f"data/{key}.json")


def check_expectation(ds: NamedDataset, report) -> list[str]:
    """Differences between a live report and the bundled expectation."""
    exp = ds.expected
    diffs = []
    if not report.valid:
        diffs.append(f"invalid ({report.violation_count} violations)")
    if report.base_block_count != exp.base_blocks:
        diffs.append(f"base blocks {report.base_block_count} != {exp.base_blocks}")
    if report.strict != exp.strict:
        diffs.append(f"strict {report.strict} != {exp.strict}")
    if exp.optimal is not None:
        got = bool(report.optimal and report.optimal.get("meets_bound"))
        if got != exp.optimal:
            diffs.append(f"optimal {got} != {exp.optimal}")
    return diffs
