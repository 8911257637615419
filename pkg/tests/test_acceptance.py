"""Acceptance gate: run every criterion and print its pass/fail line."""

from __future__ import annotations

import pytest

from omsr.suite import CRITERIA

NAMES = (
    "z4-block-example",
    "z2-families",
    "cyclic-families",
    "klein-families",
    "two-generated-families",
    "nonexistence-suite",
    "oracle-equivalence",
    "structural-properties",
    "translation-hypotheses",
    "repair-forcing",
    "rigid-explorer",
)


@pytest.mark.parametrize(
    "number", range(1, len(CRITERIA) + 1), ids=[f"{n:02d}-{s}" for n, s in enumerate(NAMES, 1)]
)
def test_criterion(number: int) -> None:
    result = CRITERIA[number - 1]()
    print(result.line())
    assert result.number == number
    assert result.name == NAMES[number - 1]
    assert result.passed, result.detail
