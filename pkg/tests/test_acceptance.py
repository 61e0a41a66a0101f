"""The release gate: one test per acceptance criterion, each printed as a
pass/fail line with its measured detail."""

import pytest

from seqop.acceptance import CRITERIA


@pytest.mark.parametrize("name", sorted(CRITERIA))
def test_criterion(name, capsys):
    result = CRITERIA[name]()
    with capsys.disabled():
        status = "PASS" if result.passed else "FAIL"
        print(f"\n{status} {result.name} [{result.seconds:.1f}s] {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"
