"""Acceptance criteria, one test and one printed pass/fail line each.

Pinned tolerances: exact rational equality wherever the criterion says
exact; distance brackets use grid mesh 1/64 (slack (k-1)/64); wall-clock
budgets are 60 s for criterion 1 and 120 s for criterion 3.
"""
import subprocess
import sys

import pytest

from barrierlab import acceptance as acc


def _report(row):
    print(f"\ncriterion {row.id} ({row.name}): {'PASS' if row.passed else 'FAIL'} {row.detail}")
    return row.passed


@pytest.mark.parametrize("cid", [1, 2, 3, 4, 5, 6, 7, 8])
def test_criterion(cid):
    assert _report(acc.CHECKS[cid](0))


def test_criterion_9_selftest_twice(tmp_path):
    outs = []
    for i in (1, 2):
        d = tmp_path / f"run{i}"
        p = subprocess.run([sys.executable, "-m", "barrierlab", "selftest", "--seed", "3",
                            "--out", str(d)], capture_output=True, text=True)
        outs.append((p.returncode, p.stdout, (d / "selftest.json").read_bytes(),
                     (d / "selftest.csv").read_bytes()))
    same = outs[0] == outs[1]
    print(f"\ncriterion 9 (determinism): {'PASS' if same else 'FAIL'} "
          f"exit codes {outs[0][0]}, {outs[1][0]}")
    assert same
