"""Acceptance criteria 1-11, each reported as one PASS/FAIL line in the terminal summary."""

import subprocess
import sys
import time

import pytest

from qdeform import acceptance


def _report(log, result):
    line = result.line()
    log.append(line)
    print(line)
    return result


CHECKS = [
    acceptance.structure_oracle,
    acceptance.catalog_embedding,
    acceptance.matrix_relations,
    acceptance.classification,
    acceptance.hermite,
    acceptance.coherent,
    acceptance.moments,
    acceptance.jackson,
    acceptance.two_param,
    acceptance.kerr,
]


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i:02d}_{c.__name__}" for i, c in enumerate(CHECKS, 1)])
def test_criterion(acceptance_log, check):
    result = _report(acceptance_log, check())
    assert result.passed, result.line()


def test_criterion_11_verify(acceptance_log):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "qdeform", "verify"], capture_output=True, text=True, timeout=120)
    dt = time.perf_counter() - t0
    ok = proc.returncode == 0 and dt < 30
    line = f"[{'PASS' if ok else 'FAIL'}] 11. verify end to end: exit {proc.returncode} in {dt:.2f}s (budget 30s)"
    acceptance_log.append(line)
    print(proc.stdout)
    assert dt < 30, line
    assert proc.returncode == 0, line + "\n" + proc.stdout
