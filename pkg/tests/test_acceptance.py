"""Acceptance suite: one test per criterion, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -s -m acceptance`` to see the
reports.  Criterion 10 re-executes criteria 1-9 and byte-compares their
reports, so a full run performs every heavy computation twice.
"""

from __future__ import annotations

import time

import pytest

from criteria import run_cached

pytestmark = pytest.mark.acceptance

_DESCRIPTIONS = {
    1: "extremal certificate: exhaustive None + naive-oracle agreement",
    2: "path/cycle inequalities, 10^4 instances, zero tolerance",
    3: "dense-graph consequences on 200 accepted instances",
    4: "extraction cascade: identity, planted set, paper parameters",
    5: "BP2 exactness over 100 blueprints of K_60^(4)",
    6: "parity host never points at the inside-A component",
    7: "k=4 pipeline, 50 seeds of K_80^(4), median coverage >= 0.90",
    8: "k=5 pipeline, 30 seeds of K_60^(5), median coverage >= 0.85",
    9: "fractional-matching optimum equals the enumeration oracle",
    10: "identical seeds reproduce byte-identical reports",
}


def _run(number: int):
    name = f"criterion_{number:02d}"
    start = time.perf_counter()
    ok, report = run_cached(name)
    elapsed = time.perf_counter() - start
    print()
    print(report)
    verdict = "PASS" if ok else "FAIL"
    print(f"[{verdict}] criterion {number}: {_DESCRIPTIONS[number]} ({elapsed:.1f}s)")
    assert ok, f"criterion {number} failed; report above"
    return elapsed


def test_criterion_01_extremal_certificate():
    elapsed = _run(1)
    assert elapsed <= 1800, "runtime target is 30 minutes"


def test_criterion_02_inequalities():
    _run(2)


def test_criterion_03_density_consequences():
    _run(3)


def test_criterion_04_extraction_cascade():
    _run(4)


def test_criterion_05_blueprint_audit():
    _run(5)


def test_criterion_06_parity_structure():
    _run(6)


def test_criterion_07_pipeline_k4():
    _run(7)


def test_criterion_08_pipeline_k5():
    _run(8)


def test_criterion_09_fracmatch_oracle_parity():
    _run(9)


def test_criterion_10_determinism():
    _run(10)
