"""Shared oracles: extended-precision roots from mpmath and a brute-force matcher."""

from __future__ import annotations

import itertools
import sys

import mpmath
import pytest
from hypothesis import settings

# reproducible property tests: same examples on every run
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")


def mp_roots(coeffs, dps: int = 40) -> list[complex]:
    """Roots of a polynomial (highest degree first) via mpmath.polyroots."""
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([mpmath.mpc(c) for c in coeffs], maxsteps=500, extraprec=200)
        return [complex(r) for r in roots]


def brute_match(s1, s2) -> float:
    """Bottleneck distance by trying every permutation (independent of numpy)."""
    return min(
        max(abs(x - y) for x, y in zip(s1, perm)) for perm in itertools.permutations(s2)
    )


def demoivre_coeffs(a: float, b: float) -> list[float]:
    return [1, 0, 5 * a, 0, 5 * a * a, b]


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
