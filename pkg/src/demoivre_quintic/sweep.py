"""Seeded random sweeps over (a, b) that aggregate gate outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .demoivre import DeMoivreQuintic, collapse_lift, solve_radical, viete_lift
from .errors import BranchPointError, QuinticError, SingularInputError
from .hypergeom import generate_identity
from .numerics import multiset_distance, oracle_roots
from .reduction import GATE, bring_reduce

STAGES = ("solve", "reduce", "identity", "all")
DEFAULT_RANGES = {
    "solve": ((-3.0, 3.0), (-3.0, 3.0)),
    "reduce": ((0.5, 2.0), (-2.0, 2.0)),
    "identity": ((0.5, 2.0), (-2.0, 2.0)),
    "all": ((0.5, 2.0), (-2.0, 2.0)),
}
SOLVE_TOL = 1e-8
MIN_ABS_A = 1e-3


@dataclass
class SweepSummary:
    stage: str
    n: int
    seed: int
    a_range: tuple[float, float]
    b_range: tuple[float, float]
    passed: int = 0
    singular: int = 0
    failures: list = field(default_factory=list)
    worst: dict = field(default_factory=dict)

    @property
    def evaluated(self) -> int:
        return self.n - self.singular

    @property
    def pass_rate(self) -> float:
        return self.passed / self.evaluated if self.evaluated else 1.0

    @property
    def ok(self) -> bool:
        return self.passed == self.evaluated

    def _bump(self, key: str, value: float) -> None:
        self.worst[key] = max(self.worst.get(key, 0.0), float(value))

    def as_dict(self) -> dict:
        return {
            "record": "sweep",
            "stage": self.stage,
            "n": self.n,
            "seed": self.seed,
            "a_range": list(self.a_range),
            "b_range": list(self.b_range),
            "passed": self.passed,
            "singular": self.singular,
            "pass_rate": self.pass_rate,
            "worst": dict(sorted(self.worst.items())),
            "failures": self.failures[:20],
        }


def sample_points(n: int, seed: int, a_range, b_range, min_abs_a: float = 0.0):
    """``n`` uniform points; ``a`` values with ``|a| <= min_abs_a`` are redrawn."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        a = float(rng.uniform(*a_range))
        b = float(rng.uniform(*b_range))
        if abs(a) <= min_abs_a:
            continue
        out.append((a, b))
    return out


def check_solve(q: DeMoivreQuintic, summary: SweepSummary) -> bool:
    radical = solve_radical(q)
    oracle = oracle_roots(q.polynomial)
    dist = multiset_distance(radical.roots, oracle.roots)
    summary._bump("oracle_distance", dist)
    ok = dist < SOLVE_TOL
    if q.a != 0:
        lift = collapse_lift(viete_lift(q), tol=SOLVE_TOL)
        lift_dist = multiset_distance(lift, radical.roots)
        summary._bump("lift_distance", lift_dist)
        ok = ok and lift_dist < SOLVE_TOL
    return ok


def check_reduce(q: DeMoivreQuintic, summary: SweepSummary) -> bool:
    red = bring_reduce(q)
    summary._bump("bring_residual", red.residual)
    return red.residual <= GATE


def check_identity(q: DeMoivreQuintic, summary: SweepSummary) -> bool:
    rec = generate_identity(q)
    summary._bump("identity_residual", rec.residual)
    return rec.passed


def run_sweep(stage: str, n: int, seed: int, a_range=None, b_range=None) -> SweepSummary:
    if stage not in STAGES:
        raise ValueError(f"unknown stage {stage!r}")
    if n < 1:
        raise ValueError("n must be positive")
    a_range = tuple(a_range or DEFAULT_RANGES[stage][0])
    b_range = tuple(b_range or DEFAULT_RANGES[stage][1])
    if a_range[0] >= a_range[1] or b_range[0] >= b_range[1]:
        raise ValueError("sweep ranges must be nonempty")
    if stage != "solve" and a_range[0] < 0:
        raise ValueError("the reduction needs a > 0")
    summary = SweepSummary(stage, n, seed, a_range, b_range)
    for index, (a, b) in enumerate(sample_points(n, seed, a_range, b_range, MIN_ABS_A)):
        q = DeMoivreQuintic(a, b)
        try:
            if stage == "solve":
                ok = check_solve(q, summary)
            elif stage == "reduce":
                ok = check_reduce(q, summary)
            elif stage == "identity":
                ok = check_identity(q, summary)
            else:
                ok = check_solve(q, summary) and check_reduce(q, summary) and check_identity(q, summary)
        except (SingularInputError, BranchPointError):
            summary.singular += 1
            continue
        except QuinticError as exc:
            ok = False
            summary.failures.append({"index": index, "a": a, "b": b, "error": str(exc)})
        if ok:
            summary.passed += 1
        elif not summary.failures or summary.failures[-1].get("index") != index:
            summary.failures.append({"index": index, "a": a, "b": b})
    return summary
