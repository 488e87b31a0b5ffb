"""Radical solution of x^5 + 5a x^3 + 5a^2 x + b = 0 and the Vieta lift."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ResidualError, SingularInputError
from .numerics import (
    Polynomial,
    RootSet,
    check_finite,
    cpow,
    csqrt,
    multiset_distance,
    nth_root_branches,
    residual_scale,
)

RADICAL_TOL = 1e-9

_TWO_M15 = 2.0 ** -0.2
_TWO_25 = 2.0**0.4

# order in which k (the power of the fifth root of unity) reproduces x1..x5
_ROOT_ORDER = (0, 3, 1, 2, 4)


@dataclass(frozen=True)
class DeMoivreQuintic:
    """The quintic ``x^5 + 5a x^3 + 5a^2 x + b`` for real ``a``, ``b``."""

    a: float
    b: float

    def __post_init__(self):
        for name in ("a", "b"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @property
    def polynomial(self) -> Polynomial:
        a, b = self.a, self.b
        return Polynomial.from_coeffs([1, 0, 5 * a, 0, 5 * a * a, b])

    @property
    def gamma(self) -> float:
        return gamma(self)

    def scaled(self, lam: float) -> "DeMoivreQuintic":
        """The weight-equivalent quintic ``(lam^2 a, lam^5 b)``; its roots are ``lam * x``."""
        return DeMoivreQuintic(lam**2 * self.a, lam**5 * self.b)


def gamma(q: DeMoivreQuintic) -> float:
    g = 4 * q.a**5 + q.b**2
    return check_finite(g, "gamma").real


def _split_product(s: complex, t: complex, product: complex) -> tuple[complex, complex]:
    # s*t == product analytically; recompute the smaller factor from the
    # larger one to dodge cancellation in sqrt(gamma) -/+ b
    if s == 0 and t == 0:
        return s, t
    if abs(s) >= abs(t):
        return s, product / s
    return product / t, t


def _roots_from_pair(P: complex, M: complex) -> list[complex]:
    zeta = nth_root_branches(1, 5)
    return [_TWO_M15 * (zeta[k] * P - zeta[-k % 5] * M) for k in _ROOT_ORDER]


def _worst(p: Polynomial, roots) -> float:
    return max(abs(p(r)) / residual_scale(p, r) for r in roots)


def solve_radical(q: DeMoivreQuintic, tol: float = RADICAL_TOL) -> RootSet:
    """The five roots x1..x5 from the closed-form radical expression.

    With ``P = (sqrt(gamma) - b)^(1/5)`` and ``M = (sqrt(gamma) + b)^(1/5)``
    the roots are ``2^(-1/5) (zeta^k P - zeta^(-k) M)`` for the fifth roots
    of unity ``zeta^k``.  Principal branches are tried first.  If they fail
    the residual gate (which happens when a radicand is negative or complex),
    all 25 branch pairs obeying ``P*M = 2^(2/5) a`` are scored and the best
    one is kept.
    """
    p = q.polynomial
    a, b = q.a, q.b
    sg = csqrt(gamma(q))
    minus, plus = _split_product(sg - b, sg + b, complex(4 * a**5))
    P = cpow(minus, Fraction(1, 5))
    M = cpow(plus, Fraction(1, 5))
    roots = _roots_from_pair(P, M)
    if _worst(p, roots) <= tol:
        return RootSet.from_polynomial(p, roots)

    target = _TWO_25 * a
    best = None
    for Pi, Mj in itertools.product(nth_root_branches(minus, 5), nth_root_branches(plus, 5)):
        if abs(Pi * Mj - target) > 1e-9 * max(1.0, abs(target)):
            continue
        cand = _roots_from_pair(Pi, Mj)
        score = _worst(p, cand)
        if best is None or score < best[0]:
            best = (score, cand)
    if best is None or best[0] > tol:
        raise ResidualError(
            f"no branch assignment of the radical formula meets the residual gate for a={a}, b={b}"
        )
    return RootSet.from_polynomial(p, best[1])


def viete_lift(q: DeMoivreQuintic) -> list[tuple[complex, complex]]:
    """Ten ``(u, x)`` pairs from ``u^10 + b u^5 - a^5 = 0`` and ``x = u - a/u``.

    Each root of the quintic appears twice among the x-values, once from each
    solution of the quadratic in ``u^5``.
    """
    a, b = q.a, q.b
    if a == 0:
        raise SingularInputError("a", "the Vieta substitution x = u - a/u needs a != 0")
    sg = csqrt(gamma(q))
    w1, w2 = _split_product((-b + sg) / 2, (-b - sg) / 2, complex(-(a**5)))
    out = []
    for w in (w1, w2):
        for u in nth_root_branches(w, 5):
            out.append((u, check_finite(u - a / u, "x")))
    return out


def collapse_lift(pairs: list[tuple[complex, complex]], tol: float = RADICAL_TOL) -> list[complex]:
    """Collapse the ten lifted x-values to five, checking the duplicates agree."""
    xs = [x for _, x in pairs]
    first, second = xs[:5], xs[5:]
    scale = max(1.0, max(abs(x) for x in xs))
    gap = multiset_distance(first, second)
    if gap > tol * scale:
        raise ResidualError(f"lifted x-values do not pair up (gap {gap:.3g})")
    return first
