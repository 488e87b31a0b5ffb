"""Complex scalar helpers, polynomial plumbing and the Aberth root oracle.

Every scalar in the package is a Python ``complex`` (binary64).  All fractional
powers go through :func:`cpow` / :func:`nth_root_branches`, so the branch
convention lives in one place: arguments are taken in ``(-pi, pi]``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ConvergenceError, NumericalOverflowError, ResidualError

EPS = 2.0**-52

ORACLE_TOL = 1e-10
ORACLE_MAX_ITER = 200
ORACLE_ANGLE_OFFSET = 0.4


def check_finite(z: complex, what: str = "value") -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NumericalOverflowError(f"{what} is not finite: {z!r}")
    return z


def principal_arg(w: complex) -> float:
    """Argument of ``w`` in ``(-pi, pi]`` (``-0.0`` imaginary parts map to ``+pi``).

    A tiny negative imaginary part keeps the ``-pi`` that ``phase`` rounds
    to, so points just below the cut stay on their own side.
    """
    w = complex(w)
    theta = cmath.phase(w)
    if theta <= -math.pi and w.imag == 0:
        theta = math.pi
    return theta


def cpow(w: complex, p: Fraction | float | int) -> complex:
    """Principal value of ``w**p``.

    Positive reals stay on the real line (no spurious imaginary noise); zero
    to a positive power is zero.
    """
    w = complex(w)
    p = float(p)
    if w == 0:
        if p > 0:
            return 0j
        if p == 0:
            return 1 + 0j
        raise NumericalOverflowError("zero raised to a negative power")
    if w.imag == 0 and w.real > 0:
        return check_finite(complex(w.real**p, 0.0), "power")
    if p == 0.5:
        # cmath.sqrt honours signed zeros; force arg(-x - 0j) = +pi
        return check_finite(cmath.sqrt(complex(w.real, w.imag + 0.0)), "power")
    mod = abs(w) ** p
    theta = principal_arg(w) * p
    return check_finite(cmath.rect(mod, theta), "power")


def csqrt(w: complex) -> complex:
    return cpow(w, Fraction(1, 2))


def nth_root_branches(w: complex, n: int) -> list[complex]:
    """All ``n`` solutions of ``r**n == w``, principal root first.

    The remaining roots follow in order of increasing argument offset
    ``2*pi*k/n``.  ``w == 0`` gives ``n`` zeros.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    w = complex(w)
    if w == 0:
        return [0j] * n
    principal = cpow(w, Fraction(1, n))
    out = [principal]
    for k in range(1, n):
        out.append(principal * _unit_root(n, k))
    return out


@lru_cache(maxsize=None)
def _unit_root(n: int, k: int) -> complex:
    # exact values on the axes avoid 6e-17 noise in e.g. i**2
    k %= n
    if (4 * k) % n == 0:
        return [1 + 0j, 1j, -1 + 0j, -1j][(4 * k) // n]
    return cmath.exp(2j * math.pi * k / n)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with complex coefficients, highest degree first."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(check_finite(c, "coefficient") for c in self.coeffs)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        if abs(coeffs[0]) == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[complex]) -> "Polynomial":
        return cls(tuple(complex(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        return self.coeffs[0]

    @property
    def scale(self) -> float:
        return max(abs(c) for c in self.coeffs)

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0 for c in self.coeffs)

    def __call__(self, x: complex) -> complex:
        return poly_eval(self, x)


def poly_eval(p: Polynomial, x: complex) -> complex:
    """Horner evaluation of ``p`` at ``x``."""
    acc = 0j
    x = complex(x)
    for c in p.coeffs:
        acc = acc * x + c
    return check_finite(acc, "polynomial value")


def poly_from_roots(roots: Sequence[complex], leading: complex = 1.0) -> Polynomial:
    """Coefficients of ``leading * prod(x - r)`` by incremental convolution."""
    if len(roots) == 0:
        raise ValueError("need at least one root")
    coeffs = [complex(leading)]
    for r in roots:
        r = complex(r)
        nxt = coeffs + [0j]
        for i in range(1, len(nxt)):
            nxt[i] -= r * coeffs[i - 1]
        coeffs = nxt
    return Polynomial(tuple(coeffs))


def residual_scale(p: Polynomial, x: complex) -> float:
    return p.scale * max(1.0, abs(x)) ** p.degree


@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial together with their absolute residuals ``|p(r)|``."""

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    @classmethod
    def from_polynomial(cls, p: Polynomial, roots: Sequence[complex]) -> "RootSet":
        roots = tuple(complex(r) for r in roots)
        return cls(roots, tuple(abs(poly_eval(p, r)) for r in roots))

    def max_relative_residual(self, p: Polynomial) -> float:
        return max(res / residual_scale(p, r) for r, res in zip(self.roots, self.residuals))

    def is_conjugate_closed(self, tol: float = 1e-9) -> bool:
        return is_conjugate_closed(self.roots, tol)


def is_conjugate_closed(roots: Sequence[complex], tol: float = 1e-9) -> bool:
    roots = list(roots)
    return multiset_distance(roots, [r.conjugate() for r in roots]) <= tol


def _horner_with_bound(coeffs: Sequence[complex], z: complex) -> tuple[complex, complex, float]:
    # value, derivative and a running-error bound for the value
    p = 0j
    dp = 0j
    bound = 0.0
    az = abs(z)
    for c in coeffs:
        dp = dp * z + p
        p = p * z + c
        bound = bound * az + abs(p)
    return p, dp, bound


def oracle_roots(p: Polynomial) -> RootSet:
    """All complex roots of ``p`` by Aberth-Ehrlich simultaneous iteration.

    Starting points sit on the circle of radius ``1 + max|a_j / a_n|`` at angles
    ``2*pi*k/n + 0.4``, so the result is a deterministic function of ``p``.
    """
    n = p.degree
    if n < 1:
        raise ValueError("oracle_roots needs a polynomial of degree >= 1")
    lead = p.leading
    monic = [c / lead for c in p.coeffs]
    radius = 1.0 + max(abs(c) for c in monic[1:])
    z = [cmath.rect(radius, 2 * math.pi * k / n + ORACLE_ANGLE_OFFSET) for k in range(n)]

    converged = False
    for _ in range(ORACLE_MAX_ITER):
        done = True
        for k in range(n):
            val, der, bound = _horner_with_bound(monic, z[k])
            if abs(val) <= 16 * EPS * bound:
                continue
            if der == 0:
                z[k] += EPS * max(1.0, abs(z[k]))
                done = False
                continue
            ratio = val / der
            repulsion = sum(1.0 / (z[k] - z[j]) for j in range(n) if j != k and z[k] != z[j])
            denom = 1.0 - ratio * repulsion
            step = ratio / denom if denom != 0 else ratio
            z[k] -= step
            if abs(step) > EPS * max(abs(z[k]), EPS):
                done = False
        if done:
            converged = True
            break

    for k in range(n):
        val, der, _ = _horner_with_bound(monic, z[k])
        if der != 0:
            polished = z[k] - val / der
            if abs(_horner_with_bound(monic, polished)[0]) < abs(val):
                z[k] = polished

    roots = RootSet.from_polynomial(p, z)
    worst = max(
        res / residual_scale(p, r) for r, res in zip(roots.roots, roots.residuals)
    )
    if worst > ORACLE_TOL or not all(math.isfinite(abs(r)) for r in z):
        if not converged:
            raise ConvergenceError(
                f"Aberth iteration did not converge in {ORACLE_MAX_ITER} steps "
                f"(worst scaled residual {worst:.3g})"
            )
        raise ResidualError(f"oracle roots fail residual gate ({worst:.3g})")
    return roots


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


def multiset_distance(s1: Sequence[complex], s2: Sequence[complex]) -> float:
    """Bottleneck distance: min over pairings of the max pairwise distance."""
    a = np.asarray(list(s1), dtype=complex)
    b = np.asarray(list(s2), dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"cardinality mismatch: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    if a.size > 8:
        raise ValueError("brute-force pairing is limited to 8 elements")
    dist = np.abs(a[:, None] - b[None, :])
    perms = _permutations(a.size)
    rows = np.arange(a.size)
    return float(dist[rows, perms].max(axis=1).min())
