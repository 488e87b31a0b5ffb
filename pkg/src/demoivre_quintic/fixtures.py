"""Closed-form constants from two published 4F3 evaluations.

Each constant is an evaluator over a scalar backend rather than a decimal, so
the same expression can be computed in binary64 (``FLOAT``) or, for
cross-checks, in extended precision (``mpmath_backend()``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable


@dataclass(frozen=True)
class Backend:
    """Scalar operations a radical expression needs: exact rationals, square
    roots and rational powers of positive reals."""

    name: str
    num: Callable
    sqrt: Callable
    rpow: Callable  # rpow(x, Fraction) for x > 0


FLOAT = Backend(
    "float",
    num=lambda n: float(n),
    sqrt=math.sqrt,
    rpow=lambda x, p: x ** (p.numerator / p.denominator),
)


def mpmath_backend(dps: int = 50) -> Backend:
    import mpmath

    ctx = mpmath.mp.clone()
    ctx.dps = dps
    return Backend(
        f"mpmath[{dps}]",
        num=lambda n: ctx.mpf(n.numerator) / n.denominator if isinstance(n, Fraction) else ctx.mpf(n),
        sqrt=ctx.sqrt,
        rpow=lambda x, p: ctx.power(x, ctx.mpf(p.numerator) / p.denominator),
    )


def _fr(p, q=1) -> Fraction:
    return Fraction(p, q)


# --- b = 2 a^{5/2}: argument -14641/243 -------------------------------------

def two_a52_argument(bk: Backend = FLOAT):
    return -bk.num(_fr(14641, 243))


def _two_a52_parts(bk: Backend):
    r2 = bk.sqrt(bk.num(2))
    p, m = r2 + 1, r2 - 1
    return p, m


def two_a52_value_printed(bk: Backend = FLOAT):
    """(15/44)[(sqrt2+1)^{2/5} + (sqrt2-1)^{2/5} - (sqrt2+1)^{1/5} + (sqrt2-1)^{1/5}]."""
    p, m = _two_a52_parts(bk)
    f = bk.rpow
    return bk.num(_fr(15, 44)) * (
        f(p, _fr(2, 5)) + f(m, _fr(2, 5)) - f(p, _fr(1, 5)) + f(m, _fr(1, 5))
    )


def two_a52_value_symmetric(bk: Backend = FLOAT):
    """Sign variant with both fifth-root terms subtracted."""
    p, m = _two_a52_parts(bk)
    f = bk.rpow
    return bk.num(_fr(15, 44)) * (
        f(p, _fr(2, 5)) + f(m, _fr(2, 5)) - f(p, _fr(1, 5)) - f(m, _fr(1, 5))
    )


# --- the sqrt(182) / sqrt(26) pair -------------------------------------------

def _closing_parts(bk: Backend):
    n, f, sq = bk.num, bk.rpow, bk.sqrt
    r182, r26, r14 = sq(n(182)), sq(n(26)), sq(n(14))
    c = n(13) + r182
    c13, c23 = f(c, _fr(1, 3)), f(c, _fr(2, 3))
    t13, t23, t16 = f(n(13), _fr(1, 3)), f(n(13), _fr(2, 3)), f(n(13), _fr(1, 6))
    upper = (789 * t23 + 247 * t16 * r14) * c13 + 2275 * c23 - t13 * (6799 + 542 * r182)
    lower = (-7 * t23 + 3 * t16 * r14) * c13 - 161 * c23 + t13 * (133 + 10 * r182)
    return dict(r26=r26, c13=c13, c23=c23, t13=t13, t23=t23, upper=upper, lower=lower)


def closing_argument(bk: Backend = FLOAT):
    P = _closing_parts(bk)
    return P["c23"] * P["upper"] ** 4 / (1521 * P["lower"] ** 5)


def closing_value(bk: Backend = FLOAT):
    P = _closing_parts(bk)
    n, f = bk.num, bk.rpow
    r26, c13, c23, t13, t23 = P["r26"], P["c13"], P["c23"], P["t13"], P["t23"]
    q1, q2, q3, q4 = (f(n(5) + r26, _fr(k, 5)) for k in range(1, 5))
    m1, m2, m3, m4 = (f(r26 - 5, _fr(k, 5)) for k in range(1, 5))
    edge = -142 * t23 + 142 * t13 * c23

    big = (
        -3 * m4 * c13 * (1103 + 3465 * q1 + 5355 * q2 + 3780 * q3)
        + 3 * m3 * c13 * (8872 + 1485 * r26 + 4412 * q1 + 6930 * q2 + 3780 * q4)
        + m1 * (edge + c13 * (34114 + 5355 * r26 + 13236 * q3 + 10395 * q4
                              - 9 * q2 * (-2797 + 180 * r26)))
        - m2 * (edge + c13 * (33742 + 6480 * r26 + 20790 * q3 + 16065 * q4
                              + 9 * q1 * (2797 + 180 * r26)))
        + q1 * (
            142 * t23
            - 3309 * q3 * c13
            + 3 * q2 * (-8872 + 1485 * r26) * c13
            + (-34114 + 5355 * r26) * c13
            - 142 * t13 * c23
            + 2 * q1 * (71 * t23 + (-16871 + 3240 * r26) * c13 - 71 * t13 * c23)
        )
    )
    return 5 * P["lower"] * big / (568 * c13 * P["upper"])


@dataclass(frozen=True)
class Fixture:
    name: str
    argument: Callable
    variants: tuple[tuple[str, Callable], ...]


FIXTURES = (
    Fixture(
        "two_a52",
        two_a52_argument,
        (("printed", two_a52_value_printed), ("symmetric", two_a52_value_symmetric)),
    ),
    Fixture("sqrt182", closing_argument, (("printed", closing_value),)),
)
