"""Term tables for the polynomials in (a, b) used by the Jerrard reduction.

Each polynomial is stored as printed, one ``Term`` per monomial, so that the
same data feeds both numeric evaluation and the weight-homogeneity audit.
Half-integer powers of ``a`` are exact ``Fraction`` exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numerics import cpow

H = Fraction(1, 2)


@dataclass(frozen=True)
class Term:
    coef: int
    a_exp: Fraction
    b_exp: int

    @property
    def weight(self) -> Fraction:
        # (a, b) -> (lam^2 a, lam^5 b)
        return 2 * self.a_exp + 5 * self.b_exp

    def __str__(self):
        parts = [str(self.coef)]
        if self.a_exp:
            parts.append(f"a^{self.a_exp}")
        if self.b_exp:
            parts.append(f"b^{self.b_exp}")
        return "*".join(parts)


def _t(coef, a_exp, b_exp=0) -> Term:
    return Term(coef, Fraction(a_exp), b_exp)


@dataclass(frozen=True)
class TermPolynomial:
    name: str
    terms: tuple[Term, ...]
    expected_weight: Fraction

    def __call__(self, a: complex, b: complex) -> complex:
        return evaluate(self.terms, a, b)

    def term_values(self, a: complex, b: complex) -> list[complex]:
        return [evaluate((term,), a, b) for term in self.terms]

    def replace_term(self, index: int, term: Term, name: str | None = None) -> "TermPolynomial":
        terms = list(self.terms)
        terms[index] = term
        return TermPolynomial(name or self.name, tuple(terms), self.expected_weight)


def evaluate(terms, a: complex, b: complex) -> complex:
    total = 0j
    for term in terms:
        value = complex(term.coef)
        if term.a_exp:
            value *= cpow(a, term.a_exp)
        if term.b_exp:
            value *= complex(b) ** term.b_exp
        total += value
    return total


def _poly(name, weight, *terms) -> TermPolynomial:
    return TermPolynomial(name, tuple(terms), Fraction(weight))


GAMMA = _poly("gamma", 10, _t(4, 5), _t(1, 0, 2))
ALPHA = _poly("alpha", 5, _t(8, 5 * H), _t(-1, 0, 1))
BETA = _poly("beta", 5, _t(2, 5 * H), _t(-1, 0, 1))
DELTA = _poly("delta", 10, _t(176, 5), _t(36, 5 * H, 1), _t(-1, 0, 2))

# inner radicand 11a^{5/2} - b of the square root in the Delta formula
SQRT_INNER = _poly("sqrt_inner", 5, _t(11, 5 * H), _t(-1, 0, 1))
# numerator of the second Delta term
DELTA_NUMERATOR = _poly(
    "delta_numerator", 15, _t(16, 15 * H), _t(4, 5, 1), _t(4, 5 * H, 2), _t(1, 0, 3)
)
# subtracted third Delta term
DELTA_SHIFT = _poly(
    "delta_shift", 17, _t(800, 17 * H), _t(-318, 6, 1), _t(227, 7 * H, 2), _t(-12, 1, 3)
)

F1 = _poly(
    "f1", 35,
    _t(2622464, 35 * H), _t(-1339776, 15, 1), _t(103828, 25 * H, 2), _t(218210, 10, 3),
    _t(-17365, 15 * H, 4), _t(-2858, 5, 5), _t(297, 5 * H, 6), _t(-1, 0, 7),
)
F2 = _poly(
    "f2", 25,
    _t(209024, 25 * H), _t(-30616, 10, 1), _t(-34508, 15 * H, 2), _t(-98, 5, 3),
    _t(530, 5 * H, 4), _t(-1, 0, 5),
)
G1 = _poly(
    "g1", 35,
    _t(133120, 35 * H), _t(-83520, 15, 1), _t(26804, 25 * H, 2), _t(1789, 10, 2),
    _t(-1082, 15 * H, 4), _t(386, 5, 5), _t(-48, 5 * H, 6), _t(1, 0, 7),
)
G1_SUSPECT_INDEX = 3
# b^2 -> b^3 restores weight 35 (the slot between the b^2 and b^4 terms)
G1_CORRECTED = G1.replace_term(G1_SUSPECT_INDEX, _t(1789, 10, 3), name="g1_corrected")
G2 = _poly(
    "g2", 25,
    _t(11200, 25 * H), _t(-3656, 10, 1), _t(-754, 15 * H, 2), _t(62, 5, 3),
    _t(-38, 5 * H, 4), _t(1, 0, 5),
)

C0_QUADRATIC = _poly("c0_quadratic", 10, _t(188, 5), _t(86, 5 * H, 1), _t(9, 0, 2))
C1_QUADRATIC = _poly("c1_quadratic", 5, _t(4, 5 * H), _t(1, 0, 1))

D0_FACTOR = _poly("d0_factor", 5, _t(2, 5 * H), _t(1, 0, 1))
D2_FACTOR = _poly("d2_factor", 10, _t(8, 5), _t(-3, 5 * H, 1), _t(-1, 0, 2))
D3_FACTOR = _poly("d3_factor", 5, _t(16, 5 * H), _t(3, 0, 1))

PRINCIPAL_P2 = _poly("principal_p2", 6, _t(5, H, 1), _t(-10, 3))
PRINCIPAL_P1 = _poly("principal_p1", 8, _t(15, 4))
PRINCIPAL_P0 = _poly("principal_p0", 10, _t(9, 5 * H, 1), _t(22, 5), _t(1, 0, 2))

PRINTED = (
    GAMMA, ALPHA, BETA, DELTA, SQRT_INNER, DELTA_NUMERATOR, DELTA_SHIFT,
    F1, F2, G1, G2, C0_QUADRATIC, C1_QUADRATIC, D0_FACTOR, D2_FACTOR, D3_FACTOR,
    PRINCIPAL_P2, PRINCIPAL_P1, PRINCIPAL_P0,
)
