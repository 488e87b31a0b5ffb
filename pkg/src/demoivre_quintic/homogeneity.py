"""Weight-homogeneity audit of the printed reduction polynomials.

Under ``(a, b) -> (lam^2 a, lam^5 b)`` the monomial ``a^p b^q`` scales as
``lam^(2p + 5q)``.  Every correct polynomial in the reduction is homogeneous,
so a monomial whose weight differs from its siblings is a misprint.  The check
is exact (rational arithmetic).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import formulas


@dataclass(frozen=True)
class TermVerdict:
    polynomial: str
    index: int
    term: str
    weight: Fraction
    expected: Fraction

    @property
    def ok(self) -> bool:
        return self.weight == self.expected


@dataclass(frozen=True)
class HomogeneityReport:
    verdicts: tuple[TermVerdict, ...]

    @property
    def anomalies(self) -> list[TermVerdict]:
        return [v for v in self.verdicts if not v.ok]

    def polynomial_weight(self, name: str) -> Fraction:
        """Majority weight among the terms of ``name``."""
        counts = Counter(v.weight for v in self.verdicts if v.polynomial == name)
        return counts.most_common(1)[0][0]


def audit_polynomial(poly: formulas.TermPolynomial) -> list[TermVerdict]:
    return [
        TermVerdict(poly.name, i, str(term), term.weight, poly.expected_weight)
        for i, term in enumerate(poly.terms)
    ]


def audit_homogeneity(polys=formulas.PRINTED) -> HomogeneityReport:
    verdicts = []
    for poly in polys:
        verdicts.extend(audit_polynomial(poly))
    return HomogeneityReport(tuple(verdicts))
