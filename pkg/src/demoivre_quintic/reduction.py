"""Principal-form and Bring-Jerrard reduction of the De Moivre quintic.

The quadratic Tschirnhausen map ``y = x^2 + sqrt(a) x + 2a`` takes the quintic
to principal form ``y^5 + p2 y^2 + p1 y + p0``.  A quartic map
``w = sum_k d_k y^k`` then kills the ``w^2`` coefficient, leaving
``w^5 + c1 w + c0``, and the scaling ``z = e^{-i pi/4} c1^{-1/4} w`` lands on
``z^5 - z + t`` with ``t = -e^{-i pi/4} c0 c1^{-5/4}``.

The closed forms for ``Delta = alpha * d_1``, ``c0`` and ``c1`` are multi-valued
and two of them carry misprints, so every evaluation is audited numerically:
``score_branches`` scores all 24 branch combinations by the Bring residual, and
``bring_reduce`` walks a calibration ladder of formula variants, recording
which one passed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import formulas as F
from .demoivre import DeMoivreQuintic, gamma, solve_radical
from .errors import BranchSelectionError, ResidualError, SingularInputError
from .numerics import (
    Polynomial,
    RootSet,
    check_finite,
    cpow,
    csqrt,
    nth_root_branches,
    poly_eval,
    poly_from_roots,
)

GATE = 1e-6
PRINCIPAL_TOL = 1e-8
SINGULAR_TOL = 1e-8
# values within a factor TIE_FACTOR of the best (or below TIE_FLOOR) tie
TIE_FACTOR = 2.0
TIE_FLOOR = 1e-14
DIAGNOSTIC_TOL = 1e-6

ROT = cmath.exp(-1j * math.pi / 4)
_CBRT3 = 3.0 ** (1 / 3)
_CBRT9 = 3.0 ** (2 / 3)

DELTA_FORMS = ("printed", "corrected")
G1_FORMS = ("printed", "corrected")


@dataclass(frozen=True)
class Variant:
    """Which reading of the closed forms to use.

    ``delta="corrected"`` drops the stray ``alpha`` from the first Delta term
    and replaces ``1/alpha`` by ``delta`` in the second one (the reading that
    makes Delta a root of the cubic killing the ``w^2`` coefficient).
    ``g1="corrected"`` uses ``1789 a^10 b^3`` instead of ``1789 a^10 b^2``.
    """

    delta: str = "printed"
    g1: str = "printed"

    def __post_init__(self):
        if self.delta not in DELTA_FORMS or self.g1 not in G1_FORMS:
            raise ValueError(f"unknown variant {self.delta!r}/{self.g1!r}")

    @property
    def name(self) -> str:
        fixes = [f"{part}-corrected" for part, form in (("delta", self.delta), ("g1", self.g1))
                 if form == "corrected"]
        return "+".join(fixes) if fixes else "printed"


PRINTED_VARIANT = Variant()
CALIBRATION_LADDER = (
    Variant("printed", "printed"),
    Variant("printed", "corrected"),
    Variant("corrected", "printed"),
    Variant("corrected", "corrected"),
)
DEGENERATE = "degenerate"


@dataclass(frozen=True, order=True)
class BranchChoice:
    sqrt_branch: int = 0
    cbrt_branch: int = 0
    quartic_branch: int = 0

    def as_dict(self) -> dict:
        return {
            "sqrt_branch": self.sqrt_branch,
            "cbrt_branch": self.cbrt_branch,
            "quartic_branch": self.quartic_branch,
        }


@dataclass(frozen=True)
class PrincipalQuintic:
    p2: complex
    p1: complex
    p0: complex

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial.from_coeffs([1, 0, 0, self.p2, self.p1, self.p0])

    @property
    def is_bring_form(self) -> bool:
        return self.p2 == 0


def _check_domain(q: DeMoivreQuintic, allow_complex: bool) -> None:
    if q.a < 0 and not allow_complex:
        raise ValueError("a must be >= 0 for a real principal form (pass allow_complex=True)")


def _near_zero(value: complex, *terms: complex, tol: float = SINGULAR_TOL) -> bool:
    scale = max((abs(t) for t in terms), default=0.0)
    return abs(value) <= tol * scale or value == 0


def tschirnhausen_map(q: DeMoivreQuintic) -> Polynomial:
    """The quadratic map ``x^2 + sqrt(a) x + 2a`` as a polynomial in ``x``."""
    return Polynomial.from_coeffs([1, csqrt(q.a), 2 * q.a])


def tschirnhausen_apply(x_roots, poly_map: Polynomial) -> Polynomial:
    """Monic polynomial whose roots are ``poly_map(x_j)``."""
    x_roots = list(x_roots)
    if len(x_roots) != 5:
        raise ValueError("expected exactly five roots")
    if poly_map.degree > 4:
        raise ValueError("map degree must be <= 4")
    return poly_from_roots([poly_eval(poly_map, x) for x in x_roots])


def to_principal(q: DeMoivreQuintic, allow_complex: bool = False, verify: bool = True) -> PrincipalQuintic:
    _check_domain(q, allow_complex)
    a, b = q.a, q.b
    pq = PrincipalQuintic(
        check_finite(F.PRINCIPAL_P2(a, b)),
        check_finite(F.PRINCIPAL_P1(a, b)),
        check_finite(-F.PRINCIPAL_P0(a, b)),
    )
    if verify:
        image = tschirnhausen_apply(solve_radical(q).roots, tschirnhausen_map(q))
        scale = max(1.0, abs(pq.p0), abs(pq.p1), abs(pq.p2))
        err = max(abs(u - v) for u, v in zip(image.coeffs, pq.polynomial.coeffs)) / scale
        if err > PRINCIPAL_TOL:
            raise ResidualError(f"principal form does not match the mapped roots (rel. err {err:.3g})")
    return pq


def jerrard_constants(q: DeMoivreQuintic) -> tuple[complex, complex, complex]:
    """``(alpha, beta, delta) = (8a^{5/2} - b, 2a^{5/2} - b, 176a^5 + 36a^{5/2}b - b^2)``."""
    a, b = q.a, q.b
    return F.ALPHA(a, b), F.BETA(a, b), F.DELTA(a, b)


def _sqrt_radicand(a: float, b: float) -> complex:
    return 3 * cpow(a, Fraction(3, 2)) * F.SQRT_INNER(a, b)


def _check_common_singular(q: DeMoivreQuintic) -> None:
    a, b = q.a, q.b
    if a == 0:
        raise SingularInputError("a")
    if _near_zero(gamma(q), *F.GAMMA.term_values(a, b)):
        raise SingularInputError("gamma")
    if _near_zero(F.ALPHA(a, b), *F.ALPHA.term_values(a, b)):
        raise SingularInputError("alpha")


def is_degenerate(q: DeMoivreQuintic) -> bool:
    """True on ``b = 2 a^{5/2}``, where the principal form is already trinomial."""
    return _near_zero(F.BETA(q.a, q.b), *F.BETA.term_values(q.a, q.b))


def _delta_table(q: DeMoivreQuintic, form: str) -> list[tuple[BranchChoice, complex, float]]:
    if form not in DELTA_FORMS:
        raise ValueError(f"unknown Delta form {form!r}")
    _check_common_singular(q)
    a, b = q.a, q.b
    alpha, beta, delta = jerrard_constants(q)
    sg = csqrt(gamma(q))
    sa = csqrt(a)
    numerator = F.DELTA_NUMERATOR(a, b)
    shift = F.DELTA_SHIFT(a, b)
    out = []
    for i, s in enumerate(nth_root_branches(_sqrt_radicand(a, b), 2)):
        radicand = beta * s - 9 * a * a * sg
        if _near_zero(radicand, beta * s, 9 * a * a * sg):
            raise SingularInputError("cube_radicand", "the cube-root radicand in Delta vanishes")
        radicand_cond = _cancellation((beta * s, -9 * a * a * sg))
        for j, c in enumerate(nth_root_branches(radicand, 3)):
            if form == "printed":
                first = delta * sg * alpha / (_CBRT9 * sa) * c
                second = numerator / (_CBRT3 * alpha * sg) / c
            else:
                first = delta * sg / (_CBRT9 * sa) * c
                second = delta * numerator / (_CBRT3 * sg) / c
            value = 25 * (first + second - shift)
            cond = radicand_cond * _cancellation((first, second, -shift))
            out.append((BranchChoice(i, j, 0), check_finite(value, "Delta"), cond))
    return out


def delta_candidates(q: DeMoivreQuintic, form: str = "printed") -> list[tuple[BranchChoice, complex]]:
    """All six values of Delta, one per (square-root, cube-root) branch pair.

    ``sqrt(gamma)`` stays principal.  ``form="printed"`` follows the formula as
    typeset; ``form="corrected"`` is the Cardano-consistent reading.
    """
    return [(choice, value) for choice, value, _ in _delta_table(q, form)]


def fg_polynomials(q: DeMoivreQuintic, g1: str = "printed") -> tuple[complex, complex, complex, complex]:
    if g1 not in G1_FORMS:
        raise ValueError(f"unknown g1 form {g1!r}")
    a, b = q.a, q.b
    g1_poly = F.G1 if g1 == "printed" else F.G1_CORRECTED
    return F.F1(a, b), F.F2(a, b), g1_poly(a, b), F.G2(a, b)


def _c_terms(q: DeMoivreQuintic, Delta: complex, g1: str) -> tuple[tuple[complex, ...], tuple[complex, ...]]:
    a, b = q.a, q.b
    _, beta, _ = jerrard_constants(q)
    f1, f2, g1v, g2 = fg_polynomials(q, g1)
    sa = csqrt(a)
    c0_terms = (
        5625 * beta**2 * f1,
        25 / a * beta * Delta * f2,
        3 * sa * Delta**2 * F.C0_QUADRATIC(a, b),
    )
    c1_terms = (
        5625 * beta**2 * g1v,
        25 / a * beta * Delta * g2,
        9 * a**3 * Delta**2 * F.C1_QUADRATIC(a, b),
    )
    return c0_terms, c1_terms


def _cancellation(terms) -> float:
    total = abs(sum(terms))
    return sum(abs(t) for t in terms) / total if total else math.inf


def coefficient_condition(q: DeMoivreQuintic, Delta: complex, g1: str = "printed") -> float:
    """Cancellation ratio ``sum|term| / |sum|`` of the c0 and c1 brackets (worst of the two).

    Every term of a bracket has the same weight, so the ratio is invariant
    under ``(a, b) -> (lam^2 a, lam^5 b)``; it estimates how many digits the
    closed forms lose for this root of the Delta cubic.
    """
    c0_terms, c1_terms = _c_terms(q, Delta, g1)
    return max(_cancellation(c0_terms), _cancellation(c1_terms))


def c_coefficients(q: DeMoivreQuintic, Delta: complex, g1: str = "printed") -> tuple[complex, complex]:
    """``(c0, c1)``: constant and linear coefficients of ``w^5 + c1 w + c0``."""
    a, b = q.a, q.b
    if a == 0:
        raise SingularInputError("a")
    alpha, beta, delta = jerrard_constants(q)
    if alpha == 0:
        raise SingularInputError("alpha")
    c0_terms, c1_terms = _c_terms(q, Delta, g1)
    g = gamma(q)
    c1_bracket = sum(c1_terms)
    if _near_zero(delta, *F.DELTA.term_values(a, b)) or _near_zero(c1_bracket, *c1_terms):
        raise SingularInputError("c1", "c1 vanishes, so t is undefined")
    c0 = 5**6 * delta**3 * g * g / alpha**5 * sum(c0_terms)
    c1 = 5**5 * delta**2 * g * csqrt(a) / alpha**4 * c1_bracket
    return check_finite(c0, "c0"), check_finite(c1, "c1")


def d_coefficients(q: DeMoivreQuintic, Delta: complex) -> tuple[complex, ...]:
    """Coefficients ``d_0..d_4`` of the quartic map ``w = sum_k d_k y^k``."""
    a, b = q.a, q.b
    alpha, beta, _ = jerrard_constants(q)
    if alpha == 0:
        raise SingularInputError("alpha")
    ratio = beta / alpha
    d = (
        675 * ratio * F.D0_FACTOR(a, b) * a * a * b,
        Delta / alpha,
        25 * ratio * F.D2_FACTOR(a, b),
        75 * ratio * cpow(a, Fraction(3, 2)) * F.D3_FACTOR(a, b),
        75 * beta * csqrt(a),
    )
    return tuple(check_finite(v, "d") for v in d)


def quartic_map(d) -> Polynomial:
    """``sum_k d_k y^k`` as a polynomial (highest degree first)."""
    coeffs = list(reversed(d))
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
    return Polynomial.from_coeffs(coeffs)


def bring_image(y_roots, d, c0: complex, c1: complex, quartic_branch: int) -> tuple[complex, list[complex]]:
    """``t`` and the ``z_j`` for one quartic branch of ``c1^{1/4}``.

    The same branch ``rho`` feeds both ``c1^{-1/4}`` and ``c1^{-5/4} = rho^-5``.
    """
    rho = nth_root_branches(c1, 4)[quartic_branch]
    t = -ROT * c0 / rho**5
    zs = [ROT / rho * sum(dk * y**k for k, dk in enumerate(d)) for y in y_roots]
    return check_finite(t, "t"), [check_finite(z, "z") for z in zs]


def bring_residual(t: complex, zs) -> float:
    return max(abs(z**5 - z + t) for z in zs)


@dataclass(frozen=True)
class BranchScore:
    branch: BranchChoice
    score: float
    Delta: complex
    t: complex
    condition: float = 1.0

    def as_dict(self) -> dict:
        return {"branch": self.branch.as_dict(), "score": self.score, "condition": self.condition}


@dataclass(frozen=True)
class JerrardData:
    """Every quantity of one Bring-Jerrard reduction plus its provenance."""

    a: float
    b: float
    alpha: complex
    beta: complex
    delta: complex
    Delta: complex
    d: tuple[complex, ...]
    c0: complex
    c1: complex
    t: complex
    branch: BranchChoice
    variant: str


def _y_roots(q: DeMoivreQuintic, x_roots=None) -> tuple[list[complex], list[complex]]:
    if x_roots is None:
        x_roots = solve_radical(q).roots
    sa = csqrt(q.a)
    return list(x_roots), [x * x + sa * x + 2 * q.a for x in x_roots]


def score_branches(q: DeMoivreQuintic, variant: Variant = PRINTED_VARIANT, x_roots=None) -> list[BranchScore]:
    """Bring residual ``max_j |z_j^5 - z_j + t|`` for all 6 x 4 branch combinations."""
    _, ys = _y_roots(q, x_roots)
    table = []
    for choice, Delta, delta_cond in _delta_table(q, variant.delta):
        c0, c1 = c_coefficients(q, Delta, variant.g1)
        d = d_coefficients(q, Delta)
        cond = delta_cond * coefficient_condition(q, Delta, variant.g1)
        for k in range(4):
            t, zs = bring_image(ys, d, c0, c1, k)
            branch = BranchChoice(choice.sqrt_branch, choice.cbrt_branch, k)
            table.append(BranchScore(branch, bring_residual(t, zs), Delta, t, cond))
    return table


def _ties(score: float, lowest: float) -> bool:
    return score <= max(TIE_FACTOR * lowest, TIE_FLOOR)


def best_of(table: list[BranchScore]) -> BranchScore:
    """The branch combination to use.

    Among combinations passing the residual gate, the best-conditioned root
    of the Delta cubic wins (lowest ``condition``); conditions within a factor
    ``TIE_FACTOR`` tie and the lexicographically smallest branch is taken.
    The residuals themselves are rounding noise once they pass, so ranking
    by them would make the choice (and hence ``t``) jump between the equally
    valid roots.  If nothing passes, the lowest residual is returned.
    """
    passing = [s for s in table if s.score <= GATE]
    if not passing:
        lowest = min(s.score for s in table)
        return min((s for s in table if _ties(s.score, lowest)), key=lambda s: s.branch)
    lowest = min(s.condition for s in passing)
    return min((s for s in passing if _ties(s.condition, lowest)), key=lambda s: s.branch)


def select_branch(q: DeMoivreQuintic, variant: Variant = PRINTED_VARIANT) -> BranchChoice:
    table = score_branches(q, variant)
    best = best_of(table)
    if best.score > GATE:
        raise BranchSelectionError(
            f"no branch passes the Bring residual gate (best {best.score:.3g})",
            table=[s.as_dict() for s in table],
        )
    return best.branch


@dataclass(frozen=True)
class StageCheck:
    stage: str
    value: float
    passed: bool

    def as_dict(self) -> dict:
        return {"stage": self.stage, "value": self.value, "passed": self.passed}


def _rel_e(coeffs, k: int, wmax: float) -> float:
    return abs(coeffs[k]) / (math.comb(5, k) * wmax**k)


def diagnose(q: DeMoivreQuintic, variant: Variant = PRINTED_VARIANT) -> list[StageCheck]:
    """Check each intermediate of the reduction in pipeline order.

    Stages: ``principal`` (mapped roots vs the principal coefficients),
    ``d_map`` (the ``w^4`` and ``w^3`` coefficients vanish), ``delta`` (some
    Delta candidate kills the ``w^2`` coefficient), ``c1``/``c0`` (closed forms
    vs the coefficients of the mapped quintic) and ``bring`` (the residual
    gate).  The first failing stage localises the faulty formula.
    """
    x_roots, ys = _y_roots(q)
    checks = []

    pq = to_principal(q, verify=False)
    image = tschirnhausen_apply(x_roots, tschirnhausen_map(q))
    scale = max(1.0, abs(pq.p0), abs(pq.p1), abs(pq.p2))
    err = max(abs(u - v) for u, v in zip(image.coeffs, pq.polynomial.coeffs)) / scale
    checks.append(StageCheck("principal", err, err <= PRINCIPAL_TOL))

    cands = delta_candidates(q, variant.delta)
    per_candidate = []
    for _, Delta in cands:
        d = d_coefficients(q, Delta)
        ws = [sum(dk * y**k for k, dk in enumerate(d)) for y in ys]
        coeffs = poly_from_roots(ws).coeffs
        wmax = max(abs(w) for w in ws) or 1.0
        per_candidate.append((Delta, coeffs, wmax))

    Delta, coeffs, wmax = per_candidate[0]
    trace = max(_rel_e(coeffs, 1, wmax), _rel_e(coeffs, 2, wmax))
    checks.append(StageCheck("d_map", trace, trace <= DIAGNOSTIC_TOL))

    Delta, coeffs, wmax = min(per_candidate, key=lambda item: _rel_e(item[1], 3, item[2]))
    e3 = _rel_e(coeffs, 3, wmax)
    checks.append(StageCheck("delta", e3, e3 <= DIAGNOSTIC_TOL))

    c0, c1 = c_coefficients(q, Delta, variant.g1)
    err1 = abs(c1 - coeffs[4]) / max(abs(coeffs[4]), 1e-300)
    err0 = abs(c0 - coeffs[5]) / max(abs(coeffs[5]), 1e-300)
    checks.append(StageCheck("c1", err1, err1 <= DIAGNOSTIC_TOL))
    checks.append(StageCheck("c0", err0, err0 <= DIAGNOSTIC_TOL))

    best = best_of(score_branches(q, variant, x_roots))
    checks.append(StageCheck("bring", best.score, best.score <= GATE))
    return checks


def first_failure(checks: list[StageCheck]) -> str | None:
    for check in checks:
        if not check.passed:
            return check.stage
    return None


@dataclass(frozen=True)
class VariantAttempt:
    variant: str
    passed: bool
    best_score: float
    table: tuple[BranchScore, ...]
    diagnostics: tuple[StageCheck, ...] = ()

    @property
    def first_failure(self) -> str | None:
        return first_failure(list(self.diagnostics))

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "passed": self.passed,
            "best_score": self.best_score,
            "first_failure": self.first_failure,
            "diagnostics": [c.as_dict() for c in self.diagnostics],
            "table": [s.as_dict() for s in self.table],
        }


@dataclass(frozen=True)
class BringReduction:
    data: JerrardData
    principal: PrincipalQuintic
    x_roots: RootSet
    z_roots: RootSet
    table: tuple[BranchScore, ...]
    attempts: tuple[VariantAttempt, ...] = field(default=())

    @property
    def degenerate(self) -> bool:
        return self.data.variant == DEGENERATE

    @property
    def residual(self) -> float:
        return max(self.z_roots.residuals)


def bring_polynomial(t: complex) -> Polynomial:
    return Polynomial.from_coeffs([1, 0, 0, 0, -1, t])


def _trinomial_error(t: complex, zs) -> float:
    image = poly_from_roots(zs).coeffs
    target = bring_polynomial(t).coeffs
    return max(abs(u - v) for u, v in zip(image, target))


def _finish(q, pq, x_roots, ys, table, best, d, c0, c1, variant, alpha, beta, delta, attempts):
    t, zs = bring_image(ys, d, c0, c1, best.branch.quartic_branch)
    data = JerrardData(q.a, q.b, alpha, beta, delta, best.Delta, tuple(d), c0, c1, t, best.branch, variant)
    return BringReduction(
        data, pq, x_roots, RootSet.from_polynomial(bring_polynomial(t), zs), tuple(table), tuple(attempts)
    )


def _reduce_degenerate(q, pq, x_roots, ys) -> BringReduction:
    # principal form is y^5 + p1 y + p0 already: identity quartic map, c1 = p1, c0 = p0
    alpha, beta, delta = jerrard_constants(q)
    d = (0j, 1 + 0j, 0j, 0j, 0j)
    c0, c1 = pq.p0, pq.p1
    table = []
    for k in range(4):
        t, zs = bring_image(ys, d, c0, c1, k)
        table.append(BranchScore(BranchChoice(0, 0, k), bring_residual(t, zs), alpha, t))
    best = best_of(table)
    if best.score > GATE:
        raise BranchSelectionError(
            f"degenerate scaling fails the residual gate ({best.score:.3g})",
            table=[s.as_dict() for s in table],
        )
    return _finish(q, pq, x_roots, ys, table, best, d, c0, c1, DEGENERATE, alpha, beta, delta, ())


def bring_reduce(
    q: DeMoivreQuintic, variant: Variant | None = None, allow_complex: bool = False
) -> BringReduction:
    """Reduce ``q`` to ``z^5 - z + t`` and return the data with the ``z_j``.

    With ``variant=None`` every rung of the calibration ladder (printed,
    g1-corrected, Delta-corrected, both) is scored.  Among the variants whose
    best branch passes the residual gate and the trinomial check, the lowest
    residual wins; ties go to the earlier rung, so the printed formulas
    are preferred whenever they are right.  Every attempt, with stage
    diagnostics for the failures, is kept in ``attempts``.  On ``b = 2 a^{5/2}`` the principal
    form is already trinomial and is scaled directly.
    """
    _check_domain(q, allow_complex)
    _check_common_singular(q)
    pq = to_principal(q, allow_complex=allow_complex)
    x_roots = solve_radical(q)
    _, ys = _y_roots(q, x_roots.roots)
    if is_degenerate(q):
        return _reduce_degenerate(q, pq, x_roots, ys)

    alpha, beta, delta = jerrard_constants(q)
    ladder = CALIBRATION_LADDER if variant is None else (variant,)
    attempts = []
    winner = None
    for v in ladder:
        table = score_branches(q, v, x_roots.roots)
        best = best_of(table)
        passed = best.score <= GATE
        if passed:
            d = d_coefficients(q, best.Delta)
            c0, c1 = c_coefficients(q, best.Delta, v.g1)
            t, zs = bring_image(ys, d, c0, c1, best.branch.quartic_branch)
            passed = _trinomial_error(t, zs) <= GATE
        if passed:
            attempts.append(VariantAttempt(v.name, True, best.score, tuple(table)))
            if winner is None or not _ties(winner[1].score, best.score):
                winner = (v, best, table, d, c0, c1)
        else:
            attempts.append(VariantAttempt(v.name, False, best.score, tuple(table), tuple(diagnose(q, v))))

    if winner is not None:
        v, best, table, d, c0, c1 = winner
        return _finish(q, pq, x_roots, ys, table, best, d, c0, c1, v.name, alpha, beta, delta, attempts)

    raise BranchSelectionError(
        "no formula variant passes the Bring residual gate: "
        + "; ".join(f"{a.variant}: best {a.best_score:.3g}, first failing stage {a.first_failure}"
                    for a in attempts),
        table=[a.as_dict() for a in attempts],
        diagnostics=[(a.variant, a.first_failure) for a in attempts],
    )
