"""The 4F3(1/5,2/5,3/5,4/5; 1/2,3/4,5/4; w) series and its continuation.

Near ``t = 0`` the root of ``z^5 - z + t`` that vanishes with ``t`` is
``t * 4F3(...; 3125 t^4 / 256)``.  Outside the unit disk the function is
continued by tracking that root along the straight path ``s * t``, which is
well defined as long as the path avoids the four branch points
``3125 t^4 = 256``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .demoivre import DeMoivreQuintic
from .errors import BranchPointError
from .numerics import check_finite, csqrt, nth_root_branches
from .reduction import bring_reduce

UPPER = (0.2, 0.4, 0.6, 0.8)
LOWER = (0.5, 0.75, 1.25)

IDENTITY_TOL = 1e-10
MATCH_TOL = 1e-8
BRANCH_POINT_TOL = 1e-9
BRANCH_POINT_RADIUS = (256 / 3125) ** 0.25

_NEWTON_MAX = 8
_MIN_STEP = 1e-13
_MAX_STEP = 0.05


def argument_from_t(t: complex) -> complex:
    """``w = 3125 t^4 / 256``."""
    return 3125 * complex(t) ** 4 / 256


def t_branches(w: complex) -> list[complex]:
    """The four solutions ``t`` of ``3125 t^4 / 256 = w``, principal first."""
    return nth_root_branches(256 * complex(w) / 3125, 4)


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    truncation_bound: float
    converged: bool


def term_ratio(k: int) -> float:
    """``T_{k+1} / (w T_k)``; always in ``(0, 1)``."""
    num = math.prod(u + k for u in UPPER)
    den = math.prod(v + k for v in LOWER) * (1.0 + k)
    return num / den


def f43_series(w: complex, tol: float = 1e-16, max_terms: int = 200_000) -> SeriesResult:
    """Direct summation of the series with a rigorous tail bound.

    Because every coefficient ratio is below one, the tail after term ``T_N``
    is bounded by ``|T_N| |w| / (1 - |w|)`` inside the unit disk.  Summation
    stops when that bound drops below ``tol * max(1, |S|)``; outside the disk
    the bound is infinite and the result is never marked converged.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = complex(w)
    aw = abs(w)
    inside = aw < 1
    term = 1 + 0j
    total = 1 + 0j
    bound = 0.0 if w == 0 else (aw / (1 - aw) if inside else math.inf)
    n = 1
    by_tolerance = bound <= tol
    while not by_tolerance and n < max_terms:
        term *= w * term_ratio(n - 1)
        total += term
        n += 1
        if not math.isfinite(abs(total)):
            break
        if inside:
            bound = abs(term) * aw / (1 - aw)
            by_tolerance = bound <= tol * max(1.0, abs(total))
        else:
            by_tolerance = abs(term) <= tol * abs(total)
    return SeriesResult(total, n, bound, by_tolerance and inside)


def branch_point_distance(t: complex) -> tuple[float, float]:
    """Smallest distance from the segment ``[0, t]`` to a branch point, and the
    path parameter ``s`` where it is attained."""
    t = complex(t)
    best = (math.inf, 0.0)
    if t == 0:
        return BRANCH_POINT_RADIUS, 0.0
    tt = abs(t) ** 2
    for bp in (BRANCH_POINT_RADIUS * u for u in (1, 1j, -1, -1j)):
        s = min(1.0, max(0.0, (bp * t.conjugate()).real / tt))
        dist = abs(s * t - bp)
        if dist < best[0]:
            best = (dist, s)
    return best


def _newton(z: complex, c: complex) -> tuple[complex, bool]:
    for _ in range(_NEWTON_MAX):
        f = z**5 - z + c
        df = 5 * z**4 - 1
        if df == 0:
            return z, False
        step = f / df
        z -= step
        if abs(step) <= 4e-16 * max(1.0, abs(z)):
            return z, True
    return z, abs(z**5 - z + c) <= 1e-14 * max(1.0, abs(z) ** 5)


def _separation(z: complex) -> float:
    # distance to the nearest colliding root, from the local quadratic model
    d1 = abs(5 * z**4 - 1)
    d2 = abs(20 * z**3)
    if d2 == 0:
        return 1.0
    return min(1.0, 2 * d1 / d2)


def bring_principal_root(t: complex) -> complex:
    """The root of ``z^5 - z + t`` continued from ``z = 0`` along ``s * t``.

    Predictor-corrector tracking: an Euler step along ``dz/ds = -t/(5z^4 - 1)``
    followed by Newton.  A step is accepted only if the move stays well inside
    the estimated separation from the neighbouring roots; otherwise the step
    is halved.
    """
    t = check_finite(t, "t")
    if t == 0:
        return 0j
    dist, s_at = branch_point_distance(t)
    if dist <= BRANCH_POINT_TOL:
        raise BranchPointError(s_at, dist)

    z = 0j
    s = 0.0
    h = _MAX_STEP
    streak = 0
    while s < 1.0:
        h = min(h, 1.0 - s)
        rho = _separation(z)
        slope = -t / (5 * z**4 - 1)
        guess = z + h * slope
        s_new = 1.0 if h >= 1.0 - s else s + h
        z_new, ok = _newton(guess, s_new * t)
        if ok and abs(z_new - guess) <= 0.1 * rho and abs(z_new - z) <= 0.3 * rho:
            z, s = z_new, s_new
            streak += 1
            if streak >= 3:
                h = min(2 * h, _MAX_STEP)
                streak = 0
        else:
            h /= 2
            streak = 0
            if h < _MIN_STEP:
                raise BranchPointError(s, dist)
    return check_finite(z, "principal root")


def f43_continued(w: complex, branch_hint: int | None = None) -> complex:
    """4F3 at ``w`` via root tracking: ``bring_principal_root(t) / t``.

    Without a hint the ``t`` branch whose path keeps farthest from the branch
    points is used (ties go to the lowest index); the others serve as
    fallbacks.  All four branches give the same value, since
    ``z -> i z, t -> i t`` maps the Bring equation to itself.
    """
    w = complex(w)
    if w == 0:
        raise ValueError("w must be nonzero (the value at 0 is 1)")
    ts = t_branches(w)
    if branch_hint is not None:
        t = ts[branch_hint]
        return bring_principal_root(t) / t
    order = sorted(range(4), key=lambda k: (-round(branch_point_distance(ts[k])[0], 12), k))
    last = None
    for k in order:
        try:
            return bring_principal_root(ts[k]) / ts[k]
        except BranchPointError as exc:
            last = exc
    raise last


def bring_residual_of(t: complex, Z: complex) -> float:
    z = t * Z
    return abs(z**5 - z + t)


@dataclass(frozen=True)
class IdentityRecord:
    """Outcome of checking ``4F3(w) = Z`` through the root relation.

    ``branch_residuals`` holds ``|(tZ)^5 - tZ + t|`` for all four ``t``
    branches; it is diagnostic only and not part of the serialised record.
    """

    w: complex
    Z: complex
    t: complex
    residual: float
    verdict: str
    branch: int
    provenance: str
    branch_residuals: tuple[float, ...] = field(default=(), compare=False)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _record(w, Z, ts, residuals, chosen, tol, provenance) -> IdentityRecord:
    residual = residuals[chosen]
    return IdentityRecord(
        complex(w), complex(Z), ts[chosen], residual,
        "pass" if residual <= tol else "fail", chosen, provenance, tuple(residuals),
    )


def verify_identity(w: complex, Z: complex, tol: float = IDENTITY_TOL, provenance: str = "") -> IdentityRecord:
    """Check that ``t * Z`` is a root of ``z^5 - z + t`` for some ``t`` with
    ``3125 t^4 / 256 = w``.  The lowest passing branch is recorded (or the
    best one if none passes)."""
    if w == 0:
        raise ValueError("w must be nonzero")
    ts = t_branches(w)
    residuals = [bring_residual_of(t, Z) for t in ts]
    passing = [k for k, r in enumerate(residuals) if r <= tol]
    chosen = passing[0] if passing else min(range(4), key=lambda k: residuals[k])
    return _record(w, Z, ts, residuals, chosen, tol, provenance)


def generate_identity(q: DeMoivreQuintic, tol: float = IDENTITY_TOL) -> IdentityRecord:
    """Build ``4F3(-3125 c0^4 / (256 c1^5)) = -(c1/c0) sum_k d_k y_0^k`` for ``q``.

    ``x_0`` is the root whose Bring image matches the principal root tracked
    from ``t = 0``; if none does, the record says the identity holds for a
    non-principal root.
    """
    red = bring_reduce(q)
    data = red.data
    w = -3125 / 256 * data.c0**4 / data.c1**5
    ts = t_branches(w)
    chosen = min(range(4), key=lambda k: abs(ts[k] - data.t))
    ts[chosen] = data.t

    z_roots = red.z_roots.roots
    principal = None
    try:
        principal = bring_principal_root(data.t)
    except BranchPointError:
        pass
    if principal is not None:
        j = min(range(5), key=lambda i: abs(z_roots[i] - principal))
        matched = abs(z_roots[j] - principal) <= MATCH_TOL * max(1.0, abs(principal))
    else:
        j = min(range(5), key=lambda i: red.z_roots.residuals[i])
        matched = False

    sa = csqrt(q.a)
    x0 = red.x_roots.roots[j]
    y0 = x0 * x0 + sa * x0 + 2 * q.a
    Z = -(data.c1 / data.c0) * sum(dk * y0**k for k, dk in enumerate(data.d))
    residuals = [bring_residual_of(t, Z) for t in ts]
    root_note = f"x0 = x{j + 1} (principal root)" if matched else f"x0 = x{j + 1} (non-principal root)"
    provenance = (
        f"a={q.a!r} b={q.b!r} variant={data.variant} "
        f"branch=({data.branch.sqrt_branch},{data.branch.cbrt_branch},{data.branch.quartic_branch}) "
        + root_note
    )
    return _record(w, Z, ts, residuals, chosen, tol, provenance)

