import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from demoivre_quintic.demoivre import DeMoivreQuintic
from demoivre_quintic.errors import BranchSelectionError, SingularInputError
from demoivre_quintic.numerics import multiset_distance
from demoivre_quintic.reduction import (
    CALIBRATION_LADDER,
    GATE,
    BranchChoice,
    Variant,
    best_of,
    bring_reduce,
    c_coefficients,
    d_coefficients,
    delta_candidates,
    diagnose,
    first_failure,
    is_degenerate,
    quartic_map,
    score_branches,
    select_branch,
    to_principal,
    tschirnhausen_apply,
    tschirnhausen_map,
)

from conftest import brute_match, demoivre_coeffs, mp_roots

CORRECTED = Variant("corrected", "corrected")
SAMPLES = [(1.0, 1.0), (1.3, -0.7), (0.6, 1.9), (2.0, -2.0), (0.75, 0.1)]
T_SPECIAL = 44 * cmath.exp(-1j * math.pi / 4) * 15 ** (-5 / 4)


def mapped_quintic(a, b, Delta):
    """Coefficients of prod (w - w_j) with w_j from mpmath roots (independent of the radicals)."""
    q = DeMoivreQuintic(a, b)
    xs = mp_roots(demoivre_coeffs(a, b))
    ys = [x * x + math.sqrt(a) * x + 2 * a for x in xs]
    d = d_coefficients(q, Delta)
    ws = [sum(dk * y**k for k, dk in enumerate(d)) for y in ys]
    return np.poly(ws), max(abs(w) for w in ws)


class TestPrincipalForm:
    @pytest.mark.parametrize("a,b", SAMPLES)
    def test_mapped_roots_solve_principal_form(self, a, b):
        pq = to_principal(DeMoivreQuintic(a, b))
        ys = [x * x + math.sqrt(a) * x + 2 * a for x in mp_roots(demoivre_coeffs(a, b))]
        assert brute_match(ys, mp_roots(pq.polynomial.coeffs)) < 1e-9 * max(map(abs, ys))

    def test_apply_reproduces_coefficients(self):
        q = DeMoivreQuintic(1.3, -0.7)
        xs = mp_roots(demoivre_coeffs(q.a, q.b))
        image = tschirnhausen_apply(xs, tschirnhausen_map(q))
        np.testing.assert_allclose(image.coeffs, to_principal(q).polynomial.coeffs, rtol=1e-12, atol=1e-10)

    def test_negative_a_needs_opt_in(self):
        q = DeMoivreQuintic(-1.0, 0.5)
        with pytest.raises(ValueError):
            to_principal(q)
        pq = to_principal(q, allow_complex=True)
        assert abs(pq.p2.imag) > 0

    def test_degenerate_line_is_bring_form(self):
        pq = to_principal(DeMoivreQuintic(1.0, 2.0))
        assert pq.is_bring_form
        assert pq.polynomial.coeffs == (1, 0, 0, 0, 15, -44)

    def test_map_rejects_wrong_root_count(self):
        with pytest.raises(ValueError):
            tschirnhausen_apply([1, 2], tschirnhausen_map(DeMoivreQuintic(1, 1)))


class TestDelta:
    @pytest.mark.parametrize("a,b", SAMPLES)
    def test_corrected_delta_kills_the_cubic_coefficients(self, a, b):
        cands = delta_candidates(DeMoivreQuintic(a, b), "corrected")
        assert len(cands) == 6
        for _, Delta in cands:
            coeffs, wmax = mapped_quintic(a, b, Delta)
            for k in (1, 2, 3):
                assert abs(coeffs[k]) / (math.comb(5, k) * wmax**k) < 1e-9

    @pytest.mark.parametrize("a,b", SAMPLES)
    def test_corrected_candidates_are_three_values_each_twice(self, a, b):
        values = [D for _, D in delta_candidates(DeMoivreQuintic(a, b), "corrected")]
        distinct = []
        for v in values:
            if all(abs(v - u) > 1e-8 * abs(v) for u in distinct):
                distinct.append(v)
        assert len(distinct) == 3

    @pytest.mark.parametrize("a,b", SAMPLES)
    def test_printed_delta_leaves_a_cubic_term(self, a, b):
        for _, Delta in delta_candidates(DeMoivreQuintic(a, b), "printed"):
            coeffs, wmax = mapped_quintic(a, b, Delta)
            assert abs(coeffs[3]) / (10 * wmax**3) > 1e-6

    def test_cube_radicand_locus(self):
        with pytest.raises(SingularInputError) as info:
            delta_candidates(DeMoivreQuintic(1.0, -4.0), "corrected")
        assert info.value.locus == "cube_radicand"

    def test_unknown_form(self):
        with pytest.raises(ValueError):
            delta_candidates(DeMoivreQuintic(1.0, 1.0), "other")


class TestCoefficients:
    @pytest.mark.parametrize("a,b", SAMPLES)
    def test_closed_forms_match_mapped_quintic(self, a, b):
        q = DeMoivreQuintic(a, b)
        for _, Delta in delta_candidates(q, "corrected"):
            c0, c1 = c_coefficients(q, Delta, "corrected")
            coeffs, _ = mapped_quintic(a, b, Delta)
            assert c1 == pytest.approx(coeffs[4], rel=1e-9)
            assert c0 == pytest.approx(coeffs[5], rel=1e-9)

    def test_printed_g1_misses_c1(self):
        q = DeMoivreQuintic(1.3, -0.7)
        _, Delta = delta_candidates(q, "corrected")[0]
        c0, c1 = c_coefficients(q, Delta, "printed")
        coeffs, _ = mapped_quintic(q.a, q.b, Delta)
        assert abs(c1 - coeffs[4]) / abs(coeffs[4]) > 1e-6

    def test_quartic_map_drops_leading_zeros(self):
        assert quartic_map((1, 2, 0, 0, 0)).coeffs == (2, 1)

    @pytest.mark.parametrize("b", [2 * 8 ** 0.5 * 4, 8 * 1.0])
    def test_alpha_locus(self, b):
        a = 4.0 if b > 8 else 1.0
        q = DeMoivreQuintic(a, 8 * a**2.5)
        with pytest.raises(SingularInputError) as info:
            bring_reduce(q)
        assert info.value.locus == "alpha"

    def test_delta_locus(self):
        a = 1.0
        b = (18 - math.sqrt(500)) * a**2.5  # root of 176a^5 + 36a^{5/2}b - b^2
        q = DeMoivreQuintic(a, b)
        with pytest.raises(SingularInputError) as info:
            c_coefficients(q, delta_candidates(q, "corrected")[0][1], "corrected")
        assert info.value.locus == "c1"

    def test_zero_a(self):
        with pytest.raises(SingularInputError) as info:
            bring_reduce(DeMoivreQuintic(0.0, 1.0))
        assert info.value.locus == "a"


class TestBringReduce:
    @pytest.mark.parametrize("a,b", SAMPLES)
    def test_zs_are_the_trinomial_roots(self, a, b):
        red = bring_reduce(DeMoivreQuintic(a, b))
        t = red.data.t
        assert red.residual <= 1e-10
        assert brute_match(red.z_roots.roots, mp_roots([1, 0, 0, 0, -1, t])) < 1e-9
        # at b = 1 the misprinted g1 term coincides with the corrected one
        expected = "delta-corrected" if b == 1 else CORRECTED.name
        assert red.data.variant == expected

    def test_every_quartic_branch_passes(self):
        # z -> i z, t -> i t maps z^5 - z + t to itself, so the four branches tie
        table = score_branches(DeMoivreQuintic(1.3, -0.7), CORRECTED)
        assert len(table) == 24
        by_delta = {}
        for s in table:
            by_delta.setdefault((s.branch.sqrt_branch, s.branch.cbrt_branch), []).append(s.score)
        for scores in by_delta.values():
            assert max(scores) <= GATE
            assert max(scores) - min(scores) < 1e-12

    def test_best_of_prefers_lexicographic_on_ties(self):
        table = score_branches(DeMoivreQuintic(1.3, -0.7), CORRECTED)
        best = best_of(table)
        assert best.score <= GATE
        assert best.condition <= 2 * min(s.condition for s in table)
        assert best.branch.quartic_branch == 0

    def test_best_conditioned_root_is_chosen(self):
        # two of the three Delta roots lose ~5 digits to cancellation here
        q = DeMoivreQuintic(0.7026447575336168, 0.8859533607763268)
        table = score_branches(q, CORRECTED)
        assert max(s.score for s in table) > 1e-10
        best = best_of(table)
        assert best.condition < 2
        assert best.score < 1e-13

    def test_select_branch(self):
        assert isinstance(select_branch(DeMoivreQuintic(1.0, 1.0), CORRECTED), BranchChoice)
        with pytest.raises(BranchSelectionError):
            select_branch(DeMoivreQuintic(1.0, 1.0))

    def test_attempts_record_every_variant(self):
        red = bring_reduce(DeMoivreQuintic(1.3, -0.7))
        names = [att.variant for att in red.attempts]
        assert names == [v.name for v in CALIBRATION_LADDER]
        failed = {att.variant: att.first_failure for att in red.attempts if not att.passed}
        assert failed["printed"] == "delta"
        assert failed["g1-corrected"] == "delta"

    def test_forced_printed_variant_reports_first_failing_stage(self):
        with pytest.raises(BranchSelectionError) as info:
            bring_reduce(DeMoivreQuintic(1.3, -0.7), Variant())
        assert "first failing stage delta" in str(info.value)
        assert info.value.diagnostics == [("printed", "delta")]

    def test_diagnose_localises_g1_misprint(self):
        checks = diagnose(DeMoivreQuintic(1.3, -0.7), Variant("corrected", "printed"))
        assert first_failure(checks) == "c1"
        assert [c.stage for c in checks] == ["principal", "d_map", "delta", "c1", "c0", "bring"]

    def test_diagnose_all_clear_for_corrected(self):
        assert first_failure(diagnose(DeMoivreQuintic(0.9, 1.4), CORRECTED)) is None

    @pytest.mark.parametrize("a", [1.0, 0.5, 2.0, 3.7])
    def test_degenerate_line(self, a):
        q = DeMoivreQuintic(a, 2 * a**2.5)
        assert is_degenerate(q)
        red = bring_reduce(q)
        assert red.degenerate
        assert red.data.t == pytest.approx(T_SPECIAL, abs=1e-12)
        assert red.data.d == (0, 1, 0, 0, 0)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(0.5, 2.0), st.floats(-2.0, 2.0), st.floats(0.6, 1.7))
    def test_reduction_is_scale_invariant(self, a, b, lam):
        # w = -3125 c0^4 / (256 c1^5) has weight zero, so the trinomial roots agree up to branch
        q = DeMoivreQuintic(a, b)
        try:
            r1 = bring_reduce(q)
            r2 = bring_reduce(q.scaled(lam))
        except SingularInputError:
            return
        w1 = r1.data.c0**4 / r1.data.c1**5
        w2 = r2.data.c0**4 / r2.data.c1**5
        assert w1 == pytest.approx(w2, rel=1e-9)
        # t is fixed up to the quartic branch, so z^4 and t^4 are invariant
        assert r1.data.t**4 == pytest.approx(r2.data.t**4, rel=1e-9)
        z4 = [z**4 for z in r1.z_roots.roots], [z**4 for z in r2.z_roots.roots]
        assert multiset_distance(*z4) < 1e-8

    def test_complex_domain_opt_in(self):
        with pytest.raises(ValueError):
            bring_reduce(DeMoivreQuintic(-1.0, 0.5))
