import math

import numpy as np
import pytest

from nosig.bounds import (BoundsReport, FamilyBounds, batched_columns,
                          family_bounds, family_chsh_bounds, h_bounds,
                          measurement_bounds)
from nosig.correlations import (chsh_value, correlator, decompose,
                                fach_from_columns, quantum_joint)
from nosig.errors import InvalidMarginalError
from nosig.measurements import (BlochSetting, QutritBasis, SettingsFamily,
                                qutrit_unitary)

Z = BlochSetting(0.0, 0.0)
B_COMP = QutritBasis((0.0,) * 6)
GHZ_FAMILY = SettingsFamily(Z, Z, Z, Z, B_COMP)


def random_family(rng):
    return SettingsFamily.from_params(rng.uniform(0, 2 * math.pi, 14))


class TestHBounds:
    def test_pinned_positive(self):
        assert h_bounds(0.5, 0.5, 0.5) == (0.5, 0.5)

    def test_uniform(self):
        lo, up = h_bounds(1 / 3, 0.0, 0.0)
        assert lo == pytest.approx(-1 / 3)
        assert up == pytest.approx(1 / 3)

    def test_pinned_negative(self):
        assert h_bounds(0.5, 0.5, -0.5) == (-0.5, -0.5)

    def test_degenerate_outcome(self):
        assert h_bounds(0.0, 0.0, 0.0) == (0.0, 0.0)

    def test_ordering_holds_when_feasible(self):
        rng = np.random.default_rng(41)
        for _ in range(200):
            a, c = rng.uniform(-0.5, 0.5, 2)
            f = max(abs(a), abs(c)) + rng.uniform(0, 0.5)
            lo, up = h_bounds(f, a, c)
            assert lo <= up + 1e-12

    def test_infeasible_marginals_rejected(self):
        with pytest.raises(InvalidMarginalError):
            h_bounds(0.3, 0.5, 0.0)

    def test_positivity_enumeration_oracle(self):
        # L and U must match brute-force enumeration over a fine h grid
        rng = np.random.default_rng(42)
        for _ in range(50):
            a, c = rng.uniform(-0.4, 0.4, 2)
            f = max(abs(a), abs(c)) + rng.uniform(0.0, 0.4)
            lo, up = h_bounds(f, a, c)
            hs = np.linspace(-1.5, 1.5, 6001)
            sa = np.array([1, 1, -1, -1])
            sc = np.array([1, -1, 1, -1])
            probs = (f + sa[None, :] * a + sc[None, :] * c
                     + (sa * sc)[None, :] * hs[:, None]) / 4.0
            ok = hs[np.all(probs >= -1e-12, axis=1)]
            assert lo == pytest.approx(ok.min(), abs=1e-3)
            assert up == pytest.approx(ok.max(), abs=1e-3)


class TestMeasurementBounds:
    def test_alpha_zero_unit_window(self):
        rng = np.random.default_rng(43)
        for _ in range(10):
            fam = random_family(rng)
            rep = measurement_bounds(0.0, fam.a1, fam.b, fam.c1)
            assert rep.lower_sum == pytest.approx(-1.0, abs=1e-12)
            assert rep.upper_sum == pytest.approx(1.0, abs=1e-12)

    def test_ghz_pinning(self):
        rep = measurement_bounds(math.pi / 2, Z, B_COMP, Z)
        assert rep.lower_sum == pytest.approx(1.0, abs=1e-14)
        assert rep.upper_sum == pytest.approx(1.0, abs=1e-14)

    def test_quantum_correlator_inside_window(self):
        rng = np.random.default_rng(44)
        for _ in range(50):
            alpha = rng.uniform(0, math.pi / 2)
            fam = random_family(rng)
            rep = measurement_bounds(alpha, fam.a1, fam.b, fam.c1)
            e = correlator(decompose(quantum_joint(alpha, fam.a1, fam.b, fam.c1)))
            assert rep.lower_sum - 1e-10 <= e <= rep.upper_sum + 1e-10
            assert np.all(rep.lower_b <= rep.upper_b + 1e-10)


class TestFamilyBounds:
    def test_alpha_zero_window(self):
        rng = np.random.default_rng(45)
        fb = family_bounds(0.0, random_family(rng))
        assert fb.chsh_lower == pytest.approx(-4.0, abs=1e-12)
        assert fb.chsh_upper == pytest.approx(4.0, abs=1e-12)

    def test_ghz_pinning_family(self):
        fb = family_bounds(math.pi / 2, GHZ_FAMILY)
        assert fb.chsh_lower == pytest.approx(2.0, abs=1e-14)

    def test_quantum_value_inside(self):
        rng = np.random.default_rng(46)
        for _ in range(25):
            alpha = rng.uniform(0, math.pi / 2)
            fam = random_family(rng)
            fb = family_bounds(alpha, fam)
            q = chsh_value(alpha, fam)
            assert fb.chsh_lower - 1e-10 <= q <= fb.chsh_upper + 1e-10

    def test_swap_a_and_c(self):
        rng = np.random.default_rng(47)
        for _ in range(20):
            alpha = rng.uniform(0, math.pi / 2)
            fam = random_family(rng)
            swapped = SettingsFamily(fam.c1, fam.c2, fam.a1, fam.a2, fam.b)
            fb, fs = family_bounds(alpha, fam), family_bounds(alpha, swapped)
            assert fb.chsh_lower == pytest.approx(fs.chsh_lower, abs=1e-12)
            assert fb.chsh_upper == pytest.approx(fs.chsh_upper, abs=1e-12)

    def test_column_permutation_invariance(self):
        rng = np.random.default_rng(48)
        alpha = 0.8
        a = BlochSetting(1.1, 0.4)
        c = BlochSetting(2.0, 3.2)
        cols = qutrit_unitary(QutritBasis(tuple(rng.uniform(0, 6, 6))))
        base = fach_from_columns(alpha, a.bloch_vector(), cols, c.bloch_vector())
        for perm in ((1, 2, 0), (2, 1, 0), (0, 2, 1)):
            shuffled = fach_from_columns(alpha, a.bloch_vector(),
                                         cols[:, perm], c.bloch_vector())
            lo_b, up_b = h_bounds(base[0], base[1], base[2])
            lo_p, up_p = h_bounds(shuffled[0], shuffled[1], shuffled[2])
            assert np.sum(lo_b) == pytest.approx(np.sum(lo_p), abs=1e-12)
            assert np.sum(up_b) == pytest.approx(np.sum(up_p), abs=1e-12)

    def test_forces_violation_strictness(self):
        dummy = BoundsReport(np.zeros(3), np.zeros(3), 0.0, 0.0)

        def fb(lo, up):
            return FamilyBounds(dummy, dummy, dummy, dummy, lo, up)

        assert fb(2.0 + 1e-8, 4.0).forces_violation
        assert not fb(2.0 + 1e-10, 4.0).forces_violation
        assert fb(-4.0, -2.0 - 1e-8).forces_violation
        assert not fb(-4.0, -2.0 + 1e-10).forces_violation
        assert not fb(1.0, 1.5).forces_violation


class TestBatchedPath:
    def test_matches_report_path(self):
        rng = np.random.default_rng(49)
        for _ in range(50):
            alpha = rng.uniform(0, math.pi / 2)
            p = rng.uniform(-2, 8, 14)
            fb = family_bounds(alpha, SettingsFamily.from_params(p))
            lo, up = family_chsh_bounds(alpha, p[None, :])
            assert lo[0] == pytest.approx(fb.chsh_lower, abs=1e-12)
            assert up[0] == pytest.approx(fb.chsh_upper, abs=1e-12)

    def test_batch_rows_independent(self):
        rng = np.random.default_rng(50)
        batch = rng.uniform(0, 2 * math.pi, (30, 14))
        lo_all, up_all = family_chsh_bounds(0.9, batch)
        for k in (0, 7, 29):
            lo1, up1 = family_chsh_bounds(0.9, batch[k][None, :])
            assert lo1[0] == lo_all[k]
            assert up1[0] == up_all[k]

    def test_batched_columns_unitary(self):
        rng = np.random.default_rng(51)
        angles = rng.uniform(0, 2 * math.pi, (20, 6))
        us = batched_columns(angles)
        for k in range(20):
            assert np.allclose(us[k].conj().T @ us[k], np.eye(3), atol=1e-13)
            single = qutrit_unitary(QutritBasis(tuple(angles[k])))
            assert np.allclose(us[k], single, atol=1e-14)
