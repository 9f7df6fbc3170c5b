import math
from fractions import Fraction

import numpy as np
import pytest

from tmlab.analyze import (Trajectory,
                           convexity_identity_check, density_floor_check,
                           f_trajectory, filtered_ratio_interpolated,
                           large_block_density, limit_estimates,
                           local_dimension_trace, scaling_enclosure_table,
                           xi_mu_at, xi_mu_trajectory, xi_psi_at,
                           xi_psi_trajectory)
from tmlab.construct import (block_bernoulli_measure, bounded_block_point,
                             fiber_measure)
from tmlab.spectrum import joint_dim, phi, phi_bar
from tmlab.words import AlternationCode, SymbolSource


class TestXiInterpolants:
    def test_unit_blocks(self):
        code = AlternationCode([1] * 64)
        for n in (1, 2, 32, 63):
            assert xi_mu_at(code, n) == Fraction(1, n)

    def test_boundary_values_equal_ratio(self):
        rng = np.random.default_rng(31)
        code = AlternationCode(rng.integers(1, 30, size=40).tolist())
        for m in range(1, 39):
            n = code.N(m)
            assert xi_mu_at(code, n) == code.F(m)
            assert xi_psi_at(code, n) == code.F(m)

    def test_interpolation_floor(self):
        # within a block, the decay interpolant never drops below F/(1+F)
        rng = np.random.default_rng(32)
        code = AlternationCode(rng.integers(1, 40, size=30).tolist())
        for m in range(1, 29):
            floor = phi(float(code.F(m)), float(code.F(m)))
            for n in range(code.N(m), code.N(m + 1) + 1):
                assert float(xi_mu_at(code, n)) >= floor - 1e-12

    def test_interpolation_ceiling(self):
        # within a block, the Birkhoff interpolant never exceeds F/(1-F)
        rng = np.random.default_rng(33)
        code = AlternationCode(rng.integers(1, 40, size=30).tolist())
        for m in range(2, 29):
            F = float(code.F(m))
            if F >= 1.0:
                continue
            ceil = phi_bar(F, F)
            for n in range(code.N(m - 1) + 1, code.N(m) + 1):
                assert float(xi_psi_at(code, n)) <= ceil + 1e-12

    def test_geometric_extrema_small_horizon(self):
        code = AlternationCode([2 ** i for i in range(1, 26)])
        mu = limit_estimates(xi_mu_trajectory(code, 2 ** 25), 0.4)
        psi = limit_estimates(xi_psi_trajectory(code, 2 ** 25), 0.4)
        assert mu.liminf_hat == pytest.approx(0.25, abs=1e-3)
        assert mu.limsup_hat == pytest.approx(1 / 3, abs=1e-3)
        assert psi.liminf_hat == pytest.approx(1 / 3, abs=1e-3)
        assert psi.limsup_hat == pytest.approx(0.5, abs=1e-3)

    def test_profile_must_cover_horizon(self):
        code = AlternationCode([2, 2])
        with pytest.raises(ValueError):
            xi_mu_at(code, 9)


class TestTrajectoryContainers:
    def test_indices_strictly_increasing(self):
        with pytest.raises(ValueError):
            Trajectory((1, 1, 2), (0.0, 0.0, 0.0), "x")

    def test_limit_estimates_constant(self):
        traj = Trajectory(tuple(range(1, 11)), (7.0,) * 10, "const")
        est = limit_estimates(traj, 0.5)
        assert est.liminf_hat == est.limsup_hat == 7.0

    def test_limit_estimates_monotone(self):
        traj = Trajectory(tuple(range(1, 11)), tuple(range(10)), "inc")
        est = limit_estimates(traj, 0.3)
        assert est.liminf_hat == 7.0 and est.limsup_hat == 9.0
        assert est.window == (8, 10)

    def test_limit_estimates_rejects_empty(self):
        traj = Trajectory((1, 2), (math.nan, math.nan), "undef")
        with pytest.raises(ValueError):
            limit_estimates(traj, 0.5)

    def test_tail_fraction_domain(self):
        traj = Trajectory((1, 2), (0.0, 1.0), "x")
        with pytest.raises(ValueError):
            limit_estimates(traj, 1.5)


class TestFTrajectory:
    def test_columns_exact(self):
        code = AlternationCode([2, 2, 1, 1])
        trajs = f_trajectory(code, 4, 2)
        assert trajs["F"].values[3] == Fraction(10, 36)
        assert trajs["F_lam"].values[3] == Fraction(8, 36)
        assert trajs["ell"].values[3] == Fraction(4, 6)
        assert trajs["rho"].values[3] == pytest.approx(math.sqrt(2))

    def test_rho_undefined_before_first_large_block(self):
        code = AlternationCode([1, 1, 8, 1])
        trajs = f_trajectory(code, 4, 5)
        assert math.isnan(trajs["rho"].values[0])
        assert not math.isnan(trajs["rho"].values[2])

    def test_definitional_identity(self):
        # ell = rho * sqrt(F_lam) wherever rho is defined
        code = AlternationCode([3, 9, 2, 16, 1, 1, 20])
        trajs = f_trajectory(code, 7, 9)
        for (_, el), (_, fl), (_, rho) in zip(trajs["ell"].rows(),
                                              trajs["F_lam"].rows(),
                                              trajs["rho"].rows()):
            if not math.isnan(rho):
                assert float(el) == pytest.approx(rho * math.sqrt(float(fl)),
                                                  rel=1e-12)

    def test_interpolated_ratio_endpoints(self):
        code = AlternationCode([8, 1, 1, 8])
        lam = 5
        f2 = float(f_trajectory(code, 4, lam)["F_lam"].values[1])
        assert filtered_ratio_interpolated(code, lam, 2, 0.0) \
            == pytest.approx(f2, rel=1e-12)
        f3 = float(f_trajectory(code, 4, lam)["F_lam"].values[2])
        assert filtered_ratio_interpolated(code, lam, 2, 1.0) \
            == pytest.approx(f3, rel=1e-12)


class TestConvexityIdentity:
    def test_small_block_keeps_density(self):
        code = AlternationCode([16, 3, 2])
        for k in (2, 3):
            rep = convexity_identity_check(code, 16, k)
            assert rep.applicable and rep.case == 1 and rep.ok

    def test_level_drop_increases_density(self):
        code = AlternationCode([16, 16])
        rep = convexity_identity_check(code, 16, 2)
        assert rep.case == 2 and rep.ok
        assert rep.rho_curr > rep.rho_prev

    def test_all_large_equal_level_corner(self):
        # blocks (L, L, 4L) leave the filtered level unchanged with density 1;
        # the renormalized density then stalls instead of strictly increasing
        code = AlternationCode([4, 4, 16])
        rep = convexity_identity_check(code, 4, 3)
        assert rep.case == 2 and rep.ok
        assert rep.rho_curr == pytest.approx(rep.rho_prev)

    def test_case3_reports_contraction(self):
        code = AlternationCode([16] + [1] * 10 + [64])
        rep = convexity_identity_check(code, 16, 12)
        assert rep.case == 3
        assert rep.contraction is not None and 0.0 <= rep.contraction < 1.0

    def test_level_raise_is_convex_combination(self):
        code = AlternationCode([16] + [1] * 10 + [64])
        rep = convexity_identity_check(code, 16, 12)
        assert rep.case == 3
        assert rep.residual <= 1e-10
        assert rep.ok

    def test_skip_before_first_large_block(self):
        code = AlternationCode([1, 1, 64])
        rep = convexity_identity_check(code, 16, 2)
        assert not rep.applicable

    def test_randomized_residuals(self):
        rng = np.random.default_rng(35)
        worst = 0.0
        qualifying = 0
        for _ in range(10):
            lengths = rng.integers(1, 16, size=120)
            plant = rng.random(120) < 0.15
            lengths = np.where(plant, rng.integers(16, 48, size=120), lengths)
            code = AlternationCode(lengths.tolist())
            for k in range(2, 121):
                rep = convexity_identity_check(code, 16, k)
                if rep.applicable:
                    assert rep.ok, (k, rep)
                    if rep.case == 3:
                        qualifying += 1
                        worst = max(worst, rep.residual)
        assert qualifying > 50
        assert worst <= 1e-10


class TestDensities:
    def test_bounded_blocks_have_no_large_blocks(self):
        p = bounded_block_point(8, seed=5)
        code, _ = p.prefix_code(50_000)
        assert large_block_density(code, 9, len(code)) == 0.0

    def test_floor_check_on_joint_point(self, joint_code):
        out = density_floor_check(joint_code, [(0.25, 0.5)], 64)
        assert out["ok"]
        assert out["d_hat"] >= out["floor"] - 0.02

    def test_floor_check_reports_margin_and_window(self, joint_code):
        out = density_floor_check(joint_code, [(0.25, 0.5)], 64)
        assert out["margin"] == pytest.approx(out["d_hat"] - out["floor"])
        assert out["window"][1] == len(joint_code)


class TestLocalDimensionTrace:
    def test_even_fiber(self):
        evens = lambda n: np.arange(1, n + 1) % 2 == 0
        nu = fiber_measure(evens, lambda n: np.zeros(n, dtype=np.uint8))
        src = SymbolSource.constant(0)
        traj = local_dimension_trace(nu, src, 20_000)
        assert traj.values[-1] == pytest.approx(0.5, abs=1e-3)

    def test_block_bernoulli_constant_source(self):
        nu = block_bernoulli_measure(8)
        traj = local_dimension_trace(nu, SymbolSource.constant(0), 4096)
        expected = math.log(3) / (8 * math.log(2))
        assert traj.values[-1] == pytest.approx(expected, abs=1e-3)

    def test_point_under_own_fiber(self, joint_point, joint_code):
        f = joint_dim(0.25, 0.5)
        lam = joint_point.metadata["lam"]
        horizon = joint_code.N(len(joint_code))
        traj = local_dimension_trace(joint_point.fiber(), joint_point.source,
                                     horizon)
        tail_min = min(traj.values[len(traj) // 2:])
        # the honest free density sits between the budget floor and f
        assert f - 2 / lam - 0.01 <= tail_min <= f + 0.01

    def test_incompatible_source_rejected(self):
        nu = fiber_measure({1}, {1: 1})
        with pytest.raises(ValueError):
            local_dimension_trace(nu, SymbolSource.constant(0), 100)


class TestEnclosureTable:
    def test_hand_values(self):
        code = AlternationCode([2, 2, 1, 1])
        rows = scaling_enclosure_table(code, range(1, 7))
        mu_terms = [r[1] for r in rows]
        psi_terms = [r[4] for r in rows]
        assert mu_terms == [1, 4, 5, 8, 9, 10]
        assert psi_terms == [3, 4, 7, 8, 9, 10]

    def test_boundary_terms_agree(self):
        code = AlternationCode([3, 5, 2, 7, 1])
        for m in range(1, 5):
            n = code.N(m)
            row = scaling_enclosure_table(code, [n])[0]
            assert row[1] == row[4] == code.f(m)

    def test_interior_gap(self):
        # strictly inside a long block the decay term sits below the
        # Birkhoff term's bracketing parabola endpoints
        code = AlternationCode([2, 10, 2])
        n = code.N(1) + 5
        row = scaling_enclosure_table(code, [n])[0]
        assert row[1] < row[4]

    def test_brackets_contain_terms(self):
        code = AlternationCode([4, 2, 6, 3])
        for row in scaling_enclosure_table(code, range(1, code.N(3))):
            n, mu_term, mu_lo, mu_hi, psi_term, psi_lo, psi_hi = row
            assert mu_lo <= n + mu_term <= mu_hi
            assert psi_lo <= n + psi_term <= psi_hi

    def test_horizon_past_profile_rejected(self):
        code = AlternationCode([4])
        with pytest.raises(ValueError):
            scaling_enclosure_table(code, [5])
