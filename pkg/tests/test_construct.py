import math
from fractions import Fraction

import numpy as np
import pytest

from tmlab.construct import (BlockBernoulliMeasure, ConstructedPoint,
                             ConstructionError, block_bernoulli_measure,
                             bounded_block_point, fiber_dimension_bound,
                             fiber_measure, idealized_block_simulation,
                             intermediate_scaling_point, joint_block_ratios,
                             joint_spectrum_point, nu_log_measure,
                             select_shape_exponent)
from tmlab.spectrum import joint_dim
from tmlab.words import BinaryWord


class TestJointBlockRatios:
    def test_reference_targets(self):
        ell, m = joint_block_ratios(0.25, 0.5)
        assert ell == pytest.approx(0.41421, abs=5e-6)
        assert m == pytest.approx(3.14626, abs=5e-6)
        assert ell / (ell + m) == pytest.approx(joint_dim(0.25, 0.5), abs=1e-12)

    def test_scale_identity(self):
        for a, b in [(0.1, 0.3), (0.25, 0.5), (0.6, 0.95)]:
            ell, m = joint_block_ratios(a, b)
            assert m * m + b == pytest.approx(b * (1 + ell + m) ** 2, abs=1e-10)

    def test_domain(self):
        with pytest.raises(ConstructionError):
            joint_block_ratios(0.5, 0.5)
        with pytest.raises(ConstructionError):
            joint_block_ratios(0.2, 1.0)


class TestJointSpectrumPoint:
    def test_metadata(self, joint_point):
        md = joint_point.metadata
        assert md["theta0"] == 21.0
        assert md["ell"] == pytest.approx(0.41421, abs=5e-6)
        assert md["m"] == pytest.approx(3.14626, abs=5e-6)

    def test_reproducible_and_seed_sensitive(self):
        a = joint_spectrum_point(0.25, 0.5, 64, seed=1).prefix_word(4000)
        b = joint_spectrum_point(0.25, 0.5, 64, seed=1).prefix_word(4000)
        c = joint_spectrum_point(0.25, 0.5, 64, seed=2).prefix_word(4000)
        assert a == b
        assert a != c

    def test_descriptor_round_trip(self, joint_point):
        desc = joint_point.to_descriptor()
        clone = ConstructedPoint.from_descriptor(desc)
        assert clone.prefix_word(5000) == joint_point.prefix_word(5000)

    def test_schedule_positions_are_zero(self, joint_point):
        n = 30_000
        bits = joint_point.prefix_bits(n)
        core = joint_point.determined.core_mask(n)
        assert not np.any(bits[core])

    def test_grid_pairs_present(self, joint_point):
        n = 30_000
        bits = joint_point.prefix_bits(n)
        core = joint_point.determined.core_mask(n)
        lam = joint_point.metadata["lam"]
        for g in range(lam, n - 1, lam):
            if not core[g - 1]:
                assert bits[g - 1] == 1
                assert bits[g] == 0

    def test_big_block_sizes_track_schedule(self, joint_point, joint_code):
        ell = joint_point.metadata["ell"]
        m = joint_point.metadata["m"]
        lam = joint_point.metadata["lam"]
        theta = joint_point.metadata["theta0"]
        blocks = joint_code.blocks
        big = [b for b in blocks if b >= lam]
        for size in big[:8]:
            assert m * theta - 2 <= size <= m * theta + 2 * lam
            theta *= 1 + ell + m

    def test_classify(self, joint_point):
        det = joint_point.determined
        a, b = det.core_intervals(5000)[0]
        assert det.classify(a) == "fixed-0"
        lam = det.lam
        g = next(g for g in range(lam, 5000, lam)
                 if det.classify(g) != "fixed-0")
        assert det.classify(g) == "fixed-10-pair"
        assert det.classify(g + 1) in ("fixed-10-pair", "fixed-0")

    def test_density_budget_dominates_union(self, joint_point):
        n = 50_000
        det = joint_point.determined
        assert det.union_density(n) <= det.density_budget(n) + 2.0 / n

    def test_vanishing_liminf_schedule(self):
        p = joint_spectrum_point(0.0, 0.5, 16, seed=9)
        assert p.metadata["alpha_schedule"] == "beta/(k+2)^2"
        code, _ = p.prefix_code(60_000)
        assert max(code.blocks) >= 16

    def test_invalid_targets(self):
        with pytest.raises(ConstructionError):
            joint_spectrum_point(0.5, 0.25, 64)
        with pytest.raises(ConstructionError):
            joint_spectrum_point(0.2, 1.0, 64)
        with pytest.raises(ConstructionError):
            joint_spectrum_point(0.2, 0.5, 2)


class TestIntermediateScalingPoint:
    def test_shape_exponent_rule(self):
        assert select_shape_exponent(1.5) == 3
        assert select_shape_exponent(1.1) == 3
        assert select_shape_exponent(1.9) == 11
        for gamma in (1.05, 1.3, 1.77, 1.99):
            r = select_shape_exponent(gamma)
            assert (r * gamma - 1) / 2 < r - 1

    def test_reference_parameters(self):
        p = intermediate_scaling_point(1.5, 1.0, 64, seed=0)
        assert p.metadata["r"] == 3
        assert p.metadata["delta"] == pytest.approx(1.75)
        assert p.metadata["run_coefficient"] == pytest.approx(math.sqrt(4.5))
        assert p.metadata["k0"] == 3

    def test_runs_sit_before_scale_points(self):
        p = intermediate_scaling_point(1.5, 1.0, 64, seed=1)
        n = 70_000
        bits = p.prefix_bits(n)
        r = p.metadata["r"]
        coef = p.metadata["run_coefficient"]
        for k in range(p.metadata["k0"], int(n ** (1 / r))):
            lo = math.ceil(k ** r - coef * k ** 1.75)
            hi = k ** r
            assert not np.any(bits[lo - 1:hi])

    def test_determined_density_shrinks(self):
        p = intermediate_scaling_point(1.5, 1.0, 64, seed=1)
        det = p.determined
        d1 = det.core_density(10_000)
        d2 = det.core_density(1_000_000)
        assert d2 < d1  # zero-density run set

    def test_infeasible(self):
        with pytest.raises(ConstructionError):
            intermediate_scaling_point(1.5, 100.0, 64, seed=0, k_cap=1)
        with pytest.raises(ConstructionError):
            intermediate_scaling_point(2.5, 1.0, 64)


class TestBoundedBlockPoint:
    def test_blocks_capped(self):
        p = bounded_block_point(8, seed=3)
        code, _ = p.prefix_code(100_000)
        assert max(code.blocks) <= 8
        assert min(code.blocks) >= 1

    def test_seeds(self):
        a = bounded_block_point(8, seed=1).prefix_word(5000)
        b = bounded_block_point(8, seed=1).prefix_word(5000)
        c = bounded_block_point(8, seed=2).prefix_word(5000)
        assert a == b and a != c

    def test_ratio_vanishes(self):
        p = bounded_block_point(8, seed=3)
        code, _ = p.prefix_code(100_000)
        m = len(code)
        assert float(code.F(m)) < 1e-2

    def test_descriptor_round_trip(self):
        p = bounded_block_point(6, seed=11)
        clone = ConstructedPoint.from_descriptor(p.to_descriptor())
        assert clone.prefix_word(3000) == p.prefix_word(3000)


class TestIdealizedSimulation:
    def test_ratio_equals_spectrum(self):
        f = joint_dim(0.25, 0.5)
        for mode in ("matched-levels", "renormalized"):
            rows = idealized_block_simulation(0.25, 0.5, 30, pivot=mode)
            assert all(abs(r[3] - f) <= 1e-12 for r in rows)

    def test_grid(self):
        vals = [i / 11 for i in range(1, 11)]
        for a in vals:
            for b in vals:
                if a < b:
                    rows = idealized_block_simulation(a, b, 10)
                    f = joint_dim(a, b)
                    assert all(abs(r[3] - f) <= 1e-12 for r in rows)

    def test_positions_grow(self):
        rows = idealized_block_simulation(0.2, 0.6, 10)
        ends = [r[2] for r in rows]
        assert all(x < y for x, y in zip(ends, ends[1:]))

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            idealized_block_simulation(0.2, 0.6, 5, pivot="nope")


class TestFiberMeasure:
    def test_even_positions_bound(self):
        evens = lambda n: np.arange(1, n + 1) % 2 == 0
        assert fiber_dimension_bound(evens, 10_000) == pytest.approx(0.5,
                                                                     abs=1e-3)

    def test_empty_set_bound(self):
        assert fiber_dimension_bound(lambda n: np.zeros(n, dtype=bool),
                                     1000) == 1.0

    def test_point_budget_bound(self, joint_point, joint_code):
        f = joint_dim(0.25, 0.5)
        horizon = joint_code.N(len(joint_code))
        bound = fiber_dimension_bound(joint_point.determined, horizon)
        assert bound == pytest.approx(f - 2 / 64, abs=0.01)

    def test_masses_split_exactly(self):
        nu = fiber_measure({2, 5}, {2: 1, 5: 0})
        for w in ("0", "01", "0100", "01010"):
            word = BinaryWord(w)
            child0 = nu.mass(word + BinaryWord("0"))
            child1 = nu.mass(word + BinaryWord("1"))
            assert nu.mass(word) == child0 + child1

    def test_incompatible_mass_zero(self):
        nu = fiber_measure({2}, {2: 1})
        assert nu.mass(BinaryWord("00")) == 0
        assert nu.mass(BinaryWord("01")) == Fraction(1, 2)
        assert nu.log_mass(BinaryWord("00")) == -math.inf

    def test_point_fiber_compatible(self, joint_point):
        nu = joint_point.fiber()
        assert nu.compatible(joint_point.prefix_word(4000))


class TestBlockBernoulli:
    def test_constant_block_weight(self):
        nu = block_bernoulli_measure(8)
        assert nu.mass(BinaryWord.zeros(8)) == Fraction(1, 3)
        assert nu.mass(BinaryWord.ones(8)) == Fraction(1, 3)

    def test_mixed_block_weight(self):
        nu = block_bernoulli_measure(8)
        assert nu.mass(BinaryWord("01101100")) == Fraction(1, 3) / 254

    def test_total_mass_exact(self):
        for m in (2, 4, 8):
            nu = block_bernoulli_measure(m)
            total = sum(nu.mass(BinaryWord(format(v, f"0{m}b")))
                        for v in range(2 ** m))
            assert total == 1
            assert nu.total_mass(3) == 1

    def test_general_p_is_probability(self):
        nu = BlockBernoulliMeasure(4, Fraction(2, 5))
        total = sum(nu.mass(BinaryWord(format(v, "04b"))) for v in range(16))
        assert total == 1

    def test_p_domain(self):
        with pytest.raises(ValueError):
            BlockBernoulliMeasure(4, Fraction(1, 2))

    def test_partial_block_is_completion_sum(self):
        nu = block_bernoulli_measure(4)
        for w in ("0", "01", "011", "0110", "01101"):
            word = BinaryWord(w)
            assert nu.mass(word) == nu.mass(word + BinaryWord("0")) \
                + nu.mass(word + BinaryWord("1"))

    def test_log_mass_matches_exact(self):
        nu = block_bernoulli_measure(4)
        for w in ("0110", "00000000", "0110010111"):
            word = BinaryWord(w)
            exact = float(nu.mass(word))
            assert nu.log_mass(word) == pytest.approx(math.log(exact),
                                                      rel=1e-12)

    def test_nu_log_measure_dispatch(self):
        nu = block_bernoulli_measure(4)
        word = BinaryWord("0110")
        assert nu_log_measure(nu, word) == nu.log_mass(word)
        fm = fiber_measure(set(), {})
        assert nu_log_measure(fm, word) == pytest.approx(-4 * math.log(2))
