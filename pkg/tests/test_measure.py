import itertools
import math

import numpy as np
import pytest

from tmlab.measure import (BudgetError, LogBound,
                           birkhoff_block_form, birkhoff_sum,
                           cylinder_log_bounds, cylinder_measure_estimate,
                           g_tilde, log_g_tilde, psi_interval,
                           riesz_quadrature)
from tmlab.words import (AlternationCode, BinaryWord, SymbolSource,
                         alternation_encode)

LOG2 = math.log(2.0)
LOGPI = math.log(math.pi)


def all_words(length):
    return [BinaryWord(t) for t in itertools.product((0, 1), repeat=length)]


class TestLogBound:
    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            LogBound(1.0, 0.0)

    def test_sum_propagates_minus_inf(self):
        s = LogBound.sum([LogBound(-math.inf, -1.0), LogBound(-2.0, -1.0)])
        assert math.isinf(s.lo) and s.hi == -2.0

    def test_intersects(self):
        assert LogBound(0.0, 2.0).intersects(LogBound(1.5, 3.0))
        assert not LogBound(0.0, 1.0).intersects(LogBound(1.5, 3.0))


class TestGTilde:
    @pytest.mark.parametrize("t,expected", [
        (0.5, 1.0), (0.25, 0.5), (1 / 3, 0.75), (0.0, 0.0), (1.0, 0.0),
    ])
    def test_values(self, t, expected):
        assert g_tilde(t) == pytest.approx(expected, abs=1e-15)

    def test_symmetry(self):
        for t in np.linspace(0.0, 1.0, 101):
            assert g_tilde(float(t)) == pytest.approx(g_tilde(float(1 - t)),
                                                      abs=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            g_tilde(1.2)

    def test_distance_bracket(self):
        # 2 log(2 d) <= log g_tilde <= 2 log(pi d), d the endpoint distance
        rng = np.random.default_rng(11)
        t = rng.random(1_000_000)
        t = t[(t > 0) & (t < 1)]
        d = np.minimum(t, 1 - t)
        lg = 2 * np.log(np.sin(np.pi * d))
        assert np.all(2 * np.log(2 * d) <= lg + 1e-12)
        assert np.all(lg <= 2 * np.log(np.pi * d) + 1e-12)

    def test_log_g_tilde_endpoints(self):
        assert log_g_tilde(0.0) == -math.inf
        assert log_g_tilde(1.0) == -math.inf
        assert log_g_tilde(0.5) == 0.0


class TestPsiInterval:
    def test_alternating_point(self):
        b = psi_interval(SymbolSource.periodic("01"), 0, 40)
        assert b.contains(math.log(0.75))
        assert b.width < 1e-9

    def test_zero_tail_touches_singularity(self):
        for L in (2, 16, 40):
            b = psi_interval(SymbolSource.constant(0), 0, L)
            assert b.lo == -math.inf
            assert b.hi == pytest.approx(2 * math.log(math.pi * 2.0**-L),
                                         abs=1e-9)

    def test_one_tail_touches_singularity(self):
        b = psi_interval(SymbolSource.constant(1), 0, 16)
        assert b.lo == -math.inf

    @pytest.mark.parametrize("k", [1, 3, 7, 20])
    def test_leading_zero_run_bracket(self, k):
        src = SymbolSource.from_word(BinaryWord.zeros(k) + BinaryWord("1"),
                                     SymbolSource.periodic("01"))
        b = psi_interval(src, 0, 64)
        assert b.lo >= -2 * k * LOG2 - 1e-9
        assert b.hi <= -2 * k * LOG2 + 2 * LOGPI + 1e-9

    def test_shift(self):
        src = SymbolSource.periodic("01")
        b0 = psi_interval(src, 0, 50)
        b2 = psi_interval(src, 2, 50)
        # the sequence is 2-periodic, so shifts by 2 see the same tail
        assert b0.lo == pytest.approx(b2.lo, rel=1e-12)

    def test_lookahead_validation(self):
        with pytest.raises(ValueError):
            psi_interval(SymbolSource.periodic("01"), 0, 1)


class TestBirkhoffSum:
    def test_period_two_pair(self):
        b = birkhoff_sum(SymbolSource.periodic("01"), 2)
        assert b.contains(2 * math.log(0.75))
        assert b.width < 1e-9

    def test_constant_source_minus_inf(self):
        for n in (1, 2, 17):
            assert birkhoff_sum(SymbolSource.constant(0), n).lo == -math.inf

    def test_intersects_block_form(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            bits = BinaryWord.random(120, rng)
            src = SymbolSource.from_word(bits, SymbolSource.periodic("01"))
            code = alternation_encode(src.prefix(180))
            n = int(rng.integers(1, 100))
            assert birkhoff_sum(src, n).intersects(birkhoff_block_form(code, n))

    def test_block_form_contains_true_sum(self):
        # the closed form must enclose a tightly-computed sum
        src = SymbolSource.from_word(BinaryWord("00000"),
                                     SymbolSource.periodic("10"))
        code = AlternationCode([5] + [1] * 20)
        tight = birkhoff_sum(src, 5)
        wide = birkhoff_block_form(code, 5)
        assert wide.lo <= tight.lo and tight.hi <= wide.hi


class TestBirkhoffBlockForm:
    def test_hand_example(self):
        b = birkhoff_block_form(AlternationCode([2, 2, 1, 1]), 4)
        assert b.lo == pytest.approx(-12 * LOG2, rel=1e-12)
        assert b.hi == pytest.approx(-12 * LOG2 + 2 * 4 * LOGPI, rel=1e-12)

    def test_boundary_cancellation(self):
        # at n = N_m the formula reduces to A = n + f_m for any continuation
        code_a = AlternationCode([3, 2, 5, 7])
        code_b = AlternationCode([3, 2, 99, 7])
        n = 5
        assert birkhoff_block_form(code_a, n).lo == \
            birkhoff_block_form(code_b, n).lo

    def test_geometric_interior(self):
        b = birkhoff_block_form(AlternationCode([2, 4, 8, 16]), 6)
        assert b.lo == pytest.approx(-26 * LOG2, rel=1e-12)

    def test_insufficient_blocks(self):
        with pytest.raises(ValueError):
            birkhoff_block_form(AlternationCode([2, 2, 1, 1]), 6)


class TestCylinderLogBounds:
    def test_single_zero(self):
        b = cylinder_log_bounds(BinaryWord("0"))
        assert b.contains(math.log(0.5))
        assert b.lo == pytest.approx(-3 * LOG2, rel=1e-12)

    def test_double_zero(self):
        b = cylinder_log_bounds(BinaryWord("00"))
        assert b.lo == pytest.approx(-7 * LOG2, rel=1e-12)
        assert b.hi == pytest.approx(-6 * LOG2 + 4 * LOGPI, rel=1e-12)

    def test_alternating(self):
        b = cylinder_log_bounds(BinaryWord("0101"))
        assert b.lo == pytest.approx(-9 * LOG2, rel=1e-12)
        assert b.hi == pytest.approx(-8 * LOG2 + 8 * LOGPI, rel=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            cylinder_log_bounds(BinaryWord())


class TestEstimator:
    def test_half_cylinder(self):
        est = cylinder_measure_estimate(BinaryWord("0"), 12)
        assert est.value == pytest.approx(0.5, abs=1e-4)
        assert est.within_bounds

    def test_sandwich_short_words(self):
        for length in (1, 2, 3, 4, 5, 6):
            for w in all_words(length):
                est = cylinder_measure_estimate(w, 10)
                assert est.bounds.contains_strictly(est.log_value)

    def test_additivity_is_exact_regrouping(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            w = BinaryWord.random(int(rng.integers(1, 9)), rng)
            parent = cylinder_measure_estimate(w, 9)
            c0 = cylinder_measure_estimate(w + BinaryWord("0"), 8)
            c1 = cylinder_measure_estimate(w + BinaryWord("1"), 8)
            lsum = np.logaddexp(c0.log_value, c1.log_value)
            assert abs(math.expm1(lsum - parent.log_value)) <= 1e-12

    def test_bit_flip_symmetry(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            w = BinaryWord.random(int(rng.integers(1, 10)), rng)
            a = cylinder_measure_estimate(w, 8)
            b = cylinder_measure_estimate(w.flipped(), 8)
            assert abs(math.expm1(a.log_value - b.log_value)) <= 1e-12

    def test_anchor_spread_shrinks_with_depth(self):
        for w in (BinaryWord("0"), BinaryWord("011"), BinaryWord("0101")):
            shallow = cylinder_measure_estimate(w, 8)
            deep = cylinder_measure_estimate(w, 12)
            assert deep.anchor_spread <= 10 * shallow.anchor_spread

    def test_budget(self):
        with pytest.raises(BudgetError):
            cylinder_measure_estimate(BinaryWord.zeros(40), 30)

    def test_rejects_undeclared_anchor(self):
        with pytest.raises(ValueError):
            cylinder_measure_estimate(BinaryWord("0"), 6,
                                      anchors=[SymbolSource.constant(0)])

    def test_rejects_lying_anchor(self):
        liar = SymbolSource(lambda lo, hi: np.zeros(hi - lo, dtype=np.uint8),
                            declared_nondyadic=True, description="liar")
        with pytest.raises(ValueError):
            cylinder_measure_estimate(BinaryWord("0"), 6, anchors=[liar])

    def test_depth_validation(self):
        with pytest.raises(ValueError):
            cylinder_measure_estimate(BinaryWord("0"), 0)


class TestRieszQuadrature:
    def test_total_mass(self):
        total = riesz_quadrature(BinaryWord(), 12, 1 << 16)
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_reflection_symmetry(self):
        a = riesz_quadrature(BinaryWord("01"), 12, 1 << 14)
        b = riesz_quadrature(BinaryWord("10"), 12, 1 << 14)
        assert a == pytest.approx(b, abs=1e-10)

    def test_matches_estimator(self):
        for length in (1, 2, 3):
            for w in all_words(length):
                q = riesz_quadrature(w, 14, 1 << 14)
                e = cylinder_measure_estimate(w, 14)
                assert q == pytest.approx(e.value, abs=5e-3)

    def test_levels_must_cover_word(self):
        with pytest.raises(ValueError):
            riesz_quadrature(BinaryWord("0101"), 2, 1 << 10)

    def test_subdivisions_power_of_two(self):
        with pytest.raises(ValueError):
            riesz_quadrature(BinaryWord("0"), 8, 1000)

    def test_budget(self):
        with pytest.raises(BudgetError):
            riesz_quadrature(BinaryWord("0"), 40, 1 << 28)
