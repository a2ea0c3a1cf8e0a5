#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Тесты модели: LP, профили полос, валидация и каноническая форма
"""

import math
import unittest

from src.errors import CanonicalizationError
from src.models.budgeted import BudgetedUncertaintySet
from src.models.canonical import canonicalize, validate
from src.models.lp import EQ, GE, LE, MAXIMIZE, MINIMIZE, LinearProgram
from src.models.uncertainty import BandProfile, MultiBandUncertaintySet
from src.reformulate import build_compact
from src.solver.simplex import simplex_solve
from tests.fixtures import PAP_TOY_ROBUST, dense_lp, one_by_one, pap_toy


def _dense_2x3() -> LinearProgram:
    return dense_lp(
        MAXIMIZE, (1.0, 2.0, 3.0),
        ((1.0, 1.0, 1.0), (2.0, 0.5, 1.0)),
        (LE, LE), (10.0, 12.0),
    )


def _symmetric_set(n: int, rows: int) -> MultiBandUncertaintySet:
    profile = BandProfile((-1, 0, 1), (0, 0, 0), (1, n, 1))
    breakpoints = {(i, j): {-1: -0.1, 1: 0.1} for i in range(rows) for j in range(n)}
    return MultiBandUncertaintySet(profile, breakpoints)


class TestLinearProgram(unittest.TestCase):
    """Тесты номинальной LP"""

    def test_defaults(self):
        """Тест границ по умолчанию"""
        lp = _dense_2x3()
        self.assertEqual(lp.var_lower, (0.0, 0.0, 0.0))
        self.assertTrue(all(math.isinf(v) for v in lp.var_upper))
        self.assertTrue(lp.is_canonical)
        self.assertTrue(lp.is_maximize)

    def test_row_violation(self):
        """Тест нарушения строк разных знаков"""
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),),) * 3, (LE, GE, EQ), (1.0, 5.0, 2.0))
        x = [3.0]
        self.assertEqual(lp.row_violation(0, x), 2.0)
        self.assertEqual(lp.row_violation(1, x), 2.0)
        self.assertEqual(lp.row_violation(2, x), 1.0)

    def test_with_rows(self):
        """Тест дописывания строк"""
        lp = _dense_2x3().with_rows([((0, 1.0),)], [LE], [4.0])
        self.assertEqual(lp.num_rows, 3)
        self.assertEqual(lp.rhs[-1], 4.0)


class TestBandProfile(unittest.TestCase):
    """Тесты профиля полос"""

    def test_counts_and_mirror(self):
        """Тест отражения полос при смене знака строки"""
        profile = BandProfile((-2, -1, 0, 1), (1, 0, 0, 0), (2, 1, 5, 3))
        mirrored = profile.mirrored()
        self.assertEqual(mirrored.band_ids, (-1, 0, 1, 2))
        self.assertEqual(mirrored.counts()[2], (1, 2))
        self.assertEqual(mirrored.counts()[-1], (0, 3))
        self.assertEqual(mirrored.mirrored(), profile)

    def test_from_counts(self):
        """Тест построения по словарю"""
        profile = BandProfile.from_counts({1: (0, 2), 0: (0, 4), -1: (1, 1)})
        self.assertEqual(profile.band_ids, (-1, 0, 1))
        self.assertEqual(profile.nonzero_bands, (-1, 1))
        self.assertEqual(profile.k_minus, -1)
        self.assertEqual(profile.k_plus, 1)

    def test_counts_is_copy(self):
        """Тест независимости словаря counts от профиля"""
        profile = BandProfile((0, 1), (0, 0), (2, 1))
        counts = profile.counts()
        counts[0] = (0, 99)
        self.assertEqual(profile.upper(0), 2)


class TestUncertaintySet(unittest.TestCase):
    """Тесты многополосного множества"""

    def test_zero_band_added(self):
        """Тест автоматического добавления d^0 = 0"""
        _, u = one_by_one()
        self.assertEqual(u.deviations(0, 0), {0: 0.0, 1: 0.5})
        self.assertEqual(u.max_deviation(0, 0), 0.5)

    def test_certain_slots(self):
        """Тест учета определенных коэффициентов в полосе 0"""
        profile = BandProfile((0, 1), (2, 0), (3, 1))
        u = MultiBandUncertaintySet(profile, {(0, 1): {1: 0.3}})
        self.assertEqual(u.uncertain_columns(0), (1,))
        self.assertEqual(u.certain_slots(0, 3), 2)
        self.assertEqual(u.effective_lower(0, 0, 3), 0)
        self.assertEqual(u.rows_with_uncertainty(), (0,))


class TestValidate(unittest.TestCase):
    """Тесты валидации"""

    def test_valid_instance(self):
        """Тест корректного экземпляра 2x3"""
        report = validate(_dense_2x3(), _symmetric_set(3, 2))
        self.assertTrue(report.is_valid)
        self.assertEqual(report.violations, [])

    def test_u0_must_equal_n(self):
        """Тест нарушения u_0 = n"""
        profile = BandProfile((-1, 0, 1), (0, 0, 0), (1, 2, 1))
        u = MultiBandUncertaintySet(profile, {(0, 0): {-1: -0.1, 1: 0.1}})
        report = validate(_dense_2x3(), u)
        self.assertFalse(report.is_valid)
        self.assertIn("bands.u0", report.codes())
        self.assertTrue(any("u_0 must equal n" in str(v) for v in report.violations))

    def test_lower_sum_exceeds_n(self):
        """Тест нарушения Σ l_k <= n"""
        profile = BandProfile((-1, 0, 1), (2, 0, 2), (3, 3, 3))
        u = MultiBandUncertaintySet(profile, {(0, 0): {-1: -0.1, 1: 0.1}})
        report = validate(_dense_2x3(), u)
        self.assertIn("bands.lower_sum", report.codes())
        self.assertTrue(any("sum of lower counts exceeds n" in str(v) for v in report.violations))

    def test_deviation_order(self):
        """Тест строгого возрастания отклонений по полосам"""
        profile = BandProfile((-1, 0, 1), (0, 0, 0), (1, 3, 1))
        u = MultiBandUncertaintySet(profile, {(0, 0): {-1: 0.2, 1: 0.1}})
        self.assertIn("deviations.order", validate(_dense_2x3(), u).codes())

    def test_negative_lower_bound(self):
        """Тест запрета отрицательных x для неопределенных столбцов"""
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),),), (LE,), (1.0,), (-1.0,), (1.0,))
        u = MultiBandUncertaintySet(BandProfile((0, 1), (0, 0), (1, 1)), {(0, 0): {1: 0.1}})
        self.assertIn("lp.negative_lower", validate(lp, u).codes())

    def test_row_infeasible(self):
        """Тест строки, в которой l_k нельзя покрыть"""
        profile = BandProfile((0, 1), (0, 2), (3, 3))
        u = MultiBandUncertaintySet(profile, {(0, 0): {1: 0.1}})
        self.assertIn("bands.row_infeasible", validate(_dense_2x3(), u).codes())

    def test_report_to_dict(self):
        """Тест сериализации отчета"""
        data = validate(_dense_2x3(), _symmetric_set(3, 2)).to_dict()
        self.assertTrue(data["is_valid"])
        self.assertEqual(data["violations"], [])


class TestCanonicalize(unittest.TestCase):
    """Тесты приведения к строкам <="""

    def test_identity(self):
        """Тест LP, уже имеющей только строки <="""
        lp, u = one_by_one()
        canon = canonicalize(lp, u)
        self.assertIs(canon.lp, lp)
        self.assertIs(canon.uncertainty, u)
        self.assertEqual(canon.row_sign, (1,))

    def test_ge_row_flip(self):
        """Тест смены знака строки >= и отражения полос"""
        lp = LinearProgram(MINIMIZE, (1.0,), (((0, 2.0),),), (GE,), (5.0,))
        profile = BandProfile((0, 1), (0, 0), (1, 1))
        u = MultiBandUncertaintySet(profile, {(0, 0): {1: 0.1}})
        canon = canonicalize(lp, u)
        self.assertEqual(canon.lp.rows[0], ((0, -2.0),))
        self.assertEqual(canon.lp.rhs, (-5.0,))
        self.assertEqual(canon.lp.row_sense, (LE,))
        self.assertEqual(canon.uncertainty.deviations(0, 0), {-1: -0.1, 0: 0.0})
        self.assertEqual(canon.uncertainty.profile_for(0).band_ids, (-1, 0))
        self.assertEqual(canon.row_sign, (-1,))

    def test_equality_split(self):
        """Тест расщепления равенства на две строки"""
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),),), (EQ,), (3.0,))
        u = MultiBandUncertaintySet(BandProfile((0,), (0,), (1,)))
        canon = canonicalize(lp, u)
        self.assertEqual(canon.lp.num_rows, 2)
        self.assertEqual(canon.row_origin, (0, 0))
        self.assertEqual(canon.row_sign, (1, -1))

    def test_equality_strict(self):
        """Тест запрета равенств в строгом режиме"""
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),),), (EQ,), (3.0,))
        u = MultiBandUncertaintySet(BandProfile((0,), (0,), (1,)))
        with self.assertRaises(CanonicalizationError):
            canonicalize(lp, u, strict=True)

    def test_pap_toy_against_hand_counterpart(self):
        """Тест PAP 2x2: компактный эквивалент совпадает с ручным расчетом 40/9"""
        lp, u = pap_toy()
        self.assertTrue(validate(lp, u).is_valid)
        canon = canonicalize(lp, u)
        counterpart = build_compact(canon.lp, canon.uncertainty)
        solution = simplex_solve(counterpart.rlp)
        self.assertTrue(solution.is_optimal)
        self.assertAlmostEqual(solution.objective, PAP_TOY_ROBUST, places=7)
        x = counterpart.project(solution.x)
        self.assertAlmostEqual(x[0], 20.0 / 9.0, places=7)
        self.assertAlmostEqual(x[1], 20.0 / 9.0, places=7)


class TestBudgetedSet(unittest.TestCase):
    """Тесты множества с бюджетом"""

    def test_to_multiband(self):
        """Тест вложения в многополосную модель"""
        bs = BudgetedUncertaintySet(2, {(0, 0): 3.0, (0, 1): 0.0, (1, 1): 1.0}, {1: 1})
        u = bs.to_multiband(3)
        self.assertEqual(u.profile.counts(), {0: (0, 3), 1: (0, 2)})
        self.assertEqual(u.profile_for(1).upper(1), 1)
        self.assertFalse(u.is_uncertain(0, 1))
        self.assertEqual(u.deviations(0, 0), {0: 0.0, 1: 3.0})
        self.assertEqual(bs.rows(), (0, 1))


if __name__ == "__main__":
    unittest.main()
