#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Тесты компактного эквивалента
"""

import unittest

import numpy as np

from src.errors import NonCanonicalError
from src.models.lp import GE, LE, MAXIMIZE, LinearProgram
from src.models.uncertainty import BandProfile, MultiBandUncertaintySet
from src.reformulate import VAR_V, VAR_W, VAR_X, VAR_Z, build_compact
from src.separation import dev_bruteforce
from src.solver.simplex import simplex_solve
from tests.fixtures import ONE_BY_ONE_ROBUST, dense_lp, one_by_one, random_breakpoints, random_instance


def _dense_instance():
    rng = np.random.default_rng(7)
    lp = dense_lp(MAXIMIZE, (1.0, 1.0, 1.0), ((1.0, 2.0, 3.0), (3.0, 2.0, 1.0)), (LE, LE), (10.0, 10.0))
    profile = BandProfile(tuple(range(-3, 4)), (0,) * 7, (1, 1, 1, 3, 1, 1, 1))
    breakpoints = {(i, j): random_breakpoints(rng, lp.row_coefficients(i).get(j, 0.0), 3, 3) for i in range(2) for j in range(3)}
    return lp, MultiBandUncertaintySet(profile, breakpoints)


class TestCompactSize(unittest.TestCase):
    """Тесты размеров RLP"""

    def test_dense_counts(self):
        """Тест плотного экземпляра 2x3 с семью полосами"""
        lp, u = _dense_instance()
        counterpart = build_compact(lp, u)
        self.assertEqual(counterpart.added_vars, 2 * 7 * 2 + 3 * 2)
        self.assertEqual(counterpart.added_rows, 7 * 3 * 2)
        self.assertEqual(counterpart.rlp.num_rows, 2 + 42)

    def test_dense_counts_elided(self):
        """Тест удаления тривиальной полосы 0"""
        lp, u = _dense_instance()
        counterpart = build_compact(lp, u, elide_trivial_rows=True)
        self.assertEqual(counterpart.added_vars, 2 * 6 * 2 + 3 * 2)
        self.assertEqual(counterpart.added_rows, 6 * 3 * 2)
        self.assertNotIn((VAR_V, 0, 0), [(r.kind, r.row, r.index) for r in counterpart.var_map])

    def test_one_by_one_counts(self):
        """Тест экземпляра 1x1 с удалением и без"""
        lp, u = one_by_one()
        self.assertEqual(build_compact(lp, u).summary()["added_vars"], 5)
        elided = build_compact(lp, u, elide_trivial_rows=True)
        self.assertEqual(elided.summary(), {"base_vars": 1, "base_rows": 1, "added_vars": 3, "added_rows": 1})

    def test_empty_uncertainty(self):
        """Тест множества без неопределенности"""
        lp, _ = one_by_one()
        counterpart = build_compact(lp, MultiBandUncertaintySet(BandProfile((0,), (0,), (1,))))
        self.assertEqual(counterpart.added_vars, 0)
        self.assertEqual(counterpart.added_rows, 0)
        self.assertEqual(counterpart.rlp, lp)

    def test_rejects_non_canonical(self):
        """Тест отказа для строк >="""
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),),), (GE,), (1.0,))
        with self.assertRaises(NonCanonicalError):
            build_compact(lp, MultiBandUncertaintySet(BandProfile((0,), (0,), (1,))))

    def test_var_map_order(self):
        """Тест порядка столбцов: x, v, w, z"""
        lp, u = one_by_one()
        kinds = [role.kind for role in build_compact(lp, u).var_map]
        self.assertEqual(kinds, [VAR_X, VAR_V, VAR_V, VAR_W, VAR_W, VAR_Z])
        self.assertEqual(len(build_compact(lp, u).to_dict()["var_map"]), 6)


class TestCompactSolution(unittest.TestCase):
    """Тесты решения RLP"""

    def test_one_by_one_optimum(self):
        """Тест оптимума 20/3"""
        lp, u = one_by_one()
        for elide in (False, True):
            counterpart = build_compact(lp, u, elide_trivial_rows=elide)
            solution = simplex_solve(counterpart.rlp)
            with self.subTest(elide=elide):
                self.assertAlmostEqual(solution.objective, ONE_BY_ONE_ROBUST, places=9)
                self.assertAlmostEqual(counterpart.project(solution.x)[0], ONE_BY_ONE_ROBUST, places=9)

    def test_duality_witness(self):
        """Тест: двойственное значение строки не меньше DEV и равно ему на активных строках"""
        rng = np.random.default_rng(11)
        for trial in range(30):
            lp, u = random_instance(rng, 2, 4, 1, 2)
            counterpart = build_compact(lp, u)
            solution = simplex_solve(counterpart.rlp)
            self.assertTrue(solution.is_optimal)
            x = counterpart.project(solution.x)
            for i in range(lp.num_rows):
                dev, _ = dev_bruteforce(i, lp, u, x)
                dual = counterpart.row_dual_value(i, solution.x)
                lhs = lp.row_activity(i, x)
                with self.subTest(trial=trial, row=i):
                    self.assertGreaterEqual(dual, dev - 1e-7)
                    if lhs + dev >= lp.rhs[i] - 1e-9 * (1.0 + abs(lp.rhs[i])):
                        self.assertAlmostEqual(dual, dev, delta=1e-7 * (1.0 + abs(dev)))


if __name__ == "__main__":
    unittest.main()
