#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Тесты решателей LP: встроенный симплекс, HiGHS, фабрика
"""

import math
import shutil
import sys
import tempfile
import unittest
from pathlib import Path

import numpy as np
from scipy.optimize import linprog

from src.errors import UnknownSolverError
from src.models.lp import EQ, GE, LE, MAXIMIZE, MINIMIZE, LinearProgram
from src.reformulate import build_compact
from src.solver.base_solver import LpStatus
from src.solver.exec_solver import ExecSolver
from src.solver.factory import SolverFactory
from src.solver.scipy_solver import ScipySolver
from src.solver.simplex import SimplexSolver, simplex_solve
from tests.fixtures import ONE_BY_ONE_ROBUST, dense_lp, one_by_one


def _random_lp(rng: np.random.Generator, m: int, n: int) -> LinearProgram:
    """Смесь знаков строк и границ; x = 1 допустим для всех строк"""
    matrix = rng.uniform(-3.0, 5.0, size=(m, n))
    senses = rng.choice([LE, GE, EQ], size=m, p=[0.6, 0.3, 0.1]).tolist()
    point = np.ones(n)
    activity = matrix @ point
    rhs = []
    for i, sense in enumerate(senses):
        slack = float(rng.uniform(0.0, 5.0))
        rhs.append(activity[i] + slack if sense == LE else activity[i] - slack if sense == GE else activity[i])
    lower = [0.0 if rng.random() < 0.7 else -2.0 for _ in range(n)]
    upper = [float(rng.uniform(2.0, 6.0)) for _ in range(n)]
    sense = MAXIMIZE if rng.random() < 0.5 else MINIMIZE
    return dense_lp(sense, rng.uniform(-2.0, 2.0, size=n).tolist(), matrix.tolist(),
                    senses, rhs, lower, upper)


def _dense(lp: LinearProgram) -> np.ndarray:
    matrix = np.zeros((lp.num_rows, lp.num_vars))
    for i, row in enumerate(lp.rows):
        for j, a in row:
            matrix[i, j] = a
    return matrix


def _linprog_objective(lp: LinearProgram) -> float:
    matrix = _dense(lp)
    direction = -1.0 if lp.is_maximize else 1.0
    ub = [i for i, s in enumerate(lp.row_sense) if s != EQ]
    eq = [i for i, s in enumerate(lp.row_sense) if s == EQ]
    sign = np.array([1.0 if lp.row_sense[i] == LE else -1.0 for i in ub])
    result = linprog(
        direction * np.array(lp.objective),
        A_ub=(matrix[ub] * sign[:, None]) if ub else None,
        b_ub=(np.array(lp.rhs)[ub] * sign) if ub else None,
        A_eq=matrix[eq] if eq else None,
        b_eq=np.array(lp.rhs)[eq] if eq else None,
        bounds=list(zip(lp.var_lower, lp.var_upper)),
        method="highs",
    )
    assert result.status == 0, result.message
    return direction * result.fun


class TestSimplex(unittest.TestCase):
    """Тесты встроенного симплекса"""

    def test_single_variable(self):
        """Тест max x при x <= 10"""
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),),), (LE,), (10.0,))
        solution = simplex_solve(lp)
        self.assertEqual(solution.status, LpStatus.OPTIMAL)
        self.assertAlmostEqual(solution.x[0], 10.0)
        self.assertAlmostEqual(solution.duals[0], 1.0)

    def test_infeasible(self):
        """Тест недопустимой задачи"""
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),), ((0, 1.0),)), (LE, GE), (1.0, 2.0))
        self.assertEqual(simplex_solve(lp).status, LpStatus.INFEASIBLE)

    def test_unbounded(self):
        """Тест неограниченной задачи"""
        lp = LinearProgram(MAXIMIZE, (1.0, 1.0), (((0, 1.0), (1, -1.0)),), (LE,), (1.0,))
        self.assertEqual(simplex_solve(lp).status, LpStatus.UNBOUNDED)

    def test_redundant_equal_rows_bland(self):
        """Тест вырожденной задачи с повторяющимися строками по правилу Бленда"""
        row = ((0, 1.0), (1, 1.0), (2, 1.0))
        lp = LinearProgram(
            MAXIMIZE, (2.0, 1.0, 1.0),
            (row, row, row, ((0, 1.0),), ((0, 1.0), (1, 1.0))),
            (EQ, EQ, LE, LE, LE), (4.0, 4.0, 4.0, 4.0, 4.0),
        )
        for bland in (False, True):
            solution = simplex_solve(lp, bland=bland)
            with self.subTest(bland=bland):
                self.assertEqual(solution.status, LpStatus.OPTIMAL)
                self.assertAlmostEqual(solution.objective, 8.0)

    def test_free_and_bounded_variables(self):
        """Тест свободной переменной и отрицательной нижней границы"""
        lp = LinearProgram(
            MINIMIZE, (1.0, 1.0), (((0, 1.0), (1, 1.0)),), (GE,), (-3.0,),
            (-math.inf, -2.0), (math.inf, 5.0),
        )
        solution = simplex_solve(lp)
        self.assertAlmostEqual(solution.objective, -3.0)
        self.assertTrue(SimplexSolver.residuals_ok(lp, solution.x))

    def test_matches_highs(self):
        """Тест совпадения оптимума с HiGHS на случайных задачах"""
        rng = np.random.default_rng(3)
        for trial in range(60):
            m, n = int(rng.integers(1, 8)), int(rng.integers(1, 8))
            lp = _random_lp(rng, m, n)
            solution = simplex_solve(lp)
            with self.subTest(trial=trial):
                self.assertEqual(solution.status, LpStatus.OPTIMAL)
                self.assertTrue(math.isclose(solution.objective, _linprog_objective(lp), rel_tol=1e-7, abs_tol=1e-7))
                self.assertTrue(SimplexSolver.residuals_ok(lp, solution.x))

    def test_compact_counterpart(self):
        """Тест RLP экземпляра 1x1"""
        lp, u = one_by_one()
        self.assertAlmostEqual(simplex_solve(build_compact(lp, u).rlp).objective, ONE_BY_ONE_ROBUST, places=9)

    def test_warm_start(self):
        """Тест теплого старта по дописанной строке"""
        lp = dense_lp(MAXIMIZE, (1.0, 2.0), ((1.0, 1.0), (1.0, 3.0)), (LE, LE), (4.0, 6.0))
        solver = SimplexSolver()
        first = solver.solve(lp)
        self.assertFalse(first.metadata["warm_start"])
        extended = lp.with_rows([((1, 1.0),)], [LE], [0.5])
        second = solver.solve(extended)
        self.assertTrue(second.metadata["warm_start"])
        self.assertAlmostEqual(second.objective, simplex_solve(extended).objective)
        self.assertAlmostEqual(second.objective, 4.5)

    def test_warm_start_disabled_after_reset(self):
        """Тест решения с нуля после reset"""
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),),), (LE,), (10.0,))
        solver = SimplexSolver()
        solver.solve(lp)
        solver.reset()
        self.assertFalse(solver.solve(lp.with_rows([((0, 2.0),)], [LE], [4.0])).metadata["warm_start"])


class TestOtherSolvers(unittest.TestCase):
    """Тесты HiGHS, внешнего решателя и фабрики"""

    def setUp(self):
        """Создание временного каталога для тестов"""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Удаление временного каталога"""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_scipy_one_by_one(self):
        """Тест HiGHS на RLP экземпляра 1x1"""
        lp, u = one_by_one()
        solution = ScipySolver().solve(build_compact(lp, u).rlp)
        self.assertEqual(solution.status, LpStatus.OPTIMAL)
        self.assertAlmostEqual(solution.objective, ONE_BY_ONE_ROBUST, places=7)

    def test_scipy_infeasible(self):
        """Тест статуса недопустимости HiGHS"""
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),), ((0, 1.0),)), (LE, GE), (1.0, 2.0))
        self.assertEqual(ScipySolver().solve(lp).status, LpStatus.INFEASIBLE)

    def test_factory(self):
        """Тест создания решателей по имени"""
        self.assertIsInstance(SolverFactory.create_solver("builtin"), SimplexSolver)
        self.assertTrue(SolverFactory.create_solver("builtin", {"bland": True}).bland)
        self.assertIsInstance(SolverFactory.create_solver("scipy"), ScipySolver)
        self.assertIsInstance(SolverFactory.create_solver("exec:/usr/local/bin/solver"), ExecSolver)
        with self.assertRaises(UnknownSolverError):
            SolverFactory.create_solver("cplex")

    def test_parse_solution(self):
        """Тест разбора ответа внешнего решателя"""
        lp = LinearProgram(MAXIMIZE, (1.0, 1.0), (((0, 1.0), (1, 1.0)),), (LE,), (3.0,))
        solution = ExecSolver.parse_solution("status optimal\nx 1 2\n", lp)
        self.assertEqual(solution.status, LpStatus.OPTIMAL)
        self.assertEqual(solution.x, [1.0, 2.0])
        self.assertAlmostEqual(solution.objective, 3.0)

    @unittest.skipIf(sys.platform.startswith("win"), "исполняемый скрипт с shebang")
    def test_exec_solver_roundtrip(self):
        """Тест внешнего решателя-скрипта"""
        script = Path(self.temp_dir) / "solver.py"
        script.write_text(
            f"#!{sys.executable}\n"
            "import sys\n"
            "from pathlib import Path\n"
            "assert '[lp]' in Path(sys.argv[1]).read_text()\n"
            "Path(sys.argv[2]).write_text('status optimal\\nx 10\\n')\n",
            encoding="utf-8",
        )
        script.chmod(0o755)
        lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),),), (LE,), (10.0,))
        solution = SolverFactory.create_solver(f"exec:{script}").solve(lp)
        self.assertEqual(solution.status, LpStatus.OPTIMAL)
        self.assertEqual(solution.objective, 10.0)
        self.assertEqual(ExecSolver.parse_solution("status infeasible\n", lp).status, LpStatus.INFEASIBLE)


if __name__ == "__main__":
    unittest.main()
