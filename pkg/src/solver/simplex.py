#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Встроенный двухфазный симплекс-метод (плотная таблица numpy)

Возможности:
- произвольные границы переменных (сдвиг, отражение, расщепление свободных);
- фаза 1 с искусственными переменными, удаление избыточных строк;
- правило Данцига с переходом на правило Бленда после серии вырожденных шагов;
- двойственные оценки строк;
- теплый старт: если новая LP совпадает с предыдущей плюс дописанные
  строки <= или >=, таблица дополняется и пересчитывается двойственным
  симплексом; при любом несоответствии выполняется решение с нуля.

Рассчитан на задачи настольного размера (до ~2000 x 2000).
"""

import logging
import math
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.models.lp import EQ, GE, LE, LinearProgram, Row
from src.solver.base_solver import LpSolution, LpSolverInterface, LpStatus, SolverCapabilities

logger = logging.getLogger(__name__)


class _StandardForm:
    """Замена переменных x = shift + Σ sign * x', x' >= 0"""

    def __init__(self, lp: LinearProgram):
        self.num_vars = lp.num_vars
        self.shift = np.zeros(lp.num_vars)
        self.columns: List[Tuple[int, float]] = []
        self.var_columns: List[List[int]] = [[] for _ in range(lp.num_vars)]
        self.upper_rows: List[Tuple[int, float]] = []

        for j in range(lp.num_vars):
            lo, up = lp.var_lower[j], lp.var_upper[j]
            if lo > -math.inf:
                self.shift[j] = lo
                self._add_column(j, 1.0)
                if up < math.inf:
                    self.upper_rows.append((len(self.columns) - 1, up - lo))
            elif up < math.inf:
                self.shift[j] = up
                self._add_column(j, -1.0)
            else:
                self._add_column(j, 1.0)
                self._add_column(j, -1.0)

        direction = -1.0 if lp.is_maximize else 1.0
        self.cost = np.array([direction * lp.objective[j] * sign for j, sign in self.columns])

    def _add_column(self, j: int, sign: float) -> None:
        self.var_columns[j].append(len(self.columns))
        self.columns.append((j, sign))

    @property
    def size(self) -> int:
        return len(self.columns)

    def transform_row(self, row: Row, rhs: float) -> Tuple[np.ndarray, float]:
        vec = np.zeros(self.size)
        b = rhs
        for j, a in row:
            b -= a * self.shift[j]
            for c in self.var_columns[j]:
                vec[c] += a * self.columns[c][1]
        return vec, b

    def recover(self, values: np.ndarray) -> List[float]:
        x = self.shift.copy()
        for c, (j, sign) in enumerate(self.columns):
            x[j] += sign * values[c]
        return [float(v) if v != 0 else 0.0 for v in x]


@dataclass
class _WarmState:
    """Оптимальная таблица предыдущего решения"""
    lp: LinearProgram
    form: _StandardForm
    tableau: np.ndarray
    basis: List[int]
    row_ids: List[int]
    matrix: np.ndarray
    flips: List[float]
    origins: List[int]

    def appended_rows(self, lp: LinearProgram) -> Optional[List[int]]:
        """Индексы дописанных строк или None, если LP не является продолжением"""
        old = self.lp
        if (lp.num_vars != old.num_vars or lp.sense != old.sense or lp.objective != old.objective
                or lp.var_lower != old.var_lower or lp.var_upper != old.var_upper):
            return None
        m = old.num_rows
        if lp.num_rows < m:
            return None
        if lp.rows[:m] != old.rows or lp.row_sense[:m] != old.row_sense or lp.rhs[:m] != old.rhs:
            return None
        new_rows = list(range(m, lp.num_rows))
        if any(lp.row_sense[i] not in (LE, GE) for i in new_rows):
            return None
        return new_rows


class SimplexSolver(LpSolverInterface):
    """
    Плотный табличный симплекс

    Attributes:
        bland: Всегда использовать правило Бленда
        warm_start: Разрешить теплый старт по дописанным строкам
        max_iterations: Лимит итераций (по умолчанию зависит от размера)
    """

    name = "builtin"

    MAX_ROWS = 2000
    MAX_COLS = 2000
    PIVOT_TOLERANCE = 1e-9
    COST_TOLERANCE = 1e-9
    PHASE_ONE_TOLERANCE = 1e-8
    DEGENERATE_LIMIT = 50

    def __init__(self, bland: bool = False, warm_start: bool = True, max_iterations: Optional[int] = None):
        self.bland = bland
        self.warm_start = warm_start
        self.max_iterations = max_iterations
        self._state: Optional[_WarmState] = None
        self._iterations = 0
        self._limit = 0
        self._deadline = math.inf

    @property
    def capabilities(self) -> SolverCapabilities:
        return SolverCapabilities(self.MAX_ROWS, self.MAX_COLS, warm_start=True)

    def reset(self) -> None:
        self._state = None

    def solve(self, lp: LinearProgram, time_limit: Optional[float] = None) -> LpSolution:
        start = time.perf_counter()
        self.check_size(lp)
        self._iterations = 0
        self._deadline = start + time_limit if time_limit else math.inf

        solution = None
        if self.warm_start and self._state is not None:
            appended = self._state.appended_rows(lp)
            if appended is not None:
                solution = self._resolve(lp, appended)
                if solution is None:
                    logger.warning("Теплый старт не удался, решение с нуля")
                else:
                    solution.metadata["warm_start"] = True
        if solution is None:
            solution = self._cold(lp)
            solution.metadata["warm_start"] = False

        solution.iterations = self._iterations
        solution.wall_time = time.perf_counter() - start
        logger.debug(
            f"Симплекс: {lp.num_rows}x{lp.num_vars}, статус {solution.status}, "
            f"итераций {solution.iterations}"
        )
        return solution

    def _cold(self, lp: LinearProgram) -> LpSolution:
        self._state = None
        form = _StandardForm(lp)
        specs: List[Tuple[np.ndarray, str, float, int]] = []
        for i in range(lp.num_rows):
            vec, b = form.transform_row(lp.rows[i], lp.rhs[i])
            specs.append((vec, lp.row_sense[i], b, i))
        for c, bound in form.upper_rows:
            vec = np.zeros(form.size)
            vec[c] = 1.0
            specs.append((vec, LE, bound, -1))

        n_struct = form.size
        n_slack = sum(1 for _, sense, _, _ in specs if sense != EQ)
        rows = len(specs)
        n_real = n_struct + n_slack
        self._limit = self.max_iterations or 20 * (rows + n_real) + 1000

        matrix = np.zeros((rows, n_real))
        rhs = np.zeros(rows)
        flips = [1.0] * rows
        basis = [-1] * rows
        needs_artificial: List[int] = []
        slack_col = n_struct
        for r, (vec, sense, b, _) in enumerate(specs):
            matrix[r, :n_struct] = vec
            rhs[r] = b
            slack = None
            if sense != EQ:
                matrix[r, slack_col] = 1.0 if sense == LE else -1.0
                slack = slack_col
                slack_col += 1
            if b < 0:
                matrix[r] *= -1.0
                rhs[r] = -b
                flips[r] = -1.0
            if slack is not None and matrix[r, slack] > 0:
                basis[r] = slack
            else:
                needs_artificial.append(r)

        n_art = len(needs_artificial)
        tableau = np.zeros((rows + 1, n_real + n_art + 1))
        tableau[:rows, :n_real] = matrix
        tableau[:rows, -1] = rhs
        for a, r in enumerate(needs_artificial):
            tableau[r, n_real + a] = 1.0
            basis[r] = n_real + a
        row_ids = list(range(rows))

        if n_art:
            phase_one_cost = np.zeros(n_real + n_art)
            phase_one_cost[n_real:] = 1.0
            self._set_objective(tableau, basis, phase_one_cost)
            status = self._primal(tableau, basis, n_real + n_art)
            if status == LpStatus.LIMIT:
                return LpSolution(LpStatus.LIMIT)
            infeasibility = -tableau[-1, -1]
            if infeasibility > self.PHASE_ONE_TOLERANCE * (1.0 + float(np.max(rhs, initial=0.0))):
                return LpSolution(LpStatus.INFEASIBLE, metadata={"phase_one": float(infeasibility)})
            tableau, basis, row_ids = self._drive_out_artificials(tableau, basis, row_ids, n_real)

        cost = np.concatenate([form.cost, np.zeros(n_slack)])
        self._set_objective(tableau, basis, cost)
        status = self._primal(tableau, basis, n_real)
        if status != LpStatus.OPTIMAL:
            return LpSolution(status)

        origins = [origin for _, _, _, origin in specs]
        self._state = _WarmState(lp, form, tableau, basis, row_ids, matrix, flips, origins)
        return self._extract(lp, self._state)

    def _resolve(self, lp: LinearProgram, new_rows: Sequence[int]) -> Optional[LpSolution]:
        state = self._state
        form = state.form
        tableau, basis, matrix = state.tableau.copy(), list(state.basis), state.matrix
        row_ids, flips, origins = list(state.row_ids), list(state.flips), list(state.origins)
        self._limit = self.max_iterations or 20 * (tableau.shape[0] + tableau.shape[1]) + 1000

        for i in new_rows:
            vec, b = form.transform_row(lp.rows[i], lp.rhs[i])
            flip = 1.0
            if lp.row_sense[i] == GE:
                vec, b, flip = -vec, -b, -1.0
            width = tableau.shape[1] - 1
            tableau = np.insert(tableau, width, 0.0, axis=1)
            matrix = np.hstack([matrix, np.zeros((matrix.shape[0], 1))])
            new_matrix_row = np.zeros(width + 1)
            new_matrix_row[:form.size] = vec
            new_matrix_row[width] = 1.0
            matrix = np.vstack([matrix, new_matrix_row])

            full = np.zeros(width + 2)
            full[:width + 1] = new_matrix_row
            full[-1] = b
            for r, col in enumerate(basis):
                coef = full[col]
                if coef != 0.0:
                    full -= coef * tableau[r]
            tableau = np.vstack([tableau[:-1], full, tableau[-1:]])
            basis.append(width)
            row_ids.append(matrix.shape[0] - 1)
            flips.append(flip)
            origins.append(i)

        status = self._dual(tableau, basis)
        if status != LpStatus.OPTIMAL:
            return None
        status = self._primal(tableau, basis, tableau.shape[1] - 1)
        if status != LpStatus.OPTIMAL:
            return None

        candidate = _WarmState(lp, form, tableau, basis, row_ids, matrix, flips, origins)
        solution = self._extract(lp, candidate)
        if not self.residuals_ok(lp, solution.x):
            return None
        self._state = candidate
        return solution

    def _extract(self, lp: LinearProgram, state: _WarmState) -> LpSolution:
        tableau, basis = state.tableau, state.basis
        width = tableau.shape[1] - 1
        values = np.zeros(width)
        for r, col in enumerate(basis):
            values[col] = max(tableau[r, -1], 0.0)
        x = state.form.recover(values[:state.form.size])
        objective = lp.objective_value(x)
        return LpSolution(
            status=LpStatus.OPTIMAL,
            x=x,
            objective=objective if objective != 0 else 0.0,
            duals=self._duals(lp, state),
        )

    def _duals(self, lp: LinearProgram, state: _WarmState) -> Optional[List[float]]:
        cost = np.zeros(state.matrix.shape[1])
        cost[:state.form.size] = state.form.cost
        basis_matrix = state.matrix[np.ix_(state.row_ids, state.basis)]
        try:
            y = np.linalg.solve(basis_matrix.T, cost[state.basis])
        except np.linalg.LinAlgError:
            return None
        direction = -1.0 if lp.is_maximize else 1.0
        duals = [0.0] * lp.num_rows
        for value, r in zip(y, state.row_ids):
            origin = state.origins[r]
            if origin >= 0:
                duals[origin] += direction * state.flips[r] * float(value)
        return [d if d != 0 else 0.0 for d in duals]

    @staticmethod
    def _set_objective(tableau: np.ndarray, basis: List[int], cost: np.ndarray) -> None:
        tableau[-1, :] = 0.0
        tableau[-1, :len(cost)] = cost
        for r, col in enumerate(basis):
            if col < len(cost) and cost[col] != 0.0:
                tableau[-1] -= cost[col] * tableau[r]

    @staticmethod
    def _pivot(tableau: np.ndarray, r: int, c: int) -> None:
        tableau[r] /= tableau[r, c]
        column = tableau[:, c].copy()
        column[r] = 0.0
        nonzero = np.nonzero(column)[0]
        if len(nonzero):
            tableau[nonzero] -= np.outer(column[nonzero], tableau[r])

    def _out_of_budget(self) -> bool:
        return self._iterations >= self._limit or time.perf_counter() > self._deadline

    def _primal(self, tableau: np.ndarray, basis: List[int], num_cols: int) -> str:
        """Прямой симплекс по первым num_cols столбцам"""
        bland = self.bland
        degenerate = 0
        while True:
            reduced = tableau[-1, :num_cols]
            candidates = np.nonzero(reduced < -self.COST_TOLERANCE)[0]
            if len(candidates) == 0:
                return LpStatus.OPTIMAL
            if self._out_of_budget():
                return LpStatus.LIMIT
            if bland:
                c = int(candidates[0])
            else:
                c = int(candidates[np.argmin(reduced[candidates])])

            column = tableau[:-1, c]
            rows = np.nonzero(column > self.PIVOT_TOLERANCE)[0]
            if len(rows) == 0:
                return LpStatus.UNBOUNDED
            ratios = tableau[rows, -1] / column[rows]
            best = float(ratios.min())
            ties = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
            r = int(min(ties, key=lambda i: basis[i]))

            if best <= self.PIVOT_TOLERANCE:
                degenerate += 1
                if degenerate > self.DEGENERATE_LIMIT and not bland:
                    logger.debug("Серия вырожденных шагов: переход на правило Бленда")
                    bland = True
            else:
                degenerate = 0
            self._pivot(tableau, r, c)
            basis[r] = c
            self._iterations += 1

    def _dual(self, tableau: np.ndarray, basis: List[int]) -> str:
        """Двойственный симплекс от двойственно допустимого базиса"""
        while True:
            rhs = tableau[:-1, -1]
            rows = np.nonzero(rhs < -self.PHASE_ONE_TOLERANCE)[0]
            if len(rows) == 0:
                return LpStatus.OPTIMAL
            if self._out_of_budget():
                return LpStatus.LIMIT
            r = int(rows[np.argmin(rhs[rows])])
            row = tableau[r, :-1]
            cols = np.nonzero(row < -self.PIVOT_TOLERANCE)[0]
            if len(cols) == 0:
                return LpStatus.INFEASIBLE
            ratios = np.maximum(tableau[-1, cols], 0.0) / -row[cols]
            c = int(cols[np.argmin(ratios)])
            self._pivot(tableau, r, c)
            basis[r] = c
            self._iterations += 1

    def _drive_out_artificials(
        self,
        tableau: np.ndarray,
        basis: List[int],
        row_ids: List[int],
        n_real: int,
    ) -> Tuple[np.ndarray, List[int], List[int]]:
        redundant = []
        for r, col in enumerate(basis):
            if col < n_real:
                continue
            row = np.abs(tableau[r, :n_real])
            c = int(np.argmax(row)) if n_real else 0
            if n_real and row[c] > self.PIVOT_TOLERANCE:
                self._pivot(tableau, r, c)
                basis[r] = c
            else:
                redundant.append(r)
        if redundant:
            logger.debug(f"Удалено избыточных строк: {len(redundant)}")
        keep = [r for r in range(len(basis)) if r not in set(redundant)]
        tableau = np.vstack([tableau[keep], tableau[-1:]])
        tableau = np.hstack([tableau[:, :n_real], tableau[:, -1:]])
        return tableau, [basis[r] for r in keep], [row_ids[r] for r in keep]


def simplex_solve(lp: LinearProgram, time_limit: Optional[float] = None, bland: bool = False) -> LpSolution:
    """
    Решение LP встроенным симплексом без теплого старта

    Args:
        lp: Задача
        time_limit: Ограничение времени в секундах
        bland: Правило Бленда с первой итерации

    Returns:
        LpSolution
    """
    return SimplexSolver(bland=bland, warm_start=False).solve(lp, time_limit)
