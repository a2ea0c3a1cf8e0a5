#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Маршруты решения робастной задачи

- solve_compact: компактный эквивалент (одна LP);
- solve_cutting_planes: номинальная LP + отсечения робастности,
  пока проверка потоком находит нарушенные строки.

Оба маршрута принимают каноническую пару (все строки <=).
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set, Tuple

from src.errors import SolverStatusError
from src.models.lp import LinearProgram
from src.models.uncertainty import MultiBandUncertaintySet
from src.reformulate import build_compact
from src.separation import VIOLATION_TOLERANCE, RobustnessCut, check_robust, emit_cut, is_violated
from src.solver.base_solver import LpSolution, LpSolverInterface, LpStatus

logger = logging.getLogger(__name__)

METHOD_COMPACT = "compact"
METHOD_CUTS = "cuts"

CUTS_ALL = "all"
CUTS_MOST_VIOLATED = "most_violated"


def price_of_robustness(nominal: float, robust: float, maximize: bool) -> float:
    """
    PoR% - ухудшение оптимума, необходимое для робастности

    max: 100 (nominal - robust) / |nominal|; min: 100 (robust - nominal) / |nominal|.
    При nominal = 0: 0 если значения равны, иначе inf.
    """
    loss = nominal - robust if maximize else robust - nominal
    if nominal == 0:
        return 0.0 if loss == 0 else math.copysign(math.inf, loss)
    value = 100.0 * loss / abs(nominal)
    return value if value != 0 else 0.0


@dataclass
class SolveReport:
    """
    Отчет о решении робастной задачи

    Attributes:
        method: compact | cuts
        status: Статус LpStatus
        objective: Робастный оптимум (или лучший найденный при status=limit)
        nominal_objective: Номинальный оптимум
        por_pct: Цена робастности, %
        x: Робастное решение
        cuts: Число добавленных отсечений
        iterations: Число раундов отсечений
        lp_solves: Число решений LP
        added_vars / added_rows: Прирост размера относительно номинальной LP
        max_violation: Наибольшее нарушение по итоговым сертификатам
        timings: Время по этапам, с
    """
    method: str
    status: str
    objective: float
    nominal_objective: float
    por_pct: float
    x: List[float] = field(default_factory=list)
    cuts: int = 0
    iterations: int = 0
    lp_solves: int = 0
    added_vars: int = 0
    added_rows: int = 0
    max_violation: float = 0.0
    objective_history: List[float] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    cut_pool: List[RobustnessCut] = field(default_factory=list)

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL

    @property
    def total_time(self) -> float:
        return self.timings.get("total", 0.0)

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "method": self.method,
            "status": self.status,
            "objective": self.objective,
            "nominal_objective": self.nominal_objective,
            "por_pct": self.por_pct,
            "x": list(self.x),
            "cuts": self.cuts,
            "iterations": self.iterations,
            "lp_solves": self.lp_solves,
            "added_vars": self.added_vars,
            "added_rows": self.added_rows,
            "max_violation": self.max_violation,
        }
        if include_timings:
            data["timings"] = dict(self.timings)
        return data


@dataclass
class CutLimits:
    """
    Параметры цикла отсечений

    Attributes:
        max_iter: Лимит раундов (None - 10 m n)
        time_limit: Лимит времени, с
        tol: Допуск приемки (относительный, как в separation)
        cuts_per_round: all | most_violated
        separation_factor: Отсечения строятся при нарушении > tol * separation_factor
        contract_certain: Сжатие определенных слотов в сети
        lexicographic: Отсечения по лексикографически наименьшему худшему назначению
    """
    max_iter: Optional[int] = None
    time_limit: Optional[float] = None
    tol: float = VIOLATION_TOLERANCE
    cuts_per_round: str = CUTS_ALL
    separation_factor: float = 1e-3
    contract_certain: bool = True
    lexicographic: bool = True

    def resolved_max_iter(self, lp: LinearProgram) -> int:
        if self.max_iter is not None:
            return self.max_iter
        return max(1, 10 * lp.num_rows * lp.num_vars)


@dataclass
class CutLoopState:
    """
    Состояние цикла отсечений

    Attributes:
        working: Номинальная LP с накопленными отсечениями
        pool: Добавленные отсечения в порядке добавления
        keys: Ключи (строка, назначение) добавленных отсечений
        iteration: Число раундов с добавленными отсечениями
        solve_time / separate_time: Время решения LP и разделения
    """
    working: LinearProgram
    pool: List[RobustnessCut] = field(default_factory=list)
    keys: Set[Tuple[int, Tuple[Tuple[int, int], ...]]] = field(default_factory=set)
    iteration: int = 0
    lp_solves: int = 0
    solve_time: float = 0.0
    separate_time: float = 0.0
    objective_history: List[float] = field(default_factory=list)

    def add_cuts(self, cuts: List[RobustnessCut]) -> int:
        """Добавление новых отсечений, дубликаты пропускаются; возвращает число добавленных"""
        fresh = []
        for cut in cuts:
            if cut.key in self.keys:
                continue
            self.keys.add(cut.key)
            fresh.append(cut)
        if fresh:
            self.pool.extend(fresh)
            self.working = self.working.with_rows(
                (cut.row for cut in fresh),
                ("<=",) * len(fresh),
                (cut.rhs for cut in fresh),
            )
        return len(fresh)


def _solve_or_raise(solver: LpSolverInterface, lp: LinearProgram, context: str,
                    time_limit: Optional[float] = None) -> LpSolution:
    solution = solver.solve(lp, time_limit)
    if not solution.is_optimal:
        raise SolverStatusError(solution.status, context)
    return solution


def solve_nominal(lp: LinearProgram, solver: LpSolverInterface) -> LpSolution:
    """Решение номинальной LP с исключением при неоптимальном статусе"""
    solver.reset()
    return _solve_or_raise(solver, lp, "номинальная задача")


def solve_compact(
    lp: LinearProgram,
    u: MultiBandUncertaintySet,
    solver: LpSolverInterface,
    elide_trivial_rows: bool = False,
    time_limit: Optional[float] = None,
) -> SolveReport:
    """
    Решение через компактный эквивалент

    Args:
        lp: Каноническая LP
        u: Множество неопределенности
        solver: Решатель LP
        elide_trivial_rows: Удалять тривиальные полосы в RLP
        time_limit: Лимит времени на решение RLP, с

    Returns:
        SolveReport

    Raises:
        SolverStatusError: Номинальная LP или RLP решены не до оптимума
    """
    start = time.perf_counter()
    nominal = solve_nominal(lp, solver)
    nominal_time = time.perf_counter() - start

    build_start = time.perf_counter()
    counterpart = build_compact(lp, u, elide_trivial_rows=elide_trivial_rows)
    build_time = time.perf_counter() - build_start

    solve_start = time.perf_counter()
    solver.reset()
    robust = _solve_or_raise(solver, counterpart.rlp, "компактный эквивалент", time_limit)
    solve_time = time.perf_counter() - solve_start

    x = counterpart.project(robust.x)
    objective = lp.objective_value(x)
    report = SolveReport(
        method=METHOD_COMPACT,
        status=LpStatus.OPTIMAL,
        objective=objective,
        nominal_objective=nominal.objective,
        por_pct=price_of_robustness(nominal.objective, objective, lp.is_maximize),
        x=x,
        lp_solves=1,
        added_vars=counterpart.added_vars,
        added_rows=counterpart.added_rows,
        objective_history=[objective],
        timings={
            "nominal": nominal_time,
            "build": build_time,
            "solve": solve_time,
            "total": build_time + solve_time,
        },
    )
    logger.info(
        f"Компактный маршрут: оптимум {objective:.10g}, номинал {nominal.objective:.10g}, "
        f"PoR {report.por_pct:.4f}%"
    )
    return report


def solve_cutting_planes(
    lp: LinearProgram,
    u: MultiBandUncertaintySet,
    solver: LpSolverInterface,
    limits: Optional[CutLimits] = None,
) -> SolveReport:
    """
    Решение методом отсечений

    Первое решение - номинальная LP; затем каждая нарушенная строка
    дает отсечение по худшему назначению полос. Цикл завершается,
    когда нарушений нет (status optimal), когда новые отсечения
    совпадают с уже добавленными или по лимиту (status limit).

    Args:
        lp: Каноническая LP
        u: Множество неопределенности
        solver: Решатель LP
        limits: Параметры цикла

    Returns:
        SolveReport

    Raises:
        SolverStatusError: Номинальная LP или LP с отсечениями недопустима/неограничена
    """
    limits = limits or CutLimits()
    max_iter = limits.resolved_max_iter(lp)
    separation_tol = limits.tol * limits.separation_factor
    start = time.perf_counter()
    deadline = start + limits.time_limit if limits.time_limit else math.inf

    state = CutLoopState(working=lp)
    solver.reset()
    status = LpStatus.LIMIT
    nominal_objective = math.nan
    x: List[float] = []
    objective = math.nan
    max_violation = math.inf

    while True:
        remaining = deadline - time.perf_counter()
        if remaining <= 0:
            logger.warning("Цикл отсечений: исчерпан лимит времени")
            break

        solve_start = time.perf_counter()
        solution = solver.solve(state.working, None if remaining == math.inf else remaining)
        state.solve_time += time.perf_counter() - solve_start
        state.lp_solves += 1
        if solution.status == LpStatus.LIMIT:
            stage = "номинальная задача" if state.lp_solves == 1 else f"раунд {state.iteration}"
            logger.warning(f"Цикл отсечений: решатель LP достиг лимита ({stage})")
            break
        if not solution.is_optimal:
            context = "номинальная задача" if state.lp_solves == 1 else f"цикл отсечений, раунд {state.iteration}"
            raise SolverStatusError(solution.status, context)

        x = list(solution.x)
        objective = solution.objective
        state.objective_history.append(objective)
        if state.lp_solves == 1:
            nominal_objective = objective

        separate_start = time.perf_counter()
        certificates = check_robust(
            lp, u, x, tol=separation_tol, contract_certain=limits.contract_certain,
            lexicographic=limits.lexicographic,
        )
        state.separate_time += time.perf_counter() - separate_start

        max_violation = max((c.violation_amount for c in certificates), default=0.0)
        accepted = not any(is_violated(c.lhs_nominal, c.worst_case_deviation, c.rhs, limits.tol) for c in certificates)
        violated = [c for c in certificates if c.violated]
        if not violated:
            status = LpStatus.OPTIMAL
            break

        if state.iteration >= max_iter:
            logger.warning(f"Цикл отсечений: исчерпан лимит раундов {max_iter}")
            break

        cuts = [emit_cut(c, lp, u) for c in violated]
        if limits.cuts_per_round == CUTS_MOST_VIOLATED:
            order = sorted(range(len(cuts)), key=lambda idx: (-violated[idx].violation_amount, violated[idx].row))
            cuts = [cuts[idx] for idx in order]
            added = 0
            for cut in cuts:
                added = state.add_cuts([cut])
                if added:
                    break
        else:
            added = state.add_cuts(cuts)

        if not added:
            status = LpStatus.OPTIMAL if accepted else LpStatus.LIMIT
            logger.info(f"Цикл отсечений: новых отсечений нет, статус {status}")
            break
        state.iteration += 1
        logger.info(
            f"Раунд {state.iteration}: целевая {objective:.10g}, добавлено отсечений {added}, "
            f"всего {len(state.pool)}"
        )

    total = time.perf_counter() - start
    report = SolveReport(
        method=METHOD_CUTS,
        status=status,
        objective=objective,
        nominal_objective=nominal_objective,
        por_pct=price_of_robustness(nominal_objective, objective, lp.is_maximize),
        x=x,
        cuts=len(state.pool),
        iterations=state.iteration,
        lp_solves=state.lp_solves,
        added_vars=0,
        added_rows=len(state.pool),
        max_violation=max_violation,
        objective_history=list(state.objective_history),
        timings={"solve": state.solve_time, "separate": state.separate_time, "total": total},
        cut_pool=list(state.pool),
    )
    logger.info(
        f"Маршрут отсечений: статус {status}, оптимум {objective:.10g}, отсечений {report.cuts}, "
        f"решений LP {state.lp_solves}"
    )
    return report


def routes_agree(first: SolveReport, second: SolveReport, tol: float = 1e-6) -> bool:
    """|obj_1 - obj_2| <= tol (1 + |obj_1|)"""
    return abs(first.objective - second.objective) <= tol * (1.0 + abs(first.objective))
