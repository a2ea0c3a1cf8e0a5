#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Базовый интерфейс решателя LP
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.models.lp import LinearProgram

logger = logging.getLogger(__name__)


class LpStatus:
    """Статусы решения LP"""
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    LIMIT = "limit"

    ALL = (OPTIMAL, INFEASIBLE, UNBOUNDED, LIMIT)


@dataclass
class LpSolution:
    """
    Результат решения LP

    Attributes:
        status: Один из LpStatus
        x: Значения переменных (пусто, если статус не optimal)
        objective: c'x в смысле исходной задачи
        duals: Двойственные оценки строк (d objective / d b_i), если доступны
        iterations: Число итераций решателя
        wall_time: Время решения в секундах
    """
    status: str
    x: List[float] = field(default_factory=list)
    objective: float = float("nan")
    duals: Optional[List[float]] = None
    iterations: int = 0
    wall_time: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "objective": self.objective,
            "x": list(self.x),
            "iterations": self.iterations,
        }


@dataclass(frozen=True)
class SolverCapabilities:
    """Описание возможностей решателя"""
    max_rows: int
    max_cols: int
    warm_start: bool = False


class LpSolverInterface(ABC):
    """Базовый класс решателей LP"""

    name = "base"
    FEASIBILITY_TOLERANCE = 1e-7

    @property
    @abstractmethod
    def capabilities(self) -> SolverCapabilities:
        pass

    @abstractmethod
    def solve(self, lp: LinearProgram, time_limit: Optional[float] = None) -> LpSolution:
        """
        Решение LP

        Args:
            lp: Задача
            time_limit: Ограничение времени в секундах

        Returns:
            LpSolution
        """
        pass

    def reset(self) -> None:
        """Сброс сохраненного состояния (теплого старта)"""

    def check_size(self, lp: LinearProgram) -> None:
        caps = self.capabilities
        if lp.num_rows > caps.max_rows or lp.num_vars > caps.max_cols:
            logger.warning(
                f"Решатель '{self.name}': задача {lp.num_rows}x{lp.num_vars} "
                f"превышает заявленный размер {caps.max_rows}x{caps.max_cols}"
            )

    @classmethod
    def residuals_ok(cls, lp: LinearProgram, x: List[float]) -> bool:
        """Невязки строк <= 1e-7 (1 + |b_i|), границы с тем же допуском"""
        for i in range(lp.num_rows):
            if lp.row_violation(i, x) > cls.FEASIBILITY_TOLERANCE * (1.0 + abs(lp.rhs[i])):
                return False
        for j, value in enumerate(x):
            scale = 1.0 + max(abs(lp.var_lower[j]) if lp.var_lower[j] > -float("inf") else 0.0,
                              abs(lp.var_upper[j]) if lp.var_upper[j] < float("inf") else 0.0)
            if lp.var_lower[j] - value > cls.FEASIBILITY_TOLERANCE * scale:
                return False
            if value - lp.var_upper[j] > cls.FEASIBILITY_TOLERANCE * scale:
                return False
        return True
