#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Фабрика решателей LP
"""

import logging
from typing import Any, Dict, List, Optional

from src.errors import UnknownSolverError
from src.solver.base_solver import LpSolverInterface

logger = logging.getLogger(__name__)

EXEC_PREFIX = "exec:"


class SolverFactory:
    """
    Создание решателя по имени: builtin | scipy | exec:<path>
    """

    _names = ["builtin", "scipy"]

    @classmethod
    def create_solver(cls, name: str, config: Optional[Dict[str, Any]] = None) -> LpSolverInterface:
        """
        Создание решателя

        Args:
            name: Имя решателя
            config: Параметры конструктора (для builtin: bland, warm_start, max_iterations)

        Returns:
            Экземпляр решателя

        Raises:
            UnknownSolverError: Имя не распознано
        """
        config = config or {}
        if name == "builtin":
            from src.solver.simplex import SimplexSolver
            solver: LpSolverInterface = SimplexSolver(**config)
        elif name == "scipy":
            from src.solver.scipy_solver import ScipySolver
            solver = ScipySolver()
        elif name.startswith(EXEC_PREFIX) and len(name) > len(EXEC_PREFIX):
            from src.solver.exec_solver import ExecSolver
            solver = ExecSolver(name[len(EXEC_PREFIX):])
        else:
            raise UnknownSolverError(f"Неизвестный решатель '{name}', ожидается {', '.join(cls.get_supported())}")
        logger.info(f"Выбран решатель: {solver.__class__.__name__}")
        return solver

    @classmethod
    def get_supported(cls) -> List[str]:
        return cls._names + [f"{EXEC_PREFIX}<path>"]
