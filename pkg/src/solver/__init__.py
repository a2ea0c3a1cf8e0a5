#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Решатели LP и маршруты робастного решения

- builtin: собственный симплекс-метод с двойственными оценками
- scipy: HiGHS через scipy.optimize.linprog
- exec:<path>: внешний решатель через подпроцесс
"""

from .base_solver import LpSolution, LpSolverInterface, LpStatus, SolverCapabilities
from .factory import SolverFactory
from .routes import (
    CUTS_ALL,
    CUTS_MOST_VIOLATED,
    METHOD_COMPACT,
    METHOD_CUTS,
    CutLimits,
    CutLoopState,
    SolveReport,
    price_of_robustness,
    routes_agree,
    solve_compact,
    solve_cutting_planes,
    solve_nominal,
)
from .simplex import SimplexSolver, simplex_solve

__all__ = [
    "LpSolution",
    "LpSolverInterface",
    "LpStatus",
    "SolverCapabilities",
    "SolverFactory",
    "SimplexSolver",
    "simplex_solve",
    "SolveReport",
    "CutLimits",
    "CutLoopState",
    "solve_nominal",
    "solve_compact",
    "solve_cutting_planes",
    "price_of_robustness",
    "routes_agree",
    "METHOD_COMPACT",
    "METHOD_CUTS",
    "CUTS_ALL",
    "CUTS_MOST_VIOLATED",
]
