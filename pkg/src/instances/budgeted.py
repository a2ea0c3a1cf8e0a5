#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Базовая модель с бюджетом Γ для сравнения с многополосной
"""

import logging
import math
from fractions import Fraction
from typing import Dict

from src.models.budgeted import BudgetedUncertaintySet
from src.models.lp import LinearProgram
from src.models.uncertainty import BandProfile, MultiBandUncertaintySet
from src.solver.base_solver import LpSolverInterface
from src.solver.routes import SolveReport, solve_compact

logger = logging.getLogger(__name__)

GAMMA_FRACTION = Fraction(4, 5)


def budget_from_profile(profile: BandProfile, fraction: Fraction = GAMMA_FRACTION) -> int:
    """Γ = ceil(fraction * u_max), u_max = max u_k по полосам k != 0"""
    u_max = max((profile.upper(k) for k in profile.nonzero_bands), default=0)
    return math.ceil(fraction * u_max)


def bs_from_mb(u: MultiBandUncertaintySet, fraction: Fraction = GAMMA_FRACTION) -> BudgetedUncertaintySet:
    """
    Множество с бюджетом, согласованное с многополосным

    Γ_i = ceil(0.8 u_max) по профилю строки; d+_ij = d_ij^{K+}
    (наибольшее отклонение коэффициента).

    Args:
        u: Многополосное множество (каноническая ориентация строк)
        fraction: Доля u_max

    Returns:
        BudgetedUncertaintySet с Γ по строкам
    """
    gamma = budget_from_profile(u.profile, fraction)
    row_gamma: Dict[int, int] = {}
    for i, profile in u.row_profiles.items():
        g = budget_from_profile(profile, fraction)
        if g != gamma:
            row_gamma[i] = g
    max_deviation = {key: u.max_deviation(*key) for key in u.breakpoints}
    bs = BudgetedUncertaintySet(gamma, max_deviation, row_gamma)
    logger.info(f"Модель с бюджетом: Γ = {gamma}, переопределений по строкам {len(row_gamma)}")
    return bs


def solve_bs(lp: LinearProgram, bs: BudgetedUncertaintySet, solver: LpSolverInterface) -> SolveReport:
    """Робастный оптимум модели с бюджетом через вложение в многополосную модель"""
    report = solve_compact(lp, bs.to_multiband(lp.num_vars), solver, elide_trivial_rows=True)
    report.method = "bs"
    return report
