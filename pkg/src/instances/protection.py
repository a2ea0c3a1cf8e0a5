#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Оценка защищенности решения методом Монте-Карло

Каждая реализация пересэмплирует все неопределенные коэффициенты
независимо: a_ij = ā_ij (1 + t), t из DeviationDistribution. Допустимость
проверяется в исходной ориентации строк. Поток случайных чисел
реализации r порождается парой (seed, r), поэтому отчет не зависит от
порядка обхода реализаций.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from src.errors import NegativeSolutionError
from src.instances.calibration import DeviationDistribution
from src.models.lp import EQ, GE, LinearProgram
from src.models.uncertainty import Coefficient

logger = logging.getLogger(__name__)

FEASIBILITY_TOLERANCE = 1e-9


@dataclass
class ProtectionReport:
    """
    Отчет о защищенности

    Attributes:
        realizations: Число реализаций
        feasible_count: Число реализаций, в которых x допустимо
        protect_pct: 100 * feasible / realizations
        row_violation_freq: Доля реализаций с нарушением по каждой строке
        seed: Зерно
        truncate: Граница усечения |t| (None - без усечения)
    """
    realizations: int
    feasible_count: int
    protect_pct: float
    row_violation_freq: List[float] = field(default_factory=list)
    seed: int = 0
    truncate: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "realizations": self.realizations,
            "feasible_count": self.feasible_count,
            "protect_pct": self.protect_pct,
            "row_violation_freq": list(self.row_violation_freq),
            "seed": self.seed,
            "truncate": self.truncate,
        }


def realization_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def evaluate_protection(
    lp: LinearProgram,
    x: Sequence[float],
    dist: DeviationDistribution,
    realizations: int = 1000,
    seed: int = 0,
    coefficients: Optional[Iterable[Coefficient]] = None,
    truncate: Optional[float] = None,
    tol: float = FEASIBILITY_TOLERANCE,
) -> ProtectionReport:
    """
    Доля реализаций матрицы, при которых x остается допустимым

    Args:
        lp: Номинальная LP в исходной ориентации строк
        x: Проверяемое решение
        dist: Распределение относительных отклонений
        realizations: Число реализаций
        seed: Зерно
        coefficients: Неопределенные коэффициенты (по умолчанию все ненулевые)
        truncate: Усечение |t| <= truncate (по умолчанию нет)
        tol: Допуск tol * (1 + |b_i|)

    Returns:
        ProtectionReport

    Raises:
        ValueError: realizations < 1 или x неверной длины
        NegativeSolutionError: x вне границ переменных
    """
    if realizations < 1:
        raise ValueError(f"число реализаций должно быть >= 1, получено {realizations}")
    if len(x) != lp.num_vars:
        raise ValueError(f"длина x {len(x)} не равна числу переменных {lp.num_vars}")
    xv = np.asarray(x, dtype=float)
    lower, upper = np.asarray(lp.var_lower), np.asarray(lp.var_upper)
    if np.any(xv < lower - 1e-9) or np.any(xv > upper + 1e-9):
        raise NegativeSolutionError("x выходит за границы переменных")

    selected = None if coefficients is None else set(coefficients)
    rows_idx, cols_idx, nominal = [], [], []
    certain_lhs = np.zeros(lp.num_rows)
    for i, row in enumerate(lp.rows):
        for j, a in row:
            if a != 0 and (selected is None or (i, j) in selected):
                rows_idx.append(i)
                cols_idx.append(j)
                nominal.append(a)
            else:
                certain_lhs[i] += a * xv[j]
    rows_arr = np.asarray(rows_idx, dtype=int)
    base = np.asarray(nominal, dtype=float) * xv[np.asarray(cols_idx, dtype=int)] if nominal else np.zeros(0)

    rhs = np.asarray(lp.rhs, dtype=float)
    slack_tol = tol * (1.0 + np.abs(rhs))
    senses = np.asarray(lp.row_sense)
    ge_rows, eq_rows = senses == GE, senses == EQ
    le_rows = ~(ge_rows | eq_rows)

    violations = np.zeros(lp.num_rows, dtype=int)
    feasible = 0
    for r in range(realizations):
        t = dist.sample(realization_rng(seed, r), len(base))
        if truncate is not None:
            t = np.clip(t, -truncate, truncate)
        lhs = certain_lhs + np.bincount(rows_arr, weights=base * (1.0 + t), minlength=lp.num_rows)
        bad = (le_rows & (lhs > rhs + slack_tol)) | (ge_rows & (lhs < rhs - slack_tol)) \
            | (eq_rows & (np.abs(lhs - rhs) > slack_tol))
        violations += bad
        if not bad.any():
            feasible += 1

    report = ProtectionReport(
        realizations=realizations,
        feasible_count=feasible,
        protect_pct=100.0 * feasible / realizations,
        row_violation_freq=[float(v) / realizations for v in violations],
        seed=seed,
        truncate=truncate,
    )
    logger.info(f"Защищенность: {report.protect_pct:.2f}% ({feasible}/{realizations}), seed={seed}")
    return report
