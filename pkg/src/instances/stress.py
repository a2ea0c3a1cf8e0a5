#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Стресс-проверка решения сценариями из самого множества неопределенности

Сценарий: случайное допустимое назначение коэффициентов полосам
(l_k <= count_k <= u_k) и отклонения на границах полос. Внутренние
отклонения берутся из [d^{k-1}, d^k], у нижней полосы K- только d^k.
Робастное x обязано выдерживать любой такой сценарий, а отклонение
сценария не может превышать DEV_i(x).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from src.models.lp import LinearProgram
from src.models.uncertainty import MultiBandUncertaintySet
from src.separation import VIOLATION_TOLERANCE, checked_solution, is_violated, worst_case_assignment

logger = logging.getLogger(__name__)

DOMINANCE_TOLERANCE = 1e-9


@dataclass
class StressReport:
    """
    Итог стресс-проверки

    Attributes:
        samples: Число сценариев
        failures: Сценарии, в которых нарушена хотя бы одна строка
        row_failures: Число нарушений по строкам
        dominance_failures: Сценарии с отклонением строки больше DEV_i(x)
        flow_fallbacks: Назначения, построенные через поток после неудачи жадного выбора
        seed: Зерно
        interior: Отклонения выбирались внутри полос
    """
    samples: int
    failures: int = 0
    row_failures: Dict[int, int] = field(default_factory=dict)
    dominance_failures: int = 0
    flow_fallbacks: int = 0
    seed: int = 0
    interior: bool = False

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.dominance_failures == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "samples": self.samples,
            "failures": self.failures,
            "row_failures": {str(i): c for i, c in sorted(self.row_failures.items())},
            "dominance_failures": self.dominance_failures,
            "flow_fallbacks": self.flow_fallbacks,
            "seed": self.seed,
            "interior": self.interior,
        }


class _RowSampler:
    """Случайные допустимые назначения полос для одной строки"""

    def __init__(self, row: int, lp: LinearProgram, u: MultiBandUncertaintySet):
        self.row = row
        self.lp = lp
        self.u = u
        self.profile = u.profile_for(row)
        self.columns = list(u.uncertain_columns(row))
        self.devs = {j: u.breakpoints[(row, j)] for j in self.columns}
        self.certain = u.certain_slots(row, lp.num_vars)

    def greedy(self, rng: np.random.Generator) -> Optional[Dict[int, int]]:
        order = [self.columns[p] for p in rng.permutation(len(self.columns))]
        counts = {k: 0 for k in self.profile.band_ids}
        counts[0] += self.certain
        assignment: Dict[int, int] = {}
        bands = [self.profile.band_ids[p] for p in rng.permutation(len(self.profile.band_ids))]
        for k in bands:
            need = self.profile.lower(k) - counts[k]
            for j in order:
                if need <= 0:
                    break
                if j not in assignment and k in self.devs[j]:
                    assignment[j] = k
                    counts[k] += 1
                    need -= 1
            if need > 0:
                return None
        for j in order:
            if j in assignment:
                continue
            options = [k for k in self.devs[j] if counts[k] < self.profile.upper(k)]
            if not options:
                return None
            k = options[int(rng.integers(len(options)))]
            assignment[j] = k
            counts[k] += 1
        return assignment

    def via_flow(self, rng: np.random.Generator) -> Dict[int, int]:
        weights = rng.uniform(0.0, 1.0, self.lp.num_vars)
        _, assignment = worst_case_assignment(
            self.row, self.lp, self.u, weights, contract_certain=True, lexicographic=False
        )
        return assignment

    def deviation_value(self, j: int, k: int, interior: bool, rng: np.random.Generator) -> float:
        devs = self.devs[j]
        if not interior or k == 0:
            return devs[k]
        keys = sorted(devs)
        pos = keys.index(k)
        if pos == 0:
            return devs[k]
        return float(rng.uniform(devs[keys[pos - 1]], devs[k]))


def in_set_stress(
    lp: LinearProgram,
    u: MultiBandUncertaintySet,
    x: Sequence[float],
    samples: int = 10000,
    seed: int = 0,
    interior: bool = False,
    tol: float = VIOLATION_TOLERANCE,
) -> StressReport:
    """
    Проверка x на случайных сценариях из множества неопределенности

    Args:
        lp: Каноническая LP
        u: Множество неопределенности
        x: Проверяемое решение
        samples: Число сценариев
        seed: Зерно
        interior: Отклонения внутри полос вместо их границ
        tol: Допуск нарушения (как в проверке робастности)

    Returns:
        StressReport
    """
    rng = np.random.default_rng(seed)
    samplers = [_RowSampler(i, lp, u) for i in u.rows_with_uncertainty()]
    values = {s.row: checked_solution(lp, x, s.columns) for s in samplers}
    worst = {
        s.row: worst_case_assignment(s.row, lp, u, x, contract_certain=True, lexicographic=False)[0]
        for s in samplers
    }
    lhs = {s.row: lp.row_activity(s.row, x) for s in samplers}

    report = StressReport(samples=samples, seed=seed, interior=interior)
    for _ in range(samples):
        failed = False
        for sampler in samplers:
            i = sampler.row
            assignment = sampler.greedy(rng)
            if assignment is None:
                assignment = sampler.via_flow(rng)
                report.flow_fallbacks += 1
            dev = float(sum(
                sampler.deviation_value(j, k, interior, rng) * values[i][j]
                for j, k in sorted(assignment.items())
            ))
            if dev > worst[i] + DOMINANCE_TOLERANCE * (1.0 + abs(worst[i])):
                report.dominance_failures += 1
            if is_violated(lhs[i], dev, lp.rhs[i], tol):
                report.row_failures[i] = report.row_failures.get(i, 0) + 1
                failed = True
        if failed:
            report.failures += 1

    level = logging.INFO if report.passed else logging.WARNING
    logger.log(
        level,
        f"Стресс-проверка: {samples} сценариев, нарушений {report.failures}, "
        f"нарушений доминирования {report.dominance_failures}",
    )
    return report
