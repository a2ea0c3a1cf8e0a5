#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Бюджетное множество неопределенности (одна полоса, не более Γ отклонений)
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

from src.models.uncertainty import BandProfile, Coefficient, MultiBandUncertaintySet


@dataclass(frozen=True)
class BudgetedUncertaintySet:
    """
    Множество с бюджетом Γ

    Attributes:
        gamma: Γ по умолчанию для всех строк
        max_deviation: (i, j) -> d+_ij
        row_gamma: Переопределения Γ по строкам
    """
    gamma: int
    max_deviation: Mapping[Coefficient, float] = field(default_factory=dict)
    row_gamma: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "gamma", int(self.gamma))
        object.__setattr__(
            self, "max_deviation",
            {(int(i), int(j)): float(d) for (i, j), d in sorted(self.max_deviation.items())},
        )
        object.__setattr__(self, "row_gamma", {int(i): int(g) for i, g in sorted(self.row_gamma.items())})

    def gamma_for(self, i: int) -> int:
        return self.row_gamma.get(i, self.gamma)

    def row_deviations(self, i: int) -> Dict[int, float]:
        """j -> d+_ij для строки i"""
        return {j: d for (r, j), d in self.max_deviation.items() if r == i}

    def rows(self) -> Tuple[int, ...]:
        return tuple(sorted({i for i, _ in self.max_deviation}))

    def to_multiband(self, num_vars: int) -> MultiBandUncertaintySet:
        """
        Вложение в многополосную модель

        Полосы {0, 1}, l = (0, 0), u = (n, Γ), d^1 = d+. Коэффициенты
        с d+ <= 0 не входят: при x >= 0 они не увеличивают отклонение.
        """
        def profile(g: int) -> BandProfile:
            return BandProfile((0, 1), (0, 0), (num_vars, g))

        shared = profile(self.gamma)
        row_profiles = {i: profile(g) for i, g in self.row_gamma.items() if g != self.gamma}
        breakpoints = {key: {0: 0.0, 1: d} for key, d in self.max_deviation.items() if d > 0}
        return MultiBandUncertaintySet(shared, breakpoints, row_profiles)
