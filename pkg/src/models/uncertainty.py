#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Многополосное множество неопределенности

Профиль полос (K, l_k, u_k) общий для всех строк, с необязательной
таблицей переопределений по строкам. Отклонения хранятся в абсолютных
величинах d_ij^k; коэффициенты без записи считаются определенными.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple

Coefficient = Tuple[int, int]


@dataclass(frozen=True)
class BandProfile:
    """
    Профиль полос отклонений

    Attributes:
        band_ids: Упорядоченные индексы полос K = {K-, ..., 0, ..., K+}
        lower_counts: l_k для каждой полосы
        upper_counts: u_k для каждой полосы
    """
    band_ids: Tuple[int, ...]
    lower_counts: Tuple[int, ...]
    upper_counts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "band_ids", tuple(self.band_ids))
        object.__setattr__(self, "lower_counts", tuple(self.lower_counts))
        object.__setattr__(self, "upper_counts", tuple(self.upper_counts))

    def index(self, k: int) -> int:
        return self.band_ids.index(k)

    def lower(self, k: int) -> int:
        return self.lower_counts[self.index(k)]

    def upper(self, k: int) -> int:
        return self.upper_counts[self.index(k)]

    @property
    def k_minus(self) -> int:
        return min(self.band_ids)

    @property
    def k_plus(self) -> int:
        return max(self.band_ids)

    @property
    def nonzero_bands(self) -> Tuple[int, ...]:
        return tuple(k for k in self.band_ids if k != 0)

    def counts(self) -> Dict[int, Tuple[int, int]]:
        """k -> (l_k, u_k)"""
        return {k: (lo, up) for k, lo, up in zip(self.band_ids, self.lower_counts, self.upper_counts)}

    def mirrored(self) -> "BandProfile":
        """Профиль для строки, умноженной на -1: полоса k переходит в -k"""
        items = sorted(zip((-k for k in self.band_ids), self.lower_counts, self.upper_counts))
        return BandProfile(
            band_ids=tuple(k for k, _, _ in items),
            lower_counts=tuple(lo for _, lo, _ in items),
            upper_counts=tuple(up for _, _, up in items),
        )

    @classmethod
    def from_counts(cls, counts: Mapping[int, Tuple[int, int]]) -> "BandProfile":
        ordered = sorted(counts.items())
        return cls(
            band_ids=tuple(k for k, _ in ordered),
            lower_counts=tuple(int(lu[0]) for _, lu in ordered),
            upper_counts=tuple(int(lu[1]) for _, lu in ordered),
        )


@dataclass(frozen=True)
class MultiBandUncertaintySet:
    """
    Множество S_M

    Attributes:
        profile: Общий профиль полос
        breakpoints: (i, j) -> {k: d_ij^k}; полоса 0 добавляется с d = 0, если не задана
        row_profiles: Переопределения профиля для отдельных строк
    """
    profile: BandProfile
    breakpoints: Mapping[Coefficient, Mapping[int, float]] = field(default_factory=dict)
    row_profiles: Mapping[int, BandProfile] = field(default_factory=dict)
    _by_row: Dict[int, Tuple[int, ...]] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        normalized: Dict[Coefficient, Dict[int, float]] = {}
        for (i, j), devs in sorted(self.breakpoints.items()):
            entry = {int(k): float(d) for k, d in devs.items()}
            entry.setdefault(0, 0.0)
            normalized[(int(i), int(j))] = dict(sorted(entry.items()))
        object.__setattr__(self, "breakpoints", normalized)
        object.__setattr__(self, "row_profiles", {int(i): p for i, p in sorted(self.row_profiles.items())})

        by_row: Dict[int, List[int]] = {}
        for i, j in normalized:
            by_row.setdefault(i, []).append(j)
        object.__setattr__(self, "_by_row", {i: tuple(sorted(cols)) for i, cols in by_row.items()})

    @property
    def is_empty(self) -> bool:
        return not self.breakpoints

    def profile_for(self, i: int) -> BandProfile:
        return self.row_profiles.get(i, self.profile)

    def deviations(self, i: int, j: int) -> Dict[int, float]:
        """{k: d_ij^k}; пустой словарь для определенного коэффициента"""
        return dict(self.breakpoints.get((i, j), {}))

    def is_uncertain(self, i: int, j: int) -> bool:
        return (i, j) in self.breakpoints

    def uncertain_columns(self, i: int) -> Tuple[int, ...]:
        return self._by_row.get(i, ())

    def rows_with_uncertainty(self) -> Tuple[int, ...]:
        return tuple(sorted(self._by_row))

    def certain_slots(self, i: int, num_vars: int) -> int:
        """Число определенных коэффициентов строки i (включая структурные нули)"""
        return num_vars - len(self.uncertain_columns(i))

    def effective_lower(self, i: int, k: int, num_vars: int) -> int:
        """
        Нижняя граница полосы k, которую должны покрыть неопределенные коэффициенты

        Определенные коэффициенты могут находиться только в полосе 0,
        поэтому для k = 0 граница уменьшается на их число.
        """
        lower = self.profile_for(i).lower(k)
        if k == 0:
            return max(0, lower - self.certain_slots(i, num_vars))
        return lower

    def max_deviation(self, i: int, j: int) -> float:
        """d_ij^{K+}: наибольшее заданное отклонение коэффициента"""
        devs = self.breakpoints.get((i, j))
        if not devs:
            return 0.0
        return devs[max(devs)]
