#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Калибровка многополосного множества по распределению отклонений

Отклонение коэффициента задается относительной величиной t = a/ā - 1.
Границы полос: e_k = k * w (w - ширина полосы в долях ā). Полоса k > 0
собирает t из (e_{k-1}, e_k], полоса k < 0 - из [e_k, e_{k+1}),
полоса 0 - точку t = 0. Крайние полосы забирают хвосты за пределами
диапазона.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy.stats import norm

from src.errors import CalibrationError
from src.models.lp import LinearProgram
from src.models.uncertainty import BandProfile, Coefficient, MultiBandUncertaintySet

logger = logging.getLogger(__name__)

LOGNORMAL_DB = "lognormal_db"
EMPIRICAL = "empirical"

PROBABILITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DeviationDistribution:
    """
    Распределение относительного отклонения коэффициента

    Attributes:
        family: lognormal_db | empirical
        sigma_db: σ в дБ (множитель 10^(D/10), D ~ N(0, σ))
        samples: Выборка относительных отклонений t = a/ā - 1 (для empirical)
    """
    family: str = LOGNORMAL_DB
    sigma_db: float = 5.5
    samples: Tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(sorted(float(s) for s in self.samples)))
        if self.family == LOGNORMAL_DB:
            if not self.sigma_db > 0:
                raise CalibrationError(f"sigma_db должно быть > 0, получено {self.sigma_db}")
        elif self.family == EMPIRICAL:
            if not self.samples:
                raise CalibrationError("пустая выборка эмпирического распределения")
            if any(not math.isfinite(s) or s <= -1 for s in self.samples):
                raise CalibrationError("отклонения выборки должны быть конечными и > -1")
        else:
            raise CalibrationError(f"неизвестное семейство распределения '{self.family}'")

    @classmethod
    def lognormal(cls, sigma_db: float = 5.5) -> "DeviationDistribution":
        return cls(LOGNORMAL_DB, sigma_db)

    @classmethod
    def empirical(cls, samples: Iterable[float]) -> "DeviationDistribution":
        return cls(EMPIRICAL, 0.0, tuple(samples))

    def mass_below(self, t: float, inclusive: bool = True) -> float:
        """P(T <= t) при inclusive, иначе P(T < t)"""
        if self.family == LOGNORMAL_DB:
            if t <= -1:
                return 0.0
            return float(norm.cdf(10.0 * math.log10(1.0 + t) / self.sigma_db))
        side = "right" if inclusive else "left"
        return int(np.searchsorted(np.asarray(self.samples), t, side=side)) / len(self.samples)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Независимые относительные отклонения"""
        if self.family == LOGNORMAL_DB:
            return np.power(10.0, rng.normal(0.0, self.sigma_db, size) / 10.0) - 1.0
        return rng.choice(np.asarray(self.samples), size=size, replace=True)

    def to_dict(self) -> Dict[str, object]:
        if self.family == LOGNORMAL_DB:
            return {"family": self.family, "sigma_db": self.sigma_db}
        return {"family": self.family, "samples": len(self.samples)}


class BandSpec(BaseModel):
    """Параметры построения полос"""

    num_neg: int = Field(default=3, ge=1)
    num_pos: int = Field(default=3, ge=1)
    band_width_frac: float = Field(default=0.05, gt=0)
    shrink: float = Field(default=0.8, gt=0, le=1)
    stretch: float = Field(default=1.2, ge=1)

    @model_validator(mode="after")
    def _check_width(self):
        if self.num_neg * self.band_width_frac >= 1:
            raise ValueError("нижняя граница полос должна быть > -100% номинала")
        return self

    @property
    def band_ids(self) -> Tuple[int, ...]:
        return tuple(range(-self.num_neg, self.num_pos + 1))


@dataclass(frozen=True)
class CalibratedBands:
    """
    Результат калибровки

    Attributes:
        profile: Профиль полос (u_0 = n)
        probabilities: Вероятность попадания в каждую полосу
        band_width_frac: w; d_ij^k = k * w * ā_ij
    """
    profile: BandProfile
    probabilities: Mapping[int, float]
    band_width_frac: float

    def breakpoints(self, nominal: float) -> Dict[int, float]:
        """Отклонения d^k = k w ā для одного коэффициента"""
        return {k: k * self.band_width_frac * nominal for k in self.profile.band_ids}


def band_probabilities(dist: DeviationDistribution, spec: BandSpec) -> Dict[int, float]:
    """
    Вероятности полос по функции распределения в границах полос

    Сумма по полосам равна 1 (телескопическая).
    """
    w = spec.band_width_frac
    k_minus, k_plus = -spec.num_neg, spec.num_pos
    probs: Dict[int, float] = {}
    for k in spec.band_ids:
        if k == k_minus:
            p = dist.mass_below((k + 1) * w, inclusive=False)
        elif k < 0:
            p = dist.mass_below((k + 1) * w, inclusive=False) - dist.mass_below(k * w, inclusive=False)
        elif k == 0:
            p = dist.mass_below(0.0, inclusive=True) - dist.mass_below(0.0, inclusive=False)
        elif k == k_plus:
            p = 1.0 - dist.mass_below((k - 1) * w, inclusive=True)
        else:
            p = dist.mass_below(k * w, inclusive=True) - dist.mass_below((k - 1) * w, inclusive=True)
        probs[k] = max(0.0, p)
    total = math.fsum(probs.values())
    if abs(total - 1.0) > PROBABILITY_TOLERANCE:
        raise CalibrationError(f"сумма вероятностей полос {total!r} отличается от 1")
    return probs


def calibrate_bands(dist: DeviationDistribution, n: int, spec: Optional[BandSpec] = None) -> CalibratedBands:
    """
    Калибровка профиля полос для строки из n коэффициентов

    l_k = floor(n p_k shrink), u_k = ceil(n p_k stretch) в [0, n], u_0 = n.
    Если Σ l_k > n, нижние границы масштабируются пропорционально с
    округлением вниз.

    Args:
        dist: Распределение отклонений
        n: Число коэффициентов строки
        spec: Параметры полос

    Returns:
        CalibratedBands

    Raises:
        CalibrationError: n < 1 или Σ l_k > n после масштабирования
    """
    spec = spec or BandSpec()
    if n < 1:
        raise CalibrationError(f"размер строки должен быть >= 1, получено {n}")
    probs = band_probabilities(dist, spec)

    lower: Dict[int, int] = {}
    upper: Dict[int, int] = {}
    for k, p in probs.items():
        # round(.., 12): погрешность вида 7.0000000001 не должна менять целую часть
        lower[k] = min(n, max(0, math.floor(round(n * p * spec.shrink, 12))))
        upper[k] = min(n, max(0, math.ceil(round(n * p * spec.stretch, 12))))
    upper[0] = n

    total_lower = sum(lower.values())
    if total_lower > n:
        scale = n / total_lower
        lower = {k: math.floor(v * scale) for k, v in lower.items()}
        logger.warning(f"Σ l_k = {total_lower} > n = {n}; нижние границы масштабированы")
        if sum(lower.values()) > n:
            raise CalibrationError(f"Σ l_k = {sum(lower.values())} превышает n = {n}")

    ids = spec.band_ids
    profile = BandProfile(ids, tuple(lower[k] for k in ids), tuple(max(lower[k], upper[k]) for k in ids))
    logger.debug(f"Калибровка n={n}: l={profile.lower_counts}, u={profile.upper_counts}")
    return CalibratedBands(profile, probs, spec.band_width_frac)


def calibrate_uncertainty(
    lp: LinearProgram,
    dist: DeviationDistribution,
    spec: Optional[BandSpec] = None,
    rows: Optional[Sequence[int]] = None,
) -> MultiBandUncertaintySet:
    """
    Многополосное множество для LP в исходной ориентации строк

    Каждая строка калибруется по числу своих ненулевых коэффициентов;
    затем u_0 поднимается до числа переменных. Строки без ненулевых
    коэффициентов получают тривиальный профиль.
    Требует ā >= 0 в выбранных строках: d^k = k w ā.

    Args:
        lp: Номинальная LP
        dist: Распределение отклонений
        spec: Параметры полос
        rows: Строки с неопределенностью (по умолчанию все)

    Returns:
        MultiBandUncertaintySet с профилями по строкам

    Raises:
        CalibrationError: Отрицательный коэффициент в калибруемой строке
    """
    for i in (range(lp.num_rows) if rows is None else rows):
        negative = [j for j, a in lp.rows[i] if a < 0]
        if negative:
            raise CalibrationError(f"Строка {i}: отрицательный коэффициент при x_{negative[0]}, нужна ā >= 0")
    spec = spec or BandSpec()
    n = lp.num_vars
    ids = spec.band_ids
    trivial = BandProfile(ids, (0,) * len(ids), tuple(n if k == 0 else 0 for k in ids))

    selected = range(lp.num_rows) if rows is None else sorted(set(rows))
    breakpoints: Dict[Coefficient, Dict[int, float]] = {}
    row_profiles: Dict[int, BandProfile] = {}
    cache: Dict[int, CalibratedBands] = {}
    for i in selected:
        entries = [(j, a) for j, a in lp.rows[i] if a != 0]
        if not entries:
            continue
        size = len(entries)
        if size not in cache:
            cache[size] = calibrate_bands(dist, size, spec)
        calibrated = cache[size]
        counts = calibrated.profile.counts()
        counts[0] = (counts[0][0], n)
        row_profiles[i] = BandProfile.from_counts(counts)
        for j, a in entries:
            breakpoints[(i, j)] = calibrated.breakpoints(a)
    logger.info(f"Откалибровано строк: {len(row_profiles)}, неопределенных коэффициентов: {len(breakpoints)}")
    return MultiBandUncertaintySet(trivial, breakpoints, row_profiles)
