#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Синтетические экземпляры задачи назначения мощностей (PAP)

min 1'p  при  A p >= δ,  0 <= p <= P^max

Модель распространения условная: затухание по степенному закону
с показателем path_loss_exponent внутри радиуса слышимости,
вне радиуса коэффициент равен нулю (разреженная матрица A).
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, Field

from src.errors import GenerationError
from src.models.lp import GE, MINIMIZE, LinearProgram

logger = logging.getLogger(__name__)

Position = Tuple[float, float]


class PapParams(BaseModel):
    """Параметры генератора"""

    num_tx: int = Field(ge=1, description="Число передатчиков")
    num_users: int = Field(ge=1, description="Число пользователей")
    area: float = Field(default=10.0, gt=0, description="Сторона квадратной области")
    density: float = Field(default=0.1, gt=0, le=1, description="Доля площади, покрываемая кругом слышимости")
    seed: int = Field(default=0, ge=0)
    p_max: float = Field(default=10.0, gt=0, description="P^max каждого передатчика")
    path_loss_exponent: float = Field(default=3.5, gt=0)
    threshold_fraction: float = Field(default=0.3, gt=0, lt=1, description="δ_i как доля от Σ_j ā_ij P^max_j")
    growth_factor: float = Field(default=1.25, gt=1)
    max_radius_growth: int = Field(default=20, ge=0)


@dataclass(frozen=True)
class PapInstance:
    """
    Экземпляр PAP

    Attributes:
        tx_positions: Координаты передатчиков
        p_max: P^max по передатчикам
        user_positions: Координаты пользователей
        thresholds: δ_i по пользователям
        fading: Строки матрицы A, пары (j, ā_ij) с ā_ij > 0
        radius: Итоговый радиус слышимости
        radius_adjustments: Сколько раз радиус увеличивался
        seed: Зерно генератора
    """
    tx_positions: Tuple[Position, ...]
    p_max: Tuple[float, ...]
    user_positions: Tuple[Position, ...]
    thresholds: Tuple[float, ...]
    fading: Tuple[Tuple[Tuple[int, float], ...], ...]
    radius: float = math.inf
    radius_adjustments: int = 0
    seed: int = 0

    @property
    def num_tx(self) -> int:
        return len(self.p_max)

    @property
    def num_users(self) -> int:
        return len(self.thresholds)

    @property
    def nonzeros(self) -> int:
        return sum(len(row) for row in self.fading)

    def lp_view(self) -> LinearProgram:
        """Номинальная LP: min Σ p_j при A p >= δ, 0 <= p <= P^max"""
        return LinearProgram(
            sense=MINIMIZE,
            objective=(1.0,) * self.num_tx,
            rows=self.fading,
            row_sense=(GE,) * self.num_users,
            rhs=self.thresholds,
            var_lower=(0.0,) * self.num_tx,
            var_upper=self.p_max,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "num_tx": self.num_tx,
            "num_users": self.num_users,
            "nonzeros": self.nonzeros,
            "radius": self.radius,
            "radius_adjustments": self.radius_adjustments,
            "seed": self.seed,
        }


def attenuation(distance: float, radius: float, exponent: float) -> float:
    """ā = min(1, (radius/2) / distance)^exponent внутри радиуса, иначе 0"""
    if distance > radius:
        return 0.0
    reference = radius / 2.0
    if distance <= reference:
        return 1.0
    return (reference / distance) ** exponent


def _fading_rows(tx: np.ndarray, users: np.ndarray, radius: float, exponent: float) -> List[Tuple[Tuple[int, float], ...]]:
    distances = np.linalg.norm(users[:, None, :] - tx[None, :, :], axis=2)
    rows = []
    for i in range(users.shape[0]):
        row = []
        for j in range(tx.shape[0]):
            a = attenuation(float(distances[i, j]), radius, exponent)
            if a > 0:
                row.append((j, a))
        rows.append(tuple(row))
    return rows


def generate_pap(params: PapParams) -> PapInstance:
    """
    Генерация экземпляра PAP

    Координаты равномерны в квадрате area x area; радиус слышимости
    выбирается так, что круг занимает долю density площади. Если какой-то
    пользователь не слышит ни одного передатчика, радиус увеличивается
    в growth_factor раз (не более max_radius_growth раз).

    Args:
        params: Параметры генератора

    Returns:
        PapInstance с допустимой номинальной LP (A P^max = δ / threshold_fraction)

    Raises:
        GenerationError: Покрытие не достигнуто после всех увеличений радиуса
    """
    rng = np.random.default_rng(params.seed)
    tx = rng.uniform(0.0, params.area, size=(params.num_tx, 2))
    users = rng.uniform(0.0, params.area, size=(params.num_users, 2))
    radius = params.area * math.sqrt(params.density / math.pi)

    adjustments = 0
    while True:
        rows = _fading_rows(tx, users, radius, params.path_loss_exponent)
        uncovered = [i for i, row in enumerate(rows) if not row]
        if not uncovered:
            break
        if adjustments >= params.max_radius_growth:
            raise GenerationError(
                f"пользователи {uncovered[:5]} не покрыты при радиусе {radius:.4g} "
                f"после {adjustments} увеличений"
            )
        radius *= params.growth_factor
        adjustments += 1
        logger.warning(
            f"Не покрыто пользователей: {len(uncovered)}; радиус увеличен до {radius:.4g} ({adjustments})"
        )

    p_max = (params.p_max,) * params.num_tx
    thresholds = tuple(
        params.threshold_fraction * math.fsum(a * p_max[j] for j, a in row) for row in rows
    )
    instance = PapInstance(
        tx_positions=tuple((float(x), float(y)) for x, y in tx),
        p_max=p_max,
        user_positions=tuple((float(x), float(y)) for x, y in users),
        thresholds=thresholds,
        fading=tuple(rows),
        radius=radius,
        radius_adjustments=adjustments,
        seed=params.seed,
    )
    logger.info(
        f"Сгенерирован PAP: {instance.num_users} пользователей x {instance.num_tx} передатчиков, "
        f"ненулевых {instance.nonzeros}, радиус {radius:.4g}"
    )
    return instance
