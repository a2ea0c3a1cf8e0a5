# -*- coding: utf-8 -*-
"""
Робастное линейное программирование с многополосной неопределенностью

- models: номинальная LP, профили полос, множества неопределенности
- flow: поток минимальной стоимости с нижними границами
- separation: худшее отклонение строки, сертификаты и отсечения
- reformulate: компактный эквивалент через двойственность
- solver: решатели LP и маршруты (компактный, отсечения)
- instances: генератор PAP, калибровка, модель с бюджетом, Монте-Карло
- cli: командная строка
"""

__version__ = "1.0.0"

from .errors import RobustLPError
from .models import LinearProgram, MultiBandUncertaintySet, canonicalize, validate
from .reformulate import build_compact
from .separation import check_robust, emit_cut
from .solver import solve_compact, solve_cutting_planes

__all__ = [
    "RobustLPError",
    "LinearProgram",
    "MultiBandUncertaintySet",
    "canonicalize",
    "validate",
    "build_compact",
    "check_robust",
    "emit_cut",
    "solve_compact",
    "solve_cutting_planes",
]
