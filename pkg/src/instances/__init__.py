#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Экземпляры задачи назначения мощностей и оценка робастности

- pap: генератор синтетических экземпляров PAP
- calibration: построение полос по распределению отклонений
- budgeted: модель с бюджетом Γ для сравнения
- protection: защищенность решения (Монте-Карло)
- stress: сценарии из множества неопределенности
"""

from .budgeted import bs_from_mb, budget_from_profile, solve_bs
from .calibration import (
    BandSpec,
    CalibratedBands,
    DeviationDistribution,
    band_probabilities,
    calibrate_bands,
    calibrate_uncertainty,
)
from .pap import PapInstance, PapParams, generate_pap
from .protection import ProtectionReport, evaluate_protection
from .stress import StressReport, in_set_stress

__all__ = [
    "PapInstance",
    "PapParams",
    "generate_pap",
    "DeviationDistribution",
    "BandSpec",
    "CalibratedBands",
    "band_probabilities",
    "calibrate_bands",
    "calibrate_uncertainty",
    "bs_from_mb",
    "budget_from_profile",
    "solve_bs",
    "ProtectionReport",
    "evaluate_protection",
    "StressReport",
    "in_set_stress",
]
