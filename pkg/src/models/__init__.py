#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Модели данных: номинальная LP и многополосное множество неопределенности
"""

from .lp import EQ, GE, LE, MAXIMIZE, MINIMIZE, LinearProgram
from .uncertainty import BandProfile, MultiBandUncertaintySet
from .budgeted import BudgetedUncertaintySet
from .canonical import CanonicalForm, ValidationReport, Violation, canonicalize, validate

__all__ = [
    "LinearProgram",
    "BandProfile",
    "MultiBandUncertaintySet",
    "BudgetedUncertaintySet",
    "CanonicalForm",
    "ValidationReport",
    "Violation",
    "validate",
    "canonicalize",
    "MAXIMIZE",
    "MINIMIZE",
    "LE",
    "GE",
    "EQ",
]
