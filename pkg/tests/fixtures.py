#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Общие экземпляры для тестов

- 1x1: max x при x <= 10, d^1 = 0.5, u = (1, 1); робастный оптимум 20/3
- PAP 2x2: диагональная A, полосы {-1, 0, 1}; робастный оптимум 40/9
- случайные экземпляры с фиксированным зерном
"""

from typing import Dict, List, Tuple

import numpy as np

from src.models.lp import GE, LE, MAXIMIZE, MINIMIZE, LinearProgram
from src.models.uncertainty import BandProfile, MultiBandUncertaintySet

ONE_BY_ONE_TEXT = """\
# max x, x <= 10, d^1 = 0.5
[lp]
sense maximize
objective 1
senses <=
rhs 10
0 0 1

[bands]
ids 0 1
lower 0 0
upper 1 1

[deviations]
0 0 1 0.5
"""

ONE_BY_ONE_ROBUST = 20.0 / 3.0
PAP_TOY_ROBUST = 40.0 / 9.0


def one_by_one() -> Tuple[LinearProgram, MultiBandUncertaintySet]:
    lp = LinearProgram(MAXIMIZE, (1.0,), (((0, 1.0),),), (LE,), (10.0,))
    u = MultiBandUncertaintySet(BandProfile((0, 1), (0, 0), (1, 1)), {(0, 0): {1: 0.5}})
    return lp, u


def pap_toy() -> Tuple[LinearProgram, MultiBandUncertaintySet]:
    """min p1 + p2 при 2 p1 >= 4, p2 >= 2, 0 <= p <= 10; d = ±0.1 ā"""
    lp = LinearProgram(
        MINIMIZE, (1.0, 1.0),
        (((0, 2.0),), ((1, 1.0),)),
        (GE, GE), (4.0, 2.0),
        (0.0, 0.0), (10.0, 10.0),
    )
    profile = BandProfile((-1, 0, 1), (0, 0, 0), (1, 2, 1))
    breakpoints = {
        (0, 0): {-1: -0.2, 1: 0.2},
        (1, 1): {-1: -0.1, 1: 0.1},
    }
    return lp, MultiBandUncertaintySet(profile, breakpoints)


def separation_row() -> Tuple[LinearProgram, MultiBandUncertaintySet]:
    """Одна строка из трех коэффициентов: d^1 = (4, 2, 1), d^-1 = (-1, -1, -5), u = (1, 3, 2)"""
    lp = LinearProgram(MAXIMIZE, (1.0, 1.0, 1.0), (((0, 10.0), (1, 10.0), (2, 10.0)),), (LE,), (100.0,))
    profile = BandProfile((-1, 0, 1), (0, 0, 0), (1, 3, 2))
    breakpoints = {
        (0, 0): {-1: -1.0, 1: 4.0},
        (0, 1): {-1: -1.0, 1: 2.0},
        (0, 2): {-1: -5.0, 1: 1.0},
    }
    return lp, MultiBandUncertaintySet(profile, breakpoints)


def dense_lp(sense, objective, matrix, row_sense, rhs, var_lower=(), var_upper=()) -> LinearProgram:
    """LP из плотной матрицы (нулевые элементы не хранятся)"""
    rows = tuple(tuple((j, float(a)) for j, a in enumerate(line) if a != 0) for line in matrix)
    return LinearProgram(sense, tuple(objective), rows, tuple(row_sense), tuple(rhs), tuple(var_lower), tuple(var_upper))


def random_profile(rng: np.random.Generator, n: int, num_neg: int, num_pos: int) -> BandProfile:
    """Профиль с u_0 = n и Σ l_k <= n для строки из n неопределенных коэффициентов"""
    ids = tuple(range(-num_neg, num_pos + 1))
    upper = {k: (n if k == 0 else int(rng.integers(0, n + 1))) for k in ids}
    lower = {k: (0 if k == 0 else int(rng.integers(0, upper[k] + 1))) for k in ids}
    while sum(lower.values()) > n:
        k = max(lower, key=lambda key: (lower[key], key))
        lower[k] -= 1
    return BandProfile(ids, tuple(lower[k] for k in ids), tuple(upper[k] for k in ids))


def random_breakpoints(rng: np.random.Generator, nominal: float, num_neg: int, num_pos: int) -> Dict[int, float]:
    """Строго возрастающие по k отклонения, d^0 = 0"""
    devs = {0: 0.0}
    level = 0.0
    for k in range(1, num_pos + 1):
        level += float(rng.uniform(0.05, 0.4)) * nominal
        devs[k] = level
    level = 0.0
    for k in range(1, num_neg + 1):
        level -= float(rng.uniform(0.05, 0.3)) * nominal
        devs[-k] = level
    return devs


def random_instance(
    rng: np.random.Generator,
    m: int,
    n: int,
    num_neg: int = 1,
    num_pos: int = 1,
    upper_bound: float = 10.0,
) -> Tuple[LinearProgram, MultiBandUncertaintySet]:
    """
    Плотная LP max c'x при Ax <= b, 0 <= x <= upper_bound

    ā in [1, 5], b in [10, 50], c in [1, 5]; все коэффициенты неопределенны,
    профиль общий для всех строк.
    """
    matrix = rng.uniform(1.0, 5.0, size=(m, n))
    rhs = rng.uniform(10.0, 50.0, size=m)
    objective = rng.uniform(1.0, 5.0, size=n)
    lp = dense_lp(
        MAXIMIZE, objective.tolist(), matrix.tolist(), (LE,) * m, rhs.tolist(),
        (0.0,) * n, (upper_bound,) * n,
    )
    profile = random_profile(rng, n, num_neg, num_pos)
    breakpoints = {
        (i, j): random_breakpoints(rng, float(matrix[i, j]), num_neg, num_pos)
        for i in range(m) for j in range(n)
    }
    return lp, MultiBandUncertaintySet(profile, breakpoints)


def random_point(rng: np.random.Generator, n: int, high: float = 10.0) -> List[float]:
    return rng.uniform(0.0, high, size=n).tolist()
