#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Номинальная задача линейного программирования

Разреженное построчное хранение: каждая строка является кортежем пар (j, a_ij).
Объект неизменяем после создания; проверка инвариантов вынесена
в models.canonical.validate (диагностика без исключений).
"""

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

MAXIMIZE = "maximize"
MINIMIZE = "minimize"

LE = "<="
GE = ">="
EQ = "="

_SENSE_ALIASES = {"max": MAXIMIZE, "maximize": MAXIMIZE, "min": MINIMIZE, "minimize": MINIMIZE}
_ROW_SENSE_ALIASES = {"<=": LE, "≤": LE, "L": LE, ">=": GE, "≥": GE, "G": GE, "=": EQ, "==": EQ, "E": EQ}

Row = Tuple[Tuple[int, float], ...]


def _clean_zero(value: float) -> float:
    """-0.0 -> 0.0 (стабильная запись в файлы)"""
    return value if value != 0 else 0.0


@dataclass(frozen=True)
class LinearProgram:
    """
    Номинальная LP

    Attributes:
        sense: maximize | minimize
        objective: Коэффициенты c_j, по одному на переменную
        rows: Разреженные строки ограничений, пары (j, a_ij)
        row_sense: Знак каждой строки (<=, >=, =)
        rhs: Правые части b_i
        var_lower: Нижние границы переменных (по умолчанию 0)
        var_upper: Верхние границы переменных (по умолчанию +inf)
    """
    sense: str
    objective: Tuple[float, ...]
    rows: Tuple[Row, ...]
    row_sense: Tuple[str, ...]
    rhs: Tuple[float, ...]
    var_lower: Tuple[float, ...] = ()
    var_upper: Tuple[float, ...] = ()

    def __post_init__(self):
        sense = _SENSE_ALIASES.get(str(self.sense).lower(), self.sense)
        objective = tuple(float(c) for c in self.objective)
        rows = tuple(tuple((int(j), float(a)) for j, a in row) for row in self.rows)
        row_sense = tuple(_ROW_SENSE_ALIASES.get(str(s), s) for s in self.row_sense)
        n = len(objective)
        var_lower = tuple(float(v) for v in self.var_lower) if len(self.var_lower) else (0.0,) * n
        var_upper = tuple(float(v) for v in self.var_upper) if len(self.var_upper) else (math.inf,) * n

        object.__setattr__(self, "sense", sense)
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "row_sense", row_sense)
        object.__setattr__(self, "rhs", tuple(float(b) for b in self.rhs))
        object.__setattr__(self, "var_lower", var_lower)
        object.__setattr__(self, "var_upper", var_upper)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def is_maximize(self) -> bool:
        return self.sense == MAXIMIZE

    @property
    def is_canonical(self) -> bool:
        """Все строки в форме <="""
        return all(s == LE for s in self.row_sense)

    def row_coefficients(self, i: int) -> Dict[int, float]:
        """Коэффициенты строки i в виде словаря j -> a_ij"""
        return dict(self.rows[i])

    def row_activity(self, i: int, x: Sequence[float]) -> float:
        """Левая часть строки i при заданном x"""
        return math.fsum(a * float(x[j]) for j, a in self.rows[i])

    def objective_value(self, x: Sequence[float]) -> float:
        return math.fsum(c * float(v) for c, v in zip(self.objective, x))

    def row_violation(self, i: int, x: Sequence[float]) -> float:
        """Величина нарушения строки i (0 если строка выполнена)"""
        lhs = self.row_activity(i, x)
        b = self.rhs[i]
        sense = self.row_sense[i]
        if sense == LE:
            return max(0.0, lhs - b)
        if sense == GE:
            return max(0.0, b - lhs)
        return abs(lhs - b)

    def with_rows(
        self,
        rows: Iterable[Row],
        senses: Iterable[str],
        rhs: Iterable[float],
    ) -> "LinearProgram":
        """Новая LP с дописанными в конец строками"""
        return LinearProgram(
            sense=self.sense,
            objective=self.objective,
            rows=self.rows + tuple(tuple(r) for r in rows),
            row_sense=self.row_sense + tuple(senses),
            rhs=self.rhs + tuple(rhs),
            var_lower=self.var_lower,
            var_upper=self.var_upper,
        )

    def negated_row(self, i: int) -> Row:
        """Строка i, умноженная на -1"""
        return tuple((j, _clean_zero(-a)) for j, a in self.rows[i])
