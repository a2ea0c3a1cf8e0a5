#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Модуль отчетности

- Текстовый блок "ключ: значение"
- Таблица сертификатов робастности
- Строка сравнения маршрутов и моделей (размеры, PoR%, Δt%, Protect%)
- Экспорт в JSON с упорядоченными ключами
"""

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

from src.separation import RobustnessCertificate

logger = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.10g}"
    if isinstance(value, (list, tuple)):
        return " ".join(format_value(v) for v in value)
    return str(value)


def format_block(pairs: Iterable[Tuple[str, Any]]) -> str:
    """Плоский блок строк 'ключ: значение'"""
    return "\n".join(f"{key}: {format_value(value)}" for key, value in pairs) + "\n"


def format_certificates(certificates: Sequence[RobustnessCertificate]) -> str:
    """Таблица сертификатов: строка, ā'x, DEV, b, нарушение, назначение"""
    header = f"{'row':>5} {'lhs':>14} {'dev':>14} {'rhs':>14} {'violation':>12}  assignment"
    lines = [header]
    for cert in certificates:
        assignment = " ".join(f"{j}:{k}" for j, k in cert.assignment if k != 0) or "-"
        mark = "*" if cert.violated else " "
        lines.append(
            f"{cert.row:>5} {cert.lhs_nominal:>14.8g} {cert.worst_case_deviation:>14.8g} "
            f"{cert.rhs:>14.8g} {cert.violation_amount:>12.4g}{mark} {assignment}"
        )
    return "\n".join(lines) + "\n"


def delta_t_pct(cuts_time: float, compact_time: float) -> float:
    """Δt% = 100 (t_cuts - t_compact) / t_compact"""
    if compact_time <= 0:
        return math.nan
    return 100.0 * (cuts_time - compact_time) / compact_time


@dataclass
class ComparisonRow:
    """
    Строка сравнения на одном экземпляре

    Attributes:
        instance: Имя экземпляра
        rows / cols: Размер номинальной LP
        added_rows / added_cols: Прирост компактного эквивалента
        por_mb / por_bs: Цена робастности, %
        delta_t_pct: Δt% (только в текстовом выводе)
        protect_nominal / protect_mb / protect_bs: Protect%
        objectives_agree: Маршруты дали один оптимум
    """
    instance: str
    rows: int
    cols: int
    added_rows: int
    added_cols: int
    por_mb: float
    por_bs: float
    delta_t_pct: float
    protect_nominal: float
    protect_mb: float
    protect_bs: float
    objectives_agree: bool = True

    COLUMNS = ("instance", "I", "J", "I+", "J+", "PoR%MB", "PoR%BS", "dt%", "Prot%nom", "Prot%MB", "Prot%BS")

    def cells(self) -> List[str]:
        return [
            self.instance,
            str(self.rows),
            str(self.cols),
            str(self.added_rows),
            str(self.added_cols),
            f"{self.por_mb:.2f}",
            f"{self.por_bs:.2f}",
            f"{self.delta_t_pct:.1f}",
            f"{self.protect_nominal:.1f}",
            f"{self.protect_mb:.1f}",
            f"{self.protect_bs:.1f}",
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "instance": self.instance,
            "rows": self.rows,
            "cols": self.cols,
            "added_rows": self.added_rows,
            "added_cols": self.added_cols,
            "por_mb": self.por_mb,
            "por_bs": self.por_bs,
            "protect_nominal": self.protect_nominal,
            "protect_mb": self.protect_mb,
            "protect_bs": self.protect_bs,
            "objectives_agree": self.objectives_agree,
        }


class ReportGenerator:
    """Накопление строк сравнения и экспорт"""

    def __init__(self):
        self.rows: List[ComparisonRow] = []

    def add_comparison(self, row: ComparisonRow) -> None:
        self.rows.append(row)

    def comparison_table(self) -> str:
        """Таблица с выравниванием по ширине столбцов"""
        table = [list(ComparisonRow.COLUMNS)] + [row.cells() for row in self.rows]
        widths = [max(len(r[c]) for r in table) for c in range(len(ComparisonRow.COLUMNS))]
        lines = []
        for r in table:
            first = r[0].ljust(widths[0])
            rest = " ".join(cell.rjust(w) for cell, w in zip(r[1:], widths[1:]))
            lines.append(f"{first} {rest}")
        return "\n".join(lines) + "\n"

    def summary(self) -> Dict[str, Any]:
        """Средние по экземплярам (без времени)"""
        count = len(self.rows)

        def mean(values: List[float]) -> float:
            return math.fsum(values) / count if count else 0.0

        return {
            "instances": count,
            "mean_por_mb": mean([r.por_mb for r in self.rows]),
            "mean_por_bs": mean([r.por_bs for r in self.rows]),
            "mean_protect_nominal": mean([r.protect_nominal for r in self.rows]),
            "mean_protect_mb": mean([r.protect_mb for r in self.rows]),
            "mean_protect_bs": mean([r.protect_bs for r in self.rows]),
            "rows": [r.to_dict() for r in self.rows],
        }

    @staticmethod
    def dumps(report: Dict[str, Any]) -> str:
        return json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True) + "\n"

    def export_to_json(self, report: Dict[str, Any], filename: Union[str, Path]) -> Path:
        """Экспорт в JSON (ключи упорядочены, вывод воспроизводим)"""
        path = Path(filename)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps(report), encoding="utf-8")
        logger.info(f"Отчет экспортирован: {path}")
        return path
