#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Тесты модуля отчетности
"""

import json
import math
import shutil
import tempfile
import unittest
from pathlib import Path

from src.reports import ComparisonRow, ReportGenerator, delta_t_pct, format_block, format_certificates, format_value
from src.separation import check_robust
from tests.fixtures import one_by_one


def _row(name: str, por_mb: float, protect_mb: float) -> ComparisonRow:
    return ComparisonRow(
        instance=name, rows=5, cols=20, added_rows=140, added_cols=52,
        por_mb=por_mb, por_bs=2.0 * por_mb, delta_t_pct=150.0,
        protect_nominal=30.0, protect_mb=protect_mb, protect_bs=99.0,
    )


class TestFormatting(unittest.TestCase):
    """Тесты текстового форматирования"""

    def test_format_value(self):
        """Тест форматирования скаляров и списков"""
        self.assertEqual(format_value(True), "yes")
        self.assertEqual(format_value(20.0 / 3.0), "6.666666667")
        self.assertEqual(format_value(math.inf), "inf")
        self.assertEqual(format_value(math.nan), "nan")
        self.assertEqual(format_value([1.0, 2.5]), "1 2.5")
        self.assertEqual(format_value("optimal"), "optimal")

    def test_format_block(self):
        """Тест блока 'ключ: значение'"""
        text = format_block([("status", "optimal"), ("added vars", 3)])
        self.assertEqual(text, "status: optimal\nadded vars: 3\n")

    def test_certificates_table(self):
        """Тест таблицы сертификатов с отметкой нарушения"""
        lp, u = one_by_one()
        text = format_certificates(check_robust(lp, u, [10.0]))
        lines = text.splitlines()
        self.assertEqual(len(lines), 2)
        self.assertIn("assignment", lines[0])
        self.assertIn("*", lines[1])
        self.assertTrue(lines[1].endswith("0:1"))

    def test_delta_t(self):
        """Тест Δt%"""
        self.assertEqual(delta_t_pct(3.0, 2.0), 50.0)
        self.assertEqual(delta_t_pct(1.0, 2.0), -50.0)
        self.assertTrue(math.isnan(delta_t_pct(1.0, 0.0)))


class TestReportGenerator(unittest.TestCase):
    """Тесты генератора отчетов"""

    def setUp(self):
        """Создание временного каталога для тестов"""
        self.temp_dir = tempfile.mkdtemp()
        self.generator = ReportGenerator()
        self.generator.add_comparison(_row("pap-1", 4.0, 95.0))
        self.generator.add_comparison(_row("pap-2", 6.0, 97.0))

    def tearDown(self):
        """Удаление временного каталога"""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_comparison_table(self):
        """Тест выравненной таблицы сравнения"""
        lines = self.generator.comparison_table().splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[0].startswith("instance"))
        self.assertEqual(len({len(line) for line in lines}), 1)
        self.assertIn("PoR%MB", lines[0])

    def test_summary_means(self):
        """Тест средних по экземплярам"""
        summary = self.generator.summary()
        self.assertEqual(summary["instances"], 2)
        self.assertEqual(summary["mean_por_mb"], 5.0)
        self.assertEqual(summary["mean_protect_mb"], 96.0)
        self.assertNotIn("delta_t_pct", summary["rows"][0])

    def test_empty_summary(self):
        """Тест пустого отчета"""
        summary = ReportGenerator().summary()
        self.assertEqual(summary["instances"], 0)
        self.assertEqual(summary["mean_por_bs"], 0.0)

    def test_export_is_deterministic(self):
        """Тест воспроизводимого JSON с упорядоченными ключами"""
        report = {**self.generator.summary(), "config": {"seed": 1}}
        first = self.generator.export_to_json(report, Path(self.temp_dir) / "out" / "a.json")
        second = self.generator.export_to_json(report, Path(self.temp_dir) / "b.json")
        self.assertEqual(first.read_bytes(), second.read_bytes())
        data = json.loads(first.read_text(encoding="utf-8"))
        self.assertEqual(data["config"], {"seed": 1})
        self.assertEqual(list(data), sorted(data))


if __name__ == "__main__":
    unittest.main()
