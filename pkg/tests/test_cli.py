#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Тесты командной строки
"""

import io
import json
import shutil
import tempfile
import unittest
from pathlib import Path

from src.cli import main
from src.parsers.instance_parser import load_instance
from src.parsers.vector_parser import load_vector, write_vector
from src.reformulate import VAR_X
from tests.fixtures import ONE_BY_ONE_ROBUST, ONE_BY_ONE_TEXT


class TestCli(unittest.TestCase):
    """Тесты команд CLI на экземпляре 1x1"""

    def setUp(self):
        """Создание временного каталога и файла экземпляра"""
        self.temp_dir = Path(tempfile.mkdtemp())
        self.instance = self.temp_dir / "one.rlp"
        self.instance.write_text(ONE_BY_ONE_TEXT, encoding="utf-8")

    def tearDown(self):
        """Удаление временного каталога"""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def run_cli(self, *argv: str):
        stdout = io.StringIO()
        code = main([str(a) for a in argv], stdout=stdout)
        return code, stdout.getvalue()

    def run_json(self, *argv: str):
        code, text = self.run_cli(*argv, "--format", "json")
        return code, json.loads(text)

    def test_validate(self):
        """Тест корректного экземпляра"""
        code, text = self.run_cli("validate", self.instance)
        self.assertEqual(code, 0)
        self.assertIn("valid: yes", text)

    def test_validate_reports_violations(self):
        """Тест экземпляра с u_0 != n"""
        bad = self.temp_dir / "bad.rlp"
        bad.write_text(ONE_BY_ONE_TEXT.replace("upper 1 1", "upper 0 1"), encoding="utf-8")
        code, data = self.run_json("validate", bad)
        self.assertEqual(code, 2)
        self.assertFalse(data["is_valid"])
        self.assertIn("bands.u0", [v["code"] for v in data["violations"]])
        self.assertEqual(data["codes"], [v["code"] for v in data["violations"]])

    def test_malformed_instance(self):
        """Тест синтаксической ошибки: код 2"""
        bad = self.temp_dir / "broken.rlp"
        bad.write_text("[lp]\nsense maximize\nobjective x\n", encoding="utf-8")
        self.assertEqual(self.run_cli("solve", bad)[0], 2)
        self.assertEqual(self.run_cli("validate", self.temp_dir / "missing.rlp")[0], 2)

    def test_reformulate(self):
        """Тест компактного эквивалента 1x1: 3 переменные и 1 строка"""
        out = self.temp_dir / "one.rlp.compact"
        code, text = self.run_cli("reformulate", self.instance, out)
        self.assertEqual(code, 0)
        self.assertIn("added vars: 3", text)
        self.assertIn("added rows: 1", text)
        data = load_instance(out)
        self.assertEqual(data.lp.num_vars, 4)
        self.assertEqual(data.var_labels[0], f"{VAR_X} 0")

    def test_reformulate_keep_trivial_rows(self):
        """Тест компактного эквивалента без удаления полосы 0"""
        code, text = self.run_cli("reformulate", self.instance, self.temp_dir / "full.rlp", "--keep-trivial-rows")
        self.assertEqual(code, 0)
        self.assertIn("added vars: 5", text)

    def test_reformulate_empty_deviations(self):
        """Тест пустой секции [deviations]: 0 добавленных переменных"""
        empty = self.temp_dir / "empty.rlp"
        empty.write_text(ONE_BY_ONE_TEXT.replace("0 0 1 0.5\n", ""), encoding="utf-8")
        code, text = self.run_cli("reformulate", empty, self.temp_dir / "empty.compact")
        self.assertEqual(code, 0)
        self.assertIn("added vars: 0", text)

    def test_solve_both_routes(self):
        """Тест совпадения маршрутов и записи x"""
        x_path = self.temp_dir / "x.txt"
        code, data = self.run_json("solve", self.instance, "--method", "both", "--x-out", x_path)
        self.assertEqual(code, 0)
        self.assertTrue(data["routes_agree"])
        self.assertAlmostEqual(data["compact"]["objective"], ONE_BY_ONE_ROBUST, places=9)
        self.assertEqual(data["cuts"]["cuts"], 1)
        self.assertAlmostEqual(load_vector(x_path)[0], ONE_BY_ONE_ROBUST, places=9)

    def test_solve_json_is_deterministic(self):
        """Тест побайтно одинакового JSON при повторном запуске"""
        first = self.run_cli("solve", self.instance, "--method", "cuts", "--format", "json")
        second = self.run_cli("solve", self.instance, "--method", "cuts", "--format", "json")
        self.assertEqual(first, second)
        self.assertNotIn("timings", first[1])

    def test_solve_output_file(self):
        """Тест записи JSON-отчета по --output"""
        report = self.temp_dir / "reports" / "solve.json"
        code, _ = self.run_cli("solve", self.instance, "--output", report)
        self.assertEqual(code, 0)
        data = json.loads(report.read_text(encoding="utf-8"))
        self.assertEqual(data["config"]["command"], "solve")

    def test_separate(self):
        """Тест сертификата и отсечения для x = 10"""
        x_path = write_vector(self.temp_dir / "x.txt", [10.0])
        code, data = self.run_json("separate", self.instance, x_path)
        self.assertEqual(code, 0)
        self.assertFalse(data["robust"])
        self.assertAlmostEqual(data["certificates"][0]["dev"], 5.0)
        self.assertEqual(data["cuts"][0]["row"], [[0, 1.5]])
        self.assertEqual(data["cuts"][0]["rhs"], 10.0)

    def test_evaluate_same_seed(self):
        """Тест одинакового Protect% при seed 1"""
        x_path = write_vector(self.temp_dir / "x.txt", [ONE_BY_ONE_ROBUST])
        args = ("evaluate", self.instance, x_path, "--seed", "1", "--realizations", "200", "--format", "json")
        first, second = self.run_cli(*args), self.run_cli(*args)
        self.assertEqual(first[0], 0)
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first[1])["seed"], 1)

    def test_stress(self):
        """Тест стресс-проверки робастного оптимума"""
        x_path = write_vector(self.temp_dir / "x.txt", [ONE_BY_ONE_ROBUST])
        code, data = self.run_json("stress", self.instance, x_path, "--samples", "200")
        self.assertEqual(code, 0)
        self.assertEqual(data["failures"], 0)

    def test_calibrate(self):
        """Тест калибровки для n = 20"""
        code, data = self.run_json("calibrate", "--n", "20")
        self.assertEqual(code, 0)
        self.assertEqual(data["lower"], [7, 0, 0, 0, 0, 0, 7])
        self.assertEqual(data["upper"], [12, 1, 1, 20, 1, 1, 12])
        self.assertEqual(data["bs_gamma"], 10)

    def test_calibrate_invalid_bands(self):
        """Тест неверных параметров полос: код 2"""
        self.assertEqual(self.run_cli("calibrate", "--n", "20", "--width", "0.5")[0], 2)
        self.assertEqual(self.run_cli("calibrate", "--n", "0")[0], 2)

    def test_generate_then_validate(self):
        """Тест генерации PAP и проверки записанного экземпляра"""
        out = self.temp_dir / "pap.rlp"
        code, _ = self.run_cli("generate", out, "--tx", "20", "--users", "5", "--seed", "3")
        self.assertEqual(code, 0)
        self.assertEqual(self.run_cli("validate", out)[0], 0)
        data = load_instance(out)
        self.assertEqual((data.lp.num_rows, data.lp.num_vars), (5, 20))

    def test_compare_generated(self):
        """Тест сравнения на синтетическом экземпляре"""
        code, data = self.run_json(
            "compare", "--generate", "1", "--tx", "10", "--users", "3", "--realizations", "100",
        )
        self.assertEqual(code, 0)
        self.assertEqual(data["instances"], 1)
        row = data["rows"][0]
        self.assertEqual(row["instance"], "pap-0")
        self.assertTrue(row["objectives_agree"])
        self.assertGreaterEqual(row["por_mb"], 0.0)
        self.assertGreaterEqual(row["protect_mb"], row["protect_nominal"])

    def test_compare_strict_rejects_equality(self):
        """Тест --strict в compare: строка-равенство дает код 2"""
        eq = self.temp_dir / "eq.rlp"
        eq.write_text(ONE_BY_ONE_TEXT.replace("senses <=", "senses ="), encoding="utf-8")
        self.assertEqual(self.run_cli("compare", eq, "--strict", "--realizations", "10")[0], 2)

    def test_separate_first_optimal(self):
        """Тест --first-optimal: тот же DEV"""
        x = write_vector(self.temp_dir / "x.txt", [10.0])
        _, exact = self.run_json("separate", self.instance, x)
        _, fast = self.run_json("separate", self.instance, x, "--first-optimal")
        self.assertEqual(exact["certificates"][0]["dev"], fast["certificates"][0]["dev"])
        self.assertTrue(fast["config"]["options"]["first_optimal"])

    def test_compare_requires_instances(self):
        """Тест сравнения без экземпляров: код 2"""
        self.assertEqual(self.run_cli("compare")[0], 2)


if __name__ == "__main__":
    unittest.main()
