#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Внешний решатель LP через подпроцесс

Протокол: исполняемый файл вызывается как `<path> <instance> <solution>`.
instance - файл экземпляра (секция [lp]); в solution решатель пишет:

    status optimal|infeasible|unbounded|limit
    objective <value>
    x <x_0> <x_1> ...
    duals <y_0> ...        (необязательно)
"""

import logging
import subprocess
import tempfile
import time
from pathlib import Path
from typing import Optional

from src.errors import InstanceParseError, SolverStatusError
from src.models.lp import LinearProgram
from src.parsers.base_parser import split_content
from src.parsers.instance_writer import write_instance
from src.solver.base_solver import LpSolution, LpSolverInterface, LpStatus, SolverCapabilities

logger = logging.getLogger(__name__)


class ExecSolver(LpSolverInterface):
    """Адаптер внешнего решателя, говорящего на формате файла экземпляра"""

    name = "exec"

    def __init__(self, executable: str, max_rows: int = 10 ** 6, max_cols: int = 10 ** 6):
        self.executable = executable
        self._caps = SolverCapabilities(max_rows, max_cols, warm_start=False)

    @property
    def capabilities(self) -> SolverCapabilities:
        return self._caps

    def solve(self, lp: LinearProgram, time_limit: Optional[float] = None) -> LpSolution:
        start = time.perf_counter()
        self.check_size(lp)
        with tempfile.TemporaryDirectory(prefix="rlp_exec_") as workdir:
            instance_path = write_instance(Path(workdir) / "instance.txt", lp)
            solution_path = Path(workdir) / "solution.txt"
            try:
                completed = subprocess.run(
                    [self.executable, str(instance_path), str(solution_path)],
                    capture_output=True,
                    text=True,
                    timeout=time_limit,
                )
            except subprocess.TimeoutExpired:
                logger.warning(f"Внешний решатель превысил лимит времени {time_limit} с")
                return LpSolution(LpStatus.LIMIT, wall_time=time.perf_counter() - start)
            except OSError as e:
                raise SolverStatusError("error", f"не удалось запустить {self.executable}: {e}")

            if completed.returncode != 0:
                raise SolverStatusError(
                    "error", f"{self.executable} завершился с кодом {completed.returncode}: {completed.stderr.strip()}"
                )
            if not solution_path.exists():
                raise SolverStatusError("error", f"{self.executable} не записал файл решения")
            solution = self.parse_solution(solution_path.read_text(encoding="utf-8"), lp, str(solution_path))
        solution.wall_time = time.perf_counter() - start
        return solution

    @staticmethod
    def parse_solution(text: str, lp: LinearProgram, source: str = "<solution>") -> LpSolution:
        """
        Разбор файла решения

        Raises:
            InstanceParseError: Некорректный файл решения
        """
        fields = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            tokens = split_content(raw)
            if not tokens:
                continue
            if tokens[0] not in ("status", "objective", "x", "duals"):
                raise InstanceParseError(f"неизвестная строка '{tokens[0]}'", lineno, source)
            fields[tokens[0]] = (tokens[1:], lineno)

        if "status" not in fields or len(fields["status"][0]) != 1 or fields["status"][0][0] not in LpStatus.ALL:
            raise InstanceParseError("ожидается 'status <optimal|infeasible|unbounded|limit>'", None, source)
        status = fields["status"][0][0]
        if status != LpStatus.OPTIMAL:
            return LpSolution(status)

        def floats(key: str):
            tokens, lineno = fields[key]
            try:
                return [float(t) for t in tokens]
            except ValueError:
                raise InstanceParseError(f"{key}: ожидались числа", lineno, source)

        if "x" not in fields:
            raise InstanceParseError("нет строки 'x'", None, source)
        x = floats("x")
        if len(x) != lp.num_vars:
            raise InstanceParseError(f"x: {len(x)} значений при {lp.num_vars} переменных", fields["x"][1], source)
        duals = floats("duals") if "duals" in fields else None
        return LpSolution(LpStatus.OPTIMAL, x=x, objective=lp.objective_value(x), duals=duals)
