#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Адаптер HiGHS через scipy.optimize.linprog
"""

import logging
import math
import time
from typing import List, Optional

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from src.models.lp import EQ, GE, LinearProgram
from src.solver.base_solver import LpSolution, LpSolverInterface, LpStatus, SolverCapabilities

logger = logging.getLogger(__name__)

# коды status scipy.optimize.linprog
_STATUS = {
    0: LpStatus.OPTIMAL,
    1: LpStatus.LIMIT,
    2: LpStatus.INFEASIBLE,
    3: LpStatus.UNBOUNDED,
    4: LpStatus.LIMIT,
}


def _sparse(rows: List, num_vars: int) -> Optional[csr_matrix]:
    if not rows:
        return None
    data, indices, indptr = [], [], [0]
    for row in rows:
        for j, a in row:
            indices.append(j)
            data.append(a)
        indptr.append(len(indices))
    return csr_matrix((data, indices, indptr), shape=(len(rows), num_vars))


class ScipySolver(LpSolverInterface):
    """Решатель HiGHS (scipy.optimize.linprog, method='highs')"""

    name = "scipy"

    @property
    def capabilities(self) -> SolverCapabilities:
        return SolverCapabilities(10 ** 6, 10 ** 6, warm_start=False)

    def solve(self, lp: LinearProgram, time_limit: Optional[float] = None) -> LpSolution:
        start = time.perf_counter()
        direction = -1.0 if lp.is_maximize else 1.0
        c = np.array(lp.objective) * direction

        ub_rows, ub_rhs, ub_index, ub_sign = [], [], [], []
        eq_rows, eq_rhs, eq_index = [], [], []
        for i, (row, sense, b) in enumerate(zip(lp.rows, lp.row_sense, lp.rhs)):
            if sense == EQ:
                eq_rows.append(row)
                eq_rhs.append(b)
                eq_index.append(i)
            elif sense == GE:
                ub_rows.append(tuple((j, -a) for j, a in row))
                ub_rhs.append(-b)
                ub_index.append(i)
                ub_sign.append(-1.0)
            else:
                ub_rows.append(row)
                ub_rhs.append(b)
                ub_index.append(i)
                ub_sign.append(1.0)

        bounds = [
            (None if lo == -math.inf else lo, None if up == math.inf else up)
            for lo, up in zip(lp.var_lower, lp.var_upper)
        ]
        options = {"time_limit": float(time_limit)} if time_limit else {}
        result = linprog(
            c,
            A_ub=_sparse(ub_rows, lp.num_vars),
            b_ub=np.array(ub_rhs) if ub_rows else None,
            A_eq=_sparse(eq_rows, lp.num_vars),
            b_eq=np.array(eq_rhs) if eq_rows else None,
            bounds=bounds,
            method="highs",
            options=options,
        )
        status = _STATUS.get(result.status, LpStatus.LIMIT)
        wall_time = time.perf_counter() - start
        iterations = int(getattr(result, "nit", 0) or 0)
        if status != LpStatus.OPTIMAL:
            logger.info(f"HiGHS: статус {status} ({result.message})")
            return LpSolution(status, iterations=iterations, wall_time=wall_time)

        x = [float(v) if v != 0 else 0.0 for v in result.x]
        duals = [0.0] * lp.num_rows
        if ub_rows and getattr(result, "ineqlin", None) is not None:
            for value, i, sign in zip(result.ineqlin.marginals, ub_index, ub_sign):
                duals[i] = direction * sign * float(value)
        if eq_rows and getattr(result, "eqlin", None) is not None:
            for value, i in zip(result.eqlin.marginals, eq_index):
                duals[i] = direction * float(value)
        return LpSolution(
            status=LpStatus.OPTIMAL,
            x=x,
            objective=lp.objective_value(x),
            duals=duals,
            iterations=iterations,
            wall_time=wall_time,
        )
