#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Компактный робастный эквивалент

Для канонической пары (LP, S_M) строит одну LP, в которой худшее
отклонение каждой строки заменено двойственной задачей к релаксации DEV01:

    Σ_j ā_ij x_j - Σ_k l_k v_i^k + Σ_k u_k w_i^k + Σ_j z_i^j <= b_i
    -v_i^k + w_i^k + z_i^j - d_ij^k x_j >= 0      для каждого (i, j, k)

Порядок столбцов: x, затем блоки v, w, z по строкам. Порядок строк:
робастные строки, затем двойственные строки по (i, j, k).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.errors import NonCanonicalError
from src.models.lp import GE, LE, LinearProgram, Row
from src.models.uncertainty import MultiBandUncertaintySet

logger = logging.getLogger(__name__)

VAR_X = "x"
VAR_V = "v"
VAR_W = "w"
VAR_Z = "z"

ROW_ROBUST = "robust"
ROW_DUAL = "dual"


@dataclass(frozen=True)
class VarRole:
    """Назначение столбца RLP: x_j (row=None), v_i^k, w_i^k или z_i^j"""
    kind: str
    row: Optional[int]
    index: int

    def label(self) -> str:
        if self.kind == VAR_X:
            return f"x {self.index}"
        return f"{self.kind} {self.row} {self.index}"


@dataclass(frozen=True)
class RowRole:
    """Назначение строки RLP: робастная строка i или двойственная (i, j, k)"""
    kind: str
    row: int
    column: Optional[int] = None
    band: Optional[int] = None

    def label(self) -> str:
        if self.kind == ROW_ROBUST:
            return f"robust {self.row}"
        return f"dual {self.row} {self.column} {self.band}"


@dataclass
class CompactCounterpart:
    """
    Компактный робастный эквивалент

    Attributes:
        rlp: Сама LP
        var_map: Назначение каждого столбца
        row_map: Назначение каждой строки
        lower_weights: (i, k) -> эффективная нижняя граница l_k в робастной строке
        upper_weights: (i, k) -> u_k в робастной строке
    """
    rlp: LinearProgram
    var_map: Tuple[VarRole, ...]
    row_map: Tuple[RowRole, ...]
    num_base_vars: int
    num_base_rows: int
    lower_weights: Dict[Tuple[int, int], int] = field(default_factory=dict)
    upper_weights: Dict[Tuple[int, int], int] = field(default_factory=dict)

    @property
    def added_vars(self) -> int:
        return self.rlp.num_vars - self.num_base_vars

    @property
    def added_rows(self) -> int:
        return self.rlp.num_rows - self.num_base_rows

    def project(self, values: Sequence[float]) -> List[float]:
        """x-часть решения RLP"""
        return [float(v) for v in values[:self.num_base_vars]]

    def row_dual_value(self, i: int, values: Sequence[float]) -> float:
        """
        Значение двойственной задачи строки i: -Σ l_k v + Σ u_k w + Σ z

        При оптимальном решении RLP равно DEV_i(x*, S_M) на робастно
        активных строках и не меньше его на остальных.
        """
        terms = []
        for c, role in enumerate(self.var_map):
            if role.row != i:
                continue
            if role.kind == VAR_V:
                terms.append(-self.lower_weights[(i, role.index)] * float(values[c]))
            elif role.kind == VAR_W:
                terms.append(self.upper_weights[(i, role.index)] * float(values[c]))
            elif role.kind == VAR_Z:
                terms.append(float(values[c]))
        return math.fsum(terms)

    def summary(self) -> Dict[str, int]:
        return {
            "base_vars": self.num_base_vars,
            "base_rows": self.num_base_rows,
            "added_vars": self.added_vars,
            "added_rows": self.added_rows,
        }

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = dict(self.summary())
        data["var_map"] = [role.label() for role in self.var_map]
        data["row_map"] = [role.label() for role in self.row_map]
        return data


def _trivial_band(lp: LinearProgram, u: MultiBandUncertaintySet, i: int, k: int) -> bool:
    """Полоса не влияет на отклонение: эффективная l_k = 0 и все d_ij^k = 0"""
    if u.effective_lower(i, k, lp.num_vars) != 0:
        return False
    for j in u.uncertain_columns(i):
        if u.breakpoints[(i, j)].get(k, 0.0) != 0.0:
            return False
    return True


def build_compact(
    lp: LinearProgram,
    u: MultiBandUncertaintySet,
    elide_trivial_rows: bool = False,
) -> CompactCounterpart:
    """
    Построение RLP

    Args:
        lp: Каноническая LP (все строки <=)
        u: Многополосное множество
        elide_trivial_rows: Удалить полосы с нулевыми отклонениями и l_k = 0
            вместе с их столбцами v, w и двойственными строками

    Returns:
        CompactCounterpart

    Raises:
        NonCanonicalError: Во входе есть строки >= или =
    """
    if not lp.is_canonical:
        bad = [i for i, s in enumerate(lp.row_sense) if s != LE]
        raise NonCanonicalError(f"Строки {bad[:5]} не в форме '<=': сначала выполните canonicalize")

    n = lp.num_vars
    uncertain_rows = u.rows_with_uncertainty()
    bands_of: Dict[int, Tuple[int, ...]] = {}
    for i in uncertain_rows:
        bands = u.profile_for(i).band_ids
        if elide_trivial_rows:
            bands = tuple(k for k in bands if not _trivial_band(lp, u, i, k))
        bands_of[i] = bands

    var_map: List[VarRole] = [VarRole(VAR_X, None, j) for j in range(n)]
    for kind in (VAR_V, VAR_W):
        for i in uncertain_rows:
            var_map.extend(VarRole(kind, i, k) for k in bands_of[i])
    for i in uncertain_rows:
        var_map.extend(VarRole(VAR_Z, i, j) for j in u.uncertain_columns(i))
    column = {(r.kind, r.row, r.index): c for c, r in enumerate(var_map)}

    lower_weights: Dict[Tuple[int, int], int] = {}
    upper_weights: Dict[Tuple[int, int], int] = {}
    rows: List[Row] = []
    senses: List[str] = []
    rhs: List[float] = []
    row_map: List[RowRole] = []

    for i in range(lp.num_rows):
        entries = list(lp.rows[i])
        if i in bands_of:
            profile = u.profile_for(i)
            for k in bands_of[i]:
                lower = u.effective_lower(i, k, n)
                upper = profile.upper(k)
                lower_weights[(i, k)] = lower
                upper_weights[(i, k)] = upper
                if lower != 0:
                    entries.append((column[(VAR_V, i, k)], float(-lower)))
                if upper != 0:
                    entries.append((column[(VAR_W, i, k)], float(upper)))
            for j in u.uncertain_columns(i):
                entries.append((column[(VAR_Z, i, j)], 1.0))
        rows.append(tuple(entries))
        senses.append(LE)
        rhs.append(lp.rhs[i])
        row_map.append(RowRole(ROW_ROBUST, i))

    for i in uncertain_rows:
        kept = set(bands_of[i])
        for j in u.uncertain_columns(i):
            devs = u.breakpoints[(i, j)]
            for k in u.profile_for(i).band_ids:
                if k not in devs or k not in kept:
                    continue
                entries = [
                    (column[(VAR_V, i, k)], -1.0),
                    (column[(VAR_W, i, k)], 1.0),
                    (column[(VAR_Z, i, j)], 1.0),
                ]
                if devs[k] != 0:
                    entries.append((j, -devs[k]))
                rows.append(tuple(sorted(entries)))
                senses.append(GE)
                rhs.append(0.0)
                row_map.append(RowRole(ROW_DUAL, i, j, k))

    added = len(var_map) - n
    rlp = LinearProgram(
        sense=lp.sense,
        objective=lp.objective + (0.0,) * added,
        rows=tuple(rows),
        row_sense=tuple(senses),
        rhs=tuple(rhs),
        var_lower=lp.var_lower + (0.0,) * added,
        var_upper=lp.var_upper + (math.inf,) * added,
    )
    logger.info(
        f"RLP: {n}+{added} переменных, {lp.num_rows}+{rlp.num_rows - lp.num_rows} строк"
        f"{' (тривиальные полосы удалены)' if elide_trivial_rows else ''}"
    )
    return CompactCounterpart(
        rlp=rlp,
        var_map=tuple(var_map),
        row_map=tuple(row_map),
        num_base_vars=n,
        num_base_rows=lp.num_rows,
        lower_weights=lower_weights,
        upper_weights=upper_weights,
    )
