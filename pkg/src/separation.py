#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Разделение: проверка робастной допустимости и отсечения робастности

Для строки i и фиксированного x худшее отклонение DEV_i(x) равно
минус стоимости минимального потока величины n в трехслойной сети
s -> v_j -> w_k -> t. Назначение коэффициентов полосам читается
из целочисленного потока и дает отсечение робастности.

Полный перебор (dev_bruteforce) и LP-релаксация (dev_relaxation_lp)
используются как независимые оракулы в тестах.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from src.errors import (
    CutError,
    EnumerationLimitError,
    FlowInfeasibleError,
    InvalidBudgetError,
    InvariantBreachError,
    NegativeSolutionError,
    NonCanonicalError,
)
from src.flow import ARC_ASSIGN, ARC_BAND, ARC_SLOT, Arc, FlowNetwork, decode_assignment, min_cost_flow
from src.models.budgeted import BudgetedUncertaintySet
from src.models.lp import GE, LE, MAXIMIZE, LinearProgram, Row
from src.models.uncertainty import MultiBandUncertaintySet

logger = logging.getLogger(__name__)

VIOLATION_TOLERANCE = 1e-6
NEGATIVE_X_TOLERANCE = 1e-9
BRUTEFORCE_MAX_COLUMNS = 12
BRUTEFORCE_MAX_BANDS = 6

Assignment = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class RobustnessCertificate:
    """
    Худшее отклонение строки при фиксированном x

    Attributes:
        row: Индекс строки
        worst_case_deviation: DEV_i(x, S_M)
        assignment: Пары (j, k) для неопределенных коэффициентов строки
        lhs_nominal: ā_i'x
        rhs: b_i
        violated: Нарушена ли строка с учетом допуска
        violation_amount: max(0, ā_i'x + DEV - b_i)
    """
    row: int
    worst_case_deviation: float
    assignment: Assignment
    lhs_nominal: float
    rhs: float
    violated: bool
    violation_amount: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "row": self.row,
            "dev": self.worst_case_deviation,
            "assignment": [[j, k] for j, k in self.assignment],
            "lhs_nominal": self.lhs_nominal,
            "rhs": self.rhs,
            "violated": self.violated,
            "violation_amount": self.violation_amount,
        }


@dataclass(frozen=True)
class RobustnessCut:
    """Строка-отсечение (только переменные x), знак <="""
    origin_row: int
    assignment: Assignment
    row: Row
    rhs: float

    @property
    def key(self) -> Tuple[int, Assignment]:
        """Ключ дедупликации: строка и ненулевая часть назначения"""
        return self.origin_row, tuple((j, k) for j, k in self.assignment if k != 0)

    def activity(self, x: Sequence[float]) -> float:
        return math.fsum(a * float(x[j]) for j, a in self.row)

    def violation(self, x: Sequence[float]) -> float:
        return self.activity(x) - self.rhs


def checked_solution(lp: LinearProgram, x: Sequence[float], columns: Sequence[int]) -> List[float]:
    """x как список float; малые отрицательные значения в columns обнуляются"""
    if len(x) != lp.num_vars:
        raise NegativeSolutionError(f"Длина x {len(x)} не равна числу переменных {lp.num_vars}")
    values = [float(v) for v in x]
    for j in columns:
        if values[j] < 0:
            if values[j] >= -NEGATIVE_X_TOLERANCE:
                values[j] = 0.0
            else:
                raise NegativeSolutionError(f"x[{j}] = {values[j]} < 0")
    return values


def _require_le(lp: LinearProgram, row: int) -> None:
    if lp.row_sense[row] != LE:
        raise NonCanonicalError(f"Строка {row} имеет знак '{lp.row_sense[row]}', ожидается '<='")


def build_flow_instance(
    row: int,
    lp: LinearProgram,
    u: MultiBandUncertaintySet,
    x: Sequence[float],
    contract_certain: bool = False,
) -> FlowNetwork:
    """
    Сеть (G, c) для строки row при фиксированном x

    Args:
        row: Индекс строки (знак <=)
        lp: Каноническая LP
        u: Множество неопределенности
        x: Точка, x_j >= 0 для неопределенных столбцов
        contract_certain: Заменить определенные слоты одним узлом емкости c_i

    Returns:
        FlowNetwork с required_flow = n

    Raises:
        NonCanonicalError: Строка не в форме <=
        NegativeSolutionError: Отрицательная компонента x
    """
    _require_le(lp, row)
    n = lp.num_vars
    uncertain = u.uncertain_columns(row)
    values = checked_solution(lp, x, uncertain)
    profile = u.profile_for(row)
    bands = profile.band_ids

    labels = ["s", "t"]
    if contract_certain:
        slots = list(uncertain)
        certain = n - len(slots)
    else:
        slots = list(range(n))
        certain = 0
    slot_node = {}
    for j in slots:
        slot_node[j] = len(labels)
        labels.append(f"v{j}")
    aggregate = None
    if certain > 0:
        aggregate = len(labels)
        labels.append("v*")
    band_node = {}
    for k in bands:
        band_node[k] = len(labels)
        labels.append(f"w{k}")

    arcs: List[Arc] = []
    for j in slots:
        arcs.append(Arc(0, slot_node[j], 0, 1, 0.0, ARC_SLOT, slot=j))
    if aggregate is not None:
        arcs.append(Arc(0, aggregate, 0, certain, 0.0, ARC_SLOT))

    uncertain_set = set(uncertain)
    for j in slots:
        if j in uncertain_set:
            devs = u.breakpoints[(row, j)]
            for k in bands:
                if k in devs:
                    cost = -devs[k] * values[j]
                    arcs.append(Arc(slot_node[j], band_node[k], 0, 1, cost if cost != 0 else 0.0, ARC_ASSIGN, slot=j, band=k))
        else:
            arcs.append(Arc(slot_node[j], band_node[0], 0, 1, 0.0, ARC_ASSIGN, slot=j, band=0))
    if aggregate is not None:
        arcs.append(Arc(aggregate, band_node[0], 0, certain, 0.0, ARC_ASSIGN, band=0))

    for k in bands:
        arcs.append(Arc(band_node[k], 1, profile.lower(k), profile.upper(k), 0.0, ARC_BAND, band=k))

    return FlowNetwork(
        num_nodes=len(labels),
        source=0,
        sink=1,
        arcs=tuple(arcs),
        required_flow=n,
        node_labels=tuple(labels),
    )


def assignment_deviation(row: int, u: MultiBandUncertaintySet, x: Sequence[float], assignment: Mapping[int, int]) -> float:
    """Σ d_ij^k x_j по назначению j -> k"""
    return math.fsum(u.breakpoints[(row, j)][k] * float(x[j]) for j, k in assignment.items())


def _check_assignment(row: int, lp: LinearProgram, u: MultiBandUncertaintySet, assignment: Mapping[int, int]) -> None:
    """Назначение покрывает все неопределенные коэффициенты и соблюдает l_k <= count <= u_k"""
    profile = u.profile_for(row)
    uncertain = u.uncertain_columns(row)
    if sorted(assignment) != list(uncertain):
        raise InvariantBreachError(f"Строка {row}: поток распределил не все коэффициенты")
    counts = {k: 0 for k in profile.band_ids}
    counts[0] += u.certain_slots(row, lp.num_vars)
    for k in assignment.values():
        counts[k] += 1
    for k, (lo, up) in profile.counts().items():
        if not lo <= counts[k] <= up:
            raise InvariantBreachError(f"Строка {row}: полоса {k} содержит {counts[k]} коэффициентов вне [{lo}, {up}]")


def worst_case_assignment(
    row: int,
    lp: LinearProgram,
    u: MultiBandUncertaintySet,
    x: Sequence[float],
    contract_certain: bool = False,
    lexicographic: bool = True,
) -> Tuple[float, Dict[int, int]]:
    """
    DEV_i(x) и достигающее его назначение через поток минимальной стоимости

    Raises:
        InvariantBreachError: Стоимость потока не совпала с отклонением назначения
    """
    net = build_flow_instance(row, lp, u, x, contract_certain=contract_certain)
    solution = min_cost_flow(net, lexicographic=lexicographic)
    assignment = {j: k for j, k in decode_assignment(net, solution).items() if u.is_uncertain(row, j)}
    _check_assignment(row, lp, u, assignment)

    dev = -solution.cost
    recomputed = assignment_deviation(row, u, checked_solution(lp, x, u.uncertain_columns(row)), assignment)
    if abs(recomputed - dev) > 1e-9 * (1.0 + abs(dev)):
        raise InvariantBreachError(f"Строка {row}: стоимость потока {-dev} не равна отклонению назначения {recomputed}")
    return (dev if dev != 0 else 0.0), assignment


def is_violated(lhs: float, dev: float, rhs: float, tol: float = VIOLATION_TOLERANCE) -> bool:
    return lhs + dev - rhs > tol * max(1.0, abs(rhs))


def check_robust(
    lp: LinearProgram,
    u: MultiBandUncertaintySet,
    x: Sequence[float],
    tol: float = VIOLATION_TOLERANCE,
    contract_certain: bool = False,
    lexicographic: bool = True,
    rows: Optional[Sequence[int]] = None,
) -> List[RobustnessCertificate]:
    """
    Сертификаты робастности по строкам

    Args:
        lp: Каноническая LP
        u: Множество неопределенности
        x: Проверяемая точка
        tol: Относительный допуск нарушения
        contract_certain: Сжатие определенных слотов в сети
        lexicographic: Лексикографически наименьший оптимальный поток (False - первый найденный)
        rows: Подмножество строк (по умолчанию все)

    Returns:
        Список RobustnessCertificate в порядке строк
    """
    certificates = []
    uncertain_rows = set(u.rows_with_uncertainty())
    for i in (range(lp.num_rows) if rows is None else rows):
        _require_le(lp, i)
        lhs = lp.row_activity(i, x)
        b = lp.rhs[i]
        if i in uncertain_rows:
            dev, assignment = worst_case_assignment(i, lp, u, x, contract_certain, lexicographic)
        else:
            dev, assignment = 0.0, {}
        violated = is_violated(lhs, dev, b, tol)
        certificates.append(RobustnessCertificate(
            row=i,
            worst_case_deviation=dev,
            assignment=tuple(sorted(assignment.items())),
            lhs_nominal=lhs,
            rhs=b,
            violated=violated,
            violation_amount=max(0.0, lhs + dev - b),
        ))
    violated_count = sum(1 for c in certificates if c.violated)
    logger.debug(f"Проверка робастности: {len(certificates)} строк, нарушено {violated_count}")
    return certificates


def emit_cut(cert: RobustnessCertificate, lp: LinearProgram, u: MultiBandUncertaintySet) -> RobustnessCut:
    """
    Отсечение робастности по сертификату

    Коэффициент при x_j равен ā_ij + d_ij^k для назначенной полосы k.

    Raises:
        CutError: Сертификат не нарушен
    """
    if not cert.violated:
        raise CutError(f"Строка {cert.row} не нарушена, отсечение не строится")
    coefficients = lp.row_coefficients(cert.row)
    for j, k in cert.assignment:
        d = u.breakpoints[(cert.row, j)][k]
        if d != 0:
            coefficients[j] = coefficients.get(j, 0.0) + d
    row = tuple((j, a) for j, a in sorted(coefficients.items()) if a != 0)
    return RobustnessCut(cert.row, cert.assignment, row, lp.rhs[cert.row])


def dev_bruteforce(
    row: int,
    lp: LinearProgram,
    u: MultiBandUncertaintySet,
    x: Sequence[float],
) -> Tuple[float, Dict[int, int]]:
    """
    Точный оптимум DEV01 полным перебором назначений

    Определенные коэффициенты всегда занимают полосу 0; перебираются
    полные назначения неопределенных коэффициентов с отсечением
    по верхним и нижним границам полос.

    Returns:
        (dev, назначение j -> k)

    Raises:
        EnumerationLimitError: Больше 12 неопределенных коэффициентов или 6 полос
        FlowInfeasibleError: Допустимых назначений нет
    """
    profile = u.profile_for(row)
    columns = list(u.uncertain_columns(row))
    if len(columns) > BRUTEFORCE_MAX_COLUMNS or len(profile.band_ids) > BRUTEFORCE_MAX_BANDS:
        raise EnumerationLimitError(
            f"Перебор ограничен {BRUTEFORCE_MAX_COLUMNS} коэффициентами и {BRUTEFORCE_MAX_BANDS} полосами"
        )
    values = checked_solution(lp, x, columns)
    counts = {k: 0 for k in profile.band_ids}
    counts[0] = u.certain_slots(row, lp.num_vars)
    bounds = profile.counts()
    options = [[(k, u.breakpoints[(row, j)][k] * values[j]) for k in profile.band_ids if k in u.breakpoints[(row, j)]]
               for j in columns]

    best: List[Any] = [-math.inf, None]
    current: List[int] = []

    def deficit() -> int:
        return sum(max(0, bounds[k][0] - counts[k]) for k in counts)

    def search(pos: int, total: float) -> None:
        if deficit() > len(columns) - pos:
            return
        if pos == len(columns):
            if total > best[0]:
                best[0] = total
                best[1] = list(current)
            return
        for k, gain in options[pos]:
            if counts[k] >= bounds[k][1]:
                continue
            counts[k] += 1
            current.append(k)
            search(pos + 1, total + gain)
            current.pop()
            counts[k] -= 1

    search(0, 0.0)
    if best[1] is None:
        raise FlowInfeasibleError(f"Строка {row}: нет допустимого назначения полос")
    assignment = dict(zip(columns, best[1]))
    return assignment_deviation(row, u, values, assignment), assignment


def dev_relaxation_lp(
    row: int,
    lp: LinearProgram,
    u: MultiBandUncertaintySet,
    x: Sequence[float],
) -> Tuple[LinearProgram, Tuple[Tuple[int, int], ...]]:
    """
    Линейная релаксация DEV01 для строки row

    Переменные y_jk для каждого неопределенного j и заданной полосы k.
    Строки: по полосам l_k <= Σ_j y_jk (эффективная нижняя граница),
    по полосам Σ_j y_jk <= u_k, по коэффициентам Σ_k y_jk <= 1.

    Returns:
        (LP максимизации, порядок столбцов (j, k))
    """
    profile = u.profile_for(row)
    columns = u.uncertain_columns(row)
    values = checked_solution(lp, x, columns)
    index: List[Tuple[int, int]] = []
    objective: List[float] = []
    for j in columns:
        devs = u.breakpoints[(row, j)]
        for k in profile.band_ids:
            if k in devs:
                index.append((j, k))
                objective.append(devs[k] * values[j])

    rows: List[Row] = []
    senses: List[str] = []
    rhs: List[float] = []
    for k in profile.band_ids:
        members = tuple((col, 1.0) for col, (_, band) in enumerate(index) if band == k)
        lower = u.effective_lower(row, k, lp.num_vars)
        rows.append(members)
        senses.append(GE)
        rhs.append(float(lower))
        rows.append(members)
        senses.append(LE)
        rhs.append(float(profile.upper(k)))
    for j in columns:
        rows.append(tuple((col, 1.0) for col, (jj, _) in enumerate(index) if jj == j))
        senses.append(LE)
        rhs.append(1.0)

    relaxation = LinearProgram(MAXIMIZE, tuple(objective), tuple(rows), tuple(senses), tuple(rhs))
    return relaxation, tuple(index)


def bs_separation(
    row: int,
    lp: LinearProgram,
    bs: BudgetedUncertaintySet,
    x: Sequence[float],
) -> Tuple[float, Tuple[int, ...]]:
    """
    Разделение для бюджетного множества сортировкой

    Сумма Γ наибольших положительных d+_ij x_j; равные значения
    упорядочиваются по индексу столбца.

    Returns:
        (dev, выбранные столбцы по возрастанию)

    Raises:
        InvalidBudgetError: Γ < 0 или Γ > n
    """
    gamma = bs.gamma_for(row)
    if gamma < 0 or gamma > lp.num_vars:
        raise InvalidBudgetError(f"Γ = {gamma} вне [0, {lp.num_vars}]")
    deviations = bs.row_deviations(row)
    values = checked_solution(lp, x, list(deviations))
    terms = sorted(((d * values[j], j) for j, d in deviations.items()), key=lambda t: (-t[0], t[1]))
    chosen = [(value, j) for value, j in terms[:gamma] if value > 0]
    dev = math.fsum(value for value, _ in chosen)
    return dev, tuple(sorted(j for _, j in chosen))
