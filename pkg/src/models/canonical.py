#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Валидация и приведение к канонической форме

validate - диагностика всех структурных предположений модели
(никогда не бросает исключений, нарушения возвращаются как данные).

canonicalize - приведение всех строк к знаку <=:
- строка >= умножается на -1, полоса k переходит в -k, отклонения меняют знак;
- строка = расщепляется на пару (<=, отраженная >=) с независимыми отклонениями;
- соответствие строк исходным фиксируется в row_origin / row_sign.
"""

import logging
import math
import numbers
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Tuple

from src.errors import CanonicalizationError, FlowInfeasibleError
from src.models.lp import EQ, GE, LE, MAXIMIZE, MINIMIZE, LinearProgram, _clean_zero
from src.models.uncertainty import BandProfile, MultiBandUncertaintySet

logger = logging.getLogger(__name__)

ZERO_BAND_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Violation:
    """Нарушение структурного предположения"""
    code: str
    message: str
    location: str = ""

    def __str__(self) -> str:
        where = f" {self.location}" if self.location else ""
        return f"[{self.code}]{where}: {self.message}"

    def to_dict(self) -> Dict[str, str]:
        return {"code": self.code, "message": self.message, "location": self.location}


@dataclass
class ValidationReport:
    """Результат validate"""
    violations: List[Violation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return len(self.violations) == 0

    def codes(self) -> List[str]:
        return [v.code for v in self.violations]

    def add(self, code: str, message: str, location: str = "") -> None:
        self.violations.append(Violation(code, message, location))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_valid": self.is_valid,
            "codes": self.codes(),
            "violations": [v.to_dict() for v in self.violations],
        }


class CanonicalForm(NamedTuple):
    """
    Каноническая пара и обратное отображение строк

    Attributes:
        lp: LP со строками только <=
        uncertainty: Множество в координатах канонических строк
        row_origin: Индекс исходной строки для каждой канонической
        row_sign: +1 если строка взята как есть, -1 если умножена на -1
    """
    lp: LinearProgram
    uncertainty: MultiBandUncertaintySet
    row_origin: Tuple[int, ...]
    row_sign: Tuple[int, ...]


def _is_integer(value: Any) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def validate(lp: LinearProgram, u: MultiBandUncertaintySet) -> ValidationReport:
    """
    Проверка пары (LP, множество неопределенности)

    Args:
        lp: Номинальная LP
        u: Многополосное множество

    Returns:
        ValidationReport; пустой список нарушений для корректной пары
    """
    report = ValidationReport()
    try:
        _validate_lp(lp, u, report)
        profiles_ok = _validate_profiles(lp, u, report)
        deviations_ok = _validate_deviations(lp, u, report)
        if report.is_valid and profiles_ok and deviations_ok:
            _validate_row_feasibility(lp, u, report)
    except Exception as e:  # validate тотальна
        logger.error(f"Ошибка при валидации: {e}")
        report.add("internal", f"validation aborted: {e}")
    logger.debug(f"Валидация: {len(report.violations)} нарушений")
    return report


def _validate_lp(lp: LinearProgram, u: MultiBandUncertaintySet, report: ValidationReport) -> None:
    n, m = lp.num_vars, lp.num_rows
    if lp.sense not in (MAXIMIZE, MINIMIZE):
        report.add("lp.sense", f"unknown objective sense '{lp.sense}'")
    if len(lp.row_sense) != m or len(lp.rhs) != m:
        report.add("lp.shape", f"{m} rows but {len(lp.row_sense)} senses and {len(lp.rhs)} rhs values")
    if len(lp.var_lower) != n or len(lp.var_upper) != n:
        report.add("lp.shape", f"{n} variables but {len(lp.var_lower)} lower and {len(lp.var_upper)} upper bounds")

    for c in lp.objective:
        if not math.isfinite(c):
            report.add("lp.non_finite", "objective has a non-finite coefficient")
            break
    for i, row in enumerate(lp.rows):
        seen = set()
        for j, a in row:
            if not 0 <= j < n:
                report.add("lp.column_range", f"column {j} outside [0, {n})", f"row {i}")
            if j in seen:
                report.add("lp.duplicate_column", f"column {j} listed twice", f"row {i}")
            seen.add(j)
            if not math.isfinite(a):
                report.add("lp.non_finite", f"coefficient of column {j} is not finite", f"row {i}")
    for i, sense in enumerate(lp.row_sense):
        if sense not in (LE, GE, EQ):
            report.add("lp.row_sense", f"unknown row sense '{sense}'", f"row {i}")
    for i, b in enumerate(lp.rhs):
        if not math.isfinite(b):
            report.add("lp.non_finite", "rhs is not finite", f"row {i}")

    uncertain_cols = {j for (_, j) in u.breakpoints}
    for j, (lo, up) in enumerate(zip(lp.var_lower, lp.var_upper)):
        if math.isnan(lo) or math.isnan(up) or lo == math.inf or up == -math.inf:
            report.add("lp.bounds", "invalid bound value", f"variable {j}")
        elif lo > up:
            report.add("lp.bounds", f"lower bound {lo} exceeds upper bound {up}", f"variable {j}")
        elif lo < 0 and j in uncertain_cols:
            report.add("lp.negative_lower", "column with uncertain coefficients must be nonnegative", f"variable {j}")


def _validate_profile(profile: BandProfile, n: int, where: str, report: ValidationReport) -> bool:
    ids, lows, ups = profile.band_ids, profile.lower_counts, profile.upper_counts
    ok = True
    if not (len(ids) == len(lows) == len(ups)):
        report.add("bands.shape", "band ids, lower and upper counts differ in length", where)
        return False
    if 0 not in ids:
        report.add("bands.zero_missing", "band 0 must be present", where)
        ok = False
    if list(ids) != list(range(min(ids, default=0), max(ids, default=0) + 1)):
        report.add("bands.order", "band ids must be ascending and contiguous", where)
        ok = False
    for value in list(ids) + list(lows) + list(ups):
        if not _is_integer(value):
            report.add("bands.integer", f"band data must be integers, got {value!r}", where)
            return False
    for k, lo, up in zip(ids, lows, ups):
        if lo < 0 or lo > up or up > n:
            report.add("bands.counts", f"band {k}: need 0 <= l <= u <= n, got l={lo}, u={up}, n={n}", where)
            ok = False
    if 0 in ids and profile.upper(0) != n:
        report.add("bands.u0", f"u_0 must equal n (u_0={profile.upper(0)}, n={n})", where)
        ok = False
    if sum(lows) > n:
        report.add("bands.lower_sum", f"sum of lower counts exceeds n ({sum(lows)} > {n})", where)
        ok = False
    return ok


def _validate_profiles(lp: LinearProgram, u: MultiBandUncertaintySet, report: ValidationReport) -> bool:
    n = lp.num_vars
    ok = _validate_profile(u.profile, n, "bands", report)
    for i, profile in u.row_profiles.items():
        if not 0 <= i < lp.num_rows:
            report.add("bands.row_index", f"profile override for missing row {i}", f"bands {i}")
            ok = False
            continue
        ok = _validate_profile(profile, n, f"bands {i}", report) and ok
    return ok


def _validate_deviations(lp: LinearProgram, u: MultiBandUncertaintySet, report: ValidationReport) -> bool:
    ok = True
    for (i, j), devs in u.breakpoints.items():
        where = f"coefficient ({i}, {j})"
        if not (0 <= i < lp.num_rows and 0 <= j < lp.num_vars):
            report.add("deviations.index", "coefficient outside the LP", where)
            ok = False
            continue
        bands = u.profile_for(i).band_ids
        for k, d in devs.items():
            if k not in bands:
                report.add("deviations.band", f"band {k} is not in the profile", where)
                ok = False
            if not math.isfinite(d):
                report.add("deviations.non_finite", f"deviation of band {k} is not finite", where)
                ok = False
        if abs(devs.get(0, 0.0)) > ZERO_BAND_TOLERANCE:
            report.add("deviations.zero_band", f"d^0 must be 0, got {devs[0]}", where)
            ok = False
        ordered = [devs[k] for k in sorted(devs)]
        if any(b <= a for a, b in zip(ordered, ordered[1:])):
            report.add("deviations.order", "deviations must increase strictly with the band index", where)
            ok = False
    return ok


def _validate_row_feasibility(lp: LinearProgram, u: MultiBandUncertaintySet, report: ValidationReport) -> None:
    """Строка допустима, если нижние границы полос покрываются доступными коэффициентами"""
    from src.flow import min_cost_flow
    from src.separation import build_flow_instance

    zero = [0.0] * lp.num_vars
    uncertain_rows = set(u.rows_with_uncertainty())
    for i in range(lp.num_rows):
        profile = u.profile_for(i)
        if i not in uncertain_rows:
            forced = [k for k in profile.nonzero_bands if profile.lower(k) > 0]
            if forced:
                report.add("bands.row_infeasible",
                           f"bands {forced} require deviating coefficients but the row has none", f"row {i}")
            continue
        try:
            min_cost_flow(build_flow_instance(i, lp, u, zero, contract_certain=True))
        except FlowInfeasibleError as e:
            report.add("bands.row_infeasible", f"lower counts cannot be met: {e}", f"row {i}")


def canonicalize(lp: LinearProgram, u: MultiBandUncertaintySet, strict: bool = False) -> CanonicalForm:
    """
    Приведение всех строк к знаку <=

    Args:
        lp: Номинальная LP (validate без нарушений)
        u: Многополосное множество
        strict: Отклонять строки-равенства

    Returns:
        CanonicalForm

    Raises:
        CanonicalizationError: Строка = в строгом режиме
    """
    if lp.is_canonical:
        identity = tuple(range(lp.num_rows))
        return CanonicalForm(lp, u, identity, (1,) * lp.num_rows)

    rows, senses, rhs = [], [], []
    origin: List[int] = []
    signs: List[int] = []
    breakpoints: Dict[Tuple[int, int], Dict[int, float]] = {}
    row_profiles: Dict[int, BandProfile] = {}

    def emit(i: int, sign: int) -> None:
        new_i = len(rows)
        profile = u.profile_for(i)
        if sign > 0:
            rows.append(lp.rows[i])
            rhs.append(lp.rhs[i])
        else:
            rows.append(lp.negated_row(i))
            rhs.append(_clean_zero(-lp.rhs[i]))
            profile = profile.mirrored()
        senses.append(LE)
        origin.append(i)
        signs.append(sign)
        if profile != u.profile:
            row_profiles[new_i] = profile
        for j in u.uncertain_columns(i):
            devs = u.deviations(i, j)
            if sign < 0:
                devs = {-k: _clean_zero(-d) for k, d in devs.items()}
            breakpoints[(new_i, j)] = devs

    for i, sense in enumerate(lp.row_sense):
        if sense == LE:
            emit(i, 1)
        elif sense == GE:
            emit(i, -1)
        else:
            if strict:
                raise CanonicalizationError(f"Строка {i}: равенства запрещены в строгом режиме")
            emit(i, 1)
            emit(i, -1)

    canonical_lp = LinearProgram(
        sense=lp.sense,
        objective=lp.objective,
        rows=tuple(rows),
        row_sense=tuple(senses),
        rhs=tuple(rhs),
        var_lower=lp.var_lower,
        var_upper=lp.var_upper,
    )
    canonical_u = MultiBandUncertaintySet(u.profile, breakpoints, row_profiles)
    logger.info(f"Каноническая форма: {lp.num_rows} строк -> {canonical_lp.num_rows}")
    return CanonicalForm(canonical_lp, canonical_u, tuple(origin), tuple(signs))
