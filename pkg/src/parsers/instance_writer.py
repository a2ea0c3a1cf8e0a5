#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Запись файла экземпляра

Числа записываются через repr(float): разбор записанного файла
восстанавливает те же значения.
"""

import logging
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence

from src.models.lp import LinearProgram
from src.models.uncertainty import BandProfile, MultiBandUncertaintySet

if TYPE_CHECKING:
    from src.reformulate import CompactCounterpart

logger = logging.getLogger(__name__)


def _num(value: float) -> str:
    value = float(value)
    return repr(value if value != 0 else 0.0)


def _join(values: Iterable) -> str:
    return " ".join(str(v) for v in values)


def _profile_lines(header: str, profile: BandProfile) -> List[str]:
    return [
        header,
        f"ids {_join(profile.band_ids)}",
        f"lower {_join(profile.lower_counts)}",
        f"upper {_join(profile.upper_counts)}",
    ]


def format_instance(
    lp: LinearProgram,
    u: Optional[MultiBandUncertaintySet] = None,
    counterpart: Optional["CompactCounterpart"] = None,
    comments: Sequence[str] = (),
) -> str:
    """
    Текст файла экземпляра

    Args:
        lp: LP
        u: Множество неопределенности (None - без [bands]/[deviations])
        counterpart: RLP, для которой дописывается секция [varmap]
        comments: Строки комментария в начале файла

    Returns:
        Содержимое файла
    """
    lines = [f"# {c}" for c in comments]
    lines.append("[lp]")
    lines.append(f"sense {lp.sense}")
    lines.append(f"objective {_join(_num(c) for c in lp.objective)}".rstrip())
    lines.append(f"senses {_join(lp.row_sense)}".rstrip())
    lines.append(f"rhs {_join(_num(b) for b in lp.rhs)}".rstrip())
    if any(lo != 0.0 for lo in lp.var_lower):
        lines.append(f"lower {_join(_num(v) for v in lp.var_lower)}")
    if any(up != float('inf') for up in lp.var_upper):
        lines.append(f"upper {_join(_num(v) for v in lp.var_upper)}")
    for i, row in enumerate(lp.rows):
        for j, a in row:
            lines.append(f"{i} {j} {_num(a)}")

    if u is not None:
        lines.append("")
        lines.extend(_profile_lines("[bands]", u.profile))
        for i, profile in u.row_profiles.items():
            lines.append("")
            lines.extend(_profile_lines(f"[bands {i}]", profile))
        if not u.is_empty:
            lines.append("")
            lines.append("[deviations]")
        for (i, j), devs in u.breakpoints.items():
            for k, d in devs.items():
                # d^0 = 0 подставляется при разборе; одиночная полоса 0 пишется явно
                if k != 0 or len(devs) == 1:
                    lines.append(f"{i} {j} {k} {_num(d)}")

    if counterpart is not None:
        lines.append("")
        lines.append("[varmap]")
        for col, role in enumerate(counterpart.var_map):
            lines.append(f"var {col} {role.label()}")
        for r, role in enumerate(counterpart.row_map):
            lines.append(f"row {r} {role.label()}")

    return "\n".join(lines) + "\n"


def write_instance(
    path,
    lp: LinearProgram,
    u: Optional[MultiBandUncertaintySet] = None,
    counterpart: Optional["CompactCounterpart"] = None,
    comments: Sequence[str] = (),
) -> Path:
    """Запись файла экземпляра, возвращает путь"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_instance(lp, u, counterpart, comments), encoding="utf-8")
    logger.info(f"Экземпляр записан: {path}")
    return path
