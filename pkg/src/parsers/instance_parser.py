#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Парсер файла экземпляра

Строчный текстовый формат с секциями:
- [lp]: sense, objective, senses, rhs, lower, upper и тройки "i j value";
- [bands] / [bands <row>]: ids, lower, upper;
- [deviations]: четверки "i j k value";
- [varmap]: "var <col> <label>" и "row <r> <label>" (только для RLP).

Комментарии начинаются с '#'. Описание формата: docs/INSTANCE_FORMAT.md
"""

import math
from pathlib import Path
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.errors import InstanceParseError
from src.models.lp import _ROW_SENSE_ALIASES, _SENSE_ALIASES, LinearProgram
from src.models.uncertainty import BandProfile, MultiBandUncertaintySet

from .base_parser import BaseParser, split_content


@dataclass(frozen=True)
class InstanceData:
    """Содержимое файла экземпляра"""
    lp: LinearProgram
    uncertainty: MultiBandUncertaintySet
    var_labels: Tuple[str, ...] = ()
    row_labels: Tuple[str, ...] = ()


class _Keywords:
    """Значения ключевых строк секции с номерами строк"""

    def __init__(self, section: str, source: str):
        self.section = section
        self.source = source
        self.values: Dict[str, List[str]] = {}
        self.lines: Dict[str, int] = {}

    def put(self, key: str, tokens: List[str], line: int) -> None:
        if key in self.values:
            raise InstanceParseError(f"[{self.section}]: повторная строка '{key}'", line, self.source)
        self.values[key] = tokens
        self.lines[key] = line

    def has(self, key: str) -> bool:
        return key in self.values

    def line(self, key: str, default: Optional[int] = None) -> Optional[int]:
        return self.lines.get(key, default)

    def floats(self, key: str) -> List[float]:
        return [_to_float(t, self.lines[key], self.source) for t in self.values[key]]

    def ints(self, key: str) -> List[int]:
        return [_to_int(t, self.lines[key], self.source) for t in self.values[key]]

    def require(self, key: str, end_line: int) -> None:
        if key not in self.values:
            raise InstanceParseError(f"[{self.section}]: отсутствует строка '{key}'", end_line, self.source)


def _to_float(token: str, line: int, source: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise InstanceParseError(f"ожидалось число, получено '{token}'", line, source)


def _to_int(token: str, line: int, source: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceParseError(f"ожидалось целое число, получено '{token}'", line, source)


class InstanceParser(BaseParser):
    """
    Парсер экземпляров (LP + многополосное множество)
    """

    LP_KEYWORDS = ("sense", "objective", "senses", "rhs", "lower", "upper")
    BAND_KEYWORDS = ("ids", "lower", "upper")

    def parse_text(self, text: str, source: str = "<string>") -> InstanceData:
        """
        Разбор содержимого файла экземпляра

        Args:
            text: Содержимое
            source: Имя источника для диагностики

        Returns:
            InstanceData

        Raises:
            InstanceParseError: Ошибка с номером строки
        """
        lp_keys: Optional[_Keywords] = None
        triples: List[Tuple[int, int, float, int]] = []
        bands: Dict[Optional[int], _Keywords] = {}
        deviations: Dict[Tuple[int, int], Dict[int, float]] = {}
        var_labels: Dict[int, str] = {}
        row_labels: Dict[int, str] = {}
        section: Optional[str] = None
        current_bands: Optional[_Keywords] = None
        seen_sections = set()
        last_line = 0

        for lineno, raw in enumerate(text.splitlines(), start=1):
            last_line = lineno
            tokens = split_content(raw)
            if not tokens:
                continue

            if tokens[0].startswith("["):
                header = " ".join(tokens)
                if not header.endswith("]"):
                    raise InstanceParseError(f"некорректный заголовок секции '{header}'", lineno, source)
                parts = header[1:-1].split()
                if not parts:
                    raise InstanceParseError("пустой заголовок секции", lineno, source)
                section = parts[0]
                key = header
                if key in seen_sections:
                    raise InstanceParseError(f"повторная секция {header}", lineno, source)
                seen_sections.add(key)
                if section == "lp" and len(parts) == 1:
                    lp_keys = _Keywords("lp", source)
                elif section == "bands" and len(parts) in (1, 2):
                    row = _to_int(parts[1], lineno, source) if len(parts) == 2 else None
                    current_bands = _Keywords(header[1:-1], source)
                    bands[row] = current_bands
                elif section in ("deviations", "varmap") and len(parts) == 1:
                    pass
                else:
                    raise InstanceParseError(f"неизвестная секция {header}", lineno, source)
                continue

            if section is None:
                raise InstanceParseError("данные вне секции", lineno, source)

            if section == "lp":
                if tokens[0] in self.LP_KEYWORDS:
                    lp_keys.put(tokens[0], tokens[1:], lineno)
                elif len(tokens) == 3:
                    i = _to_int(tokens[0], lineno, source)
                    j = _to_int(tokens[1], lineno, source)
                    triples.append((i, j, _to_float(tokens[2], lineno, source), lineno))
                else:
                    raise InstanceParseError(f"[lp]: неизвестная строка '{tokens[0]}'", lineno, source)

            elif section == "bands":
                if tokens[0] not in self.BAND_KEYWORDS:
                    raise InstanceParseError(f"[bands]: неизвестная строка '{tokens[0]}'", lineno, source)
                current_bands.put(tokens[0], tokens[1:], lineno)

            elif section == "deviations":
                if len(tokens) != 4:
                    raise InstanceParseError("[deviations]: ожидается 'i j k value'", lineno, source)
                i, j, k = (_to_int(t, lineno, source) for t in tokens[:3])
                value = _to_float(tokens[3], lineno, source)
                entry = deviations.setdefault((i, j), {})
                if k in entry:
                    raise InstanceParseError(f"[deviations]: повтор ({i}, {j}, {k})", lineno, source)
                entry[k] = value

            elif section == "varmap":
                if len(tokens) < 3 or tokens[0] not in ("var", "row"):
                    raise InstanceParseError("[varmap]: ожидается 'var|row <index> <label>'", lineno, source)
                index = _to_int(tokens[1], lineno, source)
                target = var_labels if tokens[0] == "var" else row_labels
                target[index] = " ".join(tokens[2:])

        if lp_keys is None:
            raise InstanceParseError("отсутствует секция [lp]", last_line or None, source)
        lp = self._build_lp(lp_keys, triples, source, last_line)
        uncertainty = self._build_uncertainty(bands, deviations, lp.num_vars, source, last_line)

        self.logger.debug(f"Разобран экземпляр {source}: {lp.num_rows}x{lp.num_vars}")
        return InstanceData(
            lp=lp,
            uncertainty=uncertainty,
            var_labels=tuple(var_labels[c] for c in sorted(var_labels)),
            row_labels=tuple(row_labels[r] for r in sorted(row_labels)),
        )

    def _build_lp(self, keys: _Keywords, triples, source: str, end_line: int) -> LinearProgram:
        for key in ("sense", "objective", "senses", "rhs"):
            keys.require(key, end_line)

        sense_tokens = keys.values["sense"]
        if len(sense_tokens) != 1 or sense_tokens[0].lower() not in _SENSE_ALIASES:
            raise InstanceParseError("sense: ожидается maximize или minimize", keys.line("sense"), source)
        objective = keys.floats("objective")
        n = len(objective)

        for token in keys.values["senses"]:
            if token not in _ROW_SENSE_ALIASES:
                raise InstanceParseError(f"senses: неизвестный знак '{token}'", keys.line("senses"), source)
        senses = keys.values["senses"]
        rhs = keys.floats("rhs")
        if len(rhs) != len(senses):
            raise InstanceParseError(
                f"rhs: {len(rhs)} значений при {len(senses)} знаках строк", keys.line("rhs"), source
            )
        m = len(senses)

        bounds = {}
        for key, default in (("lower", 0.0), ("upper", math.inf)):
            if keys.has(key):
                values = keys.floats(key)
                if len(values) != n:
                    raise InstanceParseError(f"{key}: {len(values)} значений при {n} переменных", keys.line(key), source)
                bounds[key] = values
            else:
                bounds[key] = [default] * n

        rows: List[List[Tuple[int, float]]] = [[] for _ in range(m)]
        for i, j, value, lineno in triples:
            if not 0 <= i < m:
                raise InstanceParseError(f"строка {i} вне [0, {m})", lineno, source)
            rows[i].append((j, value))

        return LinearProgram(
            sense=sense_tokens[0],
            objective=tuple(objective),
            rows=tuple(tuple(r) for r in rows),
            row_sense=tuple(senses),
            rhs=tuple(rhs),
            var_lower=tuple(bounds["lower"]),
            var_upper=tuple(bounds["upper"]),
        )

    def _build_profile(self, keys: _Keywords, source: str, end_line: int) -> BandProfile:
        for key in self.BAND_KEYWORDS:
            keys.require(key, end_line)
        ids, lower, upper = keys.ints("ids"), keys.ints("lower"), keys.ints("upper")
        if not (len(ids) == len(lower) == len(upper)):
            raise InstanceParseError(f"[{keys.section}]: ids, lower и upper разной длины", keys.line("upper"), source)
        return BandProfile(tuple(ids), tuple(lower), tuple(upper))

    def _build_uncertainty(self, bands, deviations, n: int, source: str, end_line: int) -> MultiBandUncertaintySet:
        if None in bands:
            profile = self._build_profile(bands[None], source, end_line)
        elif deviations:
            raise InstanceParseError("есть [deviations], но нет секции [bands]", end_line, source)
        else:
            profile = BandProfile((0,), (0,), (n,))
        row_profiles = {
            row: self._build_profile(keys, source, end_line) for row, keys in bands.items() if row is not None
        }
        return MultiBandUncertaintySet(profile, deviations, row_profiles)


def load_instance(path) -> InstanceData:
    """Чтение файла экземпляра с исключением InstanceParseError при ошибке"""
    return InstanceParser().load(Path(path))
