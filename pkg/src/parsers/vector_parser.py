#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Парсер файла вектора (одно значение в строке)
"""

import logging
from pathlib import Path
from typing import List, Sequence

from src.errors import InstanceParseError

from .base_parser import BaseParser, split_content

logger = logging.getLogger(__name__)


class VectorParser(BaseParser):
    """
    Парсер векторов x

    Поддерживает:
    - одно число в строке
    - комментарии '#' и пустые строки
    """

    def parse_text(self, text: str, source: str = "<string>") -> List[float]:
        values: List[float] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            tokens = split_content(raw)
            if not tokens:
                continue
            if len(tokens) != 1:
                raise InstanceParseError("ожидается одно число в строке", lineno, source)
            try:
                values.append(float(tokens[0]))
            except ValueError:
                raise InstanceParseError(f"ожидалось число, получено '{tokens[0]}'", lineno, source)
        return values


def load_vector(path) -> List[float]:
    return VectorParser().load(Path(path))


def write_vector(path, values: Sequence[float]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(f"{repr(float(v) if v != 0 else 0.0)}\n" for v in values), encoding="utf-8")
    logger.info(f"Вектор записан: {path}")
    return path
