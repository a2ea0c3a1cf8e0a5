#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Настройка логирования

Текстовый формат по умолчанию, JSON-формат через python-json-logger.
Вывод всегда в stderr: stdout CLI остается детерминированным.
"""

import logging
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

TEXT_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
JSON_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


def setup_logging(level: str = "WARNING", json_format: bool = False, stream: Optional[object] = None) -> None:
    """
    Конфигурация корневого логгера

    Args:
        level: Уровень логирования (DEBUG, INFO, WARNING, ...)
        json_format: Использовать JSON-формат
        stream: Поток вывода (по умолчанию sys.stderr)
    """
    handler = logging.StreamHandler(stream or sys.stderr)
    if json_format:
        handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(getattr(logging, str(level).upper(), logging.WARNING))
