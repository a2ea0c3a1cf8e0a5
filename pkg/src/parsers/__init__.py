#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Модуль чтения и записи файлов

Поддерживаемые форматы:
- файл экземпляра ([lp], [bands], [deviations], [varmap])
- файл вектора (одно значение в строке)
"""

from .base_parser import BaseParser
from .instance_parser import InstanceData, InstanceParser, load_instance
from .instance_writer import format_instance, write_instance
from .vector_parser import VectorParser, load_vector, write_vector

__all__ = [
    "BaseParser",
    "InstanceData",
    "InstanceParser",
    "load_instance",
    "format_instance",
    "write_instance",
    "VectorParser",
    "load_vector",
    "write_vector",
]
