#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Вспомогательные утилиты
"""

from .logging_config import setup_logging

__all__ = ["setup_logging"]
