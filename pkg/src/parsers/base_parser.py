#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Базовый класс для всех парсеров файлов
"""

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, List

from src.errors import InstanceParseError


class BaseParser(ABC):
    """
    Базовый абстрактный класс для всех парсеров
    """

    MAX_FILE_SIZE_MB = 50

    def __init__(self):
        self.logger = logging.getLogger(self.__class__.__name__)

    @abstractmethod
    def parse_text(self, text: str, source: str = "<string>") -> Any:
        """
        Разбор содержимого

        Args:
            text: Содержимое файла
            source: Имя источника для диагностики

        Returns:
            Разобранный объект

        Raises:
            InstanceParseError: Ошибка с номером строки
        """
        pass

    def load(self, file_path: Path) -> Any:
        """
        Разбор файла

        Raises:
            InstanceParseError: Файл не найден, не читается или содержит ошибку
        """
        file_path = Path(file_path)
        self.validate_file(file_path)
        try:
            text = file_path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise InstanceParseError(f"Файл не читается: {e}", path=str(file_path))
        try:
            return self.parse_text(text, str(file_path))
        except InstanceParseError as e:
            self.logger.debug(f"Ошибка разбора: {e}")
            raise

    def validate_file(self, file_path: Path) -> None:
        """
        Валидация файла перед разбором

        Raises:
            InstanceParseError: Файл не найден, не является файлом или слишком большой
        """
        if not file_path.exists():
            raise InstanceParseError("Файл не найден", path=str(file_path))

        if not file_path.is_file():
            raise InstanceParseError("Путь не указывает на файл", path=str(file_path))

        max_size = self.MAX_FILE_SIZE_MB * 1024 * 1024
        if file_path.stat().st_size > max_size:
            raise InstanceParseError(
                f"Файл слишком большой: {file_path.stat().st_size / 1024 / 1024:.2f} MB", path=str(file_path)
            )


def split_content(line: str) -> List[str]:
    """Токены строки без комментария (# до конца строки)"""
    return line.split("#", 1)[0].split()
