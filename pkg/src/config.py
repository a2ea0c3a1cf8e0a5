#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Настройки окружения

Только параметры окружения исполнения (логирование, решатель по умолчанию).
Допуски алгоритмов задаются исключительно флагами CLI.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Настройки, читаемые из переменных RLP_* и файла .env"""

    model_config = SettingsConfigDict(env_prefix="RLP_", env_file=".env", extra="ignore")

    log_level: str = Field(default="WARNING", description="Уровень логирования")
    log_json: bool = Field(default=False, description="Логи в формате JSON")
    default_solver: str = Field(default="builtin", description="builtin | scipy | exec:<path>")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Единый экземпляр настроек процесса"""
    return Settings()
