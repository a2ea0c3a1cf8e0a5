#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Иерархия исключений пакета

Каждое исключение несет код завершения для CLI:
- 1: решатель не достиг оптимума (лимит, недопустимость, неограниченность)
- 2: ошибка входных данных
- 3: нарушение внутреннего инварианта
"""

from typing import Optional, Sequence


class RobustLPError(Exception):
    """Базовое исключение пакета"""

    exit_code = 3


class InstanceParseError(RobustLPError, ValueError):
    """Ошибка разбора файла экземпляра (с номером строки)"""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        self.line = line
        self.path = path
        self.message = message
        location = ""
        if path:
            location += f"{path}:"
        if line is not None:
            location += f"{line}:"
        super().__init__(f"{location} {message}".strip())


class ValidationFailedError(RobustLPError, ValueError):
    """Пара (LP, множество неопределенности) не прошла валидацию"""

    exit_code = 2

    def __init__(self, violations: Sequence):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations[:5])
        more = f" (+{len(self.violations) - 5})" if len(self.violations) > 5 else ""
        super().__init__(f"Экземпляр некорректен: {summary}{more}")


class NonCanonicalError(RobustLPError, ValueError):
    """Вход содержит строки не в форме <= (пропущен canonicalize)"""

    exit_code = 2


class CanonicalizationError(RobustLPError, ValueError):
    """Строгий режим запрещает строки-равенства"""

    exit_code = 2


class NegativeSolutionError(RobustLPError, ValueError):
    """Отрицательная компонента x при построении сети"""

    exit_code = 2


class EnumerationLimitError(RobustLPError, ValueError):
    """Полный перебор превышает допустимый размер"""

    exit_code = 2


class CalibrationError(RobustLPError, ValueError):
    """Калибровка полос дала структурно невозможный профиль"""

    exit_code = 2


class InvalidBudgetError(RobustLPError, ValueError):
    """Бюджет Γ вне диапазона [0, n]"""

    exit_code = 2


class SolverStatusError(RobustLPError):
    """Решатель LP завершился без оптимума"""

    exit_code = 1

    def __init__(self, status: str, context: str = ""):
        self.status = status
        self.context = context
        super().__init__(f"Статус решателя '{status}'" + (f": {context}" if context else ""))


class FlowInfeasibleError(RobustLPError):
    """Сеть не допускает поток требуемой величины"""

    exit_code = 3

    def __init__(self, message: str, cut_nodes: Sequence[str] = (), deficit: int = 0):
        self.cut_nodes = tuple(cut_nodes)
        self.deficit = deficit
        cut = ", ".join(self.cut_nodes)
        super().__init__(f"{message}; дефицит {deficit}; разрез {{{cut}}}")


class CutError(RobustLPError):
    """Попытка построить отсечение по ненарушенному сертификату"""

    exit_code = 3


class InvariantBreachError(RobustLPError):
    """Расхождение сертификата и потока или другой внутренний инвариант"""

    exit_code = 3


class UnknownSolverError(RobustLPError, ValueError):
    """Неизвестное имя решателя LP"""

    exit_code = 2


class GenerationError(RobustLPError, ValueError):
    """Генератор не смог построить допустимый экземпляр"""

    exit_code = 2
