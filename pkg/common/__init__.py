"""
common模块：提供公共组件
"""

from .exceptions import (
    PtDiracError,
    ConfigError,
    ParameterError,
    DimensionError,
    DomainError,
    VerificationError
)
from .decorators import log_function, time_function

__all__ = [
    'PtDiracError',
    'ConfigError',
    'ParameterError',
    'DimensionError',
    'DomainError',
    'VerificationError',
    'log_function',
    'time_function'
]
