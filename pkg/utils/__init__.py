"""
基础设施工具包：日志、配置、并发、结果输出
"""

from .logutil import LogUtil, logger, get_logger
from .configutil import ConfigManager
from .concurrencyutil import ConcurrentExecutor
from .recordutil import RecordWriter, progress

__all__ = [
    'LogUtil',
    'logger',
    'get_logger',
    'ConfigManager',
    'ConcurrentExecutor',
    'RecordWriter',
    'progress'
]
