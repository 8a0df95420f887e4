"""
日志工具模块
控制台日志统一输出到 stderr（stdout 只用于输出计算结果），可选按时间轮转的文件日志
"""
import logging
import os
import sys
import time
from logging.handlers import TimedRotatingFileHandler
from typing import Any, Dict, Optional, Union


class ColoredFormatter(logging.Formatter):
    """
    彩色日志格式化器
    """
    COLORS = {
        'DEBUG': '\033[38;5;240m',  # 灰色
        'INFO': '\033[38;5;34m',    # 绿色
        'WARNING': '\033[38;5;220m',  # 黄色
        'ERROR': '\033[38;5;196m',  # 红色
        'CRITICAL': '\033[38;5;160m\033[48;5;231m',  # 深红底白字
        'RESET': '\033[0m',
    }

    def __init__(self, fmt=None, datefmt=None, use_color=True, stream=None):
        super().__init__(fmt, datefmt)
        stream = stream or sys.stderr
        self.use_color = use_color and hasattr(stream, 'isatty') and stream.isatty()

    def format(self, record):
        formatted = super().format(record)
        if self.use_color:
            color_prefix = self.COLORS.get(record.levelname, '')
            return f"{color_prefix}{formatted}{self.COLORS['RESET']}"
        return formatted


class LogUtil:
    """
    日志工具类
    控制台handler绑定stderr，配置了日志目录时追加文件handler
    """

    DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(filename)s[line:%(lineno)d] - %(levelname)s: %(message)s"

    def __init__(self,
                 logger_name: str = "ptdirac",
                 log_dir: Optional[str] = None,
                 level: Union[int, str] = logging.WARNING,
                 backup_count: int = 10,
                 use_color: bool = True):
        """
        初始化日志配置

        Args:
            logger_name: 日志名称
            log_dir: 日志文件目录，为None时读取环境变量 PTDIRAC_LOG_DIR，仍为空则不写文件
            level: 控制台日志级别
            backup_count: 保留的备份日志数量
            use_color: 是否使用彩色输出
        """
        self.logger = logging.getLogger(logger_name)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        if self.logger.handlers:
            self.logger.handlers.clear()

        self.use_color = use_color
        self.formatter = ColoredFormatter(fmt=self.DEFAULT_FORMAT, use_color=use_color)
        self.backup_count = backup_count
        self.log_dir = log_dir or os.environ.get('PTDIRAC_LOG_DIR') or None

        self._add_console_handler(level)
        if self.log_dir:
            self._add_file_handler()

    def _add_console_handler(self, level: Union[int, str]):
        """添加控制台handler（stderr）"""
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(self.formatter)
        self.console_handler = console_handler
        self.logger.addHandler(console_handler)

    def _add_file_handler(self):
        """添加文件handler - 按会话生成独立日志文件"""
        os.makedirs(self.log_dir, exist_ok=True)
        timestamp = time.strftime('%Y%m%d_%H%M%S', time.localtime())
        log_file_path = os.path.join(self.log_dir, f"ptdirac_{timestamp}_{os.getpid()}.log")

        file_handler = TimedRotatingFileHandler(
            log_file_path,
            when='h',
            interval=6,
            backupCount=self.backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(fmt=self.DEFAULT_FORMAT))
        self.logger.addHandler(file_handler)
        self.debug(f"日志文件已创建: {log_file_path}")

    def debug(self, message: str, extra: Dict[str, Any] = None):
        """记录debug级别日志"""
        self.logger.debug(message, extra=extra)

    def warning(self, message: str, extra: Dict[str, Any] = None):
        """记录warning级别日志"""
        self.logger.warning(message, extra=extra)

    def set_level(self, level: Union[int, str]):
        """设置控制台日志级别"""
        if isinstance(level, str):
            level = level.upper()
        self.console_handler.setLevel(level)

    def get_level(self) -> int:
        """获取控制台日志级别"""
        return self.console_handler.level


# 默认日志实例
logger = LogUtil(logger_name="ptdirac")


def get_logger(name: Optional[str] = None, level: Union[int, str, None] = None) -> LogUtil:
    """
    获取或创建日志实例

    Args:
        name: 日志名称，为None时返回默认实例
        level: 控制台日志级别

    Returns:
        LogUtil实例
    """
    if name:
        instance = LogUtil(logger_name=name, level=level or logging.WARNING)
        return instance
    if level is not None:
        logger.set_level(level)
    return logger
