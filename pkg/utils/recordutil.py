"""
结果记录输出工具
CSV 通过 pandas 写出（逗号分隔、\\n 换行、单行表头、无索引），JSON 为扁平对象数组
同一输入两次输出逐字节一致：不含时间戳，数值格式与区域设置无关
"""
import json
import math
import os
import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import pandas as pd
from tqdm import tqdm

from common.exceptions import ParameterError

NOT_AVAILABLE = 'n/a'


class RecordWriter:
    """
    记录格式化与写出
    """

    FORMATS = ('csv', 'json')

    def __init__(self, fmt: str = 'csv', digits: int = 9):
        """
        Args:
            fmt: 输出格式 csv 或 json
            digits: 浮点数有效数字位数
        """
        if fmt not in self.FORMATS:
            raise ParameterError(f"不支持的输出格式: {fmt}", param_name='format', param_value=fmt)
        if digits < 1 or digits > 17:
            raise ParameterError(f"有效数字位数必须在 1..17 之间: {digits}", param_name='digits', param_value=digits)
        self.fmt = fmt
        self.digits = digits

    def format_value(self, value: Any) -> str:
        """
        将单个字段格式化为文本

        Args:
            value: 字段值

        Returns:
            文本表示
        """
        if value is None:
            return NOT_AVAILABLE
        if isinstance(value, bool):
            return 'true' if value else 'false'
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            if math.isnan(value):
                return NOT_AVAILABLE
            if math.isinf(value):
                return 'inf' if value > 0 else '-inf'
            text = f"{value:.{self.digits}g}"
            return '0' if text in ('-0', '0') else text
        return str(value)

    def _json_value(self, value: Any) -> Any:
        if value is None or isinstance(value, bool):
            return value
        if isinstance(value, int):
            return value
        if isinstance(value, float):
            if not math.isfinite(value):
                return None
            return float(self.format_value(value))
        return str(value)

    def render(self, records: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
        """
        渲染为文本

        Args:
            records: 记录列表（字段名相同的字典）
            columns: 列顺序，为None时取第一条记录的键顺序

        Returns:
            完整输出文本
        """
        if columns is None:
            columns = list(records[0].keys()) if records else []

        if self.fmt == 'json':
            payload = [{col: self._json_value(rec.get(col)) for col in columns} for rec in records]
            return json.dumps(payload, ensure_ascii=False, indent=2) + '\n'

        frame = pd.DataFrame(
            [[self.format_value(rec.get(col)) for col in columns] for rec in records],
            columns=columns,
            dtype=str,
        )
        return frame.to_csv(index=False, lineterminator='\n')

    def write(self, records: Sequence[Dict[str, Any]], out: Optional[str] = None,
              columns: Optional[List[str]] = None, stream: Optional[TextIO] = None) -> None:
        """
        写出记录到文件或标准输出

        Args:
            records: 记录列表
            out: 输出文件路径，为None时写到 stream / stdout
            columns: 列顺序
            stream: 输出流
        """
        text = self.render(records, columns)
        if out:
            directory = os.path.dirname(os.path.abspath(out))
            os.makedirs(directory, exist_ok=True)
            with open(out, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
        else:
            (stream or sys.stdout).write(text)


def progress(iterable: Iterable[Any], total: Optional[int] = None, desc: Optional[str] = None) -> Iterable[Any]:
    """
    进度条（输出到 stderr，非终端时关闭）

    Args:
        iterable: 可迭代对象
        total: 总数
        desc: 描述

    Returns:
        包装后的可迭代对象
    """
    return tqdm(iterable, total=total, desc=desc, file=sys.stderr,
                disable=not sys.stderr.isatty(), leave=False)
