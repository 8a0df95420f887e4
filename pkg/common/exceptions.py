"""
自定义异常类
error_code 同时作为命令行退出码：1 表示领域/校验失败，2 表示用法错误
"""
import json
from typing import Any, Dict, Optional


class PtDiracError(Exception):
    """
    框架基础异常类
    所有自定义异常的根类
    """
    def __init__(self, message: str, error_code: int = 1,
                 details: Optional[Dict[str, Any]] = None):
        """
        初始化异常

        Args:
            message: 异常描述信息
            error_code: 错误代码，同时用作命令行退出码
            details: 额外的错误详情字典
        """
        self.message = message
        self.error_code = error_code
        self.details = {k: v for k, v in (details or {}).items() if v is not None}
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        """
        将异常信息转换为字典格式

        Returns:
            包含异常所有信息的字典
        """
        return {
            "error_type": self.__class__.__name__,
            "message": self.message,
            "error_code": self.error_code,
            "details": self.details
        }

    def __str__(self) -> str:
        base_str = f"[{self.__class__.__name__}:{self.error_code}] {self.message}"
        if self.details:
            details_str = json.dumps(self.details, ensure_ascii=False, default=str)
            base_str += f" | 详情: {details_str}"
        return base_str


class ConfigError(PtDiracError):
    """配置错误异常"""
    def __init__(self, message: str, config_name: Optional[str] = None,
                 config_value: Optional[Any] = None):
        super().__init__(message, error_code=2,
                         details={"config_name": config_name, "config_value": config_value})


class ParameterError(PtDiracError, ValueError):
    """
    参数错误
    用于命令行或方法参数校验失败的情况
    """
    def __init__(self, message: str, param_name: Optional[str] = None,
                 param_value: Optional[Any] = None):
        super().__init__(message, error_code=2,
                         details={"param_name": param_name, "param_value": param_value})


class DimensionError(PtDiracError, ValueError):
    """
    维数错误
    不支持的表示维数、矩阵维数不匹配或非方阵
    """
    def __init__(self, message: str, expected: Optional[Any] = None,
                 actual: Optional[Any] = None):
        super().__init__(message, error_code=2,
                         details={"expected": expected, "actual": actual})


class DomainError(PtDiracError, ValueError):
    """
    定义域错误
    数值合法但落在数学定义域之外，例如 |m2| >= m1 时不存在正定度规
    """
    def __init__(self, message: str, regime: Optional[str] = None,
                 values: Optional[Dict[str, Any]] = None):
        super().__init__(message, error_code=1,
                         details={"regime": regime, "values": values})


class VerificationError(PtDiracError):
    """
    校验错误
    闭式解与数值解交叉校验不一致
    """
    def __init__(self, message: str, residual: Optional[float] = None,
                 tolerance: Optional[float] = None):
        super().__init__(message, error_code=1,
                         details={"residual": residual, "tolerance": tolerance})
