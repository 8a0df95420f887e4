"""
配置管理模块
提供项目默认配置、.env 加载和环境变量覆盖（前缀 PTDIRAC_）
"""
import os
from typing import Any, Dict

from dotenv import load_dotenv

from utils.configutil import ConfigManager

# 加载 .env（已存在的环境变量优先）
load_dotenv(override=False)

# 默认配置；所有质量、动量、能量共用同一自然单位（c = ħ = 1）
DEFAULT_CONFIG: Dict[str, Any] = {
    'tol': 1e-10,              # 谱实性判定容差
    'classify_tol': 1e-9,      # 区域边界带的相对半宽
    'cli_classify_tol': 1e-7,  # 命令行 classify 的边界带（输入为有限位十进制）
    'cross_check_tol': 1e-9,   # 闭式解/数值解交叉校验容差
    'rank_tol': 1e-8,          # 数值秩的奇异值阈值（相对 ‖H‖）
    'intertwining_tol': 1e-10,
    'digits': 9,
    'dim': 2,
    'format': 'csv',
    'max_workers': 4,
    'verify_every': 16,        # 扫描模式下每 N 个点做一次交叉校验
    'fig1': {'alpha_max': 3.0, 'steps': 301},
    'fig2': {'steps': 101},
    'fig3': {'nu1_max': 2.0, 'nu2_max': 2.0, 'steps': 401},
    'log': {'level': 'WARNING'},
}


def _build_settings() -> ConfigManager:
    """
    创建全局配置管理器；PTDIRAC_CONFIG 指向的 YAML/JSON 文件叠加在默认配置之上

    Returns:
        配置管理器实例
    """
    manager = ConfigManager(DEFAULT_CONFIG, env_var_prefix='PTDIRAC_')
    config_file = os.environ.get('PTDIRAC_CONFIG')
    if config_file:
        manager.load_from_file(config_file)
    return manager


settings = _build_settings()


def get_tolerance() -> float:
    """
    谱实性判定的默认容差（PTDIRAC_TOL 可覆盖）

    Returns:
        容差
    """
    return settings.get_float('tol')


def get_classify_tolerance() -> float:
    """区域边界带默认相对容差"""
    return settings.get_float('classify_tol')


def get_cross_check_tolerance() -> float:
    """交叉校验容差"""
    return settings.get_float('cross_check_tol')


def get_rank_tolerance() -> float:
    """数值秩阈值"""
    return settings.get_float('rank_tol')
