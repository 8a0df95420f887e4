#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置管理工具模块
分层配置：默认配置 -> 配置文件（YAML/JSON） -> 环境变量覆盖
"""

import copy
import json
import os
from typing import Any, Dict, List, Optional

import yaml

from common.exceptions import ConfigError
from utils.logutil import logger


class ConfigManager:
    """
    配置管理器
    负责加载、合并和提供配置信息
    """

    def __init__(self, defaults: Optional[Dict[str, Any]] = None, env_var_prefix: str = 'PTDIRAC_'):
        """
        初始化配置管理器

        Args:
            defaults: 默认配置字典
            env_var_prefix: 环境变量前缀
        """
        self._default_config = copy.deepcopy(defaults or {})
        self._file_config: Dict[str, Any] = {}
        self._active_config: Dict[str, Any] = {}
        self._env_var_prefix = env_var_prefix
        self._merge_configs()

    def _merge_configs(self) -> None:
        """
        合并配置：默认配置 + 文件配置 + 环境变量覆盖
        """
        merged_config = self._deep_merge(self._default_config, self._file_config)
        env_overrides = self._load_env_var_overrides()
        if env_overrides:
            merged_config = self._deep_merge(merged_config, env_overrides)
        self._active_config = merged_config

    def reload(self) -> None:
        """重新读取环境变量覆盖"""
        self._merge_configs()

    def _deep_merge(self, dict1: Dict[str, Any], dict2: Dict[str, Any]) -> Dict[str, Any]:
        """
        深度合并两个字典

        Args:
            dict1: 第一个字典（基础）
            dict2: 第二个字典（覆盖）

        Returns:
            合并后的字典
        """
        result = copy.deepcopy(dict1)
        for key, value in dict2.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._deep_merge(result[key], value)
            else:
                result[key] = copy.deepcopy(value)
        return result

    def _load_env_var_overrides(self) -> Dict[str, Any]:
        """
        从环境变量加载配置覆盖
        环境变量格式：PTDIRAC_{SECTION}_{KEY}=value，例如 PTDIRAC_TOL=1e-8、PTDIRAC_LOG_LEVEL=DEBUG
        只覆盖默认配置中已存在的键；键名本身含下划线时优先整体匹配

        Returns:
            环境变量覆盖配置字典
        """
        overrides: Dict[str, Any] = {}

        for env_var, value in os.environ.items():
            if not env_var.startswith(self._env_var_prefix):
                continue
            key_path = self._resolve_env_key(env_var[len(self._env_var_prefix):].lower())
            if key_path is None:
                continue

            current_dict = overrides
            for part in key_path[:-1]:
                current_dict = current_dict.setdefault(part, {})
            current_dict[key_path[-1]] = self._convert_env_var_value(value)

        return overrides

    def _resolve_env_key(self, raw_key: str) -> Optional[List[str]]:
        """
        将环境变量键名映射到默认配置中的键路径

        Args:
            raw_key: 去掉前缀并转小写的键名

        Returns:
            键路径列表，无法匹配时返回None
        """
        node: Any = self._default_config
        path: List[str] = []
        remaining = raw_key
        while remaining:
            if not isinstance(node, dict):
                return None
            match = None
            # 最长匹配：fig3_steps 优先于 fig3 -> steps
            for key in sorted(node.keys(), key=len, reverse=True):
                if remaining == key or remaining.startswith(key + '_'):
                    match = key
                    break
            if match is None:
                return None
            path.append(match)
            node = node[match]
            remaining = remaining[len(match) + 1:]
        return path

    def _convert_env_var_value(self, value: str) -> Any:
        """
        尝试将环境变量值转换为适当的类型

        Args:
            value: 环境变量字符串值

        Returns:
            转换后的值
        """
        if value.lower() == 'true':
            return True
        if value.lower() == 'false':
            return False
        if value.lower() == 'none':
            return None

        try:
            return int(value)
        except ValueError:
            try:
                return float(value)
            except ValueError:
                pass

        if (value.startswith('{') and value.endswith('}')) or \
           (value.startswith('[') and value.endswith(']')):
            try:
                return json.loads(value)
            except json.JSONDecodeError:
                pass

        return value

    def load_from_file(self, file_path: str) -> None:
        """
        从配置文件加载配置
        支持JSON和YAML格式

        Args:
            file_path: 配置文件路径
        """
        if not os.path.exists(file_path):
            raise ConfigError(f"配置文件不存在: {file_path}", config_name='file', config_value=file_path)

        with open(file_path, 'r', encoding='utf-8') as f:
            try:
                if file_path.endswith('.json'):
                    config = json.load(f)
                elif file_path.endswith(('.yaml', '.yml')):
                    config = yaml.safe_load(f) or {}
                else:
                    raise ConfigError(f"不支持的配置文件格式: {file_path}", config_name='file', config_value=file_path)
            except ConfigError:
                raise
            except Exception as e:
                raise ConfigError(f"加载配置文件失败 {file_path}: {e}", config_name='file', config_value=file_path)

        if not isinstance(config, dict):
            raise ConfigError(f"配置文件顶层必须是映射: {file_path}", config_name='file', config_value=file_path)

        self._file_config = self._deep_merge(self._file_config, config)
        self._merge_configs()
        logger.debug(f"已从 {file_path} 加载配置")

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置值
        支持点分隔的嵌套键访问，如 'log.level'

        Args:
            key: 配置键
            default: 默认值

        Returns:
            配置值
        """
        value: Any = self._active_config
        try:
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def get_float(self, key: str, default: Optional[float] = None) -> float:
        """
        获取浮点型配置值，无法转换时抛出ConfigError

        Args:
            key: 配置键
            default: 默认值

        Returns:
            浮点数
        """
        value = self.get(key, default)
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"配置项 {key} 不是有效数值", config_name=key, config_value=value)

    def set(self, key: str, value: Any) -> None:
        """
        设置配置值
        支持点分隔的嵌套键设置

        Args:
            key: 配置键
            value: 配置值
        """
        keys = key.split('.')
        config = self._active_config
        for k in keys[:-1]:
            config = config.setdefault(k, {})
        config[keys[-1]] = value

    def has(self, key: str) -> bool:
        """
        检查配置是否包含指定键

        Args:
            key: 配置键

        Returns:
            是否包含
        """
        sentinel = object()
        return self.get(key, sentinel) is not sentinel
