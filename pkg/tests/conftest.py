"""
公共 fixture：固定种子的随机采样器、配置复位
"""
import os
import sys

import numpy as np
import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import settings
from ptdirac.gamma_algebra import build_basis


@pytest.fixture
def clean_settings(monkeypatch):
    """
    清除 PTDIRAC_* 环境变量，用例结束后按原环境重建配置
    """
    for key in list(os.environ):
        if key.startswith('PTDIRAC_'):
            monkeypatch.delenv(key)
    settings.reload()
    yield settings
    monkeypatch.undo()
    settings.reload()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[2, 4], ids=['dim2', 'dim4'])
def basis(request):
    return build_basis(request.param)


@pytest.fixture
def unbroken_samples(rng):
    """
    未破缺区随机样本 (p, m1, m2)，|m2| < m1，远离异常线
    """
    def sample(n: int):
        m1 = rng.uniform(0.1, 10.0, n)
        ratio = rng.uniform(-0.999, 0.999, n)
        p = rng.uniform(-5.0, 5.0, n)
        return list(zip(p, m1, ratio * m1))
    return sample
