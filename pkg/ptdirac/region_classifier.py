"""
参数空间分区
  I.   ν1/√2 < ν2 < ν1      奇异费米子（ExoticI）
  II.  |ν2| < ν1/√2         普通粒子（OrdinaryII，存在平直极限）
  III. −ν1 < ν2 < −ν1/√2    奇异费米子（ExoticIII）
边界 ν2 = ±ν1/√2（极大子）、ν2 = 0（厄米轴）、|ν2| = ν1（异常线）各有独立标签，
|ν2| > ν1 为 PT 对称性破缺区
分类只依赖比值 m2/m1，因此 (m1, m2) 与 (ν1, ν2) 平面上的判定完全相同
"""
import enum
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Sequence, Tuple

import numpy as np

from common.exceptions import DomainError, ParameterError
from config.settings import get_classify_tolerance
from utils.concurrencyutil import ConcurrentExecutor
from utils.logutil import logger

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


class RegionLabel(enum.Enum):
    EXOTIC_I = 'ExoticI'
    ORDINARY_II = 'OrdinaryII'
    EXOTIC_III = 'ExoticIII'
    MAXIMON_BOUNDARY_UPPER = 'MaximonBoundaryUpper'
    MAXIMON_BOUNDARY_LOWER = 'MaximonBoundaryLower'
    HERMITIAN_AXIS = 'HermitianAxis'
    BROKEN_PT = 'BrokenPT'
    EXCEPTIONAL_LINE = 'ExceptionalLine'

    @property
    def is_boundary(self) -> bool:
        return self in _BOUNDARY_LABELS

    @property
    def is_unbroken(self) -> bool:
        """谱为实（异常线上谱为实但不可对角化）"""
        return self is not RegionLabel.BROKEN_PT

    def mirror(self) -> 'RegionLabel':
        """m2 → −m2 下的对应标签"""
        return _MIRROR.get(self, self)


_BOUNDARY_LABELS = frozenset({
    RegionLabel.MAXIMON_BOUNDARY_UPPER,
    RegionLabel.MAXIMON_BOUNDARY_LOWER,
    RegionLabel.HERMITIAN_AXIS,
    RegionLabel.EXCEPTIONAL_LINE,
})

_MIRROR = {
    RegionLabel.EXOTIC_I: RegionLabel.EXOTIC_III,
    RegionLabel.EXOTIC_III: RegionLabel.EXOTIC_I,
    RegionLabel.MAXIMON_BOUNDARY_UPPER: RegionLabel.MAXIMON_BOUNDARY_LOWER,
    RegionLabel.MAXIMON_BOUNDARY_LOWER: RegionLabel.MAXIMON_BOUNDARY_UPPER,
}


def classify(m1: float, m2: float, tol: Optional[float] = None) -> RegionLabel:
    """
    对 (m1, m2) 分区，边界带半宽为 tol·m1

    判定顺序：厄米轴 → 异常线 → 极大子边界 → 破缺区 → 区域 II → 区域 I/III

    Args:
        m1: 质量参数 m1（> 0）
        m2: 质量参数 m2
        tol: 相对容差，默认取配置 classify_tol（1e-9），0 表示开区域约定

    Returns:
        RegionLabel
    """
    if not (math.isfinite(m1) and math.isfinite(m2)):
        raise DomainError(f"质量参数必须是有限实数: m1={m1}, m2={m2}", regime='non-finite',
                          values={'m1': m1, 'm2': m2})
    if m1 <= 0:
        raise ParameterError(f"分区要求 m1 > 0，实际 m1={m1}", param_name='m1', param_value=m1)
    tol = get_classify_tolerance() if tol is None else tol
    if not tol >= 0:
        raise ParameterError(f"分区容差不能为负: {tol}", param_name='classify_tol', param_value=tol)

    band = tol * m1
    a = abs(m2)
    maximon = m1 * _INV_SQRT2
    if a <= band:
        return RegionLabel.HERMITIAN_AXIS
    if abs(a - m1) <= band:
        return RegionLabel.EXCEPTIONAL_LINE
    if abs(a - maximon) <= band:
        return RegionLabel.MAXIMON_BOUNDARY_UPPER if m2 > 0 else RegionLabel.MAXIMON_BOUNDARY_LOWER
    if a > m1:
        return RegionLabel.BROKEN_PT
    if a < maximon:
        return RegionLabel.ORDINARY_II
    return RegionLabel.EXOTIC_I if m2 > 0 else RegionLabel.EXOTIC_III


def classify_nu(nu1: float, nu2: float, tol: Optional[float] = None) -> RegionLabel:
    """(ν1, ν2) 平面上的分区，与 classify 相同"""
    return classify(nu1, nu2, tol)


def classify_by_theta(theta: float, tol: Optional[float] = None) -> RegionLabel:
    """
    按混合角 θ = arcsin(|m2|/m1) 分区（只覆盖 m2 ≥ 0 半平面）

    Args:
        theta: θ ∈ [0, π/2]
        tol: 绝对容差，默认取配置 classify_tol

    Returns:
        RegionLabel
    """
    if not (math.isfinite(theta) and 0.0 <= theta <= math.pi / 2):
        raise DomainError(f"θ 必须在 [0, π/2] 内: {theta}", regime='theta-range', values={'theta': theta})
    tol = get_classify_tolerance() if tol is None else tol
    if theta <= tol:
        return RegionLabel.HERMITIAN_AXIS
    if abs(theta - math.pi / 2) <= tol:
        return RegionLabel.EXCEPTIONAL_LINE
    if abs(theta - math.pi / 4) <= tol:
        return RegionLabel.MAXIMON_BOUNDARY_UPPER
    return RegionLabel.ORDINARY_II if theta < math.pi / 4 else RegionLabel.EXOTIC_I


@dataclass(frozen=True)
class RegionMask:
    """
    图 3 栅格：labels[i][j] 对应格心 (nu1[i], nu2[j])
    """
    nu1: Tuple[float, ...]
    nu2: Tuple[float, ...]
    labels: Tuple[Tuple[RegionLabel, ...], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.nu1), len(self.nu2)

    def column(self, i: int) -> Tuple[RegionLabel, ...]:
        """固定 ν1 = nu1[i] 时沿 ν2 方向的标签序列"""
        return self.labels[i]

    def records(self) -> Iterator[dict]:
        """行优先（ν1 外层、ν2 内层）输出"""
        for x, row in zip(self.nu1, self.labels):
            for y, label in zip(self.nu2, row):
                yield {'nu1': x, 'nu2': y, 'region': label.value}


def _raster_label(nu1: float, nu2: float) -> RegionLabel:
    label = classify(nu1, nu2, 0.0)
    # 厄米轴位于区域 II 内部，栅格上归入 OrdinaryII
    return RegionLabel.ORDINARY_II if label is RegionLabel.HERMITIAN_AXIS else label


def _classify_row(args: Tuple[float, Tuple[float, ...]]) -> Tuple[RegionLabel, ...]:
    nu1, nu2_values = args
    return tuple(_raster_label(nu1, nu2) for nu2 in nu2_values)


def fig3_mask(nu1_grid: Sequence[float], nu2_grid: Sequence[float],
              executor: Optional[ConcurrentExecutor] = None) -> RegionMask:
    """
    在格心上以 tol = 0 分区；ν2 = 0 的格点记为 OrdinaryII，其余边界只在恰好命中时出现

    Args:
        nu1_grid: ν1 > 0 的格心
        nu2_grid: ν2 格心
        executor: 可选并发执行器，按 ν1 行分发，结果按输入顺序重组

    Returns:
        RegionMask
    """
    nu1_values = tuple(float(x) for x in np.asarray(nu1_grid, dtype=float))
    nu2_values = tuple(float(y) for y in np.asarray(nu2_grid, dtype=float))
    if not nu1_values or not nu2_values:
        raise ParameterError("图 3 网格不能为空", param_name='grid')
    tasks = [(x, nu2_values) for x in nu1_values]
    if executor is None:
        rows = [_classify_row(task) for task in tasks]
    else:
        rows = executor.map_ordered(_classify_row, tasks)
    logger.debug(f"图 3 栅格: {len(nu1_values)}×{len(nu2_values)}")
    return RegionMask(nu1=nu1_values, nu2=nu2_values, labels=tuple(rows))


def region_fractions(mask: RegionMask) -> Dict[RegionLabel, float]:
    """
    各标签的格子占比（只列出出现过的标签）

    Returns:
        {RegionLabel: fraction}
    """
    counts = Counter(label for row in mask.labels for label in row)
    total = sum(counts.values())
    return {label: counts[label] / total for label in RegionLabel if counts[label]}
