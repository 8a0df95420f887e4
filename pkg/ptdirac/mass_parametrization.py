"""
质量参数化
  - 质量上界 m_max = m1²/(2|m2|)，m = √(m1² − m2²) ≤ m_max
  - 双曲参数化 m1 = m·cosh α, m2 = m·sinh α
  - 双分支反解：普通分支（存在平直极限）与奇异分支（不存在平直极限）
  - 几何（de Sitter）参数化 m1 = 2M sin(μ/2), m2 = 2M sin²(μ/2) 及其奇异伙伴
  - 图 1、图 2 的曲线数据

约定：所有参数化映射返回 m2 ≥ 0；m2 的符号由 region_classifier 作为反射单独处理
"""
import enum
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from common.exceptions import DomainError, ParameterError

SQRT2 = math.sqrt(2.0)
# α0 = artanh(1/√2)，ν 在此取最大值 1（极大子）
MAXIMON_ALPHA = math.atanh(1.0 / SQRT2)


class BranchId(enum.Enum):
    """反解的两个分支：ORDINARY 对应上符号，EXOTIC 对应下符号"""
    ORDINARY = 'ordinary'
    EXOTIC = 'exotic'


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} 必须是有限实数: {value}", regime='non-finite', values={name: value})


@dataclass(frozen=True)
class NuPoint:
    """
    以 m_max 为单位的相对质量 ν = m/m_max, ν1 = m1/m_max, ν2 = m2/m_max
    满足 ν1² − ν2² = ν² 与 ν1² = 2ν2
    """
    nu: float
    nu1: float
    nu2: float

    def scaled(self, m_max: float) -> 'MassParams':
        """乘以 m_max 得到 (m1, m2)"""
        return MassParams(self.nu1 * m_max, self.nu2 * m_max)


@dataclass(frozen=True)
class MassParams:
    """
    质量参数对 (m1, m2)；m2 可为负以覆盖区域 II/III
    m1 = 0 只出现在无质量端点 (μ = 0, ν = 0)
    """
    m1: float
    m2: float

    def __post_init__(self):
        _require_finite(m1=self.m1, m2=self.m2)
        if self.m1 < 0:
            raise DomainError(f"m1 不能为负: {self.m1}", regime='negative-m1', values={'m1': self.m1})
        object.__setattr__(self, 'm1', float(self.m1))
        object.__setattr__(self, 'm2', float(self.m2))

    def is_unbroken(self) -> bool:
        """m1² ≥ m2²"""
        return self.m1 * self.m1 >= self.m2 * self.m2

    def m(self) -> float:
        """物理质量 √(m1² − m2²)，仅当 m1² ≥ m2² 时有定义"""
        if not self.is_unbroken():
            raise DomainError("m1² < m2²：物理质量为虚数（PT 对称性破缺）", regime='broken',
                              values={'m1': self.m1, 'm2': self.m2})
        return math.sqrt((self.m1 - abs(self.m2)) * (self.m1 + abs(self.m2)))

    def m_max(self) -> Optional[float]:
        """质量上界 m1²/(2|m2|)；m2 = 0（厄米轴）时无上界，返回 None"""
        return mass_bound(self.m1, self.m2)

    def alpha(self) -> float:
        """双曲角 artanh(m2/m1)，要求 |m2| < m1"""
        if not abs(self.m2) < self.m1:
            raise DomainError("|m2| >= m1 时双曲角无定义", regime='alpha-undefined',
                              values={'m1': self.m1, 'm2': self.m2})
        return math.atanh(self.m2 / self.m1)

    def theta(self) -> float:
        """混合角 arcsin(|m2|/m1) ∈ [0, π/2]"""
        if self.m1 <= 0 or abs(self.m2) > self.m1:
            raise DomainError("θ 只在 m1 > 0 且 0 ≤ |m2| ≤ m1 时有定义", regime='theta-undefined',
                              values={'m1': self.m1, 'm2': self.m2})
        return math.asin(abs(self.m2) / self.m1)

    def theta_from_bound(self) -> float:
        """θ 的另一种表达 arcsin(m1/(2·m_max))"""
        m_max = self.m_max()
        if m_max is None:
            return 0.0
        return math.asin(min(1.0, self.m1 / (2.0 * m_max)))

    def nu_point(self) -> NuPoint:
        """
        以自身 m_max 为单位的 (ν, ν1, ν2)；使用 |m2|

        Returns:
            NuPoint
        """
        m_max = self.m_max()
        if m_max is None:
            raise DomainError("厄米轴上 m_max 无界，ν 无定义", regime='hermitian-axis')
        return NuPoint(self.m() / m_max, self.m1 / m_max, abs(self.m2) / m_max)

    def reflected(self) -> 'MassParams':
        """m2 → −m2"""
        return MassParams(self.m1, -self.m2)


@dataclass(frozen=True)
class GeometricParams:
    """
    几何参数：基本质量 M > 0，de Sitter 角 μ ∈ [0, π/2]，sin μ = m/M
    """
    M: float
    mu: float

    def __post_init__(self):
        _check_geometric(self.M, self.mu)

    def m(self) -> float:
        return self.M * math.sin(self.mu)

    def p5(self, branch: BranchId = BranchId.ORDINARY) -> float:
        """质壳上第五动量分量，奇异分支取负号"""
        return mass_shell_p5(self.M, self.mu, branch)

    def ordinary(self) -> MassParams:
        return geometric_ordinary(self.M, self.mu)

    def exotic(self) -> MassParams:
        return geometric_exotic(self.M, self.mu)


class TanhBranches(NamedTuple):
    """tanh α 的两个根：ordinary ≤ 1/√2 ≤ exotic"""
    ordinary: float
    exotic: float


class Fig1Row(NamedTuple):
    alpha: float
    nu: float
    nu1: float
    nu2: float


class Fig2Row(NamedTuple):
    nu: float
    nu1: float
    nu2: float
    nu3: float
    nu4: float


def mass_bound(m1: float, m2: float) -> Optional[float]:
    """
    质量上界 m_max = m1²/(2|m2|)

    Args:
        m1: 质量参数 m1
        m2: 质量参数 m2

    Returns:
        m_max；m2 = 0 时返回 None 表示无上界（厄米轴）
    """
    _require_finite(m1=m1, m2=m2)
    if m2 == 0:
        return None
    return m1 * m1 / (2.0 * abs(m2))


def hyperbolic_params(m: float, alpha: float) -> MassParams:
    """
    双曲参数化 m1 = m·cosh α, m2 = m·sinh α

    Args:
        m: 物理质量（> 0）
        alpha: 双曲角

    Returns:
        MassParams
    """
    _require_finite(m=m, alpha=alpha)
    if m <= 0:
        raise DomainError(f"物理质量必须为正: {m}", regime='non-positive-mass', values={'m': m})
    return MassParams(m * math.cosh(alpha), m * math.sinh(alpha))


def _check_nu(nu: float) -> None:
    if not (math.isfinite(nu) and 0.0 <= nu <= 1.0):
        raise DomainError(f"ν 必须在 [0, 1] 内（ν > 1 违反质量上界）: {nu}", regime='nu-range', values={'nu': nu})


def _one_minus_sqrt(nu: float) -> Tuple[float, float]:
    """返回 (1 − √(1−ν²), 1 + √(1−ν²))，前者用 ν²/(1+s) 避免相消"""
    s = math.sqrt((1.0 - nu) * (1.0 + nu))
    return nu * nu / (1.0 + s), 1.0 + s


def tanh_alpha_branches(nu: float) -> TanhBranches:
    """
    tanh α = √((1 ± √(1−ν²))/2) 的两个根，均满足 ν = 2t·√(1−t²)

    Args:
        nu: m/m_max ∈ [0, 1]

    Returns:
        TanhBranches(ordinary, exotic)
    """
    _check_nu(nu)
    lower, upper = _one_minus_sqrt(nu)
    return TanhBranches(math.sqrt(lower / 2.0), math.sqrt(upper / 2.0))


def branch_point(nu: float, branch: BranchId) -> NuPoint:
    """
    ν1 = √2·√(1 ∓ √(1−ν²)), ν2 = 1 ∓ √(1−ν²)；普通分支取上符号

    Args:
        nu: m/m_max ∈ [0, 1]
        branch: 分支

    Returns:
        NuPoint
    """
    _check_nu(nu)
    lower, upper = _one_minus_sqrt(nu)
    nu2 = lower if branch is BranchId.ORDINARY else upper
    return NuPoint(nu=nu, nu1=math.sqrt(2.0 * nu2), nu2=nu2)


def _check_geometric(M: float, mu: float) -> None:
    _require_finite(M=M, mu=mu)
    if M <= 0:
        raise DomainError(f"基本质量 M 必须为正: {M}", regime='non-positive-M', values={'M': M})
    if not 0.0 <= mu <= math.pi / 2:
        raise DomainError(f"μ 必须在 [0, π/2] 内: {mu}", regime='mu-range', values={'mu': mu})


def geometric_ordinary(M: float, mu: float) -> MassParams:
    """
    m1 = 2M sin(μ/2), m2 = 2M sin²(μ/2)；m = M sin μ，m_max = M
    """
    _check_geometric(M, mu)
    s = math.sin(mu / 2.0)
    return MassParams(2.0 * M * s, 2.0 * M * s * s)


def geometric_exotic(M: float, mu: float) -> MassParams:
    """
    m3 = 2M cos(μ/2), m4 = 2M cos²(μ/2)；与普通伙伴同一 m = M sin μ，但 M → ∞ 时无极限
    """
    _check_geometric(M, mu)
    c = math.cos(mu / 2.0)
    return MassParams(2.0 * M * c, 2.0 * M * c * c)


def mass_shell_p5(M: float, mu: float, branch: BranchId = BranchId.ORDINARY) -> float:
    """
    质壳上 p5 = ±√(M² − m²) = ±M cos μ
    奇异伙伴等价于普通映射在 μ' = π − μ 处取值，p5 因而反号
    """
    _check_geometric(M, mu)
    p5 = M * math.cos(mu)
    return p5 if branch is BranchId.ORDINARY else -p5


def geometric_params(params: MassParams) -> GeometricParams:
    """
    几何反映射 M = m_max, μ = arcsin(m/m_max)

    Args:
        params: 未破缺区、m2 ≠ 0 的质量参数

    Returns:
        GeometricParams
    """
    m_max = params.m_max()
    if m_max is None:
        raise DomainError("厄米轴上 m_max 无界，几何参数无定义", regime='hermitian-axis')
    return GeometricParams(M=m_max, mu=math.asin(min(1.0, params.m() / m_max)))


def branch_of(params: MassParams) -> BranchId:
    """
    普通分支当且仅当 |m2| ≤ m1/√2（极大子归入普通分支，两分支在此重合）
    """
    if not params.is_unbroken():
        raise DomainError("破缺区不属于任何分支", regime='broken',
                          values={'m1': params.m1, 'm2': params.m2})
    return BranchId.ORDINARY if 2.0 * params.m2 * params.m2 <= params.m1 * params.m1 else BranchId.EXOTIC


def reconstruct(params: MassParams) -> MassParams:
    """
    由自身 (m, m_max) 经所属分支重新导出 (m1, m2)，符号按原 m2 恢复

    Args:
        params: 未破缺区的质量参数

    Returns:
        重建的 MassParams
    """
    m_max = params.m_max()
    if m_max is None:
        return MassParams(params.m1, 0.0)
    nu = min(1.0, params.m() / m_max)
    point = branch_point(nu, branch_of(params))
    rebuilt = point.scaled(m_max)
    return MassParams(rebuilt.m1, math.copysign(rebuilt.m2, params.m2))


def linear_grid(lo: float, hi: float, steps: int) -> np.ndarray:
    """
    含两端点的等距网格，末点精确等于 hi

    Args:
        lo: 下端
        hi: 上端
        steps: 点数（≥ 2）

    Returns:
        一维数组
    """
    if steps < 2:
        raise ParameterError(f"网格点数必须 >= 2: {steps}", param_name='steps', param_value=steps)
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise ParameterError(f"网格范围无效: [{lo}, {hi}]", param_name='range', param_value=(lo, hi))
    grid = lo + np.arange(steps) * (hi - lo) / (steps - 1)
    grid[-1] = hi
    return grid


def cell_centers(lo: float, hi: float, n: int) -> np.ndarray:
    """
    把 [lo, hi] 等分为 n 格，返回格心 lo + (2i+1)(hi−lo)/(2n)

    Args:
        lo: 下端
        hi: 上端
        n: 格数

    Returns:
        一维数组
    """
    if n < 1:
        raise ParameterError(f"格数必须 >= 1: {n}", param_name='steps', param_value=n)
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise ParameterError(f"网格范围无效: [{lo}, {hi}]", param_name='range', param_value=(lo, hi))
    return lo + (2 * np.arange(n) + 1) * (hi - lo) / (2 * n)


def fig1_curves(alpha_grid: Sequence[float]) -> List[Fig1Row]:
    """
    图 1：ν1 = 2 tanh α, ν2 = 2 tanh²α, ν = 2 sinh α / cosh²α

    Args:
        alpha_grid: α ≥ 0 的网格

    Returns:
        Fig1Row 列表
    """
    alphas = np.asarray(alpha_grid, dtype=float)
    if not np.all(np.isfinite(alphas)) or np.any(alphas < 0):
        raise DomainError("α 网格必须是非负有限数", regime='alpha-grid')
    t = np.tanh(alphas)
    with np.errstate(over='ignore'):
        nu = 2.0 * t / np.cosh(alphas)
    nu1 = 2.0 * t
    nu2 = 2.0 * t * t
    return [Fig1Row(float(a), float(v), float(v1), float(v2)) for a, v, v1, v2 in zip(alphas, nu, nu1, nu2)]


def locate_maximon(alpha_grid: Sequence[float]) -> Tuple[float, float]:
    """
    在网格上定位 ν(α) 的最大值

    Returns:
        (α, ν)
    """
    rows = fig1_curves(alpha_grid)
    if not rows:
        raise ParameterError("α 网格为空", param_name='alpha_grid')
    best = max(rows, key=lambda row: row.nu)
    return best.alpha, best.nu


def fig2_curves(nu_grid: Sequence[float]) -> List[Fig2Row]:
    """
    图 2：普通分支 (ν1, ν2) 与奇异分支 (ν3, ν4) 随 ν 的变化，二者在 ν = 1 相交

    Args:
        nu_grid: [0, 1] 内的网格

    Returns:
        Fig2Row 列表
    """
    rows = []
    for nu in nu_grid:
        nu = float(nu)
        ordinary = branch_point(nu, BranchId.ORDINARY)
        exotic = branch_point(nu, BranchId.EXOTIC)
        rows.append(Fig2Row(nu, ordinary.nu1, ordinary.nu2, exotic.nu1, exotic.nu2))
    return rows
