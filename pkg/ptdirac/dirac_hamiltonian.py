"""
含 γ5 质量项的修正 Dirac 哈密顿量 H = α·p + β(m1 + m2·γ5)
谱：闭式解 ±√(p² + m1² − m2²) 与稠密数值本征值交叉校验；可对角化判定用数值秩
"""
import cmath
import math
import numbers
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from common.exceptions import DimensionError, DomainError, VerificationError
from config.settings import get_cross_check_tolerance, get_rank_tolerance, get_tolerance
from ptdirac.gamma_algebra import (
    GammaBasis,
    HamiltonianProvenance,
    OperatorMatrix,
    add,
    frobenius_norm,
    multiply,
    scale,
)
from utils.logutil import logger

# 近亏损（异常点附近）时数值本征值精度只有 ~√ε
_NEAR_DEFECTIVE_SCALE = 100.0 * math.sqrt(np.finfo(float).eps)


@dataclass(frozen=True)
class Momentum:
    """
    动量（自然单位），dim 2 时 1 个分量，dim 4 时 3 个分量
    """
    components: Tuple[float, ...]

    def __post_init__(self):
        components = tuple(float(c) for c in self.components)
        if not components or not all(math.isfinite(c) for c in components):
            raise DomainError(f"动量分量必须是有限实数: {self.components}", regime='non-finite')
        object.__setattr__(self, 'components', components)

    def magnitude(self) -> float:
        return math.sqrt(sum(c * c for c in self.components))

    @classmethod
    def along_axis(cls, p: float, spatial_dim: int) -> 'Momentum':
        """沿第一空间轴的动量"""
        return cls((p,) + (0.0,) * (spatial_dim - 1))


MomentumLike = Union[Momentum, float, Sequence[float]]


def as_momentum(p: MomentumLike, basis: GammaBasis) -> Momentum:
    """
    把标量或分量序列转换为与表示维数匹配的 Momentum；标量取第一空间轴方向

    Args:
        p: 动量
        basis: γ矩阵表示

    Returns:
        Momentum
    """
    if isinstance(p, Momentum):
        momentum = p
    elif isinstance(p, numbers.Real):
        momentum = Momentum.along_axis(float(p), basis.spatial_dim)
    else:
        momentum = Momentum(tuple(p))
    if len(momentum.components) != basis.spatial_dim:
        raise DimensionError(f"动量分量数 {len(momentum.components)} 与表示不匹配",
                             expected=basis.spatial_dim, actual=len(momentum.components))
    return momentum


@dataclass(frozen=True)
class SpectralResult:
    """
    谱计算结果
    eigenvalues 按 (实部升序, 虚部升序) 排列；pairing 为 (i, j) 下标对，λj = conj(λi)
    """
    eigenvalues: Tuple[complex, ...]
    is_real: bool
    is_diagonalizable: bool
    pairing: Tuple[Tuple[int, int], ...]
    numeric_eigenvalues: Tuple[complex, ...]
    cross_check_residual: Optional[float] = None

    @property
    def is_conjugate_closed(self) -> bool:
        covered = set()
        for i, j in self.pairing:
            covered.update((i, j))
        return len(covered) == len(self.eigenvalues)


def _check_masses(m1: float, m2: float) -> None:
    if not (math.isfinite(m1) and math.isfinite(m2)):
        raise DomainError(f"质量参数必须是有限实数: m1={m1}, m2={m2}", regime='non-finite',
                          values={'m1': m1, 'm2': m2})


def build_hamiltonian(basis: GammaBasis, p: MomentumLike, m1: float, m2: float) -> OperatorMatrix:
    """
    构造 H = α·p + β·m1 + β·γ5·m2

    Args:
        basis: γ矩阵表示
        p: 动量
        m1: 质量参数 m1
        m2: γ5 质量参数 m2

    Returns:
        附带生成参数的 OperatorMatrix
    """
    momentum = as_momentum(p, basis)
    _check_masses(m1, m2)

    kinetic = scale(basis.alpha_matrices[0], 0.0)
    for alpha_i, p_i in zip(basis.alpha_matrices, momentum.components):
        kinetic = add(kinetic, scale(alpha_i, p_i))
    mass = add(scale(basis.beta, m1), scale(multiply(basis.beta, basis.gamma5), m2))
    total = add(kinetic, mass)
    return OperatorMatrix(total.data, provenance=HamiltonianProvenance(momentum.magnitude(), float(m1), float(m2)))


def build_adjoint_hamiltonian(basis: GammaBasis, p: MomentumLike, m1: float, m2: float) -> OperatorMatrix:
    """
    H⁺ = α·p + β(m1 − γ5·m2)，即 m2 取反
    """
    return build_hamiltonian(basis, p, m1, -m2)


def build_hamiltonian_theta(basis: GammaBasis, p: MomentumLike, m1: float, theta: float) -> OperatorMatrix:
    """
    θ 形式 H = α·p + β·m1·(1 + γ5·sin θ)，θ ∈ [0, π/2]

    Args:
        basis: γ矩阵表示
        p: 动量
        m1: 质量参数 m1
        theta: 混合角

    Returns:
        OperatorMatrix
    """
    if not (0.0 <= theta <= math.pi / 2):
        raise DomainError(f"θ 必须在 [0, π/2] 内: {theta}", regime='theta-range', values={'theta': theta})
    return build_hamiltonian(basis, p, m1, m1 * math.sin(theta))


def dirac_reference(basis: GammaBasis, p: MomentumLike, m: float) -> OperatorMatrix:
    """普通（厄米）Dirac 哈密顿量 α·p + β·m"""
    return build_hamiltonian(basis, p, m, 0.0)


def physical_mass(m1: float, m2: float) -> complex:
    """
    物理质量 m = √(m1² − m2²)；m1² < m2² 时为纯虚数

    Returns:
        复数
    """
    _check_masses(m1, m2)
    return cmath.sqrt(m1 * m1 - m2 * m2)


def pt_unbroken(m1: float, m2: float) -> bool:
    """所有动量下谱均为实数（等价于 m1² ≥ m2²）"""
    _check_masses(m1, m2)
    return m1 * m1 >= m2 * m2


def dispersion(p_mag: float, m1: float, m2: float) -> Tuple[complex, complex]:
    """
    色散关系 E = ±√(p² + m1² − m2²)

    Args:
        p_mag: 动量大小
        m1: 质量参数 m1
        m2: 质量参数 m2

    Returns:
        (−E, +E)，+E 取 Re ≥ 0、Im ≥ 0 的分支
    """
    if not math.isfinite(p_mag) or p_mag < 0:
        raise DomainError(f"动量大小必须是非负有限数: {p_mag}", regime='momentum', values={'p_mag': p_mag})
    _check_masses(m1, m2)
    energy = cmath.sqrt(p_mag * p_mag + m1 * m1 - m2 * m2)
    return -energy, energy


def closed_form_eigenvalues(provenance: HamiltonianProvenance, dim: int) -> Tuple[complex, ...]:
    """闭式本征值，每个符号的重数为 dim/2"""
    minus, plus = dispersion(provenance.p_mag, provenance.m1, provenance.m2)
    half = dim // 2
    return (minus,) * half + (plus,) * half


def _sort_eigenvalues(values: Sequence[complex], scale_: float) -> Tuple[complex, ...]:
    # 实部先按相对精度取整，避免共轭对因 1e-17 量级噪声而次序颠倒
    def key(z: complex):
        return (round(z.real / scale_, 9), z.imag)
    return tuple(sorted((complex(v) for v in values), key=key))


def _conjugate_pairing(values: Sequence[complex], tol: float, pair_tol: float) -> Tuple[Tuple[int, int], ...]:
    pairs = []
    paired = set()
    for i, z in enumerate(values):
        if i in paired:
            continue
        if abs(z.imag) <= tol:
            pairs.append((i, i))
            paired.add(i)
            continue
        best, best_dist = None, pair_tol
        for j in range(i + 1, len(values)):
            if j in paired:
                continue
            dist = abs(values[j] - z.conjugate())
            if dist <= best_dist:
                best, best_dist = j, dist
        if best is not None:
            pairs.append((i, best))
            paired.update((i, best))
    return tuple(pairs)


def _cluster(values: Sequence[complex], tol: float):
    clusters = []
    for z in values:
        for group in clusters:
            if abs(group[0] - z) <= tol:
                group.append(z)
                break
        else:
            clusters.append([z])
    return clusters


def _is_diagonalizable(H: OperatorMatrix, eigenvalues: Sequence[complex], rank_tol: float) -> bool:
    # 聚类与秩阈值都相对 ‖H‖，小尺度的 Jordan 块同样能识别
    norm = frobenius_norm(H)
    if norm == 0.0:
        return True
    threshold = rank_tol * norm
    for group in _cluster(eigenvalues, _NEAR_DEFECTIVE_SCALE * norm):
        center = complex(np.mean(group))
        shifted = H.data - center * np.eye(H.dim)
        singular_values = scipy.linalg.svdvals(shifted)
        rank = int(np.sum(singular_values > threshold))
        geometric = H.dim - rank
        if geometric < len(group):
            return False
    return True


def spectrum(H: OperatorMatrix, tol: Optional[float] = None, verify: bool = True,
             cross_check_tol: Optional[float] = None, rank_tol: Optional[float] = None) -> SpectralResult:
    """
    计算谱：构造器生成的矩阵用闭式解，并与数值本征值交叉校验

    Args:
        H: 方阵，dim ∈ {2, 4}
        tol: 实性判定容差 |Im λ| ≤ tol，默认取配置（1e-10）
        verify: 是否执行闭式解/数值解交叉校验
        cross_check_tol: 交叉校验容差（相对 max(1, ‖H‖)）
        rank_tol: 数值秩阈值（相对 ‖H‖）

    Returns:
        SpectralResult
    """
    if not isinstance(H, OperatorMatrix):
        H = OperatorMatrix(np.asarray(H))
    tol = get_tolerance() if tol is None else tol
    if tol <= 0:
        raise DomainError(f"容差必须为正: {tol}", regime='tolerance', values={'tol': tol})
    cross_check_tol = get_cross_check_tolerance() if cross_check_tol is None else cross_check_tol
    rank_tol = get_rank_tolerance() if rank_tol is None else rank_tol

    scale_ = max(1.0, frobenius_norm(H))
    numeric = _sort_eigenvalues(scipy.linalg.eigvals(H.data), scale_)
    near_defective = False
    residual = None

    if H.provenance is not None:
        eigenvalues = _sort_eigenvalues(closed_form_eigenvalues(H.provenance, H.dim), scale_)
        near_defective = abs(eigenvalues[-1] - eigenvalues[0]) <= _NEAR_DEFECTIVE_SCALE * scale_
        if verify:
            residual = max(abs(a - b) for a, b in zip(eigenvalues, numeric))
            allowed = cross_check_tol * scale_
            if near_defective:
                allowed = max(allowed, _NEAR_DEFECTIVE_SCALE * scale_)
                logger.warning(f"接近异常点，交叉校验容差放宽到 {allowed:.3e}")
            if residual > allowed:
                raise VerificationError("闭式本征值与数值本征值不一致", residual=residual, tolerance=allowed)
            logger.debug(f"谱交叉校验通过: residual={residual:.3e}, allowed={allowed:.3e}")
    else:
        eigenvalues = numeric

    is_real = all(abs(z.imag) <= tol for z in eigenvalues)
    pair_tol = max(cross_check_tol * scale_, _NEAR_DEFECTIVE_SCALE * scale_ if near_defective else 0.0)
    pairing = _conjugate_pairing(eigenvalues, tol, pair_tol)
    diagonalizable = _is_diagonalizable(H, eigenvalues, rank_tol)

    return SpectralResult(
        eigenvalues=eigenvalues,
        is_real=is_real,
        is_diagonalizable=diagonalizable,
        pairing=pairing,
        numeric_eigenvalues=numeric,
        cross_check_residual=residual,
    )
