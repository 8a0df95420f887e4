"""
γ矩阵表示与小型稠密复矩阵运算
dim=2 为 1+1 维表示 γ0=[[0,1],[1,0]]、γ1=[[0,1],[-1,0]]、γ5=-γ0γ1=diag(1,-1)；
dim=4 为 Dirac 表示 β=diag(1,1,-1,-1)、γ^i=[[0,σi],[-σi,0]]、γ5=[[0,1],[1,0]]（2×2 分块）
所有矩阵构造后只读，运算均为纯函数
"""
import functools
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Tuple

import numpy as np

from common.exceptions import DimensionError, DomainError

SUPPORTED_DIMS = (2, 4)


@dataclass(frozen=True)
class HamiltonianProvenance:
    """构造器附加在哈密顿量上的生成参数，供谱计算使用闭式解"""
    p_mag: float
    m1: float
    m2: float


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """
    dim×dim 复矩阵（dim ∈ {2, 4}），值类型
    """
    data: np.ndarray
    provenance: Optional[HamiltonianProvenance] = field(default=None, compare=False)

    def __post_init__(self):
        array = np.array(self.data, dtype=complex, copy=True)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DimensionError(f"算符矩阵必须是方阵，实际形状为 {array.shape}",
                                 expected='square', actual=array.shape)
        if array.shape[0] not in SUPPORTED_DIMS:
            raise DimensionError(f"不支持的矩阵维数: {array.shape[0]}",
                                 expected=SUPPORTED_DIMS, actual=array.shape[0])
        array.setflags(write=False)
        object.__setattr__(self, 'data', array)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def entries(self) -> Tuple[complex, ...]:
        """按行优先返回全部元素"""
        return tuple(complex(x) for x in self.data.ravel())

    def to_array(self) -> np.ndarray:
        """返回可写副本"""
        return np.array(self.data, copy=True)

    def allclose(self, other: 'OperatorMatrix', atol: float = 1e-12) -> bool:
        _check_conformable(self, other)
        return bool(np.allclose(self.data, other.data, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        return f"OperatorMatrix(dim={self.dim}, data={self.data.tolist()!r})"


@dataclass(frozen=True)
class GammaBasis:
    """
    一组具体的γ矩阵表示
    gamma_spatial 长度：dim 2 为 1，dim 4 为 3；alpha_matrices[i] = γ0·γi
    """
    dim: int
    gamma0: OperatorMatrix
    gamma_spatial: Tuple[OperatorMatrix, ...]
    gamma5: OperatorMatrix
    alpha_matrices: Tuple[OperatorMatrix, ...]

    @property
    def beta(self) -> OperatorMatrix:
        return self.gamma0

    @property
    def spatial_dim(self) -> int:
        return len(self.gamma_spatial)

    def gammas(self) -> Tuple[OperatorMatrix, ...]:
        """(γ0, γ1, ..., γd)"""
        return (self.gamma0,) + self.gamma_spatial

    def clifford_residual(self) -> float:
        """
        {γμ, γν} - 2η^{μν}·1 的最大 Frobenius 残差，度规符号 (+,-,...)

        Returns:
            最大残差
        """
        one = identity(self.dim)
        residual = 0.0
        gammas = self.gammas()
        for mu, g_mu in enumerate(gammas):
            for nu, g_nu in enumerate(gammas):
                metric = 0.0 if mu != nu else (1.0 if mu == 0 else -1.0)
                anti = add(multiply(g_mu, g_nu), multiply(g_nu, g_mu))
                residual = max(residual, frobenius_norm(subtract(anti, scale(one, 2.0 * metric))))
        return residual

    def gamma5_residual(self) -> float:
        """
        γ5² = 1、γ5 与各 γμ 反对易、与各 αi 对易的最大残差

        Returns:
            最大残差
        """
        one = identity(self.dim)
        residual = frobenius_norm(subtract(multiply(self.gamma5, self.gamma5), one))
        for g in self.gammas():
            anti = add(multiply(self.gamma5, g), multiply(g, self.gamma5))
            residual = max(residual, frobenius_norm(anti))
        for a in self.alpha_matrices:
            residual = max(residual, frobenius_norm(commutator(self.gamma5, a)))
        return residual


def _as_operator(array: Any) -> OperatorMatrix:
    return OperatorMatrix(np.asarray(array, dtype=complex))


def _check_conformable(a: OperatorMatrix, b: OperatorMatrix) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"矩阵维数不匹配: {a.dim} 与 {b.dim}", expected=a.dim, actual=b.dim)


def identity(dim: int) -> OperatorMatrix:
    """dim 维单位矩阵"""
    return _as_operator(np.eye(dim))


def multiply(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    _check_conformable(a, b)
    return _as_operator(a.data @ b.data)


def add(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    _check_conformable(a, b)
    return _as_operator(a.data + b.data)


def subtract(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    _check_conformable(a, b)
    return _as_operator(a.data - b.data)


def scale(a: OperatorMatrix, factor: complex) -> OperatorMatrix:
    return _as_operator(a.data * factor)


def adjoint(a: OperatorMatrix) -> OperatorMatrix:
    """共轭转置"""
    return _as_operator(a.data.conj().T)


def frobenius_norm(a: OperatorMatrix) -> float:
    return float(np.linalg.norm(a.data, 'fro'))


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """[A, B] = AB - BA"""
    return subtract(multiply(a, b), multiply(b, a))


def trace(a: OperatorMatrix) -> complex:
    return complex(np.trace(a.data))


def determinant(a: OperatorMatrix) -> complex:
    return complex(np.linalg.det(a.data))


def inverse(a: OperatorMatrix) -> OperatorMatrix:
    """
    矩阵求逆，奇异时抛出 DomainError
    """
    try:
        return _as_operator(np.linalg.inv(a.data))
    except np.linalg.LinAlgError:
        raise DomainError("矩阵奇异，无法求逆", regime='singular')


def _basis_2d() -> GammaBasis:
    gamma0 = _as_operator([[0, 1], [1, 0]])
    gamma1 = _as_operator([[0, 1], [-1, 0]])
    gamma5 = scale(multiply(gamma0, gamma1), -1.0)
    return GammaBasis(
        dim=2,
        gamma0=gamma0,
        gamma_spatial=(gamma1,),
        gamma5=gamma5,
        alpha_matrices=(multiply(gamma0, gamma1),),
    )


def _basis_4d() -> GammaBasis:
    zero = np.zeros((2, 2), dtype=complex)
    eye = np.eye(2, dtype=complex)
    pauli = (
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    )
    gamma0 = _as_operator(np.block([[eye, zero], [zero, -eye]]))
    spatial = tuple(_as_operator(np.block([[zero, s], [-s, zero]])) for s in pauli)
    gamma5 = _as_operator(np.block([[zero, eye], [eye, zero]]))
    return GammaBasis(
        dim=4,
        gamma0=gamma0,
        gamma_spatial=spatial,
        gamma5=gamma5,
        alpha_matrices=tuple(multiply(gamma0, g) for g in spatial),
    )


@functools.lru_cache(maxsize=None)
def build_basis(dim: int) -> GammaBasis:
    """
    构造γ矩阵表示

    Args:
        dim: 旋量维数，2（1+1 维）或 4（3+1 维，Dirac 表示）

    Returns:
        GammaBasis，元素只含 0、±1、±i
    """
    if dim == 2:
        return _basis_2d()
    if dim == 4:
        return _basis_4d()
    raise DimensionError(f"不支持的表示维数: {dim}，仅支持 2 或 4", expected=SUPPORTED_DIMS, actual=dim)


def gamma5_exponential(basis: GammaBasis, a: float) -> OperatorMatrix:
    """
    exp(a·γ5) = e^a·(1 + γ5)/2 + e^{−a}·(1 − γ5)/2（γ5² = 1，两项为 γ5 的本征投影）
    |a| 很大时 e^{−a} 分量仍保持相对精度

    Args:
        basis: γ矩阵表示
        a: 实指数

    Returns:
        厄米正定矩阵
    """
    if not math.isfinite(a):
        raise DomainError(f"指数必须是有限实数: {a}", regime='non-finite', values={'a': a})
    unit = identity(basis.dim)
    upper = scale(add(unit, basis.gamma5), 0.5)
    lower = scale(subtract(unit, basis.gamma5), 0.5)
    return add(scale(upper, math.exp(a)), scale(lower, math.exp(-a)))
