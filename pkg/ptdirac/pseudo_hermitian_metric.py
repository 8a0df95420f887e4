"""
赝厄米度规算符 η = exp(a·γ5)，tanh a = m2/m1
满足 η H η⁻¹ = H⁺；ρ = exp((a/2)·γ5) = η^{1/2} 给出厄米对应 h = ρ H ρ⁻¹
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from common.exceptions import DomainError
from ptdirac.dirac_hamiltonian import MomentumLike, build_hamiltonian
from ptdirac.gamma_algebra import (
    GammaBasis,
    OperatorMatrix,
    adjoint,
    frobenius_norm,
    gamma5_exponential,
    inverse,
    multiply,
    subtract,
)
from utils.logutil import logger

_NORM_FLOOR = np.finfo(float).tiny


@dataclass(frozen=True)
class MetricOperator:
    """
    度规算符
    eta 与 gamma5_exponential(basis, alpha_exponent) 完全一致，eta_inv 取指数 −alpha_exponent
    """
    eta: OperatorMatrix
    eta_inv: OperatorMatrix
    alpha_exponent: float
    basis_dim: int

    def eigenvalues(self) -> np.ndarray:
        """η 的本征值（全部为正，升序）"""
        return np.linalg.eigvalsh(self.eta.data)

    def condition_number(self) -> float:
        """条件数 e^{2|a|}"""
        return math.exp(2.0 * abs(self.alpha_exponent))


def metric_exponent(m1: float, m2: float) -> float:
    """
    度规指数 a = artanh(m2/m1)，要求 m1 > 0 且 |m2| < m1

    Args:
        m1: 质量参数 m1
        m2: 质量参数 m2

    Returns:
        a
    """
    if not (math.isfinite(m1) and math.isfinite(m2)):
        raise DomainError(f"质量参数必须是有限实数: m1={m1}, m2={m2}", regime='non-finite')
    if m1 <= 0:
        raise DomainError(f"度规要求 m1 > 0，实际 m1={m1}", regime='non-positive-m1', values={'m1': m1})
    if abs(m2) >= m1:
        regime = 'exceptional' if abs(m2) == m1 else 'broken'
        raise DomainError(
            f"|m2| >= m1 时不存在此形式的正定度规（{'异常点' if regime == 'exceptional' else 'PT 对称性破缺'}）",
            regime=regime, values={'m1': m1, 'm2': m2})
    return math.atanh(m2 / m1)


def metric_operator(basis: GammaBasis, m1: float, m2: float) -> MetricOperator:
    """
    构造度规算符 η = exp(a·γ5)

    Args:
        basis: γ矩阵表示
        m1: 质量参数 m1（> 0）
        m2: 质量参数 m2（|m2| < m1）

    Returns:
        MetricOperator
    """
    a = metric_exponent(m1, m2)
    eta = gamma5_exponential(basis, a)
    eta_inv = gamma5_exponential(basis, -a)
    logger.debug(f"度规算符: m1={m1}, m2={m2}, a={a:.12g}")
    return MetricOperator(eta=eta, eta_inv=eta_inv, alpha_exponent=a, basis_dim=basis.dim)


def verify_intertwining(H: OperatorMatrix, H_adj: OperatorMatrix, eta: OperatorMatrix,
                        eta_inv: Optional[OperatorMatrix] = None) -> float:
    """
    相对 Frobenius 残差 ‖ηHη⁻¹ − H⁺‖ / max(‖H‖, ε)，只做诊断不因残差大而报错

    Args:
        H: 哈密顿量
        H_adj: 其厄米共轭
        eta: 度规（必须可逆）
        eta_inv: 已知的 η⁻¹（如 MetricOperator.eta_inv），缺省时数值求逆

    Returns:
        相对残差
    """
    if eta_inv is None:
        eta_inv = inverse(eta)
    transformed = multiply(multiply(eta, H), eta_inv)
    residual = frobenius_norm(subtract(transformed, H_adj))
    return residual / max(frobenius_norm(H), _NORM_FLOOR)


def hermiticity_residual(h: OperatorMatrix) -> float:
    """相对残差 ‖h − h⁺‖ / max(‖h‖, ε)"""
    return frobenius_norm(subtract(h, adjoint(h))) / max(frobenius_norm(h), _NORM_FLOOR)


def hermitian_counterpart(basis: GammaBasis, p: MomentumLike, m1: float, m2: float) -> OperatorMatrix:
    """
    厄米对应 h = ρ H ρ⁻¹，ρ = exp((a/2)·γ5)

    Args:
        basis: γ矩阵表示
        p: 动量
        m1: 质量参数 m1
        m2: 质量参数 m2（|m2| < m1）

    Returns:
        厄米矩阵，与 H 等谱
    """
    a = metric_exponent(m1, m2)
    H = build_hamiltonian(basis, p, m1, m2)
    rho = gamma5_exponential(basis, a / 2.0)
    rho_inv = gamma5_exponential(basis, -a / 2.0)
    return multiply(multiply(rho, H), rho_inv)
