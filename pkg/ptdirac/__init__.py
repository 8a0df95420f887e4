"""
含 γ5 质量项的 PT 对称 Dirac 哈密顿量数值工具包
"""

from .gamma_algebra import GammaBasis, OperatorMatrix, build_basis
from .dirac_hamiltonian import Momentum, SpectralResult, build_hamiltonian, spectrum
from .pseudo_hermitian_metric import MetricOperator, metric_operator
from .mass_parametrization import BranchId, GeometricParams, MassParams, NuPoint
from .region_classifier import RegionLabel, classify

__version__ = '1.0.0'

__all__ = [
    'GammaBasis',
    'OperatorMatrix',
    'build_basis',
    'Momentum',
    'SpectralResult',
    'build_hamiltonian',
    'spectrum',
    'MetricOperator',
    'metric_operator',
    'BranchId',
    'GeometricParams',
    'MassParams',
    'NuPoint',
    'RegionLabel',
    'classify',
]
