"""
质量参数化测试
"""
import math

import numpy as np
import pytest

from common.exceptions import DomainError, ParameterError
from ptdirac.dirac_hamiltonian import physical_mass
from ptdirac.mass_parametrization import (
    MAXIMON_ALPHA,
    SQRT2,
    BranchId,
    GeometricParams,
    MassParams,
    branch_of,
    branch_point,
    cell_centers,
    fig1_curves,
    fig2_curves,
    geometric_exotic,
    geometric_ordinary,
    geometric_params,
    hyperbolic_params,
    linear_grid,
    locate_maximon,
    mass_bound,
    mass_shell_p5,
    reconstruct,
    tanh_alpha_branches,
)


class TestMassBound:
    """m_max = m1²/(2|m2|)"""

    def test_examples(self):
        assert mass_bound(1.0, 0.5) == 1.0
        assert mass_bound(5.0, 4.0) == 3.125
        assert mass_bound(5.0, -4.0) == 3.125

    def test_maximon_attains_bound(self):
        assert mass_bound(SQRT2, 1.0) == pytest.approx(1.0, abs=1e-15)
        assert MassParams(SQRT2, 1.0).m() == pytest.approx(1.0, abs=1e-15)

    def test_hermitian_axis_unbounded(self):
        assert mass_bound(1.0, 0.0) is None
        assert MassParams(1.0, 0.0).m_max() is None

    def test_bound_theorem(self, rng):
        m1 = rng.uniform(0.01, 100.0, 100000)
        m2 = rng.uniform(-1.0, 1.0, 100000) * m1
        for a, b in zip(m1, m2):
            if b == 0:
                continue
            assert physical_mass(a, b).real <= mass_bound(a, b) * (1 + 1e-12)

    def test_equality_only_on_maximon_line(self, rng):
        for m in rng.uniform(0.1, 10.0, 1000):
            params = hyperbolic_params(m, MAXIMON_ALPHA)
            assert abs(params.m2 * SQRT2 - params.m1) <= 1e-9 * params.m1
            assert params.m() == pytest.approx(params.m_max(), rel=1e-12)
        # 离开极大子线时严格小于上界
        off = MassParams(1.0, 0.5)
        assert off.m() < off.m_max()


class TestMassParams:
    """导出量"""

    def test_negative_m1_rejected(self):
        with pytest.raises(DomainError):
            MassParams(-1.0, 0.0)

    def test_broken_mass_rejected(self):
        with pytest.raises(DomainError):
            MassParams(1.0, 2.0).m()

    def test_alpha_requires_strict_inequality(self):
        assert MassParams(5.0, 4.0).alpha() == pytest.approx(math.atanh(0.8))
        with pytest.raises(DomainError):
            MassParams(1.0, 1.0).alpha()

    def test_theta_expressions_agree(self, rng):
        for m1, ratio in zip(rng.uniform(0.1, 10, 1000), rng.uniform(0.01, 1.0, 1000)):
            params = MassParams(m1, ratio * m1)
            assert params.theta() == pytest.approx(params.theta_from_bound(), abs=1e-12)

    def test_theta_at_maximon(self):
        assert MassParams(SQRT2, 1.0).theta() == pytest.approx(math.pi / 4, abs=1e-12)

    def test_theta_domain_endpoints(self):
        assert MassParams(2.0, 0.0).theta() == 0.0
        assert MassParams(2.0, -2.0).theta() == pytest.approx(math.pi / 2, abs=1e-15)

    @pytest.mark.parametrize('m1,m2', [(1.0, 1.5), (0.0, 0.0)])
    def test_theta_outside_domain(self, m1, m2):
        with pytest.raises(DomainError) as excinfo:
            MassParams(m1, m2).theta()
        assert '0 ≤ |m2| ≤ m1' in str(excinfo.value)
        assert excinfo.value.details['regime'] == 'theta-undefined'

    def test_nu_point_invariants(self):
        point = MassParams(5.0, 4.0).nu_point()
        assert point.nu == pytest.approx(0.96)
        assert point.nu1 ** 2 - point.nu2 ** 2 == pytest.approx(point.nu ** 2, abs=1e-12)
        assert point.nu1 ** 2 == pytest.approx(2 * point.nu2, abs=1e-12)

    def test_reflected(self):
        assert MassParams(2.0, 0.5).reflected() == MassParams(2.0, -0.5)


class TestHyperbolic:
    """m1 = m cosh α, m2 = m sinh α"""

    def test_examples(self):
        assert hyperbolic_params(1.0, 0.0) == MassParams(1.0, 0.0)
        maximon = hyperbolic_params(1.0, math.atanh(1 / SQRT2))
        assert maximon.m1 == pytest.approx(SQRT2, abs=1e-12)
        assert maximon.m2 == pytest.approx(1.0, abs=1e-12)
        params = hyperbolic_params(3.0, math.atanh(0.8))
        assert (params.m1, params.m2) == (pytest.approx(5.0, abs=1e-12), pytest.approx(4.0, abs=1e-12))

    def test_round_trip(self, rng):
        for m, alpha in zip(rng.uniform(0.1, 10, 500), rng.uniform(-3, 3, 500)):
            params = hyperbolic_params(m, alpha)
            assert params.m() == pytest.approx(m, rel=1e-12)
            assert params.alpha() == pytest.approx(alpha, abs=1e-12 * max(1.0, math.cosh(alpha) ** 2))

    def test_non_positive_mass(self):
        with pytest.raises(DomainError):
            hyperbolic_params(0.0, 1.0)


class TestBranches:
    """双分支反解"""

    def test_tanh_roots(self):
        assert tanh_alpha_branches(1.0) == (pytest.approx(1 / SQRT2), pytest.approx(1 / SQRT2))
        assert tanh_alpha_branches(0.0) == (0.0, 1.0)
        roots = tanh_alpha_branches(0.6)
        assert roots.ordinary == pytest.approx(0.316227766, abs=1e-9)
        assert roots.exotic == pytest.approx(0.948683298, abs=1e-9)

    def test_tanh_roots_solve_relation(self):
        for nu in np.linspace(0.0, 1.0, 101):
            for t in tanh_alpha_branches(nu):
                assert 2 * t * math.sqrt(1 - t * t) == pytest.approx(nu, abs=1e-12)

    def test_tanh_roots_against_scan(self):
        # 暴力扫描 4t²(1−t²) = 0.36 的根
        t = np.linspace(0.0, 1.0, 1000001)
        residual = np.abs(4 * t * t * (1 - t * t) - 0.36)
        lower = t[:500000][np.argmin(residual[:500000])]
        upper = t[500000:][np.argmin(residual[500000:])]
        roots = tanh_alpha_branches(0.6)
        assert roots.ordinary == pytest.approx(lower, abs=1e-5)
        assert roots.exotic == pytest.approx(upper, abs=1e-5)

    @pytest.mark.parametrize('nu', [-0.1, 1.0001, math.nan])
    def test_nu_out_of_range(self, nu):
        with pytest.raises(DomainError):
            branch_point(nu, BranchId.ORDINARY)
        with pytest.raises(DomainError):
            tanh_alpha_branches(nu)

    def test_branch_point_examples(self):
        for branch in BranchId:
            point = branch_point(1.0, branch)
            assert (point.nu1, point.nu2) == (pytest.approx(SQRT2), pytest.approx(1.0))
        ordinary = branch_point(0.0, BranchId.ORDINARY)
        exotic = branch_point(0.0, BranchId.EXOTIC)
        assert (ordinary.nu1, ordinary.nu2) == (0.0, 0.0)
        assert (exotic.nu1, exotic.nu2) == (2.0, 2.0)
        point = branch_point(0.6, BranchId.ORDINARY)
        assert point.nu2 == pytest.approx(0.2, abs=1e-15)
        assert point.nu1 == pytest.approx(0.632455532, abs=1e-9)

    def test_branch_identities(self):
        for nu in linear_grid(0.0, 1.0, 1000):
            ordinary = branch_point(nu, BranchId.ORDINARY)
            exotic = branch_point(nu, BranchId.EXOTIC)
            for point in (ordinary, exotic):
                assert point.nu1 ** 2 - point.nu2 ** 2 == pytest.approx(nu * nu, abs=1e-12)
                assert point.nu1 ** 2 == pytest.approx(2 * point.nu2, abs=1e-12)
                assert 0.0 <= point.nu1 <= 2.0 and 0.0 <= point.nu2 <= 2.0
            assert ordinary.nu1 <= SQRT2 + 1e-15 <= exotic.nu1 + 2e-15

    def test_scaling_round_trip(self):
        for nu in np.linspace(0.01, 1.0, 100):
            for branch in BranchId:
                for m_max in (0.5, 3.0, 1000.0):
                    params = branch_point(nu, branch).scaled(m_max)
                    assert params.m() / params.m_max() == pytest.approx(nu, abs=1e-12)

    def test_branch_of(self):
        assert branch_of(MassParams(1.0, 0.3)) is BranchId.ORDINARY
        assert branch_of(MassParams(1.0, -0.9)) is BranchId.EXOTIC
        assert branch_of(MassParams(SQRT2, 1.0)) is BranchId.ORDINARY
        with pytest.raises(DomainError):
            branch_of(MassParams(1.0, 1.5))

    def test_reconstruct(self, rng):
        for m1, ratio in zip(rng.uniform(0.1, 10, 1000), rng.uniform(-0.99, 0.99, 1000)):
            if abs(abs(ratio) - 1 / SQRT2) < 1e-4:
                # 极大子附近 √(1−ν²) 对 ν 的舍入误差过于敏感
                continue
            params = MassParams(m1, ratio * m1)
            rebuilt = reconstruct(params)
            assert rebuilt.m1 == pytest.approx(params.m1, abs=1e-10 * m1)
            assert rebuilt.m2 == pytest.approx(params.m2, abs=1e-10 * m1)

    def test_reconstruct_hermitian_axis(self):
        assert reconstruct(MassParams(2.0, 0.0)) == MassParams(2.0, 0.0)

    def test_flat_limit(self):
        deviations, m2_values = [], []
        for m_max in (10.0, 100.0, 1000.0, 10000.0):
            ordinary = branch_point(1.0 / m_max, BranchId.ORDINARY).scaled(m_max)
            deviations.append(abs(ordinary.m1 - 1.0))
            m2_values.append(ordinary.m2)
            exotic = branch_point(1.0 / m_max, BranchId.EXOTIC).scaled(m_max)
            assert exotic.m() == pytest.approx(1.0, rel=1e-5)
        assert all(a > b for a, b in zip(deviations, deviations[1:]))
        assert all(a > b for a, b in zip(m2_values, m2_values[1:]))
        assert m2_values[-1] * 2 * 10000.0 == pytest.approx(1.0, rel=0.01)
        assert exotic.m1 / (2 * 10000.0) == pytest.approx(1.0, rel=0.01)


class TestGeometric:
    """m1 = 2M sin(μ/2), m2 = 2M sin²(μ/2) 及奇异伙伴"""

    def test_ordinary_examples(self):
        assert geometric_ordinary(3.0, 0.0) == MassParams(0.0, 0.0)
        maximon = geometric_ordinary(2.0, math.pi / 2)
        assert (maximon.m1, maximon.m2) == (pytest.approx(2 * SQRT2), pytest.approx(2.0))
        params = geometric_ordinary(10.0, math.pi / 6)
        assert params.m1 == pytest.approx(5.17638090, abs=1e-8)
        assert params.m2 == pytest.approx(1.33974596, abs=1e-8)
        assert params.m() == pytest.approx(5.0, abs=1e-12)
        assert params.m_max() == pytest.approx(10.0, abs=1e-12)

    def test_exotic_examples(self):
        params = geometric_exotic(10.0, math.pi / 6)
        assert params.m1 == pytest.approx(19.3185165, abs=1e-7)
        assert params.m2 == pytest.approx(18.6602540, abs=1e-7)
        assert params.m() == pytest.approx(5.0, abs=1e-12)
        assert geometric_exotic(1.5, 0.0) == MassParams(3.0, 3.0)
        maximon = geometric_exotic(1.0, math.pi / 2)
        assert maximon.m1 == pytest.approx(SQRT2) and maximon.m2 == pytest.approx(1.0)

    def test_consistency_with_branches(self):
        M = 7.0
        for mu in linear_grid(0.0, math.pi / 2, 1001):
            ordinary = geometric_ordinary(M, mu)
            exotic = geometric_exotic(M, mu)
            if mu > 0:
                assert ordinary.m_max() == pytest.approx(M, abs=1e-12 * M)
            assert ordinary.m() == pytest.approx(M * math.sin(mu), abs=1e-12 * M)
            expected_ordinary = branch_point(math.sin(mu), BranchId.ORDINARY).scaled(M)
            expected_exotic = branch_point(math.sin(mu), BranchId.EXOTIC).scaled(M)
            assert ordinary.m1 == pytest.approx(expected_ordinary.m1, abs=1e-12 * M)
            assert ordinary.m2 == pytest.approx(expected_ordinary.m2, abs=1e-12 * M)
            assert exotic.m1 == pytest.approx(expected_exotic.m1, abs=1e-12 * M)
            assert exotic.m2 == pytest.approx(expected_exotic.m2, abs=1e-12 * M)

    def test_exotic_is_ordinary_at_supplement(self):
        M = 4.0
        for mu in np.linspace(0.0, math.pi / 2, 50):
            exotic = geometric_exotic(M, mu)
            partner = math.pi - mu
            assert exotic.m1 == pytest.approx(2 * M * math.sin(partner / 2), abs=1e-12 * M)
            assert exotic.m2 == pytest.approx(2 * M * math.sin(partner / 2) ** 2, abs=1e-12 * M)

    def test_mass_shell(self):
        M, mu = 10.0, math.pi / 6
        p5 = mass_shell_p5(M, mu, BranchId.ORDINARY)
        assert p5 == pytest.approx(math.sqrt(M ** 2 - 25.0), abs=1e-12)
        assert mass_shell_p5(M, mu, BranchId.EXOTIC) == -p5
        geometric = GeometricParams(M, mu)
        assert geometric.m() ** 2 + geometric.p5() ** 2 == pytest.approx(M ** 2)

    def test_inverse_map(self):
        for mu in np.linspace(0.1, 1.2, 20):
            geometric = geometric_params(geometric_ordinary(3.0, mu))
            assert geometric.M == pytest.approx(3.0, rel=1e-12)
            assert geometric.mu == pytest.approx(mu, abs=1e-9)
            assert geometric.exotic() == geometric_exotic(geometric.M, geometric.mu)

    @pytest.mark.parametrize('M,mu', [(0.0, 0.5), (-1.0, 0.5), (1.0, -0.1), (1.0, 2.0)])
    def test_out_of_domain(self, M, mu):
        with pytest.raises(DomainError):
            geometric_ordinary(M, mu)
        with pytest.raises(DomainError):
            GeometricParams(M, mu)


class TestCurves:
    """图 1、图 2 数据"""

    def test_fig1_points(self):
        start, maximon, tail = fig1_curves([0.0, MAXIMON_ALPHA, 5.0])
        assert (start.nu, start.nu1, start.nu2) == (0.0, 0.0, 0.0)
        assert maximon.nu == pytest.approx(1.0, abs=1e-12)
        assert maximon.nu1 == pytest.approx(SQRT2, abs=1e-9)
        assert maximon.nu2 == pytest.approx(1.0, abs=1e-9)
        assert tail.nu1 == pytest.approx(2.0, abs=1e-3)
        assert tail.nu2 == pytest.approx(2.0, abs=1e-3)
        assert tail.nu < 0.03

    def test_fig1_rows_satisfy_invariants(self):
        for row in fig1_curves(linear_grid(0.0, 3.0, 301)):
            assert row.nu1 ** 2 - row.nu2 ** 2 == pytest.approx(row.nu ** 2, abs=1e-12)
            assert row.nu1 ** 2 == pytest.approx(2 * row.nu2, abs=1e-12)

    def test_fig1_negative_alpha(self):
        with pytest.raises(DomainError):
            fig1_curves([-0.1])

    def test_locate_maximon(self):
        alpha, nu = locate_maximon(linear_grid(0.0, 2.0, 10000))
        assert alpha == pytest.approx(0.881374, abs=1e-4)
        assert nu == pytest.approx(1.0, abs=1e-6)

    def test_fig2_rows(self):
        rows = fig2_curves(linear_grid(0.0, 1.0, 101))
        first, last = rows[0], rows[-1]
        assert tuple(first) == (0.0, 0.0, 0.0, 2.0, 2.0)
        assert last.nu == 1.0
        assert (last.nu1, last.nu2, last.nu3, last.nu4) == (
            pytest.approx(SQRT2), pytest.approx(1.0), pytest.approx(SQRT2), pytest.approx(1.0))
        for row in rows:
            assert row.nu1 ** 2 - row.nu2 ** 2 == pytest.approx(row.nu ** 2, abs=1e-12)
            assert row.nu3 ** 2 - row.nu4 ** 2 == pytest.approx(row.nu ** 2, abs=1e-12)

    def test_fig2_out_of_range(self):
        with pytest.raises(DomainError):
            fig2_curves([0.5, 1.5])


class TestGrids:
    """网格生成"""

    def test_linear_grid_endpoints(self):
        grid = linear_grid(0.0, 1.0, 101)
        assert grid[0] == 0.0 and grid[-1] == 1.0
        assert grid[50] == 0.5
        assert len(grid) == 101

    def test_cell_centers_hit_axes(self):
        assert cell_centers(0.0, 2.0, 401)[200] == 1.0
        assert cell_centers(-2.0, 2.0, 401)[200] == 0.0
        assert cell_centers(0.0, 1.0, 2).tolist() == [0.25, 0.75]

    @pytest.mark.parametrize('lo,hi,steps', [(0.0, 1.0, 1), (1.0, 1.0, 10), (2.0, 1.0, 10)])
    def test_invalid_linear_grid(self, lo, hi, steps):
        with pytest.raises(ParameterError):
            linear_grid(lo, hi, steps)

    def test_invalid_cell_count(self):
        with pytest.raises(ParameterError):
            cell_centers(0.0, 1.0, 0)
