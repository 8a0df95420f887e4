"""
命令行入口
子命令 spectrum / metric / classify / fig / sweep，结果以 CSV 或 JSON 写到标准输出或 --out 文件
退出码：0 成功，1 领域/校验失败，2 用法错误
所有质量、动量、能量使用同一自然单位（c = ħ = 1）
"""
import argparse
import functools
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from common.decorators import log_function, time_function
from common.exceptions import ConfigError, ParameterError, PtDiracError, VerificationError
from config.settings import get_tolerance, settings
from ptdirac.dirac_hamiltonian import build_adjoint_hamiltonian, build_hamiltonian, spectrum
from ptdirac.gamma_algebra import GammaBasis, build_basis
from ptdirac.mass_parametrization import (
    BranchId,
    MassParams,
    branch_point,
    cell_centers,
    fig1_curves,
    fig2_curves,
    linear_grid,
)
from ptdirac.pseudo_hermitian_metric import (
    hermitian_counterpart,
    hermiticity_residual,
    metric_operator,
    verify_intertwining,
)
from ptdirac.region_classifier import classify, fig3_mask
from utils.concurrencyutil import ConcurrentExecutor
from utils.logutil import logger
from utils.recordutil import RecordWriter, progress

Records = List[Dict[str, Any]]
CommandResult = Tuple[Records, List[str]]


@dataclass(frozen=True)
class OutputOptions:
    """单次调用的输出与数值选项（命令行参数优先于配置）"""
    fmt: str
    out: Optional[str]
    digits: int
    tol: float
    workers: int

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'OutputOptions':
        tol = args.tol if args.tol is not None else get_tolerance()
        if not (math.isfinite(tol) and tol > 0):
            raise ParameterError(f"--tol 必须为正: {tol}", param_name='tol', param_value=tol)
        workers = args.workers if args.workers is not None else int(settings.get('max_workers', 1))
        if workers < 1:
            raise ParameterError(f"--workers 必须 >= 1: {workers}", param_name='workers', param_value=workers)
        return cls(
            fmt=args.format or settings.get('format', 'csv'),
            out=args.out,
            digits=args.digits if args.digits is not None else int(settings.get('digits', 9)),
            tol=tol,
            workers=workers,
        )


@dataclass(frozen=True)
class GridRange:
    """扫描变量的闭区间网格"""
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ParameterError(f"{self.name} 的点数必须 >= 2: {self.steps}",
                                 param_name=f'{self.name}-steps', param_value=self.steps)
        if not self.lo < self.hi:
            raise ParameterError(f"{self.name} 的范围为空: [{self.lo}, {self.hi}]",
                                 param_name=self.name, param_value=(self.lo, self.hi))

    def values(self) -> List[float]:
        return [float(v) for v in linear_grid(self.lo, self.hi, self.steps)]


@dataclass(frozen=True)
class SweepConfig:
    """
    扫描配置：被扫描变量的网格、其余变量的固定值、表示维数
    required 为子命令需要的全部符号，ranges 与 fixed 必须恰好覆盖它们
    """
    ranges: Dict[str, GridRange]
    fixed: Dict[str, float]
    dim: int
    required: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        overlap = set(self.ranges) & set(self.fixed)
        if overlap:
            raise ParameterError(f"变量既被扫描又被固定: {sorted(overlap)}", param_name=','.join(sorted(overlap)))
        configured = set(self.ranges) | set(self.fixed)
        if self.required and configured != set(self.required):
            missing = sorted(set(self.required) - configured)
            extra = sorted(configured - set(self.required))
            raise ParameterError(f"扫描变量配置不完整: 缺少 {missing}，多余 {extra}",
                                 param_name='sweep', param_value={'missing': missing, 'extra': extra})

    def values(self, name: str) -> List[float]:
        """变量的取值序列，固定变量返回单元素列表"""
        if name in self.ranges:
            return self.ranges[name].values()
        return [self.fixed[name]]


def _resolve_dim(args: argparse.Namespace) -> int:
    dim = args.dim if getattr(args, 'dim', None) is not None else settings.get('dim', 2)
    try:
        return int(dim)
    except (TypeError, ValueError):
        raise ConfigError(f"dim 配置无效: {dim}", config_name='dim', config_value=dim)


def _verify_every() -> int:
    return max(1, int(settings.get('verify_every', 1)))


def _eigen_columns(dim: int) -> List[str]:
    columns = []
    for k in range(1, dim + 1):
        columns += [f're_{k}', f'im_{k}']
    return columns


def _spectrum_row(basis: GammaBasis, p: float, m1: float, m2: float, tol: float, verify: bool) -> Dict[str, Any]:
    """单点谱：按排序后的本征值展开为 re_k / im_k 列"""
    result = spectrum(build_hamiltonian(basis, p, m1, m2), tol=tol, verify=verify)
    row: Dict[str, Any] = {}
    for k, z in enumerate(result.eigenvalues, 1):
        row[f're_{k}'] = z.real
        row[f'im_{k}'] = z.imag
    row['is_real'] = result.is_real
    row['is_diagonalizable'] = result.is_diagonalizable
    return row


def _range_or_fixed(args: argparse.Namespace, name: str, flag: str, fixed: Optional[float]) -> Tuple[Optional[GridRange], Optional[float]]:
    """解析 --x 与 --x-min/--x-max/--x-steps 二选一"""
    lo = getattr(args, f'{name}_min')
    hi = getattr(args, f'{name}_max')
    steps = getattr(args, f'{name}_steps', None) if hasattr(args, f'{name}_steps') else getattr(args, 'steps')
    given = [v is not None for v in (lo, hi)]
    if any(given):
        if fixed is not None:
            raise ParameterError(f"--{flag} 与 --{flag}-min/--{flag}-max 不能同时指定", param_name=flag)
        if not all(given) or steps is None:
            raise ParameterError(f"--{flag}-min、--{flag}-max 与点数必须同时指定", param_name=flag)
        return GridRange(flag, lo, hi, steps), None
    if steps is not None:
        raise ParameterError(f"点数只能与 --{flag}-min/--{flag}-max 一起使用", param_name=flag)
    return None, fixed


def _map_points(func: Callable[[Any], Dict[str, Any]], tasks: Sequence[Any], workers: int, desc: str) -> Records:
    if workers == 1:
        return [func(task) for task in progress(tasks, total=len(tasks), desc=desc)]
    with ConcurrentExecutor(max_workers=workers) as executor:
        rows = executor.map_ordered(func, tasks)
        logger.debug(f"{desc}: {executor.get_stats()}")
    return rows


@log_function
@time_function
def cmd_spectrum(args: argparse.Namespace, options: OutputOptions) -> CommandResult:
    """H 在动量点或动量网格上的谱"""
    basis = build_basis(_resolve_dim(args))
    p_range, p_fixed = _range_or_fixed(args, 'p', 'p', args.p)
    momenta = p_range.values() if p_range else [p_fixed if p_fixed is not None else 0.0]
    every = _verify_every()
    last = len(momenta) - 1

    def evaluate(task):
        index, p = task
        row = {'p': p}
        row.update(_spectrum_row(basis, p, args.m1, args.m2, options.tol, index % every == 0 or index == last))
        return row

    records = _map_points(evaluate, list(enumerate(momenta)), options.workers, 'spectrum')
    return records, ['p'] + _eigen_columns(basis.dim) + ['is_real', 'is_diagonalizable']


@log_function
def cmd_metric(args: argparse.Namespace, options: OutputOptions) -> CommandResult:
    """度规指数与交织、厄米性残差"""
    basis = build_basis(_resolve_dim(args))
    p = args.p if args.p is not None else 0.0
    metric = metric_operator(basis, args.m1, args.m2)
    H = build_hamiltonian(basis, p, args.m1, args.m2)
    intertwining = verify_intertwining(H, build_adjoint_hamiltonian(basis, p, args.m1, args.m2),
                                       metric.eta, metric.eta_inv)
    hermiticity = hermiticity_residual(hermitian_counterpart(basis, p, args.m1, args.m2))

    # 舍入误差随 η 的条件数 e^{2|a|} 放大
    allowed = settings.get_float('intertwining_tol') * metric.condition_number()
    if intertwining > allowed:
        raise VerificationError("ηHη⁻¹ 与 H⁺ 不一致", residual=intertwining, tolerance=allowed)
    record = {
        'm1': args.m1,
        'm2': args.m2,
        'p': p,
        'alpha_exponent': metric.alpha_exponent,
        'intertwining_residual': f"{intertwining:.5e}",
        'counterpart_hermiticity_residual': f"{hermiticity:.5e}",
    }
    return [record], list(record.keys())


@log_function
def cmd_classify(args: argparse.Namespace, options: OutputOptions) -> CommandResult:
    """单点分区及导出量"""
    tol = args.classify_tol if args.classify_tol is not None else settings.get_float('cli_classify_tol')
    region = classify(args.m1, args.m2, tol)
    params = MassParams(args.m1, args.m2)
    m_max = params.m_max()
    unbroken = params.is_unbroken()
    record = {
        'm1': args.m1,
        'm2': args.m2,
        'm': params.m() if unbroken else 'imaginary',
        'm_max': m_max if m_max is not None else 'inf',
        'alpha': params.alpha() if abs(args.m2) < args.m1 else None,
        'theta': params.theta() if unbroken else None,
        'region': region.value,
    }
    return [record], list(record.keys())


@log_function
@time_function
def cmd_fig(args: argparse.Namespace, options: OutputOptions) -> CommandResult:
    """图 1-3 的曲线/栅格数据"""
    if args.figure == 1:
        alpha_max = args.alpha_max if args.alpha_max is not None else settings.get_float('fig1.alpha_max')
        steps = args.steps if args.steps is not None else int(settings.get('fig1.steps'))
        rows = fig1_curves(linear_grid(0.0, alpha_max, steps))
        return [row._asdict() for row in rows], ['alpha', 'nu', 'nu1', 'nu2']

    if args.figure == 2:
        steps = args.steps if args.steps is not None else int(settings.get('fig2.steps'))
        rows = fig2_curves(linear_grid(0.0, 1.0, steps))
        return [row._asdict() for row in rows], ['nu', 'nu1', 'nu2', 'nu3', 'nu4']

    nu1_max = args.nu1_max if args.nu1_max is not None else settings.get_float('fig3.nu1_max')
    nu2_max = args.nu2_max if args.nu2_max is not None else settings.get_float('fig3.nu2_max')
    steps = args.steps if args.steps is not None else int(settings.get('fig3.steps'))
    nu1_grid = cell_centers(0.0, nu1_max, steps)
    nu2_grid = cell_centers(-nu2_max, nu2_max, steps)
    if options.workers == 1:
        mask = fig3_mask(nu1_grid, nu2_grid)
    else:
        with ConcurrentExecutor(max_workers=options.workers) as executor:
            mask = fig3_mask(nu1_grid, nu2_grid, executor=executor)
    return list(mask.records()), ['nu1', 'nu2', 'region']


def _mass_sweep_row(task, basis: GammaBasis, p: float, tol: float) -> Dict[str, Any]:
    m1, m2, verify = task
    row: Dict[str, Any] = {'m1': m1, 'm2': m2, 'p': p}
    row.update(_spectrum_row(basis, p, m1, m2, tol, verify))
    params = MassParams(m1, m2)
    row['m'] = params.m() if params.is_unbroken() else None
    row['m_max'] = params.m_max()
    row['region'] = classify(m1, m2).value if m1 > 0 else None
    if abs(m2) < m1:
        metric = metric_operator(basis, m1, m2)
        row['intertwining_residual'] = verify_intertwining(
            build_hamiltonian(basis, p, m1, m2),
            build_adjoint_hamiltonian(basis, p, m1, m2),
            metric.eta,
            metric.eta_inv,
        )
    else:
        row['intertwining_residual'] = None
    return row


@log_function
@time_function
def cmd_sweep_mass(args: argparse.Namespace, options: OutputOptions) -> CommandResult:
    """(m1, m2) 网格扫描，m1 为外层变量"""
    m1_range, m1_fixed = _range_or_fixed(args, 'm1', 'm1', args.m1)
    m2_range, m2_fixed = _range_or_fixed(args, 'm2', 'm2', args.m2)
    ranges = {r.name: r for r in (m1_range, m2_range) if r is not None}
    fixed = {k: v for k, v in (('m1', m1_fixed), ('m2', m2_fixed)) if v is not None}
    config = SweepConfig(ranges=ranges, fixed=fixed, dim=_resolve_dim(args), required=('m1', 'm2'))
    if not config.ranges:
        raise ParameterError("sweep mass 至少需要一个扫描变量", param_name='m1/m2')

    m1_values = config.values('m1')
    if min(m1_values) < 0:
        raise ParameterError("m1 的扫描范围不能包含负值", param_name='m1', param_value=min(m1_values))
    basis = build_basis(config.dim)
    p = args.p if args.p is not None else 0.0
    every = _verify_every()
    points = [(m1, m2) for m1 in m1_values for m2 in config.values('m2')]
    tasks = [(m1, m2, i % every == 0 or i == len(points) - 1) for i, (m1, m2) in enumerate(points)]

    func = functools.partial(_mass_sweep_row, basis=basis, p=p, tol=options.tol)
    records = _map_points(func, tasks, options.workers, 'sweep mass')
    columns = ['m1', 'm2', 'p'] + _eigen_columns(basis.dim) + \
        ['is_real', 'is_diagonalizable', 'm', 'm_max', 'region', 'intertwining_residual']
    return records, columns


def _branch_sweep_row(task, basis: GammaBasis, branch: BranchId, m_max: float, p: float, tol: float) -> Dict[str, Any]:
    nu, verify = task
    point = branch_point(nu, branch)
    params = point.scaled(m_max)
    row: Dict[str, Any] = {'nu': nu, 'nu1': point.nu1, 'nu2': point.nu2,
                           'm1': params.m1, 'm2': params.m2, 'm': nu * m_max, 'p': p}
    row.update(_spectrum_row(basis, p, params.m1, params.m2, tol, verify))
    row['region'] = classify(params.m1, params.m2).value if params.m1 > 0 else None
    return row


@log_function
@time_function
def cmd_sweep_branch(args: argparse.Namespace, options: OutputOptions) -> CommandResult:
    """沿普通或奇异分支按 ν 扫描"""
    if not (math.isfinite(args.m_max) and args.m_max > 0):
        raise ParameterError(f"--m-max 必须为正: {args.m_max}", param_name='m-max', param_value=args.m_max)
    nu_range = GridRange('nu', args.nu_min, args.nu_max, args.steps)
    config = SweepConfig(ranges={'nu': nu_range}, fixed={'m_max': args.m_max}, dim=_resolve_dim(args),
                         required=('nu', 'm_max'))
    basis = build_basis(config.dim)
    branch = BranchId(args.branch)
    p = args.p if args.p is not None else 0.0
    every = _verify_every()
    nus = config.values('nu')
    tasks = [(nu, i % every == 0 or i == len(nus) - 1) for i, nu in enumerate(nus)]

    func = functools.partial(_branch_sweep_row, basis=basis, branch=branch, m_max=args.m_max, p=p, tol=options.tol)
    records = _map_points(func, tasks, options.workers, 'sweep branch')
    columns = ['nu', 'nu1', 'nu2', 'm1', 'm2', 'm', 'p'] + _eigen_columns(basis.dim) + \
        ['is_real', 'is_diagonalizable', 'region']
    return records, columns


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group('输出选项')
    group.add_argument('--format', choices=RecordWriter.FORMATS, default=None, help='输出格式 (默认: csv)')
    group.add_argument('--out', type=str, default=None, help='输出文件路径 (默认: 标准输出)')
    group.add_argument('--digits', type=int, default=None, help='浮点数有效数字 (默认: 9)')
    group.add_argument('--tol', type=float, default=None, help='谱实性容差 (默认: 1e-10，可由 PTDIRAC_TOL 覆盖)')
    group.add_argument('--workers', type=int, default=None, help='扫描并发数 (默认: 4，1 表示串行)')
    group.add_argument('--verbose', action='store_true', help='启用 DEBUG 日志（输出到 stderr）')
    return common


def _add_dim(parser: argparse.ArgumentParser):
    parser.add_argument('--dim', type=int, choices=(2, 4), default=None, help='旋量表示维数 (默认: 2)')


def build_parser() -> argparse.ArgumentParser:
    """
    构造命令行解析器

    Returns:
        ArgumentParser
    """
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog='ptdirac',
        description='含 γ5 质量项的 PT 对称 Dirac 哈密顿量数值工具（自然单位 c = ħ = 1）',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  ptdirac spectrum --m1 5 --m2 4 --p 3
  ptdirac metric --m1 2 --m2 1 --format json
  ptdirac classify --m1 1 --m2 0.3
  ptdirac fig 3 --out fig3.csv
  ptdirac sweep branch --branch ordinary --m-max 10 --steps 101

退出码: 0 成功, 1 领域/校验失败, 2 用法错误
        """)
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p_spec = sub.add_parser('spectrum', parents=[common], help='H 的本征值、实性与可对角化性',
                            description='输出列: p, re_k, im_k (k = 1..dim), is_real, is_diagonalizable')
    p_spec.add_argument('--m1', type=float, required=True)
    p_spec.add_argument('--m2', type=float, required=True)
    p_spec.add_argument('--p', type=float, default=None, help='单个动量 (默认: 0)')
    p_spec.add_argument('--p-min', type=float, default=None)
    p_spec.add_argument('--p-max', type=float, default=None)
    p_spec.add_argument('--steps', type=int, default=None, help='动量网格点数')
    _add_dim(p_spec)
    p_spec.set_defaults(handler=cmd_spectrum)

    p_metric = sub.add_parser('metric', parents=[common], help='度规算符与交织残差',
                              description='输出列: m1, m2, p, alpha_exponent, intertwining_residual, '
                                          'counterpart_hermiticity_residual；要求 |m2| < m1')
    p_metric.add_argument('--m1', type=float, required=True)
    p_metric.add_argument('--m2', type=float, required=True)
    p_metric.add_argument('--p', type=float, default=None, help='动量 (默认: 0)')
    _add_dim(p_metric)
    p_metric.set_defaults(handler=cmd_metric)

    p_classify = sub.add_parser('classify', parents=[common], help='参数空间分区',
                                description='输出列: m1, m2, m, m_max, alpha, theta, region')
    p_classify.add_argument('--m1', type=float, required=True)
    p_classify.add_argument('--m2', type=float, required=True)
    p_classify.add_argument('--classify-tol', type=float, default=None, help='边界带相对半宽 (默认: 1e-7)')
    p_classify.set_defaults(handler=cmd_classify)

    p_fig = sub.add_parser('fig', parents=[common], help='图 1-3 的数据',
                           description='图 1 列: alpha, nu, nu1, nu2；图 2 列: nu, nu1, nu2, nu3, nu4；'
                                       '图 3 列: nu1, nu2, region')
    p_fig.add_argument('figure', type=int, choices=(1, 2, 3))
    p_fig.add_argument('--alpha-max', type=float, default=None, help='图 1 的 α 上限 (默认: 3)')
    p_fig.add_argument('--nu1-max', type=float, default=None, help='图 3 的 ν1 上限 (默认: 2)')
    p_fig.add_argument('--nu2-max', type=float, default=None, help='图 3 的 |ν2| 上限 (默认: 2)')
    p_fig.add_argument('--steps', type=int, default=None, help='网格点数')
    p_fig.set_defaults(handler=cmd_fig)

    p_sweep = sub.add_parser('sweep', help='参数扫描')
    sweep_sub = p_sweep.add_subparsers(dest='sweep_kind', metavar='KIND')
    sweep_sub.required = True

    p_mass = sweep_sub.add_parser('mass', parents=[common], help='(m1, m2) 网格',
                                  description='输出列: m1, m2, p, re_k, im_k, is_real, is_diagonalizable, '
                                              'm, m_max, region, intertwining_residual')
    p_mass.add_argument('--m1', type=float, default=None)
    p_mass.add_argument('--m1-min', type=float, default=None)
    p_mass.add_argument('--m1-max', type=float, default=None)
    p_mass.add_argument('--m1-steps', type=int, default=None)
    p_mass.add_argument('--m2', type=float, default=None)
    p_mass.add_argument('--m2-min', type=float, default=None)
    p_mass.add_argument('--m2-max', type=float, default=None)
    p_mass.add_argument('--m2-steps', type=int, default=None)
    p_mass.add_argument('--p', type=float, default=None, help='动量 (默认: 0)')
    _add_dim(p_mass)
    p_mass.set_defaults(handler=cmd_sweep_mass)

    p_branch = sweep_sub.add_parser('branch', parents=[common], help='沿分支按 ν 扫描',
                                    description='输出列: nu, nu1, nu2, m1, m2, m, p, re_k, im_k, '
                                                'is_real, is_diagonalizable, region')
    p_branch.add_argument('--branch', choices=[b.value for b in BranchId], default=BranchId.ORDINARY.value)
    p_branch.add_argument('--nu-min', type=float, default=0.0)
    p_branch.add_argument('--nu-max', type=float, default=1.0)
    p_branch.add_argument('--steps', type=int, default=101)
    p_branch.add_argument('--m-max', type=float, default=1.0)
    p_branch.add_argument('--p', type=float, default=None, help='动量 (默认: 0)')
    _add_dim(p_branch)
    p_branch.set_defaults(handler=cmd_sweep_branch)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    主函数

    Args:
        argv: 命令行参数，为None时读取 sys.argv

    Returns:
        退出码，0表示成功，1表示领域/校验失败，2表示用法错误
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        settings.reload()
        logger.set_level('DEBUG' if args.verbose else settings.get('log.level', 'WARNING'))
        options = OutputOptions.from_args(args)
        writer = RecordWriter(options.fmt, options.digits)
        records, columns = args.handler(args, options)
        writer.write(records, out=options.out, columns=columns)
        return 0
    except PtDiracError as e:
        logger.debug(f"命令失败: {e.to_dict()}")
        sys.stderr.write(f"ptdirac: 错误: {e}\n")
        return e.error_code
    except OSError as e:
        sys.stderr.write(f"ptdirac: 无法写出结果: {e}\n")
        return 1


if __name__ == '__main__':
    sys.exit(main())
