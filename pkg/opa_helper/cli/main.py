#!/usr/bin/env python3
"""
OPA Helper 统一命令行入口

退出码：0 成功，1 数值失败，2 输入错误。
"""

import argparse
import logging
import math
import sys
from typing import List, Optional

from pydantic import ValidationError

from ..core import closedform, jacobi, verify
from ..core.errors import DomainError, InputError, OpaError
from ..core.gram import optimal_approximant
from ..core.jentzsch import CSV_COLUMNS, jentzsch_sweep, multi_zero_example
from ..core.roots import poly_roots
from ..core.weights import parse_space
from .specs import (
    DEFAULT_TOL,
    RunConfig,
    emit,
    parse_degrees,
    parse_floats,
    parse_function,
    render_csv,
    render_json,
    render_table,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_INPUT = 2

FIGURE1_ALPHAS = '0,-1,-2,-3,-4,-5,-6,-7,-8,-9,-10,-11,-12'
# α = −1 时最小零点模的精确值 2√2/3
FIGURE1_REFERENCE = 2.0 * math.sqrt(2.0) / 3.0


def _config(args, **options) -> RunConfig:
    try:
        return _build_config(args, options)
    except ValidationError as e:
        raise InputError(f"参数无效: {e}")


def _build_config(args, options) -> RunConfig:
    return RunConfig(
        command=args.command,
        space=getattr(args, 'space', None),
        function=getattr(args, 'function', None),
        degree=getattr(args, 'degree', None),
        degrees=parse_degrees(args.degrees) if getattr(args, 'degrees', None) else None,
        tol=getattr(args, 'tol', DEFAULT_TOL),
        out=args.out,
        format=args.format or 'csv',
        workers=getattr(args, 'workers', 1),
        options=options,
    )


# ----------------------------------------------------------------------
# 子命令
# ----------------------------------------------------------------------
def cmd_norm(args) -> int:
    """‖𝒥_ω‖ 估计、𝒰_ω 与最小零点模"""
    omega = parse_space(args.space)
    config = _config(args)
    est = jacobi.norm_estimate(omega, config.tol)
    attained = est.value > 2.0 + jacobi.EXTREMAL_MARGIN
    regime = 'attained' if attained else '<= 2, not attained'
    columns = ['space', 'norm', 'half_norm', 'min_zero_modulus', 'size', 'regime']
    rows = [[omega.label, est.value, est.half, 1.0 / est.half, est.size, regime]]
    notes = []
    if omega.kind == 'dirichlet' and omega.param < 0 and float(omega.param).is_integer() and attained:
        report = closedform.indicial_report(int(-omega.param), est.value)
        notes.append(f"indicial exponent r={report.r:.15g}, distance to {report.nearest_integer} "
                     f"is {report.distance:.3g} (inherits tol={config.tol:g})")
    emit(render_table(config, columns, rows, notes), config.out)
    return EXIT_OK


def cmd_figure1(args) -> int:
    """Dirichlet 型空间的半范数估计与 (2/3)^{α/2} 上界"""
    alphas = parse_floats(args.alphas)
    config = _config(args, alphas=alphas)
    rows = verify.figure1_rows(alphas, config.tol)
    columns = ['alpha', 'half_norm', 'half_norm_bound', 'zero_free_radius', 'size']
    table = [[r.alpha, r.half_norm, r.half_norm_bound, r.zero_free_radius, r.size] for r in rows]
    notes = [f"reference: alpha=-1 minimal zero modulus 2*sqrt(2)/3 = {FIGURE1_REFERENCE:.15g}"]
    emit(render_table(config, columns, table, notes), config.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    """运行验收套件，失败时返回非零"""
    if args.suite != 'all' and args.suite not in verify.SUITES:
        raise InputError(f"未知的检验套件: {args.suite}（可选 {', '.join(list(verify.SUITES) + ['all'])}）")
    args.format = args.format or 'json'
    config = _config(args, suite=args.suite)
    verdict = verify.run_suite(args.suite)
    if config.format == 'json':
        text = render_json(config, verdict.model_dump())
    else:
        columns = ['name', 'passed', 'value', 'expected', 'tolerance', 'detail']
        rows = [[c.name, c.passed, c.value, c.expected, c.tolerance, c.detail] for c in verdict.checks]
        text = render_csv(config, columns, rows, [f"suite {verdict.suite}: {'pass' if verdict.passed else 'FAIL'}"])
    emit(text, config.out)
    return EXIT_OK if verdict.passed else EXIT_NUMERICAL


def cmd_approximant(args) -> int:
    """最优逼近多项式、残差与根"""
    omega = parse_space(args.space)
    f = parse_function(args.function)
    config = _config(args)
    approx = optimal_approximant(f, omega, args.degree)
    if approx.coeffs.any():
        approx.roots = poly_roots(approx.coeffs).roots
    notes = [f"residual_norm={approx.residual_norm:.15g}"]
    if config.format == 'json':
        text = render_json(config, approx.to_dict())
    else:
        rows = [['coeff', k, c.real, c.imag] for k, c in enumerate(approx.coeffs)]
        if approx.roots is not None:
            rows += [['root', j, z.real, z.imag] for j, z in enumerate(approx.roots)]
        text = render_csv(config, ['kind', 'index', 're', 'im'], rows, notes)
    emit(text, config.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    """𝒥_ω 在 (2, ∞) 中的孤立特征值及其 Poincaré 根"""
    omega = parse_space(args.space)
    config = _config(args, count=args.count)
    values = jacobi.point_spectrum_above_2(omega, config.tol, args.count)
    rows = []
    for m, t in enumerate(values):
        lam = (t - math.sqrt(t * t - 4.0)) / 2.0
        rows.append([m, t, lam, 1.0 / lam])
    emit(render_table(config, ['m', 't', 'lambda_minus', 'lambda_plus'], rows), config.out)
    return EXIT_OK


def cmd_extremal(args) -> int:
    """极值函数的系数（Bergman 空间可选闭式）"""
    omega = parse_space(args.space)
    config = _config(args, closed_form=args.closed_form)
    if args.closed_form:
        if omega.kind != 'bergman':
            raise InputError("--closed-form 只适用于 bergman 空间")
        f = closedform.bergman_extremal(omega.param, args.degree)
    else:
        f = jacobi.extremal_coeffs(omega, args.degree, config.tol)
    notes = [f"tail_bound={f.to_dict()['tail_bound']}"]
    if config.format == 'json':
        text = render_json(config, f.to_dict())
    else:
        rows = [[k, c.real, c.imag] for k, c in enumerate(f.coeffs)]
        text = render_csv(config, ['n', 're', 'im'], rows, notes)
    emit(text, config.out)
    return EXIT_OK


def cmd_jentzsch(args) -> int:
    """按次数扫描逼近多项式的零点统计"""
    omega = parse_space(args.space)
    f = parse_function(args.function)
    config = _config(args, epsilon=args.epsilon, cutoff=args.cutoff)
    rows = jentzsch_sweep(f, omega, config.degrees, args.epsilon, args.cutoff, config.workers)
    columns = list(CSV_COLUMNS) + ['status']
    table = [[getattr(r, c) for c in columns] for r in rows]
    emit(render_table(config, columns, table), config.out)
    return EXIT_OK


def cmd_multizero(args) -> int:
    """f_{k,n}(z^r) 的 r 次逼近多项式：r 个共圆等分的零点"""
    omega = parse_space(args.space)
    config = _config(args, k=args.k, n=args.n, r=args.r)
    approx, report = multi_zero_example(omega, args.k, args.n, args.r)
    data = report.to_dict()
    if config.format == 'json':
        data['approximant'] = approx.to_dict()
        text = render_json(config, data)
    else:
        rows = [[key, value] for key, value in data.items() if not isinstance(value, list)]
        rows += [['root', f"{z.real:.15g}{z.imag:+.15g}j"] for z in approx.roots]
        text = render_csv(config, ['key', 'value'], rows, data['notes'])
    emit(text, config.out)
    return EXIT_OK


COMMANDS = {
    'norm': cmd_norm,
    'figure1': cmd_figure1,
    'verify': cmd_verify,
    'approximant': cmd_approximant,
    'spectrum': cmd_spectrum,
    'extremal': cmd_extremal,
    'jentzsch': cmd_jentzsch,
    'multizero': cmd_multizero,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='oph',
        description='OPA Helper：加权 Hardy 空间最优多项式逼近数值工具',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  oph norm --space bergman:0                  估计 ‖𝒥_ω‖ 与最小零点模
  oph figure1 --out figure1.csv               Dirichlet 型空间半范数表
  oph verify hardy-beta                       运行验收套件
  oph approximant --space hardy --function one_minus_z_pow:1.5 --degree 10
  oph jentzsch --space bergman:0 --function one_minus_z --degrees 10..60 --workers 4
        """
    )
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v 输出 INFO，-vv 输出 DEBUG')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', help='输出文件（默认标准输出）')
    common.add_argument('--format', choices=['csv', 'json'], help='输出格式（verify 默认 json，其余默认 csv）')

    space = argparse.ArgumentParser(add_help=False)
    space.add_argument('--space', required=True, help='hardy | dirichlet:α | bergman:β | custom:<file>')

    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument('--tol', type=float, default=DEFAULT_TOL, help=f'收敛容差（默认 {DEFAULT_TOL:g}）')

    function = argparse.ArgumentParser(add_help=False)
    function.add_argument('--function', required=True,
                          help='one_minus_z | one_minus_z_pow:a[,M] | cayley:k,n | bergman_extremal:β[,N] '
                               '| reciprocal_linear:z0[,N] | coeffs:<file>')

    subparsers = parser.add_subparsers(dest='command', help='可用命令')

    subparsers.add_parser('norm', parents=[common, space, tol], help='估计 ‖𝒥_ω‖')

    fig = subparsers.add_parser('figure1', parents=[common, tol], help='Dirichlet 型空间半范数表')
    fig.add_argument('--alphas', default=FIGURE1_ALPHAS, help='逗号分隔的 α 列表')

    ver = subparsers.add_parser('verify', parents=[common], help='运行验收套件')
    ver.add_argument('suite', help=f"套件名：{', '.join(verify.SUITES)} 或 all")

    app = subparsers.add_parser('approximant', parents=[common, space, function], help='最优逼近多项式')
    app.add_argument('--degree', type=int, required=True, help='多项式次数 n')

    spec = subparsers.add_parser('spectrum', parents=[common, space, tol], help='(2, ∞) 中的点谱')
    spec.add_argument('--count', type=int, default=4, help='最多输出的特征值个数')

    ext = subparsers.add_parser('extremal', parents=[common, space, tol], help='极值函数系数')
    ext.add_argument('--degree', type=int, required=True, help='保留到 z^N')
    ext.add_argument('--closed-form', action='store_true', help='Bergman 空间使用闭式')

    jen = subparsers.add_parser('jentzsch', parents=[common, space, function], help='零点分布统计')
    jen.add_argument('--degrees', required=True, help="次数：'a..b' 或 'a,b,c'")
    jen.add_argument('--epsilon', type=float, default=0.1, help='τ_ε 的半径增量')
    jen.add_argument('--cutoff', type=float, default=2.0, help='辐角统计的半径上限')
    jen.add_argument('--workers', type=int, default=1, help='并行线程数')

    mz = subparsers.add_parser('multizero', parents=[common, space], help='多零点构造')
    mz.add_argument('--k', type=int, default=0)
    mz.add_argument('--n', type=int, default=20)
    mz.add_argument('--r', type=int, default=2)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主入口函数"""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level)

    if not args.command:
        parser.print_help()
        return EXIT_OK

    try:
        return COMMANDS[args.command](args)
    except (InputError, DomainError) as e:
        logger.error(f"输入错误: {e}")
        return EXIT_INPUT
    except OpaError as e:
        logger.error(f"数值失败（{type(e).__name__}）: {e}")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
