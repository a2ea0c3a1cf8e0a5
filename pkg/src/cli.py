#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Командная строка

    python -m src.cli <команда> [параметры]

Команды: validate, reformulate, solve, separate, generate, calibrate,
evaluate, compare, stress.

Коды завершения: 0 - успех, 1 - решатель не достиг оптимума,
2 - ошибка входных данных, 3 - нарушение внутреннего инварианта.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, TextIO, Tuple

from pydantic import BaseModel, Field, ValidationError

from src.config import get_settings
from src.errors import RobustLPError, ValidationFailedError
from src.instances.budgeted import bs_from_mb, budget_from_profile, solve_bs
from src.instances.calibration import BandSpec, DeviationDistribution, calibrate_bands, calibrate_uncertainty
from src.instances.pap import PapParams, generate_pap
from src.instances.protection import evaluate_protection
from src.instances.stress import in_set_stress
from src.models.canonical import CanonicalForm, canonicalize, validate
from src.models.lp import LinearProgram
from src.models.uncertainty import MultiBandUncertaintySet
from src.parsers.instance_parser import InstanceData, load_instance
from src.parsers.instance_writer import write_instance
from src.parsers.vector_parser import load_vector, write_vector
from src.reformulate import build_compact
from src.reports import ComparisonRow, ReportGenerator, delta_t_pct, format_block, format_certificates
from src.separation import VIOLATION_TOLERANCE, check_robust, emit_cut
from src.solver.base_solver import LpSolverInterface, LpStatus
from src.solver.factory import SolverFactory
from src.solver.routes import (
    CUTS_ALL,
    CUTS_MOST_VIOLATED,
    METHOD_COMPACT,
    METHOD_CUTS,
    CutLimits,
    SolveReport,
    routes_agree,
    solve_compact,
    solve_cutting_planes,
    solve_nominal,
)
from src.utils.logging_config import setup_logging

logger = logging.getLogger(__name__)

METHOD_BOTH = "both"
FORMAT_TABLE = "table"
FORMAT_JSON = "json"


class RunConfig(BaseModel):
    """
    Параметры запуска, собранные из флагов

    Попадает в машиночитаемый вывод; одинаковый RunConfig и одинаковые
    входные файлы дают побайтно одинаковый JSON.
    """

    command: str
    inputs: List[str] = Field(default_factory=list)
    method: str = METHOD_COMPACT
    solver: str = "builtin"
    tol: float = Field(default=VIOLATION_TOLERANCE, gt=0)
    seed: int = Field(default=0, ge=0)
    output_format: Literal["table", "json"] = FORMAT_TABLE
    output: Optional[str] = None
    options: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        common = {"command", "inputs", "method", "solver", "tol", "seed", "format", "output",
                  "handler", "log_level", "log_json"}
        options = {k: v for k, v in sorted(vars(args).items()) if k not in common}
        return cls(
            command=args.command,
            inputs=[str(p) for p in getattr(args, "inputs", [])],
            method=getattr(args, "method", METHOD_COMPACT),
            solver=getattr(args, "solver", None) or get_settings().default_solver,
            tol=getattr(args, "tol", VIOLATION_TOLERANCE),
            seed=getattr(args, "seed", 0),
            output_format=args.format,
            output=args.output,
            options=options,
        )

    def option(self, key: str, default: Any = None) -> Any:
        value = self.options.get(key)
        return default if value is None else value


class _Output:
    """Вывод результата: текстовый блок или JSON в stdout, JSON в файл по --output"""

    def __init__(self, config: RunConfig, stream: TextIO):
        self.config = config
        self.stream = stream
        self.reports = ReportGenerator()

    def emit(self, text: str, payload: Dict[str, Any]) -> None:
        payload = dict(payload)
        payload["config"] = self.config.model_dump()
        if self.config.output_format == FORMAT_JSON:
            self.stream.write(self.reports.dumps(payload))
        else:
            self.stream.write(text)
        if self.config.output:
            self.reports.export_to_json(payload, self.config.output)


# ===================== Общие шаги =====================

def _load_checked(path: str) -> InstanceData:
    data = load_instance(path)
    report = validate(data.lp, data.uncertainty)
    if not report.is_valid:
        raise ValidationFailedError(report.violations)
    return data


def _canonical(data: InstanceData, config: RunConfig) -> CanonicalForm:
    return canonicalize(data.lp, data.uncertainty, strict=bool(config.option("strict", False)))


def _solver(config: RunConfig) -> LpSolverInterface:
    options = {"bland": True} if config.option("bland", False) and config.solver == "builtin" else None
    return SolverFactory.create_solver(config.solver, options)


def _limits(config: RunConfig) -> CutLimits:
    return CutLimits(
        max_iter=config.option("max_iter"),
        time_limit=config.option("time_limit"),
        tol=config.tol,
        cuts_per_round=config.option("cuts_per_round", CUTS_ALL),
        lexicographic=not config.option("first_optimal", False),
    )


def _distribution(config: RunConfig) -> DeviationDistribution:
    samples = config.option("samples_file")
    if samples:
        return DeviationDistribution.empirical(load_vector(samples))
    return DeviationDistribution.lognormal(config.option("sigma_db", 5.5))


def _band_spec(config: RunConfig) -> BandSpec:
    return BandSpec(
        num_neg=config.option("num_neg", 3),
        num_pos=config.option("num_pos", 3),
        band_width_frac=config.option("width", 0.05),
        shrink=config.option("shrink", 0.8),
        stretch=config.option("stretch", 1.2),
    )


def _solve_pair(
    lp: LinearProgram, u: MultiBandUncertaintySet, solver: LpSolverInterface, config: RunConfig, method: str
) -> Dict[str, SolveReport]:
    reports: Dict[str, SolveReport] = {}
    if method in (METHOD_COMPACT, METHOD_BOTH):
        reports[METHOD_COMPACT] = solve_compact(
            lp, u, solver,
            elide_trivial_rows=not config.option("keep_trivial_rows", False),
            time_limit=config.option("time_limit"),
        )
    if method in (METHOD_CUTS, METHOD_BOTH):
        reports[METHOD_CUTS] = solve_cutting_planes(lp, u, solver, _limits(config))
    return reports


# ===================== Команды =====================

def cmd_validate(config: RunConfig, out: _Output) -> int:
    """Диагностика экземпляра без исключений"""
    data = load_instance(config.inputs[0])
    report = validate(data.lp, data.uncertainty)
    pairs: List[Tuple[str, Any]] = [
        ("instance", config.inputs[0]),
        ("rows", data.lp.num_rows),
        ("vars", data.lp.num_vars),
        ("uncertain_coefficients", len(data.uncertainty.breakpoints)),
        ("valid", report.is_valid),
    ]
    pairs.extend(("violation", str(v)) for v in report.violations)
    out.emit(format_block(pairs), {"instance": config.inputs[0], **report.to_dict()})
    return 0 if report.is_valid else 2


def cmd_reformulate(config: RunConfig, out: _Output) -> int:
    """Компактный эквивалент в файл экземпляра с секцией [varmap]"""
    data = _load_checked(config.inputs[0])
    canon = _canonical(data, config)
    counterpart = build_compact(
        canon.lp, canon.uncertainty, elide_trivial_rows=not config.option("keep_trivial_rows", False)
    )
    target = config.option("out")
    write_instance(target, counterpart.rlp, None, counterpart, comments=[f"compact counterpart of {config.inputs[0]}"])
    summary = counterpart.summary()
    pairs = [
        ("instance", config.inputs[0]),
        ("written", target),
        ("base vars", summary["base_vars"]),
        ("base rows", summary["base_rows"]),
        ("added vars", summary["added_vars"]),
        ("added rows", summary["added_rows"]),
    ]
    out.emit(format_block(pairs), {"instance": config.inputs[0], "written": target, **summary})
    return 0


def cmd_solve(config: RunConfig, out: _Output) -> int:
    """Робастный оптимум компактным маршрутом, отсечениями или обоими"""
    data = _load_checked(config.inputs[0])
    canon = _canonical(data, config)
    solver = _solver(config)
    reports = _solve_pair(canon.lp, canon.uncertainty, solver, config, config.method)

    pairs: List[Tuple[str, Any]] = [("instance", config.inputs[0])]
    payload: Dict[str, Any] = {"instance": config.inputs[0]}
    for name, report in reports.items():
        pairs.extend([
            (f"{name}.status", report.status),
            (f"{name}.objective", report.objective),
            (f"{name}.nominal_objective", report.nominal_objective),
            (f"{name}.por_pct", report.por_pct),
            (f"{name}.cuts", report.cuts),
            (f"{name}.iterations", report.iterations),
            (f"{name}.lp_solves", report.lp_solves),
            (f"{name}.added_vars", report.added_vars),
            (f"{name}.added_rows", report.added_rows),
            (f"{name}.time_total", report.total_time),
        ])
        payload[name] = report.to_dict()
    if len(reports) == 2:
        agree = routes_agree(reports[METHOD_COMPACT], reports[METHOD_CUTS])
        dt = delta_t_pct(reports[METHOD_CUTS].total_time, reports[METHOD_COMPACT].total_time)
        pairs.extend([("routes_agree", agree), ("delta_t_pct", dt)])
        payload["routes_agree"] = agree

    final = reports.get(METHOD_COMPACT) or reports[METHOD_CUTS]
    pairs.append(("x", final.x))
    x_out = config.option("x_out")
    if x_out and final.x:
        write_vector(x_out, final.x)
    out.emit(format_block(pairs), payload)
    return 0 if all(r.status == LpStatus.OPTIMAL for r in reports.values()) else 1


def cmd_separate(config: RunConfig, out: _Output) -> int:
    """Сертификаты робастности и отсечения для заданного x"""
    data = _load_checked(config.inputs[0])
    canon = _canonical(data, config)
    x = load_vector(config.inputs[1])
    certificates = check_robust(
        canon.lp, canon.uncertainty, x, tol=config.tol,
        lexicographic=not config.option("first_optimal", False),
    )
    cuts = [emit_cut(c, canon.lp, canon.uncertainty) for c in certificates if c.violated]
    robust = not cuts
    text = format_block([
        ("instance", config.inputs[0]),
        ("robust", robust),
        ("violated_rows", len(cuts)),
    ]) + format_certificates(certificates)
    payload = {
        "instance": config.inputs[0],
        "robust": robust,
        "certificates": [
            dict(c.to_dict(), origin_row=canon.row_origin[c.row]) for c in certificates
        ],
        "cuts": [
            {"origin_row": canon.row_origin[cut.origin_row], "row": [[j, a] for j, a in cut.row], "rhs": cut.rhs}
            for cut in cuts
        ],
    }
    out.emit(text, payload)
    return 0


def cmd_generate(config: RunConfig, out: _Output) -> int:
    """Синтетический экземпляр PAP с откалиброванными полосами"""
    params = PapParams(
        num_tx=config.option("tx"),
        num_users=config.option("users"),
        area=config.option("area", 10.0),
        density=config.option("density", 0.1),
        seed=config.seed,
    )
    instance = generate_pap(params)
    lp = instance.lp_view()
    u = calibrate_uncertainty(lp, _distribution(config), _band_spec(config))
    target = config.option("out")
    write_instance(target, lp, u, comments=[
        f"synthetic PAP: users {instance.num_users}, transmitters {instance.num_tx}, seed {config.seed}",
    ])
    info = instance.to_dict()
    pairs = [("written", target)] + sorted(info.items())
    out.emit(format_block(pairs), {"written": target, **info})
    return 0


def cmd_calibrate(config: RunConfig, out: _Output) -> int:
    """Профиль полос для строки из n коэффициентов"""
    calibrated = calibrate_bands(_distribution(config), config.option("n"), _band_spec(config))
    profile = calibrated.profile
    gamma = budget_from_profile(profile)
    pairs: List[Tuple[str, Any]] = [
        ("n", config.option("n")),
        ("bands", list(profile.band_ids)),
        ("lower", list(profile.lower_counts)),
        ("upper", list(profile.upper_counts)),
        ("bs_gamma", gamma),
    ]
    pairs.extend((f"p[{k}]", p) for k, p in sorted(calibrated.probabilities.items()))
    payload = {
        "bands": list(profile.band_ids),
        "lower": list(profile.lower_counts),
        "upper": list(profile.upper_counts),
        "probabilities": {str(k): p for k, p in sorted(calibrated.probabilities.items())},
        "bs_gamma": gamma,
    }
    out.emit(format_block(pairs), payload)
    return 0


def cmd_evaluate(config: RunConfig, out: _Output) -> int:
    """Protect% решения по реализациям матрицы"""
    data = _load_checked(config.inputs[0])
    x = load_vector(config.inputs[1])
    coefficients = list(data.uncertainty.breakpoints) or None
    report = evaluate_protection(
        data.lp, x, _distribution(config),
        realizations=config.option("realizations", 1000),
        seed=config.seed,
        coefficients=coefficients,
        truncate=config.option("truncate"),
    )
    pairs = [
        ("instance", config.inputs[0]),
        ("realizations", report.realizations),
        ("feasible", report.feasible_count),
        ("protect_pct", report.protect_pct),
        ("seed", report.seed),
    ]
    out.emit(format_block(pairs), {"instance": config.inputs[0], **report.to_dict()})
    return 0


def cmd_stress(config: RunConfig, out: _Output) -> int:
    """Сценарии из множества неопределенности против x"""
    data = _load_checked(config.inputs[0])
    canon = _canonical(data, config)
    x = load_vector(config.inputs[1])
    report = in_set_stress(
        canon.lp, canon.uncertainty, x,
        samples=config.option("samples", 10000),
        seed=config.seed,
        interior=bool(config.option("interior", False)),
        tol=config.tol,
    )
    pairs = [
        ("instance", config.inputs[0]),
        ("samples", report.samples),
        ("failures", report.failures),
        ("dominance_failures", report.dominance_failures),
        ("passed", report.passed),
    ]
    out.emit(format_block(pairs), {"instance": config.inputs[0], **report.to_dict()})
    return 0


def _compare_one(
    name: str, lp: LinearProgram, u: MultiBandUncertaintySet, config: RunConfig, solver: LpSolverInterface
) -> ComparisonRow:
    canon = canonicalize(lp, u, strict=bool(config.option("strict", False)))
    reports = _solve_pair(canon.lp, canon.uncertainty, solver, config, METHOD_BOTH)
    compact, cuts = reports[METHOD_COMPACT], reports[METHOD_CUTS]
    bs_report = solve_bs(canon.lp, bs_from_mb(canon.uncertainty), solver)
    nominal_x = solve_nominal(canon.lp, solver).x

    dist = _distribution(config)
    coefficients = list(u.breakpoints) or None
    realizations = config.option("realizations", 1000)

    def protect(x: Sequence[float]) -> float:
        return evaluate_protection(
            lp, x, dist, realizations=realizations, seed=config.seed,
            coefficients=coefficients, truncate=config.option("truncate"),
        ).protect_pct

    row = ComparisonRow(
        instance=name,
        rows=lp.num_rows,
        cols=lp.num_vars,
        added_rows=compact.added_rows,
        added_cols=compact.added_vars,
        por_mb=compact.por_pct,
        por_bs=bs_report.por_pct,
        delta_t_pct=delta_t_pct(cuts.total_time, compact.total_time),
        protect_nominal=protect(nominal_x),
        protect_mb=protect(compact.x),
        protect_bs=protect(bs_report.x),
        objectives_agree=routes_agree(compact, cuts),
    )
    if not row.objectives_agree:
        logger.warning(f"{name}: маршруты дали разные оптимумы {compact.objective!r} и {cuts.objective!r}")
    return row


def cmd_compare(config: RunConfig, out: _Output) -> int:
    """Номинал, многополосная модель (два маршрута) и модель с бюджетом на одном наборе"""
    sources: List[Tuple[str, LinearProgram, MultiBandUncertaintySet]] = []
    for path in config.inputs:
        data = _load_checked(path)
        sources.append((Path(path).name, data.lp, data.uncertainty))
    for offset in range(config.option("generate", 0)):
        seed = config.seed + offset
        params = PapParams(
            num_tx=config.option("tx", 50),
            num_users=config.option("users", 20),
            area=config.option("area", 10.0),
            density=config.option("density", 0.1),
            seed=seed,
        )
        lp = generate_pap(params).lp_view()
        sources.append((f"pap-{seed}", lp, calibrate_uncertainty(lp, _distribution(config), _band_spec(config))))
    if not sources:
        raise ValueError("нет экземпляров: укажите файлы или --generate N")

    solver = _solver(config)
    for name, lp, u in sources:
        out.reports.add_comparison(_compare_one(name, lp, u, config, solver))
    out.emit(out.reports.comparison_table(), out.reports.summary())
    agree = all(r.objectives_agree for r in out.reports.rows)
    return 0 if agree else 3


COMMANDS: Dict[str, Callable[[RunConfig, _Output], int]] = {
    "validate": cmd_validate,
    "reformulate": cmd_reformulate,
    "solve": cmd_solve,
    "separate": cmd_separate,
    "generate": cmd_generate,
    "calibrate": cmd_calibrate,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
    "stress": cmd_stress,
}


# ===================== Разбор аргументов =====================

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=[FORMAT_TABLE, FORMAT_JSON], default=FORMAT_TABLE,
                        help="Вывод в stdout: текстовый блок или JSON")
    parser.add_argument("--output", help="Дополнительно записать JSON в файл")
    parser.add_argument("--log-level", help="Уровень логирования (по умолчанию RLP_LOG_LEVEL)")
    parser.add_argument("--log-json", action="store_true", help="Логи в формате JSON")


def _add_solver(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--solver", help="builtin | scipy | exec:<path>")
    parser.add_argument("--bland", action="store_true", help="Правило Бленда во встроенном симплексе")
    parser.add_argument("--tol", type=float, default=VIOLATION_TOLERANCE, help="Допуск нарушения")
    parser.add_argument("--max-iter", type=int, help="Лимит раундов отсечений")
    parser.add_argument("--time-limit", type=float, help="Лимит времени, с")
    parser.add_argument("--cuts-per-round", choices=[CUTS_ALL, CUTS_MOST_VIOLATED], default=CUTS_ALL)
    parser.add_argument("--keep-trivial-rows", action="store_true",
                        help="Не удалять тривиальные полосы из компактного эквивалента")
    parser.add_argument("--strict", action="store_true", help="Запретить строки-равенства")
    parser.add_argument("--first-optimal", action="store_true",
                        help="Отсечения по первому найденному худшему назначению")


def _add_distribution(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sigma-db", type=float, default=5.5, help="σ логнормального распределения, дБ")
    parser.add_argument("--samples-file", help="Эмпирическая выборка относительных отклонений")


def _add_bands(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--num-neg", type=int, default=3)
    parser.add_argument("--num-pos", type=int, default=3)
    parser.add_argument("--width", type=float, default=0.05, help="Ширина полосы в долях номинала")
    parser.add_argument("--shrink", type=float, default=0.8)
    parser.add_argument("--stretch", type=float, default=1.2)


def _add_pap(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--tx", type=int, required=required, default=None if required else 50)
    parser.add_argument("--users", type=int, required=required, default=None if required else 20)
    parser.add_argument("--area", type=float, default=10.0)
    parser.add_argument("--density", type=float, default=0.1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rlp", description="Робастное LP с многополосной неопределенностью")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Проверка экземпляра")
    p.add_argument("inputs", nargs=1, metavar="INSTANCE")
    _add_common(p)

    p = sub.add_parser("reformulate", help="Компактный эквивалент")
    p.add_argument("inputs", nargs=1, metavar="INSTANCE")
    p.add_argument("out", metavar="OUT")
    p.add_argument("--keep-trivial-rows", action="store_true")
    p.add_argument("--strict", action="store_true")
    _add_common(p)

    p = sub.add_parser("solve", help="Робастный оптимум")
    p.add_argument("inputs", nargs=1, metavar="INSTANCE")
    p.add_argument("--method", choices=[METHOD_COMPACT, METHOD_CUTS, METHOD_BOTH], default=METHOD_COMPACT)
    p.add_argument("--x-out", help="Записать x в файл вектора")
    _add_solver(p)
    _add_common(p)

    p = sub.add_parser("separate", help="Проверка робастности x")
    p.add_argument("inputs", nargs=2, metavar=("INSTANCE", "X"))
    p.add_argument("--tol", type=float, default=VIOLATION_TOLERANCE)
    p.add_argument("--first-optimal", action="store_true",
                   help="Первое найденное худшее назначение вместо лексикографически наименьшего")
    p.add_argument("--strict", action="store_true")
    _add_common(p)

    p = sub.add_parser("generate", help="Синтетический экземпляр PAP")
    p.add_argument("out", metavar="OUT")
    p.add_argument("--seed", type=int, default=0)
    _add_pap(p, required=True)
    _add_distribution(p)
    _add_bands(p)
    _add_common(p)

    p = sub.add_parser("calibrate", help="Полосы по распределению отклонений")
    p.add_argument("--n", type=int, required=True, help="Число коэффициентов строки")
    _add_distribution(p)
    _add_bands(p)
    _add_common(p)

    p = sub.add_parser("evaluate", help="Protect% решения")
    p.add_argument("inputs", nargs=2, metavar=("INSTANCE", "X"))
    p.add_argument("--realizations", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--truncate", type=float, help="Усечение относительного отклонения")
    _add_distribution(p)
    _add_common(p)

    p = sub.add_parser("compare", help="Сравнение номинала, многополосной модели и модели с бюджетом")
    p.add_argument("inputs", nargs="*", metavar="INSTANCE")
    p.add_argument("--generate", type=int, default=0, help="Добавить N синтетических экземпляров")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--realizations", type=int, default=1000)
    p.add_argument("--truncate", type=float)
    _add_pap(p, required=False)
    _add_distribution(p)
    _add_bands(p)
    _add_solver(p)
    _add_common(p)

    p = sub.add_parser("stress", help="Сценарии из множества неопределенности")
    p.add_argument("inputs", nargs=2, metavar=("INSTANCE", "X"))
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--interior", action="store_true")
    p.add_argument("--tol", type=float, default=VIOLATION_TOLERANCE)
    p.add_argument("--strict", action="store_true")
    _add_common(p)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Точка входа

    Args:
        argv: Аргументы (по умолчанию sys.argv[1:])
        stdout: Поток результата (по умолчанию sys.stdout)

    Returns:
        Код завершения
    """
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(args.log_level or settings.log_level, args.log_json or settings.log_json)

    try:
        config = RunConfig.from_args(args)
        return COMMANDS[config.command](config, _Output(config, stdout or sys.stdout))
    except RobustLPError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (ValidationError, ValueError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
