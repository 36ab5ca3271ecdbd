"""Command-line front end.

Subcommands: model (build/validate/export), verify (proved-identity suite),
filtration (dimension tables), conjecture (conjecture checkers),
gamma-coeffs (universal coefficient tables), series (index -1 expansion
under both logarithm normalizations).

Exit codes: 0 all requested checks pass (skips do not fail), 1 a check
failed, 2 usage or parse error, 3 filtration saturation did not converge.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import modelio, reports
from .errors import ConvergenceError, KringError, ModelParseError
from .model import validate

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3


def _add_model_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--builder", choices=sorted(modelio.BUILDERS), help="bundled model family"
    )
    parser.add_argument("--g", type=int, help="dimension parameter g >= 1")
    parser.add_argument("--model-file", type=Path, help="model document to load")


def _add_run_config(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--order", type=int, help="series truncation order override")
    parser.add_argument("--seed", type=int, default=0, help="saturation seed")
    parser.add_argument(
        "--max-rounds", type=int, default=8, help="saturation round budget"
    )
    parser.add_argument(
        "--format", choices=("text", "structured"), default="text", dest="fmt"
    )
    parser.add_argument("--out", type=Path, help="write the report to this file")
    parser.add_argument(
        "--timings", action="store_true",
        help="include wall-clock timings (breaks byte-determinism)",
    )


def _resolve_model(args) -> tuple:
    if args.model_file is not None:
        model = modelio.load_model(args.model_file)
        return model, str(args.model_file)
    if args.builder is None:
        raise ModelParseError("need --builder with --g, or --model-file", "builder")
    if args.g is None or args.g < 1:
        raise ModelParseError("--g must be an integer >= 1", "g")
    return modelio.build_model(args.builder, args.g), f"{args.builder}(g={args.g})"


def _check_order(args, model) -> int | None:
    if args.order is None:
        return None
    if args.order < model.g + 1:
        raise ModelParseError("--order must be at least g + 1", "order")
    return args.order


def _emit(args, text: str) -> None:
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_report(args, report) -> int:
    _emit(args, report.to_json() if args.fmt == "structured" else report.to_text())
    return EXIT_PASS if report.ok else EXIT_FAIL


def _cmd_model(args) -> int:
    model, source = _resolve_model(args)
    report = validate(model)
    document = modelio.export_model(model)
    if args.out is not None:
        args.out.write_text(document, encoding="utf-8")
        sys.stdout.write(
            f"model {source}: {'admissible' if report.ok else 'INADMISSIBLE'}; "
            f"fingerprint {modelio.fingerprint(model)}\n"
        )
    elif args.fmt == "structured":
        sys.stdout.write(document)
    else:
        sys.stdout.write(
            f"model {source}: dim {model.dim}, g={model.g}\n"
            f"fingerprint: {modelio.fingerprint(model)}\n"
            f"validation: {report}\n"
        )
    return EXIT_PASS if report.ok else EXIT_FAIL


def _cmd_verify(args) -> int:
    model, source = _resolve_model(args)
    report = reports.run_verify_suite(
        model, source,
        order=_check_order(args, model),
        seed=args.seed, max_rounds=args.max_rounds, with_timings=args.timings,
    )
    return _emit_report(args, report)


def _cmd_conjecture(args) -> int:
    model, source = _resolve_model(args)
    report = reports.run_conjecture_suite(
        model, source,
        order=_check_order(args, model),
        seed=args.seed, max_rounds=args.max_rounds, with_timings=args.timings,
    )
    return _emit_report(args, report)


def _cmd_filtration(args) -> int:
    model, source = _resolve_model(args)
    kinds = ("gamma", "star", "pi", "Gamma") if args.kind == "all" else (args.kind,)
    methods = (
        ("saturation", "eigen_sum") if args.method == "both" else (args.method,)
    )
    report = reports.run_filtration_tables(
        model, source, kinds=kinds, methods=methods, n_max=args.n_max,
        order=_check_order(args, model), seed=args.seed, max_rounds=args.max_rounds,
    )
    return _emit_report(args, report)


def _cmd_gamma_coeffs(args) -> int:
    if args.d < 1 or args.i < 1 or args.m_max < 1:
        raise ModelParseError("--d, --i and --m-max must be >= 1", "gamma-coeffs")
    report = reports.run_gamma_coeff_report(args.i, args.d, args.m_max)
    return _emit_report(args, report)


def _cmd_series(args) -> int:
    report = reports.run_series_report(args.j, args.order or 5)
    return _emit_report(args, report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kring",
        description=(
            "Exact checks for bigraded models of a rational Grothendieck ring"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_model = sub.add_parser("model", help="build, validate, and export a model")
    _add_model_source(p_model)
    p_model.add_argument("--out", type=Path)
    p_model.add_argument("--format", choices=("text", "structured"), default="text", dest="fmt")
    p_model.set_defaults(fn=_cmd_model)

    p_verify = sub.add_parser("verify", help="run the proved-identity suite")
    _add_model_source(p_verify)
    _add_run_config(p_verify)
    p_verify.set_defaults(fn=_cmd_verify)

    p_conj = sub.add_parser("conjecture", help="run the conjecture checkers")
    _add_model_source(p_conj)
    _add_run_config(p_conj)
    p_conj.set_defaults(fn=_cmd_conjecture)

    p_fil = sub.add_parser("filtration", help="filtration dimension tables")
    _add_model_source(p_fil)
    _add_run_config(p_fil)
    p_fil.add_argument(
        "--kind", choices=("gamma", "star", "pi", "Gamma", "all"), default="all"
    )
    p_fil.add_argument(
        "--method", choices=("saturation", "eigen_sum", "both"), default="both"
    )
    p_fil.add_argument("--n-max", type=int, default=None)
    p_fil.set_defaults(fn=_cmd_filtration)

    p_gamma = sub.add_parser("gamma-coeffs", help="universal gamma coefficients")
    p_gamma.add_argument("--d", type=int, required=True, help="weight d >= 1")
    p_gamma.add_argument("--i", type=int, required=True, help="largest gamma index")
    p_gamma.add_argument("--m-max", type=int, default=4, help="largest power")
    p_gamma.add_argument("--format", choices=("text", "structured"), default="text", dest="fmt")
    p_gamma.add_argument("--out", type=Path)
    p_gamma.set_defaults(fn=_cmd_gamma_coeffs)

    p_series = sub.add_parser(
        "series", help="index-j gamma expansion under both normalizations"
    )
    p_series.add_argument("--j", type=int, default=-1, help="derived index of the class")
    p_series.add_argument("--order", type=int, default=5)
    p_series.add_argument("--format", choices=("text", "structured"), default="text", dest="fmt")
    p_series.add_argument("--out", type=Path)
    p_series.set_defaults(fn=_cmd_series)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        return args.fn(args)
    except ConvergenceError as exc:
        sys.stderr.write(
            f"error: {exc} (dimension vectors {exc.previous_dims} -> {exc.last_dims})\n"
        )
        return EXIT_NO_CONVERGENCE
    except ModelParseError as exc:
        sys.stderr.write(f"error [{exc.field}]: {exc}\n")
        return EXIT_USAGE
    except (OSError, KringError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
