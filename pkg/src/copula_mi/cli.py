"""Command-line surface: estimate, entropy, and sweep subcommands.

Exit codes are a stable contract: 0 on success, 1 on usage or data
errors (unparseable files, bad flags, unwritable paths), 2 on
estimation errors (degenerate geometry such as coincident points).
"""

import argparse
import json
import sys

from .copula import RankScaling, TiePolicy
from .data import ColumnSpec, read_csv
from .errors import DataError, EstimationError
from .estimators import EstimatorConfig, copula_entropy, kl_entropy, mi_copula, mi_ksg
from .knn import Backend, NormKind
from .sweep import SweepConfig, run_sweep, sweep_to_csv, sweep_to_json

__all__ = ["main", "entrypoint", "cmd_estimate", "cmd_entropy", "cmd_sweep"]


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; our contract says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_estimator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=3, help="neighbor order (default 3)")
    p.add_argument(
        "--norm",
        choices=[n.value for n in NormKind],
        default=NormKind.CHEBYSHEV.value,
        help="distance norm (default chebyshev)",
    )
    p.add_argument(
        "--rank-scale",
        choices=[s.value for s in RankScaling],
        default=RankScaling.T_PLUS_1.value,
        help="rank denominator: T or T+1 (default T+1)",
    )
    p.add_argument(
        "--ties",
        choices=[t.value for t in TiePolicy],
        default=TiePolicy.OCCURRENCE.value,
        help="tie handling in the rank transform (default occurrence)",
    )
    p.add_argument(
        "--backend",
        choices=[b.value for b in Backend],
        default=Backend.KDTREE.value,
        help="neighbor-search backend (default kdtree)",
    )


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="CSV file of samples, one observation per row")
    p.add_argument("--header", action="store_true", help="first CSV row is a header")
    p.add_argument(
        "--columns",
        help="comma-separated column selection, by 0-based index or by header name",
    )
    p.add_argument("--bits", action="store_true", help="also report the value in bits")
    p.add_argument(
        "--format",
        choices=["text", "json"],
        default="text",
        help="output format (default text)",
    )


def _estimator_config(args) -> EstimatorConfig:
    return EstimatorConfig(
        k=args.k,
        norm=args.norm,
        rank_scaling=args.rank_scale,
        tie_policy=args.ties,
        backend=args.backend,
    )


def _column_specs(selection: str, path: str, has_header: bool) -> list[ColumnSpec]:
    tokens = [t.strip() for t in selection.split(",")]
    if any(not t for t in tokens):
        raise DataError(f"empty token in column selection {selection!r}")
    names = [t for t in tokens if not t.lstrip("-").isdigit()]
    header_names: list[str] | None = None
    if names:
        if not has_header:
            raise DataError(
                f"column names {names} require --header to resolve against"
            )
        with open(path, "r", encoding="utf-8") as f:
            for raw in f:
                line = raw.strip()
                if line and not line.startswith("#"):
                    header_names = [c.strip() for c in line.split(",")]
                    break
        if header_names is None:
            raise DataError("no header row found to resolve column names against")

    specs = []
    for tok in tokens:
        if tok.lstrip("-").isdigit():
            specs.append(ColumnSpec(index=int(tok)))
        else:
            if tok not in header_names:
                raise DataError(f"no column named {tok!r} in header {header_names}")
            specs.append(ColumnSpec(index=header_names.index(tok), name=tok))
    if len({s.index for s in specs}) != len(specs):
        raise DataError("duplicate column selection yields coincident ranks")
    return specs


def _load_matrix(args):
    columns = None
    if args.columns is not None:
        columns = _column_specs(args.columns, args.input, args.header)
    return read_csv(args.input, has_header=args.header, columns=columns)


def _emit(fields: list[tuple[str, object]], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(dict(fields), indent=2))
    else:
        for key, value in fields:
            print(f"{key}: {value!r}" if isinstance(value, float) else f"{key}: {value}")


def cmd_estimate(args) -> int:
    m = _load_matrix(args)
    config = _estimator_config(args)
    if args.method == "copent":
        est = mi_copula(m, config)
    else:
        est = mi_ksg(m, config)
    fields: list[tuple[str, object]] = [("method", args.method), ("mi_nats", est.nats)]
    if args.bits:
        fields.append(("mi_bits", est.bits))
    fields.extend([("T", est.T), ("N", m.N), ("k", config.k)])
    _emit(fields, args.format)
    return 0


def cmd_entropy(args) -> int:
    m = _load_matrix(args)
    config = _estimator_config(args)
    if args.copula:
        est = copula_entropy(m, config)
    else:
        est = kl_entropy(m.values, config)
    fields: list[tuple[str, object]] = [("method", est.method), ("entropy_nats", est.nats)]
    if args.bits:
        fields.append(("entropy_bits", est.bits))
    fields.extend([("T", est.T), ("d", est.d), ("k", est.k)])
    _emit(fields, args.format)
    return 0


def _rho_grid(rho_min: float, rho_max: float, rho_step: float) -> tuple[float, ...]:
    if rho_step <= 0.0:
        raise DataError(f"--rho-step must be positive, got {rho_step}")
    if rho_max < rho_min:
        raise DataError(f"--rho-max {rho_max} is below --rho-min {rho_min}")
    n = int(round((rho_max - rho_min) / rho_step)) + 1
    # rounding to 12 decimals keeps 0.30000000000000004-style drift out of
    # the output grid without disturbing intentional values
    return tuple(round(rho_min + i * rho_step, 12) for i in range(n))


def cmd_sweep(args) -> int:
    config = SweepConfig(
        rho_values=_rho_grid(args.rho_min, args.rho_max, args.rho_step),
        T=args.samples,
        trials=args.trials,
        base_seed=args.seed,
        estimator=_estimator_config(args),
    )
    result = run_sweep(config)
    rendered = sweep_to_csv(result) if args.format == "csv" else sweep_to_json(result)
    if args.output is None:
        sys.stdout.write(rendered)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as f:
            f.write(rendered)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="copula-mi",
        description="Mutual information estimation via empirical copula entropy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="estimate mutual information from a CSV file")
    _add_input_flags(p_est)
    _add_estimator_flags(p_est)
    p_est.add_argument(
        "--method",
        choices=["copent", "ksg"],
        default="copent",
        help="copent (any dimension) or ksg (bivariate baseline)",
    )
    p_est.set_defaults(run=cmd_estimate)

    p_ent = sub.add_parser("entropy", help="estimate differential entropy from a CSV file")
    _add_input_flags(p_ent)
    _add_estimator_flags(p_ent)
    p_ent.add_argument(
        "--copula",
        action="store_true",
        help="estimate the entropy of the empirical copula instead of the raw data",
    )
    p_ent.set_defaults(run=cmd_entropy)

    p_sweep = sub.add_parser("sweep", help="run the correlated-Gaussian benchmark sweep")
    _add_estimator_flags(p_sweep)
    p_sweep.add_argument("--rho-min", type=float, default=0.0,
                         help="first correlation value (default 0.0)")
    p_sweep.add_argument("--rho-max", type=float, default=0.9,
                         help="last correlation value (default 0.9)")
    p_sweep.add_argument("--rho-step", type=float, default=0.1,
                         help="grid step, must be positive (default 0.1)")
    p_sweep.add_argument("--samples", type=int, default=1000, help="samples per trial (default 1000)")
    p_sweep.add_argument("--trials", type=int, default=30, help="trials per rho (default 30)")
    p_sweep.add_argument("--seed", type=int, default=1729, help="base seed (default 1729)")
    p_sweep.add_argument("--output", help="output path (default: stdout)")
    p_sweep.add_argument(
        "--format",
        choices=["csv", "json"],
        default="csv",
        help="output format (default csv)",
    )
    p_sweep.set_defaults(run=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EstimationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
