"""Command-line interface.

Subcommands:
  analyze   load a CSV, preprocess the declared variables, print strata
  sample    full pipeline: stratify, size, allocate, draw, write outputs
  validate  Monte Carlo CI-coverage check on a synthetic population

Exit codes: 0 success, 1 degenerate statistical input, 2 config/IO failure.
Flags override config-file values.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .dataset import DEFAULT_MISSING_TOKENS, load_csv
from .exceptions import ConfigError, DegenerateInputError, Error
from .montecarlo import coverage_report
from .report import (
    analysis_payload,
    format_strata_table,
    sampling_payload,
    to_json,
    write_json,
)
from .sampler import RepresentativeSampler


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repsample",
        description="Representative stratified random sampling for tabular populations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_sampling=True):
        p.add_argument("--config", help="JSON config file; flags win over file values")
        p.add_argument("--input", help="input CSV path (header row required)")
        p.add_argument(
            "--var",
            action="append",
            dest="vars",
            metavar="NAME:KIND",
            help="variable of interest, KIND is numerical|categorical (repeatable)",
        )
        p.add_argument("--id-column", help="column holding stable row identifiers")
        p.add_argument("--k", type=int, help="cluster count for numerical variables")
        p.add_argument("--k-range", metavar="LO:HI", help="elbow search range (default 1:10)")
        p.add_argument("--seed", type=int, help="random seed (default 0)")
        p.add_argument("--out-report", help="write the JSON report here")
        if with_sampling:
            p.add_argument("--epsilon", type=float, help="margin of error")
            p.add_argument(
                "--epsilon-mode",
                choices=["absolute", "relative-to-mean"],
                help="how epsilon applies to numerical variables",
            )
            p.add_argument("--confidence", type=float, help="confidence level (default 0.95)")
            p.add_argument("--iterations", type=int, help="candidate draws (default 5)")
            p.add_argument("--sample-size", type=int, help="explicit total sample size")
            p.add_argument("--out-sample", help="write the sample CSV here")

    add_common(sub.add_parser("analyze", help="preprocess and stratify only"), with_sampling=False)
    add_common(sub.add_parser("sample", help="run the full sampling pipeline"))

    v = sub.add_parser("validate", help="Monte Carlo CI-coverage self-check")
    v.add_argument("--config", help="JSON config file; flags win over file values")
    v.add_argument("--population-size", type=int, help="synthetic population size (default 50000)")
    v.add_argument("--r", type=int, help="repetitions (default 1000, minimum 100)")
    v.add_argument("--epsilon", type=float, help="margin of error (default 0.05)")
    v.add_argument(
        "--epsilon-mode",
        choices=["absolute", "relative-to-mean"],
        help="epsilon interpretation (default relative-to-mean)",
    )
    v.add_argument("--confidence", type=float, help="confidence level (default 0.95)")
    v.add_argument("--k", type=int, help="cluster count (default 3)")
    v.add_argument("--seed", type=int, help="random seed (default 0)")
    v.add_argument("--census", action="store_true", default=None, help="draw every stratum fully")
    v.add_argument("--out-report", help="write the JSON coverage report here")
    return parser


def _load_config_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path}: invalid JSON ({exc})") from exc
    if not isinstance(config, dict):
        raise ConfigError(f"config file {path}: expected a JSON object")
    return config


def _merge(args: argparse.Namespace) -> dict:
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update(_load_config_file(args.config))
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            merged[key] = value
    return merged


def _epsilon_mode(value):
    if value is None:
        return None
    return value.replace("-", "_")


def _parse_k_range(value) -> tuple[int, int]:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return int(value[0]), int(value[1])
    try:
        lo, hi = str(value).split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise ConfigError(f"--k-range must look like LO:HI, got {value!r}") from exc


def _build_sampler(cfg: dict) -> tuple[RepresentativeSampler, str]:
    if not cfg.get("input"):
        raise ConfigError("an input CSV is required (--input or config key 'input')")
    variables = cfg.get("vars") or cfg.get("var")
    if isinstance(variables, str):
        variables = [variables]
    if not variables:
        raise ConfigError("at least one --var NAME:KIND is required")
    kwargs = dict(
        variables=variables,
        confidence=cfg.get("confidence", 0.95),
        n_clusters=cfg.get("k"),
        n_iterations=cfg.get("iterations", 5),
        sample_size=cfg.get("sample_size"),
        random_state=cfg.get("seed", 0),
        missing_tokens=tuple(cfg.get("missing_tokens", DEFAULT_MISSING_TOKENS)),
    )
    if cfg.get("epsilon") is not None:
        kwargs["epsilon"] = cfg["epsilon"]
    mode = _epsilon_mode(cfg.get("epsilon_mode"))
    if mode is not None:
        kwargs["epsilon_mode"] = mode
    if cfg.get("k_range") is not None:
        kwargs["k_range"] = _parse_k_range(cfg["k_range"])
    return RepresentativeSampler(**kwargs), cfg["input"]


def _load_dataset(cfg: dict):
    return load_csv(
        cfg["input"],
        missing_tokens=tuple(cfg.get("missing_tokens", DEFAULT_MISSING_TOKENS)),
        id_column=cfg.get("id_column"),
    )


def cmd_analyze(cfg: dict) -> int:
    sampler, input_path = _build_sampler(cfg)
    sampler.analyze(_load_dataset(cfg))
    payload = analysis_payload(sampler, input_path=input_path)
    print(f"population: {sampler.dataset_.row_count} rows")
    print(format_strata_table(sampler.stratification_))
    if cfg.get("out_report"):
        write_json(payload, cfg["out_report"])
    else:
        print(to_json(payload), end="")
    return 0


def _write_sample_csv(sampler: RepresentativeSampler, path) -> None:
    ds = sampler.dataset_
    positions = sampler.sample_row_positions()
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(ds.header)
        writer.writerows(ds.rows[i] for i in positions)


def cmd_sample(cfg: dict) -> int:
    sampler, input_path = _build_sampler(cfg)
    sampler.fit(_load_dataset(cfg))
    sampler.sample()
    payload = sampling_payload(sampler, input_path=input_path)

    report = sampler.iteration_report_
    print(f"population: {sampler.dataset_.row_count} rows")
    print(f"plan: n={sampler.plan_.n}  z={sampler.plan_.z:.6f}")
    print(format_strata_table(sampler.stratification_))
    print(f"chosen iteration: {report.chosen} of {len(report.iterations)}")
    if cfg.get("out_sample"):
        _write_sample_csv(sampler, cfg["out_sample"])
        print(f"sample written to {cfg['out_sample']}")
    if cfg.get("out_report"):
        write_json(payload, cfg["out_report"])
        print(f"report written to {cfg['out_report']}")
    else:
        print(to_json(payload), end="")
    return 0


def cmd_validate(cfg: dict) -> int:
    payload = coverage_report(
        population_size=cfg.get("population_size", 50_000),
        r=cfg.get("r", 1000),
        epsilon=cfg.get("epsilon", 0.05),
        epsilon_mode=_epsilon_mode(cfg.get("epsilon_mode")) or "relative_to_mean",
        confidence=cfg.get("confidence", 0.95),
        k=cfg.get("k", 3),
        seed=cfg.get("seed", 0),
        census=bool(cfg.get("census", False)),
    )
    print(
        f"coverage: {payload['coverage']:.4f} (nominal {payload['confidence']}) "
        f"over {payload['repetitions']} draws of n={payload['plan_n']}"
    )
    print(f"estimator bias: {payload['estimator_bias']:.6g}")
    if cfg.get("out_report"):
        write_json(payload, cfg["out_report"])
    else:
        print(to_json(payload), end="")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge(args)
        if args.command == "analyze":
            return cmd_analyze(cfg)
        if args.command == "sample":
            return cmd_sample(cfg)
        return cmd_validate(cfg)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegenerateInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
