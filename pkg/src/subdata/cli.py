"""Command-line interface.

Every subcommand is a thin shell over documented library calls:

- ``select``    -> io.read_csv, one selector, io.write_selection
- ``simulate``  -> bench.run_simulation, bench.summarize, io.write_results
- ``timing``    -> bench.run_timing, io.write_timing
- ``bootstrap`` -> io.read_csv, bench.run_bootstrap, io.write_results
- ``gen-data``  -> datagen.gen_dataset, io.write_dataset

Options may come from a config file (``--config``): flat ``key = value``
lines using the long flag names. Explicit flags always win over the
file, which wins over built-in defaults. SUBDATA_THREADS caps the
simulation worker pool.

Exit status: 0 on success with zero flagged records, 1 when any record
was flagged or a run failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import bench, datagen, io as data_io
from .errors import ConfigError, SubdataError
from .regression import expand_interactions
from .selectors import (
    LevssConfig,
    select_iboss,
    select_levss,
    select_oss,
    select_uniform,
)

_CASE_ALIASES = {
    "1": "uniform01",
    "2": "mvnormal",
    "3": "truncated-mvnormal",
}


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in str(text).split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _parse_str_list(text: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in str(text).split(",") if tok.strip())


# one row per flag: dest -> (flag string, converter for config-file text,
# argparse kwargs). Converters also serve as the config-file type map.
_FLAGS: dict[str, tuple[str, object, dict]] = {
    "input": ("--input", str, {"help": "input CSV path"}),
    "output": ("--output", str, {"help": "output path (CSV; JSON lands beside it)"}),
    "config": ("--config", str, {"help": "flat key = value config file"}),
    "method": ("--method", _parse_str_list,
               {"help": "selector name, or comma-separated list where the "
                        "command compares several (levss,iboss,oss,uniform)"}),
    "k": ("--k", int, {"help": "subdata size"}),
    "threshold": ("--threshold", float,
                  {"help": "condition-number stopping bound for levss; "
                           "omit for no stopping rule"}),
    "case": ("--case", str,
             {"help": "scenario: uniform01 | mvnormal | truncated-mvnormal "
                      "(aliases 1, 2, 3)"}),
    "n": ("--n", _parse_int_list,
          {"help": "data size; timing accepts a comma-separated list"}),
    "p": ("--p", int, {"help": "covariate count"}),
    "reps": ("--reps", int, {"help": "repetition count"}),
    "boot": ("--boot", int, {"help": "bootstrap replicate count"}),
    "seed": ("--seed", int, {"help": "base RNG seed"}),
    "iboss_design": ("--iboss-design", str,
                     {"choices": ["main", "expanded"],
                      "help": "design the iboss selector sees"}),
    "log_response": ("--log-response", _parse_bool,
                     {"action": argparse.BooleanOptionalAction,
                      "help": "natural-log the response at ingestion"}),
    "k_multiples": ("--k-multiples", _parse_int_list,
                    {"help": "bootstrap k grid as multiples of p, e.g. 5,10,20,30"}),
    "covariates": ("--covariates", _parse_str_list,
                   {"help": "comma-separated covariate column names "
                            "(default: all but the response)"}),
    "response": ("--response", str, {"help": "response column name"}),
    "interaction": ("--interaction", _parse_bool,
                    {"action": argparse.BooleanOptionalAction,
                     "help": "include pairwise interactions in the scenario"}),
}

_COMMAND_FLAGS = {
    "select": ("input", "output", "config", "method", "k", "threshold", "seed",
               "covariates", "response", "log_response", "iboss_design"),
    "simulate": ("output", "config", "method", "k", "threshold", "case", "n",
                 "p", "reps", "seed", "iboss_design", "interaction"),
    "timing": ("output", "config", "method", "k", "case", "n", "p", "reps",
               "seed"),
    "bootstrap": ("input", "output", "config", "method", "threshold", "boot",
                  "k_multiples", "seed", "covariates", "response",
                  "log_response"),
    "gen-data": ("output", "config", "case", "n", "p", "k", "seed",
                 "interaction"),
}

_DEFAULTS = {
    "method": ("levss", "iboss", "oss", "uniform"),
    "case": "mvnormal",
    "seed": 0,
    "reps": {"simulate": 100, "timing": 5},
    "boot": 100,
    "k_multiples": (5, 10, 20, 30),
    "iboss_design": "main",
    "log_response": False,
    "interaction": False,
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation: command plus every effective option."""

    command: str
    output: str
    input: str | None = None
    methods: tuple[str, ...] = ()
    k: int | None = None
    threshold: float | None = None
    case: str = "mvnormal"
    n_values: tuple[int, ...] = ()
    p: int | None = None
    reps: int | None = None
    boot: int | None = None
    seed: int = 0
    iboss_design: str = "main"
    log_response: bool = False
    k_multiples: tuple[int, ...] = (5, 10, 20, 30)
    covariates: tuple[str, ...] | None = None
    response: str | None = None
    interaction: bool = False

    def echo(self) -> dict:
        """JSON-ready mirror of the effective options."""
        return {
            "command": self.command,
            "input": self.input,
            "output": self.output,
            "method": list(self.methods),
            "k": self.k,
            "threshold": self.threshold,
            "case": self.case,
            "n": list(self.n_values),
            "p": self.p,
            "reps": self.reps,
            "boot": self.boot,
            "seed": self.seed,
            "iboss_design": self.iboss_design,
            "log_response": self.log_response,
            "k_multiples": list(self.k_multiples),
            "covariates": None if self.covariates is None else list(self.covariates),
            "response": self.response,
            "interaction": self.interaction,
            "workers": bench.resolve_workers(),
        }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subdata",
        description="Deterministic subdata selection and benchmarking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, dests in _COMMAND_FLAGS.items():
        cp = sub.add_parser(command)
        for dest in dests:
            flag, _conv, kwargs = _FLAGS[dest]
            kw = dict(kwargs)
            action = kw.get("action")
            if action is argparse.BooleanOptionalAction:
                cp.add_argument(flag, dest=dest, default=None, **kw)
            else:
                cp.add_argument(flag, dest=dest, default=None, type=str, **kw)
    return parser


def _load_config_file(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(
                f"{path}:{lineno}: expected 'key = value', got {raw!r}"
            )
        key, _, val = line.partition("=")
        out[key.strip().replace("-", "_")] = val.strip()
    return out


def _merge(command: str, args: argparse.Namespace,
           parser: argparse.ArgumentParser) -> dict:
    """Explicit flags, then config file, then package defaults."""
    dests = _COMMAND_FLAGS[command]
    merged: dict = {}
    file_values: dict[str, str] = {}
    if getattr(args, "config", None):
        file_values = _load_config_file(args.config)
        unknown = sorted(set(file_values) - set(dests))
        if unknown:
            parser.error(f"unknown config file key(s) for {command}: {unknown}")

    for dest in dests:
        if dest == "config":
            continue
        _flag, conv, kwargs = _FLAGS[dest]
        raw = getattr(args, dest, None)
        if raw is not None:
            value = raw if kwargs.get("action") else conv(raw)
        elif dest in file_values:
            try:
                value = conv(file_values[dest])
            except ValueError as exc:
                parser.error(f"config file value for {dest}: {exc}")
        else:
            default = _DEFAULTS.get(dest)
            if isinstance(default, dict):
                default = default.get(command)
            value = default
        merged[dest] = value
    return merged


def parse_cli(argv) -> RunConfig:
    """Parse argv (flags plus optional config file) into a RunConfig."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    command = args.command
    m = _merge(command, args, parser)

    def need(dest):
        if m.get(dest) is None:
            parser.error(f"{command} requires {_FLAGS[dest][0]}")

    case = m.get("case") or "mvnormal"
    case = _CASE_ALIASES.get(str(case), case)
    if case not in datagen.CASES:
        parser.error(f"unknown case {m.get('case')!r}")

    methods = m.get("method") or ()
    if isinstance(methods, str):
        methods = (methods,)
    for name in methods:
        if name not in bench.SELECTOR_NAMES:
            parser.error(
                f"unknown method {name!r}, expected one of {bench.SELECTOR_NAMES}"
            )

    n_values = m.get("n") or ()
    if command in ("simulate", "gen-data") and len(n_values) > 1:
        parser.error(f"{command} takes a single --n value")

    need("output")
    if command in ("select", "bootstrap"):
        need("input")
    if command == "select":
        need("k")
        if len(methods) != 1:
            parser.error("select requires exactly one --method")
    if command in ("simulate", "timing"):
        need("n")
        need("p")
        need("k")
    if command == "gen-data":
        need("n")
        need("p")
    if command == "bootstrap":
        need("response")

    threshold = m.get("threshold")
    if threshold is not None and not (threshold >= 1.0 or math.isinf(threshold)):
        parser.error(f"--threshold must be >= 1, got {threshold}")

    return RunConfig(
        command=command,
        output=m["output"],
        input=m.get("input"),
        methods=tuple(methods),
        k=m.get("k"),
        threshold=threshold,
        case=case,
        n_values=tuple(n_values),
        p=m.get("p"),
        reps=m.get("reps"),
        boot=m.get("boot"),
        seed=m.get("seed") or 0,
        iboss_design=m.get("iboss_design") or "main",
        log_response=bool(m.get("log_response")),
        k_multiples=tuple(m.get("k_multiples") or (5, 10, 20, 30)),
        covariates=m.get("covariates"),
        response=m.get("response"),
        interaction=bool(m.get("interaction")),
    )


def _specs_from(rc: RunConfig) -> tuple[bench.SelectorSpec, ...]:
    specs = []
    for name in rc.methods:
        if name == "levss":
            specs.append(bench.SelectorSpec("levss", threshold=rc.threshold))
        elif name == "iboss":
            specs.append(bench.SelectorSpec("iboss", design=rc.iboss_design))
        else:
            specs.append(bench.SelectorSpec(name))
    return tuple(specs)


def _cmd_select(rc: RunConfig) -> int:
    data = data_io.read_csv(rc.input, covariates=rc.covariates,
                            response=rc.response, log_response=rc.log_response)
    method = rc.methods[0]
    if method == "levss":
        result = select_levss(data, LevssConfig(k=rc.k, threshold=rc.threshold,
                                                seed=rc.seed))
    elif method == "iboss":
        target = data
        if rc.iboss_design == "expanded":
            target = expand_interactions(data.values)
        result = select_iboss(target, rc.k)
    elif method == "oss":
        result = select_oss(data, rc.k, rc.seed)
    else:
        result = select_uniform(data, rc.k, rc.seed)
    summary = {"rng": bench.RNG_LABEL, "config": rc.echo()}
    data_io.write_selection(result, summary, rc.output)
    return 0


def _cmd_simulate(rc: RunConfig) -> int:
    cfg = datagen.ScenarioConfig(case=rc.case, n=rc.n_values[0], p=rc.p, k=rc.k,
                                 seed=rc.seed, interaction=rc.interaction)
    records = bench.run_simulation(cfg, _specs_from(rc), rc.reps)
    summary = bench.summarize(records, rc.echo())
    data_io.write_results(records, summary, rc.output)
    return 1 if any(r.failed for r in records) else 0


def _cmd_timing(rc: RunConfig) -> int:
    records = bench.run_timing(rc.n_values, p=rc.p, k=rc.k,
                               selectors=_specs_from(rc), reps=rc.reps,
                               case=rc.case, base_seed=rc.seed)
    summary = {"rng": bench.RNG_LABEL, "config": rc.echo()}
    data_io.write_timing(records, summary, rc.output)
    return 0


def _cmd_bootstrap(rc: RunConfig) -> int:
    data = data_io.read_csv(rc.input, covariates=rc.covariates,
                            response=rc.response, log_response=rc.log_response)
    if rc.methods and set(rc.methods) != set(bench.SELECTOR_NAMES):
        selectors = _specs_from(rc)
    else:
        selectors = bench.default_bootstrap_selectors()
    plan = bench.BootstrapPlan.from_multiples(
        data.p, multiples=rc.k_multiples, n_boot=rc.boot,
        selectors=selectors, seed=rc.seed,
    )
    records = bench.run_bootstrap(data, plan)
    summary = bench.summarize(records, rc.echo())
    data_io.write_results(records, summary, rc.output)
    return 1 if any(r.failed for r in records) else 0


def _cmd_gen_data(rc: RunConfig) -> int:
    k = rc.k if rc.k is not None else rc.p + 1
    cfg = datagen.ScenarioConfig(case=rc.case, n=rc.n_values[0], p=rc.p, k=k,
                                 seed=rc.seed, interaction=rc.interaction)
    data = datagen.gen_dataset(cfg)
    data_io.write_dataset(data, rc.output)
    return 0


_HANDLERS = {
    "select": _cmd_select,
    "simulate": _cmd_simulate,
    "timing": _cmd_timing,
    "bootstrap": _cmd_bootstrap,
    "gen-data": _cmd_gen_data,
}


def main(argv=None) -> int:
    try:
        rc = parse_cli(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _HANDLERS[rc.command](rc)
    except SubdataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
