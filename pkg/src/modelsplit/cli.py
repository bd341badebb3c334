"""Command-line interface.

Exit status 0 on success, 1 on domain errors (bad input, scope mismatch,
oracle disagreement), 2 when a resource bound would be exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from typing import IO, Any

from . import __version__
from .core import ModelSet, format_model_set, parse_model_set
from .errors import ModelSplitError, ResourceLimitError
from .factorize import ORACLE_MAX_COORDINATES, finest_factorization, is_factorization, oracle_finest
from .logic import MAX_VARIABLES, format_formula, models_of, parse_formula, parse_theory, split_theory
from .partition import Partition, format_partition, parse_partition
from .recoding import MAX_POINTS, apply_recoding, exists_factorable_recoding, parse_recoding, recoding_from_definitions
from .revision import revise

COMMANDS = ("models", "check", "finest", "split", "revise", "recode-search", "recode-apply")

EXIT_OK, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2


class UsageError(ModelSplitError):
    pass


class OracleMismatch(ModelSplitError):
    pass


@dataclass
class CliConfig:
    command: str
    models_path: str | None = None
    theory_path: str | None = None
    recoding_path: str | None = None
    by_path: str | None = None
    partition: str | None = None
    formula: str | None = None
    output: str = "plain"
    oracle: bool = False
    max_vars: int = MAX_VARIABLES
    max_points: int = MAX_POINTS
    oracle_max: int = ORACLE_MAX_COORDINATES

    _required = {
        "models": ("theory_path",),
        "check": ("models_path", "partition"),
        "finest": (),
        "split": ("theory_path",),
        "revise": ("models_path",),
        "recode-search": ("models_path",),
        "recode-apply": ("models_path", "recoding_path"),
    }

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for name in self._required[self.command]:
            if getattr(self, name) is None:
                raise UsageError(f"{self.command} needs --{name.removesuffix('_path')}")
        if self.command == "finest" and (self.models_path is None) == (self.theory_path is None):
            raise UsageError("finest needs exactly one of --models or --theory")
        if self.command == "revise" and (self.formula is None) == (self.by_path is None):
            raise UsageError("revise needs exactly one of --formula or --by")


@dataclass
class _Inputs:
    stdin: IO[str]
    texts: dict[str, str] = field(default_factory=dict)

    def read(self, path: str) -> str:
        if path not in self.texts:
            if path == "-":
                self.texts[path] = self.stdin.read()
            else:
                try:
                    with open(path, encoding="utf-8") as fh:
                        self.texts[path] = fh.read()
                except OSError as exc:
                    raise UsageError(f"{path}: {exc.strerror}") from None
        return self.texts[path]

    def digest(self, config: CliConfig) -> str:
        h = hashlib.sha256()
        h.update(config.command.encode())
        for key in ("partition", "formula"):
            value = getattr(config, key)
            if value is not None:
                h.update(f"\0{key}={value}".encode())
        for path in sorted(self.texts):
            h.update(b"\0" + self.texts[path].encode())
        return h.hexdigest()


def _located(where: str, exc: ModelSplitError) -> ModelSplitError:
    exc.args = (f"{where}: {exc}",)
    return exc


def _load(inputs: _Inputs, path: str, parser):
    text = inputs.read(path)
    try:
        return parser(text)
    except ModelSplitError as exc:
        raise _located(path, exc) from None


# -- commands --------------------------------------------------------------


def _finest(models: ModelSet, config: CliConfig) -> dict[str, Any]:
    part = finest_factorization(models)
    payload: dict[str, Any] = {"partition": part, "blocks": len(part)}
    if config.oracle:
        expected = oracle_finest(models, config.oracle_max)
        if expected != part:
            raise OracleMismatch(
                f"oracle disagreement: finest {format_partition(part)} vs oracle {format_partition(expected)}"
            )
        payload["oracle"] = "agree"
    return payload


def _run_command(config: CliConfig, inputs: _Inputs) -> dict[str, Any]:
    cmd = config.command
    if cmd in ("models", "split") or (cmd == "finest" and config.theory_path):
        theory = _load(inputs, config.theory_path, parse_theory)
        if cmd == "split":
            result = split_theory(theory, config.max_vars)
            payload = {"partition": result.partition, "blocks": len(result.partition)}
            if config.oracle:
                payload = _finest(models_of(theory, config.max_vars), config)
            payload["components"] = {
                format_partition(Partition([b], b)): {
                    "formula": format_formula(result.component_formulas[b]),
                    "models": result.components[b],
                }
                for b in result.partition.blocks
            }
            return payload
        models = models_of(theory, config.max_vars)
        if cmd == "models":
            return {"models": models}
        return _finest(models, config)

    models = _load(inputs, config.models_path, parse_model_set)
    if cmd == "finest":
        return _finest(models, config)
    if cmd == "check":
        try:
            part = parse_partition(config.partition, models.scope)
        except ModelSplitError as exc:
            raise _located("--partition", exc) from None
        report = is_factorization(models, part)
        return {
            "holds": report.holds,
            "partition": report.partition,
            "witness": None if report.witness is None else report.witness.values,
        }
    if cmd == "revise":
        if config.formula is not None:
            try:
                by = parse_formula(config.formula)
            except ModelSplitError as exc:
                raise _located("--formula", exc) from None
        else:
            by = _load(inputs, config.by_path, lambda text: parse_model_set(text, models.space))
        outcome = revise(models, by)
        return {"distance": outcome.distance, "revised": outcome.revised}
    if cmd == "recode-search":
        return {"witness": exists_factorable_recoding(models, config.max_points)}
    defs = _load(inputs, config.recoding_path, parse_recoding)
    return {"models": apply_recoding(models, recoding_from_definitions(models.space, defs))}


# -- rendering ---------------------------------------------------------------


def _plain_scalar(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Partition):
        return format_partition(value)
    return str(value)


def _plain_lines(payload: dict[str, Any], indent: str = "") -> list[str]:
    lines = []
    for key, value in payload.items():
        if isinstance(value, ModelSet):
            lines.append(f"{indent}{key}:")
            lines.extend(f"{indent}  {line}" for line in format_model_set(value).splitlines())
        elif isinstance(value, dict) and any(isinstance(v, (dict, ModelSet)) for v in value.values()):
            lines.append(f"{indent}{key}:")
            lines.extend(_plain_lines(value, indent + "  "))
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}: " + ",".join(f"{k}={v}" for k, v in value.items()))
        else:
            lines.append(f"{indent}{key}: {_plain_scalar(value)}")
    return lines


def render_plain(payload: dict[str, Any]) -> str:
    """Plain text; a bare ``models`` payload is printed in the model-set file format."""
    if list(payload) == ["models"]:
        return format_model_set(payload["models"])
    return "\n".join(_plain_lines(payload)) + "\n"


def to_jsonable(value: Any) -> Any:
    if isinstance(value, ModelSet):
        return {"coordinates": list(value.scope), "rows": [list(r) for r in value.symbol_rows()]}
    if isinstance(value, Partition):
        return format_partition(value)
    if isinstance(value, dict):
        return {k: to_jsonable(v) for k, v in value.items()}
    return value


def render_structured(command: str, digest: str, payload: dict[str, Any], elapsed: float) -> str:
    record = {
        "command": command,
        "inputs_digest": digest,
        "result": to_jsonable(payload),
        "elapsed_seconds": round(elapsed, 6),
    }
    return json.dumps(record, sort_keys=False) + "\n"


# -- entry points --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output", choices=("plain", "json"), default="plain",
                        help="output mode (json emits one structured record)")
    common.add_argument("--max-vars", type=int, default=MAX_VARIABLES,
                        help="variable bound for model enumeration")
    common.add_argument("--max-points", type=int, default=MAX_POINTS,
                        help="product-size bound for recoding search")
    common.add_argument("--oracle-max", type=int, default=ORACLE_MAX_COORDINATES,
                        help="coordinate bound for the partition-enumeration oracle")

    parser = _Parser(prog="modelsplit", description="Factorize and split propositional model sets.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("models", "enumerate the models of a theory")
    p.add_argument("-t", "--theory", dest="theory_path", required=True)

    p = add("check", "check whether a partition factorizes a model set")
    p.add_argument("-m", "--models", dest="models_path", required=True)
    p.add_argument("-p", "--partition", required=True)

    p = add("finest", "finest factorization of a model set or theory")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-m", "--models", dest="models_path")
    src.add_argument("-t", "--theory", dest="theory_path")
    p.add_argument("--oracle", action="store_true", help="cross-check against exhaustive enumeration")

    p = add("split", "split a theory into variable-disjoint components")
    p.add_argument("-t", "--theory", dest="theory_path", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check against exhaustive enumeration")

    p = add("revise", "Hamming-distance revision")
    p.add_argument("-m", "--models", dest="models_path", required=True)
    by = p.add_mutually_exclusive_group(required=True)
    by.add_argument("-f", "--formula")
    by.add_argument("-b", "--by", dest="by_path", help="model-set file to revise by")

    p = add("recode-search", "search for a recoding that makes a model set factorable")
    p.add_argument("-m", "--models", dest="models_path", required=True)

    p = add("recode-apply", "apply a recoding given by variable definitions")
    p.add_argument("-m", "--models", dest="models_path", required=True)
    p.add_argument("-r", "--recoding", dest="recoding_path", required=True)
    return parser


def parse_config(argv: list[str]) -> CliConfig:
    ns = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__}
    config = CliConfig(**values)
    config.validate()
    return config


def run(argv: list[str], stdin: IO[str] | None = None, stdout: IO[str] | None = None,
        stderr: IO[str] | None = None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        config = parse_config(argv)
        inputs = _Inputs(stdin)
        start = time.perf_counter()
        payload = _run_command(config, inputs)
        elapsed = time.perf_counter() - start
    except ResourceLimitError as exc:
        stderr.write(f"modelsplit: resource limit: {exc}\n")
        return EXIT_RESOURCE
    except (ModelSplitError, ValueError) as exc:
        stderr.write(f"modelsplit: error: {exc}\n")
        return EXIT_DOMAIN
    if config.output == "json":
        stdout.write(render_structured(config.command, inputs.digest(config), payload, elapsed))
    else:
        stdout.write(render_plain(payload))
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
