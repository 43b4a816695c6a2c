"""Flat ``key = value`` experiment configs.

List-valued keys are written once per element, so configs diff line by
line.  ``#`` starts a comment.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import get_type_hints

ALGORITHMS = ("greedy", "greedy-geo", "snp", "lp", "rn", "im", "rf", "saa-greedy")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    experiment: str = "experiment"
    graph_file: str = ""
    generator: str = "barabasi_albert"
    generator_param: list[str] = field(default_factory=list)   # "name=value"
    generator_seed: int = 0
    core_file: str = ""
    core_size: int = 0
    core_fraction: float = 0.0
    core_seed: int = 0
    exclude_core_from_neighbors: bool = False
    weights: str = "degree"               # degree | voter:T
    prob_family: str = "uniform"
    prob_mean: float = 1.0
    prob_seed: int = 0
    budget: list[int] = field(default_factory=list)
    budget_fraction: list[float] = field(default_factory=list)
    algorithm: list[str] = field(default_factory=list)  # e.g. greedy-geo:1.0, snp:0.1:16
    evaluation: str = "exact"             # exact | mc:SAMPLES
    repetitions: int = 1
    seed: int = 0
    workers: int = 1
    timing: bool = False
    log_scale: bool = False
    scale_size: list[int] = field(default_factory=list)
    scale_repeats: int = 3
    saa_sample_cap: int = 0               # 0 = samples equal to n

    def validate(self) -> "ExperimentConfig":
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        if not self.algorithm:
            raise ConfigError("at least one algorithm is required")
        for a in self.algorithm:
            if a.split(":")[0] not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {a!r}")
        for f in self.budget_fraction:
            if not 0 < f <= 1:
                raise ConfigError(f"budget fraction {f} outside (0, 1]")
        if not self.budget and not self.budget_fraction and not self.scale_size:
            raise ConfigError("no budgets given")
        if not self.graph_file and not self.generator:
            raise ConfigError("need graph_file or generator")
        if sum(bool(x) for x in (self.core_file, self.core_size, self.core_fraction)) != 1:
            raise ConfigError("give exactly one of core_file, core_size, core_fraction")
        if self.core_fraction and not 0 < self.core_fraction <= 1:
            raise ConfigError("core_fraction must lie in (0, 1]")
        if not (self.weights == "degree" or self.weights.startswith("voter:")):
            raise ConfigError(f"unknown weight model {self.weights!r}")
        if not (self.evaluation == "exact" or self.evaluation.startswith("mc:")):
            raise ConfigError(f"unknown evaluation {self.evaluation!r}")
        return self

    def generator_params(self) -> dict:
        out = {}
        for item in self.generator_param:
            k, _, v = item.partition("=")
            v = v.strip()
            try:
                out[k.strip()] = int(v)
            except ValueError:
                out[k.strip()] = float(v)
        return out


def _convert(tp, raw: str, key: str):
    try:
        if tp is bool:
            low = raw.lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return low in ("true", "1", "yes")
        return tp(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None


def parse_config(text: str) -> ExperimentConfig:
    hints = get_type_hints(ExperimentConfig)
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or key not in hints:
            raise ConfigError(f"line {lineno}: unknown or malformed entry {line!r}")
        tp = hints[key]
        if getattr(tp, "__origin__", None) is list:
            values.setdefault(key, []).append(_convert(tp.__args__[0], raw, key))
        else:
            if key in values:
                raise ConfigError(f"line {lineno}: {key} given twice")
            values[key] = _convert(tp, raw, key)
    return ExperimentConfig(**values)


def read_config(path) -> ExperimentConfig:
    with open(path) as f:
        return parse_config(f.read())


def serialize_config(cfg: ExperimentConfig) -> str:
    lines = []
    default = ExperimentConfig()
    for f in dataclasses.fields(cfg):
        v = getattr(cfg, f.name)
        if isinstance(v, list):
            lines += [f"{f.name} = {_fmt(x)}" for x in v]
        elif v != getattr(default, f.name) or f.name == "experiment":
            lines.append(f"{f.name} = {_fmt(v)}")
    return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)
