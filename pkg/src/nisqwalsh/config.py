"""Run configuration for the end-to-end pipeline (JSON document)."""
import json
import os
from dataclasses import asdict, dataclass, field

from .chaostats import ESTIMATORS
from .core import METRICS
from .noise import GateNoise, NoiseSchedule

BACKENDS = ("ideal", "density", "trajectories")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to replay a pipeline run.

    ``circuit`` is either ``{"file": path}`` or generator parameters
    ``{"rows", "cols", "depth", "seed"}``. Relative paths are resolved
    against ``base_dir`` (the directory of the config file).
    """

    circuit: dict
    backend: str = "trajectories"
    noise: dict = field(default_factory=dict)
    schedule: dict | None = None
    count: int = 100_000
    seed: int = 0
    analysis: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    base_dir: str = field(default=".", compare=False)

    @classmethod
    def from_dict(cls, doc, base_dir="."):
        known = {"circuit", "backend", "noise", "schedule", "count", "seed", "analysis", "outputs"}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        if "circuit" not in doc:
            raise ConfigError("config needs a 'circuit' section")
        cfg = cls(**doc, base_dir=base_dir)
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path):
        with open(path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: not valid JSON ({exc})") from None
        return cls.from_dict(doc, base_dir=os.path.dirname(os.path.abspath(path)))

    def to_dict(self):
        d = asdict(self)
        d.pop("base_dir")
        return d

    def path(self, p):
        return p if os.path.isabs(p) else os.path.join(self.base_dir, p)

    def gate_noise(self):
        return GateNoise(**self.noise)

    def noise_schedule(self):
        return None if self.schedule is None else NoiseSchedule.from_dict(self.schedule)

    def analysis_value(self, key, default):
        return self.analysis.get(key, default)

    def validate(self):
        c = self.circuit
        if "file" in c:
            if not os.path.exists(self.path(c["file"])):
                raise ConfigError(f"circuit file not found: {c['file']}")
        elif not {"rows", "cols", "depth", "seed"} <= set(c):
            raise ConfigError("circuit needs 'file' or rows/cols/depth/seed")
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend must be one of {BACKENDS}")
        if int(self.count) < 1:
            raise ConfigError("count must be at least 1")
        try:
            self.gate_noise()
            self.noise_schedule()
        except (TypeError, ValueError, KeyError) as exc:
            raise ConfigError(f"invalid noise settings: {exc}") from None
        metric = self.analysis_value("metric", "l2")
        if metric not in METRICS:
            raise ConfigError(f"unknown metric {metric!r}")
        if self.analysis_value("estimator", "fwht-debiased") not in ESTIMATORS:
            raise ConfigError("unknown estimator")
        if int(self.analysis_value("B", 999)) < 99:
            raise ConfigError("B must be at least 99")
