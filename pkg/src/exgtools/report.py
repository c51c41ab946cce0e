"""Machine-readable report assembly and JSON serialization.

Every CLI command that emits a report wraps its payloads in the same
envelope: schema_version, command, an echo of the inputs, a results map
and optional wall-clock timing.  Timing is opt-in so that fixed-seed runs
stay byte-identical.  The JSON schema ships with the package; see
SCHEMA_PATH.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from .dist import ExGaussParams, ExGaussStats, pars_to_stats
from .fit import FitResult
from .gof import GofReport, TrimReport

__all__ = ["SCHEMA_VERSION", "SCHEMA_PATH", "Report", "to_jsonable"]

SCHEMA_VERSION = "1"

with resources.as_file(
    resources.files("exgtools").joinpath("schemas/report.schema.json")
) as _p:
    SCHEMA_PATH = _p


def _num(v: float | None):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


def to_jsonable(obj: Any) -> Any:
    """Convert exgtools result objects into JSON-encodable structures."""
    if isinstance(obj, ExGaussParams):
        return {"mu": obj.mu, "sigma": obj.sigma, "tau": obj.tau}
    if isinstance(obj, ExGaussStats):
        return {"m": obj.m, "s": obj.s, "t": obj.t, "lamb": _num(obj.lamb)}
    if isinstance(obj, FitResult):
        out = {
            "params": to_jsonable(obj.params),
            "stats": to_jsonable(pars_to_stats(obj.params)),
            "method": obj.method,
            "objective": _num(obj.objective),
            "iterations": obj.iterations,
            "gradient_norm": _num(obj.gradient_norm),
            "converged": obj.converged,
        }
        if obj.n_bins is not None:
            out["n_bins"] = obj.n_bins
        return out
    if isinstance(obj, GofReport):
        return {
            "ks": obj.ks,
            "p": obj.p,
            "replicates": obj.replicates,
            "ks_mean": obj.ks_mean,
            "ks_sd": obj.ks_sd,
            "method": obj.method,
            "seed": obj.seed,
            "fitted": to_jsonable(obj.fitted),
            "refit_failures": obj.refit_failures,
        }
    if isinstance(obj, TrimReport):
        return {
            "lo_cut": _num(obj.lo_cut),
            "hi_cut": _num(obj.hi_cut),
            "n_removed_left": obj.n_removed_left,
            "n_removed_right": obj.n_removed_right,
            "n_total": obj.n_total,
            "pre_fit": to_jsonable(obj.pre_fit),
        }
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


@dataclass
class Report:
    """Envelope for one CLI command's machine-readable output."""

    command: str
    inputs: dict
    results: dict
    timing: float | None = None
    schema_version: str = field(default=SCHEMA_VERSION)

    def to_dict(self, with_timing: bool = False) -> dict:
        out = {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": to_jsonable(self.inputs),
            "results": to_jsonable(self.results),
        }
        if with_timing and self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self, with_timing: bool = False) -> str:
        return json.dumps(self.to_dict(with_timing), indent=2, allow_nan=False)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            command=d["command"],
            inputs=d["inputs"],
            results=d["results"],
            timing=d.get("timing"),
            schema_version=d["schema_version"],
        )
