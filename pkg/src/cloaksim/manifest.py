"""Run manifests and deterministic CSV emission.

Every CLI run writes its full configuration next to its outputs so a rerun
from the manifest reproduces the numbers byte for byte: floats render with
17 significant digits, JSON keys are sorted, and nothing time- or
path-dependent enters the documents.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from . import __version__
from .errors import ConfigError


def fmt(x: float) -> str:
    """Round-trip decimal rendering of a double."""
    return f"{float(x):.17g}"


def write_csv(path, header, rows) -> None:
    """CSV with deterministic 17-significant-digit cells.

    Cells may be float, complex (expanded by the caller), int, or str.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = [c if isinstance(c, str) else fmt(c) for c in row]
            fh.write(",".join(cells) + "\n")


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce one run's outputs exactly."""

    scenario: str
    command: str
    params: dict
    source: list = field(default_factory=list)
    boundary: list = field(default_factory=list)
    phi: dict = field(default_factory=dict)
    quadrature: dict = field(default_factory=dict)
    n_max: int = 0
    seed: int = 0
    tool_version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "RunManifest":
        data = json.loads(text)
        known = {"scenario", "command", "params", "source", "boundary",
                 "phi", "quadrature", "n_max", "seed", "tool_version"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown manifest fields: {sorted(unknown)}")
        return RunManifest(**data)

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_json())

    @staticmethod
    def read(path) -> "RunManifest":
        with open(path, encoding="utf-8") as fh:
            return RunManifest.from_json(fh.read())
