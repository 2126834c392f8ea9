from __future__ import annotations

from dataclasses import dataclass, replace

from ..errors import InputError

PAPER_RESOLUTION = 0.05
RESOLUTION_PRESETS = {"paper": PAPER_RESOLUTION, "paper-tuned": PAPER_RESOLUTION, "default": 1.0}


def parse_resolution(value) -> float:
    """Accept a positive number or a preset name such as ``"paper"``."""
    if isinstance(value, str):
        key = value.strip().lower()
        if key in RESOLUTION_PRESETS:
            return RESOLUTION_PRESETS[key]
        try:
            value = float(key)
        except ValueError:
            raise InputError(f"bad resolution {value!r}") from None
    gamma = float(value)
    if not gamma > 0:
        raise InputError(f"resolution must be > 0, got {gamma}")
    return gamma


@dataclass(frozen=True)
class ClusteringConfig:
    """Knobs shared by Louvain, Leiden and spectral clustering.

    ``theta`` is the randomness of the Leiden refinement step;
    ``spectral_size_cap`` is the node count above which spectral
    clustering refuses to run.
    """

    gamma: float = 1.0
    seed: int = 0
    max_levels: int = 50
    max_passes_per_level: int = 1000
    max_iterations: int = 10
    min_quality_gain: float = 1e-10
    theta: float = 0.01
    spectral_size_cap: int = 50_000

    def __post_init__(self):
        object.__setattr__(self, "gamma", parse_resolution(self.gamma))
        if self.max_levels < 1:
            raise InputError("max_levels must be >= 1")
        if self.max_iterations < 1:
            raise InputError("max_iterations must be >= 1")
        if self.max_passes_per_level < 1:
            raise InputError("max_passes_per_level must be >= 1")
        if self.min_quality_gain < 0:
            raise InputError("min_quality_gain must be >= 0")
        if self.theta <= 0:
            raise InputError("theta must be > 0")

    def with_(self, **changes) -> "ClusteringConfig":
        return replace(self, **changes)
