from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from .matrix import DEFAULT_OP_BUDGET
from .sieves import DEFAULT_MEMORY_BUDGET

CACHE_ENV = "TAU_CACHE_DIR"


def _default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "tauaudit"


@dataclass
class RunConfig:
    scan_bound: int = 100_000
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET
    op_budget: int = DEFAULT_OP_BUDGET
    cache_dir: Path = field(default_factory=_default_cache_dir)
    format: Literal["json", "csv", "text"] = "json"
    jobs: int = 1

    def __post_init__(self) -> None:
        for name in ("scan_bound", "memory_budget_bytes", "op_budget", "jobs"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        self.cache_dir = Path(self.cache_dir)

    def ensure_cache_dir(self) -> Path:
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        return self.cache_dir
