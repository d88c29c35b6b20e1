"""Budget caps and runtime knobs.

Every cap can be overridden through an environment variable named
``QUIVERFOLD_<FIELD>`` (upper case), e.g. ``QUIVERFOLD_MAX_POINTS=5000000``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace


@dataclass(frozen=True)
class Config:
    # points of a representation space enumerated by the orbit oracle
    max_points: int = 2_000_000
    # elements scanned by exhaustive searches (iso, idempotents, GL)
    search_cap: int = 200_000
    # random samples tried when a search space is above the cap
    search_retries: int = 2_000
    # terms of the literal conjugacy-class sum
    max_terms: int = 5_000_000
    # bit length allowed for moduli q^m - 1 in the exponent model
    bit_bound: int = 4096
    # interpolation nodes beyond this prime power are refused
    max_node: int = 10_000
    # worker processes for interpolation sampling (default: every core)
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    # RNG seed for randomized searches (determinism contract)
    seed: int = 20240601
    output: str = "human"

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, int) and f.name != "seed" and v <= 0:
                raise ValueError(f"config field {f.name} must be positive, got {v}")
        if self.output not in ("human", "json"):
            raise ValueError(f"unknown output format {self.output!r}")

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "Config":
        environ = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            raw = environ.get("QUIVERFOLD_" + f.name.upper())
            if raw is not None:
                values[f.name] = raw if f.type == "str" else int(raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_(self, **changes) -> "Config":
        return replace(self, **changes)


DEFAULT = Config()


def resolve(config: Config | None) -> Config:
    return DEFAULT if config is None else config
