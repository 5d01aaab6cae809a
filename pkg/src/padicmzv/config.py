"""
Run configuration.
"""
from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import ConfigError, cur_config
from .arith import is_prime
from .engine import SIGNS

from simpleeval import simple_eval

logger = logging.getLogger(__name__)

__all__ = ["RunConfig", "default_nmax"]

BACKENDS = ("rational", "padic")
FORMATS = ("plain", "json")


def default_nmax(p: int) -> int:
    "number of levels p^1 … p^N that is affordable for @p"
    return {2: 6, 3: 4, 5: 3, 7: 3}.get(p, 2)


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a command needs besides its arguments.

    ``nmax`` may be None, in which case `n_max` picks a default for the
    prime.
    """

    p: int = 5
    prec: int = 6
    nmax: int | None = None
    extra_levels: int = 0
    weight: int = 3
    backend: str = "rational"
    format: str = "plain"
    seed: int = 0
    sign: str = "derived"
    verbose: bool = False

    def __post_init__(self):
        for k in ("p", "prec", "weight", "seed", "extra_levels"):
            if not isinstance(getattr(self, k), int):
                raise ConfigError(f"{k}={getattr(self, k)!r} is not an integer")
        if self.nmax is not None and not isinstance(self.nmax, int):
            raise ConfigError(f"nmax={self.nmax!r} is not an integer")
        if not is_prime(self.p):
            raise ConfigError(f"p={self.p!r} is not a prime")
        if not 1 <= self.prec <= 64:
            raise ConfigError(f"prec={self.prec!r} is not in 1…64")
        if self.nmax is not None and not 2 <= self.nmax <= 8:
            raise ConfigError(f"nmax={self.nmax!r} is not in 2…8")
        if not 0 <= self.extra_levels <= 4:
            raise ConfigError(f"extra_levels={self.extra_levels!r} is not in 0…4")
        if not 1 <= self.weight <= 8:
            raise ConfigError(f"weight={self.weight!r} is not in 1…8")
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend {self.backend!r} is not one of {BACKENDS}")
        if self.format not in FORMATS:
            raise ConfigError(f"format {self.format!r} is not one of {FORMATS}")
        if self.sign not in SIGNS:
            raise ConfigError(f"sign {self.sign!r} is not one of {SIGNS}")

    @property
    def n_max(self) -> int:
        return default_nmax(self.p) if self.nmax is None else self.nmax

    def merged(self, **kw) -> RunConfig:
        "a copy with the non-None values of @kw replaced"
        kw = {k: v for k, v in kw.items() if v is not None}
        names = {f.name for f in fields(self)}
        for k in kw:
            if k not in names:
                raise ConfigError(f"unknown setting {k!r}")
        return replace(self, **kw)

    @classmethod
    def from_file(cls, path, base: RunConfig | None = None) -> RunConfig:
        """
        Read ``key = value`` lines. Values are evaluated as simple
        expressions; anything that does not evaluate is kept as a string.
        """
        values = {}
        for n, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            k, sep, v = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{n}: no '=' in {line!r}")
            k, v = k.strip(), v.strip()
            try:
                values[k] = simple_eval(v)
            except Exception:
                values[k] = v
            logger.debug("%s: %s = %r", path, k, values[k])
        return (base or cls()).merged(**values)

    @contextmanager
    def activated(self):
        "make this the configuration that `padicmzv.cur_config` returns"
        token = cur_config.set(self)
        try:
            yield self
        finally:
            cur_config.reset(token)
