"""Run configuration, discrete frequency grids and interaction graphs.

Everything is dimensionless: frequencies and temperatures are measured in
units of the pump-dressed coupling rate ``w`` and time as ``tau = w t``.
Modes of a wave-packet are indexed by ``k = -m .. m`` so that each packet
holds ``n = 2m + 1`` monochromatic micro-modes.
"""

from __future__ import annotations

import configparser
import dataclasses
import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import ConfigError

__all__ = [
    "Pattern",
    "LogBase",
    "ModelConfig",
    "FrequencyGrid",
    "InteractionGraph",
    "build_grid",
    "build_graph",
    "vertex_degree",
    "is_connected",
    "read_config_file",
    "config_from_mapping",
    "kelvin_to_theta",
]


class Pattern(enum.Enum):
    PAIRWISE = "pairwise"
    ONE_TO_ALL = "one-to-all"

    @classmethod
    def parse(cls, value: "str | Pattern") -> "Pattern":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"pairwise": cls.PAIRWISE, "g2": cls.PAIRWISE,
                   "one-to-all": cls.ONE_TO_ALL, "onetoall": cls.ONE_TO_ALL,
                   "g1": cls.ONE_TO_ALL}
        try:
            return aliases[key]
        except KeyError:
            raise ConfigError(f"unknown pattern {value!r}") from None


class LogBase(enum.Enum):
    NATURAL = "e"
    TWO = "2"

    @classmethod
    def parse(cls, value: "str | LogBase") -> "LogBase":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key in ("e", "ln", "natural"):
            return cls.NATURAL
        if key in ("2", "two", "log2"):
            return cls.TWO
        raise ConfigError(f"unknown log base {value!r}")

    def log(self, x):
        return np.log(x) if self is LogBase.NATURAL else np.log2(x)


@dataclass(frozen=True)
class ModelConfig:
    """Physical and numerical parameters of one run.

    Parameters
    ----------
    pattern : Pattern
        Interaction pattern between signal and idler micro-modes.
    m : int
        Half-width of the mode index; ``n = 2m + 1`` modes per packet.
    omega1_bar, omega2_bar : float
        Central frequencies of the signal and idler packets.
    bw1, bw2 : float
        Spectral bandwidths. Both packets share one mode spacing, so the two
        values must coincide.
    theta : float
        Temperature ``k_B T / (hbar w)``; zero means the vacuum.
    pump_phase : float
        Pump phase in radians.
    log_base : LogBase
        Base used when reporting the logarithmic negativity.
    """

    pattern: Pattern = Pattern.ONE_TO_ALL
    m: int = 0
    omega1_bar: float = 200.0
    omega2_bar: float = 400.0
    bw1: float = 0.02
    bw2: float = 0.02
    theta: float = 0.0
    pump_phase: float = 0.0
    log_base: LogBase = LogBase.NATURAL

    def __post_init__(self):
        object.__setattr__(self, "pattern", Pattern.parse(self.pattern))
        object.__setattr__(self, "log_base", LogBase.parse(self.log_base))
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 0:
            raise ConfigError(f"m must be a nonnegative integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        for name in ("omega1_bar", "omega2_bar", "bw1", "bw2", "theta", "pump_phase"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ConfigError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.bw1 < 0 or self.bw2 < 0:
            raise ConfigError("bandwidths must be nonnegative")
        if self.bw1 != self.bw2:
            raise ConfigError("bw1 and bw2 must be equal (single mode spacing)")
        if self.omega1_bar - self.bw1 / 2 <= 0 or self.omega2_bar - self.bw2 / 2 <= 0:
            raise ConfigError("all mode frequencies must be positive")
        if self.theta < 0:
            raise ConfigError("theta must be nonnegative")

    @property
    def n(self) -> int:
        return 2 * self.m + 1

    @property
    def omega0_bar(self) -> float:
        return self.omega1_bar + self.omega2_bar

    @property
    def delta(self) -> float:
        """Mode spacing, zero for a single mode."""
        return self.bw1 / (2 * self.m) if self.m else 0.0

    def replace(self, **changes) -> "ModelConfig":
        if "n" in changes:
            changes["m"] = _m_from_n(changes.pop("n"))
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["pattern"] = self.pattern.value
        out["log_base"] = self.log_base.value
        out["n"] = self.n
        return out


def _m_from_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ConfigError(f"n must be a positive odd integer, got {n!r}")
    if int(n) % 2 == 0:
        raise ConfigError(f"n must be odd, got {n}")
    return (int(n) - 1) // 2


@dataclass(frozen=True)
class FrequencyGrid:
    """Mode frequencies of both packets, ordered ``k = -m .. m``."""

    freqs1: np.ndarray
    freqs2: np.ndarray

    @property
    def m(self) -> int:
        return (len(self.freqs1) - 1) // 2

    @property
    def n(self) -> int:
        return len(self.freqs1)

    def __getitem__(self, key):
        """``grid[j, k]`` returns the frequency of packet ``j`` mode ``k``."""
        j, k = key
        freqs = {1: self.freqs1, 2: self.freqs2}[j]
        return freqs[k + self.m]


def build_grid(config: ModelConfig) -> FrequencyGrid:
    k = np.arange(-config.m, config.m + 1)
    d1 = config.bw1 / (2 * config.m) if config.m else 0.0
    d2 = config.bw2 / (2 * config.m) if config.m else 0.0
    freqs1 = config.omega1_bar + k * d1
    freqs2 = config.omega2_bar + k * d2
    if np.any(freqs1 <= 0) or np.any(freqs2 <= 0):
        raise ConfigError("non-positive mode frequency")
    freqs1.setflags(write=False)
    freqs2.setflags(write=False)
    return FrequencyGrid(freqs1, freqs2)


Vertex = tuple  # (wave-id, k)


@dataclass(frozen=True)
class InteractionGraph:
    """Bipartite coupling graph between signal and idler micro-modes.

    All edges carry the same coupling, so only the topology is stored.
    """

    m: int
    edges: frozenset
    coupling: float = 1.0
    vertices: tuple = field(init=False)

    def __post_init__(self):
        ks = range(-self.m, self.m + 1)
        verts = tuple((j, k) for j in (1, 2) for k in ks)
        object.__setattr__(self, "vertices", verts)

    @property
    def n(self) -> int:
        return 2 * self.m + 1

    def neighbors(self, v: Vertex) -> list:
        if v not in self.vertices:
            raise KeyError(f"unknown vertex {v!r}")
        out = []
        for e in self.edges:
            if v in e:
                (other,) = e - {v}
                out.append(other)
        return sorted(out)

    def adjacency(self) -> np.ndarray:
        """Signal-by-idler 0/1 matrix, rows and columns ordered by ``k``."""
        adj = np.zeros((self.n, self.n))
        for e in self.edges:
            (a, b) = sorted(e)
            adj[a[1] + self.m, b[1] + self.m] = 1.0
        return adj


def build_graph(config: ModelConfig) -> InteractionGraph:
    ks = range(-config.m, config.m + 1)
    if config.pattern is Pattern.ONE_TO_ALL:
        edges = {frozenset({(1, k), (2, l)}) for k in ks for l in ks}
    else:
        edges = {frozenset({(1, k), (2, -k)}) for k in ks}
    return InteractionGraph(config.m, frozenset(edges))


def vertex_degree(graph: InteractionGraph, v: Vertex) -> int:
    return len(graph.neighbors(v))


def is_connected(graph: InteractionGraph) -> bool:
    seen = {graph.vertices[0]}
    stack = [graph.vertices[0]]
    while stack:
        for w in graph.neighbors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(graph.vertices)


_FIELD_TYPES = {
    "pattern": str, "m": int, "omega1_bar": float, "omega2_bar": float,
    "bw1": float, "bw2": float, "theta": float, "pump_phase": float,
    "log_base": str,
}
_ALIASES = {"omega1": "omega1_bar", "omega2": "omega2_bar"}


def read_config_file(path: "str | Path") -> dict:
    """Read a flat ``key = value`` file into a dict of raw strings.

    Lines starting with ``#`` or ``;`` are comments. Keys follow the
    :class:`ModelConfig` field names; ``n`` is accepted in place of ``m`` and
    keys the model does not know (e.g. ``tau``) are kept for the caller.
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    text = Path(path).read_text(encoding="utf-8")
    try:
        parser.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from None
    return {k.strip().replace("-", "_"): v.strip() for k, v in parser["run"].items()}


def config_from_mapping(values: Mapping, base: "ModelConfig | None" = None) -> ModelConfig:
    """Build a config from ``values`` layered over ``base`` (or defaults).

    Unknown keys are ignored; values may be strings.
    """
    fields = {}
    for key, raw in values.items():
        if raw is None:
            continue
        key = _ALIASES.get(key, key)
        if key == "n":
            fields["m"] = _m_from_n(_coerce(int, raw, "n"))
        elif key == "bw":
            fields["bw1"] = fields["bw2"] = _coerce(float, raw, "bw")
        elif key in _FIELD_TYPES:
            fields[key] = _coerce(_FIELD_TYPES[key], raw, key)
    base = base or ModelConfig()
    return dataclasses.replace(base, **fields)


def _coerce(kind, raw, name):
    if kind is int and isinstance(raw, str):
        try:
            as_float = float(raw)
        except ValueError:
            raise ConfigError(f"{name}: expected an integer, got {raw!r}") from None
        if as_float != int(as_float):
            raise ConfigError(f"{name}: expected an integer, got {raw!r}")
        return int(as_float)
    try:
        return kind(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: cannot parse {raw!r}") from None


def kelvin_to_theta(temperature_k: float, coupling_rad_s: float) -> float:
    """Dimensionless temperature ``k_B T / (hbar w)`` for ``w`` in rad/s."""
    from scipy import constants

    if coupling_rad_s <= 0:
        raise ConfigError("coupling must be positive")
    if temperature_k < 0:
        raise ConfigError("temperature must be nonnegative")
    return constants.k * temperature_k / (constants.hbar * coupling_rad_s)


def odd_sizes(values: Iterable[int]) -> list:
    out = []
    for n in values:
        _m_from_n(n)
        out.append(int(n))
    return out
