"""Shared domain types, identifiers and run configuration.

Everything here is a plain value type: robot and tuple identifiers, the
stored tuple record, and the simulation configuration with its flat
``key=value`` file format. No behavior beyond validation and config I/O.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import NamedTuple

RobotId = int  # constant unique identifier in [1, N]


class TupleId(NamedTuple):
    """Globally unique tuple identifier: (writer robot, writer's write count)."""

    writer: RobotId
    seq: int


class QueryId(NamedTuple):
    """Globally unique flood identifier: (origin robot, origin's query count)."""

    origin: RobotId
    seq: int


class Key(NamedTuple):
    tau: TupleId
    rho: int  # content-dependent importance hash, unitless


@dataclass(frozen=True, slots=True)
class Tuple:
    """The stored unit: key, numeric value, event position, version stamp.

    Two tuples with equal ``key.tau`` and different timestamps are versions
    of the same datum; the newer timestamp wins.
    """

    key: Key
    value: int  # 64-bit signed
    x: float  # event position, meters
    y: float
    timestamp: int  # simulation step of write

    @property
    def tau(self) -> TupleId:
        return self.key.tau

    @property
    def rho(self) -> int:
        return self.key.rho


CATEGORY = "category"
SPATIAL = "spatial"
HASH_MODES = (CATEGORY, SPATIAL)


@dataclass(slots=True)
class SimConfig:
    """One simulation run's parameters.

    Defaults are the reference desk-scale setup: 50 robots at 1 robot/m²,
    2 m communication range, 20-slot memories split 10/10 between storage
    and routing, 0.1 s steps with a 570-byte/step outgoing cap.
    """

    n_robots: int = 50
    comm_range_C: float = 2.0  # meters
    memory_M: int = 20  # tuple slots, storage + routing combined
    storage_S: int = 10
    routing_R: int = 10
    step_seconds: float = 0.1
    bandwidth_cap: int = 570  # bytes per robot per step
    density: float = 1.0  # robots per m², fixes the arena size
    speed: float = 0.05  # m/s; 0 gives a static topology
    load_factor: float = 0.8  # events generated = ceil(load_factor * N * S)
    sensing_range: float = 1.0  # meters, event detection radius
    n_event_types: int = 12
    event_rate: float = 5.0  # events per second, swarm-wide Poisson
    query_rate: float = 1.0  # queries per second, swarm-wide Poisson
    hash_mode: str = CATEGORY
    replication_enabled: bool = False
    rng_seed: int = 1
    # Secondary knobs (all have sane defaults; exposed for experiments).
    spatial_scale: float = 1.0  # multiplier applied to the spatial hash
    event_disc_radius: float = 0.0  # >0: events uniform in that disc (clipped to arena)
    heading_jitter: float = 0.3  # radians per step, diffusion motion
    collection_window: int = 150  # steps a query origin waits for replies
    quiescence_steps: int = 200  # write-free steps before a run may end
    replica_safe_radius: float = 1.0  # meters, master/slave separation limit
    heartbeat_period: int = 5  # steps between master heartbeats
    heartbeat_timeout: int = 30  # steps without echo before failover
    max_steps: int = 10_000  # hard cap on run length
    query_radii: tuple = (0.5, 1.0, 2.0, 4.0)  # workload mix of get(x,y,r) radii

    def arena_side(self) -> float:
        return arena_side(self.n_robots, self.density)


def arena_side(n_robots: int, density: float) -> float:
    """Side of the square arena [-side/2, side/2]² holding n_robots at density."""
    if density <= 0:
        raise ValueError("density must be positive")
    return math.sqrt(n_robots / density)


def max_config_hash(cfg: SimConfig) -> int:
    """Largest rho the configured hash mode can emit for this arena.

    Category mode tops out at the highest type's rank. Spatial mode tops out
    at the arena corner (or the event disc radius when one is configured,
    since events are clipped to the disc).
    """
    # Local import: hashing depends on core for types; keep the cycle one-way
    # at module load time.
    from .hashing import hash_category, hash_spatial

    if cfg.hash_mode == CATEGORY:
        return hash_category(cfg.n_event_types - 1, cfg.n_event_types)
    side = arena_side(cfg.n_robots, cfg.density)
    corner = side / 2.0
    reach = math.hypot(corner, corner)
    if cfg.event_disc_radius > 0:
        reach = min(reach, cfg.event_disc_radius)
    return hash_spatial(reach, 0.0, cfg.spatial_scale)


def validate_config(cfg: SimConfig) -> list[str]:
    """Return a list of invariant violations; empty means the config is usable."""
    v: list[str] = []
    for name in ("n_robots", "memory_M", "storage_S", "routing_R", "n_event_types"):
        if getattr(cfg, name) <= 0:
            v.append(f"{name} must be positive")
    if cfg.storage_S + cfg.routing_R != cfg.memory_M:
        v.append(
            "S+R != M (storage_S + routing_R must equal memory_M: "
            f"{cfg.storage_S}+{cfg.routing_R} != {cfg.memory_M})"
        )
    for name in ("comm_range_C", "step_seconds", "density", "load_factor", "sensing_range"):
        if getattr(cfg, name) <= 0:
            v.append(f"{name} must be positive")
    for name in ("speed", "event_rate", "query_rate", "event_disc_radius", "spatial_scale"):
        if getattr(cfg, name) < 0:
            v.append(f"{name} must be non-negative")
    if cfg.bandwidth_cap <= 0:
        v.append("bandwidth_cap must be positive")
    if cfg.hash_mode not in HASH_MODES:
        v.append(f"hash_mode must be one of {HASH_MODES}, got {cfg.hash_mode!r}")
    if cfg.heartbeat_period < 1:
        v.append("heartbeat_period must be at least 1 step")
    if cfg.heartbeat_timeout <= cfg.heartbeat_period:
        v.append("heartbeat_timeout must exceed heartbeat_period")
    if cfg.max_steps < 1:
        v.append("max_steps must be positive")
    if not cfg.query_radii or any(r <= 0 for r in cfg.query_radii):
        v.append("query_radii must be a non-empty list of positive radii")
    # Hash range must leave room under the node-identifier ceiling, else no
    # node can ever satisfy the holding condition for the top of the range.
    if cfg.hash_mode in HASH_MODES and cfg.n_robots > 1 and cfg.n_event_types > 0:
        ceiling = cfg.memory_M * (cfg.n_robots - 1)
        try:
            top = max_config_hash(cfg)
        except ValueError:
            top = None
        if top is not None and top >= ceiling:
            v.append(
                f"hash range exceeds max M*(N-1): max rho {top} >= {ceiling}"
            )
    return v


# --- config file format: flat key=value, one parameter per line -------------

_BOOL_FIELDS = {"replication_enabled"}
_INT_FIELDS = {
    "n_robots", "memory_M", "storage_S", "routing_R", "bandwidth_cap",
    "n_event_types", "rng_seed", "collection_window", "quiescence_steps",
    "heartbeat_period", "heartbeat_timeout", "max_steps",
}
_STR_FIELDS = {"hash_mode"}
_TUPLE_FIELDS = {"query_radii"}


def config_to_text(cfg: SimConfig) -> str:
    lines = []
    for f in fields(SimConfig):
        val = getattr(cfg, f.name)
        if f.name in _TUPLE_FIELDS:
            val = ",".join(repr(x) for x in val)
        elif f.name in _BOOL_FIELDS:
            val = "true" if val else "false"
        lines.append(f"{f.name}={val}")
    return "\n".join(lines) + "\n"


def config_from_text(text: str) -> SimConfig:
    """Parse the flat key=value format. Unknown keys are errors."""
    known = {f.name for f in fields(SimConfig)}
    cfg = SimConfig()
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in known:
            raise ValueError(f"line {lineno}: unknown config key {key!r}")
        if key in _BOOL_FIELDS:
            if val.lower() not in ("true", "false", "0", "1"):
                raise ValueError(f"line {lineno}: bad boolean {val!r}")
            updates[key] = val.lower() in ("true", "1")
        elif key in _INT_FIELDS:
            updates[key] = int(val)
        elif key in _STR_FIELDS:
            updates[key] = val
        elif key in _TUPLE_FIELDS:
            updates[key] = tuple(float(x) for x in val.split(",") if x.strip())
        else:
            updates[key] = float(val)
    return replace(cfg, **updates)


def load_config(path) -> SimConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_text(fh.read())


def save_config(cfg: SimConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(config_to_text(cfg))
