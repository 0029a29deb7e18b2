"""Seeded random-walk simulation of escape and hitting events.

Trials are split into fixed-size blocks. Block ``k`` draws from its own
PCG64 stream, ``SeedSequence(seed, spawn_key=(k,))``, so the estimate does
not depend on how blocks are scheduled.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import PreconditionError, SimulationError
from .graph import transition_matrix

__all__ = [
    "WalkConfig",
    "EscapeEstimate",
    "simulate_escape",
    "simulate_voltage",
    "simulate_first_edge",
]

BLOCK_SIZE = 1 << 14


@dataclass(frozen=True)
class WalkConfig:
    trials: int = 100_000
    seed: int = 0
    max_steps: int = 1_000_000

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class EscapeEstimate:
    """Fraction of successful walks.

    ``trials`` counts the walks used in the estimate; ``truncated`` walks hit
    ``max_steps`` and are excluded from it.
    """

    p_hat: float
    std_err: float
    trials: int
    truncated: int = 0

    @classmethod
    def from_counts(cls, successes, trials, truncated):
        p = successes / trials
        return cls(p, float(np.sqrt(p * (1.0 - p) / trials)), int(trials), int(truncated))


def _block_rng(seed, block):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _step(cumulative, states, rng):
    u = rng.random(states.shape[0])
    nxt = (u[:, None] >= cumulative[states]).sum(axis=1)
    return np.minimum(nxt, cumulative.shape[1] - 1)


def _run(p, start, stop_success, stop_failure, cfg, forced_first_step):
    """Walk from ``start`` until a success or failure node is hit.

    Returns per-trial outcome codes (1 success, 0 failure, -1 truncated) and
    the first visited state of every trial.
    """
    cumulative = np.cumsum(p, axis=1)
    cumulative[:, -1] = 1.0
    n = p.shape[0]
    success = np.zeros(n, dtype=bool)
    success[list(stop_success)] = True
    failure = np.zeros(n, dtype=bool)
    failure[list(stop_failure)] = True

    outcomes = np.empty(cfg.trials, dtype=np.int8)
    first = np.empty(cfg.trials, dtype=np.int64)
    for block, lo in enumerate(range(0, cfg.trials, BLOCK_SIZE)):
        rng = _block_rng(cfg.seed, block)
        size = min(BLOCK_SIZE, cfg.trials - lo)
        states = np.full(size, start, dtype=np.int64)
        if forced_first_step:
            states = _step(cumulative, states, rng)
            steps = 1
        else:
            steps = 0
        first[lo : lo + size] = states
        result = np.full(size, -1, dtype=np.int8)
        active = np.arange(size)
        while active.size:
            cur = states[active]
            hit_s = success[cur]
            hit_f = failure[cur] & ~hit_s
            result[active[hit_s]] = 1
            result[active[hit_f]] = 0
            active = active[~(hit_s | hit_f)]
            if not active.size or steps >= cfg.max_steps:
                break
            states[active] = _step(cumulative, states[active], rng)
            steps += 1
        outcomes[lo : lo + size] = result
    return outcomes, first


def _validate(g, *nodes):
    for x in nodes:
        if not 0 <= int(x) < g.n:
            raise PreconditionError(f"node {x} out of range for n={g.n}")


def _summarize(outcomes):
    truncated = int(np.sum(outcomes < 0))
    done = outcomes.size - truncated
    if done == 0:
        raise SimulationError("every walk was truncated; raise max_steps")
    return EscapeEstimate.from_counts(int(np.sum(outcomes == 1)), done, truncated)


def simulate_escape(g, a, b, cfg=WalkConfig()):
    """Estimate the probability that a walk leaving ``a`` hits ``b`` before ``a``.

    Each walk takes one step out of ``a`` (a self-loop step counts as a
    return), then continues until it hits ``b`` or ``a``.
    """
    _validate(g, a, b)
    if a == b:
        raise PreconditionError("source and sink must differ", nodes=(a,))
    outcomes, _ = _run(transition_matrix(g), a, [b], [a], cfg, forced_first_step=True)
    return _summarize(outcomes)


def simulate_voltage(g, x, a, b, cfg=WalkConfig()):
    """Estimate the probability that a walk from ``x`` hits ``a`` strictly before ``b``."""
    _validate(g, x, a, b)
    if a == b or x in (a, b):
        raise PreconditionError("x, a and b must be distinct", nodes=(x, a, b))
    outcomes, _ = _run(transition_matrix(g), x, [a], [b], cfg, forced_first_step=False)
    return _summarize(outcomes)


def simulate_first_edge(g, a, b, cfg=WalkConfig()):
    """Among escapes from ``a`` to ``b``, the fraction that took the edge ``a -> b`` directly.

    A successful excursion never revisits ``a``, so it ends with the direct
    edge exactly when its first step lands on ``b``.
    """
    _validate(g, a, b)
    if a == b:
        raise PreconditionError("source and sink must differ", nodes=(a,))
    if not g.adj[a, b] > 0:
        raise PreconditionError(f"no edge from {a} to {b}", nodes=(a, b))
    outcomes, first = _run(transition_matrix(g), a, [b], [a], cfg, forced_first_step=True)
    escaped = outcomes == 1
    n_escaped = int(escaped.sum())
    if n_escaped == 0:
        raise SimulationError("no walk escaped; cannot estimate the first-edge frequency")
    direct = int(np.sum(escaped & (first == b)))
    return EscapeEstimate.from_counts(direct, n_escaped, int(np.sum(outcomes < 0)))
