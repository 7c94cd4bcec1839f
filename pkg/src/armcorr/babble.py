"""Random motor babbling with independent, counter-addressable streams.

Commands are piecewise constant: time is cut into blocks of
``resample_period`` steps, and each (agent, block) pair gets its own
Philox generator keyed by (seed, stream id, block index). A block is
either active, with each joint velocity drawn uniformly from
[-amplitude * max_joint_speed, +amplitude * max_joint_speed], or all-zero,
with per-agent probability ``activity_bias[agent]`` of being active.

Because the generator is counter-based, the command at any step is a pure
function of (policy, seed, agent, step): streams never need to be advanced
in order and agents can be sampled independently.
"""

from __future__ import annotations

import numpy as np

from .config import BabblePolicy, ConfigError, validate_babble
from .world import MotorCommand, ZERO_COMMAND


def _block_generator(policy: BabblePolicy, agent: int, block: int, seed: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(policy.rng_stream_ids[agent], block))
    return np.random.Generator(np.random.Philox(ss))


def sample_commands(
    policy: BabblePolicy,
    agent: int,
    step: int,
    seed: int,
    max_joint_speed: float,
) -> MotorCommand:
    """Command held at ``step`` for ``agent``; pure in all arguments."""
    bad = validate_babble(policy)
    if bad:
        raise ConfigError(bad)
    block = step // policy.resample_period
    gen = _block_generator(policy, agent, block, seed)
    if gen.random() >= policy.activity_bias[agent]:
        return ZERO_COMMAND
    hi = policy.amplitude * max_joint_speed
    m = gen.uniform(-hi, hi, size=3)
    return (float(m[0]), float(m[1]), float(m[2]))


class BabbleStream:
    """Per-agent view over the command sequence with block-level caching.

    ``commands_at(step)`` equals ``sample_commands(...)`` for every step;
    the cache only avoids re-deriving the generator within a block.
    """

    def __init__(self, policy: BabblePolicy, agent: int, seed: int, max_joint_speed: float):
        bad = validate_babble(policy)
        if bad:
            raise ConfigError(bad)
        self.policy = policy
        self.agent = agent
        self.seed = seed
        self.max_joint_speed = max_joint_speed
        self._block = -1
        self._held: MotorCommand = ZERO_COMMAND

    def commands_at(self, step: int) -> MotorCommand:
        block = step // self.policy.resample_period
        if block != self._block:
            self._held = sample_commands(
                self.policy, self.agent, step, self.seed, self.max_joint_speed
            )
            self._block = block
        return self._held
