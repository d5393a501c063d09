"""Structural simulation of hierarchical TMR networks.

A network of order ``j`` is a complete ternary tree: 3**j leaf modules at
the bottom, (3**j - 1) / 2 voters above them, every voter taking exactly
three children. Voters are indexed breadth-first from the root (root = 0);
leaf ``k`` sits at tree node ``voter_count + k``, so the children of voter
``v`` are nodes ``3v+1``, ``3v+2``, ``3v+3``.

Per trial, one reference bit is pushed through the whole tree. Every voter
shares the same fault rate: with that probability its data path fails and
it passes its first child through un-voted, otherwise it emits the
majority of its children. The disagreement alarm is computed from the
children either way (the alarm logic is a parallel tap, not part of the
failed data path).

Draw discipline, fixed so every run is bit-reproducible from its seed:
within a trial, faulty leaves draw first (left to right), then, when the
voter fault rate is nonzero, every voter draws once, bottom level first,
left to right within a level. Fault-free leaves never draw; with a zero
voter fault rate voters never draw.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .faults import ModuleKind, RandomSource, Scenario, module_output
from .reliability import MAX_ORDER, check_probability
from .voting import alarm_signal, majority_vote

__all__ = [
    "HtmrNetwork",
    "build_network",
    "tile_scenario",
    "simulate_bit",
    "run_trials",
    "EmpiricalEstimate",
    "FaultStatusCounter",
    "HealthReport",
    "health_report",
    "DEFAULT_BLOCK_SIZE",
]

# Trials per simulation block. Blocks are the unit of parallelism and each
# draws from its own derived stream, so results never depend on the worker
# count -- only on (stream key, network, trial count).
DEFAULT_BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class HtmrNetwork:
    """Immutable description of a complete ternary voting tree."""

    order: int
    leaves: tuple[ModuleKind, ...]
    voter_fault_rate: float

    def __post_init__(self) -> None:
        if not 1 <= self.order <= MAX_ORDER:
            raise ValueError(f"order must lie in 1..{MAX_ORDER}, got {self.order}")
        expected = 3 ** self.order
        if len(self.leaves) != expected:
            raise ValueError(
                f"order {self.order} needs exactly {expected} leaves, "
                f"got {len(self.leaves)}"
            )
        for leaf in self.leaves:
            if not isinstance(leaf, ModuleKind):
                raise ValueError(f"leaves must be ModuleKind instances, got {leaf!r}")
        check_probability("voter_fault_rate", self.voter_fault_rate)

    @property
    def leaf_count(self) -> int:
        return 3 ** self.order

    @property
    def voter_count(self) -> int:
        return (3 ** self.order - 1) // 2

    def voter_levels(self) -> list[list[int]]:
        """Voter indices per tree level, root level first."""
        levels = []
        start = 0
        for depth in range(self.order):
            width = 3 ** depth
            levels.append(list(range(start, start + width)))
            start += width
        return levels

    def voters_bottom_up(self) -> list[int]:
        """Voter indices in draw/evaluation order: deepest level first."""
        order = []
        for level in reversed(self.voter_levels()):
            order.extend(level)
        return order

    def children_of(self, voter: int) -> tuple[int, int, int]:
        """Tree-node ids of a voter's three children (voters or leaves)."""
        if not 0 <= voter < self.voter_count:
            raise ValueError(f"voter index out of range: {voter}")
        base = 3 * voter
        return (base + 1, base + 2, base + 3)


LeafConfig = Union[float, ModuleKind, Sequence[ModuleKind]]


def build_network(
    order: int,
    leaf_config: LeafConfig,
    voter_fault_rate: float = 0.0,
    max_order: int = MAX_ORDER,
) -> HtmrNetwork:
    """Construct and validate a network.

    ``leaf_config`` is either a uniform error rate (every leaf faulty at
    that rate), a single ``ModuleKind`` replicated across all leaves, or
    an explicit sequence of exactly 3**order kinds.
    """
    if not 1 <= order <= max_order:
        raise ValueError(f"order must lie in 1..{max_order}, got {order}")
    count = 3 ** order
    if isinstance(leaf_config, ModuleKind):
        leaves = (leaf_config,) * count
    elif isinstance(leaf_config, (int, float)) and not isinstance(leaf_config, bool):
        rate = check_probability("leaf error rate", leaf_config)
        leaves = (ModuleKind(faulty=True, rate=rate),) * count
    else:
        leaves = tuple(leaf_config)
    return HtmrNetwork(order=order, leaves=leaves, voter_fault_rate=voter_fault_rate)


def tile_scenario(scenario: Scenario, order: int) -> tuple[ModuleKind, ...]:
    """Replicate a 3-module scenario across every leaf triple of a tree.

    Order 1 is the scenario itself; order 2 applies the same pattern to
    each of the three first-level triples (9 leaves), and so on.
    """
    if len(scenario) != 3:
        raise ValueError("a scenario holds exactly three modules")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    return tuple(scenario) * (3 ** (order - 1))


def simulate_bit(
    net: HtmrNetwork, reference_bit: int, rng: RandomSource
) -> tuple[int, tuple[int, ...]]:
    """Push one reference bit through the tree.

    Returns the root output and the per-voter alarm bits (indexed
    breadth-first). Draws are consumed in the module draw order documented
    above; this scalar walk is the reference semantics that the vectorized
    ``run_trials`` is held to.
    """
    if reference_bit not in (0, 1):
        raise ValueError(f"reference_bit must be 0 or 1, got {reference_bit!r}")
    n_voters = net.voter_count
    values: list[int] = [0] * (n_voters + net.leaf_count)
    for k, kind in enumerate(net.leaves):
        values[n_voters + k] = module_output(kind, reference_bit, rng)
    alarms = [0] * n_voters
    rate = net.voter_fault_rate
    for v in net.voters_bottom_up():
        a, b, c = net.children_of(v)
        children = (values[a], values[b], values[c])
        alarms[v] = alarm_signal(children)
        voted = majority_vote(children)
        if rate > 0.0:
            failed = rng.uniform() < rate
            values[v] = children[0] if failed else voted
        else:
            values[v] = voted
    return values[0], tuple(alarms)


@dataclass(frozen=True)
class EmpiricalEstimate:
    """Monte-Carlo error-probability estimate with its binomial standard error."""

    trials: int
    errors: int

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.errors <= self.trials:
            raise ValueError(
                f"errors must lie in 0..trials ({self.trials}), got {self.errors}"
            )

    @property
    def pe_hat(self) -> float:
        return self.errors / self.trials

    @property
    def std_err(self) -> float:
        p = self.pe_hat
        return math.sqrt(p * (1.0 - p) / self.trials)


@dataclass(frozen=True)
class FaultStatusCounter:
    """Accumulated alarm assertions per voter over a number of trials."""

    alarm_counts: tuple[int, ...]
    trials: int

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise ValueError(f"trials must be >= 0, got {self.trials}")
        for v, count in enumerate(self.alarm_counts):
            if not 0 <= count <= self.trials:
                raise ValueError(
                    f"alarm count of voter {v} must lie in 0..{self.trials}, got {count}"
                )


@dataclass(frozen=True)
class HealthReport:
    """Per-voter alarm frequencies with over-threshold flagging."""

    frequencies: tuple[float, ...]
    aggregate_rate: float
    flagged_voters: tuple[int, ...]
    alert_level: float


def health_report(counter: FaultStatusCounter, alert_level: float = 0.05) -> HealthReport:
    """Summarize a fault-status counter.

    ``aggregate_rate`` is the mean per-voter alarm frequency; voters whose
    individual frequency exceeds ``alert_level`` are flagged.
    """
    if counter.trials < 1:
        raise ValueError("health_report needs at least one observed trial")
    check_probability("alert_level", alert_level)
    freqs = tuple(c / counter.trials for c in counter.alarm_counts)
    aggregate = sum(freqs) / len(freqs) if freqs else 0.0
    flagged = tuple(v for v, f in enumerate(freqs) if f > alert_level)
    return HealthReport(
        frequencies=freqs,
        aggregate_rate=aggregate,
        flagged_voters=flagged,
        alert_level=alert_level,
    )


def _resolve_reference(reference, n: int):
    """Normalize the reference-bit specification for ``run_trials``.

    Returns a callable mapping (start, stop) to a uint8 array of reference
    bits for that global trial range. Accepted specs: the string
    "alternating" (trial i carries bit i % 2 -- results are payload
    independent, this is just a non-degenerate default), a constant 0/1,
    or an explicit bit array of length ``n``.
    """
    if isinstance(reference, str):
        if reference != "alternating":
            raise ValueError(f"unknown reference stream {reference!r}")
        return lambda start, stop: (np.arange(start, stop, dtype=np.int64) & 1).astype(np.uint8)
    if isinstance(reference, (int, np.integer)) and not isinstance(reference, bool):
        if reference not in (0, 1):
            raise ValueError(f"constant reference bit must be 0 or 1, got {reference!r}")
        bit = int(reference)
        return lambda start, stop: np.full(stop - start, bit, dtype=np.uint8)
    bits = np.asarray(reference)
    if bits.shape != (n,):
        raise ValueError(f"reference bit array must have shape ({n},), got {bits.shape}")
    if not np.isin(bits, (0, 1)).all():
        raise ValueError("reference bit array may only contain 0 and 1")
    bits = bits.astype(np.uint8)
    return lambda start, stop: bits[start:stop]


def _simulate_block(net: HtmrNetwork, ref_bits: np.ndarray, u: np.ndarray):
    """Vectorized per-block simulation.

    ``u`` holds one row of uniforms per trial; columns follow the
    documented draw order (faulty leaves, then voters bottom-up when the
    voter fault rate is nonzero), so a block is bit-identical to running
    ``simulate_bit`` trial by trial against the block's stream.
    """
    n_voters = net.voter_count
    values: list = [None] * (n_voters + net.leaf_count)
    col = 0
    for k, kind in enumerate(net.leaves):
        if kind.faulty:
            flips = (u[:, col] < kind.rate).astype(np.uint8)
            values[n_voters + k] = ref_bits ^ flips
            col += 1
        else:
            values[n_voters + k] = ref_bits
    rate = net.voter_fault_rate
    alarm_counts = np.zeros(n_voters, dtype=np.int64)
    for v in net.voters_bottom_up():
        ia, ib, ic = net.children_of(v)
        a, b, c = values[ia], values[ib], values[ic]
        alarm_counts[v] = int(((a | b | c) & ((a & b & c) ^ 1)).sum())
        voted = (a & b) | (a & c) | (b & c)
        if rate > 0.0:
            failed = u[:, col] < rate
            col += 1
            values[v] = np.where(failed, a, voted)
        else:
            values[v] = voted
    errors = int((values[0] != ref_bits).sum())
    return errors, alarm_counts


def run_trials(
    net: HtmrNetwork,
    n: int,
    rng: RandomSource,
    reference="alternating",
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> tuple[EmpiricalEstimate, FaultStatusCounter]:
    """Simulate ``n`` independent trials through the network.

    Trials are processed in fixed blocks of ``block_size``; block ``b``
    covers global trials [b * block_size, ...) and draws exclusively from
    ``rng.derive(b)``. Partitioning therefore depends only on ``n`` and
    ``block_size``, never on ``workers``: any worker count yields the
    identical estimate and alarm counter. Errors are trials whose root
    output differs from the trial's reference bit.
    """
    if n < 1:
        raise ValueError(f"trial count must be >= 1, got {n}")
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")

    ref_for = _resolve_reference(reference, n)
    draw_cols = sum(1 for kind in net.leaves if kind.faulty)
    if net.voter_fault_rate > 0.0:
        draw_cols += net.voter_count

    blocks = []
    start = 0
    index = 0
    while start < n:
        stop = min(start + block_size, n)
        blocks.append((index, start, stop))
        index += 1
        start = stop

    def one_block(block):
        b, lo, hi = block
        m = hi - lo
        stream = rng.derive(b)
        u = stream.uniforms((m, draw_cols)) if draw_cols else np.empty((m, 0))
        return _simulate_block(net, ref_for(lo, hi), u)

    if workers == 1 or len(blocks) == 1:
        results = [one_block(block) for block in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one_block, blocks))

    total_errors = sum(errors for errors, _ in results)
    counts = np.zeros(net.voter_count, dtype=np.int64)
    for _, alarm_counts in results:
        counts += alarm_counts
    estimate = EmpiricalEstimate(trials=n, errors=total_errors)
    counter = FaultStatusCounter(alarm_counts=tuple(int(c) for c in counts), trials=n)
    return estimate, counter
