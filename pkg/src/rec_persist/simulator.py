"""Monte Carlo simulation of data persistency.

A trial places every document's fragments, then removes nodes in a uniform
random order until some document is lost; the persistency X of the trial is
the number of removals at that point.  Trials are deterministic functions
of (master_seed, trial_index), so summaries are identical no matter how
trials are scheduled; REC_PERSIST_THREADS > 1 fans trial batches out to
worker processes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .model import (
    LossSemantics,
    Placement,
    PlacementStrategy,
    RecParams,
    SystemParams,
    default_semantics,
    validate_symmetric_preconditions,
)

__all__ = [
    "WorkloadClass",
    "SimConfig",
    "SimSummary",
    "place_random",
    "place_symmetric",
    "persistency",
    "simulate",
    "THREADS_ENV_VAR",
]

THREADS_ENV_VAR = "REC_PERSIST_THREADS"


def place_random(
    rec: RecParams, system: SystemParams, rng: np.random.Generator
) -> Placement:
    """Drop every fragment on an i.i.d. uniform node; collisions allowed."""
    table = rng.integers(
        0, system.nodes, size=(system.docs, rec.r, rec.chunks), dtype=np.int64
    )
    return Placement(rec, system.nodes, table)


def place_symmetric(
    rec: RecParams, system: SystemParams, start: int = 0
) -> Placement:
    """Round-robin placement: document k starts at node k*(p+q)*r mod N.

    Fragments of one document go to consecutive nodes in replica-major
    order (cluster 1's chunks, then cluster 2's, ...), wrapping modulo N.
    start offsets the whole stream; it is used when several workload
    classes share one placement counter.
    """
    flat = (start + np.arange(system.docs * rec.fragments, dtype=np.int64)) % (
        system.nodes
    )
    return Placement(
        rec, system.nodes, flat.reshape(system.docs, rec.r, rec.chunks)
    )


def persistency(placement: Placement, order, semantics: LossSemantics) -> int:
    """Removals until the first document loss, for one removal order.

    Incremental counters over the node -> fragment index: O(total fragments
    + N) per call, returning as soon as a document dies.
    """
    order = np.asarray(order)
    if order.shape != (placement.nodes,):
        raise ParameterError(
            f"removal order must list all {placement.nodes} nodes, "
            f"got shape {order.shape}"
        )
    if not np.array_equal(np.sort(order), np.arange(placement.nodes)):
        raise ParameterError("removal order must be a permutation of the nodes")

    chunk_ids, starts = placement.node_index
    ids = chunk_ids.tolist()
    start_of = starts.tolist()
    pq = placement.rec.chunks
    r = placement.rec.r
    need = placement.rec.q + 1

    if semantics is LossSemantics.MULTISET:
        # fragment id c = (k*r + j)*pq + m; multiset slot = k*pq + m
        alive = [r] * (placement.docs * pq)
        dead = [0] * placement.docs
        for removed, node in enumerate(order.tolist(), start=1):
            for c in ids[start_of[node] : start_of[node + 1]]:
                doc = c // (r * pq)
                slot = doc * pq + c % pq
                left = alive[slot] - 1
                alive[slot] = left
                if left == 0:
                    gone = dead[doc] + 1
                    dead[doc] = gone
                    if gone == need:
                        return removed
    elif semantics is LossSemantics.PER_CLUSTER:
        erased = [0] * (placement.docs * r)
        dead = [0] * placement.docs
        for removed, node in enumerate(order.tolist(), start=1):
            for c in ids[start_of[node] : start_of[node + 1]]:
                cluster = c // pq
                hit = erased[cluster] + 1
                erased[cluster] = hit
                if hit == need:
                    doc = cluster // r
                    gone = dead[doc] + 1
                    dead[doc] = gone
                    if gone == r:
                        return removed
    else:
        raise ParameterError(f"unknown semantics {semantics!r}")
    raise RuntimeError("no document was lost after removing every node")


@dataclass(frozen=True)
class WorkloadClass:
    """A block of documents sharing one REC parameter set."""

    rec: RecParams
    docs: int

    def __post_init__(self):
        if not isinstance(self.docs, int) or self.docs < 1:
            raise ParameterError(f"docs must be a positive integer, got {self.docs!r}")


@dataclass(frozen=True)
class SimConfig:
    strategy: PlacementStrategy
    classes: tuple[WorkloadClass, ...]
    nodes: int
    trials: int
    master_seed: int
    semantics: LossSemantics | None = None

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if not self.classes:
            raise ParameterError("at least one workload class is required")
        if self.nodes < 1:
            raise ParameterError(f"nodes must be >= 1, got {self.nodes}")
        if self.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials}")
        if self.master_seed < 0:
            raise ParameterError(f"master_seed must be >= 0, got {self.master_seed}")

    @property
    def resolved_semantics(self) -> LossSemantics:
        if self.semantics is not None:
            return self.semantics
        return default_semantics(self.strategy)

    @property
    def out_of_theory(self) -> bool:
        """True when no closed-form analysis covers this configuration.

        Mixed workloads have no single-formula counterpart, and symmetric
        runs leave the theory when the divisibility or document-count
        preconditions fail.
        """
        if len(self.classes) > 1:
            return True
        if self.strategy is PlacementStrategy.SYMMETRIC:
            wc = self.classes[0]
            system = SystemParams(self.nodes, wc.docs)
            return validate_symmetric_preconditions(wc.rec, system) is not None
        return False


@dataclass(frozen=True)
class SimSummary:
    mean: float
    std_error: float
    trials: int
    minimum: int
    maximum: int
    master_seed: int
    out_of_theory: bool


def _symmetric_stream(config: SimConfig) -> list[Placement]:
    # one placement counter runs across classes in declared order
    placements = []
    start = 0
    for wc in config.classes:
        placements.append(
            place_symmetric(wc.rec, SystemParams(config.nodes, wc.docs), start=start)
        )
        start = (start + wc.docs * wc.rec.fragments) % config.nodes
    return placements


def _trial_batch(args: tuple[SimConfig, int, int]) -> tuple[int, int, int, int, int]:
    """Run trials [lo, hi); return (count, sum, sum_sq, min, max).

    Integer accumulators make the merge exact and order-insensitive.
    """
    config, lo, hi = args
    semantics = config.resolved_semantics
    symmetric = config.strategy is PlacementStrategy.SYMMETRIC
    fixed = _symmetric_stream(config) if symmetric else None
    total = total_sq = 0
    smallest = largest = -1
    for trial in range(lo, hi):
        rng = np.random.default_rng(
            np.random.SeedSequence([config.master_seed, trial])
        )
        if symmetric:
            placements = fixed
        else:
            placements = [
                place_random(wc.rec, SystemParams(config.nodes, wc.docs), rng)
                for wc in config.classes
            ]
        order = rng.permutation(config.nodes)
        x = min(persistency(pl, order, semantics) for pl in placements)
        total += x
        total_sq += x * x
        if smallest < 0 or x < smallest:
            smallest = x
        if x > largest:
            largest = x
    return hi - lo, total, total_sq, smallest, largest


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def simulate(config: SimConfig) -> SimSummary:
    """Estimate E[X] over config.trials independent trials.

    The summary is a pure function of the config: trial i always draws from
    generator seeded by (master_seed, i), and aggregation uses exact integer
    sums, so worker scheduling cannot change any reported digit.
    """
    workers = _worker_count()
    trials = config.trials
    if workers > 1 and trials > 1:
        per_batch = max(1, math.ceil(trials / (workers * 4)))
        bounds = [
            (config, lo, min(lo + per_batch, trials))
            for lo in range(0, trials, per_batch)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_trial_batch, bounds))
    else:
        parts = [_trial_batch((config, 0, trials))]

    count = sum(p[0] for p in parts)
    total = sum(p[1] for p in parts)
    total_sq = sum(p[2] for p in parts)
    smallest = min(p[3] for p in parts)
    largest = max(p[4] for p in parts)

    mean = total / count
    if count >= 2:
        variance = (count * total_sq - total * total) / (count * (count - 1))
        std_error = math.sqrt(max(variance, 0.0) / count)
    else:
        std_error = 0.0
    return SimSummary(
        mean=mean,
        std_error=std_error,
        trials=count,
        minimum=smallest,
        maximum=largest,
        master_seed=config.master_seed,
        out_of_theory=config.out_of_theory,
    )
