"""Code parameters, placements, and the two document-loss semantics.

A document under REC(p, p+q, r) is split into p chunks, erasure-coded to
p+q chunks, and each chunk is stored r times, giving (p+q)*r fragments.
Fragment (j, m) is replica j of chunk m.  Replication multiset m collects
the r replicas of chunk m; replica cluster j collects the p+q chunks that
share replica index j.

Two loss rules are supported and deliberately kept distinct:

* MULTISET: the document is lost when at least q+1 replication multisets
  are fully erased (every replica of those chunks gone).
* PER_CLUSTER: the document is lost when every replica cluster has at
  least q+1 erased chunks.

They coincide for p = 1 or r = 1 and differ otherwise; a document alive
under PER_CLUSTER is always alive under MULTISET.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np

from .errors import ParameterError

__all__ = [
    "RecParams",
    "SystemParams",
    "LossSemantics",
    "PlacementStrategy",
    "Placement",
    "PreconditionViolation",
    "default_semantics",
    "is_document_lost",
    "validate_symmetric_preconditions",
]


def _as_int(value, name: str, minimum: int) -> int:
    try:
        value = operator.index(value)
    except TypeError:
        raise ParameterError(f"{name} must be an integer, got {value!r}") from None
    if value < minimum:
        raise ParameterError(f"{name} must be >= {minimum}, got {value}")
    return value


class LossSemantics(Enum):
    """Which erasure pattern counts as losing a document."""

    MULTISET = "multiset"
    PER_CLUSTER = "per-cluster"


class PlacementStrategy(Enum):
    RANDOM = "random"
    SYMMETRIC = "symmetric"


def default_semantics(strategy: PlacementStrategy) -> LossSemantics:
    """Semantics each strategy's analysis is phrased in."""
    if strategy is PlacementStrategy.RANDOM:
        return LossSemantics.MULTISET
    return LossSemantics.PER_CLUSTER


@dataclass(frozen=True)
class RecParams:
    """REC(p, p+q, r): p data chunks, q parity chunks, r replicas."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        object.__setattr__(self, "p", _as_int(self.p, "p", 1))
        object.__setattr__(self, "q", _as_int(self.q, "q", 0))
        object.__setattr__(self, "r", _as_int(self.r, "r", 1))

    @property
    def chunks(self) -> int:
        return self.p + self.q

    @property
    def fragments(self) -> int:
        """Stored fragments per document, (p+q)*r; the symmetric group size."""
        return (self.p + self.q) * self.r


@dataclass(frozen=True)
class SystemParams:
    """Storage system size: node count N and document count D."""

    nodes: int
    docs: int

    def __post_init__(self):
        object.__setattr__(self, "nodes", _as_int(self.nodes, "nodes", 1))
        object.__setattr__(self, "docs", _as_int(self.docs, "docs", 1))


@dataclass(frozen=True)
class PreconditionViolation:
    """Names the symmetric-placement precondition that failed."""

    condition: str
    message: str

    def __str__(self) -> str:
        return f"{self.condition}: {self.message}"


def validate_symmetric_preconditions(
    rec: RecParams, system: SystemParams
) -> PreconditionViolation | None:
    """Check the symmetric theory's preconditions; None when they hold.

    The closed-form symmetric results need (p+q)*r to divide N and enough
    documents to occupy every group of (p+q)*r consecutive nodes, i.e.
    D >= N / ((p+q)*r).
    """
    g = rec.fragments
    if system.nodes % g != 0:
        return PreconditionViolation(
            "divisibility",
            f"(p+q)*r = {g} does not divide nodes = {system.nodes}",
        )
    if system.docs * g < system.nodes:
        return PreconditionViolation(
            "document-count",
            f"docs = {system.docs} is below nodes/((p+q)*r) = {system.nodes // g}",
        )
    return None


@dataclass
class Placement:
    """Node assignment for every fragment of every document.

    table[k, j, m] is the node holding replica j of chunk m of document k,
    shape (docs, r, p+q), entries in [0, nodes).
    """

    rec: RecParams
    nodes: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.nodes = _as_int(self.nodes, "nodes", 1)
        table = np.asarray(self.table)
        if table.ndim != 3 or table.shape[1:] != (self.rec.r, self.rec.chunks):
            raise ParameterError(
                f"placement table must have shape (docs, {self.rec.r}, "
                f"{self.rec.chunks}), got {table.shape}"
            )
        if not np.issubdtype(table.dtype, np.integer):
            raise ParameterError("placement table must hold integer node ids")
        if table.size and (table.min() < 0 or table.max() >= self.nodes):
            raise ParameterError("placement table entries must lie in [0, nodes)")
        self.table = table

    @property
    def docs(self) -> int:
        return self.table.shape[0]

    @cached_property
    def node_index(self) -> tuple[np.ndarray, np.ndarray]:
        """(chunk_ids, starts): fragment ids grouped by node.

        Fragment id c encodes (doc k, replica j, chunk m) as
        c = (k*r + j)*(p+q) + m.  Fragments on node v are
        chunk_ids[starts[v]:starts[v+1]].  Built once per placement.
        """
        flat = self.table.reshape(-1)
        chunk_ids = np.argsort(flat, kind="stable")
        counts = np.bincount(flat, minlength=self.nodes)
        starts = np.zeros(self.nodes + 1, dtype=np.int64)
        np.cumsum(counts, out=starts[1:])
        return chunk_ids, starts


def is_document_lost(rec: RecParams, erased, semantics: LossSemantics) -> bool:
    """Apply one loss rule to a single document's erasure flags.

    erased is a boolean array of shape (r, p+q): erased[j, m] says replica j
    of chunk m is gone.
    """
    flags = np.asarray(erased, dtype=bool)
    if flags.shape != (rec.r, rec.chunks):
        raise ParameterError(
            f"erased flags must have shape ({rec.r}, {rec.chunks}), got {flags.shape}"
        )
    if semantics is LossSemantics.MULTISET:
        fully_erased = int(flags.all(axis=0).sum())
        return fully_erased >= rec.q + 1
    if semantics is LossSemantics.PER_CLUSTER:
        return bool((flags.sum(axis=1) >= rec.q + 1).all())
    raise ParameterError(f"unknown semantics {semantics!r}")
