"""Concept lattices and the two lattice-shape complexity indices.

The lattice is represented by its intents alone; the order is attribute-set
containment, so order queries are plain subset tests on masks.  Two indices
summarize the shape:

* linearity: the probability that two distinct random concepts are
  comparable (1.0 on chains),
* distributivity: the fraction of distinct intent pairs whose union is again
  an intent (1.0 on chains and Boolean lattices).

Both are normalized by the number of unordered pairs of distinct concepts so
that they read as probabilities; the raw pair counts are exposed separately
for anyone wanting a different normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .context import AttrSet, lectic_sorted

# Below this many intents the pure-Python pair loops win over numpy setup.
_VECTOR_THRESHOLD = 400


@dataclass(frozen=True)
class ConceptLattice:
    """The ordered set of all intents of a context, lectic-sorted.

    The extent side of each concept is recoverable from the owning context
    via ``context.extent(ctx, intent_mask)``.
    """

    intents: tuple[AttrSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "intents", tuple(self.intents))
        if len(set(self.intents)) != len(self.intents):
            raise ValueError("duplicate intents")

    def __len__(self) -> int:
        return len(self.intents)

    def __iter__(self) -> Iterator[AttrSet]:
        return iter(self.intents)

    @cached_property
    def _members(self) -> frozenset[AttrSet]:
        return frozenset(self.intents)

    def __contains__(self, mask: object) -> bool:
        return mask in self._members

    @staticmethod
    def is_subconcept(intent_a: AttrSet, intent_b: AttrSet) -> bool:
        """Concept order: larger intent means smaller concept."""
        return intent_a & intent_b == intent_b

    @staticmethod
    def comparable(intent_a: AttrSet, intent_b: AttrSet) -> bool:
        inter = intent_a & intent_b
        return inter == intent_a or inter == intent_b


def build_lattice(intents: Sequence[AttrSet]) -> ConceptLattice:
    """Order a list of intents into a lattice (duplicates are an error)."""
    if len(set(intents)) != len(intents):
        raise ValueError("duplicate intents")
    width = max((m.bit_length() for m in intents), default=0)
    return ConceptLattice(tuple(lectic_sorted(intents, width)))


def pair_total(lat: ConceptLattice) -> int:
    n = len(lat)
    return n * (n - 1) // 2


def count_comparable_pairs(lat: ConceptLattice) -> int:
    """Unordered pairs of distinct intents where one contains the other."""
    masks = lat.intents
    n = len(masks)
    if n <= 1:
        return 0
    if n >= _VECTOR_THRESHOLD and max(m.bit_length() for m in masks) <= 63:
        arr = np.array(masks, dtype=np.uint64)
        total = 0
        for i in range(n - 1):
            rest = arr[i + 1 :]
            inter = rest & arr[i]
            total += int(np.count_nonzero((inter == arr[i]) | (inter == rest)))
        return total
    total = 0
    for i in range(n - 1):
        a = masks[i]
        for b in masks[i + 1 :]:
            inter = a & b
            if inter == a or inter == b:
                total += 1
    return total


def count_union_closed_pairs(lat: ConceptLattice) -> int:
    """Unordered pairs of distinct intents whose union is again an intent."""
    masks = lat.intents
    n = len(masks)
    if n <= 1:
        return 0
    if n >= _VECTOR_THRESHOLD and max(m.bit_length() for m in masks) <= 63:
        arr = np.array(masks, dtype=np.uint64)
        table = np.sort(arr)
        total = 0
        for i in range(n - 1):
            union = arr[i + 1 :] | arr[i]
            pos = np.searchsorted(table, union)
            pos_clipped = np.minimum(pos, n - 1)
            total += int(np.count_nonzero((pos < n) & (table[pos_clipped] == union)))
        return total
    member = set(masks)
    total = 0
    for i in range(n - 1):
        a = masks[i]
        for b in masks[i + 1 :]:
            if a | b in member:
                total += 1
    return total


def linearity(lat: ConceptLattice) -> float:
    """Probability that two distinct random concepts are comparable."""
    pairs = pair_total(lat)
    if pairs == 0:
        return 1.0
    return count_comparable_pairs(lat) / pairs


def distributivity(lat: ConceptLattice) -> float:
    """Fraction of distinct intent pairs whose union is an intent."""
    pairs = pair_total(lat)
    if pairs == 0:
        return 1.0
    return count_union_closed_pairs(lat) / pairs
