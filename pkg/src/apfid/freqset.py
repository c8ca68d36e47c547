"""Tolerance-based frequency-set algebra.

Finite records blur every estimated tone by roughly the reciprocal record
length, so two frequencies are treated as the same tone when they differ by
less than a resolution width ``delta``. All set operations here use that
relation instead of exact equality. The relation is not transitive; chains
of nearby values are resolved greedily in ascending order, keeping the
first member of each cluster (see ``FrequencySet.from_values``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "FrequencySet",
    "FrequencySystem",
    "delta_equal",
    "intersect",
    "symmetric_difference",
    "prune_shared",
    "is_disjoint_system",
]


def delta_equal(w1: float, w2: float, delta: float) -> bool:
    """True when the two frequencies are within ``delta`` (strict)."""
    if delta <= 0.0:
        raise InvalidArgumentError("delta must be positive")
    return abs(w1 - w2) < delta


def _nearest_within(values: np.ndarray, queries: np.ndarray, delta: float) -> np.ndarray:
    # Sorted-array nearest neighbour; exact equivalent of the all-pairs scan
    # because the closest member decides |q - v| < delta.
    if values.size == 0:
        return np.zeros(queries.shape, dtype=bool)
    idx = np.searchsorted(values, queries)
    left = values[np.clip(idx - 1, 0, values.size - 1)]
    right = values[np.clip(idx, 0, values.size - 1)]
    dist = np.minimum(np.abs(queries - left), np.abs(queries - right))
    return dist < delta


@dataclass(frozen=True, eq=False)
class FrequencySet:
    """Strictly increasing positive frequencies, pairwise at least ``delta`` apart."""

    omegas: np.ndarray
    delta: float

    def __post_init__(self) -> None:
        arr = np.asarray(self.omegas, dtype=float).reshape(-1).copy()
        if not np.isfinite(self.delta) or self.delta <= 0.0:
            raise InvalidArgumentError("delta must be positive and finite")
        if arr.size and not np.all(np.isfinite(arr)):
            raise InvalidArgumentError("frequencies must be finite")
        if arr.size and arr[0] <= 0.0:
            raise InvalidArgumentError("frequencies must be positive")
        if arr.size > 1:
            gaps = np.diff(arr)
            if np.any(gaps <= 0.0):
                raise InvalidArgumentError("frequencies must be strictly increasing")
            if np.any(gaps < self.delta):
                raise InvalidArgumentError(
                    "frequencies closer than delta; use FrequencySet.from_values to resolve"
                )
        arr.setflags(write=False)
        object.__setattr__(self, "omegas", arr)

    @classmethod
    def from_values(cls, values, delta: float) -> "FrequencySet":
        """Build a set from raw values, collapsing sub-delta clusters.

        Values are sorted ascending and walked once; a value is kept when it
        lies at least ``delta`` above the last kept value. The first member
        of every cluster is therefore the representative, which pins down
        the non-transitive cases (1.00, 1.04, 1.08 at delta 0.05 keeps
        1.00 and 1.08).
        """
        if not np.isfinite(delta) or delta <= 0.0:
            raise InvalidArgumentError("delta must be positive and finite")
        arr = np.sort(np.asarray(list(values), dtype=float).reshape(-1))
        kept: list[float] = []
        for w in arr:
            if not kept or w - kept[-1] >= delta:
                kept.append(float(w))
        return cls(np.array(kept, dtype=float), delta)

    def __len__(self) -> int:
        return int(self.omegas.size)

    def __iter__(self) -> Iterator[float]:
        return iter(self.omegas.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrequencySet):
            return NotImplemented
        return self.delta == other.delta and np.array_equal(self.omegas, other.omegas)

    def __repr__(self) -> str:
        return f"FrequencySet({self.omegas.tolist()}, delta={self.delta})"

    def contains(self, omega: float) -> bool:
        """Delta-membership: is some member within delta of ``omega``?"""
        return bool(_nearest_within(self.omegas, np.array([omega]), self.delta)[0])

    def lowest(self) -> float:
        if not self.omegas.size:
            raise InvalidArgumentError("empty frequency set has no lowest member")
        return float(self.omegas[0])


@dataclass(frozen=True)
class FrequencySystem:
    """Labelled family of frequency sets sharing one resolution width."""

    sets: Mapping[str, FrequencySet] = field(default_factory=dict)

    def __post_init__(self) -> None:
        sets = dict(self.sets)
        if not sets:
            raise InvalidArgumentError("a frequency system needs at least one set")
        deltas = {s.delta for s in sets.values()}
        if len(deltas) != 1:
            raise InvalidArgumentError("all sets in a system must share one delta")
        object.__setattr__(self, "sets", sets)

    @property
    def delta(self) -> float:
        return next(iter(self.sets.values())).delta

    def __getitem__(self, label: str) -> FrequencySet:
        return self.sets[label]

    def labels(self) -> list[str]:
        return list(self.sets)


def _check_same_delta(a: FrequencySet, b: FrequencySet) -> None:
    if a.delta != b.delta:
        raise InvalidArgumentError(
            f"operands carry different deltas ({a.delta} vs {b.delta})"
        )


def intersect(a: FrequencySet, b: FrequencySet) -> FrequencySet:
    """Members of ``a`` that have a delta-partner in ``b``.

    The representative kept for each match is always the value from the
    first operand, so intersect is not symmetric in the exact values it
    returns (only in which tones it recognises).
    """
    _check_same_delta(a, b)
    mask = _nearest_within(b.omegas, a.omegas, a.delta)
    return FrequencySet(a.omegas[mask], a.delta)


def symmetric_difference(a: FrequencySet, b: FrequencySet) -> FrequencySet:
    """Members of either set with no delta-partner in the other."""
    _check_same_delta(a, b)
    only_a = a.omegas[~_nearest_within(b.omegas, a.omegas, a.delta)]
    only_b = b.omegas[~_nearest_within(a.omegas, b.omegas, a.delta)]
    merged = np.sort(np.concatenate([only_a, only_b]))
    # Survivors of each side sit >= delta from the whole other side, so the
    # merged array is already a valid set.
    return FrequencySet(merged, a.delta)


def prune_shared(system: FrequencySystem) -> FrequencySystem:
    """Drop every frequency that delta-matches a member of any other set.

    This is the cross-signal filter: tones present in more than one input
    cannot be attributed to either, so they are removed from all of them.
    """
    if len(system.sets) < 2:
        raise InvalidArgumentError("prune_shared needs at least two sets")
    delta = system.delta
    pruned: dict[str, FrequencySet] = {}
    for label, fset in system.sets.items():
        shared = np.zeros(fset.omegas.shape, dtype=bool)
        for other_label, other in system.sets.items():
            if other_label == label:
                continue
            shared |= _nearest_within(other.omegas, fset.omegas, delta)
        pruned[label] = FrequencySet(fset.omegas[~shared], delta)
    return FrequencySystem(pruned)


def is_disjoint_system(system: FrequencySystem) -> bool:
    """True when no two sets share a tone under the system delta."""
    labels = system.labels()
    for i, la in enumerate(labels):
        for lb in labels[i + 1 :]:
            if np.any(_nearest_within(system[lb].omegas, system[la].omegas, system.delta)):
                return False
    return True
