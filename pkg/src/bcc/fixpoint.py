"""The compliance functional on finite pair universes.

One application of the functional maps a candidate relation to: the
successful pairs, plus every pair that can take a tau-step and all of whose
tau-successors already belong to the candidate.  The functional is monotone
on the (finite) powerset lattice of a universe, so iterating it from the
empty set and from the full universe yields its least and greatest fixed
points; relation restrictions can then be classified as pre-fixed,
post-fixed, or fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .composition import PairState, PairUniverse
from .errors import UniverseMismatchError
from .relations import RelationKind, holding_indices


@dataclass(frozen=True)
class PairSet:
    """An immutable subset of a universe's pairs, by index."""

    universe: PairUniverse
    indices: frozenset

    def __post_init__(self):
        if not all(0 <= i < len(self.universe) for i in self.indices):
            raise UniverseMismatchError("indices out of range for this universe")

    @staticmethod
    def empty(universe: PairUniverse) -> "PairSet":
        return PairSet(universe, frozenset())

    @staticmethod
    def full(universe: PairUniverse) -> "PairSet":
        return PairSet(universe, frozenset(range(len(universe))))

    @staticmethod
    def of_pairs(universe: PairUniverse, pairs: Iterable[PairState]) -> "PairSet":
        return PairSet(universe, frozenset(universe.index_of(p) for p in pairs))

    def _same_universe(self, other: "PairSet") -> None:
        if self.universe is not other.universe:
            raise UniverseMismatchError("pair sets belong to different universes")

    def pairs(self) -> tuple:
        return tuple(self.universe.pairs[i] for i in sorted(self.indices))

    def __contains__(self, ps) -> bool:
        i = self.universe._index.get(ps)
        return i is not None and i in self.indices

    def __len__(self) -> int:
        return len(self.indices)

    def __le__(self, other: "PairSet") -> bool:
        self._same_universe(other)
        return self.indices <= other.indices

    def __or__(self, other: "PairSet") -> "PairSet":
        self._same_universe(other)
        return PairSet(self.universe, self.indices | other.indices)

    def __and__(self, other: "PairSet") -> "PairSet":
        self._same_universe(other)
        return PairSet(self.universe, self.indices & other.indices)

    def __sub__(self, other: "PairSet") -> "PairSet":
        self._same_universe(other)
        return PairSet(self.universe, self.indices - other.indices)


def compliance_step(x: PairSet) -> PairSet:
    """One application of the compliance functional to x."""
    universe = x.universe
    inside = x.indices
    members = set(universe.successful_indices)
    for i, succs in enumerate(universe.successors_idx):
        if succs and all(t in inside for t in succs):
            members.add(i)
    return PairSet(universe, frozenset(members))


def least_fixpoint(universe: PairUniverse) -> PairSet:
    """Iterate the functional upward from the empty set until stable."""
    x = PairSet.empty(universe)
    while True:
        nxt = compliance_step(x)
        if nxt.indices == x.indices:
            return x
        x = nxt


def greatest_fixpoint(universe: PairUniverse) -> PairSet:
    """Iterate the functional downward from the full universe until stable."""
    x = PairSet.full(universe)
    while True:
        nxt = compliance_step(x)
        if nxt.indices == x.indices:
            return x
        x = nxt


def restrict(universe: PairUniverse, kind: RelationKind) -> PairSet:
    """The relation's restriction to the universe: the pairs at which the
    decision procedure holds, each judged from its own reachable sub-universe."""
    return PairSet(universe, holding_indices(universe, kind))


@dataclass(frozen=True)
class Classification:
    """Where a candidate relation sits relative to the functional.

    ``pre_violations`` are pairs of F(X) \\ X (absent when X is pre-fixed);
    ``post_violations`` are pairs of X \\ F(X).
    """

    is_pre: bool
    is_post: bool
    pre_violations: tuple
    post_violations: tuple

    @property
    def is_fix(self) -> bool:
        return self.is_pre and self.is_post


def classify(x: PairSet) -> Classification:
    """Compare x with one functional application of itself."""
    fx = compliance_step(x)
    universe = x.universe
    pre = sorted(fx.indices - x.indices)
    post = sorted(x.indices - fx.indices)
    return Classification(
        is_pre=not pre,
        is_post=not post,
        pre_violations=tuple(universe.pairs[i] for i in pre),
        post_violations=tuple(universe.pairs[i] for i in post),
    )
