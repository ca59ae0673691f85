"""Client/server parallel composition and tau-closed pair universes.

A composition pair moves by three rules: either side fires one of its own
edges (label kept), or the two sides synchronise on dual visible actions,
which the composition observes as a single tau-step.  A pair is successful
when its client component is the client graph's success state.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple

from .errors import InvalidPairError, PairExplosionError, UniverseMismatchError
from .lts import TAU, ContractGraph

DEFAULT_MAX_PAIRS = 4096


class PairState(NamedTuple):
    client: int
    server: int


class Composition:
    """The product of one client graph and one server graph."""

    def __init__(self, client: ContractGraph, server: ContractGraph):
        self.client = client
        self.server = server

    def _check(self, ps: PairState) -> None:
        c, s = ps
        if not (
            isinstance(c, int)
            and isinstance(s, int)
            and 0 <= c < self.client.num_states
            and 0 <= s < self.server.num_states
        ):
            raise InvalidPairError(f"pair {ps!r} is not valid for this composition")

    def compose_step(self, ps: PairState) -> tuple:
        """All (label, target) moves of the pair, deduplicated, in
        (label, client, server) order."""
        self._check(ps)
        c, s = ps
        moves = set()
        for lab, c2 in self.client.out_edges(c):
            moves.add((lab, PairState(c2, s)))
        for lab, s2 in self.server.out_edges(s):
            moves.add((lab, PairState(c, s2)))
        for lab, c2 in self.client.out_edges(c):
            if lab.is_visible:
                for s2 in self.server.successors(s, lab.dual()):
                    moves.add((TAU, PairState(c2, s2)))
        return tuple(sorted(moves))

    def tau_successors(self, ps: PairState) -> tuple:
        """Targets of the pair's tau-moves (own taus plus synchronisations)."""
        self._check(ps)
        c, s = ps
        targets = set()
        for t in self.client.successors(c, TAU):
            targets.add(PairState(t, s))
        for t in self.server.successors(s, TAU):
            targets.add(PairState(c, t))
        for lab, c2 in self.client.out_edges(c):
            if lab.is_visible:
                for s2 in self.server.successors(s, lab.dual()):
                    targets.add(PairState(c2, s2))
        return tuple(sorted(targets))

    def is_successful(self, ps: PairState) -> bool:
        self._check(ps)
        return self.client.zero is not None and ps.client == self.client.zero

    def is_stuck(self, ps: PairState) -> bool:
        return not self.tau_successors(ps)

    def build_universe(
        self, roots: Iterable[PairState], max_pairs: int = DEFAULT_MAX_PAIRS
    ) -> "PairUniverse":
        """Least tau-successor-closed superset of the roots.

        Pairs are numbered in BFS order from the roots as listed; ties among
        a pair's successors break by (client id, server id).
        """
        roots = tuple(dict.fromkeys(PairState(*r) for r in roots))
        for r in roots:
            self._check(r)
        if len(roots) > max_pairs:
            raise PairExplosionError(f"more than {max_pairs} pairs in universe")
        discovered = dict.fromkeys(roots)
        queue = deque(roots)
        while queue:
            ps = queue.popleft()
            for t in self.tau_successors(ps):
                if t not in discovered:
                    if len(discovered) >= max_pairs:
                        raise PairExplosionError(
                            f"more than {max_pairs} pairs in universe"
                        )
                    discovered[t] = None
                    queue.append(t)
        return PairUniverse(self, tuple(discovered), roots)


class PairUniverse:
    """Finite tau-successor-closed set of pairs: the lattice carrier.

    Immutable after construction; indices follow the order of ``pairs``.
    """

    def __init__(self, composition: Composition, pairs, roots):
        self.composition = composition
        self.pairs = tuple(pairs)
        self.roots = tuple(roots)
        self._index = {ps: i for i, ps in enumerate(self.pairs)}
        if len(self._index) != len(self.pairs):
            raise ValueError("duplicate pairs in universe")
        for r in self.roots:
            if r not in self._index:
                raise ValueError(f"root {r!r} not among the universe pairs")

        successors = []
        for ps in self.pairs:
            targets = composition.tau_successors(ps)
            for t in targets:
                if t not in self._index:
                    raise ValueError(
                        f"universe is not tau-closed: {ps!r} -> {t!r}"
                    )
            successors.append(tuple(self._index[t] for t in targets))
        self.successors_idx = tuple(successors)

        preds = [[] for _ in self.pairs]
        for i, targets in enumerate(self.successors_idx):
            for t in targets:
                preds[t].append(i)
        self.predecessors_idx = tuple(tuple(p) for p in preds)

        self.successful_indices = frozenset(
            i for i, ps in enumerate(self.pairs) if composition.is_successful(ps)
        )

    @property
    def client_graph(self) -> ContractGraph:
        return self.composition.client

    @property
    def server_graph(self) -> ContractGraph:
        return self.composition.server

    @property
    def root(self) -> PairState:
        return self.roots[0]

    @property
    def tau_edges(self) -> tuple:
        return tuple(
            (self.pairs[i], self.pairs[t])
            for i, targets in enumerate(self.successors_idx)
            for t in targets
        )

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, ps) -> bool:
        return ps in self._index

    def index_of(self, ps: PairState) -> int:
        try:
            return self._index[ps]
        except KeyError:
            raise UniverseMismatchError(f"pair {ps!r} is not in this universe")

    def is_successful_index(self, i: int) -> bool:
        return i in self.successful_indices

    def is_stuck_index(self, i: int) -> bool:
        return not self.successors_idx[i]

    def __repr__(self) -> str:
        return (
            f"<PairUniverse pairs={len(self.pairs)} roots={len(self.roots)} "
            f"client={self.client_graph.name!r} server={self.server_graph.name!r}>"
        )


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def to_dot(universe: PairUniverse) -> str:
    """Graphviz rendering of a universe: successful pairs double-circled,
    tau-edges solid, visible moves (between member pairs) dashed."""
    cname = universe.client_graph.name or "client"
    sname = universe.server_graph.name or "server"

    def node(ps):
        return _quote(f"{cname}.{ps.client} ‖ {sname}.{ps.server}")

    lines = ["digraph universe {", "  rankdir=LR;"]
    for i, ps in enumerate(universe.pairs):
        shape = "doublecircle" if universe.is_successful_index(i) else "circle"
        lines.append(f"  {node(ps)} [shape={shape}];")
    for i, targets in enumerate(universe.successors_idx):
        for t in targets:
            lines.append(
                f"  {node(universe.pairs[i])} -> {node(universe.pairs[t])}"
                ' [label="tau"];'
            )
    for ps in universe.pairs:
        for lab, target in universe.composition.compose_step(ps):
            if lab.is_visible and target in universe:
                lines.append(
                    f"  {node(ps)} -> {node(target)}"
                    f' [label={_quote(str(lab))}, style=dashed];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"
