"""Decision procedures for the six compliance relations on finite pairs.

Each relation is decided over the tau-closed universe of the composition.
The per-universe evaluators below are plain reachability analyses (forward,
backward, and cycle detection); none of them iterates the compliance
functional, so they stay independent of the fixed-point machinery that the
test suite checks them against.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .composition import DEFAULT_MAX_PAIRS, Composition, PairState, PairUniverse
from .lts import ContractGraph


class RelationKind(enum.Enum):
    PROGRESS = "pg"
    MUST = "mst"
    SHOULD = "shd"
    BEH = "beh"
    IO = "io"
    MAY = "may"


ALL_RELATIONS = tuple(RelationKind)


@dataclass(frozen=True)
class Verdict:
    """Outcome of one relation check.

    For a failed Progress/Must/Should/Beh/Io check the witness is a tau-path
    from the root ending at a pair violating the defining clause (for Must's
    divergence case the path revisits a pair, exhibiting the loop).  For a
    successful May check it is a tau-path to a successful pair.
    """

    kind: RelationKind
    holds: bool
    witness: Optional[tuple] = None


# -- per-universe set evaluators ------------------------------------------


def _can_reach(universe: PairUniverse, targets, within=None) -> frozenset:
    """Indices from which some target is tau-reachable (targets included),
    along paths that stay inside ``within`` when given."""
    if within is not None:
        seen = set(t for t in targets if t in within)
    else:
        seen = set(targets)
    queue = deque(seen)
    while queue:
        t = queue.popleft()
        for p in universe.predecessors_idx[t]:
            if p not in seen and (within is None or p in within):
                seen.add(p)
                queue.append(p)
    return frozenset(seen)


def _infinite_indices(universe: PairUniverse, within=None) -> frozenset:
    """Indices starting an infinite tau-path that stays inside ``within``:
    the survivors of repeatedly deleting members without successors."""
    members = frozenset(range(len(universe))) if within is None else frozenset(within)
    degree = {}
    for i in members:
        degree[i] = sum(1 for t in universe.successors_idx[i] if t in members)
    queue = deque(i for i in members if degree[i] == 0)
    dead = set(queue)
    while queue:
        t = queue.popleft()
        for p in universe.predecessors_idx[t]:
            if p in members and p not in dead:
                degree[p] -= 1
                if degree[p] == 0:
                    dead.add(p)
                    queue.append(p)
    return members - dead


def _progress_violations(universe: PairUniverse) -> frozenset:
    return frozenset(
        i
        for i in range(len(universe))
        if universe.is_stuck_index(i) and not universe.is_successful_index(i)
    )


def _beh_violations(universe: PairUniverse) -> frozenset:
    client = universe.client_graph
    server = universe.server_graph
    bad = set()
    for i, (c, s) in enumerate(universe.pairs):
        if universe.is_stuck_index(i) and not universe.is_successful_index(i):
            bad.add(i)
        elif server.may_diverge(s) and not client.weak_reaches_zero(c):
            bad.add(i)
    return frozenset(bad)


def _io_violations(universe: PairUniverse) -> frozenset:
    client = universe.client_graph
    server = universe.server_graph
    bad = set()
    for i, (c, s) in enumerate(universe.pairs):
        cw = client.weak_barbs(c)
        sw = server.weak_barbs(s)
        ok = cw.outputs <= sw.inputs and (
            not (not cw.outputs and cw.inputs)
            or (bool(sw.outputs) and sw.outputs <= cw.inputs)
        )
        if not ok:
            bad.add(i)
    return frozenset(bad)


def holding_indices(universe: PairUniverse, kind: RelationKind) -> frozenset:
    """Indices of the pairs at which the relation holds, each judged over
    the sub-universe reachable from that pair."""
    everything = frozenset(range(len(universe)))
    if kind is RelationKind.PROGRESS:
        return everything - _can_reach(universe, _progress_violations(universe))
    if kind is RelationKind.MAY:
        return _can_reach(universe, universe.successful_indices)
    if kind is RelationKind.SHOULD:
        doomed = everything - _can_reach(universe, universe.successful_indices)
        return everything - _can_reach(universe, doomed)
    if kind is RelationKind.BEH:
        return everything - _can_reach(universe, _beh_violations(universe))
    if kind is RelationKind.IO:
        return everything - _can_reach(universe, _io_violations(universe))
    if kind is RelationKind.MUST:
        successful = universe.successful_indices
        unsuccessful = everything - successful
        stuck = frozenset(
            i for i in unsuccessful if universe.is_stuck_index(i)
        )
        diverging = _infinite_indices(universe, within=unsuccessful)
        doomed = _can_reach(universe, stuck | diverging, within=unsuccessful)
        return successful | (unsuccessful - doomed)
    raise ValueError(f"unknown relation kind: {kind!r}")


# -- witnesses -------------------------------------------------------------


def _shortest_path(universe, source: int, targets, within=None):
    """Shortest tau-path (as indices) from source to the nearest target;
    distance ties break by pair numbering at the target and along the path."""
    allowed = None if within is None else frozenset(within)
    if allowed is not None and source not in allowed:
        return None
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in universe.successors_idx[u]:
            if v not in dist and (allowed is None or v in allowed):
                dist[v] = dist[u] + 1
                queue.append(v)
    reached = [t for t in targets if t in dist]
    if not reached:
        return None
    goal = min(reached, key=lambda t: (dist[t], t))
    path = [goal]
    while path[-1] != source:
        here = path[-1]
        prev = min(
            p
            for p in universe.predecessors_idx[here]
            if p in dist
            and dist[p] == dist[here] - 1
            and (allowed is None or p in allowed)
        )
        path.append(prev)
    path.reverse()
    return path


def _lasso_extension(universe, start: int, pool) -> list:
    """Walk inside ``pool`` (every member has a successor in it) from start
    until a pair repeats; returns the walked indices after start, ending on
    the repeated pair."""
    walk = [start]
    positions = {start}
    while True:
        here = walk[-1]
        nxt = min(t for t in universe.successors_idx[here] if t in pool)
        walk.append(nxt)
        if nxt in positions:
            return walk[1:]
        positions.add(nxt)


def _must_witness(universe, root: int):
    successful = universe.successful_indices
    unsuccessful = frozenset(range(len(universe))) - successful
    stuck = frozenset(i for i in unsuccessful if universe.is_stuck_index(i))
    diverging = _infinite_indices(universe, within=unsuccessful)
    path = _shortest_path(
        universe, root, stuck | diverging, within=unsuccessful
    )
    if path is None:
        return None
    if path[-1] in diverging:
        path = path + _lasso_extension(universe, path[-1], diverging)
    return path


def _witness_indices(universe, root: int, kind: RelationKind, holds: bool):
    if kind is RelationKind.MAY:
        if holds:
            return _shortest_path(universe, root, universe.successful_indices)
        return None
    if holds:
        return None
    if kind is RelationKind.PROGRESS:
        return _shortest_path(universe, root, _progress_violations(universe))
    if kind is RelationKind.SHOULD:
        everything = frozenset(range(len(universe)))
        doomed = everything - _can_reach(universe, universe.successful_indices)
        return _shortest_path(universe, root, doomed)
    if kind is RelationKind.BEH:
        return _shortest_path(universe, root, _beh_violations(universe))
    if kind is RelationKind.IO:
        return _shortest_path(universe, root, _io_violations(universe))
    if kind is RelationKind.MUST:
        return _must_witness(universe, root)
    raise ValueError(f"unknown relation kind: {kind!r}")


def verdict_at(universe: PairUniverse, root: PairState, kind: RelationKind) -> Verdict:
    """Decide one relation for the contracts rooted at ``root`` inside an
    existing universe."""
    root_idx = universe.index_of(root)
    holds = root_idx in holding_indices(universe, kind)
    indices = _witness_indices(universe, root_idx, kind, holds)
    witness = (
        None if indices is None else tuple(universe.pairs[i] for i in indices)
    )
    return Verdict(kind, holds, witness)


# -- contract-level entry points -------------------------------------------


def evaluate(
    client: ContractGraph,
    server: ContractGraph,
    kinds: Optional[Iterable[RelationKind]] = None,
    *,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> dict:
    """Decide the requested relations (all six by default) for one
    client/server pair, sharing a single universe."""
    kinds = ALL_RELATIONS if kinds is None else tuple(kinds)
    composition = Composition(client, server)
    root = PairState(client.initial, server.initial)
    universe = composition.build_universe([root], max_pairs)
    return {kind: verdict_at(universe, root, kind) for kind in kinds}


def _single(client, server, kind, max_pairs):
    return evaluate(client, server, [kind], max_pairs=max_pairs)[kind]


def check_progress(client, server, *, max_pairs=DEFAULT_MAX_PAIRS) -> Verdict:
    """Every stuck reduct of the composition is successful."""
    return _single(client, server, RelationKind.PROGRESS, max_pairs)


def check_must(client, server, *, max_pairs=DEFAULT_MAX_PAIRS) -> Verdict:
    """Every maximal tau-trace of the composition visits a successful pair."""
    return _single(client, server, RelationKind.MUST, max_pairs)


def check_should(client, server, *, max_pairs=DEFAULT_MAX_PAIRS) -> Verdict:
    """From every reduct of the composition a successful pair stays reachable."""
    return _single(client, server, RelationKind.SHOULD, max_pairs)


def check_beh(client, server, *, max_pairs=DEFAULT_MAX_PAIRS) -> Verdict:
    """No stuck unsuccessful reduct, and whenever the server component can
    diverge on its own the client can terminate on its own."""
    return _single(client, server, RelationKind.BEH, max_pairs)


def check_io(client, server, *, max_pairs=DEFAULT_MAX_PAIRS) -> Verdict:
    """At every reduct the client's weak outputs are matched by server weak
    inputs; an input-only client must be matched by server outputs."""
    return _single(client, server, RelationKind.IO, max_pairs)


def check_may(client, server, *, max_pairs=DEFAULT_MAX_PAIRS) -> Verdict:
    """Some tau-trace of the composition reaches a successful pair."""
    return _single(client, server, RelationKind.MAY, max_pairs)
