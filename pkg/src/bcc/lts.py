"""Finite labelled transition graphs with weak-transition queries.

States are dense integer ids.  A graph may own a distinguished *success*
state: the unique state without outgoing edges (absent when the contract can
never terminate).  Derived tables -- tau-closures, weak barbs, divergence --
are computed once at construction; graphs are immutable afterwards and safe
to read from any number of threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import UnknownStateError

INTERNAL = 0
INPUT = 1
OUTPUT = 2


@dataclass(frozen=True, order=True)
class Label:
    """A transition label: the internal action, or a named input/output.

    Ordering is (kind, name) with the internal action first, which is the
    canonical edge ordering used everywhere in this package.
    """

    kind: int
    name: str = ""

    def __post_init__(self):
        if self.kind not in (INTERNAL, INPUT, OUTPUT):
            raise ValueError(f"bad label kind: {self.kind!r}")
        if self.kind == INTERNAL and self.name:
            raise ValueError("the internal action carries no name")
        if self.kind != INTERNAL and not self.name:
            raise ValueError("visible actions need a name")

    @property
    def is_internal(self) -> bool:
        return self.kind == INTERNAL

    @property
    def is_visible(self) -> bool:
        return self.kind != INTERNAL

    def dual(self) -> "Label":
        """?a <-> !a.  The internal action has no dual."""
        if self.kind == INPUT:
            return Label(OUTPUT, self.name)
        if self.kind == OUTPUT:
            return Label(INPUT, self.name)
        raise ValueError("the internal action has no dual")

    def __str__(self) -> str:
        if self.kind == INTERNAL:
            return "tau"
        return ("?" if self.kind == INPUT else "!") + self.name


TAU = Label(INTERNAL)


def inp(name: str) -> Label:
    return Label(INPUT, name)


def out(name: str) -> Label:
    return Label(OUTPUT, name)


@dataclass(frozen=True)
class BarbSet:
    """Visible actions available at (or weakly reachable from) a state.

    A state may offer inputs and outputs at once; the two sets are kept
    apart because the compliance conditions treat them asymmetrically.
    """

    inputs: frozenset = frozenset()
    outputs: frozenset = frozenset()

    def __bool__(self) -> bool:
        return bool(self.inputs or self.outputs)


Edge = tuple  # (source: int, label: Label, target: int)


class ContractGraph:
    """Immutable finite LTS over {tau, ?a, !a} labels.

    ``zero`` is the id of the success state, or None when no state of the
    graph is terminal.  Construction enforces that ``zero`` is the only
    state without outgoing edges.  ``name`` is display-only and ignored by
    equality.
    """

    def __init__(
        self,
        num_states: int,
        initial: int,
        edges: Iterable[Edge],
        zero: Optional[int],
        name: str = "",
    ):
        if num_states < 1:
            raise ValueError("a graph needs at least one state")
        if not 0 <= initial < num_states:
            raise ValueError(f"initial state {initial} out of range")
        if zero is not None and not 0 <= zero < num_states:
            raise ValueError(f"success state {zero} out of range")

        self.num_states = num_states
        self.initial = initial
        self.zero = zero
        self.name = name
        # canonical order: (source, label kind, action name, target)
        self.edges = tuple(sorted(set((s, lab, t) for (s, lab, t) in edges)))

        outgoing = [[] for _ in range(num_states)]
        for s, lab, t in self.edges:
            if not isinstance(lab, Label):
                raise ValueError(f"edge label {lab!r} is not a Label")
            if not (0 <= s < num_states and 0 <= t < num_states):
                raise ValueError(f"edge ({s}, {lab}, {t}) leaves the state range")
            outgoing[s].append((lab, t))
        self._out = tuple(tuple(o) for o in outgoing)

        if zero is not None and self._out[zero]:
            raise ValueError("the success state must have no outgoing edges")
        for s in range(num_states):
            if s != zero and not self._out[s]:
                raise ValueError(
                    f"state {s} has no outgoing edges but is not the success state"
                )

        self._tau_adj = tuple(
            tuple(t for (lab, t) in outs if lab.is_internal) for outs in self._out
        )
        self._closure = tuple(self._compute_closure(s) for s in range(num_states))
        self._diverging = self._compute_diverging()
        self._weak = tuple(self._compute_weak_barbs(s) for s in range(num_states))

    # -- construction helpers -------------------------------------------

    def _compute_closure(self, start: int) -> frozenset:
        seen = {start}
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for t in self._tau_adj[s]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return frozenset(seen)

    def _compute_diverging(self) -> frozenset:
        # A state diverges iff it starts an infinite tau-path, i.e. iff it
        # survives repeated deletion of states without tau-successors.
        degree = [len(self._tau_adj[s]) for s in range(self.num_states)]
        preds = [[] for _ in range(self.num_states)]
        for s in range(self.num_states):
            for t in self._tau_adj[s]:
                preds[t].append(s)
        queue = deque(s for s in range(self.num_states) if degree[s] == 0)
        dead = set(queue)
        while queue:
            t = queue.popleft()
            for p in preds[t]:
                degree[p] -= 1
                if degree[p] == 0 and p not in dead:
                    dead.add(p)
                    queue.append(p)
        return frozenset(s for s in range(self.num_states) if s not in dead)

    def _compute_weak_barbs(self, s: int) -> BarbSet:
        ins, outs = set(), set()
        for t in self._closure[s]:
            for lab, _ in self._out[t]:
                if lab.kind == INPUT:
                    ins.add(lab.name)
                elif lab.kind == OUTPUT:
                    outs.add(lab.name)
        return BarbSet(frozenset(ins), frozenset(outs))

    def _check_state(self, s: int) -> None:
        if not isinstance(s, int) or not 0 <= s < self.num_states:
            raise UnknownStateError(f"state {s!r} is not in this graph")

    # -- queries ---------------------------------------------------------

    def out_edges(self, s: int) -> tuple:
        """Outgoing (label, target) pairs in canonical order."""
        self._check_state(s)
        return self._out[s]

    def successors(self, s: int, label: Label) -> tuple:
        """Targets of label-edges out of s, ordered by state id."""
        self._check_state(s)
        return tuple(t for (lab, t) in self._out[s] if lab == label)

    def barbs(self, s: int) -> BarbSet:
        """Visible actions immediately available at s."""
        self._check_state(s)
        ins = frozenset(lab.name for (lab, _) in self._out[s] if lab.kind == INPUT)
        outs = frozenset(lab.name for (lab, _) in self._out[s] if lab.kind == OUTPUT)
        return BarbSet(ins, outs)

    def tau_closure(self, s: int) -> frozenset:
        """Least set containing s and closed under tau-edges."""
        self._check_state(s)
        return self._closure[s]

    def weak_barbs(self, s: int) -> BarbSet:
        """Visible actions available after any number of tau-steps."""
        self._check_state(s)
        return self._weak[s]

    def may_diverge(self, s: int) -> bool:
        """True iff s can start an infinite internal computation."""
        self._check_state(s)
        return s in self._diverging

    def weak_reaches_zero(self, s: int) -> bool:
        """True iff the success state is tau-reachable from s."""
        self._check_state(s)
        return self.zero is not None and self.zero in self._closure[s]

    # -- identity --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ContractGraph):
            return NotImplemented
        return (
            self.num_states == other.num_states
            and self.initial == other.initial
            and self.zero == other.zero
            and self.edges == other.edges
        )

    __hash__ = None

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return (
            f"<ContractGraph{label} states={self.num_states} "
            f"edges={len(self.edges)} initial={self.initial} zero={self.zero}>"
        )


def merge_graphs(
    graphs: Sequence[ContractGraph], name: str = ""
) -> tuple:
    """Disjoint union of graphs sharing one success state.

    The component success states are identified and become state 0 of the
    union (there must be a single terminal state overall).  Returns the
    merged graph and the remapped initial state of every component.
    """
    if not graphs:
        raise ValueError("merge_graphs needs at least one graph")
    any_zero = any(g.zero is not None for g in graphs)
    base = 1 if any_zero else 0
    edges = []
    initials = []
    for g in graphs:
        def remap(s, g=g, base=base):
            if g.zero is not None:
                if s == g.zero:
                    return 0
                return base + (s - 1 if s > g.zero else s)
            return base + s
        initials.append(remap(g.initial))
        for s, lab, t in g.edges:
            edges.append((remap(s), lab, remap(t)))
        base += g.num_states - (1 if g.zero is not None else 0)
    merged = ContractGraph(
        base, initials[0], edges, 0 if any_zero else None, name=name
    )
    return merged, tuple(initials)
