import hypothesis.strategies as st
import pytest
from hypothesis import given

from bcc import (
    TAU,
    BarbSet,
    ContractGraph,
    Label,
    UnknownStateError,
    inp,
    merge_graphs,
    out,
    parse_term,
    compile_term,
)
from conftest import compiled_random_pair
from oracles import diverges_brute, weak_barbs_brute

names = st.from_regex(r"[a-z][a-z0-9_]{0,5}", fullmatch=True)
visible_labels = st.one_of(st.builds(inp, names), st.builds(out, names))


@given(visible_labels)
def test_dual_is_an_involution(label):
    assert label.dual().dual() == label
    assert label.dual() != label
    assert label.dual().name == label.name


def test_internal_has_no_dual():
    with pytest.raises(ValueError):
        TAU.dual()


def test_label_validation():
    with pytest.raises(ValueError):
        Label(0, "a")  # internal with a name
    with pytest.raises(ValueError):
        Label(1, "")  # input without a name
    with pytest.raises(ValueError):
        Label(7, "a")


def test_label_ordering_is_kind_then_name():
    assert TAU < inp("a") < inp("b") < out("a")
    assert str(TAU) == "tau" and str(inp("a")) == "?a" and str(out("b")) == "!b"


# -- graph construction -------------------------------------------------------


def test_rejects_extra_sink():
    # state 1 is a sink but is not declared the success state
    with pytest.raises(ValueError):
        ContractGraph(3, 2, [(2, out("a"), 1)], zero=0)


def test_rejects_edges_out_of_zero():
    with pytest.raises(ValueError):
        ContractGraph(2, 1, [(0, out("a"), 1), (1, out("a"), 0)], zero=0)


def test_rejects_dangling_edges():
    with pytest.raises(ValueError):
        ContractGraph(2, 1, [(1, out("a"), 5)], zero=0)


def test_unknown_state_errors(graphs):
    p1 = graphs["p1"]
    for query in (
        lambda: p1.successors(9, out("a")),
        lambda: p1.tau_closure(-1),
        lambda: p1.weak_barbs(2),
        lambda: p1.may_diverge(17),
        lambda: p1.weak_reaches_zero("x"),
    ):
        with pytest.raises(UnknownStateError):
            query()


# -- successors ---------------------------------------------------------------


def test_successors_examples(graphs):
    p1, q2 = graphs["p1"], graphs["q2"]
    assert p1.successors(p1.initial, out("a")) == (0,)
    assert p1.successors(p1.zero, out("a")) == ()
    assert p1.successors(p1.zero, TAU) == ()
    # q2's ?a self-loop
    assert q2.successors(q2.initial, inp("a")) == (q2.initial,)


def test_edges_are_canonically_ordered(graphs):
    p3 = graphs["p3"]
    assert p3.edges == ((1, out("a"), 0), (1, out("b"), 2), (2, inp("c"), 0))


# -- tau closure ---------------------------------------------------------------


def test_tau_closure_examples(graphs):
    p1, p2, q4 = graphs["p1"], graphs["p2"], graphs["q4"]
    assert p1.tau_closure(p1.initial) == {p1.initial}
    # p2 has a single tau edge out of its initial state
    assert p2.tau_closure(p2.initial) == {0, 1}
    # q4's tau self-loop adds nothing new
    assert q4.tau_closure(q4.initial) == {q4.initial}


@pytest.mark.parametrize("seed", range(40))
def test_tau_closure_reflexive_transitive(seed):
    g, _ = compiled_random_pair(seed)
    for s in range(g.num_states):
        closure = g.tau_closure(s)
        assert s in closure
        for t in closure:
            assert g.tau_closure(t) <= closure


def test_tau_closure_monotone_under_edge_addition():
    base_edges = [(1, TAU, 2), (2, out("a"), 0), (3, out("b"), 0)]
    g1 = ContractGraph(4, 1, base_edges, zero=0)
    g2 = ContractGraph(4, 1, base_edges + [(2, TAU, 3)], zero=0)
    for s in range(4):
        assert g1.tau_closure(s) <= g2.tau_closure(s)


# -- barbs ----------------------------------------------------------------------


def test_weak_barbs_examples(graphs):
    p1, p2 = graphs["p1"], graphs["p2"]
    assert p1.weak_barbs(p1.initial) == BarbSet(frozenset(), frozenset({"a", "b"}))
    assert not p1.weak_barbs(p1.zero)
    assert p2.weak_barbs(p2.initial) == BarbSet(frozenset(), frozenset({"a"}))


@pytest.mark.parametrize("seed", range(40))
def test_strong_barbs_within_weak_barbs(seed):
    g, _ = compiled_random_pair(seed)
    for s in range(g.num_states):
        strong, weak = g.barbs(s), g.weak_barbs(s)
        assert strong.inputs <= weak.inputs
        assert strong.outputs <= weak.outputs


@pytest.mark.parametrize("seed", range(40))
def test_weak_barbs_against_brute_force(seed):
    g, _ = compiled_random_pair(seed)
    for s in range(g.num_states):
        ins, outs = weak_barbs_brute(g, s)
        assert g.weak_barbs(s) == BarbSet(frozenset(ins), frozenset(outs))


# -- divergence -------------------------------------------------------------------


def test_may_diverge_examples(graphs):
    q4, q2 = graphs["q4"], graphs["q2"]
    assert q4.may_diverge(q4.initial)
    assert not q2.may_diverge(q2.initial)
    assert not q4.may_diverge(q4.zero)


@pytest.mark.parametrize("seed", range(60))
def test_may_diverge_matches_pigeonhole_oracle(seed):
    g, _ = compiled_random_pair(seed)
    for s in range(g.num_states):
        assert g.may_diverge(s) == diverges_brute(g, s)


# -- success reachability -----------------------------------------------------------


def test_weak_reaches_zero_examples(graphs):
    p4 = graphs["p4"]
    assert p4.weak_reaches_zero(p4.zero)
    assert not p4.weak_reaches_zero(p4.initial)
    tau_then_stop = compile_term(parse_term("tau.0"))
    assert tau_then_stop.weak_reaches_zero(tau_then_stop.initial)


@pytest.mark.parametrize("seed", range(40))
def test_visible_only_states_cannot_weakly_terminate(seed):
    g, _ = compiled_random_pair(seed)
    for s in range(g.num_states):
        if g.tau_closure(s) == {s} and s != g.zero:
            if all(lab.is_visible for lab, _ in g.out_edges(s)):
                assert not g.weak_reaches_zero(s)


# -- merging ---------------------------------------------------------------------


def test_merge_identifies_success_states(graphs):
    merged, initials = merge_graphs([graphs["p1"], graphs["p4"]])
    assert merged.zero == 0
    assert merged.num_states == 3  # 1 shared zero + one non-zero state each
    assert initials == (1, 2)
    assert merged.weak_barbs(1).outputs == frozenset({"a", "b"})
    assert merged.weak_barbs(2).outputs == frozenset({"a"})


def test_merge_without_any_success_state(graphs):
    merged, initials = merge_graphs([graphs["p2"], graphs["q2"]])
    assert merged.zero is None
    assert merged.num_states == 3
    assert initials == (0, 2)


def test_merge_preserves_component_behaviour(graphs):
    parts = [graphs[n] for n in ("p1", "q1", "p3", "q4")]
    merged, initials = merge_graphs(parts)
    for g, init in zip(parts, initials):
        assert merged.weak_barbs(init) == g.weak_barbs(g.initial)
        assert merged.may_diverge(init) == g.may_diverge(g.initial)
        assert merged.weak_reaches_zero(init) == g.weak_reaches_zero(g.initial)
