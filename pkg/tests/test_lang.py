import hypothesis.strategies as st
import pytest
from hypothesis import given

from bcc import (
    TAU,
    Choice,
    DuplicateNameError,
    IllFormedError,
    Nil,
    ParseError,
    Prefix,
    Rec,
    StateExplosionError,
    Var,
    Violation,
    compile_term,
    corpus,
    inp,
    out,
    parse,
    parse_term,
    pretty,
    well_formed,
)
from bcc.generator import GenConfig, random_contract


def test_parse_choice_of_prefixes():
    assert parse_term("!a.0 + !b.0") == Choice(
        Prefix(out("a"), Nil()), Prefix(out("b"), Nil())
    )


def test_parse_nil():
    defs = parse("z = 0")
    assert len(defs) == 1 and defs[0].name == "z" and defs[0].term == Nil()


def test_parse_guarded_recursion_with_choice():
    assert parse_term("rec X.(tau.X + ?a.0)") == Rec(
        "X", Choice(Prefix(TAU, Var("X")), Prefix(inp("a"), Nil()))
    )


def test_rec_extends_right_as_far_as_possible():
    assert parse_term("rec X.tau.X + ?a.0") == Rec(
        "X", Choice(Prefix(TAU, Var("X")), Prefix(inp("a"), Nil()))
    )
    assert parse_term("(rec X.tau.X) + ?a.0") == Choice(
        Rec("X", Prefix(TAU, Var("X"))), Prefix(inp("a"), Nil())
    )


def test_prefix_binds_tighter_than_choice():
    assert parse_term("tau.0 + 0") == Choice(Prefix(TAU, Nil()), Nil())
    assert parse_term("tau.(0 + 0)") == Prefix(TAU, Choice(Nil(), Nil()))


def test_choice_parses_left_associative():
    assert parse_term("0 + 0 + 0") == Choice(Choice(Nil(), Nil()), Nil())


def test_parse_file_with_comments_and_blanks():
    defs = parse("# header\n\na = !x.0  # trailing\n\nb = ?y.a\n")
    assert [d.name for d in defs] == ["a", "b"]
    assert defs[1].line == 5


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse("ok = 0\nbad = !a.\n")
    assert err.value.line == 2
    assert err.value.column == 10


def test_unexpected_character_position():
    with pytest.raises(ParseError) as err:
        parse_term("!a.0 + $")
    assert (err.value.line, err.value.column) == (1, 8)


def test_duplicate_names_rejected():
    with pytest.raises(DuplicateNameError) as err:
        parse("a = 0\na = !x.0\n")
    assert err.value.line == 2


def test_reserved_words_are_not_names():
    with pytest.raises(ParseError):
        parse("rec = 0")
    with pytest.raises(ParseError):
        parse_term("rec tau.0")


# -- well-formedness -----------------------------------------------------------


def test_unguarded_recursion_detected():
    assert well_formed(Rec("X", Var("X"))) == [
        Violation("unguarded-recursion", "X")
    ]
    assert well_formed(parse_term("rec X.X + tau.X")) == [
        Violation("unguarded-recursion", "X")
    ]


def test_guarded_recursion_accepted():
    assert well_formed(parse_term("rec X.tau.!a.X")) == []
    assert well_formed(parse_term("rec Y.(tau.Y + ?a.0)")) == []


def test_unbound_variable_detected():
    assert well_formed(Var("X")) == [Violation("unbound-variable", "X")]


def test_shadowing_rebinds_the_inner_variable():
    # the inner rec X re-binds X, so the use is guarded by the inner binder
    term = parse_term("rec X.tau.rec X.?a.X")
    assert well_formed(term) == []


# -- compilation ----------------------------------------------------------------


def test_compile_single_output():
    g = compile_term(parse_term("!a.0"))
    assert g.num_states == 2
    assert g.zero == 0
    assert g.initial == 1
    assert g.edges == ((1, out("a"), 0),)


def test_compile_tau_output_loop():
    g = compile_term(parse_term("rec X.tau.!a.X"))
    assert g.num_states == 2
    assert g.zero is None
    assert g.initial == 0
    assert g.edges == ((0, TAU, 1), (1, out("a"), 0))


def test_compile_input_self_loop():
    g = compile_term(parse_term("rec X.?a.X"))
    assert g.num_states == 1
    assert g.edges == ((0, inp("a"), 0),)
    assert g.zero is None


def test_compile_collapses_transition_free_terms():
    # 0 + 0 cannot move, so it is the terminal state
    g = compile_term(parse_term("tau.(0 + 0)"))
    assert g.num_states == 2
    assert g.zero == 0
    assert g.edges == ((1, TAU, 0),)


def test_compile_is_deterministic():
    term = parse_term("rec X.(!a.X + ?b.(tau.0 + !c.X))")
    assert compile_term(term) == compile_term(term)


def test_compile_rejects_ill_formed():
    with pytest.raises(IllFormedError) as err:
        compile_term(parse_term("rec X.X"))
    assert err.value.violations == (Violation("unguarded-recursion", "X"),)


def test_compile_state_bound():
    term = parse_term("!a.!b.!c.0")
    with pytest.raises(StateExplosionError):
        compile_term(term, max_states=3)
    assert compile_term(term, max_states=4).num_states == 4


def test_exactly_one_sink_in_compiled_graphs():
    for seed in range(100):
        g = compile_term(random_contract(GenConfig(seed=seed)))
        sinks = [s for s in range(g.num_states) if not g.out_edges(s)]
        assert sinks == ([g.zero] if g.zero is not None else [])


# -- pretty-printing --------------------------------------------------------------


def test_roundtrip_on_corpus():
    for d in corpus.example_definitions():
        assert parse_term(pretty(d.term)) == d.term


@pytest.mark.parametrize(
    "term",
    [
        Choice(Rec("X", Prefix(TAU, Var("X"))), Nil()),
        Prefix(out("a"), Choice(Nil(), Nil())),
        Choice(Nil(), Choice(Nil(), Rec("X", Prefix(TAU, Var("X"))))),
        Choice(Prefix(out("a"), Rec("X", Prefix(TAU, Var("X")))), Nil()),
        Choice(Choice(Nil(), Rec("X", Prefix(TAU, Var("X")))), Nil()),
        Rec("X", Choice(Var("X"), Var("X"))),
    ],
)
def test_roundtrip_on_tricky_shapes(term):
    assert parse_term(pretty(term)) == term


names = st.sampled_from(["a", "b", "go_on2"])
variables = st.sampled_from(["X", "Y", "Zed"])
labels = st.one_of(st.just(TAU), st.builds(inp, names), st.builds(out, names))
terms = st.deferred(
    lambda: st.one_of(
        st.just(Nil()),
        st.builds(Var, variables),
        st.builds(Prefix, labels, terms),
        st.builds(Choice, terms, terms),
        st.builds(Rec, variables, terms),
    )
)


@given(terms)
def test_roundtrip_on_arbitrary_asts(term):
    assert parse_term(pretty(term)) == term


@pytest.mark.parametrize("seed", range(300))
def test_roundtrip_on_generated_contracts(seed):
    term = random_contract(GenConfig(seed=seed))
    assert parse_term(pretty(term)) == term
