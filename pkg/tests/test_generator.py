import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from bcc import Choice, Nil, Prefix, Rec, Var, compile_term, well_formed
from bcc.generator import GenConfig, SplitMix64, random_contract, random_pairs


def test_splitmix64_reference_vector():
    # first outputs for seed 0, per the published reference implementation
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_splitmix64_split_is_deterministic():
    a = SplitMix64(1234).split()
    b = SplitMix64(1234).split()
    assert [a.next_u64() for _ in range(4)] == [b.next_u64() for _ in range(4)]


def test_same_config_same_term():
    cfg = GenConfig(seed=99)
    assert random_contract(cfg) == random_contract(cfg)


def test_depth_zero_is_nil():
    assert random_contract(GenConfig(seed=7, max_depth=0)) == Nil()


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(seed=0, alphabet=())
    with pytest.raises(ValueError):
        GenConfig(seed=0, rec_probability=0.6, choice_probability=0.5)
    with pytest.raises(ValueError):
        GenConfig(seed=0, rec_probability=-0.1)
    with pytest.raises(ValueError):
        GenConfig(seed=-1)
    with pytest.raises(ValueError):
        GenConfig(seed=0, max_depth=-2)


@pytest.mark.parametrize("seed", range(0, 2000, 7))
def test_generated_terms_are_well_formed(seed):
    assert well_formed(random_contract(GenConfig(seed=seed))) == []


@settings(max_examples=150)
@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_generated_terms_are_well_formed_hypothesis(seed):
    assert well_formed(random_contract(GenConfig(seed=seed))) == []


def test_every_constructor_appears():
    found = set()

    def visit(t):
        found.add(type(t))
        if isinstance(t, Prefix):
            visit(t.body)
        elif isinstance(t, Choice):
            visit(t.left)
            visit(t.right)
        elif isinstance(t, Rec):
            visit(t.body)

    for seed in range(2000):
        visit(random_contract(GenConfig(seed=seed)))
    assert found == {Nil, Prefix, Choice, Rec, Var}


def test_rec_binders_are_always_used():
    def check(t):
        if isinstance(t, Rec):
            stack, used = [t.body], False
            while stack:
                u = stack.pop()
                if isinstance(u, Var) and u.name == t.var:
                    used = True
                elif isinstance(u, Prefix):
                    stack.append(u.body)
                elif isinstance(u, Choice):
                    stack.extend((u.left, u.right))
                elif isinstance(u, Rec) and u.var != t.var:
                    stack.append(u.body)
            assert used
            check(t.body)
        elif isinstance(t, Prefix):
            check(t.body)
        elif isinstance(t, Choice):
            check(t.left)
            check(t.right)

    for seed in range(800):
        check(random_contract(GenConfig(seed=seed)))


@pytest.mark.parametrize("seed", range(0, 600, 3))
def test_deep_terms_compile_within_default_bound(seed):
    cfg = GenConfig(seed=seed, max_depth=8, alphabet=("a", "b", "c", "d"))
    graph = compile_term(random_contract(cfg))
    assert graph.num_states <= 1024


def test_random_pairs_reproducible():
    first = random_pairs(31337, 5)
    second = random_pairs(31337, 5)
    assert first == second
    assert len(first) == 5
    assert all(well_formed(c) == [] and well_formed(s) == [] for c, s in first)
