import pytest

from bcc import Composition, PairState, compile_term, corpus
from bcc.generator import GenConfig, SplitMix64, random_contract


@pytest.fixture(scope="session")
def graphs():
    return corpus.example_graphs()


@pytest.fixture(scope="session")
def corpus_pairs(graphs):
    return [
        (graphs[c], graphs[s]) for c, s in corpus.example_pairs()
    ]


def compiled_random_pair(seed, **cfg_kwargs):
    """One deterministic (client graph, server graph) for a seed."""
    rng = SplitMix64(seed)
    client = compile_term(random_contract(GenConfig(seed=rng.next_u64(), **cfg_kwargs)))
    server = compile_term(random_contract(GenConfig(seed=rng.next_u64(), **cfg_kwargs)))
    return client, server


def universe_of(client, server, max_pairs=4096):
    comp = Composition(client, server)
    return comp.build_universe(
        [PairState(client.initial, server.initial)], max_pairs
    )
