"""Seeded random generation of closed, guarded contract terms.

Randomness comes from SplitMix64, a splittable counter-based generator: a
64-bit Weyl sequence fed through a mixing finaliser.  Same seed, same term;
child generators are derived by drawing a fresh seed, so corpora are
reproducible from a single root seed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lang import Choice, Nil, Prefix, Rec, Term, Var
from .lts import TAU, inp, out

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

# share of the non-rec, non-choice probability mass that goes to prefixes
# (the rest ends the branch with 0 or a guarded variable)
_PREFIX_SHARE = 0.75

# attempts at producing a rec body that uses its binder before giving up
_REC_RETRIES = 8


class SplitMix64:
    """SplitMix64 PRNG; deterministic and cheap to split."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randrange(self, n: int) -> int:
        # n is tiny here; modulo bias is irrelevant at these sizes
        return self.next_u64() % n

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


@dataclass(frozen=True)
class GenConfig:
    """Shape parameters for one random term.

    At every depth the branch probabilities are rec_probability,
    choice_probability, and the remaining mass split between a prefix and a
    terminal; depth 0 forces a terminal (0, or a variable that is already
    guarded).  Recursion binders are only emitted at depth >= 2 so that the
    body can guard and use them.
    """

    seed: int
    max_depth: int = 6
    alphabet: tuple = ("a", "b", "c")
    rec_probability: float = 0.2
    choice_probability: float = 0.25

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK:
            raise ValueError("seed must fit in 64 bits")
        if self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")
        if not self.alphabet:
            raise ValueError("alphabet must not be empty")
        if min(self.rec_probability, self.choice_probability) < 0:
            raise ValueError("probabilities must be non-negative")
        if self.rec_probability + self.choice_probability >= 1:
            raise ValueError(
                "rec_probability + choice_probability must leave mass "
                "for prefixes and terminals"
            )


def _uses(t: Term, var: str) -> bool:
    if isinstance(t, Var):
        return t.name == var
    if isinstance(t, Prefix):
        return _uses(t.body, var)
    if isinstance(t, Choice):
        return _uses(t.left, var) or _uses(t.right, var)
    if isinstance(t, Rec):
        return t.var != var and _uses(t.body, var)
    return False


def random_contract(cfg: GenConfig) -> Term:
    """A closed, guarded term; a deterministic function of cfg."""
    rng = SplitMix64(cfg.seed)
    prefixes = [TAU]
    for a in cfg.alphabet:
        prefixes.append(inp(a))
        prefixes.append(out(a))
    counter = [0]

    def fresh_var():
        counter[0] += 1
        return f"X{counter[0]}"

    def terminal(guarded):
        options = [Nil()] + [Var(v) for v in sorted(guarded)]
        return rng.choice(options)

    def gen(depth, guarded, unguarded):
        if depth == 0:
            return terminal(guarded)
        roll = rng.random()
        if roll < cfg.rec_probability and depth >= 2:
            var = fresh_var()
            for _ in range(_REC_RETRIES):
                body = gen(depth - 1, guarded, unguarded | {var})
                if _uses(body, var):
                    return Rec(var, body)
            # binder stayed unused; fall through to a plain prefix
        elif roll < cfg.rec_probability + cfg.choice_probability:
            return Choice(
                gen(depth - 1, guarded, unguarded),
                gen(depth - 1, guarded, unguarded),
            )
        threshold = cfg.rec_probability + cfg.choice_probability
        remaining = 1.0 - threshold
        if roll < threshold + remaining * _PREFIX_SHARE or roll < threshold:
            return Prefix(
                rng.choice(prefixes), gen(depth - 1, guarded | unguarded, set())
            )
        return terminal(guarded)

    return gen(cfg.max_depth, set(), set())


def random_pairs(seed: int, count: int, **cfg_kwargs) -> list:
    """Deterministic list of (client term, server term) pairs derived from
    one root seed."""
    root = SplitMix64(seed)
    pairs = []
    for _ in range(count):
        client = random_contract(GenConfig(seed=root.next_u64(), **cfg_kwargs))
        server = random_contract(GenConfig(seed=root.next_u64(), **cfg_kwargs))
        pairs.append((client, server))
    return pairs
