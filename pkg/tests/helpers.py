"""Shared generators for seeded random systems used across the suite."""

import numpy as np

from consinfo.core import (
    Agent,
    CommSystem,
    Distribution,
    Label,
    Role,
    StochasticMatrix,
)


def random_world(rng: np.random.Generator, n: int) -> Distribution:
    """Full-support world distribution (entries bounded away from zero)."""
    v = rng.random(n) + 0.05
    return Distribution(v / v.sum(), Label.WORLD)


def random_rows(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.random((n, n)) + 1e-3
    return m / m.sum(axis=1, keepdims=True)


def random_agent(rng: np.random.Generator, n: int, name: str = "") -> Agent:
    return Agent(
        StochasticMatrix(random_rows(rng, n), Role.CODER),
        StochasticMatrix(random_rows(rng, n), Role.DECODER),
        name,
    )


def random_system(rng: np.random.Generator, n: int, channel: str = "random") -> CommSystem:
    """Random valid system; channel is 'random', 'identity' or 'noisy'.

    'noisy' mixes a random channel with the uniform one, which keeps every
    end-to-end transition strictly positive.
    """
    if channel == "identity":
        rows = np.eye(n)
    elif channel == "noisy":
        rows = 0.9 * random_rows(rng, n) + 0.1 / n
    else:
        rows = random_rows(rng, n)
    return CommSystem(
        random_world(rng, n),
        random_agent(rng, n, "s"),
        random_agent(rng, n, "r"),
        StochasticMatrix(rows, Role.CHANNEL),
    )


def permutation_matrices(n: int) -> list[np.ndarray]:
    """All n! permutation matrices, in lexicographic order of the permutation."""
    from itertools import permutations

    out = []
    for perm in permutations(range(n)):
        m = np.zeros((n, n))
        for i, j in enumerate(perm):
            m[i, j] = 1.0
        out.append(m)
    return out
