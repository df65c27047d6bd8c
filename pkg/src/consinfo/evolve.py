"""Seeded evolutionary simulator for populations of coder/decoder agents.

Generational loop with elitism: every generation the best agents are
carried over unchanged and the remaining slots are filled by
fitness-proportional parent selection followed by row-wise mutation of the
coder and decoder matrices.  An agent's fitness is the mean of a symmetric
pairwise measure (decoding payoff or averaged consistent information)
against every other agent, so selection rewards codes the rest of the
population can decode consistently.

Elite agents keep the fitness value they were selected with instead of
being re-scored against the mutated population; this is what makes the
max-fitness trace exactly non-decreasing, since pairwise fitness depends
on who else is around.  Runs are deterministic given the config seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    Agent,
    CommSystem,
    Distribution,
    Label,
    Role,
    StochasticMatrix,
)
from .measures import symmetric_report


class PopulationTooSmall(ValueError):
    pass


class FitnessKind(Enum):
    PAYOFF = "payoff"
    CONSISTENT_INFO = "consistent-info"


@dataclass(frozen=True)
class Population:
    """A set of agents sharing one world and one channel."""

    agents: tuple[Agent, ...]
    world: Distribution
    channel: StochasticMatrix
    generation: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "agents", tuple(self.agents))
        if len(self.agents) < 2:
            raise PopulationTooSmall("a population needs at least two agents")
        dims = {a.n for a in self.agents} | {self.world.n, self.channel.n}
        if len(dims) != 1:
            raise ValueError(f"inconsistent dimensions in population: {sorted(dims)}")

    @property
    def size(self) -> int:
        return len(self.agents)

    @property
    def n(self) -> int:
        return self.world.n


@dataclass(frozen=True)
class EvolutionConfig:
    population_size: int
    generations: int
    mutation_rate: float
    mutation_scale: float
    fitness: FitnessKind = FitnessKind.PAYOFF
    elitism: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise PopulationTooSmall("population_size must be at least 2")
        if self.generations < 0:
            raise ValueError("generations must be non-negative")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if self.mutation_scale < 0:
            raise ValueError("mutation_scale must be non-negative")
        if not 0 <= self.elitism < self.population_size:
            raise ValueError("elitism must be non-negative and below population_size")


@dataclass(frozen=True)
class Trajectory:
    """Per-generation statistics; index 0 is the initial population."""

    mean_fitness: tuple[float, ...]
    max_fitness: tuple[float, ...]
    mean_sigma: tuple[float, ...]
    mean_consistent_info: tuple[float, ...]
    seed: int

    def __len__(self) -> int:
        return len(self.mean_fitness)

    def to_csv(self) -> str:
        lines = [f"# seed: {self.seed}"]
        lines.append("generation,mean_fitness,max_fitness,mean_sigma,mean_consistent_info")
        for g in range(len(self)):
            lines.append(
                f"{g},{self.mean_fitness[g]!r},{self.max_fitness[g]!r},"
                f"{self.mean_sigma[g]!r},{self.mean_consistent_info[g]!r}"
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write(self.to_csv())


def random_stochastic_matrix(
    n: int, rng: np.random.Generator, role: Role | None = None
) -> StochasticMatrix:
    """Row-stochastic matrix with rows drawn from a flat Dirichlet."""
    return StochasticMatrix(rng.dirichlet(np.ones(n), size=n), role)


def random_agent(n: int, rng: np.random.Generator, id: str = "") -> Agent:
    return Agent(
        random_stochastic_matrix(n, rng, Role.CODER),
        random_stochastic_matrix(n, rng, Role.DECODER),
        id,
    )


def _default_setting(
    n: int, world: Distribution | None, channel: StochasticMatrix | None
) -> tuple[Distribution, StochasticMatrix]:
    if world is None:
        world = Distribution(np.full(n, 1.0 / n), Label.WORLD)
    if channel is None:
        channel = StochasticMatrix(np.eye(n), Role.CHANNEL)
    return world, channel


def random_population(
    n: int,
    size: int,
    rng: np.random.Generator,
    world: Distribution | None = None,
    channel: StochasticMatrix | None = None,
) -> Population:
    """Population of random agents over a given (default uniform/noiseless) setting."""
    world, channel = _default_setting(n, world, channel)
    agents = tuple(random_agent(n, rng, id=f"a{i}") for i in range(size))
    return Population(agents, world, channel)


def clonal_population(
    n: int,
    size: int,
    rng: np.random.Generator,
    world: Distribution | None = None,
    channel: StochasticMatrix | None = None,
) -> Population:
    """Population of identical copies of one random agent.

    Without mutation this is an exact fixed point of the dynamics: every
    trajectory row repeats the initial statistics.
    """
    world, channel = _default_setting(n, world, channel)
    proto = random_agent(n, rng)
    agents = tuple(Agent(proto.coder, proto.decoder, f"a{i}") for i in range(size))
    return Population(agents, world, channel)


def _pairwise_tables(population: Population) -> dict[str, np.ndarray]:
    """Directed pairwise measures for all ordered agent pairs, vectorized.

    Returns matrices indexed [coder agent, decoder agent]: decoding payoff,
    mutual information, referential parameter and consistent information.
    Diagonal entries describe self-communication and are excluded by the
    callers.
    """
    agents = population.agents
    mu = population.world.probs
    lam = population.channel.rows
    coders = np.stack([a.coder.rows for a in agents])
    decoders = np.stack([a.decoder.rows for a in agents])

    sent = coders @ lam
    # e2e[v, u, l, i] = P(decoded i | sent l) when v codes and u decodes
    e2e = np.einsum("vlj,uji->vuli", sent, decoders)
    # w[v, u, l, i] = P(sent l, decoded i)
    w = mu[None, None, :, None] * e2e
    out_marg = w.sum(axis=2)

    with np.errstate(divide="ignore", invalid="ignore"):
        log_w = np.where(w > 0, np.log2(np.where(w > 0, w, 1.0)), 0.0)
        denom = mu[None, None, :, None] * out_marg[:, :, None, :]
        log_ratio = np.where(w > 0, np.log2(np.where(w > 0, w / denom, 1.0)), 0.0)

    h_joint = -(w * log_w).sum(axis=(2, 3))
    info = np.maximum((w * log_ratio).sum(axis=(2, 3)), 0.0)
    diag = np.einsum("vukk->vuk", w)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag_log = np.where(diag > 0, np.log2(np.where(diag > 0, diag, 1.0)), 0.0)
    diag_term = -(diag * diag_log).sum(axis=2)

    sigma = np.where(h_joint > 0, diag_term / np.where(h_joint > 0, h_joint, 1.0), 0.0)
    # degenerate couplings (all mass on one cell): sigma is 1 on a diagonal cell
    if np.any(h_joint == 0):
        flat = w.reshape(w.shape[0], w.shape[1], -1)
        peak = flat.argmax(axis=2)
        on_diag = (peak // w.shape[2]) == (peak % w.shape[2])
        sigma = np.where(h_joint == 0, on_diag.astype(float), sigma)
    sigma = np.clip(sigma, 0.0, 1.0)

    payoff = np.einsum("vukk->vu", w)
    return {
        "payoff": payoff,
        "mutual_info": info,
        "sigma": sigma,
        "consistent_info": sigma * info,
    }


def _symmetric_fitness(tables: dict[str, np.ndarray], fitness: FitnessKind) -> np.ndarray:
    directed = tables["payoff"] if fitness is FitnessKind.PAYOFF else tables["consistent_info"]
    sym = 0.5 * (directed + directed.T)
    m = sym.shape[0]
    return (sym.sum(axis=1) - np.diag(sym)) / (m - 1)


def agent_fitness(agent: Agent, population: Population, fitness: FitnessKind) -> float:
    """Mean symmetric measure of one agent against every other agent.

    Reference implementation built on the scalar measures; the evolution
    loop uses the vectorized equivalent.
    """
    if population.size < 2:
        raise PopulationTooSmall("fitness needs at least one partner agent")
    try:
        idx = next(i for i, a in enumerate(population.agents) if a is agent)
    except StopIteration:
        raise ValueError("agent does not belong to the population") from None
    others = [a for i, a in enumerate(population.agents) if i != idx]
    values = []
    for other in others:
        system = CommSystem(population.world, agent, other, population.channel)
        report = symmetric_report(system)
        if fitness is FitnessKind.PAYOFF:
            values.append(report.avg_payoff)
        else:
            values.append(report.avg_consistent_info)
    return float(np.mean(values))


def mutate(agent: Agent, config: EvolutionConfig, rng: np.random.Generator) -> Agent:
    """Row-wise additive mutation of both matrices.

    Each row of each matrix is independently perturbed with probability
    ``mutation_rate`` by uniform noise of half-width ``mutation_scale``,
    then clamped to [0, 1] and renormalized.  Zero rate or zero scale
    returns the agent unchanged.
    """
    if config.mutation_rate == 0.0 or config.mutation_scale == 0.0:
        return agent

    def perturb(matrix: StochasticMatrix) -> StochasticMatrix:
        rows = np.array(matrix.rows)
        changed = False
        for i in range(rows.shape[0]):
            if rng.random() < config.mutation_rate:
                row = np.clip(
                    rows[i] + rng.uniform(-config.mutation_scale, config.mutation_scale, rows.shape[1]),
                    0.0,
                    1.0,
                )
                total = row.sum()
                rows[i] = row / total if total > 0 else np.full(rows.shape[1], 1.0 / rows.shape[1])
                changed = True
        return StochasticMatrix(rows, matrix.role) if changed else matrix

    coder = perturb(agent.coder)
    decoder = perturb(agent.decoder)
    if coder is agent.coder and decoder is agent.decoder:
        return agent
    return Agent(coder, decoder, agent.id)


def _off_diagonal_mean(matrix: np.ndarray) -> float:
    m = matrix.shape[0]
    return float((matrix.sum() - np.trace(matrix)) / (m * (m - 1)))


def evolve(initial: Population, config: EvolutionConfig) -> tuple[Trajectory, Population]:
    """Run the generational loop and return the trajectory and final population.

    Selection is fitness-proportional (uniform when all fitness values are
    zero); the top ``elitism`` agents (ties broken by lowest index) pass
    through unchanged together with their fitness values.
    """
    if initial.size != config.population_size:
        raise ValueError(
            f"population has {initial.size} agents but config expects {config.population_size}"
        )
    rng = np.random.default_rng(config.seed)
    agents = list(initial.agents)
    population = initial

    tables = _pairwise_tables(population)
    fitness = _symmetric_fitness(tables, config.fitness)

    mean_f = [float(fitness.mean())]
    max_f = [float(fitness.max())]
    mean_sigma = [_off_diagonal_mean(tables["sigma"])]
    mean_ci = [_off_diagonal_mean(tables["consistent_info"])]

    n_offspring = config.population_size - config.elitism
    for gen in range(1, config.generations + 1):
        order = np.argsort(-fitness, kind="stable")
        elite_idx = order[: config.elitism]

        total = fitness.sum()
        probs = fitness / total if total > 0 else np.full(len(agents), 1.0 / len(agents))
        parent_idx = rng.choice(len(agents), size=n_offspring, p=probs)

        next_agents = [agents[i] for i in elite_idx]
        next_agents.extend(mutate(agents[k], config, rng) for k in parent_idx)

        agents = next_agents
        population = Population(tuple(agents), initial.world, initial.channel, generation=gen)
        tables = _pairwise_tables(population)
        fresh = _symmetric_fitness(tables, config.fitness)
        carried = fitness[elite_idx]
        fitness = fresh
        fitness[: config.elitism] = carried

        mean_f.append(float(fitness.mean()))
        max_f.append(float(fitness.max()))
        mean_sigma.append(_off_diagonal_mean(tables["sigma"]))
        mean_ci.append(_off_diagonal_mean(tables["consistent_info"]))

    trajectory = Trajectory(
        mean_fitness=tuple(mean_f),
        max_fitness=tuple(max_f),
        mean_sigma=tuple(mean_sigma),
        mean_consistent_info=tuple(mean_ci),
        seed=config.seed,
    )
    return trajectory, population
