import numpy as np
import pytest

from consinfo.core import Distribution, Label, Role, StochasticMatrix, make_agent
from consinfo.evolve import (
    EvolutionConfig,
    FitnessKind,
    Population,
    PopulationTooSmall,
    agent_fitness,
    evolve,
    mutate,
    random_population,
    _pairwise_tables,
    _symmetric_fitness,
)

I2 = np.eye(2)
SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def uniform_world(n=2):
    return Distribution(np.full(n, 1.0 / n), Label.WORLD)


def clean_channel(n=2):
    return StochasticMatrix(np.eye(n), Role.CHANNEL)


def population_of(coder, decoder, size=4, channel=None):
    agents = tuple(make_agent(coder, decoder, f"a{i}") for i in range(size))
    return Population(agents, uniform_world(), channel or clean_channel())


def config(**kwargs):
    defaults = dict(
        population_size=4,
        generations=5,
        mutation_rate=0.5,
        mutation_scale=0.2,
        fitness=FitnessKind.PAYOFF,
        elitism=1,
        seed=123,
    )
    defaults.update(kwargs)
    return EvolutionConfig(**defaults)


class TestAgentFitness:
    def test_identical_consistent_agents(self):
        pop = population_of(I2, I2)
        assert agent_fitness(pop.agents[0], pop, FitnessKind.PAYOFF) == 1.0

    def test_identical_swapped_agents(self):
        pop = population_of(I2, SWAP)
        assert agent_fitness(pop.agents[0], pop, FitnessKind.PAYOFF) == 0.0

    def test_consistent_info_over_noisy_channel(self):
        bsc = StochasticMatrix([[0.9, 0.1], [0.1, 0.9]], Role.CHANNEL)
        pop = population_of(I2, I2, size=2, channel=bsc)
        value = agent_fitness(pop.agents[0], pop, FitnessKind.CONSISTENT_INFO)
        assert value == pytest.approx(0.375, abs=1e-3)

    def test_population_too_small(self):
        agents = (make_agent(I2, I2, "a"),)
        with pytest.raises(PopulationTooSmall):
            Population(agents, uniform_world(), clean_channel())

    def test_foreign_agent_rejected(self):
        pop = population_of(I2, I2)
        stranger = make_agent(I2, I2, "stranger")
        with pytest.raises(ValueError):
            agent_fitness(stranger, pop, FitnessKind.PAYOFF)

    def test_vectorized_matches_reference(self):
        rng = np.random.default_rng(9)
        pop = random_population(3, 6, rng)
        for kind in FitnessKind:
            vec = _symmetric_fitness(_pairwise_tables(pop), kind)
            ref = [agent_fitness(a, pop, kind) for a in pop.agents]
            np.testing.assert_allclose(vec, ref, atol=1e-12)


class TestMutate:
    def test_zero_rate_is_identity(self):
        agent = make_agent(I2, I2, "a")
        rng = np.random.default_rng(0)
        assert mutate(agent, config(mutation_rate=0.0), rng) is agent

    def test_zero_scale_is_identity(self):
        agent = make_agent(I2, I2, "a")
        rng = np.random.default_rng(0)
        assert mutate(agent, config(mutation_scale=0.0), rng) is agent

    def test_deterministic_given_seed(self):
        agent = make_agent(I2, SWAP, "a")
        cfg = config(mutation_rate=1.0)
        out1 = mutate(agent, cfg, np.random.default_rng(99))
        out2 = mutate(agent, cfg, np.random.default_rng(99))
        np.testing.assert_array_equal(out1.coder.rows, out2.coder.rows)
        np.testing.assert_array_equal(out1.decoder.rows, out2.decoder.rows)

    def test_output_stays_stochastic(self):
        rng = np.random.default_rng(1)
        pop = random_population(5, 3, rng)
        cfg = config(population_size=3, mutation_rate=1.0, mutation_scale=0.8)
        for agent in pop.agents:
            mutant = mutate(agent, cfg, rng)
            for m in (mutant.coder.rows, mutant.decoder.rows):
                np.testing.assert_allclose(m.sum(axis=1), np.ones(5), atol=1e-9)
                assert np.all(m >= 0)


class TestEvolve:
    def test_fixed_point_without_mutation(self):
        pop = population_of(I2, I2, size=4)
        traj, final = evolve(pop, config(mutation_rate=0.0, generations=10))
        assert len(traj) == 11
        assert all(v == traj.mean_fitness[0] for v in traj.mean_fitness)
        assert all(v == 1.0 for v in traj.max_fitness)

    def test_zero_generations(self):
        pop = population_of(I2, I2, size=4)
        traj, final = evolve(pop, config(generations=0))
        assert len(traj) == 1
        assert final.generation == 0

    def test_max_fitness_monotone_with_elitism(self):
        rng = np.random.default_rng(55)
        pop = random_population(2, 20, rng)
        cfg = config(
            population_size=20, generations=200, mutation_rate=0.2,
            mutation_scale=0.3, elitism=2, seed=55,
        )
        traj, final = evolve(pop, cfg)
        diffs = np.diff(np.array(traj.max_fitness))
        assert np.all(diffs >= 0)
        assert traj.max_fitness[-1] >= traj.max_fitness[0]

    def test_deterministic_given_seed(self):
        cfg = config(population_size=6, generations=30, seed=7)
        t1, _ = evolve(random_population(2, 6, np.random.default_rng(7)), cfg)
        t2, _ = evolve(random_population(2, 6, np.random.default_rng(7)), cfg)
        assert t1 == t2
        assert t1.to_csv() == t2.to_csv()

    def test_population_stays_valid(self):
        rng = np.random.default_rng(12)
        pop = random_population(3, 8, rng)
        cfg = config(population_size=8, generations=20, mutation_rate=0.9, mutation_scale=0.5)
        _, final = evolve(pop, cfg)
        for agent in final.agents:
            for m in (agent.coder.rows, agent.decoder.rows):
                np.testing.assert_allclose(m.sum(axis=1), np.ones(3), atol=1e-9)

    def test_fitness_ranges(self):
        rng = np.random.default_rng(21)
        n = 4
        pop = random_population(n, 6, rng)
        cfg_payoff = config(population_size=6, generations=10)
        traj_p, _ = evolve(pop, cfg_payoff)
        assert all(0.0 <= v <= 1.0 for v in traj_p.mean_fitness)
        cfg_ci = config(population_size=6, generations=10, fitness=FitnessKind.CONSISTENT_INFO)
        traj_c, _ = evolve(pop, cfg_ci)
        assert all(0.0 <= v <= np.log2(n) for v in traj_c.mean_fitness)

    def test_size_mismatch_rejected(self):
        pop = population_of(I2, I2, size=4)
        with pytest.raises(ValueError):
            evolve(pop, config(population_size=5))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            config(mutation_rate=1.5)
        with pytest.raises(ValueError):
            config(elitism=4)  # population_size defaults to 4
        with pytest.raises(PopulationTooSmall):
            config(population_size=1)


class TestTrajectoryExport:
    def test_csv_shape_and_seed(self, tmp_path):
        pop = population_of(I2, I2, size=4)
        traj, _ = evolve(pop, config(generations=3, seed=17))
        path = tmp_path / "run.csv"
        traj.write_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "# seed: 17"
        assert lines[1] == "generation,mean_fitness,max_fitness,mean_sigma,mean_consistent_info"
        assert len(lines) == 2 + 4
        assert lines[2].startswith("0,")

    def test_roundtrip_values_full_precision(self, tmp_path):
        rng = np.random.default_rng(3)
        pop = random_population(2, 5, rng)
        traj, _ = evolve(pop, config(population_size=5, generations=4))
        path = tmp_path / "run.csv"
        traj.write_csv(path)
        rows = [
            line.split(",")
            for line in path.read_text().splitlines()[2:]
        ]
        for g, row in enumerate(rows):
            assert int(row[0]) == g
            assert float(row[1]) == traj.mean_fitness[g]
            assert float(row[2]) == traj.max_fitness[g]
