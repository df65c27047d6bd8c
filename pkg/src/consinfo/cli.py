"""Command-line front end.

Usage:
    consinfo analyze SYSTEM.json [--direction forward|backward|both]
                                 [--json] [--check-world-coverage]
    consinfo capacity CHANNEL            (file path or inline JSON matrix)
                                 [--tol T] [--json]
    consinfo case-study [--json]
    consinfo evolve CONFIG.json OUTPUT.csv [--seed S] [--json]

System files are JSON documents:

    {
      "world": [0.5, 0.5],
      "agents": {
        "alice": {"coder": [[1,0],[0,1]], "decoder": [[1,0],[0,1]]},
        "bob":   {"coder": [[1,0],[0,1]], "decoder": [[1,0],[0,1]]}
      },
      "channel": [[0.9,0.1],[0.1,0.9]],
      "sender": "alice",
      "receiver": "bob"
    }

Evolution config files carry the run parameters plus the population
setting:

    {
      "n": 2, "population_size": 20, "generations": 200,
      "mutation_rate": 0.2, "mutation_scale": 0.3,
      "fitness": "payoff",            // or "consistent-info"
      "elitism": 2, "seed": 42,
      "init": "random",               // or "clonal" (identical copies)
      "world": [0.5, 0.5],            // optional, default uniform
      "channel": [[1,0],[0,1]]        // optional, default noiseless
    }

Exit codes: 0 success, 1 case-study mismatch, 2 parse error,
3 validation error, 4 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import casestudy
from .capacity import channel_capacity
from .core import (
    Agent,
    CommSystem,
    Direction,
    Distribution,
    Label,
    Role,
    StochasticMatrix,
    ValidationError,
    check_world_coverage,
)
from .evolve import (
    EvolutionConfig,
    FitnessKind,
    clonal_population,
    evolve,
    random_population,
)
from .measures import InfoReport, symmetric_report
from .structure import classify

EXIT_OK = 0
EXIT_CASE_MISMATCH = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NONCONVERGENCE = 4


class ParseError(ValueError):
    pass


class NonConvergence(RuntimeError):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"{path}: file not found") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _require(doc: dict, key: str, path: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"{path}: missing required key '{key}'")
    return doc[key]


def load_system_file(path: str) -> CommSystem:
    """Parse and validate a system-definition file."""
    doc = _load_json(path)
    world_raw = _require(doc, "world", path)
    agents_raw = _require(doc, "agents", path)
    channel_raw = _require(doc, "channel", path)
    sender_name = _require(doc, "sender", path)
    receiver_name = _require(doc, "receiver", path)
    if not isinstance(agents_raw, dict):
        raise ParseError(f"{path}: 'agents' must be a name -> matrices map")
    for name in (sender_name, receiver_name):
        if name not in agents_raw:
            raise ParseError(f"{path}: unknown agent '{name}'")

    def build_agent(name: str) -> Agent:
        spec = agents_raw[name]
        coder = _require(spec, "coder", f"{path}: agent '{name}'")
        decoder = _require(spec, "decoder", f"{path}: agent '{name}'")
        return Agent(
            StochasticMatrix(coder, Role.CODER),
            StochasticMatrix(decoder, Role.DECODER),
            name,
        )

    try:
        world = Distribution(world_raw, Label.WORLD)
        sender = build_agent(sender_name)
        receiver = build_agent(receiver_name)
        channel = StochasticMatrix(channel_raw, Role.CHANNEL)
        return CommSystem(world, sender, receiver, channel)
    except ValidationError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed numeric data ({exc})") from None


def _report_lines(report: InfoReport, heading: str) -> list[str]:
    return [
        heading,
        f"  H(input) = {report.h_input:.3f} bits",
        f"  H(output) = {report.h_output:.3f} bits",
        f"  H(joint) = {report.h_joint:.3f} bits",
        f"  H(input|output) = {report.h_cond_input_given_output:.3f} bits",
        f"  I = {report.mutual_info:.3f} bits",
        f"  sigma = {report.sigma:.3f}",
        f"  consistent = {report.consistent_info:.3f} bits",
        f"  payoff = {report.payoff_fraction:.3f}",
        f"  dissipation physical = {report.dissipation_physical:.3f} bits",
        f"  dissipation referential = {report.dissipation_referential:.3f} bits",
    ]


def _classification_dict(system: CommSystem, direction: Direction) -> dict:
    cls = classify(system, direction)
    return {
        "kind": cls.kind.value,
        "sigma": cls.sigma,
        "is_noiseless": cls.is_noiseless,
        "witnesses": cls.witnesses,
    }


def cmd_analyze(args) -> int:
    system = load_system_file(args.path)
    if args.check_world_coverage:
        check_world_coverage(system.sender)
        check_world_coverage(system.receiver)

    directions = {
        "forward": (Direction.SENDER_TO_RECEIVER,),
        "backward": (Direction.RECEIVER_TO_SENDER,),
        "both": (Direction.SENDER_TO_RECEIVER, Direction.RECEIVER_TO_SENDER),
    }[args.direction]
    sym = symmetric_report(system)
    by_direction = {
        Direction.SENDER_TO_RECEIVER: sym.forward,
        Direction.RECEIVER_TO_SENDER: sym.backward,
    }

    if args.json:
        doc = {
            "path": args.path,
            "n": system.n,
            "directions": {
                d.value: {
                    "report": dataclasses.asdict(by_direction[d]),
                    "classification": _classification_dict(system, d),
                }
                for d in directions
            },
        }
        if args.direction == "both":
            doc["symmetric"] = {
                "avg_mutual_info": sym.avg_mutual_info,
                "avg_consistent_info": sym.avg_consistent_info,
                "avg_payoff": sym.avg_payoff,
            }
        print(json.dumps(doc, indent=2))
        return EXIT_OK

    lines = [f"system: {args.path} (n = {system.n})"]
    for d in directions:
        lines += _report_lines(by_direction[d], f"direction: {d.value}")
        cls = classify(system, d)
        lines.append(f"  classification = {cls.kind.value}")
    if args.direction == "both":
        lines.append("symmetric:")
        lines.append(f"  avg I = {sym.avg_mutual_info:.3f} bits")
        lines.append(f"  avg consistent = {sym.avg_consistent_info:.3f} bits")
        lines.append(f"  avg payoff = {sym.avg_payoff:.3f}")
    print("\n".join(lines))
    return EXIT_OK


def _load_channel(spec: str) -> StochasticMatrix:
    if spec.lstrip().startswith("["):
        try:
            rows = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ParseError(f"inline matrix: {exc.msg}") from None
    else:
        doc = _load_json(spec)
        rows = doc.get("channel", doc) if isinstance(doc, dict) else doc
    try:
        return StochasticMatrix(rows, Role.CHANNEL)
    except ValidationError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed channel matrix ({exc})") from None


def cmd_capacity(args) -> int:
    channel = _load_channel(args.channel)
    result = channel_capacity(channel, tol=args.tol, max_iter=args.max_iter)
    if not result.converged:
        raise NonConvergence(
            f"capacity iteration did not converge in {result.iterations} iterations "
            f"(gap {result.gap_bound!r} bits)"
        )
    if args.json:
        print(
            json.dumps(
                {
                    "capacity": result.capacity,
                    "optimal_input": result.optimal_input.probs.tolist(),
                    "iterations": result.iterations,
                    "gap_bound": result.gap_bound,
                },
                indent=2,
            )
        )
    else:
        weights = ", ".join(f"{p:.6f}" for p in result.optimal_input.probs)
        print(f"capacity = {result.capacity:.3f} bits")
        print(f"optimal input = ({weights})")
        print(f"iterations = {result.iterations}")
    return EXIT_OK


def cmd_case_study(args) -> int:
    rows = casestudy.run_case_study()
    classifications = casestudy.case_classifications()
    if args.json:
        print(
            json.dumps(
                {
                    "rows": [dataclasses.asdict(r) for r in rows],
                    "classifications": classifications,
                    "tolerance": casestudy.CASE_TOL,
                },
                indent=2,
            )
        )
    else:
        current = None
        for row in rows:
            if row.case != current:
                current = row.case
                print(f"{current}  [{classifications[current]}]")
            status = "PASS" if row.ok else "FAIL"
            print(
                f"  {row.quantity:<24} computed {row.computed:8.3f}  "
                f"expected {row.expected:6.3f}  {status}"
            )
    return EXIT_OK if all(r.ok for r in rows) else EXIT_CASE_MISMATCH


def load_evolution_setup(path: str, seed_override: int | None = None):
    """Parse an evolution config file into (Population, EvolutionConfig)."""
    doc = _load_json(path)
    n = _require(doc, "n", path)
    if not isinstance(n, int) or n < 1:
        raise ParseError(f"{path}: 'n' must be a positive integer")
    try:
        fitness = FitnessKind(doc.get("fitness", "payoff"))
    except ValueError:
        raise ParseError(
            f"{path}: unknown fitness '{doc.get('fitness')}', "
            f"expected one of {[f.value for f in FitnessKind]}"
        ) from None
    seed = seed_override if seed_override is not None else doc.get("seed", 0)
    try:
        config = EvolutionConfig(
            population_size=_require(doc, "population_size", path),
            generations=_require(doc, "generations", path),
            mutation_rate=_require(doc, "mutation_rate", path),
            mutation_scale=_require(doc, "mutation_scale", path),
            fitness=fitness,
            elitism=doc.get("elitism", 1),
            seed=seed,
        )
    except TypeError as exc:
        raise ParseError(f"{path}: malformed config value ({exc})") from None
    try:
        world = Distribution(doc["world"], Label.WORLD) if "world" in doc else None
        channel = (
            StochasticMatrix(doc["channel"], Role.CHANNEL) if "channel" in doc else None
        )
    except ValidationError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed numeric data ({exc})") from None
    init = doc.get("init", "random")
    if init not in ("random", "clonal"):
        raise ParseError(f"{path}: unknown init '{init}', expected 'random' or 'clonal'")
    build = random_population if init == "random" else clonal_population
    rng = np.random.default_rng(config.seed)
    population = build(n, config.population_size, rng, world=world, channel=channel)
    return population, config


def cmd_evolve(args) -> int:
    population, config = load_evolution_setup(args.config, args.seed)
    trajectory, final = evolve(population, config)
    trajectory.write_csv(args.output)
    summary = {
        "generations": config.generations,
        "seed": config.seed,
        "final_mean_fitness": trajectory.mean_fitness[-1],
        "final_max_fitness": trajectory.max_fitness[-1],
        "final_mean_sigma": trajectory.mean_sigma[-1],
        "output": args.output,
    }
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        print(f"wrote {len(trajectory)} generations to {args.output}")
        print(f"final mean fitness = {trajectory.mean_fitness[-1]:.3f}")
        print(f"final max fitness = {trajectory.max_fitness[-1]:.3f}")
        print(f"final mean sigma = {trajectory.mean_sigma[-1]:.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="consinfo",
        description="Consistent-information analysis of coder/channel/decoder systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for a system file")
    p.add_argument("path", help="system-definition JSON file")
    p.add_argument(
        "--direction",
        choices=["forward", "backward", "both"],
        default="both",
        help="which direction(s) of the exchange to report",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument(
        "--check-world-coverage",
        action="store_true",
        help="additionally require every referent to be reachable as a decoder output",
    )
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("capacity", help="channel capacity in bits")
    p.add_argument("channel", help="system/channel JSON file or inline JSON matrix")
    p.add_argument("--tol", type=float, default=1e-9, help="certificate tolerance in bits")
    p.add_argument("--max-iter", type=int, default=10000, help="iteration budget")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("case-study", help="recompute the built-in binary-channel cases")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_case_study)

    p = sub.add_parser("evolve", help="run the evolutionary simulator")
    p.add_argument("config", help="evolution config JSON file")
    p.add_argument("output", help="trajectory CSV output path")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--json", action="store_true", help="machine-readable summary")
    p.set_defaults(func=cmd_evolve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error[parse]: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"error[validation]: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, TypeError) as exc:
        print(f"error[validation]: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NonConvergence as exc:
        print(f"error[non-convergence]: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


def run() -> None:
    sys.exit(main())
