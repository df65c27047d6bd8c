"""Validated probability types and end-to-end channel composition.

A communicative exchange is modelled by three row-stochastic matrices: a
coder mapping referents to signals, a signal-to-signal channel, and a
decoder mapping signals back to referents.  Composing them gives the
conditional probability of decoding referent ``m_i`` when referent ``m_l``
was sent, and weighting by the world distribution gives the joint matrix
over (sent, decoded) referent pairs.

Index convention, fixed once for the whole package: a ``JointMatrix`` J
stores ``J[i, j] = P(output referent i, input referent j)``.  Row sums
(axis 1) therefore give the decoded-output distribution and column sums
(axis 0) give the world distribution.  All marginal helpers follow this
convention.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from enum import Enum

import numpy as np

# Absolute tolerance for all stochasticity checks (sums to 1, row sums to 1).
STOCH_ATOL = 1e-9


class ValidationError(ValueError):
    """Base class for invariant violations in validated types."""


class NegativeEntry(ValidationError):
    pass


class SumNotOne(ValidationError):
    pass


class ZeroWorldEvent(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NonStochastic(ValidationError):
    pass


class Label(Enum):
    WORLD = "world"
    SIGNAL = "signal"


class Role(Enum):
    CODER = "coder"
    DECODER = "decoder"
    CHANNEL = "channel"


class Direction(Enum):
    SENDER_TO_RECEIVER = "forward"
    RECEIVER_TO_SENDER = "backward"


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Distribution:
    """Probability vector over a finite set of referents or signals.

    ``label=Label.WORLD`` additionally requires strictly positive entries;
    every world event must be able to occur.  Derived distributions (for
    example the decoded output, which may have zero entries) carry
    ``label=None``.
    """

    probs: np.ndarray
    label: Label | None = None
    normalize: InitVar[bool] = False

    def __post_init__(self, normalize: bool) -> None:
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise DimensionMismatch("distribution must be a non-empty 1-d vector")
        if np.any(p < 0):
            raise NegativeEntry(f"negative probability entry: min = {p.min()}")
        # a hard zero in a world vector is wrong whether or not it sums to 1
        if self.label is Label.WORLD and np.any(p == 0):
            raise ZeroWorldEvent("world distribution must give every event positive mass")
        total = p.sum()
        if normalize:
            if total <= 0:
                raise SumNotOne("cannot normalize a vector with non-positive sum")
            p = p / total
        elif abs(total - 1.0) > STOCH_ATOL:
            raise SumNotOne(f"probabilities sum to {total!r}, expected 1")
        object.__setattr__(self, "probs", _frozen_array(p))

    @property
    def n(self) -> int:
        return self.probs.size


def validate_distribution(raw, label: Label | None, normalize: bool = False) -> Distribution:
    """Validate a raw vector as a :class:`Distribution`.

    With ``normalize=True`` the vector is rescaled by its sum before the
    checks; otherwise the sum must already be 1 within ``STOCH_ATOL``.
    """
    return Distribution(raw, label, normalize=normalize)


@dataclass(frozen=True)
class StochasticMatrix:
    """Square row-stochastic matrix of conditional probabilities.

    Rows index the conditioning symbol, so ``rows[i, j]`` is the
    probability of producing symbol ``j`` given symbol ``i``.  ``role``
    is metadata (coder, decoder or channel); derived matrices such as the
    end-to-end composition carry ``role=None``.
    """

    rows: np.ndarray
    role: Role | None = None
    normalize: InitVar[bool] = False

    def __post_init__(self, normalize: bool) -> None:
        m = np.asarray(self.rows, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
        if np.any(m < 0):
            raise NonStochastic("matrix entries must be non-negative")
        sums = m.sum(axis=1)
        if normalize:
            if np.any(sums <= 0):
                raise NonStochastic("cannot normalize a matrix with a non-positive row sum")
            m = m / sums[:, None]
        elif np.any(np.abs(sums - 1.0) > STOCH_ATOL):
            bad = int(np.argmax(np.abs(sums - 1.0)))
            raise NonStochastic(f"row {bad} sums to {sums[bad]!r}, expected 1")
        # entries <= 1 follows from non-negativity and unit row sums
        object.__setattr__(self, "rows", _frozen_array(m))

    @property
    def n(self) -> int:
        return self.rows.shape[0]


@dataclass(frozen=True)
class Agent:
    """A coder/decoder matrix pair.

    Coder and decoder are independent objects; nothing ties an agent's
    decoding behaviour to its own coding behaviour.
    """

    coder: StochasticMatrix
    decoder: StochasticMatrix
    id: str = ""

    def __post_init__(self) -> None:
        if self.coder.n != self.decoder.n:
            raise DimensionMismatch(
                f"coder is {self.coder.n}x{self.coder.n} but decoder is "
                f"{self.decoder.n}x{self.decoder.n}"
            )
        if self.coder.role not in (None, Role.CODER):
            raise ValidationError("agent coder matrix carries a non-coder role")
        if self.decoder.role not in (None, Role.DECODER):
            raise ValidationError("agent decoder matrix carries a non-decoder role")

    @property
    def n(self) -> int:
        return self.coder.n


def make_agent(coder_rows, decoder_rows, id: str = "") -> Agent:
    """Build an agent from raw row-major matrices."""
    return Agent(
        StochasticMatrix(coder_rows, Role.CODER),
        StochasticMatrix(decoder_rows, Role.DECODER),
        id,
    )


@dataclass(frozen=True)
class CommSystem:
    """World distribution, two agents and the channel between them.

    The world, both agents and the channel must share one dimension n;
    referent and signal alphabets have equal size.
    """

    world: Distribution
    sender: Agent
    receiver: Agent
    channel: StochasticMatrix

    def __post_init__(self) -> None:
        if self.world.label is not Label.WORLD:
            raise ValidationError("system world must be a WORLD-labelled distribution")
        if self.channel.role not in (None, Role.CHANNEL):
            raise ValidationError("system channel matrix carries a non-channel role")
        dims = {self.world.n, self.sender.n, self.receiver.n, self.channel.n}
        if len(dims) != 1:
            raise DimensionMismatch(f"inconsistent dimensions in system: {sorted(dims)}")

    @property
    def n(self) -> int:
        return self.world.n


@dataclass(frozen=True)
class JointMatrix:
    """Joint probabilities over (output referent, input referent) pairs.

    ``entries[i, j] = P(decoded referent i, sent referent j)``; see the
    module docstring for the orientation convention.  Diagonal entries are
    the consistently decoded pairs.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        j = np.asarray(self.entries, dtype=float)
        if j.ndim != 2 or j.shape[0] != j.shape[1] or j.shape[0] == 0:
            raise DimensionMismatch(f"expected a square matrix, got shape {j.shape}")
        if np.any(j < 0):
            raise NegativeEntry("joint probabilities must be non-negative")
        total = j.sum()
        if abs(total - 1.0) > STOCH_ATOL:
            raise SumNotOne(f"joint probabilities sum to {total!r}, expected 1")
        object.__setattr__(self, "entries", _frozen_array(j))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def input_marginal(self) -> np.ndarray:
        """Distribution of the sent referent (column sums); equals the world."""
        return self.entries.sum(axis=0)

    @property
    def output_marginal(self) -> np.ndarray:
        """Distribution of the decoded referent (row sums)."""
        return self.entries.sum(axis=1)


def compose_end_to_end(
    coder: StochasticMatrix, channel: StochasticMatrix, decoder: StochasticMatrix
) -> StochasticMatrix:
    """Compose coder, channel and decoder into the referent-to-referent map.

    The result ``E`` satisfies ``E[l, i] = P(decoded referent i | sent
    referent l)`` and is again row-stochastic.
    """
    if not (coder.n == channel.n == decoder.n):
        raise DimensionMismatch(
            f"dimensions disagree: coder {coder.n}, channel {channel.n}, decoder {decoder.n}"
        )
    product = coder.rows @ channel.rows @ decoder.rows
    return StochasticMatrix(product, role=None)


def signal_distribution(world: Distribution, coder: StochasticMatrix) -> Distribution:
    """Distribution of the emitted signal: the world vector pushed through the coder."""
    if world.n != coder.n:
        raise DimensionMismatch(f"world has n={world.n} but coder has n={coder.n}")
    return Distribution(world.probs @ coder.rows, Label.SIGNAL)


def received_signal_distribution(
    world: Distribution, coder: StochasticMatrix, channel: StochasticMatrix
) -> Distribution:
    """Distribution of the signal arriving after the channel."""
    if not (world.n == coder.n == channel.n):
        raise DimensionMismatch(
            f"dimensions disagree: world {world.n}, coder {coder.n}, channel {channel.n}"
        )
    return Distribution(world.probs @ coder.rows @ channel.rows, Label.SIGNAL)


def _endpoints(system: CommSystem, direction: Direction) -> tuple[StochasticMatrix, StochasticMatrix]:
    if direction is Direction.SENDER_TO_RECEIVER:
        return system.sender.coder, system.receiver.decoder
    return system.receiver.coder, system.sender.decoder


def system_end_to_end(system: CommSystem, direction: Direction) -> StochasticMatrix:
    """End-to-end referent map for one direction of the exchange."""
    coder, decoder = _endpoints(system, direction)
    return compose_end_to_end(coder, system.channel, decoder)


def decoded_distribution(system: CommSystem, direction: Direction) -> Distribution:
    """Distribution of the decoded referent.

    Unlike the world distribution, the decoded output may give zero mass
    to some referents, so the result is unlabelled.
    """
    e2e = system_end_to_end(system, direction)
    return Distribution(system.world.probs @ e2e.rows, label=None)


def joint_matrix(system: CommSystem, direction: Direction) -> JointMatrix:
    """Joint matrix of (decoded, sent) referent pairs for one direction.

    ``J[i, j] = world[j] * P(decoded i | sent j)``.
    """
    e2e = system_end_to_end(system, direction)
    return JointMatrix((system.world.probs[:, None] * e2e.rows).T)


def has_world_coverage(matrix: StochasticMatrix) -> bool:
    """True when every column of the matrix holds at least one positive entry.

    Applied to a decoder this means every referent is reachable as an
    output; a failing column names a referent the agent can never decode.
    This check is optional because the underlying modelling condition is
    ambiguous; see ``check_world_coverage``.
    """
    return bool(np.all(matrix.rows.max(axis=0) > 0))


def check_world_coverage(agent: Agent) -> None:
    """Optional reachability validation for an agent's decoder.

    Raises :class:`ValidationError` when some referent has zero
    probability under every signal, i.e. the decoder can never produce it.
    """
    if not has_world_coverage(agent.decoder):
        dead = np.flatnonzero(agent.decoder.rows.max(axis=0) == 0)
        raise ValidationError(
            f"agent {agent.id or '<unnamed>'}: decoder never outputs referent(s) {dead.tolist()}"
        )
