"""Information measures over joint (sent, decoded) referent couplings.

Beyond the classical Shannon quantities, this module computes the
referential parameter sigma, the fraction of joint-entropy bits carried by
consistently decoded pairs, and the consistent information it induces:

    sigma               = -sum_i J_ii log2 J_ii / H(joint)
    consistent info     = sigma * mutual information

Mutual information alone is blind to whether the decoded referent matches
the sent one (a code that swaps two referents deterministically carries
maximal mutual information and zero consistent information); sigma is the
correction for that.  All quantities are reported in bits and every sum
uses the continuity convention 0*log 0 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import CommSystem, Direction, Distribution, JointMatrix, joint_matrix

# Tolerance for identities between derived quantities (decomposition,
# sigma bounds); generous for double precision at n <= 64.
NUM_ATOL = 1e-9


class Conditioning(Enum):
    GIVEN_OUTPUT = "given-output"
    GIVEN_INPUT = "given-input"


def _clip0(x: float) -> float:
    """Clamp tiny negative round-off to zero; the +0.0 drops negative zero."""
    return max(float(x), 0.0) + 0.0


def _plogp_sum(values: np.ndarray) -> float:
    """-sum p log2 p with zero terms for zero entries."""
    v = np.asarray(values, dtype=float).ravel()
    nz = v[v > 0]
    return _clip0(-(nz * np.log2(nz)).sum())


def entropy(dist: Distribution) -> float:
    """Shannon entropy of a distribution, in bits."""
    return _plogp_sum(dist.probs)


def joint_entropy(joint: JointMatrix) -> float:
    """Entropy of the full (output, input) coupling, in bits."""
    return _plogp_sum(joint.entries)


def conditional_entropy(joint: JointMatrix, conditioning: Conditioning) -> float:
    """Conditional entropy derived from the joint coupling.

    ``GIVEN_OUTPUT`` yields H(input | output), the residual uncertainty
    about what was sent once the decoded referent is known (the physical
    noise term).  ``GIVEN_INPUT`` yields H(output | input).
    """
    if conditioning is Conditioning.GIVEN_OUTPUT:
        marginal = joint.output_marginal
    else:
        marginal = joint.input_marginal
    return _clip0(joint_entropy(joint) - _plogp_sum(marginal))


def mutual_information(joint: JointMatrix) -> float:
    """Mutual information between sent and decoded referent, in bits.

    Direct double sum of J_ij log2(J_ij / (row_i col_j)); zero joint
    entries contribute nothing.
    """
    j = joint.entries
    row = joint.output_marginal
    col = joint.input_marginal
    mask = j > 0
    prod = np.outer(row, col)
    return _clip0(np.sum(j[mask] * np.log2(j[mask] / prod[mask])))


def referential_parameter(joint: JointMatrix) -> float:
    """Fraction of joint-entropy bits contributed by consistent pairs.

    Equals 1 when all joint mass sits on the diagonal and 0 when the
    diagonal is empty.  When the joint entropy vanishes (all mass on a
    single cell) the limit value is used: 1 for a diagonal cell, else 0.
    """
    h_joint = joint_entropy(joint)
    if h_joint == 0.0:
        i, j = np.unravel_index(int(np.argmax(joint.entries)), joint.entries.shape)
        return 1.0 if i == j else 0.0
    diagonal_term = _plogp_sum(np.diag(joint.entries))
    return _clip0(min(diagonal_term / h_joint, 1.0))


def consistent_information(joint: JointMatrix) -> float:
    """Mutual information weighted by the referential parameter, in bits."""
    return referential_parameter(joint) * mutual_information(joint)


def payoff_fraction(joint: JointMatrix) -> float:
    """Probability that the decoded referent equals the sent one (trace of J)."""
    return float(np.trace(joint.entries))


def dissipation(joint: JointMatrix) -> tuple[float, float]:
    """Split of the dissipated information into physical and referential noise.

    Physical noise is H(input | output); referential noise is
    (1 - sigma) * I, mutual information that survives the channel but pairs
    the wrong referents.  Together with the consistent information the two
    terms add up to the input entropy.
    """
    physical = conditional_entropy(joint, Conditioning.GIVEN_OUTPUT)
    referential = (1.0 - referential_parameter(joint)) * mutual_information(joint)
    return physical, referential


@dataclass(frozen=True)
class InfoReport:
    """All directed measures of one communicative exchange, in bits.

    Satisfies, within ``NUM_ATOL``:
    ``mutual_info == h_input + h_output - h_joint``,
    ``consistent_info == sigma * mutual_info`` and
    ``h_input == consistent_info + dissipation_physical + dissipation_referential``.
    """

    h_input: float
    h_output: float
    h_joint: float
    h_cond_input_given_output: float
    mutual_info: float
    sigma: float
    consistent_info: float
    payoff_fraction: float
    dissipation_physical: float
    dissipation_referential: float


@dataclass(frozen=True)
class SymmetricReport:
    """Directed reports for both directions plus their arithmetic means."""

    forward: InfoReport
    backward: InfoReport
    avg_mutual_info: float
    avg_consistent_info: float
    avg_payoff: float


def report_from_joint(joint: JointMatrix) -> InfoReport:
    """Assemble the full directed report from a joint coupling."""
    sigma = referential_parameter(joint)
    info = mutual_information(joint)
    physical, referential = dissipation(joint)
    return InfoReport(
        h_input=_plogp_sum(joint.input_marginal),
        h_output=_plogp_sum(joint.output_marginal),
        h_joint=joint_entropy(joint),
        h_cond_input_given_output=physical,
        mutual_info=info,
        sigma=sigma,
        consistent_info=sigma * info,
        payoff_fraction=payoff_fraction(joint),
        dissipation_physical=physical,
        dissipation_referential=referential,
    )


def directed_report(system: CommSystem, direction: Direction) -> InfoReport:
    """Directed report for one direction of a communicative system."""
    return report_from_joint(joint_matrix(system, direction))


def symmetric_report(system: CommSystem) -> SymmetricReport:
    """Evaluate both directions of the exchange and average them.

    The channel is the same in both directions; only the roles of coder
    and decoder swap between the two agents.  The directed mutual
    informations need not agree, hence the explicit averages.
    """
    fwd = directed_report(system, Direction.SENDER_TO_RECEIVER)
    bwd = directed_report(system, Direction.RECEIVER_TO_SENDER)
    return SymmetricReport(
        forward=fwd,
        backward=bwd,
        avg_mutual_info=0.5 * (fwd.mutual_info + bwd.mutual_info),
        avg_consistent_info=0.5 * (fwd.consistent_info + bwd.consistent_info),
        avg_payoff=0.5 * (fwd.payoff_fraction + bwd.payoff_fraction),
    )
