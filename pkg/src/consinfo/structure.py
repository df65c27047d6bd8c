"""Structural classification of communicative configurations.

Three regimes matter.  When coder, channel and decoder are all permutation
matrices and the coder equals the transpose of channel-times-decoder, the
end-to-end map is the identity and referentiality is fully preserved.
When all three are permutations but that alignment condition fails, mutual
information is still maximal yet the code pairs referents wrongly.  With
genuine channel noise both mutual and consistent information are strictly
dissipated.  Deterministic but non-invertible compositions (which merge
referents) fit none of those regimes and are reported as ``OTHER``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import CommSystem, Direction, StochasticMatrix, _endpoints, joint_matrix
from .measures import Conditioning, conditional_entropy, referential_parameter

# Entry tolerance for permutation detection and the noise threshold in bits.
PERM_ATOL = 1e-9
NOISE_DELTA = 1e-9


class Kind(Enum):
    FULLY_CONSISTENT = "FullyConsistent"
    MAX_INFO_REFERENTIAL_LOSS = "MaxInfoReferentialLoss"
    NOISY = "Noisy"
    OTHER = "Other"


@dataclass(frozen=True)
class Classification:
    """Regime label with the boolean evidence that produced it."""

    kind: Kind
    sigma: float
    is_noiseless: bool
    witnesses: dict[str, bool]


def is_permutation(matrix: StochasticMatrix | np.ndarray, tol: float = PERM_ATOL) -> bool:
    """True when every row and column has one entry near 1 and the rest near 0."""
    m = np.asarray(getattr(matrix, "rows", matrix), dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    near_one = np.abs(m - 1.0) <= tol
    near_zero = np.abs(m) <= tol
    if not np.all(near_one | near_zero):
        return False
    return bool(
        np.all(near_one.sum(axis=0) == 1)
        and np.all(near_one.sum(axis=1) == 1)
    )


def _witnesses(system: CommSystem, direction: Direction, tol: float) -> dict[str, bool]:
    coder, decoder = _endpoints(system, direction)
    channel = system.channel
    condition = bool(
        np.allclose(coder.rows, (channel.rows @ decoder.rows).T, atol=tol, rtol=0.0)
    )
    return {
        "coder_is_permutation": is_permutation(coder, tol),
        "channel_is_permutation": is_permutation(channel, tol),
        "decoder_is_permutation": is_permutation(decoder, tol),
        "condition_P_eq_LQ_transposed": condition,
    }


def check_full_consistency(
    system: CommSystem, direction: Direction = Direction.SENDER_TO_RECEIVER
) -> bool:
    """True when the end-to-end referent map is exactly the identity.

    Equivalent to all three matrices being permutations with the coder
    equal to the transpose of the channel-decoder product.
    """
    w = _witnesses(system, direction, PERM_ATOL)
    return all(w.values())


def classify(
    system: CommSystem, direction: Direction = Direction.SENDER_TO_RECEIVER
) -> Classification:
    """Classify one direction of a system into its structural regime.

    ``NOISY`` requires real stochastic spreading: positive uncertainty
    about the input given the output and a non-deterministic end-to-end
    map.  A deterministic map that merges referents leaves input
    uncertainty behind as well, but the noisy-regime inequalities do not
    apply to it, so it lands in ``OTHER``.
    """
    witnesses = _witnesses(system, direction, PERM_ATOL)
    joint = joint_matrix(system, direction)
    sigma = referential_parameter(joint)
    h_in_given_out = conditional_entropy(joint, Conditioning.GIVEN_OUTPUT)
    h_out_given_in = conditional_entropy(joint, Conditioning.GIVEN_INPUT)
    is_noiseless = h_in_given_out <= NOISE_DELTA

    all_permutations = (
        witnesses["coder_is_permutation"]
        and witnesses["channel_is_permutation"]
        and witnesses["decoder_is_permutation"]
    )
    if all_permutations:
        kind = (
            Kind.FULLY_CONSISTENT
            if witnesses["condition_P_eq_LQ_transposed"]
            else Kind.MAX_INFO_REFERENTIAL_LOSS
        )
    elif h_in_given_out > NOISE_DELTA and h_out_given_in > NOISE_DELTA:
        kind = Kind.NOISY
    else:
        kind = Kind.OTHER
    return Classification(kind=kind, sigma=sigma, is_noiseless=is_noiseless, witnesses=witnesses)
