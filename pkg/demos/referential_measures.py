"""Walkthrough: how consistent information separates three binary codes.

Three systems share the same world (two equiprobable referents) and differ
only in decoders and channel noise.  Classical mutual information rates
two of them identically; the referential parameter tells them apart.
"""

import numpy as np

from consinfo import (
    Direction,
    directed_report,
    fully_consistent_system,
    joint_matrix,
    noisy_channel_system,
    referential_loss_system,
    classify,
)


def show(name, system):
    print("=" * 64)
    print(name)
    print("=" * 64)
    j = joint_matrix(system, Direction.SENDER_TO_RECEIVER)
    print("joint matrix over (decoded, sent) referent pairs:")
    print(np.array_str(j.entries, precision=3))
    r = directed_report(system, Direction.SENDER_TO_RECEIVER)
    print(f"  input entropy          {r.h_input:6.3f} bits")
    print(f"  mutual information     {r.mutual_info:6.3f} bits")
    print(f"  referential parameter  {r.sigma:6.3f}")
    print(f"  consistent information {r.consistent_info:6.3f} bits")
    print(f"  payoff fraction        {r.payoff_fraction:6.3f}")
    print(
        f"  dissipation            {r.dissipation_physical:.3f} bits physical"
        f" + {r.dissipation_referential:.3f} bits referential"
    )
    print(f"  regime                 {classify(system).kind.value}")
    print()


if __name__ == "__main__":
    show(
        "1. crossed decoders: perfectly correlated, perfectly wrong",
        referential_loss_system(),
    )
    print(
        "Every observation of the output pins down the input exactly, so\n"
        "mutual information is maximal.  But referent 1 always arrives as\n"
        "referent 2 and vice versa: the joint matrix has an empty diagonal,\n"
        "sigma is 0, and not one bit survives consistently.\n"
    )

    show("2. aligned decoders: the lossless code", fully_consistent_system())
    print(
        "Same mutual information as above, but now all the joint mass sits\n"
        "on the diagonal.  Every bit is a consistent bit.\n"
    )

    show("3. aligned decoders over a noisy channel", noisy_channel_system(0.1))
    print(
        "The 10% flip channel costs twice: 0.469 bits vanish as ordinary\n"
        "channel noise, and of the 0.531 bits that survive, a 0.294 share\n"
        "is mispaired, leaving 0.375 consistent bits out of the 1 bit the\n"
        "world supplies."
    )
