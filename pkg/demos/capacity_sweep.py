"""Sweep channel capacity across flip probabilities and check the chain.

For the binary symmetric channel the capacity has the closed form
1 - h(p), which makes it a convenient end-to-end check of the iterative
solver.  The second half verifies, on random systems, that averaged
consistent information <= averaged mutual information <= capacity.
"""

import numpy as np

from consinfo import binary_symmetric_channel, channel_capacity, verify_chain
from consinfo.core import CommSystem, Distribution, Label, Role, StochasticMatrix, make_agent


def closed_form(p):
    if p in (0.0, 1.0):
        return 1.0
    return 1.0 + p * np.log2(p) + (1 - p) * np.log2(1 - p)


if __name__ == "__main__":
    print("binary symmetric channel: solver vs closed form")
    print(f"{'p':>6} {'solver':>12} {'closed form':>12} {'error':>10} {'iters':>6}")
    for p in (0.0, 0.02, 0.05, 0.1, 0.15, 0.25, 0.35, 0.5):
        result = channel_capacity(binary_symmetric_channel(p))
        exact = closed_form(p)
        print(
            f"{p:6.2f} {result.capacity:12.6f} {exact:12.6f} "
            f"{abs(result.capacity - exact):10.2e} {result.iterations:6d}"
        )

    print()
    print("ordering check on random systems (n = 3, noisy channel):")
    rng = np.random.default_rng(1)
    for k in range(5):
        rows = rng.dirichlet(np.ones(3), size=3) * 0.8 + 0.2 / 3
        world = rng.random(3) + 0.2
        system = CommSystem(
            Distribution(world / world.sum(), Label.WORLD),
            make_agent(rng.dirichlet(np.ones(3), 3), rng.dirichlet(np.ones(3), 3), "v"),
            make_agent(rng.dirichlet(np.ones(3), 3), rng.dirichlet(np.ones(3), 3), "u"),
            StochasticMatrix(rows, Role.CHANNEL, normalize=True),
        )
        check = verify_chain(system)
        print(
            f"  system {k}: {check.avg_consistent_info:.4f} <= "
            f"{check.avg_mutual_info:.4f} <= {check.capacity:.4f}  "
            f"{'ok' if check.ok else 'VIOLATED'}"
        )
