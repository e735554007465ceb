#!/usr/bin/env python3
"""Visibility, predictability and concurrence of pure two-qubit states, and
the closure identity V^2 + P^2 + C^2 = 1 that ties them together."""
import math

import numpy as np

from complement_opt import TwoQubitPure, triple

SQRT1_2 = 1.0 / math.sqrt(2.0)

SHOWCASE = [
    ("Bell pair (|01> + |10>)/sqrt2", TwoQubitPure(0.0, SQRT1_2, SQRT1_2)),
    ("product |00>", TwoQubitPure(1.0, 0.0, 0.0)),
    ("definite |10>", TwoQubitPure(0.0, 0.0, 1.0)),
    ("coherent (|00> + |10>)/sqrt2", TwoQubitPure(SQRT1_2, 0.0, SQRT1_2)),
    ("lopsided 0.29|01> + 0.95|10>", TwoQubitPure(0.0, 0.29, 0.95, 0.0)),
]


def main():
    print("state                              V        P        C        V2+P2+C2")
    print("-" * 78)
    for label, state in SHOWCASE:
        amps = state.amplitudes()
        state = TwoQubitPure(*(amps / np.linalg.norm(amps)))
        t = triple(state)
        print(f"{label:<34} {t.V:.5f}  {t.P:.5f}  {t.C:.5f}  {1.0 + t.closure_residual:.9f}")

    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(2000):
        amps = rng.normal(size=4) + 1j * rng.normal(size=4)
        t = triple(TwoQubitPure(*(amps / np.linalg.norm(amps))))
        worst = max(worst, abs(t.closure_residual))
    print("-" * 78)
    print(f"closure residual over 2000 random pure states: max {worst:.3e}")


if __name__ == "__main__":
    main()
