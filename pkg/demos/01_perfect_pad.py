"""The full Pauli pad encrypts perfectly; three operators cannot.

Applying one of the 4^n Pauli operators uniformly at random maps every
input state exactly to the maximally mixed state, so an eavesdropper who
does not know the key sees nothing.  Dropping to three operators on one
qubit leaks a trace distance of exactly 1/3, and no 3-operator scheme
does better.
"""

import numpy as np

from qrand import (
    SampleSpace,
    apply_channel,
    channel_from_space,
    empirical_epsilon,
    maximally_mixed,
    qotp,
    random_density,
    trace_distance,
)

print("=== the perfect pad ===")
for n in (1, 2, 3):
    C = qotp(n)
    worst = max(
        trace_distance(apply_channel(C, random_density(2 ** n, seed=t)),
                       maximally_mixed(2 ** n))
        for t in range(20)
    )
    print(f"n={n}: {C.size:4d} operators, worst output distance {worst:.2e}")

print()
print("=== three operators on one qubit ===")
ixz = channel_from_space(SampleSpace.from_strings(["00", "10", "01"]))
report = empirical_epsilon(ixz, probes=200, seed=0)
print(f"applying one of {{I, X, Z}} uniformly: worst state found has distance "
      f"{report.epsilon_hat:.9f}")
print(f"the witness state (|amplitudes|^2): "
      f"{np.round(np.abs(report.witness.vec) ** 2, 4)}")
print("1/3 is optimal for any 3-operator scheme on a qubit.")
