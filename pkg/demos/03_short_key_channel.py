"""Encrypting n qubits with far fewer than 2n key bits.

Feeding a small-bias space into a Pauli mixture gives a channel whose
distance from perfect encryption is certified analytically: epsilon at
most 2^(n/2) times the space's bias.  The key cost is about
n + 2 log2(1/epsilon) + 2 bits instead of the 2n required for perfection.
"""

import math

from qrand import aghp_channel, certified_epsilon

print("=== key bits for approximate encryption of n = 8 qubits ===")
print(f"{'epsilon':>8} {'key bits':>9} {'operators':>10} {'certified':>10} {'perfect pad':>12}")
for eps in (1.0, 0.5, 0.25, 0.125):
    C = aghp_channel(8, eps)
    cert = certified_epsilon(C)
    print(f"{eps:>8.3f} {C.key_bits:>9} {C.size:>10} {cert:>10.4f} {'16 bits':>12}")

print()
print("closed-form guide: key bits ~ n + 2 log2(1/eps) + 2")
for eps in (1.0, 0.5, 0.25, 0.125):
    print(f"  eps={eps:<6}: {8 + 2 * math.log2(1 / eps) + 2:.0f}")
print()
print("below eps = 2^(-n/2) the construction cannot beat the perfect pad,")
print("so the full 2n-bit pad is returned:")
C = aghp_channel(4, 0.25)  # 0.25 = 2^(-2) = 2^(-n/2)
print(f"  n=4, eps=0.25 -> {C.size} operators, {C.key_bits} key bits")
