"""Small-bias sample spaces: tiny key sets that fool every parity test.

The GF(2^r) power construction produces 2^(2r) strings whose worst
linear-test bias is provably at most (s-1)/2^r.  The bias certificate here
is exhaustive, not sampled, and the Vazirani bounds connect it to
almost-k-wise independence.
"""

from qrand import aghp_space, max_bias, vazirani_report

print("=== exhaustive bias certificates for the power construction ===")
print(f"{'r':>2} {'s':>2} {'strings':>8} {'bits':>5} {'bound':>8} {'measured':>9}")
for r, s in [(2, 2), (3, 2), (3, 3), (4, 3), (5, 3), (4, 5)]:
    space = aghp_space(r, s)
    bound = (s - 1) / 2 ** r
    measured = max_bias(space).max_bias
    print(f"{r:>2} {s:>2} {space.size:>8} {space.n:>5} {bound:>8.4f} {measured:>9.4f}")

print()
print("=== almost k-wise independence (Vazirani) ===")
space = aghp_space(4, 3)
for k in (1, 2, 3):
    rep = vazirani_report(space, k)
    print(f"k={k}: eps_k={rep.epsilon_k:.4f}, "
          f"max point deviation {rep.max_point_deviation:.4f} "
          f"(bound {rep.point_bound:.4f}), "
          f"max marginal L1 {rep.max_marginal_distance:.4f} "
          f"(bound {rep.marginal_bound:.4f}), violations={rep.violations}")
