"""Attack and diagnostics: identities against dense state evolution.

The central oracle: for a channel built from a space, the combinatorial
condition values must equal the dense trace distance at the matching
state (product eigenstate, stabilizer state, subspace state), because the
channel output is diagonal in that state's orthogonal basis.
"""

from itertools import product as iproduct

import numpy as np
import pytest

from qrand.bitlin import BitMatrix, BitVector, gf2_rank
from qrand.channel import certified_epsilon, channel_from_space, qotp, aghp_channel
from qrand.errors import (
    CapacityError,
    InvalidTestError,
    NotApplicableError,
)
from qrand.linalg import DensityMatrix, StateVector, make_rng
from qrand.pauli import stab_state, stab_validate
from qrand.smallbias import SampleSpace, max_bias
from qrand.verify import (
    cat_condition,
    cat_probe_state,
    diagnose,
    empirical_epsilon,
    product_eigenstate,
    random_stabilizer_group,
    rank_bound,
    sigma_v_condition,
    stabilizer_catalog,
    stabilizer_condition,
    state_distance,
    subspace_condition,
    _E0,
    _E1,
)

IXZ = SampleSpace.from_strings(["00", "10", "01"])


def random_space(rng, n, size) -> SampleSpace:
    return SampleSpace(
        2 * n, [BitVector(2 * n, int(w)) for w in rng.integers(0, 1 << (2 * n), size)]
    )


def subspace_state(W: BitMatrix) -> StateVector:
    """Uniform superposition over the row span of W (test oracle)."""
    vec = np.zeros(1 << W.cols, dtype=np.complex128)
    for coeffs in range(1 << W.rows):
        w = 0
        for i in range(W.rows):
            if (coeffs >> i) & 1:
                w ^= W.row(i).word
        vec[BitVector(W.cols, w).to_index()] += 1.0
    return StateVector.normalized(vec)


def mixed_cat_density(w: str) -> DensityMatrix:
    """The letter-string cat with maximally mixed filler at I positions."""
    n = len(w)
    n_fill = w.count("I")
    acc = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for fill in iproduct([0, 1], repeat=n_fill):
        b0 = b1 = np.array([1.0 + 0j])
        it = iter(fill)
        for ch in w:
            if ch == "I":
                e = np.eye(2, dtype=complex)[next(it)]
                b0, b1 = np.kron(b0, e), np.kron(b1, e)
            else:
                b0, b1 = np.kron(b0, _E0[ch]), np.kron(b1, _E1[ch])
        cat = (b0 + b1) / np.sqrt(2)
        acc += np.outer(cat, cat.conj()) / (1 << n_fill)
    return DensityMatrix(acc)


def random_independent_basis(rng, n, k) -> BitMatrix:
    while True:
        rows = [BitVector(n, int(rng.integers(1, 1 << n))) for _ in range(k)]
        M = BitMatrix(rows, n)
        if gf2_rank(M) == k:
            return M


class TestEmpiricalEpsilon:
    def test_perfect_pad(self):
        rep = empirical_epsilon(qotp(2), probes=25, seed=0)
        assert rep.epsilon_hat <= 1e-10

    def test_three_operator_optimum(self):
        rep = empirical_epsilon(channel_from_space(IXZ), probes=50, seed=0)
        assert -1e-6 <= rep.epsilon_hat - 1 / 3 <= 1e-9

    def test_two_op_rank_argument(self):
        S = SampleSpace.from_strings(["0000", "1000"])
        C = channel_from_space(S)
        rep = empirical_epsilon(C, probes=10, seed=0)
        assert rep.epsilon_hat >= 1 - 1e-6
        # eigenvalue-count oracle: outputs have rank <= 2 of dimension 4
        from qrand.channel import apply_channel
        from qrand.linalg import herm_eigvals, random_state

        out = apply_channel(C, random_state(4, seed=3).density())
        assert (herm_eigvals(out.mat) > 1e-12).sum() <= 2

    def test_witness_reproduces_value(self):
        C = channel_from_space(IXZ)
        rep = empirical_epsilon(C, probes=20, seed=4)
        assert abs(state_distance(C, rep.witness) - rep.epsilon_hat) <= 1e-9

    def test_deterministic_given_seed(self):
        C = channel_from_space(IXZ)
        a = empirical_epsilon(C, probes=30, seed=9)
        b = empirical_epsilon(C, probes=30, seed=9)
        assert a.epsilon_hat == b.epsilon_hat
        assert np.array_equal(a.witness.vec, b.witness.vec)

    def test_threads_do_not_change_result(self):
        rng = make_rng(71)
        C = channel_from_space(random_space(rng, 2, 12))
        a = empirical_epsilon(C, probes=40, seed=2, threads=1)
        b = empirical_epsilon(C, probes=40, seed=2, threads=3)
        assert a.epsilon_hat == b.epsilon_hat

    def test_norm_kinds(self):
        C = channel_from_space(IXZ)
        tr = empirical_epsilon(C, probes=10, seed=1, norm_kind="trace").epsilon_hat
        fro = empirical_epsilon(C, probes=10, seed=1, norm_kind="frobenius").epsilon_hat
        inf = empirical_epsilon(C, probes=10, seed=1, norm_kind="infinity").epsilon_hat
        assert inf <= fro <= tr

    def test_capacity(self):
        from qrand.pauli import PauliOp
        from qrand.channel import PauliChannel

        with pytest.raises(CapacityError):
            empirical_epsilon(PauliChannel(9, [PauliOp.identity(9)]), probes=1)


class TestSigmaVCondition:
    def test_full_cube_uniform(self):
        S = SampleSpace.full_cube(4)
        for V in ("ZZ", "XY", "IX"):
            assert sigma_v_condition(S, V) == 0

    def test_ixz_values(self):
        assert sigma_v_condition(IXZ, "Z") == pytest.approx(1 / 3)
        assert sigma_v_condition(IXZ, "X") == pytest.approx(1 / 3)

    def test_all_identity_rejected(self):
        with pytest.raises(InvalidTestError):
            sigma_v_condition(IXZ, "I")

    def test_equals_distance_at_product_state(self):
        rng = make_rng(72)
        for trial in range(10):
            n = int(rng.integers(1, 4))
            S = random_space(rng, n, int(rng.integers(2, 40)))
            C = channel_from_space(S)
            for V in ["".join(t) for t in iproduct("XYZ", repeat=n)][:9]:
                lhs = sigma_v_condition(S, V)
                rhs = state_distance(C, product_eigenstate(V))
                assert abs(lhs - rhs) < 1e-9


class TestCatCondition:
    def test_full_cube(self):
        S = SampleSpace.full_cube(4)
        for w in ("ZZ", "XI", "YX"):
            assert cat_condition(S, w) == 0

    def test_ixz_values(self):
        assert cat_condition(IXZ, "Z") == pytest.approx(1 / 3)
        assert cat_condition(IXZ, "Y") == pytest.approx(1 / 3)
        assert cat_condition(IXZ, "X") == pytest.approx(1 / 3)

    def test_all_identity_rejected(self):
        with pytest.raises(InvalidTestError):
            cat_condition(IXZ, "I")

    def test_scan_equals_bias_scan(self):
        # the letter strings enumerate exactly the nonzero linear tests
        rng = make_rng(73)
        for trial in range(10):
            n = int(rng.integers(1, 4))
            S = random_space(rng, n, int(rng.integers(2, 40)))
            best = max(
                cat_condition(S, "".join(t))
                for t in iproduct("IXYZ", repeat=n)
                if set(t) != {"I"}
            )
            assert abs(best - max_bias(S).max_bias) < 1e-12

    def test_lower_bounds_distance_for_flip_parities(self):
        # the parity-projection bound needs an exact flip observable: valid
        # for Y-free strings and for all-Y strings of even length
        rng = make_rng(74)
        for trial in range(8):
            n = int(rng.integers(1, 4))
            S = random_space(rng, n, int(rng.integers(2, 40)))
            C = channel_from_space(S)
            for t in iproduct("IXZ", repeat=n):
                w = "".join(t)
                if set(w) == {"I"}:
                    continue
                assert cat_condition(S, w) <= state_distance(C, mixed_cat_density(w)) + 1e-9
        S2 = random_space(rng, 2, 20)
        C2 = channel_from_space(S2)
        assert cat_condition(S2, "YY") <= state_distance(C2, mixed_cat_density("YY")) + 1e-9

    def test_cat_probe_is_pure_and_bounded_below(self):
        # the pure-filler probe also obeys the flip-parity bound
        rng = make_rng(75)
        S = random_space(rng, 3, 25)
        C = channel_from_space(S)
        for w in ("ZIZ", "XXI", "ZXZ"):
            assert cat_condition(S, w) <= state_distance(C, cat_probe_state(w)) + 1e-9


class TestStabilizerCondition:
    def test_full_cube(self):
        S = SampleSpace.full_cube(4)
        for G in stabilizer_catalog(2):
            assert stabilizer_condition(S, G) == 0

    def test_ixz_values(self):
        gZ = stab_validate(BitMatrix.from_strings(["01"]))
        gX = stab_validate(BitMatrix.from_strings(["10"]))
        assert stabilizer_condition(IXZ, gZ) == pytest.approx(1 / 3)
        assert stabilizer_condition(IXZ, gX) == pytest.approx(1 / 3)

    def test_equals_distance_at_stabilizer_state(self):
        rng = make_rng(76)
        for trial in range(10):
            n = int(rng.integers(1, 4))
            S = random_space(rng, n, int(rng.integers(2, 40)))
            C = channel_from_space(S)
            for _ in range(5):
                G = random_stabilizer_group(n, rng)
                lhs = stabilizer_condition(S, G)
                rhs = state_distance(C, stab_state(G))
                assert abs(lhs - rhs) < 1e-9


class TestSubspaceCondition:
    def test_full_cube(self):
        S = SampleSpace.full_cube(4)
        for rows in (["10"], ["01"], ["10", "01"], ["11"]):
            assert subspace_condition(S, BitMatrix.from_strings(rows)) == 0

    def test_point_mass_example(self):
        S = SampleSpace.from_strings(["0000"])
        W = BitMatrix.from_strings(["11"])
        assert subspace_condition(S, W) == pytest.approx(1.5)

    def test_full_space_reduces_to_z_part(self):
        rng = make_rng(77)
        S = random_space(rng, 2, 20)
        W = BitMatrix.from_strings(["10", "01"])
        # labels are the rows applied to b only; matches the distance at the
        # uniform-superposition state over everything = |++>
        lhs = subspace_condition(S, W)
        rhs = state_distance(channel_from_space(S), subspace_state(W))
        assert abs(lhs - rhs) < 1e-9

    def test_equals_distance_at_subspace_state(self):
        rng = make_rng(78)
        for trial in range(10):
            n = int(rng.integers(1, 4))
            S = random_space(rng, n, int(rng.integers(2, 40)))
            C = channel_from_space(S)
            for _ in range(4):
                k = int(rng.integers(1, n + 1))
                W = random_independent_basis(rng, n, k)
                lhs = subspace_condition(S, W)
                rhs = state_distance(C, subspace_state(W))
                assert abs(lhs - rhs) < 1e-9

    def test_dependent_basis_rejected(self):
        from qrand.errors import DependentGeneratorsError

        S = SampleSpace.from_strings(["0000"])
        with pytest.raises(DependentGeneratorsError):
            subspace_condition(S, BitMatrix.from_strings(["11", "11"]))


class TestRankBound:
    def test_examples(self):
        assert rank_bound(16, 4, 0.3)
        assert not rank_bound(2, 4, 0.5)  # need at least 3
        assert rank_bound(4, 4, 0.0)


class TestDiagnose:
    def test_perfect_pad_clean(self):
        rep = diagnose(qotp(2))
        assert rep.sigma_v_max == 0
        assert rep.cat_max == 0
        assert rep.stabilizer_max == 0
        assert rep.rank_bound_ok

    def test_ixz_triple(self):
        rep = diagnose(channel_from_space(IXZ))
        assert rep.sigma_v_max == pytest.approx(1 / 3, abs=1e-9)
        assert rep.cat_max == pytest.approx(1 / 3, abs=1e-9)
        assert rep.stabilizer_max == pytest.approx(1 / 3, abs=1e-9)
        assert rep.rank_bound_ok

    def test_explicit_channel_bounded_by_certificate(self):
        C = aghp_channel(6, 0.5)
        rep = diagnose(C)
        cert = certified_epsilon(C)
        assert rep.sigma_v_max <= cert + 1e-9
        assert rep.cat_max <= cert + 1e-9
        assert rep.stabilizer_max <= cert + 1e-9

    def test_requires_source(self):
        from qrand.channel import PauliChannel
        from qrand.pauli import PauliOp

        C = PauliChannel(1, [PauliOp.identity(1)])
        with pytest.raises(NotApplicableError):
            diagnose(C)

    def test_sampled_witnesses_above_six_qubits(self):
        from qrand.channel import random_pauli_channel

        C = random_pauli_channel(7, 48, seed=3)
        a = diagnose(C)
        b = diagnose(C)
        assert (a.sigma_v_max, a.cat_max, a.stabilizer_max) == (
            b.sigma_v_max, b.cat_max, b.stabilizer_max
        )
        assert a.sigma_v_witness == b.sigma_v_witness
        for value in (a.sigma_v_max, a.cat_max, a.stabilizer_max):
            assert 0 <= value <= 2


class TestMonotoneConsistency:
    def test_diagnostics_below_attack_below_certificate(self):
        rng = make_rng(79)
        for trial in range(6):
            n = int(rng.integers(1, 4))
            S = random_space(rng, n, int(rng.integers(2, 30)))
            C = channel_from_space(S)
            rep = diagnose(C)
            attack = empirical_epsilon(C, probes=100, seed=trial)
            cert = certified_epsilon(C)
            for value in (rep.sigma_v_max, rep.cat_max, rep.stabilizer_max):
                assert value <= attack.epsilon_hat + 1e-9
            assert attack.epsilon_hat <= cert + 1e-9


class TestCatalog:
    def test_deterministic(self):
        a = stabilizer_catalog(3)
        b = stabilizer_catalog(3)
        assert [g.generator_strings() for g in a] == [g.generator_strings() for g in b]

    def test_contains_letter_groups_and_entangled(self):
        cat = stabilizer_catalog(2)
        strs = {tuple(g.generator_strings()) for g in cat}
        flat = {s for tup in strs for s in tup}
        assert "XX" in flat and "ZZ" in flat

    def test_all_groups_valid(self):
        for n in (1, 2, 3):
            for g in stabilizer_catalog(n):
                assert g.n == n
                stab_state(g)  # constructs without error
