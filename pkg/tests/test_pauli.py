"""Pauli algebra, text format, basis reductions, stabilizer groups.

The oracle throughout is the dense matrix route: operators built with
numpy kron from the 2x2 definitions, states evolved by matrix-vector
products, groups checked by explicit projectors.
"""

from itertools import product as iproduct

import numpy as np
import pytest

from qrand.bitlin import BitMatrix, BitVector, gf2_rank, row_space_contains
from qrand.errors import (
    DependentGeneratorsError,
    DimensionError,
    NotAbelianError,
)
from qrand.linalg import StateVector
from qrand.pauli import (
    PauliOp,
    pauli_apply,
    pauli_commutes,
    pauli_mul,
    sigma_v,
    stab_dual,
    stab_state,
    stab_validate,
)

I2 = np.eye(2, dtype=complex)
DENSE = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_oracle(letters: str, phase_power: int = 0) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for ch in letters:
        out = np.kron(out, DENSE[ch])
    return (1j) ** phase_power * out


def all_ops(n: int, phases=(0,)):
    for letters in iproduct("IXYZ", repeat=n):
        for ph in phases:
            op = PauliOp.from_string("".join(letters))
            yield PauliOp(n, op.a, op.b, (op.phase + ph) & 3)


class TestTextFormat:
    def test_round_trip_all_prefixes(self):
        for pfx in ("", "i", "-", "-i"):
            for letters in iproduct("IXYZ", repeat=2):
                text = pfx + "".join(letters)
                assert PauliOp.from_string(text).to_string() == text

    def test_dense_agrees_with_kron(self):
        for pfx, ph in (("", 0), ("i", 1), ("-", 2), ("-i", 3)):
            for letters in iproduct("IXYZ", repeat=2):
                s = "".join(letters)
                got = PauliOp.from_string(pfx + s).dense()
                assert np.abs(got - kron_oracle(s, ph)).max() < 1e-14

    def test_bad_input(self):
        with pytest.raises(ValueError):
            PauliOp.from_string("XQ")
        with pytest.raises(ValueError):
            PauliOp.from_string("-")


class TestMul:
    def test_x_squared(self):
        X1 = PauliOp.from_string("X")
        assert pauli_mul(X1, X1) == PauliOp.from_string("I")

    def test_xz_vs_zx(self):
        X1, Z1 = PauliOp.from_string("X"), PauliOp.from_string("Z")
        xz = pauli_mul(X1, Z1)
        zx = pauli_mul(Z1, X1)
        assert (xz.a.word, xz.b.word, xz.phase) == (1, 1, 0)
        assert (zx.a.word, zx.b.word, zx.phase) == (1, 1, 2)

    def test_xz_squared_is_minus_identity(self):
        xz = pauli_mul(PauliOp.from_string("X"), PauliOp.from_string("Z"))
        sq = pauli_mul(xz, xz)
        assert (sq.a.word, sq.b.word, sq.phase) == (0, 0, 2)
        # consistent with Y^2 = I and Y = i XZ: dense oracle
        assert np.abs(sq.dense() + np.eye(2)).max() < 1e-14

    @pytest.mark.parametrize("n", [1, 2])
    def test_exhaustive_vs_dense(self, n):
        ops = list(all_ops(n, phases=(0, 1, 2, 3)))
        for P in ops:
            for Q in ops:
                R = pauli_mul(P, Q)
                ref = P.dense() @ Q.dense()
                assert np.abs(R.dense() - ref).max() < 1e-13

    def test_dimension_error(self):
        with pytest.raises(DimensionError):
            pauli_mul(PauliOp.from_string("X"), PauliOp.from_string("XX"))


class TestCommutes:
    def test_examples(self):
        X1, Z1 = PauliOp.from_string("X"), PauliOp.from_string("Z")
        assert not pauli_commutes(X1, Z1)
        assert pauli_commutes(X1, X1)
        assert pauli_commutes(PauliOp.from_string("XX"), PauliOp.from_string("ZZ"))

    @pytest.mark.parametrize("n", [1, 2])
    def test_exhaustive_vs_dense(self, n):
        ops = list(all_ops(n))
        for P in ops:
            for Q in ops:
                comm = np.abs(P.dense() @ Q.dense() - Q.dense() @ P.dense()).max()
                assert pauli_commutes(P, Q) == (comm < 1e-12)


class TestApply:
    def test_x_flips(self):
        out = pauli_apply(PauliOp.from_string("X"), StateVector.basis(2, 0))
        assert np.abs(out.vec - [0, 1]).max() < 1e-15

    def test_worked_four_qubit_example(self):
        out = pauli_apply(PauliOp.from_string("XZXY"), StateVector.basis(16, 0b1111))
        expect = np.zeros(16, dtype=complex)
        expect[0b0100] = 1j
        assert np.abs(out.vec - expect).max() < 1e-15

    def test_z_is_diagonal(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            n = int(rng.integers(1, 5))
            bw = int(rng.integers(0, 1 << n))
            op = PauliOp(n, BitVector.zeros(n), BitVector(n, bw))
            c = int(rng.integers(0, 1 << n))
            out = pauli_apply(op, StateVector.basis(1 << n, BitVector(n, c).to_index()))
            sign = (-1) ** (bin(bw & c).count("1") & 1)
            idx = BitVector(n, c).to_index()
            assert out.vec[idx] == sign

    def test_double_apply_is_sign(self):
        rng = np.random.default_rng(32)
        for _ in range(25):
            n = int(rng.integers(1, 4))
            op = PauliOp(
                n,
                BitVector(n, int(rng.integers(0, 1 << n))),
                BitVector(n, int(rng.integers(0, 1 << n))),
                int(rng.integers(0, 4)),
            )
            raw = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
            psi = StateVector.normalized(raw)
            twice = pauli_apply(op, pauli_apply(op, psi))
            ratios = twice.vec[np.abs(psi.vec) > 1e-12] / psi.vec[np.abs(psi.vec) > 1e-12]
            assert np.abs(np.abs(ratios) - 1).max() < 1e-12
            assert np.abs(ratios - ratios[0]).max() < 1e-12
            assert min(abs(ratios[0] - 1), abs(ratios[0] + 1)) < 1e-12
            ref = op.dense() @ (op.dense() @ psi.vec)
            assert np.abs(twice.vec - ref).max() < 1e-12

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_dense_on_all_ops(self, n):
        rng = np.random.default_rng(33)
        psi = StateVector.normalized(
            rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        )
        for op in all_ops(n, phases=(0, 1)):
            out = pauli_apply(op, psi)
            assert np.abs(out.vec - op.dense() @ psi.vec).max() < 1e-12


class TestSigmaV:
    def test_all_z_returns_a(self):
        a = BitVector.from_string("101")
        b = BitVector.from_string("011")
        assert sigma_v("ZZZ", (a, b)) == a

    def test_all_y_returns_xor(self):
        a = BitVector.from_string("101")
        b = BitVector.from_string("011")
        assert sigma_v("YYY", (a, b)) == a ^ b

    def test_mixed(self):
        a = BitVector.from_string("10")
        b = BitVector.from_string("01")
        assert sigma_v("ZX", (a, b)).to_string() == "11"

    def test_identity_positions_dropped(self):
        a = BitVector.from_string("101")
        b = BitVector.from_string("011")
        out = sigma_v("IZI", (a, b))
        assert out.n == 1 and out.get(0) == a.get(1)


class TestStabilizers:
    def test_validate_z_basis(self):
        g = stab_validate(BitMatrix.from_strings(["0010", "0001"]))
        assert g.n == 2

    def test_not_abelian(self):
        with pytest.raises(NotAbelianError):
            stab_validate(BitMatrix.from_strings(["10", "01"]))

    def test_dependent(self):
        with pytest.raises(DependentGeneratorsError):
            stab_validate(BitMatrix.from_strings(["0011", "0011"]))

    def test_dual_half_swap(self):
        g = stab_validate(BitMatrix.from_strings(["01"]))  # <Z>
        H = stab_dual(g)
        assert H.row(0).to_string() == "10"
        g2 = stab_validate(BitMatrix.from_strings(["1100", "0011"]))  # <XX, ZZ>
        H2 = stab_dual(g2)
        assert [r.to_string() for r in H2.row_data] == ["0011", "1100"]

    def test_dual_orthogonality_and_involution(self):
        rng = np.random.default_rng(34)
        from qrand.verify import random_stabilizer_group

        for _ in range(15):
            n = int(rng.integers(1, 5))
            g = random_stabilizer_group(n, rng)
            H = stab_dual(g)
            assert gf2_rank(H) == n
            for i in range(n):
                for j in range(n):
                    from qrand.bitlin import gf2_dot

                    assert gf2_dot(g.G.row(i), H.row(j)) == 0
            again = stab_dual(stab_validate(H))
            assert again == g.G

    def test_states(self):
        z2 = stab_validate(BitMatrix.from_strings(["0010", "0001"]))
        assert np.abs(stab_state(z2).vec - [1, 0, 0, 0]).max() < 1e-12
        bell = stab_validate(BitMatrix.from_strings(["1100", "0011"]))
        expect = np.zeros(4)
        expect[0] = expect[3] = 2 ** -0.5
        assert np.abs(stab_state(bell).vec - expect).max() < 1e-12
        plus = stab_validate(BitMatrix.from_strings(["10"]))
        assert np.abs(stab_state(plus).vec - [2 ** -0.5, 2 ** -0.5]).max() < 1e-12

    def test_sign_flip_gives_orthogonal_state(self):
        G = BitMatrix.from_strings(["1100", "0011"])
        psi_plus = stab_state(stab_validate(G))
        psi_minus = stab_state(stab_validate(G, BitVector.from_string("10")))
        assert abs(np.vdot(psi_plus.vec, psi_minus.vec)) < 1e-12


def enumerate_stabilizer_groups(n: int):
    """All maximal isotropic row spaces over GF(2)^(2n), as groups."""
    found = []
    seen = set()

    def extend(rows):
        if len(rows) == n:
            from qrand.bitlin import _rref

            key = tuple(_rref(BitMatrix(rows, 2 * n))[0])
            if key not in seen:
                seen.add(key)
                found.append(stab_validate(BitMatrix(rows, 2 * n)))
            return
        for w in range(1, 1 << (2 * n)):
            cand = BitVector(2 * n, w)
            M = BitMatrix(rows + [cand], 2 * n)
            if gf2_rank(M) != len(rows) + 1:
                continue
            from qrand.bitlin import symplectic

            if any(symplectic(cand.split(n), r.split(n)) for r in rows):
                continue
            extend(rows + [cand])

    extend([])
    return found


@pytest.mark.parametrize("n", [1, 2])
def test_membership_iff_unit_expectation(n):
    """<psi|P|psi> has modulus 1 exactly when P's label is in the row space."""
    for group in enumerate_stabilizer_groups(n):
        psi = stab_state(group).vec
        for op in all_ops(n):
            val = np.vdot(psi, op.dense() @ psi)
            in_span = row_space_contains(group.G, op.a.concat(op.b))
            if in_span:
                assert abs(abs(val) - 1) < 1e-10
                assert min(abs(val - t) for t in (1, -1, 1j, -1j)) < 1e-10
            else:
                assert abs(val) < 1e-10


def test_membership_exhaustive_three_qubits():
    # all 135 distinct groups on 3 qubits, all 64 phase-free operators
    groups = enumerate_stabilizer_groups(3)
    assert len(groups) == 135
    ops = [(op, op.dense()) for op in all_ops(3)]
    for group in groups:
        psi = stab_state(group).vec
        for op, dense in ops:
            val = np.vdot(psi, dense @ psi)
            if row_space_contains(group.G, op.a.concat(op.b)):
                assert abs(abs(val) - 1) < 1e-10
            else:
                assert abs(val) < 1e-10
