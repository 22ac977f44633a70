"""Worst-case-state attacks and necessary-condition diagnostics for
randomizing channels.

The attack lower-bounds the channel's true epsilon by evaluating the
distance from the maximally mixed state over adversarial state families
(product Pauli eigenstates, cat states, stabilizer states), random probes,
and a stochastic hill climb.  The diagnostics evaluate the same families
combinatorially on the channel's source sample space: each one is the
exact trace distance at the matching state, so every diagnostic value is
a certified lower bound on the true epsilon.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product

import numpy as np

from .bitlin import BitMatrix, BitVector, gf2_kernel, gf2_rank, symplectic
from .channel import PauliChannel, apply_channel, certified_epsilon
from .errors import (
    CapacityError,
    DependentGeneratorsError,
    DimensionError,
    InvalidTestError,
    NotApplicableError,
    QrandError,
)
from .linalg import StateVector, make_rng, matrix_norm, random_state
from .pauli import StabilizerGroup, stab_dual, stab_state, stab_validate
from .smallbias import SampleSpace, bias_at

MAX_ATTACK_QUBITS = 8
# exhaustive witness scans (3^n bases, 4^n parity strings) stop here
MAX_EXHAUSTIVE_WITNESS_QUBITS = 6
FAMILY_CAP = 6561  # 3^8
SAMPLED_WITNESSES = 4096
CLIMB_ROUNDS = 200
CLIMB_SIGMA = 0.1
CLIMB_PATIENCE = 10

_E0 = {
    "Z": np.array([1.0, 0.0], dtype=np.complex128),
    "X": np.array([1.0, 1.0], dtype=np.complex128) / math.sqrt(2),
    "Y": np.array([1.0, 1.0j], dtype=np.complex128) / math.sqrt(2),
    "I": np.array([1.0, 0.0], dtype=np.complex128),
}
_E1 = {
    "Z": np.array([0.0, 1.0], dtype=np.complex128),
    "X": np.array([1.0, -1.0], dtype=np.complex128) / math.sqrt(2),
    "Y": np.array([1.0, -1.0j], dtype=np.complex128) / math.sqrt(2),
    "I": np.array([1.0, 0.0], dtype=np.complex128),
}


@dataclass(frozen=True)
class AttackReport:
    """Best lower bound found for a channel's epsilon."""

    epsilon_hat: float
    witness: StateVector
    norm_kind: str
    probes: int
    families_used: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "report": "attack",
            "epsilon_hat": self.epsilon_hat,
            "norm_kind": self.norm_kind,
            "probes": self.probes,
            "families_used": list(self.families_used),
            "witness": [[float(z.real), float(z.imag)] for z in self.witness.vec],
        }


@dataclass(frozen=True)
class DiagnosticsReport:
    """Maxima of the necessary conditions over their witness families."""

    sigma_v_max: float
    sigma_v_witness: str
    cat_max: float
    cat_witness: str
    stabilizer_max: float
    stabilizer_witness: tuple[str, ...]
    rank_bound_ok: bool

    def to_dict(self) -> dict:
        return {
            "report": "diagnostics",
            "sigma_v_max": self.sigma_v_max,
            "sigma_v_witness": self.sigma_v_witness,
            "cat_max": self.cat_max,
            "cat_witness": self.cat_witness,
            "stabilizer_max": self.stabilizer_max,
            "stabilizer_witness": list(self.stabilizer_witness),
            "rank_bound_ok": self.rank_bound_ok,
        }


def product_eigenstate(V: str) -> StateVector:
    """Tensor product of the +1 eigenvectors of the letters of V."""
    vec = np.array([1.0 + 0.0j])
    for ch in V:
        vec = np.kron(vec, _E0[ch])
    return StateVector(vec, validate=False)


def cat_probe_state(w: str) -> StateVector:
    """Equal superposition of the all-0 and all-1 eigenvector strings of w.

    Positions with w_j = I are filled with |0> in both branches, so the
    probe stays pure; the parity argument bounding the trace distance from
    below holds for any filler.
    """
    if set(w) == {"I"}:
        raise InvalidTestError("cat state needs at least one non-identity letter")
    b0 = np.array([1.0 + 0.0j])
    b1 = np.array([1.0 + 0.0j])
    for ch in w:
        b0 = np.kron(b0, _E0[ch])
        b1 = np.kron(b1, _E1[ch] if ch != "I" else _E0["I"])
    return StateVector.normalized(b0 + b1)


def state_distance(C: PauliChannel, state, norm_kind: str = "trace") -> float:
    """Distance of the channel output from maximally mixed at one state."""
    d = 1 << C.n
    mat = state.density().mat if isinstance(state, StateVector) else state.mat
    out = apply_channel(C, mat)
    return matrix_norm(out.mat - np.eye(d) / d, norm_kind)


def _split_words(S: SampleSpace, n: int):
    words = S.words().astype(np.int64)
    return words & ((1 << n) - 1), words >> n


def sigma_v_condition(S: SampleSpace, V: str) -> float:
    """L1 distance from uniform of the basis-string reduction of S.

    Each 2n-bit string (a | b) reduces, over the non-identity positions of
    V, to a_j (Z), b_j (X), or a_j xor b_j (Y); identity positions are
    marginalized away.  The value equals the trace distance of the channel
    output at the corresponding product eigenstate.
    """
    if S.n % 2:
        raise DimensionError(f"space strings have odd length {S.n}")
    n = S.n // 2
    if len(V) != n:
        raise DimensionError(f"basis string length {len(V)} != {n}")
    active = [(j, ch) for j, ch in enumerate(V) if ch != "I"]
    if not active:
        raise InvalidTestError("all-identity basis string")
    if len(active) > 20:
        raise CapacityError(f"{len(active)} active positions exceed 20")
    a_words, b_words = _split_words(S, n)
    reduced = np.zeros(S.size, dtype=np.int64)
    for k, (j, ch) in enumerate(active):
        if ch == "Z":
            bit = (a_words >> j) & 1
        elif ch == "X":
            bit = (b_words >> j) & 1
        elif ch == "Y":
            bit = ((a_words ^ b_words) >> j) & 1
        else:
            raise ValueError(f"invalid basis letter {ch!r}")
        reduced |= bit << k
    counts = np.bincount(reduced, minlength=1 << len(active))
    return float(np.abs(counts / S.size - 2.0 ** -len(active)).sum())


def cat_condition(S: SampleSpace, w: str) -> float:
    """Bias of the key parity selected by a cat-state letter string.

    Letter X at position j selects a_j, Z selects b_j, Y selects
    a_j xor b_j, I selects nothing; the result is the bias of S at the
    induced 2n-bit test vector.
    """
    if S.n % 2:
        raise DimensionError(f"space strings have odd length {S.n}")
    n = S.n // 2
    if len(w) != n:
        raise DimensionError(f"letter string length {len(w)} != {n}")
    alpha = 0
    for j, ch in enumerate(w):
        if ch == "X":
            alpha |= 1 << j
        elif ch == "Z":
            alpha |= 1 << (n + j)
        elif ch == "Y":
            alpha |= (1 << j) | (1 << (n + j))
        elif ch != "I":
            raise ValueError(f"invalid letter {ch!r}")
    if alpha == 0:
        raise InvalidTestError("all-identity letter string")
    return bias_at(S, BitVector(2 * n, alpha))


def stabilizer_condition(S: SampleSpace, group: StabilizerGroup) -> float:
    """L1 distance from uniform of the half-swapped generator map over S.

    Each key (a, b) moves the stabilizer state to the basis state indexed
    by H (a, b), where H swaps the halves of each generator row; the value
    equals the trace distance of the channel output at the stabilizer
    state.
    """
    if S.n % 2:
        raise DimensionError(f"space strings have odd length {S.n}")
    n = S.n // 2
    if group.n != n:
        raise DimensionError(f"group on {group.n} qubits, space keys on {n}")
    if n > 10:
        raise CapacityError(f"stabilizer condition limited to 10 qubits, got {n}")
    H = stab_dual(group)
    words = S.words().astype(np.int64)
    labels = np.zeros(S.size, dtype=np.int64)
    for i in range(n):
        row = np.int64(H.row(i).word)
        labels |= _parity_i64_int(words & row) << i
    counts = np.bincount(labels, minlength=1 << n)
    return float(np.abs(counts / S.size - 2.0 ** -n).sum())


def subspace_condition(S: SampleSpace, W_basis: BitMatrix) -> float:
    """L1 distance from uniform of the coset labels of S for a subspace W.

    The label of (a, b) is the concatenation of H a (H a parity-check of
    W) and W b (the basis rows applied to b); labels enumerate the
    orthogonal basis generated from the uniform-superposition state over
    W, so the value equals the trace distance of the channel output
    there.
    """
    if S.n % 2:
        raise DimensionError(f"space strings have odd length {S.n}")
    n = S.n // 2
    if W_basis.cols != n:
        raise DimensionError(f"basis width {W_basis.cols} != {n}")
    k = W_basis.rows
    if k > n or gf2_rank(W_basis) != k:
        raise DependentGeneratorsError("subspace basis rows are dependent")
    H = gf2_kernel(W_basis)
    a_words, b_words = _split_words(S, n)
    labels = np.zeros(S.size, dtype=np.int64)
    pos = 0
    for i in range(H.rows):
        labels |= _parity_i64_int(a_words & np.int64(H.row(i).word)) << pos
        pos += 1
    for i in range(k):
        labels |= _parity_i64_int(b_words & np.int64(W_basis.row(i).word)) << pos
        pos += 1
    counts = np.bincount(labels, minlength=1 << n)
    return float(np.abs(counts / S.size - 2.0 ** -n).sum())


def rank_bound(m: int, d: int, epsilon: float) -> bool:
    """Operator-count sanity check m >= d (1 - epsilon / 2)."""
    if d < 1 or epsilon < 0:
        raise ValueError("need d >= 1 and epsilon >= 0")
    return m >= d * (1.0 - epsilon / 2.0)


def random_stabilizer_group(n: int, rng: np.random.Generator) -> StabilizerGroup:
    """Uniformly grown valid group: random labels accepted when they
    commute with and are independent of those already chosen."""
    rows: list[BitVector] = []
    labels: list[tuple[BitVector, BitVector]] = []
    while len(rows) < n:
        word = int(rng.integers(1, 1 << (2 * n)))
        cand = BitVector(2 * n, word)
        pair = cand.split(n)
        if any(symplectic(pair, lab) for lab in labels):
            continue
        if gf2_rank(BitMatrix(rows + [cand], 2 * n)) != len(rows) + 1:
            continue
        rows.append(cand)
        labels.append(pair)
    return stab_validate(BitMatrix(rows, 2 * n))


def _canonical_rowspace(G: BitMatrix) -> tuple:
    from .bitlin import _rref

    words, _ = _rref(G)
    return tuple(words)


@lru_cache(maxsize=None)
def stabilizer_catalog(n: int, seed: int = 0) -> tuple[StabilizerGroup, ...]:
    """Fixed, seeded group list used by both diagnose and the attack.

    Contents: every single-qubit-letter product group (all of {X,Y,Z}^n up
    to 6 qubits, 729 seeded samples beyond), the two GHZ-style entangled
    families (an all-X row over nearest-neighbour ZZ rows, and the
    X <-> Z swap of that), and 32 random valid groups grown from the seed.
    Duplicate row spaces are removed; all signs are zero.
    """
    groups: list[StabilizerGroup] = []
    seen: set[tuple] = set()

    def add(g: StabilizerGroup):
        key = _canonical_rowspace(g.G)
        if key not in seen:
            seen.add(key)
            groups.append(g)

    def letter_group(letters: str) -> StabilizerGroup:
        rows = []
        for j, ch in enumerate(letters):
            aw = 1 << j if ch in "XY" else 0
            bw = 1 << j if ch in "ZY" else 0
            rows.append(BitVector(2 * n, aw | (bw << n)))
        return stab_validate(BitMatrix(rows, 2 * n))

    if 3 ** n <= 729:
        for letters in iter_product("XYZ", repeat=n):
            add(letter_group("".join(letters)))
    else:
        g = make_rng(seed, stream=101)
        for _ in range(729):
            letters = "".join("XYZ"[int(i)] for i in g.integers(0, 3, size=n))
            add(letter_group(letters))

    if n >= 2:
        for flip in (False, True):
            rows = []
            aw = (1 << n) - 1
            rows.append(BitVector(2 * n, aw if not flip else aw << n))
            for j in range(n - 1):
                pair = (1 << j) | (1 << (j + 1))
                rows.append(BitVector(2 * n, pair << n if not flip else pair))
            add(stab_validate(BitMatrix(rows, 2 * n)))

    g = make_rng(seed, stream=202)
    for _ in range(32):
        add(random_stabilizer_group(n, g))
    return tuple(groups)


def _basis_witnesses(n: int, seed: int) -> list[str]:
    if n <= MAX_EXHAUSTIVE_WITNESS_QUBITS:
        return ["".join(t) for t in iter_product("XYZ", repeat=n)]
    g = make_rng(seed, stream=303)
    return ["".join("XYZ"[int(i)] for i in g.integers(0, 3, size=n))
            for _ in range(SAMPLED_WITNESSES)]


def _cat_witnesses(n: int, seed: int) -> list[str]:
    if n <= MAX_EXHAUSTIVE_WITNESS_QUBITS:
        return ["".join(t) for t in iter_product("IXYZ", repeat=n)
                if set(t) != {"I"}]
    g = make_rng(seed, stream=404)
    out = []
    while len(out) < SAMPLED_WITNESSES:
        w = "".join("IXYZ"[int(i)] for i in g.integers(0, 4, size=n))
        if set(w) != {"I"}:
            out.append(w)
    return out


def diagnose(C: PauliChannel, seed: int = 0) -> DiagnosticsReport:
    """Necessary-condition maxima for a channel with a source space.

    Scans every basis string and cat letter string exhaustively up to 6
    qubits (4096 seeded samples beyond) plus the fixed stabilizer catalog,
    and checks the operator-count bound against the certified epsilon.
    """
    if C.source is None:
        raise NotApplicableError("channel carries no source sample space")
    S = C.source
    n = C.n
    sig_max, sig_wit = -1.0, ""
    for V in _basis_witnesses(n, seed):
        v = sigma_v_condition(S, V)
        if v > sig_max:
            sig_max, sig_wit = v, V
    cat_max, cat_wit = -1.0, ""
    for w in _cat_witnesses(n, seed):
        v = cat_condition(S, w)
        if v > cat_max:
            cat_max, cat_wit = v, w
    stab_max, stab_wit = -1.0, ()
    for group in stabilizer_catalog(n, seed):
        v = stabilizer_condition(S, group)
        if v > stab_max:
            stab_max, stab_wit = v, tuple(group.generator_strings())
    ok = rank_bound(C.size, 1 << n, certified_epsilon(C))
    return DiagnosticsReport(
        sigma_v_max=sig_max,
        sigma_v_witness=sig_wit,
        cat_max=cat_max,
        cat_witness=cat_wit,
        stabilizer_max=stab_max,
        stabilizer_witness=stab_wit,
        rank_bound_ok=ok,
    )


_ALL_FAMILIES = ("product", "cat", "stabilizer")


def empirical_epsilon(
    C: PauliChannel,
    probes: int = 200,
    seed: int = 0,
    norm_kind: str = "trace",
    families=_ALL_FAMILIES,
    threads: int = 1,
) -> AttackReport:
    """Search for the worst-case input state of a channel.

    Evaluates the distance from maximally mixed over the enabled
    adversarial families, then `probes` seeded random pure states, then
    refines the best candidate with a stochastic hill climb (Gaussian
    perturbations of decaying scale, improvements kept).  The returned
    value is a lower bound on the channel's true epsilon; the witness
    reproduces it on re-evaluation.
    """
    if C.n > MAX_ATTACK_QUBITS:
        raise CapacityError(f"attack limited to {MAX_ATTACK_QUBITS} qubits, got {C.n}")
    families = tuple(families) if families is not None else _ALL_FAMILIES
    for f in families:
        if f not in _ALL_FAMILIES:
            raise ValueError(f"unknown family {f!r}")
    n, d = C.n, 1 << C.n
    if probes < 0:
        raise ValueError("probes must be >= 0")
    if probes == 0 and not families:
        raise ValueError("nothing to evaluate: no probes and no families")

    eye = np.eye(d)

    def dist(vec: np.ndarray) -> float:
        out = apply_channel(C, np.outer(vec, vec.conj()))
        return matrix_norm(out.mat - eye / d, norm_kind)

    candidates: list[np.ndarray] = []
    if "product" in families:
        for V in _basis_witnesses(n, seed):
            candidates.append(product_eigenstate(V).vec)
    if "cat" in families:
        if (4 ** n) - 1 <= FAMILY_CAP:
            ws = ["".join(t) for t in iter_product("IXYZ", repeat=n) if set(t) != {"I"}]
        else:
            g = make_rng(seed, stream=404)
            ws = []
            while len(ws) < FAMILY_CAP:
                w = "".join("IXYZ"[int(i)] for i in g.integers(0, 4, size=n))
                if set(w) != {"I"}:
                    ws.append(w)
        for w in ws:
            candidates.append(cat_probe_state(w).vec)
    if "stabilizer" in families:
        for group in stabilizer_catalog(n, seed):
            candidates.append(stab_state(group).vec)

    best_val, best_vec = -1.0, None

    def eval_range(vecs) -> tuple[float, int]:
        local_best, local_idx = -1.0, -1
        for i, v in vecs:
            val = dist(v)
            if val > local_best:
                local_best, local_idx = val, i
        return local_best, local_idx

    indexed = list(enumerate(candidates))
    for i in range(probes):
        indexed.append((len(candidates) + i, random_state(d, seed, stream=i).vec))
    all_vecs = {i: v for i, v in indexed}

    if threads > 1 and len(indexed) > 1:
        chunks = [indexed[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(eval_range, chunks))
        best_val, best_idx = -1.0, -1
        for val, idx in results:
            if val > best_val or (val == best_val and 0 <= idx < best_idx):
                best_val, best_idx = val, idx
        best_vec = all_vecs[best_idx]
    else:
        best_val, best_idx = eval_range(indexed)
        best_vec = all_vecs[best_idx]

    sigma = CLIMB_SIGMA
    fails = 0
    for round_ in range(CLIMB_ROUNDS):
        g = make_rng(seed, stream=(1 << 32) + round_)
        noise = g.standard_normal(d) + 1j * g.standard_normal(d)
        cand = best_vec + sigma * noise
        cand /= np.linalg.norm(cand)
        val = dist(cand)
        if val > best_val:
            best_val, best_vec = val, cand
            fails = 0
        else:
            fails += 1
            if fails >= CLIMB_PATIENCE:
                sigma /= 2.0
                fails = 0

    witness = StateVector.normalized(best_vec)
    check = dist(witness.vec)
    if abs(check - best_val) > 1e-9:
        raise QrandError("witness failed to reproduce the reported value")
    return AttackReport(
        epsilon_hat=best_val,
        witness=witness,
        norm_kind=norm_kind,
        probes=probes,
        families_used=families,
    )


def _parity_i64_int(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        x ^= x >> shift
    return x & 1
