"""Dense complex linear algebra: Hermitian eigenvalues via cyclic Jacobi
rotations, the trace/Frobenius/infinity norms, trace distance, and seeded
sampling of states and Haar unitaries.

All randomness flows through Philox, a counter-based generator, keyed by an
explicit 64-bit seed plus a stream index, so every sample is reproducible
and independent of evaluation order.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError, QrandError, SymmetryError

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, fallback for safety
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


_MASK64 = (1 << 64) - 1


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by (seed, stream)."""
    key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@njit(cache=True)
def _jacobi_sweeps(A, tol):  # pragma: no cover - exercised via herm_eigvals
    d = A.shape[0]
    skip = tol / (1.5 * d) if d > 0 else tol
    for _ in range(100):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                off += 2.0 * (A[p, q].real ** 2 + A[p, q].imag ** 2)
        if math.sqrt(off) < tol:
            return True
        for p in range(d - 1):
            for q in range(p + 1, d):
                m = abs(A[p, q])
                if m < skip:
                    continue
                u = A[p, q] / m
                alpha = A[p, p].real
                gamma = A[q, q].real
                theta = (gamma - alpha) / (2.0 * m)
                # smaller-magnitude root of t^2 - 2*theta*t - 1 = 0
                sign = 1.0 if theta >= 0.0 else -1.0
                t = -sign / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                su = s * np.conj(u)
                # column update: B = A J with J cols (c, s*conj(u)) / (-s, c*conj(u))
                for i in range(d):
                    aip = A[i, p]
                    aiq = A[i, q]
                    A[i, p] = c * aip + su * aiq
                    A[i, q] = -s * aip + c * np.conj(u) * aiq
                # row update: A' = J^H B
                for j in range(d):
                    apj = A[p, j]
                    aqj = A[q, j]
                    A[p, j] = c * apj + s * u * aqj
                    A[q, j] = -s * apj + c * u * aqj
                A[p, q] = 0.0
                A[q, p] = 0.0
    off = 0.0
    for p in range(d - 1):
        for q in range(p + 1, d):
            off += 2.0 * (A[p, q].real ** 2 + A[p, q].imag ** 2)
    return math.sqrt(off) < tol


def herm_eigvals(M: np.ndarray, hermiticity_tol: float = 1e-8) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    Cyclic Jacobi rotations are iterated until the off-diagonal Frobenius
    mass drops below 1e-13 * d.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"need a square matrix, got shape {M.shape}")
    if np.abs(M - M.conj().T).max(initial=0.0) > hermiticity_tol:
        raise SymmetryError("matrix is not Hermitian within tolerance")
    d = M.shape[0]
    if d == 0:
        return np.zeros(0)
    if d == 1:
        return np.array([M[0, 0].real])
    A = 0.5 * (M + M.conj().T)
    if not _jacobi_sweeps(A, 1e-13 * d):
        raise QrandError("Jacobi iteration failed to converge")
    return np.sort(np.diag(A).real)


def matrix_norm(M: np.ndarray, kind: str) -> float:
    """Trace, Frobenius, or infinity norm of a Hermitian matrix.

    For Hermitian inputs these are the sum of absolute eigenvalues, the
    root-sum-square of eigenvalues, and the largest absolute eigenvalue.
    """
    ev = herm_eigvals(M)
    if kind == "trace":
        return float(np.abs(ev).sum())
    if kind == "frobenius":
        return float(math.sqrt((ev * ev).sum()))
    if kind == "infinity":
        return float(np.abs(ev).max())
    raise ValueError(f"unknown norm kind {kind!r}")


class StateVector:
    """A unit vector of complex amplitudes."""

    __slots__ = ("vec",)

    def __init__(self, amplitudes, validate: bool = True):
        vec = np.asarray(amplitudes, dtype=np.complex128)
        if vec.ndim != 1:
            raise DimensionError(f"amplitudes must be a vector, got shape {vec.shape}")
        if validate and abs(np.linalg.norm(vec) - 1.0) > 1e-12:
            raise ValueError(f"state norm {np.linalg.norm(vec)} is not 1")
        object.__setattr__(self, "vec", vec)
        vec.setflags(write=False)

    def __setattr__(self, *_):
        raise AttributeError("StateVector is immutable")

    @property
    def dim(self) -> int:
        return len(self.vec)

    @classmethod
    def normalized(cls, raw) -> "StateVector":
        raw = np.asarray(raw, dtype=np.complex128)
        nrm = np.linalg.norm(raw)
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(raw / nrm, validate=False)

    @classmethod
    def basis(cls, d: int, index: int) -> "StateVector":
        vec = np.zeros(d, dtype=np.complex128)
        vec[index] = 1.0
        return cls(vec, validate=False)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.vec, self.vec.conj()), validate=False)

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim})"


class DensityMatrix:
    """Hermitian, trace-1, positive semi-definite matrix."""

    __slots__ = ("mat",)

    def __init__(self, mat, validate: bool = True):
        mat = np.asarray(mat, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionError(f"need a square matrix, got shape {mat.shape}")
        if validate:
            if np.abs(mat - mat.conj().T).max(initial=0.0) > 1e-10:
                raise ValueError("density matrix is not Hermitian within 1e-10")
            if abs(mat.trace().real - 1.0) > 1e-10 or abs(mat.trace().imag) > 1e-10:
                raise ValueError(f"density matrix trace {mat.trace()} is not 1")
            if herm_eigvals(mat).min() < -1e-10:
                raise ValueError("density matrix has an eigenvalue below -1e-10")
        object.__setattr__(self, "mat", mat)
        mat.setflags(write=False)

    def __setattr__(self, *_):
        raise AttributeError("DensityMatrix is immutable")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def validate(self) -> None:
        """Re-run all construction invariants; raises on violation."""
        DensityMatrix(self.mat, validate=True)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


def maximally_mixed(d: int) -> DensityMatrix:
    return DensityMatrix(np.eye(d, dtype=np.complex128) / d, validate=False)


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Trace norm of the difference of two density matrices; in [0, 2]."""
    a = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho)
    b = sigma.mat if isinstance(sigma, DensityMatrix) else np.asarray(sigma)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return matrix_norm(a - b, "trace")


def random_state(d: int, seed: int, stream: int = 0) -> StateVector:
    """Haar-random pure state: normalized complex standard normal vector."""
    if d < 1:
        raise DimensionError(f"need d >= 1, got {d}")
    g = make_rng(seed, stream)
    raw = g.standard_normal(d) + 1j * g.standard_normal(d)
    return StateVector.normalized(raw)


def random_density(d: int, seed: int, stream: int = 0, k: int | None = None) -> DensityMatrix:
    """Random mixture of k pure states (k = d by default) with weights
    drawn as normalized exponentials."""
    if d < 1:
        raise DimensionError(f"need d >= 1, got {d}")
    if k is None:
        k = d
    g = make_rng(seed, stream)
    weights = g.exponential(size=k)
    weights /= weights.sum()
    mat = np.zeros((d, d), dtype=np.complex128)
    for i in range(k):
        raw = g.standard_normal(d) + 1j * g.standard_normal(d)
        raw /= np.linalg.norm(raw)
        mat += weights[i] * np.outer(raw, raw.conj())
    return DensityMatrix(mat, validate=False)


def haar_unitary(d: int, seed: int, stream: int = 0) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with each
    column rescaled so the triangular factor has positive real diagonal."""
    if d < 1:
        raise DimensionError(f"need d >= 1, got {d}")
    g = make_rng(seed, stream)
    ginibre = (g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(ginibre)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases


def matrix_to_text(M: np.ndarray) -> str:
    """Serialize a complex matrix as "re im" pairs, row-major, 17 significant
    digits, one row per line."""
    M = np.asarray(M, dtype=np.complex128)
    lines = []
    for row in M:
        lines.append(" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> np.ndarray:
    rows = []
    for line in text.splitlines():
        vals = [float(tok) for tok in line.split()]
        if not vals:
            continue
        if len(vals) % 2:
            raise ValueError("each row needs an even number of values (re im pairs)")
        rows.append([complex(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)])
    return np.array(rows, dtype=np.complex128)
