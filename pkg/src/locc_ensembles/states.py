"""Bipartite pure states, density matrices, ensembles and Schmidt data.

Amplitudes of a state on ``C^dA ⊗ C^dB`` are stored flat, index ``a*dB + b``.
Schmidt vectors are ascending (smallest squared coefficient first) and have
length ``min(dA, dB)`` including explicit zeros.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InputError, ShapeError
from .tensor_core import (
    INPUT_TOL,
    as_matrix,
    as_vector,
    dagger,
    hermitian_eig,
    partial_trace,
    rng_for,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


def _check_dims(dA: int, dB: int) -> None:
    if int(dA) != dA or int(dB) != dB or dA < 1 or dB < 1:
        raise ShapeError(f"local dimensions must be positive integers, got {(dA, dB)}")


@dataclass(frozen=True, eq=False)
class PureState:
    dA: int
    dB: int
    amplitudes: np.ndarray
    tol: float = field(default=INPUT_TOL, repr=False)

    def __post_init__(self):
        _check_dims(self.dA, self.dB)
        amps = as_vector(self.amplitudes, "amplitudes")
        if amps.size != self.dA * self.dB:
            raise ShapeError(
                f"{amps.size} amplitudes for dims {(self.dA, self.dB)}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > self.tol:
            raise InputError(f"state is not normalized (norm {norm:.12g})")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def from_vector(cls, dA: int, dB: int, vec) -> "PureState":
        """Normalize ``vec`` and wrap it."""
        v = as_vector(vec)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise InputError("cannot normalize the zero vector")
        return cls(dA, dB, v / norm)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dA, self.dB)

    @property
    def dim(self) -> int:
        return self.dA * self.dB

    def coefficient_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to a dA×dB matrix."""
        return self.amplitudes.reshape(self.dA, self.dB)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.dA, self.dB, self.projector())

    def overlap(self, other: "PureState") -> complex:
        """``⟨self|other⟩``."""
        if self.dims != other.dims:
            raise ShapeError(f"dims differ: {self.dims} vs {other.dims}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def equal_up_to_phase(psi1: PureState, psi2: PureState, tol: float = 1e-9) -> bool:
    """True when ``|⟨ψ1|ψ2⟩| >= 1 - tol``."""
    if psi1.dims != psi2.dims:
        return False
    return abs(psi1.overlap(psi2)) >= 1.0 - tol


def _check_density(dA, dB, m, tol):
    if m.shape != (dA * dB, dA * dB):
        raise ShapeError(f"matrix shape {m.shape} does not match dims {(dA, dB)}")
    asym = np.linalg.norm(m - dagger(m))
    if asym > tol:
        raise InputError(f"density matrix is not Hermitian (‖ρ-ρ†‖_F = {asym:.3e})")
    tr = np.trace(m).real
    if abs(tr - 1.0) > tol:
        raise InputError(f"density matrix trace is {tr:.12g}")
    # ρ + tol·I admits a Cholesky factor iff every eigenvalue of ρ is >= -tol
    # (up to roundoff); cheaper than a full eigensolve for validation.
    herm = 0.5 * (m + dagger(m))
    try:
        np.linalg.cholesky(herm + tol * np.eye(m.shape[0]))
    except np.linalg.LinAlgError:
        raise InputError("density matrix is not positive semidefinite") from None


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dA: int
    dB: int
    matrix: np.ndarray
    tol: float = field(default=INPUT_TOL, repr=False)

    def __post_init__(self):
        _check_dims(self.dA, self.dB)
        m = as_matrix(self.matrix, "matrix")
        _check_density(self.dA, self.dB, m, self.tol)
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dA, self.dB)

    def reduced(self, keep: str = "A") -> np.ndarray:
        return partial_trace(self.matrix, self.dA, self.dB, keep)

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eig(self.matrix)[0]


@dataclass(frozen=True)
class SchmidtDecomposition:
    """``ψ = Σ_i coefficients[i] |basisA[:, i]⟩|basisB[:, i]⟩``, ascending."""

    coefficients: np.ndarray
    basisA: np.ndarray
    basisB: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        """Squared coefficients, i.e. the Schmidt vector."""
        return self.coefficients**2

    def reconstruct(self) -> np.ndarray:
        m = (self.basisA * self.coefficients) @ self.basisB.T
        return m.reshape(-1)


@dataclass(frozen=True)
class PureStateEnsemble:
    probabilities: tuple[float, ...]
    states: tuple[PureState, ...]
    tol: float = field(default=INPUT_TOL, repr=False)

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probabilities)
        states = tuple(self.states)
        if not states:
            raise InputError("ensemble is empty")
        if len(probs) != len(states):
            raise ShapeError(f"{len(probs)} probabilities for {len(states)} states")
        if any(not np.isfinite(p) or p < 0.0 for p in probs):
            raise InputError(f"probabilities must be non-negative: {probs}")
        if abs(sum(probs) - 1.0) > self.tol:
            raise InputError(f"probabilities sum to {sum(probs):.12g}, not 1")
        dims = states[0].dims
        if any(s.dims != dims for s in states):
            raise ShapeError("ensemble states do not share dimensions")
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "states", states)

    @classmethod
    def of(cls, *pairs: tuple[float, PureState]) -> "PureStateEnsemble":
        """Build from ``(probability, state)`` pairs."""
        return cls(tuple(p for p, _ in pairs), tuple(s for _, s in pairs))

    @property
    def dims(self) -> tuple[int, int]:
        return self.states[0].dims

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(zip(self.probabilities, self.states))

    def padded(self, k: int) -> "PureStateEnsemble":
        """Append zero-weight copies of the last state up to ``k`` elements,
        so a k×k unitary can realize decompositions with more elements."""
        extra = k - len(self)
        if extra < 0:
            raise ShapeError(f"ensemble already has {len(self)} > {k} elements")
        return PureStateEnsemble(
            self.probabilities + (0.0,) * extra,
            self.states + (self.states[-1],) * extra,
        )


def _complete_columns(q: np.ndarray, d: int, have: list[int]) -> None:
    """Fill columns of ``q`` not listed in ``have`` with unit vectors
    orthogonal to all previously set columns (in place)."""
    filled = list(have)
    missing = [j for j in range(q.shape[1]) if j not in have]
    candidate = 0
    for j in missing:
        while True:
            e = np.zeros(d, dtype=complex)
            e[candidate] = 1.0
            candidate += 1
            for k in filled:
                e -= np.vdot(q[:, k], e) * q[:, k]
            for k in filled:
                e -= np.vdot(q[:, k], e) * q[:, k]
            n = np.linalg.norm(e)
            if n > 1e-6:
                q[:, j] = e / n
                filled.append(j)
                break


def schmidt_decompose(psi: PureState, tol: float = INPUT_TOL) -> SchmidtDecomposition:
    """Schmidt decomposition via the eigendecomposition of the smaller reduction.

    The partner basis is ``(u_i† M) / c_i``, orthonormalized from the largest
    coefficient down so that small coefficients absorb the roundoff; columns
    with negligible weight are completed to an orthonormal set.
    """
    if abs(np.linalg.norm(psi.amplitudes) - 1.0) > tol:
        raise InputError("state is not normalized")
    m = psi.coefficient_matrix()
    swapped = psi.dA > psi.dB
    if swapped:
        m = m.T
    d_small, d_big = m.shape
    lam, u = hermitian_eig(m @ dagger(m))
    lam = np.clip(lam, 0.0, None)
    coeffs = np.sqrt(lam)

    partner = np.zeros((d_big, d_small), dtype=complex)
    have = []
    for i in np.argsort(-lam, kind="stable"):
        if coeffs[i] <= 1e-12:
            continue
        w = (dagger(u[:, i]) @ m) / coeffs[i]
        for k in have:
            w -= np.vdot(partner[:, k], w) * partner[:, k]
        n = np.linalg.norm(w)
        if n < 0.5:
            continue
        partner[:, i] = w / n
        have.append(int(i))
    _complete_columns(partner, d_big, have)

    basis_small, basis_big = u, partner
    if swapped:
        return SchmidtDecomposition(coeffs, basis_big, basis_small)
    return SchmidtDecomposition(coeffs, basis_small, basis_big)


def schmidt_vector(psi: PureState, tol: float = INPUT_TOL) -> np.ndarray:
    """Ascending squared Schmidt coefficients, length ``min(dA, dB)``."""
    return schmidt_decompose(psi, tol).vector


def schmidt_rank(psi: PureState, tol: float = 1e-10) -> int:
    """Number of squared Schmidt coefficients above ``tol``."""
    return int(np.count_nonzero(schmidt_vector(psi) > tol))


def density_from_ensemble(d: PureStateEnsemble) -> DensityMatrix:
    """``Σ_j p_j |φ_j⟩⟨φ_j|``."""
    amps = np.array([s.amplitudes for s in d.states])
    p = np.array(d.probabilities)
    rho = (amps.T * p) @ amps.conj()
    return DensityMatrix(*d.dims, rho)


def spectral_ensemble(rho: DensityMatrix, tol: float = 1e-10) -> PureStateEnsemble:
    """Eigen-ensemble of ``rho``: eigenvalues above ``tol``, descending.

    Probabilities are the raw eigenvalues; dropping sub-``tol`` weight must
    keep the sum within the ensemble's validation tolerance.
    """
    w, v = hermitian_eig(rho.matrix)
    keep = [i for i in np.argsort(-w, kind="stable") if w[i] > tol]
    return PureStateEnsemble(
        tuple(float(w[i]) for i in keep),
        tuple(PureState.from_vector(rho.dA, rho.dB, v[:, i]) for i in keep),
    )


def mix_ensemble(d: PureStateEnsemble, u, tol: float = INPUT_TOL,
                 drop: float = 1e-12) -> PureStateEnsemble:
    """Re-decompose an ensemble: ``√q_i |e_i⟩ = Σ_j U_ij √p_j |φ_j⟩``.

    Every pure-state decomposition of the same density matrix arises this way
    (for some unitary, after padding with zero-weight elements).
    """
    u = as_matrix(u, "u")
    k = len(d)
    if u.shape != (k, k):
        raise ShapeError(f"unitary has shape {u.shape}, ensemble has {k} elements")
    defect = np.linalg.norm(dagger(u) @ u - np.eye(k))
    if defect > tol:
        raise InputError(f"u is not unitary (‖U†U - I‖_F = {defect:.3e})")
    amps = np.array([s.amplitudes for s in d.states])
    weighted = np.sqrt(np.array(d.probabilities))[:, None] * amps
    mixed = u @ weighted
    q = np.einsum("ij,ij->i", mixed.conj(), mixed).real
    keep = [i for i in range(k) if q[i] > drop]
    return PureStateEnsemble(
        tuple(float(q[i]) for i in keep),
        tuple(PureState(*d.dims, mixed[i] / np.sqrt(q[i])) for i in keep),
    )


def random_support_state(d: PureStateEnsemble, seed: int) -> PureState:
    """Normalized ``Σ_j c_j φ_j`` with ``c`` uniform on the complex unit sphere."""
    rng = rng_for(seed)
    k = len(d)
    c = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    c /= np.linalg.norm(c)
    amps = np.array([s.amplitudes for s in d.states])
    return PureState.from_vector(*d.dims, c @ amps)


def product_state(a: Sequence[complex], b: Sequence[complex]) -> PureState:
    """``|a⟩ ⊗ |b⟩`` from (not necessarily normalized) local vectors."""
    a = as_vector(a)
    b = as_vector(b)
    return PureState.from_vector(a.size, b.size, np.kron(a, b))


def bell_state(d: int = 2) -> PureState:
    """Maximally entangled ``Σ_i |ii⟩ / √d``."""
    return PureState.from_vector(d, d, np.eye(d).reshape(-1))
