"""Dense complex linear algebra primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
The Hermitian eigensolver is a self-contained cyclic Jacobi iteration;
numpy's LAPACK bindings are used only in the test-suite as an oracle.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, InputError, ShapeError, SizeError

DEFAULT_ENTRY_CAP = 1_000_000
INPUT_TOL = 1e-9
VERIFY_TOL = 1e-10

_MAX_SWEEPS = 100
_OFFDIAG_REL = 1e-14


def as_matrix(x, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    a = np.asarray(x, dtype=complex)
    if a.ndim != 2 or 0 in a.shape:
        raise ShapeError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} contains non-finite entries")
    return a


def as_vector(x, name: str = "vector") -> np.ndarray:
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ShapeError(f"{name} must be a non-empty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InputError(f"{name} contains non-finite entries")
    return v


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def kron(a, b, cap: int = DEFAULT_ENTRY_CAP) -> np.ndarray:
    """Kronecker product ``a ⊗ b`` with a guard on the output size."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.size * b.size > cap:
        raise SizeError(
            f"kron result would have {a.size * b.size} entries (cap {cap})"
        )
    return np.kron(a, b)


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Tournament schedule: n-1 (or n) rounds of disjoint index pairs
    covering every unordered pair exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        if ps:
            rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _offdiag_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def hermitian_eig(h, tol: float = INPUT_TOL, max_sweeps: int = _MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once, grouped into rounds of
    disjoint pairs so a whole round is applied as one vectorized update.

    Parameters
    ----------
    h : array_like
        Square matrix with ``‖h - h†‖_F <= tol``.
    tol : float
        Hermiticity tolerance for the input.
    max_sweeps : int
        Iteration cap; exceeding it raises :class:`ConvergenceError`.

    Returns
    -------
    eigenvalues : ndarray of float, ascending
    eigenvectors : ndarray, columns are the matching orthonormal eigenvectors
    """
    h = as_matrix(h, "h")
    n, m = h.shape
    if n != m:
        raise ShapeError(f"hermitian_eig needs a square matrix, got {h.shape}")
    asym = float(np.linalg.norm(h - dagger(h)))
    if asym > tol:
        raise InputError(f"matrix is not Hermitian: ‖h - h†‖_F = {asym:.3e}")

    a = 0.5 * (h + dagger(h))
    a[np.diag_indices(n)] = a.diagonal().real
    v = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return a.diagonal().real.copy(), v

    threshold = _OFFDIAG_REL * scale
    pair_floor = threshold / n
    schedule = _round_robin(n)

    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= threshold:
            break
        for P, Q in schedule:
            b = a[P, Q]
            absb = np.abs(b)
            active = absb > pair_floor
            if not np.any(active):
                continue
            P, Q, b, absb = P[active], Q[active], b[active], absb[active]
            app = a[P, P].real
            aqq = a[Q, Q].real
            phase = b / absb
            tau = (aqq - app) / (2.0 * absb)
            sgn = np.where(tau >= 0.0, 1.0, -1.0)
            t = sgn / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.hypot(1.0, t)
            s = t * c
            # rotation block [[c, s], [-s e^{-iθ}, c e^{-iθ}]] on (p, q)
            vpp, vpq = c, s
            vqp, vqq = -s * phase.conj(), c * phase.conj()

            colp, colq = a[:, P].copy(), a[:, Q].copy()
            a[:, P] = colp * vpp + colq * vqp
            a[:, Q] = colp * vpq + colq * vqq
            rowp, rowq = a[P, :].copy(), a[Q, :].copy()
            a[P, :] = vpp[:, None] * rowp + vqp.conj()[:, None] * rowq
            a[Q, :] = vpq[:, None] * rowp + vqq.conj()[:, None] * rowq
            a[P, Q] = 0.0
            a[Q, P] = 0.0
            a[P, P] = app - t * absb
            a[Q, Q] = aqq + t * absb

            vp, vq = v[:, P].copy(), v[:, Q].copy()
            v[:, P] = vp * vpp + vq * vqp
            v[:, Q] = vp * vpq + vq * vqq
    else:
        if _offdiag_norm(a) > threshold:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_offdiag_norm(a):.3e})"
            )

    w = a.diagonal().real
    order = np.argsort(w, kind="stable")
    return w[order].copy(), v[:, order].copy()


def partial_trace(rho, dA: int, dB: int, keep: str = "A") -> np.ndarray:
    """Reduced operator on subsystem ``keep`` of a (dA·dB)-square matrix."""
    rho = as_matrix(rho, "rho")
    if rho.shape != (dA * dB, dA * dB):
        raise ShapeError(f"rho has shape {rho.shape}, expected {(dA * dB,) * 2}")
    t = rho.reshape(dA, dB, dA, dB)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise InputError(f"keep must be 'A' or 'B', got {keep!r}")


def fidelity_pure(rho, psi, tol: float = INPUT_TOL) -> float:
    """``Re⟨ψ|ρ|ψ⟩`` for a unit vector ψ."""
    rho = as_matrix(getattr(rho, "matrix", rho), "rho")
    psi = as_vector(getattr(psi, "amplitudes", psi), "psi")
    if rho.shape != (psi.size, psi.size):
        raise ShapeError(f"rho shape {rho.shape} does not match psi dim {psi.size}")
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise InputError("psi is not normalized")
    return float(np.real(np.vdot(psi, rho @ psi)))


def _seed_to_uint(seed: int) -> int:
    return int(seed) % (1 << 64)


def rng_for(seed: int) -> np.random.Generator:
    """Deterministic generator for any (possibly negative) 64-bit seed."""
    return np.random.default_rng(_seed_to_uint(seed))


def gram_schmidt(z: np.ndarray) -> np.ndarray:
    """Orthonormalize columns (modified Gram-Schmidt, two passes).

    The diagonal of the implied triangular factor is positive real, so for a
    Ginibre input the result is Haar distributed.
    """
    q = np.array(z, dtype=complex)
    n = q.shape[1]
    for j in range(n):
        for _ in range(2):
            for k in range(j):
                q[:, j] -= np.vdot(q[:, k], q[:, j]) * q[:, k]
        norm = np.linalg.norm(q[:, j])
        if norm == 0.0:
            raise InputError("columns are linearly dependent")
        q[:, j] /= norm
    return q


def random_unitary(n: int, seed: int) -> np.ndarray:
    """Haar-random n×n unitary from a seeded complex Ginibre matrix."""
    if n <= 0:
        raise InputError(f"n must be positive, got {n}")
    rng = rng_for(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    return gram_schmidt(z)
