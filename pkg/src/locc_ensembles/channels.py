"""Separable channels given by product Kraus pairs ``K_A ⊗ K_B``."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InputError, ShapeError, ValidationError
from .states import DensityMatrix, PureState
from .tensor_core import VERIFY_TOL, as_matrix, dagger, gram_schmidt, kron, rng_for


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SeparableChannel:
    """Kraus pairs mapping ``dims_in`` to ``dims_out``.

    The trace-preservation defect is computed on construction. A defective
    channel is only accepted with ``unchecked=True``.
    """

    dims_in: tuple[int, int]
    dims_out: tuple[int, int]
    kraus: tuple[tuple[np.ndarray, np.ndarray], ...]
    unchecked: bool = False
    defect: float = field(init=False)
    trace_preserving: bool = field(init=False)

    def __post_init__(self):
        dA, dB = (int(x) for x in self.dims_in)
        oA, oB = (int(x) for x in self.dims_out)
        if min(dA, dB, oA, oB) < 1:
            raise ShapeError("channel dimensions must be positive")
        if not self.kraus:
            raise ShapeError("channel needs at least one Kraus pair")
        pairs = []
        for n, (a, b) in enumerate(self.kraus):
            a = as_matrix(a, f"K_A[{n}]")
            b = as_matrix(b, f"K_B[{n}]")
            if a.shape != (oA, dA) or b.shape != (oB, dB):
                raise ShapeError(
                    f"Kraus pair {n} has shapes {a.shape}, {b.shape}; "
                    f"expected {(oA, dA)}, {(oB, dB)}"
                )
            pairs.append((_frozen(a), _frozen(b)))
        object.__setattr__(self, "dims_in", (dA, dB))
        object.__setattr__(self, "dims_out", (oA, oB))
        object.__setattr__(self, "kraus", tuple(pairs))
        ok, defect = validate_trace_preserving(self)
        object.__setattr__(self, "defect", defect)
        object.__setattr__(self, "trace_preserving", ok)
        if not ok and not self.unchecked:
            raise ValidationError(
                f"channel is not trace preserving (defect {defect:.3e}); "
                "pass unchecked=True to keep it"
            )

    def __len__(self) -> int:
        return len(self.kraus)

    def operators(self) -> list[np.ndarray]:
        """Full Kraus operators ``K_A ⊗ K_B``."""
        return [kron(a, b) for a, b in self.kraus]

    def without(self, index: int) -> "SeparableChannel":
        """Copy with the pair at ``index`` removed (always unchecked)."""
        pairs = tuple(p for n, p in enumerate(self.kraus) if n != index)
        return SeparableChannel(self.dims_in, self.dims_out, pairs, unchecked=True)


def identity_channel(dA: int, dB: int) -> SeparableChannel:
    return SeparableChannel((dA, dB), (dA, dB), ((np.eye(dA), np.eye(dB)),))


def validate_trace_preserving(ch: SeparableChannel) -> tuple[bool, float]:
    """``‖Σ_n K_A†K_A ⊗ K_B†K_B - I‖_F`` and whether it is ``<= 1e-10·√(dA·dB)``."""
    dA, dB = ch.dims_in
    total = np.zeros((dA * dB, dA * dB), dtype=complex)
    for a, b in ch.kraus:
        if a.shape[1] != dA or b.shape[1] != dB:
            raise ShapeError("Kraus pair does not match input dimensions")
        total += kron(dagger(a) @ a, dagger(b) @ b)
    defect = float(np.linalg.norm(total - np.eye(dA * dB)))
    return defect <= VERIFY_TOL * np.sqrt(dA * dB), defect


def _rho_matrix(rho, dims) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        if rho.dims != dims:
            raise ShapeError(f"state dims {rho.dims} do not match channel input {dims}")
        return rho.matrix
    m = as_matrix(rho, "rho")
    if m.shape != (dims[0] * dims[1],) * 2:
        raise ShapeError(f"rho shape {m.shape} does not match channel input {dims}")
    return m


def apply_kraus(ch: SeparableChannel, rho) -> np.ndarray:
    """Raw ``Σ_n K_n ρ K_n†`` as a matrix; no validation of the output."""
    m = _rho_matrix(rho, ch.dims_in)
    oA, oB = ch.dims_out
    out = np.zeros((oA * oB, oA * oB), dtype=complex)
    for k in ch.operators():
        out += k @ m @ dagger(k)
    return out


def apply_channel(ch: SeparableChannel, rho: DensityMatrix) -> DensityMatrix:
    """Channel output as a validated density matrix."""
    if not ch.trace_preserving and not ch.unchecked:
        raise ValidationError("defective channel used without the unchecked flag")
    out = apply_kraus(ch, rho)
    try:
        return DensityMatrix(*ch.dims_out, out)
    except InputError as exc:
        raise ValidationError(f"channel output is not a valid state: {exc}") from exc


def branch_vectors(ch: SeparableChannel, psi: PureState) -> list[np.ndarray]:
    """Unnormalized ``(K_A ⊗ K_B)|ψ⟩`` for every Kraus pair."""
    if psi.dims != ch.dims_in:
        raise ShapeError(f"state dims {psi.dims} do not match channel input {ch.dims_in}")
    m = psi.coefficient_matrix()
    # (A ⊗ B) vec(M) = vec(A M Bᵀ) for row-major vec
    return [(a @ m @ b.T).reshape(-1) for a, b in ch.kraus]


class Proportionality(NamedTuple):
    coefficients: np.ndarray
    max_residual: float
    proportional: bool


def proportionality_matrix(ch: SeparableChannel, basis: Sequence[PureState],
                           target: PureState, tol: float = VERIFY_TOL) -> Proportionality:
    """Branch coefficients ``c[j, n] = ⟨target|K_n|φ_j⟩`` and the largest
    distance of any branch from its projection onto ``target``."""
    if target.dims != ch.dims_out:
        raise ShapeError(f"target dims {target.dims} do not match channel output {ch.dims_out}")
    t = target.amplitudes
    c = np.zeros((len(basis), len(ch)), dtype=complex)
    worst = 0.0
    for j, phi in enumerate(basis):
        for n, branch in enumerate(branch_vectors(ch, phi)):
            c[j, n] = np.vdot(t, branch)
            worst = max(worst, float(np.linalg.norm(branch - c[j, n] * t)))
    return Proportionality(c, worst, worst <= tol)


def coefficient_orthonormality(c, tol: float = VERIFY_TOL) -> bool:
    """Whether ``Σ_n conj(c[k, n]) c[j, n] = δ_kj`` entrywise within ``tol``."""
    c = np.asarray(c, dtype=complex)
    if c.ndim != 2:
        return False
    gram = c.conj() @ c.T
    return bool(np.max(np.abs(gram - np.eye(c.shape[0]))) <= tol)


def lemma1_dimension_check(M: int, N: int, r: int) -> bool:
    """Necessary dimension condition for deterministic LOCC from an M⊗N
    mixed state to a rank-r pure state: larger side >= 2r, smaller >= r."""
    if min(M, N, r) < 1:
        raise InputError(f"dimensions and rank must be positive, got {(M, N, r)}")
    big, small = max(M, N), min(M, N)
    return big >= 2 * r and small >= r


def local_kraus_set(d_in: int, d_out: int, k: int, seed: int) -> list[np.ndarray]:
    """``k`` random d_out×d_in operators with ``Σ K†K = I`` (blocks of a
    random isometry)."""
    if d_out * k < d_in:
        raise InputError("need d_out·k >= d_in for a trace-preserving set")
    rng = rng_for(seed)
    z = rng.standard_normal((d_out * k, d_in)) + 1j * rng.standard_normal((d_out * k, d_in))
    iso = gram_schmidt(z)
    return [iso[i * d_out:(i + 1) * d_out, :] for i in range(k)]


def product_channel(kraus_a: Sequence[np.ndarray], kraus_b: Sequence[np.ndarray]) -> SeparableChannel:
    """All pairs ``(A_i, B_j)`` of two local trace-preserving Kraus sets."""
    a0, b0 = kraus_a[0], kraus_b[0]
    pairs = tuple((a, b) for a in kraus_a for b in kraus_b)
    return SeparableChannel((a0.shape[1], b0.shape[1]), (a0.shape[0], b0.shape[0]), pairs)
