"""Vidal monotones, the convertibility preorder and pure-state monotones.

Schmidt vectors here are ascending. ``convertible_order(x, y)`` answers
"can a state with vector x be turned into one with vector y by LOCC", which
holds iff every ascending partial sum of x dominates that of y. Vectors of
different length are zero-padded at the front, which leaves the answer
unchanged under embedding into a larger local space.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InputError
from .states import PureState, PureStateEnsemble, schmidt_vector

DEFAULT_TOL = 1e-9


def as_schmidt_vector(v, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate a probability vector and return it sorted ascending."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise InputError("Schmidt vector must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(v)) or np.any(v < -tol) or np.any(v > 1 + tol):
        raise InputError(f"entries must lie in [0, 1]: {v}")
    if abs(v.sum() - 1.0) > tol:
        raise InputError(f"entries sum to {v.sum():.12g}, not 1")
    return np.sort(v)


def pad_front(v: np.ndarray, n: int) -> np.ndarray:
    """Prepend zeros so the ascending vector has length ``n``."""
    v = np.asarray(v, dtype=float)
    if v.size >= n:
        return v
    return np.concatenate([np.zeros(n - v.size), v])


def common_length(*vectors: np.ndarray) -> list[np.ndarray]:
    n = max(len(v) for v in vectors)
    return [pad_front(v, n) for v in vectors]


def vidal_monotone(v, l: int) -> float:
    """``E_l``: sum of the ``l+1`` smallest entries of an ascending vector."""
    v = np.asarray(v, dtype=float)
    if not 0 <= l <= v.size - 1:
        raise InputError(f"l={l} out of range for vector of length {v.size}")
    return float(np.sum(v[: l + 1]))


def vidal_profile(v) -> np.ndarray:
    """All ``E_l`` at once (cumulative ascending sums)."""
    return np.cumsum(np.asarray(v, dtype=float))


def convertible_order(x, y, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``x ≺ y``: ``E_l(x) >= E_l(y) - tol`` for every ``l``."""
    x, y = common_length(np.sort(np.asarray(x, float)), np.sort(np.asarray(y, float)))
    return bool(np.all(vidal_profile(x) >= vidal_profile(y) - tol))


def nielsen_convertible(psi1: PureState, psi2: PureState, tol: float = DEFAULT_TOL) -> bool:
    """Deterministic LOCC convertibility ``psi1 -> psi2`` for pure states."""
    return convertible_order(schmidt_vector(psi1), schmidt_vector(psi2), tol)


@dataclass(frozen=True)
class MonotoneSpec:
    """A symmetric concave function on probability vectors.

    ``f`` receives a 1-D float array that may carry extra zeros; built-ins
    are insensitive to that padding.
    """

    name: str
    f: Callable[[np.ndarray], float]

    def __call__(self, v) -> float:
        return float(self.f(np.asarray(v, dtype=float)))


def _entropy_bits(v: np.ndarray) -> float:
    p = v[v > 0]
    return float(-np.sum(p * np.log2(p)))


ENTROPY = MonotoneSpec("entropy", _entropy_bits)


def vidal_spec(l: int, n: int) -> MonotoneSpec:
    """``E_l`` for reference length ``n``, written as ``1 - (n-1-l largest)``.

    Equals :func:`vidal_monotone` on length-``n`` vectors and, unlike the
    front-indexed form, does not change when zeros are appended.
    """
    if not 0 <= l <= n - 1:
        raise InputError(f"l={l} out of range for reference length {n}")
    k = n - 1 - l

    def f(v: np.ndarray) -> float:
        top = np.sort(v)[::-1][:k]
        return float(1.0 - np.sum(top))

    return MonotoneSpec(f"E_{l}[n={n}]", f)


def builtin_monotones(n: int) -> list[MonotoneSpec]:
    """The entropy plus the complete ``E_l`` family for length ``n``."""
    return [ENTROPY] + [vidal_spec(l, n) for l in range(n)]


def check_monotone_spec(m: MonotoneSpec, n: int = 5, trials: int = 50,
                        seed: int = 0) -> bool:
    """Spot-check symmetry (1e-12) and concavity (1e-10 slack) of ``m.f``."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        u = rng.dirichlet(np.ones(n))
        v = rng.dirichlet(np.ones(n))
        if abs(m(u) - m(rng.permutation(u))) > 1e-12:
            return False
        for t in (0.25, 0.5, 0.75):
            if m(t * u + (1 - t) * v) < t * m(u) + (1 - t) * m(v) - 1e-10:
                return False
    return True


def monotone_value(m: MonotoneSpec, psi: PureState) -> float:
    """``f`` evaluated on the Schmidt vector of ``psi``."""
    return m(schmidt_vector(psi))


def ensemble_monotone(m: MonotoneSpec, d: PureStateEnsemble) -> float:
    """Average ``Σ_j p_j f(λ_{φ_j})``."""
    return float(sum(p * monotone_value(m, s) for p, s in d))


def ensemble_vidal_profile(d: PureStateEnsemble, n: int) -> np.ndarray:
    """``Σ_j p_j E_l(φ_j)`` for ``l = 0..n-1`` on vectors padded to ``n``."""
    return sum(p * vidal_profile(pad_front(schmidt_vector(s), n)) for p, s in d)


def jonathan_plenio_check(psi: PureState, d: PureStateEnsemble,
                          tol: float = DEFAULT_TOL) -> bool:
    """``Σ_α p_α E_l(φ_α) <= E_l(ψ)`` for every ``l`` (this ensemble only)."""
    lam = schmidt_vector(psi)
    n = max(len(lam), min(d.dims))
    avg = ensemble_vidal_profile(d, n)
    return bool(np.all(avg <= vidal_profile(pad_front(lam, n)) + tol))


def partial_sum_table(x: Sequence[float], y: Sequence[float], tol: float = DEFAULT_TOL):
    """Rows ``(l, E_l(x), E_l(y), ok)`` over the joint support.

    Leading entries that vanish in both vectors are dropped, so ``l`` counts
    from the smallest coefficient of the larger-rank vector.
    """
    x, y = common_length(np.sort(np.asarray(x, float)), np.sort(np.asarray(y, float)))
    n = max(int(np.count_nonzero(x > tol)), int(np.count_nonzero(y > tol)), 1)
    x, y = x[-n:], y[-n:]
    ex, ey = vidal_profile(x), vidal_profile(y)
    return [(l, float(ex[l]), float(ey[l]), bool(ex[l] >= ey[l] - tol))
            for l in range(len(ex))]
