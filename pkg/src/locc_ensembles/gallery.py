"""The counterexample family, parameterized by the target Schmidt rank r >= 3.

Two local spaces are used per side:

* the input space, dimension 2r-1, with signed labels 0..r and -3..-r;
* the target-ensemble space, dimension 2r+1, with labels 0..2r.

States that live on both (``phi``) can be built in either. Comparisons
across the two spaces go through Schmidt vectors, which do not depend on
the embedding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .channels import (
    SeparableChannel,
    apply_kraus,
    coefficient_orthonormality,
    lemma1_dimension_check,
    proportionality_matrix,
)
from .errors import InputError
from .majorization import (
    ENTROPY,
    ensemble_monotone,
    ensemble_vidal_profile,
    monotone_value,
    nielsen_convertible,
    pad_front,
    vidal_profile,
)
from .states import (
    DensityMatrix,
    PureState,
    PureStateEnsemble,
    mix_ensemble,
    random_support_state,
    schmidt_vector,
    spectral_ensemble,
)
from .tensor_core import fidelity_pure, random_unitary, rng_for

MU = 15 / 16
NU = 1 / np.sqrt(15)

ENCODINGS = ("literal", "corrected")
STATE_KINDS = ("phi1", "phi2", "phi", "phi_r")
REPORT_TOL = 1e-9


def _check_r(r: int) -> int:
    if int(r) != r or r < 3:
        raise InputError(f"r must be an integer >= 3, got {r}")
    return int(r)


def _check_weight(w: float, name: str) -> float:
    w = float(w)
    if not 0.0 <= w <= 1.0:
        raise InputError(f"{name} must lie in [0, 1], got {w}")
    return w


@dataclass(frozen=True)
class LabelMap:
    """Basis-label to index maps for the two local spaces.

    Input side: 0..r map to themselves, -k (k = 3..r) maps to r-2+k.
    Target side: labels 0..2r map to themselves.
    """

    r: int

    def __post_init__(self):
        _check_r(self.r)

    @property
    def dim_rho(self) -> int:
        return 2 * self.r - 1

    @property
    def dim_sigma(self) -> int:
        return 2 * self.r + 1

    def rho_labels(self) -> list[int]:
        return list(range(self.r + 1)) + [-k for k in range(3, self.r + 1)]

    def sigma_labels(self) -> list[int]:
        return list(range(self.dim_sigma))

    def rho_index(self, label: int) -> int:
        if 0 <= label <= self.r:
            return label
        if -self.r <= label <= -3:
            return self.r - 2 - label
        raise InputError(f"label {label} not in the input space for r={self.r}")

    def sigma_index(self, label: int) -> int:
        if 0 <= label <= 2 * self.r:
            return label
        raise InputError(f"label {label} not in the target space for r={self.r}")

    def index(self, label: int, space: str) -> int:
        return self.rho_index(label) if space == "rho" else self.sigma_index(label)

    def dim(self, space: str) -> int:
        if space not in ("rho", "sigma"):
            raise InputError(f"space must be 'rho' or 'sigma', got {space!r}")
        return self.dim_rho if space == "rho" else self.dim_sigma


def _terms(kind: str, r: int) -> list[tuple[float, int, int]]:
    """(amplitude, label_A, label_B) triples of the unnormalized-free states."""
    pos = range(3, r + 1)
    if kind == "phi1":
        c = 1 / np.sqrt(r)
        return [(c, 0, 1), (c, 1, 0)] + [(c, j, j) for j in pos]
    if kind == "phi2":
        c = 1 / np.sqrt(r)
        return [(c, 0, 2), (c, 2, 0)] + [(c, -j, -j) for j in pos]
    s = np.sqrt(2 / r)
    if kind == "phi":
        return ([(s * np.sqrt(MU) * NU, 0, 0), (s * np.sqrt(MU), 1, 1)]
                + [(s / np.sqrt(2), j, j) for j in pos])
    if kind == "phi_r":
        return ([(s * np.sqrt(MU) * NU, r, r), (s * np.sqrt(MU), r + 1, r + 1)]
                + [(s / np.sqrt(2), r + j, r + j) for j in pos])
    raise InputError(f"unknown state kind {kind!r}; expected one of {STATE_KINDS}")


def make_state(kind: str, r: int, space: str | None = None) -> PureState:
    """Gallery pure state. ``space`` defaults to ``"rho"`` for phi1/phi2/phi
    and ``"sigma"`` for phi_r."""
    r = _check_r(r)
    if space is None:
        space = "sigma" if kind == "phi_r" else "rho"
    labels = LabelMap(r)
    d = labels.dim(space)
    m = np.zeros((d, d), dtype=complex)
    for amp, a, b in _terms(kind, r):
        m[labels.index(a, space), labels.index(b, space)] += amp
    return PureState(d, d, m.reshape(-1))


def make_mixed(kind: str, r: int, weight: float = 0.5) -> DensityMatrix:
    """``rho = p φ1 + (1-p) φ2`` or ``sigma = q φ + (1-q) φ_r``."""
    r = _check_r(r)
    w = _check_weight(weight, "weight")
    if kind == "rho":
        a, b = make_state("phi1", r), make_state("phi2", r)
    elif kind == "sigma":
        a, b = make_state("phi", r, space="sigma"), make_state("phi_r", r)
    else:
        raise InputError(f"unknown mixed kind {kind!r}; expected 'rho' or 'sigma'")
    m = w * a.projector() + (1 - w) * b.projector()
    return DensityMatrix(a.dA, a.dB, m)


def defining_ensemble(kind: str, r: int, weight: float = 0.5) -> PureStateEnsemble:
    """The two-element ensemble each mixed state is written with."""
    w = _check_weight(weight, "weight")
    if kind == "rho":
        return PureStateEnsemble.of((w, make_state("phi1", r)), (1 - w, make_state("phi2", r)))
    if kind == "sigma":
        return PureStateEnsemble.of((w, make_state("phi", r, space="sigma")),
                                    (1 - w, make_state("phi_r", r)))
    raise InputError(f"unknown mixed kind {kind!r}")


def _op(r: int, terms: Iterable[tuple[float, int, int]]) -> np.ndarray:
    """Local operator ``Σ c |out⟩⟨in|`` on the input space."""
    labels = LabelMap(r)
    d = labels.dim_rho
    m = np.zeros((d, d), dtype=complex)
    for c, out, inp in terms:
        m[labels.rho_index(out), labels.rho_index(inp)] += c
    return m


def gallery_kraus_pairs(r: int, encoding: str = "corrected") -> list[tuple[np.ndarray, np.ndarray]]:
    """The 17 product Kraus pairs, in print order.

    ``literal`` keeps the printed ranges, where K3's B factor and both K4
    factors sum ``|-j⟩⟨j|`` over positive j; ``corrected`` sums over
    negative j instead, mirroring K1/K2 under label negation.
    """
    r = _check_r(r)
    if encoding not in ENCODINGS:
        raise InputError(f"encoding must be one of {ENCODINGS}, got {encoding!r}")
    pos = list(range(3, r + 1))
    neg = [-j for j in pos]
    q4 = 2 ** -0.25
    smn, sm, sn = np.sqrt(MU * NU), np.sqrt(MU), np.sqrt(NU)

    diag_pos = [(q4, j, j) for j in pos]
    neg_to_pos = [(q4, -j, j) for j in neg]      # |-j⟩⟨j|, j = -3..-r
    pos_to_neg = [(q4, -j, j) for j in pos]      # |-j⟩⟨j|, j = 3..r (literal form)
    flip = neg_to_pos if encoding == "corrected" else pos_to_neg
    proj_pos = [(1.0, j, j) for j in pos]
    proj_neg = [(1.0, j, j) for j in neg]
    a14 = np.sqrt(1 - (MU * NU + MU) / np.sqrt(2))
    b15 = np.sqrt(1 - (NU + 1) / np.sqrt(2))

    factors = [
        ([(smn, 0, 0), (sm, 1, 1)] + diag_pos, [(sn, 0, 1), (1, 1, 0)] + diag_pos),
        ([(sm, 1, 0), (smn, 0, 1)] + diag_pos, [(1, 1, 1), (sn, 0, 0)] + diag_pos),
        ([(smn, 0, 0), (sm, 1, 2)] + neg_to_pos, [(sn, 0, 2), (1, 1, 0)] + flip),
        ([(sm, 1, 0), (smn, 0, 2)] + flip, [(1, 1, 2), (sn, 0, 0)] + flip),
        ([(1, 1, 1)], [(np.sqrt(1 - 2 * MU * NU), 1, 1), (1, 2, 2)]),
        ([(1, 2, 2)], [(np.sqrt(1 - 2 * MU * NU), 2, 2), (1, 1, 1)]),
        ([(np.sqrt(1 - 4 * MU * NU), 0, 0)], [(1, 0, 0)]),
        (proj_pos, proj_neg),
        (proj_neg, proj_pos),
        (proj_pos, [(1, 2, 2)]),
        ([(1, 2, 2)], proj_pos),
        (proj_neg, [(1, 1, 1)]),
        ([(1, 1, 1)], proj_neg),
        ([(a14, 0, 0), (a14, 1, 1)], proj_pos),
        (proj_pos, [(b15, 0, 0), (b15, 1, 1)]),
        ([(a14, 0, 0), (a14, 2, 2)], proj_neg),
        (proj_neg, [(b15, 0, 0), (b15, 2, 2)]),
    ]
    return [(_op(r, a), _op(r, b)) for a, b in factors]


def make_appendix_channel(r: int, encoding: str = "corrected") -> SeparableChannel:
    """Separable channel taking ``rho`` to ``phi``; the literal encoding is
    kept behind the ``unchecked`` flag."""
    pairs = gallery_kraus_pairs(r, encoding)
    d = LabelMap(r).dim_rho
    return SeparableChannel((d, d), (d, d), tuple(pairs), unchecked=(encoding == "literal"))


@dataclass
class Check:
    name: str
    passed: bool
    witnesses: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed),
                "witnesses": [float(w) for w in self.witnesses]}


@dataclass
class VerificationReport:
    title: str
    params: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed, witnesses: Sequence[float] = ()) -> Check:
        c = Check(name, bool(passed), [float(w) for w in witnesses])
        self.checks.append(c)
        return c

    def to_dict(self) -> dict:
        return {"params": dict(self.params),
                "checks": [c.to_dict() for c in self.checks],
                "overall": self.overall}

    def render(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.overall else 'FAIL'}"]
        for c in self.checks:
            wit = ", ".join(f"{w:.6g}" for w in c.witnesses)
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}"
                         + (f"  ({wit})" if wit else ""))
        return "\n".join(lines)


def _params(r, p=None, q=None, samples=None, seed=None, encoding=None) -> dict:
    return {"r": r, "p": p, "q": q, "samples": samples, "seed": seed, "encoding": encoding}


def sample_decompositions(base: PureStateEnsemble, samples: int, seed: int,
                          max_extra: int = 4):
    """Yield ``(ensemble, support_state)`` per sample; sample i uses seed+i.

    Each ensemble is ``base`` padded with 0..max_extra zero-weight elements
    and mixed by a Haar unitary, so it ranges over decompositions with up to
    ``len(base) + max_extra`` elements.
    """
    for i in range(samples):
        s = seed + i
        k = len(base) + int(rng_for(s).integers(0, max_extra + 1))
        ens = mix_ensemble(base.padded(k), random_unitary(k, s))
        yield ens, random_support_state(base, s)


def _validate_run(r, samples):
    r = _check_r(r)
    if int(samples) != samples or samples < 1:
        raise InputError(f"samples must be a positive integer, got {samples}")
    return r, int(samples)


def verify_theorem1(r: int = 4, p: float = 0.5, samples: int = 200, seed: int = 42,
                    encoding: str = "corrected", tol: float = REPORT_TOL) -> VerificationReport:
    """Every decomposition element of rho converts to phi by LOCC, yet the
    dimension condition for converting rho itself fails."""
    r, samples = _validate_run(r, samples)
    p = _check_weight(p, "p")
    report = VerificationReport("Theorem 1", _params(r, p, None, samples, seed, encoding))
    ch = make_appendix_channel(r, encoding)
    rho = make_mixed("rho", r, p)
    phi = make_state("phi", r)
    lam_phi = schmidt_vector(phi)
    d = LabelMap(r).dim_rho

    report.add("separable channel is trace preserving (Kraus completeness defect)",
               ch.trace_preserving, [ch.defect])

    out = apply_kraus(ch, rho)
    fid = fidelity_pure(out, phi)
    dist = float(np.linalg.norm(out - phi.projector()))
    report.add("separable channel maps rho to |phi><phi| (fidelity, Frobenius distance)",
               dist <= tol and fid >= 1 - tol, [fid, dist])

    base = spectral_ensemble(rho)
    target = vidal_profile(lam_phi)
    checked, min_rank, worst = 0, d, np.inf
    for ens, support in sample_decompositions(base, samples, seed):
        for state in (*ens.states, support):
            lam = schmidt_vector(state)
            min_rank = min(min_rank, int(np.count_nonzero(lam > 1e-10)))
            worst = min(worst, float(np.min(vidal_profile(lam) - target)))
            checked += 1
    report.add(f"sampled decomposition elements and support states convert to phi "
               f"and have Schmidt rank >= {r} (count, min rank, min E_l margin)",
               worst >= -tol and min_rank >= r, [checked, min_rank, worst])

    report.add(f"dimension condition for LOCC rho -> phi fails ({d}x{d}, rank {r})",
               not lemma1_dimension_check(d, d, r), [d, d, r])

    prop = proportionality_matrix(ch, base.states, phi, tol)
    gram = prop.coefficients.conj() @ prop.coefficients.T
    gram_defect = float(np.max(np.abs(gram - np.eye(len(base)))))
    report.add("branches proportional to phi with orthonormal coefficient rows "
               "on the eigen-ensemble (max residual, Gram defect)",
               prop.proportional and coefficient_orthonormality(prop.coefficients, tol),
               [prop.max_residual, gram_defect])
    return report


def verify_theorem2(r: int = 4, p: float = 0.5, q: float = 0.5, samples: int = 200,
                    seed: int = 7, tol: float = REPORT_TOL) -> VerificationReport:
    """Ensemble averages of every E_l dominate those of sigma, while the
    dimension condition for LOCC from rho fails."""
    r, samples = _validate_run(r, samples)
    p = _check_weight(p, "p")
    q = _check_weight(q, "q")
    report = VerificationReport("Theorem 2", _params(r, p, q, samples, seed))
    labels = LabelMap(r)
    n = labels.dim_sigma
    phi = make_state("phi", r)
    phi_r = make_state("phi_r", r)
    lam_phi = pad_front(schmidt_vector(phi), n)
    target = vidal_profile(lam_phi)
    e_phi = monotone_value(ENTROPY, phi)

    base = defining_ensemble("rho", r, p)
    ensembles = [base] + [e for e, _ in sample_decompositions(spectral_ensemble(make_mixed("rho", r, p)),
                                                              samples, seed)]
    worst, all_convert, worst_entropy = np.inf, True, np.inf
    for ens in ensembles:
        worst = min(worst, float(np.min(ensemble_vidal_profile(ens, n) - target)))
        worst_entropy = min(worst_entropy, ensemble_monotone(ENTROPY, ens) - e_phi)
        for s in ens.states:
            lam = pad_front(schmidt_vector(s), n)
            all_convert &= bool(np.all(vidal_profile(lam) >= target - tol))
    report.add("ensemble averages sum_i q_i E_l(e_i) >= E_l(phi) for all l "
               "(ensembles, min margin)", worst >= -tol, [len(ensembles), worst])

    lam_r = pad_front(schmidt_vector(phi_r), n)
    diff = float(np.max(np.abs(vidal_profile(lam_r) - target)))
    sigma_ens = defining_ensemble("sigma", r, q)
    make_mixed("sigma", r, q)  # sigma must be a valid state
    sigma_diff = float(np.max(np.abs(ensemble_vidal_profile(sigma_ens, n) - target)))
    report.add("E_l(phi) = E_l(phi_r) for all l, so sigma's defining ensemble "
               "averages to E_l(phi) (max deviations)",
               diff <= 1e-12 and sigma_diff <= 1e-12, [diff, sigma_diff])

    d = labels.dim_rho
    report.add(f"dimension condition for LOCC rho -> phi fails ({d}x{d}, rank {r})",
               not lemma1_dimension_check(d, d, r), [d, d, r])

    report.add("every sampled element converts to phi by Nielsen's criterion, so each "
               "pure-state monotone satisfies the inequality (entropy margin)",
               all_convert and worst_entropy >= -tol, [worst_entropy])
    return report


GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


def verify_theorem3(r: int = 4, tol: float = REPORT_TOL) -> VerificationReport:
    """Ensemble-average monotone inequalities hold between the two
    two-element ensembles although the implied mixed-state LOCC map cannot
    exist."""
    r = _check_r(r)
    report = VerificationReport("Theorem 3", _params(r))
    labels = LabelMap(r)
    n = labels.dim_sigma
    sources = [make_state("phi1", r), make_state("phi2", r)]
    targets = [make_state("phi", r), make_state("phi_r", r)]
    src = [vidal_profile(pad_front(schmidt_vector(s), n)) for s in sources]
    tgt = [vidal_profile(pad_front(schmidt_vector(t), n)) for t in targets]

    margins = [float(np.min(a - b)) for a in src for b in tgt]
    convertible = all(nielsen_convertible(a, b, tol) for a in sources for b in targets)
    report.add("phi_i -> psi_j convertible by Nielsen's criterion for all four pairs "
               "(min E_l margins)", convertible and min(margins) >= -tol, margins)

    worst = np.inf
    for p in GRID:
        for q in GRID:
            lhs = p * src[0] + (1 - p) * src[1]
            rhs = q * tgt[0] + (1 - q) * tgt[1]
            worst = min(worst, float(np.min(lhs - rhs)))
    report.add("sum_j p_j E_l(phi_j) >= sum_l q_l E_l(psi_l) on the (p, q) grid "
               "{0, .25, .5, .75, 1}^2 (min margin)", worst >= -tol, [worst])

    d = labels.dim_rho
    report.add(f"dimension condition for the implied LOCC rho -> sigma fails "
               f"({d}x{d}, rank {r})", not lemma1_dimension_check(d, d, r), [d, d, r])
    return report


def reproduce(r: int = 4, p: float = 0.5, q: float = 0.5, samples: int = 200,
              seed: int = 42, encoding: str = "corrected") -> list[VerificationReport]:
    """All three verifications with shared parameters."""
    return [
        verify_theorem1(r, p, samples, seed, encoding),
        verify_theorem2(r, p, q, samples, seed),
        verify_theorem3(r),
    ]
