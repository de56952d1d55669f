"""Entropic and correlation quantities, all in bits (base-2 logarithms).

Core quantities on a bipartite state rho^AB:

    S(rho)            von Neumann entropy of the eigenvalue spectrum
    S(A|B)            S(rho^AB) - S(rho^B), may be negative
    I(A;B)            S(rho^A) + S(rho^B) - S(rho^AB)
    I(P;B)            Holevo quantity S(rho^B) - sum_i p_i S(rho^B_i) of the
                      ensemble a measurement P on A prepares for B
    delta             I(A;B) - I(X;B) - I(Z;B), the Holevo correction that
                      tightens the memory-assisted uncertainty bound
    J_A               classical correlation: max_P I(P;B) over measurements
                      on A
    D_A               quantum discord I(A;B) - J_A

The classical-correlation optimizer searches rank-1 projective qubit
measurements parameterized by a Bloch direction (a coarse hemisphere grid
followed by derivative-free pattern-search refinement).  It therefore
reports a projective optimum; it does not claim optimality over general
POVMs, although for the named state families the two coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .matops import PAULIS
from .measure import (
    ZERO_PROB,
    ProjectiveObservable,
    bloch_vector,
    outcome_ensemble,
)
from .states import DensityMatrix

__all__ = [
    "shannon_entropy",
    "binary_entropy",
    "von_neumann_entropy",
    "conditional_entropy",
    "mutual_information",
    "holevo",
    "delta",
    "delta_floor",
    "OptimizerConfig",
    "CorrelationReport",
    "classical_correlation",
]

PROB_SUM_ATOL = 1e-9
# Objective gains below this are treated as noise by the pattern search.
IMPROVE_ATOL = 1e-9
_MAX_REFINE_STEPS = 10_000


def _xlog2x(x):
    """x * log2(x) elementwise with the 0 * log 0 = 0 convention."""
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0.0, x, 1.0)
    return np.where(x > 0.0, x * np.log2(safe), 0.0)


def shannon_entropy(probs) -> float:
    """H(p) = -sum_k p_k log2 p_k for a probability vector."""
    p = np.asarray(probs, dtype=float).reshape(-1)
    if np.any(p < -1e-12):
        raise ValueError(f"negative probability in {p!r}")
    total = float(p.sum())
    if abs(total - 1.0) > PROB_SUM_ATOL:
        raise ValueError(f"probabilities must sum to 1 within {PROB_SUM_ATOL:.0e}, got {total!r}")
    return float(-np.sum(_xlog2x(np.clip(p, 0.0, 1.0))))


def binary_entropy(x) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x), with x clamped to [0, 1]."""
    x = float(x)
    if x < -1e-12 or x > 1.0 + 1e-12:
        raise ValueError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    return float(-(_xlog2x(x) + _xlog2x(1.0 - x)))


def _spectrum(state) -> np.ndarray:
    mat = state.mat if isinstance(state, DensityMatrix) else np.asarray(state, dtype=complex)
    return np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))


def von_neumann_entropy(state) -> float:
    """S(rho) = -tr rho log2 rho of a density matrix (or PSD unit-trace array).

    Eigenvalues are clipped to [0, 1] before the entropy sum so that
    machine-precision negativity cannot poison the logarithms.
    """
    w = _spectrum(state)
    total = float(w.sum())
    if abs(total - 1.0) > PROB_SUM_ATOL:
        raise ValueError(f"state trace must be 1 within {PROB_SUM_ATOL:.0e}, got {total!r}")
    if float(w.min()) < -1e-8:
        raise ValueError(f"state has a significantly negative eigenvalue: {float(w.min())!r}")
    return float(-np.sum(_xlog2x(np.clip(w, 0.0, 1.0))))


def conditional_entropy(rho: DensityMatrix) -> float:
    """S(A|B) = S(rho^AB) - S(rho^B); negative values certify entanglement."""
    return von_neumann_entropy(rho) - von_neumann_entropy(rho.reduced_b())


def mutual_information(rho: DensityMatrix) -> float:
    """I(A;B) = S(rho^A) + S(rho^B) - S(rho^AB)."""
    return (
        von_neumann_entropy(rho.reduced_a())
        + von_neumann_entropy(rho.reduced_b())
        - von_neumann_entropy(rho)
    )


def _ensemble_conditional_entropy(ensemble) -> float:
    """sum_i p_i S(rho^B_i), skipping outcomes below the zero-probability cut."""
    acc = 0.0
    for p, state, ok in zip(ensemble.probs, ensemble.cond_states, ensemble.effective):
        if ok:
            acc += float(p) * von_neumann_entropy(state / np.trace(state).real)
    return acc


def holevo(rho: DensityMatrix, obs: ProjectiveObservable) -> float:
    """Holevo quantity I(P;B) = S(rho^B) - sum_i p_i S(rho^B_i).

    Upper bound on the information about the measurement outcome that is
    accessible from system B; it satisfies
    0 <= I(P;B) <= min(H(outcomes), S(rho^B)).
    """
    ensemble = outcome_ensemble(rho, obs)
    return von_neumann_entropy(rho.reduced_b()) - _ensemble_conditional_entropy(ensemble)


def delta(rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable) -> float:
    """Holevo correction delta = I(A;B) - [I(X;B) + I(Z;B)]; may be negative."""
    if x.d != z.d:
        raise ValueError(f"observables have different dimensions: {x.d} vs {z.d}")
    return mutual_information(rho) - holevo(rho, x) - holevo(rho, z)


def delta_floor(rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable) -> float:
    """log2(dA) + S(rho^A) - H(X) - H(Z), a lower bound on delta for
    complementary observables.

    It vanishes (guaranteeing delta >= 0) when subsystem A is maximally
    mixed, and when one observable leaves A undisturbed while the other is
    unbiased on it.
    """
    hx = shannon_entropy(outcome_ensemble(rho, x).probs)
    hz = shannon_entropy(outcome_ensemble(rho, z).probs)
    return float(np.log2(rho.dA)) + von_neumann_entropy(rho.reduced_a()) - hx - hz


# ---------------------------------------------------------------------------
# Classical correlation via Bloch-sphere optimization (qubit A only)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OptimizerConfig:
    """Grid resolution and refinement threshold for the J_A search."""

    grid_theta: int = 60
    grid_phi: int = 120
    refine_tol: float = 1e-6

    def __post_init__(self):
        if self.grid_theta < 2 or self.grid_phi < 4:
            raise ValueError("optimizer grid must have grid_theta >= 2 and grid_phi >= 4")
        if not self.refine_tol > 0.0:
            raise ValueError("refine_tol must be positive")


@dataclass(frozen=True)
class CorrelationReport:
    """Classical correlation J_A, discord D_A and the optimizer trace.

    The optimum is over rank-1 projective measurements only (Bloch
    directions); ``search_space`` records that caveat.
    """

    classical_correlation: float
    discord: float
    optimal_direction: np.ndarray
    grid_best: float
    refined_best: float
    iterations: int
    search_space: str = "rank-1 projective (Bloch sphere)"

    def to_dict(self) -> dict:
        return {
            "classical_correlation": self.classical_correlation,
            "discord": self.discord,
            "optimal_direction": [float(v) for v in self.optimal_direction],
            "grid_best": self.grid_best,
            "refined_best": self.refined_best,
            "iterations": self.iterations,
            "search_space": self.search_space,
        }


def _bloch_transfer(rho: DensityMatrix):
    """Precompute rho^B and T_i = Tr_A[(sigma_i (x) I) rho] for fast sweeps.

    For the projectors (I +- n.sigma)/2 the unnormalized conditional states
    are (rho^B +- sum_i n_i T_i)/2, which turns each Holevo evaluation into
    two small eigenvalue problems.
    """
    dB = rho.dB
    r4 = rho.mat.reshape(2, dB, 2, dB)
    rho_b = np.trace(r4, axis1=0, axis2=2)
    transfer = np.stack([np.einsum("pq,qjpk->jk", sigma, r4) for sigma in PAULIS])
    return rho_b, transfer


def _eigvalsh_batch(mats: np.ndarray) -> np.ndarray:
    """Eigenvalues of a stack of Hermitian matrices (closed form for 2x2)."""
    if mats.shape[-1] == 2:
        a = mats[..., 0, 0].real
        d = mats[..., 1, 1].real
        half_gap = np.hypot(0.5 * (a - d), np.abs(mats[..., 0, 1]))
        mean = 0.5 * (a + d)
        return np.stack([mean - half_gap, mean + half_gap], axis=-1)
    return np.linalg.eigvalsh(mats)


def _holevo_directions(rho_b, transfer, s_b, directions) -> np.ndarray:
    """I(P_n;B) for a batch of Bloch directions, shape (G, 3) -> (G,)."""
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    w = np.einsum("gi,ijk->gjk", dirs, transfer)
    omegas = np.concatenate([(rho_b[None] + w) * 0.5, (rho_b[None] - w) * 0.5])
    eigs = np.clip(_eigvalsh_batch(omegas), 0.0, None)
    probs = eigs.sum(axis=-1)
    # p_i * S(omega_i / p_i) = p_i log2 p_i - sum_j mu_j log2 mu_j
    cond = _xlog2x(probs) - _xlog2x(eigs).sum(axis=-1)
    cond = np.where(probs < ZERO_PROB, 0.0, cond)
    g = dirs.shape[0]
    return s_b - (cond[:g] + cond[g:])


@lru_cache(maxsize=8)
def _hemisphere_grid(grid_theta: int, grid_phi: int):
    thetas = np.linspace(0.0, np.pi / 2.0, grid_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, grid_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    angles = np.column_stack([tt.ravel(), pp.ravel()])
    st = np.sin(angles[:, 0])
    dirs = np.column_stack(
        [st * np.cos(angles[:, 1]), st * np.sin(angles[:, 1]), np.cos(angles[:, 0])]
    )
    return angles, dirs


_AXIS_EPS = 1e-12


def _canonical_direction(n: np.ndarray) -> np.ndarray:
    """Pick the representative of {n, -n} in the upper closed hemisphere."""
    n = n / np.linalg.norm(n)
    if n[2] < -_AXIS_EPS:
        return -n
    if abs(n[2]) <= _AXIS_EPS:
        if n[0] < -_AXIS_EPS:
            return -n
        if abs(n[0]) <= _AXIS_EPS and n[1] < 0.0:
            return -n
    return n


def classical_correlation(
    rho: DensityMatrix, config: OptimizerConfig | None = None
) -> CorrelationReport:
    """Maximize the Holevo quantity over projective qubit measurements on A.

    A coarse grid over the upper hemisphere (directions n and -n induce the
    same two-outcome measurement) seeds a compass pattern search on
    (theta, phi) whose step halves until it drops below ``refine_tol``.
    Grid ties resolve to the lowest (theta, phi) index, so the result is
    deterministic.  Returns J_A, the discord D_A = I(A;B) - J_A, and the
    optimizing direction.
    """
    if rho.dA != 2:
        raise ValueError(f"classical_correlation supports dA = 2 only, got dA = {rho.dA}")
    cfg = config or OptimizerConfig()

    rho_b, transfer = _bloch_transfer(rho)
    s_b = von_neumann_entropy(rho_b)

    angles, dirs = _hemisphere_grid(cfg.grid_theta, cfg.grid_phi)
    values = _holevo_directions(rho_b, transfer, s_b, dirs)
    best = int(np.argmax(values))
    grid_best = float(values[best])
    theta, phi = (float(a) for a in angles[best])

    step_theta = (np.pi / 2.0) / (cfg.grid_theta - 1)
    step_phi = (2.0 * np.pi) / cfg.grid_phi
    f_cur = grid_best
    iterations = 0
    while max(step_theta, step_phi) >= cfg.refine_tol and iterations < _MAX_REFINE_STEPS:
        candidates = np.array(
            [
                [theta + step_theta, phi],
                [theta - step_theta, phi],
                [theta, phi + step_phi],
                [theta, phi - step_phi],
            ]
        )
        st = np.sin(candidates[:, 0])
        cand_dirs = np.column_stack(
            [st * np.cos(candidates[:, 1]), st * np.sin(candidates[:, 1]), np.cos(candidates[:, 0])]
        )
        cand_vals = _holevo_directions(rho_b, transfer, s_b, cand_dirs)
        k = int(np.argmax(cand_vals))
        iterations += 1
        if float(cand_vals[k]) > f_cur + IMPROVE_ATOL:
            theta, phi = (float(a) for a in candidates[k])
            f_cur = float(cand_vals[k])
        else:
            step_theta *= 0.5
            step_phi *= 0.5

    j_a = max(f_cur, 0.0)
    direction = _canonical_direction(bloch_vector(theta, phi))
    return CorrelationReport(
        classical_correlation=j_a,
        discord=mutual_information(rho) - j_a,
        optimal_direction=direction,
        grid_best=grid_best,
        refined_best=f_cur,
        iterations=iterations,
    )
