"""Projective observables on subsystem A and the objects they induce.

An observable is an orthonormal measurement basis {|x_i>}.  Measuring it on
rho^AB produces outcome probabilities p_i = tr[(|x_i><x_i| (x) I) rho] and
leaves Bob with conditional states

    rho^B_i = Tr_A[(|x_i><x_i| (x) I) rho (|x_i><x_i| (x) I)] / p_i.

Incompatibility of two observables is measured through the overlap matrix
c_ij = |<x_i|z_j>|^2: q_mu = log2(1/c) with c = max_ij c_ij, and the
refinement q' adds a term driven by the second-largest entry c_2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matops import partial_trace, projector, tensor
from .states import DensityMatrix

__all__ = [
    "ORTHO_ATOL",
    "UNIT_ATOL",
    "ZERO_PROB",
    "ProjectiveObservable",
    "observable_from_basis",
    "observable_from_bloch",
    "pauli_observable",
    "observable_from_spec",
    "bloch_vector",
    "overlap_matrix",
    "q_mu",
    "q_prime",
    "MeasurementEnsemble",
    "post_measurement_state",
    "outcome_ensemble",
]

ORTHO_ATOL = 1e-10
UNIT_ATOL = 1e-12
# Outcomes below this probability carry a maximally mixed placeholder state
# and contribute nothing to entropy averages (0 * log 0 = 0).
ZERO_PROB = 1e-14


@dataclass(frozen=True, eq=False)
class ProjectiveObservable:
    """An orthonormal measurement basis; column i of ``basis`` is |x_i>."""

    basis: np.ndarray
    name: str | None = None

    def __post_init__(self):
        basis = np.array(self.basis, dtype=complex)
        if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
            raise ValueError("observable basis must be a square matrix of column vectors")
        gram = basis.conj().T @ basis
        defect = float(np.max(np.abs(gram - np.eye(basis.shape[0]))))
        if defect > ORTHO_ATOL:
            raise ValueError(
                f"basis is not orthonormal: max |Gram - I| = {defect:.3e} > {ORTHO_ATOL:.0e}"
            )
        object.__setattr__(self, "basis", basis)

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    def ket(self, i: int) -> np.ndarray:
        return self.basis[:, i]

    def projector(self, i: int) -> np.ndarray:
        return projector(self.basis[:, i])

    def label(self) -> str:
        return self.name if self.name is not None else "custom"


def observable_from_basis(columns, name: str | None = None) -> ProjectiveObservable:
    return ProjectiveObservable(np.asarray(columns, dtype=complex), name)


def bloch_vector(theta: float, phi: float) -> np.ndarray:
    """Unit vector at polar angle theta from +z and azimuth phi."""
    st = np.sin(theta)
    return np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def observable_from_bloch(n) -> ProjectiveObservable:
    """Two-outcome qubit observable with projectors (I +- n.sigma)/2.

    ``n`` must be a unit 3-vector (within 1e-12).  The returned basis kets
    are the +n and -n eigenvectors of n.sigma.
    """
    n = np.asarray(n, dtype=float).reshape(-1)
    if n.size != 3:
        raise ValueError("Bloch direction must be a 3-vector")
    norm = float(np.linalg.norm(n))
    if abs(norm - 1.0) > UNIT_ATOL:
        raise ValueError(f"Bloch direction must be a unit vector, |n| = {norm!r}")
    theta = np.arccos(np.clip(n[2], -1.0, 1.0))
    phi = np.arctan2(n[1], n[0])
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    plus = np.array([c, np.exp(1j * phi) * s])
    minus = np.array([s, -np.exp(1j * phi) * c])
    return ProjectiveObservable(
        np.column_stack([plus, minus]),
        name=f"bloch({n[0]:.6g},{n[1]:.6g},{n[2]:.6g})",
    )


_PAULI_BASES = {
    "x": np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0),
    "y": np.array([[1.0, 1.0], [1.0j, -1.0j]], dtype=complex) / np.sqrt(2.0),
    "z": np.eye(2, dtype=complex),
}


def pauli_observable(axis: str) -> ProjectiveObservable:
    """Eigenbasis of sigma_x, sigma_y or sigma_z (axis in {"x","y","z"})."""
    key = axis.lower().removeprefix("sigma_")
    if key not in _PAULI_BASES:
        raise ValueError(f"unknown Pauli axis {axis!r}")
    return ProjectiveObservable(_PAULI_BASES[key], name=f"sigma_{key}")


def observable_from_spec(doc) -> ProjectiveObservable:
    """Build an observable from its JSON specification.

    Accepted forms::

        {"named": "sigma_x"}            (sigma_x | sigma_y | sigma_z)
        {"bloch": [nx, ny, nz]}
        {"basis": {"re": [[...], ...], "im": [[...], ...]}}

    In the "basis" form the columns of re + i*im are the basis kets.
    A bare string is treated as the "named" form.
    """
    if isinstance(doc, str):
        return pauli_observable(doc)
    if not isinstance(doc, dict):
        raise ValueError("observable specification must be a JSON object or a name")
    if "named" in doc:
        return pauli_observable(doc["named"])
    if "bloch" in doc:
        return observable_from_bloch(doc["bloch"])
    if "basis" in doc:
        entry = doc["basis"]
        re = np.asarray(entry["re"], dtype=float)
        im = np.asarray(entry.get("im", np.zeros_like(re)), dtype=float)
        if re.shape != im.shape:
            raise ValueError("observable basis 're' and 'im' parts have different shapes")
        return observable_from_basis(re + 1j * im)
    raise ValueError("observable specification needs a 'named', 'bloch' or 'basis' entry")


def _require_same_dim(x: ProjectiveObservable, z: ProjectiveObservable):
    if x.d != z.d:
        raise ValueError(f"observables have different dimensions: {x.d} vs {z.d}")


def overlap_matrix(x: ProjectiveObservable, z: ProjectiveObservable) -> np.ndarray:
    """c_ij = |<x_i|z_j>|^2, a doubly stochastic real matrix."""
    _require_same_dim(x, z)
    return np.abs(x.basis.conj().T @ z.basis) ** 2


def q_mu(x: ProjectiveObservable, z: ProjectiveObservable) -> float:
    """Incompatibility log2(1/c) with c the largest squared basis overlap."""
    c = float(np.max(overlap_matrix(x, z)))
    return float(np.log2(1.0 / c))


def _q_prime_from_overlaps(c_matrix: np.ndarray) -> float:
    ordered = np.sort(np.asarray(c_matrix, dtype=float).reshape(-1))[::-1]
    c, c2 = float(ordered[0]), float(ordered[1])
    return float(np.log2(1.0 / c) + 0.5 * (1.0 - np.sqrt(c)) * np.log2(c / c2))


def q_prime(x: ProjectiveObservable, z: ProjectiveObservable) -> float:
    """Refined incompatibility q' = q_mu + (1 - sqrt(c))/2 * log2(c/c2).

    c2 is the second-largest entry of the overlap matrix counted with
    multiplicity, so q' = q_mu whenever the maximum is attained twice.
    For qubit observables c = c2 and q' reduces to q_mu.
    """
    return _q_prime_from_overlaps(overlap_matrix(x, z))


@dataclass(frozen=True)
class MeasurementEnsemble:
    """Outcome probabilities and Bob's conditional states for one observable.

    ``effective[i]`` is False for outcomes with probability below
    ``ZERO_PROB``; those carry a maximally mixed placeholder state and are
    excluded from averages.
    """

    probs: np.ndarray
    cond_states: tuple[np.ndarray, ...]
    effective: tuple[bool, ...]


def post_measurement_state(rho: DensityMatrix, obs: ProjectiveObservable) -> DensityMatrix:
    """The classical-quantum state sum_i (P_i (x) I) rho (P_i (x) I).

    Block-diagonal in the measured basis; applying the same measurement
    twice is idempotent.
    """
    if obs.d != rho.dA:
        raise ValueError(f"observable dimension {obs.d} does not match dA = {rho.dA}")
    idB = np.eye(rho.dB, dtype=complex)
    out = np.zeros_like(rho.mat)
    for i in range(obs.d):
        pi = tensor(obs.projector(i), idB)
        out += pi @ rho.mat @ pi
    return DensityMatrix(out, rho.dA, rho.dB)


def outcome_ensemble(rho: DensityMatrix, obs: ProjectiveObservable) -> MeasurementEnsemble:
    """Measurement statistics of ``obs`` on subsystem A of ``rho``."""
    if obs.d != rho.dA:
        raise ValueError(f"observable dimension {obs.d} does not match dA = {rho.dA}")
    idB = np.eye(rho.dB, dtype=complex)
    probs = np.empty(obs.d)
    cond = []
    effective = []
    for i in range(obs.d):
        pi = tensor(obs.projector(i), idB)
        sandwiched = pi @ rho.mat @ pi
        p = float(np.real(np.trace(sandwiched)))
        p = max(p, 0.0)
        probs[i] = p
        if p < ZERO_PROB:
            cond.append(np.eye(rho.dB, dtype=complex) / rho.dB)
            effective.append(False)
        else:
            cond.append(partial_trace(sandwiched, (rho.dA, rho.dB), "B") / p)
            effective.append(True)
    return MeasurementEnsemble(probs, tuple(cond), tuple(effective))
