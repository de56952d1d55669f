"""Bipartite density matrices and the named two-qubit state families.

A :class:`DensityMatrix` is validated at construction: Hermitian within
1e-10, unit trace within 1e-10, and positive semidefinite with eigenvalues
no lower than -1e-10.  Bell-state conventions are fixed as

    |Psi+-> = (|01> +- |10>) / sqrt(2),   |Phi+-> = (|00> +- |11>) / sqrt(2).

Families
--------
pure_schmidt(lam)          sum_i sqrt(lam_i) |ii>, Schmidt vectors in the
                           computational basis
werner(p)                  (1-p)/4 * I4 + p |Psi-><Psi-|
bell_diagonal(r)           (I (x) I + sum_i r_i sigma_i (x) sigma_i) / 4
bell_diagonal_special(p)   Bell-diagonal with r = (1-2p, -p, -p), i.e.
                           p |Psi-><Psi-| + (1-p)/2 (|Psi+><Psi+| + |Phi+><Phi+|)
x_state_special(p)         p |Psi+><Psi+| + (1-p) |11><11|
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matops import (
    HERM_ATOL,
    PAULIS,
    basis_ket,
    herm_eigensystem,
    hermiticity_defect,
    partial_trace,
    projector,
    tensor,
)

__all__ = [
    "TRACE_ATOL",
    "PSD_ATOL",
    "KET_PSI_PLUS",
    "KET_PSI_MINUS",
    "KET_PHI_PLUS",
    "KET_PHI_MINUS",
    "StateValidationError",
    "InvariantCheck",
    "ValidationReport",
    "validate",
    "DensityMatrix",
    "pure_state",
    "pure_schmidt",
    "werner",
    "bell_diagonal",
    "bell_diagonal_special",
    "x_state_special",
    "from_spec",
    "to_spec",
]

TRACE_ATOL = 1e-10
PSD_ATOL = 1e-10
SCHMIDT_SUM_ATOL = 1e-12

_SQ2 = 1.0 / np.sqrt(2.0)

# Bell kets in the fixed |00>,|01>,|10>,|11> ordering.
KET_PSI_PLUS = _SQ2 * np.array([0.0, 1.0, 1.0, 0.0], dtype=complex)
KET_PSI_MINUS = _SQ2 * np.array([0.0, 1.0, -1.0, 0.0], dtype=complex)
KET_PHI_PLUS = _SQ2 * np.array([1.0, 0.0, 0.0, 1.0], dtype=complex)
KET_PHI_MINUS = _SQ2 * np.array([1.0, 0.0, 0.0, -1.0], dtype=complex)


class StateValidationError(ValueError):
    """A density-matrix invariant failed; names the violated invariant."""

    def __init__(self, invariant: str, residual: float, message: str):
        super().__init__(message)
        self.invariant = invariant
        self.residual = residual


@dataclass(frozen=True)
class InvariantCheck:
    name: str
    passed: bool
    residual: float
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[InvariantCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> InvariantCheck | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def validate(mat, dA: int, dB: int) -> ValidationReport:
    """Check the density-matrix invariants of a raw matrix.

    Reports pass/fail and the measured residual for each invariant
    (shape, Hermiticity, unit trace, positive semidefiniteness).  Never
    raises on a bad state; construction raises, this reports.
    """
    mat = np.asarray(mat, dtype=complex)
    checks = []

    square = mat.ndim == 2 and mat.shape[0] == mat.shape[1]
    dim_ok = square and mat.shape[0] == dA * dB
    shape_residual = 0.0 if dim_ok else float(abs((mat.shape[0] if square else -1) - dA * dB))
    checks.append(InvariantCheck("shape", dim_ok, shape_residual, 0.0))
    if not dim_ok:
        return ValidationReport(tuple(checks))

    herm_res = hermiticity_defect(mat)
    checks.append(InvariantCheck("hermitian", herm_res <= HERM_ATOL, herm_res, HERM_ATOL))

    trace_res = abs(complex(np.trace(mat)) - 1.0)
    checks.append(InvariantCheck("trace", trace_res <= TRACE_ATOL, trace_res, TRACE_ATOL))

    if herm_res <= HERM_ATOL:
        w, _ = herm_eigensystem(mat)
        min_eig = float(w[-1])
        psd_res = max(0.0, -min_eig)
    else:
        # Eigenvalues of the symmetrized part still diagnose gross PSD failure.
        w = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
        psd_res = max(0.0, -float(w[0]))
    checks.append(InvariantCheck("psd", psd_res <= PSD_ATOL, psd_res, PSD_ATOL))

    return ValidationReport(tuple(checks))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated bipartite state rho^AB with subsystem dimensions (dA, dB)."""

    mat: np.ndarray
    dA: int
    dB: int

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        object.__setattr__(self, "mat", mat)
        report = validate(mat, self.dA, self.dB)
        failure = report.first_failure()
        if failure is not None:
            raise StateValidationError(
                failure.name,
                failure.residual,
                f"invalid density matrix: invariant '{failure.name}' violated "
                f"(residual {failure.residual:.3e}, tolerance {failure.tolerance:.0e})",
            )

    @property
    def dim(self) -> int:
        return self.dA * self.dB

    def reduced_a(self) -> np.ndarray:
        """Tr_B rho^AB."""
        return partial_trace(self.mat, (self.dA, self.dB), "A")

    def reduced_b(self) -> np.ndarray:
        """Tr_A rho^AB."""
        return partial_trace(self.mat, (self.dA, self.dB), "B")

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))


def pure_state(vec, dA: int, dB: int) -> DensityMatrix:
    """|v><v| as a bipartite density matrix (vector is normalized first)."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise StateValidationError("trace", 1.0, "zero vector cannot be normalized")
    return DensityMatrix(projector(v / norm), dA, dB)


def pure_schmidt(lam) -> DensityMatrix:
    """Pure bipartite state sum_i sqrt(lam_i) |i>|i> with dA = dB = len(lam)."""
    lam = np.asarray(lam, dtype=float)
    if lam.ndim != 1 or lam.size < 2:
        raise ValueError("Schmidt coefficients must be a vector of length >= 2")
    if np.any(lam < -1e-12):
        raise StateValidationError(
            "schmidt_nonneg", float(-lam.min()), "Schmidt coefficients must be nonnegative"
        )
    s = float(lam.sum())
    if abs(s - 1.0) > SCHMIDT_SUM_ATOL:
        raise StateValidationError(
            "schmidt_sum",
            abs(s - 1.0),
            f"Schmidt coefficients must sum to 1 within {SCHMIDT_SUM_ATOL:.0e} (got {s!r})",
        )
    d = lam.size
    vec = np.zeros(d * d, dtype=complex)
    for i, li in enumerate(np.clip(lam, 0.0, None)):
        vec += np.sqrt(li) * np.kron(basis_ket(d, i), basis_ket(d, i))
    return DensityMatrix(projector(vec), d, d)


def _check_unit_interval(name: str, p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} parameter p must lie in [0, 1], got {p!r}")
    return p


def werner(p) -> DensityMatrix:
    """Two-qubit Werner state (1-p)/4 * I4 + p |Psi-><Psi-|, p in [0, 1]."""
    p = _check_unit_interval("werner", p)
    mat = (1.0 - p) / 4.0 * np.eye(4, dtype=complex) + p * projector(KET_PSI_MINUS)
    return DensityMatrix(mat, 2, 2)


def bell_diagonal(r) -> DensityMatrix:
    """Bell-diagonal state (I (x) I + sum_i r_i sigma_i (x) sigma_i) / 4.

    Valid correlation vectors r live in the tetrahedron with vertices
    (-1,-1,-1), (-1,1,1), (1,-1,1), (1,1,-1); outside it the matrix fails
    positivity and construction raises naming the violated invariant.
    """
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.size != 3:
        raise ValueError("bell_diagonal expects a 3-vector of correlations")
    mat = np.eye(4, dtype=complex)
    for ri, sigma in zip(r, PAULIS):
        mat += ri * tensor(sigma, sigma)
    mat /= 4.0
    try:
        return DensityMatrix(mat, 2, 2)
    except StateValidationError as exc:
        if exc.invariant == "psd":
            raise StateValidationError(
                "psd",
                exc.residual,
                f"correlation vector {tuple(r)} lies outside the Bell-diagonal "
                f"tetrahedron (negative eigenvalue, residual {exc.residual:.3e})",
            ) from None
        raise


def bell_diagonal_special(p) -> DensityMatrix:
    """One-parameter Bell-diagonal family p |Psi-><Psi-| + (1-p)/2 (|Psi+><Psi+| + |Phi+><Phi+|).

    Its correlation vector is r = (1-2p, -p, -p).
    """
    p = _check_unit_interval("bell_diagonal_special", p)
    mat = (
        p * projector(KET_PSI_MINUS)
        + (1.0 - p) / 2.0 * (projector(KET_PSI_PLUS) + projector(KET_PHI_PLUS))
    )
    return DensityMatrix(mat, 2, 2)


def x_state_special(p) -> DensityMatrix:
    """Two-qubit X-state family p |Psi+><Psi+| + (1-p) |11><11|, p in [0, 1]."""
    p = _check_unit_interval("x_state_special", p)
    mat = p * projector(KET_PSI_PLUS) + (1.0 - p) * projector(
        np.kron(basis_ket(2, 1), basis_ket(2, 1))
    )
    return DensityMatrix(mat, 2, 2)


_FAMILY_BUILDERS = {
    "werner": lambda params: werner(params["p"]),
    "bell_diagonal": lambda params: bell_diagonal(params["r"]),
    "bell_diagonal_special": lambda params: bell_diagonal_special(params["p"]),
    "xstate": lambda params: x_state_special(params["p"]),
    "pure_schmidt": lambda params: pure_schmidt(params["lambdas"]),
}


def parse_explicit(doc: dict) -> tuple[np.ndarray, int, int]:
    """Raw (matrix, dA, dB) from an {"explicit": ...} document, unvalidated."""
    try:
        dA = int(doc["dA"])
        dB = int(doc["dB"])
        re = np.asarray(doc["re"], dtype=float)
    except KeyError as exc:
        raise ValueError(f"explicit state document is missing field {exc}") from None
    im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise ValueError("explicit state 're' and 'im' parts have different shapes")
    return re + 1j * im, dA, dB


def from_spec(doc: dict) -> DensityMatrix:
    """Build a state from its JSON ingestion document.

    Accepted forms::

        {"family": {"name": "werner", "p": 0.5}}
        {"family": {"name": "bell_diagonal", "r": [0.5, -0.2, 0.1]}}
        {"family": {"name": "bell_diagonal_special", "p": 0.3}}
        {"family": {"name": "xstate", "p": 0.7}}
        {"family": {"name": "pure_schmidt", "lambdas": [0.8, 0.2]}}
        {"explicit": {"dA": 2, "dB": 2, "re": [[...], ...], "im": [[...], ...]}}
    """
    if not isinstance(doc, dict):
        raise ValueError("state document must be a JSON object")
    if "family" in doc:
        family = doc["family"]
        if not isinstance(family, dict):
            raise ValueError("'family' entry must be an object with a 'name' field")
        name = family.get("name")
        builder = _FAMILY_BUILDERS.get(name)
        if builder is None:
            raise ValueError(
                f"unknown state family {name!r}; expected one of {sorted(_FAMILY_BUILDERS)}"
            )
        try:
            return builder(family)
        except KeyError as exc:
            raise ValueError(f"state family {name!r} is missing parameter {exc}") from None
    if "explicit" in doc:
        mat, dA, dB = parse_explicit(doc["explicit"])
        return DensityMatrix(mat, dA, dB)
    raise ValueError("state document must contain a 'family' or 'explicit' entry")


def to_spec(rho: DensityMatrix) -> dict:
    """Serialize a state to the explicit ingestion form (re/im parts)."""
    return {
        "explicit": {
            "dA": rho.dA,
            "dB": rho.dB,
            "re": rho.mat.real.tolist(),
            "im": rho.mat.imag.tolist(),
        }
    }


def maximally_mixed(dA: int = 2, dB: int = 2) -> DensityMatrix:
    """I / (dA*dB)."""
    d = dA * dB
    return DensityMatrix(np.eye(d, dtype=complex) / d, dA, dB)
