"""Application-layer bounds: entanglement witnessing, an entanglement-of-
formation lower bound, and a distillable-common-randomness upper bound.

The witness fires when the measured uncertainty S(X|B) + S(Z|B) drops below
the state-independent part of a bound, which forces S(A|B) < 0 and hence
entanglement.  The Holevo-corrected threshold q_mu + max{0, delta} dominates
the plain q_mu threshold, so anything the Berta witness catches this one
catches too.

Bob's guessing errors enter through the Fano term

    b_F = h(Pe_X) + Pe_X log2(d-1) + h(Pe_Z) + Pe_Z log2(d-1),

with Pe the Helstrom-optimal two-outcome discrimination error
(1 - ||p0 rho0 - p1 rho1||_1) / 2.  The two application bounds

    E_f  >= q_mu + max{0, delta} - b_F
    C_D  <= S(rho^B) + b_F - q_mu - max{0, delta}

are Koashi-Winter complements by construction: their sum is S(rho^B).
Both are evaluated on the given bipartite state; the tripartite purification
behind the common-randomness statement is not operationalized here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import actual_uncertainty
from .infoquant import binary_entropy, delta, von_neumann_entropy
from .measure import (
    MeasurementEnsemble,
    ProjectiveObservable,
    outcome_ensemble,
    q_mu,
)
from .states import DensityMatrix

__all__ = [
    "WITNESS_MARGIN",
    "WitnessVerdict",
    "FanoInputs",
    "witness",
    "helstrom_error",
    "fano_term",
    "eof_lower_bound",
    "common_randomness_upper_bound",
    "applications_report",
]

WITNESS_MARGIN = 1e-9


@dataclass(frozen=True)
class WitnessVerdict:
    """Entanglement flags and margins for the two witness thresholds.

    margin_* is threshold minus measured uncertainty; a flag is set when
    its margin exceeds WITNESS_MARGIN.  entangled_by_berta implies
    entangled_by_ours because the corrected threshold is never smaller.
    """

    entangled_by_berta: bool
    entangled_by_ours: bool
    margin_berta: float
    margin_ours: float

    def to_dict(self) -> dict:
        return {
            "entangled_by_berta": self.entangled_by_berta,
            "entangled_by_ours": self.entangled_by_ours,
            "margin_berta": self.margin_berta,
            "margin_ours": self.margin_ours,
        }


@dataclass(frozen=True)
class FanoInputs:
    """Guess-error probabilities for the X and Z measurements, outcome count d."""

    pe_x: float
    pe_z: float
    d: int

    def __post_init__(self):
        for label, value in (("pe_x", self.pe_x), ("pe_z", self.pe_z)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{label} must be a probability in [0, 1], got {value!r}")
        if self.d < 2:
            raise ValueError(f"outcome count d must be >= 2, got {self.d}")


def witness(
    rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable
) -> WitnessVerdict:
    """Flag entanglement when the measured uncertainty undercuts a threshold."""
    actual = actual_uncertainty(rho, x, z)
    qmu = q_mu(x, z)
    margin_berta = qmu - actual
    margin_ours = qmu + max(0.0, delta(rho, x, z)) - actual
    return WitnessVerdict(
        entangled_by_berta=margin_berta > WITNESS_MARGIN,
        entangled_by_ours=margin_ours > WITNESS_MARGIN,
        margin_berta=margin_berta,
        margin_ours=margin_ours,
    )


def helstrom_error(ensemble: MeasurementEnsemble) -> float:
    """Minimum error probability for discriminating a two-outcome ensemble.

    P_e = (1 - ||p0 rho0 - p1 rho1||_1) / 2 with the trace norm taken over
    Hermitian eigenvalues; always in [0, 1/2] and never worse than guessing
    the likelier outcome.
    """
    if len(ensemble.probs) != 2:
        raise ValueError(
            f"helstrom_error supports exactly 2 outcomes, got {len(ensemble.probs)}"
        )
    gap = ensemble.probs[0] * ensemble.cond_states[0] - ensemble.probs[1] * ensemble.cond_states[1]
    trace_norm = float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (gap + gap.conj().T)))))
    return float(min(max(0.5 * (1.0 - trace_norm), 0.0), 0.5))


def fano_term(f: FanoInputs) -> float:
    """b_F = h(Pe_X) + Pe_X log2(d-1) + h(Pe_Z) + Pe_Z log2(d-1)."""
    extra = float(np.log2(f.d - 1)) if f.d > 2 else 0.0
    return (
        binary_entropy(f.pe_x)
        + f.pe_x * extra
        + binary_entropy(f.pe_z)
        + f.pe_z * extra
    )


def _fano_inputs(
    rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable
) -> FanoInputs:
    return FanoInputs(
        pe_x=helstrom_error(outcome_ensemble(rho, x)),
        pe_z=helstrom_error(outcome_ensemble(rho, z)),
        d=x.d,
    )


def eof_lower_bound(
    rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable
) -> float:
    """Entanglement-of-formation lower bound q_mu + max{0, delta} - b_F.

    May be negative, in which case it is vacuous; the value is reported
    as-is (callers flag vacuousness), never clamped.
    """
    b_f = fano_term(_fano_inputs(rho, x, z))
    return q_mu(x, z) + max(0.0, delta(rho, x, z)) - b_f


def common_randomness_upper_bound(
    rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable
) -> float:
    """One-way distillable-common-randomness upper bound
    S(rho^B) + b_F - q_mu - max{0, delta}."""
    b_f = fano_term(_fano_inputs(rho, x, z))
    return (
        von_neumann_entropy(rho.reduced_b())
        + b_f
        - q_mu(x, z)
        - max(0.0, delta(rho, x, z))
    )


def applications_report(
    rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable
) -> dict:
    """Witness verdict plus both application bounds as one flat record."""
    verdict = witness(rho, x, z)
    eof = eof_lower_bound(rho, x, z)
    crand = common_randomness_upper_bound(rho, x, z)
    out = verdict.to_dict()
    out.update(
        {
            "eof_lower_bound": eof,
            "eof_vacuous": eof < 0.0,
            "crand_upper_bound": crand,
            "s_b": von_neumann_entropy(rho.reduced_b()),
        }
    )
    return out
