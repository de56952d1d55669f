"""Entropic uncertainty lower bounds in the presence of quantum memory.

For a bipartite state rho^AB and observables X, Z measured on A, the actual
uncertainty is S(X|B) + S(Z|B) with the conditional entropies taken on the
post-measurement (classical-quantum) states.  Five lower bounds are
computed:

    bound_mu            q_mu                      (Maassen-Uffink)
    bound_mu_mixed      q_mu + S(A)               (no-memory, mixed input)
    bound_berta         q_mu + S(A|B)             (memory-assisted)
    bound_coles_piani   q'   + S(A|B)             (second-overlap refinement)
    bound_pati          bound_berta + max{0, D_A - J_A}
    bound_ours          bound_berta + max{0, delta}

where delta = I(A;B) - I(X;B) - I(Z;B) is the Holevo correction.  The
Holevo-corrected bound dominates Berta's bound, dominates Pati's bound for
the Bell-diagonal construction with the optimal first observable, and is
exactly tight for states with maximally mixed A measured in complementary
bases, where the identity

    S(X|B) + S(Z|B) = H(X) + H(Z) - S(A) + S(A|B) + delta

holds with equality term by term.

Closed forms
------------
For the two one-parameter families (``bell_diagonal_special`` and
``xstate``) the bounds have closed forms used as independent oracles for
the generic pipeline.  For the Bell-diagonal family the observable labels
X, Y, Z refer to the Bloch axes ordered by decreasing |r_i| (ties keep the
x, y, z order): X attains the classical correlation, which is what makes
the Pati and Holevo-corrected curves coincide for the {X,Y} pair once the
top two |r_i| tie.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .infoquant import (
    CorrelationReport,
    binary_entropy,
    conditional_entropy,
    delta,
    holevo,
    mutual_information,
    von_neumann_entropy,
)
from .measure import (
    ProjectiveObservable,
    pauli_observable,
    post_measurement_state,
    q_mu,
    q_prime,
)
from .states import DensityMatrix

__all__ = [
    "BoundsReport",
    "actual_uncertainty",
    "bound_maassen_uffink",
    "bound_mu_mixed",
    "bound_berta",
    "bound_coles_piani",
    "bound_pati",
    "bound_ours",
    "bounds_report",
    "ClosedFormCurves",
    "closed_form_curves",
    "family_pair_observables",
]


@dataclass(frozen=True)
class BoundsReport:
    """All bounds and their ingredients for one (state, X, Z) triple.

    ``bound_pati`` and ``pati_correction`` are None unless a correlation
    report (the one expensive, optimizer-backed quantity) was supplied.
    """

    q_mu: float
    q_prime: float
    s_cond: float
    i_ab: float
    i_xb: float
    i_zb: float
    delta: float
    bound_mu: float
    bound_mu_mixed: float
    bound_berta: float
    bound_coles_piani: float
    bound_pati: float | None
    bound_ours: float
    actual: float
    pati_correction: float | None

    def to_dict(self) -> dict:
        return {
            "q_mu": self.q_mu,
            "q_prime": self.q_prime,
            "s_cond": self.s_cond,
            "i_ab": self.i_ab,
            "i_xb": self.i_xb,
            "i_zb": self.i_zb,
            "delta": self.delta,
            "bound_mu": self.bound_mu,
            "bound_mu_mixed": self.bound_mu_mixed,
            "bound_berta": self.bound_berta,
            "bound_coles_piani": self.bound_coles_piani,
            "bound_pati": self.bound_pati,
            "bound_ours": self.bound_ours,
            "actual": self.actual,
            "pati_correction": self.pati_correction,
        }


def actual_uncertainty(
    rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable
) -> float:
    """S(X|B) + S(Z|B) on the post-measurement states; each term is >= 0."""
    return conditional_entropy(post_measurement_state(rho, x)) + conditional_entropy(
        post_measurement_state(rho, z)
    )


def bound_maassen_uffink(x: ProjectiveObservable, z: ProjectiveObservable) -> float:
    """q_mu = log2(1/c), the state-independent incompatibility bound."""
    return q_mu(x, z)


def bound_mu_mixed(rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable) -> float:
    """q_mu + S(A): the no-memory bound strengthened for mixed inputs."""
    return q_mu(x, z) + von_neumann_entropy(rho.reduced_a())


def bound_berta(rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable) -> float:
    """q_mu + S(A|B): the memory-assisted bound."""
    return q_mu(x, z) + conditional_entropy(rho)


def bound_coles_piani(
    rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable
) -> float:
    """q' + S(A|B); equals the Berta bound whenever A is a qubit (c = c2)."""
    return q_prime(x, z) + conditional_entropy(rho)


def bound_pati(
    rho: DensityMatrix,
    x: ProjectiveObservable,
    z: ProjectiveObservable,
    corr: CorrelationReport,
) -> float:
    """Berta bound plus max{0, D_A - J_A} from a precomputed correlation report."""
    return bound_berta(rho, x, z) + max(0.0, corr.discord - corr.classical_correlation)


def bound_ours(rho: DensityMatrix, x: ProjectiveObservable, z: ProjectiveObservable) -> float:
    """Berta bound plus max{0, delta}: the Holevo-corrected bound."""
    return bound_berta(rho, x, z) + max(0.0, delta(rho, x, z))


def bounds_report(
    rho: DensityMatrix,
    x: ProjectiveObservable,
    z: ProjectiveObservable,
    corr: CorrelationReport | None = None,
) -> BoundsReport:
    """Evaluate every bound and its ingredients for one (state, X, Z) triple."""
    qmu = q_mu(x, z)
    qp = q_prime(x, z)
    s_cond = conditional_entropy(rho)
    i_ab = mutual_information(rho)
    i_xb = holevo(rho, x)
    i_zb = holevo(rho, z)
    dlt = i_ab - i_xb - i_zb
    s_a = von_neumann_entropy(rho.reduced_a())
    berta = qmu + s_cond
    if corr is not None:
        correction = max(0.0, corr.discord - corr.classical_correlation)
        pati = berta + correction
    else:
        correction = None
        pati = None
    return BoundsReport(
        q_mu=qmu,
        q_prime=qp,
        s_cond=s_cond,
        i_ab=i_ab,
        i_xb=i_xb,
        i_zb=i_zb,
        delta=dlt,
        bound_mu=qmu,
        bound_mu_mixed=qmu + s_a,
        bound_berta=berta,
        bound_coles_piani=qp + s_cond,
        bound_pati=pati,
        bound_ours=berta + max(0.0, dlt),
        actual=actual_uncertainty(rho, x, z),
        pati_correction=correction,
    )


# ---------------------------------------------------------------------------
# Closed-form oracles for the named one-parameter families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormCurves:
    berta: float
    pati: float
    ours: float


def _check_pair(pair: str) -> str:
    key = pair.lower()
    if key not in ("xy", "xz"):
        raise ValueError(f"observable pair must be 'xy' or 'xz', got {pair!r}")
    return key


def _curves_bell_diagonal_special(p: float, pair: str) -> ClosedFormCurves:
    # Holevo quantities along the Bloch axes: 1 - h(p) on the x axis
    # (|r| = |1-2p|) and 1 - h((1+p)/2) on each of y, z (|r| = p).
    h = binary_entropy
    along_x = 1.0 - h(p)
    along_yz = 1.0 - h((1.0 + p) / 2.0)
    hi = max(along_x, along_yz)
    lo = min(along_x, along_yz)
    mid = along_yz  # the second-largest |r_i| is always p
    # Spectrum (p, (1-p)/2, (1-p)/2, 0); q_mu = 1 and S(B) = 1 cancel, so
    # the Berta bound equals S(AB) = -p log2 p - (1-p) log2((1-p)/2).
    s_ab = h(p) + (1.0 - p)
    berta = s_ab
    i_ab = 2.0 - s_ab
    pati = berta + max(0.0, i_ab - 2.0 * hi)
    second = mid if pair == "xy" else lo
    ours = berta + max(0.0, i_ab - hi - second)
    return ClosedFormCurves(berta=berta, pati=pati, ours=ours)


def _safe_plog2(coef: float, ratio: float) -> float:
    """coef * log2(ratio) with the 0 * log 0 = 0 convention."""
    if coef <= 0.0 or ratio <= 0.0:
        return 0.0
    return coef * float(np.log2(ratio))


def _curves_x_state_special(p: float, pair: str) -> ClosedFormCurves:
    h = binary_entropy
    s_b = h(p / 2.0)
    s_ab = h(p)
    s_cond = s_ab - s_b
    i_ab = 2.0 * s_b - s_ab
    u = float(np.sqrt(1.0 - 2.0 * p + 2.0 * p * p))
    i_x = s_b - h((1.0 + u) / 2.0)
    i_z = s_b + _safe_plog2(p / 2.0, p / (2.0 - p)) + _safe_plog2(
        1.0 - p, 2.0 * (1.0 - p) / (2.0 - p)
    )
    berta = 1.0 + s_cond
    # sigma_x attains the classical correlation, so D - J = I(A;B) - 2 I(X;B).
    pati = berta + max(0.0, i_ab - 2.0 * i_x)
    # Any equatorial direction gives the Holevo quantity of sigma_x (the
    # family is invariant under matched z rotations), so the {X,Y} pair
    # duplicates I(X;B).
    second = i_x if pair == "xy" else i_z
    ours = berta + max(0.0, i_ab - i_x - second)
    return ClosedFormCurves(berta=berta, pati=pati, ours=ours)


_CLOSED_FORMS = {
    "bell_diagonal_special": _curves_bell_diagonal_special,
    "xstate": _curves_x_state_special,
}


def closed_form_curves(family: str, p: float, pair: str) -> ClosedFormCurves:
    """Closed-form (berta, pati, ours) for the named one-parameter families.

    ``family`` is "bell_diagonal_special" or "xstate"; ``pair`` selects the
    observable pair "xy" or "xz" (labels in the |r|-ordered sense described
    in the module docstring).
    """
    fn = _CLOSED_FORMS.get(family)
    if fn is None:
        raise ValueError(
            f"no closed forms for family {family!r}; expected one of {sorted(_CLOSED_FORMS)}"
        )
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"family parameter p must lie in [0, 1], got {p!r}")
    return fn(p, _check_pair(pair))


def family_pair_observables(
    family: str, p: float, pair: str
) -> tuple[ProjectiveObservable, ProjectiveObservable]:
    """The concrete observables behind the closed-form labels X, Y, Z.

    bell_diagonal_special: the Bloch axes sorted by decreasing |r_i| with
    r = (1-2p, -p, -p) (ties keep x, y, z order); the pair "xy" is the top
    two, "xz" the top and bottom.  For p < 1/3 that is literally
    (sigma_x, sigma_y) / (sigma_x, sigma_z).

    xstate: literally (sigma_x, sigma_y) or (sigma_x, sigma_z).
    """
    key = _check_pair(pair)
    p = float(p)
    if family == "bell_diagonal_special":
        r = np.array([1.0 - 2.0 * p, -p, -p])
        order = np.argsort(-np.abs(r), kind="stable")
        axes = "xyz"
        first = pauli_observable(axes[order[0]])
        second = pauli_observable(axes[order[1]] if key == "xy" else axes[order[2]])
        return first, second
    if family == "xstate":
        return pauli_observable("x"), pauli_observable("y" if key == "xy" else "z")
    raise ValueError(f"no preset observables for family {family!r}")
