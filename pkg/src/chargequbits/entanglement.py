"""Fidelity, pairwise tangles and the residual three-tangle."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import SIGMA_Y
from .numerics import hermitian_eig, matrix_sqrt_psd, partial_trace

_YY = np.kron(SIGMA_Y, SIGMA_Y)
# eigenvalues of rho rho~ below this fraction of the largest count as null
RANK_TOL = 1e-12


@dataclass(frozen=True)
class TangleReport:
    """Tangles for one density matrix, with ``pivot`` playing the role of A.

    On mixed states ``tau3`` is the value of the residual-tangle formula, not
    a convex-roof entanglement measure.
    """

    tau_one_to_rest: float
    tau_ab: float
    tau_ac: float
    tau3: float
    tau2: float
    tau3_raw: float = 0.0
    pivot: int = 1


def fidelity(rho, target) -> float:
    """Overlap ``<psi|rho|psi>`` with a pure target state."""
    psi = np.asarray(target, dtype=complex)
    return float(np.real(psi.conj() @ np.asarray(rho) @ psi))


def tau_one_to_rest(rho, pivot: int = 1) -> float:
    """One-qubit-versus-rest tangle ``4 det(rho_pivot)``."""
    r = partial_trace(rho, [pivot])
    det = r[0, 0] * r[1, 1] - r[0, 1] * r[1, 0]
    return float(max(0.0, 4.0 * det.real))


def spin_flip(rho_ab) -> np.ndarray:
    """``(sigma_y x sigma_y) rho^* (sigma_y x sigma_y)``"""
    return _YY @ np.conj(rho_ab) @ _YY


def tau_pair_reduced(rho_ab) -> float:
    """Pair tangle of a two-qubit density matrix.

    With ``l1 >= l2 >= l3 >= l4`` the square roots of the eigenvalues of
    ``rho rho~`` (read off the Hermitian PSD matrix ``sqrt(rho) rho~ sqrt(rho)``,
    which has the same spectrum), a state of rank at most two gets
    ``Tr(rho rho~) - 2 l1 l2``.  That is the squared concurrence
    ``(l1 - l2)**2`` for such states.  When ``l3`` or ``l4`` is non-null the
    squared concurrence ``max(0, l1 - l2 - l3 - l4)**2`` is returned instead,
    so separable mixtures such as ``I/4`` give zero.
    """
    rho_ab = 0.5 * (rho_ab + np.conj(rho_ab).T)
    flipped = spin_flip(rho_ab)
    root = matrix_sqrt_psd(rho_ab)
    m = root @ flipped @ root
    m = 0.5 * (m + np.conj(m).T)
    mu = np.clip(hermitian_eig(m).eigenvalues[::-1], 0.0, None)
    mu[mu <= RANK_TOL * mu[0]] = 0.0
    lam = np.sqrt(mu)
    if mu[2] == 0.0:
        overlap = float(np.real(np.trace(rho_ab @ flipped)))
        return max(0.0, float(overlap - 2.0 * lam[0] * lam[1]))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]) ** 2)


def tau_pair(rho, pair=(1, 2)) -> float:
    """Pair tangle between two qubits of a three-qubit state."""
    a, b = pair
    return tau_pair_reduced(partial_trace(rho, [a, b]))


def _others(pivot: int) -> tuple[int, int]:
    rest = [q for q in (1, 2, 3) if q != pivot]
    return rest[0], rest[1]


def tangle_report(rho, pivot: int = 1) -> TangleReport:
    if pivot not in (1, 2, 3):
        raise ValueError(f"pivot must be 1, 2 or 3, got {pivot}")
    b, c = _others(pivot)
    t_a = tau_one_to_rest(rho, pivot)
    t_ab = tau_pair(rho, (pivot, b))
    t_ac = tau_pair(rho, (pivot, c))
    raw = t_a - t_ab - t_ac
    return TangleReport(
        tau_one_to_rest=t_a,
        tau_ab=t_ab,
        tau_ac=t_ac,
        tau3=max(0.0, raw),
        tau2=t_ab + t_ac,
        tau3_raw=raw,
        pivot=pivot,
    )
