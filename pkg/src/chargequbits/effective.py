"""Two-level effective model from block partitioning of the Hamiltonian.

The basis is split into a two-state subspace A (``{000, 111}`` for GHZ
formation or ``{010, 101}`` for FLIP formation) and its six-state complement
B.  Eliminating B at fixed energy gives

    H_eff = H_AA + H_AB (E - H_BB)^{-1} H_BA,

and expanding the resolvent to first order in the tunneling inside B yields a
third-order coupling between the two A states.  At zero detuning and equal
couplings it reduces to ``Omega = Delta**3 / J**2``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import HBAR, TimeGrid, populations_trace
from .errors import DegenerateDenominator, DuplicateLabel, NonpositiveInput, NonpositiveJ
from .model import (
    BASIS_LABELS,
    QubitParams,
    basis_index,
    basis_state,
    build_h3,
    diagonal_energies,
    h0_and_v_split,
)

GHZ_LABELS = ("000", "111")
FLIP_LABELS = ("010", "101")
DENOMINATOR_TOL = 1e-9


@dataclass(frozen=True)
class BlockPartition:
    a_labels: tuple
    b_labels: tuple
    haa: np.ndarray
    hab: np.ndarray
    hba: np.ndarray
    hbb: np.ndarray

    @property
    def order(self) -> list[int]:
        return [basis_index(x) for x in self.a_labels + self.b_labels]

    def reassemble(self) -> np.ndarray:
        """Full matrix in the permuted ordering ``A`` first, then ``B``."""
        return np.block([[self.haa, self.hab], [self.hba, self.hbb]])


@dataclass(frozen=True)
class EffectiveModel:
    omega: float
    e_a: float
    a_labels: tuple

    @property
    def formation_time(self) -> float:
        """Quarter Rabi period in ns."""
        return 0.25 * math.pi * HBAR / self.omega


def _check_labels(a_labels) -> tuple:
    labels = tuple(str(x) for x in a_labels)
    if len(labels) != 2:
        raise ValueError("subspace A needs exactly two labels")
    for x in labels:
        basis_index(x)
    if labels[0] == labels[1]:
        raise DuplicateLabel(labels[0])
    return labels


def partition(h, a_labels) -> BlockPartition:
    """Split an 8x8 operator into A/B blocks with projectors P and Q = I - P."""
    a = _check_labels(a_labels)
    b = tuple(x for x in BASIS_LABELS if x not in a)
    h = np.asarray(h, dtype=complex)
    ia = [basis_index(x) for x in a]
    ib = [basis_index(x) for x in b]
    return BlockPartition(
        a_labels=a,
        b_labels=b,
        haa=h[np.ix_(ia, ia)],
        hab=h[np.ix_(ia, ib)],
        hba=h[np.ix_(ib, ia)],
        hbb=h[np.ix_(ib, ib)],
    )


def subspace_energy(p: QubitParams, a_labels) -> float:
    """Unperturbed energy shared by the two A states."""
    a = _check_labels(a_labels)
    h0, _ = h0_and_v_split(p)
    e1, e2 = (h0[basis_index(x), basis_index(x)].real for x in a)
    if not math.isclose(e1, e2, rel_tol=0, abs_tol=1e-9 * max(1.0, abs(e1))):
        raise ValueError(f"A states are not degenerate under H0: {e1} vs {e2}")
    return float(e1)


def omega_numeric(p: QubitParams, a_labels=GHZ_LABELS, mode: str = "third_order") -> float:
    """Effective coupling between the two A states, in ueV (magnitude).

    ``mode="third_order"`` evaluates
    ``<a2| H_AB R V_BB R H_BA |a1>`` with ``R = (E_A - H0_BB)^{-1}``, the
    lowest non-vanishing order of the expanded resolvent.  ``mode="resolvent"``
    solves ``<a2| H_AB (E_A - H_BB)^{-1} H_BA |a1>`` exactly (all orders in the
    tunneling inside B, still at the unperturbed energy ``E_A``).
    """
    a = _check_labels(a_labels)
    e_a = subspace_energy(p, a)
    h0, v = h0_and_v_split(p)
    full = partition(h0 + v, a)
    bare = partition(h0, a)
    tunnel = partition(v, a)
    gaps = e_a - np.real(np.diag(bare.hbb))
    if np.any(np.abs(gaps) < DENOMINATOR_TOL):
        raise DegenerateDenominator("an intermediate state is degenerate with subspace A")
    if mode == "third_order":
        r = np.diag(1.0 / gaps)
        chain = full.hab @ r @ tunnel.hbb @ r @ full.hba
    elif mode == "resolvent":
        chain = full.hab @ np.linalg.solve(e_a * np.eye(6) - full.hbb, full.hba)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return float(abs(chain[1, 0]))


def omega_expanded(delta: float, j: float, a_labels=GHZ_LABELS) -> float:
    """Third-order coupling written out as the sum over the six flip orders.

    Each path flips the three qubits one at a time; its weight is the product
    of the two energy denominators of the intermediate states.
    """
    p = QubitParams.symmetric(j, delta)
    a = _check_labels(a_labels)
    e0 = diagonal_energies(p)
    start = a[0]
    e_a = e0[start]
    total = 0.0
    for order in itertools.permutations(range(3)):
        state = list(start)
        weight = 1.0
        for q in order[:2]:
            state[q] = "1" if state[q] == "0" else "0"
            gap = e_a - e0["".join(state)]
            if abs(gap) < DENOMINATOR_TOL:
                raise DegenerateDenominator("".join(state))
            weight /= gap
        total += weight
    return abs(delta**3 * total)


def omega_closed_form(delta: float, j: float) -> float:
    """``Delta**3 / J**2`` (ueV)."""
    if j <= 0:
        raise NonpositiveJ(f"J must be positive, got {j}")
    return delta**3 / j**2


def formation_time(delta: float, j: float) -> float:
    """First GHZ formation time ``(pi/4) hbar J**2 / Delta**3`` in ns."""
    if delta <= 0 or j <= 0:
        raise NonpositiveInput(f"delta and J must be positive, got {delta}, {j}")
    return 0.25 * math.pi * HBAR * j**2 / delta**3


def effective_model(p: QubitParams, a_labels=GHZ_LABELS) -> EffectiveModel:
    a = _check_labels(a_labels)
    return EffectiveModel(omega=omega_numeric(p, a), e_a=subspace_energy(p, a), a_labels=a)


@dataclass
class EffectiveSeries:
    times: np.ndarray
    populations: dict


def evolve_effective(model: EffectiveModel, initial: str, grid: TimeGrid) -> EffectiveSeries:
    """Rabi oscillation inside subspace A, evaluated in closed form."""
    if initial not in model.a_labels:
        raise ValueError(f"initial state must be one of {model.a_labels}")
    other = model.a_labels[1] if initial == model.a_labels[0] else model.a_labels[0]
    t = grid.sample_times - grid.t_start
    angle = model.omega * t / HBAR
    return EffectiveSeries(
        times=grid.sample_times,
        populations={initial: np.cos(angle) ** 2, other: np.sin(angle) ** 2},
    )


@dataclass(frozen=True)
class DeviationSummary:
    max_deviation: dict
    t_max: float

    @property
    def worst(self) -> float:
        return max(self.max_deviation.values())


def effective_vs_exact_report(
    p: QubitParams, a_labels=GHZ_LABELS, grid: TimeGrid | None = None, n_samples: int = 2001
) -> DeviationSummary:
    """Largest population mismatch between exact and effective dynamics.

    The exact run starts in ``a_labels[0]``; comparison covers
    ``0 <= t <= formation_time`` unless ``grid`` overrides the window.
    """
    model = effective_model(p, a_labels)
    if grid is None:
        grid = TimeGrid(t_end=model.formation_time, dt=model.formation_time / (n_samples - 1), sample_every=1)
    eff = evolve_effective(model, model.a_labels[0], grid)
    exact = populations_trace(build_h3(p), basis_state(model.a_labels[0]), eff.times - grid.t_start)
    dev = {
        label: float(np.max(np.abs(exact[:, basis_index(label)] - eff.populations[label])))
        for label in model.a_labels
    }
    return DeviationSummary(max_deviation=dev, t_max=float(grid.sample_times[-1]))
