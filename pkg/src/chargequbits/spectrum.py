"""Eigenvalue and eigenstate sweeps over the tunneling strength."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dynamics import first_peak, fidelity_trace
from .effective import formation_time
from .errors import PeakNotFound
from .model import QubitParams, basis_state, build_h3, flip_state, ghz_state
from .numerics import hermitian_eig

# reference pairs: (eigenstate indices, {name: reference ket})
TOP_PAIR = ((6, 7), {"ghz_pi": ghz_state(math.pi), "ghz_0": ghz_state(0.0)})
BOTTOM_PAIR = ((0, 1), {"flip_pi": flip_state(math.pi), "flip_0": flip_state(0.0)})


@dataclass
class SpectrumRow:
    """One tunneling value of a sweep; energies in ueV."""

    delta: float
    j: float
    eigenvalues: np.ndarray
    fidelities: dict
    assignment: dict
    eigenvectors: np.ndarray = field(repr=False, default=None)

    @property
    def delta_over_j(self) -> float:
        return self.delta / self.j

    @property
    def eigenvalues_over_j(self) -> np.ndarray:
        return self.eigenvalues / self.j


def fix_phase(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real and positive."""
    out = np.array(vectors, dtype=complex)
    for k in range(out.shape[1]):
        col = out[:, k]
        i = int(np.argmax(np.abs(col)))
        out[:, k] = col * (abs(col[i]) / col[i])
    return out


def _assign(vectors, indices, refs) -> tuple[dict, dict]:
    names = list(refs)
    overlap = np.array(
        [[abs(np.vdot(refs[n], vectors[:, i])) ** 2 for n in names] for i in indices]
    )
    straight = overlap[0, 0] + overlap[1, 1]
    swapped = overlap[0, 1] + overlap[1, 0]
    if straight >= swapped:
        pick = {names[0]: 0, names[1]: 1}
    else:
        pick = {names[0]: 1, names[1]: 0}
    fid = {n: float(overlap[pick[n], names.index(n)]) for n in names}
    which = {n: indices[pick[n]] for n in names}
    return fid, which


def spectrum_row(j: float, delta: float) -> SpectrumRow:
    dec = hermitian_eig(build_h3(QubitParams.symmetric(j, delta)))
    vecs = fix_phase(dec.eigenvectors)
    fid, which = {}, {}
    for indices, refs in (TOP_PAIR, BOTTOM_PAIR):
        f, w = _assign(vecs, indices, refs)
        fid.update(f)
        which.update(w)
    return SpectrumRow(delta, j, dec.eigenvalues, fid, which, vecs)


def _check_deltas(deltas) -> np.ndarray:
    d = np.asarray(deltas, dtype=float)
    if d.ndim != 1 or d.size == 0:
        raise ValueError("deltas must be a non-empty 1-D sequence")
    if np.any(d <= 0) or np.any(np.diff(d) <= 0):
        raise ValueError("deltas must be positive and strictly ascending")
    return d


def default_deltas(j: float, n: int = 200, stop: float = 1.0) -> np.ndarray:
    """``n`` uniform points on ``(0, stop*J]``."""
    return np.linspace(stop * j / n, stop * j, n)


def sweep_spectrum(j: float, deltas=None, workers: int | None = None) -> list[SpectrumRow]:
    """Eigenvalues and GHZ/FLIP eigenstate fidelities for each tunneling value.

    The two highest eigenstates are matched to GHZ(pi)/GHZ(0) and the two
    lowest to FLIP(pi)/FLIP(0), choosing within each pair the assignment with
    the larger total fidelity.  Rows come back in input order.
    """
    d = _check_deltas(default_deltas(j) if deltas is None else deltas)
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda x: spectrum_row(j, x), d))
    return [spectrum_row(j, x) for x in d]


@dataclass(frozen=True)
class FormationRow:
    delta: float
    t_formula: float
    t_exact: float
    fidelity: float


def formation_time_sweep(j: float, deltas, n_samples: int = 6001, initial: str = "000") -> list[FormationRow]:
    """Compare the perturbative formation time with the exact first peak.

    For each tunneling value the exact unitary fidelity with GHZ(-pi/2)
    (FLIP(-pi/2) when starting from ``010``/``101``) is sampled on
    ``[0, 3 t_formula]`` and its first main maximum located with
    :func:`chargequbits.dynamics.first_peak`.
    """
    d = _check_deltas(deltas)
    target = flip_state(-math.pi / 2) if initial in ("010", "101") else ghz_state(-math.pi / 2)
    rows = []
    for delta in d:
        tf = formation_time(delta, j)
        times = np.linspace(0.0, 3.0 * tf, n_samples)
        h = build_h3(QubitParams.symmetric(j, delta))
        fid = fidelity_trace(h, basis_state(initial), times, target)
        try:
            _, t_peak, f_peak = first_peak(times, fid)
        except ValueError as exc:
            raise PeakNotFound(f"delta={delta}: {exc}") from None
        rows.append(FormationRow(float(delta), tf, t_peak, f_peak))
    return rows
