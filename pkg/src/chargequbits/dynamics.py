"""Closed (Von Neumann) and dephasing (Lindblad) evolution of three qubits.

Time is in ns and energies in ueV, so the commutator carries ``1/hbar`` with
``hbar = 0.6582119569 ueV ns``.  A dephasing rate ``gamma`` given in GHz is
turned into an energy ``Gamma = h * gamma``; the dissipator prefactor is then
``Gamma / hbar = 2 pi gamma`` per ns.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .entanglement import fidelity, tangle_report
from .errors import NotHermitian, NotPSD, StepTooLarge
from .model import BASIS_LABELS, basis_index
from .numerics import as_square, frobenius_norm, hermitian_eig, hermiticity_error

log = logging.getLogger(__name__)

HBAR = 0.6582119569  # ueV ns
PLANCK = 4.135667696  # ueV ns

UNITARY_RK4_LIMIT = 0.1
LINDBLAD_RATE_LIMIT = 0.05
TRACE_RENORM = 1e-8

RATE_CONVENTIONS = ("h", "hbar")


@dataclass(frozen=True)
class TimeGrid:
    """Integration grid in ns; diagnostics recorded every ``sample_every`` steps."""

    t_end: float
    t_start: float = 0.0
    dt: float = 0.001
    sample_every: int = 50

    def __post_init__(self):
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end) and math.isfinite(self.dt)):
            raise ValueError("grid values must be finite")
        if self.t_end <= self.t_start:
            raise ValueError("t_end must exceed t_start")
        if self.dt <= 0 or self.dt > self.t_end - self.t_start:
            raise ValueError("dt must be positive and no longer than the grid")
        if int(self.sample_every) != self.sample_every or self.sample_every < 1:
            raise ValueError("sample_every must be a positive integer")

    @property
    def n_steps(self) -> int:
        return int(math.floor((self.t_end - self.t_start) / self.dt + 1e-9))

    @property
    def sample_steps(self) -> np.ndarray:
        return np.arange(0, self.n_steps + 1, int(self.sample_every))

    @property
    def sample_times(self) -> np.ndarray:
        return self.t_start + self.sample_steps * self.dt


@dataclass(frozen=True)
class DephasingConfig:
    """Dephasing rates ``gamma_k`` (GHz) for the eight basis projectors."""

    gamma: tuple = (0.0,) * 8
    convention: str = "h"

    def __post_init__(self):
        g = tuple(float(x) for x in self.gamma)
        if len(g) != 8:
            raise ValueError("gamma needs one rate per basis state (8)")
        if any(not math.isfinite(x) or x < 0 for x in g):
            raise ValueError("dephasing rates must be finite and non-negative")
        if self.convention not in RATE_CONVENTIONS:
            raise ValueError(f"convention must be one of {RATE_CONVENTIONS}")
        object.__setattr__(self, "gamma", g)

    @classmethod
    def uniform(cls, gamma: float, convention: str = "h") -> "DephasingConfig":
        return cls((gamma,) * 8, convention)

    def energy_rates(self) -> np.ndarray:
        """``Gamma_k`` in ueV."""
        unit = PLANCK if self.convention == "h" else HBAR
        return unit * np.asarray(self.gamma)

    def rates_per_ns(self) -> np.ndarray:
        """``Gamma_k / hbar`` in 1/ns, the prefactor of the dissipator."""
        return self.energy_rates() / HBAR


@dataclass
class TimeSeries:
    """Sampled trajectory.

    ``populations`` has one column per basis state in the order of
    :data:`chargequbits.model.BASIS_LABELS`.
    """

    times: np.ndarray
    populations: np.ndarray
    fidelities: dict = field(default_factory=dict)
    tau3: np.ndarray | None = None
    tau2: np.ndarray | None = None
    purity: np.ndarray | None = None
    trace_error: np.ndarray | None = None
    final_state: np.ndarray | None = None
    states: np.ndarray | None = None

    def population(self, label: str) -> np.ndarray:
        return self.populations[:, basis_index(label)]

    def __len__(self):
        return len(self.times)


def check_density_matrix(rho, psd: bool = True) -> np.ndarray:
    """Validate Hermiticity, unit trace and (optionally) positivity."""
    rho = as_square(rho, "rho")
    if hermiticity_error(rho) > 1e-10:
        raise NotHermitian("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-9:
        raise ValueError(f"density matrix trace {tr} differs from 1")
    if psd:
        w = hermitian_eig(rho).eigenvalues
        if w[0] < -1e-9:
            raise NotPSD(f"density matrix eigenvalue {w[0]:.3e}")
    return rho


def as_density_matrix(state) -> np.ndarray:
    """Accept a ket (length 8) or an 8x8 matrix and return a density matrix."""
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        arr = np.outer(arr, arr.conj())
    return check_density_matrix(arr)


def population(rho, label: str) -> float:
    """Occupation of a basis state, the diagonal element of ``rho``."""
    return float(np.real(np.asarray(rho)[basis_index(label), basis_index(label)]))


def _named_targets(targets) -> dict:
    if targets is None:
        return {}
    if isinstance(targets, Mapping):
        return {str(k): np.asarray(v, dtype=complex) for k, v in targets.items()}
    return {f"target{i}": np.asarray(v, dtype=complex) for i, v in enumerate(targets)}


def _check_hamiltonian(h) -> np.ndarray:
    h = as_square(h, "h")
    if h.shape != (8, 8):
        raise ValueError(f"expected an 8x8 Hamiltonian, got {h.shape}")
    norm = frobenius_norm(h)
    if hermiticity_error(h) > 1e-10 * max(norm, 1.0):
        raise NotHermitian("Hamiltonian is not Hermitian")
    return 0.5 * (h + h.conj().T)


class _Recorder:
    def __init__(self, n, targets, tangles, check_psd, store_states):
        self.targets = targets
        self.tangles = tangles
        self.check_psd = check_psd
        self.populations = np.empty((n, 8))
        self.fidelities = {k: np.empty(n) for k in targets}
        self.tau3 = np.full(n, np.nan)
        self.tau2 = np.full(n, np.nan)
        self.purity = np.empty(n)
        self.trace_error = np.empty(n)
        self.states = np.empty((n, 8, 8), dtype=complex) if store_states else None
        self.last = None

    def record(self, i, rho):
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TRACE_RENORM:
            log.warning("trace drift %.3e at sample %d; renormalizing", tr - 1.0, i)
            rho = rho / tr
        check_density_matrix(rho, psd=self.check_psd)
        self.populations[i] = np.real(np.diag(rho))
        for name, psi in self.targets.items():
            self.fidelities[name][i] = fidelity(rho, psi)
        if self.tangles:
            rep = tangle_report(rho)
            self.tau3[i] = rep.tau3
            self.tau2[i] = rep.tau2
        self.purity[i] = np.real(np.vdot(rho, rho))
        self.trace_error[i] = abs(np.trace(rho).real - 1.0)
        if self.states is not None:
            self.states[i] = rho
        self.last = rho
        return rho

    def result(self, times):
        return TimeSeries(
            times=times,
            populations=self.populations,
            fidelities=self.fidelities,
            tau3=self.tau3,
            tau2=self.tau2,
            purity=self.purity,
            trace_error=self.trace_error,
            final_state=self.last,
            states=self.states,
        )


def spectral_norm(h) -> float:
    w = hermitian_eig(h).eigenvalues
    return float(max(abs(w[0]), abs(w[-1])))


def von_neumann_rhs(h, rho):
    return (-1j / HBAR) * (h @ rho - rho @ h)


def _rk4_step(f, y, dt):
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def evolve_unitary(
    h,
    rho0,
    grid: TimeGrid,
    targets=None,
    *,
    method: str = "exact",
    tangles: bool = True,
    check_psd: bool = True,
    store_states: bool = False,
) -> TimeSeries:
    """Closed-system evolution ``drho/dt = -(i/hbar)[H, rho]``.

    Parameters
    ----------
    h : (8, 8) array
        Hermitian Hamiltonian in ueV.
    rho0 : array
        Initial state at ``grid.t_start`` (ket or density matrix).
    grid : TimeGrid
    targets : mapping or sequence of kets, optional
        Fidelities are recorded against each target.
    method : {"exact", "rk4"}
        ``"exact"`` uses the eigen-decomposition propagator and has no step
        error; ``"rk4"`` integrates the equation with fixed steps ``grid.dt``
        and is meant as an independent cross-check.
    """
    h = _check_hamiltonian(h)
    rho0 = as_density_matrix(rho0)
    targets = _named_targets(targets)
    times = grid.sample_times
    rec = _Recorder(len(times), targets, tangles, check_psd, store_states)

    if method == "exact":
        dec = hermitian_eig(h)
        v, energies = dec.eigenvectors, dec.eigenvalues
        rho_eig = v.conj().T @ rho0 @ v
        for i, t in enumerate(times - grid.t_start):
            ph = np.exp(-1j * energies * t / HBAR)
            rho = v @ (rho_eig * np.outer(ph, ph.conj())) @ v.conj().T
            rec.record(i, rho)
    elif method == "rk4":
        if grid.dt * spectral_norm(h) / HBAR > UNITARY_RK4_LIMIT:
            raise StepTooLarge(f"dt*||H||/hbar exceeds {UNITARY_RK4_LIMIT}")
        rho = rec.record(0, rho0)
        sample = 1
        every = int(grid.sample_every)
        for step in range(1, grid.n_steps + 1):
            rho = _rk4_step(lambda r: von_neumann_rhs(h, r), rho, grid.dt)
            if step % every == 0:
                rho = rec.record(sample, rho)
                sample += 1
    else:
        raise ValueError(f"unknown method {method!r}")
    return rec.result(times)


def dephasing_dissipator(rho, rates) -> np.ndarray:
    """Dephasing term written out with the projectors ``L_k = |k><k|``.

    ``rates`` are ``Gamma_k / hbar`` in 1/ns.  Reference implementation; the
    integrator uses the equivalent elementwise form.
    """
    out = np.zeros_like(rho, dtype=complex)
    for k, r in enumerate(rates):
        proj = np.zeros((8, 8), dtype=complex)
        proj[k, k] = 1.0
        out += 0.5 * r * (2 * proj @ rho @ proj - proj @ proj @ rho - rho @ proj @ proj)
    return out


def lindblad_rhs(h, rho, rates) -> np.ndarray:
    return von_neumann_rhs(h, rho) + dephasing_dissipator(rho, rates)


def _coherence_damping(rates) -> np.ndarray:
    r = np.asarray(rates, dtype=float)
    g = 0.5 * (r[:, None] + r[None, :])
    np.fill_diagonal(g, 0.0)
    return g


def evolve_lindblad(
    h,
    rho0,
    grid: TimeGrid,
    deph: DephasingConfig,
    targets=None,
    *,
    tangles: bool = True,
    check_psd: bool = True,
    store_states: bool = False,
) -> TimeSeries:
    """Dephasing master equation with basis-projector jump operators.

    Fourth-order Runge-Kutta in the interaction picture of ``H``: the
    Hamiltonian part is propagated exactly over half steps and the RK4 stages
    act on the dissipator only.  With all rates zero the scheme reproduces
    the exact unitary propagator.

    Raises
    ------
    StepTooLarge
        If ``dt * max(Gamma_k)/hbar > 0.05`` or ``dt * ||H||/hbar > 0.1``.
    """
    h = _check_hamiltonian(h)
    rho0 = as_density_matrix(rho0)
    targets = _named_targets(targets)
    rates = deph.rates_per_ns()
    dt = grid.dt
    if dt * rates.max() > LINDBLAD_RATE_LIMIT:
        raise StepTooLarge(f"dt*Gamma/hbar exceeds {LINDBLAD_RATE_LIMIT}")
    dec = hermitian_eig(h)
    if dt * max(abs(dec.eigenvalues[0]), abs(dec.eigenvalues[-1])) / HBAR > UNITARY_RK4_LIMIT:
        raise StepTooLarge(f"dt*||H||/hbar exceeds {UNITARY_RK4_LIMIT}")

    v = dec.eigenvectors
    u_half = (v * np.exp(-0.5j * dec.eigenvalues * dt / HBAR)) @ v.conj().T
    u_half_dag = u_half.conj().T
    damp = _coherence_damping(rates)

    def prop(x):
        return u_half @ x @ u_half_dag

    def diss(x):
        return -damp * x

    times = grid.sample_times
    rec = _Recorder(len(times), targets, tangles, check_psd, store_states)
    rho = rec.record(0, rho0)
    sample = 1
    every = int(grid.sample_every)
    for step in range(1, grid.n_steps + 1):
        rho_i = prop(rho)
        k1 = prop(diss(rho))
        k2 = diss(rho_i + 0.5 * dt * k1)
        k3 = diss(rho_i + 0.5 * dt * k2)
        k4 = diss(prop(rho_i + dt * k3))
        rho = prop(rho_i + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3)) + (dt / 6.0) * k4
        if step % every == 0:
            rho = 0.5 * (rho + rho.conj().T)
            rho = rec.record(sample, rho)
            sample += 1
    return rec.result(times)


def fidelity_trace(h, rho0, times, target) -> np.ndarray:
    """``<psi|rho(t)|psi>`` under exact unitary evolution, vectorized over ``times``."""
    h = _check_hamiltonian(h)
    rho0 = as_density_matrix(rho0)
    dec = hermitian_eig(h)
    v, e = dec.eigenvectors, dec.eigenvalues
    rho_eig = v.conj().T @ rho0 @ v
    c = v.conj().T @ np.asarray(target, dtype=complex)
    weights = np.conj(c)[:, None] * rho_eig * c[None, :]
    freq = (e[:, None] - e[None, :]) / HBAR
    t = np.asarray(times, dtype=float)
    phases = np.exp(-1j * freq[None, :, :] * t[:, None, None])
    return np.real(np.sum(weights[None] * phases, axis=(1, 2)))


def populations_trace(h, rho0, times) -> np.ndarray:
    """Basis-state populations under exact unitary evolution, shape ``(len(times), 8)``."""
    return np.stack(
        [fidelity_trace(h, rho0, times, np.eye(8)[k]) for k in range(8)], axis=1
    )


def first_peak(times, values, floor: float | None = None) -> tuple[int, float, float]:
    """First main maximum of a sampled curve carrying fast small ripples.

    With ``rise = max - floor`` (``floor`` defaults to the first value), an
    excursion starts when the curve reaches ``floor + 0.75 rise`` and ends when
    it falls back under ``floor + 0.5 rise``; the gap between the two levels
    absorbs the ripples.  The peak is the largest sample of the first
    excursion, which must end inside the window.

    Returns ``(index, time, value)``; raises ``ValueError`` if none exists.
    """
    values = np.asarray(values, dtype=float)
    if values.size < 3:
        raise ValueError("need at least three samples")
    base = values[0] if floor is None else floor
    top = values.max()
    if top <= base:
        raise ValueError("curve never rises above its starting value")
    rise = top - base
    start = int(np.flatnonzero(values >= base + 0.75 * rise)[0])
    below = np.flatnonzero(values[start:] < base + 0.5 * rise)
    if below.size == 0:
        raise ValueError("curve has not come back down inside the window")
    stop = start + below[0]
    i = start + int(np.argmax(values[start:stop]))
    return i, float(times[i]), float(values[i])


__all__ = [
    "HBAR",
    "PLANCK",
    "BASIS_LABELS",
    "TimeGrid",
    "DephasingConfig",
    "TimeSeries",
    "evolve_unitary",
    "evolve_lindblad",
    "population",
    "fidelity_trace",
    "populations_trace",
    "first_peak",
]
