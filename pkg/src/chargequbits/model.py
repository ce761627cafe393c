"""Hamiltonians and reference states for three charge qubits.

Each qubit is a double dot ("molecule") holding one excess electron.  Dots
``2q-1`` and ``2q`` form molecule ``q``; the electron sitting in the left dot
(occupation ``10``) is qubit state ``|0>``, the right dot (``01``) is ``|1>``.

Energies are in micro-electronvolts throughout.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import UnknownLabel
from .numerics import kron_all

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

N_QUBITS = 3
N_DOTS = 6
BASIS_LABELS = tuple("".join(bits) for bits in itertools.product("01", repeat=N_QUBITS))

# Coulomb pairs (dot_i, dot_j), 1-based, in the order the parameters are stored
COULOMB_PAIRS = ((1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (3, 6), (4, 5), (4, 6))
TUNNEL_PAIRS = ((1, 2), (3, 4), (5, 6))


def _finite_tuple(values, n, name):
    out = tuple(float(v) for v in values)
    if len(out) != n:
        raise ValueError(f"{name} needs {n} values, got {len(out)}")
    if not all(math.isfinite(v) for v in out):
        raise ValueError(f"{name} must be finite")
    return out


@dataclass(frozen=True)
class SixDotParams:
    """Raw six-dot parameters (ueV).

    ``coulomb`` is ordered as U13, U14, U23, U24, U35, U36, U45, U46.
    """

    site_energies: tuple = (0.0,) * 6
    tunnelings: tuple = (0.0,) * 3
    coulomb: tuple = (0.0,) * 8

    def __post_init__(self):
        object.__setattr__(self, "site_energies", _finite_tuple(self.site_energies, 6, "site_energies"))
        object.__setattr__(self, "tunnelings", _finite_tuple(self.tunnelings, 3, "tunnelings"))
        object.__setattr__(self, "coulomb", _finite_tuple(self.coulomb, 8, "coulomb"))

    def u(self, i: int, j: int) -> float:
        return self.coulomb[COULOMB_PAIRS.index((i, j))]


@dataclass(frozen=True)
class QubitParams:
    """Three-qubit parameters (ueV): detunings, tunnelings, couplings."""

    epsilon: tuple = (0.0, 0.0, 0.0)
    delta: tuple = (0.0, 0.0, 0.0)
    j12: float = 0.0
    j23: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "epsilon", _finite_tuple(self.epsilon, 3, "epsilon"))
        object.__setattr__(self, "delta", _finite_tuple(self.delta, 3, "delta"))
        for name in ("j12", "j23"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    @classmethod
    def symmetric(cls, j: float, delta: float, epsilon: float = 0.0) -> "QubitParams":
        """Equal couplings ``J12 = J23 = j`` and equal tunnelings ``delta``."""
        return cls((epsilon,) * 3, (delta,) * 3, j, j)


# ---------------------------------------------------------------- operators

def single_qubit_op(op, qubit: int, n: int = N_QUBITS) -> np.ndarray:
    """Embed a 2x2 operator on ``qubit`` (1-based) into the n-qubit space."""
    factors = [IDENTITY_2] * n
    factors[qubit - 1] = np.asarray(op, dtype=complex)
    return kron_all(*factors)


def two_qubit_op(op_a, qa: int, op_b, qb: int, n: int = N_QUBITS) -> np.ndarray:
    factors = [IDENTITY_2] * n
    factors[qa - 1] = np.asarray(op_a, dtype=complex)
    factors[qb - 1] = np.asarray(op_b, dtype=complex)
    return kron_all(*factors)


def build_h3(p: QubitParams) -> np.ndarray:
    """Three-qubit Hamiltonian, 8x8 on the ordered basis ``|000> ... |111>``."""
    h0, v = h0_and_v_split(p)
    return h0 + v


def h0_and_v_split(p: QubitParams) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal part (detunings and Ising couplings) and tunneling part."""
    h0 = np.zeros((8, 8), dtype=complex)
    v = np.zeros((8, 8), dtype=complex)
    for q in range(1, 4):
        h0 += p.epsilon[q - 1] * single_qubit_op(SIGMA_Z, q)
        v += p.delta[q - 1] * single_qubit_op(SIGMA_X, q)
    h0 += p.j12 * two_qubit_op(SIGMA_Z, 1, SIGMA_Z, 2)
    h0 += p.j23 * two_qubit_op(SIGMA_Z, 2, SIGMA_Z, 3)
    return h0, v


def diagonal_energies(p: QubitParams) -> dict[str, float]:
    """Unperturbed energies of each basis state, keyed by label."""
    out = {}
    for label in BASIS_LABELS:
        z = [1 - 2 * int(b) for b in label]
        e = sum(eps * zq for eps, zq in zip(p.epsilon, z))
        e += p.j12 * z[0] * z[1] + p.j23 * z[1] * z[2]
        out[label] = e
    return out


# ------------------------------------------------------------ six-dot model

def _occupation_index(occ) -> int:
    idx = 0
    for n in occ:
        idx = 2 * idx + n
    return idx


def build_h6(p: SixDotParams) -> np.ndarray:
    """Six-dot Hamiltonian on the 64 occupation states ``|n1 ... n6>``.

    Dot 1 is the most significant bit of the index.  Hopping terms carry the
    Jordan-Wigner sign for orbital ordering 1..6; for the intra-molecule pairs
    used here no occupied orbital lies between the two dots, so the sign is +1.
    """
    dim = 2**N_DOTS
    h = np.zeros((dim, dim), dtype=complex)
    for occ in itertools.product((0, 1), repeat=N_DOTS):
        k = _occupation_index(occ)
        e = sum(ei * ni for ei, ni in zip(p.site_energies, occ))
        for (i, j), u in zip(COULOMB_PAIRS, p.coulomb):
            e += u * occ[i - 1] * occ[j - 1]
        h[k, k] = e
        for (i, j), vij in zip(TUNNEL_PAIRS, p.tunnelings):
            # d_i^dag d_j: move the electron from dot j to dot i
            if occ[j - 1] == 1 and occ[i - 1] == 0:
                sign = (-1) ** sum(occ[min(i, j): max(i, j) - 1])
                new = list(occ)
                new[j - 1], new[i - 1] = 0, 1
                k2 = _occupation_index(new)
                h[k2, k] += sign * vij
                h[k, k2] += sign * np.conj(vij)
    return h


def qubit_subspace_indices() -> list[int]:
    """Occupation-basis indices of ``|000> ... |111>`` (one electron per molecule)."""
    out = []
    for label in BASIS_LABELS:
        occ = []
        for bit in label:
            occ += [1, 0] if bit == "0" else [0, 1]
        out.append(_occupation_index(occ))
    return out


def project_to_qubit_subspace(h6) -> np.ndarray:
    """Restrict a 64x64 six-dot operator to the eight single-occupancy states."""
    h6 = np.asarray(h6, dtype=complex)
    if h6.shape != (64, 64):
        raise ValueError(f"expected a 64x64 matrix, got {h6.shape}")
    idx = qubit_subspace_indices()
    return h6[np.ix_(idx, idx)]


def map_params(p: SixDotParams) -> tuple[QubitParams, float]:
    """Exact reduction of six-dot parameters to qubit parameters.

    With ``n_{2q-1} = (1 + z_q)/2`` and ``n_{2q} = (1 - z_q)/2`` every Coulomb
    term splits into a constant, two single-qubit ``z`` terms and one ``z z``
    term.  The single-qubit parts are folded into the detunings.

    Returns the qubit parameters and the constant energy offset.
    """
    e = p.site_energies
    u = p.u
    eps = [(e[0] - e[1]) / 2, (e[2] - e[3]) / 2, (e[4] - e[5]) / 2]
    eps[0] += (u(1, 3) + u(1, 4) - u(2, 3) - u(2, 4)) / 4
    eps[1] += (u(1, 3) - u(1, 4) + u(2, 3) - u(2, 4)) / 4
    eps[1] += (u(3, 5) + u(3, 6) - u(4, 5) - u(4, 6)) / 4
    eps[2] += (u(3, 5) - u(3, 6) + u(4, 5) - u(4, 6)) / 4
    j12 = (u(1, 3) - u(1, 4) - u(2, 3) + u(2, 4)) / 4
    j23 = (u(3, 5) - u(3, 6) - u(4, 5) + u(4, 6)) / 4
    offset = sum(e) / 2 + sum(p.coulomb) / 4
    return QubitParams(tuple(eps), tuple(p.tunnelings), j12, j23), offset


# ------------------------------------------------------------------- states

def basis_state(label: str) -> np.ndarray:
    try:
        k = BASIS_LABELS.index(str(label))
    except ValueError:
        raise UnknownLabel(label) from None
    psi = np.zeros(8, dtype=complex)
    psi[k] = 1.0
    return psi


def basis_index(label: str) -> int:
    try:
        return BASIS_LABELS.index(str(label))
    except ValueError:
        raise UnknownLabel(label) from None


def _pair_state(a: str, b: str, phi: float) -> np.ndarray:
    return (basis_state(a) + np.exp(1j * phi) * basis_state(b)) / math.sqrt(2)


def ghz_state(phi: float = 0.0) -> np.ndarray:
    """``(|000> + e^{i phi} |111>) / sqrt(2)``"""
    return _pair_state("000", "111", phi)


def flip_state(phi: float = 0.0) -> np.ndarray:
    """``(|010> + e^{i phi} |101>) / sqrt(2)``"""
    return _pair_state("010", "101", phi)


def w_state() -> np.ndarray:
    return (basis_state("001") + basis_state("010") + basis_state("100")) / math.sqrt(3)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


NAMED_STATES = {"ghz": ghz_state, "flip": flip_state}


def named_state(name: str, phi: float = 0.0) -> np.ndarray:
    """Resolve ``ghz``/``flip`` (with phase) or a basis label like ``"010"``."""
    key = str(name).lower()
    if key in NAMED_STATES:
        return NAMED_STATES[key](phi)
    return basis_state(name)
