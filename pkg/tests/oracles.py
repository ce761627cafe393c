"""Independent reference implementations and frozen values for the tests.

Nothing here imports the package under test.  Frozen numbers were computed by
hand from closed forms (shown next to each constant).
"""
from __future__ import annotations

import itertools
import math

import numpy as np

HBAR = 0.6582119569  # ueV ns
J_REF = 25.0
DELTA_REF = J_REF / 6

# Delta**3 / J**2 at J = 25, Delta = 25/6: 25**3/216 / 625 = 25/216
OMEGA_REF = 25.0 / 216.0
# (pi/4) hbar J**2/Delta**3 = (pi/4) * hbar * 216/25
T_FORMULA_REF = math.pi / 4 * HBAR * 216.0 / 25.0
# same at Delta = J/10: J**2/Delta**3 = 1000/J = 40
T_FORMULA_J10 = math.pi / 4 * HBAR * 40.0

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def op_on(op, q, n=3):
    """``op`` acting on qubit ``q`` (1-based, qubit 1 leftmost)."""
    out = np.array([[1.0 + 0j]])
    for k in range(1, n + 1):
        out = np.kron(out, op if k == q else I2)
    return out


def h3_reference(eps, delta, j12, j23):
    h = sum(eps[q] * op_on(SZ, q + 1) + delta[q] * op_on(SX, q + 1) for q in range(3))
    return h + j12 * op_on(SZ, 1) @ op_on(SZ, 2) + j23 * op_on(SZ, 2) @ op_on(SZ, 3)


def hyperdeterminant_tau3(psi):
    """Three-tangle ``4 |d1 - 2 d2 + 4 d3|`` from the Cayley hyperdeterminant."""
    a = {"".join(b): psi[i] for i, b in enumerate(itertools.product("01", repeat=3))}
    d1 = (
        a["000"] ** 2 * a["111"] ** 2
        + a["001"] ** 2 * a["110"] ** 2
        + a["010"] ** 2 * a["101"] ** 2
        + a["100"] ** 2 * a["011"] ** 2
    )
    d2 = (
        a["000"] * a["111"] * a["011"] * a["100"]
        + a["000"] * a["111"] * a["101"] * a["010"]
        + a["000"] * a["111"] * a["110"] * a["001"]
        + a["011"] * a["100"] * a["101"] * a["010"]
        + a["011"] * a["100"] * a["110"] * a["001"]
        + a["101"] * a["010"] * a["110"] * a["001"]
    )
    d3 = a["000"] * a["110"] * a["101"] * a["011"] + a["111"] * a["001"] * a["010"] * a["100"]
    return 4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3)


def reduce_to(rho, keep):
    """Partial trace by explicit index loops (qubit 1 is the most significant bit)."""
    n = 3
    keep = sorted(keep)
    drop = [q for q in range(1, n + 1) if q not in keep]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)
    for i, j in itertools.product(range(8), repeat=2):
        bi = [(i >> (n - q)) & 1 for q in range(1, n + 1)]
        bj = [(j >> (n - q)) & 1 for q in range(1, n + 1)]
        if any(bi[q - 1] != bj[q - 1] for q in drop):
            continue
        r = int("".join(str(bi[q - 1]) for q in keep), 2)
        c = int("".join(str(bj[q - 1]) for q in keep), 2)
        out[r, c] += rho[i, j]
    return out


def pair_formula_oracle(rho_ab):
    """``Tr(rho rho~) - 2 l1 l2`` from the non-Hermitian product ``rho rho~``."""
    yy = np.kron(SY, SY)
    flipped = yy @ rho_ab.conj() @ yy
    mu = np.linalg.eigvals(rho_ab @ flipped)
    lam = np.sort(np.sqrt(np.clip(mu.real, 0, None)))[::-1]
    return max(0.0, float(np.trace(rho_ab @ flipped).real - 2 * lam[0] * lam[1]))


def concurrence(rho_ab):
    """Wootters concurrence of a two-qubit state."""
    yy = np.kron(SY, SY)
    mu = np.linalg.eigvals(rho_ab @ yy @ rho_ab.conj() @ yy)
    lam = np.sort(np.sqrt(np.clip(mu.real, 0, None)))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def propagate(h, rho0, t):
    """Exact ``U rho U^dagger`` using numpy's eigh."""
    w, v = np.linalg.eigh(h)
    u = v @ np.diag(np.exp(-1j * w * t / HBAR)) @ v.conj().T
    return u @ rho0 @ u.conj().T


# ---------------------------------------------------------------- six dots

def _annihilator(i, n=6):
    """Jordan-Wigner ``c_i`` on ``n`` orbitals, orbital 1 the most significant."""
    a = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1| in (empty, filled) order
    out = np.array([[1.0 + 0j]])
    for k in range(1, n + 1):
        if k < i:
            f = np.diag([1.0, -1.0]).astype(complex)
        elif k == i:
            f = a
        else:
            f = I2
        out = np.kron(out, f)
    return out


def h6_reference(e, v, u):
    """Second-quantised six-dot Hamiltonian on occupation states, index bit = n_i."""
    # The occupation basis uses bit value 1 = filled, so reorder (empty, filled)
    # to match: with the per-orbital basis (|0>, |1>) = (empty, filled) the
    # annihilator is |0><1|, which is what _annihilator builds.
    c = [None] + [_annihilator(i) for i in range(1, 7)]
    n = [None] + [c[i].conj().T @ c[i] for i in range(1, 7)]
    h = sum(e[i - 1] * n[i] for i in range(1, 7))
    for (a, b), val in zip(((1, 2), (3, 4), (5, 6)), v):
        hop = c[a].conj().T @ c[b]
        h = h + val * (hop + hop.conj().T)
    pairs = ((1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (3, 6), (4, 5), (4, 6))
    for (a, b), val in zip(pairs, u):
        h = h + val * n[a] @ n[b]
    return h


def qubit_subspace_reference():
    """Occupation indices of |q1 q2 q3> with |0> = dot (2q-1) filled."""
    idx = []
    for bits in itertools.product((0, 1), repeat=3):
        occ = []
        for b in bits:
            occ += [1, 0] if b == 0 else [0, 1]
        idx.append(int("".join(map(str, occ)), 2))
    return idx
