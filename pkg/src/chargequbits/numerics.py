"""Dense complex linear algebra for small (at most 64x64) matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Products and
adjoints use numpy directly; the Hermitian eigensolver is a cyclic Jacobi
iteration so that the whole package has a single, auditable source of
eigen-decompositions.

Qubit ordering: qubit 1 is the most significant bit of a basis label, so
``|q1 q2 q3>`` has index ``4*q1 + 2*q2 + q3``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BadSubset, DimMismatch, NoConvergence, NotHermitian, NotPSD

MAX_DIM = 64
MAX_SWEEPS = 100
HERMITIAN_RTOL = 1e-10
PSD_CLAMP = 1e-12
PSD_FAIL = 1e-9


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_square(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a finite complex square array, or raise ``DimMismatch``."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimMismatch(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def frobenius_distance(a, b) -> float:
    """Frobenius norm of ``a - b``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return frobenius_norm(a - b)


def hermiticity_error(a: np.ndarray) -> float:
    return frobenius_norm(a - dagger(a))


def kron(a, b) -> np.ndarray:
    """Kronecker product of two square matrices.

    Entry ``(i*nb + k, j*nb + l)`` of the result is ``a[i, j] * b[k, l]``.
    """
    a = as_square(a, "a")
    b = as_square(b, "b")
    return np.kron(a, b)


def kron_all(*factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = kron(out, f)
    return out


def hermitian_eig(a, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot element ``a[p, q]``
    with a diagonal unitary and then applies the classical real Jacobi
    rotation, so the pivot is annihilated exactly.

    Parameters
    ----------
    a : array_like
        Hermitian matrix, ``||a - a^H||_F <= 1e-10 ||a||_F``.
    max_sweeps : int
        Cap on full cyclic sweeps over the upper triangle.

    Returns
    -------
    EigenDecomposition
        Eigenvalues in ascending order and orthonormal eigenvector columns.

    Raises
    ------
    NotHermitian
        If the input is not Hermitian within tolerance.
    NoConvergence
        If the off-diagonal norm has not vanished after ``max_sweeps``.
    """
    a = as_square(a).copy()
    n = a.shape[0]
    if n > MAX_DIM:
        raise DimMismatch(f"dimension {n} exceeds {MAX_DIM}")
    norm = frobenius_norm(a)
    v = np.eye(n, dtype=complex)
    if norm == 0.0:
        return EigenDecomposition(np.zeros(n), v)
    if hermiticity_error(a) > HERMITIAN_RTOL * norm:
        raise NotHermitian(f"||A - A^H||_F = {hermiticity_error(a):.3e}")
    a = 0.5 * (a + dagger(a))

    tol = max(n, 2) * 1e-15 * norm
    negligible = 1e-18 * norm
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps + 1):
        off = math.sqrt(float(np.sum(np.abs(a[offdiag]) ** 2)))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= negligible:
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / mag
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # u = [[c, s], [-s*conj(phase), c*conj(phase)]] acting on columns (p, q)
                u10 = -s * phase.conjugate()
                u11 = c * phase.conjugate()
                cp = a[:, p].copy()
                cq = a[:, q]
                a[:, p] = c * cp + u10 * cq
                a[:, q] = s * cp + u11 * cq
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp + u10.conjugate() * rq
                a[q, :] = s * rp + u11.conjugate() * rq
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp + u10 * vq
                v[:, q] = s * vp + u11 * vq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], v[:, order])


def matrix_sqrt_psd(a) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-1e-9, 0)`` are treated as round-off and set to zero.
    """
    dec = hermitian_eig(a)
    w = dec.eigenvalues
    if w.size and w.min() < -PSD_FAIL:
        raise NotPSD(f"minimum eigenvalue {w.min():.3e}")
    w = np.sqrt(np.clip(w, 0.0, None))
    v = dec.eigenvectors
    return (v * w) @ dagger(v)


def n_qubits_of(dim: int) -> int:
    n = int(round(math.log2(dim))) if dim > 0 else 0
    if 2**n != dim:
        raise DimMismatch(f"dimension {dim} is not a power of two")
    return n


def partial_trace(rho, keep: Iterable[int]) -> np.ndarray:
    """Reduce a multi-qubit operator to the qubits in ``keep`` (1-based).

    The kept qubits appear in ascending order in the result.
    """
    rho = as_square(rho, "rho")
    n = n_qubits_of(rho.shape[0])
    keep = sorted(set(int(k) for k in keep))
    if not keep or len(keep) >= n or keep[0] < 1 or keep[-1] > n:
        raise BadSubset(f"keep={keep} must be a nonempty proper subset of 1..{n}")
    t = rho.reshape([2] * (2 * n))
    # einsum labels: row indices a.., column indices A..; traced qubits share labels
    rows = [chr(ord("a") + i) for i in range(n)]
    cols = [chr(ord("A") + i) if (i + 1) in keep else rows[i] for i in range(n)]
    out = [rows[k - 1] for k in keep] + [cols[k - 1] for k in keep]
    spec = "".join(rows) + "".join(cols) + "->" + "".join(out)
    m = 2 ** len(keep)
    return np.einsum(spec, t).reshape(m, m)
