"""From six quantum dots to three qubits.

Each charge qubit is an electron shared between two dots.  Projecting the
six-dot Hamiltonian onto the one-electron-per-molecule states gives the
three-qubit Hamiltonian, with the couplings J set by a quarter-sum of the
inter-dot Coulomb energies.  This demo builds both and confirms they agree.

Run:  python demos/six_dots.py
"""
import numpy as np

from chargequbits import SixDotParams, build_h3, build_h6, map_params, project_to_qubit_subspace

six = SixDotParams(
    site_energies=(0.0, 1.0, -0.5, 0.5, 0.0, 0.0),
    tunnelings=(4.0, 4.2, 3.8),
    coulomb=(60.0, 10.0, 12.0, 58.0, 61.0, 9.0, 11.0, 59.0),
)
qubits, offset = map_params(six)
print(f"epsilon = {np.round(qubits.epsilon, 4)}")
print(f"Delta   = {qubits.delta}")
print(f"J12 = {qubits.j12:.3f}, J23 = {qubits.j23:.3f}, constant offset = {offset:.3f} ueV")

projected = project_to_qubit_subspace(build_h6(six))
mismatch = np.max(np.abs(projected - (build_h3(qubits) + offset * np.eye(8))))
print(f"largest entry difference after projection: {mismatch:.1e} ueV")
