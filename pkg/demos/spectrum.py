"""Eigenstates of the three-qubit Hamiltonian as the tunneling grows.

For small Delta the two highest eigenstates are almost exactly GHZ(pi)
and GHZ(0): the perturbation splits the |000>/|111> doublet into its
symmetric and antisymmetric combinations.  As Delta approaches J the
eigenstates pick up admixtures of the other basis states and the overlap
with the ideal GHZ states drops.

Run:  python demos/spectrum.py
"""
import numpy as np

from chargequbits import sweep_spectrum

J = 25.0
rows = sweep_spectrum(J, np.linspace(J / 20, J, 20))

print(" Delta/J   E_top/J   F(GHZ pi)  F(GHZ 0)")
for r in rows:
    e = r.eigenvalues_over_j
    print(f"{r.delta_over_j:8.3f} {e[-1]:9.3f} {r.fidelities['ghz_pi']:10.4f} {r.fidelities['ghz_0']:9.4f}")
