"""How charge dephasing limits the GHZ fidelity.

Each basis projector gets the same dephasing rate gamma.  Coherences decay
while populations are left alone, so a weak rate only blunts the peak and a
strong one drives the system to the fully mixed state I/8 within tens of ns.

The rate convention matters: a rate gamma in GHz is turned into an energy
with Planck's constant h (the default) or with hbar.  Both are printed.

Run:  python demos/dephasing.py        (about half a minute)
"""
import math

import numpy as np

from chargequbits import (
    DephasingConfig,
    QubitParams,
    TimeGrid,
    basis_state,
    build_h3,
    evolve_lindblad,
    ghz_state,
)

J, DELTA = 25.0, 25.0 / 6
h = build_h3(QubitParams.symmetric(J, DELTA))
rho0 = basis_state("000")
target = {"GHZ-": ghz_state(-math.pi / 2)}
grid = TimeGrid(t_end=50.0, sample_every=50)

# At 1 GHz the coherence is gone before any swap happens, so the largest
# fidelity is the initial overlap 1/2 at t = 0.
print(" gamma/GHz  conv   F_max   t/ns   P000   ||rho-I/8|| at 50 ns")
for gamma in (0.01, 0.1, 1.0):
    for conv in ("h", "hbar"):
        s = evolve_lindblad(h, rho0, grid, DephasingConfig.uniform(gamma, conv), target, tangles=False)
        f = s.fidelities["GHZ-"]
        k = int(np.argmax(f))
        dist = np.linalg.norm(s.final_state - np.eye(8) / 8)
        print(f"{gamma:10.2f}  {conv:5s} {f[k]:6.3f} {s.times[k]:6.2f} {s.population('000')[k]:6.3f}  {dist:.2e}")
