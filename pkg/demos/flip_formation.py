"""The same mechanism starting from |010> produces FLIP states.

|010> and |101> form the second nearly degenerate pair.  Their splitting has
the same third-order size as for |000>/|111>, so the superposition
(|010> - i|101>)/sqrt(2) appears at the same time as the GHZ state does.

Run:  python demos/flip_formation.py
"""
import math

from chargequbits import (
    FLIP_LABELS,
    GHZ_LABELS,
    QubitParams,
    TimeGrid,
    basis_state,
    build_h3,
    evolve_unitary,
    first_peak,
    flip_state,
    omega_numeric,
)

J, DELTA = 25.0, 25.0 / 6
p = QubitParams.symmetric(J, DELTA)

print(f"Omega for the GHZ pair:  {omega_numeric(p, GHZ_LABELS):.6f} ueV")
print(f"Omega for the FLIP pair: {omega_numeric(p, FLIP_LABELS):.6f} ueV")

series = evolve_unitary(
    build_h3(p),
    basis_state("010"),
    TimeGrid(t_end=18.0, sample_every=10),
    {"FLIP-": flip_state(-math.pi / 2)},
)
i, t_peak, f_peak = first_peak(series.times, series.fidelities["FLIP-"])
print(f"FLIP- peak: F = {f_peak:.4f} at {t_peak:.3f} ns")
print(f"P010 = {series.population('010')[i]:.3f}, P101 = {series.population('101')[i]:.3f}")
