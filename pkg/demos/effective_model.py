"""Compare the full eight-level dynamics with a two-level Rabi model.

Eliminating the six far-off basis states leaves |000> and |111> coupled by
Omega = Delta^3 / J^2.  The populations then follow cos^2 and sin^2 of
Omega t / hbar.  This script checks the closed form against the numerical
third-order term and shows how far the exact populations stray from the
Rabi curves over one formation time.

Run:  python demos/effective_model.py
"""
from chargequbits import QubitParams, omega_closed_form, omega_numeric
from chargequbits.effective import effective_vs_exact_report

J = 25.0
print(" Delta/J   Omega closed   third order    resolvent   max |dP|")
for frac in (1 / 20, 1 / 10, 1 / 6, 1 / 4):
    delta = frac * J
    p = QubitParams.symmetric(J, delta)
    dev = effective_vs_exact_report(p).worst
    print(
        f"{frac:8.3f} {omega_closed_form(delta, J):13.6e} {omega_numeric(p):13.6e}"
        f" {omega_numeric(p, mode='resolvent'):12.6e} {dev:10.4f}"
    )
