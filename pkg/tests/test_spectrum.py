import math

import numpy as np
import pytest

from chargequbits.errors import PeakNotFound
from chargequbits.model import QubitParams, build_h3, flip_state, ghz_state
from chargequbits.spectrum import default_deltas, fix_phase, formation_time_sweep, spectrum_row, sweep_spectrum
from oracles import J_REF, SX, op_on

ROWS = sweep_spectrum(J_REF)


def test_default_grid():
    d = default_deltas(J_REF)
    assert len(d) == 200 and d[0] > 0 and d[-1] == pytest.approx(J_REF)
    assert [r.delta for r in ROWS] == list(d)


def test_small_delta_limit():
    row = spectrum_row(J_REF, 1e-4)
    assert np.allclose(row.eigenvalues_over_j, [-2, -2, 0, 0, 0, 0, 2, 2], atol=1e-4)


def test_ascending_and_bounded():
    for r in ROWS:
        assert np.all(np.diff(r.eigenvalues) >= 0)
        assert all(-1e-12 <= f <= 1 + 1e-9 for f in r.fidelities.values())


def test_matches_numpy_oracle():
    for r in ROWS[::20]:
        w, v = np.linalg.eigh(build_h3(QubitParams.symmetric(J_REF, r.delta)))
        assert np.allclose(r.eigenvalues, w, atol=1e-10)
        top = sorted(abs(np.vdot(ref, v[:, k])) ** 2 for k in (6, 7) for ref in (ghz_state(0), ghz_state(math.pi)))
        assert max(r.fidelities["ghz_0"], r.fidelities["ghz_pi"]) == pytest.approx(top[-1], abs=1e-9)


def test_lipschitz():
    for a, b in zip(ROWS, ROWS[1:]):
        assert np.max(np.abs(b.eigenvalues - a.eigenvalues)) <= 5 * (b.delta - a.delta)


def test_sigma_z_flip_symmetry():
    x = op_on(SX, 1) @ op_on(SX, 2) @ op_on(SX, 3)
    for r in ROWS[::25]:
        h = build_h3(QubitParams.symmetric(J_REF, r.delta))
        assert np.allclose(np.linalg.eigvalsh(x @ h @ x), r.eigenvalues, atol=1e-10)


def test_assignment_maximises_total():
    for r in ROWS[::10]:
        v = r.eigenvectors
        for refs, (i, k) in (((ghz_state(math.pi), ghz_state(0)), (6, 7)), ((flip_state(math.pi), flip_state(0)), (0, 1))):
            f = lambda ref, col: abs(np.vdot(ref, v[:, col])) ** 2  # noqa: E731
            straight = f(refs[0], i) + f(refs[1], k)
            swapped = f(refs[0], k) + f(refs[1], i)
            chosen = r.fidelities["ghz_pi" if k == 7 else "flip_pi"] + r.fidelities["ghz_0" if k == 7 else "flip_0"]
            assert chosen == pytest.approx(max(straight, swapped), abs=1e-12)


def test_flip_pair_mirrors_ghz_pair():
    for r in ROWS[::10]:
        assert r.fidelities["flip_pi"] == pytest.approx(r.fidelities["ghz_0"], abs=1e-9)
        assert r.fidelities["flip_0"] == pytest.approx(r.fidelities["ghz_pi"], abs=1e-9)


def test_fix_phase():
    v = fix_phase(np.array([[0.1j, 1], [-0.9j, 0.2]]))
    for k in range(2):
        i = np.argmax(np.abs(v[:, k]))
        assert v[i, k].imag == 0 and v[i, k].real > 0


def test_parallel_matches_serial():
    d = default_deltas(J_REF, 40)
    serial = sweep_spectrum(J_REF, d)
    parallel = sweep_spectrum(J_REF, d, workers=4)
    for a, b in zip(serial, parallel):
        assert a.delta == b.delta and np.array_equal(a.eigenvalues, b.eigenvalues)
        assert a.fidelities == b.fidelities


@pytest.mark.parametrize("deltas", [[], [0.0, 1.0], [2.0, 1.0]])
def test_bad_deltas(deltas):
    with pytest.raises(ValueError):
        sweep_spectrum(J_REF, deltas)


def test_formation_sweep():
    rows = formation_time_sweep(J_REF, [J_REF / 10, J_REF / 8, J_REF / 6])
    for r in rows:
        assert abs(r.t_exact - r.t_formula) <= 0.15 * r.t_formula
        assert r.fidelity > 0.99


def test_formation_sweep_flip():
    (row,) = formation_time_sweep(J_REF, [J_REF / 6], initial="010")
    assert abs(row.t_exact - row.t_formula) <= 0.15 * row.t_formula


def test_peak_not_found():
    # far outside the perturbative regime the coarse samples never rise above F(0)
    with pytest.raises(PeakNotFound):
        formation_time_sweep(J_REF, [3 * J_REF], n_samples=50)
