import json
import math
import pathlib

import numpy as np
import pytest

import spinres

CONFIGS = pathlib.Path(__file__).resolve().parents[2] / "configs"


def reference_system():
    return spinres.SpinSystem(
        g_par=2.322,
        g_perp=2.053,
        A_par=spinres.hyperfine_to_joule(-174.6),
        A_perp=spinres.hyperfine_to_joule(13.4),
        P_par=spinres.hyperfine_to_joule(12.3),
        gI_par=8.087e-4,
    )


def test_hamiltonian_is_hermitian_and_diagonalises():
    h = spinres.build_hamiltonian(reference_system(), [0.0, 0.0, 0.26])
    assert h.shape == (8, 8)
    assert np.allclose(h, h.conj().T, atol=0)
    values, vectors = spinres.eigensystem(h)
    ref = np.linalg.eigvalsh(h)
    assert np.allclose(values, ref, rtol=1e-10, atol=1e-35)
    assert np.allclose(vectors.conj().T @ vectors, np.eye(8), atol=1e-12)


def test_four_lines_near_x_band():
    lines = spinres.resonance_fields(reference_system(), 9.121e9, 0.24, 0.32)
    strong = [l for l in lines if l.intensity > 0.1]
    assert [l.mi for l in strong] == [-1.5, -0.5, 0.5, 1.5]
    gaps = np.diff([l.b_center for l in strong])
    assert np.all(np.diff(gaps) > 0)


def test_width_and_fit():
    a = spinres.A_from_width(2.526, 13.2e-3)
    assert spinres.joule_to_hyperfine(a) == pytest.approx(-155.7, rel=5e-3)
    rows = [(-155.7, 2.526, 13.2), (-163.0, 2.375, 14.7), (-178.3, 2.246, 17.0), (-211.1, 2.142, 21.1)]
    fit = spinres.fit_bohr_magneton([(spinres.hyperfine_to_joule(A), g, w * 1e-3) for A, g, w in rows])
    assert fit["beta"] == pytest.approx(9.23e-24, rel=1e-2)


def test_quadrupole_and_jt():
    r3, _ = spinres.r3_from_P(spinres.hyperfine_to_joule(12.3))
    assert 5.15 <= r3 <= 5.30
    phi, adm = spinres.mixing_angle_from_widths([132, 147, 170, 211])
    assert math.degrees(phi) == pytest.approx(6.8257, abs=1e-3)
    assert spinres.delta_g(-0.04) == pytest.approx((0.32, 0.08))


def test_sensitivity():
    n = spinres.n_min(9.121e9, 5e4, 1e-7, 0.02, 5e4)
    assert 2e10 <= n <= 4e10
    ppb = spinres.concentration_ppb(n, 1e-7, 3.756e-10, 3.756e-10, 12.636e-10)
    assert 0.02 <= ppb <= 0.04


def test_run_config_means():
    text = (CONFIGS / "table1_means.json").read_text()
    artifact, summary = spinres.run_config(text, str(CONFIGS))
    doc = json.loads(artifact)
    assert doc["means"]["mean_g"] == pytest.approx(2.1427, abs=1e-4)
    assert "2.1427" in summary


def test_bad_config_raises():
    with pytest.raises(spinres.ConfigError):
        spinres.run_config('{"command": "simulate"}')
