import math

import numpy as np
import pytest

import callias


def test_hedgehog_index():
    r = callias.index("hedgehog")
    assert r["converged"]
    assert abs(r["index"] + 1) < 1e-6
    assert r["imag_residual"] < 1e-9


def test_block_embedding_note():
    r = callias.index("block:hedgehog,l=2")
    assert abs(r["index"] + 1) < 1e-6
    assert "non-Fredholm" in r["note"]


def test_gammas_anticommute():
    g = callias.gammas(5)
    assert len(g) == 5
    for a in range(5):
        for b in range(5):
            anti = g[a] @ g[b] + g[b] @ g[a]
            assert np.allclose(anti, 2 * np.eye(4) * (a == b), atol=1e-14)
    assert abs(callias.gamma_trace(3, [1, 2, 3]) - 2j) < 1e-14


def test_sign_functions_agree():
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    a = q @ np.diag([1.0, -0.5, 2.0, -3.0]) @ q.conj().T
    a = 0.5 * (a + a.conj().T)
    s1 = callias.sign_spectral(a, 0.4)
    s2 = callias.sign_integral(a, 0.16)
    assert np.max(np.abs(s1 - s2)) < 1e-7
    assert np.allclose(s1 @ s1, np.eye(4), atol=1e-10)


def test_kernel_and_resolvent():
    mu, r = 2.0, 0.7
    assert abs(callias.kernel(3, mu, r) - math.exp(-math.sqrt(mu) * r) / (4 * math.pi * r)) < 1e-14
    assert abs(callias.resolvent_power_diagonal(3, 3, 0.0) - 1 / (32 * math.pi)) < 1e-12
    ok, violation, samples = callias.verify_inequality("L5_11_argument", 3, 50)
    assert ok and samples > 0


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        callias.index("nonesuch")
    with pytest.raises(ValueError):
        callias.kernel(4, 1.0, 1.0)


def test_constant_lattice_is_zero():
    r = callias.witten("constant", 0, [1.0])
    assert r["method"] == "commuting"
    assert all(v == 0 for _, v in r["f"])


def test_clifford_suite():
    lines = callias.verify("clifford", 3)
    assert lines and all(l["pass"] or l["informational"] for l in lines)
