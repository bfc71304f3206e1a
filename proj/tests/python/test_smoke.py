import math

import pytest

import blowuplab as bl


def test_profile_values():
    assert bl.profile_U(0.0, 7) == pytest.approx(4.0)
    assert bl.profile_U(1.0, 7) == pytest.approx(2.0)
    assert bl.profile_psi_star([0.0] * 7) == pytest.approx(4.0)
    assert bl.potential_V([1.0] + [0.0] * 6) == pytest.approx(12.0)
    with pytest.raises(ValueError):
        bl.profile_U(0.0, 4)


def test_classification():
    assert bl.classify_lambda(0, 3.0)["label"] == "eigenvalue"
    assert bl.classify_lambda(0, 2.0)["label"] == "not_eigenvalue"
    assert bl.classify_lambda(1, complex(1, 0))["label"] == "eigenvalue"
    found = sorted((l, z.real) for l, z in bl.scan_eigenvalues(2, 0, 4, -1, 1, 0.5))
    assert found == [(0, 1.0), (0, 3.0), (1, 0.0), (1, 1.0)]


def test_certificates():
    assert bl.closed_form("susy_delta1", 1, 1, 0) == pytest.approx(3 / 44)
    assert bl.q_polynomial_sign_check(5, 3)
    assert bl.routh_hurwitz_check([1, 1])
    assert not bl.routh_hurwitz_check([-1, 1])


def test_nonhom_and_resolvent():
    assert bl.constant_C() == pytest.approx(11 / 24 - 5 * math.pi / 32, abs=1e-12)
    assert bl.nonhom_asymptotics("NonHom2")["pass"]
    u = bl.resolvent_solve(0, lambda r: 1.0, [0.25, 0.5, 0.75])
    assert u == pytest.approx([4 / 63] * 3, rel=1e-9)


def test_dissipativity():
    rows = bl.dissipativity_sweep(10, 3, 4)
    assert len(rows) == 10
    assert all(int(num) <= 0 for _, _, num, _, _ in rows)


def test_spectrum_and_rates():
    ev = bl.discrete_spectrum(0, 40)
    assert [round(z.real, 6) for z in ev] == [3.0, 1.0]
    assert bl.linear_growth_rate(0, 3, t1=3.0) == pytest.approx(3.0, abs=1e-3)
