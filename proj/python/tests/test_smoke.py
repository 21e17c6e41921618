import math

import pytest

import gaugecmp as g


def ground_to_2p(coupling, Z=1.0):
    return g.TransitionSpec(g.AtomicState(1, 0, 0, Z), g.AtomicState(2, 1, 0, Z), coupling)


def test_emission_rate():
    spec = g.TransitionSpec(g.AtomicState(2, 1, 0), g.AtomicState(1, 0, 0), g.Coupling.minimal)
    assert g.emission_rate(spec) == pytest.approx(6.26e8, rel=0.02)


def test_vacuum_offset_sign_and_size():
    dip = g.vacuum_probability(ground_to_2p(g.Coupling.dipole), math.inf).P0
    mini = g.vacuum_probability(ground_to_2p(g.Coupling.minimal), math.inf).P0
    assert 0 < dip < mini
    assert mini - dip == pytest.approx(2.56e-4, rel=0.02)


def test_envelope_ratio():
    for w in (0.0, 1e-3, 0.05):
        r = g.form_factor_1s2p(w, 2.0, g.Coupling.dipole) / g.form_factor_1s2p(w, 2.0, g.Coupling.minimal)
        assert r == pytest.approx(1.0 / g.envelope_1s2p(w, 2.0), rel=1e-13)


def test_cg_completeness():
    s = sum(g.clebsch_gordan(1, 0, 1, 0, L, 0) ** 2 for L in range(3))
    assert s == pytest.approx(1.0, abs=1e-14)


def test_coherent_scaling():
    spec = ground_to_2p(g.Coupling.minimal)
    W = spec.gap
    args = dict(k0=(W, 0, 0), sigma=(W / 100,) * 3, Tstar=300 / W)
    p1 = g.coherent_probability(spec, 400 / W, **args).Pphi
    p2 = g.coherent_probability(spec, 400 / W, amplitude_scale=2.0, **args).Pphi
    assert p2 == pytest.approx(4 * p1, rel=1e-12)


def test_run_scenario_deterministic():
    cfg = "[transition]\nZ = 1, 2\n\n[time]\nT_in_inverse_Omega = 1, 10\n"
    a, failed_a = g.run_scenario("vacuum-excitation", cfg, workers=1)
    b, failed_b = g.run_scenario("vacuum-excitation", cfg, workers=3)
    assert a == b
    assert not failed_a and not failed_b
    assert "rel_difference" in a


def test_config_error():
    with pytest.raises(ValueError, match="line 2"):
        g.run_scenario("vacuum-excitation", "[time]\nT_in_inverse_Omega = banana\n")
    with pytest.raises(ValueError):
        g.run_scenario("emission", preset="fig7")


def test_presets():
    assert "fig7" in g.presets()


def test_gauge_audit_small():
    cases = g.gauge_audit(random_chi=2)
    assert cases and all(passed for _, _, _, passed in cases)
