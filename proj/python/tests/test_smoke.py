import math
import os
from pathlib import Path

import numpy as np
import pytest

import pulsejitter as pj

SCENARIOS = Path(os.environ.get("PULSEJITTER_SCENARIOS", Path(__file__).resolve().parents[2] / "scenarios"))


def test_units():
    assert pj.units.alpha_from_db_per_km(0.4) == pytest.approx(0.4 * math.log(10) / 1e4, rel=1e-14)
    n = pj.units.photon_number_from_energy(2.4e-12, 1550e-9)
    assert pj.units.energy_from_photon_number(n, 1550e-9) == pytest.approx(2.4e-12, rel=1e-12)


def test_grid_round_trip():
    g = pj.TimeGrid.from_window(1024, 64.0)
    e = pj.make_sech_soliton(g, 1.0, 1e6)
    assert e.samples.dtype == np.complex128
    assert e.photon_number() == pytest.approx(1e6, rel=1e-9)
    back = pj.from_spectrum(pj.to_spectrum(e))
    assert np.max(np.abs(back.samples - e.samples)) < 1e-12 * np.max(np.abs(e.samples))

    custom = pj.Envelope(g, np.exp(-g.times() ** 2 / 2).astype(complex))
    assert custom.photon_number() == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_sech_moments():
    g = pj.TimeGrid.from_window(4096, 64.0)
    m = pj.measure(pj.make_sech_soliton(g, 1.0, 1e6))
    assert m.dt_rms == pytest.approx(math.pi / (2 * math.sqrt(3)), rel=1e-6)
    assert m.domega_rms == pytest.approx(1 / math.sqrt(3), rel=1e-6)
    assert abs(m.chirp) < 1e-9


def test_errors_are_translated():
    g = pj.TimeGrid.from_window(1024, 16.0)
    with pytest.raises(pj.ConfigError):
        pj.make_sech_soliton(g, 1.0, 1.0)
    with pytest.raises(pj.DomainError):
        pj.make_sech_soliton(g, 0.0, 1.0)
    with pytest.raises(ValueError):
        pj.parse_scenario("[pulse]\nshape = square\n")


def test_propagate_lossy_linear():
    g = pj.TimeGrid.from_window(2048, 64.0)
    alpha = pj.units.alpha_from_db_per_km(0.4)
    seg = pj.FiberSegment(1000.0, alpha, 0.0, pj.ConstantDispersion(2e-3))
    e = pj.make_gaussian(g, 1.0, 1e7)
    res = pj.propagate(e, pj.FiberLink([seg]), pj.StepControl(dz=1.0, record_every=100.0),
                       pj.coherent_jitter_init(pj.measure(e)))
    table = res.table()
    assert table["z_m"][0] == 0.0 and table["z_m"][-1] == pytest.approx(1000.0)
    np.testing.assert_allclose(table["N"], 1e7 * np.exp(-alpha * table["z_m"]), rtol=1e-12)
    assert np.all(table["T2_total_ps2"] > 0)


def test_analytic():
    a = pj.analytic
    assert a.time_bandwidth_product(1.0, 50.0) == 1.0
    s = a.gaussian_state_moments(a.JointlyGaussianState(10, 0.5, 0.0))
    assert s.t2 == pytest.approx(a.heisenberg_t2(10, math.sqrt(s.domega2)), rel=1e-12)
    assert a.ideal_squeezing_ratio(-1.0, -1.0) == pytest.approx(math.pi ** 2 / 9)


def test_compare_suite():
    res = pj.compare_analytic(pj.load_scenario(SCENARIOS / "linear_nondispersive.ini"))
    assert res.regime == "linear_nondispersive"
    assert res.passed and res.max_relative_deviation < 1e-6


def test_scenario_run_and_sweep():
    tmpl = pj.ScenarioTemplate.load(SCENARIOS / "linear_dispersive.ini")
    tmpl.set("segment.1.length_m", 200.0)
    out = pj.run(tmpl.instantiate())
    assert out.records[-1].z == pytest.approx(200.0)
    assert out.records_csv().startswith("z_m,N,")
    assert out.final_report.squeezing_ratio > 0

    table = pj.sweep(tmpl, ["segment.1.loss_db_per_km=0.2:0.4:2"])
    assert table.keys == ["segment.1.loss_db_per_km"]
    assert [r.params[0] for r in table.rows] == [0.2, 0.4]
    assert all(r.ok for r in table.rows)
