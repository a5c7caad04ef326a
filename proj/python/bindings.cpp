#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "pulsejitter/analytic.hpp"
#include "pulsejitter/errors.hpp"
#include "pulsejitter/fiber.hpp"
#include "pulsejitter/grid.hpp"
#include "pulsejitter/jitter.hpp"
#include "pulsejitter/moments.hpp"
#include "pulsejitter/output.hpp"
#include "pulsejitter/propagator.hpp"
#include "pulsejitter/runner.hpp"
#include "pulsejitter/scenario.hpp"
#include "pulsejitter/units.hpp"

namespace py = pybind11;
using namespace pulsejitter;

namespace {

py::array_t<Complex> to_numpy(std::span<const Complex> v) {
  return py::array_t<Complex>(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())}, v.data());
}

py::array_t<double> to_numpy(const std::vector<double>& v) {
  return py::array_t<double>(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())}, v.data());
}

std::vector<Complex> from_numpy(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

// Column arrays keyed by the names used in records.csv.
py::dict records_table(const std::vector<PropagationRecord>& records) {
  const std::size_t n = records.size();
  std::vector<double> z(n), np(n), dt(n), chirp(n), dw(n), t2(n), diff(n), ch(n), gh(n), om(n), sql(n), hl(n), r(n),
      rdb(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& rec = records[i];
    const JitterReport rep = report(rec.jitter, rec.moments);
    z[i] = rec.z;
    np[i] = rec.moments.n_photons;
    dt[i] = rec.moments.dt_rms;
    chirp[i] = rec.moments.chirp;
    dw[i] = rec.moments.domega_rms;
    t2[i] = rep.t2_total;
    diff[i] = rec.jitter.t2_diff;
    ch[i] = rec.jitter.t2_chirp;
    gh[i] = rec.jitter.t2_gh;
    om[i] = rep.omega2_total;
    sql[i] = rep.sql_t2;
    hl[i] = rep.heisenberg_t2;
    r[i] = rep.squeezing_ratio;
    rdb[i] = rep.squeezing_db;
  }
  py::dict d;
  d["z_m"] = to_numpy(z);
  d["N"] = to_numpy(np);
  d["dt_ps"] = to_numpy(dt);
  d["chirp"] = to_numpy(chirp);
  d["domega_per_ps"] = to_numpy(dw);
  d["T2_total_ps2"] = to_numpy(t2);
  d["T2_diff_ps2"] = to_numpy(diff);
  d["T2_chirp_ps2"] = to_numpy(ch);
  d["T2_gh_ps2"] = to_numpy(gh);
  d["Omega2_per_ps2"] = to_numpy(om);
  d["SQL_T2_ps2"] = to_numpy(sql);
  d["HL_T2_ps2"] = to_numpy(hl);
  d["R"] = to_numpy(r);
  d["R_db"] = to_numpy(rdb);
  return d;
}

void bind_units(py::module_& m) {
  auto u = m.def_submodule("units", "datasheet to canonical unit conversions");
  u.attr("c_light") = units::PhysicalConstants::c_light;
  u.attr("hbar") = units::PhysicalConstants::hbar;
  u.def("alpha_from_db_per_km", &units::alpha_from_db_per_km, py::arg("a_db_per_km"));
  u.def("db_per_km_from_alpha", &units::db_per_km_from_alpha, py::arg("alpha_per_m"));
  u.def("beta_from_ps2_per_km", &units::beta_from_ps2_per_km, py::arg("beta_ps2_per_km"));
  u.def("carrier_angular_frequency", &units::carrier_angular_frequency, py::arg("lambda0_m"));
  u.def("photon_energy", &units::photon_energy, py::arg("lambda0_m"));
  u.def("kappa_from_fiber", &units::kappa_from_fiber, py::arg("n2_m2_per_w"), py::arg("a_eff_m2"),
        py::arg("lambda0_m"));
  u.def("photon_number_from_energy", &units::photon_number_from_energy, py::arg("energy_j"), py::arg("lambda0_m"));
  u.def("energy_from_photon_number", &units::energy_from_photon_number, py::arg("n_photons"), py::arg("lambda0_m"));
}

void bind_grid(py::module_& m) {
  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<std::size_t, double, double>(), py::arg("n_points"), py::arg("dt_ps"), py::arg("t_center_ps") = 0.0)
      .def_static("from_window", &TimeGrid::from_window, py::arg("n_points"), py::arg("window_ps"),
                  py::arg("t_center_ps") = 0.0)
      .def_property_readonly("size", &TimeGrid::size)
      .def_property_readonly("dt", &TimeGrid::dt)
      .def_property_readonly("domega", &TimeGrid::domega)
      .def_property_readonly("window", &TimeGrid::window)
      .def_property_readonly("t_center", &TimeGrid::t_center)
      .def("times", [](const TimeGrid& g) { return to_numpy(g.times()); })
      .def("omegas", [](const TimeGrid& g) { return to_numpy(g.omegas()); })
      .def("__len__", &TimeGrid::size)
      .def("__eq__", [](const TimeGrid& a, const TimeGrid& b) { return a == b; });

  py::class_<Envelope>(m, "Envelope")
      .def(py::init([](const TimeGrid& g, const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
             return Envelope(g, from_numpy(a));
           }),
           py::arg("grid"), py::arg("samples"))
      .def_property_readonly("grid", &Envelope::grid)
      .def_property_readonly("samples", [](const Envelope& e) { return to_numpy(e.samples()); })
      .def("photon_number", &Envelope::photon_number);

  py::class_<Spectrum>(m, "Spectrum")
      .def(py::init([](const TimeGrid& g, const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
             return Spectrum{g, from_numpy(a)};
           }),
           py::arg("grid"), py::arg("samples"))
      .def_readonly("grid", &Spectrum::grid)
      .def_property_readonly("samples", [](const Spectrum& s) { return to_numpy(s.samples); })
      .def("photon_number", &Spectrum::photon_number);

  m.def("to_spectrum", &to_spectrum, py::arg("envelope"));
  m.def("from_spectrum", &from_spectrum, py::arg("spectrum"));
  m.def("make_sech_soliton", &make_sech_soliton, py::arg("grid"), py::arg("tau_ps"), py::arg("n_photons"));
  m.def("make_gaussian", &make_gaussian, py::arg("grid"), py::arg("t0_ps"), py::arg("n_photons"),
        py::arg("quadratic_phase_per_ps2") = 0.0, py::arg("t_offset_ps") = 0.0);
}

void bind_fiber(py::module_& m) {
  py::class_<ConstantDispersion>(m, "ConstantDispersion")
      .def(py::init([](double beta) { return ConstantDispersion{beta}; }), py::arg("beta"))
      .def_readwrite("beta", &ConstantDispersion::beta);
  py::class_<IncreasingDispersion>(m, "IncreasingDispersion")
      .def(py::init([](double beta_end, double length, double ramp) { return IncreasingDispersion{beta_end, length, ramp}; }),
           py::arg("beta_end"), py::arg("length"), py::arg("ramp_length"))
      .def_readwrite("beta_end", &IncreasingDispersion::beta_end)
      .def_readwrite("length", &IncreasingDispersion::length)
      .def_readwrite("ramp_length", &IncreasingDispersion::ramp_length);

  py::class_<FiberSegment>(m, "FiberSegment")
      .def(py::init([](double length, double alpha, double kappa, DispersionProfile d) {
             return FiberSegment{length, alpha, kappa, d};
           }),
           py::arg("length"), py::arg("alpha"), py::arg("kappa"), py::arg("dispersion"))
      .def_readwrite("length", &FiberSegment::length)
      .def_readwrite("alpha", &FiberSegment::alpha)
      .def_readwrite("kappa", &FiberSegment::kappa)
      .def_readwrite("dispersion", &FiberSegment::dispersion)
      .def("beta_at", [](const FiberSegment& s, double z) { return beta_at(s.dispersion, z); }, py::arg("s"))
      .def("integrated_beta", [](const FiberSegment& s, double z) { return integrated_beta(s.dispersion, z); },
           py::arg("s"));

  py::class_<FiberLink>(m, "FiberLink")
      .def(py::init<std::vector<FiberSegment>>(), py::arg("segments"))
      .def_property_readonly("segments", &FiberLink::segments)
      .def_property_readonly("total_length", &FiberLink::total_length)
      .def("segment_start", &FiberLink::segment_start, py::arg("index"))
      .def("beta_at", py::overload_cast<const FiberLink&, double>(&beta_at), py::arg("z"))
      .def("alpha_at", &alpha_at, py::arg("z"))
      .def("net_dispersion", &net_dispersion, py::arg("z"))
      .def("dispersion_scale_length", &dispersion_scale_length, py::arg("z"))
      .def("loss_scale_length", &loss_scale_length, py::arg("z"));

  m.def("compensating_length", &compensating_length, py::arg("preceding"), py::arg("beta"));
  m.def("soliton_period", &soliton_period, py::arg("beta"), py::arg("tau_ps"));
  m.def("figure_of_merit", &figure_of_merit, py::arg("alpha"), py::arg("beta"), py::arg("tau_ps"));
}

void bind_moments_jitter(py::module_& m) {
  py::class_<PulseMoments>(m, "PulseMoments")
      .def(py::init<>())
      .def_readwrite("n_photons", &PulseMoments::n_photons)
      .def_readwrite("dt_rms", &PulseMoments::dt_rms)
      .def_readwrite("chirp", &PulseMoments::chirp)
      .def_readwrite("domega_rms", &PulseMoments::domega_rms)
      .def_readwrite("centroid", &PulseMoments::centroid)
      .def_readwrite("mean_omega", &PulseMoments::mean_omega);
  m.def("measure", &measure, py::arg("envelope"));

  py::class_<JitterState>(m, "JitterState")
      .def(py::init<>())
      .def_readwrite("t2_init", &JitterState::t2_init)
      .def_readwrite("sym_init", &JitterState::sym_init)
      .def_readwrite("omega2_init", &JitterState::omega2_init)
      .def_readwrite("d_net", &JitterState::d_net)
      .def_readwrite("g1", &JitterState::g1)
      .def_readwrite("g2", &JitterState::g2)
      .def_readwrite("t2_gh", &JitterState::t2_gh)
      .def_readwrite("c1", &JitterState::c1)
      .def_readwrite("t2_chirp", &JitterState::t2_chirp)
      .def_readwrite("t2_diff", &JitterState::t2_diff);
  m.def("coherent_jitter_init", &coherent_jitter_init, py::arg("moments"));
  m.def("jitter_init", &jitter_init, py::arg("t2_ps2"), py::arg("sym_ps"), py::arg("omega2_per_ps2"));
  m.def("advance",
        py::overload_cast<const JitterState&, double, double, double, const PulseMoments&, const PulseMoments&>(
            &advance),
        py::arg("state"), py::arg("dz"), py::arg("beta"), py::arg("alpha"), py::arg("start"), py::arg("end"));
  m.def("advance", py::overload_cast<const JitterState&, double, double, double, const PulseMoments&>(&advance),
        py::arg("state"), py::arg("dz"), py::arg("beta"), py::arg("alpha"), py::arg("moments"));
  m.def("total_t2", &total_t2, py::arg("state"));
  m.def("total_omega2", &total_omega2, py::arg("state"));

  py::class_<JitterComponents>(m, "JitterComponents")
      .def_readonly("initial_dispersive", &JitterComponents::initial_dispersive)
      .def_readonly("diffusive", &JitterComponents::diffusive)
      .def_readonly("chirp_induced", &JitterComponents::chirp_induced)
      .def_readonly("gordon_haus", &JitterComponents::gordon_haus);
  py::class_<JitterReport>(m, "JitterReport")
      .def_readonly("t2_total", &JitterReport::t2_total)
      .def_readonly("components", &JitterReport::components)
      .def_readonly("omega2_total", &JitterReport::omega2_total)
      .def_readonly("sql_t2", &JitterReport::sql_t2)
      .def_readonly("heisenberg_t2", &JitterReport::heisenberg_t2)
      .def_readonly("squeezing_ratio", &JitterReport::squeezing_ratio)
      .def_readonly("squeezing_db", &JitterReport::squeezing_db);
  m.def("report", &report, py::arg("state"), py::arg("moments"));
}

void bind_propagation(py::module_& m) {
  py::class_<StepControl>(m, "StepControl")
      .def(py::init([](double dz, double record_every, double fraction) { return StepControl{dz, record_every, fraction}; }),
           py::arg("dz") = 0.25, py::arg("record_every") = 5.0, py::arg("max_step_fraction") = 1.0 / 200.0)
      .def_readwrite("dz", &StepControl::dz)
      .def_readwrite("record_every", &StepControl::record_every)
      .def_readwrite("max_step_fraction", &StepControl::max_step_fraction);

  py::class_<PropagationRecord>(m, "PropagationRecord")
      .def_readonly("z", &PropagationRecord::z)
      .def_readonly("segment", &PropagationRecord::segment)
      .def_readonly("moments", &PropagationRecord::moments)
      .def_readonly("jitter", &PropagationRecord::jitter);

  py::class_<SegmentStepping>(m, "SegmentStepping")
      .def_readonly("steps", &SegmentStepping::steps)
      .def_readonly("step", &SegmentStepping::step);

  py::class_<PropagationResult>(m, "PropagationResult")
      .def_readonly("records", &PropagationResult::records)
      .def_readonly("stepping", &PropagationResult::stepping)
      .def_readonly("final_envelope", &PropagationResult::final_envelope)
      .def("table", [](const PropagationResult& r) { return records_table(r.records); });

  m.def("step", py::overload_cast<Envelope, const FiberSegment&, double, double>(&step), py::arg("envelope"),
        py::arg("segment"), py::arg("s"), py::arg("dz"));
  m.def(
      "propagate",
      [](const Envelope& e, const FiberLink& link, const StepControl& control, const JitterState& init) {
        py::gil_scoped_release release;
        return propagate(e, link, control, init);
      },
      py::arg("envelope"), py::arg("link"), py::arg("control"), py::arg("initial"));
}

void bind_analytic(py::module_& m) {
  auto a = m.def_submodule("analytic", "closed-form reference results");
  py::class_<analytic::AdiabaticSolitonPath>(a, "AdiabaticSolitonPath")
      .def(py::init<FiberSegment, double>(), py::arg("segment"), py::arg("n0"))
      .def("n_photons", &analytic::AdiabaticSolitonPath::n_photons, py::arg("z"))
      .def("tau", &analytic::AdiabaticSolitonPath::tau, py::arg("z"))
      .def("amplitude", &analytic::AdiabaticSolitonPath::amplitude, py::arg("z"))
      .def("dt_rms", &analytic::AdiabaticSolitonPath::dt_rms, py::arg("z"))
      .def("domega_rms", &analytic::AdiabaticSolitonPath::domega_rms, py::arg("z"))
      .def("soliton_period", &analytic::AdiabaticSolitonPath::soliton_period, py::arg("z"));
  a.def("adiabatic_ideal", &analytic::adiabatic_ideal, py::arg("segment"), py::arg("n0"));
  a.def("ideal_squeezing_ratio", &analytic::ideal_squeezing_ratio, py::arg("beta0"), py::arg("beta_end"));
  a.def("linear_nondispersive_t2", &analytic::linear_nondispersive_t2, py::arg("t2_0"), py::arg("dt0"), py::arg("n0"),
        py::arg("alpha"), py::arg("z"));
  a.def("linear_nondispersive_R", &analytic::linear_nondispersive_R, py::arg("r0"), py::arg("tbp0"), py::arg("alpha"),
        py::arg("z"));
  a.def("normalized_distance", &analytic::normalized_distance, py::arg("domega0"), py::arg("net_dispersion"));
  a.def("linear_dispersive_R", &analytic::linear_dispersive_R, py::arg("r0"), py::arg("tbp0"), py::arg("zeta"),
        py::arg("alpha"), py::arg("z"));
  a.def("soliton_normalized_R", &analytic::soliton_normalized_R, py::arg("r0"), py::arg("lambda_"), py::arg("alpha"),
        py::arg("z"));
  a.def("soliton_low_loss_R", &analytic::soliton_low_loss_R, py::arg("r0"), py::arg("lambda_"), py::arg("alpha"),
        py::arg("z"));

  py::class_<analytic::JointlyGaussianState>(a, "JointlyGaussianState")
      .def(py::init([](int n, double big_b, double small_b) { return analytic::JointlyGaussianState{n, big_b, small_b}; }),
           py::arg("n_photons"), py::arg("big_b"), py::arg("small_b"));
  py::class_<analytic::GaussianStateMoments>(a, "GaussianStateMoments")
      .def_readonly("omega2", &analytic::GaussianStateMoments::omega2)
      .def_readonly("t2", &analytic::GaussianStateMoments::t2)
      .def_readonly("domega2", &analytic::GaussianStateMoments::domega2)
      .def_readonly("dt2", &analytic::GaussianStateMoments::dt2)
      .def_readonly("tbp", &analytic::GaussianStateMoments::tbp)
      .def_readonly("squeezing_ratio", &analytic::GaussianStateMoments::squeezing_ratio);
  a.def("gaussian_state_moments", &analytic::gaussian_state_moments, py::arg("state"));
  a.def("time_bandwidth_product", &analytic::time_bandwidth_product, py::arg("squeezing_ratio"), py::arg("n_photons"));
  a.def("gaussian_lossy_R", &analytic::gaussian_lossy_R, py::arg("state"), py::arg("alpha"), py::arg("z"));
  a.def("heisenberg_t2", &analytic::heisenberg_t2, py::arg("n_photons"), py::arg("domega"));
  a.def("sql_t2", &analytic::sql_t2, py::arg("n_photons"), py::arg("domega"));
  a.def("exact_heisenberg_t2", &analytic::exact_heisenberg_t2, py::arg("n_photons"), py::arg("domega_prime"));
}

void bind_scenarios(py::module_& m) {
  py::class_<Scenario>(m, "Scenario").def_readonly("name", &Scenario::name);

  py::class_<ScenarioTemplate>(m, "ScenarioTemplate")
      .def_static("parse", &ScenarioTemplate::parse, py::arg("text"), py::arg("name") = "scenario")
      .def_static("load", &ScenarioTemplate::load, py::arg("path"))
      .def_property_readonly("name", &ScenarioTemplate::name)
      .def("set", &ScenarioTemplate::set, py::arg("key"), py::arg("value"))
      .def("instantiate", &ScenarioTemplate::instantiate);

  m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("name") = "scenario");
  m.def("load_scenario", &load_scenario, py::arg("path"));

  py::class_<ConvergenceInfo>(m, "ConvergenceInfo")
      .def_readonly("checked", &ConvergenceInfo::checked)
      .def_readonly("dz_used", &ConvergenceInfo::dz_used)
      .def_readonly("halved_R", &ConvergenceInfo::halved_R)
      .def_readonly("relative_delta", &ConvergenceInfo::relative_delta);

  py::class_<RunOutput>(m, "RunOutput")
      .def_readonly("name", &RunOutput::name)
      .def_readonly("grid", &RunOutput::grid)
      .def_readonly("records", &RunOutput::records)
      .def_readonly("stepping", &RunOutput::stepping)
      .def_readonly("initial_moments", &RunOutput::initial_moments)
      .def_readonly("final_moments", &RunOutput::final_moments)
      .def_readonly("final_report", &RunOutput::final_report)
      .def_readonly("t2_initial", &RunOutput::t2_initial)
      .def_readonly("narrowing", &RunOutput::narrowing)
      .def_readonly("ideal_narrowing", &RunOutput::ideal_narrowing)
      .def_readonly("convergence", &RunOutput::convergence)
      .def_readonly("runtime_s", &RunOutput::runtime_s)
      .def("table", [](const RunOutput& r) { return records_table(r.records); })
      .def("records_csv",
           [](const RunOutput& r) {
             std::ostringstream os;
             write_records_csv(os, r);
             return os.str();
           })
      .def("summary_json", [](const RunOutput& r) { return summary_json(r); })
      .def("write", [](const RunOutput& r, const std::filesystem::path& dir) { write_run(dir, r); }, py::arg("dir"));

  m.def(
      "run",
      [](const Scenario& sc, std::optional<double> dz_m, bool check_convergence) {
        py::gil_scoped_release release;
        return run(sc, RunOptions{dz_m, check_convergence});
      },
      py::arg("scenario"), py::arg("dz_m") = std::nullopt, py::arg("check_convergence") = false);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("params", &SweepRow::params)
      .def_readonly("ok", &SweepRow::ok)
      .def_readonly("error", &SweepRow::error)
      .def_readonly("squeezing_db", &SweepRow::squeezing_db)
      .def_readonly("squeezing_ratio", &SweepRow::squeezing_ratio)
      .def_readonly("normalized", &SweepRow::normalized)
      .def_readonly("t2_normalized", &SweepRow::t2_normalized)
      .def_readonly("narrowing", &SweepRow::narrowing)
      .def_readonly("adiabaticity", &SweepRow::adiabaticity);
  py::class_<SweepTable>(m, "SweepTable")
      .def_readonly("keys", &SweepTable::keys)
      .def_readonly("rows", &SweepTable::rows)
      .def("csv", [](const SweepTable& t) {
        std::ostringstream os;
        write_sweep_csv(os, t);
        return os.str();
      });
  m.def(
      "sweep",
      [](const ScenarioTemplate& base, const std::vector<std::string>& params, std::size_t max_workers) {
        std::vector<ParamRange> ranges;
        for (const auto& p : params) ranges.push_back(ParamRange::parse(p));
        py::gil_scoped_release release;
        return sweep(base, ranges, max_workers);
      },
      py::arg("template"), py::arg("params"), py::arg("max_workers") = 0);

  py::class_<CompareRow>(m, "CompareRow")
      .def_readonly("z", &CompareRow::z)
      .def_readonly("numeric_t2", &CompareRow::numeric_t2)
      .def_readonly("analytic_t2", &CompareRow::analytic_t2)
      .def_readonly("relative_deviation", &CompareRow::relative_deviation);
  py::class_<CompareResult>(m, "CompareResult")
      .def_property_readonly("regime", [](const CompareResult& r) { return std::string(to_string(r.regime)); })
      .def_readonly("tolerance", &CompareResult::tolerance)
      .def_readonly("max_relative_deviation", &CompareResult::max_relative_deviation)
      .def_readonly("passed", &CompareResult::passed)
      .def_readonly("rows", &CompareResult::rows);
  m.def(
      "compare_analytic",
      [](const Scenario& sc) {
        py::gil_scoped_release release;
        return compare_analytic(sc);
      },
      py::arg("scenario"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum timing jitter of solitons in lossy, dispersion-varying fiber";
  m.attr("__version__") = "0.1.0";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

  bind_units(m);
  bind_grid(m);
  bind_fiber(m);
  bind_moments_jitter(m);
  bind_propagation(m);
  bind_analytic(m);
  bind_scenarios(m);
}
