#include "pulsejitter/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "pulsejitter/analytic.hpp"
#include "pulsejitter/errors.hpp"

namespace pulsejitter {

namespace {

ProfileSnapshot snapshot(double z, const Envelope& envelope, std::size_t decimate) {
  ProfileSnapshot p;
  p.z = z;
  const auto a = envelope.samples();
  const Spectrum spec = to_spectrum(envelope);
  for (std::size_t k = 0; k < a.size(); k += decimate) {
    p.intensity.push_back(std::norm(a[k]));
    p.spectrum.push_back(std::norm(spec.samples[k]));
  }
  return p;
}

std::optional<double> ideal_narrowing(const BuiltScenario& built) {
  const auto& first = built.link.segments().front();
  if (!(first.kappa > 0.0)) return std::nullopt;
  if (!(beta_at(first.dispersion, 0.0) < 0.0 && beta_at(first.dispersion, first.length) < 0.0)) return std::nullopt;
  const auto path = analytic::adiabatic_ideal(first, built.initial_moments.n_photons);
  return path.domega_rms(0.0) / path.domega_rms(first.length);
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError("bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

RunOutput run(const Scenario& scenario, const RunOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();
  BuiltScenario built = build(scenario);
  if (options.dz_m) {
    if (!(*options.dz_m > 0.0)) throw ConfigError("--dz must be positive");
    built.control.dz = *options.dz_m;
    built.control.record_every = std::max(built.control.record_every, built.control.dz);
  }

  RunOutput out{scenario.name, built.initial.grid(), {}, {}, built.initial_moments, {}, {}, total_t2(built.jitter_init),
                0.0, ideal_narrowing(built), {}, {}, 0.0};

  RecordObserver observer;
  double next_profile = 0.0;
  if (scenario.outputs.profiles) {
    const double every = scenario.outputs.profile_every_m;
    const std::size_t decimate = scenario.outputs.profile_decimate;
    observer = [&, every, decimate](const PropagationRecord& rec, const Envelope& env) {
      if (rec.z >= next_profile * (1.0 - 1e-12)) {
        out.profiles.push_back(snapshot(rec.z, env, decimate));
        while (next_profile <= rec.z * (1.0 + 1e-12)) next_profile += every;
      }
    };
  }

  PropagationResult result = propagate(built.initial, built.link, built.control, built.jitter_init, observer);
  out.records = std::move(result.records);
  out.stepping = std::move(result.stepping);
  out.final_moments = out.records.back().moments;
  out.final_report = report(out.records.back().jitter, out.final_moments);
  out.narrowing = out.initial_moments.domega_rms / out.final_moments.domega_rms;

  out.convergence.dz_used = built.control.dz;
  if (options.check_convergence) {
    StepControl halved = built.control;
    halved.dz *= 0.5;
    halved.max_step_fraction *= 0.5;
    halved.record_every = std::numeric_limits<double>::infinity();
    const auto fine = propagate(built.initial, built.link, halved, built.jitter_init);
    const double r_half = report(fine.records.back().jitter, fine.records.back().moments).squeezing_ratio;
    out.convergence.checked = true;
    out.convergence.halved_R = r_half;
    out.convergence.relative_delta = std::abs(r_half - out.final_report.squeezing_ratio) / out.final_report.squeezing_ratio;
  }

  out.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return out;
}

ParamRange ParamRange::parse(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError("--param expects name=lo:hi:n, got '" + std::string(text) + "'");
  const auto spec = text.substr(eq + 1);
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ConfigError("--param expects name=lo:hi:n, got '" + std::string(text) + "'");

  ParamRange r;
  r.key = std::string(text.substr(0, eq));
  r.lo = parse_double(spec.substr(0, c1), "range start");
  r.hi = parse_double(spec.substr(c1 + 1, c2 - c1 - 1), "range end");
  const auto n_text = spec.substr(c2 + 1);
  auto [ptr, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), r.count);
  if (ec != std::errc{} || ptr != n_text.data() + n_text.size())
    throw ConfigError("bad range count '" + std::string(n_text) + "'");
  return r;
}

std::vector<double> ParamRange::values() const {
  std::vector<double> v;
  v.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    v.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  return v;
}

double adiabaticity(const BuiltScenario& built) {
  const auto& first = built.link.segments().front();
  if (std::holds_alternative<ConstantDispersion>(first.dispersion)) return std::numeric_limits<double>::infinity();
  const auto path = analytic::adiabatic_ideal(first, built.initial_moments.n_photons);
  constexpr int kSamples = 256;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double s = first.length * i / kSamples;
    const double scale = std::abs(beta_at(first.dispersion, s) / beta_derivative_at(first.dispersion, s));
    worst = std::min(worst, scale / path.soliton_period(s));
  }
  return worst;
}

SweepTable sweep(const ScenarioTemplate& base, const std::vector<ParamRange>& ranges, std::size_t max_workers) {
  SweepTable table;
  std::vector<std::vector<double>> axes;
  std::size_t total = ranges.empty() ? 0 : 1;
  for (const auto& r : ranges) {
    table.keys.push_back(r.key);
    axes.push_back(r.values());
    total *= axes.back().size();
  }
  table.rows.resize(total);
  if (total == 0) return table;

  // Validate every point up front so a bad key is a config error, not a row.
  std::vector<Scenario> scenarios;
  scenarios.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    ScenarioTemplate t = base;
    std::size_t rest = idx;
    std::vector<double> params(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      params[a] = axes[a][rest % axes[a].size()];
      rest /= axes[a].size();
    }
    for (std::size_t a = 0; a < axes.size(); ++a) t.set(table.keys[a], params[a]);
    table.rows[idx].params = std::move(params);
    scenarios.push_back(t.instantiate());
  }

  auto evaluate = [&](std::size_t idx) {
    SweepRow& row = table.rows[idx];
    try {
      const BuiltScenario built = build(scenarios[idx]);
      row.adiabaticity = adiabaticity(built);
      const RunOutput out = run(scenarios[idx]);
      const double t0 = out.t2_initial;
      row.squeezing_db = out.final_report.squeezing_db;
      row.squeezing_ratio = out.final_report.squeezing_ratio;
      row.normalized = {out.final_report.components.initial_dispersive / t0, out.final_report.components.diffusive / t0,
                        out.final_report.components.chirp_induced / t0, out.final_report.components.gordon_haus / t0};
      row.t2_normalized = out.final_report.t2_total / t0;
      row.narrowing = out.narrowing;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  std::size_t workers = max_workers ? max_workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, total);
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t idx = next++; idx < total; idx = next++) evaluate(idx);
    }));
  for (auto& f : pool) f.get();
  return table;
}

CompareResult compare_analytic(const Scenario& scenario) {
  const BuiltScenario built = build(scenario);
  CompareResult result;
  result.regime = scenario.analytic.regime;
  result.tolerance = scenario.analytic.tolerance;

  const auto& segs = built.link.segments();
  const PulseMoments& m0 = built.initial_moments;
  const JitterState& init = built.jitter_init;
  const double alpha = segs.front().alpha;
  for (const auto& s : segs)
    if (s.alpha != alpha) throw ConfigError("analytic comparison needs the same loss in every segment");

  auto add = [&](double z, double numeric, double reference) {
    const double dev = std::abs(numeric - reference) / std::abs(reference);
    result.rows.push_back({z, numeric, reference, dev});
    result.max_relative_deviation = std::max(result.max_relative_deviation, dev);
  };

  switch (scenario.analytic.regime) {
    case AnalyticRegime::None:
      throw ConfigError(scenario.name + ": [analytic] regime is none; nothing to compare");

    case AnalyticRegime::LinearNondispersive: {
      for (const auto& s : segs)
        if (s.kappa != 0.0 || max_abs_beta(s.dispersion, s.length) != 0.0)
          throw ConfigError("linear_nondispersive needs n2 = 0 and beta = 0 everywhere");
      const auto res = propagate(built.initial, built.link, built.control, init);
      for (const auto& r : res.records)
        add(r.z, total_t2(r.jitter), analytic::linear_nondispersive_t2(total_t2(init), m0.dt_rms, m0.n_photons, alpha, r.z));
      break;
    }

    case AnalyticRegime::LinearDispersive: {
      for (const auto& s : segs)
        if (s.kappa != 0.0) throw ConfigError("linear_dispersive needs n2 = 0 everywhere");
      const auto res = propagate(built.initial, built.link, built.control, init);
      for (const auto& r : res.records)
        add(r.z, total_t2(r.jitter),
            analytic::linear_dispersive(init, m0, net_dispersion(built.link, r.z), alpha, r.z).t2);
      break;
    }

    case AnalyticRegime::FrozenSoliton: {
      // Moments frozen at their launch values apart from N(z) = N0 e^{-alpha z}.
      if (segs.size() != 1 || !std::holds_alternative<ConstantDispersion>(segs.front().dispersion))
        throw ConfigError("frozen_soliton needs a single constant-dispersion segment");
      const auto& seg = segs.front();
      const double beta = beta_at(seg.dispersion, 0.0);
      const auto plan = plan_segment(seg, m0, built.control);
      auto frozen = [&](double z) {
        PulseMoments m = m0;
        m.chirp = 0.0;
        m.n_photons = m0.n_photons * std::exp(-alpha * z);
        return m;
      };
      JitterState state = init;
      state.sym_init = 0.0;
      auto reference = [&](double z) {
        return analytic::soliton_constant_disp_t2(state.t2_init, state.omega2_init, m0.dt_rms, m0.domega_rms, m0.n_photons,
                                                  beta, alpha, z);
      };
      add(0.0, total_t2(state), reference(0.0));
      double next_record = built.control.record_every;
      for (std::size_t k = 0; k < plan.steps; ++k) {
        const double z0 = static_cast<double>(k) * plan.step;
        const double z1 = k + 1 == plan.steps ? seg.length : z0 + plan.step;
        state = advance(state, plan.step, beta, alpha, frozen(z0), frozen(z1));
        if (k + 1 == plan.steps || z1 >= next_record * (1.0 - 1e-12)) {
          add(z1, total_t2(state), reference(z1));
          while (next_record <= z1 * (1.0 + 1e-12)) next_record += built.control.record_every;
        }
      }
      break;
    }
  }
  result.passed = result.max_relative_deviation < result.tolerance;
  return result;
}

}  // namespace pulsejitter
