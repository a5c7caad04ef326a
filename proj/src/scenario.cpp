#include "pulsejitter/scenario.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pulsejitter/errors.hpp"
#include "pulsejitter/units.hpp"

namespace pulsejitter {

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

// Key lookup over one section that remembers which keys were consumed so
// unknown keys can be reported.
class SectionReader {
 public:
  SectionReader(std::string section, const Entries& entries) : section_(std::move(section)) {
    for (const auto& [k, v] : entries) values_[k] = v;
  }

  bool has(const std::string& key) const { return values_.contains(key); }

  const std::string& text(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("[" + section_ + "] missing required key '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  std::string text_or(const std::string& key, std::string fallback) { return has(key) ? text(key) : fallback; }

  double number(const std::string& key) { return to_number(key, text(key)); }
  double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::size_t count_or(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError(where(key) + "expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  bool flag_or(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    std::string v = text(key);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ConfigError(where(key) + "expected true or false, got '" + v + "'");
  }

  void reject_unknown() const {
    for (const auto& [k, v] : values_)
      if (!used_.contains(k)) throw ConfigError("[" + section_ + "] unknown key '" + k + "'");
  }

  std::string where(const std::string& key) const { return "[" + section_ + "] " + key + ": "; }

  double to_number(const std::string& key, const std::string& s) const {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
      throw ConfigError(where(key) + "expected a finite number, got '" + s + "'");
    return v;
  }

 private:
  std::string section_;
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

PulseSpec read_pulse(SectionReader& r) {
  PulseSpec p;
  const std::string shape = r.text_or("shape", "sech");
  if (shape == "sech") p.shape = PulseShape::Sech;
  else if (shape == "gaussian") p.shape = PulseShape::Gaussian;
  else throw ConfigError(r.where("shape") + "expected sech or gaussian, got '" + shape + "'");

  p.tau_ps = r.number("tau_ps");
  require(p.tau_ps > 0.0, r.where("tau_ps") + "must be positive");
  p.wavelength_nm = r.number_or("wavelength_nm", 1550.0);
  require(p.wavelength_nm > 0.0, r.where("wavelength_nm") + "must be positive");

  const bool has_energy = r.has("energy_pJ");
  const bool has_count = r.has("n_photons");
  require(has_energy != has_count, "[pulse] exactly one of energy_pJ or n_photons is required");
  if (has_energy) {
    p.source = PhotonSource::Energy;
    p.energy_pj = r.number("energy_pJ");
    require(p.energy_pj > 0.0, r.where("energy_pJ") + "must be positive");
  } else if (r.text("n_photons") == "soliton") {
    p.source = PhotonSource::FundamentalSoliton;
  } else {
    p.source = PhotonSource::Count;
    p.n_photons = r.number("n_photons");
    require(p.n_photons > 0.0, r.where("n_photons") + "must be positive");
  }
  return p;
}

SegmentSpec read_segment(SectionReader& r) {
  SegmentSpec s;
  if (r.text("length_m") == "compensate") {
    s.compensate_length = true;
  } else {
    s.length_m = r.number("length_m");
    require(s.length_m > 0.0, r.where("length_m") + "must be positive");
  }
  s.loss_db_per_km = r.number_or("loss_db_per_km", 0.0);
  require(s.loss_db_per_km >= 0.0, r.where("loss_db_per_km") + "must be non-negative (gain is not modeled)");
  s.n2_m2_per_w = r.number_or("n2_m2_per_W", 0.0);
  require(s.n2_m2_per_w >= 0.0, r.where("n2_m2_per_W") + "must be non-negative");
  if (s.n2_m2_per_w > 0.0) {
    s.aeff_um2 = r.number("aeff_um2");
    require(s.aeff_um2 > 0.0, r.where("aeff_um2") + "must be positive");
  } else if (r.has("aeff_um2")) {
    s.aeff_um2 = r.number("aeff_um2");
  }

  const std::string profile = r.text_or("profile", "constant");
  s.beta_ps2_per_km = r.number("beta_ps2_per_km");
  if (profile == "constant") {
    s.profile = ProfileKind::Constant;
  } else if (profile == "increasing") {
    s.profile = ProfileKind::Increasing;
    s.ramp_length_m = r.number("ramp_length_m");
    require(s.ramp_length_m > 0.0, r.where("ramp_length_m") + "must be positive");
    require(!s.compensate_length, r.where("length_m") + "compensate requires a constant profile");
  } else {
    throw ConfigError(r.where("profile") + "expected constant or increasing, got '" + profile + "'");
  }
  return s;
}

NumericsSpec read_numerics(SectionReader& r) {
  NumericsSpec n;
  n.n_points = r.count_or("n_points", n.n_points);
  n.window_ps = r.number_or("window_ps", n.window_ps);
  n.dz_m = r.number_or("dz_m", n.dz_m);
  n.record_every_m = r.number_or("record_every_m", n.record_every_m);
  n.max_step_fraction = r.number_or("max_step_fraction", n.max_step_fraction);
  require(n.window_ps > 0.0, r.where("window_ps") + "must be positive");
  require(n.dz_m > 0.0, r.where("dz_m") + "must be positive");
  require(n.record_every_m >= n.dz_m, r.where("record_every_m") + "must be at least dz_m");
  require(n.max_step_fraction > 0.0, r.where("max_step_fraction") + "must be positive");
  return n;
}

StatisticsSpec read_statistics(SectionReader& r) {
  StatisticsSpec s;
  const std::string init = r.text_or("init", "coherent");
  if (init == "coherent") {
    s.kind = InitStatistics::Coherent;
  } else if (init == "jointly_gaussian") {
    s.kind = InitStatistics::JointlyGaussian;
    s.big_b_per_ps = r.number("B_per_ps");
    s.small_b_per_ps = r.number_or("b_per_ps", 0.0);
    require(s.big_b_per_ps > 0.0, r.where("B_per_ps") + "must be positive");
    require(s.small_b_per_ps >= 0.0, r.where("b_per_ps") + "must be non-negative");
  } else {
    throw ConfigError(r.where("init") + "expected coherent or jointly_gaussian, got '" + init + "'");
  }
  return s;
}

OutputSpec read_output(SectionReader& r) {
  OutputSpec o;
  o.profiles = r.flag_or("profiles", o.profiles);
  o.profile_every_m = r.number_or("profile_every_m", o.profile_every_m);
  o.profile_decimate = r.count_or("profile_decimate", o.profile_decimate);
  require(o.profile_every_m > 0.0, r.where("profile_every_m") + "must be positive");
  require(o.profile_decimate >= 1, r.where("profile_decimate") + "must be at least 1");
  return o;
}

AnalyticSpec read_analytic(SectionReader& r) {
  AnalyticSpec a;
  const std::string regime = r.text_or("regime", "none");
  if (regime == "none") a.regime = AnalyticRegime::None;
  else if (regime == "linear_nondispersive") a.regime = AnalyticRegime::LinearNondispersive;
  else if (regime == "linear_dispersive") a.regime = AnalyticRegime::LinearDispersive;
  else if (regime == "frozen_soliton") a.regime = AnalyticRegime::FrozenSoliton;
  else throw ConfigError(r.where("regime") + "unknown regime '" + regime + "'");
  a.tolerance = r.number_or("tolerance", a.tolerance);
  require(a.tolerance > 0.0, r.where("tolerance") + "must be positive");
  return a;
}

// "segment.<k>" -> k, or 0 when the section is not a segment.
std::size_t segment_index(const std::string& section) {
  constexpr std::string_view prefix = "segment.";
  if (section.rfind(prefix, 0) != 0) return 0;
  const std::string digits = section.substr(prefix.size());
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || k == 0)
    throw ConfigError("segment sections are named [segment.1], [segment.2], ...; got [" + section + "]");
  return k;
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ScenarioTemplate ScenarioTemplate::parse(std::string_view text, std::string name) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(name + ": line " + std::to_string(e.line()) + ": " + e.message());
  }

  // read_ini quietly merges a repeated section when the first copy is empty
  std::set<std::string> headers;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    const auto first = line.find_first_not_of(" \t");
    const auto last = line.find_last_not_of(" \t\r");
    if (first == std::string::npos || line[first] != '[' || line[last] != ']') continue;
    const std::string header = line.substr(first + 1, last - first - 1);
    if (!headers.insert(header).second) throw ConfigError(name + ": duplicate section [" + header + "]");
  }

  ScenarioTemplate t;
  t.name_ = std::move(name);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError(t.name_ + ": key '" + section + "' appears outside any section");
    Section s{section, {}};
    for (const auto& [key, value] : body) s.entries.emplace_back(key, value.data());
    t.sections_.push_back(std::move(s));
  }
  return t;
}

ScenarioTemplate ScenarioTemplate::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path.stem().string());
}

void ScenarioTemplate::set(std::string_view key, double value) {
  const auto dot = key.rfind('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == key.size())
    throw ConfigError("parameter '" + std::string(key) + "' must be written section.key");
  const std::string section(key.substr(0, dot));
  const std::string entry(key.substr(dot + 1));
  auto it = std::find_if(sections_.begin(), sections_.end(), [&](const Section& s) { return s.name == section; });
  if (it == sections_.end()) {
    static const std::set<std::string> optional = {"numerics", "statistics", "output", "analytic"};
    if (!optional.contains(section))
      throw ConfigError("parameter '" + std::string(key) + "': no section [" + section + "]");
    sections_.push_back({section, {}});
    it = std::prev(sections_.end());
  }
  auto e = std::find_if(it->entries.begin(), it->entries.end(), [&](const auto& kv) { return kv.first == entry; });
  if (e == it->entries.end()) it->entries.emplace_back(entry, format_value(value));
  else e->second = format_value(value);
}

Scenario ScenarioTemplate::instantiate() const {
  Scenario sc;
  sc.name = name_;
  bool have_pulse = false;
  std::vector<std::pair<std::size_t, SegmentSpec>> segments;

  for (const auto& section : sections_) {
    SectionReader r(section.name, section.entries);
    if (section.name == "pulse") {
      sc.pulse = read_pulse(r);
      have_pulse = true;
    } else if (section.name == "numerics") {
      sc.numerics = read_numerics(r);
    } else if (section.name == "statistics") {
      sc.statistics = read_statistics(r);
    } else if (section.name == "output") {
      sc.outputs = read_output(r);
    } else if (section.name == "analytic") {
      sc.analytic = read_analytic(r);
    } else if (const std::size_t k = segment_index(section.name); k > 0) {
      segments.emplace_back(k, read_segment(r));
    } else {
      throw ConfigError(name_ + ": unknown section [" + section.name + "]");
    }
    r.reject_unknown();
  }

  require(have_pulse, name_ + ": missing [pulse] section");
  require(!segments.empty(), name_ + ": at least one [segment.N] section is required");
  std::sort(segments.begin(), segments.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < segments.size(); ++i) {
    require(segments[i].first == i + 1, name_ + ": segment sections must be numbered 1, 2, ... without gaps");
    sc.segments.push_back(segments[i].second);
  }
  return sc;
}

Scenario parse_scenario(std::string_view text, std::string name) {
  return ScenarioTemplate::parse(text, std::move(name)).instantiate();
}

Scenario load_scenario(const std::filesystem::path& path) { return ScenarioTemplate::load(path).instantiate(); }

BuiltScenario build(const Scenario& sc) {
  try {
    const double lambda0 = sc.pulse.wavelength_nm * 1e-9;

    std::vector<FiberSegment> segments;
    for (std::size_t i = 0; i < sc.segments.size(); ++i) {
      const auto& spec = sc.segments[i];
      FiberSegment seg;
      seg.alpha = units::alpha_from_db_per_km(spec.loss_db_per_km);
      seg.kappa = spec.n2_m2_per_w > 0.0 ? units::kappa_from_fiber(spec.n2_m2_per_w, spec.aeff_um2 * 1e-12, lambda0) : 0.0;
      const double beta = units::beta_from_ps2_per_km(spec.beta_ps2_per_km);
      if (spec.compensate_length) {
        require(i > 0, "segment 1 cannot use length_m = compensate");
        seg.length = compensating_length(FiberLink(segments), beta);
      } else {
        seg.length = spec.length_m;
      }
      if (spec.profile == ProfileKind::Increasing) seg.dispersion = IncreasingDispersion{beta, seg.length, spec.ramp_length_m};
      else seg.dispersion = ConstantDispersion{beta};
      segments.push_back(seg);
    }
    FiberLink link(std::move(segments));

    double n_photons = 0.0;
    switch (sc.pulse.source) {
      case PhotonSource::Energy:
        n_photons = units::photon_number_from_energy(sc.pulse.energy_pj * 1e-12, lambda0);
        break;
      case PhotonSource::Count:
        n_photons = sc.pulse.n_photons;
        break;
      case PhotonSource::FundamentalSoliton: {
        const auto& first = link.segments().front();
        const double beta0 = beta_at(first.dispersion, 0.0);
        require(sc.pulse.shape == PulseShape::Sech, "n_photons = soliton requires a sech pulse");
        require(first.kappa > 0.0 && beta0 < 0.0, "n_photons = soliton requires a nonlinear, anomalous first segment");
        n_photons = 2.0 * std::abs(beta0) / (first.kappa * sc.pulse.tau_ps);
        break;
      }
    }

    const TimeGrid grid = TimeGrid::from_window(sc.numerics.n_points, sc.numerics.window_ps);
    require(grid.window() >= 30.0 * sc.pulse.tau_ps, "[numerics] window_ps must be at least 30 tau_ps");
    Envelope initial = sc.pulse.shape == PulseShape::Sech ? make_sech_soliton(grid, sc.pulse.tau_ps, n_photons)
                                                          : make_gaussian(grid, sc.pulse.tau_ps, n_photons);
    const PulseMoments m0 = measure(initial);

    JitterState init;
    if (sc.statistics.kind == InitStatistics::Coherent) {
      init = coherent_jitter_init(m0);
    } else {
      const double b = sc.statistics.big_b_per_ps;
      init = jitter_init(1.0 / (4.0 * m0.n_photons * m0.n_photons * b * b), 0.0, b * b);
    }

    StepControl control;
    control.dz = sc.numerics.dz_m;
    control.record_every = sc.numerics.record_every_m;
    control.max_step_fraction = sc.numerics.max_step_fraction;

    return BuiltScenario{std::move(initial), std::move(link), control, init, m0, lambda0};
  } catch (const DomainError& e) {
    throw ConfigError(sc.name + ": " + e.what());
  }
}

std::string_view to_string(AnalyticRegime regime) {
  switch (regime) {
    case AnalyticRegime::None: return "none";
    case AnalyticRegime::LinearNondispersive: return "linear_nondispersive";
    case AnalyticRegime::LinearDispersive: return "linear_dispersive";
    case AnalyticRegime::FrozenSoliton: return "frozen_soliton";
  }
  return "none";
}

}  // namespace pulsejitter
