#include "wpfp/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "wpfp/errors.hpp"

namespace wpfp {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw config_error(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, const std::string& key, const Entry& e) {
  char* end = nullptr;
  const double v = std::strtod(e.value.c_str(), &end);
  if (end == e.value.c_str() || *end != '\0')
    fail(origin, e.line, "key '" + key + "': expected a number, got '" + e.value + "'");
  return v;
}

int parse_int(const std::string& origin, const std::string& key, const Entry& e) {
  char* end = nullptr;
  const long v = std::strtol(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0')
    fail(origin, e.line, "key '" + key + "': expected an integer, got '" + e.value + "'");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& origin, const std::string& key, const Entry& e) {
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  fail(origin, e.line, "key '" + key + "': expected true/false, got '" + e.value + "'");
}

std::vector<double> parse_list(const std::string& origin, const std::string& key, const Entry& e) {
  std::istringstream is(e.value);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      fail(origin, e.line, "key '" + key + "': bad list element '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(origin, e.line, "key '" + key + "': empty list");
  return out;
}

class SectionReader {
public:
  SectionReader(const std::string& origin, const std::string& name, Section* sec)
      : origin_(origin), name_(name), sec_(sec) {}

  bool has(const std::string& key) const { return sec_ && sec_->count(key); }

  template <class F>
  auto get(const std::string& key, F&& parse) const {
    auto it = sec_->find(key);
    if (it == sec_->end())
      throw config_error(origin_ + ": missing key '" + key + "' in section [" + name_ + "]");
    it->second.used = true;
    return parse(origin_, key, it->second);
  }

  template <class F, class T>
  auto get_or(const std::string& key, F&& parse, T fallback) const {
    if (!has(key)) return static_cast<decltype(parse(origin_, key, Entry{}))>(fallback);
    return get(key, parse);
  }

  void finish() const {
    if (!sec_) return;
    for (const auto& [key, entry] : *sec_)
      if (!entry.used)
        fail(origin_, entry.line, "unknown key '" + key + "' in section [" + name_ + "]");
  }

private:
  std::string origin_, name_;
  Section* sec_;
};

PotentialSpec parse_potential(const std::string& origin, SectionReader& sec) {
  const std::string type = sec.get("type", [](const std::string&, const std::string&,
                                               const Entry& e) { return e.value; });
  if (type == "harmonic")
    return PotentialSpec::harmonic(sec.get("c2", parse_double), sec.get("c1", parse_double));
  if (type == "polynomial") return PotentialSpec::polynomial(sec.get("coeffs", parse_list));
  if (type == "double_well") return PotentialSpec::double_well();
  if (type == "harmonic_plus_sine")
    return PotentialSpec::harmonic_plus_sine(sec.get_or("amplitude", parse_double, 0.1));
  if (type == "arctan_step")
    return PotentialSpec::arctan_step(sec.get_or("steepness", parse_double, 10.0));
  if (type == "self_consistent") {
    const int alpha = sec.get("alpha", parse_int);
    if (alpha != 1 && alpha != -1)
      throw config_error(origin + ": potential alpha must be +1 or -1, got " +
                         std::to_string(alpha));
    return PotentialSpec::self_consistent(alpha);
  }
  throw config_error(origin + ": unknown potential type '" + type + "'");
}

} // namespace

LoadedConfig parse_config_text(const std::string& text, const std::string& origin,
                               std::ostream* warn) {
  static const std::vector<std::string> known_sections = {"grid",      "physics", "initial",
                                                          "potential", "run",     "output"};
  std::map<std::string, Section> sections;
  std::istringstream is(text);
  std::string line, current;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, lineno, "malformed section header");
      current = trim(line.substr(1, line.size() - 2));
      if (std::find(known_sections.begin(), known_sections.end(), current) ==
          known_sections.end())
        fail(origin, lineno, "unknown section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
    if (current.empty()) fail(origin, lineno, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail(origin, lineno, "empty key");
    if (sections[current].count(key))
      fail(origin, lineno, "duplicate key '" + key + "' in section [" + current + "]");
    sections[current][key] = Entry{trim(line.substr(eq + 1)), lineno, false};
  }

  // reject unknown keys up front so they are diagnosed with their line
  // even when other keys are missing
  static const std::map<std::string, std::vector<std::string>> known_keys = {
      {"grid", {"a", "b", "c", "d", "M", "N"}},
      {"physics", {"epsilon", "Dpp", "Dqq", "Dpq", "gamma", "allow_indefinite_diffusion"}},
      {"initial", {"a11", "a22", "a12", "x0", "xi0"}},
      {"potential", {"type", "c2", "c1", "coeffs", "amplitude", "steepness", "alpha"}},
      {"run", {"dt", "T", "cadence", "friction", "renormalize"}},
      {"output", {"snapshots", "heatmap", "store_local_moments"}},
  };
  for (const auto& [name, sec] : sections) {
    const auto& allowed = known_keys.at(name);
    for (const auto& [key, entry] : sec)
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail(origin, entry.line, "unknown key '" + key + "' in section [" + name + "]");
  }

  auto section = [&](const std::string& name) {
    auto it = sections.find(name);
    if (it == sections.end())
      throw config_error(origin + ": missing section [" + name + "]");
    return SectionReader(origin, name, &it->second);
  };

  LoadedConfig out;

  auto grid_sec = section("grid");
  const double a = grid_sec.get("a", parse_double);
  const double b = grid_sec.get("b", parse_double);
  const double c = grid_sec.get("c", parse_double);
  const double d = grid_sec.get("d", parse_double);
  const int m = grid_sec.get("M", parse_int);
  const int n = grid_sec.get("N", parse_int);
  grid_sec.finish();
  out.run.grid = std::make_shared<GridSpec>(build_grid(a, b, c, d, m, n));

  auto phys = section("physics");
  out.run.params.epsilon = phys.get("epsilon", parse_double);
  out.run.params.dpp = phys.get("Dpp", parse_double);
  out.run.params.dqq = phys.get("Dqq", parse_double);
  out.run.params.dpq = phys.get("Dpq", parse_double);
  out.run.params.gamma = phys.get("gamma", parse_double);
  out.run.params.allow_indefinite_diffusion =
      phys.get_or("allow_indefinite_diffusion", parse_bool, false);
  phys.finish();

  auto init = section("initial");
  out.run.ic.a11 = init.get("a11", parse_double);
  out.run.ic.a22 = init.get("a22", parse_double);
  out.run.ic.a12 = init.get_or("a12", parse_double, 0.0);
  out.run.ic.x0 = init.get("x0", parse_double);
  out.run.ic.xi0 = init.get("xi0", parse_double);
  init.finish();
  normalize_gaussian_ic(out.run.ic, warn);  // validate + flag sign reinterpretation

  auto pot = section("potential");
  out.run.params.potential = parse_potential(origin, pot);
  pot.finish();

  auto run_sec = section("run");
  out.run.dt = run_sec.get("dt", parse_double);
  out.run.t_final = run_sec.get("T", parse_double);
  out.run.observable_cadence = run_sec.get_or("cadence", parse_int, 1);
  const std::string fric = run_sec.get_or(
      "friction", [](const std::string&, const std::string&, const Entry& e) { return e.value; },
      std::string("collocation"));
  if (fric == "collocation")
    out.run.friction = FrictionVariant::Collocation;
  else if (fric == "galerkin")
    out.run.friction = FrictionVariant::Galerkin;
  else
    throw config_error(origin + ": friction must be 'collocation' or 'galerkin', got '" + fric +
                       "'");
  out.run.renormalize = run_sec.get_or("renormalize", parse_bool, false);
  run_sec.finish();

  if (sections.count("output")) {
    auto out_sec = section("output");
    out.output.snapshots = out_sec.get_or("snapshots", parse_int, 0);
    out.output.heatmap = out_sec.get_or("heatmap", parse_bool, false);
    out.run.store_local_moments = out_sec.get_or("store_local_moments", parse_bool, false);
    out_sec.finish();
  }

  if (!(out.run.dt > 0.0)) throw config_error(origin + ": dt must be positive");
  if (out.run.t_final < 0.0) throw config_error(origin + ": T must be >= 0");
  const std::string diffusion_warning = validate_params(out.run.params);
  if (!diffusion_warning.empty() && warn) *warn << diffusion_warning << "\n";
  return out;
}

LoadedConfig load_config(const std::string& path, std::ostream* warn) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path, warn);
}

namespace {

LoadedConfig base_config(double bound, int m, int n, PhysicalParams params, GaussianIC ic,
                         double dt, double t_final, int cadence) {
  LoadedConfig cfg;
  cfg.run.grid = std::make_shared<GridSpec>(build_grid(-bound, bound, -bound, bound, m, n));
  cfg.run.params = std::move(params);
  cfg.run.ic = ic;
  cfg.run.dt = dt;
  cfg.run.t_final = t_final;
  cfg.run.observable_cadence = cadence;
  return cfg;
}

// Shared by Examples 1-4: the wavepacket center and printed form
// coefficients.
const GaussianIC kPacketIC{-1.0, -1.0, 0.0, 0.1, -0.2};

} // namespace

ExperimentPreset preset(const std::string& id) {
  ExperimentPreset p;
  p.id = id;

  if (id == "ex1" || id == "ex2") {
    PhysicalParams params;
    params.epsilon = 0.1;
    params.dpp = 0.2;
    params.dqq = 0.2;
    params.dpq = 0.05;
    params.gamma = 1.0;
    params.potential =
        (id == "ex1") ? PotentialSpec::harmonic(1.0, 1.0) : PotentialSpec::double_well();
    p.config = base_config(2.0, 128, 128, params, kPacketIC, std::ldexp(1.0, -8), 0.5, 8);
    p.reference = (id == "ex1") ? ReferenceStrategy::AnalyticOracle
                                : ReferenceStrategy::FineGridSelfReference;
  } else if (id == "ex3") {
    PhysicalParams params;
    params.epsilon = 0.1;
    params.dpp = 0.2;
    params.dqq = 0.2;
    params.dpq = 0.05;
    params.gamma = 1.0;
    params.potential = PotentialSpec::self_consistent(-1);
    p.config = base_config(4.0, 128, 128, params, kPacketIC, std::ldexp(1.0, -8), 0.25, 8);
    p.reference = ReferenceStrategy::FineGridSelfReference;
  } else if (id == "ex4a" || id == "ex4b") {
    PhysicalParams params;
    params.epsilon = 0.1;
    params.dpp = 0.1;
    params.dqq = 0.1;
    params.dpq = 0.0;
    params.gamma = 1.0;
    params.potential = (id == "ex4a") ? PotentialSpec::harmonic_plus_sine(0.1)
                                      : PotentialSpec::arctan_step(10.0);
    p.config = base_config(4.0, 128, 128, params, kPacketIC, std::ldexp(1.0, -8), 10.0, 16);
    p.t_max = 10.0;
    p.steady_expect_lo = (id == "ex4a") ? 6.0 : 3.0;
    p.steady_expect_hi = (id == "ex4a") ? 10.0 : 6.0;
  } else if (id == "ex5") {
    PhysicalParams params;
    params.epsilon = 1.0;
    params.dpp = 0.3;
    params.dqq = 0.3;
    params.dpq = 0.0;
    params.gamma = 1.0;
    params.potential = PotentialSpec::self_consistent(-1);
    GaussianIC ic = kPacketIC;
    ic.xi0 = 0.1;
    p.config = base_config(20.0, 128, 128, params, ic, std::ldexp(1.0, -8), 8.0, 16);
    p.t_max = 8.0;
    p.steady_expect_lo = 3.0;
    p.steady_expect_hi = 6.0;
  } else {
    throw config_error("unknown preset '" + id + "' (expected one of ex1 ex2 ex3 ex4a ex4b ex5)");
  }

  if (id == "ex1" || id == "ex2" || id == "ex3") {
    for (int e = -4; e >= -8; --e) p.dt_samples.push_back(std::ldexp(1.0, e));
    p.space_samples = {16, 32, 64};
    p.spatial_study_dt = std::ldexp(1.0, -10);
    p.reference_dt = std::ldexp(1.0, -10);
    p.reference_m = 256;
    p.reference_n = 256;
  }
  return p;
}

std::vector<std::string> preset_ids() { return {"ex1", "ex2", "ex3", "ex4a", "ex4b", "ex5"}; }

bool is_preset_id(const std::string& id) {
  const auto ids = preset_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

} // namespace wpfp
