#include "specfilt/config.hpp"

#include "specfilt/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace specfilt::config {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown field");
  }
}

double number(const json& obj, const std::string& key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(join(path, key), "must be finite");
  return d;
}

std::uint64_t unsigned_int(const json& v, const std::string& field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw ConfigError(field, "must be non-negative");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw ConfigError(field, "expected an integer");
}

std::string text(const json& obj, const std::string& key, const std::string& path, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  return v.get<std::string>();
}

template <class F>
auto parse_enum(F f, const std::string& value, const std::string& field) {
  try {
    return f(value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

ToneSpec parse_tone(const json& obj, const std::string& path) {
  check_keys(obj, path, {"kind", "omega_over_pi", "weight"});
  ToneSpec t;
  const std::string kind = text(obj, "kind", path, "sin");
  if (kind == "sin") {
    t.kind = modeling::Tone::Kind::Sin;
  } else if (kind == "cos") {
    t.kind = modeling::Tone::Kind::Cos;
  } else {
    throw ConfigError(join(path, "kind"), "expected 'sin' or 'cos'");
  }
  if (!obj.contains("omega_over_pi")) throw ConfigError(join(path, "omega_over_pi"), "missing");
  const double w = number(obj, "omega_over_pi", path, 0.0);
  if (!(w > 0.0)) throw ConfigError(join(path, "omega_over_pi"), "must be positive");
  t.omega_over_pi = w;
  t.weight = number(obj, "weight", path, 1.0);
  return t;
}

json tone_json(const ToneSpec& t) {
  json j;
  j["kind"] = t.kind == modeling::Tone::Kind::Sin ? "sin" : "cos";
  j["omega_over_pi"] = t.omega_over_pi;
  if (t.weight != 1.0) j["weight"] = t.weight;
  return j;
}

}  // namespace

const char* to_string(DelayIntegrand integrand) {
  return integrand == DelayIntegrand::Spectral ? "spectral" : "continuous";
}

DelayIntegrand parse_integrand(std::string_view name) {
  if (name == "spectral") return DelayIntegrand::Spectral;
  if (name == "continuous") return DelayIntegrand::Continuous;
  throw std::invalid_argument("unknown integrand '" + std::string(name) + "'");
}

modeling::Tone ToneSpec::tone() const { return modeling::Tone{kind, omega_over_pi * kPi, weight}; }

modeling::NoiseSpec ExperimentSpec::noise() const {
  modeling::NoiseSpec n;
  n.kind = noise_kind;
  n.sigma = sigma;
  if (noise_kind == modeling::NoiseSpec::Kind::Deterministic) {
    for (const auto& t : noise_terms) n.tones.push_back(t.tone());
  }
  return n;
}

filters::DesignParams ExperimentSpec::design(int order) const {
  filters::DesignParams d;
  d.family = family;
  d.order = order;
  d.ripple = ripple;
  d.cutoff = cutoff_over_pi * kPi;
  d.pass = pass;
  return d;
}

modeling::ExperimentConfig ExperimentSpec::cell(int order, std::size_t truncation) const {
  modeling::ExperimentConfig c;
  c.design = design(order);
  c.horizon = horizon;
  c.truncation = truncation;
  c.signal = signal.tone();
  c.noise = noise();
  c.realizations = realizations;
  c.seed = seed;
  c.shift_mode = shift_mode;
  c.threads = threads;
  return c;
}

ExperimentSpec parse(const std::string& content) {
  json root;
  try {
    root = json::parse(content);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  check_keys(root, "",
             {"name", "family", "orders", "ripple", "cutoff_over_pi", "pass", "horizon", "truncations", "signal",
              "noise", "seed", "shift_mode", "threads", "calibration"});

  ExperimentSpec s;
  s.name = text(root, "name", "", s.name);
  s.family = parse_enum(filters::parse_family, text(root, "family", "", "bw"), "family");
  s.pass = parse_enum(filters::parse_pass, text(root, "pass", "", "low"), "pass");
  s.shift_mode = parse_enum(modeling::parse_shift_mode, text(root, "shift_mode", "", "natural"), "shift_mode");

  if (root.contains("orders")) {
    const json& o = root.at("orders");
    if (!o.is_array() || o.empty()) throw ConfigError("orders", "expected a non-empty array");
    s.orders.clear();
    for (std::size_t k = 0; k < o.size(); ++k) {
      const std::string field = "orders[" + std::to_string(k) + "]";
      const std::uint64_t n = unsigned_int(o[k], field);
      if (n < 1 || n > 64) throw ConfigError(field, "must be between 1 and 64");
      if (s.family == filters::Family::LinkwitzRiley && n % 2 != 0) {
        throw ConfigError(field, "Linkwitz-Riley order must be even");
      }
      s.orders.push_back(static_cast<int>(n));
    }
  }
  s.ripple = number(root, "ripple", "", s.ripple);
  if (!(s.ripple > 0.0)) throw ConfigError("ripple", "must be positive");
  s.cutoff_over_pi = number(root, "cutoff_over_pi", "", s.cutoff_over_pi);
  if (!(s.cutoff_over_pi > 0.0)) throw ConfigError("cutoff_over_pi", "must be positive");
  s.horizon = number(root, "horizon", "", s.horizon);
  if (!(s.horizon > 0.0)) throw ConfigError("horizon", "must be positive");

  if (root.contains("truncations")) {
    const json& t = root.at("truncations");
    if (!t.is_array() || t.empty()) throw ConfigError("truncations", "expected a non-empty array");
    s.truncations.clear();
    for (std::size_t k = 0; k < t.size(); ++k) {
      const std::string field = "truncations[" + std::to_string(k) + "]";
      const std::uint64_t len = unsigned_int(t[k], field);
      if (len < 1 || len > 8192) throw ConfigError(field, "must be between 1 and 8192");
      s.truncations.push_back(static_cast<std::size_t>(len));
    }
  }

  if (root.contains("signal")) s.signal = parse_tone(root.at("signal"), "signal");

  if (root.contains("noise")) {
    const json& n = root.at("noise");
    check_keys(n, "noise", {"kind", "sigma", "terms", "realizations"});
    const std::string kind = text(n, "kind", "noise", "deterministic");
    if (kind == "deterministic") {
      s.noise_kind = modeling::NoiseSpec::Kind::Deterministic;
      s.sigma = 0.2;
      if (n.contains("terms")) {
        const json& terms = n.at("terms");
        if (!terms.is_array()) throw ConfigError("noise.terms", "expected an array");
        s.noise_terms.clear();
        for (std::size_t k = 0; k < terms.size(); ++k) {
          s.noise_terms.push_back(parse_tone(terms[k], "noise.terms[" + std::to_string(k) + "]"));
        }
      }
    } else if (kind == "random") {
      s.noise_kind = modeling::NoiseSpec::Kind::Random;
      s.sigma = 0.01;
      if (n.contains("terms")) throw ConfigError("noise.terms", "only valid for deterministic noise");
    } else if (kind == "none") {
      s.noise_kind = modeling::NoiseSpec::Kind::None;
      s.sigma = 0.0;
    } else {
      throw ConfigError("noise.kind", "expected 'deterministic', 'random' or 'none'");
    }
    s.sigma = number(n, "sigma", "noise", s.sigma);
    if (!(s.sigma >= 0.0)) throw ConfigError("noise.sigma", "must be >= 0");
    if (n.contains("realizations")) {
      const std::uint64_t m = unsigned_int(n.at("realizations"), "noise.realizations");
      if (m < 1) throw ConfigError("noise.realizations", "must be at least 1");
      s.realizations = static_cast<std::size_t>(m);
    }
  }

  if (root.contains("seed")) s.seed = unsigned_int(root.at("seed"), "seed");
  if (root.contains("threads")) {
    const std::uint64_t t = unsigned_int(root.at("threads"), "threads");
    if (t > 1024) throw ConfigError("threads", "must be at most 1024");
    s.threads = static_cast<unsigned>(t);
  }

  if (root.contains("calibration")) {
    const json& c = root.at("calibration");
    check_keys(c, "calibration", {"anchors", "bracket_over_pi", "integrand"});
    CalibrationSpec cal;
    if (!c.contains("anchors") || !c.at("anchors").is_array() || c.at("anchors").empty()) {
      throw ConfigError("calibration.anchors", "expected a non-empty array");
    }
    const json& anchors = c.at("anchors");
    for (std::size_t k = 0; k < anchors.size(); ++k) {
      const std::string path = "calibration.anchors[" + std::to_string(k) + "]";
      check_keys(anchors[k], path, {"truncation", "apriori_error"});
      if (!anchors[k].contains("truncation")) throw ConfigError(path + ".truncation", "missing");
      if (!anchors[k].contains("apriori_error")) throw ConfigError(path + ".apriori_error", "missing");
      CalibrationAnchor a;
      a.truncation = static_cast<std::size_t>(unsigned_int(anchors[k].at("truncation"), path + ".truncation"));
      if (a.truncation < 1) throw ConfigError(path + ".truncation", "must be at least 1");
      a.apriori_error = number(anchors[k], "apriori_error", path, 0.0);
      if (!(a.apriori_error > 0.0)) throw ConfigError(path + ".apriori_error", "must be positive");
      cal.anchors.push_back(a);
    }
    if (c.contains("bracket_over_pi")) {
      const json& b = c.at("bracket_over_pi");
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
        throw ConfigError("calibration.bracket_over_pi", "expected [lo, hi]");
      }
      cal.bracket_lo_over_pi = b[0].get<double>();
      cal.bracket_hi_over_pi = b[1].get<double>();
      if (!(cal.bracket_lo_over_pi > 0.0 && cal.bracket_hi_over_pi > cal.bracket_lo_over_pi)) {
        throw ConfigError("calibration.bracket_over_pi", "need 0 < lo < hi");
      }
    }
    cal.integrand = parse_enum(parse_integrand, text(c, "integrand", "calibration", "spectral"), "calibration.integrand");
    s.calibration = cal;
  }
  return s;
}

ExperimentSpec load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

std::string serialize(const ExperimentSpec& s) {
  json root;
  root["name"] = s.name;
  root["family"] = filters::to_string(s.family);
  root["orders"] = s.orders;
  root["ripple"] = s.ripple;
  root["cutoff_over_pi"] = s.cutoff_over_pi;
  root["pass"] = filters::to_string(s.pass);
  root["horizon"] = s.horizon;
  root["truncations"] = s.truncations;
  root["signal"] = tone_json(s.signal);
  json noise;
  switch (s.noise_kind) {
    case modeling::NoiseSpec::Kind::None:
      noise["kind"] = "none";
      break;
    case modeling::NoiseSpec::Kind::Deterministic: {
      noise["kind"] = "deterministic";
      json terms = json::array();
      for (const auto& t : s.noise_terms) terms.push_back(tone_json(t));
      noise["terms"] = terms;
      break;
    }
    case modeling::NoiseSpec::Kind::Random:
      noise["kind"] = "random";
      noise["realizations"] = s.realizations;
      break;
  }
  noise["sigma"] = s.sigma;
  root["noise"] = noise;
  root["seed"] = s.seed;
  root["shift_mode"] = modeling::to_string(s.shift_mode);
  root["threads"] = s.threads;
  if (s.calibration) {
    json cal;
    json anchors = json::array();
    for (const auto& a : s.calibration->anchors) {
      anchors.push_back({{"truncation", a.truncation}, {"apriori_error", a.apriori_error}});
    }
    cal["anchors"] = anchors;
    cal["bracket_over_pi"] = {s.calibration->bracket_lo_over_pi, s.calibration->bracket_hi_over_pi};
    cal["integrand"] = to_string(s.calibration->integrand);
    root["calibration"] = cal;
  }
  return root.dump(2) + "\n";
}

}  // namespace specfilt::config
