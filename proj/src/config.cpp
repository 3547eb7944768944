#include "skr/config.hpp"

#include "skr/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace skr {

namespace {

const std::set<std::string, std::less<>> kFixedKeys = {
    "geometry",     "r_a_m",       "r_b_m",     "r_ex_m",        "r_e_m",
    "w0_m",         "eve_offset_m", "L_km",     "lambda_nm",     "frequency_hz",
    "temperature_k", "beta",       "eve_noise_model", "unrestricted_eve", "label",
    "output_path"};
const std::set<std::string, std::less<>> kScanKeys = {"mu_min", "mu_max", "mu_points_per_decade",
                                                      "mu_rel_tol"};
const std::set<std::string, std::less<>> kSweepKeys = {
    "mu",          "variable",    "grid",         "grid_start", "grid_stop",
    "grid_points", "grid_spacing", "optimize_mu", "schemes"};
const std::set<std::string, std::less<>> kOtherKeys = {"mode", "mu", "scheme", "figure"};

bool known_key(std::string_view key) {
  return kFixedKeys.contains(key) || kScanKeys.contains(key) || kSweepKeys.contains(key) ||
         kOtherKeys.contains(key);
}

bool key_allowed(Mode mode, std::string_view key) {
  if (key == "mode") return true;
  switch (mode) {
    case Mode::figure:
      return key == "figure" || key == "output_path" || key == "label";
    case Mode::rate:
      return kFixedKeys.contains(key) || key == "mu";
    case Mode::optimize:
      return kFixedKeys.contains(key) || kScanKeys.contains(key) || key == "scheme";
    case Mode::sweep:
      return kFixedKeys.contains(key) || kScanKeys.contains(key) || kSweepKeys.contains(key);
  }
  return false;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::optional<double> to_number(std::string_view s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Reader {
 public:
  Reader(std::map<std::string, Entry, std::less<>> entries, std::vector<std::string>& problems)
      : entries_(std::move(entries)), problems_(problems) {}

  bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

  std::optional<std::string> text(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.value;
  }

  std::optional<double> number(std::string_view key) {
    const auto raw = text(key);
    if (!raw) return std::nullopt;
    const auto v = to_number(*raw);
    if (!v) bad(key, "a number");
    return v;
  }

  std::optional<bool> boolean(std::string_view key) {
    const auto raw = text(key);
    if (!raw) return std::nullopt;
    if (*raw == "true" || *raw == "1" || *raw == "yes") return true;
    if (*raw == "false" || *raw == "0" || *raw == "no") return false;
    bad(key, "true or false");
    return std::nullopt;
  }

  template <typename T, typename Parse>
  std::optional<T> choice(std::string_view key, Parse parse, const char* expected) {
    const auto raw = text(key);
    if (!raw) return std::nullopt;
    const std::optional<T> v = parse(*raw);
    if (!v) bad(key, expected);
    return v;
  }

  void bad(std::string_view key, const char* expected) {
    const auto& e = entries_.find(key)->second;
    problems_.push_back("line " + std::to_string(e.line) + ": key '" + std::string(key) +
                        "' expects " + expected + " (got '" + e.value + "')");
  }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
  std::vector<std::string>& problems_;
};

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "rate") return Mode::rate;
  if (s == "sweep") return Mode::sweep;
  if (s == "optimize") return Mode::optimize;
  if (s == "figure") return Mode::figure;
  return std::nullopt;
}

std::vector<double> generated_grid(double start, double stop, int points, bool log_spacing) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    grid[static_cast<std::size_t>(i)] =
        log_spacing ? std::pow(10.0, std::log10(start) + t * (std::log10(stop) - std::log10(start)))
                    : start + t * (stop - start);
  }
  if (points > 1) grid.back() = stop;
  return grid;
}

std::string join_schemes(const std::vector<Scheme>& schemes) {
  std::string out;
  for (Scheme s : schemes) {
    if (!out.empty()) out += ",";
    out += to_string(s);
  }
  return out;
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::rate:
      return "rate";
    case Mode::sweep:
      return "sweep";
    case Mode::optimize:
      return "optimize";
    case Mode::figure:
      return "figure";
  }
  return "?";
}

std::string exact_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

RunConfig parse_config(std::string_view text) {
  std::vector<std::string> problems;
  std::map<std::string, Entry, std::less<>> entries;

  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected key=value");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_key(key)) {
      problems.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      continue;
    }
    if (value.empty()) {
      problems.push_back("line " + std::to_string(line_no) + ": key '" + key + "' has no value");
      continue;
    }
    if (entries.contains(key)) {
      problems.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      continue;
    }
    entries.emplace(key, Entry{value, line_no});
  }

  std::vector<std::string> keys;
  for (const auto& [k, e] : entries) keys.push_back(k);
  Reader in(std::move(entries), problems);
  RunConfig cfg;

  if (!in.has("mode")) {
    problems.emplace_back("missing required key 'mode'");
    throw ConfigError(std::move(problems));
  }
  const auto mode = in.choice<Mode>("mode", parse_mode, "rate, sweep, optimize or figure");
  if (!mode) throw ConfigError(std::move(problems));
  cfg.mode = *mode;

  for (const auto& k : keys) {
    if (!key_allowed(cfg.mode, k)) {
      problems.push_back("key '" + k + "' is not used with mode=" + std::string(to_string(cfg.mode)));
    }
  }

  cfg.output_path = in.text("output_path");
  if (auto label = in.text("label")) cfg.label = *label;

  if (cfg.mode == Mode::figure) {
    cfg.figure = in.text("figure");
    if (!cfg.figure) problems.emplace_back("missing required key 'figure'");
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return cfg;
  }

  FixedParams& f = cfg.fixed;
  if (!in.has("geometry")) {
    problems.emplace_back("missing required key 'geometry'");
  } else if (auto g = in.choice<GeometryKind>("geometry", parse_geometry_kind,
                                              "exclusion_zone or beam")) {
    f.geometry = *g;
  }
  f.r_a_m = in.number("r_a_m");
  f.r_b_m = in.number("r_b_m");
  f.r_ex_m = in.number("r_ex_m");
  f.r_e_m = in.number("r_e_m");
  f.w0_m = in.number("w0_m");
  f.eve_offset_m = in.number("eve_offset_m");
  f.distance_km = in.number("L_km");
  f.wavelength_nm = in.number("lambda_nm");
  f.frequency_hz = in.number("frequency_hz");
  f.mu = in.number("mu");
  if (auto t = in.number("temperature_k")) f.temperature_k = *t;
  if (auto b = in.number("beta")) f.beta = *b;
  if (auto m = in.choice<EveNoiseModel>("eve_noise_model", parse_eve_noise_model,
                                        "consistent or printed")) {
    f.eve_noise_model = *m;
  }
  if (auto u = in.boolean("unrestricted_eve")) f.unrestricted_eve = *u;

  if (auto v = in.number("mu_min")) cfg.scan.mu_min = *v;
  if (auto v = in.number("mu_max")) cfg.scan.mu_max = *v;
  if (auto v = in.number("mu_rel_tol")) cfg.scan.rel_tol = *v;
  if (auto v = in.number("mu_points_per_decade")) {
    if (*v >= 1.0 && *v == std::floor(*v) && *v < 1e6) {
      cfg.scan.points_per_decade = static_cast<int>(*v);
    } else {
      problems.emplace_back("mu_points_per_decade must be a positive integer");
    }
  }
  if (auto s = in.choice<Scheme>("scheme", parse_scheme, "direct, reverse or best")) {
    if (*s == Scheme::upper) {
      problems.emplace_back("scheme=upper cannot be optimized (it does not depend on mu)");
    }
    cfg.scheme = *s;
  }

  if (cfg.mode == Mode::sweep) {
    if (!in.has("variable")) {
      problems.emplace_back("missing required key 'variable'");
    } else {
      cfg.variable = in.choice<SweepVariable>("variable", parse_sweep_variable,
                                              "mu, distance, frequency or exclusion_radius");
    }
    if (auto o = in.boolean("optimize_mu")) cfg.optimize_mu = *o;
    if (auto raw = in.text("schemes")) {
      cfg.schemes.clear();
      for (auto item : split_list(*raw)) {
        if (auto s = parse_scheme(item)) {
          if (std::find(cfg.schemes.begin(), cfg.schemes.end(), *s) == cfg.schemes.end()) {
            cfg.schemes.push_back(*s);
          }
        } else {
          problems.push_back("schemes: unknown scheme '" + std::string(item) + "'");
        }
      }
    }

    const bool explicit_grid = in.has("grid");
    const bool generated = in.has("grid_start") || in.has("grid_stop") || in.has("grid_points") ||
                           in.has("grid_spacing");
    if (explicit_grid && generated) {
      problems.emplace_back("give either 'grid' or grid_start/grid_stop/grid_points, not both");
    } else if (explicit_grid) {
      const std::string listed = *in.text("grid");
      for (auto item : split_list(listed)) {
        if (auto v = to_number(item)) {
          cfg.grid.push_back(*v);
        } else {
          problems.push_back("grid: '" + std::string(item) + "' is not a number");
        }
      }
    } else if (generated) {
      const auto start = in.number("grid_start");
      const auto stop = in.number("grid_stop");
      const auto points = in.number("grid_points");
      const auto spacing = in.text("grid_spacing").value_or("linear");
      if (!start) problems.emplace_back("missing required key 'grid_start'");
      if (!stop) problems.emplace_back("missing required key 'grid_stop'");
      if (!points) problems.emplace_back("missing required key 'grid_points'");
      if (spacing != "linear" && spacing != "log") {
        problems.emplace_back("grid_spacing must be linear or log");
      } else if (start && stop && points) {
        if (!(*points >= 2.0 && *points == std::floor(*points) && *points <= 1e6)) {
          problems.emplace_back("grid_points must be an integer >= 2");
        } else if (spacing == "log" && !(*start > 0.0 && *stop > 0.0)) {
          problems.emplace_back("grid_spacing=log needs positive grid_start and grid_stop");
        } else {
          cfg.grid = generated_grid(*start, *stop, static_cast<int>(*points), spacing == "log");
        }
      }
    } else {
      problems.emplace_back("missing required key 'grid' (or grid_start/grid_stop/grid_points)");
    }
  }

  // Invariant checks only make sense once the keys themselves parsed.
  if (problems.empty()) {
    switch (cfg.mode) {
      case Mode::rate:
        problems = point_problems(f);
        if (!f.mu) problems.emplace_back("missing required key 'mu'");
        break;
      case Mode::optimize:
        problems = point_problems(f);
        if (problems.empty()) {
          const auto& s = cfg.scan;
          if (!(s.mu_min > 0.0 && s.mu_max > s.mu_min) || !(s.rel_tol > 0.0)) {
            problems.emplace_back("invalid mu scan range (need 0 < mu_min < mu_max)");
          }
        }
        break;
      case Mode::sweep:
        problems = validate(to_sweep_spec(cfg));
        break;
      case Mode::figure:
        break;
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

SweepSpec to_sweep_spec(const RunConfig& config) {
  if (config.mode != Mode::sweep || !config.variable) {
    throw ConfigError({"configuration is not a sweep (mode=sweep with a variable)"});
  }
  SweepSpec spec;
  spec.variable = *config.variable;
  spec.grid = config.grid;
  spec.fixed = config.fixed;
  spec.optimize_mu = config.optimize_mu;
  spec.schemes = config.schemes;
  spec.scan = config.scan;
  spec.label = config.label;
  return spec;
}

std::string serialize(const SweepSpec& spec) {
  std::ostringstream out;
  const auto& f = spec.fixed;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) out << key << '=' << exact_number(*v) << '\n';
  };
  out << "mode=sweep\n";
  out << "geometry=" << to_string(f.geometry) << '\n';
  put("r_a_m", f.r_a_m);
  put("r_b_m", f.r_b_m);
  put("r_ex_m", f.r_ex_m);
  put("r_e_m", f.r_e_m);
  put("w0_m", f.w0_m);
  put("eve_offset_m", f.eve_offset_m);
  put("L_km", f.distance_km);
  put("lambda_nm", f.wavelength_nm);
  put("frequency_hz", f.frequency_hz);
  put("temperature_k", f.temperature_k);
  put("beta", f.beta);
  put("mu", f.mu);
  out << "eve_noise_model=" << to_string(f.eve_noise_model) << '\n';
  out << "unrestricted_eve=" << (f.unrestricted_eve ? "true" : "false") << '\n';
  out << "variable=" << to_string(spec.variable) << '\n';
  out << "grid=";
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    out << (i ? "," : "") << exact_number(spec.grid[i]);
  }
  out << '\n';
  out << "optimize_mu=" << (spec.optimize_mu ? "true" : "false") << '\n';
  out << "schemes=" << join_schemes(spec.schemes) << '\n';
  put("mu_min", spec.scan.mu_min);
  put("mu_max", spec.scan.mu_max);
  out << "mu_points_per_decade=" << spec.scan.points_per_decade << '\n';
  put("mu_rel_tol", spec.scan.rel_tol);
  if (!spec.label.empty()) out << "label=" << spec.label << '\n';
  return out.str();
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  - " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

}  // namespace skr
