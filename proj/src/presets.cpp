#include "skr/presets.hpp"

#include "skr/config.hpp"
#include "skr/errors.hpp"

#include <cmath>

namespace skr {

namespace {

constexpr int kAxisPoints = 50;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  out.back() = b;
  return out;
}

std::vector<double> logspace(double lo_exp, double hi_exp, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (n - 1));
  }
  return out;
}

std::string cm(double m) {
  return std::to_string(static_cast<int>(std::lround(m * 100.0))) + " cm";
}

FixedParams exclusion_zone(double distance_km, double r_ex) {
  FixedParams f;
  f.geometry = GeometryKind::exclusion_zone;
  f.r_a_m = 0.05;
  f.r_b_m = 0.05;
  f.r_ex_m = r_ex;
  f.distance_km = distance_km;
  f.wavelength_nm = 1550.0;
  return f;
}

FixedParams beam(double distance_km, double r_ex) {
  FixedParams f;
  f.geometry = GeometryKind::beam;
  f.w0_m = 0.05;
  f.r_a_m = 0.05;
  f.r_b_m = 0.05;
  f.r_e_m = 0.05;
  f.r_ex_m = r_ex;
  f.distance_km = distance_km;
  f.wavelength_nm = 1550.0;
  return f;
}

// r_ex = 5 cm, r_ex = 0.5 m, and the unrestricted reference (kappa = 1).
std::vector<std::pair<FixedParams, std::string>> beam_variants(double distance_km) {
  FixedParams unrestricted = beam(distance_km, 0.05);
  unrestricted.unrestricted_eve = true;
  return {{beam(distance_km, 0.05), "r_ex=5 cm"},
          {beam(distance_km, 0.5), "r_ex=50 cm"},
          {unrestricted, "unrestricted Eve"}};
}

SweepSpec mu_sweep(FixedParams f, double beta, std::string label) {
  f.beta = beta;
  SweepSpec s;
  s.variable = SweepVariable::mu;
  s.grid = logspace(-3.0, 7.0, 51);
  s.fixed = std::move(f);
  s.schemes = {Scheme::direct, Scheme::reverse};
  s.label = std::move(label);
  return s;
}

SweepSpec optimized(SweepVariable variable, std::vector<double> grid, FixedParams f,
                    std::vector<Scheme> schemes, std::string label) {
  if (variable == SweepVariable::distance) f.distance_km.reset();
  if (variable == SweepVariable::exclusion_radius) f.r_ex_m.reset();
  if (variable == SweepVariable::frequency) f.wavelength_nm.reset();
  SweepSpec s;
  s.variable = variable;
  s.grid = std::move(grid);
  s.fixed = std::move(f);
  s.optimize_mu = true;
  s.schemes = std::move(schemes);
  s.label = std::move(label);
  return s;
}

std::vector<SweepSpec> exclusion_mu_family(double beta) {
  std::vector<SweepSpec> out;
  for (double r_ex : {0.05, 0.10}) {
    out.push_back(mu_sweep(exclusion_zone(100.0, r_ex), beta, "r_ex=" + cm(r_ex)));
  }
  return out;
}

std::vector<SweepSpec> beam_mu_family(double distance_km, double beta) {
  std::vector<SweepSpec> out;
  for (double r_ex : {0.05, 0.5}) {
    out.push_back(mu_sweep(beam(distance_km, r_ex), beta, "r_ex=" + cm(r_ex)));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig2",  "fig3",  "fig4",  "fig5",  "fig10",
                                               "fig11", "fig12", "fig13", "fig14", "fig15"};
  return ids;
}

std::vector<SweepSpec> figure_preset(std::string_view id) {
  if (id == "fig2") return exclusion_mu_family(1.0);
  if (id == "fig3") return exclusion_mu_family(0.95);
  if (id == "fig4") {
    const auto grid = linspace(0.05, 0.95, kAxisPoints);
    return {optimized(SweepVariable::exclusion_radius, grid, exclusion_zone(100.0, 0.05),
                      {Scheme::direct, Scheme::upper}, "direct"),
            optimized(SweepVariable::exclusion_radius, grid, exclusion_zone(100.0, 0.05),
                      {Scheme::reverse, Scheme::upper}, "reverse")};
  }
  if (id == "fig5") {
    std::vector<SweepSpec> out;
    for (double distance : {100.0, 150.0}) {
      for (double r_ex : {0.05, 0.15}) {
        out.push_back(optimized(SweepVariable::frequency, logspace(13.0, 15.0, kAxisPoints),
                                exclusion_zone(distance, r_ex),
                                {Scheme::best},
                                "L=" + std::to_string(static_cast<int>(distance)) +
                                    " km, r_ex=" + cm(r_ex)));
      }
    }
    return out;
  }
  if (id == "fig10") return beam_mu_family(10.0, 1.0);
  if (id == "fig11") return beam_mu_family(30.0, 1.0);
  if (id == "fig12") return beam_mu_family(30.0, 0.85);
  if (id == "fig13") {
    std::vector<SweepSpec> out;
    for (const auto& [f, name] : beam_variants(2.0)) {
      for (Scheme s : {Scheme::direct, Scheme::reverse}) {
        out.push_back(optimized(SweepVariable::distance, linspace(2.0, 100.0, kAxisPoints), f, {s},
                                name + ", " + std::string(to_string(s))));
      }
    }
    return out;
  }
  if (id == "fig14") {
    std::vector<SweepSpec> out;
    for (const auto& [f, name] : beam_variants(2.0)) {
      out.push_back(optimized(SweepVariable::distance, linspace(2.0, 100.0, kAxisPoints), f,
                              {Scheme::best, Scheme::upper}, name));
    }
    return out;
  }
  if (id == "fig15") {
    std::vector<SweepSpec> out;
    for (const auto& [f, name] : beam_variants(30.0)) {
      out.push_back(optimized(SweepVariable::frequency, logspace(13.0, 15.0, kAxisPoints), f,
                              {Scheme::best, Scheme::upper}, name));
    }
    return out;
  }
  throw DomainError("unknown figure id '" + std::string(id) + "'");
}

std::vector<std::string> preset_notes(std::string_view id) {
  std::vector<std::string> notes;
  if (id == "fig2" || id == "fig3" || id == "fig4" || id == "fig5") {
    notes.emplace_back("assumed aperture radii r_a = r_b = 5 cm");
  }
  if (id == "fig4") notes.emplace_back("assumed axis: r_ex from 5 cm to 95 cm, 50 points");
  if (id == "fig5" || id == "fig15") {
    notes.emplace_back("assumed axis: frequency 1e13 to 1e15 Hz, 50 log-spaced points");
  }
  if (id == "fig13" || id == "fig14") {
    notes.emplace_back("assumed axis: L from 2 km to 100 km, 50 points");
  }
  if (id == "fig4" || id == "fig5" || id == "fig13" || id == "fig14" || id == "fig15") {
    notes.emplace_back("mu optimized per point; unbounded optima report the mu -> inf limit");
  }
  if (id == "fig13" || id == "fig14" || id == "fig15") {
    notes.emplace_back("unrestricted Eve: kappa = 1, Eve collects all light Bob misses");
  }
  if (id == "fig4" || id == "fig14" || id == "fig15") {
    notes.emplace_back("ub is the pure-loss surrogate -log2(kappa (1 - eta))");
  }
  return notes;
}

std::vector<ResultTable> run_figure(std::string_view id, unsigned threads) {
  const auto specs = figure_preset(id);
  const auto notes = preset_notes(id);
  std::vector<ResultTable> tables;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const SweepSpec& spec = specs[i];
    ResultTable table = run_sweep(spec, threads);
    auto& c = table.comments;
    c.push_back("figure=" + std::string(id));
    c.push_back("curve=" + std::to_string(i + 1) + "/" + std::to_string(specs.size()));
    c.push_back("label=" + spec.label);
    c.push_back("variable=" + std::string(to_string(spec.variable)) + " [" +
                std::string(unit_of(spec.variable)) + "]");
    std::string schemes;
    for (Scheme s : spec.schemes) schemes += (schemes.empty() ? "" : ",") + std::string(to_string(s));
    c.push_back("schemes=" + schemes);
    c.push_back("optimize_mu=" + std::string(spec.optimize_mu ? "true" : "false"));
    const FixedParams& f = spec.fixed;
    std::string params = "geometry=" + std::string(to_string(f.geometry));
    auto add = [&](const char* key, const std::optional<double>& v) {
      if (v) params += std::string(" ") + key + "=" + exact_number(*v);
    };
    add("r_a_m", f.r_a_m);
    add("r_b_m", f.r_b_m);
    add("r_ex_m", f.r_ex_m);
    add("r_e_m", f.r_e_m);
    add("w0_m", f.w0_m);
    add("L_km", f.distance_km);
    add("lambda_nm", f.wavelength_nm);
    add("frequency_hz", f.frequency_hz);
    add("temperature_k", f.temperature_k);
    add("beta", f.beta);
    if (f.unrestricted_eve) params += " unrestricted_eve=true";
    c.push_back(params);
    for (const auto& n : notes) c.push_back(n);
    tables.push_back(std::move(table));
  }
  return tables;
}

}  // namespace skr
