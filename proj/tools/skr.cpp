// skr: secret-key-rate bounds for restricted-eavesdropper free-space links.
//
// Exit codes: 0 success, 1 some point could not be evaluated, 2 invalid
// configuration or usage, 3 file I/O failure.

#include "skr/config.hpp"
#include "skr/csv.hpp"
#include "skr/errors.hpp"
#include "skr/presets.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kRowError = 1;
constexpr int kConfigError = 2;
constexpr int kIoError = 3;

using skr::format_number;

skr::RunConfig load_for(const std::string& path, skr::Mode expected) {
  skr::RunConfig cfg = skr::load_config(path);
  if (cfg.mode != expected) {
    throw skr::ConfigError({"mode=" + std::string(skr::to_string(cfg.mode)) +
                            " does not match subcommand '" +
                            std::string(skr::to_string(expected)) + "'"});
  }
  return cfg;
}

void print_row(const skr::ResultRow& row) {
  std::cout << "eta=" << format_number(row.channel.eta) << '\n'
            << "kappa=" << format_number(row.channel.kappa) << '\n'
            << "n_e=" << format_number(row.channel.n_e) << '\n'
            << "mu=" << format_number(row.mu_used) << '\n'
            << "lb_direct=" << format_number(row.rates.lb_direct) << '\n'
            << "lb_reverse=" << format_number(row.rates.lb_reverse) << '\n'
            << "lb_best=" << format_number(row.rates.lb_best) << '\n';
  if (row.rates.ub) {
    std::cout << "ub=" << format_number(*row.rates.ub) << " (surrogate)\n";
  } else {
    std::cout << "ub=nan (not reported when n_e > 0)\n";
  }
}

int single_point(const skr::RunConfig& cfg, bool optimize, const std::optional<std::string>& out) {
  const skr::FixedParams& f = cfg.fixed;
  const double var = optimize ? 0.0 : *f.mu;
  skr::ResultRow row = skr::evaluate_point(f, optimize, cfg.scheme, cfg.scan, var);
  if (row.error) {
    std::cerr << "skr: point could not be evaluated: " << *row.error << '\n';
    return kRowError;
  }
  if (optimize) {
    row.var = row.mu_used;
    std::cout << "scheme=" << skr::to_string(cfg.scheme) << '\n'
              << "mu_star=" << format_number(row.mu_used) << '\n'
              << "unbounded=" << (row.unbounded ? "true" : "false") << '\n';
  }
  print_row(row);
  if (const auto path = out ? out : cfg.output_path) {
    skr::ResultTable table;
    table.variable = skr::SweepVariable::mu;
    table.rows.push_back(row);
    skr::emit_csv(table, *path);
  }
  return kOk;
}

int run_sweep_cmd(const skr::RunConfig& cfg, const std::optional<std::string>& out) {
  const auto path = out ? out : cfg.output_path;
  if (!path) throw skr::ConfigError({"no output file: pass -o or set output_path"});
  skr::SweepSpec spec = skr::to_sweep_spec(cfg);
  skr::ResultTable table = skr::run_sweep(spec, skr::threads_from_env());
  if (!spec.label.empty()) table.comments.push_back("label=" + spec.label);
  skr::emit_csv(table, *path);
  return table.has_errors() ? kRowError : kOk;
}

int run_figure_cmd(const std::string& id, const std::filesystem::path& dir) {
  const auto tables = skr::run_figure(id, skr::threads_from_env());
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw skr::IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  bool errors = false;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto path = dir / (id + "_curve" + std::to_string(i + 1) + ".csv");
    skr::emit_csv(tables[i], path);
    std::cout << path.string() << '\n';
    errors = errors || tables[i].has_errors();
  }
  return errors ? kRowError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secret-key-rate bounds for free-space links with a restricted eavesdropper"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> output;
  std::string figure_id;
  std::string output_dir;

  auto* rate = app.add_subcommand("rate", "Bounds at one operating point (mode=rate)");
  rate->add_option("-c,--config", config_path, "Configuration file")->required();
  rate->add_option("-o,--output", output, "Also write a one-row CSV");

  auto* sweep = app.add_subcommand("sweep", "Run a 1-D sweep to CSV (mode=sweep)");
  sweep->add_option("-c,--config", config_path, "Configuration file")->required();
  sweep->add_option("-o,--output", output, "CSV file (defaults to output_path)");

  auto* optimize = app.add_subcommand("optimize", "Optimize the input power (mode=optimize)");
  optimize->add_option("-c,--config", config_path, "Configuration file")->required();
  optimize->add_option("-o,--output", output, "Also write a one-row CSV");

  auto* figure = app.add_subcommand("figure", "Write the curve CSVs of a figure preset");
  figure->add_option("id", figure_id, "Figure id (see `skr presets`)");
  figure->add_option("-c,--config", config_path, "Configuration file with mode=figure");
  figure->add_option("-o,--output", output_dir, "Output directory")->required();

  auto* presets = app.add_subcommand("presets", "List figure ids, or print one preset as config");
  std::string preset_id;
  presets->add_option("id", preset_id, "Figure id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*rate) return single_point(load_for(config_path, skr::Mode::rate), false, output);
    if (*optimize) return single_point(load_for(config_path, skr::Mode::optimize), true, output);
    if (*sweep) return run_sweep_cmd(load_for(config_path, skr::Mode::sweep), output);
    if (*figure) {
      if (!config_path.empty()) {
        const auto cfg = load_for(config_path, skr::Mode::figure);
        if (figure_id.empty()) figure_id = *cfg.figure;
      }
      if (figure_id.empty()) throw skr::ConfigError({"no figure id given"});
      return run_figure_cmd(figure_id, output_dir);
    }
    if (*presets) {
      if (preset_id.empty()) {
        for (const auto& id : skr::figure_ids()) std::cout << id << '\n';
        return kOk;
      }
      const auto specs = skr::figure_preset(preset_id);
      for (std::size_t i = 0; i < specs.size(); ++i) {
        std::cout << "# " << preset_id << " curve " << i + 1 << '\n' << skr::serialize(specs[i]);
      }
      return kOk;
    }
  } catch (const skr::ConfigError& e) {
    std::cerr << "skr: " << e.what() << '\n';
    return kConfigError;
  } catch (const skr::IoError& e) {
    std::cerr << "skr: " << e.what() << '\n';
    return kIoError;
  } catch (const skr::DomainError& e) {
    // Unknown figure ids land here.
    std::cerr << "skr: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
