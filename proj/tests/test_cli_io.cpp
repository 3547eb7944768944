#include "skr/config.hpp"
#include "skr/csv.hpp"
#include "skr/errors.hpp"
#include "skr/presets.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace skr;
namespace fs = std::filesystem;

namespace {

const char* kRateExample =
    "mode=rate\ngeometry=exclusion_zone\nr_a_m=0.05\nr_b_m=0.05\nr_ex_m=0.05\nL_km=100\n"
    "lambda_nm=1550\nbeta=1.0\nmu=1000";

std::vector<std::string> problems_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  for (const auto& p : problems) {
    if (p.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("skr_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ResultRow sample_row(double var, double ub) {
  ResultRow row;
  row.var = var;
  row.channel = {0.25, 0.5, 0.0};
  row.rates.lb_direct = -0.5;
  row.rates.lb_reverse = 1.0 / 3.0;
  row.rates.lb_best = 1.0 / 3.0;
  row.rates.ub = ub;
  row.mu_used = var;
  return row;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SKR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("documented rate example parses") {
  const auto cfg = parse_config(kRateExample);
  CHECK(cfg.mode == Mode::rate);
  CHECK(cfg.fixed.geometry == GeometryKind::exclusion_zone);
  CHECK(cfg.fixed.r_ex_m == 0.05);
  CHECK(cfg.fixed.distance_km == 100.0);
  CHECK(cfg.fixed.wavelength_nm == 1550.0);
  CHECK(cfg.fixed.mu == 1000.0);
  CHECK(cfg.fixed.temperature_k == 3.0);
  CHECK(cfg.fixed.beta == 1.0);
}

TEST_CASE("comments, blanks and whitespace") {
  const auto cfg = parse_config(
      "# header\n\n  mode = rate  # inline\r\ngeometry=exclusion_zone\nr_a_m=0.05\nr_b_m=0.05\n"
      "r_ex_m=0.05\nL_km=100\nlambda_nm=1550\nmu=1\n");
  CHECK(cfg.fixed.mu == 1.0);
}

TEST_CASE("carrier must be given exactly once") {
  CHECK(mentions(problems_of(std::string(kRateExample) + "\nfrequency_hz=1e14"), "exactly one"));
}

TEST_CASE("exclusion zone invariant is cited") {
  std::string text = kRateExample;
  text.replace(text.find("r_ex_m=0.05"), 11, "r_ex_m=0.04");
  CHECK(mentions(problems_of(text), "exclusion zone must contain Bob's aperture"));
}

TEST_CASE("key errors name the key") {
  CHECK(mentions(problems_of(std::string(kRateExample) + "\ncolour=blue"), "'colour'"));
  CHECK(mentions(problems_of(std::string(kRateExample) + "\nmu=3"), "duplicate key 'mu'"));
  CHECK(mentions(problems_of("mode=rate\ngeometry=beam\n"), "missing required key 'w0_m'"));
  CHECK(mentions(problems_of("geometry=beam\n"), "'mode'"));
  CHECK(mentions(problems_of("mode=rate\nmu=\n"), "no value"));
  CHECK(mentions(problems_of("mode=rate\njunk line\n"), "expected key=value"));
  CHECK(mentions(problems_of("mode=dance\n"), "mode"));
  CHECK(mentions(problems_of(std::string(kRateExample) + "\nvariable=mu"), "not used with mode=rate"));
}

TEST_CASE("malformed values") {
  std::string text = kRateExample;
  text.replace(text.find("mu=1000"), 7, "mu=1e3q");
  CHECK(mentions(problems_of(text), "'mu' expects a number"));
  CHECK(mentions(problems_of(std::string(kRateExample) + "\nunrestricted_eve=maybe"),
                 "unrestricted_eve"));
  CHECK(mentions(problems_of(std::string(kRateExample) + "\neve_noise_model=loud"),
                 "eve_noise_model"));
}

TEST_CASE("sweep grids") {
  const std::string base =
      "mode=sweep\ngeometry=exclusion_zone\nr_a_m=0.05\nr_b_m=0.05\nr_ex_m=0.05\nL_km=100\n"
      "lambda_nm=1550\nvariable=mu\n";
  const auto listed = parse_config(base + "grid=1, 10 ,100\nschemes=reverse,best\n");
  CHECK(listed.grid == std::vector<double>{1.0, 10.0, 100.0});
  CHECK(listed.schemes == std::vector<Scheme>{Scheme::reverse, Scheme::best});

  const auto logged =
      parse_config(base + "grid_start=1\ngrid_stop=1000\ngrid_points=4\ngrid_spacing=log\n");
  REQUIRE(logged.grid.size() == 4);
  CHECK(logged.grid[1] == doctest::Approx(10.0));
  CHECK(logged.grid[3] == 1000.0);

  const auto linear = parse_config(base + "grid_start=0\ngrid_stop=1\ngrid_points=3\n");
  CHECK(linear.grid == std::vector<double>{0.0, 0.5, 1.0});

  CHECK(mentions(problems_of(base + "grid=1,1\n"), "strictly increasing"));
  CHECK(mentions(problems_of(base + "grid=5\n"), "at least 2"));
  CHECK(mentions(problems_of(base + "grid=1,x\n"), "'x'"));
  CHECK(mentions(problems_of(base), "missing required key 'grid'"));
  CHECK(mentions(problems_of(base + "grid=1,2\ngrid_points=3\n"), "not both"));
  CHECK(mentions(problems_of(base + "grid=1,2\nschemes=up\n"), "'up'"));
  CHECK(mentions(problems_of(base + "grid=1,2\noptimize_mu=true\n"), "optimize_mu"));
}

TEST_CASE("frequency sweeps take the carrier from the grid") {
  const std::string base =
      "mode=sweep\ngeometry=exclusion_zone\nr_a_m=0.05\nr_b_m=0.05\nr_ex_m=0.05\nL_km=100\n"
      "variable=frequency\ngrid=1e13,1e14\noptimize_mu=true\n";
  CHECK_NOTHROW(parse_config(base));
  CHECK(mentions(problems_of(base + "lambda_nm=1550\n"), "variable=frequency"));
}

TEST_CASE("optimize and figure modes") {
  std::string text = kRateExample;
  text.replace(text.find("mode=rate"), 9, "mode=optimize");
  text.replace(text.find("mu=1000"), 7, "scheme=reverse");
  const auto cfg = parse_config(text);
  CHECK(cfg.scheme == Scheme::reverse);
  CHECK(mentions(problems_of(text + "\nmu_min=10\nmu_max=1"), "mu scan"));
  const auto fig = parse_config("mode=figure\nfigure=fig10\noutput_path=out\n");
  CHECK(fig.figure == "fig10");
  CHECK(mentions(problems_of("mode=figure\n"), "'figure'"));
  CHECK(mentions(problems_of("mode=figure\nfigure=fig2\nbeta=1\n"), "not used with mode=figure"));
}

TEST_CASE("config file loading") {
  const auto dir = scratch_dir("load");
  std::ofstream(dir / "a.cfg") << kRateExample;
  CHECK(load_config(dir / "a.cfg").fixed.mu == 1000.0);
  CHECK_THROWS_AS(load_config(dir / "missing.cfg"), IoError);
}

TEST_CASE("exact numbers round trip") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, 1550.0}) {
    CHECK(std::stod(exact_number(v)) == v);
  }
}

TEST_CASE("every preset survives serialize and parse") {
  for (const auto& id : figure_ids()) {
    for (const auto& spec : figure_preset(id)) {
      CAPTURE(id);
      const auto text = serialize(spec);
      const auto back = to_sweep_spec(parse_config(text));
      CHECK(back == spec);
    }
  }
}

}  // TEST_SUITE

TEST_SUITE("csv") {

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("three rows make four lines") {
  ResultTable t;
  for (double v : {1.0, 2.0, 3.0}) t.rows.push_back(sample_row(v, 2.0));
  const auto text = format_csv(t);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(text.back() == '\n');
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find("1,0.25,0.5,0,-0.5,0.333333333333,0.333333333333,2,1,ub_surrogate\n") !=
        std::string::npos);
}

TEST_CASE("divergent and absent upper bounds") {
  ResultTable t;
  t.rows.push_back(sample_row(1.0, std::numeric_limits<double>::infinity()));
  auto unbounded = sample_row(2.0, 1.0);
  unbounded.mu_used = std::numeric_limits<double>::infinity();
  unbounded.unbounded = true;
  t.rows.push_back(unbounded);
  auto noisy = sample_row(3.0, 0.0);
  noisy.rates.ub.reset();
  t.rows.push_back(noisy);
  ResultRow failed;
  failed.var = 4.0;
  failed.error = "far_field(eta=1.5)";
  t.rows.push_back(failed);
  t.comments = {"figure=test"};

  std::istringstream in(format_csv(t));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "# figure=test");
  auto column = [](const std::string& l, int k) {
    std::stringstream s(l);
    std::string cell;
    for (int i = 0; i <= k; ++i) std::getline(s, cell, ',');
    return cell;
  };
  CHECK(column(lines[2], 7) == "inf");
  CHECK(column(lines[3], 8) == "inf");
  CHECK(column(lines[3], 9) == "ub_surrogate;unbounded");
  CHECK(column(lines[4], 7) == "nan");
  CHECK(column(lines[4], 9) == "");
  CHECK(lines[5] == "4,nan,nan,nan,nan,nan,nan,nan,nan,error:far_field(eta=1.5)");
}

TEST_CASE("emission is byte-identical and checks its target") {
  ResultTable t;
  t.rows.push_back(sample_row(1.0, 2.0));
  const auto dir = scratch_dir("csv");
  emit_csv(t, dir / "a.csv");
  emit_csv(t, dir / "b.csv");
  CHECK(read_file(dir / "a.csv") == read_file(dir / "b.csv"));
  CHECK_THROWS_AS(emit_csv(t, dir / "no_such_dir" / "x.csv"), IoError);
  CHECK_THROWS_AS(emit_csv(ResultTable{}, dir / "c.csv"), DomainError);
}

}  // TEST_SUITE

TEST_SUITE("presets") {

TEST_CASE("captioned parameters") {
  const auto fig10 = figure_preset("fig10");
  REQUIRE(fig10.size() == 2);
  CHECK(fig10[0].fixed.distance_km == 10.0);
  CHECK(fig10[0].fixed.beta == 1.0);
  CHECK(fig10[0].fixed.w0_m == 0.05);
  CHECK(fig10[0].fixed.r_ex_m == 0.05);
  CHECK(fig10[1].fixed.r_ex_m == 0.5);
  CHECK(figure_preset("fig11")[0].fixed.distance_km == 30.0);
  CHECK(figure_preset("fig12")[0].fixed.beta == 0.85);
  const auto fig3 = figure_preset("fig3");
  CHECK(fig3[0].fixed.beta == 0.95);
  CHECK(fig3[0].variable == SweepVariable::mu);
  CHECK(fig3[1].fixed.r_ex_m == 0.10);
  const auto fig2 = figure_preset("fig2");
  CHECK(fig2[0].fixed.distance_km == 100.0);
  CHECK(fig2[0].fixed.wavelength_nm == 1550.0);
  CHECK(figure_preset("fig4")[0].variable == SweepVariable::exclusion_radius);
  CHECK(figure_preset("fig5").size() == 4);
  const auto fig13 = figure_preset("fig13");
  CHECK(std::any_of(fig13.begin(), fig13.end(),
                    [](const SweepSpec& s) { return s.fixed.unrestricted_eve; }));
  CHECK_THROWS_AS(figure_preset("fig1"), DomainError);
}

TEST_CASE("every preset validates") {
  for (const auto& id : figure_ids()) {
    CAPTURE(id);
    for (const auto& spec : figure_preset(id)) CHECK(validate(spec).empty());
  }
}

TEST_CASE("figure tables carry comments") {
  const auto tables = run_figure("fig2", 1);
  REQUIRE(tables.size() == 2);
  const auto& c = tables[1].comments;
  CHECK(std::find(c.begin(), c.end(), "figure=fig2") != c.end());
  CHECK(std::find(c.begin(), c.end(), "label=r_ex=10 cm") != c.end());
  CHECK(std::find(c.begin(), c.end(), "assumed aperture radii r_a = r_b = 5 cm") != c.end());
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  const auto dir = scratch_dir("cli");
  std::ofstream(dir / "rate.cfg") << kRateExample;
  CHECK(run_cli("rate -c " + (dir / "rate.cfg").string()) == 0);
  CHECK(run_cli("sweep -c " + (dir / "rate.cfg").string() + " -o x.csv") == 2);
  CHECK(run_cli("rate -c " + (dir / "nope.cfg").string()) == 3);
  CHECK(run_cli("rate") == 2);
  CHECK(run_cli("figure fig99 -o " + dir.string()) == 2);

  std::ofstream(dir / "bad.cfg") << "mode=rate\nwat=1\n";
  CHECK(run_cli("rate -c " + (dir / "bad.cfg").string()) == 2);

  std::ofstream(dir / "sweep.cfg")
      << "mode=sweep\ngeometry=exclusion_zone\nr_a_m=0.05\nr_b_m=0.05\nr_ex_m=0.5\nL_km=100\n"
         "variable=frequency\ngrid=1e14,1e16\nmu=10\n";
  CHECK(run_cli("sweep -c " + (dir / "sweep.cfg").string() + " -o " +
                (dir / "s.csv").string()) == 1);
  CHECK(read_file(dir / "s.csv").find("error:far_field") != std::string::npos);
  CHECK(run_cli("sweep -c " + (dir / "sweep.cfg").string() + " -o " +
                (dir / "missing" / "s.csv").string()) == 3);
}

TEST_CASE("figure command writes one csv per curve") {
  const auto dir = scratch_dir("figure");
  REQUIRE(run_cli("figure fig3 -o " + dir.string()) == 0);
  CHECK(fs::exists(dir / "fig3_curve1.csv"));
  CHECK(fs::exists(dir / "fig3_curve2.csv"));
  CHECK_FALSE(fs::exists(dir / "fig3_curve3.csv"));
  const auto text = read_file(dir / "fig3_curve1.csv");
  CHECK(text.rfind("# figure=fig3\n", 0) == 0);
  CHECK(text.find(std::string(kCsvHeader) + "\n") != std::string::npos);

  std::ofstream(dir / "fig.cfg") << "mode=figure\nfigure=fig3\n";
  const auto other = scratch_dir("figure_cfg");
  REQUIRE(run_cli("figure -c " + (dir / "fig.cfg").string() + " -o " + other.string()) == 0);
  CHECK(read_file(other / "fig3_curve1.csv") == text);
}

TEST_CASE("sweep command matches the library") {
  const auto dir = scratch_dir("sweep");
  const auto spec = figure_preset("fig11")[1];
  std::ofstream(dir / "s.cfg") << serialize(spec);
  REQUIRE(run_cli("sweep -c " + (dir / "s.cfg").string() + " -o " + (dir / "s.csv").string()) ==
          0);
  auto table = run_sweep(spec, 1);
  table.comments.push_back("label=" + spec.label);
  CHECK(read_file(dir / "s.csv") == format_csv(table));
}

}  // TEST_SUITE
