#include "skr/csv.hpp"

#include "skr/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace skr {

namespace {

std::string flags_of(const ResultRow& row) {
  std::string out;
  auto add = [&](const std::string& f) {
    if (!out.empty()) out += ';';
    out += f;
  };
  if (row.error) {
    add("error:" + *row.error);
    return out;
  }
  if (row.rates.ub) add("ub_surrogate");
  if (row.unbounded) add("unbounded");
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_csv(const ResultTable& table) {
  if (table.rows.empty()) throw DomainError("emit_csv: table has no rows");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::string out;
  for (const auto& c : table.comments) out += "# " + c + "\n";
  out += kCsvHeader;
  out += '\n';
  for (const auto& row : table.rows) {
    const bool ok = !row.error;
    const double cols[] = {
        row.var,
        ok ? row.channel.eta : nan,
        ok ? row.channel.kappa : nan,
        ok ? row.channel.n_e : nan,
        ok ? row.rates.lb_direct : nan,
        ok ? row.rates.lb_reverse : nan,
        ok ? row.rates.lb_best : nan,
        ok && row.rates.ub ? *row.rates.ub : nan,
        ok ? row.mu_used : nan,
    };
    for (double v : cols) {
      out += format_number(v);
      out += ',';
    }
    out += flags_of(row);
    out += '\n';
  }
  return out;
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
  const std::string text = format_csv(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace skr
