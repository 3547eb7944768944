#pragma once

// Result tables as CSV:
//
//   var,eta,kappa,n_e,lb_direct,lb_reverse,lb_best,ub,mu_used,flags
//
// Numbers use 12 significant digits, `inf`/`-inf`/`nan` literals, LF line
// endings and a trailing newline. Table comments come first as "# " lines.
// flags is a ';'-joined subset of ub_surrogate, unbounded, error:<code>.
// An absent ub and every value column of an error row are written as nan.

#include "skr/sweep.hpp"

#include <filesystem>
#include <string>

namespace skr {

inline constexpr const char* kCsvHeader =
    "var,eta,kappa,n_e,lb_direct,lb_reverse,lb_best,ub,mu_used,flags";

std::string format_number(double v);

// Throws DomainError for an empty table.
std::string format_csv(const ResultTable& table);

// Throws DomainError for an empty table, IoError if the file cannot be written.
void emit_csv(const ResultTable& table, const std::filesystem::path& path);

}  // namespace skr
