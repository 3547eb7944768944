#pragma once

// Sweep specs behind the figure presets.
// Every spec is one curve family; `skr figure ID` writes them as
// ID_curve1.csv, ID_curve2.csv, ... in this order.

#include "skr/sweep.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace skr {

// fig2 fig3 fig4 fig5 fig10 fig11 fig12 fig13 fig14 fig15
const std::vector<std::string>& figure_ids();

// Throws DomainError for an unknown id.
std::vector<SweepSpec> figure_preset(std::string_view id);

// Assumptions behind the preset that the figure itself leaves open; written
// as CSV comments.
std::vector<std::string> preset_notes(std::string_view id);

// Runs every curve of the preset. Each table carries comments naming the
// figure, the curve, its parameters and the preset notes.
std::vector<ResultTable> run_figure(std::string_view id, unsigned threads = 0);

}  // namespace skr
