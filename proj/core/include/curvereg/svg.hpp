#ifndef CURVEREG_SVG_HPP
#define CURVEREG_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "curvereg/experiment.hpp"

namespace curvereg {

/// Self-contained SVG boxplot of one error metric ("shift_err" or
/// "pattern_err"): one box per (n, J) cell, grouped by J on the horizontal
/// axis, the first n series drawn gray and the second black. Whiskers span
/// min..max (stated in the legend). Throws for unknown metric names.
void emit_boxplot_svg(const std::vector<CellSummary>& summaries, const std::string& metric,
                      const std::filesystem::path& path);

}  // namespace curvereg

#endif
