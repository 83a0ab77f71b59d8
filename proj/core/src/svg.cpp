#include "curvereg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "curvereg/io.hpp"

namespace curvereg {

namespace {

std::string tick_label(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

std::string series_color(std::size_t index, std::size_t total) {
    if (index == 0 && total > 1) return "#999999";
    if (index + 1 == total || total == 1) return "#000000";
    const int level = 150 - static_cast<int>(120 * index / std::max<std::size_t>(total - 1, 1));
    std::ostringstream os;
    os << "#" << std::hex << (level << 16 | level << 8 | level);
    return os.str();
}

}  // namespace

void emit_boxplot_svg(const std::vector<CellSummary>& summaries, const std::string& metric,
                      const std::filesystem::path& path) {
    if (summaries.empty()) throw std::invalid_argument("emit_boxplot_svg: no summaries");

    const auto pick = [&metric](const CellSummary& s) -> const Quartiles& {
        if (metric == "shift_err") return s.shift_err;
        if (metric == "pattern_err") return s.pattern_err;
        throw std::invalid_argument("emit_boxplot_svg: unknown metric \"" + metric + "\"");
    };

    std::set<int> j_set, n_set;
    double vmax = 0.0;
    for (const auto& s : summaries) {
        j_set.insert(s.j_count);
        n_set.insert(s.n);
        vmax = std::max(vmax, pick(s).max);
    }
    if (vmax <= 0.0) vmax = 1.0;
    const std::vector<int> j_values(j_set.begin(), j_set.end());
    const std::vector<int> n_values(n_set.begin(), n_set.end());

    const double margin_left = 70.0, margin_right = 20.0, margin_top = 40.0, margin_bottom = 60.0;
    const double box_w = 22.0, box_gap = 6.0;
    const double group_w = n_values.size() * (box_w + box_gap) + 24.0;
    const double plot_w = group_w * static_cast<double>(j_values.size());
    const double plot_h = 300.0;
    const double width = margin_left + plot_w + margin_right;
    const double height = margin_top + plot_h + margin_bottom;

    const double y_top = vmax * 1.05;
    const auto y_of = [&](double v) { return margin_top + plot_h * (1.0 - v / y_top); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << margin_left << "\" y=\"20\" font-family=\"sans-serif\" "
           "font-size=\"13\">"
        << metric << " by J (whiskers: min/max)</text>\n";

    // axes
    svg << "  <line x1=\"" << margin_left << "\" y1=\"" << margin_top << "\" x2=\"" << margin_left
        << "\" y2=\"" << margin_top + plot_h << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << margin_left << "\" y1=\"" << margin_top + plot_h << "\" x2=\""
        << margin_left + plot_w << "\" y2=\"" << margin_top + plot_h << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = y_top * tick / 4.0;
        const double y = y_of(v);
        svg << "  <line x1=\"" << margin_left - 4 << "\" y1=\"" << y << "\" x2=\"" << margin_left
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << margin_left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(v) << "</text>\n";
    }

    std::map<std::pair<int, int>, const CellSummary*> by_cell;
    for (const auto& s : summaries) by_cell[{s.n, s.j_count}] = &s;

    for (std::size_t gi = 0; gi < j_values.size(); ++gi) {
        const double group_x = margin_left + group_w * static_cast<double>(gi) + 12.0;
        svg << "  <text x=\"" << group_x + n_values.size() * (box_w + box_gap) / 2.0 << "\" y=\""
            << margin_top + plot_h + 18 << "\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"12\">J=" << j_values[gi] << "</text>\n";
        for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
            const auto it = by_cell.find({n_values[ni], j_values[gi]});
            if (it == by_cell.end()) continue;
            const Quartiles& q = pick(*it->second);
            const double x = group_x + static_cast<double>(ni) * (box_w + box_gap);
            const double cx = x + box_w / 2.0;
            const std::string color = series_color(ni, n_values.size());
            svg << "  <g class=\"box\" fill=\"none\" stroke=\"" << color << "\">\n";
            // whiskers with caps
            svg << "    <line x1=\"" << cx << "\" y1=\"" << y_of(q.min) << "\" x2=\"" << cx
                << "\" y2=\"" << y_of(q.q1) << "\"/>\n";
            svg << "    <line x1=\"" << cx << "\" y1=\"" << y_of(q.q3) << "\" x2=\"" << cx
                << "\" y2=\"" << y_of(q.max) << "\"/>\n";
            svg << "    <line x1=\"" << cx - box_w / 4 << "\" y1=\"" << y_of(q.min) << "\" x2=\""
                << cx + box_w / 4 << "\" y2=\"" << y_of(q.min) << "\"/>\n";
            svg << "    <line x1=\"" << cx - box_w / 4 << "\" y1=\"" << y_of(q.max) << "\" x2=\""
                << cx + box_w / 4 << "\" y2=\"" << y_of(q.max) << "\"/>\n";
            // interquartile box and median
            svg << "    <rect x=\"" << x << "\" y=\"" << y_of(q.q3) << "\" width=\"" << box_w
                << "\" height=\"" << std::max(0.5, y_of(q.q1) - y_of(q.q3)) << "\"/>\n";
            svg << "    <line x1=\"" << x << "\" y1=\"" << y_of(q.median) << "\" x2=\""
                << x + box_w << "\" y2=\"" << y_of(q.median) << "\" stroke-width=\"2\"/>\n";
            svg << "  </g>\n";
        }
    }

    // legend
    double ly = margin_top + 4;
    for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
        const double lx = margin_left + plot_w - 110.0;
        svg << "  <rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"12\" height=\"12\" "
            << "fill=\"none\" stroke=\"" << series_color(ni, n_values.size()) << "\"/>\n";
        svg << "  <text x=\"" << lx + 18 << "\" y=\"" << ly + 10
            << "\" font-family=\"sans-serif\" font-size=\"11\">n=" << n_values[ni] << "</text>\n";
        ly += 16;
    }

    svg << "</svg>\n";

    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << svg.str();
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace curvereg
