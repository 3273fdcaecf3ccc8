#pragma once

// SVG heatmaps of two-dimensional report fields.

#include <holocomp/errors.hpp>
#include <holocomp/numeric.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace holocomp {

/// values[iy * x.size() + ix]; flagged cells (or non-finite values) are drawn gray.
struct GridField {
    std::string title;
    std::string x_label, y_label;
    std::vector<double> x, y;
    std::vector<double> values;
    std::vector<bool> flagged;
    std::optional<std::pair<std::size_t, std::size_t>> marker; // (ix, iy)
};

namespace detail {
inline std::string color_at(double t)
{
    // piecewise-linear blue-green-yellow scale
    static constexpr std::array<std::array<double, 3>, 5> stops{{
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
    t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(t), stops.size() - 2);
    const double f = t - static_cast<double>(i);
    char buf[8];
    int rgb[3];
    for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

inline std::string short_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}
} // namespace detail

/// Linear color scale between the smallest and largest finite unflagged values.
inline std::string render_heatmap(const GridField& f)
{
    const std::size_t nx = f.x.size(), ny = f.y.size();
    if (nx == 0 || ny == 0 || f.values.empty()) throw UnsupportedError("heatmap: report has no grid field");
    if (f.values.size() != nx * ny || (!f.flagged.empty() && f.flagged.size() != nx * ny))
        throw UnsupportedError("heatmap: grid field has inconsistent dimensions");

    auto is_flagged = [&](std::size_t k) { return (!f.flagged.empty() && f.flagged[k]) || !std::isfinite(f.values[k]); };
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        if (is_flagged(k)) continue;
        lo = any ? std::min(lo, f.values[k]) : f.values[k];
        hi = any ? std::max(hi, f.values[k]) : f.values[k];
        any = true;
    }

    const double plot = 480.0;
    const double cw = plot / static_cast<double>(nx), ch = plot / static_cast<double>(ny);
    const double left = 80.0, top = 40.0, width = left + plot + 110.0, height = top + plot + 60.0;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">" << f.title << "</text>\n";
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const std::size_t k = iy * nx + ix;
            const double t = hi > lo ? (f.values[k] - lo) / (hi - lo) : 0.5;
            // first y value at the bottom
            s << "<rect x=\"" << format_number(left + ix * cw) << "\" y=\"" << format_number(top + (ny - 1 - iy) * ch)
              << "\" width=\"" << format_number(cw) << "\" height=\"" << format_number(ch) << "\" fill=\""
              << (is_flagged(k) ? std::string("#9e9e9e") : detail::color_at(t)) << "\"" << (is_flagged(k) ? " class=\"flagged\"" : "")
              << "/>\n";
        }
    if (f.marker) {
        const auto [ix, iy] = *f.marker;
        if (ix < nx && iy < ny)
            s << "<circle class=\"argmax\" cx=\"" << format_number(left + (ix + 0.5) * cw) << "\" cy=\""
              << format_number(top + (ny - 1 - iy + 0.5) * ch) << "\" r=\"" << format_number(std::max(4.0, 0.4 * std::min(cw, ch)))
              << "\" fill=\"none\" stroke=\"#e31a1c\" stroke-width=\"2\"/>\n";
    }
    // axes: labels and end ticks
    const double base = top + plot;
    s << "<text x=\"" << left + plot / 2 << "\" y=\"" << base + 40 << "\" text-anchor=\"middle\">" << f.x_label << "</text>\n";
    s << "<text x=\"20\" y=\"" << top + plot / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << top + plot / 2
      << ")\">" << f.y_label << "</text>\n";
    s << "<text x=\"" << left << "\" y=\"" << base + 16 << "\">" << detail::short_number(f.x.front()) << "</text>\n";
    s << "<text x=\"" << left + plot << "\" y=\"" << base + 16 << "\" text-anchor=\"end\">" << detail::short_number(f.x.back())
      << "</text>\n";
    s << "<text x=\"" << left - 6 << "\" y=\"" << base << "\" text-anchor=\"end\">" << detail::short_number(f.y.front()) << "</text>\n";
    s << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << detail::short_number(f.y.back())
      << "</text>\n";
    // color bar
    const double bx = left + plot + 30;
    for (int i = 0; i < 32; ++i)
        s << "<rect x=\"" << bx << "\" y=\"" << format_number(top + plot - (i + 1) * plot / 32) << "\" width=\"16\" height=\""
          << format_number(plot / 32) << "\" fill=\"" << detail::color_at((i + 0.5) / 32) << "\"/>\n";
    s << "<text x=\"" << bx + 22 << "\" y=\"" << base << "\">" << (any ? detail::short_number(lo) : "n/a") << "</text>\n";
    s << "<text x=\"" << bx + 22 << "\" y=\"" << top + 10 << "\">" << (any ? detail::short_number(hi) : "n/a") << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

} // namespace holocomp
