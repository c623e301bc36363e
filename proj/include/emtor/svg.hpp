#ifndef EMTOR_SVG_HPP
#define EMTOR_SVG_HPP

// SVG weight diagrams: degree on the horizontal axis, weight on the
// vertical axis, one disc per nonzero entry with area proportional to the
// dimension. Pure cohomology renders as the diagonal.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "emtor/graded.hpp"

namespace emtor {

inline std::string weight_diagram_svg(const WeightedGradedVectorSpace& w,
                                      const std::string& title = "") {
    int max_n = 0, max_w = 0;
    long max_dim = 1;
    for (const auto& [key, d] : w.dims) {
        max_n = std::max(max_n, key.first);
        max_w = std::max(max_w, key.second);
        max_dim = std::max(max_dim, d);
    }
    const double cell = 28.0, margin = 46.0, r_max = 11.0;
    const double width = margin * 2 + cell * max_n;
    const double height = margin * 2 + cell * max_w;
    const auto x_of = [&](int n) { return margin + cell * n; };
    const auto y_of = [&](int v) { return height - margin - cell * v; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << static_cast<int>(width) << "\" height=\""
        << static_cast<int>(height) << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    if (!title.empty())
        svg << "  <title>" << title << "</title>\n";
    // axes and grid
    svg << "  <g stroke=\"#ccc\" stroke-width=\"0.5\">\n";
    for (int n = 0; n <= max_n; ++n)
        svg << "    <line x1=\"" << x_of(n) << "\" y1=\"" << y_of(0)
            << "\" x2=\"" << x_of(n) << "\" y2=\"" << y_of(max_w)
            << "\"/>\n";
    for (int v = 0; v <= max_w; ++v)
        svg << "    <line x1=\"" << x_of(0) << "\" y1=\"" << y_of(v)
            << "\" x2=\"" << x_of(max_n) << "\" y2=\"" << y_of(v)
            << "\"/>\n";
    svg << "  </g>\n";
    // diagonal weight = degree, the purity locus
    svg << "  <line x1=\"" << x_of(0) << "\" y1=\"" << y_of(0) << "\" x2=\""
        << x_of(std::min(max_n, max_w)) << "\" y2=\""
        << y_of(std::min(max_n, max_w))
        << "\" stroke=\"#e0b0b0\" stroke-dasharray=\"4 3\"/>\n";
    // axis labels
    svg << "  <g font-size=\"9\" fill=\"#444\" text-anchor=\"middle\">\n";
    for (int n = 0; n <= max_n; ++n)
        svg << "    <text x=\"" << x_of(n) << "\" y=\"" << y_of(0) + 14
            << "\">" << n << "</text>\n";
    for (int v = 0; v <= max_w; ++v)
        svg << "    <text x=\"" << x_of(0) - 14 << "\" y=\"" << y_of(v) + 3
            << "\">" << v << "</text>\n";
    svg << "  </g>\n";
    // discs, area proportional to dimension
    svg << "  <g fill=\"#3465a4\" fill-opacity=\"0.85\">\n";
    for (const auto& [key, d] : w.dims) {
        if (d == 0) continue;
        const double r =
            r_max * std::sqrt(static_cast<double>(d) /
                              static_cast<double>(max_dim));
        svg << "    <circle cx=\"" << x_of(key.first) << "\" cy=\""
            << y_of(key.second) << "\" r=\"" << r << "\"><title>degree "
            << key.first << ", weight " << key.second << ", dim " << d
            << "</title></circle>\n";
    }
    svg << "  </g>\n</svg>\n";
    return svg.str();
}

} // namespace emtor

#endif
