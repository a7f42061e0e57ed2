// SPDX-License-Identifier: Apache-2.0
//
// coopnet: analytical model and simulator for cooperative small-cell
// vehicular networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "core/output.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace coopnet {

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

void CurveTable::write_csv(std::ostream& out) const {
    out << x_label;
    for (const auto& label : curve_labels) {
        out << ',' << label;
    }
    out << '\n';
    for (std::size_t i = 0; i < x.size(); ++i) {
        out << format_double(x[i]);
        for (const auto& curve : y) {
            out << ',' << format_double(curve.at(i));
        }
        out << '\n';
    }
}

void CurveTable::write_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    write_csv(out);
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

namespace {

std::string escape_xml(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string tick_label(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

} // namespace

void write_svg(const CurveTable& table, const std::string& title, const std::string& y_label,
               std::ostream& out) {
    constexpr double width = 640.0;
    constexpr double height = 420.0;
    constexpr double left = 70.0;
    constexpr double right = 150.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = x_min;
    double y_max = -x_min;
    for (double v : table.x) {
        x_min = std::min(x_min, v);
        x_max = std::max(x_max, v);
    }
    for (const auto& curve : table.y) {
        for (double v : curve) {
            if (std::isfinite(v)) {
                y_min = std::min(y_min, v);
                y_max = std::max(y_max, v);
            }
        }
    }
    if (!(x_max > x_min)) {
        x_max = x_min + 1.0;
    }
    if (!(y_max > y_min)) {
        y_max = y_min + 1.0;
    }
    auto sx = [&](double v) { return left + (v - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double v) { return top + plot_h - (v - y_min) / (y_max - y_min) * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
        << escape_xml(title) << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = x_min + (x_max - x_min) * t / 4.0;
        const double yv = y_min + (y_max - y_min) * t / 4.0;
        out << "<text x=\"" << sx(xv) << "\" y=\"" << top + plot_h + 15
            << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
        out << "<text x=\"" << left - 5 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
            << tick_label(yv) << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">" << escape_xml(table.x_label) << "</text>\n";
    out << "<text transform=\"translate(16," << top + plot_h / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape_xml(y_label) << "</text>\n";

    for (std::size_t c = 0; c < table.y.size(); ++c) {
        const char* color = kPalette[c % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < table.x.size(); ++i) {
            if (std::isfinite(table.y[c][i])) {
                out << sx(table.x[i]) << ',' << sy(table.y[c][i]) << ' ';
            }
        }
        out << "\"/>\n";
        const double ly = top + 10 + 16.0 * static_cast<double>(c);
        out << "<line x1=\"" << left + plot_w + 10 << "\" y1=\"" << ly << "\" x2=\""
            << left + plot_w + 30 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << left + plot_w + 35 << "\" y=\"" << ly + 4 << "\">"
            << escape_xml(table.curve_labels.at(c)) << "</text>\n";
    }
    out << "</svg>\n";
}

void write_svg(const CurveTable& table, const std::string& title, const std::string& y_label,
               const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    write_svg(table, title, y_label, out);
}

} // namespace coopnet
