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

#ifndef COOPNET_OUTPUT_HPP
#define COOPNET_OUTPUT_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace coopnet {

// Shortest decimal text that parses back to the same binary64 value.
std::string format_double(double value);

// A table whose first column is the sweep variable and every other column is
// one curve.
struct CurveTable {
    std::string x_label;
    std::vector<std::string> curve_labels;
    std::vector<double> x;
    std::vector<std::vector<double>> y; // y[curve][point]

    void write_csv(std::ostream& out) const;
    void write_csv(const std::string& path) const;
};

// Bare-bones line chart: axes with tick labels, one polyline per curve, legend.
void write_svg(const CurveTable& table, const std::string& title, const std::string& y_label,
               std::ostream& out);
void write_svg(const CurveTable& table, const std::string& title, const std::string& y_label,
               const std::string& path);

} // namespace coopnet

#endif
