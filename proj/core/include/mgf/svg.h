// core/include/mgf/svg.h

// Copyright 2026  The mgf authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MGF_SVG_H_
#define MGF_SVG_H_

#include <string>
#include <vector>

namespace mgf {

/// One labeled polyline; x and y must have equal length.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Standalone SVG line plot (fixed 800x480 canvas, axes, ticks, legend).
/// No external resources; viewable as-is in a browser.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series);

}  // namespace mgf

#endif  // MGF_SVG_H_
