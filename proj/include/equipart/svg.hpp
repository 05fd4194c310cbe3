#pragma once

#include "equipart/arrangement.hpp"
#include "equipart/measure.hpp"
#include "equipart/sigma.hpp"

#include <string>
#include <vector>

namespace equipart {

/// Planar measure as a grey-scale heatmap (points as dots) with the configuration's lines.
std::string svg_planar(const Measure& measure, const Configuration& config, int size = 480);

/// One ring per solution: the parameter circle of gamma4 with its division points coloured by
/// the track whose hyperplane passes through them, and arcs shaded by their orthant codeword.
std::string svg_rings(const std::vector<SolutionPoint>& points, int ring_size = 220);

}  // namespace equipart
