#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "predprey/model.hpp"

namespace predprey {

struct PlotSeries {
    std::string label;
    std::string color;
    std::vector<Vec2> points;
};

struct PlotMarker {
    Vec2 at;
    std::string label;
};

/// Two stacked panels: prey/predator time series on top, the x-y phase
/// portrait with equilibrium markers below. Self-contained static SVG.
void write_scenario_svg(std::ostream& out, const std::string& title,
                        std::span<const PlotSeries> time_series,
                        std::span<const PlotSeries> phase_series,
                        std::span<const PlotMarker> equilibria);

} // namespace predprey
