#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "predprey/integrators.hpp"
#include "predprey/scheme.hpp"
#include "predprey/stability.hpp"

namespace predprey {

/// Shortest round-trip decimal representation, locale-independent, '.' as
/// the decimal separator.
std::string format_double(double value);

/// Header "k,t,x,y".
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// Header "k,t" plus, per selected method, "x_<m>,y_<m>" in the order
/// nsfd, euler, rk4. Cells are empty past the point a method stopped.
void write_comparison_csv(std::ostream& out, const Comparison& comparison,
                          const MethodSelection& which);

/// Header "k,x,y,V,dV".
void write_lyapunov_csv(std::ostream& out, std::span<const LyapunovTracePoint> trace);

/// Opens the file for writing, throwing on failure.
std::ofstream open_output_file(const std::filesystem::path& path);

} // namespace predprey
