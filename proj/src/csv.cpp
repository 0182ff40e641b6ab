#include "predprey/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>

namespace predprey {

std::string format_double(double value) {
    std::array<char, 32> buffer;
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "k,t,x,y\n";
    for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
        const auto& s = trajectory.states[k];
        out << k << ',' << format_double(trajectory.t0 + static_cast<double>(k) * trajectory.h)
            << ',' << format_double(s.x) << ',' << format_double(s.y) << '\n';
    }
}

void write_comparison_csv(std::ostream& out, const Comparison& comparison,
                          const MethodSelection& which) {
    out << "k,t";
    if (which.nsfd) out << ",x_nsfd,y_nsfd";
    if (which.euler) out << ",x_euler,y_euler";
    if (which.rk4) out << ",x_rk4,y_rk4";
    out << '\n';
    for (const auto& row : comparison.rows) {
        out << row.k << ',' << format_double(row.t);
        if (which.nsfd) {
            if (row.nsfd) {
                out << ',' << format_double(row.nsfd->x) << ',' << format_double(row.nsfd->y);
            } else {
                out << ",,";
            }
        }
        auto raw = [&](const std::optional<Vec2>& v) {
            if (v) {
                out << ',' << format_double(v->x) << ',' << format_double(v->y);
            } else {
                out << ",,";
            }
        };
        if (which.euler) raw(row.euler);
        if (which.rk4) raw(row.rk4);
        out << '\n';
    }
}

void write_lyapunov_csv(std::ostream& out, std::span<const LyapunovTracePoint> trace) {
    out << "k,x,y,V,dV\n";
    for (const auto& p : trace) {
        out << p.k << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
            << format_double(p.V) << ',' << format_double(p.dV) << '\n';
    }
}

std::ofstream open_output_file(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path.string());
    return out;
}

} // namespace predprey
