#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "predprey/scheme.hpp"

namespace predprey {

enum class Method { Nsfd, Euler, Rk4 };

const char* to_string(Method method);

/// Explicit Euler step on a raw pair; negative excursions are allowed and are
/// exactly what the comparison harness studies. Throws NonFiniteValueError on
/// overflow to a non-finite value.
Vec2 euler_step(const PreyPredatorModel& model, const Vec2& state, double h);

/// Classical four-stage Runge-Kutta step, same conventions as euler_step.
Vec2 rk4_step(const PreyPredatorModel& model, const Vec2& state, double h);

struct MethodSelection {
    bool nsfd = true;
    bool euler = false;
    bool rk4 = false;
};

struct ComparisonRow {
    std::size_t k = 0;
    double t = 0.0;
    std::optional<PopulationState> nsfd;
    std::optional<Vec2> euler;
    std::optional<Vec2> rk4;
};

struct MethodSummary {
    bool ran = false;
    std::optional<std::size_t> first_violation; ///< first index with a negative or non-finite entry
    bool diverged = false;                      ///< hit a non-finite value and stopped
    std::optional<double> terminal_distance;    ///< inf-distance of the last state to the attractor
};

struct ComparisonSummary {
    MethodSummary nsfd, euler, rk4;
    std::optional<PopulationState> attractor; ///< the stable equilibrium, when one exists
};

struct Comparison {
    std::vector<ComparisonRow> rows;
    ComparisonSummary summary;
};

/// The equilibrium the continuous theory predicts as the attractor (the one
/// classified stable; the extinction point in the boundary regime).
std::optional<PopulationState> stable_attractor(const PreyPredatorModel& model);

/// Runs the selected methods side by side for n steps from state0 at the
/// map's step size. Per-method failures are recorded in the summary, never
/// thrown.
Comparison compare_trajectories(const DiscreteMap& map, const PopulationState& state0,
                                std::size_t n, const MethodSelection& which);

struct ThresholdSearch {
    std::optional<double> h;                    ///< smallest tested step that fails
    std::optional<std::size_t> violation_index; ///< first bad index at that step
    int doublings_used = 0;
    double largest_tested = 0.0;
};

/// Doubles h from h0 until the method produces a negative or non-finite
/// component within n steps. Thresholds are searched, never hard-coded.
ThresholdSearch find_positivity_failure_threshold(Method method, const PreyPredatorModel& model,
                                                  const SchemeParams& scheme,
                                                  const Denominator& denominator,
                                                  const Vec2& state0, std::size_t n,
                                                  double h0 = 0.1, int max_doublings = 40);

struct OrderEstimate {
    double p = 0.0; ///< least-squares slope of log(error) against log(h)
    std::vector<double> h;
    std::vector<double> error;
};

/// Empirical convergence order at t_end against a fine Runge-Kutta reference
/// (h_ref = min(h)/100). Every h must divide t_end. Throws
/// ReferenceUnstableError if the reference trajectory leaves the quadrant.
OrderEstimate estimate_order(Method method, const PreyPredatorModel& model,
                             const SchemeParams& scheme, const Denominator& denominator,
                             const PopulationState& state0, double t_end,
                             std::span<const double> h_list);

} // namespace predprey
