#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "predprey/scheme.hpp"

namespace predprey {

struct Jacobian2 {
    double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;
    double trace() const { return j11 + j22; }
    double det() const { return j11 * j22 - j12 * j21; }
};

/// Three-inequality test for both eigenvalues of a 2x2 map Jacobian lying
/// inside the unit circle: det < 1, 1 - Tr + det > 0, 1 + Tr + det > 0.
/// Reversing any one strictly certifies instability; boundaries are
/// inconclusive.
struct JuryVerdict {
    bool det_lt_1 = false;
    bool one_minus_tr_plus_det_pos = false;
    bool one_plus_tr_plus_det_pos = false;
    bool stable = false;
    bool unstable = false;
    bool inconclusive = false;
};

JuryVerdict jury_test(const Jacobian2& jac);

/// Roots of lambda^2 - Tr lambda + det via the numerically stable quadratic
/// formula; a complex-conjugate pair when the discriminant is negative.
std::pair<std::complex<double>, std::complex<double>> eigenvalues_2x2(const Jacobian2& jac);

/// Finite-difference Jacobian of the one-step map: central differences with
/// step 1e-6 * max(1, |coordinate|); one-sided toward the interior where a
/// central probe would leave the quadrant.
Jacobian2 discrete_jacobian(const DiscreteMap& map, const PopulationState& point);

struct DiscreteClassification {
    Jacobian2 jacobian;
    JuryVerdict jury;
    std::complex<double> lambda1, lambda2;
    double modulus1 = 0.0, modulus2 = 0.0;
    bool non_hyperbolic = false; ///< some eigenvalue modulus within 1e-9 of 1
};

/// Jury test at the map's Jacobian over a fixed point. Throws
/// NotAFixedPointError when ||step(eq) - eq||inf > 1e-8.
DiscreteClassification classify_discrete(const DiscreteMap& map, const Equilibrium& eq);

/// Weights of the Lyapunov candidate V(x, y) = a xy + b x^2 + g x + d y
/// (all strictly positive).
struct LyapunovParams {
    double a_V = 0.0;
    double b_V = 0.0;
    double g_V = 0.0;
    double d_V = 0.0;
};

/// Picks weights with a factor-2 margin on every strict inequality they must
/// satisfy for the extinction regime:
///   B1 = max{c, (-a2 c r(0) + a6 c m1) / (b6 m2)},  B2 = c a4 phi(0) / (b6 m2)
///   d = 1, a = 2 max(B2, 1), b = 2 B1 a, g = 2 B1.
/// Throws InfeasibleSchemeError when b6 <= 0 or alpha4 + beta4 >= 0.
LyapunovParams select_lyapunov_params(const PreyPredatorModel& model, const SchemeParams& scheme);

double lyapunov_value(const LyapunovParams& params, const PopulationState& state);

struct LyapunovTracePoint {
    std::size_t k = 0;
    double x = 0.0, y = 0.0;
    double V = 0.0;
    double dV = 0.0; ///< V(state_{k+1}) - V(state_k)
};

struct LyapunovReport {
    std::size_t steps_taken = 0;
    double min_dV = 0.0;
    double max_dV = 0.0;
    PopulationState final_state;
    double final_distance = 0.0; ///< inf-norm distance to the origin
    std::optional<std::size_t> violation_index;
    PopulationState violation_state;
    bool ok() const { return !violation_index.has_value(); }
};

/// Iterates up to n steps asserting strict decrease V(next) < V(current) at
/// every step away from the origin (no tolerance slack; a tie is a recorded
/// violation, not a pass). Stops early once ||state||inf < stop_below when
/// stop_below > 0.
LyapunovReport verify_lyapunov_decrease(const DiscreteMap& map, const LyapunovParams& params,
                                        const PopulationState& state0, std::size_t n,
                                        double stop_below = 0.0);

/// Per-step (k, x, y, V, dV) record for CSV output.
std::vector<LyapunovTracePoint> lyapunov_trace(const DiscreteMap& map,
                                               const LyapunovParams& params,
                                               const PopulationState& state0, std::size_t n);

} // namespace predprey
