#pragma once

// Shared fixtures and independent oracles for the test suites. Everything in
// here is computed from its own formulas, never through the library code path
// it is used to check.

#include <array>
#include <cmath>
#include <memory>
#include <utility>

#include "predprey/model.hpp"
#include "predprey/scheme.hpp"
#include "predprey/stability.hpp"

namespace testsupport {

using namespace predprey;

// Strict relative comparison: |a - b| <= tol * max(|a|, |b|).
inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// Rational rates r(x) = 15/(x+10), s(y) = 5/(y+10), phi(x) = 1/(x+30), c = 0.003.
inline std::shared_ptr<const RationalVitalRates> standard_rates() {
    return std::make_shared<RationalVitalRates>(15.0, 10.0, 5.0, 10.0, 30.0);
}

// The six built-in mortality pairs, index 1..6.
inline constexpr std::array<std::pair<double, double>, 6> kCaseMortalities = {{
    {1.53, 0.622},
    {1.53, 0.4789},
    {1.4925, 0.4789},
    {1.38, 0.4789},
    {0.3, 0.501},
    {1.38, 0.622},
}};

inline PreyPredatorModel case_model(int index) {
    const auto [m1, m2] = kCaseMortalities[static_cast<std::size_t>(index - 1)];
    return PreyPredatorModel(standard_rates(), MortalityParams{m1, m2, 0.003});
}

inline PreyPredatorModel model_with(double m1, double m2) {
    return PreyPredatorModel(standard_rates(), MortalityParams{m1, m2, 0.003});
}

// Second expression tree for the one-step map: the incremental form
//   x' = x + w (x [r(x) - m1] - x y phi(x)) / den_x
//   y' = y + w (y [s(y) - m2] + c x y phi(x)) / den_y
// which is an algebraic rearrangement of the quotient form the library
// evaluates, with a different floating-point path.
inline PopulationState step_incremental_form(const DiscreteMap& map,
                                             const PopulationState& state) {
    const VitalRates& vr = map.model().rates();
    const MortalityParams& p = map.model().params();
    const auto& a = map.scheme().alpha;
    const auto& b = map.scheme().beta;
    const double w = map.varphi();
    const double rx = vr.r(state.x), sy = vr.s(state.y), px = vr.phi(state.x);
    const double den_x = 1.0 - w * a[1] * rx + w * a[3] * state.y * px + w * a[5] * p.m1;
    const double den_y = 1.0 - w * b[1] * sy - w * b[3] * p.c * state.x * px + w * b[5] * p.m2;
    const double xn = state.x + w * (state.x * (rx - p.m1) - state.x * state.y * px) / den_x;
    const double yn = state.y + w * (state.y * (sy - p.m2) + p.c * state.x * state.y * px) / den_y;
    return {xn, yn};
}

// The two map denominators, for checking they stay >= 1 under the sign
// conditions.
inline std::pair<double, double> map_denominators(const DiscreteMap& map,
                                                  const PopulationState& state) {
    const VitalRates& vr = map.model().rates();
    const MortalityParams& p = map.model().params();
    const auto& a = map.scheme().alpha;
    const auto& b = map.scheme().beta;
    const double w = map.varphi();
    const double den_x =
        1.0 - w * a[1] * vr.r(state.x) + w * a[3] * state.y * vr.phi(state.x) + w * a[5] * p.m1;
    const double den_y = 1.0 - w * b[1] * vr.s(state.y) -
                         w * b[3] * p.c * state.x * vr.phi(state.x) + w * b[5] * p.m2;
    return {den_x, den_y};
}

// Closed-form Jacobians of the map at the boundary fixed points, as derived
// by hand from the quotient rule (diagonal/triangular structure).
inline Jacobian2 closed_form_jacobian_extinction(const PreyPredatorModel& model,
                                                 const SchemeParams& s, double w) {
    const MortalityParams& p = model.params();
    const double r0 = model.r0(), s0 = model.s0();
    Jacobian2 j;
    j.j11 = (1.0 + w * s.alpha[0] * r0 - w * s.alpha[4] * p.m1) /
            (1.0 - w * s.alpha[1] * r0 + w * p.m1 * s.alpha[5]);
    j.j22 = (1.0 + w * s.beta[0] * s0 - w * s.beta[4] * p.m2) /
            (1.0 - w * s.beta[1] * s0 + w * s.beta[5] * p.m2);
    j.j12 = j.j21 = 0.0;
    return j;
}

inline Jacobian2 closed_form_jacobian_predator_extinction(const PreyPredatorModel& model,
                                                          const SchemeParams& s, double w,
                                                          double K) {
    const VitalRates& vr = model.rates();
    const MortalityParams& p = model.params();
    const double u = 1.0 - w * s.alpha[1] * vr.r(K) + w * s.alpha[5] * p.m1;
    const double v = 1.0 - w * s.beta[1] * model.s0() - w * s.beta[3] * p.c * K * vr.phi(K) +
                     w * s.beta[5] * p.m2;
    Jacobian2 j;
    j.j11 = 1.0 + w * K * vr.r_prime(K) / u;
    j.j12 = -w * K * vr.phi(K) / u;
    j.j21 = 0.0;
    j.j22 = 1.0 + w * (model.s0() - p.m2 + p.c * K * vr.phi(K)) / v;
    return j;
}

inline Jacobian2 closed_form_jacobian_prey_extinction(const PreyPredatorModel& model,
                                                      const SchemeParams& s, double w,
                                                      double M) {
    const VitalRates& vr = model.rates();
    const MortalityParams& p = model.params();
    const double u = 1.0 - w * s.alpha[1] * model.r0() + w * s.alpha[3] * M * model.phi0() +
                     w * s.alpha[5] * p.m1;
    const double v = 1.0 - w * s.beta[1] * vr.s(M) + w * s.beta[5] * p.m2;
    Jacobian2 j;
    j.j11 = 1.0 + w * (model.r0() - M * model.phi0() - p.m1) / u;
    j.j12 = 0.0;
    j.j21 = w * p.c * M * model.phi0() / v;
    j.j22 = 1.0 + w * M * vr.s_prime(M) / v;
    return j;
}

// Independent root oracle for the coexistence abscissa: plain bisection on
//   psi(x) = c x phi(x) + s((r(x) - m1)/phi(x)) - m2
// with the rational closed forms written out locally.
inline double interior_psi(double x, double m1, double m2) {
    const double r = 15.0 / (x + 10.0);
    const double phi = 1.0 / (x + 30.0);
    const double y = (r - m1) / phi;
    return 0.003 * x * phi + 5.0 / (y + 10.0) - m2;
}

inline double interior_root_oracle(double m1, double m2) {
    double lo = 0.0;
    double hi = 15.0 / m1 - 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (interior_psi(mid, m1, m2) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace testsupport
