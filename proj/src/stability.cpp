#include "predprey/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace predprey {

JuryVerdict jury_test(const Jacobian2& jac) {
    const double tr = jac.trace();
    const double det = jac.det();
    JuryVerdict v;
    v.det_lt_1 = det < 1.0;
    v.one_minus_tr_plus_det_pos = 1.0 - tr + det > 0.0;
    v.one_plus_tr_plus_det_pos = 1.0 + tr + det > 0.0;
    v.stable = v.det_lt_1 && v.one_minus_tr_plus_det_pos && v.one_plus_tr_plus_det_pos;
    v.unstable = det > 1.0 || 1.0 - tr + det < 0.0 || 1.0 + tr + det < 0.0;
    v.inconclusive = !v.stable && !v.unstable;
    return v;
}

std::pair<std::complex<double>, std::complex<double>> eigenvalues_2x2(const Jacobian2& jac) {
    const double tr = jac.trace();
    const double det = jac.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) {
        const std::complex<double> l(0.5 * tr, 0.5 * std::sqrt(-disc));
        return {l, std::conj(l)};
    }
    const double root = std::sqrt(disc);
    // larger-magnitude root first, companion from the product to avoid cancellation
    const double l1 = 0.5 * (tr + std::copysign(root, tr));
    const double l2 = l1 != 0.0 ? det / l1 : 0.0;
    return {std::complex<double>(l1, 0.0), std::complex<double>(l2, 0.0)};
}

Jacobian2 discrete_jacobian(const DiscreteMap& map, const PopulationState& point) {
    auto partial = [&](bool wrt_x) {
        const double coord = wrt_x ? point.x : point.y;
        const double delta = 1e-6 * std::max(1.0, std::abs(coord));
        auto eval = [&](double v) {
            PopulationState probe = point;
            (wrt_x ? probe.x : probe.y) = v;
            return map.step(probe);
        };
        if (coord - delta < 0.0) {
            // second-order one-sided difference toward the interior
            const PopulationState f0 = eval(coord);
            const PopulationState f1 = eval(coord + delta);
            const PopulationState f2 = eval(coord + 2.0 * delta);
            return Vec2{(-3.0 * f0.x + 4.0 * f1.x - f2.x) / (2.0 * delta),
                        (-3.0 * f0.y + 4.0 * f1.y - f2.y) / (2.0 * delta)};
        }
        const PopulationState fp = eval(coord + delta);
        const PopulationState fm = eval(coord - delta);
        return Vec2{(fp.x - fm.x) / (2.0 * delta), (fp.y - fm.y) / (2.0 * delta)};
    };

    const Vec2 dx = partial(true);
    const Vec2 dy = partial(false);
    return Jacobian2{dx.x, dy.x, dx.y, dy.y};
}

DiscreteClassification classify_discrete(const DiscreteMap& map, const Equilibrium& eq) {
    const PopulationState image = map.step(eq.location);
    if (linf_dist(image, eq.location) > 1e-8) {
        throw NotAFixedPointError("point is not a fixed point of the map; cannot classify");
    }
    DiscreteClassification out;
    out.jacobian = discrete_jacobian(map, eq.location);
    out.jury = jury_test(out.jacobian);
    std::tie(out.lambda1, out.lambda2) = eigenvalues_2x2(out.jacobian);
    out.modulus1 = std::abs(out.lambda1);
    out.modulus2 = std::abs(out.lambda2);
    out.non_hyperbolic =
        std::abs(out.modulus1 - 1.0) <= 1e-9 || std::abs(out.modulus2 - 1.0) <= 1e-9;
    return out;
}

LyapunovParams select_lyapunov_params(const PreyPredatorModel& model,
                                      const SchemeParams& scheme) {
    const MortalityParams& p = model.params();
    const double a2 = scheme.alpha[1], a4 = scheme.alpha[3], a6 = scheme.alpha[5];
    const double b6 = scheme.beta[5];
    if (!(b6 > 0.0)) {
        throw InfeasibleSchemeError("weight selection needs beta6 > 0");
    }
    if (!check_global_stability_condition(scheme)) {
        throw InfeasibleSchemeError(
            "weight selection needs alpha4 + beta4 < 0");
    }
    const double bound1 =
        std::max(p.c, (-a2 * p.c * model.r0() + a6 * p.c * p.m1) / (b6 * p.m2));
    const double bound2 = p.c * a4 * model.phi0() / (b6 * p.m2);

    LyapunovParams params;
    params.d_V = 1.0;
    params.a_V = 2.0 * std::max(bound2, 1.0);
    params.b_V = 2.0 * bound1 * params.a_V;
    params.g_V = 2.0 * bound1;
    return params;
}

double lyapunov_value(const LyapunovParams& params, const PopulationState& state) {
    return params.a_V * state.x * state.y + params.b_V * state.x * state.x +
           params.g_V * state.x + params.d_V * state.y;
}

LyapunovReport verify_lyapunov_decrease(const DiscreteMap& map, const LyapunovParams& params,
                                        const PopulationState& state0, std::size_t n,
                                        double stop_below) {
    LyapunovReport report;
    report.min_dV = std::numeric_limits<double>::infinity();
    report.max_dV = -std::numeric_limits<double>::infinity();

    PopulationState state = state0;
    double value = lyapunov_value(params, state);
    for (std::size_t k = 0; k < n; ++k) {
        if (state.x == 0.0 && state.y == 0.0) break;               // origin is fixed
        if (stop_below > 0.0 && linf(state) < stop_below) break;
        const PopulationState next = map.step(state);
        const double next_value = lyapunov_value(params, next);
        const double dV = next_value - value;
        report.min_dV = std::min(report.min_dV, dV);
        report.max_dV = std::max(report.max_dV, dV);
        ++report.steps_taken;
        if (!(dV < 0.0)) {
            report.violation_index = k;
            report.violation_state = state;
            state = next;
            break;
        }
        state = next;
        value = next_value;
    }
    report.final_state = state;
    report.final_distance = linf(state);
    return report;
}

std::vector<LyapunovTracePoint> lyapunov_trace(const DiscreteMap& map,
                                               const LyapunovParams& params,
                                               const PopulationState& state0, std::size_t n) {
    std::vector<LyapunovTracePoint> trace;
    trace.reserve(n + 1);
    PopulationState state = state0;
    double value = lyapunov_value(params, state);
    for (std::size_t k = 0; k <= n; ++k) {
        LyapunovTracePoint point{k, state.x, state.y, value, 0.0};
        if (k < n) {
            const PopulationState next = map.step(state);
            const double next_value = lyapunov_value(params, next);
            point.dV = next_value - value;
            state = next;
            value = next_value;
        }
        trace.push_back(point);
    }
    return trace;
}

} // namespace predprey
