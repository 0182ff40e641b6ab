#include "predprey/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace predprey {

const char* to_string(Method method) {
    switch (method) {
        case Method::Nsfd: return "nsfd";
        case Method::Euler: return "euler";
        case Method::Rk4: return "rk4";
    }
    return "?";
}

namespace {

bool finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

void require_finite(const Vec2& v, const char* method) {
    if (!finite(v)) {
        throw NonFiniteValueError(std::string(method) + " step overflowed to a non-finite value");
    }
}

} // namespace

Vec2 euler_step(const PreyPredatorModel& model, const Vec2& state, double h) {
    const Vec2 f = vector_field_raw(model, state);
    const Vec2 next{state.x + h * f.x, state.y + h * f.y};
    require_finite(next, "euler");
    return next;
}

Vec2 rk4_step(const PreyPredatorModel& model, const Vec2& state, double h) {
    const Vec2 k1 = vector_field_raw(model, state);
    const Vec2 k2 = vector_field_raw(model, {state.x + 0.5 * h * k1.x, state.y + 0.5 * h * k1.y});
    const Vec2 k3 = vector_field_raw(model, {state.x + 0.5 * h * k2.x, state.y + 0.5 * h * k2.y});
    const Vec2 k4 = vector_field_raw(model, {state.x + h * k3.x, state.y + h * k3.y});
    const Vec2 next{state.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                    state.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
    require_finite(next, "rk4");
    return next;
}

std::optional<PopulationState> stable_attractor(const PreyPredatorModel& model) {
    const auto equilibria = enumerate_equilibria(model);
    for (const auto& eq : equilibria) {
        if (eq.continuous_verdict == ContinuousVerdict::GloballyStable ||
            eq.continuous_verdict == ContinuousVerdict::LocallyStable) {
            return eq.location;
        }
    }
    // Non-hyperbolic extinction point: still the global attractor when both
    // mortalities weakly dominate the renewal rates.
    if (model.params().m1 >= model.r0() && model.params().m2 >= model.s0()) {
        return PopulationState{0.0, 0.0};
    }
    return std::nullopt;
}

Comparison compare_trajectories(const DiscreteMap& map, const PopulationState& state0,
                                std::size_t n, const MethodSelection& which) {
    Comparison cmp;
    cmp.rows.resize(n + 1);
    cmp.summary.attractor = stable_attractor(map.model());
    const double h = map.h();

    auto note_violation = [](MethodSummary& s, std::size_t k, const Vec2& v) {
        if (!s.first_violation && (v.x < 0.0 || v.y < 0.0 || !std::isfinite(v.x) ||
                                   !std::isfinite(v.y))) {
            s.first_violation = k;
        }
    };
    auto finish = [&](MethodSummary& s, const Vec2& last) {
        if (cmp.summary.attractor && finite(last)) {
            s.terminal_distance = std::max(std::abs(last.x - cmp.summary.attractor->x),
                                           std::abs(last.y - cmp.summary.attractor->y));
        }
    };

    for (std::size_t k = 0; k <= n; ++k) {
        cmp.rows[k].k = k;
        cmp.rows[k].t = static_cast<double>(k) * h;
    }

    if (which.nsfd) {
        cmp.summary.nsfd.ran = true;
        PopulationState state = state0;
        cmp.rows[0].nsfd = state;
        note_violation(cmp.summary.nsfd, 0, {state.x, state.y});
        for (std::size_t k = 1; k <= n; ++k) {
            try {
                state = map.step(state);
            } catch (const NonpositiveDenominatorError&) {
                cmp.summary.nsfd.diverged = true;
                if (!cmp.summary.nsfd.first_violation) cmp.summary.nsfd.first_violation = k;
                break;
            }
            cmp.rows[k].nsfd = state;
            note_violation(cmp.summary.nsfd, k, {state.x, state.y});
        }
        finish(cmp.summary.nsfd, {state.x, state.y});
    }

    auto run_standard = [&](MethodSummary& summary, auto step_fn,
                            auto assign) {
        summary.ran = true;
        Vec2 state{state0.x, state0.y};
        assign(cmp.rows[0], state);
        note_violation(summary, 0, state);
        for (std::size_t k = 1; k <= n; ++k) {
            try {
                state = step_fn(map.model(), state, h);
            } catch (const NonFiniteValueError&) {
                summary.diverged = true;
                if (!summary.first_violation) summary.first_violation = k;
                break;
            }
            assign(cmp.rows[k], state);
            note_violation(summary, k, state);
        }
        finish(summary, state);
    };

    if (which.euler) {
        run_standard(cmp.summary.euler, euler_step,
                     [](ComparisonRow& row, const Vec2& v) { row.euler = v; });
    }
    if (which.rk4) {
        run_standard(cmp.summary.rk4, rk4_step,
                     [](ComparisonRow& row, const Vec2& v) { row.rk4 = v; });
    }
    return cmp;
}

namespace {

// Runs `method` for n steps; returns the first index with a negative or
// non-finite component, or nullopt if the whole run stays clean.
std::optional<std::size_t> first_violation_index(Method method, const PreyPredatorModel& model,
                                                 const SchemeParams& scheme,
                                                 const Denominator& denominator, const Vec2& state0,
                                                 std::size_t n, double h) {
    if (method == Method::Nsfd) {
        DiscreteMap map(model, scheme, denominator, h);
        PopulationState state{state0.x, state0.y};
        for (std::size_t k = 1; k <= n; ++k) {
            try {
                state = map.step(state);
            } catch (const NonpositiveDenominatorError&) {
                return k;
            }
            if (state.x < 0.0 || state.y < 0.0 || !finite({state.x, state.y})) return k;
        }
        return std::nullopt;
    }
    Vec2 state = state0;
    for (std::size_t k = 1; k <= n; ++k) {
        try {
            state = method == Method::Euler ? euler_step(model, state, h)
                                            : rk4_step(model, state, h);
        } catch (const NonFiniteValueError&) {
            return k;
        }
        if (state.x < 0.0 || state.y < 0.0) return k;
    }
    return std::nullopt;
}

} // namespace

ThresholdSearch find_positivity_failure_threshold(Method method, const PreyPredatorModel& model,
                                                  const SchemeParams& scheme,
                                                  const Denominator& denominator,
                                                  const Vec2& state0, std::size_t n, double h0,
                                                  int max_doublings) {
    ThresholdSearch search;
    double h = h0;
    for (int d = 0; d <= max_doublings; ++d) {
        search.doublings_used = d;
        search.largest_tested = h;
        if (auto k = first_violation_index(method, model, scheme, denominator, state0, n, h)) {
            search.h = h;
            search.violation_index = k;
            return search;
        }
        h *= 2.0;
    }
    return search;
}

OrderEstimate estimate_order(Method method, const PreyPredatorModel& model,
                             const SchemeParams& scheme, const Denominator& denominator,
                             const PopulationState& state0, double t_end,
                             std::span<const double> h_list) {
    if (h_list.size() < 3) {
        throw std::invalid_argument("order estimation needs at least 3 step sizes");
    }
    auto steps_for = [&](double h) {
        if (!(h > 0.0)) throw std::invalid_argument("step sizes must be > 0");
        const auto n = static_cast<std::size_t>(std::llround(t_end / h));
        if (n == 0 || std::abs(static_cast<double>(n) * h - t_end) > 1e-9 * std::max(1.0, t_end)) {
            throw std::invalid_argument("every step size must divide the time horizon");
        }
        return n;
    };
    for (double h : h_list) steps_for(h);

    const double h_min = *std::min_element(h_list.begin(), h_list.end());
    const double h_ref = h_min / 100.0;
    const auto n_ref = static_cast<std::size_t>(std::llround(t_end / h_ref));
    Vec2 ref{state0.x, state0.y};
    for (std::size_t k = 0; k < n_ref; ++k) {
        try {
            ref = rk4_step(model, ref, h_ref);
        } catch (const NonFiniteValueError&) {
            throw ReferenceUnstableError("reference trajectory overflowed");
        }
        if (ref.x < 0.0 || ref.y < 0.0) {
            throw ReferenceUnstableError("reference trajectory left the positive quadrant");
        }
    }

    OrderEstimate estimate;
    for (double h : h_list) {
        const std::size_t n = steps_for(h);
        Vec2 state{state0.x, state0.y};
        if (method == Method::Nsfd) {
            DiscreteMap map(model, scheme, denominator, h);
            PopulationState ps = state0;
            for (std::size_t k = 0; k < n; ++k) ps = map.step(ps);
            state = {ps.x, ps.y};
        } else {
            for (std::size_t k = 0; k < n; ++k) {
                state = method == Method::Euler ? euler_step(model, state, h)
                                                : rk4_step(model, state, h);
            }
        }
        estimate.h.push_back(h);
        estimate.error.push_back(std::max(std::abs(state.x - ref.x), std::abs(state.y - ref.y)));
    }

    // least-squares slope of log(error) vs log(h)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto count = static_cast<double>(estimate.h.size());
    for (std::size_t i = 0; i < estimate.h.size(); ++i) {
        const double lx = std::log(estimate.h[i]);
        const double ly = std::log(std::max(estimate.error[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    estimate.p = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return estimate;
}

} // namespace predprey
