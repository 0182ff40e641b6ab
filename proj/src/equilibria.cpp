#include "predprey/equilibria.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "predprey/csv.hpp"

namespace predprey {

const char* to_string(EquilibriumKind kind) {
    switch (kind) {
        case EquilibriumKind::Extinction: return "extinction";
        case EquilibriumKind::PredatorExtinction: return "predator_extinction";
        case EquilibriumKind::PreyExtinction: return "prey_extinction";
        case EquilibriumKind::Coexistence: return "coexistence";
    }
    return "?";
}

const char* to_string(ContinuousVerdict verdict) {
    switch (verdict) {
        case ContinuousVerdict::GloballyStable: return "globally_stable";
        case ContinuousVerdict::LocallyStable: return "locally_stable";
        case ContinuousVerdict::Unstable: return "unstable";
        case ContinuousVerdict::NonHyperbolic: return "non_hyperbolic";
    }
    return "?";
}

namespace {

// Bisection for g(x) = target with g strictly decreasing, g(0) > target.
// Runs to interval exhaustion, so the residual is at rounding level.
double bisect_decreasing(const std::function<double(double)>& g, double target, double x_max,
                         const char* what) {
    double hi = 1.0;
    if (g(x_max) >= target) {
        throw BracketNotFoundError(std::string(what) +
                                   ": no bracket below the search limit; increase it");
    }
    while (g(hi) >= target) hi = std::min(hi * 2.0, x_max);
    double lo = 0.0;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double v = g(mid);
        if (v == target) return mid;
        (v > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::optional<double> find_K(const PreyPredatorModel& model) {
    const double m1 = model.params().m1;
    if (!(m1 < model.r0())) return std::nullopt;
    if (auto k = model.rates().r_inverse(m1)) return k;
    return find_K_bisection(model);
}

std::optional<double> find_M(const PreyPredatorModel& model) {
    const double m2 = model.params().m2;
    if (!(m2 < model.s0())) return std::nullopt;
    if (auto m = model.rates().s_inverse(m2)) return m;
    return find_M_bisection(model);
}

std::optional<double> find_K_bisection(const PreyPredatorModel& model, double x_max) {
    const double m1 = model.params().m1;
    if (!(m1 < model.r0())) return std::nullopt;
    return bisect_decreasing([&](double x) { return model.rates().r(x); }, m1, x_max,
                             "prey recruitment level");
}

std::optional<double> find_M_bisection(const PreyPredatorModel& model, double y_max) {
    const double m2 = model.params().m2;
    if (!(m2 < model.s0())) return std::nullopt;
    return bisect_decreasing([&](double y) { return model.rates().s(y); }, m2, y_max,
                             "predator recruitment level");
}

InteriorSearch find_interior_detailed(const PreyPredatorModel& model, int subdivisions) {
    const MortalityParams& p = model.params();
    const VitalRates& vr = model.rates();
    const double r0 = model.r0(), s0 = model.s0(), phi0 = model.phi0();

    const auto K = find_K(model);
    const auto M = find_M(model);

    const bool branch_low_mortality = M && p.m1 < r0 - *M * phi0;
    const bool branch_window =
        K && s0 < p.m2 && p.m2 < s0 + p.c * *K * vr.phi(*K);
    if (!branch_low_mortality && !branch_window) return {};

    // Both branches imply m1 < r(0), hence K exists and psi changes sign on (0, K).
    const double k_level = *K;
    auto psi = [&](double x) {
        return p.c * x * vr.phi(x) + vr.s((vr.r(x) - p.m1) / vr.phi(x)) - p.m2;
    };

    InteriorSearch result;
    std::vector<double> grid(static_cast<std::size_t>(subdivisions) + 1);
    std::vector<double> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        grid[j] = k_level * static_cast<double>(j) / subdivisions;
        values[j] = psi(grid[j]);
    }

    // Brackets: either psi vanishes at a grid point or changes sign across a
    // subinterval. The leftmost one is refined; the count flags multiplicity.
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const bool exact_zero = values[j] == 0.0;
        const bool sign_change =
            j + 1 < grid.size() && values[j] != 0.0 && values[j] * values[j + 1] < 0.0;
        if (!exact_zero && !sign_change) continue;
        ++result.bracket_count;
        if (!bracketed) {
            lo = grid[j];
            hi = exact_zero ? grid[j] : grid[j + 1];
            bracketed = true;
        }
    }
    if (!bracketed) {
        throw NoSignChangeError(
            "coexistence equilibrium exists but the sign scan found no bracket; "
            "raise the scan resolution");
    }

    double flo = psi(lo);
    if (flo == 0.0) {
        hi = lo;
    } else {
        while (true) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            const double v = psi(mid);
            if (v == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((v < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = v;
            } else {
                hi = mid;
            }
        }
    }
    const double x_star = 0.5 * (lo + hi);
    if (!(std::abs(psi(x_star)) <= 1e-12)) {
        throw Error("coexistence root residual above tolerance");
    }
    const double y_star = (vr.r(x_star) - p.m1) / vr.phi(x_star);
    result.point = PopulationState{x_star, y_star};
    return result;
}

std::optional<PopulationState> find_interior(const PreyPredatorModel& model) {
    return find_interior_detailed(model).point;
}

ContinuousVerdict classify_continuous(const PreyPredatorModel& model, const Equilibrium& eq,
                                      double tol_hyperbolic) {
    const MortalityParams& p = model.params();
    const VitalRates& vr = model.rates();
    const double r0 = model.r0(), s0 = model.s0(), phi0 = model.phi0();

    switch (eq.kind) {
        case EquilibriumKind::Extinction: {
            if (std::abs(p.m1 - r0) <= tol_hyperbolic || std::abs(p.m2 - s0) <= tol_hyperbolic) {
                return ContinuousVerdict::NonHyperbolic;
            }
            if (p.m1 >= r0 && p.m2 >= s0) return ContinuousVerdict::GloballyStable;
            return ContinuousVerdict::Unstable;
        }
        case EquilibriumKind::PredatorExtinction: {
            const double K = eq.location.x;
            const bool stable = p.m1 < r0 && p.m2 > s0 + p.c * K * vr.phi(K);
            return stable ? ContinuousVerdict::LocallyStable : ContinuousVerdict::Unstable;
        }
        case EquilibriumKind::PreyExtinction: {
            const double M = eq.location.y;
            const bool stable = p.m1 > r0 - M * phi0 && p.m2 < s0;
            return stable ? ContinuousVerdict::LocallyStable : ContinuousVerdict::Unstable;
        }
        case EquilibriumKind::Coexistence:
            return ContinuousVerdict::LocallyStable;
    }
    return ContinuousVerdict::Unstable;
}

std::vector<Equilibrium> enumerate_equilibria(const PreyPredatorModel& model,
                                              double tol_hyperbolic) {
    std::vector<Equilibrium> out;
    auto push = [&](EquilibriumKind kind, PopulationState at) {
        Equilibrium eq{kind, at, ContinuousVerdict::Unstable};
        eq.continuous_verdict = classify_continuous(model, eq, tol_hyperbolic);
        out.push_back(eq);
    };

    push(EquilibriumKind::Extinction, {0.0, 0.0});
    if (auto K = find_K(model)) push(EquilibriumKind::PredatorExtinction, {*K, 0.0});
    if (auto M = find_M(model)) push(EquilibriumKind::PreyExtinction, {0.0, *M});
    if (auto star = find_interior(model)) push(EquilibriumKind::Coexistence, *star);
    return out;
}

std::string equilibria_to_csv(std::span<const Equilibrium> equilibria) {
    std::ostringstream out;
    out << "kind,x,y,verdict\n";
    for (const auto& eq : equilibria) {
        out << to_string(eq.kind) << ',' << format_double(eq.location.x) << ','
            << format_double(eq.location.y) << ',' << to_string(eq.continuous_verdict) << '\n';
    }
    return out.str();
}

} // namespace predprey
