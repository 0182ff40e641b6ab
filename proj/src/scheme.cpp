#include "predprey/scheme.hpp"

#include <cmath>
#include <sstream>

#include "predprey/csv.hpp"

namespace predprey {

SchemeParams SchemeParams::defaults() {
    SchemeParams p;
    p.alpha = {2.0, -1.0, -1.0, 2.0, -1.0, 2.0};
    p.beta = {2.0, -1.0, 4.0, -3.0, -1.0, 2.0};
    return p;
}

bool SchemeParams::pairing_ok(double tol) const {
    for (int j = 0; j < 6; j += 2) {
        if (std::abs(alpha[j] + alpha[j + 1] - 1.0) > tol) return false;
        if (std::abs(beta[j] + beta[j + 1] - 1.0) > tol) return false;
    }
    return true;
}

Denominator Denominator::mickens(double q) {
    if (!(q > 0.0)) throw ConfigError("Mickens denominator requires q > 0");
    return Denominator(Form::MickensExponential, q);
}

double Denominator::operator()(double h) const {
    switch (form_) {
        case Form::Linear: return h;
        case Form::MickensExponential: return -std::expm1(-q_ * h) / q_;
    }
    return h;
}

DiscreteMap::DiscreteMap(PreyPredatorModel model, SchemeParams scheme, Denominator denominator,
                         double h)
    : model_(std::move(model)),
      scheme_(scheme),
      denominator_(denominator),
      h_(h),
      varphi_(denominator(h)) {
    if (!(h > 0.0)) throw ConfigError("step size must be > 0");
    if (!scheme_.pairing_ok()) {
        throw ConfigError("scheme weights violate the pairing constraint "
                          "(adjacent weights must sum to 1)");
    }
}

PopulationState DiscreteMap::step(const PopulationState& state) const {
    const VitalRates& vr = model_.rates();
    const MortalityParams& p = model_.params();
    const auto& a = scheme_.alpha;
    const auto& b = scheme_.beta;
    const double w = varphi_;

    const double rx = vr.r(state.x);
    const double sy = vr.s(state.y);
    const double px = vr.phi(state.x);

    const double den_x = 1.0 - w * a[1] * rx + w * a[3] * state.y * px + w * a[5] * p.m1;
    const double den_y = 1.0 - w * b[1] * sy - w * b[3] * p.c * state.x * px + w * b[5] * p.m2;
    if (!(den_x > 0.0) || !(den_y > 0.0)) {
        throw NonpositiveDenominatorError(
            "nonpositive map denominator at state (" + format_double(state.x) + ", " +
            format_double(state.y) + "); scheme weights break the positivity signs");
    }

    const double num_x =
        state.x + w * (a[0] * state.x * rx - a[2] * state.x * state.y * px - a[4] * p.m1 * state.x);
    const double num_y = state.y + w * (b[0] * state.y * sy + b[2] * p.c * state.x * state.y * px -
                                        b[4] * p.m2 * state.y);
    return {num_x / den_x, num_y / den_y};
}

Trajectory DiscreteMap::iterate(const PopulationState& state0, std::size_t n, double t0) const {
    Trajectory traj;
    traj.t0 = t0;
    traj.h = h_;
    traj.states.reserve(n + 1);
    traj.states.push_back(state0);
    for (std::size_t k = 0; k < n; ++k) {
        try {
            traj.states.push_back(step(traj.states.back()));
        } catch (const NonpositiveDenominatorError& e) {
            throw NonpositiveDenominatorError(std::string(e.what()) + " (step " +
                                                  std::to_string(k) + ")",
                                              k);
        }
    }
    return traj;
}

PositivityCheck check_positivity_conditions(const SchemeParams& scheme) {
    // +1: weight must be >= 0, -1: weight must be <= 0.
    static constexpr std::array<int, 6> kAlphaSign = {+1, -1, -1, +1, -1, +1};
    static constexpr std::array<int, 6> kBetaSign = {+1, -1, +1, -1, -1, +1};
    PositivityCheck check;
    check.pass = true;
    for (int j = 0; j < 6; ++j) {
        check.alpha_ok[j] =
            kAlphaSign[j] > 0 ? scheme.alpha[j] >= 0.0 : scheme.alpha[j] <= 0.0;
        check.beta_ok[j] = kBetaSign[j] > 0 ? scheme.beta[j] >= 0.0 : scheme.beta[j] <= 0.0;
        check.pass = check.pass && check.alpha_ok[j] && check.beta_ok[j];
    }
    return check;
}

bool check_global_stability_condition(const SchemeParams& scheme) {
    return scheme.alpha[3] + scheme.beta[3] < 0.0;
}

PredatorExtinctionConditions check_predator_extinction_conditions(const PreyPredatorModel& model,
                                                                  const SchemeParams& scheme) {
    const auto K = find_K(model);
    if (!K) {
        throw MissingEquilibriumError(
            "predator-extinction point does not exist (m1 >= r(0))");
    }
    const VitalRates& vr = model.rates();
    const MortalityParams& p = model.params();
    const double k = *K;
    const auto& a = scheme.alpha;
    const auto& b = scheme.beta;

    PredatorExtinctionConditions out;
    out.t1 = 2.0 * a[5] * p.m1 - 2.0 * a[1] * vr.r(k) + k * vr.r_prime(k);
    out.t2 = model.s0() - p.m2 + p.c * k * vr.phi(k) - 2.0 * b[1] * model.s0() -
             2.0 * b[3] * p.c * k * vr.phi(k) + 2.0 * b[5] * p.m2;
    out.pass = out.t1 > 0.0 && out.t2 > 0.0;
    return out;
}

PreyExtinctionConditions check_prey_extinction_conditions(const PreyPredatorModel& model,
                                                          const SchemeParams& scheme) {
    const auto M = find_M(model);
    if (!M) {
        throw MissingEquilibriumError("prey-extinction point does not exist (m2 >= s(0))");
    }
    const VitalRates& vr = model.rates();
    const MortalityParams& p = model.params();
    const double m = *M;
    const auto& a = scheme.alpha;
    const auto& b = scheme.beta;

    PreyExtinctionConditions out;
    out.t3 = model.r0() - m * model.phi0() - p.m1 - 2.0 * a[1] * model.r0() +
             2.0 * a[3] * m * model.phi0() + 2.0 * a[5] * p.m1;
    out.t4 = m * vr.s_prime(m) - 2.0 * b[1] * vr.s(m) + 2.0 * b[5] * p.m2;
    out.pass = out.t3 > 0.0 && out.t4 > 0.0;
    return out;
}

CoexistenceConditions check_coexistence_conditions(const PreyPredatorModel& model,
                                                   const SchemeParams& scheme) {
    const auto star = find_interior(model);
    if (!star) {
        throw MissingEquilibriumError("coexistence point does not exist for these mortalities");
    }
    const VitalRates& vr = model.rates();
    const MortalityParams& p = model.params();
    const double x = star->x, y = star->y;
    const auto& a = scheme.alpha;
    const auto& b = scheme.beta;

    const double prey_slope = vr.r_prime(x) - y * vr.phi_prime(x); // < 0 at the equilibrium
    const double u_terms = -a[1] * vr.r(x) + a[3] * y * vr.phi(x) + a[5] * p.m1;
    const double v_terms = -b[1] * vr.s(y) - b[3] * p.c * x * vr.phi(x) + b[5] * p.m2;

    CoexistenceConditions out;
    out.t5 = -x * prey_slope * v_terms - y * vr.s_prime(y) * u_terms -
             x * y * vr.s_prime(y) * prey_slope -
             p.c * x * y * vr.phi(x) * (vr.phi(x) + x * vr.phi_prime(x));
    out.t6 = u_terms + x * prey_slope;
    out.t7 = v_terms + y * vr.s_prime(y);
    out.pass = out.t5 > 0.0 && out.t6 > 0.0 && out.t7 > 0.0;
    return out;
}

namespace {

struct Regime {
    int row = 0;
    const char* label = "";
    bool ambiguous = false;
};

Regime classify_regime(const PreyPredatorModel& model, double tol) {
    const MortalityParams& p = model.params();
    const VitalRates& vr = model.rates();
    const double r0 = model.r0(), s0 = model.s0(), phi0 = model.phi0();

    Regime regime;
    regime.ambiguous =
        std::abs(p.m1 - r0) <= tol || std::abs(p.m2 - s0) <= tol;
    const auto K = find_K(model);
    const auto M = find_M(model);
    if (K) {
        const double window = s0 + p.c * *K * vr.phi(*K);
        regime.ambiguous = regime.ambiguous || std::abs(p.m2 - window) <= tol;
    }
    if (M) {
        const double margin = r0 - *M * phi0;
        regime.ambiguous = regime.ambiguous || std::abs(p.m1 - margin) <= tol;
    }

    if (p.m1 >= r0 && p.m2 >= s0) {
        regime.row = 1;
        regime.label = "extinction";
    } else if (K && p.m2 > s0 + p.c * *K * vr.phi(*K)) {
        regime.row = 2;
        regime.label = "predator_extinction";
    } else if (M && p.m1 > r0 - *M * phi0) {
        regime.row = 3;
        regime.label = "prey_extinction";
    } else if (M && p.m1 < r0 - *M * phi0) {
        regime.row = 4;
        regime.label = "coexistence";
    } else if (K && s0 < p.m2 && p.m2 < s0 + p.c * *K * vr.phi(*K)) {
        regime.row = 5;
        regime.label = "coexistence";
    } else {
        regime.row = 0;
        regime.label = "boundary";
        regime.ambiguous = true;
    }
    return regime;
}

} // namespace

ConditionReport consistency_report(const PreyPredatorModel& model, const SchemeParams& scheme,
                                   double tol_hyperbolic) {
    ConditionReport report;
    const Regime regime = classify_regime(model, tol_hyperbolic);
    report.regime_row = regime.row;
    report.regime_label = regime.label;
    report.ambiguous_regime = regime.ambiguous;
    report.positivity = check_positivity_conditions(scheme);

    bool stability_pass = false;
    switch (regime.row) {
        case 1:
            report.global_stability = check_global_stability_condition(scheme);
            stability_pass = *report.global_stability;
            break;
        case 2:
            report.predator_extinction = check_predator_extinction_conditions(model, scheme);
            stability_pass = report.predator_extinction->pass;
            break;
        case 3:
            report.prey_extinction = check_prey_extinction_conditions(model, scheme);
            stability_pass = report.prey_extinction->pass;
            break;
        case 4:
        case 5:
            report.coexistence = check_coexistence_conditions(model, scheme);
            stability_pass = report.coexistence->pass;
            break;
        default:
            break;
    }
    report.consistent = report.regime_row != 0 && report.positivity.pass && stability_pass;
    return report;
}

std::string format_report(const ConditionReport& report) {
    std::ostringstream out;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    auto pf = [](bool b) { return b ? "pass" : "fail"; };
    out << "regime_row = " << report.regime_row << '\n';
    out << "regime = " << report.regime_label << '\n';
    out << "ambiguous_regime = " << yn(report.ambiguous_regime) << '\n';
    out << "equilibria_preserved = " << pf(report.equilibria_preserved) << '\n';
    out << "positivity_conditions = " << pf(report.positivity.pass) << '\n';
    if (report.global_stability) {
        out << "global_stability_condition = " << pf(*report.global_stability) << '\n';
    }
    if (report.predator_extinction) {
        out << "T1 = " << format_double(report.predator_extinction->t1) << '\n';
        out << "T2 = " << format_double(report.predator_extinction->t2) << '\n';
        out << "predator_extinction_conditions = " << pf(report.predator_extinction->pass)
            << '\n';
    }
    if (report.prey_extinction) {
        out << "T3 = " << format_double(report.prey_extinction->t3) << '\n';
        out << "T4 = " << format_double(report.prey_extinction->t4) << '\n';
        out << "prey_extinction_conditions = " << pf(report.prey_extinction->pass) << '\n';
    }
    if (report.coexistence) {
        out << "T5 = " << format_double(report.coexistence->t5) << '\n';
        out << "T6 = " << format_double(report.coexistence->t6) << '\n';
        out << "T7 = " << format_double(report.coexistence->t7) << '\n';
        out << "coexistence_conditions = " << pf(report.coexistence->pass) << '\n';
    }
    out << "dynamically_consistent = " << yn(report.consistent) << '\n';
    return out.str();
}

} // namespace predprey
