#include "predprey/model.hpp"

#include <array>
#include <limits>

namespace predprey {

RationalVitalRates::RationalVitalRates(double a_r, double b_r, double a_s, double b_s,
                                       double b_phi)
    : a_r_(a_r), b_r_(b_r), a_s_(a_s), b_s_(b_s), b_phi_(b_phi) {
    if (!(a_r > 0.0 && b_r > 0.0 && a_s > 0.0 && b_s > 0.0 && b_phi > 0.0)) {
        throw ConfigError("rational vital rates require all five parameters > 0");
    }
}

std::optional<double> RationalVitalRates::r_inverse(double target) const {
    if (!(target > 0.0)) return std::nullopt;
    const double x = a_r_ / target - b_r_;
    if (x < 0.0) return std::nullopt;
    return x;
}

std::optional<double> RationalVitalRates::s_inverse(double target) const {
    if (!(target > 0.0)) return std::nullopt;
    const double y = a_s_ / target - b_s_;
    if (y < 0.0) return std::nullopt;
    return y;
}

namespace {

// Folds one probe into a check; `upper` means the condition is an upper bound
// ("value cmp 0" with cmp in {<, <=}), so the worst value is the maximum.
void fold(ConditionCheck& check, double value, double at, bool ok, bool upper) {
    if (!ok) check.pass = false;
    const bool worse = upper ? value > check.worst_value : value < check.worst_value;
    if (worse) {
        check.worst_value = value;
        check.worst_at = at;
    }
}

ConditionCheck make_check(const std::string& name, bool upper) {
    ConditionCheck c;
    c.name = name;
    c.pass = true;
    c.worst_value = upper ? -std::numeric_limits<double>::infinity()
                          : std::numeric_limits<double>::infinity();
    return c;
}

} // namespace

BiologicalReport verify_biological_conditions(const VitalRates& rates,
                                              std::span<const double> probe_grid,
                                              double decay_probe, double eps_decay) {
    if (probe_grid.empty()) {
        throw EmptyGridError("biological verification needs a nonempty probe grid");
    }

    ConditionCheck r_pos = make_check("r_positive", false);
    ConditionCheck r_dec = make_check("r_decreasing", true);
    ConditionCheck xr_mono = make_check("x_r_nondecreasing", false);
    ConditionCheck s_pos = make_check("s_positive", false);
    ConditionCheck s_dec = make_check("s_decreasing", true);
    ConditionCheck ys_mono = make_check("y_s_nondecreasing", false);
    ConditionCheck phi_pos = make_check("phi_positive", false);
    ConditionCheck phi_noninc = make_check("phi_nonincreasing", true);
    ConditionCheck xphi_mono = make_check("x_phi_nondecreasing", false);

    for (double p : probe_grid) {
        const double rv = rates.r(p), rp = rates.r_prime(p);
        const double sv = rates.s(p), sp = rates.s_prime(p);
        const double pv = rates.phi(p), pp = rates.phi_prime(p);
        fold(r_pos, rv, p, rv > 0.0, false);
        fold(r_dec, rp, p, rp < 0.0, true);
        fold(xr_mono, rv + p * rp, p, rv + p * rp >= 0.0, false);
        fold(s_pos, sv, p, sv > 0.0, false);
        fold(s_dec, sp, p, sp < 0.0, true);
        fold(ys_mono, sv + p * sp, p, sv + p * sp >= 0.0, false);
        fold(phi_pos, pv, p, pv > 0.0, false);
        fold(phi_noninc, pp, p, pp <= 0.0, true);
        fold(xphi_mono, pv + p * pp, p, pv + p * pp >= 0.0, false);
    }

    ConditionCheck r_decay = make_check("r_decays", true);
    fold(r_decay, rates.r(decay_probe), decay_probe, rates.r(decay_probe) < eps_decay, true);
    ConditionCheck s_decay = make_check("s_decays", true);
    fold(s_decay, rates.s(decay_probe), decay_probe, rates.s(decay_probe) < eps_decay, true);

    BiologicalReport report;
    report.checks = {r_pos,  r_dec,      xr_mono,  r_decay, s_pos,    s_dec,
                     ys_mono, s_decay,   phi_pos,  phi_noninc, xphi_mono};
    for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
    return report;
}

PreyPredatorModel::PreyPredatorModel(std::shared_ptr<const VitalRates> rates,
                                     MortalityParams params)
    : rates_(std::move(rates)), params_(params) {
    static constexpr std::array<double, 7> kDefaultGrid = {0.0, 0.5, 1.0, 5.0, 10.0, 50.0, 100.0};
    verification_ = verify_biological_conditions(*rates_, kDefaultGrid, 1e6);
}

Vec2 vector_field_raw(const PreyPredatorModel& model, const Vec2& state) {
    const VitalRates& vr = model.rates();
    const MortalityParams& p = model.params();
    const double fx = state.x * (vr.r(state.x) - state.y * vr.phi(state.x) - p.m1);
    const double fy = state.y * (vr.s(state.y) + p.c * state.x * vr.phi(state.x) - p.m2);
    return {fx, fy};
}

Vec2 eval_vector_field(const PreyPredatorModel& model, const PopulationState& state) {
    return vector_field_raw(model, {state.x, state.y});
}

} // namespace predprey
