#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "predprey/errors.hpp"

namespace predprey {

/// Prey/predator densities. States produced by the structure-preserving map
/// stay in the closed positive quadrant.
struct PopulationState {
    double x = 0.0;
    double y = 0.0;
};

/// Raw 2-vector: derivatives, and integrator states that are allowed to go
/// negative (standard schemes are run unclamped on purpose).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double linf(const PopulationState& s) { return std::max(std::abs(s.x), std::abs(s.y)); }
inline double linf(const Vec2& v) { return std::max(std::abs(v.x), std::abs(v.y)); }
inline double linf_dist(const PopulationState& a, const PopulationState& b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

/// Mortality and conversion parameters of the continuous system.
struct MortalityParams {
    double m1 = 1.0; ///< prey total mortality rate, > 0
    double m2 = 1.0; ///< predator total mortality rate, > 0
    double c = 0.5;  ///< conversion efficiency of prey into predators, in (0,1)
};

/// Vital-rate function bundle: per-capita recruitment r (prey) and s
/// (predators) and the functional-response factor phi, all with closed-form
/// derivatives. Derivatives must be supplied in closed form because the
/// stability conditions are evaluated pointwise from them.
class VitalRates {
public:
    virtual ~VitalRates() = default;

    virtual double r(double x) const = 0;
    virtual double r_prime(double x) const = 0;
    virtual double s(double y) const = 0;
    virtual double s_prime(double y) const = 0;
    virtual double phi(double x) const = 0;
    virtual double phi_prime(double x) const = 0;

    /// Closed-form solution of r(x) = target when available; root-finders
    /// fall back to monotone bisection otherwise.
    virtual std::optional<double> r_inverse(double /*target*/) const { return std::nullopt; }
    virtual std::optional<double> s_inverse(double /*target*/) const { return std::nullopt; }
};

/// Rational vital rates r(x) = a_r/(x + b_r), s(y) = a_s/(y + b_s),
/// phi(x) = 1/(x + b_phi); all five parameters strictly positive.
class RationalVitalRates final : public VitalRates {
public:
    RationalVitalRates(double a_r, double b_r, double a_s, double b_s, double b_phi);

    double r(double x) const override { return a_r_ / (x + b_r_); }
    double r_prime(double x) const override { return -a_r_ / ((x + b_r_) * (x + b_r_)); }
    double s(double y) const override { return a_s_ / (y + b_s_); }
    double s_prime(double y) const override { return -a_s_ / ((y + b_s_) * (y + b_s_)); }
    double phi(double x) const override { return 1.0 / (x + b_phi_); }
    double phi_prime(double x) const override { return -1.0 / ((x + b_phi_) * (x + b_phi_)); }

    std::optional<double> r_inverse(double target) const override;
    std::optional<double> s_inverse(double target) const override;

    double a_r() const { return a_r_; }
    double b_r() const { return b_r_; }
    double a_s() const { return a_s_; }
    double b_s() const { return b_s_; }
    double b_phi() const { return b_phi_; }

private:
    double a_r_, b_r_, a_s_, b_s_, b_phi_;
};

/// One admissibility sub-condition evaluated over the probe grid, with the
/// worst (closest to violating) value and where it occurred.
struct ConditionCheck {
    std::string name;
    bool pass = false;
    double worst_value = 0.0;
    double worst_at = 0.0;
};

struct BiologicalReport {
    std::vector<ConditionCheck> checks;
    bool all_pass = true;
};

/// Checks the biological admissibility of a rate bundle on a probe grid:
/// positivity and monotonicity of r, s, phi, nondecreasing x*r(x), y*s(y),
/// x*phi(x) (via the product rule), and decay of r and s at a large probe.
BiologicalReport verify_biological_conditions(const VitalRates& rates,
                                              std::span<const double> probe_grid,
                                              double decay_probe,
                                              double eps_decay = 1e-3);

/// The continuous system
///   dx/dt = x [ r(x) - y phi(x) - m1 ]
///   dy/dt = y [ s(y) + c x phi(x) - m2 ]
/// Immutable after construction; admissibility is verified on a default grid
/// at construction time and recorded (deliberately bad rate bundles are
/// allowed through so they can be studied in tests).
class PreyPredatorModel {
public:
    PreyPredatorModel(std::shared_ptr<const VitalRates> rates, MortalityParams params);

    const VitalRates& rates() const { return *rates_; }
    const MortalityParams& params() const { return params_; }
    bool verified() const { return verification_.all_pass; }
    const BiologicalReport& verification() const { return verification_; }

    double r0() const { return rates_->r(0.0); }
    double s0() const { return rates_->s(0.0); }
    double phi0() const { return rates_->phi(0.0); }

private:
    std::shared_ptr<const VitalRates> rates_;
    MortalityParams params_;
    BiologicalReport verification_;
};

/// Right-hand side of the continuous system at a state in the positive
/// quadrant.
Vec2 eval_vector_field(const PreyPredatorModel& model, const PopulationState& state);

/// Same formula extended verbatim to arbitrary real pairs; used by the
/// standard integrators whose excursions outside the quadrant are the
/// phenomenon under study.
Vec2 vector_field_raw(const PreyPredatorModel& model, const Vec2& state);

} // namespace predprey
