#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "predprey/equilibria.hpp"
#include "predprey/model.hpp"

namespace predprey {

/// The twelve discretization weights of the one-step map. Adjacent pairs must
/// sum to 1: alpha1+alpha2 = alpha3+alpha4 = alpha5+alpha6 = 1, same for beta.
struct SchemeParams {
    std::array<double, 6> alpha{};
    std::array<double, 6> beta{};

    /// Project default: alpha = (2,-1,-1,2,-1,2), beta = (2,-1,4,-3,-1,2).
    /// Small integers satisfying the pairing constraint, the positivity signs,
    /// and alpha4 + beta4 < 0, so every certificate below passes and the
    /// condition values can be verified by hand.
    static SchemeParams defaults();

    bool pairing_ok(double tol = 1e-12) const;
};

/// Step-size denominator: either the plain step h or the Mickens exponential
/// (1 - exp(-q h))/q. Both are positive and equal h + O(h^2) for small h.
class Denominator {
public:
    enum class Form { Linear, MickensExponential };

    static Denominator linear() { return Denominator(Form::Linear, 0.0); }
    static Denominator mickens(double q = 1.0);

    double operator()(double h) const;
    Form form() const { return form_; }
    double q() const { return q_; }

private:
    Denominator(Form form, double q) : form_(form), q_(q) {}
    Form form_;
    double q_;
};

struct Trajectory {
    double t0 = 0.0;
    double h = 0.0;
    std::vector<PopulationState> states;
};

/// The explicit one-step map obtained from the nonlocal discretization:
///   x' = [x + w(a1 x r(x) - a3 x y phi(x) - a5 m1 x)]
///        / [1 - w a2 r(x) + w a4 y phi(x) + w a6 m1]
/// and analogously for y', with w the evaluated denominator. Immutable; step
/// and iterate are pure.
class DiscreteMap {
public:
    DiscreteMap(PreyPredatorModel model, SchemeParams scheme, Denominator denominator, double h);

    /// One step. Throws NonpositiveDenominatorError when a map denominator is
    /// <= 0 at the given state (possible only outside the positivity region).
    PopulationState step(const PopulationState& state) const;

    /// n steps from state0 (n+1 states). Step failures are rethrown with the
    /// failing index attached.
    Trajectory iterate(const PopulationState& state0, std::size_t n, double t0 = 0.0) const;

    const PreyPredatorModel& model() const { return model_; }
    const SchemeParams& scheme() const { return scheme_; }
    const Denominator& denominator() const { return denominator_; }
    double h() const { return h_; }
    double varphi() const { return varphi_; }

private:
    PreyPredatorModel model_;
    SchemeParams scheme_;
    Denominator denominator_;
    double h_;
    double varphi_;
};

/// Sign pattern that makes the positive quadrant invariant for any h:
/// alpha1,alpha4,alpha6,beta1,beta3,beta6 >= 0 and the rest <= 0.
struct PositivityCheck {
    bool pass = false;
    std::array<bool, 6> alpha_ok{};
    std::array<bool, 6> beta_ok{};
};

PositivityCheck check_positivity_conditions(const SchemeParams& scheme);

/// Global-stability weight condition alpha4 + beta4 < 0 (strict).
bool check_global_stability_condition(const SchemeParams& scheme);

/// Certificate values for local stability of the predator-extinction point:
///   T1 = 2 a6 m1 - 2 a2 r(K) + K r'(K)
///   T2 = s(0) - m2 + c K phi(K) - 2 b2 s(0) - 2 b4 c K phi(K) + 2 b6 m2
/// pass iff both > 0. Throws MissingEquilibriumError when K does not exist.
struct PredatorExtinctionConditions {
    double t1 = 0.0, t2 = 0.0;
    bool pass = false;
};
PredatorExtinctionConditions check_predator_extinction_conditions(const PreyPredatorModel& model,
                                                                  const SchemeParams& scheme);

/// Certificate values for local stability of the prey-extinction point:
///   T3 = r(0) - M phi(0) - m1 - 2 a2 r(0) + 2 a4 M phi(0) + 2 a6 m1
///   T4 = M s'(M) - 2 b2 s(M) + 2 b6 m2
struct PreyExtinctionConditions {
    double t3 = 0.0, t4 = 0.0;
    bool pass = false;
};
PreyExtinctionConditions check_prey_extinction_conditions(const PreyPredatorModel& model,
                                                          const SchemeParams& scheme);

/// Certificate values for local stability of the coexistence point (evaluated
/// at (x*, y*) with the model's derivatives).
struct CoexistenceConditions {
    double t5 = 0.0, t6 = 0.0, t7 = 0.0;
    bool pass = false;
};
CoexistenceConditions check_coexistence_conditions(const PreyPredatorModel& model,
                                                   const SchemeParams& scheme);

/// Which mortality regime the model falls into, the conditions that regime
/// requires, and the resulting sufficient-conditions verdict. Equilibrium
/// preservation holds for every admissible scheme and is reported as such.
struct ConditionReport {
    int regime_row = 0; ///< 1..5; 0 when (m1, m2) sits in no regime (boundary)
    std::string regime_label;
    bool ambiguous_regime = false; ///< within tol_hyperbolic of a regime boundary
    bool equilibria_preserved = true;
    PositivityCheck positivity;
    std::optional<bool> global_stability;
    std::optional<PredatorExtinctionConditions> predator_extinction;
    std::optional<PreyExtinctionConditions> prey_extinction;
    std::optional<CoexistenceConditions> coexistence;
    bool consistent = false;
};

ConditionReport consistency_report(const PreyPredatorModel& model, const SchemeParams& scheme,
                                   double tol_hyperbolic = 1e-9);

/// Flat "key = value" text block.
std::string format_report(const ConditionReport& report);

} // namespace predprey
