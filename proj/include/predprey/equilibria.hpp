#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "predprey/model.hpp"

namespace predprey {

enum class EquilibriumKind {
    Extinction,         // P0 = (0, 0)
    PredatorExtinction, // P1 = (K, 0), r(K) = m1
    PreyExtinction,     // P2 = (0, M), s(M) = m2
    Coexistence,        // P3 = (x*, y*)
};

enum class ContinuousVerdict { GloballyStable, LocallyStable, Unstable, NonHyperbolic };

const char* to_string(EquilibriumKind kind);
const char* to_string(ContinuousVerdict verdict);

struct Equilibrium {
    EquilibriumKind kind;
    PopulationState location;
    ContinuousVerdict continuous_verdict;
};

/// Prey carrying level K with r(K) = m1. Exists iff m1 < r(0). Uses the
/// rates' closed-form inverse when available, monotone bisection otherwise.
std::optional<double> find_K(const PreyPredatorModel& model);

/// Predator self-sustained level M with s(M) = m2. Exists iff m2 < s(0).
std::optional<double> find_M(const PreyPredatorModel& model);

/// Generic bisection paths, exposed so they can be cross-checked against the
/// closed forms. Throw BracketNotFoundError when no bracket fits below x_max.
std::optional<double> find_K_bisection(const PreyPredatorModel& model, double x_max = 1e6);
std::optional<double> find_M_bisection(const PreyPredatorModel& model, double y_max = 1e6);

struct InteriorSearch {
    std::optional<PopulationState> point; ///< leftmost root when one exists
    int bracket_count = 0;                ///< sign-change brackets seen in the scan
};

/// Locates the coexistence equilibrium: x* is a root of
///   psi(x) = c x phi(x) + s((r(x) - m1)/phi(x)) - m2
/// on (0, K), found by a fixed 1024-subinterval sign scan followed by
/// bisection; y* = (r(x*) - m1)/phi(x*). Returns no point when the existence
/// condition fails. Throws NoSignChangeError if the condition holds but the
/// scan finds no bracket (a resolution problem, not absence).
InteriorSearch find_interior_detailed(const PreyPredatorModel& model, int subdivisions = 1024);
std::optional<PopulationState> find_interior(const PreyPredatorModel& model);

/// Applies the continuous stability classification case by case. The
/// extinction point is flagged NonHyperbolic when m1 or m2 sits within
/// tol_hyperbolic of r(0) or s(0).
ContinuousVerdict classify_continuous(const PreyPredatorModel& model, const Equilibrium& eq,
                                      double tol_hyperbolic = 1e-9);

/// All equilibria that exist for this model, each classified.
std::vector<Equilibrium> enumerate_equilibria(const PreyPredatorModel& model,
                                              double tol_hyperbolic = 1e-9);

/// CSV serialization with header "kind,x,y,verdict".
std::string equilibria_to_csv(std::span<const Equilibrium> equilibria);

} // namespace predprey
