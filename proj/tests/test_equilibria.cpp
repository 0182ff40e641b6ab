#include <doctest.h>

#include <random>
#include <set>

#include "predprey/equilibria.hpp"
#include "test_support.hpp"

using namespace predprey;
using testsupport::case_model;
using testsupport::model_with;
using testsupport::rel_close;

TEST_CASE("prey level K from the closed form") {
    CHECK(*find_K(case_model(4)) ==
          doctest::Approx(0.869565217391304347826087).epsilon(1e-14));
    CHECK_FALSE(find_K(case_model(1)).has_value());       // m1 = 1.53 > r(0)
    CHECK_FALSE(find_K(model_with(1.5, 0.7)).has_value()); // boundary m1 = r(0), strict
}

TEST_CASE("predator level M from the closed form") {
    CHECK(*find_M(case_model(2)) ==
          doctest::Approx(0.4405930256838588431822928).epsilon(1e-14));
    CHECK_FALSE(find_M(case_model(1)).has_value());        // m2 = 0.622 > s(0)
    CHECK_FALSE(find_M(model_with(1.0, 0.5)).has_value()); // boundary m2 = s(0), strict
}

TEST_CASE("bisection agrees with the closed forms") {
    for (int index : {3, 4, 5, 6}) {
        const auto model = case_model(index);
        const auto closed = find_K(model);
        const auto generic = find_K_bisection(model);
        REQUIRE(closed.has_value());
        REQUIRE(generic.has_value());
        CHECK(std::abs(*closed - *generic) <= 1e-10);
    }
    for (int index : {2, 3, 4}) {
        const auto model = case_model(index);
        CHECK(std::abs(*find_M(model) - *find_M_bisection(model)) <= 1e-10);
    }
}

TEST_CASE("bisection reports when the bracket does not fit") {
    // r decays like 15/x, so r(x_max) >= m1 for a tiny enough m1.
    const auto model = model_with(1e-9, 0.7);
    CHECK_THROWS_AS(find_K_bisection(model, 1e6), BracketNotFoundError);
}

TEST_CASE("coexistence point, narrow-window case") {
    const auto model = case_model(5);

    // endpoint signs of the root function, frozen from direct evaluation
    CHECK(rel_close(testsupport::interior_psi(0.0, 0.3, 0.501), -0.3923043478260870, 1e-12));
    CHECK(rel_close(testsupport::interior_psi(40.0, 0.3, 0.501), 7.142857142857143e-4, 1e-12));

    const auto star = find_interior(model);
    REQUIRE(star.has_value());
    CHECK(star->x == doctest::Approx(39.96597421427195).epsilon(1e-10));
    CHECK(star->y == doctest::Approx(0.01429361050778229).epsilon(1e-8));

    // independent bisection oracle
    CHECK(std::abs(star->x - testsupport::interior_root_oracle(0.3, 0.501)) <= 1e-9);

    // defining identity y* phi(x*) = r(x*) - m1
    const auto& vr = model.rates();
    CHECK(std::abs(star->y * vr.phi(star->x) - (vr.r(star->x) - 0.3)) <= 1e-10);
}

TEST_CASE("coexistence point, low-prey-mortality case") {
    const auto model = case_model(4);
    const auto star = find_interior(model);
    REQUIRE(star.has_value());
    CHECK(star->x == doctest::Approx(0.7574915187618079).epsilon(1e-10));
    CHECK(star->y == doctest::Approx(0.4422040253626229).epsilon(1e-10));
    CHECK(std::abs(star->x - testsupport::interior_root_oracle(1.38, 0.4789)) <= 1e-9);

    const auto detail = find_interior_detailed(model);
    CHECK(detail.bracket_count == 1);
}

TEST_CASE("coexistence point absent when prey mortality dominates") {
    CHECK_FALSE(find_interior(case_model(1)).has_value());
    CHECK_FALSE(find_interior(case_model(2)).has_value()); // m1 above the margin
    CHECK_FALSE(find_interior(case_model(3)).has_value());
}

TEST_CASE("equilibrium sets per case") {
    auto kinds = [](const PreyPredatorModel& model) {
        std::set<EquilibriumKind> set;
        for (const auto& eq : enumerate_equilibria(model)) set.insert(eq.kind);
        return set;
    };
    using K = EquilibriumKind;
    CHECK(kinds(case_model(1)) == std::set<K>{K::Extinction});
    CHECK(kinds(case_model(2)) == std::set<K>{K::Extinction, K::PreyExtinction});
    CHECK(kinds(case_model(3)) ==
          std::set<K>{K::Extinction, K::PredatorExtinction, K::PreyExtinction});
    CHECK(kinds(case_model(4)) == std::set<K>{K::Extinction, K::PredatorExtinction,
                                              K::PreyExtinction, K::Coexistence});
    CHECK(kinds(case_model(5)) ==
          std::set<K>{K::Extinction, K::PredatorExtinction, K::Coexistence});
    CHECK(kinds(case_model(6)) == std::set<K>{K::Extinction, K::PredatorExtinction});
}

TEST_CASE("continuous classification") {
    auto verdict_of = [](const PreyPredatorModel& model, EquilibriumKind kind) {
        for (const auto& eq : enumerate_equilibria(model)) {
            if (eq.kind == kind) return eq.continuous_verdict;
        }
        FAIL("equilibrium not found");
        return ContinuousVerdict::Unstable;
    };
    using K = EquilibriumKind;
    using V = ContinuousVerdict;

    CHECK(verdict_of(case_model(1), K::Extinction) == V::GloballyStable);
    CHECK(verdict_of(case_model(6), K::PredatorExtinction) == V::LocallyStable);
    CHECK(verdict_of(case_model(6), K::Extinction) == V::Unstable);
    CHECK(verdict_of(case_model(2), K::PreyExtinction) == V::LocallyStable);
    CHECK(verdict_of(case_model(3), K::PreyExtinction) == V::LocallyStable);
    CHECK(verdict_of(case_model(3), K::PredatorExtinction) == V::Unstable);
    CHECK(verdict_of(case_model(4), K::Coexistence) == V::LocallyStable);
    CHECK(verdict_of(case_model(5), K::Coexistence) == V::LocallyStable);

    // exactly on the prey boundary: non-hyperbolic, still the global attractor
    CHECK(verdict_of(model_with(1.5, 0.7), K::Extinction) == V::NonHyperbolic);
}

TEST_CASE("every equilibrium zeroes the vector field") {
    for (int index = 1; index <= 6; ++index) {
        const auto model = case_model(index);
        for (const auto& eq : enumerate_equilibria(model)) {
            const Vec2 f = eval_vector_field(model, eq.location);
            INFO("case ", index, " kind ", to_string(eq.kind));
            CHECK(linf(f) <= 1e-10);
        }
    }
}

TEST_CASE("existence flags match the defining inequalities on random mortalities") {
    std::mt19937 rng(987654321);
    std::uniform_real_distribution<double> dist_m1(1e-6, 2.0);
    std::uniform_real_distribution<double> dist_m2(1e-6, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double m1 = dist_m1(rng);
        const double m2 = dist_m2(rng);
        const auto model = model_with(m1, m2);
        const auto equilibria = enumerate_equilibria(model);
        auto has = [&](EquilibriumKind kind) {
            for (const auto& eq : equilibria) {
                if (eq.kind == kind) return true;
            }
            return false;
        };

        const double r0 = 1.5, s0 = 0.5, phi0 = 1.0 / 30.0, c = 0.003;
        CHECK(has(EquilibriumKind::Extinction));
        CHECK(has(EquilibriumKind::PredatorExtinction) == (m1 < r0));
        CHECK(has(EquilibriumKind::PreyExtinction) == (m2 < s0));

        bool interior = false;
        if (m2 < s0) {
            const double M = 5.0 / m2 - 10.0;
            interior = m1 < r0 - M * phi0;
        }
        if (!interior && m1 < r0) {
            const double K = 15.0 / m1 - 10.0;
            const double window = s0 + c * K * (1.0 / (K + 30.0));
            interior = s0 < m2 && m2 < window;
        }
        INFO("m1 = ", m1, ", m2 = ", m2);
        CHECK(has(EquilibriumKind::Coexistence) == interior);
    }
}

TEST_CASE("equilibria serialize to CSV") {
    const auto equilibria = enumerate_equilibria(case_model(6));
    const std::string csv = equilibria_to_csv(equilibria);
    CHECK(csv.starts_with("kind,x,y,verdict\n"));
    CHECK(csv.find("extinction,0,0,unstable") != std::string::npos);
    CHECK(csv.find("predator_extinction,0.86956521739130") != std::string::npos);
    CHECK(csv.find(",0,locally_stable") != std::string::npos);
}
