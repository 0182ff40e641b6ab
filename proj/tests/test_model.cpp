#include <doctest.h>

#include <random>

#include "predprey/model.hpp"
#include "test_support.hpp"

using namespace predprey;
using testsupport::case_model;
using testsupport::standard_rates;

namespace {

// Deliberately inadmissible: r grows with x.
class IncreasingRecruitment final : public VitalRates {
public:
    double r(double x) const override { return x + 1.0; }
    double r_prime(double) const override { return 1.0; }
    double s(double y) const override { return 5.0 / (y + 10.0); }
    double s_prime(double y) const override { return -5.0 / ((y + 10.0) * (y + 10.0)); }
    double phi(double x) const override { return 1.0 / (x + 30.0); }
    double phi_prime(double x) const override { return -1.0 / ((x + 30.0) * (x + 30.0)); }
};

} // namespace

TEST_CASE("vector field vanishes at the origin and on the axes") {
    const auto model = case_model(1);
    const Vec2 at_origin = eval_vector_field(model, {0.0, 0.0});
    CHECK(at_origin.x == 0.0);
    CHECK(at_origin.y == 0.0);
    for (double v : {0.1, 1.0, 17.5, 250.0}) {
        CHECK(eval_vector_field(model, {0.0, v}).x == 0.0);
        CHECK(eval_vector_field(model, {v, 0.0}).y == 0.0);
    }
}

TEST_CASE("vector field values by direct substitution") {
    SUBCASE("case i at (0, 10)") {
        const auto model = case_model(1);
        const Vec2 f = eval_vector_field(model, {0.0, 10.0});
        CHECK(f.x == 0.0);
        CHECK(f.y == doctest::Approx(-3.72).epsilon(1e-14));
    }
    SUBCASE("case v at (10, 5)") {
        const auto model = case_model(5);
        const Vec2 f = eval_vector_field(model, {10.0, 5.0});
        // hand evaluation: 10*(15/20 - 5/40 - 0.3) and 5*(5/15 + 0.003*10/40 - 0.501)
        CHECK(f.x == doctest::Approx(3.25).epsilon(1e-14));
        CHECK(f.y == doctest::Approx(-0.8345833333333333).epsilon(1e-14));
    }
}

TEST_CASE("closed-form derivatives match central finite differences") {
    const auto rates = standard_rates();
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    for (int i = 0; i < 100; ++i) {
        const double x = dist(rng);
        const double step = 1e-6 * std::max(1.0, x);
        auto fd = [&](auto&& f) { return (f(x + step) - f(x - step)) / (2.0 * step); };
        CHECK(testsupport::rel_close(rates->r_prime(x),
                                     fd([&](double v) { return rates->r(v); }), 1e-6));
        CHECK(testsupport::rel_close(rates->s_prime(x),
                                     fd([&](double v) { return rates->s(v); }), 1e-6));
        CHECK(testsupport::rel_close(rates->phi_prime(x),
                                     fd([&](double v) { return rates->phi(v); }), 1e-6));
    }
}

TEST_CASE("rate values at zero equal their parameter ratios exactly") {
    const auto rates = standard_rates();
    CHECK(rates->r(0.0) == rates->a_r() / rates->b_r());
    CHECK(rates->s(0.0) == rates->a_s() / rates->b_s());
    CHECK(rates->phi(0.0) == 1.0 / rates->b_phi());
}

TEST_CASE("biological verification of the rational rates") {
    const auto rates = standard_rates();
    const std::array<double, 4> grid = {0.0, 1.0, 10.0, 100.0};
    const auto report = verify_biological_conditions(*rates, grid, 1e6);
    CHECK(report.all_pass);
    for (const auto& check : report.checks) {
        INFO(check.name);
        CHECK(check.pass);
    }
}

TEST_CASE("increasing recruitment fails the decreasing-rate condition") {
    IncreasingRecruitment bad;
    const std::array<double, 3> grid = {0.0, 1.0, 10.0};
    const auto report = verify_biological_conditions(bad, grid, 1e6);
    CHECK_FALSE(report.all_pass);
    bool found = false;
    for (const auto& check : report.checks) {
        if (check.name == "r_decreasing") {
            found = true;
            CHECK_FALSE(check.pass);
            CHECK(check.worst_value == 1.0);
        }
    }
    CHECK(found);
}

TEST_CASE("x*phi(x) slope at zero is phi(0)") {
    const auto rates = standard_rates();
    const std::array<double, 1> grid = {0.0};
    const auto report = verify_biological_conditions(*rates, grid, 1e6);
    for (const auto& check : report.checks) {
        if (check.name == "x_phi_nondecreasing") {
            CHECK(check.pass);
            CHECK(check.worst_value == doctest::Approx(1.0 / 30.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("empty probe grid is rejected") {
    const auto rates = standard_rates();
    CHECK_THROWS_AS(verify_biological_conditions(*rates, {}, 1e6), EmptyGridError);
}

TEST_CASE("model construction records verification instead of rejecting") {
    const auto good = case_model(1);
    CHECK(good.verified());

    const PreyPredatorModel bad(std::make_shared<IncreasingRecruitment>(),
                                MortalityParams{1.0, 1.0, 0.5});
    CHECK_FALSE(bad.verified());
    CHECK_FALSE(bad.verification().all_pass);
}
