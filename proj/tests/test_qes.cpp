#include <doctest.h>

#include <cmath>
#include <vector>

#include "sxo/errors.hpp"
#include "sxo/qes.hpp"
#include "sxo/quadrature.hpp"

using namespace sxo::qes;
using sxo::CapabilityError;
using sxo::DomainError;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_SUITE("qes") {

TEST_CASE("rescaled potential hand values") {
    // V(y; c) = y^6 + 2 c y^4 + (c^2 - 3) y^2 - c
    CHECK(potential(0.0, 2.0) == doctest::Approx(-2.0));
    CHECK(potential(1.0, 0.0) == doctest::Approx(1.0 - 3.0));
    CHECK(potential(1.0, 2.0) == doctest::Approx(1.0 + 4.0 + 1.0 - 2.0));
    CHECK(potential(2.0, -1.0) == doctest::Approx(64.0 - 32.0 - 8.0 + 1.0));
}

TEST_CASE("unscaled potential matches the rescaled one after substitution") {
    // sqrt(a) V(y; b/sqrt(a)) = V_unscaled(y / a^{1/4}; a, b)
    for (double a : {0.5, 1.0, 4.0, 9.0}) {
        for (double b : {-3.0, -1.0, 0.0, 2.0}) {
            SexticParams p{a, b};
            double c = shape_parameter(p);
            CHECK(c == doctest::Approx(b / std::sqrt(a)).epsilon(1e-14));
            for (double y : {0.0, 0.3, 1.1, 2.4}) {
                double lhs = std::sqrt(a) * potential(y, c);
                double rhs = potential_unscaled(y / std::pow(a, 0.25), p);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
    CHECK_THROWS_AS(shape_parameter(SexticParams{-1.0, 0.0}), DomainError);
}

TEST_CASE("well classification boundaries") {
    const double r3 = std::sqrt(3.0);
    CHECK(classify_well(5.0) == WellShape::Single);
    CHECK(classify_well(r3) == WellShape::Single);
    CHECK(classify_well(r3 - 1e-9) == WellShape::Double);
    CHECK(classify_well(0.0) == WellShape::Double);
    CHECK(classify_well(-r3) == WellShape::Double);
    CHECK(classify_well(-r3 - 1e-9) == WellShape::Triple);
    CHECK(classify_well(-10.0) == WellShape::Triple);

    CHECK(count_extrema(2.0) == 1);
    CHECK(count_extrema(r3) == 1);
    CHECK(count_extrema(0.0) == 3);
    CHECK(count_extrema(-r3) == 3);
    CHECK(count_extrema(-2.0) == 5);

    CHECK(std::string(well_name(WellShape::Single)) == "single");
    CHECK(std::string(well_name(WellShape::Double)) == "double");
    CHECK(std::string(well_name(WellShape::Triple)) == "triple");
}

TEST_CASE("normalization constant against closed forms") {
    // A(0)^2 = 2^{3/4} / Gamma(1/4)
    CHECK(rel_err(norm_a(0.0) * norm_a(0.0), 0.463864804289500422001359521634) < 1e-12);
    // A^4 spot values across both branches
    CHECK(rel_err(std::pow(norm_a(-5.0), 4), 1.0693394752379147e-11) < 1e-11);
    CHECK(rel_err(std::pow(norm_a(-1.0), 4), 0.057625405791023580) < 1e-12);
    CHECK(rel_err(std::pow(norm_a(1.0), 4), 0.45266896749153939) < 1e-12);
    CHECK(rel_err(std::pow(norm_a(5.0), 4), 1.6366136486365824) < 1e-12);
    CHECK(rel_err(std::pow(norm_a(-2.0), 4), 0.0046003466482132081) < 1e-12);
    // log form agrees where norm_a is representable
    for (double c : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
        CHECK(std::abs(log_norm_a(c) - std::log(norm_a(c))) < 1e-12);
    }
}

TEST_CASE("normalization constant is continuous across the branch seams") {
    for (double c0 : {0.0}) {
        double lo = norm_a(c0 - 1e-6);
        double mid = norm_a(c0);
        double hi = norm_a(c0 + 1e-6);
        CHECK(rel_err(lo, mid) < 1.5e-6);
        CHECK(rel_err(hi, mid) < 1.5e-6);
    }
}

TEST_CASE("ground-state density is normalized") {
    for (double c : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
        CAPTURE(c);
        auto env = [c](double y) { return ground_density(y, c); };
        auto r = sxo::quad::integrate_whole_line(env, env);
        CHECK(std::abs(r.value - 1.0) < 1e-9);
    }
}

TEST_CASE("ground-state density shape in the triple-well regime") {
    // at c = -10 the density has maxima near +-sqrt(10) and a local minimum at 0
    double at0 = ground_density(0.0, -10.0);
    double peak = ground_density(std::sqrt(10.0), -10.0);
    CHECK(peak > at0 * 1e6);
    CHECK(ground_density(std::sqrt(10.0) - 0.05, -10.0) < peak);
    CHECK(ground_density(std::sqrt(10.0) + 0.05, -10.0) < peak);
    // psi0 itself is positive everywhere
    CHECK(ground_psi(0.0, -10.0) > 0.0);
}

TEST_CASE("closed-form raw moments against frozen references") {
    struct Spot {
        int order;
        double c;
        double want;
    };
    std::vector<Spot> spots = {
        {2, -1.0, 0.89346496957423663},  {2, 1.0, 0.28960238631924006},
        {2, -5.0, 4.8926507731034053},   {2, 10.0, 0.049278282761497855},
        {2, -10.0, 9.9492179728417173},  {4, -5.0, 24.963253865517026},
        {4, -1.0, 1.3934649695742366},   {8, 10.0, 0.00058592804223028170},
        {16, -10.0, 125424136.57921835}, {6, 3.0, 0.039020672161128558},
    };
    for (const auto& s : spots) {
        CAPTURE(s.order);
        CAPTURE(s.c);
        CHECK(rel_err(raw_moment(s.order, s.c), s.want) < 5e-11);
    }
    // mu_4(0) = 1/2 exactly (Gamma duplication collapses the ratio)
    CHECK(rel_err(raw_moment(4, 0.0), 0.5) < 1e-13);
    CHECK(raw_moment(0, 3.7) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("closed-form moments agree with quadrature") {
    for (double c : {-10.0, -2.0, -1.0, 0.0, 1.0, 2.0, 10.0}) {
        for (int order : {2, 4, 8, 16}) {
            CAPTURE(c);
            CAPTURE(order);
            double closed = raw_moment(order, c);
            double quad = raw_moment_quad(order, c);
            CHECK(rel_err(quad, closed) < 1e-9);
        }
    }
}

TEST_CASE("variance spot values") {
    CHECK(rel_err(variance(0.0), 0.477988797486124995363820001995) < 1e-12);
    CHECK(rel_err(variance(1.0), 0.2896023863192401) < 1e-12);
    CHECK(rel_err(variance(-2.0), 1.7042723043566685) < 1e-12);
    CHECK(rel_err(variance(-3.0), 2.7846998571864999) < 1e-12);
}

TEST_CASE("excess moments against frozen references") {
    CHECK(rel_err(excess_moment(4, 0.0), -0.81156038477352336) < 1e-11);
    CHECK(rel_err(excess_moment(6, 0.0), -8.4346811543205701) < 1e-11);
    CHECK(rel_err(excess_moment(4, -1.0), -1.2544150206836390) < 1e-11);
    CHECK(rel_err(excess_moment(4, -5.0), -1.9571718219930449) < 1e-11);
    CHECK(rel_err(excess_moment(4, -2.0), -1.6543345560935004) < 1e-11);
    CHECK(rel_err(excess_moment(6, -2.0), -12.904400652629175) < 1e-11);
    CHECK(rel_err(excess_moment(4, -50.0), -1.9995997596793035) < 1e-10);
    CHECK(rel_err(excess_moment(4, 1.0), -0.49137042771894726) < 1e-11);
    CHECK(rel_err(excess_moment(4, 2.0), -0.30163186759159667) < 1e-10);
    // deep single well: heavy cancellation, looser tolerance
    CHECK(rel_err(excess_moment(4, 50.0), -0.0011964143308343594) < 1e-8);
    CHECK(rel_err(excess_moment(6, 50.0), -0.01793192649) < 1e-8);
    CHECK(rel_err(excess_moment(8, 50.0), -0.2507973101) < 1e-8);
}

TEST_CASE("moment ratios against frozen references") {
    struct Spot {
        int m;
        double c;
        double want;
    };
    std::vector<Spot> spots = {
        {6, -10.0, 13.00132928}, {7, -10.0, 15.00012622}, {6, -2.0, 13.01420085},
        {7, -2.0, 15.00271483},  {6, 2.0, 14.7870444},    {7, 2.0, 16.28348027},
        {6, 10.0, 17.59402811},  {7, 10.0, 19.26674412},
    };
    for (const auto& s : spots) {
        CAPTURE(s.m);
        CAPTURE(s.c);
        CHECK(rel_err(moment_ratio(s.m, s.c), s.want) < 1e-6);
    }
}

TEST_CASE("moment order and parity guards") {
    CHECK_THROWS_AS(raw_moment(3, 0.0), DomainError);
    CHECK_THROWS_AS(raw_moment(-2, 0.0), DomainError);
    CHECK_THROWS_AS(raw_moment(max_moment_order + 2, 0.0), CapabilityError);
    CHECK_THROWS_AS(excess_moment(3, 0.0), DomainError);
    CHECK_THROWS_AS(moment_ratio(1, 0.0), DomainError);
}

TEST_CASE("moment unscaling") {
    // <y_unscaled^{2m}> = <y^{2m}> / a^{m/2}, order = 2m
    CHECK(unscale_moment(3.2, 4, 16.0) == doctest::Approx(3.2 / 16.0).epsilon(1e-14));
    CHECK(unscale_moment(3.2, 2, 16.0) == doctest::Approx(3.2 / 4.0).epsilon(1e-14));
    CHECK(unscale_moment(1.0, 0, 7.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(unscale_moment(1.0, 2, -1.0), DomainError);
}

TEST_CASE("moment report bundles the pieces consistently") {
    std::vector<int> orders = {4, 6, 8};
    auto rep = moment_report(-2.0, orders);
    CHECK(rep.c == -2.0);
    REQUIRE(rep.raw.size() == 3);
    REQUIRE(rep.excess.size() == 3);
    REQUIRE(rep.ratios.size() == 2);
    CHECK(rel_err(rep.variance, variance(-2.0)) < 1e-14);
    for (std::size_t i = 0; i < orders.size(); ++i) {
        CHECK(rep.raw[i] == doctest::Approx(raw_moment(orders[i], -2.0)).epsilon(1e-14));
        CHECK(rep.excess[i] == doctest::Approx(excess_moment(orders[i], -2.0)).epsilon(1e-14));
    }
    CHECK(rep.ratios[0] == doctest::Approx(rep.excess[1] / rep.excess[0]).epsilon(1e-13));
}

}  // TEST_SUITE
