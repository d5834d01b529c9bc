#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sxo/errors.hpp"
#include "sxo/fock.hpp"
#include "sxo/qes.hpp"
#include "sxo/sampler.hpp"

using namespace sxo::sampler;
using sxo::CapabilityError;
using sxo::DomainError;
using sxo::IntegrityError;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

std::uint64_t parse_hex(const std::string& s) {
    return std::strtoull(s.c_str(), nullptr, 16);
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("generator reproduces the frozen vectors bit for bit") {
    std::ifstream in(std::string(SXO_TEST_DATA_DIR) + "/rng_vectors.json");
    REQUIRE(in.good());
    nlohmann::json doc = nlohmann::json::parse(in);
    REQUIRE(doc.at("generator") == "splitmix64-counter");

    for (const auto& vec : doc.at("vectors")) {
        const std::uint64_t seed = parse_hex(vec.at("seed").get<std::string>());
        const std::uint64_t stream = vec.at("stream").get<std::uint64_t>();
        CAPTURE(seed);
        CAPTURE(stream);

        SplitMix64 rng(seed, stream);
        CHECK(rng.stream_seed == parse_hex(vec.at("stream_seed").get<std::string>()));

        const auto& u64s = vec.at("u64");
        for (std::size_t i = 0; i < u64s.size(); ++i) {
            CHECK(rng.u64_at(i) == parse_hex(u64s[i].get<std::string>()));
        }
        const auto& dbls = vec.at("doubles");
        for (std::size_t i = 0; i < dbls.size(); ++i) {
            const double want = std::strtod(dbls[i].get<std::string>().c_str(), nullptr);
            CHECK(rng.u01_at(i) == want);  // exact: both sides are pure integer maps
        }
    }
}

TEST_CASE("generator is a pure function of (seed, stream, index)") {
    SplitMix64 a(7, 0);
    SplitMix64 b(7, 0);
    CHECK(a.u64_at(5) == b.u64_at(5));
    // evaluation order must not matter
    (void)b.u64_at(1000);
    CHECK(a.u64_at(5) == b.u64_at(5));

    SplitMix64 other_stream(7, 1);
    SplitMix64 other_seed(8, 0);
    CHECK(a.u64_at(0) != other_stream.u64_at(0));
    CHECK(a.u64_at(0) != other_seed.u64_at(0));

    for (int i = 0; i < 50; ++i) {
        const double u = a.u01_at(static_cast<std::uint64_t>(i));
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("cdf table from a triangular density") {
    CdfTable t = build_cdf({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    REQUIRE(t.x.size() == 3);
    CHECK(t.f[0] == 0.0);
    CHECK(t.f[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t.f[2] == 1.0);
    CHECK(std::abs(invert_cdf(t, 0.5) - 1.0) < 1e-6);
}

TEST_CASE("cdf construction guards and cleanup") {
    CHECK_THROWS_AS(build_cdf({0.0, 1.0}, {1.0, -1e-3}), IntegrityError);
    // small negative noise is clamped, not fatal
    CHECK_NOTHROW(build_cdf({0.0, 1.0, 2.0}, {1.0, -1e-10, 1.0}));
    // flat tail collapses to a single node so the table stays invertible
    CdfTable t = build_cdf({0.0, 1.0, 2.0, 3.0}, {1.0, 1.0, 0.0, 0.0});
    CHECK(t.x.size() == 3);
    CHECK(t.f.front() == 0.0);
    CHECK(t.f.back() == 1.0);
    CHECK_THROWS_AS(build_cdf({0.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(build_cdf({0.0, 1.0}, {0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(build_cdf({1.0, 0.0}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(build_cdf({0.0, 1.0}, {0.0, 0.0}), IntegrityError);
}

TEST_CASE("cdf interpolation round trip on a smooth density") {
    const int n = 401;
    std::vector<double> x(n), d(n);
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = -5.0 + 10.0 * i / (n - 1);
        d[static_cast<std::size_t>(i)] =
            std::exp(-0.5 * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]);
    }
    CdfTable t = build_cdf(x, d);

    for (double u : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
        const double xi = invert_cdf(t, u);
        CHECK(std::abs(cdf_value(t, xi) - u) < 1e-9);
    }
    CHECK(invert_cdf(t, 0.3) < invert_cdf(t, 0.7));
    CHECK(std::abs(invert_cdf(t, 0.0) - (-5.0)) < 1e-6);
    CHECK(std::abs(invert_cdf(t, 1.0) - 5.0) < 1e-6);
    // standard normal quantile
    CHECK(std::abs(invert_cdf(t, 0.841344746) - 1.0) < 1e-3);
}

TEST_CASE("ks distance of ideal and displaced samples") {
    const int n = 401;
    std::vector<double> x(n), d(n);
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = -5.0 + 10.0 * i / (n - 1);
        d[static_cast<std::size_t>(i)] =
            std::exp(-0.5 * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]);
    }
    CdfTable t = build_cdf(x, d);

    std::vector<double> ideal(100);
    for (int i = 0; i < 100; ++i)
        ideal[static_cast<std::size_t>(i)] = invert_cdf(t, (i + 0.5) / 100.0);
    CHECK(ks_distance(ideal, t) < 0.0051);

    std::vector<double> lumped(100, invert_cdf(t, 0.9));
    CHECK(ks_distance(lumped, t) > 0.5);
}

TEST_CASE("alias table partitions the unit interval exactly") {
    AliasTable t = build_alias({0.5, 0.3, 0.2});
    int counts[3] = {0, 0, 0};
    for (int k = 0; k < 1000; ++k) {
        counts[alias_draw(t, k / 1000.0)]++;
    }
    CHECK(counts[0] == 500);
    CHECK(counts[1] == 300);
    CHECK(counts[2] == 200);
}

TEST_CASE("alias table guards and clamping") {
    CHECK_THROWS_AS(build_alias({0.0, 0.0}), IntegrityError);
    CHECK_THROWS_AS(build_alias({0.5, -1e-3}), IntegrityError);
    // probabilities below the clamp are never drawn
    AliasTable t = build_alias({1.0, 1e-13});
    for (int k = 0; k < 1000; ++k) {
        CHECK(alias_draw(t, k / 1000.0) == 0);
    }
}

TEST_CASE("quadrature sampling of the symmetric ground state") {
    DisorderSpec spec;
    spec.source = Source::Pure;
    spec.observable = Observable::Quadrature;
    spec.c = 0.0;
    spec.count = 20000;
    spec.seed = 42;

    SampleSet s = sample(spec);
    REQUIRE(s.quadrature.size() == 20000);
    CHECK(s.number.empty());
    CHECK(s.cdf.x.size() > 100);

    // seeded: a second run is identical
    SampleSet again = sample(spec);
    CHECK(again.quadrature == s.quadrature);

    CHECK(s.ks < 1.63 / std::sqrt(20000.0));  // 1% critical value
    const double var = 0.477988797486124995363820001995;
    CHECK(std::abs(s.moments.mean) < 5.0 * std::sqrt(var / 20000.0));
    CHECK(std::abs(s.moments.m2 - var) < 5.0 * s.moments.se_m2);
    CHECK(std::abs(s.moments.m4 - 0.5) < 5.0 * s.moments.se_m4);
    CHECK(s.moments.se_m2 > 0.0);
}

TEST_CASE("number sampling of an even pure state draws only even levels") {
    DisorderSpec spec;
    spec.source = Source::Pure;
    spec.observable = Observable::Number;
    spec.c = 1.0;
    spec.count = 5000;
    spec.seed = 7;

    SampleSet s = sample(spec);
    REQUIRE(s.number.size() == 5000);
    CHECK(s.quadrature.empty());
    REQUIRE(s.populations.size() == static_cast<std::size_t>(sxo::fock::default_n_max) + 1);

    long ground = 0;
    for (int n : s.number) {
        CHECK(n % 2 == 0);
        if (n == 0) ++ground;
    }
    const double p0 = s.populations[0];
    const double sigma = std::sqrt(p0 * (1.0 - p0) / 5000.0);
    CHECK(std::abs(ground / 5000.0 - p0) < 5.0 * sigma);
    CHECK(rel_err(p0, 0.995274) < 1e-5);
}

TEST_CASE("number sampling of the harmonic pair follows the geometric ladder") {
    DisorderSpec spec;
    spec.source = Source::Harmonic;
    spec.observable = Observable::Number;
    spec.harmonic = {1.0, 2.0, std::numbers::pi / 4.0};
    spec.count = 20000;
    spec.seed = 11;

    SampleSet s = sample(spec);
    const double xi = sxo::fock::thermal_xi(17.0 / 12.0, 1.0 / 12.0);
    for (int k = 0; k <= 10; ++k) {
        CHECK(rel_err(s.populations[static_cast<std::size_t>(k)],
                      (1.0 - xi) * std::pow(xi, k)) < 1e-12);
    }
    long ground = 0;
    for (int n : s.number)
        if (n == 0) ++ground;
    const double sigma = std::sqrt(xi * (1.0 - xi) / 20000.0);
    CHECK(std::abs(ground / 20000.0 - (1.0 - xi)) < 5.0 * sigma);
}

TEST_CASE("quadrature sampling of a traced-out pair") {
    DisorderSpec spec;
    spec.source = Source::MixedGeneral;
    spec.observable = Observable::Quadrature;
    spec.pair = {-1.0, -5.0, 0.6};
    spec.count = 500;
    spec.seed = 3;

    SampleSet s = sample(spec);
    CHECK(s.ks < 1.63 / std::sqrt(500.0));
    const double var = sxo::coupled::marginal_moment(2, spec.pair);
    CHECK(std::abs(s.moments.m2 - var) < 5.0 * s.moments.se_m2);
}

TEST_CASE("sampling guards") {
    DisorderSpec spec;
    spec.count = 0;
    CHECK_THROWS_AS(sample(spec), DomainError);
    spec.count = 200000000L;
    CHECK_THROWS_AS(sample(spec), CapabilityError);
}

TEST_CASE("source and observable names") {
    CHECK(std::string(source_name(Source::Pure)) == "pure");
    CHECK(std::string(source_name(Source::MixedIdenticalPi4)) == "mixed_identical_pi4");
    CHECK(std::string(source_name(Source::MixedGeneral)) == "mixed_general");
    CHECK(std::string(source_name(Source::Harmonic)) == "harmonic");
    CHECK(std::string(observable_name(Observable::Quadrature)) == "quadrature");
    CHECK(std::string(observable_name(Observable::Number)) == "number");
}

}  // TEST_SUITE
