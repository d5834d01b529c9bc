#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sxo/coupled.hpp"

namespace sxo::sampler {

// Counter-based generator built on the splitmix64 finalizer: every output
// is a pure function of (seed, stream, index), so any sample can be
// regenerated in isolation.
struct SplitMix64 {
    std::uint64_t stream_seed = 0;

    SplitMix64(std::uint64_t seed, std::uint64_t stream);

    static std::uint64_t mix(std::uint64_t z);
    std::uint64_t u64_at(std::uint64_t index) const;
    // Uniform double in [0, 1) from the top 53 bits.
    double u01_at(std::uint64_t index) const;
};

// Piecewise-linear CDF table from (nodes, density) via the trapezoid rule.
// Density values below -1e-9 raise IntegrityError; small negative noise is
// clamped to zero.  The table is strictly increasing with endpoints
// exactly 0 and 1.
struct CdfTable {
    std::vector<double> x;
    std::vector<double> f;
};

CdfTable build_cdf(const std::vector<double>& nodes,
                   const std::vector<double>& density);

// Inverse CDF through monotone cubic (Fritsch-Carlson) interpolation of
// the table, inverted by bisection to 1e-13 in probability.
double invert_cdf(const CdfTable& table, double u);
// Forward interpolant, the same one invert_cdf inverts.
double cdf_value(const CdfTable& table, double x);

// Kolmogorov-Smirnov distance of samples against the table's interpolated
// CDF.
double ks_distance(std::vector<double> samples, const CdfTable& table);

// Walker alias table over a discrete distribution; probabilities below
// 1e-12 are clamped to zero and the rest renormalized, so states outside
// the support are never drawn.
struct AliasTable {
    std::vector<double> prob;
    std::vector<int> alias;
};

AliasTable build_alias(const std::vector<double>& p);
int alias_draw(const AliasTable& t, double u);

// ---------------------------------------------------------------------------
// Disorder sampling of single-oscillator observables.
// ---------------------------------------------------------------------------

enum class Source { Pure, MixedIdenticalPi4, MixedGeneral, Harmonic };
enum class Observable { Quadrature, Number };

struct DisorderSpec {
    Source source = Source::Pure;
    Observable observable = Observable::Quadrature;
    double c = 0.0;                  // Pure, MixedIdenticalPi4
    coupled::AnharmonicPair pair;    // MixedGeneral
    coupled::HarmonicPair harmonic;  // Harmonic
    double omega = 0.0;              // number basis; 0 = variance-matched
    long count = 0;
    std::uint64_t seed = 0;
};

struct EmpiricalMoments {
    double mean = 0.0;
    double m2 = 0.0;  // central
    double m4 = 0.0;  // central
    double se_m2 = 0.0;
    double se_m4 = 0.0;
};

struct SampleSet {
    DisorderSpec spec;
    std::vector<double> quadrature;  // Observable::Quadrature
    std::vector<int> number;         // Observable::Number
    CdfTable cdf;                    // quadrature sampling only
    std::vector<double> populations; // number sampling only
    EmpiricalMoments moments;        // quadrature sampling only
    double ks = 0.0;                 // quadrature sampling only
};

SampleSet sample(const DisorderSpec& spec);

const char* source_name(Source s);
const char* observable_name(Observable o);

}  // namespace sxo::sampler
