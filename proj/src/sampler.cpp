#include "sxo/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "sxo/errors.hpp"
#include "sxo/fock.hpp"
#include "sxo/qes.hpp"
#include "sxo/quadrature.hpp"

namespace sxo::sampler {

namespace {

constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream)
    : stream_seed(mix(seed ^ ((stream + 1) * golden))) {}

std::uint64_t SplitMix64::u64_at(std::uint64_t index) const {
    return mix(stream_seed + (index + 1) * golden);
}

double SplitMix64::u01_at(std::uint64_t index) const {
    return static_cast<double>(u64_at(index) >> 11) * 0x1.0p-53;
}

CdfTable build_cdf(const std::vector<double>& nodes,
                   const std::vector<double>& density) {
    if (nodes.size() != density.size() || nodes.size() < 2)
        throw DomainError("build_cdf: need matching arrays of at least 2 points");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw DomainError("build_cdf: nodes must be strictly increasing");

    std::vector<double> d(density);
    for (double& v : d) {
        if (v < -1e-9)
            throw IntegrityError("build_cdf: density value " + std::to_string(v) +
                                 " below tolerance");
        if (v < 0.0) v = 0.0;
    }

    std::vector<double> cum(nodes.size(), 0.0);
    for (std::size_t i = 1; i < nodes.size(); ++i)
        cum[i] = cum[i - 1] +
                 0.5 * (d[i] + d[i - 1]) * (nodes[i] - nodes[i - 1]);
    const double total = cum.back();
    if (!(total > 0.0)) throw IntegrityError("build_cdf: density integrates to zero");

    CdfTable table;
    table.x.reserve(nodes.size());
    table.f.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double f = cum[i] / total;
        if (i == 0 || f > table.f.back()) {
            table.x.push_back(nodes[i]);
            table.f.push_back(f);
        }
    }
    table.f.front() = 0.0;
    table.f.back() = 1.0;
    if (table.f.size() < 2)
        throw IntegrityError("build_cdf: degenerate distribution");
    return table;
}

namespace {

// Fritsch-Carlson monotone slopes for the (x, f) table.
std::vector<double> pchip_slopes(const CdfTable& t) {
    const std::size_t n = t.x.size();
    std::vector<double> h(n - 1), delta(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = t.x[i + 1] - t.x[i];
        delta[i] = (t.f[i + 1] - t.f[i]) / h[i];
    }
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // Endpoint slopes limited to preserve monotonicity.
    for (std::size_t i : {std::size_t{0}, n - 1}) {
        const double ref = i == 0 ? delta[0] : delta[n - 2];
        if (m[i] * ref <= 0.0)
            m[i] = 0.0;
        else if (std::fabs(m[i]) > 3.0 * std::fabs(ref))
            m[i] = 3.0 * ref;
    }
    return m;
}

double hermite_eval(const CdfTable& t, const std::vector<double>& m,
                    std::size_t k, double x) {
    const double h = t.x[k + 1] - t.x[k];
    const double s = (x - t.x[k]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * t.f[k] + h10 * h * m[k] + h01 * t.f[k + 1] + h11 * h * m[k + 1];
}

std::size_t segment_of(const std::vector<double>& xs, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return 0;
    std::size_t k = static_cast<std::size_t>(it - xs.begin()) - 1;
    return std::min(k, xs.size() - 2);
}

}  // namespace

double cdf_value(const CdfTable& table, double x) {
    if (table.x.size() < 2) throw DomainError("cdf_value: empty table");
    if (x <= table.x.front()) return 0.0;
    if (x >= table.x.back()) return 1.0;
    const std::vector<double> m = pchip_slopes(table);
    return hermite_eval(table, m, segment_of(table.x, x), x);
}

double invert_cdf(const CdfTable& table, double u) {
    if (table.x.size() < 2) throw DomainError("invert_cdf: empty table");
    if (u < 0.0 || u > 1.0) throw DomainError("invert_cdf: u outside [0, 1]");
    if (u <= 0.0) return table.x.front();
    if (u >= 1.0) return table.x.back();

    const std::vector<double> m = pchip_slopes(table);
    const auto it = std::upper_bound(table.f.begin(), table.f.end(), u);
    std::size_t k = static_cast<std::size_t>(it - table.f.begin());
    k = (k == 0) ? 0 : k - 1;
    k = std::min(k, table.f.size() - 2);

    double lo = table.x[k], hi = table.x[k + 1];
    while (hi - lo > 1e-15 * (std::fabs(lo) + std::fabs(hi) + 1.0)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = hermite_eval(table, m, k, mid);
        if (std::fabs(fm - u) < 1e-13) return mid;
        if (fm < u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double ks_distance(std::vector<double> samples, const CdfTable& table) {
    if (samples.empty()) throw DomainError("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const std::vector<double> m = pchip_slopes(table);
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f;
        const double x = samples[i];
        if (x <= table.x.front())
            f = 0.0;
        else if (x >= table.x.back())
            f = 1.0;
        else
            f = hermite_eval(table, m, segment_of(table.x, x), x);
        d = std::max(d, std::fabs(f - i / n));
        d = std::max(d, std::fabs(f - (i + 1) / n));
    }
    return d;
}

AliasTable build_alias(const std::vector<double>& p) {
    if (p.empty()) throw DomainError("build_alias: empty distribution");
    std::vector<double> q(p);
    double total = 0.0;
    for (double& v : q) {
        if (v < -1e-9)
            throw IntegrityError("build_alias: negative probability");
        if (v < 1e-12) v = 0.0;
        total += v;
    }
    if (!(total > 0.0)) throw IntegrityError("build_alias: all probabilities zero");

    const std::size_t n = q.size();
    AliasTable t;
    t.prob.assign(n, 0.0);
    t.alias.assign(n, 0);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = q[i] / total * n;

    std::vector<int> small, large;
    for (std::size_t i = 0; i < n; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<int>(i));

    while (!small.empty() && !large.empty()) {
        const int s = small.back();
        small.pop_back();
        const int l = large.back();
        t.prob[s] = scaled[s];
        t.alias[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (int i : large) t.prob[i] = 1.0;
    for (int i : small) t.prob[i] = 1.0;  // numerical leftovers
    return t;
}

int alias_draw(const AliasTable& t, double u) {
    if (u < 0.0 || u >= 1.0) throw DomainError("alias_draw: u outside [0, 1)");
    const std::size_t n = t.prob.size();
    const double scaled = u * static_cast<double>(n);
    std::size_t i = std::min(static_cast<std::size_t>(scaled), n - 1);
    const double frac = scaled - static_cast<double>(i);
    return frac < t.prob[i] ? static_cast<int>(i) : t.alias[i];
}

namespace {

struct QuadratureDensity {
    std::vector<double> nodes;
    std::vector<double> density;
    double var_hint = 0.0;
};

QuadratureDensity marginal_density(const DisorderSpec& spec) {
    QuadratureDensity out;
    double width = 0.0;
    std::function<double(double)> dens;

    switch (spec.source) {
        case Source::Pure: {
            out.var_hint = qes::variance(spec.c);
            width = std::max(8.0 * std::sqrt(out.var_hint), 6.0);
            dens = [&](double x) { return qes::ground_density(x, spec.c); };
            break;
        }
        case Source::MixedIdenticalPi4: {
            out.var_hint = qes::variance(spec.c);
            width = std::max(8.0 * std::sqrt(out.var_hint), 6.0);
            dens = [&](double x) {
                return coupled::reduced_kernel_pi4(x, x, spec.c);
            };
            break;
        }
        case Source::MixedGeneral: {
            coupled::VarianceRelation vr = coupled::variance_relation(spec.pair);
            out.var_hint = vr.var_x1;
            width = std::max(8.0 * std::sqrt(vr.var_x1), 6.0);
            const double tw = std::max(8.0 * std::sqrt(vr.var_x2), 6.0);
            const int nt = 513;
            const double ht = 2.0 * tw / (nt - 1);
            std::vector<double> wt = quad::simpson_weights(nt, ht);
            const double log_norm =
                qes::log_norm_a(spec.pair.c1) + qes::log_norm_a(spec.pair.c2);
            dens = [&, wt, tw, ht, nt, log_norm](double x) {
                double acc = 0.0;
                for (int qd = 0; qd < nt; ++qd) {
                    const double t = -tw + ht * qd;
                    const double psi = std::exp(
                        log_norm + coupled::joint_log_psi0_unnorm(x, t, spec.pair));
                    acc += wt[qd] * psi * psi;
                }
                return acc;
            };
            break;
        }
        case Source::Harmonic: {
            coupled::HarmonicReduced hr = coupled::harmonic_reduced(spec.harmonic);
            out.var_hint = hr.variance;
            width = 10.0 * std::sqrt(hr.variance);
            const double a = hr.gamma - hr.beta;
            dens = [a](double x) {
                return std::sqrt(a / std::numbers::pi) * std::exp(-a * x * x);
            };
            break;
        }
    }

    const int n = 4001;
    // Peak over a coarse probe (the density may be multimodal), then
    // extend until the edge density is negligible relative to it.
    double peak = 0.0;
    for (int i = -100; i <= 100; ++i)
        peak = std::max(peak, dens(width * i / 100.0));
    for (int pass = 0; pass < 40; ++pass) {
        if (dens(width) < 1e-12 * peak && dens(-width) < 1e-12 * peak) break;
        width *= 1.2;
    }
    out.nodes.resize(n);
    out.density.resize(n);
    const double h = 2.0 * width / (n - 1);
    for (int i = 0; i < n; ++i) {
        out.nodes[i] = -width + h * i;
        out.density[i] = dens(out.nodes[i]);
    }
    return out;
}

std::vector<double> number_distribution(const DisorderSpec& spec) {
    const int n_max = fock::default_n_max;
    switch (spec.source) {
        case Source::Pure:
            return fock::number_populations_pure(spec.c, spec.omega, n_max)
                .populations;
        case Source::MixedIdenticalPi4: {
            const double omega = spec.omega > 0.0
                                     ? spec.omega
                                     : fock::omega_from_variance(
                                           qes::variance(spec.c));
            const double c = spec.c;
            quad::GridKernel g = coupled::reduced_identical_pi4(c);
            auto regen = [c](double w, int n) {
                return coupled::reduced_identical_pi4(c, std::max(n, 33) | 1, w);
            };
            return fock::number_populations(g, omega, n_max, regen).populations;
        }
        case Source::MixedGeneral: {
            coupled::VarianceRelation vr = coupled::variance_relation(spec.pair);
            const double omega = spec.omega > 0.0
                                     ? spec.omega
                                     : fock::omega_from_variance(vr.var_x1);
            const coupled::AnharmonicPair pair = spec.pair;
            quad::GridKernel g = coupled::reduced_numeric(pair);
            auto regen = [pair](double w, int n) {
                return coupled::reduced_numeric(pair, std::max(n, 33) | 1, w);
            };
            return fock::number_populations(g, omega, n_max, regen).populations;
        }
        case Source::Harmonic: {
            coupled::HarmonicReduced hr = coupled::harmonic_reduced(spec.harmonic);
            const double xi = fock::thermal_xi(hr.gamma, hr.beta);
            std::vector<double> p(n_max + 1);
            for (int k = 0; k <= n_max; ++k)
                p[k] = (1.0 - xi) * std::pow(xi, k);
            return p;
        }
    }
    throw DomainError("number_distribution: unknown source");
}

EmpiricalMoments empirical_moments(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    EmpiricalMoments em;
    for (double x : v) em.mean += x;
    em.mean /= n;
    double m2 = 0.0, m4 = 0.0, m8 = 0.0;
    for (double x : v) {
        const double d = x - em.mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
        m8 += d2 * d2 * d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    m8 /= n;
    em.m2 = m2;
    em.m4 = m4;
    em.se_m2 = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    em.se_m4 = std::sqrt(std::max(0.0, m8 - m4 * m4) / n);
    return em;
}

}  // namespace

SampleSet sample(const DisorderSpec& spec) {
    if (spec.count < 1) throw DomainError("sample: count < 1");
    if (spec.count > 100000000L)
        throw CapabilityError("sample: count above 1e8");

    SampleSet out;
    out.spec = spec;
    const SplitMix64 rng(spec.seed, 0);

    if (spec.observable == Observable::Quadrature) {
        QuadratureDensity qd = marginal_density(spec);
        out.cdf = build_cdf(qd.nodes, qd.density);
        out.quadrature.resize(spec.count);
        for (long i = 0; i < spec.count; ++i)
            out.quadrature[i] =
                invert_cdf(out.cdf, rng.u01_at(static_cast<std::uint64_t>(i)));
        out.moments = empirical_moments(out.quadrature);
        out.ks = ks_distance(out.quadrature, out.cdf);
        return out;
    }

    out.populations = number_distribution(spec);
    AliasTable alias = build_alias(out.populations);
    out.number.resize(spec.count);
    for (long i = 0; i < spec.count; ++i)
        out.number[i] = alias_draw(alias, rng.u01_at(static_cast<std::uint64_t>(i)));
    return out;
}

const char* source_name(Source s) {
    switch (s) {
        case Source::Pure: return "pure";
        case Source::MixedIdenticalPi4: return "mixed_identical_pi4";
        case Source::MixedGeneral: return "mixed_general";
        case Source::Harmonic: return "harmonic";
    }
    return "unknown";
}

const char* observable_name(Observable o) {
    return o == Observable::Quadrature ? "quadrature" : "number";
}

}  // namespace sxo::sampler
