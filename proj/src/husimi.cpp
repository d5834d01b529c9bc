#include "sxo/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sxo/errors.hpp"
#include "sxo/qes.hpp"
#include "sxo/specfun.hpp"

namespace sxo::husimi {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;

// Exponent of the non-oscillatory part of the overlap integrand,
// g(y) = -y^4/4 - (c+1) y^2/2 + sqrt(2) a1 y.
double overlap_exponent(double y, double c, double a1) {
    const double y2 = y * y;
    return -0.25 * y2 * y2 - 0.5 * (c + 1.0) * y2 + sqrt2 * a1 * y;
}

// Peak of g over a probe grid wide enough for any |c| of interest; the
// exact maximizer solves a cubic, a grid plus local refinement is ample
// because only the scale is needed.
double overlap_peak(double c, double a1) {
    double best = overlap_exponent(0.0, c, a1);
    const double reach = 2.0 + std::sqrt(std::max(0.0, -(c + 1.0))) + std::sqrt(std::fabs(a1));
    for (int i = -200; i <= 200; ++i) {
        const double y = reach * i / 200.0;
        best = std::max(best, overlap_exponent(y, c, a1));
    }
    return best;
}

struct ScaledComplex {
    double re = 0.0;
    double im = 0.0;
    double log_scale = 0.0;
};

// G_c(alpha) as (re + i im) * exp(log_scale), safe for deep triple wells
// where the plain value overflows.
ScaledComplex gc_scaled(const PhasePoint& p, double c) {
    const double m = overlap_peak(c, p.a1);
    auto weight = [&](double y) { return std::exp(overlap_exponent(y, c, p.a1) - m); };

    // Truncation where the envelope is negligible relative to its peak (=1).
    double y_max = 1.0 + std::sqrt(std::fabs(c)) + std::fabs(p.a1);
    while (weight(y_max) > 1e-18 || weight(-y_max) > 1e-18) y_max *= 1.2;

    const double k = sqrt2 * std::fabs(p.a2);
    quad::Result re = quad::integrate_oscillatory(
        [&](double y) { return weight(y) * std::cos(sqrt2 * p.a2 * y); }, k,
        -y_max, y_max, 1.0);
    quad::Result im = quad::integrate_oscillatory(
        [&](double y) { return weight(y) * std::sin(sqrt2 * p.a2 * y); }, k,
        -y_max, y_max, 1.0);
    return {re.value, im.value, m};
}

}  // namespace

std::complex<double> gc(const PhasePoint& p, double c) {
    ScaledComplex s = gc_scaled(p, c);
    const double scale = std::exp(s.log_scale);
    return {s.re * scale, s.im * scale};
}

double gc_origin(double c) {
    const double u = 2.0 * (c + 1.0);
    const double z = u * u / 32.0;
    if (u > 1e-12) {
        return 0.5 * std::sqrt(u) * specfun::bessel_k_scaled(0.25, z).scaled_value;
    }
    if (u < -1e-12) {
        const double ivesum = specfun::bessel_i_scaled(-0.25, z).scaled_value +
                              specfun::bessel_i_scaled(0.25, z).scaled_value;
        return 0.5 * std::numbers::pi * std::sqrt(-0.5 * u) * std::exp(2.0 * z) * ivesum;
    }
    return specfun::gamma_fn(0.25) / sqrt2;
}

double q_pure(const PhasePoint& p, double c) {
    ScaledComplex s = gc_scaled(p, c);
    const double log_a2 = 2.0 * std::log(qes::norm_a(c));
    const double log_mag =
        log_a2 - 1.5 * std::log(std::numbers::pi) - 2.0 * p.a1 * p.a1 +
        2.0 * s.log_scale;
    return (s.re * s.re + s.im * s.im) * std::exp(log_mag);
}

double q_mixed(const PhasePoint& p, const quad::GridKernel& rho) {
    const double center = sqrt2 * p.a1;
    if (rho.half_width - std::fabs(center) < 7.5)
        throw WindowError(
            "q_mixed: coherent state leaks outside the kernel grid");

    const int n = rho.size();
    Eigen::VectorXd vr(n), vi(n);
    const double pref = std::pow(std::numbers::pi, -0.25);
    for (int i = 0; i < n; ++i) {
        const double x = rho.nodes[i];
        const double mag =
            pref * std::exp(-0.5 * (x - center) * (x - center)) * rho.weights[i];
        vr(i) = mag * std::cos(sqrt2 * p.a2 * x);
        vi(i) = mag * std::sin(sqrt2 * p.a2 * x);
    }
    const double q = vr.dot(rho.values * vr) + vi.dot(rho.values * vi);
    return q / std::numbers::pi;
}

namespace {

// Fixed spectral evaluator for the axis scan: the non-oscillatory weight
// is tabulated once on composite 20-point Gauss-Legendre panels, so each
// frequency costs one cosine sweep.  The weight is even in y, hence the
// half-line doubling.
struct AxisEvaluator {
    std::vector<double> y;
    std::vector<double> w;  // quadrature weight times integrand weight

    AxisEvaluator(double c) {
        static const double gl_x[10] = {
            0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
            0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
            0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
            0.9931285991850949};
        static const double gl_w[10] = {
            0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
            0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
            0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
            0.0176140071391521};

        const double m = overlap_peak(c, 0.0);
        auto weight = [&](double yy) {
            return std::exp(overlap_exponent(yy, c, 0.0) - m);
        };
        double y_max = 1.0 + std::sqrt(std::fabs(c));
        while (weight(y_max) > 1e-18) y_max *= 1.2;

        const double panel = 0.05;
        const int panels = static_cast<int>(std::ceil(y_max / panel));
        y.reserve(panels * 20);
        w.reserve(panels * 20);
        for (int pnl = 0; pnl < panels; ++pnl) {
            const double mid = (pnl + 0.5) * panel;
            const double half = 0.5 * panel;
            for (int q = 0; q < 10; ++q) {
                for (double sgn : {-1.0, 1.0}) {
                    const double yy = mid + sgn * half * gl_x[q];
                    y.push_back(yy);
                    w.push_back(gl_w[q] * half * weight(yy));
                }
            }
        }
    }

    // Scaled G on the a1 = 0 axis (real by symmetry).
    double operator()(double a2) const {
        double s = 0.0;
        const double k = sqrt2 * a2;
        for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * std::cos(k * y[i]);
        return 2.0 * s;
    }
};

}  // namespace

ZeroScan scan_zeros(double c, double a2_max, double initial_step, int max_halvings) {
    if (!(a2_max > 0.0)) throw DomainError("scan_zeros: a2_max <= 0");
    if (!(initial_step > 0.0) || initial_step > a2_max)
        throw DomainError("scan_zeros: bad initial step");

    AxisEvaluator eval(c);

    auto count_with = [&](double step, std::vector<std::pair<double, double>>* brackets) {
        int count = 0;
        double prev_a = 0.0;
        double prev_v = eval(0.0);
        for (double a = step; a <= a2_max + 0.5 * step; a += step) {
            const double aa = std::min(a, a2_max);
            const double v = eval(aa);
            if ((prev_v < 0.0) != (v < 0.0) && prev_v != 0.0) {
                ++count;
                if (brackets) brackets->emplace_back(prev_a, aa);
            }
            prev_a = aa;
            prev_v = v;
            if (aa >= a2_max) break;
        }
        return count;
    };

    double step = initial_step;
    int count = count_with(step, nullptr);
    int stable = 0;
    int halvings = 0;
    while (stable < 2) {
        if (halvings >= max_halvings)
            throw AccuracyError("scan_zeros: zero count did not stabilize");
        step *= 0.5;
        ++halvings;
        const int next = count_with(step, nullptr);
        stable = (next == count) ? stable + 1 : 0;
        count = next;
    }

    std::vector<std::pair<double, double>> brackets;
    count_with(step, &brackets);

    ZeroScan scan;
    scan.c = c;
    scan.a2_max = a2_max;
    scan.step_used = step;
    for (auto [lo, hi] : brackets) {
        double flo = eval(lo);
        while (hi - lo > 1e-8) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = eval(mid);
            if ((flo < 0.0) != (fmid < 0.0)) {
                hi = mid;
            } else {
                lo = mid;
                flo = fmid;
            }
        }
        scan.zeros.push_back(0.5 * (lo + hi));
    }

    const double half = 0.5 * a2_max;
    const auto from = std::lower_bound(scan.zeros.begin(), scan.zeros.end(), half);
    scan.trailing_density =
        static_cast<double>(scan.zeros.end() - from) / (a2_max - half);
    return scan;
}

}  // namespace sxo::husimi
