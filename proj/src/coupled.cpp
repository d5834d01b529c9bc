#include "sxo/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sxo/errors.hpp"
#include "sxo/specfun.hpp"

namespace sxo::coupled {

namespace {

double auto_width(double var) { return std::max(8.0 * std::sqrt(var), 6.0); }

}  // namespace

HarmonicReduced harmonic_reduced(const HarmonicPair& p) {
    if (!(p.w1 > 0.0) || !(p.w2 > 0.0))
        throw DomainError("harmonic_reduced: frequencies must be positive");
    const double cs = std::cos(p.theta);
    const double sn = std::sin(p.theta);
    const double c2 = cs * cs;
    const double s2 = sn * sn;

    HarmonicReduced out;
    out.omega1_sq = p.w1 * p.w1 * c2 + p.w2 * p.w2 * s2;
    out.omega2_sq = p.w1 * p.w1 * s2 + p.w2 * p.w2 * c2;
    out.lambda = 2.0 * cs * sn * (p.w2 * p.w2 - p.w1 * p.w1);
    out.tau1_sq = 1.0 / (2.0 * (p.w1 * c2 + p.w2 * s2));
    out.tau2_sq = 1.0 / (2.0 * (p.w2 * c2 + p.w1 * s2));
    out.inv_g = (p.w2 - p.w1) * sn * cs;
    out.beta = out.tau2_sq * out.inv_g * out.inv_g;
    out.gamma = 1.0 / (2.0 * out.tau1_sq) - out.beta;
    out.variance = 1.0 / (2.0 * (out.gamma - out.beta));
    out.purity = std::sqrt((out.gamma - out.beta) / (out.gamma + out.beta));
    return out;
}

double harmonic_kernel(double x, double xp, double gamma, double beta) {
    if (!(gamma > 0.0) || std::fabs(beta) >= gamma)
        throw DomainError("harmonic_kernel: requires gamma > |beta|");
    return std::sqrt((gamma - beta) / std::numbers::pi) *
           std::exp(-0.5 * gamma * (x * x + xp * xp) + beta * x * xp);
}

quad::GridKernel harmonic_grid(const HarmonicPair& p, int n, double half_width) {
    HarmonicReduced r = harmonic_reduced(p);
    if (half_width <= 0.0) half_width = 10.0 * std::sqrt(r.variance);
    quad::GridKernel g = quad::discretize_kernel(
        [&](double x, double xp) {
            return harmonic_kernel(x, xp, r.gamma, r.beta);
        },
        half_width, n);
    g.normalize();
    return g;
}

double joint_log_psi0_unnorm(double x1, double x2, const AnharmonicPair& p) {
    const double cs = std::cos(p.theta);
    const double sn = std::sin(p.theta);
    const double y1 = cs * x1 + sn * x2;
    const double y2 = -sn * x1 + cs * x2;
    return qes::log_psi0_unnorm(y1, p.c1) + qes::log_psi0_unnorm(y2, p.c2);
}

double joint_psi0(double x1, double x2, const AnharmonicPair& p) {
    return std::exp(qes::log_norm_a(p.c1) + qes::log_norm_a(p.c2) +
                    joint_log_psi0_unnorm(x1, x2, p));
}

namespace {

// log of f(u) = 2 * int exp(-t^4/4 - (u/4) t^2) dt; the e^{+z} growth of
// the Bessel sum in the u < 0 branch is kept in the log so the kernel
// assembly below can cancel it against the Gaussian prefactors.
double log_f(double u) {
    const double z = u * u / 32.0;
    if (u > 1e-12) {
        return 0.5 * std::log(u) +
               std::log(specfun::bessel_k_scaled(0.25, z).scaled_value);
    }
    if (u < -1e-12) {
        const double ivesum = specfun::bessel_i_scaled(-0.25, z).scaled_value +
                              specfun::bessel_i_scaled(0.25, z).scaled_value;
        return std::log(std::numbers::pi) + 0.5 * std::log(-0.5 * u) +
               2.0 * z + std::log(ivesum);
    }
    // Common limit of both branches, sqrt(2) Gamma(1/4).
    return std::log(std::numbers::sqrt2 * specfun::gamma_fn(0.25));
}

}  // namespace

double reduced_kernel_pi4(double x, double xp, double c) {
    const double x2 = x * x;
    const double xp2 = xp * xp;
    const double u = 4.0 * c + 3.0 * (x2 + xp2);
    const double logv = 4.0 * qes::log_norm_a(c) - std::numbers::ln2 -
                        0.5 * c * (x2 + xp2) -
                        0.125 * (x2 * x2 + xp2 * xp2) + log_f(u);
    return std::exp(logv);
}

quad::GridKernel reduced_identical_pi4(double c, int n, double half_width) {
    if (half_width <= 0.0) half_width = auto_width(qes::variance(c));
    quad::GridKernel g = quad::discretize_kernel(
        [c](double x, double xp) { return reduced_kernel_pi4(x, xp, c); },
        half_width, n);
    g.normalize();
    return g;
}

quad::GridKernel reduced_numeric(const AnharmonicPair& p, int n, double half_width) {
    VarianceRelation vr = variance_relation(p);
    if (half_width <= 0.0) half_width = auto_width(vr.var_x1);
    const double trace_width = auto_width(vr.var_x2);

    if (n < 33 || n % 2 == 0)
        throw DomainError("reduced_numeric: n must be odd and >= 33");

    const double log_norm = qes::log_norm_a(p.c1) + qes::log_norm_a(p.c2);

    auto build = [&](int n_trace) {
        const double ht = 2.0 * trace_width / (n_trace - 1);
        std::vector<double> wt = quad::simpson_weights(n_trace, ht);

        quad::GridKernel g;
        g.half_width = half_width;
        g.nodes.resize(n);
        const double h = 2.0 * half_width / (n - 1);
        for (int i = 0; i < n; ++i) g.nodes[i] = -half_width + h * i;
        g.weights = quad::simpson_weights(n, h);

        Eigen::MatrixXd psi(n, n_trace);
        for (int q = 0; q < n_trace; ++q) {
            const double t = -trace_width + ht * q;
            for (int i = 0; i < n; ++i)
                psi(i, q) = std::exp(log_norm +
                                     joint_log_psi0_unnorm(g.nodes[i], t, p));
        }
        Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(wt.data(), n_trace);
        g.values = psi * w.asDiagonal() * psi.transpose();
        return g;
    };

    quad::GridKernel g = build(513);
    quad::GridKernel fine = build(1025);
    g.discretization_error = std::fabs(g.trace() - fine.trace()) /
                             std::max(std::fabs(fine.trace()), 1e-300);
    fine.discretization_error = g.discretization_error;
    fine.normalize();
    return fine;
}

VarianceRelation variance_relation(const AnharmonicPair& p) {
    const double c2 = std::cos(p.theta) * std::cos(p.theta);
    const double s2 = 1.0 - c2;

    VarianceRelation out;
    out.mode_var1 = qes::variance(p.c1);
    out.mode_var2 = qes::variance(p.c2);
    out.var_x1 = c2 * out.mode_var1 + s2 * out.mode_var2;
    out.var_x2 = s2 * out.mode_var1 + c2 * out.mode_var2;
    out.sum_residual =
        (out.var_x1 + out.var_x2) - (out.mode_var1 + out.mode_var2);
    out.prediction = std::min(out.mode_var1, out.mode_var2) +
                     std::fabs(out.mode_var2 - out.mode_var1) * s2;
    out.deviation = out.prediction - out.var_x1;
    return out;
}

double marginal_moment(int order, const AnharmonicPair& p, int which) {
    if (which != 1 && which != 2)
        throw DomainError("marginal_moment: which must be 1 or 2");
    double c2 = std::cos(p.theta) * std::cos(p.theta);
    if (which == 2) c2 = 1.0 - c2;
    const double s2 = 1.0 - c2;

    const double v1 = qes::variance(p.c1);
    const double v2 = qes::variance(p.c2);
    if (order == 2) return c2 * v1 + s2 * v2;
    if (order == 4) {
        const double m41 = qes::raw_moment(4, p.c1);
        const double m42 = qes::raw_moment(4, p.c2);
        return c2 * c2 * m41 + 6.0 * c2 * s2 * v1 * v2 + s2 * s2 * m42;
    }
    throw CapabilityError("marginal_moment: only orders 2 and 4 are exact");
}

ApproxMoment approx_marginal_moment(int order, const AnharmonicPair& p, int which) {
    if (which != 1 && which != 2)
        throw DomainError("approx_marginal_moment: which must be 1 or 2");
    double s2 = std::sin(p.theta) * std::sin(p.theta);
    if (which == 2) s2 = 1.0 - s2;

    const double m1 = qes::raw_moment(order, p.c1);
    const double m2 = qes::raw_moment(order, p.c2);

    ApproxMoment out;
    out.value = std::min(m1, m2) + std::fabs(m2 - m1) * s2;
    out.degraded = p.c1 != p.c2 && std::fabs(p.c1 - p.c2) < 1.0;
    return out;
}

CoupledExpansion expand_coupled(const qes::SexticParams& o1,
                                const qes::SexticParams& o2, double theta) {
    if (!(o1.a > 0.0) || !(o2.a > 0.0))
        throw DomainError("expand_coupled: requires a > 0");

    const double cs = std::cos(theta);
    const double sn = std::sin(theta);

    CoupledExpansion out;
    out.constant = -(o1.b + o2.b);
    out.p = cs * cs;

    auto binom = [](int n, int k) {
        double r = 1.0;
        for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
        return r;
    };

    // Oscillator 1 sees y = cs*x1 + sn*x2, oscillator 2 sees
    // y = -sn*x1 + cs*x2; each contributes a*a y^6 + 2ab y^4 + (b^2-3a) y^2.
    auto accumulate = [&](const qes::SexticParams& o, double u1, double u2) {
        const double coeff[3] = {o.b * o.b - 3.0 * o.a, 2.0 * o.a * o.b,
                                 o.a * o.a};
        const int degree[3] = {2, 4, 6};
        for (int t = 0; t < 3; ++t) {
            for (int i = 0; i <= degree[t]; ++i) {
                const int j = degree[t] - i;
                const double term = coeff[t] * binom(degree[t], i) *
                                    std::pow(u1, i) * std::pow(u2, j);
                out.lambda[{i, j}] += term;
            }
        }
    };
    accumulate(o1, cs, sn);
    accumulate(o2, -sn, cs);

    const double det = 2.0 * out.p - 1.0;
    out.mixing_recoverable = std::fabs(det) > 1e-12;
    if (out.mixing_recoverable) {
        const double l20 = out.lambda[{2, 0}];
        const double l02 = out.lambda[{0, 2}];
        out.q1 = (out.p * l20 - (1.0 - out.p) * l02) / det;
        out.q2 = (out.p * l02 - (1.0 - out.p) * l20) / det;
    } else {
        out.q1 = std::numeric_limits<double>::quiet_NaN();
        out.q2 = out.q1;
    }
    return out;
}

}  // namespace sxo::coupled
