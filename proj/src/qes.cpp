#include "sxo/qes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sxo/errors.hpp"
#include "sxo/quadrature.hpp"
#include "sxo/specfun.hpp"

namespace sxo::qes {

namespace {

constexpr double sqrt3 = 1.7320508075688772935;
constexpr double c_zero_eps = 1e-12;

void check_even_order(const char* fn, int order) {
    if (order < 0 || order % 2 != 0)
        throw DomainError(std::string(fn) + ": order must be even and >= 0");
    if (order > max_moment_order)
        throw CapabilityError(std::string(fn) + ": order above " +
                              std::to_string(max_moment_order));
}

// log of the unnormalized density weight w(y) = psi0(y)^2 / A^2.
double log_density_unnorm(double y, double c) {
    const double y2 = y * y;
    return -0.5 * y2 * y2 - c * y2;
}

}  // namespace

double shape_parameter(const SexticParams& p) {
    if (!(p.a > 0.0)) throw DomainError("shape_parameter: requires a > 0");
    return p.b / std::sqrt(p.a);
}

double potential(double y, double c) {
    const double y2 = y * y;
    return ((y2 + 2.0 * c) * y2 + (c * c - 3.0)) * y2 - c;
}

double potential_unscaled(double y, const SexticParams& p) {
    if (!(p.a > 0.0)) throw DomainError("potential_unscaled: requires a > 0");
    const double y2 = y * y;
    return ((p.a * p.a * y2 + 2.0 * p.a * p.b) * y2 + (p.b * p.b - 3.0 * p.a)) * y2 -
           p.b;
}

WellShape classify_well(double c) {
    if (c >= sqrt3) return WellShape::Single;
    if (c >= -sqrt3) return WellShape::Double;
    return WellShape::Triple;
}

const char* well_name(WellShape s) {
    switch (s) {
        case WellShape::Single: return "single";
        case WellShape::Double: return "double";
        case WellShape::Triple: return "triple";
    }
    return "unknown";
}

int count_extrema(double c) {
    // V'(y) = 2 y (3 y^4 + 4 c y^2 + c^2 - 3); the quadratic in y^2 has
    // roots u = (-2c +- sqrt(c^2 + 9)) / 3, each positive root
    // contributing a symmetric pair of stationary points.
    const double disc = std::sqrt(c * c + 9.0);
    const double u_plus = (-2.0 * c + disc) / 3.0;
    const double u_minus = (-2.0 * c - disc) / 3.0;
    // At c = +-sqrt(3) one root sits exactly at zero; the rounding noise in
    // u is a few ulps, so a scale-aware threshold keeps the count stable.
    const double eps = 1e-12 * (1.0 + c * c);
    int n = 1;  // y = 0
    if (u_plus > eps) n += 2;
    if (u_minus > eps) n += 2;
    return n;
}

namespace {

double log_norm_a2(double c) {
    const double zz = c * c / 4.0;
    if (c > c_zero_eps) {
        auto kve = specfun::bessel_k_scaled(0.25, zz);
        return 0.5 * std::log(2.0 / c) - std::log(kve.scaled_value);
    }
    if (c < -c_zero_eps) {
        auto ip = specfun::bessel_i_scaled(0.25, zz);
        auto im = specfun::bessel_i_scaled(-0.25, zz);
        // A^2 = sqrt(-4/(pi^2 c)) / (e^{c^2/4} (I_{-1/4} + I_{1/4})(c^2/4))
        // and e^{c^2/4} I = e^{c^2/2} (scaled I).
        return 0.5 * std::log(-4.0 / (std::numbers::pi * std::numbers::pi * c)) -
               c * c / 2.0 - std::log(im.scaled_value + ip.scaled_value);
    }
    return 0.75 * std::numbers::ln2 - std::lgamma(0.25);
}

}  // namespace

double norm_a(double c) { return std::exp(0.5 * log_norm_a2(c)); }

double log_norm_a(double c) { return 0.5 * log_norm_a2(c); }

double log_psi0_unnorm(double y, double c) {
    const double y2 = y * y;
    return -0.25 * y2 * y2 - 0.5 * c * y2;
}

double ground_psi(double y, double c) {
    return std::exp(0.5 * log_norm_a2(c) + log_psi0_unnorm(y, c));
}

double ground_density(double y, double c) {
    return std::exp(log_norm_a2(c) + log_density_unnorm(y, c));
}

double raw_moment(int order, double c) {
    check_even_order("raw_moment", order);
    if (order == 0) return 1.0;
    const double n = order / 2.0;
    const double z = c * c / 2.0;
    const double zz = c * c / 4.0;

    if (c > c_zero_eps) {
        const double num = specfun::gamma_fn(0.5 + n) *
                           specfun::tricomi_u(0.25 + 0.5 * n, 0.5, z);
        const double den = std::pow(2.0, 0.5 * n - 0.25) * std::sqrt(c) *
                           specfun::bessel_k_scaled(0.25, zz).scaled_value;
        return num / den;
    }
    if (c < -c_zero_eps) {
        // The e^{z} factors of the scaled 1F1 values and of the scaled
        // Bessel sum cancel exactly, leaving a finite expression for any c.
        const double f1 = specfun::kummer_1f1_scaled(0.25 + 0.5 * n, 0.5, z).scaled_value;
        const double f2 = specfun::kummer_1f1_scaled(0.75 + 0.5 * n, 1.5, z).scaled_value;
        const double num = specfun::gamma_fn(0.25 + 0.5 * n) * f1 -
                           std::sqrt(2.0) * c * specfun::gamma_fn(0.75 + 0.5 * n) * f2;
        const double ivesum = specfun::bessel_i_scaled(-0.25, zz).scaled_value +
                              specfun::bessel_i_scaled(0.25, zz).scaled_value;
        const double den = std::numbers::pi * std::sqrt(-c) * ivesum;
        return std::pow(2.0, 0.5 * n + 0.25) * num / den;
    }
    return std::pow(2.0, 0.5 * n) * specfun::gamma_fn(0.25 + 0.5 * n) /
           specfun::gamma_fn(0.25);
}

double raw_moment_quad(int order, double c) {
    check_even_order("raw_moment_quad", order);
    if (order == 0) return 1.0;
    const double shift = std::max(0.0, c * c / 2.0);
    auto weight = [c, shift](double y) {
        return std::exp(log_density_unnorm(y, c) + shift);
    };
    auto envelope = [&weight, order](double y) {
        return weight(y) * (1.0 + std::pow(std::fabs(y), order));
    };
    quad::Result num = quad::integrate_whole_line(
        [&](double y) { return std::pow(y, order) * weight(y); }, envelope);
    quad::Result den = quad::integrate_whole_line(weight, envelope);
    return num.value / den.value;
}

double variance(double c) { return raw_moment(2, c); }

double excess_moment(int order, double c) {
    check_even_order("excess_moment", order);
    if (order == 0) return 0.0;
    const int m = order / 2;
    const double var = variance(c);
    return raw_moment(order, c) / std::pow(var, m) -
           specfun::double_factorial(order - 1);
}

double moment_ratio(int m, double c) {
    if (m < 2)
        throw DomainError("moment_ratio: lower index must be >= 2");
    const double denom = excess_moment(2 * m, c);
    const double numer = excess_moment(2 * (m + 1), c);
    if (denom == 0.0 || !std::isfinite(denom))
        throw DomainError("moment_ratio: vanishing excess moment in denominator");
    return numer / denom;
}

double unscale_moment(double moment_scaled, int order, double a) {
    check_even_order("unscale_moment", order);
    if (!(a > 0.0)) throw DomainError("unscale_moment: requires a > 0");
    return moment_scaled / std::pow(a, order / 4.0);
}

MomentReport moment_report(double c, const std::vector<int>& orders) {
    MomentReport rep;
    rep.c = c;
    rep.variance = variance(c);
    rep.orders = orders;
    rep.raw.reserve(orders.size());
    rep.excess.reserve(orders.size());
    for (int order : orders) {
        rep.raw.push_back(raw_moment(order, c));
        rep.excess.push_back(order >= 4 ? excess_moment(order, c) : 0.0);
    }
    for (std::size_t i = 0; i + 1 < orders.size(); ++i) {
        if (orders[i] >= 4 && rep.excess[i] != 0.0)
            rep.ratios.push_back(rep.excess[i + 1] / rep.excess[i]);
        else
            rep.ratios.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    return rep;
}

}  // namespace sxo::qes
