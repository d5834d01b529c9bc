#include "sxo/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sxo/errors.hpp"
#include "sxo/qes.hpp"
#include "sxo/specfun.hpp"

namespace sxo::fock {

namespace {

// The analysis basis must fit inside the grid: classical turning point of
// the highest level plus a few decay lengths.
double required_half_width(double omega, int n_max) {
    return std::sqrt((2.0 * n_max + 1.0) / omega) + 5.0 / std::sqrt(omega);
}

void check_orders(double omega, int n_max) {
    if (!(omega > 0.0)) throw DomainError("number populations: omega <= 0");
    if (n_max < 0) throw DomainError("number populations: n_max < 0");
    if (n_max > hard_n_max)
        throw CapabilityError("number populations: n_max above " +
                              std::to_string(hard_n_max));
}

NumberStats stats_from_kernel(const quad::GridKernel& rho, double omega,
                              int n_max) {
    const int n = rho.size();
    Eigen::MatrixXd phi(n_max + 1, n);
    std::vector<double> col(n_max + 1);
    for (int i = 0; i < n; ++i) {
        specfun::hermite_all(n_max, rho.nodes[i], omega, col.data());
        for (int k = 0; k <= n_max; ++k) phi(k, i) = col[k] * rho.weights[i];
    }
    Eigen::MatrixXd m = phi * rho.values;

    NumberStats out;
    out.omega = omega;
    out.half_width = rho.half_width;
    out.populations.resize(n_max + 1);
    double total = 0.0, mean = 0.0, mean2 = 0.0;
    for (int k = 0; k <= n_max; ++k) {
        const double p = m.row(k).dot(phi.row(k));
        out.populations[k] = p;
        total += p;
        mean += k * p;
        mean2 += static_cast<double>(k) * k * p;
    }
    out.tail_mass = 1.0 - total;
    out.mean_n = mean;
    out.mean_n2 = mean2;
    return out;
}

}  // namespace

double omega_from_variance(double var) {
    if (!(var > 0.0)) throw DomainError("omega_from_variance: var <= 0");
    return 1.0 / (2.0 * var);
}

NumberStats number_populations(
    const quad::GridKernel& rho, double omega, int n_max,
    const std::function<quad::GridKernel(double, int)>& regenerate) {
    check_orders(omega, n_max);

    const double needed = required_half_width(omega, n_max);
    if (!regenerate) {
        if (rho.half_width < needed)
            throw WindowError(
                "number_populations: grid half-width " +
                std::to_string(rho.half_width) + " below required " +
                std::to_string(needed) + " and no regeneration available");
        return stats_from_kernel(rho, omega, n_max);
    }

    quad::GridKernel current = rho;
    double half_width = std::max(rho.half_width, needed);
    if (half_width > rho.half_width) {
        const double density = (rho.size() - 1) / (2.0 * rho.half_width);
        int n = static_cast<int>(std::ceil(2.0 * half_width * density)) | 1;
        current = regenerate(half_width, std::max(n, 33));
    }

    NumberStats stats = stats_from_kernel(current, omega, n_max);
    for (int attempt = 0; attempt < 5; ++attempt) {
        const double wide_width = 1.3 * current.half_width;
        const double density = (current.size() - 1) / (2.0 * current.half_width);
        int wide_n = static_cast<int>(std::ceil(2.0 * wide_width * density)) | 1;
        quad::GridKernel wide = regenerate(wide_width, std::max(wide_n, 33));
        NumberStats wide_stats = stats_from_kernel(wide, omega, n_max);
        if (std::fabs(wide_stats.populations[n_max] - stats.populations[n_max]) <=
            1e-8)
            return stats;
        current = std::move(wide);
        stats = std::move(wide_stats);
    }
    throw WindowError("number_populations: top population did not converge");
}

NumberStats number_populations_pure(double c, double omega, int n_max) {
    if (omega <= 0.0) omega = omega_from_variance(qes::variance(c));
    check_orders(omega, n_max);

    const double var = qes::variance(c);
    double half_width =
        std::max(8.0 * std::sqrt(var), required_half_width(omega, n_max));

    auto overlaps = [&](double width) {
        const int n = std::max(513, static_cast<int>(std::ceil(width * 64.0)) | 1);
        const double h = 2.0 * width / (n - 1);
        std::vector<double> w = quad::simpson_weights(n, h);
        std::vector<double> col(n_max + 1);
        std::vector<double> acc(n_max + 1, 0.0);
        for (int i = 0; i < n; ++i) {
            const double x = -width + h * i;
            const double psi = qes::ground_psi(x, c);
            specfun::hermite_all(n_max, x, omega, col.data());
            for (int k = 0; k <= n_max; ++k) acc[k] += w[i] * col[k] * psi;
        }
        return acc;
    };

    std::vector<double> o = overlaps(half_width);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 5)
            throw WindowError("number_populations_pure: window did not converge");
        const double wider = 1.3 * half_width;
        std::vector<double> o2 = overlaps(wider);
        if (std::fabs(o2[n_max] * o2[n_max] - o[n_max] * o[n_max]) <= 1e-8) break;
        half_width = wider;
        o = std::move(o2);
    }

    NumberStats out;
    out.omega = omega;
    out.half_width = half_width;
    out.populations.resize(n_max + 1);
    double total = 0.0, mean = 0.0, mean2 = 0.0;
    for (int k = 0; k <= n_max; ++k) {
        const double p = o[k] * o[k];
        out.populations[k] = p;
        total += p;
        mean += k * p;
        mean2 += static_cast<double>(k) * k * p;
    }
    out.tail_mass = 1.0 - total;
    out.mean_n = mean;
    out.mean_n2 = mean2;
    return out;
}

double thermal_xi(double gamma, double beta) {
    if (!(gamma > 0.0) || beta < 0.0 || beta >= gamma)
        throw DomainError("thermal_xi: requires gamma > beta >= 0");
    const double alpha = std::sqrt(gamma * gamma - beta * beta);
    return beta / (gamma + alpha);
}

ThermalParams thermal_params(double gamma, double beta, ThermalConvention conv) {
    if (!(gamma > 0.0) || beta < 0.0 || beta >= gamma)
        throw DomainError("thermal_params: requires gamma > beta >= 0");
    ThermalParams out;
    out.convention = conv;
    out.omega_t = 2.0 * (gamma * gamma - beta * beta);
    out.s = conv == ThermalConvention::SqrtHalf ? std::sqrt(0.5 * out.omega_t)
                                                : 0.5 * std::sqrt(out.omega_t);
    if (beta == 0.0) {
        out.temperature = 0.0;
        out.mean_n = 0.0;
        return out;
    }
    out.temperature = out.s / std::log((gamma + out.s) / beta);
    out.mean_n = beta / (gamma - beta + out.s);
    return out;
}

KernelSpectrum diagonalize_kernel(const quad::GridKernel& rho) {
    KernelSpectrum out;
    out.eigenvalues = quad::kernel_spectrum(rho);
    for (double ev : out.eigenvalues) {
        out.purity += ev * ev;
        if (ev > 0.0) out.entropy -= ev * std::log(ev);
    }
    return out;
}

}  // namespace sxo::fock
