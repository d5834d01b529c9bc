#pragma once

#include <functional>
#include <vector>

#include "sxo/quadrature.hpp"

namespace sxo::fock {

// Frequency of the analysis oscillator matched to a target variance,
// omega = 1 / (2 var).
double omega_from_variance(double var);

inline constexpr int default_n_max = 60;
inline constexpr int hard_n_max = 128;

struct NumberStats {
    double omega = 0.0;
    std::vector<double> populations;  // p_0 .. p_{n_max}
    double tail_mass = 0.0;           // 1 - sum(populations)
    double mean_n = 0.0;
    double mean_n2 = 0.0;
    double half_width = 0.0;          // grid window that converged
};

// Number-basis populations p_n = <n| rho |n> of a grid kernel.  When a
// regenerate callback is provided the window is widened until p_{n_max}
// is stable to 1e-8 between refinements; without one an unconverged
// result raises WindowError.
NumberStats number_populations(
    const quad::GridKernel& rho, double omega, int n_max = default_n_max,
    const std::function<quad::GridKernel(double, int)>& regenerate = nullptr);

// Populations of the pure ground state at shape parameter c.  omega <= 0
// selects the variance-matched default.
NumberStats number_populations_pure(double c, double omega = 0.0,
                                    int n_max = default_n_max);

// Two conventions for the scale s entering the effective thermal
// parameters of a Gaussian kernel with Omega_T = 2 (gamma^2 - beta^2):
// HalfSqrt uses s = sqrt(Omega_T) / 2, SqrtHalf uses s = sqrt(Omega_T / 2).
enum class ThermalConvention { HalfSqrt, SqrtHalf };

struct ThermalParams {
    double omega_t = 0.0;
    double s = 0.0;
    double temperature = 0.0;
    double mean_n = 0.0;
    ThermalConvention convention = ThermalConvention::SqrtHalf;
};

// Effective temperature and occupation of the Gaussian kernel
// rho(x,x') ~ exp(-gamma (x^2 + x'^2)/2 + beta x x').
ThermalParams thermal_params(double gamma, double beta,
                             ThermalConvention conv = ThermalConvention::SqrtHalf);

// Geometric eigenvalue ladder (1 - xi) xi^n of the same Gaussian kernel.
double thermal_xi(double gamma, double beta);

struct KernelSpectrum {
    std::vector<double> eigenvalues;  // descending
    double purity = 0.0;              // sum of squares
    double entropy = 0.0;             // -sum p log p over positive eigenvalues
};

KernelSpectrum diagonalize_kernel(const quad::GridKernel& rho);

}  // namespace sxo::fock
