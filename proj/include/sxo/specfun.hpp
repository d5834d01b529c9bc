#pragma once

#include <cmath>

namespace sxo::specfun {

// Gamma and log-gamma for real x, poles rejected.
double gamma_fn(double x);
double ln_gamma(double x);

// n!! for n >= -1, with (-1)!! = 0!! = 1.  Exact in integer arithmetic for
// n <= 33, log-gamma based beyond that.
double double_factorial(int n);

// A value represented as scaled_value * exp(log_scale), so that quantities
// like e^{z} K_nu(z) stay finite for large |z|.
struct ScaledValue {
    double scaled_value = 0.0;
    double log_scale = 0.0;

    double value() const { return scaled_value * std::exp(log_scale); }
    double log_abs() const { return std::log(std::fabs(scaled_value)) + log_scale; }
};

// Modified Bessel functions.  The scaled_value fields hold e^{-z} I_nu(z)
// and e^{+z} K_nu(z) respectively; log_scale restores the plain function.
// Negative orders of I are handled through the reflection identity
// I_{-nu} = I_nu + (2/pi) sin(pi nu) K_nu.  Requires z > 0.
ScaledValue bessel_i_scaled(double nu, double z);
ScaledValue bessel_k_scaled(double nu, double z);

// Confluent hypergeometric 1F1(a; b; z).  The scaled variant returns
// e^{-z} 1F1(a; b; z) for z >= 0 (as scaled_value with log_scale = z),
// which stays representable far beyond the overflow point of the plain
// function.  Supports the parameter ranges arising from half-integer
// moment formulas: a > 0, b in {1/2, 3/2}.
double kummer_1f1(double a, double b, double z);
ScaledValue kummer_1f1_scaled(double a, double b, double z);

// Tricomi confluent hypergeometric U(a; b; z) for a > 0, z > 0, evaluated
// through its Laplace integral representation.
double tricomi_u(double a, double b, double z);

// Normalized harmonic-oscillator eigenfunction of frequency omega at x,
// phi_n(x) = (omega/pi)^{1/4} H_n(sqrt(omega) x) e^{-omega x^2/2} / sqrt(2^n n!).
// hermite_all fills out[0..n_max] in a single upward recurrence.
double hermite_normalized(int n, double x, double omega);
void hermite_all(int n_max, double x, double omega, double* out);

inline constexpr int hermite_max_order = 128;

}  // namespace sxo::specfun
