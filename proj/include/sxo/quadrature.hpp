#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace sxo::quad {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

struct Options {
    double rel_tol = 1e-11;
    double abs_tol = 1e-14;
    int max_intervals = 5000;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    // Truncation point used by the whole-line routines; 0 for finite ranges.
    double y_max = 0.0;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b].  Throws AccuracyError if the
// interval budget runs out before the tolerances are met.
Result integrate(const Fn1& f, double a, double b, const Options& opt = {});

// Integral over the whole real line of a function whose magnitude is
// bounded by `envelope`.  The range is truncated where the envelope falls
// below 1e-18 of its peak; the truncation point is reported in y_max.
Result integrate_whole_line(const Fn1& f, const Fn1& envelope, const Options& opt = {});

// Integral of f(y) containing an oscillatory factor of angular frequency k
// (period 2*pi/k).  [a, b] is split at half-period boundaries and each
// panel is integrated adaptively with an absolute tolerance tied to
// `scale`, the magnitude of the non-oscillatory envelope.  k = 0 falls
// back to plain integration.
Result integrate_oscillatory(const Fn1& f, double k, double a, double b,
                             double scale, const Options& opt = {});

// Tensor-product integral of f over [ax, bx] x [ay, by]: the outer
// variable is integrated adaptively, each outer evaluation integrating the
// inner variable adaptively.
Result integrate_2d(const Fn2& f, double ax, double bx, double ay, double by,
                    const Options& opt = {});

// A symmetric kernel rho(x, x') sampled on a uniform grid with composite
// Simpson weights, the discrete stand-in for a one-particle density
// operator.
struct GridKernel {
    std::vector<double> nodes;
    std::vector<double> weights;
    Eigen::MatrixXd values;
    double half_width = 0.0;
    // |trace_N - trace_{2N-1}| / |trace_{2N-1}| from grid refinement,
    // 0 when the estimate was not requested.
    double discretization_error = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
    double trace() const;
    // Tr[rho^2] via the weighted double sum.
    double purity() const;
    // Tr[rho x^{order}] along the diagonal.
    double diag_moment(int order) const;
    // Scales values so that trace() == 1.
    void normalize();
};

// Composite Simpson weights for N (odd, >= 3) uniform nodes of spacing h.
std::vector<double> simpson_weights(int n, double h);

// Samples k on [-half_width, half_width] with n nodes (odd, >= 33).  When
// estimate_error is set, the trace is compared against a 2N-1 grid.
GridKernel discretize_kernel(const Fn2& k, double half_width, int n,
                             bool estimate_error = true);

// Orthonormal-basis spectrum of a GridKernel: eigenvalues of
// sqrt(w) rho sqrt(w), descending.
std::vector<double> kernel_spectrum(const GridKernel& rho);

}  // namespace sxo::quad
