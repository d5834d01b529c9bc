#pragma once

#include <complex>
#include <vector>

#include "sxo/quadrature.hpp"

namespace sxo::husimi {

// Phase-space point; a1 is the position-like coordinate, a2 the
// momentum-like one.
struct PhasePoint {
    double a1 = 0.0;
    double a2 = 0.0;
};

// Overlap integral between the ground state and a coherent state centered
// at alpha, up to the Gaussian prefactor:
//   G_c(alpha) = int exp(-y^4/4 - (c+1) y^2/2 + sqrt(2) a1 y) e^{i sqrt(2) a2 y} dy.
// Purely real on the a2 = 0 and a1 = 0 axes.
std::complex<double> gc(const PhasePoint& p, double c);

// Value at the origin in closed form, used as a cross-check and as the
// scale reference for zero scans.
double gc_origin(double c);

// Husimi function of the pure ground state,
//   Q(alpha) = norm_a(c)^2 / pi^{3/2} * exp(-2 a1^2) |G_c(alpha)|^2.
double q_pure(const PhasePoint& p, double c);

// Husimi function of a mixed state given by a grid kernel.  Throws
// WindowError when the coherent state leaks outside the grid.
double q_mixed(const PhasePoint& p, const quad::GridKernel& rho);

// Zero scan of G_c along the imaginary axis (a1 = 0, a2 in [0, a2_max]).
// Sign changes are located by bisection; the step is halved until the
// zero count stabilizes twice in a row (at most max_halvings halvings,
// else AccuracyError).
struct ZeroScan {
    double c = 0.0;
    double a2_max = 0.0;
    double step_used = 0.0;
    std::vector<double> zeros;
    // Zeros per unit a2 over the trailing half of the window.
    double trailing_density = 0.0;
};

ZeroScan scan_zeros(double c, double a2_max, double initial_step = 0.01,
                    int max_halvings = 6);

}  // namespace sxo::husimi
