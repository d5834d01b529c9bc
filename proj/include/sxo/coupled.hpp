#pragma once

#include <map>
#include <utility>

#include "sxo/qes.hpp"
#include "sxo/quadrature.hpp"

namespace sxo::coupled {

// ---------------------------------------------------------------------------
// Pair of harmonic oscillators, coupled bilinearly.  The pair is specified
// by its normal-mode frequencies w1, w2 and the rotation angle theta that
// takes normal modes (y1, y2) to the physical coordinates (x1, x2).
// ---------------------------------------------------------------------------

struct HarmonicPair {
    double w1 = 1.0;
    double w2 = 2.0;
    double theta = 0.0;
};

struct HarmonicReduced {
    // Lab-frame couplings: H = (p1^2 + p2^2)/2
    //   + (omega1_sq x1^2 + omega2_sq x2^2)/2 + lambda x1 x2 / 2.
    double omega1_sq = 0.0;
    double omega2_sq = 0.0;
    double lambda = 0.0;
    // Reduced-state parameters.  inv_g = 1/(2g) is stored instead of g so
    // the uncoupled case theta = 0 stays finite (inv_g = 0).
    double tau1_sq = 0.0;
    double tau2_sq = 0.0;
    double inv_g = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    // Closed forms: variance = 1/(2(gamma - beta)),
    // purity = sqrt((gamma - beta)/(gamma + beta)).
    double variance = 0.0;
    double purity = 0.0;
};

HarmonicReduced harmonic_reduced(const HarmonicPair& p);

// rho(x, x') = sqrt((gamma - beta)/pi) exp(-gamma (x^2 + x'^2)/2 + beta x x').
double harmonic_kernel(double x, double xp, double gamma, double beta);
quad::GridKernel harmonic_grid(const HarmonicPair& p, int n = 513,
                               double half_width = 0.0);

// ---------------------------------------------------------------------------
// Pair of sextic oscillators in rescaled form, defined by the shape
// parameters of the two normal modes and the mixing angle.
// ---------------------------------------------------------------------------

struct AnharmonicPair {
    double c1 = 0.0;
    double c2 = 0.0;
    double theta = 0.0;
};

// Joint ground state psi0(y1) psi0(y2) expressed in physical coordinates,
// y1 = cos(theta) x1 + sin(theta) x2, y2 = -sin(theta) x1 + cos(theta) x2.
double joint_log_psi0_unnorm(double x1, double x2, const AnharmonicPair& p);
double joint_psi0(double x1, double x2, const AnharmonicPair& p);

// Reduced kernel of the first coordinate for two identical oscillators at
// theta = pi/4, in closed form (the trace integral reduces to a modified
// Bessel expression); normalized to unit trace.
double reduced_kernel_pi4(double x, double xp, double c);
quad::GridKernel reduced_identical_pi4(double c, int n = 513,
                                       double half_width = 0.0);

// Reduced kernel by numerical trace-out for arbitrary (c1, c2, theta).
quad::GridKernel reduced_numeric(const AnharmonicPair& p, int n = 257,
                                 double half_width = 0.0);

// ---------------------------------------------------------------------------
// Exact marginal moments and their two-term approximation.
// ---------------------------------------------------------------------------

struct VarianceRelation {
    double mode_var1 = 0.0;  // Var(y1)
    double mode_var2 = 0.0;  // Var(y2)
    double var_x1 = 0.0;     // cos^2 Var(y1) + sin^2 Var(y2)
    double var_x2 = 0.0;
    double sum_residual = 0.0;  // (var_x1 + var_x2) - (mode_var1 + mode_var2)
    // Interpolation form min + |dV| sin^2(theta) and its deviation from
    // var_x1; the form is exact when Var(y2) >= Var(y1).
    double prediction = 0.0;
    double deviation = 0.0;
};

VarianceRelation variance_relation(const AnharmonicPair& p);

// Exact even marginal moments of x1 (or x2) from the rotation algebra;
// order in {2, 4}.
double marginal_moment(int order, const AnharmonicPair& p, int which = 1);

// Two-term interpolation estimate of the marginal moment,
// min{mu(y1), mu(y2)} + |mu(y2) - mu(y1)| sin^2(theta).  degraded is set
// when the two shape parameters are close (|c1 - c2| < 1) but not equal,
// where the estimate is known to lose accuracy.
struct ApproxMoment {
    double value = 0.0;
    bool degraded = false;
};

ApproxMoment approx_marginal_moment(int order, const AnharmonicPair& p,
                                    int which = 1);

// ---------------------------------------------------------------------------
// Polynomial expansion of the coupled potential in physical coordinates.
// ---------------------------------------------------------------------------

struct CoupledExpansion {
    // Coefficient of x1^i x2^j, for total degree i + j in {2, 4, 6}.
    std::map<std::pair<int, int>, double> lambda;
    double constant = 0.0;  // -(b1 + b2)
    double p = 0.0;         // cos^2(theta)
    // The x1^2 / x2^2 pair mixes the single-oscillator quadratic
    // couplings q_i = b_i^2 - 3 a_i through ((p, 1-p), (1-p, p)); the q_i
    // are recovered by inverting that matrix whenever p != 1/2.
    double q1 = 0.0;
    double q2 = 0.0;
    bool mixing_recoverable = false;
};

CoupledExpansion expand_coupled(const qes::SexticParams& o1,
                                const qes::SexticParams& o2, double theta);

}  // namespace sxo::coupled
