#pragma once

#include <string>
#include <vector>

namespace sxo::qes {

// Parameters of the unscaled sextic potential
//   V(y; a, b) = a^2 y^6 + 2 a b y^4 + [b^2 - a (4n + 2k + 3)] y^2 - b (1 + 2k)
// restricted throughout to the (n, k) = (0, 0) member, whose ground state
// is known in closed form at zero energy.
struct SexticParams {
    double a = 1.0;
    double b = 0.0;
};

enum class WellShape { Single, Double, Triple };

// Dimensionless shape parameter c = b / sqrt(a); a must be positive.
double shape_parameter(const SexticParams& p);

// Potential in rescaled form, V(y; c) = y^6 + 2 c y^4 + (c^2 - 3) y^2 - c.
double potential(double y, double c);
double potential_unscaled(double y, const SexticParams& p);

// Single for c >= sqrt(3), double well for -sqrt(3) <= c < sqrt(3),
// triple for c < -sqrt(3).
WellShape classify_well(double c);
const char* well_name(WellShape s);

// Number of stationary points of V(.; c): 1, 3, or 5.
int count_extrema(double c);

// Ground-state data.  psi0(y) = norm_a(c) * exp(-y^4/4 - c y^2/2).
// log_norm_a stays finite where norm_a itself underflows (deep wells).
double norm_a(double c);
double log_norm_a(double c);
double log_psi0_unnorm(double y, double c);
double ground_psi(double y, double c);
double ground_density(double y, double c);

// Even raw moments <y^{2m}> of the ground-state density, order = 2m.
// Closed-form evaluation in three branches of c; orders up to
// max_moment_order are supported.  Odd orders are zero by parity.
inline constexpr int max_moment_order = 32;
double raw_moment(int order, double c);
// Same moment through adaptive quadrature, used for cross-checks.
double raw_moment_quad(int order, double c);

double variance(double c);

// Excess moments nu_{2m} = mu_{2m} / sigma^{2m} - (2m-1)!! with
// sigma^2 = variance, and their successive ratios
// R_m = nu_{2(m+1)} / nu_{2m}.  moment_ratio throws DomainError when the
// denominator vanishes.
double excess_moment(int order, double c);
double moment_ratio(int m, double c);

// Conversion between rescaled and unscaled moments:
// <y_unscaled^{2m}> = <y^{2m}> / a^{m/2}.
double unscale_moment(double moment_scaled, int order, double a);

struct MomentReport {
    double c = 0.0;
    double variance = 0.0;
    std::vector<int> orders;
    std::vector<double> raw;
    std::vector<double> excess;
    std::vector<double> ratios;  // ratios[i] = nu_{orders[i+1]} / nu_{orders[i]}
};

MomentReport moment_report(double c, const std::vector<int>& orders);

}  // namespace sxo::qes
