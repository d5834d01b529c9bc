#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "sxo/coupled.hpp"
#include "sxo/errors.hpp"
#include "sxo/fock.hpp"
#include "sxo/husimi.hpp"
#include "sxo/qes.hpp"
#include "sxo/sampler.hpp"
#include "sxo/version.hpp"

namespace py = pybind11;

using namespace sxo;

namespace {

fock::ThermalConvention convention_from_name(const std::string& name) {
    if (name == "sqrt_half") return fock::ThermalConvention::SqrtHalf;
    if (name == "half_sqrt") return fock::ThermalConvention::HalfSqrt;
    throw DomainError("convention must be 'sqrt_half' or 'half_sqrt'");
}

const char* convention_name(fock::ThermalConvention c) {
    return c == fock::ThermalConvention::SqrtHalf ? "sqrt_half" : "half_sqrt";
}

sampler::Source source_from_name(const std::string& name) {
    if (name == "pure") return sampler::Source::Pure;
    if (name == "mixed_identical_pi4") return sampler::Source::MixedIdenticalPi4;
    if (name == "mixed_general") return sampler::Source::MixedGeneral;
    if (name == "harmonic") return sampler::Source::Harmonic;
    throw DomainError("unknown source '" + name + "'");
}

// Purity of the reduced state of one member of an identical pair at
// theta = pi/4, corrected for the grid's deviation from unit trace.
double pi4_purity(double c, int n, double half_width) {
    const quad::GridKernel k = coupled::reduced_identical_pi4(c, n, half_width);
    const double t = k.trace();
    return k.purity() / (t * t);
}

py::dict sample_dict(const sampler::DisorderSpec& spec) {
    const sampler::SampleSet set = sampler::sample(spec);
    py::dict out;
    out["source"] = sampler::source_name(set.spec.source);
    out["observable"] = sampler::observable_name(set.spec.observable);
    if (set.spec.observable == sampler::Observable::Quadrature) {
        out["values"] = set.quadrature;
        out["ks"] = set.ks;
        out["mean"] = set.moments.mean;
        out["m2"] = set.moments.m2;
        out["m4"] = set.moments.m4;
        out["se_m2"] = set.moments.se_m2;
        out["se_m4"] = set.moments.se_m4;
    } else {
        out["numbers"] = set.number;
        out["populations"] = set.populations;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_sxo, m) {
    m.doc() = "Sextic-oscillator ground states, phase-space distributions, "
              "and disorder sampling";
    m.attr("__version__") = std::string(version);

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<CapabilityError>(m, "CapabilityError",
                                            PyExc_NotImplementedError);
    py::register_exception<AccuracyError>(m, "AccuracyError",
                                          PyExc_ArithmeticError);
    py::register_exception<IntegrityError>(m, "IntegrityError",
                                           PyExc_ValueError);

    // Potential and well shape.
    m.def("potential", &qes::potential, py::arg("y"), py::arg("c"),
          "Rescaled sextic potential V(y; c).");
    m.def(
        "well_name",
        [](double c) { return std::string(qes::well_name(qes::classify_well(c))); },
        py::arg("c"), "Well class at shape parameter c: single, double, triple.");
    m.def("count_extrema", &qes::count_extrema, py::arg("c"),
          "Number of stationary points of the potential.");
    m.def(
        "shape_parameter",
        [](double a, double b) { return qes::shape_parameter({a, b}); },
        py::arg("a"), py::arg("b"), "c = b / sqrt(a) for the unscaled form.");

    // Ground state and moments.
    m.def("ground_psi", &qes::ground_psi, py::arg("y"), py::arg("c"));
    m.def("ground_density", &qes::ground_density, py::arg("y"), py::arg("c"));
    m.def("variance", &qes::variance, py::arg("c"));
    m.def("raw_moment", &qes::raw_moment, py::arg("order"), py::arg("c"),
          "Closed-form even raw moment <y^order>.");
    m.def("raw_moment_quad", &qes::raw_moment_quad, py::arg("order"),
          py::arg("c"), "Same moment through adaptive quadrature.");
    m.def("excess_moment", &qes::excess_moment, py::arg("order"), py::arg("c"));
    m.def("moment_ratio", &qes::moment_ratio, py::arg("m"), py::arg("c"));

    py::class_<qes::MomentReport>(m, "MomentReport")
        .def_readonly("c", &qes::MomentReport::c)
        .def_readonly("variance", &qes::MomentReport::variance)
        .def_readonly("orders", &qes::MomentReport::orders)
        .def_readonly("raw", &qes::MomentReport::raw)
        .def_readonly("excess", &qes::MomentReport::excess)
        .def_readonly("ratios", &qes::MomentReport::ratios);
    m.def("moment_report", &qes::moment_report, py::arg("c"), py::arg("orders"));

    // Phase-space overlap and Husimi function.
    m.def(
        "gc",
        [](double a1, double a2, double c) { return husimi::gc({a1, a2}, c); },
        py::arg("a1"), py::arg("a2"), py::arg("c"),
        "Coherent-state overlap integral G_c(alpha).");
    m.def("gc_origin", &husimi::gc_origin, py::arg("c"));
    m.def(
        "q_pure",
        [](double a1, double a2, double c) {
            return husimi::q_pure({a1, a2}, c);
        },
        py::arg("a1"), py::arg("a2"), py::arg("c"),
        "Husimi function of the pure ground state.");

    py::class_<husimi::ZeroScan>(m, "ZeroScan")
        .def_readonly("c", &husimi::ZeroScan::c)
        .def_readonly("a2_max", &husimi::ZeroScan::a2_max)
        .def_readonly("step_used", &husimi::ZeroScan::step_used)
        .def_readonly("zeros", &husimi::ZeroScan::zeros)
        .def_readonly("trailing_density", &husimi::ZeroScan::trailing_density);
    m.def("scan_zeros", &husimi::scan_zeros, py::arg("c"), py::arg("a2_max"),
          py::arg("initial_step") = 0.01, py::arg("max_halvings") = 6,
          "Zeros of G_c along the momentum axis.");

    // Number-basis populations and thermal parameters.
    py::class_<fock::NumberStats>(m, "NumberStats")
        .def_readonly("omega", &fock::NumberStats::omega)
        .def_readonly("populations", &fock::NumberStats::populations)
        .def_readonly("tail_mass", &fock::NumberStats::tail_mass)
        .def_readonly("mean_n", &fock::NumberStats::mean_n)
        .def_readonly("mean_n2", &fock::NumberStats::mean_n2)
        .def_readonly("half_width", &fock::NumberStats::half_width);
    m.def("number_populations_pure", &fock::number_populations_pure,
          py::arg("c"), py::arg("omega") = 0.0,
          py::arg("n_max") = fock::default_n_max,
          "Populations of the pure ground state; omega <= 0 matches the "
          "variance.");

    py::class_<fock::ThermalParams>(m, "ThermalParams")
        .def_readonly("omega_t", &fock::ThermalParams::omega_t)
        .def_readonly("s", &fock::ThermalParams::s)
        .def_readonly("temperature", &fock::ThermalParams::temperature)
        .def_readonly("mean_n", &fock::ThermalParams::mean_n)
        .def_property_readonly("convention", [](const fock::ThermalParams& p) {
            return std::string(convention_name(p.convention));
        });
    m.def(
        "thermal_params",
        [](double gamma, double beta, const std::string& convention) {
            return fock::thermal_params(gamma, beta,
                                        convention_from_name(convention));
        },
        py::arg("gamma"), py::arg("beta"),
        py::arg("convention") = std::string("sqrt_half"),
        "Effective temperature and occupation of a Gaussian kernel.");
    m.def("thermal_xi", &fock::thermal_xi, py::arg("gamma"), py::arg("beta"),
          "Ratio of the geometric eigenvalue ladder.");

    // Coupled pairs.
    py::class_<coupled::HarmonicReduced>(m, "HarmonicReduced")
        .def_readonly("omega1_sq", &coupled::HarmonicReduced::omega1_sq)
        .def_readonly("omega2_sq", &coupled::HarmonicReduced::omega2_sq)
        .def_readonly("lambda_", &coupled::HarmonicReduced::lambda)
        .def_readonly("tau1_sq", &coupled::HarmonicReduced::tau1_sq)
        .def_readonly("tau2_sq", &coupled::HarmonicReduced::tau2_sq)
        .def_readonly("inv_g", &coupled::HarmonicReduced::inv_g)
        .def_readonly("gamma", &coupled::HarmonicReduced::gamma)
        .def_readonly("beta", &coupled::HarmonicReduced::beta)
        .def_readonly("variance", &coupled::HarmonicReduced::variance)
        .def_readonly("purity", &coupled::HarmonicReduced::purity);
    m.def(
        "harmonic_reduced",
        [](double w1, double w2, double theta) {
            return coupled::harmonic_reduced({w1, w2, theta});
        },
        py::arg("w1") = 1.0, py::arg("w2") = 2.0, py::arg("theta") = 0.0,
        "Reduced state of one member of a coupled harmonic pair.");

    py::class_<coupled::VarianceRelation>(m, "VarianceRelation")
        .def_readonly("mode_var1", &coupled::VarianceRelation::mode_var1)
        .def_readonly("mode_var2", &coupled::VarianceRelation::mode_var2)
        .def_readonly("var_x1", &coupled::VarianceRelation::var_x1)
        .def_readonly("var_x2", &coupled::VarianceRelation::var_x2)
        .def_readonly("sum_residual", &coupled::VarianceRelation::sum_residual)
        .def_readonly("prediction", &coupled::VarianceRelation::prediction)
        .def_readonly("deviation", &coupled::VarianceRelation::deviation);
    m.def(
        "variance_relation",
        [](double c1, double c2, double theta) {
            return coupled::variance_relation({c1, c2, theta});
        },
        py::arg("c1"), py::arg("c2"), py::arg("theta"));

    m.def(
        "marginal_moment",
        [](int order, double c1, double c2, double theta, int which) {
            return coupled::marginal_moment(order, {c1, c2, theta}, which);
        },
        py::arg("order"), py::arg("c1"), py::arg("c2"), py::arg("theta"),
        py::arg("which") = 1, "Exact even marginal moment of x1 or x2.");
    m.def(
        "approx_marginal_moment",
        [](int order, double c1, double c2, double theta, int which) {
            const auto a =
                coupled::approx_marginal_moment(order, {c1, c2, theta}, which);
            return py::make_tuple(a.value, a.degraded);
        },
        py::arg("order"), py::arg("c1"), py::arg("c2"), py::arg("theta"),
        py::arg("which") = 1,
        "Two-term interpolation estimate, returned as (value, degraded).");

    m.def("pi4_purity", &pi4_purity, py::arg("c"), py::arg("n") = 513,
          py::arg("half_width") = 0.0,
          "Purity of the reduced state of an identical pair at theta = pi/4.");

    py::class_<coupled::CoupledExpansion>(m, "CoupledExpansion")
        .def_property_readonly("coefficients",
                               [](const coupled::CoupledExpansion& e) {
                                   return e.lambda;
                               })
        .def_readonly("constant", &coupled::CoupledExpansion::constant)
        .def_readonly("p", &coupled::CoupledExpansion::p)
        .def_readonly("q1", &coupled::CoupledExpansion::q1)
        .def_readonly("q2", &coupled::CoupledExpansion::q2)
        .def_readonly("mixing_recoverable",
                      &coupled::CoupledExpansion::mixing_recoverable);
    m.def(
        "expand_coupled",
        [](double a1, double b1, double a2, double b2, double theta) {
            return coupled::expand_coupled({a1, b1}, {a2, b2}, theta);
        },
        py::arg("a1"), py::arg("b1"), py::arg("a2"), py::arg("b2"),
        py::arg("theta"),
        "Polynomial expansion of the coupled potential in physical "
        "coordinates.");

    // Disorder sampling.
    m.def(
        "sample",
        [](const std::string& source, const std::string& observable, double c,
           double c1, double c2, double theta, double w1, double w2,
           double omega, long count, std::uint64_t seed) {
            sampler::DisorderSpec spec;
            spec.source = source_from_name(source);
            spec.observable = observable == "number"
                                  ? sampler::Observable::Number
                                  : sampler::Observable::Quadrature;
            if (observable != "number" && observable != "quadrature") {
                throw DomainError("observable must be 'quadrature' or 'number'");
            }
            spec.c = c;
            spec.pair = {c1, c2, theta};
            spec.harmonic = {w1, w2, theta};
            spec.omega = omega;
            spec.count = count;
            spec.seed = seed;
            return sample_dict(spec);
        },
        py::arg("source"), py::arg("observable") = std::string("quadrature"),
        py::arg("c") = 0.0, py::arg("c1") = 0.0, py::arg("c2") = 0.0,
        py::arg("theta") = 0.0, py::arg("w1") = 1.0, py::arg("w2") = 2.0,
        py::arg("omega") = 0.0, py::arg("count") = 1000, py::arg("seed") = 0,
        "Seeded draws of a single-oscillator observable; returns a dict "
        "with the samples and summary statistics.");
}
