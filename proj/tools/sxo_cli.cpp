#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sxo/coupled.hpp"
#include "sxo/errors.hpp"
#include "sxo/fock.hpp"
#include "sxo/husimi.hpp"
#include "sxo/io.hpp"
#include "sxo/qes.hpp"
#include "sxo/sampler.hpp"
#include "sxo/version.hpp"

namespace {

using nlohmann::json;

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ =
        std::chrono::steady_clock::now();
};

void emit(const std::string& out, const sxo::io::Table& table, json meta,
          const Timer& timer) {
    const auto path = sxo::io::resolve_out(out);
    meta["wall_time_seconds"] = timer.seconds();
    sxo::io::write_csv(path, table);
    sxo::io::write_sidecar(path, std::move(meta));
    std::cout << "wrote " << path.string() << " (+ .json sidecar)\n";
}

std::vector<int> parse_orders(const std::string& text) {
    // "4:12" -> {4, 6, 8, 10, 12}; "4,8,12" -> {4, 8, 12}; "8" -> {8}.
    std::vector<int> orders;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(text.substr(colon + 1));
        for (int o = lo; o <= hi; o += 2) orders.push_back(o);
    } else {
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            orders.push_back(std::stoi(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
    }
    if (orders.empty()) throw sxo::DomainError("no orders given");
    return orders;
}

// ---------------------------------------------------------------------------
// Subcommand implementations.
// ---------------------------------------------------------------------------

int run_potential(double c, double y_max, int points, const std::string& out) {
    Timer timer;
    sxo::io::Table t;
    t.header = {"y", "potential"};
    for (int i = 0; i < points; ++i) {
        const double y = -y_max + 2.0 * y_max * i / (points - 1);
        t.rows.push_back({y, sxo::qes::potential(y, c)});
    }
    const auto shape = sxo::qes::classify_well(c);
    std::cout << "c = " << c << ": " << sxo::qes::well_name(shape)
              << " well, " << sxo::qes::count_extrema(c) << " stationary points\n";
    emit(out, t,
         json{{"command", "potential"},
              {"c", c},
              {"well", sxo::qes::well_name(shape)},
              {"extrema", sxo::qes::count_extrema(c)},
              {"y_max", y_max},
              {"points", points}},
         timer);
    return 0;
}

int run_moments(double c, const std::string& orders_text, const std::string& out) {
    Timer timer;
    const std::vector<int> orders = parse_orders(orders_text);
    const sxo::qes::MomentReport rep = sxo::qes::moment_report(c, orders);

    sxo::io::Table t;
    t.header = {"order", "raw_moment", "excess_moment", "ratio_to_next"};
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const double ratio = i + 1 < orders.size()
                                 ? rep.ratios[i]
                                 : std::numeric_limits<double>::quiet_NaN();
        t.rows.push_back({static_cast<double>(orders[i]), rep.raw[i],
                          rep.excess[i], ratio});
    }
    std::cout << "c = " << c << ": variance = " << rep.variance << "\n";
    emit(out, t,
         json{{"command", "moments"},
              {"c", c},
              {"variance", rep.variance},
              {"orders", orders}},
         timer);
    return 0;
}

int run_qfunc(double c, const std::string& source, double a1_max, double a2_max,
              int points, const std::string& out) {
    Timer timer;
    sxo::io::Table t;
    t.header = {"a1", "a2", "q"};

    if (source == "pure") {
        for (int i = 0; i < points; ++i) {
            const double a1 = -a1_max + 2.0 * a1_max * i / (points - 1);
            for (int j = 0; j < points; ++j) {
                const double a2 = -a2_max + 2.0 * a2_max * j / (points - 1);
                t.rows.push_back({a1, a2, sxo::husimi::q_pure({a1, a2}, c)});
            }
        }
    } else if (source == "mixed-pi4") {
        const auto rho = sxo::coupled::reduced_identical_pi4(c);
        for (int i = 0; i < points; ++i) {
            const double a1 = -a1_max + 2.0 * a1_max * i / (points - 1);
            for (int j = 0; j < points; ++j) {
                const double a2 = -a2_max + 2.0 * a2_max * j / (points - 1);
                t.rows.push_back({a1, a2, sxo::husimi::q_mixed({a1, a2}, rho)});
            }
        }
    } else {
        throw sxo::DomainError("qfunc: source must be pure or mixed-pi4");
    }

    std::cout << "origin value " << sxo::husimi::gc_origin(c)
              << " (closed form), grid " << points << "x" << points << "\n";
    emit(out, t,
         json{{"command", "qfunc"},
              {"c", c},
              {"source", source},
              {"a1_max", a1_max},
              {"a2_max", a2_max},
              {"points", points},
              {"gc_origin_closed", sxo::husimi::gc_origin(c)}},
         timer);
    return 0;
}

int run_gc_scan(double c, double a2_max, double step, const std::string& out) {
    Timer timer;
    const sxo::husimi::ZeroScan scan = sxo::husimi::scan_zeros(c, a2_max, step);

    sxo::io::Table t;
    t.header = {"index", "a2_zero"};
    for (std::size_t i = 0; i < scan.zeros.size(); ++i)
        t.rows.push_back({static_cast<double>(i), scan.zeros[i]});

    std::cout << "c = " << c << ": " << scan.zeros.size() << " zeros on [0, "
              << a2_max << "], trailing density " << scan.trailing_density
              << " per unit\n";
    emit(out, t,
         json{{"command", "gc-scan"},
              {"c", c},
              {"a2_max", a2_max},
              {"zero_count", scan.zeros.size()},
              {"step_used", scan.step_used},
              {"trailing_density", scan.trailing_density}},
         timer);
    return 0;
}

int run_fock(double c, const std::string& source, double omega, int n_max,
             const std::string& out) {
    Timer timer;
    sxo::fock::NumberStats stats;
    if (source == "pure") {
        stats = sxo::fock::number_populations_pure(c, omega, n_max);
    } else if (source == "mixed-pi4") {
        const double w =
            omega > 0.0 ? omega
                        : sxo::fock::omega_from_variance(sxo::qes::variance(c));
        auto rho = sxo::coupled::reduced_identical_pi4(c);
        auto regen = [c](double width, int n) {
            return sxo::coupled::reduced_identical_pi4(c, std::max(n, 33) | 1,
                                                       width);
        };
        stats = sxo::fock::number_populations(rho, w, n_max, regen);
    } else {
        throw sxo::DomainError("fock: source must be pure or mixed-pi4");
    }

    sxo::io::Table t;
    t.header = {"n", "population"};
    for (std::size_t n = 0; n < stats.populations.size(); ++n)
        t.rows.push_back({static_cast<double>(n), stats.populations[n]});

    std::cout << "omega = " << stats.omega << ", tail mass " << stats.tail_mass
              << ", <n> = " << stats.mean_n << "\n";
    emit(out, t,
         json{{"command", "fock"},
              {"c", c},
              {"source", source},
              {"omega", stats.omega},
              {"n_max", n_max},
              {"tail_mass", stats.tail_mass},
              {"mean_n", stats.mean_n},
              {"mean_n_squared", stats.mean_n2},
              {"half_width", stats.half_width}},
         timer);
    return 0;
}

int run_harmonic(double w1, double w2, double theta, const std::string& out) {
    Timer timer;
    const sxo::coupled::HarmonicReduced r =
        sxo::coupled::harmonic_reduced({w1, w2, theta});
    const auto tb = sxo::fock::thermal_params(
        r.gamma, r.beta, sxo::fock::ThermalConvention::SqrtHalf);
    const auto ta = sxo::fock::thermal_params(
        r.gamma, r.beta, sxo::fock::ThermalConvention::HalfSqrt);
    const double xi = sxo::fock::thermal_xi(r.gamma, r.beta);

    sxo::io::Table t;
    t.header = {"gamma",       "beta",       "variance",   "purity",
                "omega_t",     "xi",         "temp_sqrt_half",
                "mean_n_sqrt_half", "temp_half_sqrt", "mean_n_half_sqrt"};
    t.rows.push_back({r.gamma, r.beta, r.variance, r.purity, tb.omega_t, xi,
                      tb.temperature, tb.mean_n, ta.temperature, ta.mean_n});

    std::cout << "gamma = " << r.gamma << ", beta = " << r.beta
              << ", variance = " << r.variance << ", purity = " << r.purity
              << "\n";
    emit(out, t,
         json{{"command", "harmonic"},
              {"w1", w1},
              {"w2", w2},
              {"theta", theta},
              {"lab_couplings",
               {{"omega1_sq", r.omega1_sq},
                {"omega2_sq", r.omega2_sq},
                {"lambda", r.lambda}}},
              {"default_convention", "sqrt_half"}},
         timer);
    return 0;
}

int run_coupled_reduce(double c1, double c2, double theta, bool with_purity,
                       const std::string& out) {
    Timer timer;
    const sxo::coupled::AnharmonicPair pair{c1, c2, theta};
    const auto vr = sxo::coupled::variance_relation(pair);
    const double mu4 = sxo::coupled::marginal_moment(4, pair);
    const auto approx4 = sxo::coupled::approx_marginal_moment(4, pair);

    double purity = std::numeric_limits<double>::quiet_NaN();
    if (with_purity) {
        const bool identical_pi4 =
            c1 == c2 && std::fabs(theta - std::numbers::pi / 4.0) < 1e-12;
        const auto rho = identical_pi4
                             ? sxo::coupled::reduced_identical_pi4(c1)
                             : sxo::coupled::reduced_numeric(pair);
        purity = rho.purity();
    }

    sxo::io::Table t;
    t.header = {"mode_var1", "mode_var2", "var_x1",    "var_x2",
                "sum_residual", "prediction", "deviation", "mu4_x1",
                "mu4_x1_approx", "approx_degraded", "purity"};
    t.rows.push_back({vr.mode_var1, vr.mode_var2, vr.var_x1, vr.var_x2,
                      vr.sum_residual, vr.prediction, vr.deviation, mu4,
                      approx4.value, approx4.degraded ? 1.0 : 0.0, purity});

    std::cout << "var(x1) = " << vr.var_x1 << ", var(x2) = " << vr.var_x2
              << ", interpolation deviation = " << vr.deviation << "\n";
    emit(out, t,
         json{{"command", "coupled reduce"},
              {"c1", c1},
              {"c2", c2},
              {"theta", theta},
              {"purity_included", with_purity}},
         timer);
    return 0;
}

int run_coupled_expand(double a1, double b1, double a2, double b2, double theta,
                       const std::string& out) {
    Timer timer;
    const auto exp = sxo::coupled::expand_coupled({a1, b1}, {a2, b2}, theta);

    sxo::io::Table t;
    t.header = {"i", "j", "coefficient"};
    for (const auto& [ij, value] : exp.lambda)
        t.rows.push_back({static_cast<double>(ij.first),
                          static_cast<double>(ij.second), value});

    std::cout << "constant term " << exp.constant << ", p = cos^2(theta) = "
              << exp.p;
    if (exp.mixing_recoverable)
        std::cout << ", recovered q1 = " << exp.q1 << ", q2 = " << exp.q2;
    std::cout << "\n";
    emit(out, t,
         json{{"command", "coupled expand"},
              {"a1", a1},
              {"b1", b1},
              {"a2", a2},
              {"b2", b2},
              {"theta", theta},
              {"constant", exp.constant},
              {"p", exp.p},
              {"mixing_recoverable", exp.mixing_recoverable},
              {"q1", exp.q1},
              {"q2", exp.q2}},
         timer);
    return 0;
}

int run_sample(const std::string& source, const std::string& observable,
               double c, double c1, double c2, double theta, double w1,
               double w2, double omega, long count, std::uint64_t seed,
               const std::string& out) {
    Timer timer;
    sxo::sampler::DisorderSpec spec;
    if (source == "pure")
        spec.source = sxo::sampler::Source::Pure;
    else if (source == "mixed-pi4")
        spec.source = sxo::sampler::Source::MixedIdenticalPi4;
    else if (source == "mixed-general")
        spec.source = sxo::sampler::Source::MixedGeneral;
    else if (source == "harmonic")
        spec.source = sxo::sampler::Source::Harmonic;
    else
        throw sxo::DomainError("sample: unknown source " + source);

    if (observable == "quadrature")
        spec.observable = sxo::sampler::Observable::Quadrature;
    else if (observable == "number")
        spec.observable = sxo::sampler::Observable::Number;
    else
        throw sxo::DomainError("sample: unknown observable " + observable);

    spec.c = c;
    spec.pair = {c1, c2, theta};
    spec.harmonic = {w1, w2, theta};
    spec.omega = omega;
    spec.count = count;
    spec.seed = seed;

    const sxo::sampler::SampleSet set = sxo::sampler::sample(spec);

    sxo::io::Table t;
    json meta{{"command", "sample"},
              {"source", source},
              {"observable", observable},
              {"count", count},
              {"seed", seed}};
    if (spec.observable == sxo::sampler::Observable::Quadrature) {
        t.header = {"index", "value"};
        for (long i = 0; i < count; ++i)
            t.rows.push_back({static_cast<double>(i), set.quadrature[i]});
        meta["ks_distance"] = set.ks;
        meta["empirical"] = {{"mean", set.moments.mean},
                             {"m2", set.moments.m2},
                             {"m4", set.moments.m4},
                             {"se_m2", set.moments.se_m2},
                             {"se_m4", set.moments.se_m4}};
        std::cout << "m2 = " << set.moments.m2 << " +- " << set.moments.se_m2
                  << ", KS = " << set.ks << "\n";
    } else {
        t.header = {"index", "n"};
        for (long i = 0; i < count; ++i)
            t.rows.push_back(
                {static_cast<double>(i), static_cast<double>(set.number[i])});
        meta["populations"] = set.populations;
        double mean = 0.0;
        for (long i = 0; i < count; ++i) mean += set.number[i];
        std::cout << "mean drawn n = " << mean / count << "\n";
    }
    switch (spec.source) {
        case sxo::sampler::Source::Pure:
        case sxo::sampler::Source::MixedIdenticalPi4:
            meta["c"] = c;
            break;
        case sxo::sampler::Source::MixedGeneral:
            meta["c1"] = c1;
            meta["c2"] = c2;
            meta["theta"] = theta;
            break;
        case sxo::sampler::Source::Harmonic:
            meta["w1"] = w1;
            meta["w2"] = w2;
            meta["theta"] = theta;
            break;
    }
    emit(out, t, std::move(meta), timer);
    return 0;
}

// ---------------------------------------------------------------------------
// Canned figure datasets.
// ---------------------------------------------------------------------------

const std::map<std::string, std::string> figure_ids = {
    {"potential-shapes", "potential profiles for one representative c per well class"},
    {"variance-vs-c", "ground-state variance across the shape parameter"},
    {"excess-moments", "excess moments nu4, nu6, nu8 across the shape parameter"},
    {"moment-ratios", "successive excess-moment ratios across the shape parameter"},
    {"qfunc-pure", "pure-state Husimi function on a phase-space grid (c = -2)"},
    {"gc-scan", "zeros of the coherent-state overlap along the momentum axis"},
    {"fock-pure", "pure-state number populations (c = 1 and c = -1)"},
    {"fock-mixed", "reduced-state number populations at theta = pi/4 (c = 1, -1)"},
    {"husimi-mixed-cut", "reduced-state Husimi cut along the position axis (c = -5)"},
    {"purity-harmonic", "reduced purity of the harmonic pair versus mixing angle"},
    {"purity-pi4", "reduced purity of identical pairs at theta = pi/4 versus c"},
};

int run_figure(const std::string& id, const std::string& out) {
    Timer timer;
    sxo::io::Table t;
    json meta{{"command", "figure"}, {"figure_id", id}};

    if (id == "potential-shapes") {
        t.header = {"y", "single_c3", "double_c0", "triple_cm3"};
        for (int i = 0; i <= 640; ++i) {
            const double y = -3.2 + 6.4 * i / 640.0;
            t.rows.push_back({y, sxo::qes::potential(y, 3.0),
                              sxo::qes::potential(y, 0.0),
                              sxo::qes::potential(y, -3.0)});
        }
    } else if (id == "variance-vs-c") {
        t.header = {"c", "variance"};
        for (int i = 0; i <= 200; ++i) {
            const double c = -10.0 + 0.1 * i;
            t.rows.push_back({c, sxo::qes::variance(c)});
        }
    } else if (id == "excess-moments") {
        t.header = {"c", "nu4", "nu6", "nu8"};
        for (int i = 0; i <= 200; ++i) {
            const double c = -10.0 + 0.1 * i;
            t.rows.push_back({c, sxo::qes::excess_moment(4, c),
                              sxo::qes::excess_moment(6, c),
                              sxo::qes::excess_moment(8, c)});
        }
    } else if (id == "moment-ratios") {
        t.header = {"c", "r3", "r4", "r5", "r6", "r7", "r8"};
        for (int i = 0; i <= 80; ++i) {
            const double c = -10.0 + 0.25 * i;
            std::vector<double> row{c};
            for (int n = 2; n <= 7; ++n) {
                double r;
                try {
                    r = sxo::qes::moment_ratio(n, c);
                } catch (const sxo::DomainError&) {
                    r = std::numeric_limits<double>::quiet_NaN();
                }
                row.push_back(r);
            }
            t.rows.push_back(row);
        }
    } else if (id == "qfunc-pure") {
        return run_qfunc(-2.0, "pure", 4.0, 4.0, 81, out);
    } else if (id == "gc-scan") {
        t.header = {"c", "index", "a2_zero"};
        for (double c : {10.0, 1.0, -2.0, -10.0}) {
            const auto scan = sxo::husimi::scan_zeros(c, 12.0);
            for (std::size_t k = 0; k < scan.zeros.size(); ++k)
                t.rows.push_back({c, static_cast<double>(k), scan.zeros[k]});
        }
    } else if (id == "fock-pure" || id == "fock-mixed") {
        t.header = {"n", "p_c1", "p_cm1"};
        std::vector<double> pos, neg;
        if (id == "fock-pure") {
            pos = sxo::fock::number_populations_pure(1.0).populations;
            neg = sxo::fock::number_populations_pure(-1.0).populations;
        } else {
            for (double c : {1.0, -1.0}) {
                auto rho = sxo::coupled::reduced_identical_pi4(c);
                auto regen = [c](double width, int n) {
                    return sxo::coupled::reduced_identical_pi4(
                        c, std::max(n, 33) | 1, width);
                };
                const double w =
                    sxo::fock::omega_from_variance(sxo::qes::variance(c));
                auto stats = sxo::fock::number_populations(
                    rho, w, sxo::fock::default_n_max, regen);
                (c > 0 ? pos : neg) = stats.populations;
            }
        }
        for (std::size_t n = 0; n < pos.size(); ++n)
            t.rows.push_back({static_cast<double>(n), pos[n], neg[n]});
    } else if (id == "husimi-mixed-cut") {
        const auto rho = sxo::coupled::reduced_identical_pi4(-5.0);
        t.header = {"a1", "q"};
        for (int i = 0; i <= 320; ++i) {
            const double a1 = -4.0 + 8.0 * i / 320.0;
            t.rows.push_back({a1, sxo::husimi::q_mixed({a1, 0.0}, rho)});
        }
    } else if (id == "purity-harmonic") {
        t.header = {"theta", "purity_w2_2", "purity_w2_3"};
        for (int i = 0; i <= 180; ++i) {
            const double theta = 0.5 * std::numbers::pi * i / 180.0;
            t.rows.push_back(
                {theta, sxo::coupled::harmonic_reduced({1.0, 2.0, theta}).purity,
                 sxo::coupled::harmonic_reduced({1.0, 3.0, theta}).purity});
        }
    } else if (id == "purity-pi4") {
        t.header = {"c", "purity"};
        for (int i = 0; i <= 160; ++i) {
            const double c = -20.0 + 0.25 * i;
            t.rows.push_back(
                {c, sxo::coupled::reduced_identical_pi4(c, 257).purity()});
        }
    } else {
        throw sxo::DomainError("figure: unknown id " + id);
    }

    std::cout << "figure " << id << ": " << t.rows.size() << " rows\n";
    emit(out, t, std::move(meta), timer);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sextic-oscillator ground states, phase-space functions, and "
                 "disorder sampling"};
    app.set_version_flag("--version", std::string(sxo::version));
    app.require_subcommand(1);

    // potential
    double pot_c = 0.0, pot_ymax = 3.0;
    int pot_points = 601;
    std::string pot_out = "potential.csv";
    auto* pot = app.add_subcommand("potential", "Tabulate the rescaled potential");
    pot->add_option("--c", pot_c, "shape parameter")->required();
    pot->add_option("--y-max", pot_ymax, "half range");
    pot->add_option("--points", pot_points, "number of samples")
        ->check(CLI::Range(3, 1000000));
    pot->add_option("--out", pot_out, "output CSV");

    // moments
    double mom_c = 0.0;
    std::string mom_orders = "4:16", mom_out = "moments.csv";
    auto* mom = app.add_subcommand("moments", "Raw and excess ground-state moments");
    mom->add_option("--c", mom_c, "shape parameter")->required();
    mom->add_option("--orders", mom_orders, "even orders, e.g. 4:12 or 4,8");
    mom->add_option("--out", mom_out, "output CSV");

    // qfunc
    double qf_c = 0.0, qf_a1 = 4.0, qf_a2 = 4.0;
    int qf_points = 81;
    std::string qf_source = "pure", qf_out = "qfunc.csv";
    auto* qf = app.add_subcommand("qfunc", "Husimi function on a phase-space grid");
    qf->add_option("--c", qf_c, "shape parameter")->required();
    qf->add_option("--source", qf_source, "pure | mixed-pi4");
    qf->add_option("--a1-max", qf_a1, "position half range");
    qf->add_option("--a2-max", qf_a2, "momentum half range");
    qf->add_option("--points", qf_points, "grid points per axis")
        ->check(CLI::Range(3, 2001));
    qf->add_option("--out", qf_out, "output CSV");

    // gc-scan
    double gc_c = 0.0, gc_a2max = 12.0, gc_step = 0.01;
    std::string gc_out = "gc_scan.csv";
    auto* gc = app.add_subcommand("gc-scan",
                                  "Zeros of the coherent-state overlap on the momentum axis");
    gc->add_option("--c", gc_c, "shape parameter")->required();
    gc->add_option("--a2-max", gc_a2max, "scan limit");
    gc->add_option("--step", gc_step, "initial scan step");
    gc->add_option("--out", gc_out, "output CSV");

    // fock
    double fk_c = 0.0, fk_omega = 0.0;
    int fk_nmax = sxo::fock::default_n_max;
    std::string fk_source = "pure", fk_out = "fock.csv";
    auto* fk = app.add_subcommand("fock", "Number-basis populations");
    fk->add_option("--c", fk_c, "shape parameter")->required();
    fk->add_option("--source", fk_source, "pure | mixed-pi4");
    fk->add_option("--omega", fk_omega,
                   "analysis frequency (0 = variance matched)");
    fk->add_option("--n-max", fk_nmax, "highest level")
        ->check(CLI::Range(0, sxo::fock::hard_n_max));
    fk->add_option("--out", fk_out, "output CSV");

    // harmonic
    double hm_w1 = 1.0, hm_w2 = 2.0, hm_theta = std::numbers::pi / 4.0;
    std::string hm_out = "harmonic.csv";
    auto* hm = app.add_subcommand("harmonic",
                                  "Reduced state of a coupled harmonic pair");
    hm->add_option("--w1", hm_w1, "first normal-mode frequency")->required();
    hm->add_option("--w2", hm_w2, "second normal-mode frequency")->required();
    hm->add_option("--theta", hm_theta, "mixing angle");
    hm->add_option("--out", hm_out, "output CSV");

    // coupled (reduce | expand)
    auto* cp = app.add_subcommand("coupled", "Coupled sextic pair");
    cp->require_subcommand(1);
    double cp_c1 = 0.0, cp_c2 = 0.0, cp_theta = std::numbers::pi / 4.0;
    bool cp_purity = false;
    std::string cp_out = "coupled.csv";
    auto* cpr = cp->add_subcommand("reduce", "Marginal moments of the first coordinate");
    cpr->add_option("--c1", cp_c1, "first shape parameter")->required();
    cpr->add_option("--c2", cp_c2, "second shape parameter")->required();
    cpr->add_option("--theta", cp_theta, "mixing angle");
    cpr->add_flag("--purity", cp_purity, "also compute the reduced purity");
    cpr->add_option("--out", cp_out, "output CSV");

    double ex_a1 = 1.0, ex_b1 = 0.0, ex_a2 = 1.0, ex_b2 = 0.0,
           ex_theta = std::numbers::pi / 4.0;
    std::string ex_out = "expansion.csv";
    auto* cpe = cp->add_subcommand("expand",
                                   "Polynomial coefficients of the coupled potential");
    cpe->add_option("--a1", ex_a1, "first quartic strength")->required();
    cpe->add_option("--b1", ex_b1, "first quadratic strength")->required();
    cpe->add_option("--a2", ex_a2, "second quartic strength")->required();
    cpe->add_option("--b2", ex_b2, "second quadratic strength")->required();
    cpe->add_option("--theta", ex_theta, "mixing angle");
    cpe->add_option("--out", ex_out, "output CSV");

    // sample
    std::string sm_source = "pure", sm_observable = "quadrature",
                sm_out = "samples.csv";
    double sm_c = 0.0, sm_c1 = 0.0, sm_c2 = 0.0,
           sm_theta = std::numbers::pi / 4.0, sm_w1 = 1.0, sm_w2 = 2.0,
           sm_omega = 0.0;
    long sm_count = 10000;
    std::uint64_t sm_seed = 0;
    auto* sm = app.add_subcommand("sample", "Seeded draws from a ground-state observable");
    sm->add_option("--source", sm_source,
                   "pure | mixed-pi4 | mixed-general | harmonic");
    sm->add_option("--observable", sm_observable, "quadrature | number");
    sm->add_option("--c", sm_c, "shape parameter (pure, mixed-pi4)");
    sm->add_option("--c1", sm_c1, "first shape parameter (mixed-general)");
    sm->add_option("--c2", sm_c2, "second shape parameter (mixed-general)");
    sm->add_option("--theta", sm_theta, "mixing angle");
    sm->add_option("--w1", sm_w1, "harmonic frequency 1");
    sm->add_option("--w2", sm_w2, "harmonic frequency 2");
    sm->add_option("--omega", sm_omega, "number-basis frequency (0 = matched)");
    sm->add_option("--count", sm_count, "number of draws")->required();
    sm->add_option("--seed", sm_seed, "64-bit seed")->required();
    sm->add_option("--out", sm_out, "output CSV");

    // figure
    bool fig_list = false;
    std::string fig_id, fig_out = "figure.csv";
    auto* fg = app.add_subcommand("figure", "Canned datasets behind the standard plots");
    fg->add_flag("--list", fig_list, "list available figure ids");
    fg->add_option("--id", fig_id, "figure id");
    fg->add_option("--out", fig_out, "output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (pot->parsed()) return run_potential(pot_c, pot_ymax, pot_points, pot_out);
        if (mom->parsed()) return run_moments(mom_c, mom_orders, mom_out);
        if (qf->parsed())
            return run_qfunc(qf_c, qf_source, qf_a1, qf_a2, qf_points, qf_out);
        if (gc->parsed()) return run_gc_scan(gc_c, gc_a2max, gc_step, gc_out);
        if (fk->parsed()) return run_fock(fk_c, fk_source, fk_omega, fk_nmax, fk_out);
        if (hm->parsed()) return run_harmonic(hm_w1, hm_w2, hm_theta, hm_out);
        if (cpr->parsed())
            return run_coupled_reduce(cp_c1, cp_c2, cp_theta, cp_purity, cp_out);
        if (cpe->parsed())
            return run_coupled_expand(ex_a1, ex_b1, ex_a2, ex_b2, ex_theta, ex_out);
        if (sm->parsed())
            return run_sample(sm_source, sm_observable, sm_c, sm_c1, sm_c2,
                              sm_theta, sm_w1, sm_w2, sm_omega, sm_count,
                              sm_seed, sm_out);
        if (fg->parsed()) {
            if (fig_list) {
                for (const auto& [id, blurb] : figure_ids)
                    std::cout << id << "  -  " << blurb << "\n";
                return 0;
            }
            if (fig_id.empty())
                throw sxo::DomainError("figure: provide --id or --list");
            if (figure_ids.find(fig_id) == figure_ids.end())
                throw sxo::DomainError("figure: unknown id " + fig_id);
            return run_figure(fig_id, fig_out);
        }
    } catch (const sxo::WindowError& e) {
        std::cerr << "window error: " << e.what() << "\n";
        return 3;
    } catch (const sxo::AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return 3;
    } catch (const sxo::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const sxo::CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return 2;
    } catch (const sxo::IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
