#include "sxo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "sxo/errors.hpp"

namespace sxo::quad {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule; nodes on [-1, 1].
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const Fn1& f, double a, double b, long& evals) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    evals += 15;

    double resg = wg[3] * fc;
    double resk = wgk[7] * fc;
    double resabs = wgk[7] * std::fabs(fc);

    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        fv[j] = f(center - dx);
        fv[8 + j] = f(center + dx);
    }
    fv[7] = fc;

    for (int j = 0; j < 3; ++j) {
        const double fsum = fv[2 * j + 1] + fv[8 + 2 * j + 1];
        resg += wg[j] * fsum;
        resk += wgk[2 * j + 1] * fsum;
        resabs += wgk[2 * j + 1] * (std::fabs(fv[2 * j + 1]) + std::fabs(fv[8 + 2 * j + 1]));
    }
    for (int j = 0; j < 4; ++j) {
        const double fsum = fv[2 * j] + fv[8 + 2 * j];
        resk += wgk[2 * j] * fsum;
        resabs += wgk[2 * j] * (std::fabs(fv[2 * j]) + std::fabs(fv[8 + 2 * j]));
    }

    const double reskh = 0.5 * resk;
    double resasc = wgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::fabs(fv[j] - reskh) + std::fabs(fv[8 + j] - reskh));

    const double value = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double uflow = std::numeric_limits<double>::min();
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > uflow / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    return {value, err};
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace

Result integrate(const Fn1& f, double a, double b, const Options& opt) {
    if (!(b > a)) {
        if (a == b) return {0.0, 0.0, 0, 0.0};
        throw DomainError("integrate: requires a <= b");
    }
    long evals = 0;
    PanelEstimate first = gk15(f, a, b, evals);

    std::priority_queue<Interval> heap;
    heap.push({a, b, first.value, first.error});
    double total = first.value;
    double total_err = first.error;

    int used = 1;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
        if (used >= opt.max_intervals)
            throw AccuracyError("integrate: interval budget exhausted", total_err);
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        PanelEstimate left = gk15(f, worst.a, mid, evals);
        PanelEstimate right = gk15(f, mid, worst.b, evals);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
        ++used;
    }

    // Re-sum from the heap for a rounding-robust final value.
    double value = 0.0, err = 0.0, comp = 0.0;
    while (!heap.empty()) {
        const Interval& iv = heap.top();
        double y = iv.value - comp;
        double t = value + y;
        comp = (t - value) - y;
        value = t;
        err += iv.error;
        heap.pop();
    }
    return {value, err, evals, 0.0};
}

Result integrate_whole_line(const Fn1& f, const Fn1& envelope, const Options& opt) {
    // Locate the envelope peak on a coarse symmetric probe grid.
    double peak = 0.0;
    double peak_at = 0.0;
    for (int i = -64; i <= 64; ++i) {
        const double y = 0.25 * i;
        const double e = envelope(y);
        if (e > peak) {
            peak = e;
            peak_at = y;
        }
    }
    if (!(peak > 0.0))
        throw DomainError("integrate_whole_line: envelope vanishes on the probe grid");

    const double thresh = 1e-18 * peak;
    double y_max = std::max(std::fabs(peak_at), 1.0);
    int guard = 0;
    while ((envelope(y_max) > thresh || envelope(-y_max) > thresh)) {
        y_max *= 1.2;
        if (++guard > 400)
            throw DomainError("integrate_whole_line: envelope does not decay");
    }

    Result r = integrate(f, -y_max, y_max, opt);
    r.y_max = y_max;
    return r;
}

Result integrate_oscillatory(const Fn1& f, double k, double a, double b,
                             double scale, const Options& opt) {
    if (k < 0.0) throw DomainError("integrate_oscillatory: k < 0");
    if (k == 0.0) return integrate(f, a, b, opt);
    if (!(scale > 0.0)) throw DomainError("integrate_oscillatory: scale <= 0");
    if (!(b > a)) {
        if (a == b) return {0.0, 0.0, 0, 0.0};
        throw DomainError("integrate_oscillatory: requires a <= b");
    }

    const double half_period = std::numbers::pi / k;
    const long panels = std::max<long>(1, static_cast<long>(std::ceil((b - a) / half_period)));

    Options panel_opt = opt;
    panel_opt.abs_tol = std::max(opt.abs_tol, 1e-14 * scale * half_period);

    double value = 0.0, comp = 0.0, err = 0.0;
    long evals = 0;
    for (long j = 0; j < panels; ++j) {
        const double pa = a + (b - a) * static_cast<double>(j) / static_cast<double>(panels);
        const double pb = a + (b - a) * static_cast<double>(j + 1) / static_cast<double>(panels);
        Result r = integrate(f, pa, pb, panel_opt);
        double y = r.value - comp;
        double t = value + y;
        comp = (t - value) - y;
        value = t;
        err += r.error_estimate;
        evals += r.evaluations;
    }
    return {value, err, evals, 0.0};
}

Result integrate_2d(const Fn2& f, double ax, double bx, double ay, double by,
                    const Options& opt) {
    Options inner = opt;
    inner.rel_tol = std::max(opt.rel_tol * 0.1, 1e-13);
    inner.abs_tol = opt.abs_tol * 0.1;

    long inner_evals = 0;
    double inner_err = 0.0;
    Fn1 outer = [&](double x) {
        Result r = integrate([&](double y) { return f(x, y); }, ay, by, inner);
        inner_evals += r.evaluations;
        inner_err = std::max(inner_err, r.error_estimate);
        return r.value;
    };
    Result r = integrate(outer, ax, bx, opt);
    r.evaluations += inner_evals;
    r.error_estimate += inner_err * (bx - ax);
    return r;
}

double GridKernel::trace() const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += weights[i] * values(i, i);
    return s;
}

double GridKernel::purity() const {
    const int n = size();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += weights[j] * values(i, j) * values(i, j);
        s += weights[i] * row;
    }
    return s;
}

double GridKernel::diag_moment(int order) const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i)
        s += weights[i] * std::pow(nodes[i], order) * values(i, i);
    return s;
}

void GridKernel::normalize() {
    const double t = trace();
    if (!(std::fabs(t) > 0.0))
        throw IntegrityError("GridKernel::normalize: zero trace");
    values /= t;
}

std::vector<double> simpson_weights(int n, double h) {
    if (n < 3 || n % 2 == 0)
        throw DomainError("simpson_weights: n must be odd and >= 3");
    std::vector<double> w(n, h / 3.0);
    for (int i = 1; i < n - 1; ++i) w[i] *= (i % 2 == 1) ? 4.0 : 2.0;
    return w;
}

namespace {

GridKernel sample_kernel(const Fn2& k, double half_width, int n) {
    GridKernel g;
    g.half_width = half_width;
    g.nodes.resize(n);
    const double h = 2.0 * half_width / (n - 1);
    for (int i = 0; i < n; ++i) g.nodes[i] = -half_width + h * i;
    g.weights = simpson_weights(n, h);
    g.values.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double v = k(g.nodes[i], g.nodes[j]);
            g.values(i, j) = v;
            g.values(j, i) = v;
        }
    }
    return g;
}

}  // namespace

GridKernel discretize_kernel(const Fn2& k, double half_width, int n,
                             bool estimate_error) {
    if (n < 33 || n % 2 == 0)
        throw DomainError("discretize_kernel: n must be odd and >= 33");
    if (!(half_width > 0.0))
        throw DomainError("discretize_kernel: half_width <= 0");
    GridKernel g = sample_kernel(k, half_width, n);
    if (estimate_error) {
        GridKernel fine = sample_kernel(k, half_width, 2 * n - 1);
        const double t0 = g.trace();
        const double t1 = fine.trace();
        g.discretization_error =
            std::fabs(t0 - t1) / std::max(std::fabs(t1), 1e-300);
    }
    return g;
}

std::vector<double> kernel_spectrum(const GridKernel& rho) {
    const int n = rho.size();
    Eigen::VectorXd sw(n);
    for (int i = 0; i < n; ++i) sw(i) = std::sqrt(rho.weights[i]);
    Eigen::MatrixXd m = sw.asDiagonal() * rho.values * sw.asDiagonal();
    m = 0.5 * (m + m.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw AccuracyError("kernel_spectrum: eigensolver failed");
    std::vector<double> ev(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + n);
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

}  // namespace sxo::quad
