#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace tilefield {

void QuadratureSpec::validate() const {
    if (!(rel_tol >= 1e-14)) throw ValidationError("QuadratureSpec: rel_tol must be >= 1e-14");
    if (!(abs_tol >= 0.0)) throw ValidationError("QuadratureSpec: abs_tol must be >= 0");
    if (max_subdivisions < 1) throw ValidationError("QuadratureSpec: max_subdivisions must be >= 1");
}

namespace {

// 15-point Kronrod nodes on [-1,1] (positive half) and weights; the embedded
// 7-point Gauss rule uses the odd-indexed nodes. Values from QUADPACK qk15.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Minimal value-type abstraction so the same kernel serves double and Vec3.
inline double vzero(double) { return 0.0; }
inline Vec3 vzero(Vec3) { return {}; }
inline double vnorm(double v) { return std::fabs(v); }
inline double vnorm(const Vec3& v) { return v.max_abs(); }
inline bool vfinite(double v) { return std::isfinite(v); }
inline bool vfinite(const Vec3& v) { return v.finite(); }
inline double vscalar(double v) { return v; }
inline double vscalar(const Vec3& v) { return v.max_abs(); }

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    double resabs;  // integral of |f|, for the roundoff floor
    bool operator<(const Segment& o) const { return error < o.error; }
};

// One GK15 application on [a,b]; QUADPACK-style error estimate.
template <class T, class F>
Segment<T> gk15(const F& f, double a, double b) {
    const double hlgth = 0.5 * (b - a);
    const double centr = 0.5 * (a + b);

    T fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(centr - hlgth * kXgk[i]);
        fv[14 - i] = f(centr + hlgth * kXgk[i]);
    }
    fv[7] = f(centr);

    T resk = vzero(T{});
    T resg = vzero(T{});
    double resabs = 0.0;
    for (int i = 0; i < 8; ++i) {
        const T sum = (i == 7) ? fv[7] : fv[i] + fv[14 - i];
        resk += kWgk[i] * sum;
        resabs += kWgk[i] * ((i == 7) ? vnorm(fv[7]) : vnorm(fv[i]) + vnorm(fv[14 - i]));
        if (i % 2 == 1) resg += kWg[i / 2] * sum;
    }
    const T reskh = resk * 0.5;
    double resasc = kWgk[7] * vnorm(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (vnorm(fv[i] - reskh) + vnorm(fv[14 - i] - reskh));
    resasc *= std::fabs(hlgth);
    resabs *= std::fabs(hlgth);

    double err = vnorm((resk - resg) * hlgth);
    if (!std::isfinite(err) || !vfinite(resk))
        throw IntegrandError("integrate: integrand returned a non-finite value");
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
    return {a, b, resk * hlgth, err, resabs};
}

template <class T, class F>
std::pair<T, double> adaptive(const F& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (a == b) return {vzero(T{}), 0.0};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::priority_queue<Segment<T>> heap;
    heap.push(gk15<T>(f, a, b));
    T total = heap.top().value;
    double total_err = heap.top().error;
    double total_resabs = heap.top().resabs;

    // No rule can certify error below the roundoff of integrating |f|;
    // requests beyond that floor count as satisfied (the reported error
    // estimate still carries the truth).
    const double eps = std::numeric_limits<double>::epsilon();
    auto tolerance = [&](const T& v) {
        return std::max({spec.abs_tol, spec.rel_tol * vnorm(v), 100.0 * eps * total_resabs});
    };

    int subdivisions = 0;
    while (total_err > tolerance(total)) {
        if (subdivisions >= spec.max_subdivisions) {
            throw ConvergenceError("integrate: tolerance not reached after " +
                                       std::to_string(spec.max_subdivisions) + " subdivisions",
                                   vscalar(total) * sign, total_err);
        }
        Segment<T> worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_err -= worst.error;
        total_resabs -= worst.resabs;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; keep its estimate
            total += worst.value;
            total_err += worst.error;
            break;
        }
        for (const auto& seg : {gk15<T>(f, worst.a, mid), gk15<T>(f, mid, worst.b)}) {
            total += seg.value;
            total_err += seg.error;
            total_resabs += seg.resabs;
            heap.push(seg);
        }
        ++subdivisions;
    }
    return {total * sign, total_err};
}

QuadratureSpec inner_spec(const QuadratureSpec& spec) {
    QuadratureSpec inner = spec;
    inner.rel_tol = std::max(1e-14, spec.rel_tol / 10.0);
    inner.abs_tol = spec.abs_tol / 10.0;
    return inner;
}

}  // namespace

IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec) {
    auto [v, e] = adaptive<double>(f, a, b, spec);
    return {v, e};
}

IntegralResult3 integrate_1d_vec3(const std::function<Vec3(double)>& f, double a, double b,
                                  const QuadratureSpec& spec) {
    auto [v, e] = adaptive<Vec3>(f, a, b, spec);
    return {v, e};
}

IntegralResult integrate_2d(const std::function<double(double, double)>& f, double ax,
                            double bx, double ay, double by, const QuadratureSpec& spec) {
    const QuadratureSpec inner = inner_spec(spec);
    auto outer = [&](double x) {
        return integrate_1d([&](double y) { return f(x, y); }, ay, by, inner).value;
    };
    auto [v, e] = adaptive<double>(outer, ax, bx, spec);
    return {v, e};
}

IntegralResult3 integrate_2d_vec3(const std::function<Vec3(double, double)>& f, double ax,
                                  double bx, double ay, double by,
                                  const QuadratureSpec& spec) {
    const QuadratureSpec inner = inner_spec(spec);
    auto outer = [&](double x) {
        return integrate_1d_vec3([&](double y) { return f(x, y); }, ay, by, inner).value;
    };
    auto [v, e] = adaptive<Vec3>(outer, ax, bx, spec);
    return {v, e};
}

}  // namespace tilefield
