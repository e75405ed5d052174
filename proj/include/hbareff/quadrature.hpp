#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature, plus a wrapper for
// integrands that vanish like sqrt(x - a) at both ends.

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "hbareff/errors.hpp"

namespace hbareff {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
};

namespace quadrature_detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod_15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = kronrod_weights[7] * fc;
    double gauss = gauss_weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kronrod_nodes[static_cast<std::size_t>(i)];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kronrod_weights[static_cast<std::size_t>(i)] * pair;
        if (i % 2 == 1) gauss += gauss_weights[static_cast<std::size_t>(i / 2)] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace quadrature_detail

template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
    using quadrature_detail::Segment;
    QuadratureResult out;
    if (a == b) return out;
    std::priority_queue<Segment> heap;
    heap.push(quadrature_detail::gauss_kronrod_15(f, a, b));
    out.evaluations = 15;
    double total = heap.top().value;
    double error = heap.top().error;
    while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (static_cast<int>(heap.size()) >= opt.max_intervals) {
            out.converged = false;
            break;
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = quadrature_detail::gauss_kronrod_15(f, worst.a, mid);
        const Segment right = quadrature_detail::gauss_kronrod_15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to drop the accumulated update round-off.
    total = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error = error;
    return out;
}

// Integral over [a, b] of an integrand with square-root zeros at both ends.
// The outer `edge_fraction` of the interval on each side is mapped through
// x = a + u^2 (resp. x = b - u^2), which makes the integrand smooth in u.
template <class F>
QuadratureResult integrate_sqrt_endpoints(const F& f, double a, double b, const QuadratureOptions& opt = {},
                                          double edge_fraction = 0.1) {
    QuadratureResult out;
    if (!(b > a)) return out;
    const double edge = edge_fraction * (b - a);
    const double u_max = std::sqrt(edge);
    const QuadratureOptions part{opt.abs_tol / 3.0, opt.rel_tol, opt.max_intervals};
    const auto left = integrate_adaptive([&](double u) { return 2.0 * u * f(a + u * u); }, 0.0, u_max, part);
    const auto middle = integrate_adaptive(f, a + edge, b - edge, part);
    const auto right = integrate_adaptive([&](double u) { return 2.0 * u * f(b - u * u); }, 0.0, u_max, part);
    out.value = left.value + middle.value + right.value;
    out.error = left.error + middle.error + right.error;
    out.evaluations = left.evaluations + middle.evaluations + right.evaluations;
    out.converged = left.converged && middle.converged && right.converged;
    return out;
}

}  // namespace hbareff
