#pragma once

#include <cmath>
#include <map>
#include <stdexcept>

namespace ppd::quad {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // conservative |K15 - G7| panel sum
    std::size_t panels = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (positive half, QUADPACK dqk15).
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
void gk15(F& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double k15 = wgk[7] * fc;
    double g7 = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double x = h * xgk[i];
        double y = f(c - x) + f(c + x);
        k15 += wgk[i] * y;
        if (i % 2 == 1) g7 += wg[i / 2] * y;
    }
    value = k15 * h;
    error = std::fabs((k15 - g7) * h);
}

}  // namespace detail

// Globally adaptive bisection: repeatedly split the panel with the largest
// error estimate until the summed estimate is below rel_tol * |integral|.
template <class F>
QuadResult integrate_adaptive(F f, double a, double b, double rel_tol,
                              std::size_t max_panels = 1 << 14) {
    if (!(a < b)) throw std::invalid_argument("integrate_adaptive: need a < b");
    if (!(rel_tol > 0)) throw std::invalid_argument("integrate_adaptive: tolerance must be positive");

    struct Panel {
        double a, b, value, error;
    };
    // keyed by (error, a): deterministic worst-first order
    std::multimap<std::pair<double, double>, Panel> queue;
    auto push = [&](double lo, double hi) {
        Panel p{lo, hi, 0.0, 0.0};
        detail::gk15(f, lo, hi, p.value, p.error);
        queue.emplace(std::make_pair(-p.error, lo), p);
    };
    push(a, b);
    double total = 0.0, err = 0.0;
    while (true) {
        total = 0.0;
        err = 0.0;
        for (const auto& [k, p] : queue) {
            total += p.value;
            err += p.error;
        }
        if (err <= rel_tol * std::fabs(total)) break;
        if (queue.size() >= max_panels)
            throw std::runtime_error("integrate_adaptive: panel budget exhausted");
        auto worst = queue.begin();
        Panel p = worst->second;
        queue.erase(worst);
        double mid = 0.5 * (p.a + p.b);
        push(p.a, mid);
        push(mid, p.b);
    }
    return {total, err, queue.size()};
}

}  // namespace ppd::quad
