#ifndef CURVEREG_NUMERIC_HPP
#define CURVEREG_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace curvereg {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Composite trapezoid rule on [a,b] with n subintervals.
template <typename F>
double trapezoid(F&& f, double a, double b, std::size_t n) {
    if (n == 0) throw std::invalid_argument("trapezoid: n must be positive");
    const double h = (b - a) / static_cast<double>(n);
    double acc = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i) acc += f(a + h * static_cast<double>(i));
    return acc * h;
}

namespace detail {

template <typename F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Golden-section maximization of a unimodal function on [a,b].
template <typename F>
double golden_section_max(F&& f, double a, double b, double xtol = 1e-12) {
    constexpr double inv_phi = 0.6180339887498948482;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace curvereg

#endif
