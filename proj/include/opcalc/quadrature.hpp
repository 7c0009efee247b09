#ifndef OPCALC_QUADRATURE_HPP
#define OPCALC_QUADRATURE_HPP
//
// Adaptive Simpson quadrature plus the analytic tail estimates used when an
// integrand is (trigonometric polynomial) x (decaying rational kernel).
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <type_traits>

#include "common.hpp"

namespace opcalc {

template <typename T>
struct QuadratureResult {
    T value{};
    double error = 0.0;      // accumulated Richardson error estimate
    bool converged = true;   // false if any subinterval hit the depth limit
    long evaluations = 0;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }

template <typename T, typename F>
void simpson_step(const F& f, double a, double b, T fa, T fm, T fb, T whole, double tol, int depth,
                  QuadratureResult<T>& acc) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const T flm = f(lm);
    const T frm = f(rm);
    acc.evaluations += 2;
    const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const T delta = left + right - whole;
    const double err = magnitude(delta) / 15.0;
    if (depth <= 0 || m <= a || b <= m) {
        acc.value += left + right + delta / 15.0;
        acc.error += err;
        acc.converged = false;
        return;
    }
    if (err <= tol) {
        acc.value += left + right + delta / 15.0;
        acc.error += err;
        return;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
    simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

// Adaptive Simpson on [a, b] to absolute tolerance `tol`.
// The interval is pre-split into `panels` pieces so oscillatory integrands
// are resolved before the error test kicks in.
template <typename F>
auto adaptive_simpson(const F& f, double a, double b, double tol, int panels = 1, int max_depth = 48)
    -> QuadratureResult<std::decay_t<decltype(f(a))>> {
    using T = std::decay_t<decltype(f(a))>;
    QuadratureResult<T> acc;
    if (!(b > a)) return acc;
    panels = std::max(panels, 1);
    const double width = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * width;
        const double hi = (k + 1 == panels) ? b : a + (k + 1) * width;
        const double mid = 0.5 * (lo + hi);
        const T flo = f(lo);
        const T fmid = f(mid);
        const T fhi = f(hi);
        acc.evaluations += 3;
        const T whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        detail::simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol / panels, max_depth, acc);
    }
    return acc;
}

// Tail of  ∫_T^∞ P(t) / ((t-a)(t-b)) dt  for a trigonometric polynomial
// P(t) = Σ p_ω e^{iωt} given as a frequency -> coefficient map, T > max(a, b).
// The constant term integrates exactly. Each oscillating term takes two steps
// of integration by parts against g = 1/((t-a)(t-b)):
//   ∫_T^∞ e^{iωt} g = e^{iωT} (-g(T)/(iω) + g'(T)/(iω)²) + R,
// and g'' is positive and decreasing past T, so |R| ≤ 2 g''(T)/|ω|³.
struct TailEstimate {
    cplx value;    // mean term plus the expansion of the oscillating terms
    double bound;  // bound on the remainder
};

inline TailEstimate rational_tail(const std::map<double, cplx>& spectrum, double a, double b, double T) {
    const double ga = T - a;
    const double gb = T - b;
    double kernel_integral;
    if (std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)))
        kernel_integral = 1.0 / ga;
    else
        kernel_integral = std::log(ga / gb) / (b - a);
    const double g0 = 1.0 / (ga * gb);
    const double g1 = -(1.0 / (ga * ga * gb) + 1.0 / (ga * gb * gb));
    const double g2 = 2.0 / (ga * ga * ga * gb) + 2.0 / (ga * ga * gb * gb) + 2.0 / (ga * gb * gb * gb);
    TailEstimate out{0.0, 0.0};
    for (const auto& [omega, coef] : spectrum) {
        if (omega == 0.0) {
            out.value += coef * kernel_integral;
        } else {
            const cplx iw(0.0, omega);
            out.value += coef * std::polar(1.0, omega * T) * (-g0 / iw + g1 / (iw * iw));
            const double w = std::abs(omega);
            out.bound += 2.0 * std::abs(coef) * g2 / (w * w * w);
        }
    }
    return out;
}

// Mirror of a spectrum under t -> -t (used for the left tail).
inline std::map<double, cplx> reflect_spectrum(const std::map<double, cplx>& spectrum) {
    std::map<double, cplx> out;
    for (const auto& [omega, coef] : spectrum) out[-omega] += coef;
    return out;
}

}  // namespace opcalc

#endif
