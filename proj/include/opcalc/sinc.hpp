#ifndef OPCALC_SINC_HPP
#define OPCALC_SINC_HPP
//
// Sampling expansions of divided differences in the orthogonal basis
// sin(σy)/(σy - πn), their integral forms, and the constructive
// factorization of divided-difference kernels.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "bandlimited.hpp"
#include "doi.hpp"
#include "quadrature.hpp"

namespace opcalc {

// sin(σy)/(σy - πn) = (-1)^n sinc(σy - πn); equals (-1)^n at σy = πn.
inline double sinc_basis(double sigma, int n, double y) {
    if (!(sigma > 0.0)) throw PreconditionError("sinc_basis: sigma must be positive");
    const double s = sigma * y - pi * n;
    return (n % 2 == 0 ? 1.0 : -1.0) * sinc(s);
}

// Σ_{|n|≤N} sin²(σy)/(σy - πn)² and a bound on the omitted terms.
struct PartialSum {
    double value = 0.0;
    double tail_bound = 0.0;
};

inline PartialSum basis_normalization_sum(double sigma, double y, int N) {
    PartialSum out;
    for (int n = -N; n <= N; ++n) {
        const double b = sinc_basis(sigma, n, y);
        out.value += b * b;
    }
    const double c = std::abs(sigma * y);
    out.tail_bound = pi * N > c ? 2.0 / (pi * (pi * N - c)) : std::numeric_limits<double>::infinity();
    return out;
}

inline double coefficient_l1(const TrigSlice& g) {
    double s = 0.0;
    for (const auto& [j, c] : g.coeffs()) s += std::abs(c);
    return s;
}

inline void require_type(const TrigSlice& g, double sigma) {
    if (!(sigma > 0.0)) throw PreconditionError("sinc: sigma must be positive");
    if (g.type() > sigma * (1.0 + 1e-12)) throw PreconditionError("sinc: slice type exceeds sigma");
}

struct Reconstruction {
    cplx value;
    double tail_bound = 0.0;
};

//
// (g(x) - g(y))/(x - y) = Σ_n (-1)^n dd_g(x, πn/σ) sin(σy)/(σy - πn).
// Omitted terms obey |dd| ≤ 2‖g‖σ/|σx - πn| and |basis| ≤ 1/|σy - πn|,
// so the tail is at most 4‖g‖σ/(π(πN - c)) with c = σ max(|x|, |y|).
//
inline Reconstruction reconstruct_dd(const TrigSlice& g, double sigma, double x, double y, int N) {
    require_type(g, sigma);
    if (N < 1) throw PreconditionError("reconstruct_dd: N must be >= 1");
    Reconstruction out{0.0, 0.0};
    for (int n = -N; n <= N; ++n) {
        const double tn = pi * n / sigma;
        out.value += (n % 2 == 0 ? 1.0 : -1.0) * g.divided_difference(x, tn) * sinc_basis(sigma, n, y);
    }
    const double c = sigma * std::max(std::abs(x), std::abs(y));
    const double norm = coefficient_l1(g);
    out.tail_bound = norm == 0.0 ? 0.0
                     : pi * N > c ? 4.0 * norm * sigma / (pi * (pi * N - c))
                                  : std::numeric_limits<double>::infinity();
    return out;
}

// Σ_{|n|≤N} |g(x) - g(πn/σ)|²/(σx - πn)².
inline double row_energy(const TrigSlice& g, double sigma, double x, int N) {
    require_type(g, sigma);
    double s = 0.0;
    for (int n = -N; n <= N; ++n) s += std::norm(g.divided_difference(x, pi * n / sigma));
    return s / (sigma * sigma);
}

struct IntegralResult {
    cplx value;
    double error = 0.0;  // quadrature estimate plus analytic tail bound
    bool converged = true;
};

namespace detail {

using Spectrum = std::map<double, cplx>;

inline void add_term(Spectrum& s, double omega, cplx c) {
    if (c != cplx(0.0)) s[omega] += c;
}

// Spectrum of a product of two trigonometric sums.
inline Spectrum multiply(const Spectrum& p, const Spectrum& q) {
    Spectrum out;
    for (const auto& [a, ca] : p)
        for (const auto& [b, cb] : q) add_term(out, a + b, ca * cb);
    return out;
}

inline Spectrum conjugate(const Spectrum& p) {
    Spectrum out;
    for (const auto& [a, c] : p) out[-a] += std::conj(c);
    return out;
}

// t -> g(x) - g(t)
inline Spectrum difference_spectrum(const TrigSlice& g, double x) {
    Spectrum out;
    out[0.0] += g(x);
    for (const auto& [w, c] : g.spectrum()) out[w] -= c;
    return out;
}

//
// ∫_R F(t) dt where F(t) = P(t)/((t-a)(t-b)) for a trigonometric polynomial P
// outside [lo, hi]. `integrand` must evaluate F stably on [lo, hi].
//
template <typename F>
IntegralResult integrate_line(const F& integrand, const Spectrum& p, double a, double b, double lo, double hi,
                              double tol, int panels) {
    auto core = adaptive_simpson(integrand, lo, hi, tol, panels);
    const TailEstimate right = rational_tail(p, a, b, hi);
    const TailEstimate left = rational_tail(reflect_spectrum(p), -a, -b, -lo);
    IntegralResult out;
    out.value = core.value + right.value + left.value;
    out.error = core.error + right.bound + left.bound;
    out.converged = core.converged;
    return out;
}

}  // namespace detail

//
// (1/(πσ)) ∫ |g(x) - g(t)|²/(x - t)² dt, the integral form of the row energy.
//
inline IntegralResult row_energy_integral(const TrigSlice& g, double sigma, double x, double tol = 1e-8) {
    require_type(g, sigma);
    const detail::Spectrum d = detail::difference_spectrum(g, x);
    const detail::Spectrum p = detail::multiply(d, detail::conjugate(d));
    const double half = 50.0 * pi / sigma;
    const double scale = 1.0 / (pi * sigma);
    auto integrand = [&](double t) { return std::norm(g.divided_difference(x, t)); };
    const int panels = 400;
    auto r = detail::integrate_line(
        [&](double t) { return cplx(integrand(t)); }, p, x, x, x - half, x + half, tol / scale, panels);
    r.value *= scale;
    r.error *= scale;
    return r;
}

//
// (1/π) ∫ (g(x) - g(t))/(x - t) · sin(σ(y - t))/(y - t) dt, which reproduces
// the divided difference at (x, y).
//
inline IntegralResult reproducing_integral(const TrigSlice& g, double sigma, double x, double y,
                                           double quad_tol = 1e-8) {
    require_type(g, sigma);
    detail::Spectrum s;  // t -> sin(σ(y - t))
    s[-sigma] += std::polar(1.0, sigma * y) / cplx(0.0, 2.0);
    s[sigma] -= std::polar(1.0, -sigma * y) / cplx(0.0, 2.0);
    const detail::Spectrum p = detail::multiply(detail::difference_spectrum(g, x), s);
    const double c = 0.5 * (x + y);
    const double half = 50.0 * pi / sigma + 0.5 * std::abs(x - y);
    auto integrand = [&](double t) { return g.divided_difference(x, t) * sigma * sinc(sigma * (y - t)); };
    auto r = detail::integrate_line(integrand, p, x, y, c - half, c + half, quad_tol * pi, 400);
    r.value /= pi;
    r.error /= pi;
    if (!r.converged) throw Error("reproducing_integral: quadrature did not converge (error " +
                                  std::to_string(r.error) + ")");
    return r;
}

// (1/(πσ)) ∫ sin²(σ(y - t))/(y - t)² dt, equal to 1.
inline IntegralResult basis_normalization_integral(double sigma, double y, double tol = 1e-10) {
    if (!(sigma > 0.0)) throw PreconditionError("basis_normalization_integral: sigma must be positive");
    detail::Spectrum p;  // sin²(σ(y - t)) = 1/2 - (e^{2iσ(y-t)} + e^{-2iσ(y-t)})/4
    p[0.0] += 0.5;
    p[-2.0 * sigma] -= 0.25 * std::polar(1.0, 2.0 * sigma * y);
    p[2.0 * sigma] -= 0.25 * std::polar(1.0, -2.0 * sigma * y);
    const double half = 200.0 * pi / sigma;
    auto integrand = [&](double t) {
        const double s = sinc(sigma * (y - t));
        return cplx(sigma * sigma * s * s);
    };
    auto r = detail::integrate_line(integrand, p, y, y, y - half, y + half, tol * pi * sigma, 800);
    const double scale = 1.0 / (pi * sigma);
    r.value *= scale;
    r.error *= scale;
    return r;
}

// (1/π) ∫ min(4, u²)/u² du = 8/π: the envelope bounding every row energy.
inline IntegralResult row_energy_envelope(double tol = 1e-10) {
    auto integrand = [](double u) { return u * u <= 4.0 ? 1.0 : 4.0 / (u * u); };
    const double L = 1e4;
    // Breakpoints at ±2 land on panel edges.
    auto core = adaptive_simpson(integrand, -2.0, 2.0, tol, 4);
    auto right = adaptive_simpson(integrand, 2.0, L, tol, 64);
    auto left = adaptive_simpson(integrand, -L, -2.0, tol, 64);
    IntegralResult out;
    out.value = (core.value + right.value + left.value + 2.0 * 4.0 / L) / pi;
    out.error = (core.error + right.error + left.error) / pi;
    out.converged = core.converged && right.converged && left.converged;
    return out;
}

//
// Factorization Φ_jk = Σ_n A_jn B_kn of a divided-difference kernel.
// dx: A_jn = basis_n(x1_j), B_kn = (-1)^n dd_{f(·, y2_k)}(x2_k, πn/σ).
// dy: A_jn = (-1)^n dd_{f(x1_j, ·)}(y1_j, πn/σ), B_kn = basis_n(y2_k).
//
struct HaagerupFactorization {
    CMatrix a;
    CMatrix b;
    double sigma = 0.0;
    int truncation = 0;
    double entry_tail = 0.0;  // bound on |Φ_jk - Σ_{|n|≤N} A_jn B_kn|
    double energy_a = 0.0;    // √(max_j Σ_n |A_jn|²)
    double energy_b = 0.0;
    double upper = 0.0;       // energy_a · energy_b

    Factorization factors() const { return {a, b, entry_tail}; }
};

inline HaagerupFactorization haagerup_factorization(const TrigPolynomial& f, Axis axis, const CVector& lambda,
                                                    const CVector& mu, int N = 2000, double sigma = 0.0) {
    if (N < 1) throw PreconditionError("haagerup_factorization: N must be >= 1");
    if (sigma <= 0.0) sigma = f.support_radius() > 0.0 ? f.support_radius() : f.base_step();
    if (f.support_radius() > sigma * (1.0 + 1e-12))
        throw PreconditionError("haagerup_factorization: support radius exceeds sigma");
    const int cols = 2 * N + 1;
    HaagerupFactorization out;
    out.sigma = sigma;
    out.truncation = N;
    out.a.resize(lambda.size(), cols);
    out.b.resize(mu.size(), cols);
    auto coord = [axis](cplx z) { return axis == Axis::x ? z.real() : z.imag(); };
    double reach = 0.0;
    double norm = 0.0;
    for (const auto& [fr, c] : f.coeffs()) norm += std::abs(c);
    auto fill_dd = [&](CMatrix& m, Index row, const TrigSlice& g, double s) {
        for (int n = -N; n <= N; ++n)
            m(row, n + N) = (n % 2 == 0 ? 1.0 : -1.0) * g.divided_difference(s, pi * n / sigma);
    };
    auto fill_basis = [&](CMatrix& m, Index row, double s) {
        for (int n = -N; n <= N; ++n) m(row, n + N) = sinc_basis(sigma, n, s);
    };
    for (Index j = 0; j < lambda.size(); ++j) {
        reach = std::max(reach, std::abs(coord(lambda(j))));
        if (axis == Axis::x)
            fill_basis(out.a, j, lambda(j).real());
        else
            fill_dd(out.a, j, slice_y(f, lambda(j).real()), lambda(j).imag());
    }
    for (Index k = 0; k < mu.size(); ++k) {
        reach = std::max(reach, std::abs(coord(mu(k))));
        if (axis == Axis::x)
            fill_dd(out.b, k, slice_x(f, mu(k).imag()), mu(k).real());
        else
            fill_basis(out.b, k, mu(k).imag());
    }
    const double c = sigma * reach;
    const bool trivial = f.support_radius() == 0.0;
    out.entry_tail = trivial ? 0.0
                     : pi * N > c ? 4.0 * norm * sigma / (pi * (pi * N - c))
                                  : std::numeric_limits<double>::infinity();
    out.energy_a = std::sqrt(max_row_energy(out.a));
    out.energy_b = std::sqrt(max_row_energy(out.b));
    out.upper = out.energy_a * out.energy_b;
    return out;
}

inline std::string factorization_csv(const HaagerupFactorization& h) {
    return "# A\n" + entries_csv(h.a) + "# B\n" + entries_csv(h.b);
}

}  // namespace opcalc

#endif
