#ifndef OPCALC_BANDLIMITED_HPP
#define OPCALC_BANDLIMITED_HPP
//
// Band-limited functions on R^2 with frequencies on a lattice h*Z^2, the
// dyadic Littlewood-Paley split f_n = f * W_n, de la Vallee Poussin smoothing
// f * V_n, certified sup-norm brackets and the function-space seminorms built
// on top of them.
//

#include <algorithm>
#include <cmath>
#include <compare>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "quadrature.hpp"

namespace opcalc {

struct Freq {
    int j = 0;
    int k = 0;
    auto operator<=>(const Freq&) const = default;
};

// Closed interval [lower, upper] known to contain a sup-norm.
struct Bracket {
    double lower = 0.0;
    double upper = 0.0;
    double width() const { return upper - lower; }
};

// f(x, y) = Σ c_{jk} exp(i h (j x + k y)).
class TrigPolynomial {
  public:
    using Coefficients = std::map<Freq, cplx>;

    TrigPolynomial() = default;

    TrigPolynomial(double base_step, Coefficients coeffs) : h_(base_step) {
        if (!(base_step > 0.0) || !std::isfinite(base_step))
            throw PreconditionError("TrigPolynomial: base step must be positive and finite");
        for (const auto& [freq, c] : coeffs)
            if (c != cplx(0.0)) coeffs_.emplace(freq, c);
        for (const auto& [freq, c] : coeffs_) radius_ = std::max(radius_, frequency_modulus(freq));
    }

    static TrigPolynomial constant(cplx c, double base_step = 1.0) { return {base_step, {{Freq{0, 0}, c}}}; }

    // c * exp(i h (j x + k y))
    static TrigPolynomial exponential(int j, int k, double base_step = 1.0, cplx c = 1.0) {
        return {base_step, {{Freq{j, k}, c}}};
    }

    double base_step() const { return h_; }
    const Coefficients& coeffs() const { return coeffs_; }
    double support_radius() const { return radius_; }
    bool is_zero() const { return coeffs_.empty(); }
    double period() const { return 2.0 * pi / h_; }

    double frequency_modulus(const Freq& f) const { return h_ * std::hypot(double(f.j), double(f.k)); }

    cplx coefficient(Freq f) const {
        auto it = coeffs_.find(f);
        return it == coeffs_.end() ? cplx(0.0) : it->second;
    }

    cplx operator()(double x, double y) const {
        cplx sum = 0.0;
        for (const auto& [f, c] : coeffs_) sum += c * std::polar(1.0, h_ * (f.j * x + f.k * y));
        return sum;
    }

    // Coefficientwise map c_{jk} -> m(|ξ_{jk}|) c_{jk}.
    template <typename Multiplier>
    TrigPolynomial radial_multiply(const Multiplier& m) const {
        Coefficients out;
        for (const auto& [f, c] : coeffs_) out.emplace(f, m(frequency_modulus(f)) * c);
        return {h_, std::move(out)};
    }

    TrigPolynomial scaled(cplx s) const {
        Coefficients out;
        for (const auto& [f, c] : coeffs_) out.emplace(f, s * c);
        return {h_, std::move(out)};
    }

    friend TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b) {
        require_same_lattice(a, b);
        Coefficients out = a.coeffs_;
        for (const auto& [f, c] : b.coeffs_) out[f] += c;
        return {a.lattice_step(b), std::move(out)};
    }

    friend TrigPolynomial operator-(const TrigPolynomial& a, const TrigPolynomial& b) { return a + b.scaled(-1.0); }

  private:
    static void require_same_lattice(const TrigPolynomial& a, const TrigPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return;
        if (std::abs(a.h_ - b.h_) > 1e-15 * a.h_) throw PreconditionError("TrigPolynomial: lattice steps differ");
    }
    double lattice_step(const TrigPolynomial& b) const {
        if (is_zero() && !b.is_zero()) return b.h_;
        return h_ > 0.0 ? h_ : b.h_;
    }

    double h_ = 1.0;
    Coefficients coeffs_;
    double radius_ = 0.0;
};

// One-variable trigonometric polynomial g(t) = Σ c_j exp(i h j t); used for
// slices of a TrigPolynomial along one axis.
class TrigSlice {
  public:
    TrigSlice() = default;
    TrigSlice(double base_step, std::map<int, cplx> coeffs) : h_(base_step) {
        if (!(base_step > 0.0)) throw PreconditionError("TrigSlice: base step must be positive");
        for (const auto& [j, c] : coeffs)
            if (c != cplx(0.0)) coeffs_.emplace(j, c);
        for (const auto& [j, c] : coeffs_) type_ = std::max(type_, h_ * std::abs(j));
    }

    double base_step() const { return h_; }
    const std::map<int, cplx>& coeffs() const { return coeffs_; }
    // Exponential type: the largest frequency present.
    double type() const { return type_; }

    cplx operator()(double t) const {
        cplx sum = 0.0;
        for (const auto& [j, c] : coeffs_) sum += c * std::polar(1.0, h_ * j * t);
        return sum;
    }

    cplx derivative(double t) const {
        cplx sum = 0.0;
        for (const auto& [j, c] : coeffs_) sum += c * cplx(0.0, h_ * j) * std::polar(1.0, h_ * j * t);
        return sum;
    }

    // (g(s) - g(t)) / (s - t) without cancellation:
    // (e^{ias} - e^{iat})/(s - t) = i a e^{ia(s+t)/2} sinc(a(s-t)/2); the
    // derivative at s when s == t.
    cplx divided_difference(double s, double t) const {
        const double mid = 0.5 * (s + t);
        const double half = 0.5 * (s - t);
        cplx sum = 0.0;
        for (const auto& [j, c] : coeffs_) {
            const double a = h_ * j;
            sum += c * cplx(0.0, a) * std::polar(1.0, a * mid) * sinc(a * half);
        }
        return sum;
    }

    // Frequency -> coefficient map (frequencies are h*j).
    std::map<double, cplx> spectrum() const {
        std::map<double, cplx> out;
        for (const auto& [j, c] : coeffs_) out[h_ * j] += c;
        return out;
    }

    // Certified bracket for sup |g| on R from an M-point periodic grid.
    Bracket sup_norm(int refinement) const {
        if (coeffs_.empty()) return {0.0, 0.0};
        const double period = 2.0 * pi / h_;
        const double step = period / refinement;
        const double eps = type_ * step * 0.5;
        if (!(eps < 1.0)) throw PreconditionError("TrigSlice::sup_norm: refinement too coarse for the type");
        double lower = 0.0;
        for (int a = 0; a < refinement; ++a) lower = std::max(lower, std::abs((*this)(a * step)));
        return {lower, lower / (1.0 - eps)};
    }

  private:
    double h_ = 1.0;
    std::map<int, cplx> coeffs_;
    double type_ = 0.0;
};

// t -> f(t, y0)
inline TrigSlice slice_x(const TrigPolynomial& f, double y0) {
    std::map<int, cplx> out;
    for (const auto& [fr, c] : f.coeffs()) out[fr.j] += c * std::polar(1.0, f.base_step() * fr.k * y0);
    return {f.base_step(), std::move(out)};
}

// t -> f(x0, t)
inline TrigSlice slice_y(const TrigPolynomial& f, double x0) {
    std::map<int, cplx> out;
    for (const auto& [fr, c] : f.coeffs()) out[fr.k] += c * std::polar(1.0, f.base_step() * fr.j * x0);
    return {f.base_step(), std::move(out)};
}

//
// Cutoff window: w supported in [1/2, 2] with w(x) + w(x/2) = 1 on [1, 2],
// v = 1 on [-1, 1] and v = w(|x|) outside.
//
class CutoffWindow {
  public:
    using Profile = std::function<double(double)>;

    // Smooth step built from e^{-1/t}: θ(0) = 0, θ(1) = 1.
    static double smooth_step(double t) {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
    }

    static double standard_w(double x) {
        if (x <= 0.5 || x >= 2.0) return 0.0;
        if (x <= 1.0) return smooth_step(2.0 * x - 1.0);
        return 1.0 - smooth_step(x - 1.0);
    }

    static CutoffWindow standard() { return CutoffWindow(); }

    CutoffWindow() : w_(&CutoffWindow::standard_w) {}
    explicit CutoffWindow(Profile w) : w_(std::move(w)) {}

    double w(double x) const { return w_(x); }
    double v(double x) const {
        const double ax = std::abs(x);
        return ax <= 1.0 ? 1.0 : w_(ax);
    }

    // Sampled check of the defining identities; returns the worst violation.
    double invariant_defect(int samples = 64) const {
        double worst = 0.0;
        for (int i = 0; i <= samples; ++i) {
            const double x = 1.0 + double(i) / samples;
            worst = std::max(worst, std::abs(w(x) + w(0.5 * x) - 1.0));
            const double outside = 0.5 * double(i) / samples;  // [0, 1/2]
            worst = std::max(worst, std::abs(w(outside)));
            worst = std::max(worst, std::abs(w(2.0 + double(i))));
            if (w(0.5 + 1.5 * double(i) / samples) < 0.0) worst = std::max(worst, 1.0);
        }
        for (int i = 1; i <= samples; ++i) {
            const double x = std::exp(-8.0 + 16.0 * double(i) / samples);
            double sum = 0.0;
            for (int n = -40; n <= 40; ++n) sum += w(std::ldexp(x, -n));
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        return worst;
    }

  private:
    Profile w_;
};

//
// Modulus of continuity ω: ω(0) = 0, nondecreasing, subadditive.
//
class ModulusOfContinuity {
  public:
    enum class Kind { power, capped_linear, custom };

    static ModulusOfContinuity power(double alpha) {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw PreconditionError("power modulus needs 0 < alpha <= 1");
        ModulusOfContinuity m(Kind::power, alpha);
        m.eval_ = [alpha](double t) { return t <= 0.0 ? 0.0 : std::pow(t, alpha); };
        return m;
    }

    static ModulusOfContinuity capped_linear(double d) {
        if (!(d > 0.0)) throw PreconditionError("capped linear modulus needs d > 0");
        ModulusOfContinuity m(Kind::capped_linear, d);
        m.eval_ = [d](double t) { return t <= 0.0 ? 0.0 : std::min(t, d); };
        return m;
    }

    static ModulusOfContinuity custom(std::function<double(double)> omega, std::string name = "custom") {
        ModulusOfContinuity m(Kind::custom, 0.0);
        m.eval_ = std::move(omega);
        m.name_ = std::move(name);
        return m;
    }

    Kind kind() const { return kind_; }
    // α for power, d for capped_linear.
    double parameter() const { return param_; }
    const std::string& name() const { return name_; }

    double operator()(double t) const { return eval_(t); }

    // Largest sampled violation of ω(0) = 0, monotonicity and subadditivity.
    double invariant_defect(double range = 10.0, int samples = 200) const {
        double worst = std::abs(eval_(0.0));
        for (int i = 1; i <= samples; ++i) {
            const double t = range * i / samples;
            const double prev = range * (i - 1) / samples;
            worst = std::max(worst, eval_(prev) - eval_(t));
            for (int k = 1; k <= i; k += std::max(1, samples / 20)) {
                const double s = range * k / samples;
                worst = std::max(worst, eval_(t + s) - eval_(t) - eval_(s));
            }
        }
        return worst;
    }

  private:
    ModulusOfContinuity(Kind k, double p) : kind_(k), param_(p) {
        name_ = k == Kind::power ? "power" : (k == Kind::capped_linear ? "capped_linear" : "custom");
    }

    Kind kind_;
    double param_;
    std::string name_;
    std::function<double(double)> eval_;
};

// ---------------------------------------------------------------------------

inline cplx evaluate(const TrigPolynomial& f, double x, double y) { return f(x, y); }

inline TrigPolynomial partial_derivative(const TrigPolynomial& f, Axis axis) {
    TrigPolynomial::Coefficients out;
    const double h = f.base_step();
    for (const auto& [fr, c] : f.coeffs()) {
        const int m = axis == Axis::x ? fr.j : fr.k;
        if (m != 0) out.emplace(fr, c * cplx(0.0, h * m));
    }
    return {h, std::move(out)};
}

// f_n = f * W_n, exact on coefficients.
inline TrigPolynomial lp_piece(const TrigPolynomial& f, int n, const CutoffWindow& win = CutoffWindow::standard()) {
    const double scale = std::ldexp(1.0, -n);
    return f.radial_multiply([&](double r) { return win.w(r * scale); });
}

// f * V_n, exact on coefficients.
inline TrigPolynomial vp_smooth(const TrigPolynomial& f, int n, const CutoffWindow& win = CutoffWindow::standard()) {
    const double scale = std::ldexp(1.0, -n);
    return f.radial_multiply([&](double r) { return win.v(r * scale); });
}

// Indices n for which lp_piece(f, n) can be nonzero: w(r/2^n) != 0 needs
// 2^{n-1} < r < 2^{n+1}. Empty (first > last) for constants.
inline std::pair<int, int> piece_range(const TrigPolynomial& f) {
    double rmin = std::numeric_limits<double>::infinity();
    double rmax = 0.0;
    for (const auto& [fr, c] : f.coeffs()) {
        const double r = f.frequency_modulus(fr);
        if (r > 0.0) {
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
    }
    if (rmax == 0.0) return {1, 0};
    return {int(std::floor(std::log2(rmin))) - 1, int(std::ceil(std::log2(rmax))) + 1};
}

// Nonzero Littlewood-Paley pieces keyed by n.
inline std::map<int, TrigPolynomial> lp_pieces(const TrigPolynomial& f,
                                               const CutoffWindow& win = CutoffWindow::standard()) {
    std::map<int, TrigPolynomial> out;
    const auto [lo, hi] = piece_range(f);
    for (int n = lo; n <= hi; ++n) {
        TrigPolynomial piece = lp_piece(f, n, win);
        if (!piece.is_zero()) out.emplace(n, std::move(piece));
    }
    return out;
}

//
// Sup norm on the M x M periodic grid. Any point lies within δ√2/2 of a grid
// node (δ = period / M) and |∇f| ≤ σ‖f‖∞ (Bernstein), hence
//   ‖f‖∞ ≤ max_grid |f| / (1 - σ δ √2/2).
//
inline Bracket sup_norm(const TrigPolynomial& f, int refinement) {
    if (refinement < 1) throw PreconditionError("sup_norm: refinement must be positive");
    if (f.is_zero()) return {0.0, 0.0};
    const int M = refinement;
    const double eps = f.support_radius() * (f.period() / M) * std::sqrt(0.5);
    if (!(eps < 1.0))
        throw PreconditionError("sup_norm: refinement " + std::to_string(M) + " too coarse for support radius " +
                                std::to_string(f.support_radius()));

    // Group coefficients by j so the grid is a product (M x J) * (J x M).
    std::map<int, std::vector<std::pair<int, cplx>>> by_j;
    for (const auto& [fr, c] : f.coeffs()) by_j[fr.j].emplace_back(fr.k, c);
    const Index J = Index(by_j.size());

    // Unit roots e^{2πi m/M}; exact index arithmetic keeps the phases accurate.
    std::vector<cplx> roots(M);
    for (int m = 0; m < M; ++m) roots[m] = std::polar(1.0, 2.0 * pi * m / M);
    auto root = [&](long long e) {
        long long r = e % M;
        if (r < 0) r += M;
        return roots[std::size_t(r)];
    };

    CMatrix G(J, M);
    std::vector<int> js;
    {
        Index row = 0;
        for (const auto& [j, terms] : by_j) {
            js.push_back(j);
            for (int b = 0; b < M; ++b) {
                cplx s = 0.0;
                for (const auto& [k, c] : terms) s += c * root((long long)k * b);
                G(row, b) = s;
            }
            ++row;
        }
    }
    double lower = 0.0;
    const int block = std::min(M, 256);
    CMatrix Ex(block, J);
    for (int a0 = 0; a0 < M; a0 += block) {
        const int rows = std::min(block, M - a0);
        for (Index jj = 0; jj < J; ++jj)
            for (int a = 0; a < rows; ++a) Ex(a, jj) = root((long long)js[std::size_t(jj)] * (a0 + a));
        const CMatrix values = Ex.topRows(rows) * G;
        lower = std::max(lower, values.cwiseAbs().maxCoeff());
    }
    return {lower, lower / (1.0 - eps)};
}

struct SupNormOptions {
    int initial = 256;
    int cap = 4096;
    double relative_width = 1e-6;
};

// Refinement doubled from `initial` until the bracket is tighter than
// relative_width * lower, or the cap is reached.
inline Bracket sup_norm(const TrigPolynomial& f, const SupNormOptions& opt = {}) {
    if (f.is_zero()) return {0.0, 0.0};
    int M = std::max(opt.initial, 1);
    // Start at the first refinement that meets the Bernstein precondition comfortably.
    while (f.support_radius() * (f.period() / M) * std::sqrt(0.5) >= 0.5 && M < opt.cap) M *= 2;
    Bracket b = sup_norm(f, M);
    while (b.width() > opt.relative_width * b.lower && M < opt.cap) {
        M = std::min(2 * M, opt.cap);
        b = sup_norm(f, M);
    }
    return b;
}

// Σ |c_jk|, an upper bound for ‖f‖∞ needing no grid.
inline double coefficient_l1_norm(const TrigPolynomial& f) {
    double s = 0.0;
    for (const auto& [fr, c] : f.coeffs()) s += std::abs(c);
    return s;
}

// Certified upper bound for ‖f‖∞: the smaller of the coefficient l1 norm and
// the grid bracket, the latter only when the cap resolves the support radius.
inline double certified_sup_upper(const TrigPolynomial& f, const SupNormOptions& opt = {}) {
    if (f.is_zero()) return 0.0;
    const double l1 = coefficient_l1_norm(f);
    const double eps_at_cap = f.support_radius() * (f.period() / opt.cap) * std::sqrt(0.5);
    if (!(eps_at_cap < 0.5)) return l1;
    return std::min(l1, sup_norm(f, opt).upper);
}

// Σ_n 2^n ‖f_n‖∞ with upper brackets: the B^1_{∞1} surrogate norm.
inline double besov_b1inf1_norm(const TrigPolynomial& f, const CutoffWindow& win = CutoffWindow::standard(),
                                const SupNormOptions& opt = {}) {
    double total = 0.0;
    for (const auto& [n, piece] : lp_pieces(f, win)) total += std::ldexp(sup_norm(piece, opt).upper, n);
    return total;
}

// sup_n 2^{nα} ‖f_n‖∞ (upper brackets): the B^α_∞ seminorm.
inline double besov_sup_seminorm(const TrigPolynomial& f, double alpha,
                                 const CutoffWindow& win = CutoffWindow::standard(), const SupNormOptions& opt = {}) {
    double best = 0.0;
    for (const auto& [n, piece] : lp_pieces(f, win))
        best = std::max(best, std::pow(2.0, n * alpha) * sup_norm(piece, opt).upper);
    return best;
}

//
// Lower estimate of sup |f(z1) - f(z2)| / ω(|z1 - z2|): every grid-adjacent
// pair at refinement 64, then `samples` seeded random pairs (running max, so
// a longer run with the same seed never decreases the estimate).
//
inline double seminorm_estimate(const TrigPolynomial& f, const ModulusOfContinuity& omega, int samples,
                                std::uint64_t seed) {
    if (samples < 1) throw PreconditionError("seminorm_estimate: samples must be >= 1");
    if (f.is_zero() || f.support_radius() == 0.0) return 0.0;
    const double P = f.period();
    constexpr int grid = 64;
    const double step = P / grid;
    std::vector<cplx> values(grid * grid);
    for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) values[a * grid + b] = f(a * step, b * step);
    const double w_step = omega(step);
    double best = 0.0;
    if (w_step > 0.0) {
        for (int a = 0; a < grid; ++a)
            for (int b = 0; b < grid; ++b) {
                const cplx v = values[a * grid + b];
                best = std::max(best, std::abs(v - values[((a + 1) % grid) * grid + b]) / w_step);
                best = std::max(best, std::abs(v - values[a * grid + (b + 1) % grid]) / w_step);
            }
    }
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const double x = rng.uniform(0.0, P);
        const double y = rng.uniform(0.0, P);
        const double angle = rng.uniform(0.0, 2.0 * pi);
        const double r = P * std::pow(10.0, rng.uniform(-4.0, 0.0));
        const double wr = omega(r);
        if (!(wr > 0.0)) continue;
        const cplx d = f(x, y) - f(x + r * std::cos(angle), y + r * std::sin(angle));
        best = std::max(best, std::abs(d) / wr);
    }
    return best;
}

//
// ω★(x) = x ∫_x^∞ ω(t)/t² dt.
//
struct OmegaStarQuadrature {
    double value = 0.0;
    double tail_estimate = 0.0;  // integrand size at the truncation point
    double cutoff = 0.0;         // T where the integral was truncated
    bool converged = true;
};

// Numerical route for any modulus. With t = x e^s the integral becomes
// ∫_0^∞ ω(x e^s) e^{-s} ds, truncated once the integrand drops below
// 1e-12 of the accumulated value.
inline OmegaStarQuadrature omega_star_quadrature(const ModulusOfContinuity& omega, double x, double tol = 1e-10) {
    if (!(x > 0.0)) throw PreconditionError("omega_star: x must be positive");
    auto g = [&](double s) { return omega(x * std::exp(s)) * std::exp(-s); };
    OmegaStarQuadrature out;
    // e^s stays finite for s < 700.
    constexpr int max_chunks = 700;
    for (int k = 0; k < max_chunks; ++k) {
        if (!std::isfinite(g(double(k + 1)))) break;
        auto r = adaptive_simpson(g, double(k), double(k + 1), tol * 1e-2);
        out.value += r.value;
        out.converged = out.converged && r.converged;
        const double end = g(double(k + 1));
        if (end < 1e-12 * out.value) {
            out.tail_estimate = end;
            out.cutoff = x * std::exp(double(k + 1));
            return out;
        }
    }
    throw PreconditionError("omega_star undefined: tail integral of omega(t)/t^2 does not converge");
}

// Closed forms for the power and capped-linear kinds, quadrature otherwise.
inline double omega_star(const ModulusOfContinuity& omega, double x) {
    if (!(x > 0.0)) throw PreconditionError("omega_star: x must be positive");
    switch (omega.kind()) {
    case ModulusOfContinuity::Kind::power: {
        const double a = omega.parameter();
        if (a >= 1.0) throw PreconditionError("omega_star undefined for power modulus with alpha >= 1");
        return std::pow(x, a) / (1.0 - a);
    }
    case ModulusOfContinuity::Kind::capped_linear: {
        const double d = omega.parameter();
        if (x >= d) return d;
        return x * std::log(d / x) + x;
    }
    case ModulusOfContinuity::Kind::custom:
        break;
    }
    return omega_star_quadrature(omega, x).value;
}

//
// Empirical Jackson-type constants ‖f - f*V_n‖∞ / (ω(2^-n) ‖f‖_Λω) and the
// W_n variant ‖f*W_n‖∞ / (ω(2^-n) ‖f‖_Λω).
//
struct JacksonRow {
    int n = 0;
    double lhs_v = 0.0;    // ‖f - f*V_n‖∞, upper bracket
    double ratio_v = 0.0;
    double lhs_w = 0.0;    // ‖f*W_n‖∞, upper bracket
    double ratio_w = 0.0;
};

struct JacksonOptions {
    int seminorm_samples = 4096;
    std::uint64_t seed = 0;
    SupNormOptions sup{256, 1024, 1e-6};
};

inline std::vector<JacksonRow> jackson_check(const TrigPolynomial& f, const ModulusOfContinuity& omega, int n_first,
                                             int n_last, const CutoffWindow& win = CutoffWindow::standard(),
                                             const JacksonOptions& opt = {}) {
    const double semi = (f.is_zero() || f.support_radius() == 0.0)
                            ? 0.0
                            : seminorm_estimate(f, omega, opt.seminorm_samples, opt.seed);
    std::vector<JacksonRow> rows;
    for (int n = n_first; n <= n_last; ++n) {
        JacksonRow row;
        row.n = n;
        row.lhs_v = sup_norm(f - vp_smooth(f, n, win), opt.sup).upper;
        row.lhs_w = sup_norm(lp_piece(f, n, win), opt.sup).upper;
        const double denom = omega(std::ldexp(1.0, -n)) * semi;
        if (denom > 0.0) {
            row.ratio_v = row.lhs_v / denom;
            row.ratio_w = row.lhs_w / denom;
        }
        rows.push_back(row);
    }
    return rows;
}

//
// Seeded random polynomial with `terms` lattice frequencies inside radius sigma.
//
inline TrigPolynomial random_trig_polynomial(double base_step, double sigma, int terms, std::uint64_t seed,
                                             bool include_constant = true) {
    Rng rng(seed);
    const int reach = int(std::floor(sigma / base_step));
    TrigPolynomial::Coefficients coeffs;
    int guard = 0;
    while (int(coeffs.size()) < terms && guard++ < 100000) {
        const Freq fr{rng.integer(-reach, reach), rng.integer(-reach, reach)};
        if (base_step * std::hypot(double(fr.j), double(fr.k)) > sigma) continue;
        if (!include_constant && fr.j == 0 && fr.k == 0) continue;
        coeffs[fr] = rng.complex_normal() / std::sqrt(double(terms));
    }
    return {base_step, std::move(coeffs)};
}

}  // namespace opcalc

#endif
