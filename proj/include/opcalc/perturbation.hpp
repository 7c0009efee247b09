#ifndef OPCALC_PERTURBATION_HPP
#define OPCALC_PERTURBATION_HPP
//
// Certified Lipschitz and modulus bounds for functions of normal matrices,
// convex extension by projection, and the perturbation experiments.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "bandlimited.hpp"
#include "doi.hpp"
#include "ideals.hpp"
#include "linalg.hpp"
#include "report.hpp"
#include "spectral.hpp"

namespace opcalc {

// ---------------------------------------------------------------- convex sets

class ConvexBody {
  public:
    enum class Kind { polygon, disc };

    static ConvexBody disc(cplx center, double radius) {
        if (!(radius >= 0.0)) throw PreconditionError("ConvexBody: radius must be nonnegative");
        ConvexBody b(Kind::disc);
        b.center_ = center;
        b.radius_ = radius;
        b.diameter_ = 2.0 * radius;
        return b;
    }

    // Vertices in counterclockwise order.
    static ConvexBody polygon(std::vector<cplx> vertices) {
        if (vertices.size() < 3) throw PreconditionError("ConvexBody: polygon needs at least 3 vertices");
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const cplx e1 = vertices[(i + 1) % n] - vertices[i];
            const cplx e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            if (cross(e1, e2) < 0.0) throw PreconditionError("ConvexBody: polygon must be convex and counterclockwise");
        }
        ConvexBody b(Kind::polygon);
        b.vertices_ = std::move(vertices);
        for (const auto& p : b.vertices_)
            for (const auto& q : b.vertices_) b.diameter_ = std::max(b.diameter_, std::abs(p - q));
        return b;
    }

    static ConvexBody box(const SpectrumBox& s) {
        return polygon({cplx(s.re_min, s.im_min), cplx(s.re_max, s.im_min), cplx(s.re_max, s.im_max),
                        cplx(s.re_min, s.im_max)});
    }

    Kind kind() const { return kind_; }
    double diameter() const { return diameter_; }
    const std::vector<cplx>& vertices() const { return vertices_; }
    cplx center() const { return center_; }
    double radius() const { return radius_; }

    bool contains(cplx z) const {
        if (kind_ == Kind::disc) return std::abs(z - center_) <= radius_;
        const std::size_t n = vertices_.size();
        for (std::size_t i = 0; i < n; ++i)
            if (cross(vertices_[(i + 1) % n] - vertices_[i], z - vertices_[i]) < 0.0) return false;
        return true;
    }

    static double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

  private:
    explicit ConvexBody(Kind k) : kind_(k) {}
    Kind kind_;
    std::vector<cplx> vertices_;
    cplx center_ = 0.0;
    double radius_ = 0.0;
    double diameter_ = 0.0;
};

// Nearest point of K.
inline cplx project_convex(cplx z, const ConvexBody& k) {
    if (k.kind() == ConvexBody::Kind::disc) {
        const cplx d = z - k.center();
        const double r = std::abs(d);
        return r <= k.radius() ? z : k.center() + d * (k.radius() / r);
    }
    if (k.contains(z)) return z;
    const auto& v = k.vertices();
    cplx best = v[0];
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const cplx a = v[i];
        const cplx e = v[(i + 1) % v.size()] - a;
        const double len2 = std::norm(e);
        double t = len2 > 0.0 ? ((z - a) * std::conj(e)).real() / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const cplx p = a + t * e;
        const double d = std::abs(z - p);
        if (d < best_d) best_d = d, best = p;
    }
    return best;
}

inline std::function<cplx(cplx)> extend_by_projection(std::function<cplx(cplx)> f, const ConvexBody& k) {
    return [f = std::move(f), k](cplx z) { return f(project_convex(z, k)); };
}

// ---------------------------------------------------------- certified bounds

// Upper brackets of ‖f_n‖∞ for every nonzero Littlewood-Paley piece.
struct PieceProfile {
    std::map<int, double> upper;

    static PieceProfile of(const TrigPolynomial& f, const CutoffWindow& win = CutoffWindow::standard(),
                           const SupNormOptions& opt = {256, 1024, 1e-6}) {
        PieceProfile p;
        for (const auto& [n, piece] : lp_pieces(f, win)) p.upper[n] = certified_sup_upper(piece, opt);
        return p;
    }

    // 2√3 Σ_n 2^{n+1} ‖f_n‖∞
    double lipschitz() const {
        double s = 0.0;
        for (const auto& [n, u] : upper) s += std::ldexp(u, n + 1);
        return 2.0 * std::sqrt(3.0) * s;
    }

    // min over splits m of δ 2√3 Σ_{n≤m} 2^{n+1}‖f_n‖ + 2 Σ_{n>m} ‖f_n‖
    double modulus(double delta) const {
        if (!(delta > 0.0)) throw PreconditionError("certified_modulus_bound: delta must be positive");
        // Suffix sums so the full-head split has an exactly zero tail.
        std::vector<double> tails(upper.size() + 1, 0.0);
        std::size_t i = upper.size();
        for (auto it = upper.rbegin(); it != upper.rend(); ++it, --i) tails[i - 1] = tails[i] + it->second;
        double head = 0.0;
        double best = 2.0 * tails[0];
        i = 0;
        for (const auto& [n, u] : upper) {
            head += std::ldexp(u, n + 1);
            best = std::min(best, delta * 2.0 * std::sqrt(3.0) * head + 2.0 * tails[++i]);
        }
        return best;
    }
};

inline double certified_lipschitz_constant(const TrigPolynomial& f,
                                           const CutoffWindow& win = CutoffWindow::standard(),
                                           const SupNormOptions& opt = {256, 1024, 1e-6}) {
    return PieceProfile::of(f, win, opt).lipschitz();
}

inline double certified_modulus_bound(const TrigPolynomial& f, double delta,
                                      const CutoffWindow& win = CutoffWindow::standard(),
                                      const SupNormOptions& opt = {256, 1024, 1e-6}) {
    return PieceProfile::of(f, win, opt).modulus(delta);
}

// ------------------------------------------------------------ test functions

// Σ_{k=0}^{K} 2^{-kα} (cos 2^k x + cos 2^k y)/2, a band-limited α-Hölder surrogate.
inline TrigPolynomial holder_surrogate(double alpha, int octaves = 10) {
    TrigPolynomial::Coefficients c;
    for (int k = 0; k <= octaves; ++k) {
        const double a = 0.25 * std::pow(2.0, -k * alpha);
        const int f = 1 << k;
        c[{f, 0}] += a;
        c[{-f, 0}] += a;
        c[{0, f}] += a;
        c[{0, -f}] += a;
    }
    return {1.0, std::move(c)};
}

// ------------------------------------------------------------- normal pairs

struct NormalPair {
    SpectralDecomposition first;
    SpectralDecomposition second;

    CMatrix difference() const { return second.matrix - first.matrix; }
};

inline NormalPair independent_pair(Index n, const SpectrumBox& box, Rng& rng) {
    CVector l1(n), l2(n);
    for (Index j = 0; j < n; ++j) l1(j) = cplx(rng.uniform(box.re_min, box.re_max), rng.uniform(box.im_min, box.im_max));
    for (Index j = 0; j < n; ++j) l2(j) = cplx(rng.uniform(box.re_min, box.re_max), rng.uniform(box.im_min, box.im_max));
    const CMatrix u1 = random_unitary(n, rng);
    const CMatrix u2 = random_unitary(n, rng);
    return {from_spectrum(u1, l1), from_spectrum(u2, l2)};
}

//
// N2 = U V diag(λ + sη) V* U* with V = exp(i s t H): the eigenbasis rotates
// and the eigenvalues move together. s is bisected so ‖N2 - N1‖ ∈ [0.95δ, δ].
//
inline NormalPair coupled_pair(Index n, const SpectrumBox& box, double delta, Rng& rng) {
    if (!(delta > 0.0)) throw PreconditionError("coupled_pair: delta must be positive");
    CVector lambda(n);
    for (Index j = 0; j < n; ++j)
        lambda(j) = cplx(rng.uniform(box.re_min, box.re_max), rng.uniform(box.im_min, box.im_max));
    const CMatrix u = random_unitary(n, rng);
    const CMatrix z = complex_gaussian(n, n, rng);
    const HermitianEigen h = hermitian_eigen(0.5 * (z + z.adjoint()));
    const CVector eta = complex_gaussian(n, 1, rng);
    const double mix = rng.uniform(0.0, 1.0);
    const SpectralDecomposition first = from_spectrum(u, lambda);

    auto build = [&](double s) {
        CVector phases(n);
        for (Index j = 0; j < n; ++j) phases(j) = std::polar(1.0, s * mix * h.values(j));
        const CMatrix v = h.vectors * phases.asDiagonal() * h.vectors.adjoint();
        return from_spectrum(u * v, lambda + s * eta);
    };
    auto gap = [&](const SpectralDecomposition& d) { return operator_norm(d.matrix - first.matrix); };

    double hi = delta;
    SpectralDecomposition cand = build(hi);
    for (int k = 0; k < 200 && gap(cand) <= delta; ++k) cand = build(hi *= 2.0);
    double lo = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        cand = build(mid);
        const double g = gap(cand);
        if (g > delta)
            hi = mid;
        else if (g < 0.95 * delta)
            lo = mid;
        else
            break;
    }
    if (gap(cand) > delta) cand = build(lo);
    return {first, cand};
}

// ------------------------------------------------------------- experiments

inline std::vector<double> default_delta_grid() {
    std::vector<double> g;
    for (int k = 10; k >= 0; --k) g.push_back(std::ldexp(1.0, -k));
    return g;
}

inline double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

inline bool dominated(double measured, double bound) { return measured <= bound * (1.0 + 1e-9) + 1e-300; }

//
// Measured sup_{‖ΔN‖≤δ} ‖f(N1) - f(N2)‖ against δ^α, ω★(δ), the certified
// modulus bound and the capped-linear envelope L ω★_d(δ).
//
inline ExperimentReport experiment_holder_sweep(double alpha, const std::vector<int>& dims,
                                                std::vector<double> delta_grid, int trials, std::uint64_t seed,
                                                const SpectrumBox& box = {}) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("holder-sweep: alpha must lie in (0, 1)");
    if (delta_grid.empty()) delta_grid = default_delta_grid();
    ExperimentReport r;
    r.experiment = "holder-sweep";
    r.seed = seed;
    r.columns = {"delta", "measured_max_norm", "delta_pow_alpha", "omega_star", "certified_modulus_bound",
                 "log_envelope", "measured_over_holder", "omega_star_quadrature_error"};
    r.plot = PlotSpec{"delta", "measured_max_norm", alpha};
    const TrigPolynomial f = holder_surrogate(alpha);
    const PieceProfile profile = PieceProfile::of(f);
    const double lip = profile.lipschitz();
    const double diam = box.diameter();
    const auto power = ModulusOfContinuity::power(alpha);
    const auto capped = ModulusOfContinuity::capped_linear(diam);
    r.meta["alpha"] = alpha;
    r.meta["trials_per_delta"] = trials;
    r.meta["certified_lipschitz"] = lip;
    r.meta["box_diameter"] = diam;
    r.meta["resolved_delta_range"] = {std::ldexp(1.0, -10), 1.0};
    if (trials <= 0) return r;
    double worst_ratio = 0.0;
    for (std::size_t g = 0; g < delta_grid.size(); ++g) {
        const double delta = delta_grid[g];
        double measured = 0.0;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng::substream(seed, std::uint64_t(g) * 1000003ULL + std::uint64_t(t));
            const Index n = dims[std::size_t(t) % dims.size()];
            const NormalPair pr = coupled_pair(n, box, delta, rng);
            measured = std::max(measured, operator_norm(apply_function(f, pr.first) - apply_function(f, pr.second)));
        }
        const double holder = std::pow(delta, alpha);
        const double ostar = omega_star(power, delta);
        const double bound = profile.modulus(delta);
        const double envelope = lip * omega_star(capped, delta);
        const double qerr = std::max(std::abs(ostar - omega_star_quadrature(power, delta).value),
                                     std::abs(omega_star(capped, delta) - omega_star_quadrature(capped, delta).value));
        worst_ratio = std::max(worst_ratio, measured / holder);
        r.add_row({delta, measured, holder, ostar, bound, envelope, measured / holder, qerr});
        r.check(dominated(measured, bound), "holder-sweep: measured exceeds certified modulus bound at delta " +
                                                format_double(delta));
        r.check(std::isfinite(envelope) && dominated(measured, envelope),
                "holder-sweep: measured exceeds log envelope at delta " + format_double(delta));
        r.check(qerr <= 1e-8, "holder-sweep: omega_star closed form disagrees with quadrature at delta " +
                                  format_double(delta));
    }
    r.meta["max_measured_over_holder"] = worst_ratio;
    r.meta["max_measured_over_holder_times_one_minus_alpha"] = worst_ratio * (1.0 - alpha);
    return r;
}

//
// Singular values of D = f(N1) - f(N2) against the decay envelopes in
// s_j(D), s_j(|D|^{1/α}) and head sums.
//
inline ExperimentReport experiment_schatten_decay(double alpha, double p, const std::vector<int>& dims, int trials,
                                                  std::uint64_t seed, const SpectrumBox& box = {}) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("schatten-decay: alpha must lie in (0, 1)");
    if (!(p >= 1.0) || std::isinf(p)) throw PreconditionError("schatten-decay: p must be finite and >= 1");
    ExperimentReport r;
    r.experiment = "schatten-decay";
    r.seed = seed;
    r.columns = {"trial", "dim", "j", "j_plus_one", "s_D", "envelope", "sigma_dN", "s_abs_pow", "s_D_pow",
                 "identity_error", "ratio_sj", "ratio_sigma", "ratio_headsum"};
    r.plot = PlotSpec{"j_plus_one", "s_D", -alpha / p};
    const TrigPolynomial f = holder_surrogate(alpha);
    const double semi = seminorm_estimate(f, ModulusOfContinuity::power(alpha), 20000, seed);
    r.meta["alpha"] = alpha;
    r.meta["p"] = p;
    r.meta["holder_seminorm_estimate"] = semi;
    const IdealSpec ideal = IdealSpec::Sp(p);
    const auto c_ideal = averaging_bound(ideal);
    double c_sj = 0.0, c_sigma = 0.0, c_head = 0.0, c_ideal_hat = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, std::uint64_t(t));
        const Index n = dims[std::size_t(t) % dims.size()];
        const double delta = log_uniform(rng, 1e-3, 1.0);
        const NormalPair pr = coupled_pair(n, box, delta, rng);
        const CMatrix d = apply_function(f, pr.first) - apply_function(f, pr.second);
        const CMatrix dn = pr.difference();
        const SingularSpectrum sd = singular_values(d);
        const SingularSpectrum sn = singular_values(dn);
        const std::vector<double> sig = sigma_averages(sn);
        const CMatrix abs_pow = hermitian_function(CMatrix(d.adjoint() * d),
                                                   [alpha](double x) { return std::pow(std::max(x, 0.0), 0.5 / alpha); });
        const SingularSpectrum sa = singular_values(abs_pow);
        const double s0 = sd[0];
        const double id_tol = 1e-9 * (1.0 + std::pow(s0, 1.0 / alpha)) +
                              std::pow(64.0 * std::numeric_limits<double>::epsilon() * s0 * s0, 0.5 / alpha);
        double head_dn = 0.0, head_abs = 0.0;
        for (Index j = 0; j < n; ++j) {
            const std::size_t js = std::size_t(j);
            head_dn += std::pow(sn[js], p);
            head_abs += std::pow(sa[js], p);
            const double envelope = std::pow(1.0 + double(j), -alpha / p) * std::pow(head_dn, alpha / p);
            const double s_pow = std::pow(sd[js], 1.0 / alpha);
            const double err = std::abs(sa[js] - s_pow);
            const double ratio_sj = envelope > 0.0 && semi > 0.0 ? sd[js] / (semi * envelope) : 0.0;
            const double ratio_sigma = sig[js] > 0.0 && semi > 0.0 ? sa[js] / (std::pow(semi, 1.0 / alpha) * sig[js]) : 0.0;
            const double ratio_head = p > 1.0 && head_dn > 0.0 && semi > 0.0
                                          ? head_abs / (std::pow(semi, p / alpha) * head_dn)
                                          : std::numeric_limits<double>::quiet_NaN();
            c_sj = std::max(c_sj, ratio_sj);
            c_sigma = std::max(c_sigma, ratio_sigma);
            if (std::isfinite(ratio_head)) c_head = std::max(c_head, ratio_head);
            r.add_row({double(t), double(n), double(j), double(j + 1), sd[js], envelope, sig[js], sa[js], s_pow, err,
                       ratio_sj, ratio_sigma, ratio_head});
            r.check(err <= id_tol, "schatten-decay: s_j(|D|^(1/alpha)) != s_j(D)^(1/alpha) at trial " +
                                       std::to_string(t) + ", j " + std::to_string(j));
        }
        if (c_ideal) {
            const double den = *c_ideal * std::pow(semi, 1.0 / alpha) * psi_norm(ideal, sn);
            if (den > 0.0) c_ideal_hat = std::max(c_ideal_hat, psi_norm(ideal, sa) / den);
        }
    }
    r.meta["c_hat_singular_values"] = c_sj;
    r.meta["c_hat_sigma_averages"] = c_sigma;
    r.meta["c_hat_head_sums"] = p > 1.0 ? ordered_json(c_head) : ordered_json(nullptr);
    r.meta["averaging_constant_bound"] = c_ideal ? ordered_json(*c_ideal) : ordered_json(nullptr);
    r.meta["c_hat_ideal"] = c_ideal ? ordered_json(c_ideal_hat) : ordered_json(nullptr);
    return r;
}

// Seeded band-limited test functions shared by the Lipschitz-type suites.
inline std::vector<TrigPolynomial> test_functions(double sigma, std::uint64_t seed, int count = 4) {
    std::vector<TrigPolynomial> out;
    for (int i = 0; i < count; ++i) out.push_back(random_trig_polynomial(0.5, sigma, 12, seed * 7919ULL + std::uint64_t(i)));
    return out;
}

//
// ‖f(N1) - f(N2)‖ / ‖N1 - N2‖ in operator norm and in S1 against the certified
// Lipschitz constant.
//
inline ExperimentReport experiment_lipschitz(const std::vector<int>& dims, double sigma, int trials,
                                             std::uint64_t seed, const SpectrumBox& box = {}) {
    ExperimentReport r;
    r.experiment = "lip-bound";
    r.seed = seed;
    r.columns = {"trial", "function", "dim", "coupled", "delta_norm", "diff_norm", "quotient_op", "quotient_s1",
                 "certified"};
    r.plot = PlotSpec{"delta_norm", "diff_norm", 1.0};
    if (trials <= 0) return r;
    const auto fs = test_functions(sigma, seed);
    std::vector<double> lips;
    for (const auto& f : fs) lips.push_back(certified_lipschitz_constant(f));
    r.meta["sigma"] = sigma;
    r.meta["certified_lipschitz"] = lips;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, std::uint64_t(t));
        const std::size_t fi = std::size_t(t) % fs.size();
        const Index n = dims[std::size_t(t) % dims.size()];
        const bool coupled = t % 2 == 0;
        const NormalPair pr = coupled ? coupled_pair(n, box, log_uniform(rng, 1e-3, 1.0), rng)
                                      : independent_pair(n, box, rng);
        const CMatrix dn = pr.difference();
        const CMatrix d = apply_function(fs[fi], pr.first) - apply_function(fs[fi], pr.second);
        const double dn_op = operator_norm(dn);
        const double q_op = operator_norm(d) / dn_op;
        const double q_s1 = schatten_norm(d, 1.0) / schatten_norm(dn, 1.0);
        r.add_row({double(t), double(fi), double(n), coupled ? 1.0 : 0.0, dn_op, operator_norm(d), q_op, q_s1, lips[fi]});
        r.check(dominated(q_op, lips[fi]), "lip-bound: operator-norm quotient exceeds certified constant at trial " +
                                               std::to_string(t));
        r.check(dominated(q_s1, lips[fi]), "lip-bound: S1 quotient exceeds certified constant at trial " +
                                               std::to_string(t));
    }
    return r;
}

//
// Quasicommutators f(N1)R - R f(N2): identity residual and the certified
// bound L(f) max(‖N1R - RN2‖, ‖N1*R - RN2*‖).
//
inline ExperimentReport experiment_quasicommutator(const std::vector<int>& dims, double sigma, int trials,
                                                   std::uint64_t seed, const SpectrumBox& box = {}) {
    ExperimentReport r;
    r.experiment = "qc-verify";
    r.seed = seed;
    r.columns = {"trial", "function", "dim", "measured", "residual", "scale", "qc_max", "certified_bound"};
    r.plot = PlotSpec{"qc_max", "measured", 1.0};
    if (trials <= 0) return r;
    const auto fs = test_functions(sigma, seed);
    std::vector<double> lips;
    for (const auto& f : fs) lips.push_back(certified_lipschitz_constant(f));
    r.meta["sigma"] = sigma;
    r.meta["certified_lipschitz"] = lips;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, std::uint64_t(t));
        const std::size_t fi = std::size_t(t) % fs.size();
        const Index n = dims[std::size_t(t) % dims.size()];
        const NormalPair pr = t % 2 == 0 ? coupled_pair(n, box, log_uniform(rng, 1e-3, 1.0), rng)
                                         : independent_pair(n, box, rng);
        const CMatrix rr = t % 5 == 0 ? CMatrix(CMatrix::Identity(n, n))
                                      : CMatrix(complex_gaussian(n, n, rng) / std::sqrt(double(n)));
        const CMatrix& n1 = pr.first.matrix;
        const CMatrix& n2 = pr.second.matrix;
        const CMatrix f1 = apply_function(fs[fi], pr.first);
        const CMatrix f2 = apply_function(fs[fi], pr.second);
        const CMatrix lhs = f1 * rr - rr * f2;
        const CMatrix rhs = quasicommutator_formula(fs[fi], pr.first, pr.second, rr);
        const double residual = (rhs - lhs).norm();
        const double scale = 1.0 + (f1 * rr).norm() + (rr * f2).norm();
        const double qc = std::max(operator_norm(n1 * rr - rr * n2),
                                   operator_norm(CMatrix(n1.adjoint() * rr - rr * n2.adjoint())));
        const double measured = operator_norm(lhs);
        const double bound = lips[fi] * qc;
        r.add_row({double(t), double(fi), double(n), measured, residual, scale, qc, bound});
        r.check(residual <= 1e-9 * scale, "qc-verify: quasicommutator identity residual at trial " + std::to_string(t));
        r.check(dominated(measured, bound), "qc-verify: measured exceeds certified bound at trial " + std::to_string(t));
    }
    return r;
}

//
// ‖N1*R - RN2*‖_p / ‖N1R - RN2‖_p. Equal to 1 at p = 2; for p = 1 and p = ∞
// a seeded hill climb on 2 x 2 diagonal pairs looks for the largest ratio.
//
namespace detail {

inline double fuglede_ratio(const CMatrix& n1, const CMatrix& n2, const CMatrix& r, double p, double* denominator) {
    const double den = schatten_norm(CMatrix(n1 * r - r * n2), p);
    if (denominator) *denominator = den;
    if (den < 1e-14) return std::numeric_limits<double>::quiet_NaN();
    return schatten_norm(CMatrix(n1.adjoint() * r - r * n2.adjoint()), p) / den;
}

inline double fuglede_search(double p, std::uint64_t seed, int iterations = 3000) {
    Rng rng(seed);
    auto draw = [&](Index n) { return complex_gaussian(n, 1, rng); };
    CVector l = draw(2), m = draw(2);
    CMatrix x = complex_gaussian(2, 2, rng);
    auto value = [&](const CVector& a, const CVector& b, const CMatrix& r) {
        const double v = fuglede_ratio(CMatrix(a.asDiagonal()), CMatrix(b.asDiagonal()), r, p, nullptr);
        return std::isfinite(v) ? v : 0.0;
    };
    double best = value(l, m, x);
    double step = 0.5;
    for (int it = 0; it < iterations; ++it) {
        const CVector l2 = l + step * draw(2);
        const CVector m2 = m + step * draw(2);
        const CMatrix x2 = x + step * complex_gaussian(2, 2, rng);
        const double v = value(l2, m2, x2);
        if (v > best) {
            best = v, l = l2, m = m2, x = x2;
        } else if (it % 200 == 199) {
            step *= 0.7;
        }
    }
    return best;
}

}  // namespace detail

inline ExperimentReport experiment_fuglede_ratio(const std::vector<int>& dims, const std::vector<double>& p_list,
                                                 int trials, std::uint64_t seed, const SpectrumBox& box = {}) {
    ExperimentReport r;
    r.experiment = "fuglede-ratio";
    r.seed = seed;
    r.columns = {"p", "trial", "search", "dim", "ratio", "denominator"};
    r.plot = PlotSpec{"denominator", "ratio", 0.0};
    if (trials <= 0) return r;
    ordered_json maxima = ordered_json::object();
    int skipped = 0;
    for (std::size_t pi_ = 0; pi_ < p_list.size(); ++pi_) {
        const double p = p_list[pi_];
        const double p_out = std::isinf(p) ? std::numeric_limits<double>::infinity() : p;
        double best = 0.0;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng::substream(seed, std::uint64_t(pi_) * 1000003ULL + std::uint64_t(t));
            const Index n = dims[std::size_t(t) % dims.size()];
            const NormalPair pr = independent_pair(n, box, rng);
            const CMatrix rr = complex_gaussian(n, n, rng);
            double den = 0.0;
            const double ratio = detail::fuglede_ratio(pr.first.matrix, pr.second.matrix, rr, p, &den);
            if (!std::isfinite(ratio)) {
                ++skipped;
                continue;
            }
            best = std::max(best, ratio);
            r.add_row({p_out, double(t), 0.0, double(n), ratio, den});
            if (p == 2.0)
                r.check(std::abs(ratio - 1.0) <= 1e-10, "fuglede-ratio: p = 2 ratio differs from 1 at trial " +
                                                            std::to_string(t));
        }
        if (p == 1.0 || std::isinf(p)) {
            const double searched = detail::fuglede_search(p, seed * 31ULL + std::uint64_t(pi_));
            best = std::max(best, searched);
            r.add_row({p_out, double(trials), 1.0, 2.0, searched, std::numeric_limits<double>::quiet_NaN()});
        }
        maxima[std::isinf(p) ? std::string("inf") : format_double(p)] = best;
    }
    r.meta["max_ratio"] = maxima;
    r.meta["skipped_degenerate"] = skipped;
    return r;
}

}  // namespace opcalc

#endif
