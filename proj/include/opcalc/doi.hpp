#ifndef OPCALC_DOI_HPP
#define OPCALC_DOI_HPP
//
// Double operator integrals over finite spectral measures: Hadamard
// multipliers in eigenbases, divided-difference kernels, and multiplier-norm
// brackets.
//

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bandlimited.hpp"
#include "csv.hpp"
#include "linalg.hpp"
#include "spectral.hpp"

namespace opcalc {

enum class KernelSource { dx, dy, custom };

inline const char* to_string(KernelSource s) {
    switch (s) {
    case KernelSource::dx: return "dx";
    case KernelSource::dy: return "dy";
    case KernelSource::custom: return "custom";
    }
    return "custom";
}

// Φ(λ_j, μ_k) sampled on a pair of spectra.
struct DoiKernel {
    CVector rows;
    CVector cols;
    CMatrix values;
    KernelSource source = KernelSource::custom;

    Index row_count() const { return values.rows(); }
    Index col_count() const { return values.cols(); }
};

inline DoiKernel make_kernel(const CVector& lambda, const CVector& mu, const std::function<cplx(cplx, cplx)>& phi) {
    DoiKernel k{lambda, mu, CMatrix(lambda.size(), mu.size()), KernelSource::custom};
    for (Index j = 0; j < lambda.size(); ++j)
        for (Index c = 0; c < mu.size(); ++c) k.values(j, c) = phi(lambda(j), mu(c));
    return k;
}

// 1e-7 (1 + spread of the relevant coordinate over both spectra).
inline double default_eps_dd(const CVector& lambda, const CVector& mu, Axis axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto coord = [axis](cplx z) { return axis == Axis::x ? z.real() : z.imag(); };
    for (Index j = 0; j < lambda.size(); ++j) lo = std::min(lo, coord(lambda(j))), hi = std::max(hi, coord(lambda(j)));
    for (Index j = 0; j < mu.size(); ++j) lo = std::min(lo, coord(mu(j))), hi = std::max(hi, coord(mu(j)));
    const double spread = hi > lo ? hi - lo : 0.0;
    return 1e-7 * (1.0 + spread);
}

//
// dx: (f(x1, y2) - f(x2, y2)) / (x1 - x2);  dy: (f(x1, y1) - f(x1, y2)) / (y1 - y2),
// with z1 = λ_j and z2 = μ_k. Gaps at most eps_dd use the partial derivative at
// the midpoint. A nonpositive eps_dd selects the default.
//
inline DoiKernel divided_difference_kernel(const TrigPolynomial& f, Axis axis, const CVector& lambda,
                                           const CVector& mu, double eps_dd = -1.0) {
    if (eps_dd <= 0.0) eps_dd = default_eps_dd(lambda, mu, axis);
    DoiKernel out{lambda, mu, CMatrix(lambda.size(), mu.size()),
                  axis == Axis::x ? KernelSource::dx : KernelSource::dy};
    if (axis == Axis::x) {
        for (Index k = 0; k < mu.size(); ++k) {
            const double x2 = mu(k).real();
            const TrigSlice g = slice_x(f, mu(k).imag());
            for (Index j = 0; j < lambda.size(); ++j) {
                const double x1 = lambda(j).real();
                out.values(j, k) =
                    std::abs(x1 - x2) <= eps_dd ? g.derivative(0.5 * (x1 + x2)) : g.divided_difference(x1, x2);
            }
        }
    } else {
        for (Index j = 0; j < lambda.size(); ++j) {
            const double y1 = lambda(j).imag();
            const TrigSlice g = slice_y(f, lambda(j).real());
            for (Index k = 0; k < mu.size(); ++k) {
                const double y2 = mu(k).imag();
                out.values(j, k) =
                    std::abs(y1 - y2) <= eps_dd ? g.derivative(0.5 * (y1 + y2)) : g.divided_difference(y1, y2);
            }
        }
    }
    return out;
}

// max |Φ_jk (gap) - (difference of f values)| over entries with gap > eps_dd.
inline double kernel_identity_defect(const DoiKernel& k, const TrigPolynomial& f, double eps_dd = -1.0) {
    if (k.source == KernelSource::custom) throw PreconditionError("kernel_identity_defect: kernel has no source");
    const Axis axis = k.source == KernelSource::dx ? Axis::x : Axis::y;
    if (eps_dd <= 0.0) eps_dd = default_eps_dd(k.rows, k.cols, axis);
    double worst = 0.0;
    for (Index j = 0; j < k.rows.size(); ++j)
        for (Index c = 0; c < k.cols.size(); ++c) {
            const cplx z1 = k.rows(j);
            const cplx z2 = k.cols(c);
            double gap;
            cplx diff;
            if (axis == Axis::x) {
                gap = z1.real() - z2.real();
                diff = f(z1.real(), z2.imag()) - f(z2.real(), z2.imag());
            } else {
                gap = z1.imag() - z2.imag();
                diff = f(z1.real(), z1.imag()) - f(z1.real(), z2.imag());
            }
            if (std::abs(gap) > eps_dd) worst = std::max(worst, std::abs(k.values(j, c) * gap - diff));
        }
    return worst;
}

// U1 (Φ ∘ (U1* T U2)) U2*
inline CMatrix doi_apply(const DoiKernel& phi, const SpectralDecomposition& d1, const CMatrix& t,
                         const SpectralDecomposition& d2) {
    if (phi.values.rows() != d1.dim() || phi.values.cols() != d2.dim() || t.rows() != d1.dim() ||
        t.cols() != d2.dim())
        throw DimensionError("doi_apply: kernel, decompositions and operand must agree in dimension");
    const CMatrix inner = d1.unitary.adjoint() * t * d2.unitary;
    return d1.unitary * phi.values.cwiseProduct(inner) * d2.unitary.adjoint();
}

// f(N1) - f(N2) as dy-kernel applied to (B1 - B2) plus dx-kernel applied to (A1 - A2).
inline CMatrix difference_formula(const TrigPolynomial& f, const SpectralDecomposition& d1,
                                  const SpectralDecomposition& d2, double eps_dd = -1.0) {
    if (d1.dim() != d2.dim()) throw DimensionError("difference_formula: dimensions differ");
    const auto [a1, b1] = parts(d1);
    const auto [a2, b2] = parts(d2);
    const DoiKernel kx = divided_difference_kernel(f, Axis::x, d1.eigenvalues, d2.eigenvalues, eps_dd);
    const DoiKernel ky = divided_difference_kernel(f, Axis::y, d1.eigenvalues, d2.eigenvalues, eps_dd);
    return doi_apply(ky, d1, b1 - b2, d2) + doi_apply(kx, d1, a1 - a2, d2);
}

// f(N1) R - R f(N2) as dy-kernel applied to (B1 R - R B2) plus dx-kernel applied to (A1 R - R A2).
inline CMatrix quasicommutator_formula(const TrigPolynomial& f, const SpectralDecomposition& d1,
                                       const SpectralDecomposition& d2, const CMatrix& r, double eps_dd = -1.0) {
    if (r.rows() != d1.dim() || r.cols() != d2.dim())
        throw DimensionError("quasicommutator_formula: R must be dim(N1) x dim(N2)");
    const auto [a1, b1] = parts(d1);
    const auto [a2, b2] = parts(d2);
    const DoiKernel kx = divided_difference_kernel(f, Axis::x, d1.eigenvalues, d2.eigenvalues, eps_dd);
    const DoiKernel ky = divided_difference_kernel(f, Axis::y, d1.eigenvalues, d2.eigenvalues, eps_dd);
    return doi_apply(ky, d1, b1 * r - r * b2, d2) + doi_apply(kx, d1, a1 * r - r * a2, d2);
}

inline CMatrix apply_function(const TrigPolynomial& f, const SpectralDecomposition& d) {
    return functional_calculus([&](cplx z) { return f(z.real(), z.imag()); }, d);
}

//
// Φ_jk ≈ Σ_n A_jn B_kn with a declared per-entry truncation bound.
//
struct Factorization {
    CMatrix a;
    CMatrix b;
    double entry_tail = 0.0;
};

class InvalidFactorization : public Error {
  public:
    explicit InvalidFactorization(double residual)
        : Error("invalid factorization: residual " + std::to_string(residual)), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

struct SchurBracket {
    double lower = 0.0;
    std::optional<double> upper;
    double residual = 0.0;  // max |Φ - A Bᵀ| when a factorization is supplied
};

inline double max_row_energy(const CMatrix& m) {
    double best = 0.0;
    for (Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).squaredNorm());
    return best;
}

// ‖Φ ∘ T‖ / ‖T‖ in operator norm.
inline double multiplier_ratio(const CMatrix& phi, const CMatrix& t) {
    const double den = operator_norm(t);
    if (!(den > 0.0)) return 0.0;
    return operator_norm(phi.cwiseProduct(t)) / den;
}

//
// lower: max entry, structured candidates and seeded Gaussian trials.
// upper: product of the largest row energies of the factors plus
// √min(m, n) max|residual| for the part the factors do not reproduce.
//
inline SchurBracket schur_norm_bracket(const DoiKernel& phi, const std::optional<Factorization>& factorization,
                                       int trials, std::uint64_t seed) {
    const CMatrix& v = phi.values;
    const Index m = v.rows();
    const Index n = v.cols();
    SchurBracket out;
    if (v.size() == 0) return out;
    Index bj = 0, bk = 0;
    out.lower = v.cwiseAbs().maxCoeff(&bj, &bk);

    std::vector<CMatrix> candidates;
    candidates.push_back(CMatrix::Ones(m, n));
    candidates.push_back(CMatrix::Identity(m, n));
    CMatrix phases(m, n);
    for (Index j = 0; j < m; ++j)
        for (Index k = 0; k < n; ++k) {
            const double a = std::abs(v(j, k));
            phases(j, k) = a > 0.0 ? std::conj(v(j, k)) / a : cplx(1.0);
        }
    candidates.push_back(phases);
    // Rank one through the largest entry: conjugate phases of its row and column.
    CVector left(m), right(n);
    for (Index j = 0; j < m; ++j) left(j) = phases(j, bk);
    for (Index k = 0; k < n; ++k) right(k) = std::conj(phases(bj, k));
    candidates.push_back(left * right.adjoint());
    for (const auto& t : candidates) out.lower = std::max(out.lower, multiplier_ratio(v, t));
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, std::uint64_t(t));
        out.lower = std::max(out.lower, multiplier_ratio(v, complex_gaussian(m, n, rng)));
    }

    if (factorization) {
        const auto& fa = *factorization;
        if (fa.a.rows() != m || fa.b.rows() != n || fa.a.cols() != fa.b.cols())
            throw DimensionError("schur_norm_bracket: factor shapes do not match the kernel");
        const CMatrix recon = fa.a * fa.b.transpose();
        out.residual = (v - recon).cwiseAbs().maxCoeff();
        const double scale = 1.0 + v.cwiseAbs().maxCoeff();
        if (out.residual > 1e-10 * scale + fa.entry_tail * (1.0 + 1e-9)) throw InvalidFactorization(out.residual);
        out.upper = std::sqrt(max_row_energy(fa.a)) * std::sqrt(max_row_energy(fa.b)) +
                    std::sqrt(double(std::min(m, n))) * out.residual;
    }
    return out;
}

inline std::string kernel_csv(const DoiKernel& k) { return entries_csv(k.values); }

}  // namespace opcalc

#endif
