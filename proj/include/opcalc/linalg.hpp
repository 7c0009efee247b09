#ifndef OPCALC_LINALG_HPP
#define OPCALC_LINALG_HPP
//
// Dependency-free Jacobi kernels: cyclic Jacobi for Hermitian matrices and
// one-sided Jacobi for singular values. Eigen supplies storage and BLAS-1/3
// arithmetic only.
//

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "common.hpp"

namespace opcalc {

struct HermitianEigen {
    RVector values;    // ascending
    CMatrix vectors;   // columns are orthonormal eigenvectors
    int sweeps = 0;
    double off_diagonal = 0.0;  // final off-diagonal Frobenius norm
};

namespace detail {

inline double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

//
// Cyclic Jacobi with threshold sweeps. Each rotation zeroes the (p, q) entry:
// the phase of H_pq is absorbed into column q, then a real symmetric rotation
// diagonalizes [[a, |c|], [|c|, b]].
//
inline HermitianEigen hermitian_eigen(const CMatrix& h, double rel_tol = 1e-13, int max_sweeps = 60) {
    if (h.rows() != h.cols()) throw DimensionError("hermitian_eigen: matrix must be square");
    const Index n = h.rows();
    CMatrix a = 0.5 * (h + h.adjoint());
    CMatrix v = CMatrix::Identity(n, n);
    const double scale = a.norm();
    HermitianEigen out;
    double off = detail::off_diagonal_norm(a);
    while (off > rel_tol * scale && out.sweeps < max_sweeps) {
        // Early sweeps skip entries that are already small relative to the rest.
        const double threshold = out.sweeps < 3 ? 0.2 * off / double(n * n) : 0.0;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const cplx c = a(p, q);
                const double ac = std::abs(c);
                if (ac == 0.0 || ac < threshold) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * ac);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;
                const cplx phase = c / ac;
                // V restricted to (p, q): [[cs, sn], [-sn conj(phase), cs conj(phase)]] (up to the
                // phase convention below); applied as A <- V* A V, vectors <- vectors V.
                const cplx vpp = cs;
                const cplx vpq = sn;
                const cplx vqp = -sn * std::conj(phase);
                const cplx vqq = cs * std::conj(phase);
                for (Index k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * vpp + akq * vqp;
                    a(k, q) = akp * vpq + akq * vqq;
                }
                for (Index k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
                    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (Index k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * vpp + vkq * vqp;
                    v(k, q) = vkp * vpq + vkq * vqq;
                }
            }
        }
        ++out.sweeps;
        off = detail::off_diagonal_norm(a);
    }
    out.off_diagonal = off;
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index(0));
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        out.values(i) = a(order[std::size_t(i)], order[std::size_t(i)]).real();
        out.vectors.col(i) = v.col(order[std::size_t(i)]);
    }
    return out;
}

//
// Singular values by one-sided Jacobi (column orthogonalization of T or T*),
// sorted nonincreasing.
//
inline std::vector<double> jacobi_singular_values(const CMatrix& t, double tol = 1e-15, int max_sweeps = 80) {
    CMatrix g = t.rows() >= t.cols() ? CMatrix(t) : CMatrix(t.adjoint());
    const Index n = g.cols();
    std::vector<double> out;
    if (g.size() == 0) return out;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double a = g.col(p).squaredNorm();
                const double b = g.col(q).squaredNorm();
                const cplx c = g.col(p).dot(g.col(q));  // conj(g_p) . g_q
                const double ac = std::abs(c);
                if (ac == 0.0 || a == 0.0 || b == 0.0) continue;
                worst = std::max(worst, ac / std::sqrt(a * b));
                if (ac <= tol * std::sqrt(a * b)) continue;
                const double theta = (b - a) / (2.0 * ac);
                const double tt = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(tt * tt + 1.0);
                const double sn = tt * cs;
                const cplx phase = c / ac;
                for (Index k = 0; k < g.rows(); ++k) {
                    const cplx gp = g(k, p);
                    const cplx gq = g(k, q);
                    g(k, p) = cs * gp - sn * std::conj(phase) * gq;
                    g(k, q) = sn * gp + cs * std::conj(phase) * gq;
                }
            }
        }
        if (worst <= tol) break;
    }
    out.resize(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) out[std::size_t(j)] = g.col(j).norm();
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

inline double operator_norm(const CMatrix& t) {
    if (t.size() == 0) return 0.0;
    return jacobi_singular_values(t).front();
}

// Schatten p-norm, p = infinity meaning the operator norm.
inline double schatten_norm(const CMatrix& t, double p) {
    const auto s = jacobi_singular_values(t);
    if (s.empty()) return 0.0;
    if (std::isinf(p)) return s.front();
    double sum = 0.0;
    for (double v : s) sum += std::pow(v, p);
    return std::pow(sum, 1.0 / p);
}

// φ(H) for Hermitian H via its Jacobi eigendecomposition.
template <typename F>
CMatrix hermitian_function(const CMatrix& h, const F& phi) {
    const auto e = hermitian_eigen(h);
    RVector mapped(e.values.size());
    for (Index i = 0; i < mapped.size(); ++i) mapped(i) = phi(e.values(i));
    return e.vectors * mapped.asDiagonal() * e.vectors.adjoint();
}

}  // namespace opcalc

#endif
