#ifndef OPCALC_SPECTRAL_HPP
#define OPCALC_SPECTRAL_HPP
//
// Normal matrices: certified diagonalization through the commuting Hermitian
// pair (Re N, Im N), functional calculus, and seeded random normals.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "linalg.hpp"

namespace opcalc {

// N = U diag(λ) U*; the columns of U carry the eigenprojections.
struct SpectralDecomposition {
    CMatrix matrix;
    CMatrix unitary;
    CVector eigenvalues;
    double normality_defect = 0.0;
    double reconstruction_residual = 0.0;

    Index dim() const { return matrix.rows(); }
};

class NonNormalError : public Error {
  public:
    explicit NonNormalError(double defect)
        : Error("matrix is not normal: defect " + std::to_string(defect)), defect_(defect) {}
    double defect() const { return defect_; }

  private:
    double defect_;
};

class IllSeparatedError : public Error {
  public:
    IllSeparatedError(const std::string& diagnostics, double residual)
        : Error("ill-separated spectrum: " + diagnostics), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

// ‖MM* - M*M‖_F / ‖M‖_F²
inline double normality_defect(const CMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("normality_defect: matrix must be square");
    const double scale = std::max(m.squaredNorm(), std::numeric_limits<double>::min());
    return (m * m.adjoint() - m.adjoint() * m).norm() / scale;
}

// A = (N + N*)/2, B = (N - N*)/(2i)
inline std::pair<CMatrix, CMatrix> hermitian_parts(const CMatrix& n) {
    const CMatrix a = 0.5 * (n + n.adjoint());
    const CMatrix b = (n - n.adjoint()) / cplx(0.0, 2.0);
    return {a, b};
}

inline std::pair<CMatrix, CMatrix> parts(const SpectralDecomposition& d) { return hermitian_parts(d.matrix); }

inline double reconstruction_residual(const CMatrix& n, const CMatrix& u, const CVector& lambda) {
    return (u * lambda.asDiagonal() * u.adjoint() - n).norm();
}

//
// Two-stage simultaneous diagonalization: eigendecomposition of A = Re N,
// then of the compression of B = Im N to each cluster of A-eigenvalues.
// Eigenvalues are the Rayleigh quotients u_j* N u_j.
//
inline SpectralDecomposition diagonalize(const CMatrix& n, double tol = 1e-8) {
    if (n.rows() != n.cols()) throw DimensionError("diagonalize: matrix must be square");
    const Index dim = n.rows();
    const double defect = normality_defect(n);
    if (defect > tol) throw NonNormalError(defect);

    const auto [a, b] = hermitian_parts(n);
    const HermitianEigen ea = hermitian_eigen(a);
    const double spread = dim > 0 ? ea.values(dim - 1) - ea.values(0) : 0.0;
    const double radius = 1e-8 * (1.0 + spread);

    CMatrix u(dim, dim);
    std::vector<std::pair<Index, Index>> clusters;
    for (Index start = 0; start < dim;) {
        Index stop = start + 1;
        while (stop < dim && ea.values(stop) - ea.values(stop - 1) <= radius) ++stop;
        clusters.emplace_back(start, stop - start);
        const CMatrix basis = ea.vectors.middleCols(start, stop - start);
        if (stop - start == 1) {
            u.col(start) = basis.col(0);
        } else {
            const HermitianEigen eb = hermitian_eigen(basis.adjoint() * b * basis);
            u.middleCols(start, stop - start) = basis * eb.vectors;
        }
        start = stop;
    }

    SpectralDecomposition out;
    out.matrix = n;
    out.unitary = u;
    out.eigenvalues.resize(dim);
    for (Index j = 0; j < dim; ++j) out.eigenvalues(j) = u.col(j).dot(n * u.col(j));
    out.normality_defect = defect;
    out.reconstruction_residual = reconstruction_residual(n, u, out.eigenvalues);

    if (out.reconstruction_residual > 1e-9 * (1.0 + n.norm())) {
        std::ostringstream diag;
        diag << clusters.size() << " clusters of Re N (radius " << radius << "), reconstruction residual "
             << out.reconstruction_residual;
        throw IllSeparatedError(diag.str(), out.reconstruction_residual);
    }
    return out;
}

//
// Rebuild a decomposition from stored factors and re-check every invariant;
// nothing read from disk is trusted.
//
inline SpectralDecomposition verify_decomposition(const CMatrix& n, const CMatrix& u, const CVector& lambda) {
    const Index dim = n.rows();
    if (n.cols() != dim || u.rows() != dim || u.cols() != dim || lambda.size() != dim)
        throw DimensionError("verify_decomposition: inconsistent dimensions");
    const double unitarity = (u.adjoint() * u - CMatrix::Identity(dim, dim)).norm();
    if (unitarity > 1e-10 * std::sqrt(double(std::max<Index>(dim, 1))))
        throw Error("verify_decomposition: factor is not unitary (" + std::to_string(unitarity) + ")");
    SpectralDecomposition out;
    out.matrix = n;
    out.unitary = u;
    out.eigenvalues = lambda;
    out.normality_defect = normality_defect(n);
    out.reconstruction_residual = reconstruction_residual(n, u, lambda);
    if (out.reconstruction_residual > 1e-9 * (1.0 + n.norm()))
        throw Error("verify_decomposition: reconstruction residual " + std::to_string(out.reconstruction_residual));
    return out;
}

// U diag(f(λ_j)) U*
template <typename F>
CMatrix functional_calculus(const F& f, const SpectralDecomposition& d) {
    CVector mapped(d.eigenvalues.size());
    for (Index j = 0; j < mapped.size(); ++j) mapped(j) = f(d.eigenvalues(j));
    return d.unitary * mapped.asDiagonal() * d.unitary.adjoint();
}

struct SpectrumBox {
    double re_min = -1.0;
    double re_max = 1.0;
    double im_min = -1.0;
    double im_max = 1.0;

    bool contains(cplx z, double slack = 0.0) const {
        return z.real() >= re_min - slack && z.real() <= re_max + slack && z.imag() >= im_min - slack &&
               z.imag() <= im_max + slack;
    }
    double diameter() const { return std::hypot(re_max - re_min, im_max - im_min); }
};

// Haar unitary: QR of a complex Gaussian matrix with R's diagonal made positive.
inline CMatrix random_unitary(Index n, Rng& rng) {
    const CMatrix z = complex_gaussian(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const cplx d = r(j, j);
        const double ad = std::abs(d);
        if (ad > 0.0) q.col(j) *= d / ad;
    }
    return q;
}

inline SpectralDecomposition from_spectrum(const CMatrix& u, const CVector& lambda) {
    SpectralDecomposition out;
    out.unitary = u;
    out.eigenvalues = lambda;
    out.matrix = u * lambda.asDiagonal() * u.adjoint();
    out.normality_defect = normality_defect(out.matrix);
    out.reconstruction_residual = reconstruction_residual(out.matrix, u, lambda);
    return out;
}

inline SpectralDecomposition random_normal(Index n, const SpectrumBox& box, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("random_normal: dimension must be >= 1");
    Rng rng(seed);
    CVector lambda(n);
    for (Index j = 0; j < n; ++j)
        lambda(j) = cplx(rng.uniform(box.re_min, box.re_max), rng.uniform(box.im_min, box.im_max));
    return from_spectrum(random_unitary(n, rng), lambda);
}

}  // namespace opcalc

#endif
