#include <gtest/gtest.h>

#include "opcalc/doi.hpp"

using namespace opcalc;

namespace {

double scale_of(const CMatrix& a, const CMatrix& b) { return 1.0 + a.norm() + b.norm(); }

SpectralDecomposition diag_of(std::initializer_list<cplx> values) {
    CVector v(Index(values.size()));
    Index i = 0;
    for (cplx z : values) v(i++) = z;
    return from_spectrum(CMatrix::Identity(v.size(), v.size()), v);
}

}  // namespace

TEST(Kernel, ShapeAndSource) {
    const auto d1 = random_normal(3, {}, 1);
    const auto d2 = random_normal(5, {}, 2);
    const DoiKernel k = divided_difference_kernel(random_trig_polynomial(1.0, 3.0, 6, 3), Axis::y, d1.eigenvalues,
                                                  d2.eigenvalues);
    EXPECT_EQ(k.row_count(), 3);
    EXPECT_EQ(k.col_count(), 5);
    EXPECT_EQ(k.source, KernelSource::dy);
}

TEST(Kernel, IndependentVariableGivesZero) {
    const auto d1 = random_normal(4, {}, 5);
    const auto d2 = random_normal(4, {}, 6);
    const DoiKernel k = divided_difference_kernel(TrigPolynomial::exponential(0, 1), Axis::x, d1.eigenvalues,
                                                  d2.eigenvalues);
    EXPECT_EQ(k.values.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Kernel, ExponentialDirectEvaluation) {
    CVector l(1), m(1);
    l << 0.0;
    m << pi;
    const DoiKernel k = divided_difference_kernel(TrigPolynomial::exponential(1, 0), Axis::x, l, m);
    EXPECT_NEAR(k.values(0, 0).real(), -2.0 / pi, 1e-15);
    EXPECT_NEAR(k.values(0, 0).imag(), 0.0, 1e-15);
}

TEST(Kernel, DiagonalUsesPartialDerivative) {
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 10, 8);
    CVector l(2), m(2);
    l << cplx(0.3, 0.1), cplx(-0.7, 0.4);
    m << cplx(0.3 + 1e-12, -0.2), cplx(0.9, 0.4);
    const DoiKernel kx = divided_difference_kernel(f, Axis::x, l, m);
    const TrigPolynomial fx = partial_derivative(f, Axis::x);
    EXPECT_LE(std::abs(kx.values(0, 0) - fx(0.3 + 0.5e-12, -0.2)), 1e-12);
    const DoiKernel ky = divided_difference_kernel(f, Axis::y, l, m);
    const TrigPolynomial fy = partial_derivative(f, Axis::y);
    EXPECT_LE(std::abs(ky.values(1, 1) - fy(-0.7, 0.4)), 1e-12);
}

TEST(Kernel, IdentityDefect) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 12, s);
        const auto d1 = random_normal(6, {}, 100 + s);
        const auto d2 = random_normal(6, {}, 200 + s);
        for (Axis ax : {Axis::x, Axis::y}) {
            const DoiKernel k = divided_difference_kernel(f, ax, d1.eigenvalues, d2.eigenvalues);
            EXPECT_LE(kernel_identity_defect(k, f), 1e-12 * (1.0 + coefficient_l1_norm(f)));
        }
    }
    EXPECT_THROW(kernel_identity_defect(make_kernel(CVector::Ones(1), CVector::Ones(1), [](cplx, cplx) { return 1.0; }),
                                        TrigPolynomial::constant(1.0)),
                 PreconditionError);
}

TEST(DoiApply, UnitKernelIsIdentity) {
    const auto d1 = random_normal(5, {}, 11);
    const auto d2 = random_normal(5, {}, 12);
    Rng rng(13);
    const CMatrix t = complex_gaussian(5, 5, rng);
    const DoiKernel one = make_kernel(d1.eigenvalues, d2.eigenvalues, [](cplx, cplx) { return cplx(1.0); });
    EXPECT_LE((doi_apply(one, d1, t, d2) - t).norm(), 1e-13 * t.norm());
}

TEST(DoiApply, LeftMultiplication) {
    const auto d1 = random_normal(5, {}, 21);
    const auto d2 = random_normal(5, {}, 22);
    Rng rng(23);
    const CMatrix t = complex_gaussian(5, 5, rng);
    const DoiKernel k = make_kernel(d1.eigenvalues, d2.eigenvalues, [](cplx l, cplx) { return l; });
    EXPECT_LE((doi_apply(k, d1, t, d2) - d1.matrix * t).norm(), 1e-10);
}

TEST(DoiApply, LinearFunctionThroughUnitKernels) {
    const auto d1 = random_normal(6, {}, 31);
    const auto d2 = random_normal(6, {}, 32);
    const auto [a1, b1] = parts(d1);
    const auto [a2, b2] = parts(d2);
    const DoiKernel one = make_kernel(d1.eigenvalues, d2.eigenvalues, [](cplx, cplx) { return cplx(1.0); });
    const CMatrix rhs = doi_apply(one, d1, b1 - b2, d2) + doi_apply(one, d1, a1 - a2, d2);
    EXPECT_LE((rhs - ((a1 + b1) - (a2 + b2))).norm(), 1e-12);
}

TEST(DoiApply, HilbertSchmidtBound) {
    for (std::uint64_t s = 1; s <= 100; ++s) {
        Rng rng(s);
        const Index m = 1 + rng.integer(0, 6);
        const auto d1 = random_normal(m, {}, 1000 + s);
        const auto d2 = random_normal(m, {}, 2000 + s);
        const CMatrix t = complex_gaussian(m, m, rng);
        const DoiKernel k = make_kernel(d1.eigenvalues, d2.eigenvalues,
                                        [](cplx l, cplx u) { return std::exp(cplx(0.0, 3.0) * l) / (2.0 + u); });
        EXPECT_LE(doi_apply(k, d1, t, d2).norm(), k.values.cwiseAbs().maxCoeff() * t.norm() * (1 + 1e-12));
    }
}

TEST(DoiApply, DimensionMismatch) {
    const auto d1 = random_normal(3, {}, 1);
    const auto d2 = random_normal(4, {}, 2);
    const DoiKernel k = make_kernel(d1.eigenvalues, d1.eigenvalues, [](cplx, cplx) { return cplx(1.0); });
    EXPECT_THROW(doi_apply(k, d1, CMatrix::Zero(3, 4), d2), DimensionError);
}

TEST(DifferenceFormula, ConstantGivesZero) {
    const auto d1 = random_normal(4, {}, 41);
    const auto d2 = random_normal(4, {}, 42);
    EXPECT_EQ(difference_formula(TrigPolynomial::constant(3.0), d1, d2).norm(), 0.0);
}

TEST(DifferenceFormula, MatchesFunctionalCalculus) {
    for (std::uint64_t s = 1; s <= 60; ++s) {
        Rng rng(s);
        const Index m = rng.integer(1, 8);
        const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 10, 500 + s);
        const auto d1 = diagonalize(random_normal(m, {}, 600 + s).matrix);
        const auto d2 = diagonalize(random_normal(m, {}, 700 + s).matrix);
        const CMatrix f1 = apply_function(f, d1);
        const CMatrix f2 = apply_function(f, d2);
        EXPECT_LE((difference_formula(f, d1, d2) - (f1 - f2)).norm(), 1e-9 * scale_of(f1, f2)) << "seed " << s;
    }
}

TEST(DifferenceFormula, SharedCoordinates) {
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 10, 77);
    const auto d1 = diag_of({cplx(0.2, 0.5), cplx(-0.4, 0.1), cplx(0.7, -0.3)});
    const auto d2 = diag_of({cplx(0.2, -0.6), cplx(0.5, 0.1), cplx(0.7, -0.3)});
    const CMatrix expected = apply_function(f, d1) - apply_function(f, d2);
    EXPECT_LE((difference_formula(f, d1, d2) - expected).norm(), 1e-12 * (1 + expected.norm()));
}

TEST(QuasicommutatorFormula, IdentityOperandReducesToDifference) {
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 10, 81);
    const auto d1 = diagonalize(random_normal(5, {}, 82).matrix);
    const auto d2 = diagonalize(random_normal(5, {}, 83).matrix);
    const CMatrix r = CMatrix::Identity(5, 5);
    EXPECT_LE((quasicommutator_formula(f, d1, d2, r) - difference_formula(f, d1, d2)).norm(), 1e-12);
}

TEST(QuasicommutatorFormula, CommutatorCase) {
    const auto d = diagonalize(random_normal(5, {}, 91).matrix);
    Rng rng(92);
    const CMatrix r = complex_gaussian(5, 5, rng);
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 10, 93);
    const CMatrix fn = apply_function(f, d);
    EXPECT_LE((quasicommutator_formula(f, d, d, r) - (fn * r - r * fn)).norm(), 1e-9 * (1 + 2 * fn.norm() * r.norm()));
}

TEST(QuasicommutatorFormula, MatchesFunctionalCalculus) {
    for (std::uint64_t s = 1; s <= 60; ++s) {
        Rng rng(s);
        const Index m = rng.integer(1, 8);
        const Index n = rng.integer(1, 8);
        const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 10, 800 + s);
        const auto d1 = diagonalize(random_normal(m, {}, 900 + s).matrix);
        const auto d2 = diagonalize(random_normal(n, {}, 1000 + s).matrix);
        const CMatrix r = complex_gaussian(m, n, rng);
        const CMatrix f1 = apply_function(f, d1);
        const CMatrix f2 = apply_function(f, d2);
        const CMatrix expected = f1 * r - r * f2;
        EXPECT_LE((quasicommutator_formula(f, d1, d2, r) - expected).norm(),
                  1e-9 * (1 + (f1.norm() + f2.norm()) * r.norm()))
            << "seed " << s;
    }
}

TEST(QuasicommutatorFormula, RejectsBadOperand) {
    const auto d = random_normal(3, {}, 1);
    EXPECT_THROW(quasicommutator_formula(TrigPolynomial::constant(1.0), d, d, CMatrix::Zero(2, 3)), DimensionError);
}

TEST(SchurBracket, UnitKernel) {
    const auto d = random_normal(4, {}, 3);
    const DoiKernel one = make_kernel(d.eigenvalues, d.eigenvalues, [](cplx, cplx) { return cplx(1.0); });
    const auto b = schur_norm_bracket(one, Factorization{CMatrix::Ones(4, 1), CMatrix::Ones(4, 1), 0.0}, 8, 1);
    ASSERT_TRUE(b.upper);
    EXPECT_NEAR(b.lower, 1.0, 1e-12);
    EXPECT_NEAR(*b.upper, 1.0, 1e-12);
}

TEST(SchurBracket, RankOne) {
    Rng rng(5);
    const CVector a = complex_gaussian(5, 1, rng);
    const CVector c = complex_gaussian(4, 1, rng);
    DoiKernel k;
    k.rows = CVector::Zero(5);
    k.cols = CVector::Zero(4);
    k.values = a * c.transpose();
    const auto b = schur_norm_bracket(k, Factorization{a, c, 0.0}, 16, 7);
    const double expected = a.cwiseAbs().maxCoeff() * c.cwiseAbs().maxCoeff();
    ASSERT_TRUE(b.upper);
    EXPECT_NEAR(*b.upper, expected, 1e-12 * expected);
    EXPECT_NEAR(b.lower, expected, 1e-12 * expected);
}

TEST(SchurBracket, LowerBelowUpper) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        Rng rng(s);
        const CMatrix a = complex_gaussian(6, 3, rng);
        const CMatrix c = complex_gaussian(5, 3, rng);
        DoiKernel k{CVector::Zero(6), CVector::Zero(5), a * c.transpose(), KernelSource::custom};
        const auto b = schur_norm_bracket(k, Factorization{a, c, 0.0}, 32, s);
        EXPECT_LE(b.lower, *b.upper + 1e-8);
    }
}

TEST(SchurBracket, InvalidFactorization) {
    DoiKernel k{CVector::Zero(2), CVector::Zero(2), CMatrix::Ones(2, 2), KernelSource::custom};
    try {
        schur_norm_bracket(k, Factorization{CMatrix::Ones(2, 1), 2.0 * CMatrix::Ones(2, 1), 0.0}, 0, 1);
        FAIL() << "expected InvalidFactorization";
    } catch (const InvalidFactorization& e) {
        EXPECT_NEAR(e.residual(), 1.0, 1e-15);
    }
}

TEST(SchurBracket, DeterministicInSeed) {
    const auto d = random_normal(5, {}, 8);
    const DoiKernel k = divided_difference_kernel(random_trig_polynomial(0.5, 3.0, 8, 9), Axis::x, d.eigenvalues,
                                                  d.eigenvalues);
    EXPECT_EQ(schur_norm_bracket(k, std::nullopt, 20, 4).lower, schur_norm_bracket(k, std::nullopt, 20, 4).lower);
    EXPECT_FALSE(schur_norm_bracket(k, std::nullopt, 1, 4).upper);
}
