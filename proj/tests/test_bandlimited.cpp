#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <complex>

#include "opcalc/bandlimited.hpp"

using namespace opcalc;

namespace {

std::complex<long double> sum_long(const TrigPolynomial& f, long double x, long double y) {
    std::complex<long double> s = 0.0L;
    const long double h = f.base_step();
    for (const auto& [fr, c] : f.coeffs()) {
        const long double phase = h * (fr.j * x + fr.k * y);
        s += std::complex<long double>(c.real(), c.imag()) * std::complex<long double>(std::cos(phase), std::sin(phase));
    }
    return s;
}

const SupNormOptions quick{256, 512, 1e-3};

}  // namespace

TEST(Evaluate, ConstantAndExponential) {
    EXPECT_EQ(evaluate(TrigPolynomial::constant(1.0), 3.7, -2.0), cplx(1.0));
    const cplx v = evaluate(TrigPolynomial::exponential(1, 0), pi, 0.0);
    EXPECT_NEAR(v.real(), -1.0, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(Evaluate, MatchesExtendedPrecisionSum) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const TrigPolynomial f = random_trig_polynomial(0.5, 6.0, 20, seed);
        const auto ref = sum_long(f, 0.3L, 0.4L);
        const cplx v = f(0.3, 0.4);
        EXPECT_LE(std::abs(std::complex<long double>(v.real(), v.imag()) - ref), 1e-13L);
    }
}

TEST(PartialDerivative, ConstantAndExponential) {
    EXPECT_TRUE(partial_derivative(TrigPolynomial::constant(2.0), Axis::x).is_zero());
    const TrigPolynomial d = partial_derivative(TrigPolynomial::exponential(1, 0), Axis::x);
    EXPECT_EQ(d.coefficient({1, 0}), cplx(0.0, 1.0));
    EXPECT_TRUE(partial_derivative(TrigPolynomial::exponential(1, 0), Axis::y).is_zero());
}

TEST(PartialDerivative, Bernstein) {
    const SupNormOptions& opt = quick;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 10, seed);
        for (Axis ax : {Axis::x, Axis::y}) {
            const TrigPolynomial d = partial_derivative(f, ax);
            EXPECT_LE(d.support_radius(), f.support_radius());
            EXPECT_LE(sup_norm(d, opt).lower, f.support_radius() * sup_norm(f, opt).upper * (1 + 1e-12));
        }
    }
}

TEST(LittlewoodPaley, WindowInvariants) {
    EXPECT_LE(CutoffWindow::standard().invariant_defect(), 1e-14);
    const CutoffWindow win;
    EXPECT_EQ(win.w(0.0), 0.0);
    EXPECT_EQ(win.v(0.7), 1.0);
    EXPECT_EQ(win.v(2.5), 0.0);
}

TEST(LittlewoodPaley, SingleFrequencyAtDyadicPoint) {
    const int n = 3;
    const TrigPolynomial f = TrigPolynomial::exponential(8, 0);
    const CutoffWindow win;
    EXPECT_NEAR(std::abs(lp_piece(f, n).coefficient({8, 0})), win.w(1.0), 1e-15);
    const TrigPolynomial sum = lp_piece(f, n) + lp_piece(f, n + 1);
    EXPECT_NEAR(std::abs(sum.coefficient({8, 0}) - cplx(1.0)), 0.0, 1e-15);
}

TEST(LittlewoodPaley, ConstantHasNoPieces) {
    const TrigPolynomial c = TrigPolynomial::constant(3.0);
    for (int n = -5; n <= 5; ++n) EXPECT_TRUE(lp_piece(c, n).is_zero());
    EXPECT_TRUE(lp_pieces(c).empty());
}

TEST(LittlewoodPaley, PartitionOfUnity) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const TrigPolynomial f = random_trig_polynomial(0.25, 16.0, 30, seed);
        TrigPolynomial sum;
        for (const auto& [n, piece] : lp_pieces(f)) sum = sum + piece;
        for (const auto& [fr, c] : f.coeffs()) {
            const cplx expected = (fr.j == 0 && fr.k == 0) ? cplx(0.0) : c;
            EXPECT_LE(std::abs(sum.coefficient(fr) - expected), 1e-12);
        }
    }
}

TEST(LittlewoodPaley, AnnulusSupport) {
    const TrigPolynomial f = random_trig_polynomial(0.25, 16.0, 40, 7);
    for (const auto& [n, piece] : lp_pieces(f))
        for (const auto& [fr, c] : piece.coeffs()) {
            const double r = piece.frequency_modulus(fr);
            EXPECT_GE(r, std::ldexp(1.0, n - 1));
            EXPECT_LE(r, std::ldexp(1.0, n + 1));
        }
}

TEST(VpSmooth, IdentityBelowScale) {
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 12, 3);
    const TrigPolynomial g = vp_smooth(f, 2);
    for (const auto& [fr, c] : f.coeffs()) EXPECT_EQ(g.coefficient(fr), c);
}

TEST(VpSmooth, VanishesBeyondTwiceScale) {
    const TrigPolynomial f(std::ldexp(1.0, 3) * 1.01, {{Freq{1, 0}, 1.0}});
    EXPECT_TRUE(vp_smooth(f, 2).is_zero());
}

TEST(VpSmooth, RemainderSupportAboveScale) {
    const TrigPolynomial f = random_trig_polynomial(0.25, 16.0, 40, 9);
    for (int n = 0; n <= 4; ++n) {
        const TrigPolynomial rest = f - vp_smooth(f, n);
        for (const auto& [fr, c] : rest.coeffs())
            if (std::abs(c) > 0.0) EXPECT_GT(rest.frequency_modulus(fr), std::ldexp(1.0, n));
    }
}

TEST(SupNorm, Constant) {
    const Bracket b = sup_norm(TrigPolynomial::constant(1.0), 64);
    EXPECT_EQ(b.lower, 1.0);
    EXPECT_GE(b.upper, 1.0);
}

TEST(SupNorm, Exponential) {
    const Bracket b = sup_norm(TrigPolynomial::exponential(1, 0), 64);
    EXPECT_LE(b.lower, 1.0 + 1e-15);
    EXPECT_GE(b.upper, 1.0);
    EXPECT_NEAR(b.lower, 1.0, 1e-14);
}

TEST(SupNorm, RejectsCoarseGrid) {
    EXPECT_THROW(sup_norm(TrigPolynomial::exponential(40, 0), 8), PreconditionError);
}

TEST(SupNorm, WidthShrinksLinearly) {
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 12, 5);
    double prev = sup_norm(f, 64).width();
    for (int M = 128; M <= 1024; M *= 2) {
        const double w = sup_norm(f, M).width();
        EXPECT_LE(w, 0.55 * prev);
        prev = w;
    }
}

TEST(SupNorm, BracketContainsDenseSamples) {
    Rng rng(99);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 12, seed);
        const Bracket b = sup_norm(f, 256);
        double seen = 0.0;
        for (int s = 0; s < 100000; ++s) seen = std::max(seen, std::abs(f(rng.uniform(0, f.period()), rng.uniform(0, f.period()))));
        EXPECT_LE(seen, b.upper);
        EXPECT_LE(b.lower, b.upper);
        const double cert = certified_sup_upper(f, quick);
        EXPECT_LE(cert, coefficient_l1_norm(f) + 1e-15);
        EXPECT_GE(cert, seen);
    }
}

TEST(Besov, ConstantIsZero) { EXPECT_EQ(besov_b1inf1_norm(TrigPolynomial::constant(5.0)), 0.0); }

TEST(Besov, ExponentialEnumeratesPieces) {
    const TrigPolynomial f = TrigPolynomial::exponential(1, 0);
    const auto pieces = lp_pieces(f);
    const CutoffWindow win;
    double expected = 0.0;
    for (const auto& [n, piece] : pieces) {
        EXPECT_GT(win.w(std::ldexp(1.0, -n)), 0.0);
        expected += std::ldexp(win.w(std::ldexp(1.0, -n)) * sup_norm(TrigPolynomial::exponential(1, 0), quick).upper, n);
    }
    ASSERT_EQ(pieces.size(), 1u);
    EXPECT_EQ(pieces.begin()->first, 0);
    const double b = besov_b1inf1_norm(f, CutoffWindow::standard(), quick);
    EXPECT_NEAR(b, expected, 1e-12);
    EXPECT_GE(b, 1.0);
}

TEST(Besov, Homogeneous) {
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 10, 11);
    const cplx c(2.0, -1.5);
    const CutoffWindow win;
    const double b = besov_b1inf1_norm(f, win, quick);
    EXPECT_NEAR(besov_b1inf1_norm(f.scaled(c), win, quick), std::abs(c) * b, 1e-12 * b);
}

TEST(Seminorm, ConstantAndExponential) {
    const auto lip = ModulusOfContinuity::power(1.0);
    EXPECT_EQ(seminorm_estimate(TrigPolynomial::constant(1.0), lip, 100, 1), 0.0);
    const double e = seminorm_estimate(TrigPolynomial::exponential(1, 0), lip, 10000, 1);
    EXPECT_LE(e, 1.0 + 1e-12);
    EXPECT_GE(e, 0.99);
}

TEST(Seminorm, MonotoneInSamples) {
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 8, 2);
    const auto om = ModulusOfContinuity::power(0.5);
    double prev = 0.0;
    for (int s : {1, 10, 100, 1000}) {
        const double e = seminorm_estimate(f, om, s, 4);
        EXPECT_GE(e, prev);
        prev = e;
    }
}

TEST(Modulus, Invariants) {
    EXPECT_LE(ModulusOfContinuity::power(0.3).invariant_defect(), 1e-12);
    EXPECT_LE(ModulusOfContinuity::capped_linear(0.5).invariant_defect(), 1e-12);
    EXPECT_GT(ModulusOfContinuity::custom([](double t) { return t * t; }).invariant_defect(), 0.0);
}

TEST(OmegaStar, ClosedFormsMatchIndependentQuadrature) {
    boost::math::quadrature::exp_sinh<double> integrator;
    for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const auto om = ModulusOfContinuity::power(alpha);
        for (double x : {1e-3, 0.1, 1.0, 7.0}) {
            const double ref = x * integrator.integrate([&](double t) { return std::pow(x + t, alpha - 2.0); });
            EXPECT_NEAR(omega_star(om, x), std::pow(x, alpha) / (1 - alpha), 1e-14 * omega_star(om, x));
            EXPECT_NEAR(omega_star(om, x), ref, 1e-8 * ref);
            EXPECT_NEAR(omega_star_quadrature(om, x).value, omega_star(om, x), 1e-8 * omega_star(om, x));
        }
    }
    for (double d : {0.5, 2.0}) {
        const auto om = ModulusOfContinuity::capped_linear(d);
        for (double x : {1e-3, 0.1, 0.4, d}) {
            EXPECT_NEAR(omega_star(om, x), x <= d ? x * std::log(d / x) + x : d, 1e-15);
            EXPECT_NEAR(omega_star_quadrature(om, x).value, omega_star(om, x), 1e-8 * omega_star(om, x));
        }
        EXPECT_DOUBLE_EQ(omega_star(om, d), d);
    }
}

TEST(OmegaStar, DivergentTailRejected) {
    const auto lip = ModulusOfContinuity::custom([](double t) { return t; });
    try {
        omega_star(lip, 1.0);
        FAIL() << "expected an error";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("omega_star undefined"), std::string::npos);
    }
    EXPECT_THROW(omega_star(ModulusOfContinuity::power(1.0), 1.0), PreconditionError);
}

TEST(Jackson, HighScaleRowsVanish) {
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 10, 3);
    const auto rows = jackson_check(f, ModulusOfContinuity::power(0.5), 2, 4);
    for (const auto& r : rows)
        if (std::ldexp(1.0, r.n) >= f.support_radius()) EXPECT_EQ(r.lhs_v, 0.0);
}

TEST(Jackson, ConstantRowsZero) {
    for (const auto& r : jackson_check(TrigPolynomial::constant(2.0), ModulusOfContinuity::power(0.5), -2, 2)) {
        EXPECT_EQ(r.lhs_v, 0.0);
        EXPECT_EQ(r.ratio_v, 0.0);
        EXPECT_EQ(r.lhs_w, 0.0);
    }
}

TEST(Jackson, ExponentialConstantsBounded) {
    for (const auto& r : jackson_check(TrigPolynomial::exponential(1, 0), ModulusOfContinuity::power(1.0), -4, 4)) {
        EXPECT_LE(r.ratio_v, 40.0) << "n = " << r.n;
        EXPECT_LE(r.ratio_w, 40.0) << "n = " << r.n;
    }
}
