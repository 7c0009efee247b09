#ifndef OPCALC_SUITES_HPP
#define OPCALC_SUITES_HPP
//
// Identity and constant suites for the doi, sinc and ideals modules.
//

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doi.hpp"
#include "ideals.hpp"
#include "perturbation.hpp"
#include "report.hpp"
#include "sinc.hpp"

namespace opcalc {

//
// The difference and quasicommutator identities against the functional
// calculus, with both matrices diagonalized from scratch.
//
inline ExperimentReport experiment_doi_verify(const std::vector<int>& dims, double sigma, int trials,
                                              std::uint64_t seed, const SpectrumBox& box = {}) {
    ExperimentReport r;
    r.experiment = "doi-verify";
    r.seed = seed;
    r.columns = {"trial", "dim", "delta", "residual_difference", "scale_difference", "residual_quasicommutator",
                 "scale_quasicommutator"};
    r.plot = PlotSpec{"delta", "residual_difference", 0.0};
    r.meta["sigma"] = sigma;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, std::uint64_t(t));
        const Index n = dims[std::size_t(t) % dims.size()];
        const TrigPolynomial f = random_trig_polynomial(0.5, sigma, 12, seed * 104729ULL + std::uint64_t(t));
        const NormalPair planted = t % 2 == 0 ? coupled_pair(n, box, log_uniform(rng, 1e-3, 1.0), rng)
                                              : independent_pair(n, box, rng);
        const SpectralDecomposition d1 = diagonalize(planted.first.matrix);
        const SpectralDecomposition d2 = diagonalize(planted.second.matrix);
        const CMatrix f1 = apply_function(f, d1);
        const CMatrix f2 = apply_function(f, d2);
        const double res_diff = (difference_formula(f, d1, d2) - (f1 - f2)).norm();
        const double scale_diff = 1.0 + f1.norm() + f2.norm();
        const CMatrix rr = complex_gaussian(n, n, rng) / std::sqrt(double(n));
        const double res_qc = (quasicommutator_formula(f, d1, d2, rr) - (f1 * rr - rr * f2)).norm();
        const double scale_qc = 1.0 + (f1 * rr).norm() + (rr * f2).norm();
        r.add_row({double(t), double(n), operator_norm(planted.difference()), res_diff, scale_diff, res_qc, scale_qc});
        r.check(res_diff <= 1e-9 * scale_diff, "doi-verify: difference identity residual at trial " + std::to_string(t));
        r.check(res_qc <= 1e-9 * scale_qc, "doi-verify: quasicommutator identity residual at trial " + std::to_string(t));
    }
    return r;
}

//
// Sampling identities per seeded (σ, y): basis normalization as a sum and an
// integral, row energy against 3‖g‖², expansion and reproducing integral of a
// divided difference, and the factorization bound √3 σ ‖f‖∞.
//
inline ExperimentReport experiment_sinc_check(double sigma, int trials, std::uint64_t seed) {
    ExperimentReport r;
    r.experiment = "sinc-check";
    r.seed = seed;
    r.columns = {"trial", "sigma", "y", "normalization_sum", "normalization_integral", "row_energy",
                 "row_energy_integral", "row_energy_cap", "dd_error", "dd_tail", "reproducing_error",
                 "reproducing_budget", "factor_upper", "factor_bound", "schur_lower", "schur_upper"};
    r.plot = PlotSpec{"factor_bound", "factor_upper", 1.0};
    const IntegralResult envelope = row_energy_envelope();
    r.meta["row_energy_envelope"] = envelope.value.real();
    r.meta["row_energy_envelope_error"] = std::abs(envelope.value.real() - 8.0 / pi);
    const TrigSlice unit(1.0, {{1, 1.0}});
    r.meta["exponential_row_energy_sum"] = row_energy(unit, 1.0, 0.37, 2000);
    r.meta["exponential_row_energy_integral"] = row_energy_integral(unit, 1.0, 0.37).value.real();
    r.check(std::abs(envelope.value.real() - 8.0 / pi) <= 1e-6, "sinc-check: envelope integral differs from 8/pi");
    r.check(std::abs(r.meta["exponential_row_energy_sum"].get<double>() - 2.0) <= 1e-3,
            "sinc-check: row energy of exp(it) differs from 2");
    r.check(std::abs(r.meta["exponential_row_energy_integral"].get<double>() - 2.0) <= 1e-3,
            "sinc-check: row energy integral of exp(it) differs from 2");
    const SupNormOptions sup{256, 1024, 1e-6};
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, std::uint64_t(t));
        const double s = rng.uniform(0.5, std::max(0.5, sigma));
        const double y = rng.uniform(-8.0, 8.0) / s;
        const double x = rng.uniform(-8.0, 8.0) / s;
        const TrigPolynomial f = random_trig_polynomial(0.25, s, 10, seed * 15485863ULL + std::uint64_t(t), false);
        const double fs = std::max(f.support_radius(), 0.25);
        const TrigSlice g = slice_x(f, rng.uniform(-3.0, 3.0));
        const double gnorm = g.sup_norm(4096).upper;

        const PartialSum norm_sum = basis_normalization_sum(s, y, 1000);
        const IntegralResult norm_int = basis_normalization_integral(s, y);
        const double energy = row_energy(g, fs, x, 2000);
        const IntegralResult energy_int = row_energy_integral(g, fs, x);
        const double cap = 3.0 * gnorm * gnorm;
        const cplx direct = g.divided_difference(x, y);
        const Reconstruction rec = reconstruct_dd(g, fs, x, y, 1000);
        const IntegralResult rep = reproducing_integral(g, fs, x, y);
        const double dd_err = std::abs(rec.value - direct);
        const double rep_err = std::abs(rep.value - direct);

        CVector lam(6), mu(6);
        for (Index j = 0; j < 6; ++j) lam(j) = cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
        for (Index j = 0; j < 6; ++j) mu(j) = cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const Axis axis = t % 2 == 0 ? Axis::x : Axis::y;
        const HaagerupFactorization h = haagerup_factorization(f, axis, lam, mu, 2000, fs);
        const double bound = std::sqrt(3.0) * fs * sup_norm(f, sup).upper;
        const DoiKernel kernel = divided_difference_kernel(f, axis, lam, mu);
        const SchurBracket br = schur_norm_bracket(kernel, h.factors(), 8, seed + std::uint64_t(t));

        r.add_row({double(t), s, y, norm_sum.value, norm_int.value.real(), energy, energy_int.value.real(), cap, dd_err,
                   rec.tail_bound, rep_err, rep.error + 1e-6, h.upper, bound, br.lower, *br.upper});
        const std::string at = " at trial " + std::to_string(t);
        r.check(std::abs(norm_sum.value - 1.0) <= 1e-3 && norm_sum.value <= 1.0 + 1e-12,
                "sinc-check: basis normalization sum" + at);
        r.check(std::abs(norm_int.value.real() - 1.0) <= 1e-6, "sinc-check: basis normalization integral" + at);
        r.check(energy <= cap * (1.0 + 1e-6), "sinc-check: row energy exceeds 3 sup^2" + at);
        r.check(dd_err <= rec.tail_bound + 1e-10, "sinc-check: expansion error exceeds tail bound" + at);
        r.check(rep_err <= rep.error + 1e-6, "sinc-check: reproducing integral error" + at);
        r.check(h.upper <= bound * 1.01, "sinc-check: factorization upper exceeds sqrt(3) sigma sup" + at);
        r.check(br.lower <= *br.upper + 1e-8, "sinc-check: multiplier lower bound exceeds upper" + at);
    }
    return r;
}

//
// Boyd indices, dilation constants and averaging constants for Sp and SpWeak.
//
inline ExperimentReport experiment_ideals_boyd(const std::vector<double>& p_list, int trials, std::uint64_t seed) {
    ExperimentReport r;
    r.experiment = "ideals-boyd";
    r.seed = seed;
    r.columns = {"weak", "p", "boyd_estimate", "boyd_analytic", "beta2_estimate", "beta2_analytic",
                 "averaging_empirical", "averaging_bound"};
    r.plot = PlotSpec{"p", "boyd_estimate", -1.0};
    if (trials <= 0) return r;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double p : p_list) {
        for (int weak = 0; weak <= 1; ++weak) {
            const IdealSpec spec = weak ? IdealSpec::SpWeak(p) : IdealSpec::Sp(p);
            const BoydEstimate boyd = boyd_index_estimate(spec, 64);
            const BetaEstimate beta2 = beta_d_estimate(spec, 2);
            const AveragingCheck avg = averaging_constant_check(spec, trials, seed + std::uint64_t(weak));
            r.add_row({double(weak), p, boyd.estimate, boyd.analytic.value_or(nan), beta2.estimate,
                       beta2.analytic.value_or(nan), avg.empirical, avg.bound.value_or(nan)});
            const std::string at = " for " + spec.name();
            if (boyd.analytic)
                r.check(std::abs(boyd.estimate - *boyd.analytic) <= 1e-6, "ideals-boyd: Boyd index estimate" + at);
            r.check(avg.within_bound(), "ideals-boyd: averaging constant exceeds bound" + at);
        }
    }
    return r;
}

}  // namespace opcalc

#endif
