#ifndef OPCALC_IDEALS_HPP
#define OPCALC_IDEALS_HPP
//
// Singular-value functionals of quasinormed ideals: Schatten, weak Schatten,
// truncated heads, power scaling, dilation, Boyd indices and averaging
// constants.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "csv.hpp"
#include "linalg.hpp"

namespace opcalc {

// Nonincreasing, nonnegative; zero beyond the stored values.
class SingularSpectrum {
  public:
    SingularSpectrum() = default;
    explicit SingularSpectrum(std::vector<double> values) : values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!(values_[i] >= 0.0)) throw PreconditionError("SingularSpectrum: entries must be nonnegative");
            if (i > 0 && values_[i] > values_[i - 1])
                throw PreconditionError("SingularSpectrum: entries must be nonincreasing");
        }
    }

    // Sorts first.
    static SingularSpectrum from_unsorted(std::vector<double> values) {
        for (double& v : values) v = std::abs(v);
        std::sort(values.begin(), values.end(), std::greater<>());
        return SingularSpectrum(std::move(values));
    }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t j) const { return j < values_.size() ? values_[j] : 0.0; }
    const std::vector<double>& values() const { return values_; }
    double sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

    friend bool operator==(const SingularSpectrum&, const SingularSpectrum&) = default;

  private:
    std::vector<double> values_;
};

inline SingularSpectrum singular_values(const CMatrix& t) { return SingularSpectrum(jacobi_singular_values(t)); }

// σ_n = (1/(n+1)) Σ_{j≤n} s_j for n = 0..m-1.
inline std::vector<double> sigma_averages(const SingularSpectrum& s) {
    std::vector<double> out(s.size());
    double run = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) {
        run += s[n];
        out[n] = run / double(n + 1);
    }
    return out;
}

// Largest singular value by power iteration on T*T.
inline double power_iteration_norm(const CMatrix& t, int iterations = 500, std::uint64_t seed = 0) {
    if (t.size() == 0) return 0.0;
    Rng rng(seed);
    CVector v = complex_gaussian(t.cols(), 1, rng);
    v.normalize();
    double est = 0.0;
    for (int i = 0; i < iterations; ++i) {
        CVector w = t.adjoint() * (t * v);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        const double next = (t * v).norm();
        if (std::abs(next - est) <= 1e-16 * next && i > 10) return next;
        est = next;
    }
    return est;
}

//
// Ideal descriptor: Sp(p), SpWeak(p), TruncHead(l, base), PowerScale(p, base).
// p = infinity for Sp means the operator norm.
//
class IdealSpec {
  public:
    enum class Variant { sp, sp_weak, trunc_head, power_scale };

    static IdealSpec Sp(double p) { return IdealSpec(Variant::sp, check_p(p), 0, nullptr); }
    static IdealSpec SpWeak(double p) { return IdealSpec(Variant::sp_weak, check_p(p), 0, nullptr); }
    static IdealSpec TruncHead(int l, const IdealSpec& base) {
        if (l < 0) throw PreconditionError("TruncHead: l must be >= 0");
        return IdealSpec(Variant::trunc_head, 0.0, l, std::make_shared<IdealSpec>(base));
    }
    static IdealSpec PowerScale(double p, const IdealSpec& base) {
        if (!(p > 0.0) || std::isinf(p)) throw PreconditionError("PowerScale: p must be positive and finite");
        return IdealSpec(Variant::power_scale, p, 0, std::make_shared<IdealSpec>(base));
    }

    Variant variant() const { return variant_; }
    double p() const { return p_; }
    int l() const { return l_; }
    const IdealSpec& base() const {
        if (!base_) throw PreconditionError("IdealSpec: variant has no base");
        return *base_;
    }
    bool has_base() const { return bool(base_); }

    std::string name() const {
        std::ostringstream o;
        switch (variant_) {
        case Variant::sp: o << "Sp(" << format_double(p_) << ")"; break;
        case Variant::sp_weak: o << "SpWeak(" << format_double(p_) << ")"; break;
        case Variant::trunc_head: o << "TruncHead(" << l_ << "," << base_->name() << ")"; break;
        case Variant::power_scale: o << "PowerScale(" << format_double(p_) << "," << base_->name() << ")"; break;
        }
        return o.str();
    }

    friend bool operator==(const IdealSpec& a, const IdealSpec& b) {
        if (a.variant_ != b.variant_ || a.p_ != b.p_ || a.l_ != b.l_ || bool(a.base_) != bool(b.base_)) return false;
        return !a.base_ || *a.base_ == *b.base_;
    }

  private:
    IdealSpec(Variant v, double p, int l, std::shared_ptr<const IdealSpec> base)
        : variant_(v), p_(p), l_(l), base_(std::move(base)) {}

    static double check_p(double p) {
        if (!(p > 0.0)) throw PreconditionError("IdealSpec: p must be positive");
        return p;
    }

    Variant variant_;
    double p_;
    int l_;
    std::shared_ptr<const IdealSpec> base_;
};

//
// A sequence given by explicit head values followed by the tail
// scale (n + 1)^{-exponent} for n ≥ head.size(). Used for σ-averages,
// whose tail beyond the rank is (Σ s)/(n + 1).
//
struct TailedSequence {
    std::vector<double> head;
    double tail_scale = 0.0;
    double tail_exponent = 1.0;

    double at(std::size_t n) const {
        if (n < head.size()) return head[n];
        return tail_scale == 0.0 ? 0.0 : tail_scale * std::pow(double(n + 1), -tail_exponent);
    }
};

namespace detail {

// Σ_{k=a}^∞ k^{-s} for s > 1, a ≥ 1: direct sum then Euler–Maclaurin.
inline double hurwitz_tail(double s, std::size_t a) {
    if (!(s > 1.0)) return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    const std::size_t direct = 2000;
    for (std::size_t k = a; k < a + direct; ++k) sum += std::pow(double(k), -s);
    const double K = double(a + direct);
    sum += std::pow(K, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(K, -s) + s / 12.0 * std::pow(K, -s - 1.0) -
           s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(K, -s - 3.0);
    return sum;
}

inline double psi_tailed(const IdealSpec& spec, const TailedSequence& x) {
    using V = IdealSpec::Variant;
    const std::size_t m = x.head.size();
    switch (spec.variant()) {
    case V::sp: {
        const double p = spec.p();
        if (std::isinf(p)) {
            double mx = x.tail_scale > 0.0 ? x.at(m) : 0.0;
            for (double v : x.head) mx = std::max(mx, v);
            return mx;
        }
        double sum = 0.0;
        for (double v : x.head) sum += std::pow(v, p);
        if (x.tail_scale > 0.0) sum += std::pow(x.tail_scale, p) * hurwitz_tail(p * x.tail_exponent, m + 1);
        return std::pow(sum, 1.0 / p);
    }
    case V::sp_weak: {
        const double p = spec.p();
        double sup = 0.0;
        for (std::size_t j = 0; j < m; ++j) sup = std::max(sup, double(j + 1) * std::pow(x.head[j], p));
        if (x.tail_scale > 0.0) {
            const double e = 1.0 - p * x.tail_exponent;  // (n+1)^e S^p on the tail
            if (e > 0.0) return std::numeric_limits<double>::infinity();
            sup = std::max(sup, std::pow(double(m + 1), e) * std::pow(x.tail_scale, p));
        }
        return std::pow(sup, 1.0 / p);
    }
    case V::trunc_head: {
        const std::size_t len = std::size_t(spec.l()) + 1;
        TailedSequence h;
        h.head.resize(len);
        for (std::size_t j = 0; j < len; ++j) h.head[j] = x.at(j);
        return psi_tailed(spec.base(), h);
    }
    case V::power_scale: {
        const double a = spec.p();
        TailedSequence y;
        y.head.reserve(m);
        for (double v : x.head) y.head.push_back(std::pow(v, a));
        y.tail_scale = std::pow(x.tail_scale, a);
        y.tail_exponent = x.tail_exponent * a;
        return std::pow(psi_tailed(spec.base(), y), 1.0 / a);
    }
    }
    return 0.0;
}

}  // namespace detail

inline double psi_norm(const IdealSpec& spec, const SingularSpectrum& s) {
    return detail::psi_tailed(spec, TailedSequence{s.values(), 0.0, 1.0});
}

inline double psi_norm(const IdealSpec& spec, const CMatrix& t) { return psi_norm(spec, singular_values(t)); }

// Ψ of the full σ-sequence of s, including its harmonic tail beyond the support.
inline double psi_of_averages(const IdealSpec& spec, const SingularSpectrum& s) {
    return detail::psi_tailed(spec, TailedSequence{sigma_averages(s), s.sum(), 1.0});
}

// s_n([T]_d) = s_{⌊n/d⌋}(T)
inline SingularSpectrum dilate_spectrum(const SingularSpectrum& s, int d) {
    if (d < 1) throw PreconditionError("dilate_spectrum: d must be >= 1");
    std::vector<double> out;
    out.reserve(s.size() * std::size_t(d));
    for (double v : s.values())
        for (int r = 0; r < d; ++r) out.push_back(v);
    return SingularSpectrum(std::move(out));
}

// Exact β_{𝔍,d} where it is known in closed form.
inline std::optional<double> analytic_beta(const IdealSpec& spec, int d) {
    using V = IdealSpec::Variant;
    switch (spec.variant()) {
    case V::sp:
    case V::sp_weak: return std::isinf(spec.p()) ? 1.0 : std::pow(double(d), 1.0 / spec.p());
    case V::power_scale: {
        const auto b = analytic_beta(spec.base(), d);
        if (!b) return std::nullopt;
        return std::pow(*b, 1.0 / spec.p());
    }
    case V::trunc_head: return std::nullopt;
    }
    return std::nullopt;
}

inline std::optional<double> analytic_boyd_index(const IdealSpec& spec) {
    using V = IdealSpec::Variant;
    switch (spec.variant()) {
    case V::sp:
    case V::sp_weak: return std::isinf(spec.p()) ? 0.0 : 1.0 / spec.p();
    case V::power_scale: {
        const auto b = analytic_boyd_index(spec.base());
        if (!b) return std::nullopt;
        return *b / spec.p();
    }
    case V::trunc_head: return std::nullopt;
    }
    return std::nullopt;
}

struct TestFamily {
    std::vector<SingularSpectrum> members;

    // Geometric r^j, power laws (1+j)^{-γ} and finite-support indicators.
    static TestFamily standard(std::size_t length = 64) {
        TestFamily f;
        for (double r : {0.99, 0.9, 0.5}) {
            std::vector<double> v(length);
            for (std::size_t j = 0; j < length; ++j) v[j] = std::pow(r, double(j));
            f.members.emplace_back(std::move(v));
        }
        for (int k = 1; k <= 8; ++k) {
            const double gamma = 0.25 * k;
            std::vector<double> v(length);
            for (std::size_t j = 0; j < length; ++j) v[j] = std::pow(double(j + 1), -gamma);
            f.members.emplace_back(std::move(v));
        }
        for (std::size_t k = 1; k <= length; k *= 2) f.members.emplace_back(std::vector<double>(k, 1.0));
        return f;
    }

    // Adds the d-fold dilations of every member for each d listed.
    TestFamily with_dilations(const std::vector<int>& ds) const {
        TestFamily out = *this;
        for (int d : ds)
            for (const auto& s : members) out.members.push_back(dilate_spectrum(s, d));
        return out;
    }
};

struct BetaEstimate {
    double estimate = 1.0;              // certified lower bound on β_{𝔍,d}
    std::optional<double> analytic;
};

inline BetaEstimate beta_d_estimate(const IdealSpec& spec, int d, const TestFamily& family = TestFamily::standard()) {
    if (d < 1) throw PreconditionError("beta_d_estimate: d must be >= 1");
    BetaEstimate out;
    out.estimate = d == 1 ? 1.0 : 0.0;
    if (d > 1)
        for (const auto& s : family.members) {
            const double den = psi_norm(spec, s);
            if (den > 0.0) out.estimate = std::max(out.estimate, psi_norm(spec, dilate_spectrum(s, d)) / den);
        }
    out.analytic = analytic_beta(spec, d);
    return out;
}

struct BoydEstimate {
    double estimate = 0.0;
    std::optional<double> analytic;
};

// min over d in {2, 4, ..., d_max} of log β_d / log d.
inline BoydEstimate boyd_index_estimate(const IdealSpec& spec, int d_max,
                                        const TestFamily& family = TestFamily::standard()) {
    if (d_max < 2) throw PreconditionError("boyd_index_estimate: d_max must be >= 2");
    BoydEstimate out;
    out.estimate = std::numeric_limits<double>::infinity();
    for (int d = 2; d <= d_max; d *= 2)
        out.estimate = std::min(out.estimate, std::log(beta_d_estimate(spec, d, family).estimate) / std::log(double(d)));
    out.analytic = analytic_boyd_index(spec);
    return out;
}

// 3 Σ_k 2^{-k} β_{2^k} evaluated in closed form when β_d = d^θ with θ < 1.
inline std::optional<double> averaging_bound(const IdealSpec& spec) {
    if (spec.variant() == IdealSpec::Variant::trunc_head) return averaging_bound(spec.base());
    const auto theta = analytic_boyd_index(spec);
    if (!theta || !(*theta < 1.0)) return std::nullopt;
    return 3.0 / (1.0 - std::pow(2.0, *theta - 1.0));
}

// Seeded nonincreasing spectra of assorted shapes, length 1..max_length.
inline SingularSpectrum random_spectrum(Rng& rng, int max_length = 64) {
    const int m = rng.integer(1, max_length);
    std::vector<double> v(std::size_t(m), 0.0);
    switch (rng.integer(0, 4)) {
    case 0:
        for (double& x : v) x = std::abs(rng.normal());
        break;
    case 1: {
        const double k = rng.uniform(1.0, 8.0);
        for (double& x : v) x = std::pow(rng.uniform(), k);
        break;
    }
    case 2: {
        const double r = rng.uniform(0.3, 1.0);
        for (int j = 0; j < m; ++j) v[std::size_t(j)] = std::pow(r, j);
        break;
    }
    case 3: {
        const double g = rng.uniform(0.1, 3.0);
        for (int j = 0; j < m; ++j) v[std::size_t(j)] = std::pow(double(j + 1), -g);
        break;
    }
    default: {
        const int k = rng.integer(1, m);
        for (int j = 0; j < k; ++j) v[std::size_t(j)] = 1.0;
        break;
    }
    }
    return SingularSpectrum::from_unsorted(std::move(v));
}

struct AveragingCheck {
    double empirical = 0.0;  // max Ψ(σ)/Ψ(s) observed
    std::optional<double> bound;
    bool within_bound() const { return !bound || empirical <= *bound; }
};

inline AveragingCheck averaging_constant_check(const IdealSpec& spec, int trials, std::uint64_t seed,
                                               int max_length = 64) {
    AveragingCheck out;
    out.bound = averaging_bound(spec);
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, std::uint64_t(t));
        const SingularSpectrum s = random_spectrum(rng, max_length);
        const double den = psi_norm(spec, s);
        if (den > 0.0) out.empirical = std::max(out.empirical, psi_of_averages(spec, s) / den);
    }
    return out;
}

// True iff σ_l(s1) ≥ σ_l(s2) for every l.
inline bool majorization_le(const SingularSpectrum& s1, const SingularSpectrum& s2) {
    const std::size_t len = std::max(s1.size(), s2.size());
    double a = 0.0, b = 0.0;
    for (std::size_t l = 0; l < len; ++l) {
        a += s1[l];
        b += s2[l];
        if (a < b) return false;
    }
    return true;
}

// ‖T1 T2‖_{S_r^l} - ‖T1‖_{S_p^l} ‖T2‖_{S_q^l} with 1/p + 1/q = 1/r.
inline double kyfan_holder_check(const CMatrix& t1, const CMatrix& t2, double p, double q, double r, int l) {
    if (std::abs(1.0 / p + 1.0 / q - 1.0 / r) > 1e-12)
        throw PreconditionError("kyfan_holder_check: exponents must satisfy 1/p + 1/q = 1/r");
    if (t1.cols() != t2.rows()) throw DimensionError("kyfan_holder_check: product undefined");
    auto head = [l](double e) { return IdealSpec::TruncHead(l, IdealSpec::Sp(e)); };
    return psi_norm(head(r), CMatrix(t1 * t2)) - psi_norm(head(p), t1) * psi_norm(head(q), t2);
}

inline std::string spectrum_csv(const SingularSpectrum& s) {
    std::string out;
    for (double v : s.values()) out += format_double(v) + "\n";
    return out;
}

inline SingularSpectrum parse_spectrum_csv(const std::string& text) {
    std::vector<double> v;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        v.push_back(parse_double(line));
    }
    return SingularSpectrum(std::move(v));
}

}  // namespace opcalc

#endif
