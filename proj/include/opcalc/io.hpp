#ifndef OPCALC_IO_HPP
#define OPCALC_IO_HPP
//
// JSON forms of polynomials, matrices, decompositions and ideal descriptors.
//

#include <string>

#include <json.hpp>

#include "bandlimited.hpp"
#include "ideals.hpp"
#include "spectral.hpp"

namespace opcalc {

using json = nlohmann::json;

inline json to_json(const TrigPolynomial& f) {
    json coeffs = json::array();
    for (const auto& [fr, c] : f.coeffs())
        coeffs.push_back({{"j", fr.j}, {"k", fr.k}, {"re", c.real()}, {"im", c.imag()}});
    return {{"h", f.base_step()}, {"coeffs", coeffs}};
}

inline TrigPolynomial polynomial_from_json(const json& j) {
    TrigPolynomial::Coefficients c;
    for (const auto& e : j.at("coeffs"))
        c[{e.at("j").get<int>(), e.at("k").get<int>()}] += cplx(e.at("re").get<double>(), e.at("im").get<double>());
    return {j.at("h").get<double>(), std::move(c)};
}

// Row-major array of rows, each entry a [re, im] pair.
inline json to_json(const CMatrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix matrix_from_json(const json& j) {
    const Index rows = Index(j.size());
    const Index cols = rows ? Index(j.at(0).size()) : 0;
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = j.at(std::size_t(i));
        if (Index(row.size()) != cols) throw DimensionError("matrix_from_json: ragged rows");
        for (Index k = 0; k < cols; ++k) {
            const auto& e = row.at(std::size_t(k));
            if (e.size() != 2) throw Error("matrix_from_json: entries must be [re, im] pairs");
            m(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

inline json to_json(const SpectralDecomposition& d) {
    json lam = json::array();
    for (Index j = 0; j < d.eigenvalues.size(); ++j) lam.push_back({d.eigenvalues(j).real(), d.eigenvalues(j).imag()});
    return {{"matrix", to_json(d.matrix)}, {"unitary", to_json(d.unitary)}, {"eigenvalues", lam}};
}

// Every invariant is re-checked; stored factors are not trusted.
inline SpectralDecomposition decomposition_from_json(const json& j) {
    const CMatrix n = matrix_from_json(j.at("matrix"));
    const CMatrix u = matrix_from_json(j.at("unitary"));
    const auto& lam = j.at("eigenvalues");
    CVector l(Index(lam.size()));
    for (std::size_t i = 0; i < lam.size(); ++i) l(Index(i)) = cplx(lam[i].at(0).get<double>(), lam[i].at(1).get<double>());
    const SpectralDecomposition d = verify_decomposition(n, u, l);
    const auto [a, b] = hermitian_parts(n);
    if ((a * b - b * a).norm() > 1e-9 * std::max(n.squaredNorm(), 1e-300))
        throw Error("decomposition_from_json: real and imaginary parts do not commute");
    return d;
}

inline json to_json(const IdealSpec& s) {
    using V = IdealSpec::Variant;
    json j;
    switch (s.variant()) {
    case V::sp: j["variant"] = "Sp"; break;
    case V::sp_weak: j["variant"] = "SpWeak"; break;
    case V::trunc_head: j["variant"] = "TruncHead"; break;
    case V::power_scale: j["variant"] = "PowerScale"; break;
    }
    if (s.variant() != V::trunc_head) {
        if (std::isinf(s.p()))
            j["p"] = "inf";
        else
            j["p"] = s.p();
    }
    if (s.variant() == V::trunc_head) j["l"] = s.l();
    if (s.has_base()) j["base"] = to_json(s.base());
    return j;
}

inline double p_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw Error("ideal descriptor: p must be a number or \"inf\"");
    }
    return j.get<double>();
}

inline IdealSpec ideal_from_json(const json& j) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "Sp") return IdealSpec::Sp(p_from_json(j.at("p")));
    if (v == "SpWeak") return IdealSpec::SpWeak(p_from_json(j.at("p")));
    if (v == "TruncHead") return IdealSpec::TruncHead(j.at("l").get<int>(), ideal_from_json(j.at("base")));
    if (v == "PowerScale") return IdealSpec::PowerScale(p_from_json(j.at("p")), ideal_from_json(j.at("base")));
    throw Error("ideal descriptor: unknown variant '" + v + "'");
}

}  // namespace opcalc

#endif
