#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "opcalc/io.hpp"
#include "opcalc/run.hpp"

using namespace opcalc;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunConfig golden_config() {
    RunConfig c;
    c.experiment = "holder-sweep";
    c.seed = 7;
    c.dims = {2, 3};
    c.trials = 2;
    return c;
}

}  // namespace

TEST(Csv, FormatDouble) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
    Rng rng(1);
    for (int s = 0; s < 1000; ++s) {
        const double v = rng.normal() * std::pow(10.0, rng.integer(-30, 30));
        EXPECT_EQ(parse_double(format_double(v)), v);
    }
}

TEST(Csv, EntriesHeader) {
    CMatrix m(1, 2);
    m << cplx(1.0, -2.0), cplx(0.5, 0.0);
    EXPECT_EQ(entries_csv(m), "j,k,re,im\n0,0,1,-2\n0,1,0.5,0\n");
}

TEST(Report, EmptyCsvIsHeaderOnly) {
    RunConfig c = golden_config();
    for (const auto& id : experiment_ids()) {
        c.experiment = id;
        c.trials = 0;
        const auto r = run(c);
        const std::string csv = render_csv(r);
        EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1) << id;
        EXPECT_EQ(csv.substr(0, r.columns.front().size()), r.columns.front()) << id;
    }
}

TEST(Report, JsonRoundTripIsIdempotent) {
    for (const auto& id : experiment_ids()) {
        RunConfig c = golden_config();
        c.experiment = id;
        c.trials = 2;
        const auto r = run(c);
        const std::string once = render_json(r);
        const auto back = parse_report_json(once);
        EXPECT_EQ(render_json(back), once) << id;
        EXPECT_EQ(render_csv(back), render_csv(r)) << id;
    }
}

TEST(Report, JsonLayout) {
    const auto r = run(golden_config());
    const auto j = nlohmann::ordered_json::parse(render_json(r));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j["meta"].items()) keys.push_back(k);
    ASSERT_GE(keys.size(), 5u);
    EXPECT_EQ(keys[0], "experiment");
    EXPECT_EQ(keys[1], "seed");
    EXPECT_EQ(keys[2], "columns");
    EXPECT_EQ(keys.back(), "failures");
    EXPECT_EQ(j["rows"].size(), r.rows.size());
}

TEST(Report, NonFiniteValues) {
    ExperimentReport r;
    r.experiment = "x";
    r.columns = {"a", "b", "c"};
    const double inf = std::numeric_limits<double>::infinity();
    r.add_row({std::numeric_limits<double>::quiet_NaN(), inf, -inf});
    const auto j = nlohmann::json::parse(render_json(r));
    EXPECT_TRUE(j["rows"][0]["a"].is_null());
    EXPECT_EQ(j["rows"][0]["b"], "inf");
    EXPECT_EQ(j["rows"][0]["c"], "-inf");
    const auto back = parse_report_json(render_json(r));
    EXPECT_TRUE(std::isnan(back.rows[0][0]));
    EXPECT_EQ(back.rows[0][1], inf);
    EXPECT_EQ(back.rows[0][2], -inf);
}

TEST(Report, RejectsRowWidth) {
    ExperimentReport r;
    r.columns = {"a", "b"};
    EXPECT_THROW(r.add_row({1.0}), Error);
}

TEST(Report, SvgLayout) {
    const std::string svg = render_svg(run(golden_config()));
    EXPECT_NE(svg.find("viewBox=\"0 0 800 600\""), std::string::npos);
    EXPECT_EQ(svg.find("href"), std::string::npos);
    EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Report, GoldenSvg) {
    const std::string golden = read_file(std::string(OPCALC_GOLDEN_DIR) + "/holder_sweep.svg");
    ASSERT_FALSE(golden.empty());
    EXPECT_EQ(render_svg(run(golden_config())), golden);
}

TEST(Io, PolynomialRoundTrip) {
    const TrigPolynomial f = random_trig_polynomial(0.5, 4.0, 12, 3);
    const TrigPolynomial g = polynomial_from_json(json::parse(to_json(f).dump()));
    EXPECT_EQ(g.base_step(), f.base_step());
    EXPECT_EQ(g.coeffs(), f.coeffs());
}

TEST(Io, MatrixRoundTrip) {
    Rng rng(4);
    const CMatrix m = complex_gaussian(3, 5, rng);
    EXPECT_EQ(matrix_from_json(json::parse(to_json(m).dump())), m);
}

TEST(Io, DecompositionRoundTripRechecked) {
    const auto d = diagonalize(random_normal(5, {}, 5).matrix);
    const auto back = decomposition_from_json(json::parse(to_json(d).dump()));
    EXPECT_EQ(back.unitary, d.unitary);
    EXPECT_EQ(back.eigenvalues, d.eigenvalues);
    json tampered = to_json(d);
    tampered["eigenvalues"][0][0] = tampered["eigenvalues"][0][0].get<double>() + 0.5;
    EXPECT_THROW(decomposition_from_json(tampered), Error);
}

TEST(Io, IdealRoundTrip) {
    const std::vector<IdealSpec> specs{IdealSpec::Sp(2.0), IdealSpec::Sp(std::numeric_limits<double>::infinity()),
                                       IdealSpec::SpWeak(1.5), IdealSpec::TruncHead(4, IdealSpec::Sp(1.0)),
                                       IdealSpec::PowerScale(2.0, IdealSpec::TruncHead(2, IdealSpec::SpWeak(3.0)))};
    for (const auto& s : specs) EXPECT_TRUE(ideal_from_json(json::parse(to_json(s).dump())) == s) << s.name();
    EXPECT_THROW(ideal_from_json(json::parse(R"({"variant":"Sq","p":2})")), Error);
}

TEST(Io, SpectrumCsvRoundTrip) {
    const SingularSpectrum s(std::vector<double>{3.5, 1.0 / 3.0, 1e-300, 0.0});
    EXPECT_EQ(parse_spectrum_csv(spectrum_csv(s)).values(), s.values());
}
