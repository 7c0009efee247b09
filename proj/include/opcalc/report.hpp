#ifndef OPCALC_REPORT_HPP
#define OPCALC_REPORT_HPP
//
// Tabulated experiment results and their CSV, JSON and SVG renderings.
//

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "csv.hpp"

namespace opcalc {

using ordered_json = nlohmann::ordered_json;

struct PlotSpec {
    std::string x;
    std::string y;
    double slope = 1.0;
};

struct ExperimentReport {
    std::string experiment;
    std::uint64_t seed = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    ordered_json meta = ordered_json::object();
    std::vector<std::string> failures;
    std::optional<PlotSpec> plot;

    bool ok() const { return failures.empty(); }

    std::size_t column(const std::string& name) const {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end()) throw Error("report: unknown column '" + name + "'");
        return std::size_t(it - columns.begin());
    }

    void add_row(std::vector<double> row) {
        if (row.size() != columns.size()) throw DimensionError("report: row width does not match the header");
        rows.push_back(std::move(row));
    }

    // Records a violated certified bound or identity.
    void check(bool condition, const std::string& what) {
        if (!condition) failures.push_back(what);
    }

    std::vector<double> column_values(const std::string& name) const {
        const std::size_t c = column(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r[c]);
        return out;
    }
};

inline std::string render_csv(const ExperimentReport& r) {
    std::ostringstream out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
    return out.str();
}

namespace detail {

inline double number_from_json(const ordered_json& v) {
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw Error("report: unexpected string value '" + s + "'");
    }
    return v.get<double>();
}

inline ordered_json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return nullptr;
}

}  // namespace detail

inline ordered_json report_to_json(const ExperimentReport& r) {
    ordered_json meta = ordered_json::object();
    meta["experiment"] = r.experiment;
    meta["seed"] = r.seed;
    meta["columns"] = r.columns;
    if (r.plot) meta["plot"] = {{"x", r.plot->x}, {"y", r.plot->y}, {"slope", r.plot->slope}};
    for (const auto& [k, v] : r.meta.items()) meta[k] = v;
    meta["failures"] = r.failures;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = detail::number_or_null(row[i]);
        rows.push_back(std::move(obj));
    }
    return ordered_json{{"meta", std::move(meta)}, {"rows", std::move(rows)}};
}

inline std::string render_json(const ExperimentReport& r) { return report_to_json(r).dump(2) + "\n"; }

inline ExperimentReport parse_report_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    ExperimentReport r;
    const auto& meta = j.at("meta");
    r.experiment = meta.at("experiment").get<std::string>();
    r.seed = meta.at("seed").get<std::uint64_t>();
    r.columns = meta.at("columns").get<std::vector<std::string>>();
    r.failures = meta.at("failures").get<std::vector<std::string>>();
    if (meta.contains("plot")) {
        const auto& p = meta.at("plot");
        r.plot = PlotSpec{p.at("x").get<std::string>(), p.at("y").get<std::string>(), p.at("slope").get<double>()};
    }
    for (const auto& [k, v] : meta.items())
        if (k != "experiment" && k != "seed" && k != "columns" && k != "plot" && k != "failures") r.meta[k] = v;
    for (const auto& obj : j.at("rows")) {
        std::vector<double> row;
        for (const auto& c : r.columns) {
            const auto& v = obj.at(c);
            row.push_back(detail::number_from_json(v));
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

//
// Log-log scatter of the plot columns with a reference line of the given
// slope through the geometric centroid of the points.
//
inline std::string render_svg(const ExperimentReport& r) {
    if (!r.plot) throw Error("render_svg: report has no plot columns");
    const std::size_t cx = r.column(r.plot->x);
    const std::size_t cy = r.column(r.plot->y);
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : r.rows) {
        const double x = row[cx], y = row[cy];
        if (std::isfinite(x) && std::isfinite(y) && x > 0.0 && y > 0.0) pts.emplace_back(std::log10(x), std::log10(y));
    }
    constexpr double W = 800, H = 600, L = 90, R = 30, T = 50, B = 70;
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    o << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << r.experiment
      << ": " << r.plot->y << " vs " << r.plot->x << "</text>\n";
    o << "<rect x=\"" << fmt(L) << "\" y=\"" << fmt(T) << "\" width=\"" << fmt(W - L - R) << "\" height=\""
      << fmt(H - T - B) << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt(L + (W - L - R) / 2) << "\" y=\"" << fmt(H - 20)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">log10 " << r.plot->x << "</text>\n";
    o << "<text x=\"20\" y=\"" << fmt(T + (H - T - B) / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 20 " << fmt(T + (H - T - B) / 2) << ")\">log10 " << r.plot->y
      << "</text>\n";
    if (pts.empty()) {
        o << "<text x=\"400\" y=\"300\" text-anchor=\"middle\" font-family=\"sans-serif\">no positive data</text>\n";
        o << "</svg>\n";
        return o.str();
    }
    double x0 = pts[0].first, x1 = x0, y0 = pts[0].second, y1 = y0, mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
        mx += x, my += y;
    }
    mx /= double(pts.size());
    my /= double(pts.size());
    if (x1 - x0 < 1e-9) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-9) y0 -= 0.5, y1 += 0.5;
    const double px = 0.05 * (x1 - x0), py = 0.05 * (y1 - y0);
    x0 -= px, x1 += px, y0 -= py, y1 += py;
    auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    for (int k = 0; k <= 4; ++k) {
        const double gx = x0 + (x1 - x0) * k / 4.0, gy = y0 + (y1 - y0) * k / 4.0;
        o << "<text x=\"" << fmt(sx(gx)) << "\" y=\"" << fmt(H - B + 18)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(gx) << "</text>\n";
        o << "<text x=\"" << fmt(L - 8) << "\" y=\"" << fmt(sy(gy) + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(gy) << "</text>\n";
    }
    o << "<defs><clipPath id=\"plot\"><rect x=\"" << fmt(L) << "\" y=\"" << fmt(T) << "\" width=\"" << fmt(W - L - R)
      << "\" height=\"" << fmt(H - T - B) << "\"/></clipPath></defs>\n";
    o << "<g clip-path=\"url(#plot)\">\n";
    o << "<line x1=\"" << fmt(sx(x0)) << "\" y1=\"" << fmt(sy(my + r.plot->slope * (x0 - mx))) << "\" x2=\""
      << fmt(sx(x1)) << "\" y2=\"" << fmt(sy(my + r.plot->slope * (x1 - mx)))
      << "\" stroke=\"firebrick\" stroke-dasharray=\"6 4\" stroke-width=\"1.5\"/>\n";
    o << "<g fill=\"steelblue\" fill-opacity=\"0.75\">\n";
    for (const auto& [x, y] : pts) o << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y)) << "\" r=\"3\"/>\n";
    o << "</g>\n</g>\n";
    o << "<text x=\"" << fmt(W - R - 10) << "\" y=\"" << fmt(T + 20)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"firebrick\">slope "
      << format_double(r.plot->slope) << "</text>\n";
    o << "</svg>\n";
    return o.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("failed writing '" + path + "'");
}

inline void write_outputs(const ExperimentReport& r, const std::string& prefix) {
    write_text_file(prefix + ".csv", render_csv(r));
    write_text_file(prefix + ".json", render_json(r));
    if (r.plot) write_text_file(prefix + ".svg", render_svg(r));
}

}  // namespace opcalc

#endif
