#ifndef OPCALC_CSV_HPP
#define OPCALC_CSV_HPP
//
// Shortest round-trip decimal formatting and (j, k, re, im) entry tables.
//

#include <charconv>
#include <limits>
#include <cmath>
#include <sstream>
#include <string>
#include <system_error>

#include "common.hpp"

namespace opcalc {

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc()) throw Error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw Error("parse_double: invalid number '" + s + "'");
    return v;
}

// One row per entry: j,k,re,im.
inline std::string entries_csv(const CMatrix& m) {
    std::ostringstream out;
    out << "j,k,re,im\n";
    for (Index j = 0; j < m.rows(); ++j)
        for (Index k = 0; k < m.cols(); ++k)
            out << j << ',' << k << ',' << format_double(m(j, k).real()) << ',' << format_double(m(j, k).imag())
                << '\n';
    return out.str();
}

}  // namespace opcalc

#endif
