#include "qdrive/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>

#include "json.hpp"

namespace qdrive::io {

namespace {

constexpr std::string_view kMatrixHeader = "t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,rho11_re,rho11_im";

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(sep, pos);
        out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

double parse_double(std::string_view field, std::size_t line_no) {
    const std::string buf(field);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size())
        throw Error(ErrorKind::ConfigInvalid,
                    "line " + std::to_string(line_no) + ": cannot parse number '" + buf + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

void write_csv(std::ostream& os, const TimeSeries& series) {
    os << kCsvHeader << '\n';
    for (const auto& s : series) {
        const Mat2& m = s.rho.matrix();
        const double vals[] = {s.t,          m.a00.real(), m.a00.imag(), m.a01.real(),
                               m.a01.imag(), m.a10.real(), m.a10.imag(), m.a11.real(),
                               m.a11.imag(), s.purity,     s.c_l1,       s.c_frob};
        for (std::size_t i = 0; i < std::size(vals); ++i) {
            if (i) os << ',';
            os << format_double(vals[i]);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const TimeSeries& series) {
    auto arr = nlohmann::json::array();
    for (const auto& s : series) {
        const Mat2& m = s.rho.matrix();
        arr.push_back({{"t", s.t},
                       {"rho00_re", m.a00.real()},
                       {"rho00_im", m.a00.imag()},
                       {"rho01_re", m.a01.real()},
                       {"rho01_im", m.a01.imag()},
                       {"rho10_re", m.a10.real()},
                       {"rho10_im", m.a10.imag()},
                       {"rho11_re", m.a11.real()},
                       {"rho11_im", m.a11.imag()},
                       {"purity", s.purity},
                       {"c_l1", s.c_l1},
                       {"c_frobenius", s.c_frob}});
    }
    os << arr.dump(2) << '\n';
}

std::vector<CsvRow> read_csv_rows(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::ConfigInvalid, "CSV input is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t columns = 0;
    if (line == kCsvHeader)
        columns = 12;
    else if (line == kMatrixHeader)
        columns = 9;
    else
        throw Error(ErrorKind::ConfigInvalid, "unexpected CSV header '" + line + "'");

    std::vector<CsvRow> rows;
    std::size_t line_no = 1;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != columns)
            throw Error(ErrorKind::ConfigInvalid, "line " + std::to_string(line_no) + ": expected " +
                                                      std::to_string(columns) + " fields, got " +
                                                      std::to_string(f.size()));
        double v[12];
        for (std::size_t i = 0; i < columns; ++i) v[i] = parse_double(f[i], line_no);
        CsvRow r{v[0],
                 {{v[1], v[2]}, {v[3], v[4]}, {v[5], v[6]}, {v[7], v[8]}},
                 columns == 12 ? v[9] : nan,
                 columns == 12 ? v[10] : nan,
                 columns == 12 ? v[11] : nan};
        rows.push_back(r);
    }
    return rows;
}

TimeSeries read_csv(std::istream& is, double tol) {
    TimeSeries out;
    for (const auto& r : read_csv_rows(is)) out.push(r.t, dm_new_relaxed(r.rho, tol, tol));
    return out;
}

}  // namespace qdrive::io
