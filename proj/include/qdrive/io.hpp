#pragma once

// Flat-file export and import of time series.
//
// CSV: LF line endings, floats printed with 17 significant digits, header
//   t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,rho11_re,rho11_im,purity,c_l1,c_frobenius
// JSON: array of objects with the same field names.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qdrive/core.hpp"

namespace qdrive::io {

inline constexpr std::string_view kCsvHeader =
    "t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,rho11_re,rho11_im,purity,c_l1,c_frobenius";

// Row of the CSV as raw numbers, no validation beyond parsing.
struct CsvRow {
    double t;
    Mat2 rho;
    double purity;
    double c_l1;
    double c_frob;
};

std::string format_double(double v);

void write_csv(std::ostream& os, const TimeSeries& series);
void write_json(std::ostream& os, const TimeSeries& series);

// Accepts the full header or its first nine columns (t and the matrix).
// Missing derived columns are left as NaN.
std::vector<CsvRow> read_csv_rows(std::istream& is);

// Reads rows and rebuilds a series, recomputing the derived columns.
// `tol` is passed to dm_new_relaxed for both hermiticity/trace and positivity.
TimeSeries read_csv(std::istream& is, double tol = kTolHermitian);

}  // namespace qdrive::io
