#pragma once

#include <cstdint>

namespace binassoc {

class ContingencyTable;

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 1;
  double p_value = 1.0;
};

// Pearson chi-square test of independence for a 2x2 table, df = 1, no
// continuity correction. If any row or column marginal is zero the table
// carries no information: statistic := 0 and p := 1.
ChiSquareResult chi_square_2x2(const ContingencyTable& table);

// Same test straight from the four cell counts (hot path for threshold
// scans; avoids building a table object).
ChiSquareResult chi_square_2x2_counts(std::int64_t n11, std::int64_t n10,
                                      std::int64_t n01, std::int64_t n00);

// P(chi2_1 > x) = erfc(sqrt(x/2)). Only df = 1 is supported.
double chi_square_upper_tail(double x, int df = 1);

double std_normal_cdf(double x);

// Inverse of std_normal_cdf on (0, 1). Rational approximation refined by one
// Halley step; mutually inverse with the cdf to well below 1e-9 over
// |x| <= 6.
double std_normal_quantile(double p);

}  // namespace binassoc
