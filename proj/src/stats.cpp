#include "binassoc/stats.hpp"

#include <cmath>
#include <stdexcept>

#include "binassoc/contingency.hpp"

namespace binassoc {

ChiSquareResult chi_square_2x2_counts(std::int64_t n11, std::int64_t n10, std::int64_t n01,
                                      std::int64_t n00) {
  if (n11 < 0 || n10 < 0 || n01 < 0 || n00 < 0)
    throw std::invalid_argument("negative cell count");
  const std::int64_t r1 = n11 + n10;
  const std::int64_t r0 = n01 + n00;
  const std::int64_t c1 = n11 + n01;
  const std::int64_t c0 = n10 + n00;
  const std::int64_t n = r1 + r0;
  if (n < 1) throw std::invalid_argument("empty table");
  // A threshold that puts all rows on one side carries no information and
  // must never win the scan.
  if (r1 == 0 || r0 == 0 || c1 == 0 || c0 == 0) return {0.0, 1, 1.0};

  const double dn = static_cast<double>(n);
  double statistic = 0.0;
  const std::int64_t observed[2][2] = {{n11, n10}, {n01, n00}};
  const double rows[2] = {static_cast<double>(r1), static_cast<double>(r0)};
  const double cols[2] = {static_cast<double>(c1), static_cast<double>(c0)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double expected = rows[i] * cols[j] / dn;
      const double diff = static_cast<double>(observed[i][j]) - expected;
      statistic += diff * diff / expected;
    }
  return {statistic, 1, chi_square_upper_tail(statistic)};
}

ChiSquareResult chi_square_2x2(const ContingencyTable& table) {
  if (table.ndim() != 2 || table.dim(0) != 2 || table.dim(1) != 2)
    throw std::invalid_argument("chi_square_2x2 requires a 2x2 table");
  const auto c = table.counts();
  return chi_square_2x2_counts(c[0], c[1], c[2], c[3]);
}

double chi_square_upper_tail(double x, int df) {
  if (df != 1) throw std::invalid_argument("only df = 1 is supported");
  if (x < 0.0 || !std::isfinite(x)) throw std::invalid_argument("statistic must be >= 0");
  return std::erfc(std::sqrt(0.5 * x));
}

double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);  // 1/sqrt(2)
}

double std_normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("quantile requires p in (0, 1)");

  // Acklam's rational approximation, then one Halley refinement against the
  // erfc-based cdf.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  if (std::abs(x) < 20.0) {
    const double err = std_normal_cdf(x) - p;
    const double u = err * 2.5066282746310005024 * std::exp(0.5 * x * x);  // sqrt(2*pi)
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace binassoc
