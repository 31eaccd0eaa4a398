#include "binassoc/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binassoc/stats.hpp"

namespace binassoc {

ThresholdGrid make_grid(double lower, double upper, int count) {
  if (!(lower < upper)) throw std::invalid_argument("grid needs lower < upper");
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  ThresholdGrid grid{lower, upper, {}};
  grid.points.reserve(static_cast<std::size_t>(count));
  const double span = upper - lower;
  for (int l = 1; l <= count; ++l)
    grid.points.push_back(lower + static_cast<double>(l) * span / static_cast<double>(count + 1));
  return grid;
}

CategoricalSeries binarize(std::span<const double> values, double threshold, std::string name) {
  if (values.empty()) throw std::invalid_argument("binarize: empty series");
  CategoricalSeries out;
  out.name = std::move(name);
  out.n_categories = 2;
  out.codes.reserve(values.size());
  for (double v : values) out.codes.push_back(v < threshold ? 1 : 0);
  return out;
}

ThresholdResult best_threshold(const CategoricalSeries& response, std::span<const double> values,
                               const ThresholdGrid& grid) {
  response.validate();
  if (response.n_categories != 2)
    throw std::invalid_argument("best_threshold needs a binary response");
  if (response.size() != values.size())
    throw std::invalid_argument("best_threshold: response and values differ in length");
  if (grid.points.empty()) throw std::invalid_argument("best_threshold: empty grid");

  // Sort values once and keep a prefix count of response-1 rows, so that each
  // grid point costs one binary search instead of a full rebinarization.
  const std::size_t n = values.size();
  std::vector<std::pair<double, int>> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = {values[i], response.codes[i]};
  std::sort(order.begin(), order.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<double> sorted_values(n);
  std::vector<std::int64_t> ones_prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sorted_values[i] = order[i].first;
    ones_prefix[i + 1] = ones_prefix[i] + order[i].second;
  }
  const std::int64_t total_ones = ones_prefix[n];
  const std::int64_t total = static_cast<std::int64_t>(n);

  double best_statistic = -1.0;
  std::size_t best_index = 0;
  for (std::size_t l = 0; l < grid.points.size(); ++l) {
    const double s = grid.points[l];
    const std::size_t below =
        static_cast<std::size_t>(std::lower_bound(sorted_values.begin(), sorted_values.end(), s) -
                                 sorted_values.begin());
    const std::int64_t below_ones = ones_prefix[below];
    const std::int64_t below_total = static_cast<std::int64_t>(below);
    const ChiSquareResult r =
        chi_square_2x2_counts(below_ones, total_ones - below_ones, below_total - below_ones,
                              (total - below_total) - (total_ones - below_ones));
    if (r.statistic > best_statistic) {
      best_statistic = r.statistic;
      best_index = l;
    }
  }
  return ThresholdResult{grid.points[best_index], chi_square_upper_tail(best_statistic),
                         static_cast<int>(best_index)};
}

std::vector<std::int64_t> histogram_counts(std::span<const double> values, int sections,
                                           double x_min, double x_max) {
  if (values.empty()) throw std::invalid_argument("histogram: empty series");
  if (sections < 1) throw std::invalid_argument("histogram needs at least one section");
  if (!(x_min < x_max)) throw std::invalid_argument("histogram range is degenerate");
  const double width = (x_max - x_min) / static_cast<double>(sections);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(sections), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v < x_min || v > x_max)
      throw std::invalid_argument("histogram: value " + std::to_string(v) + " at row " +
                                  std::to_string(i) + " is outside the range");
    int idx = static_cast<int>(std::floor((v - x_min) / width));
    idx = std::clamp(idx, 0, sections - 1);
    ++counts[static_cast<std::size_t>(idx)];
  }
  return counts;
}

double histogram_aic(std::span<const double> values, int sections, double x_min, double x_max) {
  const std::vector<std::int64_t> counts = histogram_counts(values, sections, x_min, x_max);
  const double n = static_cast<double>(values.size());
  double log_coef = std::lgamma(n + 1.0);
  double loglik = 0.0;
  for (std::int64_t c : counts) {
    log_coef -= std::lgamma(static_cast<double>(c) + 1.0);
    if (c > 0) loglik += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
  }
  const double width = (x_max - x_min) / static_cast<double>(sections);
  return -2.0 * (log_coef + loglik) +
         2.0 * (static_cast<double>(sections - 1) + n * std::log(width));
}

double histogram_density_aic(std::span<const double> values, int sections, double x_min,
                             double x_max) {
  const std::vector<std::int64_t> counts = histogram_counts(values, sections, x_min, x_max);
  const double n = static_cast<double>(values.size());
  const double width = (x_max - x_min) / static_cast<double>(sections);
  double loglik = 0.0;
  for (std::int64_t c : counts)
    if (c > 0) loglik += static_cast<double>(c) * std::log(static_cast<double>(c) / (n * width));
  return -2.0 * loglik + 2.0 * static_cast<double>(sections - 1);
}

HistogramFit best_equal_width_histogram(std::span<const double> values, int max_sections) {
  if (values.empty()) throw std::invalid_argument("histogram: empty series");
  if (max_sections < 1) throw std::invalid_argument("max_sections must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double x_min = *lo_it;
  const double x_max = *hi_it;
  if (!(x_min < x_max))
    throw std::invalid_argument("histogram: all values are equal, range is degenerate");

  HistogramFit fit;
  fit.sections = 1;
  fit.aic = histogram_density_aic(values, 1, x_min, x_max);
  for (int c = 2; c <= max_sections; ++c) {
    const double aic = histogram_density_aic(values, c, x_min, x_max);
    if (aic < fit.aic) {
      fit.aic = aic;
      fit.sections = c;
    }
  }
  const double width = (x_max - x_min) / static_cast<double>(fit.sections);
  fit.edges.reserve(static_cast<std::size_t>(fit.sections) + 1);
  for (int e = 0; e <= fit.sections; ++e)
    fit.edges.push_back(e == fit.sections ? x_max : x_min + width * static_cast<double>(e));
  fit.categories.n_categories = fit.sections;
  fit.categories.codes.reserve(values.size());
  for (double v : values) {
    int idx = static_cast<int>(std::floor((v - x_min) / width));
    fit.categories.codes.push_back(std::clamp(idx, 0, fit.sections - 1));
  }
  return fit;
}

}  // namespace binassoc
