#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "binassoc/contingency.hpp"

// Binary discretization of continuous variables: an evenly spaced threshold
// grid is scanned and the cut with the strongest chi-square association
// against a binary response wins. Also provides the equal-width histogram
// categorizer with AIC-selected section count.

namespace binassoc {

struct ThresholdGrid {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> points;  // strictly increasing, all inside (lower, upper)
};

// count points at lower + l*(upper-lower)/(count+1), l = 1..count. Endpoints
// are excluded.
ThresholdGrid make_grid(double lower, double upper, int count);

// code 1 where value < threshold, else 0 (strict: a value equal to the
// threshold maps to 0).
CategoricalSeries binarize(std::span<const double> values, double threshold,
                           std::string name = {});

struct ThresholdResult {
  double threshold = 0.0;
  double p_value = 1.0;
  int grid_index = 0;
};

// Scans the grid and returns the threshold whose induced 2x2 table against
// `response` has the smallest chi-square p-value; ties resolve to the
// smallest grid index. Selection compares the chi-square statistic, which
// orders identically to the df-1 p-value but cannot underflow.
ThresholdResult best_threshold(const CategoricalSeries& response,
                               std::span<const double> values,
                               const ThresholdGrid& grid);

// Counts per section for `sections` equal-width bins over [x_min, x_max].
// Values on an interior edge go to the right bin; x_max goes to the last bin.
// Throws when a value falls outside the range.
std::vector<std::int64_t> histogram_counts(std::span<const double> values, int sections,
                                           double x_min, double x_max);

// AIC of the equal-width histogram model with `sections` bins, on the
// count-multinomial scale:
//   -2 [ log(n!/prod n(i)!) + sum n(i) log(n(i)/n) ] + 2 [ (c-1) + n log d ]
// where d = (x_max - x_min)/c. Natural logs; the multinomial coefficient is
// evaluated through lgamma.
double histogram_aic(std::span<const double> values, int sections, double x_min,
                     double x_max);

// The same model on the density scale, the multinomial coefficient (a
// constant of the M kind that cancels in comparisons) dropped:
//   -2 sum n(i) log( n(i) / (n d) ) + 2 (c-1).
// This is the score that stays comparable across different section counts;
// on the count scale the n log d term is data-independent and would drag the
// section search to max_sections for any input.
double histogram_density_aic(std::span<const double> values, int sections, double x_min,
                             double x_max);

struct HistogramFit {
  int sections = 1;
  double aic = 0.0;  // density-scale score of the winning section count
  std::vector<double> edges;  // sections + 1 values spanning [min, max]
  CategoricalSeries categories;
};

// Searches section counts 1..max_sections over the data range and keeps the
// density-AIC minimizer (ties resolve to fewer sections). The data range
// must be non-degenerate.
HistogramFit best_equal_width_histogram(std::span<const double> values, int max_sections);

}  // namespace binassoc
