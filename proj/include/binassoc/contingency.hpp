#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Contingency tables over small-integer category codes, and AIC scoring of
// conditional probability models Model(response; predictor subset).
//
// The score follows the CATDAP convention: aic_conditional() returns the AIC
// of the conditional model *relative to* the no-predictor model, so the empty
// model scores exactly 0 and negative values indicate dependence. The
// absolute (catdap output) scale is recovered by adding
// response_marginal_aic().

namespace binassoc {

// A column of category codes. Codes are 0-based and every code lies in
// [0, n_categories).
struct CategoricalSeries {
  std::vector<int> codes;
  int n_categories = 2;
  std::string name;

  std::size_t size() const { return codes.size(); }

  // Throws std::invalid_argument when empty, n_categories < 1, or any code
  // is out of range.
  void validate() const;
};

// Dense m-way array of joint category counts, row-major (last axis fastest).
class ContingencyTable {
 public:
  static constexpr std::size_t kDefaultCellCap = std::size_t{1} << 20;

  ContingencyTable(std::vector<int> dims, std::vector<std::string> axis_names = {},
                   std::size_t cell_cap = kDefaultCellCap);
  // Convenience: dims plus a pre-filled row-major count vector.
  ContingencyTable(std::vector<int> dims, std::vector<std::int64_t> cells,
                   std::vector<std::string> axis_names = {});

  std::size_t ndim() const { return dims_.size(); }
  int dim(std::size_t axis) const { return dims_[axis]; }
  const std::vector<int>& dims() const { return dims_; }
  const std::string& axis_name(std::size_t axis) const { return names_[axis]; }
  const std::vector<std::string>& axis_names() const { return names_; }
  std::span<const std::int64_t> counts() const { return counts_; }
  std::int64_t total() const { return total_; }

  std::int64_t cell(std::span<const int> codes) const;
  void increment(std::span<const int> codes, std::int64_t by = 1);

  // Collapses onto `axes`, in the given order. Axes must be distinct and
  // valid. Summing over the dropped axes reproduces the joint marginal.
  ContingencyTable marginal(std::span<const int> axes) const;

 private:
  std::size_t index_of(std::span<const int> codes) const;

  std::vector<int> dims_;
  std::vector<std::string> names_;
  std::vector<std::size_t> strides_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

// Cross-tabulates equal-length series; cell (c1,...,cm) counts the rows whose
// codes equal (c1,...,cm). Throws on length mismatch, out-of-range codes, or
// a cell count above `cell_cap`.
ContingencyTable build_table(std::span<const CategoricalSeries> series,
                             std::size_t cell_cap = ContingencyTable::kDefaultCellCap);

// A conditional model: response axis explained by a (possibly empty) sorted
// set of predictor axes.
struct ModelSpec {
  int response_axis = 0;
  std::vector<int> predictor_axes;

  void validate_for(const ContingencyTable& table) const;
  bool operator==(const ModelSpec&) const = default;
};

struct ModelScore {
  ModelSpec spec;
  double aic = 0.0;
};

// All 2^num_predictors predictor subsets for a table with num_predictors + 1
// axes, ordered by subset size then lexicographically; the empty model comes
// first. The order is fixed so reports are reproducible byte-for-byte.
std::vector<ModelSpec> enumerate_models(int num_predictors, int response_axis);

// Scores every enumerated model on the table, in enumeration order.
std::vector<ModelScore> score_all_models(const ContingencyTable& table, int response_axis);

// AIC of Model(response; J) relative to Model(response; {}):
//   -2 sum n(i1,j) log[ n * n(i1,j) / (n(i1) n(j)) ] + 2 (c1-1)(cJ-1)
// with natural logs, 0*log 0 := 0, and cJ the product of predictor category
// counts. Zero marginals contribute nothing (their cells are necessarily 0).
// Returns exactly 0 for the empty predictor set.
double aic_conditional(const ContingencyTable& table, const ModelSpec& spec);

// The log-likelihood-ratio part of aic_conditional (the sum above, before
// the -2 scaling and penalty). Exposed for tests of exact scaling behaviour.
double conditional_log_ratio_sum(const ContingencyTable& table, const ModelSpec& spec);

// AIC(independence) - AIC(dependence) for a 2x2 table; positive values favour
// the dependence model. Identically equal to -aic_conditional with a single
// predictor.
double delta_aic_2x2(const ContingencyTable& table);

// Absolute AIC of the no-predictor multinomial for one axis:
//   -2 sum n(i1) log(n(i1)/n) + 2 (c1 - 1).
// aic_conditional(t, spec) + response_marginal_aic(t, spec.response_axis)
// is the absolute conditional-model AIC on the catdap output scale.
double response_marginal_aic(const ContingencyTable& table, int response_axis);

}  // namespace binassoc
