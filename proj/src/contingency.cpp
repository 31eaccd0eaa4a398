#include "binassoc/contingency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace binassoc {

void CategoricalSeries::validate() const {
  if (codes.empty()) throw std::invalid_argument("series '" + name + "' is empty");
  if (n_categories < 1)
    throw std::invalid_argument("series '" + name + "' has n_categories < 1");
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] < 0 || codes[i] >= n_categories)
      throw std::invalid_argument("series '" + name + "': code " +
                                  std::to_string(codes[i]) + " at row " +
                                  std::to_string(i) + " is outside [0, " +
                                  std::to_string(n_categories) + ")");
  }
}

ContingencyTable::ContingencyTable(std::vector<int> dims, std::vector<std::string> axis_names,
                                   std::size_t cell_cap)
    : dims_(std::move(dims)), names_(std::move(axis_names)) {
  if (dims_.empty()) throw std::invalid_argument("table needs at least one axis");
  std::size_t cells = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("axis category count must be >= 1");
    if (cells > cell_cap / static_cast<std::size_t>(d))
      throw std::invalid_argument("table exceeds the cell cap of " + std::to_string(cell_cap));
    cells *= static_cast<std::size_t>(d);
  }
  if (names_.empty()) names_.resize(dims_.size());
  if (names_.size() != dims_.size())
    throw std::invalid_argument("axis name count does not match axis count");
  strides_.resize(dims_.size());
  std::size_t stride = 1;
  for (std::size_t axis = dims_.size(); axis-- > 0;) {
    strides_[axis] = stride;
    stride *= static_cast<std::size_t>(dims_[axis]);
  }
  counts_.assign(cells, 0);
}

ContingencyTable::ContingencyTable(std::vector<int> dims, std::vector<std::int64_t> cells,
                                   std::vector<std::string> axis_names)
    : ContingencyTable(std::move(dims), std::move(axis_names)) {
  if (cells.size() != counts_.size())
    throw std::invalid_argument("cell vector length does not match the product of dims");
  for (std::int64_t c : cells) {
    if (c < 0) throw std::invalid_argument("negative cell count");
    total_ += c;
  }
  counts_ = std::move(cells);
}

std::size_t ContingencyTable::index_of(std::span<const int> codes) const {
  if (codes.size() != dims_.size())
    throw std::invalid_argument("code tuple arity does not match table");
  std::size_t idx = 0;
  for (std::size_t axis = 0; axis < dims_.size(); ++axis) {
    if (codes[axis] < 0 || codes[axis] >= dims_[axis])
      throw std::invalid_argument("code out of range on axis " + std::to_string(axis));
    idx += strides_[axis] * static_cast<std::size_t>(codes[axis]);
  }
  return idx;
}

std::int64_t ContingencyTable::cell(std::span<const int> codes) const {
  return counts_[index_of(codes)];
}

void ContingencyTable::increment(std::span<const int> codes, std::int64_t by) {
  if (by < 0) throw std::invalid_argument("negative increment");
  counts_[index_of(codes)] += by;
  total_ += by;
}

ContingencyTable ContingencyTable::marginal(std::span<const int> axes) const {
  if (axes.empty()) throw std::invalid_argument("marginal needs at least one axis");
  std::vector<int> out_dims;
  std::vector<std::string> out_names;
  std::vector<bool> seen(dims_.size(), false);
  for (int axis : axes) {
    if (axis < 0 || static_cast<std::size_t>(axis) >= dims_.size())
      throw std::invalid_argument("marginal axis out of range");
    if (seen[static_cast<std::size_t>(axis)])
      throw std::invalid_argument("marginal axes must be distinct");
    seen[static_cast<std::size_t>(axis)] = true;
    out_dims.push_back(dims_[static_cast<std::size_t>(axis)]);
    out_names.push_back(names_[static_cast<std::size_t>(axis)]);
  }
  ContingencyTable out(std::move(out_dims), std::move(out_names));
  std::vector<int> code(dims_.size(), 0);
  for (std::size_t idx = 0; idx < counts_.size(); ++idx) {
    if (counts_[idx] != 0) {
      std::size_t rest = idx;
      for (std::size_t axis = 0; axis < dims_.size(); ++axis) {
        code[axis] = static_cast<int>(rest / strides_[axis]);
        rest %= strides_[axis];
      }
      std::size_t out_idx = 0;
      for (std::size_t k = 0; k < axes.size(); ++k)
        out_idx += out.strides_[k] * static_cast<std::size_t>(code[static_cast<std::size_t>(axes[k])]);
      out.counts_[out_idx] += counts_[idx];
    }
  }
  out.total_ = total_;
  return out;
}

ContingencyTable build_table(std::span<const CategoricalSeries> series, std::size_t cell_cap) {
  if (series.empty()) throw std::invalid_argument("build_table: no series given");
  const std::size_t n = series.front().size();
  std::vector<int> dims;
  std::vector<std::string> names;
  for (const CategoricalSeries& s : series) {
    s.validate();
    if (s.size() != n)
      throw std::invalid_argument("build_table: series '" + s.name + "' has length " +
                                  std::to_string(s.size()) + ", expected " + std::to_string(n));
    dims.push_back(s.n_categories);
    names.push_back(s.name);
  }
  ContingencyTable table(std::move(dims), std::move(names), cell_cap);
  std::vector<int> code(series.size(), 0);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t axis = 0; axis < series.size(); ++axis) code[axis] = series[axis].codes[row];
    table.increment(code);
  }
  return table;
}

void ModelSpec::validate_for(const ContingencyTable& table) const {
  const int ndim = static_cast<int>(table.ndim());
  if (response_axis < 0 || response_axis >= ndim)
    throw std::invalid_argument("model response axis out of range");
  int prev = -1;
  for (int axis : predictor_axes) {
    if (axis < 0 || axis >= ndim) throw std::invalid_argument("model predictor axis out of range");
    if (axis == response_axis)
      throw std::invalid_argument("model predictor set contains the response axis");
    if (axis <= prev)
      throw std::invalid_argument("model predictor axes must be sorted and distinct");
    prev = axis;
  }
}

std::vector<ModelSpec> enumerate_models(int num_predictors, int response_axis) {
  if (num_predictors < 0) throw std::invalid_argument("num_predictors must be >= 0");
  if (response_axis < 0 || response_axis > num_predictors)
    throw std::invalid_argument("response axis out of range");
  std::vector<int> pool;
  for (int axis = 0; axis <= num_predictors; ++axis)
    if (axis != response_axis) pool.push_back(axis);

  std::vector<ModelSpec> models;
  models.reserve(std::size_t{1} << num_predictors);
  for (int size = 0; size <= num_predictors; ++size) {
    // combinations of `pool` of the given size, lexicographic
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
      ModelSpec spec;
      spec.response_axis = response_axis;
      for (int i : pick) spec.predictor_axes.push_back(pool[static_cast<std::size_t>(i)]);
      models.push_back(std::move(spec));
      if (size == 0) break;
      int k = size - 1;
      while (k >= 0 && pick[static_cast<std::size_t>(k)] == num_predictors - size + k) --k;
      if (k < 0) break;
      ++pick[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < size; ++j)
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return models;
}

std::vector<ModelScore> score_all_models(const ContingencyTable& table, int response_axis) {
  std::vector<ModelScore> scores;
  for (ModelSpec& spec : enumerate_models(static_cast<int>(table.ndim()) - 1, response_axis)) {
    const double aic = aic_conditional(table, spec);
    scores.push_back(ModelScore{std::move(spec), aic});
  }
  return scores;
}

namespace {

struct CollapsedView {
  ContingencyTable sub;            // axes: response first, then predictors
  std::size_t predictor_cells = 1; // product of predictor category counts
  std::vector<std::int64_t> response_marginal;
  std::vector<std::int64_t> predictor_marginal;
};

CollapsedView collapse(const ContingencyTable& table, const ModelSpec& spec) {
  std::vector<int> axes;
  axes.reserve(spec.predictor_axes.size() + 1);
  axes.push_back(spec.response_axis);
  axes.insert(axes.end(), spec.predictor_axes.begin(), spec.predictor_axes.end());
  CollapsedView view{table.marginal(axes), 1, {}, {}};
  for (std::size_t axis = 1; axis < view.sub.ndim(); ++axis)
    view.predictor_cells *= static_cast<std::size_t>(view.sub.dim(axis));
  view.response_marginal.assign(static_cast<std::size_t>(view.sub.dim(0)), 0);
  view.predictor_marginal.assign(view.predictor_cells, 0);
  const auto cells = view.sub.counts();
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    view.response_marginal[idx / view.predictor_cells] += cells[idx];
    view.predictor_marginal[idx % view.predictor_cells] += cells[idx];
  }
  return view;
}

}  // namespace

double conditional_log_ratio_sum(const ContingencyTable& table, const ModelSpec& spec) {
  spec.validate_for(table);
  if (table.total() < 1) throw std::invalid_argument("table is empty");
  if (spec.predictor_axes.empty()) return 0.0;
  const CollapsedView view = collapse(table, spec);
  const double n = static_cast<double>(view.sub.total());
  const auto cells = view.sub.counts();
  double sum = 0.0;
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const std::int64_t n_ij = cells[idx];
    if (n_ij > 0) {
      const double n_i = static_cast<double>(view.response_marginal[idx / view.predictor_cells]);
      const double n_j = static_cast<double>(view.predictor_marginal[idx % view.predictor_cells]);
      sum += static_cast<double>(n_ij) * std::log(n * static_cast<double>(n_ij) / (n_i * n_j));
    }
  }
  return sum;
}

double aic_conditional(const ContingencyTable& table, const ModelSpec& spec) {
  spec.validate_for(table);
  if (table.total() < 1) throw std::invalid_argument("table is empty");
  if (spec.predictor_axes.empty()) return 0.0;
  const double sum = conditional_log_ratio_sum(table, spec);
  double predictor_cells = 1.0;
  for (int axis : spec.predictor_axes) predictor_cells *= static_cast<double>(table.dim(static_cast<std::size_t>(axis)));
  const double penalty =
      2.0 * static_cast<double>(table.dim(static_cast<std::size_t>(spec.response_axis)) - 1) *
      (predictor_cells - 1.0);
  return -2.0 * sum + penalty;
}

double delta_aic_2x2(const ContingencyTable& table) {
  if (table.ndim() != 2 || table.dim(0) != 2 || table.dim(1) != 2)
    throw std::invalid_argument("delta_aic_2x2 requires a 2x2 table");
  return -aic_conditional(table, ModelSpec{0, {1}});
}

double response_marginal_aic(const ContingencyTable& table, int response_axis) {
  if (response_axis < 0 || static_cast<std::size_t>(response_axis) >= table.ndim())
    throw std::invalid_argument("response axis out of range");
  if (table.total() < 1) throw std::invalid_argument("table is empty");
  const int axis[] = {response_axis};
  const ContingencyTable m = table.marginal(axis);
  const double n = static_cast<double>(m.total());
  double loglik = 0.0;
  for (std::int64_t c : m.counts())
    if (c > 0) loglik += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
  return -2.0 * loglik + 2.0 * static_cast<double>(m.dim(0) - 1);
}

}  // namespace binassoc
