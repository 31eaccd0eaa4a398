#include "binassoc/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "binassoc/stats.hpp"

namespace binassoc {

namespace {

std::vector<double> gather(std::span<const double> values, std::span<const std::uint32_t> rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::uint32_t r : rows) out.push_back(values[r]);
  return out;
}

CategoricalSeries gather(const CategoricalSeries& series, std::span<const std::uint32_t> rows) {
  CategoricalSeries out;
  out.name = series.name;
  out.n_categories = series.n_categories;
  out.codes.reserve(rows.size());
  for (std::uint32_t r : rows) out.codes.push_back(series.codes[r]);
  return out;
}

}  // namespace

const ContinuousSearch* AnalysisConfig::find_search(const std::string& column) const {
  for (const ContinuousSearch& s : searches)
    if (s.column == column) return &s;
  return nullptr;
}

void AnalysisConfig::validate(const Dataset& dataset) const {
  dataset.validate();
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (dataset.n_rows() < 4)
    throw std::invalid_argument("need at least 4 rows to form half-splits");
  if (predictors.empty()) throw std::invalid_argument("no predictors configured");

  const Column& resp = dataset.column(response);
  if (resp.is_continuous())
    throw std::invalid_argument("response column '" + response +
                                "' is continuous; binarize it first");
  bool any_continuous = false;
  for (const std::string& name : predictors) {
    if (name == response)
      throw std::invalid_argument("response '" + response + "' also appears as a predictor");
    if (std::count(predictors.begin(), predictors.end(), name) != 1)
      throw std::invalid_argument("predictor '" + name + "' is listed twice");
    const Column& col = dataset.column(name);
    if (col.is_continuous()) {
      any_continuous = true;
      const ContinuousSearch* search = find_search(name);
      if (search == nullptr)
        throw std::invalid_argument("continuous predictor '" + name +
                                    "' has no threshold search range");
      if (!(search->lower < search->upper))
        throw std::invalid_argument("search range for '" + name + "' needs lower < upper");
      if (search->grid_size < 1)
        throw std::invalid_argument("search grid for '" + name + "' needs at least one point");
    }
  }
  if (any_continuous && resp.cats.n_categories != 2)
    throw std::invalid_argument("threshold search needs a binary response; '" + response +
                                "' has " + std::to_string(resp.cats.n_categories) +
                                " categories");
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> split_half(std::size_t n,
                                                                             rng::Engine& eng) {
  if (n < 4) throw std::invalid_argument("split_half needs n >= 4");
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  rng::shuffle(perm, eng);
  const std::size_t m = n / 2;
  std::vector<std::uint32_t> training(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<std::uint32_t> holdout(perm.begin() + static_cast<std::ptrdiff_t>(m), perm.end());
  return {std::move(training), std::move(holdout)};
}

IterationResult run_iteration_on_split(const Dataset& dataset, const AnalysisConfig& config,
                                       std::span<const std::uint32_t> training,
                                       std::span<const std::uint32_t> holdout) {
  const Column& resp = dataset.column(config.response);

  IterationResult result;

  // Step (i): thresholds from the training half only.
  const CategoricalSeries resp_training = gather(resp.cats, training);
  std::vector<const ContinuousSearch*> searches;
  for (const std::string& name : config.predictors) {
    const Column& col = dataset.column(name);
    if (col.is_continuous()) {
      const ContinuousSearch* search = config.find_search(name);
      const ThresholdGrid grid = make_grid(search->lower, search->upper, search->grid_size);
      result.thresholds.push_back(
          best_threshold(resp_training, gather(col.values, training), grid));
      searches.push_back(search);
    }
  }

  // Step (ii): binarize the held-out half with the learned thresholds and
  // score every predictor subset there.
  std::vector<CategoricalSeries> series;
  series.reserve(config.predictors.size() + 1);
  series.push_back(gather(resp.cats, holdout));
  std::size_t next_threshold = 0;
  for (const std::string& name : config.predictors) {
    const Column& col = dataset.column(name);
    if (col.is_continuous()) {
      series.push_back(binarize(gather(col.values, holdout),
                                result.thresholds[next_threshold++].threshold, name));
    } else {
      series.push_back(gather(col.cats, holdout));
    }
  }
  const ContingencyTable table = build_table(series);
  for (const ModelScore& score : score_all_models(table, 0))
    result.model_aics.push_back(score.aic);
  result.response_marginal_aic = response_marginal_aic(table, 0);
  return result;
}

IterationResult run_iteration(const Dataset& dataset, const AnalysisConfig& config,
                              rng::Engine& eng) {
  config.validate(dataset);
  // One split per iteration, reused by every continuous variable.
  const auto [training, holdout] = split_half(dataset.n_rows(), eng);
  return run_iteration_on_split(dataset, config, training, holdout);
}

AggregateResult run_analysis(const Dataset& dataset, const AnalysisConfig& config, int threads) {
  config.validate(dataset);
  if (threads < 1) threads = 1;
  const int iterations = config.iterations;

  std::vector<IterationResult> results(static_cast<std::size_t>(iterations));
  auto run_range = [&](int first, int last) {
    for (int i = first; i < last; ++i) {
      rng::Engine eng = rng::substream(config.master_seed, static_cast<std::uint64_t>(i));
      const auto [training, holdout] = split_half(dataset.n_rows(), eng);
      IterationResult r = run_iteration_on_split(dataset, config, training, holdout);
      r.iteration = i;
      results[static_cast<std::size_t>(i)] = std::move(r);
    }
  };

  if (threads == 1 || iterations == 1) {
    run_range(0, iterations);
  } else {
    const int n_workers = std::min(threads, iterations);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    const int chunk = (iterations + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
      const int first = w * chunk;
      const int last = std::min(iterations, first + chunk);
      if (first < last) pool.emplace_back(run_range, first, last);
    }
    for (std::thread& t : pool) t.join();
  }

  // Deterministic reduction in iteration order.
  AggregateResult agg;
  agg.response = config.response;
  agg.predictor_names = config.predictors;
  agg.models = enumerate_models(static_cast<int>(config.predictors.size()), 0);
  agg.iterations = iterations;
  agg.mean_model_aics.assign(agg.models.size(), 0.0);
  std::vector<double> threshold_sums(results.front().thresholds.size(), 0.0);
  double null_sum = 0.0;
  for (const IterationResult& r : results) {
    for (std::size_t m = 0; m < agg.mean_model_aics.size(); ++m)
      agg.mean_model_aics[m] += r.model_aics[m];
    for (std::size_t t = 0; t < threshold_sums.size(); ++t)
      threshold_sums[t] += r.thresholds[t].threshold;
    null_sum += r.response_marginal_aic;
  }
  const double scale = 1.0 / static_cast<double>(iterations);
  for (double& v : agg.mean_model_aics) v *= scale;
  agg.mean_model_aics[0] = 0.0;  // exact identity for the empty model
  agg.mean_response_marginal_aic = null_sum * scale;

  std::size_t next_threshold = 0;
  for (const std::string& name : config.predictors) {
    if (dataset.column(name).is_continuous()) {
      const ContinuousSearch* search = config.find_search(name);
      agg.thresholds.push_back(ThresholdSummary{name, search->lower, search->upper,
                                                search->grid_size,
                                                threshold_sums[next_threshold] * scale});
      ++next_threshold;
    }
  }

  agg.best_index = 0;
  for (std::size_t m = 1; m < agg.mean_model_aics.size(); ++m)
    if (agg.mean_model_aics[m] < agg.mean_model_aics[agg.best_index]) agg.best_index = m;
  return agg;
}

std::vector<std::string> AggregateResult::model_predictor_names(std::size_t model_index) const {
  std::vector<std::string> names;
  for (int axis : models[model_index].predictor_axes)
    names.push_back(predictor_names[static_cast<std::size_t>(axis) - 1]);
  return names;
}

Dataset final_binarize(const Dataset& dataset, const AggregateResult& aggregate) {
  dataset.validate();
  Dataset out;
  out.columns.reserve(dataset.columns.size());
  for (const Column& col : dataset.columns) {
    const ThresholdSummary* summary = nullptr;
    for (const ThresholdSummary& t : aggregate.thresholds)
      if (t.column == col.name) summary = &t;
    if (col.is_continuous() && summary != nullptr) {
      out.columns.push_back(Column::categorical(
          col.name, binarize(col.values, summary->mean_threshold, col.name), ColumnKind::binary));
    } else {
      out.columns.push_back(col);
    }
  }
  // Every continuous column the analysis used must have received a threshold.
  for (const std::string& name : aggregate.predictor_names) {
    const Column& col = out.column(name);
    if (col.is_continuous())
      throw std::invalid_argument("no averaged threshold available for continuous column '" +
                                  name + "'");
  }
  return out;
}

FullDataResult full_data_scores(const Dataset& dataset, const AggregateResult& aggregate) {
  const Dataset binarized = final_binarize(dataset, aggregate);
  std::vector<CategoricalSeries> series;
  series.reserve(aggregate.predictor_names.size() + 1);
  series.push_back(binarized.column(aggregate.response).cats);
  series.back().name = aggregate.response;
  for (const std::string& name : aggregate.predictor_names) {
    series.push_back(binarized.column(name).cats);
    series.back().name = name;
  }
  const ContingencyTable table = build_table(series);
  FullDataResult full;
  full.model_aics.reserve(aggregate.models.size());
  for (const ModelScore& score : score_all_models(table, 0))
    full.model_aics.push_back(score.aic);
  full.response_marginal_aic = response_marginal_aic(table, 0);
  full.best_index = 0;
  for (std::size_t m = 1; m < full.model_aics.size(); ++m)
    if (full.model_aics[m] < full.model_aics[full.best_index]) full.best_index = m;
  return full;
}

std::vector<ModelRankRow> rank_models(const AggregateResult& aggregate) {
  std::vector<ModelRankRow> rows;
  rows.reserve(aggregate.models.size());
  for (std::size_t m = 0; m < aggregate.models.size(); ++m) {
    ModelRankRow row;
    row.model_index = m;
    row.n_predictors = static_cast<int>(aggregate.models[m].predictor_axes.size());
    row.predictors = aggregate.model_predictor_names(m);
    row.mean_aic = aggregate.mean_model_aics[m];
    row.best = (m == aggregate.best_index);
    rows.push_back(std::move(row));
  }
  // enumerate_models order is already (size, then lexicographic)
  return rows;
}

}  // namespace binassoc
