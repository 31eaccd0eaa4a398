#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "binassoc/dataset.hpp"
#include "binassoc/discretize.hpp"
#include "binassoc/rng.hpp"

// The repeated half-split protocol: each iteration draws one random split of
// the rows, learns per-variable thresholds on the training half, scores every
// predictor-subset model on the held-out half, and the per-iteration results
// are averaged over all iterations.

namespace binassoc {

// Threshold search settings for one continuous column.
struct ContinuousSearch {
  std::string column;
  double lower = 0.0;
  double upper = 0.0;
  int grid_size = 100;
};

struct AnalysisConfig {
  std::string response;
  std::vector<std::string> predictors;
  std::vector<ContinuousSearch> searches;  // one entry per continuous predictor
  int iterations = 1000;
  std::uint64_t master_seed = 0;

  const ContinuousSearch* find_search(const std::string& column) const;
  // Throws std::invalid_argument when the config does not fit the dataset.
  void validate(const Dataset& dataset) const;
};

struct IterationResult {
  int iteration = 0;
  // One entry per continuous predictor, in predictor order (training half).
  std::vector<ThresholdResult> thresholds;
  // One entry per enumerate_models() spec, null-relative scale (held-out half).
  std::vector<double> model_aics;
  // Absolute AIC of the no-predictor model on the held-out half.
  double response_marginal_aic = 0.0;
};

struct ThresholdSummary {
  std::string column;
  double lower = 0.0;
  double upper = 0.0;
  int grid_size = 100;
  double mean_threshold = 0.0;
};

struct AggregateResult {
  std::string response;
  std::vector<std::string> predictor_names;   // axis order 1..m-1
  std::vector<ModelSpec> models;              // enumerate_models order
  std::vector<double> mean_model_aics;        // null-relative; empty model is 0
  double mean_response_marginal_aic = 0.0;    // absolute null baseline
  std::vector<ThresholdSummary> thresholds;   // continuous predictors only
  int iterations = 0;
  std::size_t best_index = 0;  // minimal mean AIC; ties favour fewer predictors,
                               // then enumeration order

  const ModelSpec& best_model() const { return models[best_index]; }
  std::vector<std::string> model_predictor_names(std::size_t model_index) const;
};

// Random partition of {0..n-1} into |G1| = floor(n/2) and its complement,
// drawn as a uniformly random permutation. Requires n >= 4.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> split_half(
    std::size_t n, rng::Engine& eng);

// One protocol iteration on a caller-supplied split. Thresholds come from
// `training` rows only; model AICs from `holdout` rows only.
IterationResult run_iteration_on_split(const Dataset& dataset, const AnalysisConfig& config,
                                       std::span<const std::uint32_t> training,
                                       std::span<const std::uint32_t> holdout);

// Draws one split (shared by every continuous variable) and runs the
// iteration on it.
IterationResult run_iteration(const Dataset& dataset, const AnalysisConfig& config,
                              rng::Engine& eng);

// Runs config.iterations iterations on independent RNG substreams derived
// from (master_seed, iteration index) and averages arithmetically. Iterations
// may execute on `threads` workers; the reduction runs in iteration order, so
// the result is bitwise independent of the thread count.
AggregateResult run_analysis(const Dataset& dataset, const AnalysisConfig& config,
                             int threads = 1);

// Applies each averaged threshold to every row of its column; the remaining
// columns pass through unchanged.
Dataset final_binarize(const Dataset& dataset, const AggregateResult& aggregate);

// Full-data scores after final binarization: the same model list evaluated on
// a table over all rows (no splitting), reported alongside the iteration
// averages so the two scales stay distinguishable.
struct FullDataResult {
  std::vector<double> model_aics;  // null-relative, enumerate_models order
  double response_marginal_aic = 0.0;
  std::size_t best_index = 0;
};

FullDataResult full_data_scores(const Dataset& dataset, const AggregateResult& aggregate);

// Report rows grouped by predictor-subset size, enumeration order within a
// group, minimum flagged. Includes the empty model.
struct ModelRankRow {
  std::size_t model_index = 0;
  int n_predictors = 0;
  std::vector<std::string> predictors;
  double mean_aic = 0.0;  // null-relative
  bool best = false;
};

std::vector<ModelRankRow> rank_models(const AggregateResult& aggregate);

}  // namespace binassoc
