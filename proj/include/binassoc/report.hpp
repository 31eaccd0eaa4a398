#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "binassoc/datagen.hpp"
#include "binassoc/pipeline.hpp"

// Report documents. The machine-readable JSON document is the single source
// of truth: the plain-text tables are rendered from it, so re-rendering a
// parsed document reproduces the text byte-for-byte.
//
// Model AICs appear on two scales: "aic" is the absolute conditional-model
// AIC (catdap output scale, null baseline included) and "aic_vs_null" is the
// null-relative value where 0 means no predictor and negative means
// dependence. The text tables print the absolute scale and omit the empty
// model row; the JSON document keeps both scales and includes the empty
// model.

namespace binassoc::report {

using json = nlohmann::ordered_json;

struct AnalysisOutcome {
  AggregateResult aggregate;
  FullDataResult full_data;
  std::size_t n_rows = 0;
};

json analysis_document(std::span<const AnalysisOutcome> analyses);
std::string render_analysis_text(const json& document);

json simulation_document(const SimulationReport& report);
std::string render_simulation_text(const json& document);

// Thresholds-only view of a set of analyses.
json discretize_document(std::span<const AnalysisOutcome> analyses);
std::string render_discretize_text(const json& document);

// Manifest skeleton with tool identity and the numeric conventions every run
// shares; callers append command-specific fields (seed, ranges, epsilons,
// iterations, inputs). One manifest per CLI run, sufficient to reproduce the
// outputs bitwise.
json manifest_skeleton(const std::string& command);

// Fixed-precision numeric rendering used by every text table.
std::string fixed(double value, int decimals);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace binassoc::report
