// Command line front end: dataset ingestion, the half-split threshold/model
// analysis, the synthetic three-case study, and report/diagram emission.
//
// Exit codes: 0 success, 1 input or validation error, 2 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "binassoc/csv.hpp"
#include "binassoc/datagen.hpp"
#include "binassoc/dot.hpp"
#include "binassoc/pipeline.hpp"
#include "binassoc/report.hpp"
#include "binassoc/version.hpp"

namespace {

using binassoc::report::json;

struct RunConfig {
  std::vector<binassoc::ColumnSchema> columns;
  std::vector<std::string> responses;
  std::map<std::string, std::vector<std::string>> predictors;  // per response
  int iterations = 1000;
  std::uint64_t seed = binassoc::kDefaultSeed;
  int grid_size = 100;
  double aic_margin = 2.0;
};

binassoc::ColumnKind parse_kind(const std::string& kind) {
  if (kind == "continuous") return binassoc::ColumnKind::continuous;
  if (kind == "binary") return binassoc::ColumnKind::binary;
  if (kind == "categorical") return binassoc::ColumnKind::categorical;
  throw std::runtime_error("unknown column kind '" + kind + "'");
}

RunConfig parse_config_json(const json& j);

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  try {
    json j;
    in >> j;
    return parse_config_json(j);
  } catch (const json::exception& e) {
    throw std::runtime_error("config '" + path + "': " + e.what());
  }
}

RunConfig parse_config_json(const json& j) {
  RunConfig cfg;
  if (!j.contains("columns") || !j["columns"].is_array() || j["columns"].empty())
    throw std::runtime_error("config needs a non-empty 'columns' array");
  for (const auto& jc : j["columns"]) {
    binassoc::ColumnSchema schema;
    schema.name = jc.at("name").get<std::string>();
    schema.kind = parse_kind(jc.at("kind").get<std::string>());
    if (jc.contains("log_transform")) schema.log_transform = jc["log_transform"].get<bool>();
    if (jc.contains("zero_epsilon")) schema.zero_epsilon = jc["zero_epsilon"].get<double>();
    if (jc.contains("range")) {
      if (!jc["range"].is_array() || jc["range"].size() != 2)
        throw std::runtime_error("column '" + schema.name + "': range must be [lower, upper]");
      schema.range = std::make_pair(jc["range"][0].get<double>(), jc["range"][1].get<double>());
    }
    if (jc.contains("grid_size")) schema.grid_size = jc["grid_size"].get<int>();
    cfg.columns.push_back(std::move(schema));
  }
  if (j.contains("responses"))
    for (const auto& r : j["responses"]) cfg.responses.push_back(r.get<std::string>());
  if (j.contains("predictors"))
    for (const auto& [response, preds] : j["predictors"].items()) {
      std::vector<std::string> names;
      for (const auto& p : preds) names.push_back(p.get<std::string>());
      cfg.predictors[response] = std::move(names);
    }
  if (j.contains("iterations")) cfg.iterations = j["iterations"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("grid_size")) cfg.grid_size = j["grid_size"].get<int>();
  if (j.contains("aic_margin")) cfg.aic_margin = j["aic_margin"].get<double>();
  return cfg;
}

const binassoc::ColumnSchema& schema_for(const RunConfig& cfg, const std::string& name) {
  for (const auto& s : cfg.columns)
    if (s.name == name) return s;
  throw std::runtime_error("no schema for column '" + name + "'");
}

struct LoadedData {
  binassoc::Dataset dataset;
  std::map<std::string, double> epsilons;  // log-transform replacements actually used
};

LoadedData load_and_transform(const std::string& path, const RunConfig& cfg) {
  LoadedData loaded;
  loaded.dataset = binassoc::load_csv(path, cfg.columns);
  for (const auto& schema : cfg.columns) {
    if (schema.kind == binassoc::ColumnKind::continuous && schema.log_transform) {
      for (binassoc::Column& col : loaded.dataset.columns) {
        if (col.name == schema.name) {
          binassoc::LogTransformResult r = binassoc::log_transform(col, schema.zero_epsilon);
          col = std::move(r.column);
          loaded.epsilons[schema.name] = r.epsilon;
        }
      }
    }
  }
  return loaded;
}

std::vector<std::string> predictors_for(const RunConfig& cfg, const std::string& response) {
  const auto it = cfg.predictors.find(response);
  if (it != cfg.predictors.end()) return it->second;
  std::vector<std::string> names;
  for (const auto& schema : cfg.columns)
    if (schema.name != response) names.push_back(schema.name);
  return names;
}

binassoc::AnalysisConfig make_analysis_config(const RunConfig& cfg,
                                              const binassoc::Dataset& dataset,
                                              const std::string& response) {
  binassoc::AnalysisConfig ac;
  ac.response = response;
  ac.predictors = predictors_for(cfg, response);
  ac.iterations = cfg.iterations;
  ac.master_seed = cfg.seed;
  for (const std::string& name : ac.predictors) {
    if (dataset.column(name).is_continuous()) {
      const binassoc::ColumnSchema& schema = schema_for(cfg, name);
      if (!schema.range)
        throw std::runtime_error("continuous predictor '" + name +
                                 "' needs a threshold search range in the config");
      ac.searches.push_back({name, schema.range->first, schema.range->second,
                             schema.grid_size.value_or(cfg.grid_size)});
    }
  }
  return ac;
}

json manifest_columns(const RunConfig& cfg, const LoadedData& loaded) {
  json cols = json::array();
  for (const auto& schema : cfg.columns) {
    json jc;
    jc["name"] = schema.name;
    jc["kind"] = binassoc::to_string(schema.kind);
    if (schema.kind == binassoc::ColumnKind::continuous) {
      jc["log_transform"] = schema.log_transform;
      if (schema.log_transform) jc["zero_epsilon"] = loaded.epsilons.at(schema.name);
      if (schema.range) jc["range"] = json::array({schema.range->first, schema.range->second});
      if (schema.grid_size) jc["grid_size"] = *schema.grid_size;
    }
    cols.push_back(std::move(jc));
  }
  return cols;
}

struct OutputPaths {
  std::string report;
  std::string json_path;
  std::string dot;
  std::string manifest = "manifest.json";
};

void write_outputs(const json& document, const std::string& text, const json& manifest,
                   const OutputPaths& paths) {
  if (paths.report.empty())
    std::cout << text;
  else
    binassoc::report::write_text_file(paths.report, text);
  if (!paths.json_path.empty())
    binassoc::report::write_text_file(paths.json_path, document.dump(2) + "\n");
  binassoc::report::write_text_file(paths.manifest, manifest.dump(2) + "\n");
}

// Runs the analyses for every configured response, reusing averaged
// thresholds to binarize a continuous column whenever it becomes the
// response later in the list.
std::vector<binassoc::report::AnalysisOutcome> run_analyses(const RunConfig& cfg,
                                                            const binassoc::Dataset& dataset,
                                                            int threads,
                                                            bool with_full_data) {
  std::vector<binassoc::report::AnalysisOutcome> outcomes;
  std::map<std::string, double> learned_thresholds;
  for (const std::string& response : cfg.responses) {
    binassoc::Dataset working = dataset;
    if (dataset.column(response).is_continuous()) {
      const auto it = learned_thresholds.find(response);
      if (it == learned_thresholds.end())
        throw std::runtime_error(
            "continuous response '" + response +
            "' has no learned threshold yet; list a response that uses it as a "
            "predictor first");
      for (binassoc::Column& col : working.columns)
        if (col.name == response)
          col = binassoc::Column::categorical(
              response, binassoc::binarize(col.values, it->second, response),
              binassoc::ColumnKind::binary);
    }
    const binassoc::AnalysisConfig ac = make_analysis_config(cfg, working, response);
    binassoc::report::AnalysisOutcome outcome;
    outcome.aggregate = binassoc::run_analysis(working, ac, threads);
    if (with_full_data) outcome.full_data = binassoc::full_data_scores(working, outcome.aggregate);
    outcome.n_rows = working.n_rows();
    for (const binassoc::ThresholdSummary& t : outcome.aggregate.thresholds)
      learned_thresholds.emplace(t.column, t.mean_threshold);
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

namespace {

int run_cli(int argc, char** argv) {
  CLI::App app{"conditional association analysis for mixed continuous/binary data"};
  app.set_version_flag("--version", std::string(binassoc::kToolName) + " " + binassoc::kVersion);
  app.require_subcommand(1);

  std::string data_path;
  std::string config_path;
  OutputPaths paths;
  std::uint64_t seed_flag = 0;
  int iterations_flag = 0;
  int grid_flag = 0;
  int threads = default_threads();
  double aic_margin_flag = -1.0;
  int max_bins = 30;
  bool histogram = false;

  auto add_common = [&](CLI::App* sub, bool needs_data) {
    if (needs_data) {
      sub->add_option("--data", data_path, "input CSV file")->required();
      sub->add_option("--config", config_path, "JSON column/analysis config")->required();
    }
    sub->add_option("--seed", seed_flag, "master seed (overrides config)");
    sub->add_option("--iterations", iterations_flag, "half-split iterations (overrides config)");
    sub->add_option("--grid-size", grid_flag, "threshold grid points (overrides config)");
    sub->add_option("--threads", threads, "worker threads (does not change results)");
    sub->add_option("--report", paths.report, "write the text report here instead of stdout");
    sub->add_option("--json", paths.json_path, "write the JSON result document here");
    sub->add_option("--manifest", paths.manifest, "manifest path (default manifest.json)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "threshold search + model ranking on a CSV");
  add_common(analyze, true);
  analyze->add_option("--dot", paths.dot, "write an association diagram (DOT) here");
  analyze->add_option("--aic-margin", aic_margin_flag,
                      "dashed-edge margin above the minimum AIC (default 2.0)");

  CLI::App* simulate = app.add_subcommand("simulate", "run the built-in three-case study");
  add_common(simulate, false);

  CLI::App* discretize = app.add_subcommand("discretize", "averaged thresholds only");
  add_common(discretize, true);
  discretize->add_flag("--histogram", histogram,
                       "also fit AIC-selected equal-width histograms to continuous columns");
  discretize->add_option("--max-bins", max_bins, "histogram section count ceiling (default 30)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    const bool seed_given = active->count("--seed") > 0;
    const bool iterations_given = active->count("--iterations") > 0;
    const bool grid_given = active->count("--grid-size") > 0;

    if (simulate->parsed()) {
      const std::uint64_t seed = seed_given ? seed_flag : binassoc::kDefaultSeed;
      const int iterations = iterations_given ? iterations_flag : 1000;
      const int grid_size = grid_given ? grid_flag : 100;
      const binassoc::SimulationReport result =
          binassoc::run_simulation_study(seed, iterations, grid_size, threads);
      const json document = binassoc::report::simulation_document(result);
      json manifest = binassoc::report::manifest_skeleton("simulate");
      manifest["seed"] = seed;
      manifest["iterations"] = iterations;
      manifest["grid_size"] = grid_size;
      manifest["rows"] = binassoc::kSimulationRows;
      write_outputs(document, binassoc::report::render_simulation_text(document), manifest, paths);
      return 0;
    }

    RunConfig cfg = parse_config(config_path);
    if (seed_given) cfg.seed = seed_flag;
    if (iterations_given) cfg.iterations = iterations_flag;
    if (grid_given) cfg.grid_size = grid_flag;
    if (aic_margin_flag >= 0.0) cfg.aic_margin = aic_margin_flag;

    const LoadedData loaded = load_and_transform(data_path, cfg);

    json manifest = binassoc::report::manifest_skeleton(analyze->parsed() ? "analyze"
                                                                          : "discretize");
    manifest["input"] = data_path;
    manifest["seed"] = cfg.seed;
    manifest["iterations"] = cfg.iterations;
    manifest["grid_size"] = cfg.grid_size;
    manifest["columns"] = manifest_columns(cfg, loaded);
    manifest["responses"] = cfg.responses;
    json preds;
    for (const std::string& response : cfg.responses)
      preds[response] = predictors_for(cfg, response);
    manifest["predictors"] = std::move(preds);

    if (analyze->parsed()) {
      if (cfg.responses.empty())
        throw std::runtime_error("config needs a non-empty 'responses' list");
      manifest["aic_margin"] = cfg.aic_margin;
      const auto outcomes = run_analyses(cfg, loaded.dataset, threads, true);
      const json document = binassoc::report::analysis_document(outcomes);
      if (!paths.dot.empty()) {
        std::vector<binassoc::AggregateResult> aggregates;
        for (const auto& o : outcomes) aggregates.push_back(o.aggregate);
        binassoc::report::write_text_file(paths.dot,
                                          binassoc::emit_dot(aggregates, cfg.aic_margin));
      }
      write_outputs(document, binassoc::report::render_analysis_text(document), manifest, paths);
      return 0;
    }

    // discretize
    if (cfg.responses.empty() && !histogram)
      throw std::runtime_error("config needs 'responses' (or pass --histogram)");
    std::vector<binassoc::report::AnalysisOutcome> outcomes;
    if (!cfg.responses.empty()) outcomes = run_analyses(cfg, loaded.dataset, threads, false);
    json document = binassoc::report::discretize_document(outcomes);
    std::string text = binassoc::report::render_discretize_text(document);
    if (histogram) {
      manifest["histogram_max_bins"] = max_bins;
      json fits = json::array();
      std::string histext = "\nhistogram fits (equal-width, AIC-selected section count)\n";
      for (const binassoc::Column& col : loaded.dataset.columns) {
        if (!col.is_continuous()) continue;
        const binassoc::HistogramFit fit = binassoc::best_equal_width_histogram(col.values, max_bins);
        json jf;
        jf["column"] = col.name;
        jf["sections"] = fit.sections;
        jf["aic"] = fit.aic;
        jf["edges"] = fit.edges;
        fits.push_back(std::move(jf));
        histext += "  " + col.name + "  " + std::to_string(fit.sections) + " sections, AIC " +
                   binassoc::report::fixed(fit.aic, 2) + "\n";
      }
      document["histograms"] = std::move(fits);
      text += histext;
    }
    write_outputs(document, text, manifest, paths);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) noexcept {
  try {
    return run_cli(argc, argv);
  } catch (...) {
    return 2;
  }
}
