#include "binassoc/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "binassoc/version.hpp"

namespace binassoc::report {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

json model_rows(const AggregateResult& agg, const FullDataResult& full) {
  json rows = json::array();
  for (std::size_t m = 0; m < agg.models.size(); ++m) {
    json row;
    row["predictors"] = agg.model_predictor_names(m);
    row["size"] = agg.models[m].predictor_axes.size();
    row["aic"] = agg.mean_model_aics[m] + agg.mean_response_marginal_aic;
    row["aic_vs_null"] = agg.mean_model_aics[m];
    row["full_data_aic"] = full.model_aics[m] + full.response_marginal_aic;
    row["full_data_aic_vs_null"] = full.model_aics[m];
    row["best"] = (m == agg.best_index);
    row["best_full_data"] = (m == full.best_index);
    rows.push_back(std::move(row));
  }
  return rows;
}

json threshold_rows(const AggregateResult& agg) {
  json rows = json::array();
  for (const ThresholdSummary& t : agg.thresholds) {
    json row;
    row["column"] = t.column;
    row["mean_threshold"] = t.mean_threshold;
    row["search_lower"] = t.lower;
    row["search_upper"] = t.upper;
    row["grid_size"] = t.grid_size;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> names_of(const json& any) {
  std::vector<std::string> out;
  for (const auto& v : any) out.push_back(v.get<std::string>());
  return out;
}

// One AIC table: rows grouped by subset size, empty model omitted, minimum
// flagged. `aic_key` selects the scale.
void render_model_table(std::ostringstream& out, const json& models, const char* aic_key,
                        const char* delta_key, const char* best_key) {
  std::size_t width = 0;
  for (const auto& row : models)
    if (row["size"].get<int>() > 0) width = std::max(width, join(names_of(row["predictors"])).size());

  int current_size = 0;
  for (const auto& row : models) {
    const int size = row["size"].get<int>();
    if (size == 0) continue;
    std::string group = "      ";
    if (size != current_size) {
      group = std::to_string(size) + "var";
      group.resize(6, ' ');
      current_size = size;
    }
    std::string name = join(names_of(row["predictors"]));
    name.resize(width, ' ');
    out << "    " << group << name << "  " << fixed(row[aic_key].get<double>(), 2) << "  "
        << fixed(row[delta_key].get<double>(), 2);
    if (row[best_key].get<bool>()) out << "  <- best";
    out << "\n";
  }
}

void render_one_analysis(std::ostringstream& out, const json& a) {
  out << "response: " << a["response"].get<std::string>() << "  (rows "
      << a["rows"].get<std::size_t>() << ", iterations " << a["iterations"].get<int>() << ")\n";
  if (!a["thresholds"].empty()) {
    out << "  averaged thresholds\n";
    for (const auto& t : a["thresholds"]) {
      out << "    " << t["column"].get<std::string>() << "  "
          << fixed(t["mean_threshold"].get<double>(), 4) << "  search ["
          << fixed(t["search_lower"].get<double>(), 4) << ", "
          << fixed(t["search_upper"].get<double>(), 4) << "], "
          << t["grid_size"].get<int>() << " grid points\n";
    }
  }
  out << "  model AIC, averaged over iterations  (null AIC "
      << fixed(a["null_aic"]["averaged"].get<double>(), 2) << ")\n";
  render_model_table(out, a["models"], "aic", "aic_vs_null", "best");
  out << "  model AIC, full data with final thresholds  (null AIC "
      << fixed(a["null_aic"]["full_data"].get<double>(), 2) << ")\n";
  render_model_table(out, a["models"], "full_data_aic", "full_data_aic_vs_null",
                     "best_full_data");
  out << "  best model: "
      << (a["best_model"]["predictors"].empty()
              ? std::string("(none)")
              : join(names_of(a["best_model"]["predictors"])))
      << "\n";
}

}  // namespace

json analysis_document(std::span<const AnalysisOutcome> analyses) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["kind"] = "analysis";
  doc["analyses"] = json::array();
  for (const AnalysisOutcome& outcome : analyses) {
    const AggregateResult& agg = outcome.aggregate;
    json a;
    a["response"] = agg.response;
    a["rows"] = outcome.n_rows;
    a["iterations"] = agg.iterations;
    a["predictors"] = agg.predictor_names;
    a["thresholds"] = threshold_rows(agg);
    a["null_aic"] = {{"averaged", agg.mean_response_marginal_aic},
                     {"full_data", outcome.full_data.response_marginal_aic}};
    a["models"] = model_rows(agg, outcome.full_data);
    a["best_model"] = {{"predictors", agg.model_predictor_names(agg.best_index)},
                       {"aic", agg.mean_model_aics[agg.best_index] +
                                   agg.mean_response_marginal_aic},
                       {"aic_vs_null", agg.mean_model_aics[agg.best_index]}};
    a["best_model_full_data"] = {
        {"predictors", agg.model_predictor_names(outcome.full_data.best_index)},
        {"aic", outcome.full_data.model_aics[outcome.full_data.best_index] +
                    outcome.full_data.response_marginal_aic},
        {"aic_vs_null", outcome.full_data.model_aics[outcome.full_data.best_index]}};
    doc["analyses"].push_back(std::move(a));
  }
  return doc;
}

std::string render_analysis_text(const json& document) {
  std::ostringstream out;
  out << document["tool"].get<std::string>() << " " << document["version"].get<std::string>()
      << " analysis report\n";
  for (const auto& a : document["analyses"]) {
    out << "\n";
    render_one_analysis(out, a);
  }
  return out.str();
}

json simulation_document(const SimulationReport& report) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["kind"] = "simulation";
  doc["seed"] = report.master_seed;
  doc["iterations"] = report.iterations;
  doc["grid_size"] = report.grid_size;
  doc["rows"] = kSimulationRows;
  doc["cases"] = json::array();
  for (const SimulationCaseResult& c : report.cases) {
    const AggregateResult& agg = c.aggregate;
    json jc;
    jc["case"] = c.case_id;
    json thresholds;
    for (const ThresholdSummary& t : agg.thresholds) thresholds[t.column] = t.mean_threshold;
    jc["thresholds"] = std::move(thresholds);
    json search;
    for (const ThresholdSummary& t : agg.thresholds)
      search[t.column] = json::array({t.lower, t.upper});
    jc["search"] = std::move(search);
    jc["null_aic"] = agg.mean_response_marginal_aic;
    json models = json::array();
    for (std::size_t m = 0; m < agg.models.size(); ++m) {
      const std::vector<std::string> preds = agg.model_predictor_names(m);
      std::string label = "null";
      if (preds.size() == 2) label = "Model 1";
      else if (preds == std::vector<std::string>{"simb"}) label = "Model 2";
      else if (preds == std::vector<std::string>{"simc"}) label = "Model 3";
      json row;
      row["label"] = label;
      row["predictors"] = preds;
      row["aic"] = agg.mean_model_aics[m] + agg.mean_response_marginal_aic;
      row["aic_vs_null"] = agg.mean_model_aics[m];
      row["best"] = (m == agg.best_index);
      models.push_back(std::move(row));
    }
    jc["models"] = std::move(models);
    json best;
    for (const auto& row : jc["models"])
      if (row["best"].get<bool>()) best = row["label"];
    jc["best"] = std::move(best);
    doc["cases"].push_back(std::move(jc));
  }
  return doc;
}

std::string render_simulation_text(const json& document) {
  std::ostringstream out;
  out << document["tool"].get<std::string>() << " " << document["version"].get<std::string>()
      << " simulation study\n";
  out << "seed " << document["seed"].get<std::uint64_t>() << ", iterations "
      << document["iterations"].get<int>() << ", grid size " << document["grid_size"].get<int>()
      << ", rows " << document["rows"].get<std::size_t>() << "\n";
  for (const auto& c : document["cases"]) {
    out << "\ncase " << c["case"].get<int>() << "\n";
    out << "  averaged thresholds: simb "
        << fixed(c["thresholds"]["simb"].get<double>(), 4) << " (search ["
        << fixed(c["search"]["simb"][0].get<double>(), 2) << ", "
        << fixed(c["search"]["simb"][1].get<double>(), 2) << "]), simc "
        << fixed(c["thresholds"]["simc"].get<double>(), 4) << " (search ["
        << fixed(c["search"]["simc"][0].get<double>(), 2) << ", "
        << fixed(c["search"]["simc"][1].get<double>(), 2) << "])\n";
    out << "  model AIC, averaged over iterations  (null AIC "
        << fixed(c["null_aic"].get<double>(), 2) << ")\n";
    // display order: Model 1, Model 2, Model 3
    for (const char* wanted : {"Model 1", "Model 2", "Model 3"}) {
      for (const auto& row : c["models"]) {
        if (row["label"].get<std::string>() == wanted) {
          out << "    " << wanted << "  {" << join(names_of(row["predictors"])) << "}  "
              << fixed(row["aic"].get<double>(), 2) << "  "
              << fixed(row["aic_vs_null"].get<double>(), 2);
          if (row["best"].get<bool>()) out << "  <- best";
          out << "\n";
        }
      }
    }
    out << "  best: " << c["best"].get<std::string>() << "\n";
  }
  return out.str();
}

json discretize_document(std::span<const AnalysisOutcome> analyses) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["kind"] = "discretize";
  doc["analyses"] = json::array();
  for (const AnalysisOutcome& outcome : analyses) {
    json a;
    a["response"] = outcome.aggregate.response;
    a["rows"] = outcome.n_rows;
    a["iterations"] = outcome.aggregate.iterations;
    a["thresholds"] = threshold_rows(outcome.aggregate);
    doc["analyses"].push_back(std::move(a));
  }
  return doc;
}

std::string render_discretize_text(const json& document) {
  std::ostringstream out;
  out << document["tool"].get<std::string>() << " " << document["version"].get<std::string>()
      << " thresholds\n";
  for (const auto& a : document["analyses"]) {
    out << "\nresponse: " << a["response"].get<std::string>() << "  (rows "
        << a["rows"].get<std::size_t>() << ", iterations " << a["iterations"].get<int>() << ")\n";
    for (const auto& t : a["thresholds"]) {
      out << "  " << t["column"].get<std::string>() << "  "
          << fixed(t["mean_threshold"].get<double>(), 4) << "  search ["
          << fixed(t["search_lower"].get<double>(), 4) << ", "
          << fixed(t["search_upper"].get<double>(), 4) << "], "
          << t["grid_size"].get<int>() << " grid points\n";
    }
  }
  return out.str();
}

json manifest_skeleton(const std::string& command) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["conventions"] = {
      {"logarithm", "natural"},
      {"indicator", "value < threshold"},
      {"continuity_correction", false},
      {"histogram_penalty_sample_size", "n"},
  };
  return doc;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace binassoc::report
