#include "binassoc/dot.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

namespace binassoc {

namespace {

std::string quote(const std::string& id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string emit_dot(std::span<const AggregateResult> analyses, double aic_margin) {
  // Node order: responses first, then predictors as encountered.
  std::vector<std::string> nodes;
  auto add_node = [&](const std::string& name) {
    if (std::find(nodes.begin(), nodes.end(), name) == nodes.end()) nodes.push_back(name);
  };
  for (const AggregateResult& agg : analyses) add_node(agg.response);
  for (const AggregateResult& agg : analyses)
    for (const std::string& name : agg.predictor_names) add_node(name);

  // Directed edges predictor -> response, solid from the minimum-AIC model,
  // dashed from any other model within the margin of the minimum.
  std::vector<std::pair<std::string, std::string>> solid;
  std::vector<std::pair<std::string, std::string>> dashed;
  auto add_edge = [](auto& edges, std::string from, std::string to) {
    const std::pair<std::string, std::string> e{std::move(from), std::move(to)};
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  };
  for (const AggregateResult& agg : analyses) {
    for (const std::string& pred : agg.model_predictor_names(agg.best_index))
      add_edge(solid, pred, agg.response);
    const double cutoff = agg.mean_model_aics[agg.best_index] + aic_margin;
    for (std::size_t m = 0; m < agg.models.size(); ++m) {
      if (m == agg.best_index || agg.mean_model_aics[m] > cutoff) continue;
      for (const std::string& pred : agg.model_predictor_names(m)) add_edge(dashed, pred, agg.response);
    }
  }
  // dashed edges only for predictors not already solid into the same response
  std::erase_if(dashed, [&](const auto& e) {
    return std::find(solid.begin(), solid.end(), e) != solid.end();
  });

  std::ostringstream out;
  out << "digraph associations {\n";
  for (const std::string& node : nodes) out << "  " << quote(node) << ";\n";
  auto emit_edges = [&](const std::vector<std::pair<std::string, std::string>>& edges,
                        bool is_dashed) {
    std::set<std::size_t> skip;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (skip.count(i)) continue;
      const auto& [from, to] = edges[i];
      bool mutual = false;
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        if (edges[j].first == to && edges[j].second == from) {
          mutual = true;
          skip.insert(j);
          break;
        }
      }
      out << "  " << quote(from) << " -> " << quote(to);
      std::vector<std::string> attrs;
      if (is_dashed) attrs.push_back("style=dashed");
      if (mutual) attrs.push_back("dir=both");
      if (!attrs.empty()) {
        out << " [";
        for (std::size_t a = 0; a < attrs.size(); ++a) out << (a ? ", " : "") << attrs[a];
        out << "]";
      }
      out << ";\n";
    }
  };
  emit_edges(solid, false);
  emit_edges(dashed, true);
  out << "}\n";
  return out.str();
}

}  // namespace binassoc
