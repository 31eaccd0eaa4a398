#include "binassoc/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binassoc/stats.hpp"

namespace binassoc {

namespace {

void check(const TruncNormSpec& spec) {
  if (!(spec.sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(spec.lower < spec.upper)) throw std::invalid_argument("need lower < upper");
}

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) * 0.3989422804014326779;  // 1/sqrt(2*pi)
}

double sample_gamma(double shape, rng::Engine& eng) {
  if (shape < 1.0) {
    // boost the shape and correct with a power of a uniform
    const double u = rng::uniform01(eng);
    return sample_gamma(shape + 1.0, eng) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = std_normal_quantile(rng::uniform01(eng));
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = rng::uniform01(eng);
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

}  // namespace

const std::array<SimCase, 3>& simulation_cases() {
  static const std::array<SimCase, 3> cases = {{
      {1, {3.0, 1.75, 1.0, 10.0}, {7.0, 0.75, 1.0, 10.0}, {2.0, 4.0}, {6.0, 8.0}, 1.5, 8.0},
      {2, {3.0, 0.75, 1.0, 10.0}, {7.0, 1.75, 1.0, 10.0}, {2.0, 4.0}, {6.5, 8.5}, 2.0, 9.0},
      {3, {3.0, 0.75, 1.0, 10.0}, {7.0, 0.75, 1.0, 10.0}, {2.5, 3.5}, {6.5, 7.5}, 2.0, 8.0},
  }};
  return cases;
}

std::vector<double> sample_truncated_normal(const TruncNormSpec& spec, std::size_t n,
                                            rng::Engine& eng) {
  check(spec);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const double alpha = (spec.lower - spec.mu) / spec.sigma;
  const double beta = (spec.upper - spec.mu) / spec.sigma;
  const double lo = std_normal_cdf(alpha);
  const double hi = std_normal_cdf(beta);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = lo + rng::uniform01(eng) * (hi - lo);
    const double x = spec.mu + spec.sigma * std_normal_quantile(p);
    out.push_back(std::clamp(x, spec.lower, spec.upper));
  }
  return out;
}

double truncated_normal_mean(const TruncNormSpec& spec) {
  check(spec);
  const double alpha = (spec.lower - spec.mu) / spec.sigma;
  const double beta = (spec.upper - spec.mu) / spec.sigma;
  const double z = std_normal_cdf(beta) - std_normal_cdf(alpha);
  return spec.mu + spec.sigma * (std_normal_pdf(alpha) - std_normal_pdf(beta)) / z;
}

double truncated_normal_variance(const TruncNormSpec& spec) {
  check(spec);
  const double alpha = (spec.lower - spec.mu) / spec.sigma;
  const double beta = (spec.upper - spec.mu) / spec.sigma;
  const double z = std_normal_cdf(beta) - std_normal_cdf(alpha);
  const double ratio = (std_normal_pdf(alpha) - std_normal_pdf(beta)) / z;
  return spec.sigma * spec.sigma *
         (1.0 + (alpha * std_normal_pdf(alpha) - beta * std_normal_pdf(beta)) / z -
          ratio * ratio);
}

std::vector<double> sample_beta(double alpha, double beta, std::size_t n, rng::Engine& eng) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("beta shapes must be > 0");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ga = sample_gamma(alpha, eng);
    const double gb = sample_gamma(beta, eng);
    out.push_back(ga / (ga + gb));
  }
  return out;
}

std::vector<double> gen_simb(const SimCase& sim_case, rng::Engine& eng) {
  // equal halves from the two components, mixed by shuffling
  const std::size_t half = kSimulationRows / 2;
  std::vector<double> simb = sample_truncated_normal(sim_case.low_component, half, eng);
  std::vector<double> high = sample_truncated_normal(sim_case.high_component, half, eng);
  simb.insert(simb.end(), high.begin(), high.end());
  rng::shuffle(simb, eng);
  return simb;
}

CategoricalSeries gen_csimb(const SimCase& sim_case, std::span<const double> simb) {
  CategoricalSeries out;
  out.name = "csimb";
  out.n_categories = 2;
  out.codes.reserve(simb.size());
  for (double x : simb)
    out.codes.push_back((sim_case.rule_a.contains(x) || sim_case.rule_b.contains(x)) ? 1 : 0);
  return out;
}

SimulationReport run_simulation_study(std::uint64_t master_seed, int iterations, int grid_size,
                                      int threads) {
  SimulationReport report;
  report.master_seed = master_seed;
  report.iterations = iterations;
  report.grid_size = grid_size;
  for (const SimCase& sim_case : simulation_cases()) {
    rng::Engine data_eng =
        rng::substream(master_seed, 0x0D00u + static_cast<std::uint64_t>(sim_case.id));
    const std::vector<double> simb = gen_simb(sim_case, data_eng);
    const CategoricalSeries csimb = gen_csimb(sim_case, simb);
    const std::vector<double> simc =
        sample_beta(kSimcBetaAlpha, kSimcBetaBeta, kSimulationRows, data_eng);

    Dataset dataset;
    dataset.columns.push_back(Column::categorical("csimb", csimb, ColumnKind::binary));
    dataset.columns.push_back(Column::continuous("simb", simb));
    dataset.columns.push_back(Column::continuous("simc", simc));

    AnalysisConfig config;
    config.response = "csimb";
    config.predictors = {"simb", "simc"};
    config.searches = {
        {"simb", sim_case.search_lower, sim_case.search_upper, grid_size},
        {"simc", kSimcSearchLower, kSimcSearchUpper, grid_size},
    };
    config.iterations = iterations;
    config.master_seed = rng::derive(master_seed, 0x0A00u + static_cast<std::uint64_t>(sim_case.id));

    SimulationCaseResult result;
    result.case_id = sim_case.id;
    result.aggregate = run_analysis(dataset, config, threads);
    report.cases.push_back(std::move(result));
  }
  return report;
}

}  // namespace binassoc
