#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "binassoc/pipeline.hpp"
#include "binassoc/rng.hpp"

// Synthetic three-case study: a bimodal truncated-normal mixture (simb), a
// rule-derived binary label (csimb), and an independent beta-distributed
// nuisance variable (simc). Running the half-split protocol on these cases
// checks that the pipeline recovers the built-in association and rejects the
// nuisance predictor.

namespace binassoc {

struct TruncNormSpec {
  double mu = 0.0;
  double sigma = 1.0;
  double lower = 0.0;
  double upper = 1.0;
};

// Half-open inclusion interval [lower, upper).
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double x) const { return x >= lower && x < upper; }
};

struct SimCase {
  int id = 1;
  TruncNormSpec low_component;
  TruncNormSpec high_component;
  Interval rule_a;  // csimb = 1 inside either interval
  Interval rule_b;
  double search_lower = 0.0;  // threshold search range for simb
  double search_upper = 0.0;
};

const std::array<SimCase, 3>& simulation_cases();

// i.i.d. draws by inverse CDF:
//   x = mu + sigma * Phi^-1( Phi(alpha) + U (Phi(beta) - Phi(alpha)) ).
// All outputs lie in [lower, upper].
std::vector<double> sample_truncated_normal(const TruncNormSpec& spec, std::size_t n,
                                            rng::Engine& eng);

// Closed-form mean of the truncated normal (used by moment tests).
double truncated_normal_mean(const TruncNormSpec& spec);
double truncated_normal_variance(const TruncNormSpec& spec);

// i.i.d. Beta(alpha, beta) draws in (0, 1), via the gamma-ratio construction
// with a Marsaglia-Tsang rejection sampler for the gamma variates.
std::vector<double> sample_beta(double alpha, double beta, std::size_t n, rng::Engine& eng);

// 500 draws from each mixture component, concatenated and shuffled.
std::vector<double> gen_simb(const SimCase& sim_case, rng::Engine& eng);

// Applies the case's two half-open inclusion intervals.
CategoricalSeries gen_csimb(const SimCase& sim_case, std::span<const double> simb);

inline constexpr double kSimcBetaAlpha = 3.45;
inline constexpr double kSimcBetaBeta = 10.0;
inline constexpr double kSimcSearchLower = 0.1;
inline constexpr double kSimcSearchUpper = 0.5;
inline constexpr std::size_t kSimulationRows = 1000;

// Default master seed for the simulation study and the CLI.
inline constexpr std::uint64_t kDefaultSeed = 10867;

struct SimulationCaseResult {
  int case_id = 1;
  AggregateResult aggregate;  // response csimb, predictors {simb, simc}
};

struct SimulationReport {
  std::uint64_t master_seed = 0;
  int iterations = 0;
  int grid_size = 0;
  std::vector<SimulationCaseResult> cases;
};

// Generates all three cases (n = 1000 rows each) and runs the half-split
// analysis with response csimb and predictors {simb, simc}. Model indices in
// each aggregate follow enumeration order: {}, {simb}, {simc}, {simb, simc}.
SimulationReport run_simulation_study(std::uint64_t master_seed,
                                      int iterations = 1000, int grid_size = 100,
                                      int threads = 1);

}  // namespace binassoc
