#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "binassoc/datagen.hpp"

using namespace binassoc;

TEST_CASE("truncated normal draws respect the support") {
  rng::Engine eng = rng::substream(100, 0);
  const TruncNormSpec spec{3.0, 1.75, 1.0, 10.0};
  const auto xs = sample_truncated_normal(spec, 5000, eng);
  CHECK(*std::min_element(xs.begin(), xs.end()) >= 1.0);
  CHECK(*std::max_element(xs.begin(), xs.end()) <= 10.0);
}

TEST_CASE("truncated normal sample mean matches the closed form") {
  rng::Engine eng = rng::substream(101, 0);
  const TruncNormSpec spec{3.0, 1.75, 1.0, 10.0};
  const std::size_t n = 100000;
  const auto xs = sample_truncated_normal(spec, n, eng);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  const double want = truncated_normal_mean(spec);
  CHECK(want == doctest::Approx(3.4157424651862466).epsilon(1e-12));
  const double se = std::sqrt(truncated_normal_variance(spec) / static_cast<double>(n));
  CHECK(std::abs(mean - want) < 3.0 * se);

  // second moment too, with the standard error estimated from the sample
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  const double var_se = std::sqrt((m4 - m2 * m2) / static_cast<double>(n));
  CHECK(std::abs(m2 - truncated_normal_variance(spec)) < 3.0 * var_se);
}

TEST_CASE("symmetric truncation keeps the mean at the center") {
  rng::Engine eng = rng::substream(102, 0);
  const TruncNormSpec spec{0.0, 1.0, -1.0, 1.0};
  const auto xs = sample_truncated_normal(spec, 60000, eng);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  CHECK(std::abs(mean) < 0.01);
}

TEST_CASE("truncated normal rejects bad specs") {
  rng::Engine eng = rng::substream(103, 0);
  CHECK_THROWS_AS(sample_truncated_normal({0.0, 0.0, -1.0, 1.0}, 10, eng),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_truncated_normal({0.0, 1.0, 2.0, 1.0}, 10, eng),
                  std::invalid_argument);
}

TEST_CASE("beta sampler moments and support") {
  rng::Engine eng = rng::substream(104, 0);
  const std::size_t n = 100000;
  const auto ys = sample_beta(3.45, 10.0, n, eng);
  double mean = 0.0;
  for (double y : ys) {
    CHECK(y > 0.0);
    CHECK(y < 1.0);
    mean += y;
  }
  mean /= static_cast<double>(n);
  const double want = 3.45 / 13.45;
  const double sd = std::sqrt(3.45 * 10.0 / (13.45 * 13.45 * 14.45));
  CHECK(std::abs(mean - want) < 3.0 * sd / std::sqrt(static_cast<double>(n)));

  double variance = 0.0;
  for (double y : ys) variance += (y - mean) * (y - mean);
  variance /= static_cast<double>(n - 1);
  CHECK(variance == doctest::Approx(sd * sd).epsilon(0.05));
}

TEST_CASE("beta(1, 1) is uniform on average") {
  rng::Engine eng = rng::substream(105, 0);
  const auto ys = sample_beta(1.0, 1.0, 50000, eng);
  double mean = 0.0;
  for (double y : ys) mean += y;
  mean /= static_cast<double>(ys.size());
  CHECK(std::abs(mean - 0.5) < 0.01);
}

TEST_CASE("beta sampler rejects non-positive shapes") {
  rng::Engine eng = rng::substream(106, 0);
  CHECK_THROWS_AS(sample_beta(0.0, 1.0, 5, eng), std::invalid_argument);
  CHECK_THROWS_AS(sample_beta(1.0, -2.0, 5, eng), std::invalid_argument);
}

TEST_CASE("gen_simb mixes the two components and reproduces per seed") {
  const SimCase& case3 = simulation_cases()[2];
  rng::Engine a = rng::substream(107, 0);
  const auto simb = gen_simb(case3, a);
  REQUIRE(simb.size() == kSimulationRows);
  for (double x : simb) {
    CHECK(x >= 1.0);
    CHECK(x <= 10.0);
  }
  // two peaks: the windows around 3 and 7 hold far more mass than the valley
  int near3 = 0, near7 = 0, valley = 0;
  for (double x : simb) {
    if (x > 2.5 && x < 3.5) ++near3;
    if (x > 6.5 && x < 7.5) ++near7;
    if (x > 4.5 && x < 5.5) ++valley;
  }
  CHECK(near3 > 5 * std::max(valley, 1));
  CHECK(near7 > 5 * std::max(valley, 1));

  rng::Engine b = rng::substream(107, 0);
  CHECK(gen_simb(case3, b) == simb);
}

TEST_CASE("gen_csimb applies half-open interval rules") {
  const auto& cases = simulation_cases();
  const double probe1[] = {3.0, 5.0, 8.0, 2.0, 1.99, 6.0};
  const auto c1 = gen_csimb(cases[0], probe1);
  CHECK(c1.codes == std::vector<int>{1, 0, 0, 1, 0, 1});
  const double probe2[] = {6.4, 6.5, 8.49, 8.5};
  const auto c2 = gen_csimb(cases[1], probe2);
  CHECK(c2.codes == std::vector<int>{0, 1, 1, 0});
  const double probe3[] = {2.5, 3.5, 6.5, 7.5, 2.49};
  const auto c3 = gen_csimb(cases[2], probe3);
  CHECK(c3.codes == std::vector<int>{1, 0, 1, 0, 0});
}

TEST_CASE("simulation study smoke run") {
  const SimulationReport report = run_simulation_study(2718, 12, 40, 2);
  REQUIRE(report.cases.size() == 3);
  for (const SimulationCaseResult& c : report.cases) {
    REQUIRE(c.aggregate.models.size() == 4);
    CHECK(c.aggregate.mean_model_aics[0] == 0.0);
    CHECK(c.aggregate.mean_response_marginal_aic > 0.0);
    REQUIRE(c.aggregate.thresholds.size() == 2);
    CHECK(c.aggregate.thresholds[0].column == "simb");
    CHECK(c.aggregate.thresholds[1].column == "simc");
    // the planted simb association wins even on a short run
    CHECK(c.aggregate.best_index == 1);
    CHECK(c.aggregate.mean_model_aics[1] < 0.0);
  }
  // identical call reproduces bitwise
  const SimulationReport again = run_simulation_study(2718, 12, 40, 1);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(again.cases[i].aggregate.mean_model_aics ==
          report.cases[i].aggregate.mean_model_aics);
}
