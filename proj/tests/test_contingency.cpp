#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "binassoc/contingency.hpp"
#include "oracles.hpp"

using namespace binassoc;

namespace {

CategoricalSeries series(std::vector<int> codes, int n_categories, std::string name) {
  return CategoricalSeries{std::move(codes), n_categories, std::move(name)};
}

ContingencyTable table_2x2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return ContingencyTable({2, 2}, {a, b, c, d});
}

}  // namespace

TEST_CASE("build_table counts joint codes") {
  const CategoricalSeries w = series({1, 1, 0, 0}, 2, "w");
  const CategoricalSeries k = series({1, 0, 1, 0}, 2, "k");
  const CategoricalSeries cols[] = {w, k};
  const ContingencyTable t = build_table(cols);
  CHECK(t.total() == 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const int code[] = {i, j};
      CHECK(t.cell(code) == 1);
    }
}

TEST_CASE("build_table piles identical rows into one cell") {
  const CategoricalSeries cols[] = {series({1, 1, 1}, 2, "w"), series({1, 1, 1}, 2, "k")};
  const ContingencyTable t = build_table(cols);
  const int on[] = {1, 1};
  const int off[] = {0, 0};
  CHECK(t.cell(on) == 3);
  CHECK(t.cell(off) == 0);
  CHECK(t.total() == 3);
}

TEST_CASE("build_table full factorial over three binary series") {
  std::vector<int> a, b, c;
  for (int i = 0; i < 8; ++i) {
    a.push_back((i >> 2) & 1);
    b.push_back((i >> 1) & 1);
    c.push_back(i & 1);
  }
  const CategoricalSeries cols[] = {series(a, 2, "a"), series(b, 2, "b"), series(c, 2, "c")};
  const ContingencyTable t = build_table(cols);
  CHECK(t.ndim() == 3);
  for (std::int64_t cell : t.counts()) CHECK(cell == 1);
}

TEST_CASE("build_table rejects bad input") {
  const CategoricalSeries good = series({0, 1}, 2, "g");
  CHECK_THROWS_AS(build_table({}), std::invalid_argument);
  {
    const CategoricalSeries cols[] = {good, series({0, 1, 0}, 2, "longer")};
    CHECK_THROWS_AS(build_table(cols), std::invalid_argument);
  }
  {
    const CategoricalSeries cols[] = {series({0, 2}, 2, "bad_code")};
    CHECK_THROWS_AS(build_table(cols), std::invalid_argument);
  }
  {
    // 2048 * 1024 cells are over the default cap of 2^20
    const CategoricalSeries cols[] = {series({0}, 2048, "x"), series({0}, 1024, "y")};
    CHECK_THROWS_AS(build_table(cols), std::invalid_argument);
    CHECK_NOTHROW(build_table(cols, std::size_t{1} << 21));
  }
}

TEST_CASE("marginals recount the kept axes") {
  std::mt19937_64 eng(7);
  const auto t3 = oracles::random_binary_table(eng, 3);
  ContingencyTable t({2, 2, 2}, t3.cells);
  const int keep[] = {0, 2};
  const ContingencyTable m = t.marginal(keep);
  CHECK(m.total() == t.total());
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      std::int64_t expect = 0;
      for (int j = 0; j < 2; ++j) {
        const int code[] = {i, j, k};
        expect += t.cell(code);
      }
      const int code[] = {i, k};
      CHECK(m.cell(code) == expect);
    }
  const int dup[] = {1, 1};
  CHECK_THROWS_AS(t.marginal(dup), std::invalid_argument);
}

TEST_CASE("empty predictor set scores exactly zero") {
  std::mt19937_64 eng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const auto rt = oracles::random_binary_table(eng, 2 + static_cast<int>(eng() % 3));
    const ContingencyTable t(rt.dims, rt.cells);
    CHECK(aic_conditional(t, ModelSpec{0, {}}) == 0.0);
  }
}

TEST_CASE("aic_conditional exact values on 2x2 tables") {
  CHECK(aic_conditional(table_2x2(25, 25, 25, 25), ModelSpec{0, {1}}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // -2 (60 ln 1.5 + 20 ln 0.5) + 2
  CHECK(aic_conditional(table_2x2(30, 10, 10, 30), ModelSpec{0, {1}}) ==
        doctest::Approx(-18.929925750581913).epsilon(1e-12));
  // response axis choice does not matter for two binary axes
  CHECK(aic_conditional(table_2x2(30, 10, 10, 30), ModelSpec{1, {0}}) ==
        doctest::Approx(-18.929925750581913).epsilon(1e-12));
}

TEST_CASE("delta_aic_2x2 is the negated single-predictor score") {
  CHECK(delta_aic_2x2(table_2x2(25, 25, 25, 25)) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(delta_aic_2x2(table_2x2(30, 10, 10, 30)) ==
        doctest::Approx(18.929925750581913).epsilon(1e-12));
  // 2 * 6 ln 2 - 2
  CHECK(delta_aic_2x2(table_2x2(3, 0, 0, 3)) ==
        doctest::Approx(6.317766166719343).epsilon(1e-12));

  std::mt19937_64 eng(4);
  for (int rep = 0; rep < 50; ++rep) {
    const auto rt = oracles::random_binary_table(eng, 2);
    const ContingencyTable t(rt.dims, rt.cells);
    CHECK(delta_aic_2x2(t) ==
          doctest::Approx(-aic_conditional(t, ModelSpec{0, {1}})).epsilon(1e-12));
  }
  const ContingencyTable t3({3, 2}, {1, 1, 1, 1, 1, 1});
  CHECK_THROWS_AS(delta_aic_2x2(t3), std::invalid_argument);
}

TEST_CASE("aic_conditional tolerates empty categories") {
  // one response category never observed
  const ContingencyTable t = table_2x2(0, 0, 5, 7);
  const double aic = aic_conditional(t, ModelSpec{0, {1}});
  CHECK(std::isfinite(aic));
  // all mass sits in one response row: the log terms vanish, the penalty stays
  CHECK(aic == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("aic_conditional is invariant under category relabeling") {
  std::mt19937_64 eng(11);
  for (int rep = 0; rep < 30; ++rep) {
    const auto rt = oracles::random_binary_table(eng, 3);
    const ContingencyTable t({2, 2, 2}, rt.cells);
    // swap the two labels of axis 1: flip that bit of the linear index
    std::vector<std::int64_t> swapped(rt.cells.size());
    for (std::size_t idx = 0; idx < rt.cells.size(); ++idx) swapped[idx ^ 0b010] = rt.cells[idx];
    const ContingencyTable s({2, 2, 2}, swapped);
    for (const ModelSpec& spec : enumerate_models(2, 0)) {
      CHECK(aic_conditional(t, spec) ==
            doctest::Approx(aic_conditional(s, spec)).epsilon(1e-12));
    }
  }
}

TEST_CASE("doubling every cell doubles the log-likelihood-ratio sum exactly") {
  std::mt19937_64 eng(23);
  for (int rep = 0; rep < 30; ++rep) {
    const auto rt = oracles::random_binary_table(eng, 3);
    std::vector<std::int64_t> doubled(rt.cells.size());
    for (std::size_t i = 0; i < rt.cells.size(); ++i) doubled[i] = 2 * rt.cells[i];
    const ContingencyTable t(rt.dims, rt.cells);
    const ContingencyTable t2(rt.dims, doubled);
    const ModelSpec spec{0, {1, 2}};
    CHECK(conditional_log_ratio_sum(t2, spec) == 2.0 * conditional_log_ratio_sum(t, spec));
    // the penalty term is unchanged, so the AICs relate through it
    const double penalty = 2.0 * 1.0 * 3.0;
    CHECK(aic_conditional(t2, spec) - penalty ==
          doctest::Approx(2.0 * (aic_conditional(t, spec) - penalty)).epsilon(1e-12));
  }
}

TEST_CASE("enumerate_models covers every subset in size-then-lex order") {
  CHECK(enumerate_models(0, 0).size() == 1);
  CHECK(enumerate_models(0, 0).front().predictor_axes.empty());

  const auto four = enumerate_models(2, 0);
  REQUIRE(four.size() == 4);
  CHECK(four[0].predictor_axes == std::vector<int>{});
  CHECK(four[1].predictor_axes == std::vector<int>{1});
  CHECK(four[2].predictor_axes == std::vector<int>{2});
  CHECK(four[3].predictor_axes == std::vector<int>{1, 2});

  const auto many = enumerate_models(5, 0);
  REQUIRE(many.size() == 32);
  std::vector<std::size_t> by_size(6, 0);
  for (const ModelSpec& spec : many) ++by_size[spec.predictor_axes.size()];
  CHECK(by_size == std::vector<std::size_t>{1, 5, 10, 10, 5, 1});
  for (std::size_t i = 1; i < many.size(); ++i) {
    const auto& a = many[i - 1].predictor_axes;
    const auto& b = many[i].predictor_axes;
    const bool ordered = a.size() < b.size() || (a.size() == b.size() && a < b);
    CHECK(ordered);
  }

  // response in the middle shifts the pool
  const auto mid = enumerate_models(2, 1);
  CHECK(mid[1].predictor_axes == std::vector<int>{0});
  CHECK(mid[2].predictor_axes == std::vector<int>{2});
  CHECK_THROWS_AS(enumerate_models(-1, 0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_models(2, 3), std::invalid_argument);
}

TEST_CASE("aic_conditional agrees with the observation-expansion oracle") {
  std::mt19937_64 eng(2024);
  for (int rep = 0; rep < 200; ++rep) {
    const int axes = 2 + static_cast<int>(eng() % 3);
    const auto rt = oracles::random_binary_table(eng, axes);
    const ContingencyTable t(rt.dims, rt.cells);
    const auto models = enumerate_models(axes - 1, 0);
    const ModelSpec& spec = models[eng() % models.size()];
    const double got = aic_conditional(t, spec);
    const double want = oracles::aic_conditional(rt.dims, rt.cells, 0, spec.predictor_axes);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("aic_conditional handles non-binary axes") {
  std::mt19937_64 eng(515);
  for (int rep = 0; rep < 50; ++rep) {
    // 3 x 2 x 4 table with random cells
    const std::vector<int> dims{3, 2, 4};
    std::vector<std::int64_t> cells(24);
    std::int64_t total = 0;
    for (auto& c : cells) {
      c = static_cast<std::int64_t>(eng() % 8);
      total += c;
    }
    if (total == 0) cells[0] = 1;
    const ContingencyTable t(dims, cells);
    for (const ModelSpec& spec : enumerate_models(2, 0)) {
      const double got = aic_conditional(t, spec);
      const double want = oracles::aic_conditional(dims, cells, 0, spec.predictor_axes);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
    // response on a different axis
    const ModelSpec other{2, {0, 1}};
    CHECK(aic_conditional(t, other) ==
          doctest::Approx(oracles::aic_conditional(dims, cells, 2, {0, 1})).epsilon(1e-9));
  }
}

TEST_CASE("score_all_models walks the enumeration order") {
  std::mt19937_64 eng(77);
  const auto rt = oracles::random_binary_table(eng, 3);
  const ContingencyTable t({2, 2, 2}, rt.cells);
  const auto scores = score_all_models(t, 0);
  const auto models = enumerate_models(2, 0);
  REQUIRE(scores.size() == models.size());
  for (std::size_t m = 0; m < models.size(); ++m) {
    CHECK(scores[m].spec == models[m]);
    CHECK(scores[m].aic == aic_conditional(t, models[m]));
  }
}

TEST_CASE("response_marginal_aic is the absolute null baseline") {
  const ContingencyTable t = table_2x2(25, 25, 25, 25);
  // -2 * 100 * ln(1/2) + 2
  CHECK(response_marginal_aic(t, 0) ==
        doctest::Approx(200.0 * std::log(2.0) + 2.0).epsilon(1e-12));
  const ContingencyTable skew = table_2x2(10, 0, 0, 0);
  CHECK(response_marginal_aic(skew, 0) == doctest::Approx(2.0).epsilon(1e-12));
}
