#include <cmath>
#include <stdexcept>

#include <cmath>
#include <random>

#include "doctest.h"
#include "iir/engine.hpp"
#include "iir/select.hpp"
#include "iir/sim.hpp"

using namespace iir;

TEST_CASE("criterion arithmetic") {
  CHECK(criterion_value(4, 100, 3, Penalty::aic).value ==
        doctest::Approx(std::log(0.04) + 0.06));
  CHECK(criterion_value(4, 100, 3, Penalty::bic).value ==
        doctest::Approx(std::log(0.04) + 3.0 * std::log(100.0) / 100.0));
  CHECK(criterion_value(4, 100, 3, Penalty::gcv).value ==
        doctest::Approx(std::log(0.04) - 2.0 * std::log(0.97)));
}

TEST_CASE("zero jumps means zero penalty") {
  for (Penalty phi : {Penalty::aic, Penalty::bic, Penalty::gcv})
    CHECK(criterion_value(4, 100, 0, phi).value ==
          doctest::Approx(std::log(0.04)));
}

TEST_CASE("perfect fit returns the -inf sentinel") {
  const CriterionValue cv = criterion_value(0, 100, 3, Penalty::aic);
  CHECK(cv.perfect_fit);
  CHECK(std::isinf(cv.value));
  CHECK(cv.value < 0);
}

TEST_CASE("gcv rejects p >= n") {
  CHECK_THROWS_AS(criterion_value(4, 10, 10, Penalty::gcv),
                  std::invalid_argument);
}

TEST_CASE("criterion is strictly increasing in p") {
  for (Penalty phi : {Penalty::aic, Penalty::bic, Penalty::gcv}) {
    double prev = -1e300;
    for (std::size_t p = 0; p < 50; ++p) {
      const double v = criterion_value(2.5, 80, p, phi).value;
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("penalized selection basics") {
  using Entry = std::pair<std::size_t, std::pair<double, std::size_t>>;
  SUBCASE("single entry wins") {
    const CriterionTrace t =
        select_k_penalized({Entry{3, {2.0, 1}}}, 50, Penalty::aic);
    CHECK(t.selected_k == 3);
  }
  SUBCASE("strictly worsening criterion keeps k=1") {
    std::vector<Entry> entries;
    for (std::size_t k = 1; k <= 10; ++k)
      entries.push_back({k, {1.0, 5 * k}});
    CHECK(select_k_penalized(entries, 50, Penalty::aic).selected_k == 1);
  }
  SUBCASE("constructed minimum at k=7") {
    std::vector<Entry> entries;
    for (std::size_t k = 1; k <= 15; ++k) {
      const double rss = 1.0 + 0.05 * std::pow(double(k) - 7.0, 2.0);
      entries.push_back({k, {rss, 2}});
    }
    CHECK(select_k_penalized(entries, 50, Penalty::bic).selected_k == 7);
  }
  SUBCASE("empty trace is rejected") {
    CHECK_THROWS_AS(select_k_penalized({}, 50, Penalty::aic),
                    std::invalid_argument);
  }
}

TEST_CASE("selection is invariant under a positive RSS rescaling") {
  using Entry = std::pair<std::size_t, std::pair<double, std::size_t>>;
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unif(0.5, 5.0);
  for (int t = 0; t < 30; ++t) {
    std::vector<Entry> base, scaled;
    const double c = unif(rng);
    for (std::size_t k = 1; k <= 20; ++k) {
      const double rss = unif(rng);
      const std::size_t p = rng() % 10;
      base.push_back({k, {rss, p}});
      scaled.push_back({k, {c * rss, p}});
    }
    for (Penalty phi : {Penalty::aic, Penalty::bic, Penalty::gcv})
      CHECK(select_k_penalized(base, 40, phi).selected_k ==
            select_k_penalized(scaled, 40, phi).selected_k);
  }
}

TEST_CASE("patience truncates the scan") {
  using Entry = std::pair<std::size_t, std::pair<double, std::size_t>>;
  std::vector<Entry> entries;
  // Minimum at k=2, then flat; a late sharp minimum at k=30 must not be
  // reached with patience 5.
  for (std::size_t k = 1; k <= 30; ++k) {
    double rss = (k == 2) ? 0.5 : 1.0;
    if (k == 30) rss = 0.01;
    entries.push_back({k, {rss, 0}});
  }
  CHECK(select_k_penalized(entries, 40, Penalty::aic, 5).selected_k == 2);
  CHECK(select_k_penalized(entries, 40, Penalty::aic).selected_k == 30);
}

TEST_CASE("holdout on noiseless monotone data selects k=1") {
  Scenario sc{"monotone", 40, Noise::silent(), {}, 5};
  const SortedSample s = generate(sc);
  const HoldoutResult r = select_k_holdout(s, 0.25, 50, 9);
  CHECK(r.selected_k == 1);
}

TEST_CASE("holdout is deterministic per seed") {
  Scenario sc{"peak", 60, Noise::gaussian(0.3), {}, 12};
  const SortedSample s = generate(sc);
  const HoldoutResult a = select_k_holdout(s, 0.25, 60, 4);
  const HoldoutResult b = select_k_holdout(s, 0.25, 60, 4);
  CHECK(a.selected_k == b.selected_k);
  CHECK(a.curve == b.curve);
}

TEST_CASE("holdout never selects a dominated k") {
  Scenario sc{"sinetrend", 80, Noise::gaussian(0.25), {}, 77};
  const SortedSample s = generate(sc);
  const HoldoutResult r = select_k_holdout(s, 0.25, 80, 1);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [k, mse] : r.curve) best = std::min(best, mse);
  for (const auto& [k, mse] : r.curve)
    if (k == r.selected_k) CHECK(mse == best);
}

TEST_CASE("holdout rejects tiny samples") {
  SortedSample s;
  s.xs = {0.1, 0.5, 0.9};
  s.ys = {1, 2, 3};
  s.ws = {1, 1, 1};
  CHECK_THROWS_AS(select_k_holdout(s, 0.25, 10, 0), std::invalid_argument);
}

TEST_CASE("fit with penalized rule selects the criterion minimum") {
  Scenario sc{"peak", 100, Noise::gaussian(0.2), {}, 21};
  const SortedSample s = generate(sc);
  const IirModel m = fit(s, StopRule::penalized(Penalty::bic), 100);
  CHECK(m.termination == Termination::selected);
  CHECK(m.k == m.criterion.selected_k);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  for (const CriterionPoint& p : m.criterion.points)
    if (p.value < best) {
      best = p.value;
      best_k = p.k;
    }
  CHECK(m.criterion.selected_k == best_k);
}

TEST_CASE("name round trip") {
  for (const std::string s : {"none", "penalized", "holdout"})
    CHECK(to_string(stop_kind_from_string(s)) == s);
  for (const std::string s : {"aic", "bic", "gcv"})
    CHECK(to_string(penalty_from_string(s)) == s);
  CHECK_THROWS_AS(penalty_from_string("nope"), std::invalid_argument);
}
