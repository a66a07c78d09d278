#include <cmath>
#include <stdexcept>

#include <cmath>

#include "doctest.h"
#include "iir/sim.hpp"

using namespace iir;

TEST_CASE("bundled targets decompose as r = u + b where parts are known") {
  for (const TargetFunction& t : target_suite()) {
    if (!t.u_part || !t.b_part) continue;
    for (int i = 0; i <= 200; ++i) {
      const double x = i / 200.0;
      CHECK(t.r(x) ==
            doctest::Approx((*t.u_part)(x) + (*t.b_part)(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("unknown target name is rejected") {
  CHECK_THROWS_AS(target_by_name("quux"), std::invalid_argument);
}

TEST_CASE("generate is deterministic per seed") {
  Scenario sc{"peak", 50, Noise::gaussian(0.2), {}, 99};
  const SortedSample a = generate(sc);
  const SortedSample b = generate(sc);
  CHECK(a.xs == b.xs);
  CHECK(a.ys == b.ys);
}

TEST_CASE("zero noise reproduces the target exactly") {
  Scenario sc{"sinetrend", 50, Noise::silent(), {}, 3};
  const SortedSample s = generate(sc);
  const TargetFunction& t = target_by_name("sinetrend");
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(s.ys[i] == doctest::Approx(t.r(s.xs[i])).epsilon(1e-15));
}

TEST_CASE("uniform noise respects its bound") {
  Scenario sc{"peak", 200, Noise::uniform(0.3), {}, 8};
  const SortedSample s = generate(sc);
  const TargetFunction& t = target_by_name("peak");
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(std::abs(s.ys[i] - t.r(s.xs[i])) <= 0.3);
}

TEST_CASE("truncated gaussian noise respects its bound") {
  Scenario sc{"peak", 500, Noise::gaussian(0.5), {}, 8};
  const SortedSample s = generate(sc);
  const TargetFunction& t = target_by_name("peak");
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(std::abs(s.ys[i] - t.r(s.xs[i])) <= 1.5);
}

TEST_CASE("unbounded noise configuration is rejected") {
  Scenario sc{"peak", 50,
              Noise{NoiseKind::truncated_gaussian, 1.0,
                    std::numeric_limits<double>::infinity()},
              {}, 1};
  CHECK_THROWS_AS(generate(sc), std::invalid_argument);
}

TEST_CASE("power design law stays in [0,1] and skews right") {
  Scenario sc{"peak", 400, Noise::silent(), {DesignKind::power, 3.0}, 5};
  const SortedSample s = generate(sc);
  double mean = 0;
  for (double x : s.xs) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
    mean += x;
  }
  CHECK(mean / double(s.size()) > 0.6);  // E[X] = 3/4 under alpha = 3
}

TEST_CASE("population cycle on a monotone target has zero error at k=1") {
  const auto curve = population_iir(target_by_name("monotone"), 500, 3);
  CHECK(curve[0] <= 1e-12);
}

TEST_CASE("population error curve decreases for non-monotone targets") {
  for (const TargetFunction& t : target_suite()) {
    if (t.monotone) continue;
    const auto curve = population_iir(t, 400, 60);
    for (std::size_t k = 1; k < curve.size(); ++k)
      CHECK(curve[k] <= curve[k - 1] + 1e-12);
    CHECK(curve.back() < curve.front());
  }
}

TEST_CASE("overfit profile orders RSS and jumps") {
  const OverfitReport r =
      run_overfit_profile("sinetrend", 100, {1, 10, 200},
                          Noise::gaussian(0.25), 10, 2024);
  // Rows come in (seed, k) order, three per seed.
  for (std::size_t i = 0; i + 2 < r.rows.size(); i += 3) {
    CHECK(r.rows[i + 1].rss <= r.rows[i].rss + 1e-12);
    CHECK(r.rows[i + 2].rss <= r.rows[i + 1].rss + 1e-12);
  }
  CHECK(r.median_jumps.back() >= r.median_jumps.front());
}

TEST_CASE("overfit profile on noiseless monotone data is flat") {
  const OverfitReport r = run_overfit_profile("monotone", 50, {1, 10, 100},
                                              Noise::silent(), 3, 1);
  for (std::size_t i = 0; i + 2 < r.rows.size(); i += 3) {
    CHECK(r.rows[i].rss == r.rows[i + 1].rss);
    CHECK(r.rows[i].rss == r.rows[i + 2].rss);
    CHECK(r.rows[i].jumps == r.rows[i + 2].jumps);
  }
}

TEST_CASE("consistency medians decrease with n") {
  const ConsistencyReport r = run_consistency(
      "peak", {40, 160, 640}, Noise::gaussian(0.25),
      StopRule::holdout(0.25, 0, 20), 100, 20, 555);
  REQUIRE(r.median_error.size() == 3);
  CHECK(r.median_error[1] < r.median_error[0]);
  CHECK(r.median_error[2] < r.median_error[1]);
  CHECK(r.rows.size() == 60);
}

TEST_CASE("replicate seeds reproduce metrics bitwise") {
  const ConsistencyReport a =
      run_consistency("steps", {30, 60}, Noise::gaussian(0.2),
                      StopRule::holdout(0.25, 0, 10), 50, 5, 9);
  const ConsistencyReport b =
      run_consistency("steps", {30, 60}, Noise::gaussian(0.2),
                      StopRule::holdout(0.25, 0, 10), 50, 5, 9);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].seed == b.rows[i].seed);
    CHECK(a.rows[i].l2_error == b.rows[i].l2_error);
    CHECK(a.rows[i].selected_k == b.rows[i].selected_k);
  }
}

TEST_CASE("median and iqr") {
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == doctest::Approx(2.5));
  CHECK(interquartile_range({1, 2, 3, 4, 5}) == doctest::Approx(2.0));
}
