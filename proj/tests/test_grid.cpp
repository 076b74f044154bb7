#include <cmath>
#include <random>

#include "doctest.h"
#include "swiftnav/errors.hpp"
#include "swiftnav/grid.hpp"

using namespace swiftnav;

TEST_CASE("neighbor windows") {
  CHECK(neighbor_window(0.0, 0.5, 2).values == std::vector<double>{-0.5, 0.0, 0.5});
  const auto w = neighbor_window(1.0, 0.2, 3);
  const std::vector<double> expect{0.6, 0.8, 1.0, 1.2, 1.4};
  REQUIRE(w.size() == 5);
  for (int j = 0; j < 5; ++j) CHECK(w.values[j] == doctest::Approx(expect[j]).epsilon(1e-15));
  CHECK(w.values[w.center_index()] == 1.0);
  CHECK(neighbor_window(7.0, 0.1, 1).values == std::vector<double>{7.0});
  CHECK_THROWS_AS(neighbor_window(0.0, 0.0, 2), InvalidArgument);
  CHECK_THROWS_AS(neighbor_window(0.0, -1.0, 2), InvalidArgument);
  CHECK_THROWS_AS(neighbor_window(0.0, 0.1, 0), InvalidArgument);
}

TEST_CASE("window spacing and symmetry") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-10.0, 10.0), h(1e-4, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double center = c(rng), step = h(rng);
    const int k = 1 + trial % 40;
    const auto w = neighbor_window(center, step, k);
    REQUIRE(w.size() == static_cast<std::size_t>(2 * k - 1));
    const double ulp = std::nextafter(std::fabs(center) + k * step, HUGE_VAL) -
                       (std::fabs(center) + k * step);
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
      CHECK(std::fabs(w.values[j + 1] - w.values[j] - step) <= 2 * ulp);
    const std::size_t m = w.center_index();
    for (std::size_t d = 1; d < static_cast<std::size_t>(k); ++d)
      CHECK(std::fabs((w.values[m + d] - center) + (w.values[m - d] - center)) <= 2 * ulp);
  }
}

TEST_CASE("in_bounds is inclusive") {
  const auto d = DomainSpec::uniform(2, -10.0, 10.0, 0.2, 3);
  CHECK(in_bounds(-10.0, 0, d));
  CHECK(in_bounds(10.0, 1, d));
  CHECK_FALSE(in_bounds(10.0001, 0, d));
  const auto unit = DomainSpec::uniform(1, 0.0, 1.0, 0.1, 1);
  CHECK(in_bounds(0.0, 0, unit));
}

TEST_CASE("domain validation") {
  CHECK_NOTHROW(DomainSpec::uniform(3, -1.0, 1.0, 0.5, 2).validate());
  CHECK_THROWS_AS(DomainSpec::uniform(1, 1.0, 1.0, 0.1, 2).validate(), InvalidArgument);
  CHECK_THROWS_AS(DomainSpec::uniform(1, 0.0, 1.0, 2.0, 2).validate(), InvalidArgument);
  CHECK_THROWS_AS(DomainSpec::uniform(1, 0.0, 1.0, 0.1, 0).validate(), InvalidArgument);
  CHECK_THROWS_AS(DomainSpec::uniform(1, 0.0, 1.0, 0.0, 1).validate(), InvalidArgument);
}

TEST_CASE("initial samples sit on the base grid") {
  const auto d = DomainSpec::uniform(50, -10.0, 10.0, 0.2, 30);
  std::mt19937_64 a(11), b(11);
  const auto x = sample_initial(d, a);
  CHECK(x == sample_initial(d, b));
  CHECK(d.contains(x));
  for (double v : x) {
    const double steps = (v + 10.0) / 0.2;
    CHECK(std::fabs(steps - std::round(steps)) < 1e-9);
  }
  CHECK(grid_point_count(-10.0, 10.0, 0.2) == 101);
  CHECK(grid_point_count(0.0, 2.5, 0.2) == 13);
}

TEST_CASE("degenerate box samples the lower corner") {
  DomainSpec d;
  d.lower = {0.0, 0.0};
  d.upper = {0.0, 0.0};
  d.base_step = 0.1;
  std::mt19937_64 rng(1);
  CHECK(sample_initial(d, rng) == std::vector<double>{0.0, 0.0});
}
