#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "csv/color_names.hpp"
#include "csv/emd.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

namespace {

csv::CostMatrix random_cost(int m, int n, std::uint32_t seed) {
  csv::CostMatrix cost(m, n);
  const auto values = synthetic::random_masses(m * n, seed);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) cost.at(i, j) = values[i * n + j] * m * n;
  }
  return cost;
}

csv::CostMatrix symmetric_cost(int n, std::uint32_t seed) {
  csv::CostMatrix cost(n, n);
  const auto values = synthetic::random_masses(n * n, seed);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      cost.at(i, j) = cost.at(j, i) = values[i * n + j];
    }
  }
  return cost;
}

}  // namespace

TEST_CASE("identical distributions cost nothing") {
  const csv::GroundDistanceMatrix d;
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const auto a = synthetic::random_masses(csv::kColorNameCount, seed);
    CHECK(csv::emd(a, a, d.cost()) == 0.0);
  }
}

TEST_CASE("one-hot pairs return the ground distance exactly") {
  const csv::GroundDistanceMatrix d;
  for (int k = 0; k < csv::kColorNameCount; ++k) {
    for (int l = 0; l < csv::kColorNameCount; ++l) {
      const auto a = synthetic::one_hot(k);
      const auto b = synthetic::one_hot(l);
      CHECK(csv::emd(a.probs, b.probs, d.cost()) == d.at(k, l));
    }
  }
}

TEST_CASE("random pairs match the LP oracle at several sizes") {
  for (int n : {2, 3, 4, 11}) {
    for (std::uint32_t seed = 0; seed < 50; ++seed) {
      const auto a = synthetic::random_masses(n, 1000 + seed);
      const auto b = synthetic::random_masses(n, 2000 + seed);
      const auto cost = random_cost(n, n, 3000 + seed);
      const double got = csv::emd(a, b, cost);
      const double want = oracle::lp_emd(a, b, cost);
      CHECK(std::fabs(got - want) < 1e-9);
    }
  }
}

TEST_CASE("sparse distributions match the LP oracle") {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    auto a = synthetic::random_masses(11, 4000 + seed);
    auto b = synthetic::random_masses(11, 5000 + seed);
    // Zero several bins and renormalize, exercising the reduction path.
    for (int i = 0; i < 11; i += 2) a[i] = 0.0;
    for (int i = 1; i < 11; i += 3) b[i] = 0.0;
    double sa = 0.0, sb = 0.0;
    for (double v : a) sa += v;
    for (double v : b) sb += v;
    for (double& v : a) v /= sa;
    for (double& v : b) v /= sb;
    const auto cost = random_cost(11, 11, 6000 + seed);
    CHECK(std::fabs(csv::emd(a, b, cost) - oracle::lp_emd(a, b, cost)) < 1e-9);
  }
}

TEST_CASE("symmetric under a symmetric ground distance") {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const auto a = synthetic::random_masses(7, 7000 + seed);
    const auto b = synthetic::random_masses(7, 8000 + seed);
    const auto cost = symmetric_cost(7, 9000 + seed);
    CHECK(std::fabs(csv::emd(a, b, cost) - csv::emd(b, a, cost)) < 1e-9);
  }
}

TEST_CASE("triangle inequality holds with the default color distances") {
  const csv::GroundDistanceMatrix d;
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    const auto a = synthetic::random_descriptor(100 + seed);
    const auto b = synthetic::random_descriptor(200 + seed);
    const auto c = synthetic::random_descriptor(300 + seed);
    const double ab = csv::emd(a.probs, b.probs, d.cost());
    const double bc = csv::emd(b.probs, c.probs, d.cost());
    const double ac = csv::emd(a.probs, c.probs, d.cost());
    CHECK(ac <= ab + bc + 1e-9);
  }
}

TEST_CASE("results stay within [0, max ground distance]") {
  const csv::GroundDistanceMatrix d;
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    const auto a = synthetic::random_descriptor(400 + seed);
    const auto b = synthetic::random_descriptor(500 + seed);
    const double v = csv::emd(a.probs, b.probs, d.cost());
    CHECK(v >= 0.0);
    CHECK(v <= d.max_distance() + 1e-12);
  }
}

TEST_CASE("unbalanced marginals are rejected") {
  const csv::GroundDistanceMatrix d;
  auto a = synthetic::random_masses(csv::kColorNameCount, 1);
  auto b = synthetic::random_masses(csv::kColorNameCount, 2);
  b[0] += 0.01;
  CHECK_THROWS_AS(csv::emd(a, b, d.cost()), std::invalid_argument);
  a[3] = -0.1;
  CHECK_THROWS_AS(csv::emd(a, b, d.cost()), std::invalid_argument);
}

TEST_CASE("size mismatches are rejected") {
  const auto a = synthetic::random_masses(5, 1);
  const auto b = synthetic::random_masses(4, 2);
  CHECK_THROWS_AS(csv::emd(a, b, csv::CostMatrix(5, 5)), std::invalid_argument);
}
