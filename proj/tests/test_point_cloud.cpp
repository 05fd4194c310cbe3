#include "doctest.h"
#include "support.hpp"

#include "equipart/curve.hpp"
#include "equipart/solver.hpp"

#include <cmath>
#include <random>

using namespace equipart;

namespace {

std::vector<Vec> hypercube() {
  std::vector<Vec> pts;
  for (int b = 0; b < 16; ++b) pts.push_back(make_vec({b & 1 ? 1.0 : -1.0, b & 2 ? 1.0 : -1.0, b & 4 ? 1.0 : -1.0, b & 8 ? 1.0 : -1.0}));
  return pts;
}

}  // namespace

TEST_CASE("open orthant counts against direct sign tests") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Configuration c = testing::random_config(rng, 4);
    std::vector<Vec> pts;
    for (int i = 0; i < 64; ++i) pts.push_back(testing::random_point(rng, 4));
    std::vector<int> expect(16, 0);
    for (const Vec& p : pts) {
      int cell = 0;
      bool open = true;
      for (int i = 0; i < 4; ++i) {
        const double s = c.u[static_cast<std::size_t>(i)].head(4).dot(p) + c.u[static_cast<std::size_t>(i)](4);
        if (s == 0.0) open = false;
        if (s < 0.0) cell |= 1 << i;
      }
      if (open) ++expect[static_cast<std::size_t>(cell)];
    }
    CHECK(open_orthant_counts(pts, c) == expect);
  }
  // Points on a hyperplane are in no open orthant.
  const Configuration axes = Configuration::from_hyperplanes({Hyperplane::make(make_vec({1, 0, 0, 0}), 0), Hyperplane::make(make_vec({0, 1, 0, 0}), 0),
                                                              Hyperplane::make(make_vec({0, 0, 1, 0}), 0), Hyperplane::make(make_vec({0, 0, 0, 1}), 0)});
  const auto counts = open_orthant_counts({make_vec({0, 1, 1, 1}), make_vec({1, 1, 1, 1})}, axes);
  int total = 0;
  for (int k : counts) total += k;
  CHECK(total == 1);
  CHECK(counts[0] == 1);
}

TEST_CASE("cloud input validation") {
  CHECK_THROWS_AS(partition_point_cloud(hypercube(), 0), InputError);
  CHECK_THROWS_AS(partition_point_cloud(hypercube(), 2), InputError);
  auto dup = hypercube();
  dup[3] = dup[4];
  CHECK_THROWS_AS(partition_point_cloud(dup, 1), InputError);
  CloudOptions o;
  o.plane = Subspace{Vec::Zero(4), {make_vec({0, 0, 1, 0}), make_vec({0, 0, 0, 1})}};
  auto skew = hypercube();
  skew[0](0) = -1.5;
  CHECK_THROWS_AS(partition_point_cloud(skew, 1, o), InputError);
}

TEST_CASE("hypercube vertices: one point per orthant") {
  CloudOptions o;
  o.plane = Subspace{Vec::Zero(4), {make_vec({0, 0, 1, 0}), make_vec({0, 0, 0, 1})}};
  const CloudReport r = partition_point_cloud(hypercube(), 1, o);
  CHECK(r.certified);
  CHECK(r.bound == 1);
  CHECK(r.max_count <= 1);
}

TEST_CASE("samples on the curve: one point per orthant") {
  const double c = 0.02;
  std::vector<Vec> pts;
  for (int j = 0; j < 16; ++j) pts.push_back(gamma4(j * kPi / 8 + 0.01));
  CloudOptions o;
  o.plane = Subspace{Vec::Zero(4), {make_vec({std::cos(c / 2), std::sin(c / 2), 0, 0}), make_vec({0, 0, std::cos(c), std::sin(c)})}};
  const CloudReport r = partition_point_cloud(pts, 1, o);
  CHECK(r.certified);
  CHECK(r.max_count <= 1);
}

TEST_CASE("general position cloud uses the doubled bound") {
  std::mt19937_64 rng(9);
  std::vector<Vec> pts;
  for (int i = 0; i < 16; ++i) pts.push_back(testing::random_point(rng, 4));
  const CloudReport r = partition_point_cloud(pts, 1);
  CHECK(r.bound == 2);
  if (r.certified) CHECK(r.max_count <= 2);
  int total = 0;
  for (int k : r.counts) total += k;
  CHECK(total <= 16);
}
