#include "doctest.h"
#include "support.hpp"

#include "equipart/oracle.hpp"

#include <atomic>
#include <cmath>

using namespace equipart;

TEST_CASE("oracle masses equal direct masses") {
  std::mt19937_64 rng(61);
  const Measure m = testing::random_mixture(rng, 3, 3);
  const MassOracle o = make_oracle(m);
  CHECK(o.dim == 3);
  CHECK(o.total == total_mass(m));
  CHECK(o.granularity == 0.0);
  const Configuration c = testing::random_config(rng, 3);
  CHECK(testing::max_abs_diff(o.masses(c), orthant_masses(m, c)) == 0.0);
  const Measure cloud = testing::random_cloud(rng, 2, 10);
  CHECK(make_oracle(cloud).granularity == doctest::Approx(cloud.max_atom()));
  CHECK(make_oracle(cloud).residual_floor() == doctest::Approx(cloud.max_atom() / total_mass(cloud)));
}

TEST_CASE("blend interpolates normalised masses") {
  std::mt19937_64 rng(62);
  const Measure a = testing::random_mixture(rng, 2, 2), b = testing::random_cloud(rng, 2, 30);
  const MassOracle bl = blend(make_oracle(a), make_oracle(b), 0.3);
  const Configuration c = testing::random_config(rng, 2);
  const auto ma = orthant_masses(a, c), mb = orthant_masses(b, c), mt = bl.masses(c);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(mt[k] - (0.7 * ma[k] / total_mass(a) + 0.3 * mb[k] / total_mass(b))) < 1e-14);
  CHECK(std::abs(bl.total - 1.0) < 1e-15);
  CHECK_THROWS_AS(blend(make_oracle(a), make_oracle(testing::random_cloud(rng, 3, 5)), 0.5), InputError);
}

TEST_CASE("frame changes preserve masses") {
  std::mt19937_64 rng(63);
  const Measure m = testing::random_cloud(rng, 4, 100);
  Mat lin = Mat::Random(4, 4) + 2.0 * Mat::Identity(4, 4);
  const AffineFrame frame{lin, make_vec({0.5, -1, 0.2, 0.3})};
  const MassOracle local = in_frame(make_oracle(m), frame);
  for (int trial = 0; trial < 20; ++trial) {
    const Configuration cy = testing::random_config(rng, 4);
    const Configuration cx = frame.to_world(cy);
    CHECK(testing::max_abs_diff(local.masses(cy), orthant_masses(m, cx)) < 1e-12);
    CHECK(config_distance(frame.to_local(cx), cy) < 1e-12);
  }
}

TEST_CASE("halving offsets split the mass") {
  std::mt19937_64 rng(64);
  const Measure m = testing::random_mixture(rng, 3, 2);
  const MassOracle o = make_oracle(m);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec a = testing::random_unit(rng, 3);
    const double c = halving_offset(o, a);
    const auto masses = orthant_masses(m, Configuration::from_hyperplanes({Hyperplane::make(a, c)}));
    CHECK(std::abs(masses[0] - masses[1]) < 1e-9 * total_mass(m));
  }
  // Eight atoms on a line: any offset strictly between the fourth and fifth halves.
  PointCloud pc;
  pc.dim = 2;
  for (int k = 0; k < 8; ++k) {
    pc.points.push_back(make_vec({static_cast<double>(k), 0.0}));
    pc.weights.push_back(1.0);
  }
  const double c = halving_offset(make_oracle(Measure(pc)), make_vec({1, 0}));
  CHECK(c > 3.0);
  CHECK(c <= 4.0);
}

TEST_CASE("parallel_for visits every index once") {
  for (unsigned workers : {1U, 3U}) {
    set_worker_count(workers);
    CHECK(worker_count() == workers);
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  set_worker_count(0);
  CHECK(worker_count() >= 1);
  CHECK_THROWS_AS(parallel_for(4, [](std::size_t i) {
                    if (i == 2) throw InputError("boom");
                  }),
                  InputError);
}
