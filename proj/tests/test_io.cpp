#include "doctest.h"
#include "support.hpp"

#include "equipart/io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <string>

using namespace equipart;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_json(text, "in.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse errors carry line and column") {
  CHECK(error_of("{\"a\": 1,\n  \"b\": ]}").rfind("in.json:2:", 0) == 0);
  CHECK(error_of("[1, 2,, 3]").rfind("in.json:1:", 0) == 0);
  const std::string e = error_of("{\n\n   x}");
  CHECK(e.rfind("in.json:3:4:", 0) == 0);
  CHECK(error_of("{\"ok\": true}").empty());
}

TEST_CASE("json argument: inline text or file") {
  CHECK(json_argument("  [1,2]").size() == 2);
  CHECK_THROWS_AS(json_argument("/definitely/not/here.json"), InputError);
  const std::string path = "io_test_tmp.json";
  {
    std::ofstream f(path);
    f << "{\"dim\": 2}";
  }
  CHECK(json_argument(path)["dim"] == 2);
  std::remove(path.c_str());
}

TEST_CASE("vector round trip is exact") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec v = testing::random_point(rng, 1 + trial % 5, 1e3);
    const Json j = parse_json(dump(vec_to_json(v)));
    CHECK(vec_from_json(j, "v") == v);
  }
  CHECK_THROWS_AS(vec_from_json(Json::array(), "v"), InputError);
  CHECK_THROWS_AS(vec_from_json(Json::parse("[1,2,3,4,5,6]"), "v"), InputError);
  CHECK_THROWS_AS(vec_from_json(Json::parse("[1,\"x\"]"), "v"), InputError);
}

TEST_CASE("measure round trips") {
  std::mt19937_64 rng(11);
  SUBCASE("points") {
    const Measure m = testing::random_cloud(rng, 3, 25);
    const Measure back = measure_from_json(parse_json(dump(measure_to_json(m))));
    const auto& a = std::get<PointCloud>(m.variant());
    const auto& b = std::get<PointCloud>(back.variant());
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
    CHECK(a.weights == b.weights);
  }
  SUBCASE("mixture masses survive") {
    const Measure m = testing::random_mixture(rng, 3, 4);
    const Measure back = measure_from_json(parse_json(dump(measure_to_json(m))));
    for (int t = 0; t < 5; ++t) {
      const Configuration c = testing::random_config(rng, 3);
      CHECK(testing::max_abs_diff(orthant_masses(m, c), orthant_masses(back, c)) < 1e-12);
    }
  }
  SUBCASE("grid") {
    const Json j = Json::parse(R"({"type":"grid","dim":2,"lower":[0,0],"upper":[2,1],"resolution":[2,2],"density":[1,2,3,4]})");
    const Measure m = measure_from_json(j);
    CHECK(total_mass(m) == doctest::Approx(5.0));
    const Json out = measure_to_json(m);
    CHECK(out["density"] == j["density"]);
    CHECK(out["resolution"] == j["resolution"]);
  }
  SUBCASE("curve") {
    const Json j = Json::parse(R"({"type":"curve","curve":"moment","dim":4,"density":[1,0.5]})");
    const Measure m = measure_from_json(j);
    const Measure back = measure_from_json(measure_to_json(m));
    CHECK(total_mass(back) == doctest::Approx(total_mass(m)).epsilon(1e-14));
    CHECK(total_mass(m) == doctest::Approx(1.25));
  }
}

TEST_CASE("measure schema errors") {
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"dim":2})")), InputError);
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"type":"blob","dim":2})")), InputError);
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"type":"points","dim":2.5,"points":[]})")), InputError);
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"type":"curve","curve":"helix","dim":4})")), InputError);
  CHECK_THROWS_AS(measure_from_json(Json::parse(
                      R"({"type":"gaussian_mixture","dim":2,"components":[{"mean":[0,0],"cov":[[1,2],[2,1]]}]})")),
                  InputError);
  CHECK_THROWS_AS(measure_from_json(Json::parse(
                      R"({"type":"gaussian_mixture","dim":2,"components":[{"mean":[0,0],"sigma":0}]})")),
                  InputError);
  CHECK_THROWS_AS(measure_from_json(Json::parse(
                      R"({"type":"gaussian_mixture","dim":2,"components":[{"mean":[0,0],"cov":[[1,0.5],[0,1]]}]})")),
                  InputError);
}

TEST_CASE("configuration round trip and both input forms") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Configuration c = testing::random_config(rng, 2 + trial % 3);
    const Configuration back = config_from_json(parse_json(dump(config_to_json(c))));
    REQUIRE(back.count() == c.count());
    for (int i = 0; i < c.count(); ++i) CHECK((back.u[static_cast<std::size_t>(i)] - c.u[static_cast<std::size_t>(i)]).norm() < 1e-15);
  }
  const Configuration h = config_from_json(Json::parse(R"({"dim":2,"hyperplanes":[{"a":[2,0],"c":1},{"a":[0,1],"c":0}]})"));
  CHECK(h.count() == 2);
  const Hyperplane first = unlift(h.u[0]);
  CHECK(first.a(0) == doctest::Approx(1.0));
  CHECK(first.c == doctest::Approx(0.5));
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"dim":2,"u":[[1,0]]})")), InputError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"dim":2,"hyperplanes":[]})")), InputError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"dim":3,"hyperplanes":[{"a":[1,0],"c":0}]})")), InputError);
}

TEST_CASE("subspace round trip") {
  Subspace s{make_vec({1, 2, 3, 4}), {make_vec({0, 0, 1, 0}), make_vec({0, 0, 0, 1})}};
  const Subspace back = subspace_from_json(parse_json(dump(subspace_to_json(s))));
  CHECK(back.point == s.point);
  REQUIRE(back.directions.size() == 2);
  CHECK(back.directions[1] == s.directions[1]);
  CHECK_THROWS_AS(subspace_from_json(Json::parse(R"({"directions":[]})")), InputError);
}

TEST_CASE("report json fields") {
  SolveReport r;
  r.status = Status::converged;
  r.method = "sweep";
  r.residual = 1e-13;
  r.config = Configuration::from_hyperplanes({Hyperplane::make(make_vec({1, 0}), 0), Hyperplane::make(make_vec({0, 1}), 0)});
  r.masses = {1, 1, 1, 1};
  const Json j = report_to_json(r);
  CHECK(j["status"] == "converged");
  CHECK(j["hyperplanes"].size() == 2);
  CHECK(j["delta_condition"] == true);
  CHECK(j["masses"].size() == 4);
  CHECK_FALSE(j.contains("path"));
}
