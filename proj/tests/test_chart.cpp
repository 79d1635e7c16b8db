#include <doctest.h>

#include <cmath>
#include <string>

#include "finsler/chart.hpp"
#include "finsler/json_io.hpp"
#include "helpers.hpp"

using namespace finsler;
using testutil::mat;
using testutil::vec;

namespace {

const std::string kDataDir = FINSLER_DATA_DIR;

ChartFinsler load_chart(const std::string& name) {
  return chart_from_json(load_json_file(kDataDir + "/" + name));
}

}  // namespace

TEST_CASE("materialization substitutes the polynomial entries") {
  const auto ydep = load_chart("chart_ydep.json");
  const auto at1 = ydep.at(vec({0}), vec({1}));
  CHECK(at1.A(0, 0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(at1.A(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(at1.A(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
  const auto at0 = ydep.at(vec({0.5}), vec({0}));
  CHECK(at0.A(0, 0) == doctest::Approx(2.0).epsilon(1e-14));

  const auto xdep = load_chart("chart_xdep.json");
  CHECK(xdep.at(vec({0.7}), vec({0})).A(0, 0) ==
        doctest::Approx(1.49).epsilon(1e-14));
}

TEST_CASE("off-diagonal dependencies keep the matrix symmetric") {
  ChartDep dep;
  dep.target = "A[0][1]";
  dep.monomials = {{{1}, {0}, 1.0}};
  const ChartFinsler cf(1, 1, NormSpec::euclidean(mat({{4, 0}, {0, 4}})), {dep});
  const auto spec = cf.at(vec({0.5}), vec({0}));
  CHECK(spec.A(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(spec.A(1, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("fiber box defaults to the unit cube") {
  const auto cf = load_chart("chart_const.json");
  CHECK(cf.y_box_lo()[0] == -1.0);
  CHECK(cf.y_box_hi()[0] == 1.0);
}

TEST_CASE("constructor validates targets and shapes") {
  const auto base = NormSpec::euclidean(mat({{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(ChartFinsler(1, 1, base, {{"A[0]", {{{0}, {0}, 1.0}}}}), Error);
  CHECK_THROWS_AS(ChartFinsler(1, 1, base, {{"A[5][0]", {{{0}, {0}, 1.0}}}}),
                  Error);
  CHECK_THROWS_AS(ChartFinsler(1, 1, base, {{"b[0]", {{{0}, {0}, 1.0}}}}), Error);
  CHECK_THROWS_AS(ChartFinsler(1, 1, base, {{"A[0][0]", {{{0, 0}, {0}, 1.0}}}}),
                  Error);
  CHECK_THROWS_AS(
      ChartFinsler(2, 1, NormSpec::euclidean(Eigen::MatrixXd::Identity(2, 2)), {}),
      DimensionMismatch);
}

TEST_CASE("splitting coefficients reproduce the planar lift") {
  const auto cf = load_chart("chart_const.json");
  const Eigen::VectorXd w = splitting_coeffs(cf, vec({0.3}), vec({0.2}), vec({1}));
  REQUIRE(w.size() == 1);
  CHECK(std::abs(w[0] - testutil::kPlanarLiftSlope) < 1e-8);
  // Positive 1-homogeneity in the velocity.
  const Eigen::VectorXd w2 = splitting_coeffs(cf, vec({0.3}), vec({0.2}), vec({2}));
  CHECK(std::abs(w2[0] - 2.0 * w[0]) < 1e-8);
}

TEST_CASE("tangency vanishes identically without fiber dependence") {
  const auto cfs = {load_chart("chart_const.json"), load_chart("chart_xdep.json")};
  for (const auto& cf : cfs) {
    for (double y : {-0.8, 0.0, 0.5}) {
      const Eigen::VectorXd d = tangency_defect(cf, vec({0.4}), vec({y}), vec({1}));
      CHECK(d.lpNorm<Eigen::Infinity>() <= 1e-10);
    }
  }
}

TEST_CASE("tangency detects genuine fiber dependence") {
  const auto cf = load_chart("chart_ydep.json");
  const Eigen::VectorXd d = tangency_defect(cf, vec({0}), vec({1}), vec({1}));
  REQUIRE(d.size() == 1);
  // The energy derivative in y at the frozen lift is y v^2 here, so the
  // central difference is exact.
  CHECK(std::abs(d[0] - 1.0) < 1e-9);
  CHECK(d.lpNorm<Eigen::Infinity>() > 1e-3);
  // At the symmetric fiber point the derivative vanishes.
  CHECK(tangency_defect(cf, vec({0}), vec({0}), vec({1})).lpNorm<Eigen::Infinity>() <
        1e-10);
}

TEST_CASE("fiber independence holds when tangency does") {
  const auto cf = load_chart("chart_xdep.json");
  CHECK(fiber_independence_defect(cf, vec({0.4}), vec({-0.5}), vec({0.5}),
                                  vec({1})) < 1e-10);
}

TEST_CASE("fiber independence refuses to run without tangency") {
  const auto cf = load_chart("chart_ydep.json");
  CHECK_THROWS_AS(fiber_independence_defect(cf, vec({0}), vec({0.5}), vec({-0.5}),
                                            vec({1})),
                  TangencyViolated);
}

TEST_CASE("subduced chart norm matches the closed forms") {
  const auto cf_const = load_chart("chart_const.json");
  CHECK(subduced_finsler(cf_const, vec({0}), vec({1})) ==
        doctest::Approx(testutil::kPlanarSubPlus).epsilon(1e-9));
  CHECK(subduced_finsler(cf_const, vec({0}), vec({-1})) ==
        doctest::Approx(testutil::kPlanarSubMinus).epsilon(1e-9));

  const auto cf_x = load_chart("chart_xdep.json");
  // Diagonal family: the kernel coordinate drops out and
  // F2(x, v) = sqrt(1 + x^2) |v|.
  CHECK(subduced_finsler(cf_x, vec({0.7}), vec({2})) ==
        doctest::Approx(2.0 * std::sqrt(1.49)).epsilon(1e-9));
}

TEST_CASE("subduced chart norm agrees with a grid oracle") {
  const auto cf = load_chart("chart_xdep.json");
  const Eigen::VectorXd x = vec({1.2});
  const double direct = subduced_finsler(cf, x, vec({1}));
  const auto frozen = cf.at(x, vec({0}));
  const double brute =
      brute_force_subduced(frozen, coordinate_projection(2, 1), vec({1}), 2.0, 401);
  CHECK(std::abs(direct - brute) < 2e-4);
}

TEST_CASE("subduced chart norm rejects families that bend the fibers") {
  const auto cf = load_chart("chart_ydep.json");
  CHECK_THROWS_AS(subduced_finsler(cf, vec({0}), vec({1})), TangencyViolated);
}
