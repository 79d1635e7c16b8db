#include <doctest.h>

#include <cmath>

#include "finsler/euclid.hpp"
#include "finsler/lie.hpp"
#include "finsler/rng.hpp"
#include "helpers.hpp"

using namespace finsler;
using testutil::mat;
using testutil::vec;

TEST_CASE("inner_product_at returns the fundamental tensor at the point") {
  const auto spec = NormSpec::euclidean(mat({{2, 1}, {1, 2}}));
  const auto ip = inner_product_at(spec, vec({0.3, -2.0}));
  CHECK((ip.G - spec.A).norm() < 1e-14);
  CHECK(testutil::sup_diff(ip.base_point, vec({0.3, -2.0})) == 0.0);

  // Non-euclidean tensors vary with direction but not with scale.
  const auto randers = testutil::planar_randers();
  const auto g1 = inner_product_at(randers, vec({1, 0})).G;
  const auto g2 = inner_product_at(randers, vec({0, 1})).G;
  const auto g3 = inner_product_at(randers, vec({3, 0})).G;
  CHECK((g1 - g2).lpNorm<Eigen::Infinity>() > 1e-3);
  CHECK((g1 - g3).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("lift jacobian of a linear lift is its matrix") {
  const auto spec = NormSpec::euclidean(mat({{2, 1}, {1, 2}}));
  const auto surj = coordinate_projection(2, 1);
  const Eigen::MatrixXd J = lift_jacobian(spec, surj, vec({1.5}));
  CHECK(std::abs(J(0, 0) - 1.0) < 1e-9);
  CHECK(std::abs(J(1, 0) + 0.5) < 1e-9);
}

TEST_CASE("lift jacobian of the planar example on the positive ray") {
  const auto spec = testutil::planar_randers();
  const auto surj = make_surjection(mat({{1, 0}}));
  const Eigen::MatrixXd J = lift_jacobian(spec, surj, vec({1}));
  CHECK(std::abs(J(0, 0) - 1.0) < 1e-6);
  CHECK(std::abs(J(1, 0) - testutil::kPlanarLiftSlope) < 1e-6);
}

TEST_CASE("projection composed with the lift jacobian is the identity") {
  const auto spec = lie::candidate_norms().fhat;
  const auto surj = coordinate_projection(6, 3);
  Rng rng(401);
  const Eigen::VectorXd v = rng.sphere(3);
  const Eigen::MatrixXd J = lift_jacobian(spec, surj, v);
  CHECK((surj.M * J - Eigen::MatrixXd::Identity(3, 3)).lpNorm<Eigen::Infinity>() <
        1e-8);
}

TEST_CASE("one-homogeneity of the lift via its jacobian") {
  const auto spec = lie::candidate_norms().ftilde;
  const auto surj = coordinate_projection(6, 3);
  Rng rng(402);
  for (int i = 0; i < 3; ++i) {
    const Eigen::VectorXd v = rng.uniform(0.5, 2.0) * rng.sphere(3);
    const Eigen::MatrixXd J = lift_jacobian(spec, surj, v);
    const auto sol = lift(spec, surj, v);
    CHECK(testutil::sup_diff(J * v, sol.point) < 1e-6);
  }
}

TEST_CASE("horizontality for a euclidean norm is exact") {
  const auto spec = NormSpec::euclidean(mat({{2, 1}, {1, 2}}));
  const auto surj = coordinate_projection(2, 1);
  CHECK(horizontality_defect(spec, surj, vec({1})) < 1e-9);
  CHECK(horizontality_defect(spec, surj, vec({-2.4})) < 1e-9);
}

TEST_CASE("horizontality holds at the lifted points of curved norms") {
  const auto surj2 = make_surjection(mat({{1, 0}}));
  CHECK(horizontality_defect(testutil::planar_randers(), surj2, vec({1})) < 1e-5);
  CHECK(horizontality_defect(testutil::planar_randers(), surj2, vec({-1})) < 1e-5);

  const auto surj6 = coordinate_projection(6, 3);
  Rng rng(403);
  for (int i = 0; i < 3; ++i) {
    const Eigen::VectorXd v = rng.sphere(3);
    CHECK(horizontality_defect(lie::candidate_norms().fhat, surj6, v) < 1e-5);
    CHECK(horizontality_defect(lie::candidate_norms().ftilde, surj6, v) < 1e-5);
  }
}

TEST_CASE("subduced hessian equals the pulled-back tensor, euclidean case") {
  const auto spec = NormSpec::euclidean(mat({{2, 1}, {1, 2}}));
  const auto surj = coordinate_projection(2, 1);
  CHECK(euclidean_submersion_defect(spec, surj, vec({1}), vec({1}), vec({1})) <
        1e-9);
}

TEST_CASE("subduced hessian equals the pulled-back tensor, curved case") {
  const auto surj2 = make_surjection(mat({{1, 0}}));
  CHECK(euclidean_submersion_defect(testutil::planar_randers(), surj2, vec({1}),
                                    vec({1}), vec({1})) < 1e-4);

  const auto surj6 = coordinate_projection(6, 3);
  Rng rng(404);
  for (int i = 0; i < 3; ++i) {
    const Eigen::VectorXd v = rng.sphere(3);
    const Eigen::VectorXd x = rng.sphere(3);
    const Eigen::VectorXd y = rng.sphere(3);
    CHECK(euclidean_submersion_defect(lie::candidate_norms().fhat, surj6, v, x,
                                      y) < 1e-4);
  }
}

TEST_CASE("derivative machinery rejects the origin and bad probe shapes") {
  const auto spec = NormSpec::euclidean(mat({{2, 1}, {1, 2}}));
  const auto surj = coordinate_projection(2, 1);
  CHECK_THROWS_AS(lift_jacobian(spec, surj, vec({0})), ZeroVector);
  CHECK_THROWS_AS(euclidean_submersion_defect(spec, surj, vec({1}), vec({1, 2}),
                                              vec({1})),
                  DimensionMismatch);
}
