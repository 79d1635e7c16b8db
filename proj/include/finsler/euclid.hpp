#pragma once

#include <Eigen/Dense>

#include "finsler/minksub.hpp"

namespace finsler {

/// The fundamental tensor of spec at u, packaged with its base point.
/// For a euclidean spec G is constant; in general it varies with the
/// direction but not with the scale of u.
struct InnerProductAt {
  Eigen::VectorXd base_point;
  Eigen::MatrixXd G;
};

InnerProductAt inner_product_at(const NormSpec& spec, const Eigen::VectorXd& u);

/// Jacobian of the lift map at v by central differences, one solve per
/// coordinate direction, step fd_step * |v|.
Eigen::MatrixXd lift_jacobian(const NormSpec& spec, const LinearSurjection& surj,
                              const Eigen::VectorXd& v, double fd_step = 1e-5,
                              const SolverConfig& cfg = {});

/// Worst inner product, suitably normalized, between a lift Jacobian
/// column and a kernel basis vector with respect to the fundamental
/// tensor at the lifted point. Small values certify that the image of the
/// differential of the lift is the g-orthogonal complement of the kernel.
double horizontality_defect(const NormSpec& spec, const LinearSurjection& surj,
                            const Eigen::VectorXd& v, double fd_step = 1e-5,
                            const SolverConfig& cfg = {});

/// Compares the Hessian of the subduced energy with the pullback of the
/// fundamental tensor through the lift Jacobian:
///   | x' H2(v) y  -  (J x)' G1 (J y) |  /  (|G1|_F |x| |y|).
/// H2 is formed by second-order central differences of the subduced
/// energy values, so fd_step defaults coarser than first-order use.
double euclidean_submersion_defect(const NormSpec& spec,
                                   const LinearSurjection& surj,
                                   const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y,
                                   double fd_step = 1e-3,
                                   const SolverConfig& cfg = {});

}  // namespace finsler
