#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "finsler/norms.hpp"

namespace finsler {

/// Linear surjection mu: R^d1 -> R^d2 together with a right inverse R
/// (M R = I) and an orthonormal basis K of ker M. Any fiber of mu is
/// parametrized as u = R v + K w with w in R^(d1-d2).
struct LinearSurjection {
  Eigen::MatrixXd M;
  Eigen::MatrixXd R;
  Eigen::MatrixXd K;

  int domain_dim() const { return static_cast<int>(M.cols()); }
  int range_dim() const { return static_cast<int>(M.rows()); }
  int fiber_dim() const { return static_cast<int>(K.cols()); }
};

/// Builds the decomposition from M via SVD; R is the minimum-norm right
/// inverse. Throws RankDeficient when M lacks full row rank.
LinearSurjection make_surjection(const Eigen::MatrixXd& M);

/// Same kernel basis, caller-chosen right inverse (M R = I required).
/// Lift results do not depend on which right inverse is used.
LinearSurjection make_surjection(const Eigen::MatrixXd& M,
                                 const Eigen::MatrixXd& R);

/// The projection onto the first d2 coordinates, with exact factors
/// M = [I 0], R = [I; 0], K = [0; I].
LinearSurjection coordinate_projection(int d1, int d2);

struct SolverConfig {
  double tol = 1e-11;
  int max_iter = 100;
};

struct LiftSolution {
  Eigen::VectorXd point;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;
};

/// Minimizes F over the fiber mu^-1(v), the nonlinear lift h(v).
///
/// The input is normalized to unit length, the fiber point is found by a
/// damped Newton iteration on the reduced energy w -> E(R v + K w)
/// (Armijo backtracking, convergence when the kernel-direction gradient
/// sup norm falls below tol * max(1, E)), and the result is rescaled.
/// v = 0 returns the zero solution with degenerate set.
///
/// Throws MaxIterations when the budget is exhausted and
/// NonConvexEncountered when the reduced Hessian stops being positive
/// definite or Newton produces an ascent direction; the solver refuses to
/// return a critical point it cannot certify as a minimum.
LiftSolution lift(const NormSpec& spec, const LinearSurjection& surj,
                  const Eigen::VectorXd& v, const SolverConfig& cfg = {});

/// lift with an explicit starting point in kernel coordinates (applied to
/// the normalized problem). Exposed so tests can probe uniqueness.
LiftSolution lift_from(const NormSpec& spec, const LinearSurjection& surj,
                       const Eigen::VectorXd& v, const Eigen::VectorXd& w0,
                       const SolverConfig& cfg = {});

/// F2(v) = F(h(v)), the subduced norm on the target space.
double subduced_norm(const NormSpec& spec, const LinearSurjection& surj,
                     const Eigen::VectorXd& v, const SolverConfig& cfg = {});

/// |F2(lambda v) - lambda F2(v)| for lambda > 0.
double homogeneity_defect(const NormSpec& spec, const LinearSurjection& surj,
                          const Eigen::VectorXd& v, double lambda,
                          const SolverConfig& cfg = {});

/// Certifies that spec2 equals the subduced norm of (spec1, surj): the two
/// values agree on sampled directions (worst_match_defect) and
/// spec2(mu u) <= spec1(u) on sampled domain directions
/// (worst_inequality_defect).
VerificationReport verify_submersion(const NormSpec& spec1,
                                     const LinearSurjection& surj,
                                     const NormSpec& spec2, int n_samples = 500,
                                     std::uint64_t seed = 0, double tol = 1e-9);

/// Grid-search oracle for the subduced norm: exhaustive scan of kernel
/// coordinates over [-grid_radius, grid_radius]^(d1-d2) with grid_steps
/// points per axis, then ten spacing-halving refinement passes around the
/// best cell. Slow and solver-free by design; used to cross-check lift.
double brute_force_subduced(const NormSpec& spec, const LinearSurjection& surj,
                            const Eigen::VectorXd& v, double grid_radius,
                            int grid_steps);

}  // namespace finsler
