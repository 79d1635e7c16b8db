#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "finsler/errors.hpp"

namespace finsler {

enum class NormFamily { euclidean, randers, quartic_root };

/// Parametric description of a positively 1-homogeneous norm on R^n.
///
/// Families:
///   euclidean     F(u) = sqrt(u' A u), A symmetric positive definite
///   randers       F(u) = sqrt(u' A u) + b' u
///   quartic_root  F(u) = (sum_j (u' Q_j u)^2)^(1/4)
///
/// Factories check shapes only. Semantic conditions (definiteness, the
/// randers slope bound b' A^-1 b < 1, PSD Q_j with positive definite sum)
/// are checked by validate() and certified numerically by
/// verify_minkowski(), which reports instead of throwing so that broken
/// inputs can be diagnosed.
struct NormSpec {
  NormFamily family = NormFamily::euclidean;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<Eigen::MatrixXd> Q;

  int dim() const;

  static NormSpec euclidean(Eigen::MatrixXd A);
  static NormSpec randers(Eigen::MatrixXd A, Eigen::VectorXd b);
  static NormSpec quartic_root(std::vector<Eigen::MatrixXd> Q);

  /// Throws Error (or a subclass) on any structural violation: asymmetry
  /// beyond 1e-12, A not positive definite, slope bound failure, Q_j not
  /// PSD, or sum Q_j not positive definite.
  void validate() const;
};

/// F(u). Exact zero at u = 0.
double eval(const NormSpec& spec, const Eigen::VectorXd& u);

/// E(u) = F(u)^2 / 2.
double energy(const NormSpec& spec, const Eigen::VectorXd& u);

/// Gradient of the energy E = F^2/2. Positively 1-homogeneous in u.
Eigen::VectorXd grad_energy(const NormSpec& spec, const Eigen::VectorXd& u);

/// Hessian of the energy, the fundamental tensor g_u. 0-homogeneous in u.
Eigen::MatrixXd hess_energy(const NormSpec& spec, const Eigen::VectorXd& u);

/// Gradient of F itself.
Eigen::VectorXd grad_norm(const NormSpec& spec, const Eigen::VectorXd& u);

/// x . grad F(u) - F(x). Nonpositive for a valid Minkowski norm, with
/// equality iff x is a nonnegative multiple of u.
double fundamental_defect(const NormSpec& spec, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& x);

/// Outcome of a sampled certification run. Defects are normalized where a
/// natural scale exists (homogeneity) and raw otherwise; see
/// verify_minkowski and verify_submersion for which fields each fills.
struct VerificationReport {
  bool passed = false;
  double min_hessian_eigenvalue = 0.0;
  double worst_homogeneity_defect = 0.0;
  double worst_triangle_defect = 0.0;
  double worst_fundamental_defect = 0.0;
  double worst_match_defect = 0.0;
  double worst_inequality_defect = 0.0;
  int samples_used = 0;
  std::optional<Eigen::VectorXd> failure_witness;
};

/// Samples seeded unit directions and certifies: positivity of F,
/// positive homogeneity at scales {0.5, 2, 7}, the triangle inequality,
/// the fundamental inequality, and positive definiteness of the energy
/// Hessian. passed requires every check within tol and the smallest
/// Hessian eigenvalue above tol; the first offending sample is recorded
/// as failure_witness.
VerificationReport verify_minkowski(const NormSpec& spec, int n_samples = 500,
                                    std::uint64_t seed = 0, double tol = 1e-9);

}  // namespace finsler
