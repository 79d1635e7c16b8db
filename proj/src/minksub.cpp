#include "finsler/minksub.hpp"

#include <cmath>
#include <vector>

#include "finsler/rng.hpp"

namespace finsler {

namespace {

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto d1 = M.cols();
  const auto d2 = M.rows();
  if (d2 > d1) throw RankDeficient("M has more rows than columns");
  const double smax = svd.singularValues()(0);
  const double cutoff =
      smax * static_cast<double>(std::max(d1, d2)) *
      std::numeric_limits<double>::epsilon();
  if (!(svd.singularValues()(d2 - 1) > cutoff)) {
    throw RankDeficient("M does not have full row rank");
  }
  return svd.matrixV().rightCols(d1 - d2);
}

void require_lift_dims(const NormSpec& spec, const LinearSurjection& surj,
                       const Eigen::VectorXd& v) {
  if (spec.dim() != surj.domain_dim()) {
    throw DimensionMismatch("norm dimension does not match surjection domain");
  }
  if (v.size() != surj.range_dim()) {
    throw DimensionMismatch("vector dimension does not match surjection range");
  }
}

}  // namespace

LinearSurjection make_surjection(const Eigen::MatrixXd& M) {
  LinearSurjection s;
  s.M = M;
  s.K = kernel_basis(M);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  s.R = svd.matrixV() *
        svd.singularValues().cwiseInverse().asDiagonal() *
        svd.matrixU().transpose();
  return s;
}

LinearSurjection make_surjection(const Eigen::MatrixXd& M,
                                 const Eigen::MatrixXd& R) {
  if (R.rows() != M.cols() || R.cols() != M.rows()) {
    throw DimensionMismatch("right inverse has the wrong shape");
  }
  LinearSurjection s;
  s.M = M;
  s.K = kernel_basis(M);
  const double defect =
      (M * R - Eigen::MatrixXd::Identity(M.rows(), M.rows()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > 1e-10) {
    throw Error("R is not a right inverse of M (defect " +
                std::to_string(defect) + ")");
  }
  s.R = R;
  return s;
}

LinearSurjection coordinate_projection(int d1, int d2) {
  if (d2 > d1 || d2 < 1) throw RankDeficient("invalid projection dimensions");
  LinearSurjection s;
  s.M = Eigen::MatrixXd::Zero(d2, d1);
  s.M.leftCols(d2).setIdentity();
  s.R = Eigen::MatrixXd::Zero(d1, d2);
  s.R.topRows(d2).setIdentity();
  s.K = Eigen::MatrixXd::Zero(d1, d1 - d2);
  s.K.bottomRows(d1 - d2).setIdentity();
  return s;
}

LiftSolution lift_from(const NormSpec& spec, const LinearSurjection& surj,
                       const Eigen::VectorXd& v, const Eigen::VectorXd& w0,
                       const SolverConfig& cfg) {
  require_lift_dims(spec, surj, v);
  const int fdim = surj.fiber_dim();
  if (w0.size() != fdim) {
    throw DimensionMismatch("starting point does not match fiber dimension");
  }

  LiftSolution sol;
  const double scale = v.norm();
  if (scale == 0.0) {
    sol.point = Eigen::VectorXd::Zero(surj.domain_dim());
    sol.converged = true;
    sol.degenerate = true;
    return sol;
  }

  const Eigen::VectorXd base = surj.R * (v / scale);
  Eigen::VectorXd w = w0;
  Eigen::VectorXd u = base + surj.K * w;

  if (fdim == 0) {
    sol.converged = true;
  } else {
    double E = energy(spec, u);
    for (int it = 0; it <= cfg.max_iter; ++it) {
      const Eigen::VectorXd g = surj.K.transpose() * grad_energy(spec, u);
      sol.residual = g.lpNorm<Eigen::Infinity>();
      if (sol.residual <= cfg.tol * std::max(1.0, E)) {
        sol.converged = true;
        break;
      }
      if (it == cfg.max_iter) break;

      const Eigen::MatrixXd H =
          surj.K.transpose() * hess_energy(spec, u) * surj.K;
      Eigen::LLT<Eigen::MatrixXd> llt(H);
      if (llt.info() != Eigen::Success) {
        throw NonConvexEncountered("reduced Hessian is not positive definite");
      }
      const Eigen::VectorXd p = llt.solve(-g);
      const double slope = g.dot(p);
      if (!(slope < 0.0)) {
        throw NonConvexEncountered("Newton step is not a descent direction");
      }

      double t = 1.0;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        const Eigen::VectorXd w_try = w + t * p;
        const double E_try = energy(spec, base + surj.K * w_try);
        if (E_try <= E + 1e-4 * t * slope) {
          w = w_try;
          u = base + surj.K * w;
          E = E_try;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) throw MaxIterations("line search stalled");
      sol.iterations = it + 1;
    }
    if (!sol.converged) {
      throw MaxIterations("no convergence in " + std::to_string(cfg.max_iter) +
                          " iterations");
    }
    const Eigen::MatrixXd H =
        surj.K.transpose() * hess_energy(spec, u) * surj.K;
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success) {
      throw NonConvexEncountered("converged to a non-minimizing critical point");
    }
  }

  sol.point = scale * u;
  sol.value = eval(spec, sol.point);
  return sol;
}

LiftSolution lift(const NormSpec& spec, const LinearSurjection& surj,
                  const Eigen::VectorXd& v, const SolverConfig& cfg) {
  return lift_from(spec, surj, v, Eigen::VectorXd::Zero(surj.fiber_dim()), cfg);
}

double subduced_norm(const NormSpec& spec, const LinearSurjection& surj,
                     const Eigen::VectorXd& v, const SolverConfig& cfg) {
  return lift(spec, surj, v, cfg).value;
}

double homogeneity_defect(const NormSpec& spec, const LinearSurjection& surj,
                          const Eigen::VectorXd& v, double lambda,
                          const SolverConfig& cfg) {
  if (!(lambda > 0.0)) throw Error("homogeneity scale must be positive");
  const double a = subduced_norm(spec, surj, lambda * v, cfg);
  const double b = subduced_norm(spec, surj, v, cfg);
  return std::abs(a - lambda * b);
}

VerificationReport verify_submersion(const NormSpec& spec1,
                                     const LinearSurjection& surj,
                                     const NormSpec& spec2, int n_samples,
                                     std::uint64_t seed, double tol) {
  if (spec2.dim() != surj.range_dim()) {
    throw DimensionMismatch("spec2 dimension does not match surjection range");
  }
  Rng rng(seed);
  VerificationReport rep;
  rep.samples_used = n_samples;

  auto note_failure = [&](const Eigen::VectorXd& witness) {
    if (!rep.failure_witness) rep.failure_witness = witness;
  };

  for (int s = 0; s < n_samples; ++s) {
    const Eigen::VectorXd v = rng.sphere(surj.range_dim());
    const double match =
        std::abs(eval(spec2, v) - subduced_norm(spec1, surj, v));
    rep.worst_match_defect = std::max(rep.worst_match_defect, match);
    if (match > tol) note_failure(v);

    const Eigen::VectorXd u = rng.sphere(surj.domain_dim());
    const double gap = eval(spec2, surj.M * u) - eval(spec1, u);
    rep.worst_inequality_defect = std::max(rep.worst_inequality_defect, gap);
    if (gap > tol) note_failure(u);
  }
  rep.passed = !rep.failure_witness.has_value();
  return rep;
}

double brute_force_subduced(const NormSpec& spec, const LinearSurjection& surj,
                            const Eigen::VectorXd& v, double grid_radius,
                            int grid_steps) {
  require_lift_dims(spec, surj, v);
  if (grid_steps < 2 || grid_radius <= 0.0) {
    throw Error("grid search needs a positive radius and at least two steps");
  }
  if (v.norm() == 0.0) return 0.0;

  const int fdim = surj.fiber_dim();
  const Eigen::VectorXd base = surj.R * v;
  if (fdim == 0) return eval(spec, base);

  auto value_at = [&](const Eigen::VectorXd& w) {
    return eval(spec, base + surj.K * w);
  };

  Eigen::VectorXd best_w = Eigen::VectorXd::Zero(fdim);
  double best = std::numeric_limits<double>::infinity();
  double spacing = 2.0 * grid_radius / (grid_steps - 1);

  std::vector<int> idx(fdim, 0);
  Eigen::VectorXd w(fdim);
  for (;;) {
    for (int a = 0; a < fdim; ++a) w[a] = -grid_radius + spacing * idx[a];
    const double val = value_at(w);
    if (val < best) {
      best = val;
      best_w = w;
    }
    int axis = 0;
    while (axis < fdim && ++idx[axis] == grid_steps) idx[axis++] = 0;
    if (axis == fdim) break;
  }

  for (int pass = 0; pass < 10; ++pass) {
    spacing *= 0.5;
    const Eigen::VectorXd center = best_w;
    std::vector<int> off(fdim, -2);
    for (;;) {
      for (int a = 0; a < fdim; ++a) w[a] = center[a] + spacing * off[a];
      const double val = value_at(w);
      if (val < best) {
        best = val;
        best_w = w;
      }
      int axis = 0;
      while (axis < fdim && ++off[axis] == 3) off[axis++] = -2;
      if (axis == fdim) break;
    }
  }
  return best;
}

}  // namespace finsler
