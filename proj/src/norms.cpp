#include "finsler/norms.hpp"

#include <cmath>
#include <limits>

#include "finsler/rng.hpp"

namespace finsler {

namespace {

void require_square_symmetric(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(name) + " must be square");
  }
  const double skew = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (skew > 1e-12) {
    throw Error(std::string(name) + " is not symmetric (defect " +
                std::to_string(skew) + ")");
  }
}

void require_dim(const NormSpec& spec, const Eigen::VectorXd& u) {
  if (u.size() != spec.dim()) {
    throw DimensionMismatch("vector has dimension " + std::to_string(u.size()) +
                            ", norm expects " + std::to_string(spec.dim()));
  }
}

void require_nonzero(const Eigen::VectorXd& u) {
  if (u.norm() == 0.0) throw ZeroVector("operation undefined at the origin");
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().minCoeff();
}

// q_j = u' Q_j u, S = sum q_j^2, G = sum q_j Q_j u. S > 0 off the origin
// whenever sum Q_j is positive definite.
struct QuarticParts {
  std::vector<double> q;
  double S = 0.0;
  Eigen::VectorXd G;
};

QuarticParts quartic_parts(const NormSpec& spec, const Eigen::VectorXd& u) {
  QuarticParts p;
  p.q.reserve(spec.Q.size());
  p.G = Eigen::VectorXd::Zero(u.size());
  for (const auto& Qj : spec.Q) {
    const Eigen::VectorXd Qu = Qj * u;
    const double qj = u.dot(Qu);
    p.q.push_back(qj);
    p.S += qj * qj;
    p.G += qj * Qu;
  }
  return p;
}

}  // namespace

int NormSpec::dim() const {
  if (family == NormFamily::quartic_root) {
    return Q.empty() ? 0 : static_cast<int>(Q.front().rows());
  }
  return static_cast<int>(A.rows());
}

NormSpec NormSpec::euclidean(Eigen::MatrixXd A) {
  require_square_symmetric(A, "A");
  NormSpec s;
  s.family = NormFamily::euclidean;
  s.A = std::move(A);
  return s;
}

NormSpec NormSpec::randers(Eigen::MatrixXd A, Eigen::VectorXd b) {
  require_square_symmetric(A, "A");
  if (b.size() != A.rows()) {
    throw DimensionMismatch("b has dimension " + std::to_string(b.size()) +
                            ", A is " + std::to_string(A.rows()) + "x" +
                            std::to_string(A.cols()));
  }
  NormSpec s;
  s.family = NormFamily::randers;
  s.A = std::move(A);
  s.b = std::move(b);
  return s;
}

NormSpec NormSpec::quartic_root(std::vector<Eigen::MatrixXd> Q) {
  if (Q.empty()) throw DimensionMismatch("quartic_root needs at least one form");
  const auto n = Q.front().rows();
  for (const auto& Qj : Q) {
    require_square_symmetric(Qj, "Q");
    if (Qj.rows() != n) throw DimensionMismatch("Q forms have mixed dimensions");
  }
  NormSpec s;
  s.family = NormFamily::quartic_root;
  s.Q = std::move(Q);
  return s;
}

void NormSpec::validate() const {
  switch (family) {
    case NormFamily::euclidean:
      require_square_symmetric(A, "A");
      if (min_eigenvalue(A) <= 0.0) throw Error("A is not positive definite");
      break;
    case NormFamily::randers: {
      require_square_symmetric(A, "A");
      if (min_eigenvalue(A) <= 0.0) throw Error("A is not positive definite");
      const double slope = b.dot(A.ldlt().solve(b));
      if (!(slope < 1.0)) {
        throw Error("slope condition b' A^-1 b < 1 fails (value " +
                    std::to_string(slope) + ")");
      }
      break;
    }
    case NormFamily::quartic_root: {
      if (Q.empty()) throw DimensionMismatch("quartic_root needs at least one form");
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(Q.front().rows(), Q.front().cols());
      for (const auto& Qj : Q) {
        require_square_symmetric(Qj, "Q");
        if (min_eigenvalue(Qj) < -1e-12) throw Error("a Q form is not PSD");
        sum += Qj;
      }
      if (min_eigenvalue(sum) <= 0.0) throw Error("sum of Q forms is not positive definite");
      break;
    }
  }
}

double eval(const NormSpec& spec, const Eigen::VectorXd& u) {
  require_dim(spec, u);
  if (u.norm() == 0.0) return 0.0;
  switch (spec.family) {
    case NormFamily::euclidean:
      return std::sqrt(u.dot(spec.A * u));
    case NormFamily::randers:
      return std::sqrt(u.dot(spec.A * u)) + spec.b.dot(u);
    case NormFamily::quartic_root: {
      const auto p = quartic_parts(spec, u);
      return std::pow(p.S, 0.25);
    }
  }
  return 0.0;
}

double energy(const NormSpec& spec, const Eigen::VectorXd& u) {
  const double F = eval(spec, u);
  return 0.5 * F * F;
}

Eigen::VectorXd grad_energy(const NormSpec& spec, const Eigen::VectorXd& u) {
  require_dim(spec, u);
  require_nonzero(u);
  switch (spec.family) {
    case NormFamily::euclidean:
      return spec.A * u;
    case NormFamily::randers: {
      const Eigen::VectorXd Au = spec.A * u;
      const double alpha = std::sqrt(u.dot(Au));
      const double F = alpha + spec.b.dot(u);
      return F * (Au / alpha + spec.b);
    }
    case NormFamily::quartic_root: {
      const auto p = quartic_parts(spec, u);
      return p.G / std::sqrt(p.S);
    }
  }
  return {};
}

Eigen::MatrixXd hess_energy(const NormSpec& spec, const Eigen::VectorXd& u) {
  require_dim(spec, u);
  require_nonzero(u);
  switch (spec.family) {
    case NormFamily::euclidean:
      return spec.A;
    case NormFamily::randers: {
      const Eigen::VectorXd Au = spec.A * u;
      const double alpha = std::sqrt(u.dot(Au));
      const double F = alpha + spec.b.dot(u);
      const Eigen::VectorXd gF = Au / alpha + spec.b;
      const Eigen::MatrixXd hF =
          spec.A / alpha - (Au * Au.transpose()) / (alpha * alpha * alpha);
      return gF * gF.transpose() + F * hF;
    }
    case NormFamily::quartic_root: {
      const auto p = quartic_parts(spec, u);
      const double rootS = std::sqrt(p.S);
      Eigen::MatrixXd P = Eigen::MatrixXd::Zero(u.size(), u.size());
      for (std::size_t j = 0; j < spec.Q.size(); ++j) {
        const Eigen::VectorXd Qu = spec.Q[j] * u;
        P += 2.0 * (Qu * Qu.transpose()) + p.q[j] * spec.Q[j];
      }
      return P / rootS - 2.0 * (p.G * p.G.transpose()) / (p.S * rootS);
    }
  }
  return {};
}

Eigen::VectorXd grad_norm(const NormSpec& spec, const Eigen::VectorXd& u) {
  require_dim(spec, u);
  require_nonzero(u);
  switch (spec.family) {
    case NormFamily::euclidean: {
      const Eigen::VectorXd Au = spec.A * u;
      return Au / std::sqrt(u.dot(Au));
    }
    case NormFamily::randers: {
      const Eigen::VectorXd Au = spec.A * u;
      return Au / std::sqrt(u.dot(Au)) + spec.b;
    }
    case NormFamily::quartic_root: {
      const auto p = quartic_parts(spec, u);
      return p.G / std::pow(p.S, 0.75);
    }
  }
  return {};
}

double fundamental_defect(const NormSpec& spec, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& x) {
  require_dim(spec, x);
  return x.dot(grad_norm(spec, u)) - eval(spec, x);
}

VerificationReport verify_minkowski(const NormSpec& spec, int n_samples,
                                    std::uint64_t seed, double tol) {
  const int d = spec.dim();
  Rng rng(seed);
  VerificationReport rep;
  rep.samples_used = n_samples;
  double min_eig = std::numeric_limits<double>::infinity();
  bool any_hessian = false;

  auto note_failure = [&](const Eigen::VectorXd& u) {
    if (!rep.failure_witness) rep.failure_witness = u;
  };

  static const double scales[] = {0.5, 2.0, 7.0};
  for (int s = 0; s < n_samples; ++s) {
    const Eigen::VectorXd u = rng.sphere(d);
    const Eigen::VectorXd x = rng.sphere(d);
    const double F = eval(spec, u);
    if (!(F > 0.0)) {
      note_failure(u);
      continue;
    }
    for (const double lam : scales) {
      const double defect =
          std::abs(eval(spec, lam * u) - lam * F) / (lam * F);
      rep.worst_homogeneity_defect = std::max(rep.worst_homogeneity_defect, defect);
      if (defect > tol) note_failure(u);
    }
    const double tri = eval(spec, u + x) - F - eval(spec, x);
    rep.worst_triangle_defect = std::max(rep.worst_triangle_defect, tri);
    if (tri > tol) note_failure(u);
    const double fund = fundamental_defect(spec, u, x);
    rep.worst_fundamental_defect = std::max(rep.worst_fundamental_defect, fund);
    if (fund > tol) note_failure(u);
    const double eig = min_eigenvalue(hess_energy(spec, u));
    min_eig = std::min(min_eig, eig);
    any_hessian = true;
    if (!(eig > tol)) note_failure(u);
  }

  rep.min_hessian_eigenvalue = any_hessian ? min_eig : 0.0;
  rep.passed = !rep.failure_witness.has_value() && any_hessian;
  return rep;
}

}  // namespace finsler
