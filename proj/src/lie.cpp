#include "finsler/lie.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "finsler/rng.hpp"

namespace finsler {
namespace lie {

namespace {

Eigen::VectorXd vec(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a * b - b * a;
}

void require_coords(const StructureConstants& sc, const Eigen::VectorXd& xi) {
  if (xi.size() != sc.dim) {
    throw DimensionMismatch("coordinate vector does not match algebra dimension");
  }
}

// Adjoint action of g expressed as a dim x dim matrix in the basis.
Eigen::MatrixXd adjoint_matrix(const StructureConstants& sc,
                               const Eigen::MatrixXd& g) {
  Eigen::MatrixXd am(sc.dim, sc.dim);
  for (int i = 0; i < sc.dim; ++i) {
    am.col(i) = adjoint(sc, g, Eigen::VectorXd::Unit(sc.dim, i));
  }
  return am;
}

}  // namespace

Eigen::VectorXd StructureConstants::bracket(const Eigen::VectorXd& xi,
                                            const Eigen::VectorXd& eta) const {
  require_coords(*this, xi);
  require_coords(*this, eta);
  return ad_matrix(xi) * eta;
}

Eigen::MatrixXd StructureConstants::ad_matrix(const Eigen::VectorXd& xi) const {
  require_coords(*this, xi);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) m += xi[a] * ad[a];
  return m;
}

Eigen::VectorXd expand_in_basis(const std::vector<Eigen::MatrixXd>& rep,
                                const Eigen::MatrixXd& X) {
  const int n = static_cast<int>(rep.size());
  double off = 0.0;
  for (int c = 0; c < n; ++c) {
    for (int d = c + 1; d < n; ++d) {
      off = std::max(off, std::abs(vec(rep[c]).dot(vec(rep[d]))));
    }
  }
  Eigen::VectorXd coords(n);
  if (off == 0.0) {
    for (int c = 0; c < n; ++c) {
      coords[c] = vec(X).dot(vec(rep[c])) / vec(rep[c]).squaredNorm();
    }
    return coords;
  }
  Eigen::MatrixXd B(rep.front().size(), n);
  for (int c = 0; c < n; ++c) B.col(c) = vec(rep[c]);
  coords = B.colPivHouseholderQr().solve(vec(X));
  return coords;
}

StructureConstants from_rep(const std::vector<Eigen::MatrixXd>& rep) {
  if (rep.empty()) throw DimensionMismatch("representation basis is empty");
  StructureConstants sc;
  sc.dim = static_cast<int>(rep.size());
  sc.rep = rep;
  sc.ad.assign(sc.dim, Eigen::MatrixXd::Zero(sc.dim, sc.dim));
  for (int a = 0; a < sc.dim; ++a) {
    for (int b = 0; b < sc.dim; ++b) {
      sc.ad[a].col(b) = expand_in_basis(rep, commutator(rep[a], rep[b]));
    }
  }
  return sc;
}

double antisymmetry_defect(const StructureConstants& sc) {
  double worst = 0.0;
  for (int a = 0; a < sc.dim; ++a) {
    for (int b = 0; b < sc.dim; ++b) {
      worst = std::max(
          worst, (sc.ad[a].col(b) + sc.ad[b].col(a)).lpNorm<Eigen::Infinity>());
    }
  }
  return worst;
}

double jacobi_defect(const StructureConstants& sc) {
  double worst = 0.0;
  for (int a = 0; a < sc.dim; ++a) {
    for (int b = 0; b < sc.dim; ++b) {
      const Eigen::MatrixXd lhs = sc.ad_matrix(sc.ad[a].col(b));
      const Eigen::MatrixXd rhs = commutator(sc.ad[a], sc.ad[b]);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double rep_consistency_defect(const StructureConstants& sc) {
  if (sc.rep.empty()) return 0.0;
  double worst = 0.0;
  for (int a = 0; a < sc.dim; ++a) {
    for (int b = 0; b < sc.dim; ++b) {
      Eigen::MatrixXd recon =
          Eigen::MatrixXd::Zero(sc.rep.front().rows(), sc.rep.front().cols());
      for (int c = 0; c < sc.dim; ++c) recon += sc.C(a, b, c) * sc.rep[c];
      worst = std::max(worst, (commutator(sc.rep[a], sc.rep[b]) - recon)
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  return worst;
}

ReductiveSplit so4() {
  std::vector<Eigen::MatrixXd> rep(6, Eigen::MatrixXd::Zero(4, 4));
  rep[0](1, 2) = -1.0;
  rep[0](2, 1) = 1.0;
  rep[1](0, 2) = 1.0;
  rep[1](2, 0) = -1.0;
  rep[2](0, 1) = -1.0;
  rep[2](1, 0) = 1.0;
  rep[3](0, 3) = -1.0;
  rep[3](3, 0) = 1.0;
  rep[4](1, 3) = -1.0;
  rep[4](3, 1) = 1.0;
  rep[5](2, 3) = -1.0;
  rep[5](3, 2) = 1.0;

  ReductiveSplit split;
  split.sc = from_rep(rep);
  split.h_idx = {0, 1, 2};
  split.m_idx = {3, 4, 5};

  const Eigen::MatrixXd kappa = killing_matrix(split.sc);
  const double gamma = -kappa(0, 0);
  if ((kappa + gamma * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() <
      1e-9) {
    split.killing_scale = gamma;
  }
  return split;
}

double reductivity_defect(const ReductiveSplit& split) {
  double worst = 0.0;
  for (const int a : split.h_idx) {
    for (const int b : split.m_idx) {
      for (const int c : split.h_idx) {
        worst = std::max(worst, std::abs(split.sc.C(a, b, c)));
      }
    }
    for (const int b : split.h_idx) {
      for (const int c : split.m_idx) {
        worst = std::max(worst, std::abs(split.sc.C(a, b, c)));
      }
    }
  }
  return worst;
}

Eigen::MatrixXd killing_matrix(const StructureConstants& sc) {
  Eigen::MatrixXd kappa(sc.dim, sc.dim);
  for (int a = 0; a < sc.dim; ++a) {
    for (int b = 0; b < sc.dim; ++b) {
      kappa(a, b) = (sc.ad[a] * sc.ad[b]).trace();
    }
  }
  return kappa;
}

double killing(const StructureConstants& sc, const Eigen::VectorXd& xi,
               const Eigen::VectorXd& eta) {
  require_coords(sc, xi);
  require_coords(sc, eta);
  return (sc.ad_matrix(xi) * sc.ad_matrix(eta)).trace();
}

Eigen::VectorXd flat(const StructureConstants& sc, const Eigen::VectorXd& xi) {
  require_coords(sc, xi);
  return killing_matrix(sc) * xi;
}

Eigen::VectorXd sharp(const StructureConstants& sc,
                      const Eigen::VectorXd& theta) {
  require_coords(sc, theta);
  const Eigen::MatrixXd kappa = killing_matrix(sc);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(kappa);
  if (!lu.isInvertible()) {
    throw SingularKilling("Killing form is degenerate");
  }
  return lu.solve(theta);
}

Eigen::VectorXd adjoint(const StructureConstants& sc, const Eigen::MatrixXd& g,
                        const Eigen::VectorXd& xi) {
  require_coords(sc, xi);
  if (sc.rep.empty()) {
    throw Error("adjoint action needs a matrix representation");
  }
  const auto k = sc.rep.front().rows();
  if (g.rows() != k || g.cols() != k) {
    throw DimensionMismatch("group element does not match the representation");
  }
  const double ortho =
      (g.transpose() * g - Eigen::MatrixXd::Identity(k, k))
          .cwiseAbs()
          .maxCoeff();
  if (ortho > 1e-10 || std::abs(g.determinant() - 1.0) > 1e-10) {
    throw NotInGroup("matrix is not special orthogonal within 1e-10");
  }
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(k, k);
  for (int a = 0; a < sc.dim; ++a) X += xi[a] * sc.rep[a];
  return expand_in_basis(sc.rep, g * X * g.transpose());
}

Eigen::VectorXd ad_invariance_residual(
    const StructureConstants& sc,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad_f,
    const Eigen::VectorXd& w) {
  require_coords(sc, w);
  const Eigen::VectorXd g = grad_f(w);
  Eigen::VectorXd r(sc.dim);
  for (int a = 0; a < sc.dim; ++a) r[a] = g.dot(sc.ad[a] * w);
  return r;
}

Eigen::VectorXd ad_invariance_residual(const StructureConstants& sc,
                                       const Eigen::MatrixXd& quadratic_form,
                                       const Eigen::VectorXd& w) {
  return ad_invariance_residual(
      sc,
      [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        return 2.0 * quadratic_form * u;
      },
      w);
}

Eigen::VectorXd ad_invariance_residual(const StructureConstants& sc,
                                       const NormSpec& spec,
                                       const Eigen::VectorXd& w) {
  return ad_invariance_residual(
      sc,
      [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        return grad_energy(spec, u);
      },
      w);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> invariant_polys() {
  Eigen::MatrixXd q1 = Eigen::MatrixXd::Identity(6, 6);
  Eigen::MatrixXd q2 = Eigen::MatrixXd::Identity(6, 6);
  for (int i = 0; i < 3; ++i) {
    q1(i, i + 3) = q1(i + 3, i) = 1.0;
    q2(i, i + 3) = q2(i + 3, i) = -1.0;
  }
  return {q1, q2};
}

CandidateNorms candidate_norms() {
  const auto [q1, q2] = invariant_polys();
  CandidateNorms c{
      NormSpec::quartic_root({q1 + q2}),
      NormSpec::quartic_root({q1, q2}),
      NormSpec::quartic_root({q1 + q2, q1}),
  };
  return c;
}

MSubduction::MSubduction(ReductiveSplit split, NormSpec spec)
    : split_(std::move(split)), spec_(std::move(spec)) {
  const int dim = split_.sc.dim;
  const int md = static_cast<int>(split_.m_idx.size());
  const int hd = static_cast<int>(split_.h_idx.size());
  if (spec_.dim() != dim) {
    throw DimensionMismatch("norm does not act on the algebra");
  }
  if (md + hd != dim) {
    throw DimensionMismatch("split does not cover the algebra");
  }
  proj_.M = Eigen::MatrixXd::Zero(md, dim);
  proj_.R = Eigen::MatrixXd::Zero(dim, md);
  proj_.K = Eigen::MatrixXd::Zero(dim, hd);
  for (int i = 0; i < md; ++i) {
    proj_.M(i, split_.m_idx[i]) = 1.0;
    proj_.R(split_.m_idx[i], i) = 1.0;
  }
  for (int j = 0; j < hd; ++j) proj_.K(split_.h_idx[j], j) = 1.0;
}

Eigen::VectorXd MSubduction::embed(const Eigen::VectorXd& zeta) const {
  return proj_.R * zeta;
}

Eigen::VectorXd MSubduction::project(const Eigen::VectorXd& w) const {
  return proj_.M * w;
}

LiftSolution MSubduction::lift(const Eigen::VectorXd& zeta,
                               const SolverConfig& cfg) const {
  return finsler::lift(spec_, proj_, zeta, cfg);
}

double MSubduction::subduced(const Eigen::VectorXd& zeta,
                             const SolverConfig& cfg) const {
  return lift(zeta, cfg).value;
}

MSubduction subduce_to_m(ReductiveSplit split, NormSpec spec) {
  MSubduction sub(std::move(split), std::move(spec));
  const auto& sc = sub.split().sc;
  if (!sc.rep.empty()) {
    Rng rng(0xf1d5u);
    const auto k = sc.rep.front().rows();
    for (int trial = 0; trial < 6; ++trial) {
      Eigen::MatrixXd skew = Eigen::MatrixXd::Zero(k, k);
      for (const int a : sub.split().h_idx) {
        skew += rng.uniform(-2.0, 2.0) * sc.rep[a];
      }
      const Eigen::MatrixXd g = group_exp(skew);
      const Eigen::VectorXd w = rng.sphere(sc.dim);
      const double drift =
          std::abs(eval(sub.spec(), adjoint(sc, g, w)) - eval(sub.spec(), w));
      if (drift > 1e-8) {
        throw Error("norm is not invariant under the subgroup (drift " +
                    std::to_string(drift) + ")");
      }
    }
  }
  return sub;
}

double equivariance_defect(const MSubduction& sub, const Eigen::MatrixXd& h_elem,
                          const Eigen::VectorXd& zeta,
                          const SolverConfig& cfg) {
  const auto& sc = sub.split().sc;
  const Eigen::MatrixXd am = adjoint_matrix(sc, h_elem);
  double leak = 0.0;
  for (const int h : sub.split().h_idx) {
    for (const int m : sub.split().m_idx) {
      leak = std::max(leak, std::abs(am(h, m)));
    }
  }
  if (leak > 1e-10) {
    throw NotInGroup("element does not preserve the complement (leak " +
                     std::to_string(leak) + ")");
  }

  const LiftSolution base = sub.lift(zeta, cfg);
  if (base.degenerate) throw ZeroVector("equivariance defect undefined at 0");
  const Eigen::VectorXd rotated =
      sub.lift(sub.project(am * sub.embed(zeta)), cfg).point;
  return (rotated - am * base.point).norm() / base.point.norm();
}

std::vector<Eigen::VectorXd> cone_sample(const MSubduction& sub, int n,
                                         std::uint64_t seed,
                                         const SolverConfig& cfg) {
  Rng rng(seed);
  std::vector<Eigen::VectorXd> points;
  points.reserve(n);
  const int md = static_cast<int>(sub.split().m_idx.size());
  for (int i = 0; i < n; ++i) {
    points.push_back(sub.lift(rng.sphere(md), cfg).point);
  }
  return points;
}

Eigen::MatrixXd block_rotation(int axis, double angle) {
  if (axis < 0 || axis > 2) throw Error("rotation axis must be 0, 1 or 2");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
  const int i = (axis + 1) % 3;
  const int j = (axis + 2) % 3;
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = -s;
  g(j, i) = s;
  return g;
}

Eigen::MatrixXd group_exp(const Eigen::MatrixXd& X) {
  if (X.rows() != X.cols()) throw DimensionMismatch("exponent must be square");
  return X.exp();
}

}  // namespace lie
}  // namespace finsler
