#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "finsler/minksub.hpp"

namespace finsler {
namespace lie {

/// Structure constants of a finite-dimensional real Lie algebra, stored
/// as the adjoint matrices ad[a] with (ad[a])(c, b) = C^c_{ab}, plus the
/// faithful matrix representation they were derived from (when any).
struct StructureConstants {
  int dim = 0;
  std::vector<Eigen::MatrixXd> ad;
  std::vector<Eigen::MatrixXd> rep;

  double C(int a, int b, int c) const { return ad[a](c, b); }
  Eigen::VectorXd bracket(const Eigen::VectorXd& xi,
                          const Eigen::VectorXd& eta) const;
  Eigen::MatrixXd ad_matrix(const Eigen::VectorXd& xi) const;
};

/// Expands all basis commutators of a faithful matrix representation.
StructureConstants from_rep(const std::vector<Eigen::MatrixXd>& rep);

/// Coordinates of a matrix in the representation basis (least squares,
/// exact for an orthogonal basis).
Eigen::VectorXd expand_in_basis(const std::vector<Eigen::MatrixXd>& rep,
                                const Eigen::MatrixXd& X);

double antisymmetry_defect(const StructureConstants& sc);
double jacobi_defect(const StructureConstants& sc);
double rep_consistency_defect(const StructureConstants& sc);

/// A basis split g = h + m with h a subalgebra and [h, m] inside m.
struct ReductiveSplit {
  StructureConstants sc;
  std::vector<int> h_idx;
  std::vector<int> m_idx;
  /// When the Killing form is a negative multiple of the identity this is
  /// that multiple, else 0; convenient for normalizing inner products.
  double killing_scale = 0.0;
};

/// Rotations of R^4: six generators, the first three spanning the
/// subalgebra fixing the last coordinate, the remaining three spanning
/// its reductive complement. Structure constants are derived from the
/// defining representation.
ReductiveSplit so4();

/// Largest subalgebra or complement leak: the h components of [h, m]
/// brackets together with the non-closure of h itself.
double reductivity_defect(const ReductiveSplit& split);

Eigen::MatrixXd killing_matrix(const StructureConstants& sc);
double killing(const StructureConstants& sc, const Eigen::VectorXd& xi,
               const Eigen::VectorXd& eta);

/// Index lowering with the Killing form and its inverse. sharp throws
/// SingularKilling when the form is degenerate.
Eigen::VectorXd flat(const StructureConstants& sc, const Eigen::VectorXd& xi);
Eigen::VectorXd sharp(const StructureConstants& sc, const Eigen::VectorXd& theta);

/// Adjoint action by conjugation in the representation. g must satisfy
/// g' g = I and det g = 1 within 1e-10, else NotInGroup.
Eigen::VectorXd adjoint(const StructureConstants& sc, const Eigen::MatrixXd& g,
                        const Eigen::VectorXd& xi);

/// Residual of the infinitesimal invariance equations for a function on
/// the algebra: component a is grad f(w) . (ad[a] w). All components
/// vanish identically iff f is invariant under the adjoint flow.
Eigen::VectorXd ad_invariance_residual(
    const StructureConstants& sc,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad_f,
    const Eigen::VectorXd& w);
Eigen::VectorXd ad_invariance_residual(const StructureConstants& sc,
                                       const Eigen::MatrixXd& quadratic_form,
                                       const Eigen::VectorXd& w);
Eigen::VectorXd ad_invariance_residual(const StructureConstants& sc,
                                       const NormSpec& spec,
                                       const Eigen::VectorXd& w);

/// The two fundamental invariant quadratic forms on so4 coordinates:
/// L1(w) = w' Q1 w = sum_i (w_i + w_{i+3})^2 and
/// L2(w) = w' Q2 w = sum_i (w_i - w_{i+3})^2. Their sum is 2 I.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> invariant_polys();

/// Three adjoint-invariant norms on so4 built from the invariant forms:
///   f       = ((L1 + L2)^2)^(1/4), a round norm,
///   fhat    = (L1^2 + L2^2)^(1/4),
///   ftilde  = ((L1 + L2)^2 + L1^2)^(1/4), not symmetric in L1, L2.
struct CandidateNorms {
  NormSpec f;
  NormSpec fhat;
  NormSpec ftilde;
};
CandidateNorms candidate_norms();

/// The restriction machinery for a reductive split: lifts vectors of the
/// complement m through the coordinate projection and evaluates the
/// subduced norm there.
class MSubduction {
 public:
  MSubduction(ReductiveSplit split, NormSpec spec);

  const ReductiveSplit& split() const { return split_; }
  const NormSpec& spec() const { return spec_; }
  const LinearSurjection& projection() const { return proj_; }

  /// Embeds m coordinates into the algebra with zero h part.
  Eigen::VectorXd embed(const Eigen::VectorXd& zeta) const;
  /// Extracts the m coordinates of an algebra vector.
  Eigen::VectorXd project(const Eigen::VectorXd& w) const;

  LiftSolution lift(const Eigen::VectorXd& zeta,
                    const SolverConfig& cfg = {}) const;
  double subduced(const Eigen::VectorXd& zeta,
                  const SolverConfig& cfg = {}) const;

 private:
  ReductiveSplit split_;
  NormSpec spec_;
  LinearSurjection proj_;
};

/// Builds the subduction after checking on sampled group elements that
/// spec is invariant under the adjoint action of the subgroup generated
/// by h (skipped when the split carries no representation).
MSubduction subduce_to_m(ReductiveSplit split, NormSpec spec);

/// | lift(Ad_h zeta) - Ad_h lift(zeta) | / | lift(zeta) | for h in the
/// subgroup; h must also preserve the split block structure.
double equivariance_defect(const MSubduction& sub, const Eigen::MatrixXd& h_elem,
                          const Eigen::VectorXd& zeta,
                          const SolverConfig& cfg = {});

/// Lifts n seeded unit directions of m; the image samples the cone of
/// horizontal directions in the algebra.
std::vector<Eigen::VectorXd> cone_sample(const MSubduction& sub, int n,
                                         std::uint64_t seed,
                                         const SolverConfig& cfg = {});

/// Rotation of R^4 about coordinate axis 0, 1 or 2 of the fixed-point
/// 3-space, leaving the last coordinate alone. Lives in the subgroup
/// every so4 h element belongs to.
Eigen::MatrixXd block_rotation(int axis, double angle);

/// Matrix exponential, for generating group elements from the algebra.
Eigen::MatrixXd group_exp(const Eigen::MatrixXd& X);

}  // namespace lie
}  // namespace finsler
