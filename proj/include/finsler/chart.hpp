#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "finsler/minksub.hpp"

namespace finsler {

/// One term coef * prod_i x_i^px_i * prod_a y_a^py_a.
struct ChartMonomial {
  std::vector<int> powers_x;
  std::vector<int> powers_y;
  double coef = 0.0;
};

/// Replaces one scalar entry of a NormSpec by a polynomial in (x, y).
/// Targets are written "A[i][j]", "b[i]" or "Q[j][r][c]"; off-diagonal
/// matrix targets are mirrored so the materialized spec stays symmetric.
struct ChartDep {
  std::string target;
  std::vector<ChartMonomial> monomials;
};

/// A family of norms over a product chart R^n_x x R^n_y, polynomial in
/// the chart coordinates. The fiber over x is parametrized by y inside the
/// declared box; the velocity space it norms is R^(n_x + n_y), split as
/// (v, w) with v the base velocity.
class ChartFinsler {
 public:
  ChartFinsler(int n_x, int n_y, NormSpec base, std::vector<ChartDep> deps,
               Eigen::VectorXd y_box_lo, Eigen::VectorXd y_box_hi);
  ChartFinsler(int n_x, int n_y, NormSpec base, std::vector<ChartDep> deps);

  int n_x() const { return n_x_; }
  int n_y() const { return n_y_; }
  const NormSpec& base() const { return base_; }
  const std::vector<ChartDep>& deps() const { return deps_; }
  const Eigen::VectorXd& y_box_lo() const { return y_lo_; }
  const Eigen::VectorXd& y_box_hi() const { return y_hi_; }

  /// Materializes the norm at a chart point.
  NormSpec at(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

 private:
  struct EntryRef {
    enum class Kind { A, b, Q } kind;
    int form = 0;
    int row = 0;
    int col = 0;
  };

  int n_x_;
  int n_y_;
  NormSpec base_;
  std::vector<ChartDep> deps_;
  std::vector<EntryRef> refs_;
  Eigen::VectorXd y_lo_;
  Eigen::VectorXd y_hi_;
};

/// Kernel coordinates of the fiber-minimizing lift of the base velocity v
/// at chart point (x, y): the coefficients splitting a base direction
/// into the canonical horizontal direction through it.
Eigen::VectorXd splitting_coeffs(const ChartFinsler& cf, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& v,
                                 const SolverConfig& cfg = {});

/// Component a is the central-difference derivative in y_a of the energy,
/// evaluated with the velocity argument frozen at the lifted value. All
/// components vanish exactly when the family does not depend on y.
Eigen::VectorXd tangency_defect(const ChartFinsler& cf, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y,
                                const Eigen::VectorXd& v, double fd_step = 1e-5,
                                const SolverConfig& cfg = {});

/// | h(x, y1, v) - h(x, y2, v) | for the splitting coefficients. Requires
/// the tangency defect to stay below tol at both points and throws
/// TangencyViolated otherwise: without tangency the lift genuinely
/// depends on where in the fiber it is computed.
double fiber_independence_defect(const ChartFinsler& cf, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y1,
                                 const Eigen::VectorXd& y2,
                                 const Eigen::VectorXd& v, double tol = 1e-8,
                                 const SolverConfig& cfg = {});

/// The norm induced on base velocities at x: certifies tangency at the
/// box center and corners (throwing TangencyViolated on failure), then
/// evaluates the lifted velocity at the reference fiber point.
double subduced_finsler(const ChartFinsler& cf, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& v, double tol = 1e-8,
                        const SolverConfig& cfg = {});

}  // namespace finsler
