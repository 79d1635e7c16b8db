#include "finsler/euclid.hpp"

#include <cmath>

namespace finsler {

InnerProductAt inner_product_at(const NormSpec& spec, const Eigen::VectorXd& u) {
  return {u, hess_energy(spec, u)};
}

Eigen::MatrixXd lift_jacobian(const NormSpec& spec, const LinearSurjection& surj,
                              const Eigen::VectorXd& v, double fd_step,
                              const SolverConfig& cfg) {
  if (v.norm() == 0.0) throw ZeroVector("lift Jacobian undefined at the origin");
  const int d1 = surj.domain_dim();
  const int d2 = surj.range_dim();
  const double h = fd_step * v.norm();
  Eigen::MatrixXd J(d1, d2);
  for (int i = 0; i < d2; ++i) {
    Eigen::VectorXd vp = v;
    Eigen::VectorXd vm = v;
    vp[i] += h;
    vm[i] -= h;
    J.col(i) =
        (lift(spec, surj, vp, cfg).point - lift(spec, surj, vm, cfg).point) /
        (2.0 * h);
  }
  return J;
}

double horizontality_defect(const NormSpec& spec, const LinearSurjection& surj,
                            const Eigen::VectorXd& v, double fd_step,
                            const SolverConfig& cfg) {
  const Eigen::MatrixXd J = lift_jacobian(spec, surj, v, fd_step, cfg);
  const Eigen::VectorXd h = lift(spec, surj, v, cfg).point;
  const Eigen::MatrixXd G = hess_energy(spec, h);
  const double gscale = G.norm();
  double worst = 0.0;
  for (int i = 0; i < J.cols(); ++i) {
    const Eigen::VectorXd Gcol = G * J.col(i);
    const double colscale = J.col(i).norm();
    for (int a = 0; a < surj.fiber_dim(); ++a) {
      const Eigen::VectorXd k = surj.K.col(a);
      const double defect =
          std::abs(k.dot(Gcol)) / (gscale * colscale * k.norm());
      worst = std::max(worst, defect);
    }
  }
  return worst;
}

double euclidean_submersion_defect(const NormSpec& spec,
                                   const LinearSurjection& surj,
                                   const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y, double fd_step,
                                   const SolverConfig& cfg) {
  if (v.norm() == 0.0) throw ZeroVector("defect undefined at the origin");
  const int d2 = surj.range_dim();
  if (x.size() != d2 || y.size() != d2) {
    throw DimensionMismatch("probe vectors must live in the target space");
  }

  auto E2 = [&](const Eigen::VectorXd& p) {
    const double F2 = subduced_norm(spec, surj, p, cfg);
    return 0.5 * F2 * F2;
  };

  const double h = fd_step * v.norm();
  const double center = E2(v);
  Eigen::MatrixXd H2(d2, d2);
  for (int i = 0; i < d2; ++i) {
    Eigen::VectorXd vp = v, vm = v;
    vp[i] += h;
    vm[i] -= h;
    H2(i, i) = (E2(vp) - 2.0 * center + E2(vm)) / (h * h);
    for (int j = i + 1; j < d2; ++j) {
      Eigen::VectorXd vpp = v, vpm = v, vmp = v, vmm = v;
      vpp[i] += h;
      vpp[j] += h;
      vpm[i] += h;
      vpm[j] -= h;
      vmp[i] -= h;
      vmp[j] += h;
      vmm[i] -= h;
      vmm[j] -= h;
      H2(i, j) = (E2(vpp) - E2(vpm) - E2(vmp) + E2(vmm)) / (4.0 * h * h);
      H2(j, i) = H2(i, j);
    }
  }

  const Eigen::MatrixXd J = lift_jacobian(spec, surj, v, 1e-5, cfg);
  const Eigen::MatrixXd G = hess_energy(spec, lift(spec, surj, v, cfg).point);
  const double lhs = x.dot(H2 * y);
  const double rhs = (J * x).dot(G * (J * y));
  return std::abs(lhs - rhs) / (G.norm() * x.norm() * y.norm());
}

}  // namespace finsler
