#include "finsler/chart.hpp"

#include <cmath>

namespace finsler {

namespace {

// Parses "A[i][j]", "b[i]" or "Q[j][r][c]".
std::vector<int> bracket_indices(const std::string& s, std::size_t from,
                                 const std::string& target) {
  std::vector<int> idx;
  std::size_t pos = from;
  while (pos < s.size()) {
    if (s[pos] != '[') throw Error("bad dependency target '" + target + "'");
    const auto close = s.find(']', pos);
    if (close == std::string::npos) {
      throw Error("bad dependency target '" + target + "'");
    }
    const std::string digits = s.substr(pos + 1, close - pos - 1);
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos) {
      throw Error("bad index in dependency target '" + target + "'");
    }
    idx.push_back(std::stoi(digits));
    pos = close + 1;
  }
  return idx;
}

double poly_eval(const std::vector<ChartMonomial>& monomials,
                 const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double total = 0.0;
  for (const auto& m : monomials) {
    double term = m.coef;
    for (std::size_t i = 0; i < m.powers_x.size(); ++i) {
      term *= std::pow(x[static_cast<int>(i)], m.powers_x[i]);
    }
    for (std::size_t a = 0; a < m.powers_y.size(); ++a) {
      term *= std::pow(y[static_cast<int>(a)], m.powers_y[a]);
    }
    total += term;
  }
  return total;
}

void check_chart_point(const ChartFinsler& cf, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y) {
  if (x.size() != cf.n_x() || y.size() != cf.n_y()) {
    throw DimensionMismatch("chart point has the wrong dimensions");
  }
}

double sup_norm(const Eigen::VectorXd& v) {
  return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0;
}

}  // namespace

ChartFinsler::ChartFinsler(int n_x, int n_y, NormSpec base,
                           std::vector<ChartDep> deps,
                           Eigen::VectorXd y_box_lo, Eigen::VectorXd y_box_hi)
    : n_x_(n_x),
      n_y_(n_y),
      base_(std::move(base)),
      deps_(std::move(deps)),
      y_lo_(std::move(y_box_lo)),
      y_hi_(std::move(y_box_hi)) {
  if (n_x_ < 1 || n_y_ < 0) throw DimensionMismatch("invalid chart dimensions");
  if (base_.dim() != n_x_ + n_y_) {
    throw DimensionMismatch("base norm must act on R^(n_x + n_y)");
  }
  if (y_lo_.size() != n_y_ || y_hi_.size() != n_y_) {
    throw DimensionMismatch("fiber box does not match n_y");
  }

  const int d = base_.dim();
  for (const auto& dep : deps_) {
    EntryRef ref;
    const std::string& t = dep.target;
    if (t.rfind("A[", 0) == 0) {
      ref.kind = EntryRef::Kind::A;
      const auto idx = bracket_indices(t, 1, t);
      if (idx.size() != 2) throw Error("target '" + t + "' needs two indices");
      ref.row = idx[0];
      ref.col = idx[1];
    } else if (t.rfind("b[", 0) == 0) {
      ref.kind = EntryRef::Kind::b;
      const auto idx = bracket_indices(t, 1, t);
      if (idx.size() != 1) throw Error("target '" + t + "' needs one index");
      ref.row = idx[0];
    } else if (t.rfind("Q[", 0) == 0) {
      ref.kind = EntryRef::Kind::Q;
      const auto idx = bracket_indices(t, 1, t);
      if (idx.size() != 3) throw Error("target '" + t + "' needs three indices");
      ref.form = idx[0];
      ref.row = idx[1];
      ref.col = idx[2];
    } else {
      throw Error("unknown dependency target '" + t + "'");
    }

    if (ref.row >= d || ref.col >= d) {
      throw DimensionMismatch("target '" + t + "' is out of range");
    }
    if (ref.kind == EntryRef::Kind::A && base_.family == NormFamily::quartic_root) {
      throw Error("target '" + t + "' does not exist in this family");
    }
    if (ref.kind == EntryRef::Kind::b && base_.family != NormFamily::randers) {
      throw Error("target '" + t + "' does not exist in this family");
    }
    if (ref.kind == EntryRef::Kind::Q) {
      if (base_.family != NormFamily::quartic_root ||
          ref.form >= static_cast<int>(base_.Q.size())) {
        throw Error("target '" + t + "' is out of range");
      }
    }
    for (const auto& m : dep.monomials) {
      if (static_cast<int>(m.powers_x.size()) > n_x_ ||
          static_cast<int>(m.powers_y.size()) > n_y_) {
        throw DimensionMismatch("monomial in '" + t + "' has too many powers");
      }
    }
    refs_.push_back(ref);
  }
}

ChartFinsler::ChartFinsler(int n_x, int n_y, NormSpec base,
                           std::vector<ChartDep> deps)
    : ChartFinsler(n_x, n_y, std::move(base), std::move(deps),
                   Eigen::VectorXd::Constant(n_y, -1.0),
                   Eigen::VectorXd::Constant(n_y, 1.0)) {}

NormSpec ChartFinsler::at(const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y) const {
  check_chart_point(*this, x, y);
  NormSpec spec = base_;
  for (std::size_t k = 0; k < deps_.size(); ++k) {
    const auto& ref = refs_[k];
    const double value = poly_eval(deps_[k].monomials, x, y);
    switch (ref.kind) {
      case EntryRef::Kind::A:
        spec.A(ref.row, ref.col) = value;
        spec.A(ref.col, ref.row) = value;
        break;
      case EntryRef::Kind::b:
        spec.b(ref.row) = value;
        break;
      case EntryRef::Kind::Q:
        spec.Q[ref.form](ref.row, ref.col) = value;
        spec.Q[ref.form](ref.col, ref.row) = value;
        break;
    }
  }
  return spec;
}

Eigen::VectorXd splitting_coeffs(const ChartFinsler& cf, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& v,
                                 const SolverConfig& cfg) {
  check_chart_point(cf, x, y);
  if (v.size() != cf.n_x()) {
    throw DimensionMismatch("base velocity has the wrong dimension");
  }
  const auto proj = coordinate_projection(cf.n_x() + cf.n_y(), cf.n_x());
  return lift(cf.at(x, y), proj, v, cfg).point.tail(cf.n_y());
}

Eigen::VectorXd tangency_defect(const ChartFinsler& cf, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y,
                                const Eigen::VectorXd& v, double fd_step,
                                const SolverConfig& cfg) {
  check_chart_point(cf, x, y);
  const auto proj = coordinate_projection(cf.n_x() + cf.n_y(), cf.n_x());
  const Eigen::VectorXd u = lift(cf.at(x, y), proj, v, cfg).point;

  const double h = fd_step * (1.0 + sup_norm(y));
  Eigen::VectorXd defect(cf.n_y());
  for (int a = 0; a < cf.n_y(); ++a) {
    Eigen::VectorXd yp = y, ym = y;
    yp[a] += h;
    ym[a] -= h;
    defect[a] = (energy(cf.at(x, yp), u) - energy(cf.at(x, ym), u)) / (2.0 * h);
  }
  return defect;
}

double fiber_independence_defect(const ChartFinsler& cf, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y1,
                                 const Eigen::VectorXd& y2,
                                 const Eigen::VectorXd& v, double tol,
                                 const SolverConfig& cfg) {
  for (const auto* y : {&y1, &y2}) {
    const double worst =
        sup_norm(tangency_defect(cf, x, *y, v, 1e-5, cfg));
    if (worst > tol) {
      throw TangencyViolated("tangency defect " + std::to_string(worst) +
                             " exceeds " + std::to_string(tol));
    }
  }
  return (splitting_coeffs(cf, x, y1, v, cfg) -
          splitting_coeffs(cf, x, y2, v, cfg))
      .norm();
}

double subduced_finsler(const ChartFinsler& cf, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& v, double tol,
                        const SolverConfig& cfg) {
  if (x.size() != cf.n_x() || v.size() != cf.n_x()) {
    throw DimensionMismatch("base point or velocity has the wrong dimension");
  }
  const Eigen::VectorXd center = 0.5 * (cf.y_box_lo() + cf.y_box_hi());

  std::vector<Eigen::VectorXd> probes{center};
  const int corners = 1 << cf.n_y();
  if (cf.n_y() <= 4) {
    for (int mask = 0; mask < corners; ++mask) {
      Eigen::VectorXd y(cf.n_y());
      for (int a = 0; a < cf.n_y(); ++a) {
        y[a] = (mask >> a) & 1 ? cf.y_box_hi()[a] : cf.y_box_lo()[a];
      }
      probes.push_back(y);
    }
  } else {
    for (int a = 0; a < cf.n_y(); ++a) {
      for (const auto& box : {cf.y_box_lo(), cf.y_box_hi()}) {
        Eigen::VectorXd y = center;
        y[a] = box[a];
        probes.push_back(y);
      }
    }
  }

  for (const auto& y : probes) {
    const double worst =
        sup_norm(tangency_defect(cf, x, y, v, 1e-5, cfg));
    if (worst > tol) {
      throw TangencyViolated("tangency defect " + std::to_string(worst) +
                             " exceeds " + std::to_string(tol) +
                             " inside the fiber box");
    }
  }

  const auto proj = coordinate_projection(cf.n_x() + cf.n_y(), cf.n_x());
  return lift(cf.at(x, center), proj, v, cfg).value;
}

}  // namespace finsler
