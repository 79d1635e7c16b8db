#pragma once

#include <json.hpp>

#include <string>

#include "finsler/chart.hpp"
#include "finsler/minksub.hpp"

namespace finsler {

/// Wrappers around nlohmann parsing that turn syntax errors into
/// ParseError carrying a line/column location.
nlohmann::json parse_json_text(const std::string& text);
nlohmann::json load_json_file(const std::string& path);

Eigen::VectorXd vec_from_json(const nlohmann::json& j);
Eigen::MatrixXd mat_from_json(const nlohmann::json& j);
nlohmann::json vec_to_json(const Eigen::VectorXd& v);
nlohmann::json mat_to_json(const Eigen::MatrixXd& m);

/// Norm specs serialize as {"family": ..., "A": ..., "b": ..., "Q": ...}
/// with only the fields the family uses.
NormSpec norm_from_json(const nlohmann::json& j);
nlohmann::json norm_to_json(const NormSpec& spec);

/// Surjections serialize as {"M": [[...]]}; the decomposition is rebuilt
/// on load.
LinearSurjection surjection_from_json(const nlohmann::json& j);
nlohmann::json surjection_to_json(const LinearSurjection& surj);

SolverConfig solver_from_json(const nlohmann::json& j);
nlohmann::json solver_to_json(const SolverConfig& cfg);

nlohmann::json lift_to_json(const LiftSolution& sol);
nlohmann::json report_to_json(const VerificationReport& rep);

/// Chart families serialize as {"n_x", "n_y", "base_spec", "poly_deps",
/// "box"} where poly_deps entries are {"target", "monomials"} and each
/// monomial is {"powers_x", "powers_y", "coef"}. box is optional and
/// defaults to [-1, 1] per fiber axis.
ChartFinsler chart_from_json(const nlohmann::json& j);
nlohmann::json chart_to_json(const ChartFinsler& cf);

}  // namespace finsler
