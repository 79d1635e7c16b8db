#include "finsler/json_io.hpp"

#include <fstream>
#include <sstream>

namespace finsler {

using nlohmann::json;

namespace {

[[noreturn]] void throw_located(const std::string& text, std::size_t byte,
                                const std::string& what) {
  int line = 1;
  int column = 1;
  const std::size_t end = byte > 0 ? std::min(byte - 1, text.size()) : 0;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw ParseError("line " + std::to_string(line) + ", column " +
                       std::to_string(column) + ": " + what,
                   line, column);
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw Error(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

double number_field(const json& j, const char* name, double fallback,
                    bool required = false) {
  if (!j.is_object() || !j.contains(name)) {
    if (required) throw Error(std::string("missing field '") + name + "'");
    return fallback;
  }
  const auto& v = j.at(name);
  if (!v.is_number()) throw Error(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

std::vector<int> int_list(const json& j, const char* name) {
  std::vector<int> out;
  if (!j.contains(name)) return out;
  const auto& arr = j.at(name);
  if (!arr.is_array()) throw Error(std::string("field '") + name + "' must be an array");
  for (const auto& e : arr) {
    if (!e.is_number_integer()) {
      throw Error(std::string("field '") + name + "' must hold integers");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw_located(text, e.byte, e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

Eigen::VectorXd vec_from_json(const json& j) {
  if (!j.is_array()) throw Error("expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error("expected an array of numbers");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("expected an array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXd m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw Error("matrix rows have unequal lengths");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw Error("matrix entries must be numbers");
      m(static_cast<int>(r), static_cast<int>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

json vec_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json mat_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

NormSpec norm_from_json(const json& j) {
  const std::string family = field(j, "family").get<std::string>();
  if (family == "euclidean") {
    return NormSpec::euclidean(mat_from_json(field(j, "A")));
  }
  if (family == "randers") {
    return NormSpec::randers(mat_from_json(field(j, "A")),
                             vec_from_json(field(j, "b")));
  }
  if (family == "quartic_root") {
    const auto& forms = field(j, "Q");
    if (!forms.is_array() || forms.empty()) {
      throw Error("field 'Q' must be a nonempty array of matrices");
    }
    std::vector<Eigen::MatrixXd> Q;
    for (const auto& f : forms) Q.push_back(mat_from_json(f));
    return NormSpec::quartic_root(std::move(Q));
  }
  throw Error("unknown norm family '" + family + "'");
}

json norm_to_json(const NormSpec& spec) {
  json j;
  switch (spec.family) {
    case NormFamily::euclidean:
      j["family"] = "euclidean";
      j["A"] = mat_to_json(spec.A);
      break;
    case NormFamily::randers:
      j["family"] = "randers";
      j["A"] = mat_to_json(spec.A);
      j["b"] = vec_to_json(spec.b);
      break;
    case NormFamily::quartic_root: {
      j["family"] = "quartic_root";
      json forms = json::array();
      for (const auto& Qj : spec.Q) forms.push_back(mat_to_json(Qj));
      j["Q"] = forms;
      break;
    }
  }
  return j;
}

LinearSurjection surjection_from_json(const json& j) {
  return make_surjection(mat_from_json(field(j, "M")));
}

json surjection_to_json(const LinearSurjection& surj) {
  return json{{"M", mat_to_json(surj.M)}};
}

SolverConfig solver_from_json(const json& j) {
  SolverConfig cfg;
  cfg.tol = number_field(j, "tol", cfg.tol);
  cfg.max_iter = static_cast<int>(number_field(j, "max_iter", cfg.max_iter));
  return cfg;
}

json solver_to_json(const SolverConfig& cfg) {
  return json{{"tol", cfg.tol}, {"max_iter", cfg.max_iter}};
}

json lift_to_json(const LiftSolution& sol) {
  return json{{"point", vec_to_json(sol.point)}, {"value", sol.value},
              {"residual", sol.residual},       {"iterations", sol.iterations},
              {"converged", sol.converged},     {"degenerate", sol.degenerate}};
}

json report_to_json(const VerificationReport& rep) {
  json j{{"passed", rep.passed},
         {"min_hessian_eigenvalue", rep.min_hessian_eigenvalue},
         {"worst_homogeneity_defect", rep.worst_homogeneity_defect},
         {"worst_triangle_defect", rep.worst_triangle_defect},
         {"worst_fundamental_defect", rep.worst_fundamental_defect},
         {"worst_match_defect", rep.worst_match_defect},
         {"worst_inequality_defect", rep.worst_inequality_defect},
         {"samples_used", rep.samples_used}};
  j["failure_witness"] =
      rep.failure_witness ? vec_to_json(*rep.failure_witness) : json(nullptr);
  return j;
}

ChartFinsler chart_from_json(const json& j) {
  const int n_x = static_cast<int>(number_field(j, "n_x", 0, true));
  const int n_y = static_cast<int>(number_field(j, "n_y", 0, true));
  NormSpec base = norm_from_json(field(j, "base_spec"));

  std::vector<ChartDep> deps;
  if (j.contains("poly_deps")) {
    const auto& arr = j.at("poly_deps");
    if (!arr.is_array()) throw Error("field 'poly_deps' must be an array");
    for (const auto& d : arr) {
      ChartDep dep;
      dep.target = field(d, "target").get<std::string>();
      const auto& monos = field(d, "monomials");
      if (!monos.is_array()) throw Error("field 'monomials' must be an array");
      for (const auto& m : monos) {
        ChartMonomial cm;
        cm.powers_x = int_list(m, "powers_x");
        cm.powers_y = int_list(m, "powers_y");
        cm.coef = number_field(m, "coef", 0.0, true);
        dep.monomials.push_back(std::move(cm));
      }
      deps.push_back(std::move(dep));
    }
  }

  if (j.contains("box")) {
    const auto& box = j.at("box");
    return ChartFinsler(n_x, n_y, std::move(base), std::move(deps),
                        vec_from_json(field(box, "y_lo")),
                        vec_from_json(field(box, "y_hi")));
  }
  return ChartFinsler(n_x, n_y, std::move(base), std::move(deps));
}

json chart_to_json(const ChartFinsler& cf) {
  json deps = json::array();
  for (const auto& dep : cf.deps()) {
    json monos = json::array();
    for (const auto& m : dep.monomials) {
      monos.push_back(json{{"powers_x", m.powers_x},
                           {"powers_y", m.powers_y},
                           {"coef", m.coef}});
    }
    deps.push_back(json{{"target", dep.target}, {"monomials", monos}});
  }
  return json{{"n_x", cf.n_x()},
              {"n_y", cf.n_y()},
              {"base_spec", norm_to_json(cf.base())},
              {"poly_deps", deps},
              {"box", json{{"y_lo", vec_to_json(cf.y_box_lo())},
                           {"y_hi", vec_to_json(cf.y_box_hi())}}}};
}

}  // namespace finsler
