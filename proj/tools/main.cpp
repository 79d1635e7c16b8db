#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "finsler/euclid.hpp"
#include "finsler/json_io.hpp"
#include "finsler/lie.hpp"

namespace {

using finsler::NormSpec;
using nlohmann::json;

Eigen::VectorXd parse_vector_arg(const std::string& text) {
  std::vector<double> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw finsler::Error("cannot parse '" + token + "' as a number");
    }
    while (used < token.size() &&
           std::isspace(static_cast<unsigned char>(token[used]))) {
      ++used;
    }
    if (used != token.size()) {
      throw finsler::Error("cannot parse '" + token + "' as a number");
    }
    parts.push_back(value);
  }
  if (parts.empty()) throw finsler::Error("empty vector argument");
  return Eigen::Map<Eigen::VectorXd>(parts.data(), parts.size());
}

std::string scalar_csv(const json& v) {
  if (v.is_null()) return "";
  return v.dump();
}

// One header line and one value line; numeric arrays fan out into
// indexed columns.
std::string flat_object_csv(const json& j) {
  std::string header, row;
  bool first = true;
  auto push = [&](const std::string& name, const json& value) {
    if (!first) {
      header += ",";
      row += ",";
    }
    first = false;
    header += name;
    row += scalar_csv(value);
  };
  for (const auto& [key, value] : j.items()) {
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        push(key + "_" + std::to_string(i), value[i]);
      }
    } else if (!value.is_object()) {
      push(key, value);
    }
  }
  return header + "\n" + row + "\n";
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw finsler::Error("cannot write '" + out_path + "'");
  out << text;
}

void emit(const json& j, const std::string& format, const std::string& out_path) {
  emit_text(format == "csv" ? flat_object_csv(j) : j.dump(2) + "\n", out_path);
}

NormSpec load_norm(const std::string& path) {
  return finsler::norm_from_json(finsler::load_json_file(path));
}

// Algebra norms can be named instead of stored in a file.
NormSpec load_norm_or_builtin(const std::string& arg) {
  const auto cand = finsler::lie::candidate_norms();
  if (arg == "f") return cand.f;
  if (arg == "fhat") return cand.fhat;
  if (arg == "ftilde") return cand.ftilde;
  return load_norm(arg);
}

int run_verify_norm(const std::string& norm_path, int samples,
                    std::uint64_t seed, double tol, const std::string& format,
                    const std::string& out_path) {
  const auto rep = finsler::verify_minkowski(load_norm(norm_path), samples,
                                             seed, tol);
  emit(finsler::report_to_json(rep), format, out_path);
  return rep.passed ? 0 : 1;
}

int run_lift(const std::string& norm_path, const std::string& mu_path,
             const std::string& v_text, const finsler::SolverConfig& cfg,
             const std::string& format, const std::string& out_path) {
  const auto spec = load_norm(norm_path);
  const auto surj =
      finsler::surjection_from_json(finsler::load_json_file(mu_path));
  const auto sol = finsler::lift(spec, surj, parse_vector_arg(v_text), cfg);
  emit(finsler::lift_to_json(sol), format, out_path);
  return 0;
}

int run_subduce(const std::string& norm_path, const std::string& mu_path,
                const std::string& v_text, const finsler::SolverConfig& cfg,
                const std::string& format, const std::string& out_path) {
  const auto spec = load_norm(norm_path);
  const auto surj =
      finsler::surjection_from_json(finsler::load_json_file(mu_path));
  const auto v = parse_vector_arg(v_text);
  const auto sol = finsler::lift(spec, surj, v, cfg);
  json j;
  j["v"] = finsler::vec_to_json(v);
  j["value"] = sol.value;
  j["degenerate"] = sol.degenerate;
  emit(j, format, out_path);
  return 0;
}

int run_verify_submersion(const std::string& norm1_path,
                          const std::string& mu_path,
                          const std::string& norm2_path, int samples,
                          std::uint64_t seed, double tol,
                          const std::string& format,
                          const std::string& out_path) {
  const auto spec1 = load_norm(norm1_path);
  const auto surj =
      finsler::surjection_from_json(finsler::load_json_file(mu_path));
  const auto spec2 = load_norm(norm2_path);
  const auto rep =
      finsler::verify_submersion(spec1, surj, spec2, samples, seed, tol);
  emit(finsler::report_to_json(rep), format, out_path);
  return rep.passed ? 0 : 1;
}

int run_tangency(const std::string& chart_path, const std::string& x_text,
                 const std::string& y_text, const std::string& v_text,
                 const std::string& format, const std::string& out_path) {
  const auto cf = finsler::chart_from_json(finsler::load_json_file(chart_path));
  const auto defect =
      finsler::tangency_defect(cf, parse_vector_arg(x_text),
                               parse_vector_arg(y_text), parse_vector_arg(v_text));
  json j{{"defect", finsler::vec_to_json(defect)},
         {"max_abs_defect",
          defect.size() ? defect.cwiseAbs().maxCoeff() : 0.0}};
  emit(j, format, out_path);
  return 0;
}

int run_so4_demo(const std::string& format, const std::string& out_path) {
  const auto split = finsler::lie::so4();
  const auto cand = finsler::lie::candidate_norms();
  const auto [q1, q2] = finsler::lie::invariant_polys();

  json basis = json::array();
  for (const auto& e : split.sc.rep) basis.push_back(finsler::mat_to_json(e));
  json constants = json::array();
  for (int a = 0; a < 6; ++a) {
    json byb = json::array();
    for (int b = 0; b < 6; ++b) {
      json byc = json::array();
      for (int c = 0; c < 6; ++c) byc.push_back(split.sc.C(a, b, c));
      byb.push_back(byc);
    }
    constants.push_back(byb);
  }

  Eigen::VectorXd zeta(3);
  zeta << 1.0, 0.0, 0.0;
  json norms;
  for (const auto& [name, spec] :
       {std::pair<const char*, const NormSpec*>{"f", &cand.f},
        {"fhat", &cand.fhat},
        {"ftilde", &cand.ftilde}}) {
    const auto sub = finsler::lie::subduce_to_m(split, *spec);
    const auto sol = sub.lift(zeta);
    norms[name] = json{{"subduced_at_100", sol.value},
                       {"lift_of_100", finsler::vec_to_json(sol.point)}};
  }

  const json j{{"basis", basis},
               {"structure_constants", constants},
               {"killing", finsler::mat_to_json(
                               finsler::lie::killing_matrix(split.sc))},
               {"killing_scale", split.killing_scale},
               {"invariant_forms", json{{"L1", finsler::mat_to_json(q1)},
                                        {"L2", finsler::mat_to_json(q2)}}},
               {"defects",
                json{{"antisymmetry",
                      finsler::lie::antisymmetry_defect(split.sc)},
                     {"jacobi", finsler::lie::jacobi_defect(split.sc)},
                     {"rep_consistency",
                      finsler::lie::rep_consistency_defect(split.sc)},
                     {"reductivity", finsler::lie::reductivity_defect(split)}}},
               {"norms", norms}};

  if (format == "csv") {
    std::string text = "name,value\n";
    text += "killing_scale," + scalar_csv(j["killing_scale"]) + "\n";
    for (const auto& [key, value] : j["defects"].items()) {
      text += "defect_" + key + "," + scalar_csv(value) + "\n";
    }
    for (const auto& [key, value] : j["norms"].items()) {
      text += "subduced_" + key + "_at_100," +
              scalar_csv(value["subduced_at_100"]) + "\n";
    }
    emit_text(text, out_path);
  } else {
    emit(j, "json", out_path);
  }
  return 0;
}

int run_cone(const std::string& norm_arg, int n, std::uint64_t seed,
             const std::string& format, const std::string& out_path) {
  const auto split = finsler::lie::so4();
  const auto sub =
      finsler::lie::subduce_to_m(split, load_norm_or_builtin(norm_arg));
  const auto points = finsler::lie::cone_sample(sub, n, seed);
  if (format == "csv") {
    std::string text = "w0,w1,w2,w3,w4,w5\n";
    for (const auto& p : points) {
      for (int i = 0; i < p.size(); ++i) {
        text += json(p[i]).dump() + (i + 1 < p.size() ? "," : "");
      }
      text += "\n";
    }
    emit_text(text, out_path);
  } else {
    json arr = json::array();
    for (const auto& p : points) arr.push_back(finsler::vec_to_json(p));
    emit(json{{"points", arr}}, "json", out_path);
  }
  return 0;
}

// Plot data for the two-dimensional worked example: the unit circle of
// the norm, the two rays the lift map fills, and the locus where the
// quadratic part alone would put them.
int run_randers_figure(const std::string& out_path) {
  const double r = std::sqrt(3.0);
  std::string text = "kind,param,x,y\n";
  auto row = [&](const char* kind, double p, double x, double y) {
    text += std::string(kind) + "," + json(p).dump() + "," + json(x).dump() +
            "," + json(y).dump() + "\n";
  };
  for (int k = 0; k <= 360; ++k) {
    const double th = k * M_PI / 180.0;
    row("circle", k, -1.0 + r * std::cos(th), -1.0 + r * std::sin(th));
  }
  for (int k = 0; k <= 60; ++k) {
    const double t = k * 0.025;
    row("lift_ray_pos", t, t * (r - 1.0), -t);
    row("lift_ray_neg", t, t * (-r - 1.0), -t);
  }
  for (int k = 0; k <= 60; ++k) {
    const double v = -3.0 + k * 0.1;
    row("quadratic_locus", v, v, -0.5 * v);
  }
  emit_text(text, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minkowski norms, fiberwise-minimizing lifts and subduced "
               "Finsler structures"};
  app.require_subcommand(1);

  std::string norm_path, norm2_path, mu_path, chart_path;
  std::string v_text, x_text, y_text;
  std::string format = "json";
  std::string out_path;
  int samples = 500;
  int cone_n = 100;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  finsler::SolverConfig cfg;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out_path, "write to a file instead of stdout");
  };

  auto* verify_norm = app.add_subcommand(
      "verify-norm", "certify that a norm spec is a Minkowski norm");
  verify_norm->add_option("--norm", norm_path)->required();
  verify_norm->add_option("--samples", samples);
  verify_norm->add_option("--seed", seed);
  verify_norm->add_option("--tol", tol);
  add_output(verify_norm);

  auto* lift_cmd = app.add_subcommand(
      "lift", "minimize a norm over the fiber of a linear surjection");
  lift_cmd->add_option("--norm", norm_path)->required();
  lift_cmd->add_option("--mu", mu_path)->required();
  lift_cmd->add_option("--v", v_text, "comma-separated target vector")
      ->required();
  lift_cmd->add_option("--tol", cfg.tol, "solver tolerance");
  lift_cmd->add_option("--max-iter", cfg.max_iter);
  add_output(lift_cmd);

  auto* subduce_cmd = app.add_subcommand(
      "subduce", "evaluate the norm induced through a linear surjection");
  subduce_cmd->add_option("--norm", norm_path)->required();
  subduce_cmd->add_option("--mu", mu_path)->required();
  subduce_cmd->add_option("--v", v_text, "comma-separated target vector")
      ->required();
  subduce_cmd->add_option("--tol", cfg.tol, "solver tolerance");
  subduce_cmd->add_option("--max-iter", cfg.max_iter);
  add_output(subduce_cmd);

  auto* verify_sub = app.add_subcommand(
      "verify-submersion",
      "check that a target norm matches the subduced norm of a source");
  verify_sub->add_option("--norm1", norm_path)->required();
  verify_sub->add_option("--mu", mu_path)->required();
  verify_sub->add_option("--norm2", norm2_path)->required();
  verify_sub->add_option("--samples", samples);
  verify_sub->add_option("--seed", seed);
  verify_sub->add_option("--tol", tol);
  add_output(verify_sub);

  auto* tangency_cmd = app.add_subcommand(
      "tangency", "fiber-derivative defect of a chart family at a point");
  tangency_cmd->add_option("--chart", chart_path)->required();
  tangency_cmd->add_option("--x", x_text)->required();
  tangency_cmd->add_option("--y", y_text)->required();
  tangency_cmd->add_option("--v", v_text)->required();
  add_output(tangency_cmd);

  auto* demo = app.add_subcommand(
      "so4-demo", "rotation-algebra worked example: basis, invariants, lifts");
  add_output(demo);

  auto* cone_cmd = app.add_subcommand(
      "cone", "sample the lifted cone of an algebra norm (f, fhat, ftilde "
              "or a spec file)");
  cone_cmd->add_option("--norm", norm_path)->required();
  cone_cmd->add_option("--n", cone_n, "number of sampled directions");
  cone_cmd->add_option("--seed", seed);
  add_output(cone_cmd);

  auto* figure = app.add_subcommand(
      "randers-figure", "CSV plot data for the planar worked example");
  figure->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify_norm) {
      return run_verify_norm(norm_path, samples, seed, tol, format, out_path);
    }
    if (*lift_cmd) {
      return run_lift(norm_path, mu_path, v_text, cfg, format, out_path);
    }
    if (*subduce_cmd) {
      return run_subduce(norm_path, mu_path, v_text, cfg, format, out_path);
    }
    if (*verify_sub) {
      return run_verify_submersion(norm_path, mu_path, norm2_path, samples,
                                   seed, tol, format, out_path);
    }
    if (*tangency_cmd) {
      return run_tangency(chart_path, x_text, y_text, v_text, format, out_path);
    }
    if (*demo) return run_so4_demo(format, out_path);
    if (*cone_cmd) return run_cone(norm_path, cone_n, seed, format, out_path);
    if (*figure) return run_randers_figure(out_path);
  } catch (const finsler::MaxIterations& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const finsler::NonConvexEncountered& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const finsler::TangencyViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const finsler::SingularKilling& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const finsler::NotInGroup& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const finsler::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
