#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "helpers.hpp"

namespace {

const std::string kCli = FINSLER_CLI_PATH;
const std::string kData = FINSLER_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const std::string out_path = "/tmp/finsler_cli_test.out";
  const std::string err_path = "/tmp/finsler_cli_test.err";
  const std::string cmd =
      "'" + kCli + "' " + args + " > " + out_path + " 2> " + err_path;
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = (rc >= 0) ? ((rc >> 8) & 0xff) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::string data(const std::string& name) { return "'" + kData + "/" + name + "'"; }

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("verify-norm distinguishes valid and invalid specs") {
  const auto good = run("verify-norm --norm " + data("randers.json"));
  CHECK(good.exit_code == 0);
  const auto jg = nlohmann::json::parse(good.out);
  CHECK(jg.at("passed").get<bool>());
  CHECK(jg.at("failure_witness").is_null());

  const auto bad = run("verify-norm --norm " + data("randers_bad.json"));
  CHECK(bad.exit_code == 1);
  const auto jb = nlohmann::json::parse(bad.out);
  CHECK(!jb.at("passed").get<bool>());
  CHECK(jb.at("failure_witness").is_array());
}

TEST_CASE("missing and malformed inputs exit with code 2") {
  CHECK(run("verify-norm --norm /tmp/does_not_exist.json").exit_code == 2);

  const std::string broken = "/tmp/finsler_cli_broken.json";
  std::ofstream(broken) << "{\n  \"family\": \n}";
  const auto r = run("verify-norm --norm '" + broken + "'");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line") != std::string::npos);

  CHECK(run("--definitely-not-a-flag").exit_code == 2);
  CHECK(run("lift --norm " + data("randers.json") + " --mu " +
            data("proj.json") + " --v 1,2")
            .exit_code == 2);
}

TEST_CASE("lift reproduces the planar worked example") {
  const auto r = run("lift --norm " + data("randers.json") + " --mu " +
                     data("proj.json") + " --v 1");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto pt = j.at("point");
  REQUIRE(pt.size() == 2);
  CHECK(std::abs(pt[0].get<double>() - 1.0) < 1e-8);
  CHECK(std::abs(pt[1].get<double>() - testutil::kPlanarLiftSlope) < 1e-8);
  CHECK(j.at("converged").get<bool>());
  CHECK(!j.at("degenerate").get<bool>());
}

TEST_CASE("lift of the zero vector is degenerate but successful") {
  const auto r = run("lift --norm " + data("randers.json") + " --mu " +
                     data("proj.json") + " --v 0");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("degenerate").get<bool>());
  CHECK(j.at("value").get<double>() == 0.0);
}

TEST_CASE("subduce reports the induced norm value") {
  const auto plus = run("subduce --norm " + data("randers.json") + " --mu " +
                        data("proj.json") + " --v 1");
  REQUIRE(plus.exit_code == 0);
  const auto jp = nlohmann::json::parse(plus.out);
  CHECK(std::abs(jp.at("value").get<double>() - testutil::kPlanarSubPlus) < 1e-8);

  const auto minus = run("subduce --norm " + data("randers.json") + " --mu " +
                         data("proj.json") + " --v -1");
  REQUIRE(minus.exit_code == 0);
  const auto jm = nlohmann::json::parse(minus.out);
  CHECK(std::abs(jm.at("value").get<double>() - testutil::kPlanarSubMinus) < 1e-8);
}

TEST_CASE("verify-submersion separates right and wrong encodings") {
  const std::string base = "verify-submersion --norm1 " + data("fhat.json") +
                           " --mu " + data("proj_m.json");
  CHECK(run(base + " --norm2 " + data("sub_fhat.json") + " --tol 1e-8").exit_code ==
        0);
  CHECK(run(base + " --norm2 " + data("sub_f.json") + " --tol 1e-8").exit_code ==
        1);
}

TEST_CASE("tangency reports the fiber derivative of the designated family") {
  const auto r = run("tangency --chart " + data("chart_ydep.json") +
                     " --x 0 --y 1 --v 1");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("defect").size() == 1);
  CHECK(std::abs(j.at("defect")[0].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("so4-demo emits the full worked example") {
  const auto r = run("so4-demo");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (int a = 0; a < 6; ++a)
    CHECK(j.at("killing")[a][a].get<double>() == -4.0);
  CHECK(j.at("killing_scale").get<double>() == 4.0);
  CHECK(j.at("defects").at("jacobi").get<double>() == 0.0);
  CHECK(j.at("defects").at("reductivity").get<double>() == 0.0);
  const auto& fhat = j.at("norms").at("fhat");
  CHECK(std::abs(fhat.at("subduced_at_100").get<double>() - testutil::kRoot4Of2) <
        1e-8);
  const auto& tilde_lift = j.at("norms").at("ftilde").at("lift_of_100");
  CHECK(std::abs(tilde_lift[0].get<double>() - testutil::kTStar) < 1e-6);

  const auto csv = run("so4-demo --format csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("name,value", 0) == 0);
}

TEST_CASE("cone emits one sample per row") {
  const auto r = run("cone --norm ftilde --n 5 --seed 3 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("w0,w1,w2,w3,w4,w5", 0) == 0);
  CHECK(count_lines(r.out) == 6);
  const auto j = run("cone --norm ftilde --n 5 --seed 3");
  REQUIRE(j.exit_code == 0);
  CHECK(nlohmann::json::parse(j.out).at("points").size() == 5);
}

TEST_CASE("randers-figure emits the expected plot rows") {
  const auto r = run("randers-figure");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("kind,param,x,y", 0) == 0);
  // 361 circle points, two rays of 61 points, 61 locus points, one header.
  CHECK(count_lines(r.out) == 545);
  CHECK(r.out.find("circle") != std::string::npos);
  CHECK(r.out.find("lift_ray_pos") != std::string::npos);
  CHECK(r.out.find("lift_ray_neg") != std::string::npos);
  CHECK(r.out.find("quadratic_locus") != std::string::npos);
}

TEST_CASE("identical invocations produce identical bytes") {
  const auto a = run("so4-demo");
  const auto b = run("so4-demo");
  CHECK(a.out == b.out);
  const auto c1 = run("cone --norm fhat --n 7 --seed 11");
  const auto c2 = run("cone --norm fhat --n 7 --seed 11");
  CHECK(c1.out == c2.out);
}

TEST_CASE("emitted json re-parses to the same values") {
  const auto r = run("lift --norm " + data("randers.json") + " --mu " +
                     data("proj.json") + " --v 0.37");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto again = nlohmann::json::parse(j.dump());
  CHECK(again == j);
}

TEST_CASE("--out writes the same content the pipe would carry") {
  const std::string path = "/tmp/finsler_cli_outfile.json";
  std::remove(path.c_str());
  const auto direct = run("subduce --norm " + data("randers.json") + " --mu " +
                          data("proj.json") + " --v 2");
  const auto filed = run("subduce --norm " + data("randers.json") + " --mu " +
                         data("proj.json") + " --v 2 --out '" + path + "'");
  REQUIRE(filed.exit_code == 0);
  CHECK(slurp(path) == direct.out);
}
