#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "polyscar/config.hpp"

using namespace polyscar;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  std::string cmd = std::string(POLYSCAR_BIN) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string cfg(const std::string& name) { return std::string(POLYSCAR_CONFIG_DIR) + "/" + name; }

} // namespace

TEST_CASE("config files parse into billiard specs") {
  auto c = load_config(cfg("triangle.cfg"));
  auto spec = spec_from_config(c);
  CHECK(spec.family == Family::Triangle);
  CHECK(approx_from_config(c) == Ratio(3363, 2378));
  CHECK(variant_from_config(c) == Variant::U);

  auto r = spec_from_config(load_config(cfg("rectangle_unit.cfg")));
  CHECK(r.family == Family::Rectangle);
  CHECK(r.size_a == Quad(1));

  auto p = spec_from_config(load_config(cfg("parallelogram_L4.cfg")));
  CHECK(p.L == Ratio(4));

  auto l = spec_from_config(load_config(cfg("lshape.cfg")));
  CHECK(l.l_alpha() == 2);

  auto bad = spec_from_config(load_config(cfg("rectangle_incompatible.cfg")));
  CHECK_FALSE(((bad.size_b * bad.size_b) / (bad.size_a * bad.size_a)).is_rational());
}

TEST_CASE("spectrum command: expected rows and determinism") {
  std::string out1 = "/tmp/polyscar_spec1.csv", out2 = "/tmp/polyscar_spec2.csv";
  std::string args = "spectrum --config " + cfg("triangle.cfg") +
                     " --variant u --max-m 300 --max-n 2 --out ";
  REQUIRE(run(args + out1) == 0);
  REQUIRE(run(args + out2) == 0);
  std::string a = slurp(out1);
  CHECK(a == slurp(out2)); // byte-identical across runs
  CHECK(a.find("triangle,aperiodic,u,121,1,") != std::string::npos);
  CHECK(a.find("triangle,aperiodic,u,191,1,") != std::string::npos);
  CHECK(a.find("triangle,aperiodic,u,266,1,") != std::string::npos);
}

TEST_CASE("CLI error codes") {
  // empty quantum-number range -> usage error (2)
  CHECK(run("spectrum --config " + cfg("triangle.cfg") + " --max-m 0") == 2);
  // unknown format -> 2
  CHECK(run("spectrum --config " + cfg("triangle.cfg") + " --format yaml") == 2);
  // incompatible rectangle sizes on a periodic skeleton -> 3 with a report
  CHECK(run("spectrum --config " + cfg("rectangle_incompatible.cfg") + " --skeleton 1,1") == 3);
  // missing config file -> 2
  CHECK(run("spectrum --config /nonexistent.cfg") == 2);
  // bouncing skeleton on the same sizes is fine
  CHECK(run("spectrum --config " + cfg("rectangle_incompatible.cfg") + " --skeleton 1,0") == 0);
}

TEST_CASE("ratio-check output") {
  std::string out = "/tmp/polyscar_ratio.txt";
  REQUIRE(run("ratio-check --out " + out) == 0);
  std::string s = slurp(out);
  CHECK(s.find("2.4916") != std::string::npos);
  CHECK(s.find("1.9395") != std::string::npos);
  CHECK(s.find("2.4937") != std::string::npos);
  CHECK(s.find("1.9380") != std::string::npos);
  CHECK(s.find("0.084") != std::string::npos);
  CHECK(s.find("0.078") != std::string::npos); // 0.0776% rounded at three digits
}

TEST_CASE("verify and field and unfold commands") {
  REQUIRE(run("verify --config " + cfg("rectangle_unit.cfg") +
              " --check decomposition --m 1 --n 1 --grid 60 --out /tmp/polyscar_verify.json") == 0);
  std::string rep = slurp("/tmp/polyscar_verify.json");
  CHECK(rep.find("\"pass\": true") != std::string::npos);
  CHECK(rep.find("max_abs") != std::string::npos);

  REQUIRE(run("field --config " + cfg("rectangle_unit.cfg") +
              " --mode exact --m 2 --n 1 --grid 32 --format pgm --out /tmp/polyscar_f.pgm") == 0);
  CHECK(slurp("/tmp/polyscar_f.pgm").substr(0, 2) == "P5");

  // golden-file stability of the unfold output
  std::string u1 = "/tmp/polyscar_u1.csv", u2 = "/tmp/polyscar_u2.csv";
  REQUIRE(run("unfold --config " + cfg("rectangle_unit.cfg") + " --direction 2,1 --out " + u1) == 0);
  REQUIRE(run("unfold --config " + cfg("rectangle_unit.cfg") + " --direction 2,1 --out " + u2) == 0);
  CHECK(slurp(u1) == slurp(u2));
  CHECK(slurp(u1).find("x,y,id") == 0);
}
