// Drives the installed command line binary end to end. The binary path
// comes from the FINE_CLI environment variable (set by ctest).

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fine/construct.hpp"
#include "fine/moments.hpp"
#include "io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("FINE_CLI");
  REQUIRE_MESSAGE(p != nullptr, "FINE_CLI must point at the fine binary");
  return p;
}

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "fine_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_marginals(const std::string& name, double c13, double c14,
                            double c23, double c24) {
  const fine::PairMarginals pm =
      fine::make_pair_marginals({0, 0, 0, 0}, c13, c14, c23, c24);
  const fs::path p = scratch() / name;
  fine::cli::write_file(p.string(), fine::cli::marginals_to_json(pm, 1e-10));
  return p.string();
}

std::string slurp(const std::string& path) {
  return fine::cli::read_file(path);
}

}  // namespace

TEST_CASE("check: uniform marginals pass") {
  const std::string f = write_marginals("uniform.json", 0, 0, 0, 0);
  const RunResult r = run("check " + f);
  CHECK(r.exit_code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep["chsh"]["pass"] == true);
  CHECK(rep["command"] == "check");
}

TEST_CASE("check: the maximally nonlocal point fails with value 4") {
  const std::string f = write_marginals("prbox.json", 1, 1, 1, -1);
  const RunResult r = run("check " + f);
  CHECK(r.exit_code == 2);
  const json rep = json::parse(r.out);
  CHECK(rep["chsh"]["pass"] == false);
  CHECK(rep["chsh"]["combos"][0].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("check: malformed normalization is a usage error") {
  const fs::path p = scratch() / "badsum.json";
  fine::cli::write_file(
      p.string(),
      R"({"pairs": {"13": [[0.2,0.2],[0.2,0.3]], "14": [[0.25,0.25],[0.25,0.25]],)"
      R"( "23": [[0.25,0.25],[0.25,0.25]], "24": [[0.25,0.25],[0.25,0.25]]}})");
  const RunResult r = run("check " + p.string());
  CHECK(r.exit_code == 1);
}

TEST_CASE("check: unparsable json is a usage error") {
  const fs::path p = scratch() / "garbage.json";
  fine::cli::write_file(p.string(), "{not json");
  const RunResult r = run("check " + p.string());
  CHECK(r.exit_code == 1);
}

TEST_CASE("construct: fully correlated marginals give the two-atom witness") {
  const std::string f = write_marginals("corr.json", 1, 1, 1, 1);
  const fs::path w = scratch() / "witness_corr.json";
  const RunResult r = run("construct " + f + " --out " + w.string());
  CHECK(r.exit_code == 0);
  const fine::JointDist4 d =
      fine::cli::parse_witness(slurp(w.string()), 1e-12);
  CHECK(d.p[0] == doctest::Approx(0.5));
  CHECK(d.p[15] == doctest::Approx(0.5));
}

TEST_CASE("construct: emitted witnesses re-validate against their inputs") {
  const double cs[][4] = {{0.5, 0.5, 0.5, -0.5},
                          {0.3, -0.7, 0.2, 0.55},
                          {-0.9, 0.05, 0.6, 0.4}};
  int idx = 0;
  for (const auto& c : cs) {
    const std::string f = write_marginals("reval" + std::to_string(idx) + ".json",
                                          c[0], c[1], c[2], c[3]);
    const fs::path w = scratch() / ("wit" + std::to_string(idx) + ".json");
    for (const char* method : {"algebraic", "lp", "maxent"}) {
      const RunResult r =
          run("construct " + f + " --method " + method + " --out " + w.string());
      REQUIRE(r.exit_code == 0);
      const fine::JointDist4 d =
          fine::cli::parse_witness(slurp(w.string()), 1e-12);
      const fine::MomentVector m = fine::joint_to_moments(d);
      CHECK(std::abs(m.c(fine::Pair::p13) - c[0]) < 1e-8);
      CHECK(std::abs(m.c(fine::Pair::p14) - c[1]) < 1e-8);
      CHECK(std::abs(m.c(fine::Pair::p23) - c[2]) < 1e-8);
      CHECK(std::abs(m.c(fine::Pair::p24) - c[3]) < 1e-8);
    }
    ++idx;
  }
}

TEST_CASE("construct: lp method reports infeasibility with exit 2") {
  const std::string f = write_marginals("tsi.json", 0.7071067811865475,
                                        0.7071067811865475, 0.7071067811865475,
                                        -0.7071067811865475);
  const RunResult r = run("construct " + f + " --method lp");
  CHECK(r.exit_code == 2);
  const json rep = json::parse(r.out);
  CHECK(rep["verdicts"]["lp"] == "infeasible");
  CHECK(rep["infeasibility"].get<double>() > 1e-9);
}

TEST_CASE("construct: nonzero averages are unsupported for the algebraic path") {
  const fine::PairMarginals pm =
      fine::make_pair_marginals({0.4, 0, 0, 0}, 0.2, 0.2, 0.2, 0.2);
  const fs::path p = scratch() / "biased.json";
  fine::cli::write_file(p.string(), fine::cli::marginals_to_json(pm, 1e-10));
  const RunResult alg = run("construct " + p.string());
  CHECK(alg.exit_code == 3);
  CHECK(json::parse(alg.out)["verdicts"]["construct"] == "unsupported");
  // The lp method handles the same file.
  const RunResult lp = run("construct " + p.string() + " --method lp");
  CHECK(lp.exit_code == 0);
}

TEST_CASE("construct: peres method emits a monte carlo witness") {
  const std::string f = write_marginals("peres.json", 0.4, -0.2, 0.3, 0.1);
  const fs::path w = scratch() / "wit_peres.json";
  const RunResult r = run("construct " + f +
                          " --method peres --samples 200000 --seed 11 --out " +
                          w.string());
  CHECK(r.exit_code == 0);
  const fine::JointDist4 d = fine::cli::parse_witness(slurp(w.string()), 1e-12);
  const fine::MomentVector m = fine::joint_to_moments(d);
  CHECK(std::abs(m.c(fine::Pair::p13) - 0.4) < 0.01);  // monte carlo accuracy
}

TEST_CASE("maxent: near-boundary equal targets converge (exit 0)") {
  const std::string f = write_marginals("me999.json", 0.999, 0.999, 0.999, 0.999);
  const RunResult r = run("maxent " + f);
  CHECK(r.exit_code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep["maxent"]["converged"] == true);
  CHECK(rep["maxent"]["residual"].get<double>() <= 1e-10);
}

TEST_CASE("bell subcommand") {
  const auto table_json = [](double c) {
    const fine::PairTable t = fine::make_pair_table(0, 0, c);
    fine::cli::JsonWriter w;
    w.begin_array();
    for (int r = 0; r < 2; ++r) {
      w.begin_array();
      w.value(t.v[r][0]);
      w.value(t.v[r][1]);
      w.end_array();
    }
    w.end_array();
    return w.take();
  };
  SUBCASE("uniform tables are feasible") {
    const fs::path p = scratch() / "bell_uniform.json";
    fine::cli::write_file(p.string(), "{\"pairs\": {\"12\": " + table_json(0) +
                                          ", \"13\": " + table_json(0) +
                                          ", \"23\": " + table_json(0) + "}}");
    const fs::path w = scratch() / "bell_wit.json";
    const RunResult r = run("bell " + p.string() + " --out " + w.string());
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["verdict"] == "feasible");
    const json wit = json::parse(slurp(w.string()));
    CHECK(wit["p"].size() == 8);
  }
  SUBCASE("mutual anticorrelation is infeasible for both methods") {
    const fs::path p = scratch() / "bell_anti.json";
    fine::cli::write_file(p.string(), "{\"pairs\": {\"12\": " + table_json(-1) +
                                          ", \"13\": " + table_json(-1) +
                                          ", \"23\": " + table_json(-1) + "}}");
    CHECK(run("bell " + p.string()).exit_code == 2);
    CHECK(run("bell " + p.string() + " --method lp").exit_code == 2);
  }
}

TEST_CASE("quantum-gen feeds check and oracle") {
  const fs::path out = scratch() / "qgen.json";
  SUBCASE("singlet at the optimal angles violates chsh") {
    const RunResult g = run("quantum-gen --state singlet --angles 0,90,45,135 --out " +
                            out.string());
    REQUIRE(g.exit_code == 0);
    CHECK(run("check " + out.string()).exit_code == 2);
    CHECK(run("oracle " + out.string()).exit_code == 2);
  }
  SUBCASE("maximally mixed state gives uniform feasible tables") {
    const RunResult g = run("quantum-gen --state maximally-mixed --angles 0,90,45,135 --out " +
                            out.string());
    REQUIRE(g.exit_code == 0);
    const json file = json::parse(slurp(out.string()));
    CHECK(file["pairs"]["13"][0][0].get<double>() == doctest::Approx(0.25));
    CHECK(run("check " + out.string()).exit_code == 0);
  }
  SUBCASE("all-equal directions anti-correlate perfectly") {
    const RunResult g = run("quantum-gen --state singlet --angles 30,30,30,30 --out " +
                            out.string());
    REQUIRE(g.exit_code == 0);
    const json rep = json::parse(g.out);
    CHECK(rep["moments"]["c13"].get<double>() == doctest::Approx(-1.0));
  }
  SUBCASE("zero-mean rotation flattens a product state") {
    const fs::path rho = scratch() / "upup.json";
    fine::cli::write_file(rho.string(),
                          R"({"rho_re": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})");
    const RunResult g = run("quantum-gen --state " + rho.string() +
                            " --vectors 1,0,0,0,1,0,1,0,0,0,1,0 --zero-mean --out " +
                            out.string());
    REQUIRE(g.exit_code == 0);
    const json rep = json::parse(g.out);
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(rep["moments"]["b"][k].get<double>()) < 1e-10);
    }
  }
  SUBCASE("invalid state file is a usage error") {
    const fs::path rho = scratch() / "badrho.json";
    fine::cli::write_file(rho.string(),
                          R"({"rho_re": [[1.5,0,0,0],[0,-0.5,0,0],[0,0,0,0],[0,0,0,0]]})");
    CHECK(run("quantum-gen --state " + rho.string() +
              " --angles 0,90,45,135 --out " + out.string())
              .exit_code == 1);
  }
}

TEST_CASE("peres-sim") {
  SUBCASE("right angles, fixed seed") {
    const RunResult r =
        run("peres-sim --angles 1.5707963267948966,1.5707963267948966,"
            "1.5707963267948966,1.5707963267948966 --samples 100000 --seed 5");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(std::abs(rep["estimated"]["c13"].get<double>()) < 0.02);
    CHECK(rep["worst_sigma"].get<double>() < 5.0);
  }
  SUBCASE("explicit vectors skip the fit") {
    const RunResult r = run(
        "peres-sim --vectors 1,0,0,0,1,0,0,0,1,0.6,0.8,0 --samples 50000 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["fitted"] == false);
  }
  SUBCASE("infeasible angles exit 2") {
    const RunResult r = run("peres-sim --angles 0,0,0,3.14159 --samples 1000 --seed 5");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("strict mode tightens validation") {
  // Tables that are consistent at 1e-10 but not at 1e-11.
  fine::PairMarginals pm = fine::make_pair_marginals({0, 0, 0, 0}, 0.2, 0.2, 0.2, 0.2);
  pm.m13.v[0][0] += 3e-11;
  pm.m13.v[1][1] -= 3e-11;
  const fs::path p = scratch() / "slack.json";
  fine::cli::write_file(p.string(), fine::cli::marginals_to_json(pm, 1e-10));
  CHECK(run("check " + p.string()).exit_code == 0);
  CHECK(run("--strict check " + p.string()).exit_code == 1);
}

TEST_CASE("byte-identical output for identical inputs and seeds") {
  const std::string f = write_marginals("det.json", 0.25, -0.5, 0.125, 0.375);
  const fs::path w1 = scratch() / "det_w1.json";
  const fs::path w2 = scratch() / "det_w2.json";
  const RunResult a = run("construct " + f + " --out " + w1.string());
  const RunResult b = run("construct " + f + " --out " + w2.string());
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(slurp(w1.string()) == slurp(w2.string()));

  const RunResult p1 = run("peres-sim --angles 1.2,0.7,2.0,1.4 --samples 20000 --seed 99");
  const RunResult p2 = run("peres-sim --angles 1.2,0.7,2.0,1.4 --samples 20000 --seed 99");
  CHECK(p1.out == p2.out);
}
