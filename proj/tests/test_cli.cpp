#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// Drives the installed binary end to end: exit codes, output formats,
// determinism, and config-file handling.

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("defect profile of a homomorphism") {
  RunResult r = run(
      "defect-profile --map \"hom{a->ab,b->b}\" --group free:2 "
      "--target free:2 --radius 4");
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "kind,radius,set_size,max_norm,mode");
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.find(",0,exact") != std::string::npos);
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("relator check exit codes") {
  CHECK(run("pol2-check --map \"monomial{2}\" --group z --radius 5").code == 0);
  RunResult bad =
      run("pol2-check --map \"floor_quad{1,3}\" --group z --radius 5");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("\"g1\"") != std::string::npos);  // witness triple
}

TEST_CASE("configuration errors exit 2") {
  CHECK(run("defect-profile --map \"id\" --group nosuch:3").code == 2);
  CHECK(run("defect-profile --map \"zzz{1}\" --group z").code == 2);
  CHECK(run("pol2-check --map \"perturb{id,a}\" --group free:2 --radius 2")
            .code == 2);  // non-unital
  CHECK(run("no-such-subcommand").code == 2);
  CHECK(run("qsg-witness --map id --group free:2 --radius 3 --probe-radius 4")
            .code == 2);  // R' < 2R
}

TEST_CASE("byte-identical reruns") {
  std::string cmd =
      "pi-probe --map \"brooks{ab}\" --group free:2 --const -2 --radius 5 "
      "--format json";
  RunResult a = run(cmd + " --out /tmp/cli_pi_a.json");
  RunResult b = run(cmd + " --out /tmp/cli_pi_b.json");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  std::string fa = slurp("/tmp/cli_pi_a.json");
  CHECK(!fa.empty());
  CHECK(fa == slurp("/tmp/cli_pi_b.json"));
  std::remove("/tmp/cli_pi_a.json");
  std::remove("/tmp/cli_pi_b.json");
}

TEST_CASE("config files fill unset flags") {
  {
    std::ofstream f("/tmp/cli_cfg.json");
    f << "{\"map\":\"floor_scale{1,2}\",\"group\":\"z\",\"radius\":6,"
         "\"format\":\"csv\"}";
  }
  RunResult r = run("defect-profile --config /tmp/cli_cfg.json");
  CHECK(r.code == 0);
  CHECK(r.out.find("D,6,") != std::string::npos);
  // flags override the file
  RunResult r2 = run("defect-profile --config /tmp/cli_cfg.json --radius 3");
  CHECK(r2.code == 0);
  CHECK(r2.out.find("D,6,") == std::string::npos);
  CHECK(r2.out.find("D,3,") != std::string::npos);
  std::remove("/tmp/cli_cfg.json");
}

TEST_CASE("recursion report") {
  RunResult r = run("zquad --target free:2 --a a --b aa --radius 5 --shift 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"window_ok\": true") != std::string::npos);
  CHECK(r.out.find("\"commutation_identity\": true") != std::string::npos);

  RunResult f = run("zquad --target free:2 --a a --b b --radius 6 --shift 2");
  CHECK(f.code == 0);
  CHECK(f.out.find("\"window_ok\": false") != std::string::npos);
}

TEST_CASE("probes and witness reports") {
  RunResult pi = run(
      "pi-probe --map id --group free:2 --const a --radius 5");
  CHECK(pi.code == 0);
  CHECK(pi.out.find("Pi,5,") != std::string::npos);

  RunResult qsg = run(
      "qsg-witness --map \"hom{1->a}\" --group z --target free:2 --radius 2 "
      "--probe-radius 5");
  CHECK(qsg.code == 0);
  CHECK(qsg.out.find("\"worst_witness_norm\": 0") != std::string::npos);

  RunResult comm = run(
      "comm-probe --map \"hom{1->a}\" --group z --target free:2 "
      "--conj \"(0|a)\" --radius 2 --probe-radius 6");
  CHECK(comm.code == 0);
  CHECK(comm.out.find("LeftComm") != std::string::npos);
  CHECK(comm.out.find("RightComm") != std::string::npos);

  RunResult nq = run(
      "normality-check --map \"compose{floor_scale{1,2},monomial{2}}\" "
      "--group z --radius 4");
  CHECK(nq.code == 0);
  CHECK(nq.out.find("\"all_pass\": true") != std::string::npos);

  RunResult nf = run("normality-check --map \"zquad{a,b}\" --group z "
                     "--target free:2 --radius 4");
  CHECK(nf.code == 1);
}

TEST_CASE("degree and equivariance subcommands") {
  RunResult deg = run(
      "poly-degree --map \"floor_quad{1,3}\" --group z --radius 5 "
      "--format json");
  CHECK(deg.code == 0);
  CHECK(deg.out.find("\"degree\": 2") != std::string::npos);

  RunResult eq = run("equivariance --map \"monomial{2}\" --group z --radius 4");
  CHECK(eq.code == 0);
  CHECK(eq.out.find("Equiv,4,") != std::string::npos);

  RunResult mid = run(
      "middle-profile --map \"perturb{id,a}\" --group free:2 --radius 3");
  CHECK(mid.code == 0);

  RunResult ap = run("a-profile --map \"brooks{ab}\" --group free:2 "
                     "--radius 3 --budget 1000");
  CHECK(ap.code == 0);
  CHECK(ap.out.find("sampled") != std::string::npos);

  RunResult sp = run("s-probe --map id --group free:2 --a A --b A --radius 4");
  CHECK(sp.code == 0);
}
