// End-to-end tests of the command-line binary: exit codes, file outputs,
// seed-for-seed reproducibility. The binary path comes from NQOBC_CLI_BIN.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace {

std::string cli_path() {
  const char* env = std::getenv("NQOBC_CLI_BIN");
  REQUIRE_MESSAGE(env != nullptr, "NQOBC_CLI_BIN must point at the binary");
  return env;
}

std::string work_dir() {
  static const std::string dir = [] {
    std::string d = "/tmp/nqobc_cli_" + std::to_string(getpid());
    REQUIRE(std::system(("mkdir -p " + d).c_str()) == 0);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd =
      cli_path() + " " + args + " >" + work_dir() + "/stdout.txt 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("generate writes valid tensor files") {
  const std::string out = work_dir() + "/csc3.json";
  CHECK(run("generate --kind csc --n 3 --c 1.0 --out " + out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["n"] == 3);
  CHECK(j["components"].size() == 81);
  // scalar = c n(n+1)/2 = 6
  double scalar = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      scalar += j["components"][((i * 3 + i) * 3 + k) * 3 + k][0].get<double>();
  CHECK(scalar == doctest::Approx(6.0));

  const std::string flat = work_dir() + "/flat2.json";
  CHECK(run("generate --kind flat --n 2 --out " + flat) == 0);
  const auto jf = nlohmann::json::parse(slurp(flat));
  for (const auto& c : jf["components"]) {
    CHECK(c[0] == 0.0);
    CHECK(c[1] == 0.0);
  }

  const std::string prod = work_dir() + "/prod.json";
  CHECK(run("generate --kind product --factors s:-1,s:1 --out " + prod) == 0);
  const auto jp = nlohmann::json::parse(slurp(prod));
  CHECK(jp["n"] == 2);
  CHECK(jp["components"][0][0] == -1.0);
  CHECK(jp["generator"] == "product(s:-1,s:1)");

  // generated random files record their seed and still load for checking
  const std::string rnd = work_dir() + "/rnd.json";
  CHECK(run("generate --kind random --n 2 --seed 9 --out " + rnd) == 0);
  const auto jr = nlohmann::json::parse(slurp(rnd));
  CHECK(jr["generator"].get<std::string>().find("seed=9") !=
        std::string::npos);
  const int code = run("check " + rnd + " --restarts 5 --out " + work_dir() +
                       "/rnd_cert.json");
  CHECK((code == 0 || code == 3));  // annotated files load cleanly

  CHECK(run("generate --kind nonsense --n 2 --out " + work_dir() + "/x.json") ==
        1);
  CHECK(run("generate --kind product --factors s:-1 --out " + work_dir() +
            "/x.json") == 1);
}

TEST_CASE("check exit codes: violation=3, clean=0, bad input=1") {
  const std::string neg = work_dir() + "/neg.json";
  REQUIRE(run("generate --kind csc --n 2 --c -1 --out " + neg) == 0);
  const std::string cert = work_dir() + "/neg_cert.json";
  CHECK(run("check " + neg + " --out " + cert + " --restarts 10") == 3);
  const auto jc = nlohmann::json::parse(slurp(cert));
  CHECK(jc["status"] == "ViolationFound");
  CHECK(jc["witness"]["value"].get<double>() < -1e-8);
  CHECK(jc.contains("seed"));
  CHECK(jc["config"]["restarts"] == 10);

  const std::string prod = work_dir() + "/prod0.json";
  REQUIRE(run("generate --kind product --factors s:-1,s:1 --out " + prod) == 0);
  CHECK(run("check " + prod + " --restarts 10 --out " + work_dir() +
            "/prod_cert.json") == 0);

  const std::string flat = work_dir() + "/flat4.json";
  REQUIRE(run("generate --kind flat --n 4 --out " + flat) == 0);
  CHECK(run("check " + flat + " --restarts 5 --out " + work_dir() +
            "/flat_cert.json") == 0);

  // malformed file and symmetry-violating file both exit 1
  const std::string garbage = work_dir() + "/garbage.json";
  std::ofstream(garbage) << "{not json";
  CHECK(run("check " + garbage) == 1);

  const std::string broken = work_dir() + "/broken.json";
  std::ofstream(broken)
      << R"({"n": 1, "components": [[0.0, 0.5]]})";  // imaginary diagonal
  CHECK(run("check " + broken) == 1);

  CHECK(run("check " + work_dir() + "/does_not_exist.json") == 1);
}

TEST_CASE("haar command verifies identities and exports CSV") {
  const std::string csc = work_dir() + "/csc_h.json";
  REQUIRE(run("generate --kind csc --n 3 --c 2.0 --out " + csc) == 0);
  const std::string rep = work_dir() + "/haar.json";
  const std::string csv = work_dir() + "/haar.csv";
  CHECK(run("haar " + csc + " --samples 5000 --seed 4 --out " + rep +
            " --csv " + csv) == 0);
  const auto j = nlohmann::json::parse(slurp(rep));
  CHECK(j["passed"] == true);
  // model tensor: K is pinned at c = 2 with zero spread
  CHECK(std::abs(j["reports"][0]["k_hat"].get<double>() - 2.0) < 1e-10);
  CHECK(slurp(csv).rfind("identity,label,", 0) == 0);

  CHECK(run("haar " + work_dir() + "/does_not_exist.json") == 1);

  // frame averages need at least two dimensions
  const std::string dim1 = work_dir() + "/surf.json";
  REQUIRE(run("generate --kind surface --c -1 --out " + dim1) == 0);
  CHECK(run("haar " + dim1 + " --samples 1000") == 1);
}

TEST_CASE("suite command: pass/fail exit and bitwise-stable reports") {
  const std::string rep1 = work_dir() + "/suite1.json";
  const std::string rep2 = work_dir() + "/suite2.json";
  CHECK(run("suite flatness-n3 --seed 1 --out " + rep1) == 0);
  CHECK(run("suite flatness-n3 --seed 1 --out " + rep2) == 0);
  CHECK(slurp(rep1) == slurp(rep2));
  const auto j = nlohmann::json::parse(slurp(rep1));
  CHECK(j["suite"] == "flatness-n3");
  CHECK(j["passed"] == true);

  CHECK(run("suite no-such-suite") == 1);
}

TEST_CASE("seed falls back to NQOBC_SEED") {
  const std::string a = work_dir() + "/seed_a.json";
  const std::string b = work_dir() + "/seed_b.json";
  CHECK(run("generate --kind random --n 2 --seed 123 --out " + a) == 0);
  const std::string cmd = "NQOBC_SEED=123 " + cli_path() +
                          " generate --kind random --n 2 --out " + b +
                          " >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(a) == slurp(b));
}
