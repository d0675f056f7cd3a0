#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = DJCM_CLI_PATH;

int run(const std::string& args) {
  std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -2;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

std::string second_line(const std::string& text) {
  auto a = text.find('\n');
  auto b = text.find('\n', a + 1);
  return text.substr(a + 1, b - a - 1);
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::current_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("help exits cleanly") {
  CHECK(run("--help") == 0);
  CHECK(run("inversion --help") == 0);
}

TEST_CASE("inversion run: format, t=0 row, and reproducibility") {
  fs::path dir = fresh_dir("cli_case_inv");
  std::string out = (dir / "a").string();
  std::string args = "inversion --state coherent --alpha 1 --beta 2 "
                     "--eps-a 3 --eps-b 1 --t-grid 0:10:11 --out " + out;
  REQUIRE(run(args) == 0);

  std::string csv = slurp(dir / "a.csv");
  CHECK(first_line(csv) == "kappa_eff_t,inversion");
  CHECK(second_line(csv) == "0,1");

  std::string meta = slurp(dir / "a.meta.json");
  CHECK(meta.find("\"eps_a\": 0.9486832980505138") != std::string::npos);
  CHECK(meta.find("\"kappa_eff\": 1.0") != std::string::npos);

  // Byte-identical rerun.
  std::string out2 = (dir / "b").string();
  REQUIRE(run("inversion --state coherent --alpha 1 --beta 2 "
              "--eps-a 3 --eps-b 1 --t-grid 0:10:11 --out " + out2) == 0);
  CHECK(slurp(dir / "b.csv") == csv);
  std::string meta2 = slurp(dir / "b.meta.json");
  CHECK(meta2.find("\"data_file\": \"b.csv\"") != std::string::npos);
}

TEST_CASE("wigner and marginal and chi headers") {
  fs::path dir = fresh_dir("cli_case_heads");
  REQUIRE(run("wigner --state even --alpha 1 --beta 2 --t 0 "
              "--grid -2:2:5,-2:2:5 --out " + (dir / "w").string()) == 0);
  CHECK(first_line(slurp(dir / "w.csv")) == "q,p,W");

  REQUIRE(run("marginal --state coherent --alpha 1 --beta 2 --t 0 "
              "--axis q --points -3:3:31 --out " + (dir / "m").string()) == 0);
  CHECK(first_line(slurp(dir / "m.csv")) == "axis_value,density");

  REQUIRE(run("chi --state coherent --alpha 1 --beta 2 --t 0 "
              "--grid -1:1:3,-1:1:3 --out " + (dir / "c").string()) == 0);
  CHECK(first_line(slurp(dir / "c.csv")) == "xi_re,xi_im,chi_re,chi_im");
}

TEST_CASE("json format embeds rows") {
  fs::path dir = fresh_dir("cli_case_json");
  REQUIRE(run("inversion --state coherent --alpha 1 --beta 1 --t-grid 0:1:3 "
              "--format json --out " + (dir / "j").string()) == 0);
  std::string body = slurp(dir / "j.json");
  CHECK(body.find("\"rows\"") != std::string::npos);
  CHECK(body.find("\"columns\"") != std::string::npos);
}

TEST_CASE("bad requests exit nonzero") {
  fs::path dir = fresh_dir("cli_case_bad");
  std::string out = " --out " + (dir / "x").string();
  CHECK(run("inversion --state odd --alpha 0 --beta 1" + out) != 0);
  CHECK(run("chi --state even --alpha 1 --beta 1" + out) != 0);
  CHECK(run("wigner --state thermal --nbar 1 --beta 1 --t 0" + out) != 0);
  CHECK(run("marginal --state thermal --nbar 1 --beta 1 --t 0" + out) != 0);
  CHECK(run("preset no-such-preset" + out) != 0);
  CHECK(run("wigner --state coherent --alpha 1 --beta 1 --t 0 "
            "--grid 2:-2:5,-2:2:5" + out) != 0);
  CHECK(run("inversion --state coherent --alpha 1 --beta 1 "
            "--eps-a 1 --kappa-a 1" + out) != 0);
}

TEST_CASE("preset listing") {
  CHECK(run("preset list") == 0);
}

TEST_CASE("config file supplies defaults, flags win") {
  fs::path dir = fresh_dir("cli_case_cfg");
  {
    std::ofstream cfg(dir / "run.ini");
    cfg << "[inversion]\n"
        << "state=coherent\n"
        << "alpha=1\n"
        << "beta=7\n"
        << "t-grid=0:1:2\n";
  }
  std::string cfg_arg = "--config " + (dir / "run.ini").string() + " ";

  REQUIRE(run(cfg_arg + "inversion --out " + (dir / "c1").string()) == 0);
  CHECK(slurp(dir / "c1.meta.json").find("\"re\": 7.0") != std::string::npos);

  REQUIRE(run(cfg_arg + "inversion --beta 2 --out " +
              (dir / "c2").string()) == 0);
  CHECK(slurp(dir / "c2.meta.json").find("\"re\": 2.0") != std::string::npos);
}

TEST_CASE("thread override is accepted") {
  fs::path dir = fresh_dir("cli_case_threads");
  std::string cmd = "DRIVEN_JCM_THREADS=1 " + kCli +
                    " inversion --state coherent --alpha 1 --beta 1 "
                    "--t-grid 0:1:3 --out " + (dir / "t").string() +
                    " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  CHECK((WIFEXITED(rc) && WEXITSTATUS(rc) == 0));
}
