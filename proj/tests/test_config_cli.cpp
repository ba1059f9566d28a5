#include "doctest.h"
#include "shear/scenarios.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace shear;

namespace {

Config parse_str(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in);
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("shearlab_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string str() const { return path.string(); }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  }
};

int run(const std::string& text, const TempDir& dir, std::ostream& log,
        std::optional<int> threads = std::nullopt) {
  RunOverrides ov;
  ov.out_dir = dir.str();
  ov.threads = threads;
  return run_job(parse_str(text), ov, log);
}

int count_lines(const std::string& text, char first = 0) {
  int n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && (first == 0 || line[0] == first)) ++n;
  return n;
}

}  // namespace

TEST_CASE("config parser: sections, comments, repeats and lists") {
  const Config cfg = parse_str(
      "# a comment\n"
      "[alpha]\n"
      "x = 1.5   # trailing comment\n"
      "x = 2.5\n"
      "name = hello world\n"
      "list = 1, 2, 3\n"
      "\n"
      "[beta]\n"
      "k = -7\n");
  CHECK(cfg.has_section("alpha"));
  CHECK(!cfg.has_section("gamma"));
  CHECK(cfg.get_double("alpha", "x") == 2.5);  // last value wins
  CHECK(cfg.get_all("alpha", "x").size() == 2);
  CHECK(cfg.get("alpha", "name") == "hello world");
  CHECK(cfg.get_doubles("alpha", "list") == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(cfg.get_long("beta", "k") == -7);
  CHECK(cfg.get_or("beta", "missing", "dflt") == "dflt");
  CHECK(cfg.get_long_or("beta", "missing", 9) == 9);
}

TEST_CASE("config parser: malformed input raises descriptive errors") {
  CHECK_THROWS_AS(parse_str("x = 1\n"), ConfigError);          // key before section
  CHECK_THROWS_AS(parse_str("[s]\njust words\n"), ConfigError);  // no '='
  const Config cfg = parse_str("[s]\nx = abc\n");
  CHECK_THROWS_AS(cfg.get("s", "absent"), ConfigError);
  CHECK_THROWS_AS(cfg.get_double("s", "x"), ConfigError);
  CHECK_THROWS_AS(Config::parse_file("/nonexistent/path.cfg"), ConfigError);
}

static const char* kTransvectionCovariance =
    "[scenario]\n"
    "tag = covariance\n"
    "[flow]\n"
    "type = transvection\n"
    "[observable1]\n"
    "mode = 1:1 const 1\n"
    "mode = 2:1 const 0.5\n"
    "[times]\n"
    "t_min = 1\n"
    "t_max = 100\n"
    "count = 100\n"
    "[covariance]\n"
    "estimator = spectral\n"
    "fit = exponential\n"
    "[output]\n"
    "file = cov.csv\n";

TEST_CASE("covariance job writes the full table and the fit comment") {
  TempDir dir;
  std::ostringstream log;
  CHECK(run(kTransvectionCovariance, dir, log) == 0);
  const std::string text = dir.read("cov.csv");
  CHECK(text.rfind("t,re,im,abs,stderr,estimator\n", 0) == 0);
  CHECK(count_lines(text) == 102);  // header + 100 rows + fit comment
  CHECK(text.find("# fit:") != std::string::npos);
}

TEST_CASE("covariance output is byte-identical across thread counts") {
  TempDir d1, d4;
  std::ostringstream log;
  CHECK(run(kTransvectionCovariance, d1, log, 1) == 0);
  CHECK(run(kTransvectionCovariance, d4, log, 4) == 0);
  const std::string a = d1.read("cov.csv"), b = d4.read("cov.csv");
  CHECK(a == b);
  CHECK(!a.empty());
}

TEST_CASE("unknown scenario tag exits with the validation code") {
  TempDir dir;
  std::ostringstream log;
  CHECK(run("[scenario]\ntag = frobnicate\n", dir, log) == 2);
  CHECK(log.str().find("validation error") != std::string::npos);
}

TEST_CASE("shell width outside (0, 1/2) exits with the validation code") {
  TempDir dir;
  std::ostringstream log;
  CHECK(run("[scenario]\ntag = gauss\n[gauss]\nn = 2\neps = 0.5\nr = 10\n", dir,
            log) == 2);
}

TEST_CASE("gauss job reports counts with the asymptotic ratio") {
  TempDir dir;
  std::ostringstream log;
  CHECK(run("[scenario]\ntag = gauss\n[gauss]\nn = 2\neps = 0.25\n"
            "r = 100, 200\n[output]\nfile = g.csv\n",
            dir, log) == 0);
  const std::string text = dir.read("g.csv");
  CHECK(text.rfind("r,epsilon,count,asymptotic,ratio\n", 0) == 0);
  CHECK(count_lines(text) == 3);
}

TEST_CASE("bump observables outside the billiard chart are rejected") {
  TempDir dir;
  std::ostringstream log;
  const int code = run(
      "[scenario]\ntag = covariance\n[flow]\ntype = disk-billiard\n"
      "[observable1]\nmode = 1:0 bump 0 1.6 0.1\n"  // center 1.6 > pi/2
      "[times]\ntimes = 1, 2\n",
      dir, log);
  CHECK(code == 2);
}

TEST_CASE("orbiting-dust scenario: a thin arc first shears apart, then mixes") {
  TempDir dir;
  std::ostringstream log;
  const int code = run(
      "[scenario]\ntag = saturn\n[run]\nseed = 11\n[saturn]\n"
      "r0 = 1\nr1 = 2\narc = 0.1\nparticles = 40000\nbins = 32\n"
      "times = 0, 3000\n[output]\nfile = s.csv\n",
      dir, log);
  CHECK(code == 0);
  std::istringstream in(dir.read("s.csv"));
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  auto first_mode = [](const std::string& row) {
    const auto c = row.find(',');
    return std::stod(row.substr(c + 1, row.find(',', c + 1) - c - 1));
  };
  // t = 0: arc of 0.1 turns, |mean e^{2 pi i theta}| = |sinc(pi/10)|
  CHECK(first_mode(row0) ==
        doctest::Approx(std::sin(M_PI * 0.1) / (M_PI * 0.1)).epsilon(0.02));
  // late time: differential rotation has wound the arc around every bin
  CHECK(first_mode(row1) < 0.05);
}

TEST_CASE("wavefront scenario: the circle starts concentrated, then fills") {
  TempDir dir;
  std::ostringstream log;
  CHECK(run("[scenario]\ntag = torus-wavefront\n[wavefront]\n"
            "directions = 65536\ntimes = 0, 500\n[output]\nfile = w.csv\n",
            dir, log) == 0);
  std::istringstream in(dir.read("w.csv"));
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  CHECK(header == "t,discrepancy");
  CHECK(std::stod(row0.substr(row0.find(',') + 1)) > 0.9);
  CHECK(std::stod(row1.substr(row1.find(',') + 1)) < 0.02);
}

TEST_CASE("round-sphere check reports a vanishing period difference") {
  TempDir dir;
  std::ostringstream log;
  CHECK(run("[scenario]\ntag = sphere-check\n[run]\nseed = 5\n[sphere]\n"
            "samples = 4000\nt0 = 0.5, 2.0\n[output]\nfile = sp.csv\n",
            dir, log) == 0);
  const std::string text = dir.read("sp.csv");
  const auto pos = text.find("# max_difference: ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(text.substr(pos + 18)) < 1e-9);
}

TEST_CASE("criterion job writes ladders and the verdict") {
  TempDir dir;
  std::ostringstream log;
  CHECK(run("[scenario]\ntag = criterion\n[criterion]\nfield = disk-billiard\n"
            "cutoff = 4\ngrid = 64\n[output]\nfile = c.csv\n",
            dir, log) == 0);
  CHECK(dir.read("c.csv").find("# verdict: shear-consistent") !=
        std::string::npos);
  CHECK(log.str().find("shear-consistent") != std::string::npos);
}

TEST_CASE("tilting a flat profile flips the verdict") {
  TempDir dir;
  std::ostringstream log;
  CHECK(run("[scenario]\ntag = perturbation-smoke\n[output]\nfile = p.csv\n",
            dir, log) == 0);
  const std::string text = dir.read("p.csv");
  CHECK(text.find("unperturbed,shear-violated") != std::string::npos);
  CHECK(text.find("perturbed,shear-consistent") != std::string::npos);
}

TEST_CASE("stochastic jobs without a seed exit with the validation code") {
  TempDir dir;
  std::ostringstream log;
  CHECK(run("[scenario]\ntag = saturn\n[saturn]\nr0 = 1\nr1 = 2\n"
            "times = 0\n",
            dir, log) == 2);
  CHECK(log.str().find("seed") != std::string::npos);
}
