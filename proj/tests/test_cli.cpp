#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "ndirac/io.hpp"

using namespace ndirac;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  TempDir() : path(fs::temp_directory_path() / ("ndirac_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = (path / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string name(const std::string& n) const { return (path / n).string(); }
  fs::path path;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kFree = R"(T = "pi"
[potential]
preset = "free"
[U1]
h = [1.0, 0.0]
[U2]
atoms = [ { t = 1.5707963267948966, w = [1.0, 0.0] } ]
[tolerances]
ode_tol = 1e-12
)";

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({}).code == cli::kParseError);
  CHECK(run({"frobnicate"}).code == cli::kParseError);
  CHECK(run({"spectrum"}).code == cli::kParseError);
}

TEST_CASE("echo and parse failures") {
  TempDir dir;
  const auto good = dir.file("free.toml", kFree);
  const auto r = run({"echo", good});
  CHECK(r.code == cli::kOk);
  CHECK(parse_problem(r.out).T() == kPi);
  const auto bad = dir.file("bad.toml", "T = 1.0\n[potential\n");
  const auto b = run({"echo", bad});
  CHECK(b.code == cli::kParseError);
  CHECK(b.err.find("bad.toml:2") != std::string::npos);
  CHECK(run({"echo", dir.name("missing.toml")}).code == cli::kParseError);
}

TEST_CASE("spectrum output is deterministic") {
  TempDir dir;
  const auto p = dir.file("free.toml", kFree);
  const auto a = dir.name("a.csv"), b = dir.name("b.csv");
  CHECK(run({"spectrum", p, "--window", "-3.25", "3.25", "-1", "1", "--out", a}).code == cli::kOk);
  CHECK(run({"--threads", "1", "spectrum", p, "--window", "-3.25", "3.25", "-1", "1", "--out", b}).code == cli::kOk);
  CHECK(slurp(a) == slurp(b));
  const auto sidecar = nlohmann::json::parse(slurp(dir.name("a.json")));
  CHECK(sidecar.at("contour_count") == 7);
  CHECK(run({"spectrum", p, "--problem", "L7"}).code == cli::kParseError);
  CHECK(run({"spectrum", p, "--window", "1", "0", "-1", "1"}).code == cli::kParseError);
}

TEST_CASE("degenerate inputs exit with 3") {
  TempDir dir;
  const auto same = dir.file("same.toml", "T = \"pi\"\n[potential]\npreset = \"free\"\n[U1]\nh = [1.0, 0.0]\n[U2]\nh = [1.0, 0.0]\n");
  CHECK(run({"spectrum", same, "--problem", "L0", "--window", "-2.5", "2.5", "-1", "1"}).code == cli::kDegenerate);
  const auto flat = dir.file("flat.toml",
                             "T = 1.5707963267948966\n[potential]\npreset = \"free\"\n[U1]\nh = [1.0, 0.0]\n[U2]\n");
  CHECK(run({"counterexample", "--scenario", "example1", "--potential", flat}).code == cli::kDegenerate);
  CHECK(run({"counterexample", "--scenario", "example2", "--alpha", "0.6"}).code == cli::kParseError);
}

TEST_CASE("checks report failure with 1") {
  TempDir dir;
  const auto p = dir.file("free.toml", kFree);
  const auto ok = run({"identities", p, "--samples", "3"});
  CHECK(ok.code == cli::kOk);
  CHECK(nlohmann::json::parse(ok.out).at("pass") == true);
  CHECK(run({"identities", p, "--samples", "3", "--tol", "1e-20"}).code == cli::kCheckFailed);
  // Lambda1 = integers contains Xi = even integers.
  CHECK(run({"condition-s", p, "--window", "-2.5", "2.5", "-1", "1"}).code == cli::kCheckFailed);
  CHECK(run({"halving", p, "--samples", "3"}).code == cli::kOk);
}

TEST_CASE("weyl grid flags poles") {
  TempDir dir;
  const auto p = dir.file("free.toml", kFree);
  const auto r = run({"weyl", p, "--grid", "0", "1", "2", "0.5", "0.5", "1"});
  REQUIRE(r.code == cli::kOk);
  std::istringstream lines(r.out);
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(header == "re,im,re_M,im_M,pole");
  CHECK(first.substr(first.rfind(',')) == ",0");
  const auto empty = run({"weyl", p, "--grid", "0", "1", "0", "0", "1", "0"});
  CHECK(empty.code == cli::kOk);
  CHECK(empty.out == "re,im,re_M,im_M,pole\n");
  const auto pole = run({"weyl", p, "--grid", "1", "1", "1", "0", "0", "1"});
  CHECK(pole.out.find(",1\n") != std::string::npos);
}

TEST_CASE("spectral data and inversion round trip") {
  TempDir dir;
  const auto truth = dir.file("truth.toml", R"(T = "pi"
[potential]
constant = { p = 0.3, q = -0.2 }
[U1]
h = [1.0, 0.0]
[U2]
atoms = [ { t = 1.5707963267948966, w = [1.0, 0.0] } ]
[tolerances]
ode_tol = 1e-12
)");
  const auto tmpl = dir.file("free.toml", kFree);
  const auto data = dir.name("data.json");
  CHECK(run({"spectral-data", truth, "--window", "-4.5", "4.5", "-1", "1", "--tol", "1e-11", "--out", data}).code ==
        cli::kOk);
  CHECK(load_spectral_data(data).tag() == "two_spectra");
  const auto res = dir.name("inv.json");
  CHECK(run({"invert", data, tmpl, "--degree", "0", "--out", res}).code == cli::kOk);
  const auto j = nlohmann::json::parse(slurp(res));
  MESSAGE("iterations " << j.at("iterations") << ", p = " << j.at("parameters").at("p"));
  CHECK(j.at("converged") == true);
  CHECK(run({"invert", data, tmpl, "--degree", "0", "--max-iter", "1"}).code == cli::kCheckFailed);
  const auto junk = dir.file("junk.json", "{\"type\": \"two_spectra\"}");
  CHECK(run({"invert", junk, tmpl}).code == cli::kParseError);
}
