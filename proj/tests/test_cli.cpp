#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using ofdmim::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ofdmim_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("version and help") {
  auto r = invoke({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ofdmim ") == 0);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
}

TEST_CASE("ccdf writes a CSV and a plan sidecar, reproducibly") {
  TempDir dir;
  const std::vector<std::string> base{"ccdf", "--active", "2", "--u", "4", "--perm", "random", "--trials", "3000",
                                      "--seed", "7"};
  auto args = base;
  args.insert(args.end(), {"--out", dir.file("a.csv")});
  const auto r = invoke(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("PAPR at CCDF 0.1") != std::string::npos);
  const std::string csv = slurp(dir.file("a.csv"));
  CHECK(csv.rfind("gamma_db,ccdf,count,trials\n4,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 92);

  const auto plan = nlohmann::json::parse(slurp(dir.file("a.json")));
  CHECK(plan.at("seed").get<int>() == 7);
  CHECK(plan.at("scheme").at("perm").get<std::string>() == "random");
  CHECK(plan.at("scheme").at("u").get<int>() == 4);

  args = base;
  args.insert(args.end(), {"--out", dir.file("b.csv"), "--workers", "3"});
  REQUIRE(invoke(args).code == 0);
  CHECK(slurp(dir.file("b.csv")) == csv);

  args = base;
  args[10] = "8";
  args.insert(args.end(), {"--out", dir.file("c.csv")});
  REQUIRE(invoke(args).code == 0);
  CHECK(slurp(dir.file("c.csv")) != csv);
}

TEST_CASE("ccdf --scheme original rejects SLM flags") {
  TempDir dir;
  CHECK(invoke({"ccdf", "--scheme", "original", "--trials", "100", "--out", dir.file("o.csv")}).code == 0);
  for (std::vector<std::string> extra : {std::vector<std::string>{"--u", "4"},
                                         {"--pss", "hadamard"},
                                         {"--perm", "random"},
                                         {"--first-identity-perm"}}) {
    std::vector<std::string> args{"ccdf", "--scheme", "original", "--trials", "100", "--out", dir.file("x.csv")};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = invoke(args);
    CAPTURE(extra[0]);
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
  }
  CHECK_FALSE(fs::exists(dir.file("x.csv")));
}

TEST_CASE("ccdf invalid configurations exit with 2") {
  TempDir dir;
  const auto out = dir.file("bad.csv");
  CHECK(invoke({"ccdf", "--n-fft", "48", "--out", out}).code == 2);
  CHECK(invoke({"ccdf", "--active", "16", "--out", out}).code == 2);
  CHECK(invoke({"ccdf", "--pss", "hadamard", "--u", "65", "--out", out}).code == 2);
  CHECK(invoke({"ccdf", "--scheme", "fancy", "--out", out}).code == 2);
  CHECK(invoke({"ccdf", "--trials", "0", "--out", out}).code == 2);
  CHECK(invoke({"ccdf", "--trials", "ten", "--out", out}).code == 2);
  CHECK(invoke({"ccdf"}).code == 2);  // --out is required
  CHECK(invoke({"ccdf", "--pss-file", dir.file("missing.json"), "--out", out}).code == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("ccdf with an unwritable output exits with 3") {
  const auto r = invoke({"ccdf", "--trials", "10", "--out", "/nonexistent-dir/x.csv"});
  CHECK(r.code == 3);
}

TEST_CASE("ccdf accepts pinned PSS and permutation files") {
  TempDir dir;
  {
    std::ofstream f(dir.file("pss.json"));
    nlohmann::json doc;
    doc["phases"] = {std::vector<double>(8, 0.0), std::vector<double>{0, 3.141592653589793, 0, 0, 0, 0, 0, 0}};
    f << doc.dump();
  }
  {
    std::ofstream f(dir.file("perm.json"));
    f << R"({"perms": [[0,1,2,3,4,5,6,7], [2,1,0,3,4,5,6,7]]})";
  }
  const auto r = invoke({"ccdf", "--n-fft", "8", "--group-size", "4", "--active", "2", "--u", "2", "--pss-file",
                         dir.file("pss.json"), "--perm-file", dir.file("perm.json"), "--trials", "200", "--out",
                         dir.file("p.csv")});
  CHECK(r.code == 0);
  const auto plan = nlohmann::json::parse(slurp(dir.file("p.json")));
  CHECK(plan.at("scheme").at("pss").get<std::string>() == "pinned");
  CHECK(plan.at("scheme").at("perm").get<std::string>() == "pinned");

  // U must agree with the pinned sets
  CHECK(invoke({"ccdf", "--n-fft", "8", "--group-size", "4", "--active", "2", "--u", "3", "--pss-file",
                dir.file("pss.json"), "--trials", "10", "--out", dir.file("q.csv")})
            .code == 2);
  // a permutation that crosses groups is rejected
  {
    std::ofstream f(dir.file("bad_perm.json"));
    f << R"({"perms": [[1,0,2,3,4,5,6,7], [0,1,2,3,4,5,6,7]]})";
  }
  CHECK(invoke({"ccdf", "--n-fft", "8", "--group-size", "4", "--active", "2", "--u", "2", "--perm-file",
                dir.file("bad_perm.json"), "--trials", "10", "--out", dir.file("q.csv")})
            .code == 2);
}

TEST_CASE("analyze-perm reports mu") {
  auto r = invoke({"analyze-perm", "--perm", "identity", "--u", "2"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("pairs")[0].at("mu").get<double>() == 63.0);

  r = invoke({"analyze-perm", "--perm", "random", "--u", "3", "--seed", "5"});
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("pairs").size() == 3);
  CHECK(doc.at("mu_mean").get<double>() < 63.0);
  CHECK(invoke({"analyze-perm", "--perm", "random", "--u", "3", "--seed", "5"}).out == r.out);
}

TEST_CASE("analyze-pss prints both spectra") {
  auto r = invoke({"analyze-pss", "--rows", "1", "2", "--sap", "full"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("m,punctured,full\n", 0) == 0);
  CHECK(r.out.find("# c=") != std::string::npos);
  CHECK(r.out.find("\n0,0,0\n") != std::string::npos);  // orthogonal rows over the full set

  TempDir dir;
  {
    std::ofstream f(dir.file("sap.json"));
    f << R"({"active": [0, 4, 1, 5, 2, 6, 3, 7]})";
  }
  CHECK(invoke({"analyze-pss", "--sap-file", dir.file("sap.json")}).code == 0);
  {
    std::ofstream f(dir.file("sap_bad.json"));
    f << R"({"active": [0, 1, 2, 3, 4, 5, 6, 7, 8]})";
  }
  CHECK(invoke({"analyze-pss", "--sap-file", dir.file("sap_bad.json")}).code == 2);
  CHECK(invoke({"analyze-pss", "--rows", "1", "9"}).code == 2);
  CHECK(invoke({"analyze-pss", "--sap", "half"}).code == 2);
}

TEST_CASE("verify-var-rho compares the closed form with sampling") {
  const auto r = invoke({"verify-var-rho", "--trials", "20000", "--m", "1", "16", "--seed", "3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row1, row16;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row16);
  CHECK(header == "m,analytic,empirical,relative_error");
  CHECK(row1.rfind("1,0.11666666", 0) == 0);
  CHECK(row16 == "16,0,0,");
  // one stream per lag: asking for lag 1 alone gives the same row
  const auto alone = invoke({"verify-var-rho", "--trials", "20000", "--m", "1", "--seed", "3"});
  CHECK(alone.out.find(row1) != std::string::npos);
  CHECK(invoke({"verify-var-rho", "--m", "64"}).code == 2);
}
