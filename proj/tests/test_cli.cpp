#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mahler/cli.hpp"
#include "oracles.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = mahler::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("construct prints P and Q as text") {
  const auto r = run({"construct", "--rs", "2", "--format", "text"});
  CHECK(r.code == mahler::cli::kExitOk);
  CHECK(r.out == "+++-\n++-+\n");
  CHECK(run({"construct", "--rs", "2", "--member", "q", "--format", "text"}).out == "++-+\n");
  CHECK(run({"construct", "--fekete", "5", "--format", "text"}).out == "0+--+\n");

  const auto j = nlohmann::json::parse(run({"construct", "--rs", "3", "--member", "p"}).out);
  CHECK(j["N"] == 8);
  REQUIRE(j["polynomials"].size() == 1);
  CHECK(j["polynomials"][0]["degree"] == 7);
  CHECK(j["polynomials"][0]["coeffs"] == "+++-++-+");
}

TEST_CASE("measure reports M_0 of P_2") {
  const auto r = run({"measure", "--rs", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() - oracle::cubic_p2_root()) < 1e-6);
  CHECK(j["method"] == "quadrature");

  const auto jj = nlohmann::json::parse(run({"measure", "--rs", "2", "--method", "jensen"}).out);
  CHECK(std::abs(jj["value"].get<double>() - oracle::cubic_p2_root()) < 1e-12);

  const auto m2 = nlohmann::json::parse(run({"measure", "--rs", "6", "--q", "2"}).out);
  CHECK(m2["value"].get<double>() == doctest::Approx(8.0).epsilon(1e-12));
  // Short arcs get a grid fine enough to hold the minimum node count.
  CHECK(run({"measure", "--rs", "1", "--q", "2", "--arc", "0", "0.1"}).code == 0);
}

TEST_CASE("eval and moments") {
  const auto e = run({"eval", "--rs", "1", "--m", "4", "--format", "csv"});
  REQUIRE(e.code == 0);
  CHECK(e.out.rfind("index,theta,re,im,abs\n0,0,2,0,2\n", 0) == 0);

  const auto m = nlohmann::json::parse(run({"moments", "--rs", "3", "--k-max", "4"}).out);
  CHECK(m["values"][1].get<double>() == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("verify flatness at n = 12") {
  const auto r = run({"verify", "--statement", "flatness", "--n", "12"});
  CHECK(r.code == mahler::cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["statement"] == "eq11");
}

TEST_CASE("verify precondition errors and passing checks") {
  // Two trials cannot meet the Monte Carlo precondition; that is a usage error.
  CHECK(run({"verify", "--statement", "borwein_lockhart", "--trials", "2"}).code == mahler::cli::kExitUsage);
  const auto r = run({"verify", "--statement", "fekete_gauss", "--p", "101"});
  CHECK(r.code == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == mahler::cli::kExitUsage);
  CHECK(run({"construct"}).code == mahler::cli::kExitUsage);
  CHECK(run({"construct", "--rs", "2", "--fekete", "5"}).code == mahler::cli::kExitUsage);
  CHECK(run({"construct", "--fekete", "9"}).code == mahler::cli::kExitUsage);
  CHECK(run({"eval", "--rs", "4", "--m", "8"}).code == mahler::cli::kExitUsage);
  CHECK(run({"measure", "--rs", "2", "--q", "-1"}).code == mahler::cli::kExitUsage);
  CHECK(run({"verify", "--statement", "nonsense"}).code == mahler::cli::kExitUsage);
  CHECK(run({"construct", "--rs", "2", "--format", "xml"}).code == mahler::cli::kExitUsage);
  const auto bad = run({"construct", "--rs", "-1"});
  CHECK(bad.code == mahler::cli::kExitUsage);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("file input and --out") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto in = dir / "mahler_cli_test_input.txt";
  const auto out = dir / "mahler_cli_test_output.json";
  {
    std::ofstream f(in);
    f << "+++-\n";
  }
  const auto r = run({"measure", "--file", in.string(), "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream g(out);
  const auto j = nlohmann::json::parse(g);
  CHECK(std::abs(j["value"].get<double>() - oracle::cubic_p2_root()) < 1e-6);
  std::filesystem::remove(in);
  std::filesystem::remove(out);
  CHECK(run({"measure", "--file", (dir / "mahler_missing_file.txt").string()}).code == mahler::cli::kExitUsage);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"random", "--degree", "50", "--count", "3", "--seed", "11"},
        std::vector<std::string>{"sweep", "--n", "8", "--count", "4", "--format", "csv"},
        std::vector<std::string>{"verify", "--statement", "borwein_lockhart", "--degree", "100", "--trials", "200"},
        std::vector<std::string>{"measure", "--rs", "9"}}) {
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
