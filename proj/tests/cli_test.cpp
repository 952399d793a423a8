#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "isochrone/cli.hpp"
#include "isochrone/exact/json.hpp"

using namespace isochrone;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.status = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("reduce") {
  const auto r = run({"reduce", "--i", "3", "--j", "1"});
  REQUIRE(r.status == cli::ok);
  const auto j = Json::parse(r.out);
  CHECK(j["form"] == "I03");
  CHECK(j["basis"]["I01"]["coeffs"] == Json::array({"-1"}));
  CHECK(j["basis"]["I11"]["coeffs"] == Json::array({"-1"}));
  CHECK(j["basis"]["I21"]["coeffs"] == Json::array({"-1"}));
  CHECK(j["basis"]["I03"]["coeffs"] == Json::array({"-4/3"}));

  const auto f = Json::parse(run({"reduce", "--i", "3", "--j", "1", "--form", "i31"}).out);
  CHECK(f["form"] == "I31");
  CHECK(f["basis"]["I31"]["coeffs"] == Json::array({"1"}));
}

TEST_CASE("bound") {
  const auto r = run({"bound", "--n", "3"});
  REQUIRE(r.status == cli::ok);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "65");
  CHECK(Json::parse(ls[1])["phi_psi_bound"] == 59);
  CHECK(lines(run({"bound", "--n", "4"}).out)[0] == "94");
}

TEST_CASE("oracle") {
  const auto r = run({"oracle", "--i", "0", "--j", "1", "--h", "1"});
  REQUIRE(r.status == cli::ok);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "i,j,h,value,err_estimate");
  CHECK(ls[1].rfind("0,1,1,", 0) == 0);
  const double v = std::stod(ls[1].substr(6));
  CHECK(v == doctest::Approx(-4 * std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("eval") {
  const auto r = run({"eval", "--coeffs", "1", "--h", "2"});
  REQUIRE(r.status == cli::ok);
  CHECK(std::stod(r.out) == doctest::Approx(-4 * std::numbers::pi).epsilon(1e-14));
  const auto neg = run({"eval", "--coeffs=-1,2", "--u", "0.3"});
  CHECK(neg.status == cli::ok);
  const auto at_zero = run({"eval", "--paper-example", "2c", "--u", "0.5"});
  CHECK(std::abs(std::stod(at_zero.out)) < 1e-9);
}

TEST_CASE("zeros") {
  const auto r = run({"zeros", "--paper-example", "1c"});
  REQUIRE(r.status == cli::ok);
  const auto j = Json::parse(r.out);
  REQUIRE(j["zeros"].size() == 1);
  CHECK(std::stod(j["zeros"][0]["u"].get<std::string>()) == doctest::Approx(0.4472135955).epsilon(1e-10));
  CHECK(j["spec"]["n"] == 1);

  const auto literal = run({"zeros", "--paper-example", "1"});
  CHECK(literal.status == cli::ok);
  CHECK(Json::parse(literal.out).contains("zeros"));

  const auto csv = run({"--format", "csv", "zeros", "--coeffs", "1,2", "--grid", "200"});
  REQUIRE(csv.status == cli::ok);
  const auto ls = lines(csv.out);
  CHECK(ls.size() == 201);
  CHECK(ls[0] == "u,I");
}

TEST_CASE("simulate") {
  const auto r = run({"simulate", "--paper-example", "1c", "--x0", "-0.5"});
  REQUIRE(r.status == cli::ok);
  const auto j = Json::parse(r.out);
  CHECK(j["orbit"]["status"] == "returned");
  CHECK(j["spec"]["epsilon"] == "0.001");

  const auto d = run({"simulate", "--paper-example", "2c", "--detect"});
  REQUIRE(d.status == cli::ok);
  CHECK(Json::parse(d.out)["cycles"].size() == 1);

  const auto csv = run({"--format", "csv", "simulate", "--coeffs", "1", "--eps", "0", "--u0", "0.5"});
  REQUIRE(csv.status == cli::ok);
  const auto ls = lines(csv.out);
  CHECK(ls[0] == "t,x,y,H");
  CHECK(ls.size() > 10);
}

TEST_CASE("verify") {
  const auto ok = run({"verify", "--only", "1,6"});
  CHECK(ok.status == cli::ok);
  const auto ls = lines(ok.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0].rfind("[PASS] 1 ", 0) == 0);
  CHECK(ls[1].rfind("[PASS] 6 ", 0) == 0);
  CHECK(run({"verify", "--only", "nope"}).status == cli::domain);
}

TEST_CASE("exit codes") {
  CHECK(run({}).status == cli::usage);
  CHECK(run({"frobnicate"}).status == cli::usage);
  CHECK(run({"bound"}).status == cli::usage);
  CHECK(run({"bound", "--n", "x"}).status == cli::usage);
  CHECK(run({"--format", "xml", "bound", "--n", "3"}).status == cli::usage);
  CHECK(run({"eval", "--h", "1"}).status == cli::usage);
  CHECK(run({"eval", "--coeffs", "1"}).status == cli::usage);
  CHECK(run({"eval", "--coeffs", "1", "--h", "1", "--u", "0.5"}).status == cli::usage);
  CHECK(run({"simulate", "--coeffs", "1"}).status == cli::usage);

  const auto zero = run({"bound", "--n", "0"});
  CHECK(zero.status == cli::domain);
  CHECK(zero.err.find("analysis") != std::string::npos);
  CHECK(run({"reduce", "--i", "1", "--j", "7"}).status == cli::domain);
  CHECK(run({"eval", "--coeffs", "1", "--h", "-1"}).status == cli::domain);
  CHECK(run({"eval", "--paper-example", "9", "--h", "1"}).status == cli::domain);
  CHECK(run({"simulate", "--coeffs", "1", "--eps", "0", "--detect"}).status == cli::domain);

  const auto help = run({"--help"});
  CHECK(help.status == cli::ok);
  CHECK(help.out.find("reduce") != std::string::npos);
}

TEST_CASE("identical runs give identical bytes") {
  const std::vector<std::string> zeros{"zeros", "--paper-example", "3bc"};
  CHECK(run(zeros).out == run(zeros).out);
  const std::vector<std::string> sim{"simulate", "--paper-example", "1c", "--u0", "0.3", "--detect"};
  CHECK(run(sim).out == run(sim).out);
}

TEST_CASE("--out writes the payload to a file") {
  const auto path = std::filesystem::temp_directory_path() / "isochrone_cli_test_bound.txt";
  const auto r = run({"--out", path.string(), "bound", "--n", "5"});
  REQUIRE(r.status == cli::ok);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "109");
  std::filesystem::remove(path);

  CHECK(run({"--out", "/nonexistent-dir/x.json", "bound", "--n", "5"}).status == cli::domain);
}
