#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cohstate/cli.hpp"

namespace fs = std::filesystem;
using cohstate::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
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
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("me count") {
  CHECK(invoke({"me", "count", "--species", "3", "--body", "3"}).out == "93\n");
  CHECK(invoke({"me", "count", "--species", "5", "--body", "4"}).out == "7885\n");
  const Result bad = invoke({"me", "count", "--species", "0", "--body", "3"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("--species") != std::string::npos);
}

TEST_CASE("oracle check") {
  const Result r = invoke({"oracle", "check", "--seed", "7", "--cases", "50"});
  CHECK(r.code == 0);
  CHECK(r.out == "50/50 agree (max dev < 1e-10)\n");
  // an impossible tolerance turns agreement into a check failure
  CHECK(invoke({"oracle", "check", "--seed", "7", "--cases", "5", "--tol", "0"}).code == 2);
}

TEST_CASE("vibron minimize-r") {
  CHECK(invoke({"vibron", "minimize-r", "--N", "100"}).out == "1.000000\n");
  CHECK(invoke({"vibron", "minimize-r", "--N", "1"}).code == 1);
}

TEST_CASE("vibron energies") {
  const Result r = invoke({"vibron", "energies", "--N", "2"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "v,exact,coherent,exact_rescaled,coherent_rescaled");
  const double expected[2][5] = {{0, -6, -6, -1.5, -1.5}, {1, 0, -2, 0, -0.5}};
  int row = 0;
  while (std::getline(lines, line)) {
    REQUIRE(row < 2);
    std::istringstream cells(line);
    std::string cell;
    for (int col = 0; col < 5; ++col) {
      std::getline(cells, cell, ',');
      CHECK(std::stod(cell) == doctest::Approx(expected[row][col]).epsilon(1e-12));
    }
    ++row;
  }
  CHECK(row == 2);
  const Result levels = invoke({"vibron", "energies", "--N", "2", "--levels"});
  CHECK(std::count(levels.out.begin(), levels.out.end(), '\n') == 7);

  TempDir dir("cohstate_test_cli_dump");
  CHECK(invoke({"vibron", "energies", "--N", "1", "--dump-matrix",
                (dir.path / "h.txt").string()})
            .code == 0);
  CHECK(slurp(dir.path / "h.txt") == "0 0 -2 0\n1 1 -2 0\n2 2 -2 0\n");

  const Result guard = invoke({"vibron", "energies", "--N", "201"});
  CHECK(guard.code == 1);
  CHECK(guard.err.find("--N") != std::string::npos);
}

TEST_CASE("vibron transitions") {
  CHECK(invoke({"vibron", "transitions", "--N", "10", "--multipole", "dipole", "--Nx", "3",
                "--delta", "0"})
            .out == "-4 16\n");
  const Result exact = invoke({"vibron", "transitions", "--N", "10", "--op", "D-", "--vi", "0",
                               "--li", "1", "--vf", "0", "--lf", "0"});
  CHECK(exact.code == 0);
  CHECK(std::stod(exact.out) == doctest::Approx(110.0));
  CHECK(invoke({"vibron", "transitions", "--N", "10", "--op", "X+", "--vi", "0", "--li", "1",
                "--vf", "0", "--lf", "0"})
            .code == 1);
  CHECK(invoke({"vibron", "transitions", "--N", "10", "--op", "D-", "--vi", "9", "--li", "1",
                "--vf", "0", "--lf", "0"})
            .code == 1);
}

TEST_CASE("vibron compare is deterministic") {
  TempDir a("cohstate_test_cli_a");
  TempDir b("cohstate_test_cli_b");
  CHECK(invoke({"vibron", "compare", "--N", "40", "--out", a.path.string()}).code == 0);
  CHECK(invoke({"vibron", "compare", "--N", "40", "--out", b.path.string()}).code == 0);
  for (const char* name : {"energies.csv", "dipole.csv", "quadrupole.csv"}) {
    const std::string text = slurp(a.path / name);
    CHECK_FALSE(text.empty());
    CHECK(text == slurp(b.path / name));
    CHECK(text.find('\r') == std::string::npos);
  }
}

TEST_CASE("me eval") {
  TempDir dir("cohstate_test_cli_eval");
  write_file(dir.path / "frame.json",
             R"({"n": 2, "S": 2, "alpha": [[1, 0], [0, 1]]})");
  write_file(dir.path / "op.json",
             R"({"n": 2, "terms": [{"re": 1, "im": 0, "creators": [1], "annihilators": [2]}]})");
  const std::string frame = (dir.path / "frame.json").string();
  const std::string op = (dir.path / "op.json").string();

  // b1^ b2 |1 1> = sqrt(2) |2 0>
  const Result r = invoke({"me", "eval", "--frame", frame, "--op", op, "--bra", "[2,0]", "--ket",
                           "[1,1]"});
  CHECK(r.code == 0);
  CHECK(r.out == "1.4142135623731 0\n");
  CHECK(invoke({"me", "eval", "--frame", frame, "--op", op, "--bra", "[2,0]", "--ket", "[1,1]",
                "--mode", "grouped"})
            .out == r.out);

  const Result bad_bra =
      invoke({"me", "eval", "--frame", frame, "--op", op, "--bra", "[2]", "--ket", "[1,1]"});
  CHECK(bad_bra.code == 1);
  CHECK(bad_bra.err.find("--bra") != std::string::npos);

  write_file(dir.path / "broken.json", "{\"n\": 2, ");
  const Result broken = invoke({"me", "eval", "--frame", frame, "--op",
                                (dir.path / "broken.json").string(), "--bra", "[2,0]", "--ket",
                                "[1,1]"});
  CHECK(broken.code == 1);
  CHECK(broken.err.find("--op") != std::string::npos);

  write_file(dir.path / "skew.json", R"({"n": 2, "S": 2, "alpha": [[1, 0], [1, 0]]})");
  const Result skew = invoke({"me", "eval", "--frame", (dir.path / "skew.json").string(), "--op",
                              op, "--bra", "[2,0]", "--ket", "[1,1]"});
  CHECK(skew.code == 1);
  CHECK(skew.err.find("Gram") != std::string::npos);
}

TEST_CASE("usage errors and help") {
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"me", "count", "--species", "3", "--bogus", "1"}).code == 1);
  CHECK(invoke({"nonsense"}).code == 1);

  const std::vector<std::vector<std::string>> commands = {
      {"me", "eval"},          {"me", "count"},           {"oracle", "check"},
      {"vibron", "energies"},  {"vibron", "transitions"}, {"vibron", "minimize-r"},
      {"vibron", "compare"}};
  const std::map<std::string, std::vector<std::string>> flags = {
      {"eval", {"--frame", "--op", "--bra", "--ket", "--mode"}},
      {"count", {"--species", "--body"}},
      {"check", {"--seed", "--cases", "--tol"}},
      {"energies", {"--N", "--levels", "--out", "--dump-matrix"}},
      {"transitions",
       {"--N", "--out", "--op", "--vi", "--li", "--vf", "--lf", "--multipole", "--Nx", "--delta",
        "--r"}},
      {"minimize-r", {"--N"}},
      {"compare", {"--N", "--out"}}};
  for (auto args : commands) {
    const std::string name = args.back();
    args.push_back("--help");
    const Result r = invoke(args);
    CHECK(r.code == 0);
    for (const auto& flag : flags.at(name)) {
      INFO(name << " " << flag);
      CHECK(r.out.find(flag) != std::string::npos);
    }
  }
}
