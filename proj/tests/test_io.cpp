#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cohstate/json_io.hpp"
#include "cohstate/sampling.hpp"
#include "cohstate/table.hpp"
#include "test_util.hpp"

using namespace cohstate;
using nlohmann::json;

namespace {

std::string error_of(const json& doc, bool as_frame) {
  try {
    if (as_frame) {
      frame_from_json(doc);
    } else {
      operator_from_json(doc);
    }
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("operator JSON round trip") {
  Rng rng(1);
  for (int trial = 0; trial < 25; ++trial) {
    const OperatorPoly p = random_poly(rng, 3, 3, 4);
    const json doc = operator_to_json(p);
    const OperatorPoly q = operator_from_json(json::parse(doc.dump()));
    CHECK(equivalent(p, q, 1e-12));
    CHECK(operator_to_json(q) == doc);
  }
}

TEST_CASE("operator JSON parsing") {
  const json doc = json::parse(R"({"n": 2, "terms": [{"re": 2, "creators": [1], "annihilators": [2]}]})");
  const OperatorPoly p = operator_from_json(doc);
  CHECK(equivalent(p, bilinear(2, 1, 2, 2.0)));

  CHECK(error_of(json::parse(R"({"terms": []})"), false).find("n: missing") == 0);
  CHECK(error_of(json::parse(R"({"n": 2.5, "terms": []})"), false).find("n:") == 0);
  CHECK(error_of(json::parse(R"({"n": 2, "terms": {}})"), false).find("terms:") == 0);
  CHECK(error_of(json::parse(R"({"n": 2, "terms": [{"re": 1, "creators": [3], "annihilators": []}]})"),
                 false)
            .find("terms[0].creators") == 0);
  CHECK(error_of(json::parse(R"({"n": 2, "terms": [{"re": 1, "creators": [1]}]})"), false)
            .find("terms[0].annihilators") == 0);
  CHECK(error_of(json::parse(R"({"n": 2, "terms": [{"re": "x", "creators": [], "annihilators": []}]})"),
                 false)
            .find("terms[0].re") == 0);
  CHECK_THROWS_AS(operator_from_json(json::parse("[]")), FormatError);
}

TEST_CASE("frame JSON") {
  Rng rng(2);
  const CoherentFrame f = random_frame(rng, 2, 3);
  const CoherentFrame g = frame_from_json(json::parse(frame_to_json(f).dump()));
  for (int s = 0; s < 2; ++s) {
    for (int r = 1; r <= 3; ++r) CHECK(g.alpha(s, r) == f.alpha(s, r));
  }

  const json plain = json::parse(R"({"n": 2, "S": 1, "alpha": [[0.6, 0.8]]})");
  CHECK(frame_from_json(plain).alpha(0, 2) == Complex(0.8, 0.0));

  const json skew = json::parse(R"({"n": 2, "S": 2, "alpha": [[1, 0], [1, 0]]})");
  CHECK_THROWS_AS(frame_from_json(skew), FrameError);
  CHECK(error_of(json::parse(R"({"n": 2, "S": 2, "alpha": [[1, 0]]})"), true).find("alpha:") == 0);
  CHECK(error_of(json::parse(R"({"n": 2, "S": 1, "alpha": [[1]]})"), true).find("alpha[0]:") == 0);
  CHECK(error_of(json::parse(R"({"n": 2, "S": 1, "alpha": [[1, {"im": 0}]]})"), true)
            .find("alpha[0][1].re") == 0);
  CHECK(error_of(json::parse(R"({"n": 2, "alpha": []})"), true).find("S:") == 0);
}

TEST_CASE("occupancy strings") {
  CHECK(occupancy_from_string("[1,2]") == Occupancy{1, 2});
  CHECK(occupancy_from_string(" [ 0 ] ") == Occupancy{0});
  CHECK_THROWS_AS(occupancy_from_string("1,2", "--bra"), FormatError);
  CHECK_THROWS_AS(occupancy_from_string("[1,-2]", "--bra"), FormatError);
  CHECK_THROWS_AS(occupancy_from_string("[1.5]", "--bra"), FormatError);
  try {
    occupancy_from_string("{}", "--ket");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("--ket") == 0);
  }
}

TEST_CASE("CSV output") {
  Table t;
  t.header = {"v", "value"};
  CHECK(format_csv(t) == "v,value\n");

  t.rows.push_back({std::int64_t{0}, 0.1});
  t.rows.push_back({std::int64_t{1}, Cell{}});
  t.rows.push_back({std::int64_t{2}, -0.0});
  t.rows.push_back({std::int64_t{3}, 1.0 / 3.0});
  t.rows.push_back({std::string("a,b"), std::string("say \"hi\"")});
  CHECK(format_csv(t) ==
        "v,value\n0,0.1\n1,\n2,0\n3,0.333333333333\n\"a,b\",\"say \"\"hi\"\"\"\n");

  const auto dir = std::filesystem::temp_directory_path() / "cohstate_test_io";
  std::filesystem::create_directories(dir);
  emit_csv(t, dir / "a.csv");
  emit_csv(t, dir / "b.csv");
  CHECK(slurp(dir / "a.csv") == format_csv(t));
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK_THROWS_AS(emit_csv(t, dir / "missing" / "c.csv"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
