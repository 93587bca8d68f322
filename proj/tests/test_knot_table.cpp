#include <doctest.h>

#include "khbound/errors.hpp"
#include "khbound/knot_table.hpp"
#include "support.hpp"

using namespace khbound;

TEST_CASE("bundled table") {
  const auto& t = khtest::bundled();
  CHECK(t.size() >= 20);
  for (const auto& e : t) CHECK_NOTHROW(e.diagram());
  const auto cables = ingest_table(default_table_path().parent_path() / "cable_examples.csv");
  CHECK(cables.size() == 6);
  CHECK(cables[1].name == "m" + cables[0].name);
  CHECK(mirror(cables[0].diagram()).hash() == cables[1].diagram().hash());
}

TEST_CASE("CSV parsing") {
  CHECK(parse_table("name,pd\n", false).empty());
  CHECK(parse_table("", false).empty());
  const auto t = parse_table("# comment\nname,pd,i_max\n\"k\",\"X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]\",3\n", false);
  REQUIRE(t.size() == 1);
  CHECK(t[0].properties.at("i_max") == 3);
  CHECK(t[0].diagram().num_crossings() == 3);

  try {
    parse_table("name,pd\na,U1\nb,U1\na,U1\n", false, "f.csv");
    FAIL("duplicate accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("'a'") != std::string::npos);
    CHECK(std::string(e.what()).find("f.csv:4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_table("name\nU1\n", false), InputError);
  CHECK_THROWS_AS(parse_table("name,pd\nk,X[1,2,3]\n", false), InputError);
  CHECK_THROWS_AS(parse_table("name,pd\nk,\"U1\n", false), InputError);
  CHECK_THROWS_AS(parse_table("name,pd,i_max\nk,U1,x\n", false), InputError);
  CHECK_THROWS_AS(parse_table("name,pd,mirror_name\nk,U1,k\n", false), InputError);
}

TEST_CASE("JSON tables") {
  const auto t = parse_table(R"([{"name": "h", "pd": "X[3,2,4,1],X[2,3,1,4]", "mirror_name": "mh", "i_max": 2}])", true);
  REQUIRE(t.size() == 2);
  CHECK(t[0].properties.at("i_max") == 2);
  CHECK(stats(t[1].diagram()).writhe == -2);
  CHECK_THROWS_AS(parse_table("{}", true), InputError);
  CHECK_THROWS_AS(parse_table("[{\"name\": 1}]", true), InputError);
  CHECK_THROWS_AS(parse_table("[", true), InputError);
}

TEST_CASE("name resolution") {
  const auto& t = khtest::bundled();
  CHECK(resolve_target("unknot", t).num_crossings() == 0);
  CHECK(resolve_target("T(3,-4)", t).num_crossings() == 8);
  CHECK(stats(resolve_target("T(3,-4)", t)).writhe == -8);
  CHECK(resolve_target("m4_1", t).hash() == mirror(resolve_target("4_1", t)).hash());
  CHECK(resolve_target("mm3_1", {{"m3_1", "X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]", {}}}).name() == "mm3_1");
  CHECK_THROWS_AS(resolve_target("10_132", t), InputError);
  CHECK_THROWS_AS(ingest_table("/nonexistent/table.csv"), InputError);
}
