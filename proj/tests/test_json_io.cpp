// Serialization round trips for every shipped format, plus the schema checker.

#include <doctest.h>

#include <random>
#include <stdexcept>
#include <string>
#include <thetacat/catalog.hpp>
#include <thetacat/json_io.hpp>
#include <vector>

using namespace thetacat;
using nlohmann::json;

namespace {

std::string schema_path(const std::string& name) {
  return std::string(THETACAT_SOURCE_DIR) + "/schemas/" + name;
}

bool fits(const std::string& schema, const json& value) {
  return validate_schema_file(schema_path(schema), value);
}

CellComplex spine_complex() {
  ThetaObj c0 = cell(0, 1), c1 = cell(1, 1);
  CellComplex K;
  K.vertices = {c1, c0, c1};
  K.edges.push_back({1, 0, ThetaMor{c0, c1, {1}, {}}});
  K.edges.push_back({1, 2, ThetaMor{c0, c1, {0}, {}}});
  return K;
}

}  // namespace

TEST_CASE("object terms round trip") {
  for (int h = 1; h <= 3; ++h)
    for (const auto& t : enumerate_objects(h, 4)) {
      json j = theta_obj_to_json(t);
      CHECK(fits("theta_obj.schema.json", j));
      CHECK(theta_obj_from_json(j) == t);
    }

  // padded width-0 terms carry an explicit height marker
  ThetaObj flat = pad(point(), 2);
  json j = theta_obj_to_json(flat);
  REQUIRE(j.size() == 3);
  CHECK(j[2] == 2);
  CHECK(fits("theta_obj.schema.json", j));
  CHECK(theta_obj_from_json(j) == flat);
  CHECK(theta_obj_from_json(json::parse("[0,[]]")) == point());

  // children below the marked height are lifted, never truncated
  CHECK(theta_obj_from_json(json::parse("[1,[[0,[]]],2]")) ==
        pad(simplex(1), 2));
  CHECK_THROWS_AS(theta_obj_from_json(json::parse("[1,[[1,[[0,[]]]]],1]")),
                  std::invalid_argument);  // declared below structure
  CHECK_THROWS_AS(theta_obj_from_json(json::parse("[2,[[0,[]]]]")),
                  std::invalid_argument);  // width disagrees with children
  CHECK_THROWS_AS(theta_obj_from_json(json::parse("[0]")),
                  std::invalid_argument);
}

TEST_CASE("morphisms round trip against their endpoints") {
  std::vector<std::pair<ThetaObj, ThetaObj>> pairs = {
      {simplex(1), simplex(2)},
      {cell(2), cell(2)},
      {ThetaObj{2, {simplex(1)}}, ThetaObj{2, {simplex(1), cell(0, 1)}}}};
  for (const auto& [S, T] : pairs)
    for (const auto& m : enumerate_morphisms(S, T)) {
      json j = theta_mor_to_json(m);
      CHECK(fits("theta_mor.schema.json", j));
      CHECK(mor_key(theta_mor_from_json(j, S, T)) == mor_key(m));
    }

  // tau entries may arrive in any order but not twice or missing
  ThetaObj S = cell(1, 1), T = simplex(2);
  ThetaMor m{S, T, {0, 2}, {identity(point()), identity(point())}};
  json j = theta_mor_to_json(m);
  REQUIRE(j["taus"].size() == 2);
  std::swap(j["taus"][0], j["taus"][1]);
  CHECK(mor_key(theta_mor_from_json(j, S, T)) == mor_key(m));
  json dup = theta_mor_to_json(m);
  dup["taus"][1] = dup["taus"][0];
  CHECK_THROWS_AS(theta_mor_from_json(dup, S, T), std::invalid_argument);
  json missing = theta_mor_to_json(m);
  missing["taus"].erase(1);
  CHECK_THROWS_AS(theta_mor_from_json(missing, S, T), std::invalid_argument);
  json bad = theta_mor_to_json(m);
  bad["sigma"] = {0, 1, 2};
  CHECK_THROWS_AS(theta_mor_from_json(bad, S, T), std::invalid_argument);
}

TEST_CASE("cell complexes round trip and render to dot") {
  for (const CellComplex& K :
       {spine_complex(), maximal_segal_cover(simplex(2)).diagram}) {
    REQUIRE(well_formed(K));
    json j = complex_to_json(K);
    CHECK(fits("cell_complex.schema.json", j));
    CellComplex K2 = complex_from_json(j);
    CHECK(complex_to_json(K2) == j);
  }

  json bad = complex_to_json(spine_complex());
  bad["edges"][0]["to"] = 9;
  CHECK_THROWS_AS(complex_from_json(bad), std::invalid_argument);

  std::string dot = complex_to_dot(spine_complex(), "spine");
  CHECK(dot.find("digraph spine") != std::string::npos);
  CHECK(dot.find("[1]") != std::string::npos);
}

TEST_CASE("groupoids round trip through the flat format") {
  std::mt19937 rng(11);
  std::vector<NCatPtr> gs = {walking_iso(), bz2(), codiscrete_cat(3),
                             discrete_cat(2, 1), random_groupoid(rng)};
  for (const auto& G : gs) {
    json j = groupoid_to_json(G);
    CHECK(fits("groupoid.schema.json", j));
    NCatPtr G2 = groupoid_from_json(j);
    CHECK(validate_ncat(G2));
    CHECK(cat_equal(G2, G));
    CHECK(groupoid_to_json(G2) == j);
  }

  CHECK_THROWS_AS(groupoid_to_json(walking_idempotent()),
                  std::invalid_argument);
  CHECK_THROWS_AS(groupoid_to_json(suspend(walking_iso())), arity_error);

  json j = groupoid_to_json(walking_iso());
  json tampered = j;
  tampered["composition"][0][0] = nullptr;  // composable pair marked undefined
  CHECK_THROWS_AS(groupoid_from_json(tampered), std::invalid_argument);
  tampered = j;
  tampered["composition"][1][0] = 0;  // composite with the wrong endpoints
  CHECK_THROWS_AS(groupoid_from_json(tampered), std::invalid_argument);
  json bj = groupoid_to_json(bz2());
  bj["composition"][1][1] = 1;  // the flip squares to itself: not a group
  CHECK_THROWS_AS(groupoid_from_json(bj), std::invalid_argument);
}

TEST_CASE("set flags and level-wise categories serialize") {
  std::mt19937 rng(5);
  SetFlag f = random_set_flag(rng, 2);
  json j = set_flag_to_json(f);
  CHECK(fits("set_flag.schema.json", j));
  SetFlag f2 = set_flag_from_json(j);
  CHECK(set_flag_ok(f2));
  CHECK(f2.levels == f.levels);
  CHECK(f2.maps == f.maps);
  CHECK_THROWS_AS(set_flag_from_json(json::parse("{\"levels\":[]}")),
                  std::invalid_argument);

  json c = ncat_to_json(walking_iso());
  CHECK(fits("ncat.schema.json", c));
  CHECK(c["level"] == 1);
  CHECK(c["objects"].size() == 2);
  CHECK(c["homs"].size() == 4);
  CHECK(fits("ncat.schema.json", ncat_to_json(b2z2())));
  CHECK(fits("ncat.schema.json", ncat_to_json(set_cat(3))));
}

TEST_CASE("report formats match their schemas") {
  json p = partition_to_json(iso_class_partition(discrete_cat(3, 1)));
  CHECK(fits("partition.schema.json", p));
  CHECK(p == json::parse("[[0],[1],[2]]"));

  SegalReport R = is_segal(nerve(walking_iso()), 2);
  CHECK(R.ok);
  json s = segal_report_to_json(R);
  CHECK(fits("segal_report.schema.json", s));
  for (const auto& row : s) CHECK(row["status"] == "ok");

  json t = tabulate_to_json(nerve(from_theta(simplex(2))),
                            {cell(0, 1), cell(1, 1), simplex(2)});
  CHECK(fits("tabulated.schema.json", t));
  CHECK(t[0][1] == 3);
  CHECK(t[1][1] == 6);
  CHECK(t[2][1] == 10);
}

TEST_CASE("schema checker rejects malformed documents") {
  std::string err;
  json obj_schema = load_json_file(schema_path("theta_obj.schema.json"));
  CHECK_FALSE(validate_schema(obj_schema, json::parse("[1]"), &err));
  CHECK(!err.empty());
  CHECK_FALSE(validate_schema(obj_schema, json::parse("[1,[2]]")));
  CHECK(validate_schema(obj_schema, json::parse("[0,[],2]")));

  json g_schema = load_json_file(schema_path("groupoid.schema.json"));
  CHECK_FALSE(validate_schema(g_schema, json::parse("{\"objects\":[]}")));
  json g = groupoid_to_json(walking_iso());
  CHECK(validate_schema(g_schema, g));
  g["extra"] = 1;
  CHECK_FALSE(validate_schema(g_schema, g));

  json f_schema = load_json_file(schema_path("set_flag.schema.json"));
  CHECK(validate_schema(
      f_schema, json::parse("{\"levels\":[[\"a\"]],\"maps\":[{\"a\":\"b\"}]}")));
  CHECK_FALSE(validate_schema(
      f_schema, json::parse("{\"levels\":[[\"a\"]],\"maps\":[{\"a\":3}]}")));

  json r_schema = load_json_file(schema_path("segal_report.schema.json"));
  json row = json::parse(
      "[{\"object\":\"[1]\",\"lhs_card\":1,\"rhs_card\":1,\"status\":\"ok\"}]");
  CHECK(validate_schema(r_schema, row));
  row[0]["status"] = "bogus";
  CHECK_FALSE(validate_schema(r_schema, row));

  CHECK_THROWS_AS(load_json_file(schema_path("missing.schema.json")),
                  std::invalid_argument);
}
