#include "doctest.h"

#include "kclass/error.hpp"
#include "kclass/json_io.hpp"

#include <random>

using namespace kclass;

namespace {

DirectedGraph random_graph(std::mt19937_64& rng, std::size_t n) {
  DirectedGraph g;
  g.adjacency = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g.vertices.push_back("x" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
      if (rng() % 2) g.adjacency(i, j) = static_cast<long>(rng() % 4);
  }
  return g;
}

}  // namespace

TEST_CASE("integers") {
  CHECK(to_json(Integer(-7)).dump() == "-7");
  const Integer big("123456789012345678901234567890");
  CHECK(to_json(big).dump() == "\"123456789012345678901234567890\"");
  CHECK(integer_from_json(to_json(big)) == big);
  CHECK(integer_from_json(Json("-42")) == -42);
  CHECK(integer_from_json(parse_json_text("18446744073709551615")) == Integer("18446744073709551615"));
  CHECK_THROWS_AS(integer_from_json(Json("12a")), ParseError);
  CHECK_THROWS_AS(integer_from_json(Json(1.5)), ParseError);
  CHECK_THROWS_AS(parse_json_text("{\"a\": [1, 2"), ParseError);
}

TEST_CASE("groups and matrices") {
  const FgAbelianGroup g = FgAbelianGroup::canonical(2, {2, 6});
  CHECK(to_json(g).dump() == R"({"free_rank":2,"torsion":[2,6]})");
  CHECK(group_from_json(to_json(g)) == g);
  CHECK(group_from_json(parse_json_text(R"({"orders":[3,2,0]})")) == FgAbelianGroup::canonical(1, {6}));
  CHECK_THROWS_AS(group_from_json(parse_json_text(R"({"free_rank":0,"torsion":[2,3]})")), InvalidInput);
  CHECK_THROWS_AS(group_from_json(parse_json_text(R"({"torsion":[2]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json_text("[[1,2],[3]]")), ParseError);
  CHECK(matrix_from_json(parse_json_text("[]"), 3).cols() == 3);
}

TEST_CASE("graphs round trip bit for bit") {
  const std::string text = R"({"vertices":["v","w"],"adjacency":[[1,1],[0,3]]})";
  CHECK(to_json(graph_from_json(parse_json_text(text))).dump() == text);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const DirectedGraph g = random_graph(rng, rng() % 6);
    const std::string s = to_json(g).dump();
    CHECK(graph_from_json(parse_json_text(s)) == g);
    CHECK(to_json(graph_from_json(parse_json_text(s))).dump() == s);
  }
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices":["v"],"adjacency":[[-1]]})")), InvalidInput);
}

TEST_CASE("six-term sequences round trip") {
  const std::string text =
      R"({"nodes":["K0B","K0E","K0A","K1B","K1E","K1A"],)"
      R"("groups":[{"free_rank":1,"torsion":[]},{"free_rank":1,"torsion":[]},{"free_rank":0,"torsion":[3]},)"
      R"({"free_rank":0,"torsion":[]},{"free_rank":0,"torsion":[]},{"free_rank":0,"torsion":[]}],)"
      R"("maps":[[[3]],[[1]],[],[],[],[[]]],)"
      R"("cones":{"K0B":{"kind":"standard_free"},"K0A":{"kind":"all_positive"}}})";
  const SixTermInvariant s = sixterm_from_json(parse_json_text(text));
  CHECK(validate_sixterm(s).empty());
  CHECK(s.maps[0].matrix() == IntMatrix{{3}});
  CHECK(to_json(s).dump() == text);
  CHECK(sixterm_from_json(to_json(s)) == s);

  SUBCASE("empty maps may be written loosely") {
    Json j = parse_json_text(text);
    j["maps"][5] = Json::array();
    CHECK(sixterm_from_json(j) == s);
  }
  SUBCASE("null maps are zero") {
    Json j = parse_json_text(text);
    j["maps"][1] = nullptr;
    CHECK(sixterm_from_json(j).maps[1].is_zero());
  }
  SUBCASE("stationary cones and a middle cone survive") {
    SixTermInvariant t = s;
    t.cone_e = ConeDescriptor::stationary(IntMatrix{{1, 1}, {1, 0}});
    CHECK(sixterm_from_json(to_json(t)) == t);
  }
  SUBCASE("wrong node order is rejected") {
    Json j = parse_json_text(text);
    j["nodes"][3] = "K1A";
    CHECK_THROWS_AS(sixterm_from_json(j), ParseError);
  }
  SUBCASE("wrong shapes") {
    Json j = parse_json_text(text);
    j["maps"][0] = parse_json_text("[[3, 1]]");
    CHECK_THROWS_AS(sixterm_from_json(j), InvalidInput);
    j = parse_json_text(text);
    j["cones"]["K1B"] = parse_json_text(R"({"kind":"all_positive"})");
    CHECK_THROWS_AS(sixterm_from_json(j), ParseError);
    j = parse_json_text(text);
    j["cones"]["K0B"] = parse_json_text(R"({"kind":"sideways"})");
    CHECK_THROWS_AS(sixterm_from_json(j), ParseError);
  }
  SUBCASE("graph invariants round trip") {
    const DirectedGraph g{{"v", "w"}, IntMatrix{{4, 3}, {0, 0}}};
    const SixTermInvariant x = one_ideal_invariant(g);
    const std::string once = to_json(x).dump();
    CHECK(to_json(sixterm_from_json(parse_json_text(once))).dump() == once);
  }
}

TEST_CASE("substitution data") {
  const std::string text = R"({"n":1,"p":[1],"A":[[5,3],[3,2]],"A_tilde":[[5,3,0],[3,2,0],[1,0,0]]})";
  const SubstitutionInvariant s = substitution_from_json(parse_json_text(text));
  CHECK(to_json(s).dump() == text);
  CHECK_THROWS_AS(substitution_from_json(parse_json_text(R"({"n":1,"p":[1],"A":[[1]]})")), ParseError);

  const ScaledInvariant scaled = scaled_from_json(parse_json_text(R"({"matrix":[[5,3],[3,2]],"scale":[0]})"));
  REQUIRE(scaled.scale.size() == 1);
  CHECK(scaled.scale[0].vector == IntVector{0, 0});
  const std::string canonical = to_json(scaled).dump();
  CHECK(canonical == R"({"matrix":[[5,3],[3,2]],"scale":[{"stage":0,"vector":[0,0]}]})");
  CHECK(to_json(scaled_from_json(parse_json_text(canonical))).dump() == canonical);
  CHECK_THROWS_AS(scaled_from_json(parse_json_text(R"({"matrix":[[1,1],[1,0]],"scale":[[1]]})")), InvalidInput);
  CHECK_THROWS_AS(scaled_from_json(parse_json_text(R"({"matrix":[[1,1],[1,0]],"scale":[5]})")), ParseError);
}

TEST_CASE("verdicts") {
  IsoVerdict v;
  v.verdict = Verdict::not_isomorphic;
  v.reason = "K0E groups differ";
  const Json j = to_json(v);
  CHECK(j["verdict"] == "not_isomorphic");
  CHECK(j["certificate"] == "K0E groups differ");
  CHECK(!j.contains("witness"));
  DGVerdict d;
  d.verdict = Verdict::isomorphic;
  d.permutation = {0};
  CHECK(to_json(d)["witness"]["permutation"] == Json::array({0}));
}
