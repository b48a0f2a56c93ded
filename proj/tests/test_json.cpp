#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "dihom/corpus.hpp"
#include "dihom/json_io.hpp"
#include "dihom/nualg.hpp"

using namespace dihom;

namespace {

Json load(const std::string& name) {
  std::ifstream in(std::string(DIHOM_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  return Json::parse(in);
}

bool same_simplicial_set(const TruncatedSimplicialSet& x, const TruncatedSimplicialSet& y) {
  return x.truncation == y.truncation && x.names == y.names && x.faces == y.faces &&
         x.degens == y.degens;
}

bool same_category(const EnrichedCategory& x, const EnrichedCategory& y) {
  if (x.truncation != y.truncation || x.objects != y.objects || x.identities != y.identities ||
      x.comp != y.comp || x.homs.size() != y.homs.size())
    return false;
  for (size_t i = 0; i < x.homs.size(); ++i)
    if (!same_simplicial_set(x.homs[i], y.homs[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("bundled input files reproduce the in-code corpus") {
  const std::vector<std::pair<std::string, EnrichedCategory>> expect = {
      {"interval.json", corpus_interval(2)},
      {"parallel-pair.json", corpus_parallel_pair(2)},
      {"square.json", corpus_square(2)},
      {"chain3.json", corpus_chain(3, 2)},
      {"chain4.json", corpus_chain(4, 2)},
      {"vee.json", corpus_vee(2)},
      {"antichain3.json", corpus_antichain(3, 2)},
  };
  for (const auto& [file, cat] : expect) {
    INFO(file);
    CHECK(same_category(category_from_json(load(file)), cat));
  }
}

TEST_CASE("explicit table form round-trips every corpus entry") {
  for (int D : {2, 3})
    for (const auto& entry : standard_corpus(D)) {
      INFO(entry.name << " at truncation " << D);
      Json doc = category_to_json(entry.category);
      CHECK_FALSE(doc.contains("builder"));
      CHECK(same_category(category_from_json(doc), entry.category));
      // serialization is a pure function of the category, byte for byte
      CHECK(doc.dump(2) == category_to_json(entry.category).dump(2));
    }
}

TEST_CASE("dimension override rebuilds builder inputs, rejects table conflicts") {
  CHECK(same_category(category_from_json(load("square.json"), 3), corpus_square(3)));
  CHECK(same_category(category_from_json(load("parallel-pair.json"), 3),
                      corpus_parallel_pair(3)));

  Json doc = category_to_json(corpus_interval(2));
  CHECK(same_category(category_from_json(doc, 2), corpus_interval(2)));
  CHECK_THROWS_AS(category_from_json(doc, 3), ParseError);
}

TEST_CASE("malformed documents raise parse errors, not builder errors") {
  CHECK_THROWS_AS(category_from_json(Json::array()), ParseError);
  CHECK_THROWS_AS(category_from_json(Json{{"schema", "nope.v1"}}), ParseError);

  Json missing = {{"schema", "enriched-category.v1"}, {"truncation", 2}};
  CHECK_THROWS_AS(category_from_json(missing), ParseError);

  Json bad_builder = load("square.json");
  bad_builder["builder"] = Json{{"mystery", Json::object()}};
  CHECK_THROWS_AS(category_from_json(bad_builder), ParseError);

  Json bad_triple = load("parallel-pair.json");
  bad_triple["builder"]["category"]["composition"] = Json::array({Json::array({"f", "g"})});
  CHECK_THROWS_AS(category_from_json(bad_triple), ParseError);

  Json ragged = category_to_json(corpus_interval(2));
  ragged["homs"][1]["faces"][0][0] = Json::array({0});  // a 1-simplex needs two faces
  CHECK_THROWS_AS(category_from_json(ragged), ParseError);

  // mathematically broken but well-shaped input is the builder's complaint
  Json cyclic = load("interval.json");
  cyclic["builder"]["poset"]["relations"].push_back(Json::array({"1", "0"}));
  CHECK_THROWS_AS(category_from_json(cyclic), BuilderError);
}

TEST_CASE("name-based composition tables fill identity composites themselves") {
  // a three-step chain, spelled out by hand: one genuine composite triple
  Json doc = {
      {"schema", "enriched-category.v1"},
      {"truncation", 2},
      {"builder",
       {{"category",
         {{"objects", {"x", "y", "z"}},
          {"morphisms",
           {{{"name", "idx"}, {"source", "x"}, {"target", "x"}},
            {{"name", "idy"}, {"source", "y"}, {"target", "y"}},
            {{"name", "idz"}, {"source", "z"}, {"target", "z"}},
            {{"name", "p"}, {"source", "x"}, {"target", "y"}},
            {{"name", "q"}, {"source", "y"}, {"target", "z"}},
            {{"name", "pq"}, {"source", "x"}, {"target", "z"}}}},
          {"identities", {"idx", "idy", "idz"}},
          {"composition", {{"p", "q", "pq"}}}}}}},
  };

  Category1 expect;
  expect.objects = {"x", "y", "z"};
  expect.morphisms = {{"idx", 0, 0}, {"idy", 1, 1}, {"idz", 2, 2},
                      {"p", 0, 1},   {"q", 1, 2},   {"pq", 0, 2}};
  expect.identities = {0, 1, 2};
  expect.then_table.assign(6, std::vector<int>(6, -1));
  expect.then_table[0][0] = 0;
  expect.then_table[1][1] = 1;
  expect.then_table[2][2] = 2;
  expect.then_table[0][3] = 3;
  expect.then_table[3][1] = 3;
  expect.then_table[1][4] = 4;
  expect.then_table[4][2] = 4;
  expect.then_table[0][5] = 5;
  expect.then_table[5][2] = 5;
  expect.then_table[3][4] = 5;

  CHECK(same_category(category_from_json(doc), build_discrete(expect, 2)));
}

TEST_CASE("algebra and matrix serialization use decimal strings") {
  auto cat1 = underlying_category(corpus_interval(2));
  Algebra a = path_algebra(cat1).algebra;
  Json ja = algebra_to_json(a);
  CHECK(ja["schema"] == "algebra.v1");
  CHECK(ja["basis"].size() == 3);
  CHECK(ja["unital"] == false);
  CHECK(ja["unit"].is_null());

  Mat<Int> m(2, 2);
  m << Int(0), Int(-7), Int(12345678901234567890ULL), Int(1);
  Json jm = matrix_to_json(m);
  CHECK(jm[0][1] == "-7");
  CHECK(jm[1][0] == "12345678901234567890");

  Mat<Rat> r(1, 2);
  r << Rat(3) / Rat(4), Rat(-2);
  Json jr = matrix_to_json(r);
  CHECK(jr[0][0] == "3/4");
  CHECK(jr[0][1] == "-2");
}
