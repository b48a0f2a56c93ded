#pragma once

#include "scat.hpp"

namespace dihom {

/* Small bundled categories used by the self-test suite, the regression
 * tests, and the documentation. All builders take the truncation level,
 * which must be 2 or higher for the chain modules to be useful. */

inline EnrichedCategory corpus_interval(int truncation) {
  return build_from_poset({"0", "1"}, {{"0", "1"}}, truncation);
}

inline EnrichedCategory corpus_square(int truncation) {
  return build_from_poset({"00", "01", "10", "11"},
                          {{"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}, {"00", "11"}},
                          truncation);
}

inline EnrichedCategory corpus_chain(int length, int truncation) {
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> leq;
  for (int i = 0; i < length; ++i) elems.push_back(std::to_string(i));
  for (int i = 0; i < length; ++i)
    for (int j = i + 1; j < length; ++j) leq.emplace_back(elems[i], elems[j]);
  return build_from_poset(elems, leq, truncation);
}

inline EnrichedCategory corpus_antichain(int count, int truncation) {
  std::vector<std::string> elems;
  for (int i = 0; i < count; ++i) elems.push_back("x" + std::to_string(i));
  return build_from_poset(elems, {}, truncation);
}

inline EnrichedCategory corpus_vee(int truncation) {
  return build_from_poset({"c", "a", "b"}, {{"c", "a"}, {"c", "b"}}, truncation);
}

/* Two parallel morphisms f, g: a -> b with one homotopy h from f to g.
 * The smallest category whose homs are not discrete. */
inline EnrichedCategory corpus_parallel_pair(int truncation) {
  Category1 cat;
  cat.objects = {"a", "b"};
  cat.morphisms = {{"ida", 0, 0}, {"idb", 1, 1}, {"f", 0, 1}, {"g", 0, 1}};
  cat.identities = {0, 1};
  cat.then_table.assign(4, std::vector<int>(4, -1));
  cat.then_table[0][0] = 0;
  cat.then_table[1][1] = 1;
  cat.then_table[0][2] = 2;
  cat.then_table[0][3] = 3;
  cat.then_table[2][1] = 2;
  cat.then_table[3][1] = 3;
  return build_enriched(cat, truncation, {{"a", "b", "f", "g", "h"}});
}

struct CorpusEntry {
  std::string name;
  EnrichedCategory category;
};

inline std::vector<CorpusEntry> standard_corpus(int truncation) {
  std::vector<CorpusEntry> out;
  out.push_back({"interval", corpus_interval(truncation)});
  out.push_back({"parallel-pair", corpus_parallel_pair(truncation)});
  out.push_back({"square", corpus_square(truncation)});
  out.push_back({"antichain1", corpus_antichain(1, truncation)});
  out.push_back({"antichain2", corpus_antichain(2, truncation)});
  out.push_back({"antichain3", corpus_antichain(3, truncation)});
  out.push_back({"chain3", corpus_chain(3, truncation)});
  out.push_back({"chain4", corpus_chain(4, truncation)});
  out.push_back({"vee", corpus_vee(truncation)});
  return out;
}

}  // namespace dihom
