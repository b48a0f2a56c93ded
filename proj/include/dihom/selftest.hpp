#pragma once

#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bimod.hpp"
#include "corpus.hpp"
#include "homology.hpp"
#include "nualg.hpp"
#include "scat.hpp"

namespace dihom {

/* Built-in diagnostics over the bundled corpus. Each check has a stable
 * name so single checks can be re-run after a failure; the corruption
 * checks damage a copy of a bundled category on purpose and pass only
 * when the validators locate the damage. */

struct SelftestEntry {
  std::string name;
  bool pass = false;
  std::string detail;  // first located violation, or the reason a check failed
};

namespace selftestdetail {

inline std::pair<bool, std::string> from_report(const ValidationReport& rep) {
  if (rep.ok()) return {true, ""};
  return {false, rep.issues.front().where + ": " + rep.issues.front().what};
}

inline std::pair<bool, std::string> expect_caught(const ValidationReport& rep) {
  if (rep.ok()) return {false, "validator accepted a deliberately damaged category"};
  return {true, "caught at " + rep.issues.front().where + ": " + rep.issues.front().what};
}

inline Vec<Int> random_vec(std::mt19937& rng, long n) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  Vec<Int> v(n);
  for (long i = 0; i < n; ++i) v[i] = Int(coeff(rng));
  return v;
}

template <class K>
bool same_tables(const PresentedBimodule<K>& x, const PresentedBimodule<K>& y) {
  if (x.generators != y.generators || x.left.size() != y.left.size() ||
      x.right.size() != y.right.size() || !mat_equal(x.relations, y.relations))
    return false;
  for (size_t i = 0; i < x.left.size(); ++i)
    if (!mat_equal(x.left[i], y.left[i])) return false;
  for (size_t i = 0; i < x.right.size(); ++i)
    if (!mat_equal(x.right[i], y.right[i])) return false;
  return true;
}

}  // namespace selftestdetail

inline std::vector<SelftestEntry> run_selftest(const std::string& only = "",
                                               bool inject_corruption = false) {
  using namespace selftestdetail;
  using Check = std::function<std::pair<bool, std::string>()>;
  std::vector<std::pair<std::string, Check>> checks;
  auto add = [&](std::string name, Check fn) { checks.emplace_back(std::move(name), std::move(fn)); };

  for (int D : {2, 3})
    for (const auto& entry : standard_corpus(D)) {
      add("validators/" + entry.name + "/dim" + std::to_string(D), [cat = entry.category] {
        ValidationReport rep = validate_enriched_category(cat);
        rep.absorb(validate_category(underlying_category(cat)), "underlying ");
        return from_report(rep);
      });
    }

  for (const auto& entry : standard_corpus(2)) {
    add("translation-action/" + entry.name, [cat = entry.category] {
      return from_report(check_translation_action(build_chain_data(cat)));
    });

    add("path-algebra/" + entry.name, [cat = entry.category]() -> std::pair<bool, std::string> {
      PathAlgebra pa = path_algebra(underlying_category(cat));
      auto rep = from_report(validate_algebra(pa.algebra));
      if (!rep.first) return rep;
      if (!is_idempotent_algebra<Int>(pa.algebra))
        return {false, "products do not span the path algebra"};
      std::mt19937 rng(1234);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Vec<Int>> sample = {random_vec(rng, pa.algebra.dim())};
        if (!left_local_unit<Int>(pa.algebra, sample) ||
            !right_local_unit<Int>(pa.algebra, sample))
          return {false, "no local unit for a sampled element"};
      }
      return {true, ""};
    });

    add("unitalization/" + entry.name, [cat = entry.category]() -> std::pair<bool, std::string> {
      PathAlgebra pa = path_algebra(underlying_category(cat));
      if (!check_adjunction_triangles<Int>(pa.algebra))
        return {false, "adjunction triangle identities fail"};
      Algebra ahat = unitalize(pa.algebra);
      ChainData data = build_chain_data(cat);
      std::mt19937 rng(1234);
      for (int n = 0; n < std::min(2, static_cast<int>(data.levels.size())); ++n) {
        auto free = free_chain_bimodule<Int>(data.levels[n]);
        auto lifted = module_unitalize(free);
        if (!same_tables(module_deunitalize(lifted), free))
          return {false, "unitalize/deunitalize round trip differs in degree " +
                             std::to_string(n)};
        auto rep = validate_bimodule(ahat, ahat, lifted);
        if (!rep.ok()) return from_report(rep);
        Vec<Int> unit = Vec<Int>::Zero(ahat.dim());
        unit[ahat.unit] = Int(1);
        for (int trial = 0; trial < 3; ++trial) {
          Vec<Int> x = random_vec(rng, free.generators);
          if (!mat_equal(Vec<Int>(act_left(lifted, unit, x)), x) ||
              !mat_equal(Vec<Int>(act_right(lifted, x, unit)), x))
            return {false, "adjoined unit moves a chain in degree " + std::to_string(n)};
        }
      }
      return {true, ""};
    });

    add("boundary/" + entry.name, [cat = entry.category] {
      ChainData data = build_chain_data(cat);
      auto c = build_complex<Int>(cat, data);
      ValidationReport rep = check_boundary_squares(c);
      rep.absorb(check_boundary_equivariance(c), "");
      return from_report(rep);
    });

    add("homology/" + entry.name, [cat = entry.category]() -> std::pair<bool, std::string> {
      ChainData data = build_chain_data(cat);
      auto c = build_complex<Int>(cat, data);
      Algebra a = path_algebra(underlying_category(cat)).algebra;
      for (int n = 0; n < c.top(); ++n) {
        auto h = homology(c, n);
        auto rep = validate_bimodule(a, a, h.module);
        if (!rep.ok())
          return {false, "degree " + std::to_string(n) + " actions: " +
                             rep.issues.front().where + ": " + rep.issues.front().what};
      }
      return {true, ""};
    });
  }

  add("firmness/interval", []() -> std::pair<bool, std::string> {
    Algebra a = path_algebra(underlying_category(corpus_interval(2))).algebra;
    auto fr = check_firm(a, regular_bimodule<Int>(a));
    if (!fr.firm) return {false, "the regular bimodule is not firm"};
    return {true, ""};
  });

  add("relative/square-corner", []() -> std::pair<bool, std::string> {
    auto square = corpus_square(2);
    auto sub = full_subcategory(square, {"00", "01"});
    ChainData amb = build_chain_data(square);
    ChainData inner = build_chain_data(sub.category);
    auto pair = relative_complex<Int>(square, amb, sub, inner);
    auto report = les(pair);
    if (!report.ses_ok) return {false, "short exact sequence fails"};
    if (!report.lifts_ok) return {false, "connecting map depends on the chosen lift"};
    for (const auto& node : report.nodes)
      if (!node.exact) return {false, "not exact at " + node.node};
    auto tk = transfer_kernel<Int>(amb, sub, inner, 0);
    if (!tk.kernel_zero) return {false, "transfer map has a kernel in degree 0"};
    if (!tk.domain_is_extended) return {false, "transfer image is not the extended chains"};
    return {true, ""};
  });

  if (inject_corruption) {
    add("corruption/face-range", [] {
      auto cat = corpus_square(2);
      cat.hom(0, 1).faces[1][0][0] = 99;
      return expect_caught(validate_enriched_category(cat));
    });
    add("corruption/degeneracy-law", [] {
      auto cat = corpus_parallel_pair(2);
      int a = *cat.find_object("a"), b = *cat.find_object("b");
      // redirect s0(f) to the degeneracy of g: d0 s0 then misses f
      cat.hom(a, b).degens[0][*cat.hom(a, b).find(0, "f")] = {
          *cat.hom(a, b).find(1, "s0.g")};
      return expect_caught(validate_enriched_category(cat));
    });
    add("corruption/identity-range", [] {
      auto cat = corpus_square(2);
      cat.identities[0] = 99;
      return expect_caught(validate_enriched_category(cat));
    });
    add("corruption/composition-range", [] {
      auto cat = corpus_square(2);
      cat.comp[cat.triple_index(0, 1, 3)][0][0][0] = 99;
      return expect_caught(validate_enriched_category(cat));
    });
    add("corruption/composition-law", [] {
      auto cat = corpus_parallel_pair(2);
      int a = *cat.find_object("a"), b = *cat.find_object("b");
      int sida = *cat.hom(a, a).find(1, "s0.ida");
      int h = *cat.hom(a, b).find(1, "h");
      int wrong = *cat.hom(a, b).find(1, "s0.f");
      cat.comp[cat.triple_index(a, a, b)][1][sida][h] = wrong;
      return expect_caught(validate_enriched_category(cat));
    });
  }

  std::vector<SelftestEntry> out;
  for (auto& [name, fn] : checks) {
    if (!only.empty() && name.find(only) == std::string::npos) continue;
    SelftestEntry e;
    e.name = name;
    try {
      auto [pass, detail] = fn();
      e.pass = pass;
      e.detail = detail;
    } catch (const std::exception& ex) {
      e.pass = false;
      e.detail = std::string("threw: ") + ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace dihom
