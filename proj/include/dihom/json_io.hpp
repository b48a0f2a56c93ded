#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "bimod.hpp"
#include "exactlin.hpp"
#include "nualg.hpp"
#include "scat.hpp"

namespace dihom {

using Json = nlohmann::json;  // std::map storage keeps keys sorted, so dumps are reproducible

/* Raised for malformed input documents: wrong schema tag, missing or
 * mistyped fields. Mathematical problems with well-formed input (a
 * relation table that is not a poset, a failing validator) are *not*
 * parse errors and surface through reports or BuilderError instead. */
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace jsondetail {

inline const Json& field(const Json& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(ctx + ": missing field '" + key + "'");
  return *it;
}

inline int as_int(const Json& j, const std::string& ctx) {
  if (!j.is_number_integer()) throw ParseError(ctx + ": expected an integer");
  return j.get<int>();
}

inline std::string as_string(const Json& j, const std::string& ctx) {
  if (!j.is_string()) throw ParseError(ctx + ": expected a string");
  return j.get<std::string>();
}

inline const Json& as_array(const Json& j, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected an array");
  return j;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& ctx) {
  std::vector<std::string> out;
  for (const auto& e : as_array(j, ctx)) out.push_back(as_string(e, ctx));
  return out;
}

inline std::vector<int> int_list(const Json& j, const std::string& ctx) {
  std::vector<int> out;
  for (const auto& e : as_array(j, ctx)) out.push_back(as_int(e, ctx));
  return out;
}

inline std::vector<std::vector<int>> int_table(const Json& j, const std::string& ctx) {
  std::vector<std::vector<int>> out;
  for (const auto& e : as_array(j, ctx)) out.push_back(int_list(e, ctx));
  return out;
}

}  // namespace jsondetail

inline void expect_schema(const Json& j, const std::string& want) {
  if (!j.is_object()) throw ParseError("document root must be an object");
  std::string got = jsondetail::as_string(jsondetail::field(j, "schema", "document"), "schema");
  if (got != want) throw ParseError("expected schema '" + want + "', found '" + got + "'");
}

/* ---- enriched-category.v1 ---------------------------------------- */

inline Json simplicial_set_to_json(const TruncatedSimplicialSet& ss) {
  Json j;
  j["names"] = ss.names;
  Json faces = Json::array();
  for (int d = 1; d <= ss.truncation; ++d) faces.push_back(ss.faces[d]);
  j["faces"] = faces;
  Json degens = Json::array();
  for (int d = 0; d < ss.truncation; ++d) degens.push_back(ss.degens[d]);
  j["degeneracies"] = degens;
  return j;
}

inline TruncatedSimplicialSet simplicial_set_from_json(const Json& j, int truncation,
                                                       const std::string& ctx) {
  using namespace jsondetail;
  TruncatedSimplicialSet ss;
  ss.truncation = truncation;
  const Json& names = as_array(field(j, "names", ctx), ctx + ".names");
  if (static_cast<int>(names.size()) != truncation + 1)
    throw ParseError(ctx + ": need one name list per dimension up to the truncation");
  for (const auto& lvl : names) ss.names.push_back(string_list(lvl, ctx + ".names"));
  auto check_shape = [&](const std::vector<std::vector<int>>& table, int d, size_t rows,
                         const std::string& what) {
    if (table.size() != rows)
      throw ParseError(ctx + ": " + what + " rows do not match the dimension-" +
                       std::to_string(d) + " simplex count");
    for (const auto& row : table)
      if (static_cast<int>(row.size()) != d + 1)
        throw ParseError(ctx + ": " + what + " rows in dimension " + std::to_string(d) +
                         " need " + std::to_string(d + 1) + " entries");
  };
  const Json& faces = as_array(field(j, "faces", ctx), ctx + ".faces");
  if (static_cast<int>(faces.size()) != truncation)
    throw ParseError(ctx + ": need face tables for dimensions 1.." + std::to_string(truncation));
  ss.faces.resize(truncation + 1);
  ss.faces[0].assign(ss.names[0].size(), {});  // 0-simplices keep empty face rows
  for (int d = 1; d <= truncation; ++d) {
    ss.faces[d] = int_table(faces[d - 1], ctx + ".faces");
    check_shape(ss.faces[d], d, ss.names[d].size(), "face");
  }
  const Json& degens = as_array(field(j, "degeneracies", ctx), ctx + ".degeneracies");
  if (static_cast<int>(degens.size()) != truncation)
    throw ParseError(ctx + ": need degeneracy tables for dimensions 0.." +
                     std::to_string(truncation - 1));
  ss.degens.resize(truncation + 1);
  ss.degens[truncation].assign(ss.names[truncation].size(), {});  // nothing above the truncation
  for (int d = 0; d < truncation; ++d) {
    ss.degens[d] = int_table(degens[d], ctx + ".degeneracies");
    check_shape(ss.degens[d], d, ss.names[d].size(), "degeneracy");
  }
  ss.recompute_origins();
  return ss;
}

inline Json category_to_json(const EnrichedCategory& cat) {
  Json j;
  j["schema"] = "enriched-category.v1";
  j["truncation"] = cat.truncation;
  j["objects"] = cat.objects;
  Json homs = Json::array();
  for (const auto& h : cat.homs) homs.push_back(simplicial_set_to_json(h));
  j["homs"] = homs;
  j["identities"] = cat.identities;
  j["composition"] = cat.comp;
  return j;
}

namespace jsondetail {

/* Reconstructs a small category from name-based composition triples.
 * Identity composites are filled in automatically; everything else is
 * non-composable unless listed. */
inline Category1 category1_from_json(const Json& j, const std::string& ctx) {
  Category1 cat;
  cat.objects = string_list(field(j, "objects", ctx), ctx + ".objects");
  const Json& morphisms = as_array(field(j, "morphisms", ctx), ctx + ".morphisms");
  for (const auto& m : morphisms) {
    std::string name = as_string(field(m, "name", ctx), ctx + ".morphisms.name");
    std::string src = as_string(field(m, "source", ctx), ctx + ".morphisms.source");
    std::string tgt = as_string(field(m, "target", ctx), ctx + ".morphisms.target");
    auto find_obj = [&](const std::string& s) {
      for (size_t i = 0; i < cat.objects.size(); ++i)
        if (cat.objects[i] == s) return static_cast<int>(i);
      throw ParseError(ctx + ": unknown object '" + s + "'");
    };
    cat.morphisms.push_back({name, find_obj(src), find_obj(tgt)});
  }
  auto find_mor = [&](const std::string& s) {
    auto idx = cat.find_morphism(s);
    if (!idx) throw ParseError(ctx + ": unknown morphism '" + s + "'");
    return *idx;
  };
  auto identity_names = string_list(field(j, "identities", ctx), ctx + ".identities");
  if (identity_names.size() != cat.objects.size())
    throw ParseError(ctx + ": need one identity per object, in object order");
  for (const auto& name : identity_names) cat.identities.push_back(find_mor(name));
  const int m = static_cast<int>(cat.morphisms.size());
  cat.then_table.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i) {
    for (size_t a = 0; a < cat.identities.size(); ++a) {
      int e = cat.identities[a];
      if (cat.morphisms[i].source == static_cast<int>(a)) cat.then_table[e][i] = i;
      if (cat.morphisms[i].target == static_cast<int>(a)) cat.then_table[i][e] = i;
    }
  }
  if (j.contains("composition"))
    for (const auto& triple : as_array(j["composition"], ctx + ".composition")) {
      auto names = string_list(triple, ctx + ".composition");
      if (names.size() != 3)
        throw ParseError(ctx + ": composition entries are [first, second, result]");
      cat.then_table[find_mor(names[0])][find_mor(names[1])] = find_mor(names[2]);
    }
  return cat;
}

}  // namespace jsondetail

/* Accepts either the explicit table form or one of the two builder
 * forms ("poset", or "category" with optional "attachments"). A caller
 * supplied dimension overrides the stored truncation for builder inputs;
 * explicit tables have a fixed truncation, so a disagreeing override is
 * rejected rather than silently ignored. */
inline EnrichedCategory category_from_json(const Json& j,
                                           std::optional<int> dim_override = std::nullopt) {
  using namespace jsondetail;
  expect_schema(j, "enriched-category.v1");
  int stored = j.contains("truncation") ? as_int(j["truncation"], "truncation") : -1;

  if (j.contains("builder")) {
    int truncation = dim_override ? *dim_override : (stored > 0 ? stored : 2);
    if (truncation < 1) throw ParseError("truncation must be at least 1");
    const Json& b = j["builder"];
    if (b.contains("poset")) {
      const Json& p = b["poset"];
      auto elements = string_list(field(p, "elements", "builder.poset"), "builder.poset.elements");
      std::vector<std::pair<std::string, std::string>> relations;
      for (const auto& r : as_array(field(p, "relations", "builder.poset"),
                                    "builder.poset.relations")) {
        auto pair = string_list(r, "builder.poset.relations");
        if (pair.size() != 2)
          throw ParseError("builder.poset.relations: entries are [below, above]");
        relations.push_back({pair[0], pair[1]});
      }
      return build_from_poset(elements, relations, truncation);
    }
    if (b.contains("category")) {
      Category1 cat = category1_from_json(b["category"], "builder.category");
      std::vector<HomotopyAttachment> attachments;
      if (b.contains("attachments"))
        for (const auto& a : as_array(b["attachments"], "builder.attachments")) {
          HomotopyAttachment at;
          at.from = as_string(field(a, "from", "attachment"), "attachment.from");
          at.to = as_string(field(a, "to", "attachment"), "attachment.to");
          at.source = as_string(field(a, "source", "attachment"), "attachment.source");
          at.target = as_string(field(a, "target", "attachment"), "attachment.target");
          at.name = as_string(field(a, "name", "attachment"), "attachment.name");
          attachments.push_back(at);
        }
      return build_enriched(cat, truncation, attachments);
    }
    throw ParseError("builder: expected 'poset' or 'category'");
  }

  if (stored < 1) throw ParseError("explicit form requires a positive 'truncation'");
  if (dim_override && *dim_override != stored)
    throw ParseError("requested dimension disagrees with the truncation stored in the file");
  const int truncation = stored;
  EnrichedCategory cat;
  cat.truncation = truncation;
  cat.objects = string_list(field(j, "objects", "category"), "objects");
  const int n = static_cast<int>(cat.objects.size());
  const Json& homs = as_array(field(j, "homs", "category"), "homs");
  if (static_cast<int>(homs.size()) != n * n)
    throw ParseError("homs: need one entry per ordered object pair, row-major");
  for (int k = 0; k < n * n; ++k)
    cat.homs.push_back(
        simplicial_set_from_json(homs[k], truncation, "homs[" + std::to_string(k) + "]"));
  cat.identities = int_list(field(j, "identities", "category"), "identities");
  const Json& comp = as_array(field(j, "composition", "category"), "composition");
  if (static_cast<int>(comp.size()) != n * n * n)
    throw ParseError("composition: need one entry per object triple, row-major");
  for (const auto& t : comp) {
    std::vector<std::vector<std::vector<int>>> tables;
    for (const auto& d : as_array(t, "composition"))
      tables.push_back(jsondetail::int_table(d, "composition"));
    if (static_cast<int>(tables.size()) != truncation + 1)
      throw ParseError("composition: need one table per dimension up to the truncation");
    cat.comp.push_back(tables);
  }
  return cat;
}

/* ---- algebra.v1 ---------------------------------------------------- */

inline Json algebra_to_json(const Algebra& a) {
  Json j;
  j["schema"] = "algebra.v1";
  j["basis"] = a.basis;
  j["unital"] = a.unital;
  if (a.unital)
    j["unit"] = a.unit;
  else
    j["unit"] = nullptr;
  j["products"] = a.prod;
  return j;
}

/* ---- matrices and module.v1 ---------------------------------------- */

template <class K>
Json matrix_to_json(const Mat<K>& m) {
  Json rows = Json::array();
  for (long i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(scalar_to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class K>
Json module_to_json(const std::vector<std::string>& generator_names,
                    const std::vector<std::string>& morphism_ids,
                    const PresentedBimodule<K>& mod) {
  Json j;
  j["schema"] = "module.v1";
  j["generators"] = generator_names;
  j["relations"] = matrix_to_json(mod.relations);
  Json left = Json::object(), right = Json::object();
  for (size_t m = 0; m < mod.left.size(); ++m) left[morphism_ids[m]] = matrix_to_json(mod.left[m]);
  for (size_t m = 0; m < mod.right.size(); ++m)
    right[morphism_ids[m]] = matrix_to_json(mod.right[m]);
  j["left_actions"] = left;
  j["right_actions"] = right;
  return j;
}

inline Json report_to_json(const ValidationReport& rep) {
  Json issues = Json::array();
  for (const auto& it : rep.issues) issues.push_back(Json{{"where", it.where}, {"what", it.what}});
  return issues;
}

}  // namespace dihom
