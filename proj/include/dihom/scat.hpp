#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dihom {

/* Errors raised by the category builders (bad poset data, ambiguous
 * composites, unresolved simplex names). Validation of already-built
 * structures never throws; it collects issues into a ValidationReport. */
struct BuilderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationIssue {
  std::string where;
  std::string what;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }

  void add(std::string where, std::string what) {
    issues.push_back({std::move(where), std::move(what)});
  }

  void absorb(const ValidationReport& other, const std::string& prefix) {
    for (const auto& it : other.issues)
      issues.push_back({prefix + it.where, it.what});
  }

  std::string to_string() const {
    std::string out;
    for (const auto& it : issues) {
      out += it.where;
      out += ": ";
      out += it.what;
      out += '\n';
    }
    return out;
  }
};

/* A simplicial set truncated at a fixed dimension. Simplices of every
 * dimension are stored explicitly, degenerate ones included, so chain
 * modules later use all of them as basis elements. Face and degeneracy
 * maps are index tables:
 *
 *   faces[d][i][j]  = the j-th face of simplex i in dimension d   (1 <= d)
 *   degens[d][i][k] = s_k applied to simplex i in dimension d     (d < truncation)
 *
 * `origin` records, for each simplex, one witness (k, lower) with
 * simplex == s_k(lower), or k == -1 for nondegenerate simplices. It is
 * derived data; call recompute_origins() after editing the tables. */
struct TruncatedSimplicialSet {
  struct DegeneracyOrigin {
    int k = -1;
    int lower = -1;
  };

  int truncation = 0;
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<std::vector<int>>> faces;
  std::vector<std::vector<std::vector<int>>> degens;
  std::vector<std::vector<DegeneracyOrigin>> origin;

  int size(int d) const {
    if (d < 0 || d > truncation) return 0;
    return static_cast<int>(names[d].size());
  }

  int face(int d, int i, int j) const { return faces[d][i][j]; }
  int degeneracy(int d, int i, int k) const { return degens[d][i][k]; }

  bool is_degenerate(int d, int i) const { return origin[d][i].k >= 0; }

  void recompute_origins() {
    origin.assign(truncation + 1, {});
    for (int d = 0; d <= truncation; ++d)
      origin[d].assign(names[d].size(), DegeneracyOrigin{});
    for (int d = 0; d < truncation; ++d)
      for (int i = 0; i < size(d); ++i)
        for (int k = 0; k <= d; ++k) {
          int up = degens[d][i][k];
          if (up >= 0 && up < size(d + 1) && origin[d + 1][up].k < 0)
            origin[d + 1][up] = {k, i};
        }
  }

  std::optional<int> find(int d, const std::string& name) const {
    if (d < 0 || d > truncation) return std::nullopt;
    for (int i = 0; i < size(d); ++i)
      if (names[d][i] == name) return i;
    return std::nullopt;
  }
};

/* Iterated last-index degeneracy: sends a vertex x to the unique simplex
 * s_{d-1} ... s_1 s_0 (x) in dimension d. These towers are the images of
 * identities and the degeneracy-closure of 0-simplices. */
inline int total_degeneracy(const TruncatedSimplicialSet& ss, int vertex, int d) {
  if (d < 0 || d > ss.truncation)
    throw std::out_of_range("total_degeneracy: dimension outside truncation");
  int cur = vertex;
  for (int m = 0; m < d; ++m) cur = ss.degeneracy(m, cur, m);
  return cur;
}

inline ValidationReport validate_simplicial_set(const TruncatedSimplicialSet& ss) {
  ValidationReport rep;
  const int D = ss.truncation;
  if (D < 0) {
    rep.add("truncation", "negative truncation");
    return rep;
  }
  if (static_cast<int>(ss.names.size()) != D + 1 ||
      static_cast<int>(ss.faces.size()) != D + 1 ||
      static_cast<int>(ss.degens.size()) != D + 1) {
    rep.add("tables", "name/face/degeneracy tables must have one level per dimension");
    return rep;
  }

  auto dim_tag = [](int d, int i) {
    return "dim " + std::to_string(d) + " simplex " + std::to_string(i);
  };

  for (int d = 0; d <= D; ++d) {
    int n = ss.size(d);
    if (static_cast<int>(ss.faces[d].size()) != n ||
        static_cast<int>(ss.degens[d].size()) != n) {
      rep.add("dim " + std::to_string(d), "face/degeneracy rows do not match simplex count");
      return rep;
    }
    for (int i = 0; i < n; ++i) {
      int want_faces = d >= 1 ? d + 1 : 0;
      int want_degens = d < D ? d + 1 : 0;
      if (static_cast<int>(ss.faces[d][i].size()) != want_faces)
        rep.add(dim_tag(d, i), "expected " + std::to_string(want_faces) + " faces");
      else
        for (int j = 0; j <= d && d >= 1; ++j)
          if (ss.faces[d][i][j] < 0 || ss.faces[d][i][j] >= ss.size(d - 1))
            rep.add(dim_tag(d, i), "face " + std::to_string(j) + " out of range");
      if (static_cast<int>(ss.degens[d][i].size()) != want_degens)
        rep.add(dim_tag(d, i), "expected " + std::to_string(want_degens) + " degeneracies");
      else
        for (int k = 0; k <= d && d < D; ++k)
          if (ss.degens[d][i][k] < 0 || ss.degens[d][i][k] >= ss.size(d + 1))
            rep.add(dim_tag(d, i), "degeneracy " + std::to_string(k) + " out of range");
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (ss.names[d][i] == ss.names[d][j])
          rep.add(dim_tag(d, j), "duplicate simplex name '" + ss.names[d][i] + "'");
  }
  if (!rep.ok()) return rep;  // identities below assume well-shaped tables

  // face-face: removing vertex b then a equals removing a then b-1, for a < b
  for (int d = 2; d <= D; ++d)
    for (int i = 0; i < ss.size(d); ++i)
      for (int b = 1; b <= d; ++b)
        for (int a = 0; a < b; ++a)
          if (ss.face(d - 1, ss.face(d, i, b), a) !=
              ss.face(d - 1, ss.face(d, i, a), b - 1))
            rep.add(dim_tag(d, i),
                    "face identity fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");

  // degeneracy-degeneracy: s_i s_j == s_{j+1} s_i for i <= j
  for (int d = 0; d + 2 <= D; ++d)
    for (int x = 0; x < ss.size(d); ++x)
      for (int j = 0; j <= d; ++j)
        for (int i = 0; i <= j; ++i)
          if (ss.degeneracy(d + 1, ss.degeneracy(d, x, j), i) !=
              ss.degeneracy(d + 1, ss.degeneracy(d, x, i), j + 1))
            rep.add(dim_tag(d, x),
                    "degeneracy identity fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");

  // mixed: faces of s_j(x) recover x (i = j, j+1) or commute past the degeneracy
  for (int d = 0; d < D; ++d)
    for (int x = 0; x < ss.size(d); ++x)
      for (int j = 0; j <= d; ++j) {
        int sx = ss.degeneracy(d, x, j);
        for (int i = 0; i <= d + 1; ++i) {
          int got = ss.face(d + 1, sx, i);
          int want;
          if (i == j || i == j + 1)
            want = x;
          else if (i < j)
            want = ss.degeneracy(d - 1, ss.face(d, x, i), j - 1);
          else
            want = ss.degeneracy(d - 1, ss.face(d, x, i - 1), j);
          if (got != want)
            rep.add(dim_tag(d, x),
                    "face/degeneracy identity fails at (i=" + std::to_string(i) +
                        ",j=" + std::to_string(j) + ")");
        }
      }

  // the stored degeneracy flags must match reachability through the tables
  TruncatedSimplicialSet probe = ss;
  probe.recompute_origins();
  for (int d = 0; d <= D; ++d) {
    if (ss.origin.size() != probe.origin.size() ||
        ss.origin[d].size() != probe.origin[d].size()) {
      rep.add("origin", "degeneracy-origin table has wrong shape");
      break;
    }
    for (int i = 0; i < ss.size(d); ++i) {
      bool claimed = ss.is_degenerate(d, i);
      bool actual = probe.is_degenerate(d, i);
      if (claimed != actual)
        rep.add(dim_tag(d, i), claimed ? "flagged degenerate but not in any s_k image"
                                       : "in an s_k image but not flagged degenerate");
      else if (claimed) {
        auto o = ss.origin[d][i];
        if (o.lower < 0 || o.lower >= ss.size(d - 1) || o.k > d - 1 ||
            ss.degeneracy(d - 1, o.lower, o.k) != i)
          rep.add(dim_tag(d, i), "degeneracy-origin witness does not reproduce the simplex");
      }
    }
  }
  return rep;
}

/* An ordinary (unenriched) finite category: named objects, named
 * morphisms with source/target, an identity per object, and a total
 * composition table over composable pairs. then_table[i][j] is the
 * composite "i then j", defined when target(i) == source(j), else -1. */
struct Category1 {
  struct Morphism {
    std::string name;
    int source = 0;
    int target = 0;
  };

  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<int> identities;
  std::vector<std::vector<int>> then_table;

  // for categories extracted from an enriched one: the 0-simplex index of
  // each morphism inside hom(source, target); empty otherwise
  std::vector<int> hom_simplex;

  int then(int i, int j) const { return then_table[i][j]; }

  bool composable(int i, int j) const {
    return morphisms[i].target == morphisms[j].source;
  }

  std::optional<int> find_morphism(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(morphisms.size()); ++i)
      if (morphisms[i].name == name) return i;
    return std::nullopt;
  }
};

inline ValidationReport validate_category(const Category1& cat) {
  ValidationReport rep;
  const int n = static_cast<int>(cat.objects.size());
  const int m = static_cast<int>(cat.morphisms.size());
  if (static_cast<int>(cat.identities.size()) != n) {
    rep.add("identities", "need one identity morphism per object");
    return rep;
  }
  if (static_cast<int>(cat.then_table.size()) != m) {
    rep.add("composition", "table must have one row per morphism");
    return rep;
  }
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(cat.then_table[i].size()) != m) {
      rep.add("composition", "row " + std::to_string(i) + " has wrong length");
      return rep;
    }
    if (cat.morphisms[i].source < 0 || cat.morphisms[i].source >= n ||
        cat.morphisms[i].target < 0 || cat.morphisms[i].target >= n)
      rep.add("morphism " + cat.morphisms[i].name, "source or target out of range");
  }
  for (int a = 0; a < n; ++a) {
    int e = cat.identities[a];
    if (e < 0 || e >= m || cat.morphisms[e].source != a || cat.morphisms[e].target != a)
      rep.add("object " + cat.objects[a], "identity is not an endomorphism of the object");
  }
  if (!rep.ok()) return rep;

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int c = cat.then(i, j);
      if (!cat.composable(i, j)) {
        if (c != -1)
          rep.add("composition", cat.morphisms[i].name + " then " + cat.morphisms[j].name +
                                     " defined despite mismatched endpoints");
        continue;
      }
      if (c < 0 || c >= m) {
        rep.add("composition", cat.morphisms[i].name + " then " + cat.morphisms[j].name +
                                   " missing or out of range");
        continue;
      }
      if (cat.morphisms[c].source != cat.morphisms[i].source ||
          cat.morphisms[c].target != cat.morphisms[j].target)
        rep.add("composition", cat.morphisms[i].name + " then " + cat.morphisms[j].name +
                                   " has wrong endpoints");
    }
  if (!rep.ok()) return rep;

  for (int i = 0; i < m; ++i) {
    int es = cat.identities[cat.morphisms[i].source];
    int et = cat.identities[cat.morphisms[i].target];
    if (cat.then(es, i) != i)
      rep.add("unit law", "identity then " + cat.morphisms[i].name + " differs from it");
    if (cat.then(i, et) != i)
      rep.add("unit law", cat.morphisms[i].name + " then identity differs from it");
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!cat.composable(i, j)) continue;
      for (int k = 0; k < m; ++k) {
        if (!cat.composable(j, k)) continue;
        if (cat.then(cat.then(i, j), k) != cat.then(i, cat.then(j, k)))
          rep.add("associativity", cat.morphisms[i].name + ", " + cat.morphisms[j].name +
                                       ", " + cat.morphisms[k].name);
      }
    }
  return rep;
}

/* A category enriched in truncated simplicial sets. One hom simplicial
 * set per ordered pair of objects, an identity 0-simplex per object, and
 * dimension-wise composition tables
 *
 *   comp[(a*n + b)*n + c][d][i][j] = the composite "sigma then tau"
 *
 * for sigma the i-th d-simplex of hom(a,b) and tau the j-th of hom(b,c).
 * Composition follows diagram order throughout. */
struct EnrichedCategory {
  int truncation = 0;
  std::vector<std::string> objects;
  std::vector<TruncatedSimplicialSet> homs;
  std::vector<int> identities;
  std::vector<std::vector<std::vector<std::vector<int>>>> comp;

  int object_count() const { return static_cast<int>(objects.size()); }

  int pair_index(int a, int b) const { return a * object_count() + b; }

  int triple_index(int a, int b, int c) const {
    return (a * object_count() + b) * object_count() + c;
  }

  const TruncatedSimplicialSet& hom(int a, int b) const { return homs[pair_index(a, b)]; }
  TruncatedSimplicialSet& hom(int a, int b) { return homs[pair_index(a, b)]; }

  int compose(int a, int b, int c, int d, int i, int j) const {
    return comp[triple_index(a, b, c)][d][i][j];
  }

  int identity_simplex(int a, int d) const {
    return total_degeneracy(hom(a, a), identities[a], d);
  }

  std::optional<int> find_object(const std::string& name) const {
    for (int i = 0; i < object_count(); ++i)
      if (objects[i] == name) return i;
    return std::nullopt;
  }
};

inline ValidationReport validate_enriched_category(const EnrichedCategory& cat) {
  ValidationReport rep;
  const int n = cat.object_count();
  const int D = cat.truncation;
  if (static_cast<int>(cat.homs.size()) != n * n) {
    rep.add("homs", "need one hom simplicial set per ordered pair of objects");
    return rep;
  }
  if (static_cast<int>(cat.identities.size()) != n) {
    rep.add("identities", "need one identity 0-simplex per object");
    return rep;
  }
  if (static_cast<int>(cat.comp.size()) != n * n * n) {
    rep.add("composition", "need one table per ordered triple of objects");
    return rep;
  }

  auto hom_tag = [&](int a, int b) {
    return "hom(" + cat.objects[a] + "," + cat.objects[b] + ")";
  };
  auto comp_tag = [&](int a, int b, int c) {
    return "comp(" + cat.objects[a] + "," + cat.objects[b] + "," + cat.objects[c] + ")";
  };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& h = cat.hom(a, b);
      if (h.truncation != D) {
        rep.add(hom_tag(a, b), "truncation differs from the category's");
        return rep;
      }
      rep.absorb(validate_simplicial_set(h), hom_tag(a, b) + " ");
    }
  if (!rep.ok()) return rep;

  for (int a = 0; a < n; ++a)
    if (cat.identities[a] < 0 || cat.identities[a] >= cat.hom(a, a).size(0))
      rep.add("object " + cat.objects[a], "identity 0-simplex out of range");
  if (!rep.ok()) return rep;

  // table shape and range
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const auto& table = cat.comp[cat.triple_index(a, b, c)];
        if (static_cast<int>(table.size()) != D + 1) {
          rep.add(comp_tag(a, b, c), "need one table per dimension");
          return rep;
        }
        for (int d = 0; d <= D; ++d) {
          int na = cat.hom(a, b).size(d), nb = cat.hom(b, c).size(d), nc = cat.hom(a, c).size(d);
          if (static_cast<int>(table[d].size()) != na) {
            rep.add(comp_tag(a, b, c), "dim " + std::to_string(d) + " table has wrong row count");
            return rep;
          }
          for (int i = 0; i < na; ++i) {
            if (static_cast<int>(table[d][i].size()) != nb) {
              rep.add(comp_tag(a, b, c), "dim " + std::to_string(d) + " table has wrong row length");
              return rep;
            }
            for (int j = 0; j < nb; ++j)
              if (table[d][i][j] < 0 || table[d][i][j] >= nc)
                rep.add(comp_tag(a, b, c),
                        "dim " + std::to_string(d) + " entry (" + std::to_string(i) + "," +
                            std::to_string(j) + ") out of range");
          }
        }
      }
  if (!rep.ok()) return rep;

  // composition is a simplicial map: commutes with all faces and degeneracies
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const auto& hab = cat.hom(a, b);
        const auto& hbc = cat.hom(b, c);
        const auto& hac = cat.hom(a, c);
        for (int d = 0; d <= D; ++d)
          for (int i = 0; i < hab.size(d); ++i)
            for (int j = 0; j < hbc.size(d); ++j) {
              int comp_d = cat.compose(a, b, c, d, i, j);
              for (int k = 0; k <= d && d >= 1; ++k)
                if (hac.face(d, comp_d, k) !=
                    cat.compose(a, b, c, d - 1, hab.face(d, i, k), hbc.face(d, j, k)))
                  rep.add(comp_tag(a, b, c), "does not commute with face " + std::to_string(k) +
                                                 " in dim " + std::to_string(d));
              for (int k = 0; k <= d && d < D; ++k)
                if (hac.degeneracy(d, comp_d, k) !=
                    cat.compose(a, b, c, d + 1, hab.degeneracy(d, i, k), hbc.degeneracy(d, j, k)))
                  rep.add(comp_tag(a, b, c), "does not commute with degeneracy " +
                                                 std::to_string(k) + " in dim " + std::to_string(d));
            }
      }

  // unit laws against identity degeneracy towers
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d <= D; ++d) {
        int ea = cat.identity_simplex(a, d);
        int eb = cat.identity_simplex(b, d);
        for (int i = 0; i < cat.hom(a, b).size(d); ++i) {
          if (cat.compose(a, a, b, d, ea, i) != i)
            rep.add(hom_tag(a, b), "left unit law fails in dim " + std::to_string(d) +
                                       " at simplex " + std::to_string(i));
          if (cat.compose(a, b, b, d, i, eb) != i)
            rep.add(hom_tag(a, b), "right unit law fails in dim " + std::to_string(d) +
                                       " at simplex " + std::to_string(i));
        }
      }

  // associativity, dimension by dimension
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e)
          for (int d = 0; d <= D; ++d)
            for (int i = 0; i < cat.hom(a, b).size(d); ++i)
              for (int j = 0; j < cat.hom(b, c).size(d); ++j)
                for (int k = 0; k < cat.hom(c, e).size(d); ++k)
                  if (cat.compose(a, c, e, d, cat.compose(a, b, c, d, i, j), k) !=
                      cat.compose(a, b, e, d, i, cat.compose(b, c, e, d, j, k)))
                    rep.add("associativity",
                            comp_tag(a, b, c) + " vs " + comp_tag(b, c, e) + " dim " +
                                std::to_string(d));
  return rep;
}

inline std::string qualified_morphism_label(const EnrichedCategory& cat, int a, int b,
                                            const std::string& simplex_name) {
  return cat.objects[a] + ">" + cat.objects[b] + ":" + simplex_name;
}

/* The ordinary category of 0-simplices. Morphisms enumerate the homs in
 * (source, target) lexicographic order and, within a hom, in 0-simplex
 * order, so positions are reproducible from the enriched category. */
inline Category1 underlying_category(const EnrichedCategory& cat) {
  Category1 out;
  out.objects = cat.objects;
  const int n = cat.object_count();
  std::vector<std::vector<int>> first(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      first[a][b] = static_cast<int>(out.morphisms.size());
      for (int i = 0; i < cat.hom(a, b).size(0); ++i) {
        out.morphisms.push_back({qualified_morphism_label(cat, a, b, cat.hom(a, b).names[0][i]), a, b});
        out.hom_simplex.push_back(i);
      }
    }
  out.identities.resize(n);
  for (int a = 0; a < n; ++a) out.identities[a] = first[a][a] + cat.identities[a];
  const int m = static_cast<int>(out.morphisms.size());
  out.then_table.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (out.morphisms[i].target != out.morphisms[j].source) continue;
      int a = out.morphisms[i].source, b = out.morphisms[i].target, c = out.morphisms[j].target;
      int cidx = cat.compose(a, b, c, 0, out.hom_simplex[i], out.hom_simplex[j]);
      out.then_table[i][j] = first[a][c] + cidx;
    }
  return out;
}

/* A simplicially enriched functor, stored as pure data against a fixed
 * source and target category:
 *
 *   object_map[a]                   = image object
 *   hom_map[pair_index(a,b)][d][i]  = image simplex in hom(F a, F b)
 */
struct EnrichedFunctor {
  std::vector<int> object_map;
  std::vector<std::vector<std::vector<int>>> hom_map;
};

inline EnrichedFunctor identity_functor(const EnrichedCategory& cat) {
  EnrichedFunctor f;
  const int n = cat.object_count();
  f.object_map.resize(n);
  for (int a = 0; a < n; ++a) f.object_map[a] = a;
  f.hom_map.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto& levels = f.hom_map[cat.pair_index(a, b)];
      levels.resize(cat.truncation + 1);
      for (int d = 0; d <= cat.truncation; ++d) {
        levels[d].resize(cat.hom(a, b).size(d));
        for (int i = 0; i < cat.hom(a, b).size(d); ++i) levels[d][i] = i;
      }
    }
  return f;
}

inline ValidationReport validate_functor(const EnrichedCategory& src,
                                         const EnrichedCategory& tgt,
                                         const EnrichedFunctor& f) {
  ValidationReport rep;
  const int n = src.object_count();
  const int D = src.truncation;
  if (tgt.truncation != D) {
    rep.add("functor", "source and target truncations differ");
    return rep;
  }
  if (static_cast<int>(f.object_map.size()) != n ||
      static_cast<int>(f.hom_map.size()) != n * n) {
    rep.add("functor", "object or hom map has wrong shape");
    return rep;
  }
  for (int a = 0; a < n; ++a)
    if (f.object_map[a] < 0 || f.object_map[a] >= tgt.object_count()) {
      rep.add("functor", "object image out of range");
      return rep;
    }

  auto hom_tag = [&](int a, int b) {
    return "hom(" + src.objects[a] + "," + src.objects[b] + ")";
  };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& levels = f.hom_map[src.pair_index(a, b)];
      const auto& sh = src.hom(a, b);
      const auto& th = tgt.hom(f.object_map[a], f.object_map[b]);
      if (static_cast<int>(levels.size()) != D + 1) {
        rep.add(hom_tag(a, b), "hom map needs one level per dimension");
        return rep;
      }
      for (int d = 0; d <= D; ++d) {
        if (static_cast<int>(levels[d].size()) != sh.size(d)) {
          rep.add(hom_tag(a, b), "hom map level " + std::to_string(d) + " has wrong length");
          return rep;
        }
        for (int i = 0; i < sh.size(d); ++i)
          if (levels[d][i] < 0 || levels[d][i] >= th.size(d)) {
            rep.add(hom_tag(a, b), "image simplex out of range in dim " + std::to_string(d));
            return rep;
          }
      }
      for (int d = 1; d <= D; ++d)
        for (int i = 0; i < sh.size(d); ++i)
          for (int j = 0; j <= d; ++j)
            if (th.face(d, levels[d][i], j) != levels[d - 1][sh.face(d, i, j)])
              rep.add(hom_tag(a, b), "does not commute with face " + std::to_string(j) +
                                         " in dim " + std::to_string(d));
      for (int d = 0; d < D; ++d)
        for (int i = 0; i < sh.size(d); ++i)
          for (int k = 0; k <= d; ++k)
            if (th.degeneracy(d, levels[d][i], k) != levels[d + 1][sh.degeneracy(d, i, k)])
              rep.add(hom_tag(a, b), "does not commute with degeneracy " + std::to_string(k) +
                                         " in dim " + std::to_string(d));
    }
  if (!rep.ok()) return rep;

  for (int a = 0; a < n; ++a)
    if (f.hom_map[src.pair_index(a, a)][0][src.identities[a]] !=
        tgt.identities[f.object_map[a]])
      rep.add("object " + src.objects[a], "identity not preserved");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d <= D; ++d)
          for (int i = 0; i < src.hom(a, b).size(d); ++i)
            for (int j = 0; j < src.hom(b, c).size(d); ++j) {
              int lhs = f.hom_map[src.pair_index(a, c)][d][src.compose(a, b, c, d, i, j)];
              int rhs = tgt.compose(f.object_map[a], f.object_map[b], f.object_map[c], d,
                                    f.hom_map[src.pair_index(a, b)][d][i],
                                    f.hom_map[src.pair_index(b, c)][d][j]);
              if (lhs != rhs)
                rep.add("composition",
                        "not preserved on " + hom_tag(a, b) + " x " + hom_tag(b, c) + " dim " +
                            std::to_string(d));
            }
  return rep;
}

inline bool check_injective_on_objects(const EnrichedFunctor& f) {
  std::vector<int> seen = f.object_map;
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

inline EnrichedFunctor compose_functors(const EnrichedCategory& src,
                                        const EnrichedCategory& mid,
                                        const EnrichedFunctor& f,   // src -> mid
                                        const EnrichedFunctor& g) { // mid -> tgt
  EnrichedFunctor out;
  const int n = src.object_count();
  out.object_map.resize(n);
  for (int a = 0; a < n; ++a) out.object_map[a] = g.object_map[f.object_map[a]];
  out.hom_map.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& through = g.hom_map[mid.pair_index(f.object_map[a], f.object_map[b])];
      const auto& levels = f.hom_map[src.pair_index(a, b)];
      auto& res = out.hom_map[src.pair_index(a, b)];
      res.resize(levels.size());
      for (size_t d = 0; d < levels.size(); ++d) {
        res[d].resize(levels[d].size());
        for (size_t i = 0; i < levels[d].size(); ++i) res[d][i] = through[d][levels[d][i]];
      }
    }
  return out;
}

namespace detail {

/* Symbolic simplex used by the builders: a nondegenerate base (either a
 * 0-simplex or an attached 1-simplex) under a degeneracy word, stored
 * outermost-first and strictly decreasing. Every simplex of a category
 * built here has exactly one such normal form. */
struct Sym {
  bool edge_base = false;
  int base = 0;
  std::vector<int> word;

  friend bool operator<(const Sym& x, const Sym& y) {
    return std::tie(x.edge_base, x.base, x.word) < std::tie(y.edge_base, y.base, y.word);
  }
  friend bool operator==(const Sym& x, const Sym& y) {
    return x.edge_base == y.edge_base && x.base == y.base && x.word == y.word;
  }
};

/* Normal form of s_k applied inside an existing word: pushing s_k under
 * an outer s_c with k <= c shifts the outer index up by one. */
inline std::vector<int> prepend_degeneracy(std::vector<int> word, int k) {
  size_t pos = 0;
  while (pos < word.size() && k <= word[pos]) {
    ++word[pos];
    ++pos;
  }
  word.insert(word.begin() + pos, k);
  return word;
}

inline Sym sym_degeneracy(Sym s, int k) {
  s.word = prepend_degeneracy(std::move(s.word), k);
  return s;
}

/* Face of a symbolic simplex. Only reaches the bare-edge base in
 * dimension 1, where the two faces are the edge's endpoint vertices
 * (face 1 the source, face 0 the target). */
inline Sym sym_face(const Sym& s, int i, int src_vertex, int tgt_vertex) {
  if (s.word.empty()) {
    if (!s.edge_base) throw std::logic_error("sym_face: vertex has no faces");
    return Sym{false, i == 1 ? src_vertex : tgt_vertex, {}};
  }
  int c = s.word.front();
  Sym rest{s.edge_base, s.base, {s.word.begin() + 1, s.word.end()}};
  if (i == c || i == c + 1) return rest;
  if (i < c) return sym_degeneracy(sym_face(rest, i, src_vertex, tgt_vertex), c - 1);
  return sym_degeneracy(sym_face(rest, i - 1, src_vertex, tgt_vertex), c);
}

inline std::string sym_name(const Sym& s, const std::vector<std::string>& vertex_names,
                            const std::vector<std::string>& edge_names) {
  std::string out;
  for (int c : s.word) out += "s" + std::to_string(c) + ".";
  out += s.edge_base ? edge_names[s.base] : vertex_names[s.base];
  return out;
}

inline std::vector<int> tower_word(int d) {
  std::vector<int> w(d);
  for (int m = 0; m < d; ++m) w[m] = d - 1 - m;
  return w;
}

// all strictly decreasing words of length len with entries in [0, top]
inline std::vector<std::vector<int>> decreasing_words(int len, int top) {
  std::vector<std::vector<int>> out;
  if (len == 0) {
    out.push_back({});
    return out;
  }
  for (int head = len - 1; head <= top; ++head)
    for (auto& tail : decreasing_words(len - 1, head - 1)) {
      std::vector<int> w;
      w.reserve(len);
      w.push_back(head);
      w.insert(w.end(), tail.begin(), tail.end());
      out.push_back(std::move(w));
    }
  return out;
}

}  // namespace detail

/* A 1-simplex to attach between two parallel 0-simplices of an
 * enriched category built from an ordinary one. */
struct HomotopyAttachment {
  std::string from;
  std::string to;
  std::string source;  // 0-simplex name inside hom(from, to)
  std::string target;
  std::string name;
};

/* Enriched category generated by an ordinary category and a set of
 * attached 1-simplices, closed under degeneracies up to the truncation.
 * With no attachments this is the discrete enrichment: every hom is the
 * degeneracy closure of its 0-simplices.
 *
 * Composites are forced except when both factors are (degeneracies of)
 * attached 1-simplices, or when whiskering an attachment along a
 * morphism identifies it with nothing canonical; those raise
 * BuilderError, since the result would be an arbitrary choice. */
inline EnrichedCategory build_enriched(const Category1& cat, int truncation,
                                       const std::vector<HomotopyAttachment>& attachments) {
  using detail::Sym;
  if (truncation < 1) throw BuilderError("truncation must be at least 1");
  {
    ValidationReport rep = validate_category(cat);
    if (!rep.ok()) throw BuilderError("base category invalid: " + rep.to_string());
  }
  const int n = static_cast<int>(cat.objects.size());
  const int D = truncation;

  // vertices per hom, with the positions of their underlying morphisms
  std::vector<std::vector<int>> vertex_morphism(n * n);
  std::vector<std::vector<std::string>> vertex_names(n * n);
  std::vector<int> morphism_vertex(cat.morphisms.size());
  for (int mi = 0; mi < static_cast<int>(cat.morphisms.size()); ++mi) {
    int p = cat.morphisms[mi].source * n + cat.morphisms[mi].target;
    morphism_vertex[mi] = static_cast<int>(vertex_morphism[p].size());
    vertex_morphism[p].push_back(mi);
    vertex_names[p].push_back(cat.morphisms[mi].name);
  }

  struct Edge {
    int src = 0, tgt = 0;  // vertex indices within the hom
    std::string name;
  };
  std::vector<std::vector<Edge>> edges(n * n);
  for (const auto& at : attachments) {
    auto fo = std::find(cat.objects.begin(), cat.objects.end(), at.from);
    auto to = std::find(cat.objects.begin(), cat.objects.end(), at.to);
    if (fo == cat.objects.end() || to == cat.objects.end())
      throw BuilderError("attachment '" + at.name + "' names an unknown object");
    int p = static_cast<int>(fo - cat.objects.begin()) * n +
            static_cast<int>(to - cat.objects.begin());
    auto locate = [&](const std::string& nm) {
      for (int v = 0; v < static_cast<int>(vertex_names[p].size()); ++v)
        if (vertex_names[p][v] == nm) return v;
      throw BuilderError("attachment '" + at.name + "' names an unknown morphism '" + nm + "'");
    };
    for (const auto& e : edges[p])
      if (e.name == at.name)
        throw BuilderError("attachment name '" + at.name + "' used twice in one hom");
    edges[p].push_back({locate(at.source), locate(at.target), at.name});
  }

  // enumerate each hom's simplices: vertex towers first, then attached
  // edges under every admissible degeneracy word
  struct HomData {
    std::vector<std::vector<Sym>> elems;       // per dim
    std::vector<std::map<Sym, int>> index;     // per dim
  };
  std::vector<HomData> data(n * n);
  for (int p = 0; p < n * n; ++p) {
    data[p].elems.resize(D + 1);
    data[p].index.resize(D + 1);
    for (int d = 0; d <= D; ++d) {
      auto push = [&](Sym s) {
        data[p].index[d].emplace(s, static_cast<int>(data[p].elems[d].size()));
        data[p].elems[d].push_back(std::move(s));
      };
      for (int v = 0; v < static_cast<int>(vertex_names[p].size()); ++v)
        push(Sym{false, v, detail::tower_word(d)});
      if (d >= 1)
        for (int e = 0; e < static_cast<int>(edges[p].size()); ++e)
          for (auto& w : detail::decreasing_words(d - 1, d - 1)) push(Sym{true, e, w});
    }
  }

  EnrichedCategory out;
  out.truncation = D;
  out.objects = cat.objects;
  out.identities.resize(n);
  out.homs.resize(n * n);
  for (int a = 0; a < n; ++a)
    out.identities[a] = morphism_vertex[cat.identities[a]];

  for (int p = 0; p < n * n; ++p) {
    auto& ss = out.homs[p];
    ss.truncation = D;
    ss.names.resize(D + 1);
    ss.faces.resize(D + 1);
    ss.degens.resize(D + 1);
    std::vector<std::string> edge_names;
    for (const auto& e : edges[p]) edge_names.push_back(e.name);
    auto endpoints = [&](const Sym& s) {
      if (!s.edge_base) return std::pair<int, int>{s.base, s.base};
      return std::pair<int, int>{edges[p][s.base].src, edges[p][s.base].tgt};
    };
    for (int d = 0; d <= D; ++d) {
      int cnt = static_cast<int>(data[p].elems[d].size());
      ss.names[d].resize(cnt);
      ss.faces[d].assign(cnt, std::vector<int>(d >= 1 ? d + 1 : 0, -1));
      ss.degens[d].assign(cnt, std::vector<int>(d < D ? d + 1 : 0, -1));
      for (int i = 0; i < cnt; ++i) {
        const Sym& s = data[p].elems[d][i];
        ss.names[d][i] = detail::sym_name(s, vertex_names[p], edge_names);
        auto [sv, tv] = endpoints(s);
        for (int j = 0; j <= d && d >= 1; ++j)
          ss.faces[d][i][j] = data[p].index[d - 1].at(detail::sym_face(s, j, sv, tv));
        for (int k = 0; k <= d && d < D; ++k)
          ss.degens[d][i][k] = data[p].index[d + 1].at(detail::sym_degeneracy(s, k));
      }
    }
    ss.recompute_origins();
  }

  // composition, defined by recursion on the outermost degeneracy
  std::function<Sym(int, int, int, int, const Sym&, const Sym&)> compose_sym =
      [&](int a, int b, int c, int d, const Sym& x, const Sym& y) -> Sym {
    int pab = a * n + b, pbc = b * n + c;
    if (!x.edge_base && !y.edge_base) {
      int mx = vertex_morphism[pab][x.base];
      int my = vertex_morphism[pbc][y.base];
      return Sym{false, morphism_vertex[cat.then(mx, my)], detail::tower_word(d)};
    }
    if (!x.edge_base && y.edge_base) {
      if (!y.word.empty()) {
        int cc = y.word.front();
        Sym inner = compose_sym(a, b, c, d - 1, Sym{false, x.base, detail::tower_word(d - 1)},
                                Sym{true, y.base, {y.word.begin() + 1, y.word.end()}});
        return detail::sym_degeneracy(inner, cc);
      }
      // d == 1: a vertex tower whiskered into an attached edge
      const Edge& e = edges[pbc][y.base];
      if (a == b && x.base == out.identities[a]) return y;
      int mx = vertex_morphism[pab][x.base];
      int w1 = cat.then(mx, vertex_morphism[pbc][e.src]);
      int w2 = cat.then(mx, vertex_morphism[pbc][e.tgt]);
      if (w1 == w2) return Sym{false, morphism_vertex[w1], {0}};
      throw BuilderError("no canonical composite of " + cat.morphisms[mx].name + " with " +
                         e.name + "; the whiskered endpoints differ");
    }
    if (x.edge_base && !y.edge_base) {
      if (!x.word.empty()) {
        int cc = x.word.front();
        Sym inner = compose_sym(a, b, c, d - 1, Sym{true, x.base, {x.word.begin() + 1, x.word.end()}},
                                Sym{false, y.base, detail::tower_word(d - 1)});
        return detail::sym_degeneracy(inner, cc);
      }
      const Edge& e = edges[pab][x.base];
      if (b == c && y.base == out.identities[b]) return x;
      int my = vertex_morphism[pbc][y.base];
      int w1 = cat.then(vertex_morphism[pab][e.src], my);
      int w2 = cat.then(vertex_morphism[pab][e.tgt], my);
      if (w1 == w2) return Sym{false, morphism_vertex[w1], {0}};
      throw BuilderError("no canonical composite of " + e.name + " with " +
                         cat.morphisms[my].name + "; the whiskered endpoints differ");
    }
    // both factors degenerate attached edges: only a shared outermost
    // degeneracy can be factored out
    if (!x.word.empty() && !y.word.empty() && x.word.front() == y.word.front()) {
      int cc = x.word.front();
      Sym inner = compose_sym(a, b, c, d - 1, Sym{true, x.base, {x.word.begin() + 1, x.word.end()}},
                              Sym{true, y.base, {y.word.begin() + 1, y.word.end()}});
      return detail::sym_degeneracy(inner, cc);
    }
    throw BuilderError("no canonical composite of two attached 1-simplices (" +
                       edges[pab][x.base].name + " and " + edges[pbc][y.base].name +
                       "); provide explicit composition tables instead");
  };

  out.comp.resize(n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        auto& table = out.comp[out.triple_index(a, b, c)];
        table.resize(D + 1);
        int pab = a * n + b, pbc = b * n + c, pac = a * n + c;
        for (int d = 0; d <= D; ++d) {
          int na = static_cast<int>(data[pab].elems[d].size());
          int nb = static_cast<int>(data[pbc].elems[d].size());
          table[d].assign(na, std::vector<int>(nb, -1));
          for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j)
              table[d][i][j] = data[pac].index[d].at(
                  compose_sym(a, b, c, d, data[pab].elems[d][i], data[pbc].elems[d][j]));
        }
      }
  return out;
}

inline EnrichedCategory build_discrete(const Category1& cat, int truncation) {
  return build_enriched(cat, truncation, {});
}

/* Enriched category of a finite poset: objects are the elements, each
 * hom is a point when related and empty otherwise. The relation must
 * already be a partial order (reflexivity is filled in, but missing
 * transitive composites or an antisymmetry violation are errors). */
inline EnrichedCategory build_from_poset(const std::vector<std::string>& elements,
                                         const std::vector<std::pair<std::string, std::string>>& leq,
                                         int truncation) {
  const int n = static_cast<int>(elements.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (elements[i] == elements[j]) throw BuilderError("duplicate element '" + elements[i] + "'");
  auto locate = [&](const std::string& nm) {
    for (int i = 0; i < n; ++i)
      if (elements[i] == nm) return i;
    throw BuilderError("relation names unknown element '" + nm + "'");
  };
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) rel[i][i] = true;
  for (const auto& [lo, hi] : leq) rel[locate(lo)][locate(hi)] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (rel[i][j] && rel[j][i] && i != j)
        throw BuilderError("antisymmetry fails between '" + elements[i] + "' and '" +
                           elements[j] + "'");
      if (!rel[i][j]) continue;
      for (int k = 0; k < n; ++k)
        if (rel[j][k] && !rel[i][k])
          throw BuilderError("transitivity fails: '" + elements[i] + "' <= '" + elements[j] +
                             "' <= '" + elements[k] + "' without '" + elements[i] + "' <= '" +
                             elements[k] + "'");
    }

  Category1 cat;
  cat.objects = elements;
  cat.identities.resize(n);
  std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j]) {
        arrow[i][j] = static_cast<int>(cat.morphisms.size());
        cat.morphisms.push_back({i == j ? "id" : "u", i, j});
        if (i == j) cat.identities[i] = arrow[i][j];
      }
  const int m = static_cast<int>(cat.morphisms.size());
  cat.then_table.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (cat.morphisms[i].target == cat.morphisms[j].source)
        cat.then_table[i][j] = arrow[cat.morphisms[i].source][cat.morphisms[j].target];
  return build_discrete(cat, truncation);
}

/* Full subcategory on a subset of objects, with its inclusion. */
struct SubcategoryInclusion {
  EnrichedCategory category;
  EnrichedFunctor inclusion;
  std::vector<int> object_of;  // subcategory object -> ambient object
};

inline SubcategoryInclusion full_subcategory(const EnrichedCategory& cat,
                                             const std::vector<std::string>& object_names) {
  SubcategoryInclusion out;
  for (const auto& nm : object_names) {
    auto idx = cat.find_object(nm);
    if (!idx) throw BuilderError("unknown object '" + nm + "'");
    if (std::find(out.object_of.begin(), out.object_of.end(), *idx) != out.object_of.end())
      throw BuilderError("object '" + nm + "' listed twice");
    out.object_of.push_back(*idx);
  }
  const int k = static_cast<int>(out.object_of.size());
  auto& sub = out.category;
  sub.truncation = cat.truncation;
  sub.identities.resize(k);
  sub.homs.resize(k * k);
  for (int a = 0; a < k; ++a) {
    sub.objects.push_back(cat.objects[out.object_of[a]]);
    sub.identities[a] = cat.identities[out.object_of[a]];
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      sub.homs[a * k + b] = cat.hom(out.object_of[a], out.object_of[b]);
  sub.comp.resize(k * k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        sub.comp[sub.triple_index(a, b, c)] =
            cat.comp[cat.triple_index(out.object_of[a], out.object_of[b], out.object_of[c])];

  out.inclusion.object_map = out.object_of;
  out.inclusion.hom_map.resize(k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      auto& levels = out.inclusion.hom_map[sub.pair_index(a, b)];
      levels.resize(cat.truncation + 1);
      for (int d = 0; d <= cat.truncation; ++d) {
        levels[d].resize(sub.hom(a, b).size(d));
        for (int i = 0; i < sub.hom(a, b).size(d); ++i) levels[d][i] = i;
      }
    }
  return out;
}

/* Transport of a category along a relabeling of its objects: perm[a] is
 * the position of old object a in the new category, new_names[a] its new
 * name. Returns the relabeled category with the isomorphism in both
 * directions. */
struct RelabeledCategory {
  EnrichedCategory category;
  EnrichedFunctor to;    // original -> relabeled
  EnrichedFunctor from;  // relabeled -> original
};

inline RelabeledCategory relabel_isomorphism(const EnrichedCategory& cat,
                                             const std::vector<int>& perm,
                                             const std::vector<std::string>& new_names) {
  const int n = cat.object_count();
  if (static_cast<int>(perm.size()) != n || static_cast<int>(new_names.size()) != n)
    throw BuilderError("relabeling needs a permutation and a name per object");
  std::vector<int> seen(n, 0);
  for (int a = 0; a < n; ++a) {
    if (perm[a] < 0 || perm[a] >= n || seen[perm[a]]++)
      throw BuilderError("relabeling is not a permutation");
  }
  RelabeledCategory out;
  auto& neu = out.category;
  neu.truncation = cat.truncation;
  neu.objects.resize(n);
  neu.identities.resize(n);
  neu.homs.resize(n * n);
  neu.comp.resize(n * n * n);
  for (int a = 0; a < n; ++a) {
    neu.objects[perm[a]] = new_names[a];
    neu.identities[perm[a]] = cat.identities[a];
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      neu.homs[neu.pair_index(perm[a], perm[b])] = cat.hom(a, b);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        neu.comp[neu.triple_index(perm[a], perm[b], perm[c])] =
            cat.comp[cat.triple_index(a, b, c)];

  out.to.object_map = perm;
  out.to.hom_map.resize(n * n);
  out.from.object_map.resize(n);
  out.from.hom_map.resize(n * n);
  for (int a = 0; a < n; ++a) out.from.object_map[perm[a]] = a;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto identity_levels = [&](const TruncatedSimplicialSet& h) {
        std::vector<std::vector<int>> levels(cat.truncation + 1);
        for (int d = 0; d <= cat.truncation; ++d) {
          levels[d].resize(h.size(d));
          for (int i = 0; i < h.size(d); ++i) levels[d][i] = i;
        }
        return levels;
      };
      out.to.hom_map[cat.pair_index(a, b)] = identity_levels(cat.hom(a, b));
      out.from.hom_map[neu.pair_index(perm[a], perm[b])] = identity_levels(cat.hom(a, b));
    }
  return out;
}

}  // namespace dihom
