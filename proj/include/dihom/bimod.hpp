#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exactlin.hpp"
#include "nualg.hpp"
#include "scat.hpp"

namespace dihom {

/* Chain bimodules. In each dimension n the free module on all
 * n-simplices of all homs carries commuting translation actions of the
 * path algebra: a morphism f acts on the left of a simplex by composing
 * with the degeneracy tower of f (and by zero when the endpoints do not
 * match), and on the right symmetrically. Both actions send basis
 * elements to basis elements, so they are stored as index tables in the
 * same morphism order as underlying_category. */
struct ChainSimplex {
  int a = 0, b = 0, simplex = 0;
};

struct ChainLevel {
  std::vector<ChainSimplex> basis;
  std::vector<std::vector<int>> first;  // first[a][b] = offset of hom(a,b)'s block
  std::vector<std::vector<int>> left;   // left[morphism][i] = image index or -1
  std::vector<std::vector<int>> right;

  int size() const { return static_cast<int>(basis.size()); }
  int index_of(int a, int b, int simplex) const { return first[a][b] + simplex; }
};

struct ChainData {
  Category1 cat1;
  std::vector<ChainLevel> levels;  // 0..D
};

inline ChainData build_chain_data(const EnrichedCategory& cat) {
  ChainData out;
  out.cat1 = underlying_category(cat);
  const int n = cat.object_count();
  const int m = static_cast<int>(out.cat1.morphisms.size());
  out.levels.resize(cat.truncation + 1);
  for (int d = 0; d <= cat.truncation; ++d) {
    ChainLevel& lvl = out.levels[d];
    lvl.first.assign(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        lvl.first[a][b] = lvl.size();
        for (int i = 0; i < cat.hom(a, b).size(d); ++i) lvl.basis.push_back({a, b, i});
      }
    lvl.left.assign(m, std::vector<int>(lvl.size(), -1));
    lvl.right.assign(m, std::vector<int>(lvl.size(), -1));
    for (int mi = 0; mi < m; ++mi) {
      int fs = out.cat1.morphisms[mi].source;
      int ft = out.cat1.morphisms[mi].target;
      int fv = out.cat1.hom_simplex[mi];
      for (int s = 0; s < lvl.size(); ++s) {
        const ChainSimplex& cs = lvl.basis[s];
        if (cs.b == fs) {  // left action: compose sigma then the tower of f
          int tower = total_degeneracy(cat.hom(fs, ft), fv, d);
          int res = cat.compose(cs.a, cs.b, ft, d, cs.simplex, tower);
          lvl.left[mi][s] = lvl.index_of(cs.a, ft, res);
        }
        if (cs.a == ft) {  // right action: compose the tower of g then sigma
          int tower = total_degeneracy(cat.hom(fs, ft), fv, d);
          int res = cat.compose(fs, cs.a, cs.b, d, tower, cs.simplex);
          lvl.right[mi][s] = lvl.index_of(fs, cs.b, res);
        }
      }
    }
  }
  return out;
}

/* The translation-action laws, checked exhaustively: endpoint mismatch
 * forces zero, identities act as identities, iterated actions follow
 * the path product, the two sides commute, and in dimension 0 the left
 * and right actions coincide with algebra multiplication. */
inline ValidationReport check_translation_action(const ChainData& data) {
  ValidationReport rep;
  const Category1& cat1 = data.cat1;
  const int m = static_cast<int>(cat1.morphisms.size());
  auto step = [](const std::vector<int>& table, int s) { return s < 0 ? -1 : table[s]; };
  for (int d = 0; d < static_cast<int>(data.levels.size()); ++d) {
    const ChainLevel& lvl = data.levels[d];
    std::string where = "degree " + std::to_string(d);
    for (int mi = 0; mi < m; ++mi)
      for (int s = 0; s < lvl.size(); ++s) {
        bool lmatch = lvl.basis[s].b == cat1.morphisms[mi].source;
        bool rmatch = lvl.basis[s].a == cat1.morphisms[mi].target;
        if (lmatch != (lvl.left[mi][s] >= 0))
          rep.add(where, "left endpoint rule broken at morphism " + cat1.morphisms[mi].name);
        if (rmatch != (lvl.right[mi][s] >= 0))
          rep.add(where, "right endpoint rule broken at morphism " + cat1.morphisms[mi].name);
      }
    for (size_t a = 0; a < cat1.identities.size(); ++a) {
      int e = cat1.identities[a];
      for (int s = 0; s < lvl.size(); ++s) {
        if (lvl.basis[s].b == static_cast<int>(a) && lvl.left[e][s] != s)
          rep.add(where, "identity of " + cat1.objects[a] + " does not fix a left-matching simplex");
        if (lvl.basis[s].a == static_cast<int>(a) && lvl.right[e][s] != s)
          rep.add(where, "identity of " + cat1.objects[a] + " does not fix a right-matching simplex");
      }
    }
    for (int f = 0; f < m; ++f)
      for (int g = 0; g < m; ++g) {
        // iterated actions follow the path product, and L/R commute
        int ff = cat1.then(g, f);  // algebra product f * g
        for (int s = 0; s < lvl.size(); ++s) {
          int lhs = step(lvl.left[f], lvl.left[g][s]);
          int rhs = ff < 0 ? -1 : lvl.left[ff][s];
          if (lhs != rhs)
            rep.add(where, "left action not multiplicative on " + cat1.morphisms[f].name + ", " +
                               cat1.morphisms[g].name);
          int rlhs = step(lvl.right[f], lvl.right[g][s]);
          int prod = cat1.then(f, g);  // algebra product g * f
          int rrhs = prod < 0 ? -1 : lvl.right[prod][s];
          if (rlhs != rrhs)
            rep.add(where, "right action not multiplicative on " + cat1.morphisms[f].name + ", " +
                               cat1.morphisms[g].name);
          if (step(lvl.left[f], lvl.right[g][s]) != step(lvl.right[g], lvl.left[f][s]))
            rep.add(where, "left and right actions fail to commute on " + cat1.morphisms[f].name +
                               ", " + cat1.morphisms[g].name);
        }
      }
  }
  // dimension 0 is the path algebra acting on itself
  const ChainLevel& lvl0 = data.levels[0];
  for (int f = 0; f < m; ++f)
    for (int s = 0; s < m; ++s) {
      if (lvl0.left[f][s] != cat1.then(s, f))
        rep.add("degree 0", "left action differs from path product at " + cat1.morphisms[f].name);
      if (lvl0.right[f][s] != cat1.then(f, s))
        rep.add("degree 0", "right action differs from path product at " + cat1.morphisms[f].name);
    }
  return rep;
}

/* A bimodule presented over a coefficient ring: a free cover on
 * `generators`, relation columns spanning what is quotiented away, and
 * one action matrix on the free cover per basis element of the acting
 * algebras. Action matrices must map the relation span into itself. */
template <class K>
struct PresentedBimodule {
  int generators = 0;
  Mat<K> relations;
  std::vector<Mat<K>> left;
  std::vector<Mat<K>> right;

  PresentedModule<K> presentation() const { return present_cokernel(generators, relations); }
};

template <class K>
PresentedBimodule<K> free_chain_bimodule(const ChainLevel& lvl) {
  PresentedBimodule<K> out;
  out.generators = lvl.size();
  out.relations = Mat<K>(lvl.size(), 0);
  auto to_matrix = [&](const std::vector<int>& table) {
    Mat<K> mat = Mat<K>::Zero(lvl.size(), lvl.size());
    for (int s = 0; s < lvl.size(); ++s)
      if (table[s] >= 0) mat(table[s], s) = K(1);
    return mat;
  };
  for (const auto& row : lvl.left) out.left.push_back(to_matrix(row));
  for (const auto& row : lvl.right) out.right.push_back(to_matrix(row));
  return out;
}

namespace detail {
template <class K>
bool congruent_mod_relations(const Mat<K>& rel, const Mat<K>& x, const Mat<K>& y) {
  Mat<K> diff = x - y;
  if (is_zero_matrix(diff)) return true;
  if (rel.cols() == 0) return false;
  return in_span(rel, diff);
}
}  // namespace detail

template <class K>
ValidationReport validate_left_module(const Algebra& la, const PresentedBimodule<K>& mod) {
  ValidationReport rep;
  if (static_cast<int>(mod.left.size()) != la.dim()) {
    rep.add("left action", "need one matrix per algebra basis element");
    return rep;
  }
  const Mat<K> zero = Mat<K>::Zero(mod.generators, mod.generators);
  for (const auto& t : mod.left)
    if (mod.relations.cols() > 0 &&
        !detail::congruent_mod_relations(mod.relations, Mat<K>(t * mod.relations),
                                         Mat<K>(Mat<K>::Zero(mod.generators, mod.relations.cols()))))
      rep.add("left action", "an action matrix does not preserve the relation span");
  if (!rep.ok()) return rep;
  for (int i = 0; i < la.dim(); ++i)
    for (int j = 0; j < la.dim(); ++j) {
      int p = la.mul(i, j);
      const Mat<K>& want = p < 0 ? zero : mod.left[p];
      if (!detail::congruent_mod_relations(mod.relations, Mat<K>(mod.left[i] * mod.left[j]), want))
        rep.add("left action", la.basis[i] + " * " + la.basis[j] + " not multiplicative");
    }
  return rep;
}

template <class K>
ValidationReport validate_bimodule(const Algebra& la, const Algebra& ra,
                                   const PresentedBimodule<K>& mod) {
  ValidationReport rep;
  if (static_cast<int>(mod.left.size()) != la.dim() ||
      static_cast<int>(mod.right.size()) != ra.dim()) {
    rep.add("actions", "need one matrix per algebra basis element");
    return rep;
  }
  rep.absorb(validate_left_module(la, mod), "");
  auto congruent = [&](const Mat<K>& x, const Mat<K>& y) {
    return detail::congruent_mod_relations(mod.relations, x, y);
  };
  const Mat<K> zero = Mat<K>::Zero(mod.generators, mod.generators);
  for (const auto& t : mod.right)
    if (mod.relations.cols() > 0 &&
        !congruent(Mat<K>(t * mod.relations), Mat<K>(Mat<K>::Zero(mod.generators, mod.relations.cols()))))
      rep.add("right action", "an action matrix does not preserve the relation span");
  if (!rep.ok()) return rep;
  for (int i = 0; i < ra.dim(); ++i)
    for (int j = 0; j < ra.dim(); ++j) {
      int p = ra.mul(i, j);
      const Mat<K>& want = p < 0 ? zero : mod.right[p];
      if (!congruent(Mat<K>(mod.right[j] * mod.right[i]), want))
        rep.add("right action", ra.basis[i] + " * " + ra.basis[j] + " not multiplicative");
    }
  for (const auto& l : mod.left)
    for (const auto& r : mod.right)
      if (!congruent(Mat<K>(l * r), Mat<K>(r * l)))
        rep.add("actions", "left and right actions fail to commute");
  return rep;
}

/* a . x . b for algebra elements a, b and a coordinate vector x on the
 * free cover. */
template <class K>
Vec<K> act(const PresentedBimodule<K>& mod, const Vec<K>& a, const Vec<K>& x, const Vec<K>& b) {
  Mat<K> la = Mat<K>::Zero(mod.generators, mod.generators);
  for (size_t i = 0; i < mod.left.size(); ++i)
    if (!(a[static_cast<int>(i)] == K(0))) la += a[static_cast<int>(i)] * mod.left[i];
  Mat<K> rb = Mat<K>::Zero(mod.generators, mod.generators);
  for (size_t j = 0; j < mod.right.size(); ++j)
    if (!(b[static_cast<int>(j)] == K(0))) rb += b[static_cast<int>(j)] * mod.right[j];
  return Vec<K>(la * (rb * x));
}

template <class K>
Vec<K> act_left(const PresentedBimodule<K>& mod, const Vec<K>& a, const Vec<K>& x) {
  Vec<K> out = Vec<K>::Zero(mod.generators);
  for (size_t i = 0; i < mod.left.size(); ++i)
    if (!(a[static_cast<int>(i)] == K(0))) out += a[static_cast<int>(i)] * (mod.left[i] * x);
  return out;
}

template <class K>
Vec<K> act_right(const PresentedBimodule<K>& mod, const Vec<K>& x, const Vec<K>& b) {
  Vec<K> out = Vec<K>::Zero(mod.generators);
  for (size_t j = 0; j < mod.right.size(); ++j)
    if (!(b[static_cast<int>(j)] == K(0))) out += b[static_cast<int>(j)] * (mod.right[j] * x);
  return out;
}

/* Passing to the unitalized algebras: the adjoined unit acts as the
 * identity on both sides, everything else is unchanged. Restricting
 * back along the inclusions recovers the module on the nose. */
template <class K>
PresentedBimodule<K> module_unitalize(const PresentedBimodule<K>& mod) {
  PresentedBimodule<K> out = mod;
  out.left.push_back(Mat<K>::Identity(mod.generators, mod.generators));
  out.right.push_back(Mat<K>::Identity(mod.generators, mod.generators));
  return out;
}

template <class K>
PresentedBimodule<K> module_deunitalize(const PresentedBimodule<K>& mod) {
  if (mod.left.empty() || mod.right.empty())
    throw std::invalid_argument("module_deunitalize: no unit action to strip");
  PresentedBimodule<K> out = mod;
  out.left.pop_back();
  out.right.pop_back();
  return out;
}

/* Merge: a bimodule over unital algebras becomes a left module over
 * the tensor algebra with the opposite second factor, through
 * (a (x) b) . m = a . m . b. The right action list is left empty. */
template <class K>
PresentedBimodule<K> merge(const PresentedBimodule<K>& mod) {
  PresentedBimodule<K> out;
  out.generators = mod.generators;
  out.relations = mod.relations;
  for (const auto& l : mod.left)
    for (const auto& r : mod.right) out.left.push_back(Mat<K>(l * r));
  return out;
}

/* Smallest action-stable span containing the given columns: closes the
 * span under every action matrix and certifies stability. */
template <class K>
Mat<K> submodule_generated(const PresentedBimodule<K>& mod, const Mat<K>& gens) {
  Mat<K> span = column_span_basis(gens);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto* side : {&mod.left, &mod.right})
      for (const auto& t : *side) {
        if (span.cols() == 0) continue;
        Mat<K> image = t * span;
        for (long c = 0; c < image.cols(); ++c) {
          Mat<K> col = image.col(c);
          if (is_zero_matrix(col)) continue;
          if (span.cols() > 0 && in_span(span, col)) continue;
          span = column_span_basis(hcat(span, col));
          grew = true;
        }
      }
  }
  // stability certificate
  for (const auto* side : {&mod.left, &mod.right})
    for (const auto& t : *side)
      if (span.cols() > 0) {
        Mat<K> image = t * span;
        if (!is_zero_matrix(image) && !in_span(span, image))
          throw std::logic_error("submodule closure failed to stabilize");
      }
  return span;
}

/* Quotient by an action-stable column span: same generators, the span
 * joins the relations. Instability is refused. */
template <class K>
PresentedBimodule<K> quotient_bimodule(const PresentedBimodule<K>& mod, const Mat<K>& sub) {
  Mat<K> amb = hcat(mod.relations, sub);
  for (const auto* side : {&mod.left, &mod.right})
    for (const auto& t : *side) {
      if (sub.cols() == 0) continue;
      Mat<K> image = t * sub;
      if (!is_zero_matrix(image) && (amb.cols() == 0 || !in_span(amb, image)))
        throw std::invalid_argument("quotient_bimodule: subspace is not action-stable");
    }
  PresentedBimodule<K> out = mod;
  out.relations = amb;
  return out;
}

template <class K>
Mat<K> kron(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> out = Mat<K>::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) {
      if (a(i, j) == K(0)) continue;
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  return out;
}

/* Tensor product over a shared algebra: M a right A-module (possibly
 * with a left action of some other algebra), N a left A-module. The
 * result is free on generator pairs modulo three relation families:
 * relations of each factor paired with the other factor's generators,
 * and the balancing (m . a) (x) n - m (x) (a . n). Bilinearity over the
 * coefficient ring is built into the free cover, so no extra scalar
 * relations are needed. Pair (i, j) sits at index i * N.generators + j;
 * surviving outer actions are M's left and N's right. */
template <class K>
struct TensorModule {
  int m_generators = 0;
  int n_generators = 0;
  PresentedBimodule<K> module;

  int pair(int i, int j) const { return i * n_generators + j; }

  Vec<K> pure_tensor(const Vec<K>& m, const Vec<K>& n) const {
    Vec<K> out = Vec<K>::Zero(m_generators * n_generators);
    for (int i = 0; i < m_generators; ++i)
      for (int j = 0; j < n_generators; ++j) out[pair(i, j)] = m[i] * n[j];
    return out;
  }
};

template <class K>
TensorModule<K> tensor_over_algebra(const PresentedBimodule<K>& m, const Algebra& a,
                                    const PresentedBimodule<K>& n) {
  if (static_cast<int>(m.right.size()) != a.dim() || static_cast<int>(n.left.size()) != a.dim())
    throw std::invalid_argument("tensor_over_algebra: modules do not match the algebra");
  TensorModule<K> out;
  out.m_generators = m.generators;
  out.n_generators = n.generators;
  const Mat<K> im = Mat<K>::Identity(m.generators, m.generators);
  const Mat<K> in = Mat<K>::Identity(n.generators, n.generators);
  Mat<K> rel = kron(m.relations, in);
  rel = hcat(rel, kron(im, n.relations));
  for (int t = 0; t < a.dim(); ++t)
    rel = hcat(rel, Mat<K>(kron(m.right[t], in) - kron(im, n.left[t])));
  out.module.generators = m.generators * n.generators;
  out.module.relations = column_span_basis(rel);
  for (const auto& l : m.left) out.module.left.push_back(kron(l, in));
  for (const auto& r : n.right) out.module.right.push_back(kron(im, r));
  return out;
}

/* Sampled universal-property check: a bilinear map given by value
 * vectors per generator pair is A-balanced iff it factors through the
 * tensor presentation, i.e. kills every relation column. */
template <class K>
bool factors_through_tensor(const TensorModule<K>& t, const Mat<K>& values) {
  if (values.cols() != t.module.generators)
    throw std::invalid_argument("factors_through_tensor: wrong number of value columns");
  return is_zero_matrix(Mat<K>(values * t.module.relations));
}

template <class K>
PresentedBimodule<K> regular_bimodule(const Algebra& a) {
  PresentedBimodule<K> out;
  out.generators = a.dim();
  out.relations = Mat<K>(a.dim(), 0);
  for (int i = 0; i < a.dim(); ++i) {
    Vec<K> e = Vec<K>::Unit(a.dim(), i);
    out.left.push_back(left_mult_matrix(a, e));
    out.right.push_back(right_mult_matrix(a, e));
  }
  return out;
}

/* A (x)_A M -> M, a (x) m |-> a . m. The module is firm when this is
 * an isomorphism of presented modules. */
template <class K>
struct FirmnessReport {
  bool firm = false;
  TensorModule<K> tensor;
  ModuleMorphism<K> mu;
};

template <class K>
FirmnessReport<K> check_firm(const Algebra& a, const PresentedBimodule<K>& m) {
  FirmnessReport<K> out;
  out.tensor = tensor_over_algebra(regular_bimodule<K>(a), a, m);
  Mat<K> mu = Mat<K>::Zero(m.generators, out.tensor.module.generators);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < m.generators; ++j)
      mu.col(out.tensor.pair(i, j)) = m.left[i].col(j);
  out.mu = ModuleMorphism<K>{out.tensor.module.presentation(), present_cokernel(m.generators, m.relations), mu};
  out.firm = is_isomorphism(out.mu);
  return out;
}

/* Inverse direction on elements: m |-> e (x) m for a left local unit e
 * of m. Different witnesses give the same class in the tensor. */
template <class K>
Vec<K> mu_inverse_class(const TensorModule<K>& t, const Vec<K>& e, const Vec<K>& m) {
  return t.pure_tensor(e, m);
}

/* Local units for module elements: coefficients e over the acting
 * algebra with e . x = x (or x . e = x) for every sample. */
template <class K>
std::optional<Vec<K>> module_left_unit(const PresentedBimodule<K>& mod,
                                       const std::vector<Vec<K>>& samples) {
  const int n = mod.generators;
  const int ad = static_cast<int>(mod.left.size());
  if (samples.empty()) return Vec<K>(Vec<K>::Zero(ad));
  Mat<K> sys(n * static_cast<int>(samples.size()), ad);
  Mat<K> rhs(n * static_cast<int>(samples.size()), 1);
  for (size_t t = 0; t < samples.size(); ++t) {
    for (int i = 0; i < ad; ++i)
      sys.block(static_cast<int>(t) * n, i, n, 1) = mod.left[i] * samples[t];
    rhs.middleRows(static_cast<int>(t) * n, n) = samples[t];
  }
  auto sol = solve_columns(sys, rhs);
  if (!sol) return std::nullopt;
  return Vec<K>(sol->col(0));
}

template <class K>
std::optional<Vec<K>> module_right_unit(const PresentedBimodule<K>& mod,
                                        const std::vector<Vec<K>>& samples) {
  const int n = mod.generators;
  const int ad = static_cast<int>(mod.right.size());
  if (samples.empty()) return Vec<K>(Vec<K>::Zero(ad));
  Mat<K> sys(n * static_cast<int>(samples.size()), ad);
  Mat<K> rhs(n * static_cast<int>(samples.size()), 1);
  for (size_t t = 0; t < samples.size(); ++t) {
    for (int i = 0; i < ad; ++i)
      sys.block(static_cast<int>(t) * n, i, n, 1) = mod.right[i] * samples[t];
    rhs.middleRows(static_cast<int>(t) * n, n) = samples[t];
  }
  auto sol = solve_columns(sys, rhs);
  if (!sol) return std::nullopt;
  return Vec<K>(sol->col(0));
}

/* Constructive witnesses for free chain bimodules: identities of the
 * hom-target objects in the support work on the left, hom-sources on
 * the right. */
template <class K>
Vec<K> chain_left_unit(const Category1& cat1, const ChainLevel& lvl, const Vec<K>& x) {
  Vec<K> out = Vec<K>::Zero(static_cast<int>(cat1.morphisms.size()));
  for (int s = 0; s < lvl.size(); ++s)
    if (!(x[s] == K(0))) out[cat1.identities[lvl.basis[s].b]] = K(1);
  return out;
}

template <class K>
Vec<K> chain_right_unit(const Category1& cat1, const ChainLevel& lvl, const Vec<K>& x) {
  Vec<K> out = Vec<K>::Zero(static_cast<int>(cat1.morphisms.size()));
  for (int s = 0; s < lvl.size(); ++s)
    if (!(x[s] == K(0))) out[cat1.identities[lvl.basis[s].a]] = K(1);
  return out;
}

inline void require_s_unital(const Algebra& b) {
  std::vector<Vec<Rat>> basis_elems;
  for (int i = 0; i < b.dim(); ++i) basis_elems.push_back(Vec<Rat>(Vec<Rat>::Unit(b.dim(), i)));
  if (!left_local_unit(b, basis_elems) || !right_local_unit(b, basis_elems))
    throw BuilderError("target algebra is not s-unital: no local unit covers its basis");
}

/* Extension of scalars along phi: A -> B, as B (x)_A M where B is a
 * (B, A)-bimodule through phi on the right. Requires an s-unital
 * target, which makes the result firm over B. */
template <class K>
TensorModule<K> extension_of_scalars(const AlgebraMorphism& phi, const Algebra& a,
                                     const Algebra& b, const PresentedBimodule<K>& m) {
  if (static_cast<int>(phi.image.size()) != a.dim())
    throw std::invalid_argument("extension_of_scalars: morphism does not match source algebra");
  require_s_unital(b);
  PresentedBimodule<K> bmod;
  bmod.generators = b.dim();
  bmod.relations = Mat<K>(b.dim(), 0);
  for (int i = 0; i < b.dim(); ++i)
    bmod.left.push_back(left_mult_matrix(b, Vec<K>(Vec<K>::Unit(b.dim(), i))));
  for (int i = 0; i < a.dim(); ++i)
    bmod.right.push_back(right_mult_matrix(b, Vec<K>(Vec<K>::Unit(b.dim(), phi.image[i]))));
  PresentedBimodule<K> mleft = m;
  mleft.right.clear();  // tensor consumes the left A-action only
  return tensor_over_algebra(bmod, a, mleft);
}

/* Transfer-map domain: the triple tensor R[S] (x)_{R[T]} C_n(T)
 * (x)_{R[T]} R[S] presented on composability-compatible triples
 * (t, m, t') with source(t) = hom-target(m) and target(t') =
 * hom-source(m); incompatible triples are identically zero and are
 * omitted. Balancing relations move T-morphisms across each tensor
 * sign, and R[S] survives acting outside. */
struct TripleBasis {
  int t = 0, m = 0, tprime = 0;
};

template <class K>
struct TransferDomain {
  std::vector<TripleBasis> basis;
  PresentedBimodule<K> module;  // relations and outer R[S]-actions
  Mat<K> map;                   // free-cover matrix of iota into C_n(S)
};

/* `one` seeds every nonzero entry, so a caller working over a runtime
 * prime field can pass a bound scalar and get fully bound tables. */
template <class K>
TransferDomain<K> transfer_domain(const ChainData& s_data, const SubcategoryInclusion& sub,
                                  const ChainData& t_data, int degree, const K& one = K(1)) {
  const Category1& scat1 = s_data.cat1;
  const Category1& tcat1 = t_data.cat1;
  const ChainLevel& slvl = s_data.levels[degree];
  const ChainLevel& tlvl = t_data.levels[degree];
  const int sm = static_cast<int>(scat1.morphisms.size());
  const int tm = static_cast<int>(tcat1.morphisms.size());

  // positions of T's simplices and morphisms inside S
  auto amb_object = [&](int a) { return sub.object_of[a]; };
  std::vector<int> amb_simplex(tlvl.size());
  for (int i = 0; i < tlvl.size(); ++i) {
    const ChainSimplex& cs = tlvl.basis[i];
    amb_simplex[i] = slvl.index_of(amb_object(cs.a), amb_object(cs.b), cs.simplex);
  }
  std::vector<int> amb_morphism(tm);
  for (int i = 0; i < tm; ++i) {
    int a = tcat1.morphisms[i].source, b = tcat1.morphisms[i].target;
    amb_morphism[i] =
        s_data.levels[0].index_of(amb_object(a), amb_object(b), tcat1.hom_simplex[i]);
  }

  TransferDomain<K> out;
  std::map<std::tuple<int, int, int>, int> index;
  for (int t = 0; t < sm; ++t)
    for (int mi = 0; mi < tlvl.size(); ++mi) {
      if (scat1.morphisms[t].source != amb_object(tlvl.basis[mi].b)) continue;
      for (int tp = 0; tp < sm; ++tp) {
        if (scat1.morphisms[tp].target != amb_object(tlvl.basis[mi].a)) continue;
        index[{t, mi, tp}] = static_cast<int>(out.basis.size());
        out.basis.push_back({t, mi, tp});
      }
    }
  const int gens = static_cast<int>(out.basis.size());
  out.module.generators = gens;

  /* Balancing relations pair triples whose middle slot differs by a
   * T-morphism c moved across a tensor sign. Both sides are compatible
   * exactly when c composes with its neighbour and matches the middle
   * simplex, so the loop ranges over all of those combinations; the
   * bare (t, m, t') need not itself be a compatible triple. */
  std::vector<Vec<K>> rel_cols;
  auto unit_col = [&](int t, int mi, int tp) {
    Vec<K> col = Vec<K>::Zero(gens);
    col[index.at({t, mi, tp})] = one;
    return col;
  };
  for (int c = 0; c < tm; ++c) {
    int cs = amb_morphism[c];
    for (int mi = 0; mi < tlvl.size(); ++mi) {
      int hom_src = amb_object(tlvl.basis[mi].a);
      int hom_tgt = amb_object(tlvl.basis[mi].b);
      // left balancing: (t * c) (x) m (x) t'  =  t (x) (c . m) (x) t'
      if (tlvl.left[c][mi] >= 0)
        for (int t = 0; t < sm; ++t) {
          int tc = scat1.then(cs, t);  // algebra product t * c
          if (tc < 0) continue;
          for (int tp = 0; tp < sm; ++tp) {
            if (scat1.morphisms[tp].target != hom_src) continue;
            Vec<K> col = unit_col(tc, mi, tp) - unit_col(t, tlvl.left[c][mi], tp);
            if (!is_zero_matrix(col)) rel_cols.push_back(col);
          }
        }
      // right balancing: t (x) (m . c) (x) t'  =  t (x) m (x) (c * t')
      if (tlvl.right[c][mi] >= 0)
        for (int tp = 0; tp < sm; ++tp) {
          int ct = scat1.then(tp, cs);  // algebra product c * t'
          if (ct < 0) continue;
          for (int t = 0; t < sm; ++t) {
            if (scat1.morphisms[t].source != hom_tgt) continue;
            Vec<K> col = unit_col(t, tlvl.right[c][mi], tp) - unit_col(t, mi, ct);
            if (!is_zero_matrix(col)) rel_cols.push_back(col);
          }
        }
    }
  }
  Mat<K> rel(gens, static_cast<int>(rel_cols.size()));
  for (size_t c = 0; c < rel_cols.size(); ++c) rel.col(static_cast<int>(c)) = rel_cols[c];
  out.module.relations = column_span_basis(rel);

  // outer actions of R[S] on the free and slot components
  for (int f = 0; f < sm; ++f) {
    Mat<K> lm = Mat<K>::Zero(gens, gens);
    Mat<K> rm = Mat<K>::Zero(gens, gens);
    for (int g = 0; g < gens; ++g) {
      const TripleBasis& tb = out.basis[g];
      int lt = scat1.then(tb.t, f);  // algebra product f * t
      if (lt >= 0) lm(index.at({lt, tb.m, tb.tprime}), g) = one;
      int rt = scat1.then(f, tb.tprime);  // algebra product t' * f
      if (rt >= 0) rm(index.at({tb.t, tb.m, rt}), g) = one;
    }
    out.module.left.push_back(lm);
    out.module.right.push_back(rm);
  }

  // iota: act on both sides inside C_n(S)
  out.map = Mat<K>::Zero(slvl.size(), gens);
  for (int g = 0; g < gens; ++g) {
    const TripleBasis& tb = out.basis[g];
    int mid = amb_simplex[tb.m];
    int after_right = slvl.right[tb.tprime][mid];
    int final_idx = after_right < 0 ? -1 : slvl.left[tb.t][after_right];
    if (final_idx < 0)
      throw std::logic_error("transfer triple acted to zero despite compatibility");
    out.map(final_idx, g) = one;
  }
  return out;
}

template <class K>
ModuleMorphism<K> transfer_map(const TransferDomain<K>& dom, const ChainLevel& target_level) {
  return ModuleMorphism<K>{dom.module.presentation(),
                           present_cokernel(target_level.size(), Mat<K>(target_level.size(), 0)),
                           dom.map};
}

}  // namespace dihom
