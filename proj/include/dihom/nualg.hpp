#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactlin.hpp"
#include "scat.hpp"

namespace dihom {

/* A finite-dimensional associative algebra presented by a basis whose
 * pairwise products are again basis elements or zero. Path algebras,
 * their unitalizations, opposites and tensor products all have this
 * monomial form, so products of general elements expand bilinearly
 * through one index table.
 *
 *   mul(i, j) = index of basis[i] * basis[j], or -1 when the product is 0
 *
 * Products are written in algebraic order: (g * f) acts as "first f,
 * then g" when the basis elements are morphisms. */
struct Algebra {
  std::vector<std::string> basis;
  std::vector<std::vector<int>> prod;
  bool unital = false;
  int unit = -1;

  int dim() const { return static_cast<int>(basis.size()); }
  int mul(int i, int j) const { return prod[i][j]; }
};

inline ValidationReport validate_algebra(const Algebra& a) {
  ValidationReport rep;
  const int n = a.dim();
  if (static_cast<int>(a.prod.size()) != n) {
    rep.add("products", "table must have one row per basis element");
    return rep;
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a.prod[i].size()) != n) {
      rep.add("products", "row " + std::to_string(i) + " has wrong length");
      return rep;
    }
    for (int j = 0; j < n; ++j)
      if (a.prod[i][j] < -1 || a.prod[i][j] >= n)
        rep.add("products", "entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a.basis[i] == a.basis[j])
        rep.add("basis", "duplicate symbol '" + a.basis[i] + "'");
  if (!rep.ok()) return rep;

  auto mul3 = [&](int x, int y) { return x < 0 || y < 0 ? -1 : a.mul(x, y); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (mul3(a.mul(i, j), k) != mul3(i, a.mul(j, k)))
          rep.add("associativity", a.basis[i] + " * " + a.basis[j] + " * " + a.basis[k]);

  if (a.unital) {
    if (a.unit < 0 || a.unit >= n) {
      rep.add("unit", "unit index out of range");
      return rep;
    }
    for (int i = 0; i < n; ++i) {
      if (a.mul(a.unit, i) != i) rep.add("unit", "1 * " + a.basis[i] + " differs from it");
      if (a.mul(i, a.unit) != i) rep.add("unit", a.basis[i] + " * 1 differs from it");
    }
  }
  return rep;
}

/* The path algebra of an ordinary category: one basis element per
 * morphism, product g * f equal to "f then g" when the endpoints match
 * and zero otherwise. Identities of objects are idempotents but there
 * is no global unit (except for one-object categories). */
struct PathAlgebra {
  Algebra algebra;
  std::vector<int> source;          // per basis element
  std::vector<int> target;
  std::vector<int> identity_basis;  // per object
  std::vector<std::string> objects;
};

inline PathAlgebra path_algebra(const Category1& cat) {
  {
    ValidationReport rep = validate_category(cat);
    if (!rep.ok()) throw BuilderError("category invalid: " + rep.to_string());
  }
  PathAlgebra out;
  const int m = static_cast<int>(cat.morphisms.size());
  out.algebra.basis.resize(m);
  out.algebra.prod.assign(m, std::vector<int>(m, -1));
  out.source.resize(m);
  out.target.resize(m);
  out.objects = cat.objects;
  for (int i = 0; i < m; ++i) {
    out.algebra.basis[i] = cat.morphisms[i].name;
    out.source[i] = cat.morphisms[i].source;
    out.target[i] = cat.morphisms[i].target;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.algebra.prod[i][j] = cat.then(j, i);
  out.identity_basis = cat.identities;
  out.algebra.unital = (cat.objects.size() == 1);
  if (out.algebra.unital) out.algebra.unit = cat.identities[0];
  return out;
}

template <class K>
Vec<K> alg_mul(const Algebra& a, const Vec<K>& x, const Vec<K>& y) {
  Vec<K> out = Vec<K>::Zero(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    if (x[i] == K(0)) continue;
    for (int j = 0; j < a.dim(); ++j) {
      int p = a.mul(i, j);
      if (p >= 0) out[p] += x[i] * y[j];
    }
  }
  return out;
}

// matrix of y |-> x * y
template <class K>
Mat<K> left_mult_matrix(const Algebra& a, const Vec<K>& x) {
  Mat<K> out = Mat<K>::Zero(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      int p = a.mul(i, j);
      if (p >= 0) out(p, j) += x[i];
    }
  return out;
}

// matrix of y |-> y * x
template <class K>
Mat<K> right_mult_matrix(const Algebra& a, const Vec<K>& x) {
  Mat<K> out = Mat<K>::Zero(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      int p = a.mul(i, j);
      if (p >= 0) out(p, i) += x[j];
    }
  return out;
}

template <class K>
bool is_idempotent(const Algebra& a, const Vec<K>& x) {
  return mat_equal(Vec<K>(alg_mul(a, x, x)), x);
}

/* Whether products span the whole algebra, i.e. A*A = A as K-modules.
 * Over the integers this asks for the full lattice, not just full rank;
 * with a monomial product table the two agree anyway, since every
 * nonzero product is a basis vector. */
template <class K>
bool is_idempotent_algebra(const Algebra& a) {
  const int n = a.dim();
  std::vector<int> hit;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a.mul(i, j) >= 0) hit.push_back(a.mul(i, j));
  Mat<K> products = Mat<K>::Zero(n, static_cast<long>(hit.size()));
  for (size_t c = 0; c < hit.size(); ++c) products(hit[c], static_cast<long>(c)) = K(1);
  return present_cokernel<K>(n, products).is_zero();
}

inline std::string fresh_symbol(const std::vector<std::string>& taken, std::string candidate) {
  while (std::find(taken.begin(), taken.end(), candidate) != taken.end()) candidate += '\'';
  return candidate;
}

/* Unitalization: adjoin a formal unit symbol. Elements are pairs
 * (a, r) with product (a, r)(b, s) = (ab + r b + a s, r s); the basis
 * form of that rule keeps the product table monomial. */
inline Algebra unitalize(const Algebra& a) {
  Algebra out = a;
  const int n = a.dim();
  out.basis.push_back(fresh_symbol(a.basis, "1"));
  out.unital = true;
  out.unit = n;
  out.prod.assign(n + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.prod[i][j] = a.prod[i][j];
  for (int i = 0; i <= n; ++i) {
    out.prod[n][i] = i;
    out.prod[i][n] = i;
  }
  return out;
}

template <class K>
Vec<K> unitalized_element(const Algebra& a, const Vec<K>& x, const K& r) {
  Vec<K> out = Vec<K>::Zero(a.dim() + 1);
  out.head(a.dim()) = x;
  out[a.dim()] = r;
  return out;
}

/* The three structure maps of the unitalization adjunction, as matrices
 * over K. The two triangle composites must both be identity maps; the
 * check function verifies that once and callers can sample elements
 * through the returned matrices. */
template <class K>
Mat<K> unit_map_matrix(const Algebra& a) {  // A -> forget(unitalize(A))
  Mat<K> out = Mat<K>::Zero(a.dim() + 1, a.dim());
  for (int i = 0; i < a.dim(); ++i) out(i, i) = K(1);
  return out;
}

template <class K>
Mat<K> counit_map_matrix(const Algebra& b) {  // unitalize(forget(B)) -> B for unital B
  if (!b.unital) throw std::invalid_argument("counit_map_matrix: algebra has no unit");
  Mat<K> out = Mat<K>::Zero(b.dim(), b.dim() + 1);
  for (int i = 0; i < b.dim(); ++i) out(i, i) = K(1);
  out(b.unit, b.dim()) = K(1);
  return out;
}

template <class K>
Mat<K> unitalized_unit_map_matrix(const Algebra& a) {  // unitalize(A) -> unitalize(forget(unitalize(A)))
  const int n = a.dim();
  Mat<K> out = Mat<K>::Zero(n + 2, n + 1);
  for (int i = 0; i < n; ++i) out(i, i) = K(1);
  out(n + 1, n) = K(1);
  return out;
}

template <class K>
bool check_adjunction_triangles(const Algebra& a) {
  Algebra ahat = unitalize(a);
  // triangle on the forgetful side, instantiated at the unital algebra ahat
  Mat<K> t1 = counit_map_matrix<K>(ahat) * unit_map_matrix<K>(ahat);
  // triangle on the unitalization side, instantiated at a
  Mat<K> t2 = counit_map_matrix<K>(ahat) * unitalized_unit_map_matrix<K>(a);
  return mat_equal(t1, Mat<K>(Mat<K>::Identity(ahat.dim(), ahat.dim()))) &&
         mat_equal(t2, Mat<K>(Mat<K>::Identity(ahat.dim(), ahat.dim())));
}

/* Local units. An algebra is left s-unital when every finite set of
 * elements admits e with e x = x for all of them. For path algebras the
 * witness is explicit: sum the identities of the target objects in the
 * supports. The generic search solves the linear system e x = x over
 * the coefficient ring instead, so it also certifies failure. */
template <class K>
std::optional<Vec<K>> left_local_unit(const Algebra& a, const std::vector<Vec<K>>& elems) {
  const int n = a.dim();
  if (elems.empty()) return Vec<K>(Vec<K>::Zero(n));
  Mat<K> sys(n * static_cast<int>(elems.size()), n);
  Mat<K> rhs(n * static_cast<int>(elems.size()), 1);
  for (size_t t = 0; t < elems.size(); ++t) {
    sys.middleRows(static_cast<int>(t) * n, n) = right_mult_matrix(a, elems[t]);
    rhs.middleRows(static_cast<int>(t) * n, n) = elems[t];
  }
  auto sol = solve_columns(sys, rhs);
  if (!sol) return std::nullopt;
  return Vec<K>(sol->col(0));
}

template <class K>
std::optional<Vec<K>> right_local_unit(const Algebra& a, const std::vector<Vec<K>>& elems) {
  const int n = a.dim();
  if (elems.empty()) return Vec<K>(Vec<K>::Zero(n));
  Mat<K> sys(n * static_cast<int>(elems.size()), n);
  Mat<K> rhs(n * static_cast<int>(elems.size()), 1);
  for (size_t t = 0; t < elems.size(); ++t) {
    sys.middleRows(static_cast<int>(t) * n, n) = left_mult_matrix(a, elems[t]);
    rhs.middleRows(static_cast<int>(t) * n, n) = elems[t];
  }
  auto sol = solve_columns(sys, rhs);
  if (!sol) return std::nullopt;
  return Vec<K>(sol->col(0));
}

template <class K>
Vec<K> path_left_unit(const PathAlgebra& pa, const std::vector<Vec<K>>& elems) {
  Vec<K> out = Vec<K>::Zero(pa.algebra.dim());
  std::vector<bool> used(pa.objects.size(), false);
  for (const auto& x : elems)
    for (int i = 0; i < pa.algebra.dim(); ++i)
      if (!(x[i] == K(0)) && !used[pa.target[i]]) {
        used[pa.target[i]] = true;
        out[pa.identity_basis[pa.target[i]]] = K(1);
      }
  return out;
}

template <class K>
Vec<K> path_right_unit(const PathAlgebra& pa, const std::vector<Vec<K>>& elems) {
  Vec<K> out = Vec<K>::Zero(pa.algebra.dim());
  std::vector<bool> used(pa.objects.size(), false);
  for (const auto& x : elems)
    for (int i = 0; i < pa.algebra.dim(); ++i)
      if (!(x[i] == K(0)) && !used[pa.source[i]]) {
        used[pa.source[i]] = true;
        out[pa.identity_basis[pa.source[i]]] = K(1);
      }
  return out;
}

/* Witness combination. If e fixes F from the left and e' fixes every
 * defect x - e x for x in F', then e + e' - e' e fixes F and F' both:
 * elements of F are untouched because e x = x cancels the last two
 * terms, and on F' the sum telescopes through the fixed defect. The
 * merge functions pick e' by solving for the defects. */
template <class K>
Vec<K> combine_left_units(const Algebra& a, const Vec<K>& e, const Vec<K>& eprime) {
  return Vec<K>(e + eprime - alg_mul(a, eprime, e));
}

template <class K>
Vec<K> combine_right_units(const Algebra& a, const Vec<K>& e, const Vec<K>& eprime) {
  return Vec<K>(e + eprime - alg_mul(a, e, eprime));
}

template <class K>
std::optional<Vec<K>> merge_left_units(const Algebra& a, const Vec<K>& e,
                                       const std::vector<Vec<K>>& more) {
  std::vector<Vec<K>> defects;
  for (const auto& x : more) defects.push_back(Vec<K>(x - alg_mul(a, e, x)));
  auto eprime = left_local_unit(a, defects);
  if (!eprime) return std::nullopt;
  return combine_left_units(a, e, *eprime);
}

template <class K>
std::optional<Vec<K>> merge_right_units(const Algebra& a, const Vec<K>& e,
                                        const std::vector<Vec<K>>& more) {
  std::vector<Vec<K>> defects;
  for (const auto& x : more) defects.push_back(Vec<K>(x - alg_mul(a, x, e)));
  auto eprime = right_local_unit(a, defects);
  if (!eprime) return std::nullopt;
  return combine_right_units(a, e, *eprime);
}

inline Algebra opposite(const Algebra& a) {
  Algebra out = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.prod[i][j] = a.prod[j][i];
  return out;
}

/* Tensor product algebra: basis pairs with componentwise products,
 * (x0 (x) y0)(x1 (x) y1) = x0 x1 (x) y0 y1. Pair (i, j) sits at
 * index i * dim(B) + j. */
inline Algebra tensor_algebra(const Algebra& a, const Algebra& b) {
  Algebra out;
  const int na = a.dim(), nb = b.dim();
  out.basis.resize(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) out.basis[i * nb + j] = a.basis[i] + "(x)" + b.basis[j];
  out.prod.assign(na * nb, std::vector<int>(na * nb, -1));
  for (int i0 = 0; i0 < na; ++i0)
    for (int j0 = 0; j0 < nb; ++j0)
      for (int i1 = 0; i1 < na; ++i1)
        for (int j1 = 0; j1 < nb; ++j1) {
          int pi = a.mul(i0, i1), pj = b.mul(j0, j1);
          if (pi >= 0 && pj >= 0) out.prod[i0 * nb + j0][i1 * nb + j1] = pi * nb + pj;
        }
  out.unital = a.unital && b.unital;
  if (out.unital) out.unit = a.unit * nb + b.unit;
  return out;
}

/* Algebra morphisms that send basis elements to basis elements (or the
 * image of zero stays zero); all functor-induced maps have this shape. */
struct AlgebraMorphism {
  std::vector<int> image;  // target basis index per source basis element
};

inline AlgebraMorphism algebra_morphism(const Algebra& a, const Algebra& b,
                                        std::vector<int> image) {
  if (static_cast<int>(image.size()) != a.dim())
    throw BuilderError("algebra morphism needs one image per basis element");
  for (int v : image)
    if (v < 0 || v >= b.dim()) throw BuilderError("algebra morphism image out of range");
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      int p = a.mul(i, j);
      int q = b.mul(image[i], image[j]);
      if ((p < 0 && q >= 0) || (p >= 0 && q != image[p]))
        throw BuilderError("map is not multiplicative on " + a.basis[i] + " * " + a.basis[j]);
    }
  return AlgebraMorphism{std::move(image)};
}

/* Underlying-morphism map of an enriched functor, in the enumeration
 * order of underlying_category. Feeding it to algebra_morphism rejects
 * functors that are not injective on objects, since those collapse
 * non-composable pairs onto composable ones. */
inline std::vector<int> induced_morphism_map(const EnrichedCategory& src,
                                             const EnrichedCategory& tgt,
                                             const EnrichedFunctor& f) {
  const int ns = src.object_count(), nt = tgt.object_count();
  std::vector<int> tgt_first(nt * nt, 0);
  {
    int run = 0;
    for (int a = 0; a < nt; ++a)
      for (int b = 0; b < nt; ++b) {
        tgt_first[a * nt + b] = run;
        run += tgt.hom(a, b).size(0);
      }
  }
  std::vector<int> out;
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b) {
      int fa = f.object_map[a], fb = f.object_map[b];
      for (int i = 0; i < src.hom(a, b).size(0); ++i)
        out.push_back(tgt_first[fa * nt + fb] + f.hom_map[src.pair_index(a, b)][0][i]);
    }
  return out;
}

template <class K>
Mat<K> morphism_matrix(const Algebra& a, const Algebra& b, const AlgebraMorphism& phi) {
  Mat<K> out = Mat<K>::Zero(b.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) out(phi.image[i], i) += K(1);
  return out;
}

/* A morphism of non-unital algebras extends to the unitalizations by
 * sending unit to unit. */
inline AlgebraMorphism unitalize_morphism(const Algebra& a, const Algebra& b,
                                          const AlgebraMorphism& phi) {
  if (static_cast<int>(phi.image.size()) != a.dim())
    throw BuilderError("morphism does not match the algebra being unitalized");
  AlgebraMorphism out = phi;
  out.image.push_back(b.dim());  // unit symbol of unitalize(b)
  return out;
}

}  // namespace dihom
