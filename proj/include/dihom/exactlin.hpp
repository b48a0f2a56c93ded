#pragma once

#include "dihom/ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dihom {

template <class K> using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K> using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

/* Hard cap on matrix dimensions entering elimination, to fail fast instead of
 * blowing up on oversized inputs.  Overridable through DIHOM_MAX_MATRIX. */
inline long max_matrix_dim() {
    if (const char* s = std::getenv("DIHOM_MAX_MATRIX")) {
        long v = std::atol(s);
        if (v > 0) return v;
    }
    return 5000;
}

inline void check_dims(long rows, long cols) {
    long cap = max_matrix_dim();
    if (rows > cap || cols > cap)
        throw std::length_error("matrix dimension " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " exceeds the DIHOM_MAX_MATRIX cap " + std::to_string(cap));
}

template <class D> bool is_zero_matrix(const Eigen::MatrixBase<D>& m) {
    using K = typename D::Scalar;
    const K zero(0);
    for (long j = 0; j < m.cols(); ++j)
        for (long i = 0; i < m.rows(); ++i)
            if (m(i, j) != zero) return false;
    return true;
}

template <class DA, class DB>
bool mat_equal(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (long j = 0; j < a.cols(); ++j)
        for (long i = 0; i < a.rows(); ++i)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

template <class D> std::string mat_to_string(const Eigen::MatrixBase<D>& m) {
    std::string s = "[";
    for (long i = 0; i < m.rows(); ++i) {
        if (i) s += "; ";
        for (long j = 0; j < m.cols(); ++j) {
            if (j) s += ", ";
            s += scalar_to_string(m(i, j));
        }
    }
    return s + "]";
}

template <class K> Mat<K> hcat(const Mat<K>& a, const Mat<K>& b) {
    if (a.cols() > 0 && b.cols() > 0 && a.rows() != b.rows())
        throw std::invalid_argument("hcat: row counts differ");
    long rows = a.cols() > 0 ? a.rows() : (b.cols() > 0 ? b.rows() : std::max(a.rows(), b.rows()));
    Mat<K> r(rows, a.cols() + b.cols());
    if (a.cols() > 0) r.leftCols(a.cols()) = a;
    if (b.cols() > 0) r.rightCols(b.cols()) = b;
    return r;
}

enum class PivotStrategy { min_abs, first_nonzero };

/* U * m * V = diag with U, V unimodular.  Over the integers diag carries the
 * divisibility chain d_1 | d_2 | ... with nonnegative entries; over a field it
 * is a 0/1 rank normal form.  invariant_factors lists the nonzero nonunit
 * diagonal entries (always empty over a field). */
template <class K> struct SmithDecomposition {
    Mat<K> left;
    Mat<K> diag;
    Mat<K> right;
    long rank = 0;
    std::vector<K> invariant_factors;
};

template <class K>
SmithDecomposition<K> smith_normal_form(const Mat<K>& m, PivotStrategy strategy = PivotStrategy::min_abs) {
    using T = ring_traits<K>;
    const K zero(0);
    const long rows = m.rows(), cols = m.cols();
    check_dims(rows, cols);

    SmithDecomposition<K> s;
    s.left = Mat<K>::Identity(rows, rows);
    s.diag = m;
    s.right = Mat<K>::Identity(cols, cols);
    Mat<K>& U = s.left;
    Mat<K>& D = s.diag;
    Mat<K>& V = s.right;

    auto find_pivot = [&](long t, long& pi, long& pj) -> bool {
        pi = -1;
        pj = -1;
        for (long i = t; i < rows; ++i)
            for (long j = t; j < cols; ++j) {
                if (D(i, j) == zero) continue;
                if (pi < 0) {
                    pi = i; pj = j;
                    if (strategy == PivotStrategy::first_nonzero || !T::has_abs) return true;
                } else if constexpr (T::has_abs) {
                    if (T::abs_less(D(i, j), D(pi, pj))) { pi = i; pj = j; }
                }
            }
        return pi >= 0;
    };

    /* Clears row t and column t outside the pivot, for every t >= t0.
     * Left ops mirror into U, right ops into V, so U*m*V = D throughout. */
    auto diagonalize_from = [&](long t0) {
        for (long t = t0; t < rows && t < cols; ++t) {
            long pi, pj;
            if (!find_pivot(t, pi, pj)) break;
            if (pi != t) { D.row(pi).swap(D.row(t)); U.row(pi).swap(U.row(t)); }
            if (pj != t) { D.col(pj).swap(D.col(t)); V.col(pj).swap(V.col(t)); }
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (long r = t + 1; r < rows; ++r) {
                    if (D(r, t) == zero) continue;
                    K q = T::quot(D(r, t), D(t, t));
                    if (q != zero) { D.row(r) -= q * D.row(t); U.row(r) -= q * U.row(t); }
                    if (D(r, t) != zero) {
                        /* Euclidean remainder: strictly smaller, promote it. */
                        D.row(r).swap(D.row(t)); U.row(r).swap(U.row(t));
                        dirty = true;
                    }
                }
                for (long c = t + 1; c < cols; ++c) {
                    if (D(t, c) == zero) continue;
                    K q = T::quot(D(t, c), D(t, t));
                    if (q != zero) { D.col(c) -= q * D.col(t); V.col(c) -= q * V.col(t); }
                    if (D(t, c) != zero) {
                        D.col(c).swap(D.col(t)); V.col(c).swap(V.col(t));
                        dirty = true;
                    }
                }
            }
        }
    };

    diagonalize_from(0);

    long n = std::min(rows, cols);
    if constexpr (!T::is_field) {
        /* Enforce d_i | d_j for i < j.  Merging column j into column i places
         * d_j below the pivot; rediagonalizing replaces d_i with gcd(d_i, d_j)
         * and pushes the cofactor outward. */
        long guard = 64 * (n + 1) * (n + 1);
        bool changed = true;
        while (changed) {
            if (--guard < 0) throw std::logic_error("divisibility normalization did not converge");
            changed = false;
            for (long i = 0; i < n && !changed; ++i) {
                if (D(i, i) == zero) continue;
                for (long j = i + 1; j < n && !changed; ++j) {
                    if (D(j, j) == zero) continue;
                    if (T::rem(D(j, j), D(i, i)) != zero) {
                        D.col(i) += D.col(j);
                        V.col(i) += V.col(j);
                        diagonalize_from(i);
                        changed = true;
                    }
                }
            }
        }
    }

    for (long i = 0; i < n; ++i) {
        if (D(i, i) == zero) continue;
        K u = T::canonical_unit(D(i, i));
        if (u != K(1)) { D.row(i) *= u; U.row(i) *= u; }
        ++s.rank;
        if constexpr (!T::is_field) {
            if (!T::is_unit(D(i, i)) && D(i, i) != K(1))
                s.invariant_factors.push_back(D(i, i));
        }
    }
    return s;
}

/* Columns form a basis of ker(m) as a direct summand: over the integers the
 * span is saturated (V is unimodular), over a field it is a plain basis. */
template <class K> Mat<K> kernel_basis(const Mat<K>& m) {
    auto s = smith_normal_form(m);
    return s.right.rightCols(m.cols() - s.rank);
}

template <class K> long rank_of(const Mat<K>& m) { return smith_normal_form(m).rank; }

/* Exact solve of a * X = b over the coefficient ring; nullopt when no solution
 * exists (over Z that includes divisibility failures). */
template <class K>
std::optional<Mat<K>> solve_columns(const Mat<K>& a, const Mat<K>& b) {
    using T = ring_traits<K>;
    const K zero(0);
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve_columns: row counts differ");
    auto s = smith_normal_form(a);
    Mat<K> c = s.left * b;
    Mat<K> y = Mat<K>::Zero(a.cols(), b.cols());
    for (long i = 0; i < s.rank; ++i)
        for (long j = 0; j < b.cols(); ++j) {
            if (T::rem(c(i, j), s.diag(i, i)) != zero) return std::nullopt;
            y(i, j) = T::quot(c(i, j), s.diag(i, i));
        }
    for (long i = s.rank; i < a.rows(); ++i)
        for (long j = 0; j < b.cols(); ++j)
            if (c(i, j) != zero) return std::nullopt;
    return s.right * y;
}

template <class K> bool in_span(const Mat<K>& span, const Mat<K>& vectors) {
    return solve_columns(span, vectors).has_value();
}

template <class K> bool spans_equal(const Mat<K>& a, const Mat<K>& b) {
    return in_span(a, b) && in_span(b, a);
}

/* Independent columns spanning the column span of m over the ring: the
 * nonzero columns of m * V, which equal U^{-1} * d_i e_i. */
template <class K> Mat<K> column_span_basis(const Mat<K>& m) {
    auto s = smith_normal_form(m);
    Mat<K> mv = m * s.right;
    return mv.leftCols(s.rank);
}

/* Fraction-free Bareiss determinant; divisions are exact in any integral domain. */
template <class K> K determinant(Mat<K> a) {
    using T = ring_traits<K>;
    const K zero(0);
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix is not square");
    const long n = a.rows();
    if (n == 0) return K(1);
    K prev(1);
    bool negate = false;
    for (long k = 0; k + 1 < n; ++k) {
        if (a(k, k) == zero) {
            long r = k + 1;
            while (r < n && a(r, k) == zero) ++r;
            if (r == n) return zero;
            a.row(k).swap(a.row(r));
            negate = !negate;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j)
                a(i, j) = T::quot(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
        prev = a(k, k);
    }
    K det = a(n - 1, n - 1);
    return negate ? K(zero - det) : det;
}

/* Finitely presented module coker(relations): R^generators / column span. */
template <class K> struct PresentedModule {
    long generators = 0;
    Mat<K> relations;
    long free_rank = 0;
    std::vector<K> invariant_factors;

    bool is_zero() const { return free_rank == 0 && invariant_factors.empty(); }
};

template <class K>
PresentedModule<K> present_cokernel(long generators, const Mat<K>& relations) {
    if (relations.cols() > 0 && relations.rows() != generators)
        throw std::invalid_argument("present_cokernel: relation vectors do not match generator count");
    PresentedModule<K> pm;
    pm.generators = generators;
    pm.relations = relations.cols() > 0 ? relations : Mat<K>::Zero(generators, 0);
    auto s = smith_normal_form(pm.relations);
    pm.free_rank = generators - s.rank;
    pm.invariant_factors = s.invariant_factors;
    return pm;
}

/* span(cycles) / span(boundaries) inside an ambient free module.  cycles must
 * have independent columns (kernel_basis and column_span_basis guarantee
 * that); boundaries must lie in their span. */
template <class K> struct Subquotient {
    Mat<K> cycles;           /* ambient x g, the chosen representatives */
    Mat<K> boundary_coords;  /* g x r with cycles * boundary_coords = boundaries */
    PresentedModule<K> module;
};

template <class K>
Subquotient<K> subquotient(const Mat<K>& cycles, const Mat<K>& boundaries) {
    if (rank_of(cycles) != cycles.cols())
        throw std::invalid_argument("subquotient: cycle representatives are not independent");
    auto x = solve_columns(cycles, boundaries);
    if (!x)
        throw std::invalid_argument("subquotient: boundaries do not lie in the cycle span");
    Subquotient<K> sq;
    sq.cycles = cycles;
    sq.boundary_coords = *x;
    sq.module = present_cokernel(cycles.cols(), *x);
    return sq;
}

/* Map between presented modules, stored on generators. */
template <class K> struct ModuleMorphism {
    PresentedModule<K> source;
    PresentedModule<K> target;
    Mat<K> matrix;  /* target.generators x source.generators */
};

template <class K>
ModuleMorphism<K> compose(const ModuleMorphism<K>& g, const ModuleMorphism<K>& f) {
    if (g.matrix.cols() != f.matrix.rows())
        throw std::invalid_argument("compose: middle generator counts differ");
    return {f.source, g.target, g.matrix * f.matrix};
}

template <class K>
bool morphisms_equal(const ModuleMorphism<K>& f, const ModuleMorphism<K>& g) {
    if (f.matrix.rows() != g.matrix.rows() || f.matrix.cols() != g.matrix.cols()) return false;
    Mat<K> diff = f.matrix - g.matrix;
    if (f.target.relations.cols() == 0) return is_zero_matrix(diff);
    return in_span(f.target.relations, diff);
}

template <class K>
bool is_zero_morphism(const ModuleMorphism<K>& f) {
    ModuleMorphism<K> z{f.source, f.target, Mat<K>::Zero(f.matrix.rows(), f.matrix.cols())};
    return morphisms_equal(f, z);
}

/* Induced map on subquotients from an ambient-level map f with
 * f(span cycles_src) <= span(cycles_tgt) and f(boundaries_src) <= span(boundaries_tgt).
 * Throws if either containment fails, since the map is then not defined. */
template <class K>
ModuleMorphism<K> induced_map_on_subquotients(const Mat<K>& f, const Subquotient<K>& src, const Subquotient<K>& tgt) {
    auto on_cycles = solve_columns<K>(tgt.cycles, f * src.cycles);
    if (!on_cycles)
        throw std::invalid_argument("induced map does not preserve the cycle span");
    Mat<K> src_bd = src.cycles * src.boundary_coords;
    Mat<K> tgt_bd = tgt.cycles * tgt.boundary_coords;
    if (!in_span<K>(tgt_bd, f * src_bd))
        throw std::invalid_argument("induced map does not preserve the boundary span");
    return {src.module, tgt.module, *on_cycles};
}

/* Kernel of a morphism of presented modules, as a subquotient of the source
 * generator space: { x : f(x) lies in span(target relations) } / source relations. */
template <class K>
Subquotient<K> morphism_kernel(const ModuleMorphism<K>& f) {
    Mat<K> stacked = hcat<K>(f.matrix, f.target.relations);
    Mat<K> full = kernel_basis(stacked);
    Mat<K> preimage = column_span_basis<K>(Mat<K>(full.topRows(f.source.generators)));
    return subquotient<K>(preimage, f.source.relations);
}

template <class K>
PresentedModule<K> morphism_cokernel(const ModuleMorphism<K>& f) {
    return present_cokernel(f.target.generators, hcat<K>(f.matrix, f.target.relations));
}

template <class K>
bool is_isomorphism(const ModuleMorphism<K>& f) {
    return morphism_kernel(f).module.is_zero() && morphism_cokernel(f).is_zero();
}

/* Exactness of - f -> middle - g -> at the middle presented module:
 * checks g∘f = 0 and im(f) = ker(g) as submodules of the middle. */
template <class K>
bool is_exact_at(const ModuleMorphism<K>& f, const ModuleMorphism<K>& g) {
    if (f.matrix.rows() != g.matrix.cols())
        throw std::invalid_argument("is_exact_at: maps are not composable");
    if (!is_zero_morphism(compose(g, f))) return false;
    Mat<K> stacked = hcat<K>(g.matrix, g.target.relations);
    Mat<K> full = kernel_basis(stacked);
    Mat<K> ker_lattice = Mat<K>(full.topRows(g.source.generators));
    Mat<K> image = hcat<K>(f.matrix, f.target.relations);
    return spans_equal<K>(image, ker_lattice);
}

}
