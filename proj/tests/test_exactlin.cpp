#include "dihom/exactlin.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>

using namespace dihom;

namespace {

Mat<Int> zmat(const std::vector<std::vector<long long>>& rows) {
    const long r = (long)rows.size();
    const long c = r > 0 ? (long)rows[0].size() : 0;
    Mat<Int> m(r, c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m(i, j) = Int(rows[i][j]);
    return m;
}

template <class K>
Mat<K> cast_mat(const Mat<Int>& m, const RingSpec& ring) {
    Mat<K> out(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            out(i, j) = make_scalar<K>(ring, (long long)m(i, j));
    return out;
}

Mat<Int> random_zmat(std::mt19937_64& rng, long maxdim = 5, int maxabs = 9) {
    std::uniform_int_distribution<long> dim(1, maxdim);
    std::uniform_int_distribution<int> entry(-maxabs, maxabs);
    Mat<Int> m(dim(rng), dim(rng));
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) m(i, j) = Int(entry(rng));
    return m;
}

template <class K>
void check_smith_contract(const Mat<K>& m, const SmithDecomposition<K>& s) {
    REQUIRE(mat_equal(Mat<K>(s.left * m * s.right), s.diag));
    for (long i = 0; i < s.diag.rows(); ++i)
        for (long j = 0; j < s.diag.cols(); ++j)
            if (i != j) REQUIRE(s.diag(i, j) == K(0));
    K du = oracle::cofactor_det(Mat<K>(s.left));
    K dv = oracle::cofactor_det(Mat<K>(s.right));
    REQUIRE(ring_traits<K>::is_unit(du));
    REQUIRE(ring_traits<K>::is_unit(dv));
}

}

TEST_CASE("smith normal form on pinned integer matrices") {
    SECTION("2x2 with nontrivial chain") {
        Mat<Int> m = zmat({{2, 4}, {6, 8}});
        auto s = smith_normal_form(m);
        check_smith_contract(m, s);
        REQUIRE(s.rank == 2);
        REQUIRE(s.diag(0, 0) == 2);
        REQUIRE(s.diag(1, 1) == 4);
        REQUIRE(s.invariant_factors == std::vector<Int>{Int(2), Int(4)});
    }
    SECTION("diagonal input still needs the divisibility fix") {
        Mat<Int> m = zmat({{4, 0}, {0, 6}});
        auto s = smith_normal_form(m);
        check_smith_contract(m, s);
        REQUIRE(s.diag(0, 0) == 2);
        REQUIRE(s.diag(1, 1) == 12);
    }
    SECTION("identity") {
        Mat<Int> m = Mat<Int>::Identity(3, 3);
        auto s = smith_normal_form(m);
        REQUIRE(s.rank == 3);
        REQUIRE(s.invariant_factors.empty());
    }
    SECTION("zero matrix") {
        Mat<Int> m = Mat<Int>::Zero(2, 3);
        auto s = smith_normal_form(m);
        REQUIRE(s.rank == 0);
        REQUIRE(mat_equal(s.diag, m));
    }
    SECTION("sign is canonicalized") {
        Mat<Int> m = zmat({{-5}});
        auto s = smith_normal_form(m);
        REQUIRE(s.diag(0, 0) == 5);
        REQUIRE(s.invariant_factors == std::vector<Int>{Int(5)});
    }
}

TEST_CASE("smith normal form matches the minor-gcd oracle on random matrices") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 60; ++trial) {
        Mat<Int> m = random_zmat(rng);
        auto s = smith_normal_form(m);
        check_smith_contract(m, s);

        auto expected = oracle::smith_diagonal_by_minors(m);
        for (long i = 0; i < std::min(m.rows(), m.cols()); ++i) {
            INFO("matrix " << mat_to_string(m) << " position " << i);
            REQUIRE(s.diag(i, i) == expected[i]);
        }
        for (long i = 0; i + 1 < s.rank; ++i)
            REQUIRE(s.diag(i + 1, i + 1) % s.diag(i, i) == 0);

        auto first = smith_normal_form(m, PivotStrategy::first_nonzero);
        REQUIRE(mat_equal(first.diag, s.diag));
        check_smith_contract(m, first);
    }
}

TEST_CASE("smith normal form over the fields") {
    std::mt19937_64 rng(77);
    RingSpec q = RingSpec::rationals();
    RingSpec f7 = RingSpec::prime_field(7);
    for (int trial = 0; trial < 25; ++trial) {
        Mat<Int> base = random_zmat(rng, 4, 6);
        {
            Mat<Rat> m = cast_mat<Rat>(base, q);
            auto s = smith_normal_form(m);
            check_smith_contract(m, s);
            REQUIRE(s.rank == oracle::rank_by_minors(m));
            REQUIRE(s.invariant_factors.empty());
            for (long i = 0; i < s.rank; ++i) REQUIRE(s.diag(i, i) == Rat(1));
        }
        {
            Mat<Fp> m = cast_mat<Fp>(base, f7);
            auto s = smith_normal_form(m);
            check_smith_contract(m, s);
            REQUIRE(s.rank == oracle::rank_by_minors(m));
            for (long i = 0; i < s.rank; ++i) REQUIRE(s.diag(i, i) == Fp(1));
        }
    }
}

TEST_CASE("prime field scalars bind and reduce") {
    RingSpec f7 = RingSpec::prime_field(7);
    Fp a = make_scalar<Fp>(f7, 10);
    REQUIRE(a.value() == 3);
    REQUIRE(a + Fp(1) == make_scalar<Fp>(f7, 4));
    REQUIRE(Fp(-1) * a == make_scalar<Fp>(f7, 4));
    REQUIRE(a / a == Fp(1));
    REQUIRE_THROWS_AS(a + make_scalar<Fp>(RingSpec::prime_field(5), 1), std::invalid_argument);
    REQUIRE_THROWS_AS(a / Fp(0), std::domain_error);
    REQUIRE(RingSpec::parse("fp:4") == std::nullopt);
    REQUIRE(RingSpec::parse("fp:2147483647").has_value());
}

TEST_CASE("kernel basis is the saturated kernel lattice") {
    SECTION("pinned") {
        Mat<Int> m = zmat({{1, 1}});
        Mat<Int> k = kernel_basis(m);
        REQUIRE(k.cols() == 1);
        REQUIRE(is_zero_matrix(Mat<Int>(m * k)));
        REQUIRE(boost::multiprecision::abs(k(0, 0)) == 1);
        REQUIRE(k(1, 0) == -k(0, 0));
    }
    SECTION("random") {
        std::mt19937_64 rng(5150);
        for (int trial = 0; trial < 40; ++trial) {
            Mat<Int> m = random_zmat(rng);
            Mat<Int> k = kernel_basis(m);
            REQUIRE(is_zero_matrix(Mat<Int>(m * k)));
            REQUIRE(oracle::rank_by_minors(k) == k.cols());
            REQUIRE(k.cols() == m.cols() - oracle::rank_by_minors(m));
            /* Saturation: a saturated lattice has all invariant factors 1. */
            for (const Int& d : oracle::smith_diagonal_by_minors(k))
                if (d != 0) REQUIRE(d == 1);
        }
    }
    SECTION("over Q the kernel is a plain basis") {
        std::mt19937_64 rng(99);
        RingSpec q = RingSpec::rationals();
        Mat<Rat> m = cast_mat<Rat>(random_zmat(rng), q);
        Mat<Rat> k = kernel_basis(m);
        REQUIRE(is_zero_matrix(Mat<Rat>(m * k)));
        REQUIRE(k.cols() == m.cols() - oracle::rank_by_minors(m));
    }
}

TEST_CASE("solve_columns is an exact solver") {
    std::mt19937_64 rng(31337);
    SECTION("solvable systems round-trip") {
        for (int trial = 0; trial < 30; ++trial) {
            Mat<Int> a = random_zmat(rng, 4, 5);
            Mat<Int> x0(a.cols(), 2);
            std::uniform_int_distribution<int> entry(-4, 4);
            for (long i = 0; i < x0.rows(); ++i)
                for (long j = 0; j < 2; ++j) x0(i, j) = Int(entry(rng));
            Mat<Int> b = a * x0;
            auto x = solve_columns(a, b);
            REQUIRE(x.has_value());
            REQUIRE(mat_equal(Mat<Int>(a * *x), b));
        }
    }
    SECTION("divisibility failures are detected over Z but not Q") {
        Mat<Int> a = zmat({{2}});
        Mat<Int> b = zmat({{1}});
        REQUIRE(!solve_columns(a, b).has_value());
        auto xq = solve_columns(cast_mat<Rat>(a, RingSpec::rationals()), cast_mat<Rat>(b, RingSpec::rationals()));
        REQUIRE(xq.has_value());
        REQUIRE((*xq)(0, 0) == Rat(1) / Rat(2));
    }
    SECTION("inconsistent systems fail over every ring") {
        Mat<Int> a = zmat({{1}, {1}});
        Mat<Int> b = zmat({{1}, {2}});
        REQUIRE(!solve_columns(a, b).has_value());
        REQUIRE(!solve_columns(cast_mat<Rat>(a, RingSpec::rationals()), cast_mat<Rat>(b, RingSpec::rationals())).has_value());
    }
}

TEST_CASE("column_span_basis spans the same lattice with independent columns") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        Mat<Int> m = random_zmat(rng);
        Mat<Int> b = column_span_basis(m);
        REQUIRE(oracle::rank_by_minors(b) == b.cols());
        REQUIRE(spans_equal(m, b));
    }
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(86);
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<long> dim(1, 5);
        long n = dim(rng);
        Mat<Int> m = Mat<Int>::Zero(n, n);
        std::uniform_int_distribution<int> entry(-6, 6);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) m(i, j) = Int(entry(rng));
        REQUIRE(determinant(m) == oracle::cofactor_det(m));
    }
}

TEST_CASE("subquotient presentations") {
    SECTION("free part and torsion from a pinned pair") {
        Mat<Int> cycles = Mat<Int>::Identity(2, 2);
        Mat<Int> boundaries = zmat({{2}, {0}});
        auto sq = subquotient(cycles, boundaries);
        REQUIRE(sq.module.generators == 2);
        REQUIRE(sq.module.free_rank == 1);
        REQUIRE(sq.module.invariant_factors == std::vector<Int>{Int(2)});
    }
    SECTION("over Q the torsion disappears") {
        RingSpec q = RingSpec::rationals();
        Mat<Rat> cycles = Mat<Rat>::Identity(2, 2);
        Mat<Rat> boundaries = cast_mat<Rat>(zmat({{2}, {0}}), q);
        auto sq = subquotient(cycles, boundaries);
        REQUIRE(sq.module.free_rank == 1);
        REQUIRE(sq.module.invariant_factors.empty());
    }
    SECTION("dependent cycle columns are rejected") {
        Mat<Int> cycles = zmat({{1, 2}, {1, 2}});
        REQUIRE_THROWS_AS(subquotient(cycles, Mat<Int>(Mat<Int>::Zero(2, 0))), std::invalid_argument);
    }
    SECTION("boundaries outside the cycle span are rejected") {
        Mat<Int> cycles = zmat({{1}, {0}});
        Mat<Int> boundaries = zmat({{0}, {1}});
        REQUIRE_THROWS_AS(subquotient(cycles, boundaries), std::invalid_argument);
    }
}

TEST_CASE("morphism kernel, cokernel, exactness") {
    auto free_z = present_cokernel<Int>(1, Mat<Int>::Zero(1, 0));
    auto z_mod = [&](long long n) { return present_cokernel<Int>(1, zmat({{n}})); };

    SECTION("multiplication by two on Z") {
        ModuleMorphism<Int> f{free_z, free_z, zmat({{2}})};
        REQUIRE(morphism_kernel(f).module.is_zero());
        auto coker = morphism_cokernel(f);
        REQUIRE(coker.free_rank == 0);
        REQUIRE(coker.invariant_factors == std::vector<Int>{Int(2)});
        REQUIRE(!is_isomorphism(f));
    }
    SECTION("projection Z/4 -> Z/2") {
        ModuleMorphism<Int> f{z_mod(4), z_mod(2), zmat({{1}})};
        auto ker = morphism_kernel(f);
        REQUIRE(ker.module.free_rank == 0);
        REQUIRE(ker.module.invariant_factors == std::vector<Int>{Int(2)});
        REQUIRE(morphism_cokernel(f).is_zero());
    }
    SECTION("short exact sequence Z -> Z -> Z/2") {
        ModuleMorphism<Int> f{free_z, free_z, zmat({{2}})};
        ModuleMorphism<Int> g{free_z, z_mod(2), zmat({{1}})};
        REQUIRE(is_exact_at(f, g));
        ModuleMorphism<Int> f4{free_z, free_z, zmat({{4}})};
        REQUIRE(!is_exact_at(f4, g));
    }
    SECTION("identity is an isomorphism between equal presentations") {
        ModuleMorphism<Int> id{z_mod(6), z_mod(6), zmat({{1}})};
        REQUIRE(is_isomorphism(id));
        REQUIRE(morphisms_equal(id, ModuleMorphism<Int>{z_mod(6), z_mod(6), zmat({{7}})}));
    }
}

TEST_CASE("induced maps on subquotients") {
    Mat<Int> cycles = zmat({{1, 0}, {0, 1}, {0, 0}});
    Mat<Int> boundaries = zmat({{2}, {0}, {0}});
    auto src = subquotient(cycles, boundaries);
    auto tgt = subquotient(cycles, boundaries);

    SECTION("ambient identity induces the identity") {
        auto f = induced_map_on_subquotients(Mat<Int>(Mat<Int>::Identity(3, 3)), src, tgt);
        REQUIRE(mat_equal(f.matrix, Mat<Int>(Mat<Int>::Identity(2, 2))));
        REQUIRE(is_isomorphism(f));
    }
    SECTION("maps that break the cycle span are rejected") {
        Mat<Int> bad = Mat<Int>::Zero(3, 3);
        bad(2, 0) = 1;
        REQUIRE_THROWS_AS(induced_map_on_subquotients(bad, src, tgt), std::invalid_argument);
    }
    SECTION("morphism equality holds modulo the target relations") {
        Mat<Int> shift = Mat<Int>::Identity(3, 3);
        auto f = induced_map_on_subquotients(shift, src, tgt);
        ModuleMorphism<Int> g = f;
        g.matrix(0, 0) += 2; /* differs by the relation 2 * generator 0 */
        REQUIRE(morphisms_equal(f, g));
        g.matrix(1, 1) += 1;
        REQUIRE(!morphisms_equal(f, g));
    }
}

TEST_CASE("matrix dimension cap") {
    setenv("DIHOM_MAX_MATRIX", "4", 1);
    Mat<Int> big = Mat<Int>::Zero(5, 5);
    REQUIRE_THROWS_AS(smith_normal_form(big), std::length_error);
    unsetenv("DIHOM_MAX_MATRIX");
    REQUIRE_NOTHROW(smith_normal_form(big));
}
