#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace dihom {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/* Element of F_p for a runtime prime p < 2^31.
 *
 * A default- or int-constructed value is "unbound": it remembers the integer
 * but carries no modulus yet.  That lets ring-generic code (and Eigen's own
 * Zero/Identity fills) write K(0), K(1), K(-1) without threading a ring
 * context everywhere.  Unbound values adopt the modulus of the first bound
 * operand they meet; mixing two different moduli throws.
 */
class Fp {
public:
    Fp() = default;
    Fp(int v) : v_(v) {}
    Fp(long v) : v_(v) {}
    Fp(long long v) : v_(v) {}

    static Fp bound(long long v, std::uint32_t p) {
        if (p == 0)
            throw std::invalid_argument("Fp::bound requires a nonzero modulus");
        Fp x;
        x.p_ = p;
        x.v_ = reduce(v, p);
        return x;
    }

    bool is_bound() const { return p_ != 0; }
    std::uint32_t modulus() const { return p_; }

    /* Canonical residue in [0, p) if bound, the raw integer otherwise. */
    long long value() const { return v_; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        std::uint32_t p = join(a.p_, b.p_);
        if (p == 0) return Fp(a.v_ + b.v_);
        return bound(reduce(a.v_, p) + reduce(b.v_, p), p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        std::uint32_t p = join(a.p_, b.p_);
        if (p == 0) return Fp(a.v_ - b.v_);
        return bound(reduce(a.v_, p) - reduce(b.v_, p), p);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        std::uint32_t p = join(a.p_, b.p_);
        if (p == 0) return Fp(a.v_ * b.v_);
        unsigned long long prod = (unsigned long long)reduce(a.v_, p) * (unsigned long long)reduce(b.v_, p);
        return bound((long long)(prod % p), p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) {
        if (!b.is_bound()) {
            if (b.v_ == 1) return a;
            if (b.v_ == -1) return -a;
            if (b.v_ == 0) throw std::domain_error("Fp division by zero");
            throw std::domain_error("Fp division by an unbound non-unit literal");
        }
        std::uint32_t p = join(a.p_, b.p_);
        long long bv = reduce(b.v_, p);
        if (bv == 0) throw std::domain_error("Fp division by zero");
        unsigned long long prod = (unsigned long long)reduce(a.v_, p) * (unsigned long long)inverse(bv, p);
        return bound((long long)(prod % p), p);
    }
    friend Fp operator-(const Fp& a) {
        if (!a.is_bound()) return Fp(-a.v_);
        return bound(-a.v_, a.p_);
    }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        std::uint32_t p = join(a.p_, b.p_);
        if (p == 0) return a.v_ == b.v_;
        return reduce(a.v_, p) == reduce(b.v_, p);
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

private:
    static std::uint32_t join(std::uint32_t a, std::uint32_t b) {
        if (a != 0 && b != 0 && a != b)
            throw std::invalid_argument("Fp modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
        return a != 0 ? a : b;
    }
    static long long reduce(long long v, std::uint32_t p) {
        long long r = v % (long long)p;
        return r < 0 ? r + (long long)p : r;
    }
    /* Inverse of v mod p by extended Euclid; v in [1, p). */
    static long long inverse(long long v, std::uint32_t p) {
        long long t = 0, nt = 1, r = (long long)p, nr = v;
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (r != 1)
            throw std::domain_error("Fp inverse does not exist; modulus is not prime or value is zero");
        return t < 0 ? t + (long long)p : t;
    }

    long long v_ = 0;
    std::uint32_t p_ = 0;
};

inline std::string scalar_to_string(const Int& x) { return x.str(); }
inline std::string scalar_to_string(const Rat& x) {
    if (boost::multiprecision::denominator(x) == 1)
        return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}
inline std::string scalar_to_string(const Fp& x) { return std::to_string(x.value()); }

/* Per-ring operations the elimination code needs beyond plain arithmetic. */
template <class K> struct ring_traits;

template <> struct ring_traits<Int> {
    static constexpr bool is_field = false;
    static constexpr bool has_abs = true;
    static bool is_unit(const Int& x) { return x == 1 || x == -1; }
    static Int quot(const Int& a, const Int& b) { return a / b; }
    static Int rem(const Int& a, const Int& b) { return a % b; }
    static bool abs_less(const Int& a, const Int& b) {
        return boost::multiprecision::abs(a) < boost::multiprecision::abs(b);
    }
    /* Multiplying x by this unit yields the canonical associate (>= 0). */
    static Int canonical_unit(const Int& x) { return x < 0 ? Int(-1) : Int(1); }
};

template <> struct ring_traits<Rat> {
    static constexpr bool is_field = true;
    static constexpr bool has_abs = true;
    static bool is_unit(const Rat& x) { return x != 0; }
    static Rat quot(const Rat& a, const Rat& b) { return a / b; }
    static Rat rem(const Rat&, const Rat&) { return Rat(0); }
    static bool abs_less(const Rat& a, const Rat& b) {
        return boost::multiprecision::abs(a) < boost::multiprecision::abs(b);
    }
    static Rat canonical_unit(const Rat& x) { return Rat(1) / x; }
};

template <> struct ring_traits<Fp> {
    static constexpr bool is_field = true;
    static constexpr bool has_abs = false;
    static bool is_unit(const Fp& x) { return x != Fp(0); }
    static Fp quot(const Fp& a, const Fp& b) { return a / b; }
    static Fp rem(const Fp&, const Fp&) { return Fp(0); }
    static Fp canonical_unit(const Fp& x) { return Fp(1) / x; }
};

/* Runtime choice of coefficient ring: Z, Q, or F_p with p prime, p < 2^31. */
struct RingSpec {
    enum class Kind { integers, rationals, prime_field };
    Kind kind = Kind::integers;
    std::uint32_t prime = 0;

    static RingSpec integers() { return {Kind::integers, 0}; }
    static RingSpec rationals() { return {Kind::rationals, 0}; }
    static RingSpec prime_field(std::uint32_t p) {
        if (!is_prime(p))
            throw std::invalid_argument("fp modulus must be a prime below 2^31, got " + std::to_string(p));
        return {Kind::prime_field, p};
    }

    /* Accepts "z", "q", or "fp:P". */
    static std::optional<RingSpec> parse(const std::string& s) {
        if (s == "z" || s == "Z") return integers();
        if (s == "q" || s == "Q") return rationals();
        if (s.rfind("fp:", 0) == 0) {
            const std::string digits = s.substr(3);
            if (digits.empty() || digits.size() > 10) return std::nullopt;
            unsigned long long v = 0;
            for (char c : digits) {
                if (c < '0' || c > '9') return std::nullopt;
                v = v * 10 + (unsigned long long)(c - '0');
                if (v >= (1ULL << 31)) return std::nullopt;
            }
            if (!is_prime((std::uint32_t)v)) return std::nullopt;
            return prime_field((std::uint32_t)v);
        }
        return std::nullopt;
    }

    std::string name() const {
        switch (kind) {
        case Kind::integers: return "z";
        case Kind::rationals: return "q";
        default: return "fp:" + std::to_string(prime);
        }
    }

    static bool is_prime(std::uint32_t p) {
        if (p < 2) return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }
};

/* Builds a scalar of type K representing the integer v in the given ring. */
template <class K> K make_scalar(const RingSpec&, long long v);
template <> inline Int make_scalar<Int>(const RingSpec&, long long v) { return Int(v); }
template <> inline Rat make_scalar<Rat>(const RingSpec&, long long v) { return Rat(v); }
template <> inline Fp make_scalar<Fp>(const RingSpec& r, long long v) {
    if (r.kind != RingSpec::Kind::prime_field)
        throw std::invalid_argument("Fp scalar requested for a non-prime-field ring");
    return Fp::bound(v, r.prime);
}

}

namespace Eigen {

template <> struct NumTraits<dihom::Fp> {
    typedef dihom::Fp Real;
    typedef dihom::Fp NonInteger;
    typedef dihom::Fp Literal;
    typedef dihom::Fp Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 3,
        MulCost = 9
    };
    static inline Real epsilon() { return dihom::Fp(0); }
    static inline Real dummy_precision() { return dihom::Fp(0); }
    static inline int digits10() { return 0; }
};

}
