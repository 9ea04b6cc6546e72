// Exact scalars: a prime field with runtime modulus and a checked 64-bit
// rational. Both plug into Eigen dense matrices.
#pragma once

#include <cstdint>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace preproj {

/// Prime field F_p with a process-wide modulus (default 32003).
///
/// The modulus is runtime state so the CLI's --field flag can pick any odd
/// prime > 3 without recompiling. All instances in a process share it.
struct Fp {
    uint32_t v = 0;

    static uint32_t& modulus() {
        static uint32_t p = 32003;
        return p;
    }
    static void set_modulus(uint32_t p) {
        if (p < 5 || !is_prime(p))
            throw std::invalid_argument("field modulus must be a prime > 3, got " + std::to_string(p));
        modulus() = p;
    }
    static bool is_prime(uint64_t n) {
        if (n < 2) return false;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    Fp() = default;
    Fp(long long x) {
        long long p = modulus();
        long long r = x % p;
        if (r < 0) r += p;
        v = static_cast<uint32_t>(r);
    }
    Fp(int x) : Fp(static_cast<long long>(x)) {}

    static Fp from_raw(uint32_t r) { Fp x; x.v = r; return x; }

    bool is_zero() const { return v == 0; }

    friend Fp operator+(Fp a, Fp b) {
        uint32_t s = a.v + b.v;
        if (s >= modulus()) s -= modulus();
        return from_raw(s);
    }
    friend Fp operator-(Fp a, Fp b) {
        uint32_t s = a.v >= b.v ? a.v - b.v : a.v + modulus() - b.v;
        return from_raw(s);
    }
    friend Fp operator-(Fp a) { return a.v == 0 ? a : from_raw(modulus() - a.v); }
    friend Fp operator*(Fp a, Fp b) {
        return from_raw(static_cast<uint32_t>(uint64_t(a.v) * b.v % modulus()));
    }
    Fp inv() const {
        if (v == 0) throw std::domain_error("Fp: division by zero");
        // Fermat: p is prime.
        uint64_t base = v, r = 1, e = modulus() - 2, p = modulus();
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return from_raw(static_cast<uint32_t>(r));
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }
    Fp& operator/=(Fp o) { return *this = *this / o; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

    /// Square root via p ≡ 3 (mod 4) shortcut or Tonelli–Shanks; empty if non-residue.
    bool sqrt(Fp& out) const {
        uint64_t p = modulus();
        if (v == 0) { out = Fp(0); return true; }
        auto pw = [&](uint64_t b, uint64_t e) {
            uint64_t r = 1;
            b %= p;
            while (e) { if (e & 1) r = r * b % p; b = b * b % p; e >>= 1; }
            return r;
        };
        if (pw(v, (p - 1) / 2) != 1) return false;
        if (p % 4 == 3) { out = from_raw(static_cast<uint32_t>(pw(v, (p + 1) / 4))); return true; }
        // Tonelli–Shanks
        uint64_t q = p - 1, s = 0;
        while (q % 2 == 0) { q /= 2; ++s; }
        uint64_t z = 2;
        while (pw(z, (p - 1) / 2) == 1) ++z;
        uint64_t m = s, c = pw(z, q), t = pw(v, q), r = pw(v, (q + 1) / 2);
        while (t != 1) {
            uint64_t i = 0, tt = t;
            while (tt != 1) { tt = tt * tt % p; ++i; }
            uint64_t b = pw(c, uint64_t(1) << (m - i - 1));
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        out = from_raw(static_cast<uint32_t>(r));
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v; }
};

/// Exact rational on 64-bit numerator/denominator. Intermediate products go
/// through 128 bits; anything that would not fit back throws OverflowError.
/// Slow fallback only, per the acceptance setup everything hot runs over Fp.
struct Rat {
    long long n = 0, d = 1;

    struct OverflowError : std::runtime_error {
        OverflowError() : std::runtime_error("Rat: 64-bit overflow") {}
    };

    Rat() = default;
    Rat(long long num) : n(num), d(1) {}
    Rat(int num) : n(num), d(1) {}
    Rat(long long num, long long den) : n(num), d(den) { normalize(); }

    static long long narrow(__int128 x) {
        if (x > INT64_MAX || x < INT64_MIN) throw OverflowError{};
        return static_cast<long long>(x);
    }
    void normalize() {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
    }
    static Rat make(__int128 num, __int128 den) {
        if (den < 0) { num = -num; den = -den; }
        __int128 a = num < 0 ? -num : num, b = den, g = 1;
        while (b) { __int128 t = a % b; a = b; b = t; }
        g = a ? a : 1;
        Rat r;
        r.n = narrow(num / g);
        r.d = narrow(den / g);
        if (r.d == 0) throw std::domain_error("Rat: zero denominator");
        return r;
    }

    bool is_zero() const { return n == 0; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(__int128(a.n) * b.d + __int128(b.n) * a.d, __int128(a.d) * b.d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(__int128(a.n) * b.d - __int128(b.n) * a.d, __int128(a.d) * b.d);
    }
    friend Rat operator-(const Rat& a) { Rat r; r.n = -a.n; r.d = a.d; return r; }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(__int128(a.n) * b.n, __int128(a.d) * b.d);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.n == 0) throw std::domain_error("Rat: division by zero");
        return make(__int128(a.n) * b.d, __int128(a.d) * b.n);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }
    Rat inv() const { return Rat(1) / *this; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.n == b.n && a.d == b.d; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return __int128(a.n) * b.d < __int128(b.n) * a.d;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }
    friend Rat abs(const Rat& a) { return a.n < 0 ? -a : a; }
    bool sqrt(Rat&) const { return false; }  // not needed over Q

    friend std::ostream& operator<<(std::ostream& os, const Rat& a) {
        os << a.n;
        if (a.d != 1) os << '/' << a.d;
        return os;
    }
};

}  // namespace preproj

namespace Eigen {
template <>
struct NumTraits<preproj::Fp> : GenericNumTraits<preproj::Fp> {
    typedef preproj::Fp Real;
    typedef preproj::Fp NonInteger;
    typedef preproj::Fp Nested;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline int digits10() { return 0; }
};
template <>
struct NumTraits<preproj::Rat> : GenericNumTraits<preproj::Rat> {
    typedef preproj::Rat Real;
    typedef preproj::Rat NonInteger;
    typedef preproj::Rat Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 8
    };
    static inline int digits10() { return 0; }
};
}  // namespace Eigen
