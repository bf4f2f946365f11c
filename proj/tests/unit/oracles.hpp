#pragma once

// Brute-force references that share no code with the library's algorithms.

#include <cstdint>
#include <set>

#include <gmpxx.h>

namespace oracle {

inline std::int64_t count_factor(mpz_class n, long p) {
    std::int64_t k = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

/// v_p by repeated trial division; x != 0.
inline std::int64_t valuation(const mpq_class& x, long p) {
    return count_factor(x.get_num(), p) - count_factor(x.get_den(), p);
}

inline mpz_class pow(long p, unsigned k) {
    mpz_class out = 1;
    for (unsigned i = 0; i < k; ++i) out *= p;
    return out;
}

/// n / d mod m for d invertible mod m (extended Euclid on machine integers).
inline mpz_class residue(const mpq_class& x, const mpz_class& m) {
    long mod = m.get_si();
    long n = mpz_class(x.get_num() % m).get_si();
    long d = mpz_class(x.get_den() % m).get_si();
    long r0 = mod, r1 = d, t0 = 0, t1 = 1;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) return -1;
    long inv = ((t0 % mod) + mod) % mod;
    long out = static_cast<long>((static_cast<__int128>(n) * inv) % mod);
    return out < 0 ? out + mod : out;
}

/// Unit squares modulo p^k, by squaring every unit residue.
inline std::set<long> unit_squares(long p, unsigned k) {
    long m = pow(p, k).get_si();
    std::set<long> out;
    for (long w = 1; w < m; ++w) {
        if (w % p == 0) continue;
        out.insert((w * w) % m);
    }
    return out;
}

/// x is a square in Q_p iff v(x) is even and the unit part is a square mod p^k
/// (any k >= 1 for odd p, k >= 3 for p = 2).
inline bool is_square(const mpq_class& x, long p, unsigned k = 6) {
    std::int64_t v = valuation(x, p);
    if (v % 2 != 0) return false;
    mpq_class unit = x;
    for (std::int64_t i = 0; i < v; ++i) unit /= p;
    for (std::int64_t i = v; i < 0; ++i) unit *= p;
    static thread_local long cached_p = 0;
    static thread_local unsigned cached_k = 0;
    static thread_local std::set<long> squares;
    if (cached_p != p || cached_k != k) {
        squares = unit_squares(p, k);
        cached_p = p;
        cached_k = k;
    }
    return squares.count(residue(unit, pow(p, k)).get_si()) != 0;
}

}  // namespace oracle
