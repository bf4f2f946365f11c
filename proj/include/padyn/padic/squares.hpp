#pragma once

#include <cstdint>
#include <optional>

#include <gmpxx.h>

#include "padyn/error.hpp"
#include "padyn/padic/rational.hpp"
#include "padyn/padic/truncated.hpp"

namespace padyn {

/// Whether a nonzero rational is a square in Q_p: even valuation, and the unit
/// part is a quadratic residue mod p (odd p) or congruent to 1 mod 8 (p = 2).
inline bool is_square(const Rational& x, const Prime& p) {
    if (x == 0) throw InvalidInput("is_square: zero is handled by the caller");
    if (valuation(x, p).value() % 2 != 0) return false;
    Rational u = unit_part(x, p);
    // n/m is a square iff n*m is.
    Integer nm = u.get_num() * u.get_den();
    if (p.is_two()) {
        Integer r = nm % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    Integer pz(p.value());
    return mpz_legendre(nm.get_mpz_t(), pz.get_mpz_t()) == 1;
}

inline bool is_square(const PadicRational& x) { return is_square(x.value(), x.prime()); }

/// The nonnegative square root of x when x is the square of a rational.
inline std::optional<Rational> exact_rational_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    if (mpz_perfect_square_p(x.get_num().get_mpz_t()) == 0 || mpz_perfect_square_p(x.get_den().get_mpz_t()) == 0) {
        return std::nullopt;
    }
    Integer num, den;
    mpz_sqrt(num.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_sqrt(den.get_mpz_t(), x.get_den().get_mpz_t());
    return Rational(num, den);
}

namespace detail {

/// Square root of a quadratic residue n modulo an odd prime (Tonelli-Shanks).
inline Integer sqrt_mod_prime(const Integer& n, const Prime& p) {
    Integer pz(p.value());
    Integer a = n % pz;
    if (a < 0) a += pz;
    Integer q = pz - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);

    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), pz.get_mpz_t()) != -1) ++z;

    Integer m = s, c, t, r, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
    while (t != 1) {
        unsigned long i = 0;
        Integer t2 = t;
        while (t2 != 1) {
            t2 = (t2 * t2) % pz;
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + 1 + i < m.get_ui(); ++j) b = (b * b) % pz;
        m = i;
        c = (b * b) % pz;
        t = (t * c) % pz;
        r = (r * b) % pz;
    }
    return r;
}

}  // namespace detail

/**
 * A square root of x in Q_p to `precision` significant digits.
 *
 * Sign convention: for odd p the root with leading digit d0 in
 * {1, ..., (p-1)/2}; for p = 2 the root congruent to 1 mod 4.
 */
inline TruncatedPadic hensel_sqrt(const Rational& x, const Prime& p, std::int64_t precision) {
    if (precision < 1) throw InvalidInput("hensel_sqrt: precision must be at least 1");
    if (x == 0) throw InvalidInput("hensel_sqrt: zero has no unit square root");
    if (!is_square(x, p)) throw InvalidInput("hensel_sqrt: " + x.get_str() + " is not a square in Q_" +
                                             std::to_string(p.value()));
    std::int64_t half = valuation(x, p).value() / 2;
    Rational u = unit_part(x, p);

    Integer root;
    if (p.is_two()) {
        // s^2 = u mod 2^(k) lifts to mod 2^(k+1) by adding 2^(k-1) when needed; s stays 1 mod 4.
        std::int64_t top = precision + 1;
        Integer target = residue(u, p.power(std::max<std::int64_t>(top, 3)));
        root = 1;
        for (std::int64_t k = 3; k < top; ++k) {
            Integer diff = root * root - target;
            if (mpz_tstbit(diff.get_mpz_t(), static_cast<mp_bitcnt_t>(k))) {
                Integer step;
                mpz_ui_pow_ui(step.get_mpz_t(), 2, static_cast<unsigned long>(k - 1));
                root += step;
            }
        }
        root %= p.power(precision);
    } else {
        Integer modulus = p.power(precision);
        Integer target = residue(u, modulus);
        root = detail::sqrt_mod_prime(target, p);
        // Newton steps s <- s - (s^2 - u) / (2s), doubling the correct digits.
        for (std::int64_t digits = 1; digits < precision;) {
            digits = std::min(precision, digits * 2);
            Integer mod = p.power(digits);
            Integer inv, twice = 2 * root;
            mpz_invert(inv.get_mpz_t(), twice.get_mpz_t(), mod.get_mpz_t());
            root = (root - (root * root - target) * inv) % mod;
            if (root < 0) root += mod;
        }
        Integer pz(p.value());
        Integer d0 = root % pz;
        if (d0 > (pz - 1) / 2) root = modulus - root;
    }
    return TruncatedPadic::from_unit(p, half, root, precision);
}

inline TruncatedPadic hensel_sqrt(const PadicRational& x, std::int64_t precision) {
    return hensel_sqrt(x.value(), x.prime(), precision);
}

}  // namespace padyn
