#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "padyn/error.hpp"
#include "padyn/padic/rational.hpp"

namespace padyn {

/// Dense univariate polynomial over Q, coefficients stored lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(Rational coeff, std::size_t degree) {
        std::vector<Rational> c(degree + 1, Rational(0));
        c[degree] = std::move(coeff);
        return Polynomial(std::move(c));
    }
    static Polynomial x() { return monomial(Rational(1), 1); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree, -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        Polynomial out = *this;
        Rational lead = leading();
        for (auto& c : out.coeffs_) c /= lead;
        return out;
    }

    friend Polynomial operator+(const Polynomial& f, const Polynomial& g) {
        std::vector<Rational> c(std::max(f.coeffs_.size(), g.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < f.coeffs_.size(); ++i) c[i] += f.coeffs_[i];
        for (std::size_t i = 0; i < g.coeffs_.size(); ++i) c[i] += g.coeffs_[i];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& f) {
        std::vector<Rational> c = f.coeffs_;
        for (auto& x : c) x = -x;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& f, const Polynomial& g) { return f + (-g); }

    friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
        if (f.is_zero() || g.is_zero()) return {};
        std::vector<Rational> c(f.coeffs_.size() + g.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < f.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < g.coeffs_.size(); ++j) c[i + j] += f.coeffs_[i] * g.coeffs_[j];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Rational& k, const Polynomial& f) { return Polynomial{k} * f; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Quotient and remainder of Euclidean division by a nonzero divisor.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& f, const Polynomial& g) {
        if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
        Polynomial rem = f;
        std::vector<Rational> quot(f.degree() >= g.degree() ? f.degree() - g.degree() + 1 : 0, Rational(0));
        while (!rem.is_zero() && rem.degree() >= g.degree()) {
            std::size_t shift = static_cast<std::size_t>(rem.degree() - g.degree());
            Rational k = rem.leading() / g.leading();
            quot[shift] = k;
            rem = rem - monomial(k, shift) * g;
        }
        return {Polynomial(std::move(quot)), rem};
    }

    /// Monic gcd; gcd(0, 0) = 0.
    friend Polynomial gcd(Polynomial f, Polynomial g) {
        while (!g.is_zero()) {
            Polynomial r = divmod(f, g).second;
            f = std::move(g);
            g = std::move(r);
        }
        return f.monic();
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (long i = degree(); i >= 0; --i) {
            const Rational& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            if (!out.empty()) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "-";
            Rational mag = c < 0 ? Rational(-c) : c;
            if (mag != 1 || i == 0) out += mag.get_str();
            if (i > 0 && mag != 1) out += "*";
            if (i > 0) out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

}  // namespace padyn
