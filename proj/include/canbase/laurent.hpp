#pragma once

// Exact Laurent polynomials over the integers: the coefficient ring for all
// basis computations.  Coefficients are arbitrary precision (cpp_int), the
// q -> q^{-1} involution is `bar`, and `solve_skew` is the one-step engine
// behind every triangular bar-invariant basis solve.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "canbase/common.hpp"

namespace canbase {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long c) {  // NOLINT: implicit for literals like p + 1
        if (c != 0) coeffs_[0] = c;
    }
    explicit LaurentPoly(Int c) {
        if (c != 0) coeffs_[0] = std::move(c);
    }

    static LaurentPoly monomial(Int c, int e) {
        LaurentPoly p;
        if (c != 0) p.coeffs_[e] = std::move(c);
        return p;
    }
    // q^e
    static LaurentPoly q(int e = 1) { return monomial(1, e); }

    bool is_zero() const { return coeffs_.empty(); }
    int num_terms() const { return static_cast<int>(coeffs_.size()); }

    // exponent range; only valid on nonzero polynomials
    int min_exp() const { return coeffs_.begin()->first; }
    int max_exp() const { return coeffs_.rbegin()->first; }

    Int coeff(int e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? Int(0) : it->second;
    }
    Int constant_term() const { return coeff(0); }

    const std::map<int, Int>& terms() const { return coeffs_; }

    void add_term(int e, const Int& c) {
        if (c == 0) return;
        Int& slot = coeffs_[e];
        slot += c;
        if (slot == 0) coeffs_.erase(e);
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    // multiply by q^e
    LaurentPoly shifted(int e) const {
        LaurentPoly r;
        for (const auto& [ea, c] : coeffs_) r.coeffs_[ea + e] = c;
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs_ < b.coeffs_;
    }

    // Canonical text form: terms in increasing exponent order, e.g.
    // "2q^-1 + 3 + q^2"; the zero polynomial prints as "0".
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            Int a = c;
            if (first) {
                if (a < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            first = false;
            if (e == 0) {
                out += a.str();
            } else {
                if (a != 1) out += a.str();
                out += "q";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

    static LaurentPoly parse(const std::string& text);

    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
        return os << p.to_string();
    }

private:
    // invariant: no zero values stored; empty map is the zero polynomial
    std::map<int, Int> coeffs_;
};

// The bar involution q -> q^{-1}.
inline LaurentPoly bar(const LaurentPoly& p) {
    LaurentPoly r;
    for (const auto& [e, c] : p.terms()) r.add_term(-e, c);
    return r;
}

// Unique p in qZ[q] with p - bar(p) = d, for skew input d (bar(d) = -d with
// zero constant term).  Concretely the strictly-positive-exponent part of d.
inline LaurentPoly solve_skew(const LaurentPoly& d) {
    if (d.constant_term() != 0)
        throw ConstantTermObstruction("solve_skew: nonzero constant term in d = " + d.to_string());
    if (bar(d) != -d) throw SkewViolation("solve_skew: bar(d) != -d for d = " + d.to_string());
    LaurentPoly p;
    for (const auto& [e, c] : d.terms())
        if (e > 0) p.add_term(e, c);
    return p;
}

// Membership in N[q]: all coefficients >= 0 and all exponents >= 0.
inline bool is_nonneg(const LaurentPoly& p) {
    for (const auto& [e, c] : p.terms())
        if (e < 0 || c < 0) return false;
    return true;
}

// Exact division in Z[q, q^{-1}]; nullopt when b does not divide a.
inline std::optional<LaurentPoly> try_divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return LaurentPoly();
    // Shift both to ordinary polynomials and divide over Q; divisibility in
    // the Laurent ring ignores powers of q.
    const int sa = a.min_exp(), sb = b.min_exp();
    const int da = a.max_exp() - sa, db = b.max_exp() - sb;
    if (da < db) return std::nullopt;
    std::vector<Rational> rem(da + 1), quo(da - db + 1);
    for (const auto& [e, c] : a.terms()) rem[e - sa] = Rational(c);
    std::vector<Rational> div(db + 1);
    for (const auto& [e, c] : b.terms()) div[e - sb] = Rational(c);
    for (int k = da - db; k >= 0; --k) {
        Rational f = rem[k + db] / div[db];
        quo[k] = f;
        if (f != 0)
            for (int j = 0; j <= db; ++j) rem[k + j] -= f * div[j];
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    LaurentPoly result;
    for (int k = 0; k < static_cast<int>(quo.size()); ++k) {
        if (quo[k] == 0) continue;
        if (denominator(quo[k]) != 1) return std::nullopt;
        result.add_term(k + sa - sb, numerator(quo[k]));
    }
    return result;
}

inline LaurentPoly LaurentPoly::parse(const std::string& text) {
    LaurentPoly result;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i == text.size()) throw Error("empty polynomial text");
    bool first = true;
    while (i < text.size()) {
        skip_ws();
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw Error("expected '+' or '-' in polynomial text: " + text);
        }
        first = false;
        Int coeff = 1;
        bool saw_digits = false;
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
        if (!digits.empty()) {
            coeff = Int(digits);
            saw_digits = true;
        }
        int exp = 0;
        skip_ws();
        if (i < text.size() && text[i] == 'q') {
            ++i;
            exp = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                int esign = 1;
                if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
                    if (text[i] == '-') esign = -1;
                    ++i;
                }
                std::string edigits;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) edigits += text[i++];
                if (edigits.empty()) throw Error("missing exponent in polynomial text: " + text);
                exp = esign * std::stoi(edigits);
            }
        } else if (!saw_digits) {
            throw Error("malformed term in polynomial text: " + text);
        }
        result.add_term(exp, sign * coeff);
        skip_ws();
    }
    return result;
}

}  // namespace canbase
