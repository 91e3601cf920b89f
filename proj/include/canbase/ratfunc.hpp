#pragma once

// Fraction field of the Laurent ring, plus the dense exact linear algebra
// used by the intertwiner and module-span solves.  Normalization is lazy:
// no polynomial gcd, just exponent shifts, integer content, and a cheap
// exact-division collapse; equality is by cross multiplication.

#include <functional>
#include <optional>
#include <vector>

#include "canbase/laurent.hpp"

namespace canbase {

class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}  // NOLINT
    RatFunc(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
    RatFunc(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw Error("RatFunc: zero denominator");
        normalize();
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_ == LaurentPoly(1); }

    LaurentPoly to_laurent() const {
        if (is_laurent()) return num_;
        auto d = try_divide_exact(num_, den_);
        if (!d) throw NonLaurentCoefficient("not Laurent-integral: (" + num_.to_string() + ") / (" + den_.to_string() + ")");
        return *d;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw Error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inverse() const {
        if (is_zero()) throw Error("RatFunc: inverse of zero");
        return RatFunc(den_, num_);
    }

    // equality by cross multiplication; no canonical form required
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // bar extends to the fraction field entrywise
    friend RatFunc bar(const RatFunc& f) { return RatFunc(bar(f.num_), bar(f.den_)); }

    std::string to_string() const {
        if (is_laurent()) return num_.to_string();
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = LaurentPoly(1);
            return;
        }
        if (den_ == LaurentPoly(1)) return;
        // shift so the denominator is an ordinary polynomial with nonzero
        // constant term; a power of q is a unit
        int shift = -den_.min_exp();
        if (shift != 0) {
            num_ = num_.shifted(shift);
            den_ = den_.shifted(shift);
        }
        Int g = 0;
        for (const auto& [e, c] : num_.terms()) g = boost::multiprecision::gcd(g, c);
        for (const auto& [e, c] : den_.terms()) g = boost::multiprecision::gcd(g, c);
        if (den_.terms().begin()->second < 0) g = -g;
        if (g != 0 && g != 1) {
            num_ = *try_divide_exact(num_, LaurentPoly(g));
            den_ = *try_divide_exact(den_, LaurentPoly(g));
        }
        if (auto d = try_divide_exact(num_, den_)) {
            num_ = *d;
            den_ = LaurentPoly(1);
        }
    }

    LaurentPoly num_, den_;
};

// ---------------------------------------------------------------------------
// dense linear algebra over the fraction field

using RatMatrix = std::vector<std::vector<RatFunc>>;

// In-place reduced row echelon form; returns pivot column of each pivot row.
inline std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[r], m[sel]);
        RatFunc inv = m[r][c].inverse();
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            RatFunc f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Solve A x = b exactly.  Returns nullopt when inconsistent; throws
// NonUniqueSolution when underdetermined.
inline std::optional<std::vector<RatFunc>> solve_linear(const RatMatrix& a,
                                                        const std::vector<RatFunc>& b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    RatMatrix aug(rows, std::vector<RatFunc>(cols + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots = rref(aug);
    for (int i = static_cast<int>(pivots.size()); i < rows; ++i)
        if (!aug[i][cols].is_zero()) return std::nullopt;
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // pivot in rhs
    if (static_cast<int>(pivots.size()) < cols)
        throw NonUniqueSolution("linear system is underdetermined");
    std::vector<RatFunc> x(cols);
    for (int i = 0; i < cols; ++i) x[pivots[i] == i ? i : pivots[i]] = aug[i][cols];
    return x;
}

// Sparse exact elimination for larger, mostly-empty systems.  Rows are
// (coefficients, rhs); returns the unique solution, nullopt when
// inconsistent, and throws NonUniqueSolution when underdetermined.
using SparseRow = std::pair<std::map<int, RatFunc>, RatFunc>;

inline std::optional<std::vector<RatFunc>> solve_sparse(int width, std::vector<SparseRow> rows) {
    std::map<int, SparseRow> echelon;  // pivot column -> row normalized to 1 there
    for (auto& row : rows) {
        auto& coeffs = row.first;
        auto& rhs = row.second;
        for (auto it = coeffs.begin(); it != coeffs.end();)
            it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
        bool placed = false;
        while (!coeffs.empty()) {
            const int p = coeffs.begin()->first;
            auto it = echelon.find(p);
            if (it == echelon.end()) {
                RatFunc inv = coeffs.begin()->second.inverse();
                for (auto& [j, c] : coeffs) c *= inv;
                rhs *= inv;
                echelon.emplace(p, std::move(row));
                placed = true;
                break;
            }
            RatFunc f = coeffs.begin()->second;
            for (const auto& [j, c] : it->second.first) {
                auto slot = coeffs.find(j);
                if (slot == coeffs.end()) slot = coeffs.emplace(j, RatFunc()).first;
                slot->second -= f * c;
                if (slot->second.is_zero()) coeffs.erase(slot);
            }
            rhs -= f * it->second.second;
        }
        if (!placed && !rhs.is_zero()) return std::nullopt;
    }
    if (static_cast<int>(echelon.size()) < width)
        throw NonUniqueSolution("sparse system is underdetermined");
    std::vector<RatFunc> x(width);
    for (auto it = echelon.rbegin(); it != echelon.rend(); ++it) {
        const int p = it->first;
        RatFunc value = it->second.second;
        for (const auto& [j, c] : it->second.first)
            if (j != p) value -= c * x[j];
        x[p] = value;
    }
    return x;
}

// Row space tracker for span membership / dimension bookkeeping.
class RowSpan {
public:
    explicit RowSpan(int width) : width_(width) {}

    int dim() const { return static_cast<int>(rows_.size()); }

    // Reduce v against the current span; returns the residue.
    std::vector<RatFunc> reduce(std::vector<RatFunc> v) const {
        for (size_t k = 0; k < rows_.size(); ++k) {
            const RatFunc& lead = v[pivot_[k]];
            if (lead.is_zero()) continue;
            RatFunc f = lead;
            for (int j = 0; j < width_; ++j) v[j] -= f * rows_[k][j];
        }
        return v;
    }

    bool contains(const std::vector<RatFunc>& v) const {
        auto res = reduce(v);
        for (const auto& x : res)
            if (!x.is_zero()) return false;
        return true;
    }

    // Returns true when v enlarged the span.
    bool insert(std::vector<RatFunc> v) {
        v = reduce(std::move(v));
        int p = -1;
        for (int j = 0; j < width_; ++j)
            if (!v[j].is_zero()) {
                p = j;
                break;
            }
        if (p < 0) return false;
        RatFunc inv = v[p].inverse();
        for (int j = 0; j < width_; ++j) v[j] *= inv;
        // keep fully reduced: eliminate p from earlier rows
        for (size_t k = 0; k < rows_.size(); ++k) {
            RatFunc f = rows_[k][p];
            if (f.is_zero()) continue;
            for (int j = 0; j < width_; ++j) rows_[k][j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivot_.push_back(p);
        return true;
    }

private:
    int width_;
    std::vector<std::vector<RatFunc>> rows_;
    std::vector<int> pivot_;
};

}  // namespace canbase
