#pragma once

// Tensor space for the quantum group of sl(n+1): the actions of E_i, F_i,
// K_i^{+-1} on V^{(x)m} through the coproduct, the coideal generators of the
// two quasi-split AIII/AIV families (bw13 and bao17 parameter sets), the
// type A and type B Hecke actions, the bar involutions psi and
// psi_iota = Upsilon o psi, and the canonical / iota-canonical bases.
// Wedge powers and tensors of wedges are realized as quotients of an ambient
// pure tensor space along the based projection pi.
//
// Scalars in constructed bases are Laurent-integral and kept as LaurentPoly
// columns; the fraction field only appears inside the intertwiner and module
// span solves.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "canbase/barsolve.hpp"
#include "canbase/hecke.hpp"
#include "canbase/ratfunc.hpp"

namespace canbase {

enum class Variant { bw13, bao17 };

inline std::string to_string(Variant v) { return v == Variant::bw13 ? "bw13" : "bao17"; }

using Word = std::vector<int>;      // letters in 1..n+1
using OpCols = std::vector<Column>; // sparse operator, one column per word

struct ModuleDescriptor {
    int n = 1;
    std::vector<int> factors;  // factor sizes: 1 for V, k for the k-th wedge power
    Variant variant = Variant::bw13;

    std::string factors_string() const {
        std::string out;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) out += ",";
            out += factors[i] == 1 ? "V" : ("wedge" + std::to_string(factors[i]));
        }
        return out;
    }
};

inline Column apply_op(const OpCols& op, const Column& v) {
    Column out;
    for (const auto& [j, c] : v) add_scaled(out, c, op[j]);
    return out;
}

inline std::string word_string(const Word& w) {
    bool wide = false;
    for (int x : w)
        if (x > 9) wide = true;
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (wide && i) out += ".";
        out += std::to_string(w[i]);
    }
    return out.empty() ? "()" : out;
}

class Space {
public:
    // Shared per-(n, factors) contexts; variant-dependent data is cached per
    // variant inside.  wedge(k) requires 1 <= k <= n.
    static const Space& get(int n, const std::vector<int>& factors) {
        static std::map<std::pair<int, std::vector<int>>, std::unique_ptr<Space>> registry;
        auto key = std::make_pair(n, factors);
        auto it = registry.find(key);
        if (it == registry.end())
            it = registry.emplace(key, std::unique_ptr<Space>(new Space(n, factors))).first;
        return *it->second;
    }
    static const Space& get(const ModuleDescriptor& d) { return get(d.n, d.factors); }

    int n() const { return n_; }
    int letters() const { return n_ + 1; }
    int ambient_length() const { return m_; }
    const std::vector<int>& factors() const { return factors_; }
    bool pure() const { return pure_; }
    int dim() const { return static_cast<int>(words_.size()); }

    const std::vector<Word>& words() const { return words_; }
    const Word& word(int i) const { return words_[i]; }
    int index_of(const Word& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) throw InternalError("word is not a basis index of this space");
        return it->second;
    }

    const Space& ambient() const { return pure_ ? *this : Space::get(n_, std::vector<int>(m_, 1)); }

    // letter multiplicity vector, the sl(n+1) weight of a basis word
    const std::vector<int>& weight(int i) const { return weights_[i]; }
    int weight_class(int i) const { return weight_class_[i]; }
    int inversions(int i) const { return inv_[i]; }
    // depth: sum of letters; each weight-lowering step raises it by one
    int depth(int i) const { return depth_[i]; }

    static bool dominance_less(const std::vector<int>& mu, const std::vector<int>& la) {
        if (mu == la) return false;
        int diff = 0;
        for (size_t k = 0; k + 1 < mu.size(); ++k) {
            diff += la[k] - mu[k];
            if (diff < 0) return false;
        }
        return true;
    }

    // --- quantum group generators -------------------------------------------------

    const OpCols& op_e(int i) const { return cached_op(ops_e_, i, [&](int j) { return build_e(j); }); }
    const OpCols& op_f(int i) const { return cached_op(ops_f_, i, [&](int j) { return build_f(j); }); }
    const OpCols& op_k(int i, int sign) const {
        auto& store = sign > 0 ? ops_kp_ : ops_km_;
        return cached_op(store, i, [&](int j) { return build_k(j, sign); });
    }

    // coideal generators B_i and the Cartan elements K_i K_{n+1-i}^{-1}
    const OpCols& op_iota_b(int i, Variant v) const;
    const OpCols& op_iota_b_bar(int i, Variant v) const;  // psi applied to the defining expression
    const OpCols& op_iota_cartan(int i) const;
    const OpCols& op_iota_cartan_inv(int i) const;

    // --- Hecke actions (pure tensor spaces only) -----------------------------------

    const OpCols& op_hecke_a(int i) const;
    const OpCols& op_hecke_b0(Variant v) const;
    // the solved matrix of H_0 on V; entry (r, c) is the v_{r+1}-coefficient
    // of v_{c+1} . H_0; memoized per (n, variant)
    static const std::vector<std::vector<LaurentPoly>>& solve_h0(int n, Variant v);
    static bool h0_cached(int n, Variant v) { return h0_registry().count({n, static_cast<int>(v)}) != 0; }
    static void preload_h0(int n, Variant v, std::vector<std::vector<LaurentPoly>> t0) {
        h0_registry().emplace(std::make_pair(n, static_cast<int>(v)), std::move(t0));
    }

    // --- bar involutions ------------------------------------------------------------

    const Column& psi_of_word(int i) const;
    Column psi(const Column& x) const {
        Column out;
        for (const auto& [i, c] : x) add_scaled(out, bar(c), psi_of_word(i));
        return out;
    }

    const OpCols& upsilon(Variant v) const;
    bool upsilon_cached(Variant v) const { return upsilon_.count(static_cast<int>(v)) != 0; }
    void preload_upsilon(Variant v, OpCols t) const { upsilon_.emplace(static_cast<int>(v), std::move(t)); }
    Column psi_iota(const Column& x, Variant v) const { return apply_op(upsilon(v), psi(x)); }

    // --- bases ------------------------------------------------------------------------

    // canonical basis over the standard basis (unitriangular, qZ[q] below)
    const std::vector<Column>& canonical() const;
    // iota-canonical basis over the canonical basis
    const std::vector<Column>& iota_over_canonical(Variant v) const;
    std::vector<Column> iota_over_standard(Variant v) const {
        const auto& rel = iota_over_canonical(v);
        const auto& can = canonical();
        std::vector<Column> out(dim());
        for (int b = 0; b < dim(); ++b)
            for (const auto& [g, c] : rel[b]) add_scaled(out[b], c, can[g]);
        return out;
    }

    // triangular expansion over the canonical basis
    Column expand_in_canonical(const Column& x) const {
        const auto& can = canonical();
        return expand_triangular([&](int z) { return &can[z]; },
                                 [&](int z) { return word_rank_[z]; }, x);
    }

    // --- wedge quotient --------------------------------------------------------------

    // image of an ambient word under pi: (target index, coefficient), or
    // nullopt when the word dies in the quotient
    const std::optional<std::pair<int, LaurentPoly>>& pi_image(int ambient_index) const {
        return pi_[ambient_index];
    }
    Column project(const Column& ambient_vec) const {
        Column out;
        for (const auto& [a, c] : ambient_vec) {
            const auto& img = pi_[a];
            if (!img) continue;
            LaurentPoly& slot = out[img->first];
            slot += c * img->second;
            if (slot.is_zero()) out.erase(img->first);
        }
        return out;
    }
    int section_index(int i) const { return section_[i]; }
    Column section(const Column& x) const {
        Column out;
        for (const auto& [i, c] : x) out[section_[i]] = c;
        return out;
    }

private:
    Space(int n, std::vector<int> factors);

    Column unit(int i) const { return {{i, LaurentPoly(1)}}; }

    OpCols build_e(int i) const;
    OpCols build_f(int i) const;
    OpCols build_k(int i, int sign) const;
    OpCols induce(const OpCols& ambient_op) const;
    OpCols compose(const OpCols& a, const OpCols& b) const {  // a after b
        OpCols out(dim());
        for (int j = 0; j < dim(); ++j) out[j] = apply_op(a, b[j]);
        return out;
    }

    // (c, d) in B_i = E_i + c F_{n+1-i} K_i^{-1} + d K_i^{-1}
    std::pair<LaurentPoly, LaurentPoly> iota_coeffs(int i, Variant v) const {
        const bool even = (n_ + 1) % 2 == 0;
        if (even) {
            const int mid = (n_ + 1) / 2;
            LaurentPoly c = i == mid ? LaurentPoly::q(1) : LaurentPoly(1);
            LaurentPoly d = (v == Variant::bw13 && i == mid) ? LaurentPoly(1) : LaurentPoly(0);
            return {c, d};
        }
        const int special = v == Variant::bw13 ? n_ / 2 + 1 : n_ / 2;
        LaurentPoly c = i == special ? LaurentPoly::q(-1) : LaurentPoly(1);
        return {c, LaurentPoly(0)};
    }

    const OpCols& cached_op(std::map<int, OpCols>& store, int i,
                            const std::function<OpCols(int)>& build) const {
        if (i < 1 || i > n_) throw InternalError("generator index out of range");
        auto it = store.find(i);
        if (it == store.end()) it = store.emplace(i, build(i)).first;
        return it->second;
    }

    void solve_upsilon(Variant v) const;

    static std::map<std::pair<int, int>, std::vector<std::vector<LaurentPoly>>>& h0_registry() {
        static std::map<std::pair<int, int>, std::vector<std::vector<LaurentPoly>>> registry;
        return registry;
    }

    int n_, m_;
    std::vector<int> factors_;
    bool pure_;
    std::vector<Word> words_;
    std::map<Word, int> index_;
    std::vector<std::vector<int>> weights_;
    std::vector<int> weight_class_, inv_, depth_;
    std::vector<long long> word_rank_;  // total order: (weight class, inversions, index)
    std::vector<std::optional<std::pair<int, LaurentPoly>>> pi_;
    std::vector<int> section_;

    mutable std::map<int, OpCols> ops_e_, ops_f_, ops_kp_, ops_km_;
    mutable std::map<int, OpCols> ops_cartan_, ops_cartan_inv_;
    mutable std::map<std::pair<int, int>, OpCols> ops_iota_, ops_iota_bar_;  // (variant, i)
    mutable std::map<int, OpCols> ops_hecke_a_;
    mutable std::map<int, OpCols> ops_hecke_b0_;
    mutable std::vector<std::optional<Column>> psi_cache_;
    mutable std::map<int, OpCols> upsilon_;  // by variant
    mutable std::optional<std::vector<Column>> canonical_;
    mutable std::map<int, std::vector<Column>> iota_;  // by variant
};

// ---------------------------------------------------------------------------
// construction

inline Space::Space(int n, std::vector<int> factors) : n_(n), factors_(std::move(factors)) {
    if (n_ < 1) throw Error("rank parameter n must be positive");
    m_ = 0;
    for (int k : factors_) {
        if (k < 1) throw Error("factor size must be positive");
        if (k > n_)
            throw RankTooSmall("wedge(" + std::to_string(k) + ") is zero or degenerate for n = " +
                               std::to_string(n_));
        m_ += k;
    }
    pure_ = true;
    for (int k : factors_)
        if (k != 1) pure_ = false;

    // basis words: strictly increasing inside every wedge segment
    Word cur(m_, 1);
    std::vector<int> seg_of(m_);
    {
        int pos = 0, seg = 0;
        for (int k : factors_) {
            for (int j = 0; j < k; ++j) seg_of[pos++] = seg;
            ++seg;
        }
    }
    auto admissible = [&](const Word& w) {
        for (int p = 1; p < m_; ++p)
            if (seg_of[p] == seg_of[p - 1] && w[p] <= w[p - 1]) return false;
        return true;
    };
    if (m_ == 0) {
        words_.push_back({});
    } else {
        // lexicographic enumeration
        std::vector<int> odo(m_, 1);
        while (true) {
            Word w(odo.begin(), odo.end());
            if (admissible(w)) words_.push_back(w);
            int p = m_ - 1;
            while (p >= 0 && odo[p] == n_ + 1) {
                odo[p] = 1;
                --p;
            }
            if (p < 0) break;
            ++odo[p];
        }
    }
    for (int i = 0; i < dim(); ++i) index_[words_[i]] = i;

    // weights, inversions, depth
    weights_.resize(dim());
    inv_.assign(dim(), 0);
    depth_.assign(dim(), 0);
    for (int i = 0; i < dim(); ++i) {
        std::vector<int> mu(n_ + 1, 0);
        for (int x : words_[i]) {
            mu[x - 1] += 1;
            depth_[i] += x;
        }
        weights_[i] = std::move(mu);
        for (int p = 0; p < m_; ++p)
            for (int r = p + 1; r < m_; ++r)
                if (words_[i][p] > words_[i][r]) ++inv_[i];
    }
    std::map<std::vector<int>, int> classes;
    for (int i = 0; i < dim(); ++i) classes.emplace(weights_[i], 0);
    int next = 0;
    for (auto& [mu, id] : classes) id = next++;
    weight_class_.resize(dim());
    word_rank_.resize(dim());
    const long long stride = static_cast<long long>(m_ * (m_ + 1) / 2 + 2);
    for (int i = 0; i < dim(); ++i) {
        weight_class_[i] = classes[weights_[i]];
        word_rank_[i] = (static_cast<long long>(weight_class_[i]) * stride + inv_[i]) * (dim() + 1) + i;
    }

    // quotient projection data
    if (pure_) {
        pi_.resize(dim());
        section_.resize(dim());
        for (int i = 0; i < dim(); ++i) {
            pi_[i] = std::make_pair(i, LaurentPoly(1));
            section_[i] = i;
        }
    } else {
        const Space& amb = ambient();
        pi_.assign(amb.dim(), std::nullopt);
        for (int a = 0; a < amb.dim(); ++a) {
            const Word& w = amb.word(a);
            Word target = w;
            LaurentPoly coeff(1);
            int pos = 0;
            bool dead = false;
            for (int k : factors_) {
                std::vector<int> seg(w.begin() + pos, w.begin() + pos + k);
                std::vector<int> sorted = seg;
                std::sort(sorted.begin(), sorted.end());
                for (int j = 0; j + 1 < k; ++j)
                    if (sorted[j] == sorted[j + 1]) dead = true;
                if (dead) break;
                if (seg != sorted) {
                    // inverse-KL coefficient at the identity for the sorting
                    // permutation: the standard-to-canonical change of basis
                    // realizes the quotient section
                    const CoxType sym{Family::A, k};
                    const HeckeAlgebra& H = HeckeAlgebra::get(sym);
                    const WeylGroup& S = H.weyl();
                    Window perm(k);
                    for (int j = 0; j < k; ++j) {
                        int rank = 0;
                        for (int r = 0; r < k; ++r)
                            if (sorted[r] == seg[j]) rank = r;
                        perm[j] = rank + 1;
                    }
                    auto it = H.kl_inverse(S.index_of(perm)).find(S.identity());
                    if (it == H.kl_inverse(S.index_of(perm)).end()) {
                        dead = true;
                        break;
                    }
                    coeff *= it->second;
                    std::copy(sorted.begin(), sorted.end(), target.begin() + pos);
                }
                pos += k;
            }
            if (!dead) pi_[a] = std::make_pair(index_of(target), coeff);
        }
        section_.resize(dim());
        for (int i = 0; i < dim(); ++i) section_[i] = amb.index_of(words_[i]);
    }
    psi_cache_.assign(dim(), std::nullopt);
}

// ---------------------------------------------------------------------------
// generator matrices on a pure tensor power, via the coproduct
// Delta(E_i) = 1 (x) E_i + E_i (x) K_i^{-1},  Delta(F_i) = F_i (x) 1 + K_i (x) F_i

inline OpCols Space::build_e(int i) const {
    if (!pure_) return induce(ambient().op_e(i));
    OpCols op(dim());
    for (int j = 0; j < dim(); ++j) {
        const Word& f = words_[j];
        for (int p = 0; p < m_; ++p) {
            if (f[p] != i + 1) continue;
            int exp = 0;  // K_i^{-1} on all later factors
            for (int r = p + 1; r < m_; ++r) exp -= (f[r] == i) - (f[r] == i + 1);
            Word g = f;
            g[p] = i;
            add_scaled(op[j], LaurentPoly::q(exp), unit(index_of(g)));
        }
    }
    return op;
}

inline OpCols Space::build_f(int i) const {
    if (!pure_) return induce(ambient().op_f(i));
    OpCols op(dim());
    for (int j = 0; j < dim(); ++j) {
        const Word& f = words_[j];
        for (int p = 0; p < m_; ++p) {
            if (f[p] != i) continue;
            int exp = 0;  // K_i on all earlier factors
            for (int r = 0; r < p; ++r) exp += (f[r] == i) - (f[r] == i + 1);
            Word g = f;
            g[p] = i + 1;
            add_scaled(op[j], LaurentPoly::q(exp), unit(index_of(g)));
        }
    }
    return op;
}

inline OpCols Space::build_k(int i, int sign) const {
    if (!pure_) return induce(ambient().op_k(i, sign));
    OpCols op(dim());
    for (int j = 0; j < dim(); ++j) {
        const auto& mu = weights_[j];
        const int exp = sign * (mu[i - 1] - mu[i]);
        op[j][j] = LaurentPoly::q(exp);
    }
    return op;
}

inline OpCols Space::induce(const OpCols& ambient_op) const {
    OpCols op(dim());
    for (int i = 0; i < dim(); ++i) op[i] = project(ambient_op[section_[i]]);
    return op;
}

inline const OpCols& Space::op_iota_b(int i, Variant v) const {
    auto key = std::make_pair(static_cast<int>(v), i);
    auto it = ops_iota_.find(key);
    if (it != ops_iota_.end()) return it->second;
    auto [c, d] = iota_coeffs(i, v);
    const int j = n_ + 1 - i;
    OpCols op = compose(op_f(j), op_k(i, -1));
    for (int col = 0; col < dim(); ++col) {
        Column combined;
        add_scaled(combined, LaurentPoly(1), op_e(i)[col]);
        add_scaled(combined, c, op[col]);
        if (!d.is_zero()) add_scaled(combined, d, op_k(i, -1)[col]);
        op[col] = std::move(combined);
    }
    return ops_iota_.emplace(key, std::move(op)).first->second;
}

inline const OpCols& Space::op_iota_b_bar(int i, Variant v) const {
    auto key = std::make_pair(static_cast<int>(v), i);
    auto it = ops_iota_bar_.find(key);
    if (it != ops_iota_bar_.end()) return it->second;
    auto [c, d] = iota_coeffs(i, v);
    const int j = n_ + 1 - i;
    OpCols op = compose(op_f(j), op_k(i, +1));
    for (int col = 0; col < dim(); ++col) {
        Column combined;
        add_scaled(combined, LaurentPoly(1), op_e(i)[col]);
        add_scaled(combined, bar(c), op[col]);
        if (!d.is_zero()) add_scaled(combined, bar(d), op_k(i, +1)[col]);
        op[col] = std::move(combined);
    }
    return ops_iota_bar_.emplace(key, std::move(op)).first->second;
}

inline const OpCols& Space::op_iota_cartan(int i) const {
    auto it = ops_cartan_.find(i);
    if (it != ops_cartan_.end()) return it->second;
    return ops_cartan_.emplace(i, compose(op_k(i, +1), op_k(n_ + 1 - i, -1))).first->second;
}

inline const OpCols& Space::op_iota_cartan_inv(int i) const {
    auto it = ops_cartan_inv_.find(i);
    if (it != ops_cartan_inv_.end()) return it->second;
    return ops_cartan_inv_.emplace(i, compose(op_k(i, -1), op_k(n_ + 1 - i, +1))).first->second;
}

// ---------------------------------------------------------------------------
// Hecke actions

inline const OpCols& Space::op_hecke_a(int i) const {
    if (!pure_) throw InternalError("type A Hecke action lives on pure tensor powers");
    if (i < 1 || i >= m_) throw InternalError("Hecke generator index out of range");
    auto it = ops_hecke_a_.find(i);
    if (it != ops_hecke_a_.end()) return it->second;
    static const LaurentPoly qinv = LaurentPoly::q(-1);
    static const LaurentPoly qinv_minus_q = LaurentPoly::q(-1) - LaurentPoly::q(1);
    OpCols op(dim());
    for (int j = 0; j < dim(); ++j) {
        const Word& f = words_[j];
        if (f[i - 1] == f[i]) {
            op[j][j] = qinv;
            continue;
        }
        Word g = f;
        std::swap(g[i - 1], g[i]);
        const int gj = index_of(g);
        op[j][gj] = LaurentPoly(1);
        if (f[i - 1] > f[i]) op[j][j] = qinv_minus_q;
    }
    return ops_hecke_a_.emplace(i, std::move(op)).first->second;
}

inline const std::vector<std::vector<LaurentPoly>>& Space::solve_h0(int n, Variant v) {
    auto regkey = std::make_pair(n, static_cast<int>(v));
    if (auto it = h0_registry().find(regkey); it != h0_registry().end()) return it->second;
    const Space& V = Space::get(n, {1});
    const int d = V.dim();
    // unknowns X[r][c] flattened row-major; constraints: X commutes with the
    // coideal action on V; normalization pins the theta-pair (1, n+1) to the
    // ascent convention v_{n+1} . H_0 = v_1
    auto flat = [d](int r, int c) { return r * d + c; };
    std::vector<std::vector<RatFunc>> rows;
    std::vector<RatFunc> rhs;
    auto dense = [&](const OpCols& op) {
        std::vector<std::vector<RatFunc>> g(d, std::vector<RatFunc>(d));
        for (int c = 0; c < d; ++c)
            for (const auto& [r, coeff] : op[c]) g[r][c] = RatFunc(coeff);
        return g;
    };
    std::vector<std::vector<std::vector<RatFunc>>> gens;
    for (int i = 1; i <= n; ++i) {
        gens.push_back(dense(V.op_iota_b(i, v)));
        gens.push_back(dense(V.op_iota_cartan(i)));
    }
    for (const auto& g : gens)
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                std::vector<RatFunc> row(d * d);
                for (int k = 0; k < d; ++k) {
                    row[flat(r, k)] += g[k][c];
                    row[flat(k, c)] -= g[r][k];
                }
                rows.push_back(std::move(row));
                rhs.push_back(RatFunc(0));
            }
    {
        std::vector<RatFunc> row(d * d);
        row[flat(0, d - 1)] = RatFunc(1);
        rows.push_back(std::move(row));
        rhs.push_back(RatFunc(1));
        row.assign(d * d, RatFunc());
        row[flat(d - 1, d - 1)] = RatFunc(1);
        rows.push_back(std::move(row));
        rhs.push_back(RatFunc(0));
    }
    std::optional<std::vector<RatFunc>> sol;
    try {
        sol = solve_linear(rows, rhs);
    } catch (const NonUniqueSolution&) {
        throw NonUniqueSolution("H_0 on V is not pinned by commutation and normalization (n = " +
                                std::to_string(n) + ", " + to_string(v) + ")");
    }
    if (!sol) throw NoSolution("no H_0 matrix commutes with the coideal action under the normalization");
    std::vector<std::vector<LaurentPoly>> x(d, std::vector<LaurentPoly>(d));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) x[r][c] = (*sol)[flat(r, c)].to_laurent();
    // quadratic relation: (X + q)(X - q^{-1}) = 0 for bw13, X^2 = 1 for bao17
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            LaurentPoly acc;
            for (int k = 0; k < d; ++k) acc += x[r][k] * x[k][c];
            if (v == Variant::bw13)
                acc += (LaurentPoly::q(1) - LaurentPoly::q(-1)) * x[r][c];
            LaurentPoly expected = (r == c) ? LaurentPoly(1) : LaurentPoly();
            if (acc != expected)
                throw NoSolution("H_0 candidate violates the quadratic relation (n = " +
                                 std::to_string(n) + ", " + to_string(v) + ")");
        }
    return h0_registry().emplace(regkey, std::move(x)).first->second;
}

inline const OpCols& Space::op_hecke_b0(Variant v) const {
    if (!pure_) throw InternalError("type B Hecke action lives on pure tensor powers");
    const int key = static_cast<int>(v);
    auto it = ops_hecke_b0_.find(key);
    if (it != ops_hecke_b0_.end()) return it->second;
    auto t0 = solve_h0(n_, v);
    OpCols op(dim());
    for (int j = 0; j < dim(); ++j) {
        const Word& f = words_[j];
        const int c = f.empty() ? -1 : f[0] - 1;
        if (c < 0) {
            op[j][j] = LaurentPoly(1);
            continue;
        }
        for (int r = 0; r < letters(); ++r) {
            if (t0[r][c].is_zero()) continue;
            Word g = f;
            g[0] = r + 1;
            add_scaled(op[j], t0[r][c], unit(index_of(g)));
        }
    }
    return ops_hecke_b0_.emplace(key, std::move(op)).first->second;
}

// ---------------------------------------------------------------------------
// psi: the tensor-space bar involution, anchored at anti-dominant words and
// propagated through the type A Hecke action, psi(x . h) = psi(x) . bar(h)

inline const Column& Space::psi_of_word(int i) const {
    if (psi_cache_[i]) return *psi_cache_[i];
    if (!pure_) {
        const Space& amb = ambient();
        psi_cache_[i] = project(amb.psi_of_word(section_[i]));
        return *psi_cache_[i];
    }
    const Word& f = words_[i];
    int desc = -1;
    for (int p = 0; p + 1 < m_; ++p)
        if (f[p] > f[p + 1]) {
            desc = p;
            break;
        }
    if (desc < 0) {
        psi_cache_[i] = unit(i);  // anti-dominant anchor
        return *psi_cache_[i];
    }
    Word g = f;
    std::swap(g[desc], g[desc + 1]);
    const Column& lower = psi_of_word(index_of(g));
    Column out = apply_op(op_hecke_a(desc + 1), lower);
    add_scaled(out, LaurentPoly::q(1) - LaurentPoly::q(-1), lower);
    psi_cache_[i] = std::move(out);
    return *psi_cache_[i];
}

// ---------------------------------------------------------------------------
// Upsilon: the weight-filtered intertwiner with T = id + (strictly lowering),
// solved level by level from rho(B_i) T = T rho(psi(B_i)) and commutation
// with the Cartan coideal generators

inline void Space::solve_upsilon(Variant v) const {
    const int key = static_cast<int>(v);
    if (!pure_) {
        const Space& amb = ambient();
        upsilon_.emplace(key, induce(amb.upsilon(v)));
        return;
    }
    struct GenPair {
        const OpCols* rho;
        const OpCols* rho_bar;
    };
    std::vector<GenPair> gens;
    for (int i = 1; i <= n_; ++i) {
        gens.push_back({&op_iota_b(i, v), &op_iota_b_bar(i, v)});
        // psi_iota and psi both invert the Cartan generator, so T commutes with it
        gens.push_back({&op_iota_cartan(i), &op_iota_cartan(i)});
    }

    std::map<std::pair<int, int>, RatFunc> solved;  // (target word, source word) -> value
    auto entry_state = [&](int y, int x) -> int {
        // 2 = diagonal, 1 = structural zero, 0 = variable
        if (y == x) return 2;
        if (!dominance_less(weights_[y], weights_[x])) return 1;
        return 0;
    };

    int max_level = 0;
    for (int x = 0; x < dim(); ++x)
        for (int y = 0; y < dim(); ++y)
            if (entry_state(y, x) == 0) max_level = std::max(max_level, depth_[y] - depth_[x]);

    for (int level = 1; level <= max_level; ++level) {
        std::map<std::pair<int, int>, int> stage_ids;
        for (int x = 0; x < dim(); ++x)
            for (int y = 0; y < dim(); ++y)
                if (entry_state(y, x) == 0 && depth_[y] - depth_[x] == level) {
                    int id = static_cast<int>(stage_ids.size());
                    stage_ids[{y, x}] = id;
                }
        if (stage_ids.empty()) continue;
        const int width = static_cast<int>(stage_ids.size());
        std::vector<SparseRow> rows;

        // T_{y,x} as (known constant, stage unknown id or -1)
        auto lookup = [&](int y, int x) -> std::pair<RatFunc, int> {
            const int state = entry_state(y, x);
            if (state == 2) return {RatFunc(1), -1};
            if (state == 1) return {RatFunc(0), -1};
            auto it = solved.find({y, x});
            if (it != solved.end()) return {it->second, -1};
            auto sit = stage_ids.find({y, x});
            if (sit != stage_ids.end()) return {RatFunc(0), sit->second};
            return {RatFunc(0), -1};  // level > current stage: cannot appear here
        };

        for (const auto& gen : gens) {
            const OpCols& rho = *gen.rho;
            const OpCols& rho_bar = *gen.rho_bar;
            for (int x = 0; x < dim(); ++x) {
                // componentwise equation rho(g) T e_x = T rho_bar(g) e_x at
                // target words t with depth(t) - depth(x) = level - 1
                std::map<int, std::pair<RatFunc, std::map<int, RatFunc>>> acc;  // t -> (const, unknowns)
                auto accumulate = [&](int t, const RatFunc& coeff, int y, int src, int sign) {
                    auto [known, unk] = lookup(y, src);
                    auto& slot = acc[t];
                    if (unk >= 0)
                        slot.second[unk] += sign > 0 ? coeff : -coeff;
                    else if (!known.is_zero())
                        slot.first += sign > 0 ? coeff * known : -(coeff * known);
                };
                // LHS: sum_y rho_{t,y} T_{y,x}
                for (int y = 0; y < dim(); ++y) {
                    if (entry_state(y, x) == 1) continue;
                    for (const auto& [t, coeff] : rho[y])
                        if (depth_[t] - depth_[x] == level - 1) accumulate(t, RatFunc(coeff), y, x, +1);
                }
                // RHS: sum_z rho_bar_{z,x} T_{t,z}
                for (const auto& [z, coeff] : rho_bar[x]) {
                    for (int t = 0; t < dim(); ++t) {
                        if (depth_[t] - depth_[x] != level - 1) continue;
                        if (entry_state(t, z) == 1) continue;
                        accumulate(t, RatFunc(coeff), t, z, -1);
                    }
                }
                for (auto& [t, expr] : acc) {
                    if (expr.second.empty()) continue;  // pure consistency rows checked at the end
                    rows.emplace_back(std::move(expr.second), -expr.first);
                }
            }
        }
        std::optional<std::vector<RatFunc>> sol;
        try {
            sol = solve_sparse(width, std::move(rows));
        } catch (const NonUniqueSolution&) {
            throw NonUniqueIntertwiner("intertwiner level " + std::to_string(level) +
                                       " is underdetermined");
        }
        if (!sol)
            throw NoIntertwiner("intertwiner equations are inconsistent at level " +
                                std::to_string(level));
        for (const auto& [pair, id] : stage_ids) solved[pair] = (*sol)[id];
    }

    OpCols t(dim());
    for (int x = 0; x < dim(); ++x) {
        t[x][x] = LaurentPoly(1);
        for (const auto& [pair, value] : solved) {
            if (pair.second != x || value.is_zero()) continue;
            t[x][pair.first] = value.to_laurent();
        }
    }
    // full verification of the intertwining equations
    for (size_t g = 0; g < gens.size(); ++g)
        for (int x = 0; x < dim(); ++x) {
            Column lhs = apply_op(*gens[g].rho, t[x]);
            Column rhs_col = apply_op(t, (*gens[g].rho_bar)[x]);
            if (lhs != rhs_col) {
                std::string msg = "solved operator fails the intertwining equations (generator " +
                                  std::to_string(g) + ", column " + word_string(words_[x]) + ":";
                for (const auto& [i, c] : lhs) msg += " L[" + word_string(words_[i]) + "]=" + c.to_string();
                for (const auto& [i, c] : rhs_col)
                    msg += " R[" + word_string(words_[i]) + "]=" + c.to_string();
                throw NoIntertwiner(msg + ")");
            }
        }
    upsilon_.emplace(key, std::move(t));
}

inline const OpCols& Space::upsilon(Variant v) const {
    const int key = static_cast<int>(v);
    auto it = upsilon_.find(key);
    if (it == upsilon_.end()) {
        solve_upsilon(v);
        it = upsilon_.find(key);
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// bases

inline const std::vector<Column>& Space::canonical() const {
    if (canonical_) return *canonical_;
    BarSystem sys{dim(), [this](int b) { return psi_of_word(b); },
                  [this](int i, int j) {
                      return weights_[i] == weights_[j] && inv_[i] < inv_[j];
                  }};
    canonical_ = canonicalize(sys);
    return *canonical_;
}

inline const std::vector<Column>& Space::iota_over_canonical(Variant v) const {
    const int key = static_cast<int>(v);
    auto it = iota_.find(key);
    if (it != iota_.end()) return it->second;
    const auto& can = canonical();
    BarSystem sys{dim(),
                  [this, &can, v](int b) { return expand_in_canonical(psi_iota(can[b], v)); },
                  [this](int i, int j) { return dominance_less(weights_[i], weights_[j]); }};
    return iota_.emplace(key, canonicalize(sys)).first->second;
}

// ---------------------------------------------------------------------------
// simple modules inside a tensor of wedges

struct SimpleModule {
    const Space* host;
    std::vector<int> lambda;  // coefficients of the fundamental weights, a_1..a_n
    Variant variant;
    int dimension;
    std::vector<int> canonical_members;  // basis indices b with b-diamond in L(lambda)
    std::vector<int> iota_members;       // basis indices with the iota element in L(lambda)
};

// the host prescribed by lambda: a_i copies of the i-th wedge power
inline std::vector<int> simple_host_factors(const std::vector<int>& lambda) {
    std::vector<int> factors;
    for (size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < 0) throw Error("lambda must be a dominant weight");
        for (int c = 0; c < lambda[i]; ++c) factors.push_back(static_cast<int>(i) + 1);
    }
    return factors;
}

// L(lambda) = U . v+ where v+ is the tensor of highest-weight vectors; the
// canonical and iota-canonical members of the submodule are collected and the
// based-submodule property |B(lambda)| = dim is enforced
inline SimpleModule simple_extract(int n, const std::vector<int>& lambda, Variant variant) {
    if (static_cast<int>(lambda.size()) != n) throw Error("lambda must have n entries");
    const Space& host = Space::get(n, simple_host_factors(lambda));
    const int d = host.dim();
    auto to_dense = [&](const Column& col) {
        std::vector<RatFunc> v(d);
        for (const auto& [i, c] : col) v[i] = RatFunc(c);
        return v;
    };
    Word highest;
    for (int k : host.factors())
        for (int j = 1; j <= k; ++j) highest.push_back(j);
    RowSpan span(d);
    std::vector<Column> frontier = {{{host.index_of(highest), LaurentPoly(1)}}};
    span.insert(to_dense(frontier[0]));
    std::vector<Column> all = frontier;
    while (!frontier.empty()) {
        std::vector<Column> next;
        for (const auto& vec : frontier)
            for (int i = 1; i <= n; ++i) {
                Column img = apply_op(host.op_f(i), vec);
                if (img.empty()) continue;
                if (span.insert(to_dense(img))) {
                    next.push_back(img);
                    all.push_back(img);
                }
            }
        frontier = std::move(next);
    }
    // U . v+ must be stable under the raising operators as well
    for (const auto& vec : all)
        for (int i = 1; i <= n; ++i)
            if (!span.contains(to_dense(apply_op(host.op_e(i), vec))))
                throw SpanMismatch("closure of the highest weight vector is not E-stable");
    SimpleModule out{&host, lambda, variant, span.dim(), {}, {}};
    const auto& can = host.canonical();
    for (int b = 0; b < d; ++b)
        if (span.contains(to_dense(can[b]))) out.canonical_members.push_back(b);
    auto iota_std = host.iota_over_standard(variant);
    for (int b = 0; b < d; ++b)
        if (span.contains(to_dense(iota_std[b]))) out.iota_members.push_back(b);
    if (static_cast<int>(out.canonical_members.size()) != out.dimension)
        throw SpanMismatch("canonical members of L(lambda) do not span it");
    if (static_cast<int>(out.iota_members.size()) != out.dimension)
        throw SpanMismatch("iota-canonical members of L(lambda) do not span it");
    return out;
}

}  // namespace canbase
