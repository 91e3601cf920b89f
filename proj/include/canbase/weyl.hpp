#pragma once

// Weyl groups of types A_{m-1} and B_m as (signed) permutation windows.
// Elements are the images w(1..m); type B implies w(-i) = -w(i), and s_0
// negates the first window entry while s_i (i >= 1) swaps entries i, i+1.
// A WeylGroup context enumerates the whole group once and caches length,
// multiplication, Bruhat order, and coset data; contexts are shared through
// weyl_group().

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "canbase/common.hpp"

namespace canbase {

enum class Family { A, B };

struct CoxType {
    Family family;
    int rank;  // window size m: family A is A_{m-1}, family B is B_m

    // named by Coxeter rank: type_a(2) is A_2 acting on 3 letters
    static CoxType type_a(int coxeter_rank) { return {Family::A, coxeter_rank + 1}; }
    static CoxType type_b(int coxeter_rank) { return {Family::B, coxeter_rank}; }

    int coxeter_rank() const { return family == Family::A ? rank - 1 : rank; }
    int min_gen() const { return family == Family::A ? 1 : 0; }
    int max_gen() const { return rank - 1; }

    std::vector<int> generators() const {
        std::vector<int> g;
        for (int s = min_gen(); s <= max_gen(); ++s) g.push_back(s);
        return g;
    }

    friend bool operator==(const CoxType& a, const CoxType& b) {
        return a.family == b.family && a.rank == b.rank;
    }
    friend bool operator<(const CoxType& a, const CoxType& b) {
        if (a.family != b.family) return a.family < b.family;
        return a.rank < b.rank;
    }

    std::string to_string() const {
        return (family == Family::A ? "A" : "B") + std::to_string(coxeter_rank());
    }
};

using Window = std::vector<int>;
using ParabolicSet = std::set<int>;

struct GroupElement {
    CoxType type;
    Window window;

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.type == b.type && a.window == b.window;
    }
    friend bool operator<(const GroupElement& a, const GroupElement& b) {
        if (!(a.type == b.type)) return a.type < b.type;
        return a.window < b.window;
    }

    std::string to_string() const {
        std::string out = "[";
        for (size_t i = 0; i < window.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(window[i]);
        }
        return out + "]";
    }
};

namespace detail {

inline Window identity_window(int m) {
    Window w(m);
    std::iota(w.begin(), w.end(), 1);
    return w;
}

inline Window right_gen(Window w, int s) {
    if (s == 0)
        w[0] = -w[0];
    else
        std::swap(w[s - 1], w[s]);
    return w;
}

inline Window left_gen(int s, Window w) {
    for (auto& v : w) {
        int a = v < 0 ? -v : v;
        int sign = v < 0 ? -1 : 1;
        if (s == 0) {
            if (a == 1) v = -v;
        } else {
            if (a == s)
                v = sign * (s + 1);
            else if (a == s + 1)
                v = sign * s;
        }
    }
    return w;
}

inline Window mul_window(const Window& u, const Window& v) {
    Window w(v.size());
    for (size_t j = 0; j < v.size(); ++j) {
        int a = v[j] < 0 ? -v[j] : v[j];
        w[j] = v[j] < 0 ? -u[a - 1] : u[a - 1];
    }
    return w;
}

inline Window inverse_window(const Window& u) {
    Window w(u.size());
    for (size_t j = 0; j < u.size(); ++j) {
        int a = u[j] < 0 ? -u[j] : u[j];
        w[a - 1] = u[j] < 0 ? -(static_cast<int>(j) + 1) : static_cast<int>(j) + 1;
    }
    return w;
}

// closed length formula: inversions, plus sum of |negative entries| in type B
inline int window_length(Family family, const Window& w) {
    int len = 0;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
            if (w[i] > w[j]) ++len;
    if (family == Family::B)
        for (int v : w)
            if (v < 0) len -= v;
    return len;
}

inline bool right_descent(Family family, const Window& w, int s) {
    if (s == 0) return w[0] < 0;
    (void)family;
    return w[s - 1] > w[s];
}

}  // namespace detail

enum class CosetKind {
    Left,    // ^JW : minimal representatives of W_J \ W
    Right,   // W^J : minimal representatives of W / W_J
    Double,  // ^IW^J : minimal representatives of W_I \ W / W_J
};

class WeylGroup {
public:
    explicit WeylGroup(CoxType type) : type_(type) {
        build_elements();
        build_tables();
        build_bruhat();
    }

    const CoxType& type() const { return type_; }
    int size() const { return static_cast<int>(elements_.size()); }
    int identity() const { return 0; }

    const Window& window(int i) const { return elements_[i]; }
    GroupElement element(int i) const { return {type_, elements_[i]}; }
    int length(int i) const { return length_[i]; }

    int index_of(const Window& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) throw InternalError("window is not an element of " + type_.to_string());
        return it->second;
    }
    int index_of(const GroupElement& g) const {
        if (!(g.type == type_)) throw InternalError("type mismatch in index_of");
        return index_of(g.window);
    }

    int mul_right(int w, int s) const { return right_mul_[w][gen_slot(s)]; }
    int mul_left(int s, int w) const { return left_mul_[w][gen_slot(s)]; }
    int inverse(int w) const { return inverse_[w]; }

    int mul(int u, int v) const {
        return index_of(detail::mul_window(elements_[u], elements_[v]));
    }

    bool right_descent(int w, int s) const { return detail::right_descent(type_.family, elements_[w], s); }
    bool left_descent(int w, int s) const { return right_descent(inverse_[w], s); }

    int generator(int s) const { return mul_right(identity(), s); }

    const std::vector<int>& reduced_word(int w) const { return reduced_words_[w]; }

    bool bruhat_leq(int y, int w) const { return bruhat_[y][w] != 0; }

    // --- parabolic machinery -------------------------------------------------

    void validate_parabolic(const ParabolicSet& J) const {
        for (int s : J)
            if (s < type_.min_gen() || s > type_.max_gen())
                throw InvalidParabolic("generator index s" + std::to_string(s) + " out of range for " +
                                       type_.to_string());
    }

    const std::vector<int>& subgroup(const ParabolicSet& J) const {
        validate_parabolic(J);
        auto it = subgroup_cache_.find(J);
        if (it != subgroup_cache_.end()) return it->second;
        std::vector<int> elems = {identity()};
        std::set<int> seen = {identity()};
        for (size_t k = 0; k < elems.size(); ++k)
            for (int s : J) {
                int nxt = mul_right(elems[k], s);
                if (seen.insert(nxt).second) elems.push_back(nxt);
            }
        std::sort(elems.begin(), elems.end());
        return subgroup_cache_.emplace(J, std::move(elems)).first->second;
    }

    int longest_element(const ParabolicSet& J) const {
        int w = identity();
        bool moved = true;
        while (moved) {
            moved = false;
            for (int s : J)
                if (!right_descent(w, s)) {
                    w = mul_right(w, s);
                    moved = true;
                }
        }
        return w;
    }

    bool no_right_descent_in(int w, const ParabolicSet& J) const {
        for (int s : J)
            if (right_descent(w, s)) return false;
        return true;
    }
    bool no_left_descent_in(int w, const ParabolicSet& J) const {
        for (int s : J)
            if (left_descent(w, s)) return false;
        return true;
    }

    // minimal representative of w W_J
    int min_rep_right_quotient(int w, const ParabolicSet& J) const {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int s : J)
                if (right_descent(w, s)) {
                    w = mul_right(w, s);
                    moved = true;
                }
        }
        return w;
    }
    // minimal representative of W_J w
    int min_rep_left_quotient(const ParabolicSet& J, int w) const {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int s : J)
                if (left_descent(w, s)) {
                    w = mul_left(s, w);
                    moved = true;
                }
        }
        return w;
    }
    // minimal representative of W_I w W_J
    int min_rep_double(const ParabolicSet& I, int w, const ParabolicSet& J) const {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int s : I)
                if (left_descent(w, s)) {
                    w = mul_left(s, w);
                    moved = true;
                }
            for (int s : J)
                if (right_descent(w, s)) {
                    w = mul_right(w, s);
                    moved = true;
                }
        }
        return w;
    }

    // sorted by (length, window); the descent characterization of minimal
    // coset representatives
    std::vector<int> coset_reps(const ParabolicSet& I, const ParabolicSet& J, CosetKind kind) const {
        validate_parabolic(I);
        validate_parabolic(J);
        auto key = std::make_tuple(I, J, static_cast<int>(kind));
        auto it = coset_cache_.find(key);
        if (it != coset_cache_.end()) return it->second;
        std::vector<int> reps;
        for (int w = 0; w < size(); ++w) {
            bool ok = true;
            switch (kind) {
                case CosetKind::Left: ok = no_left_descent_in(w, J); break;
                case CosetKind::Right: ok = no_right_descent_in(w, J); break;
                case CosetKind::Double: ok = no_left_descent_in(w, I) && no_right_descent_in(w, J); break;
            }
            if (ok) reps.push_back(w);
        }
        coset_cache_.emplace(key, reps);
        return reps;
    }

    // K = I cap pm J pm^{-1} as a set of simple reflections
    ParabolicSet conjugate_intersection(const ParabolicSet& I, int pm, const ParabolicSet& J) const {
        ParabolicSet K;
        int pmi = inverse(pm);
        for (int s : I) {
            int t = mul(mul(pmi, generator(s)), pm);
            for (int j : J)
                if (t == generator(j)) {
                    K.insert(s);
                    break;
                }
        }
        return K;
    }

    struct CosetFactorization {
        int u;   // in W^K cap W_I
        int pm;  // minimal double coset representative
        int v;   // in W_J
        ParabolicSet K;
    };

    // coset factorization w = u . pm . v with additive lengths,
    // K = I cap pm J pm^{-1}
    CosetFactorization coset_factorize(int w, const ParabolicSet& I, const ParabolicSet& J) const {
        const int pm = min_rep_double(I, w, J);
        ParabolicSet K = conjugate_intersection(I, pm, J);
        // strip w to pm, accumulating a in W_I (left) and b in W_J (right)
        int x = w, a = identity(), b = identity();
        while (x != pm) {
            bool moved = false;
            for (int s : I)
                if (left_descent(x, s)) {
                    x = mul_left(s, x);
                    a = mul_right(a, s);
                    moved = true;
                    break;
                }
            if (moved) continue;
            for (int s : J)
                if (right_descent(x, s)) {
                    x = mul_right(x, s);
                    b = mul_left(s, b);
                    moved = true;
                    break;
                }
            if (!moved)
                throw NotSimpleConjugate("no descent path from element to double coset representative");
        }
        // split a = u k with u minimal in a W_K, k in W_K
        int u = a, k = identity();
        bool moved = true;
        while (moved) {
            moved = false;
            for (int s : K)
                if (right_descent(u, s)) {
                    u = mul_right(u, s);
                    k = mul_left(s, k);
                    moved = true;
                }
        }
        const int v = mul(mul(mul(inverse(pm), k), pm), b);
        // the bijection (W^K cap W_I) x W_J -> coset forces additive lengths;
        // anything else means the conjugate intersection is not parabolic
        const auto& wj = subgroup(J);
        if (mul(mul(u, pm), v) != w || !std::binary_search(wj.begin(), wj.end(), v) ||
            length(w) != length(u) + length(pm) + length(v) || !no_right_descent_in(u, K))
            throw NotSimpleConjugate("double coset factorization failed for " + element(w).to_string());
        return {u, pm, v, K};
    }

private:
    int gen_slot(int s) const { return s - type_.min_gen(); }

    void build_elements() {
        const int m = type_.rank;
        std::vector<Window> pool = {detail::identity_window(m)};
        std::map<Window, int> seen = {{pool[0], 0}};
        for (size_t k = 0; k < pool.size(); ++k)
            for (int s : type_.generators()) {
                Window nxt = detail::right_gen(pool[k], s);
                if (seen.emplace(nxt, 1).second) pool.push_back(std::move(nxt));
            }
        std::sort(pool.begin(), pool.end(), [&](const Window& a, const Window& b) {
            int la = detail::window_length(type_.family, a);
            int lb = detail::window_length(type_.family, b);
            if (la != lb) return la < lb;
            return a < b;
        });
        elements_ = std::move(pool);
        for (int i = 0; i < size(); ++i) index_[elements_[i]] = i;
        length_.resize(size());
        for (int i = 0; i < size(); ++i) length_[i] = detail::window_length(type_.family, elements_[i]);
    }

    void build_tables() {
        const auto gens = type_.generators();
        right_mul_.assign(size(), std::vector<int>(gens.size()));
        left_mul_.assign(size(), std::vector<int>(gens.size()));
        inverse_.resize(size());
        for (int i = 0; i < size(); ++i) {
            for (size_t g = 0; g < gens.size(); ++g) {
                right_mul_[i][g] = index_.at(detail::right_gen(elements_[i], gens[g]));
                left_mul_[i][g] = index_.at(detail::left_gen(gens[g], elements_[i]));
            }
            inverse_[i] = index_.at(detail::inverse_window(elements_[i]));
        }
        reduced_words_.resize(size());
        for (int i = 0; i < size(); ++i) {
            std::vector<int> word;
            int w = i;
            while (w != identity()) {
                for (int s : gens)
                    if (right_descent(w, s)) {
                        word.push_back(s);
                        w = mul_right(w, s);
                        break;
                    }
            }
            std::reverse(word.begin(), word.end());
            reduced_words_[i] = std::move(word);
        }
    }

    // lifting property along each element's last reduced-word letter
    void build_bruhat() {
        bruhat_.assign(size(), std::vector<uint8_t>(size(), 0));
        for (int w = 0; w < size(); ++w) {
            if (length_[w] == 0) {
                bruhat_[identity()][w] = 1;
                continue;
            }
            const int s = reduced_words_[w].back();
            const int ws = mul_right(w, s);
            for (int y = 0; y < size(); ++y) {
                const int yy = right_descent(y, s) ? mul_right(y, s) : y;
                bruhat_[y][w] = bruhat_[yy][ws];
            }
        }
    }

    CoxType type_;
    std::vector<Window> elements_;
    std::map<Window, int> index_;
    std::vector<int> length_;
    std::vector<std::vector<int>> right_mul_, left_mul_;
    std::vector<int> inverse_;
    std::vector<std::vector<int>> reduced_words_;
    std::vector<std::vector<uint8_t>> bruhat_;
    mutable std::map<ParabolicSet, std::vector<int>> subgroup_cache_;
    mutable std::map<std::tuple<ParabolicSet, ParabolicSet, int>, std::vector<int>> coset_cache_;
};

// Shared per-type contexts; answers are independent of cache state.
inline const WeylGroup& weyl_group(CoxType type) {
    static std::map<CoxType, std::unique_ptr<WeylGroup>> registry;
    auto it = registry.find(type);
    if (it == registry.end())
        it = registry.emplace(type, std::make_unique<WeylGroup>(type)).first;
    return *it->second;
}

// --- element-level convenience API ------------------------------------------

inline GroupElement identity_element(CoxType type) {
    return {type, detail::identity_window(type.rank)};
}

inline GroupElement from_word(CoxType type, const std::vector<int>& word) {
    Window w = detail::identity_window(type.rank);
    for (int s : word) {
        if (s < type.min_gen() || s > type.max_gen())
            throw InvalidParabolic("generator index s" + std::to_string(s) + " out of range for " +
                                   type.to_string());
        w = detail::right_gen(std::move(w), s);
    }
    return {type, w};
}

inline int length(const GroupElement& g) { return detail::window_length(g.type.family, g.window); }

inline bool bruhat_leq(const GroupElement& y, const GroupElement& w) {
    if (!(y.type == w.type)) throw InternalError("bruhat_leq: type mismatch");
    const WeylGroup& W = weyl_group(y.type);
    return W.bruhat_leq(W.index_of(y), W.index_of(w));
}

inline std::vector<GroupElement> min_coset_reps(CoxType type, const ParabolicSet& I,
                                                const ParabolicSet& J, CosetKind kind) {
    const WeylGroup& W = weyl_group(type);
    std::vector<GroupElement> out;
    for (int i : W.coset_reps(I, J, kind)) out.push_back(W.element(i));
    return out;
}

// Accepts the window form "[-2, 1, 3]" or the word form "s0 s1 s2" / "e".
inline GroupElement parse_element(CoxType type, const std::string& text) {
    std::string t = text;
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    t.erase(t.begin(), std::find_if(t.begin(), t.end(), not_space));
    t.erase(std::find_if(t.rbegin(), t.rend(), not_space).base(), t.end());
    if (t.empty() || t == "e") return identity_element(type);
    if (t.front() == '[') {
        Window w;
        std::string body = t.substr(1, t.size() - (t.back() == ']' ? 2 : 1));
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) w.push_back(std::stoi(tok));
        if (static_cast<int>(w.size()) != type.rank)
            throw Error("window length mismatch in '" + text + "'");
        GroupElement g{type, w};
        weyl_group(type).index_of(g);  // validates
        return g;
    }
    std::vector<int> word;
    std::stringstream ss(t);
    std::string tok;
    while (ss >> tok) {
        if (!tok.empty() && (tok[0] == 's' || tok[0] == 'S')) tok = tok.substr(1);
        word.push_back(std::stoi(tok));
    }
    return from_word(type, word);
}

}  // namespace canbase
