#pragma once

// Hecke algebras of types A/B over the Laurent ring, in the normalization
// H_v H_w = H_{vw} when lengths add and (H_s + q)(H_s - q^{-1}) = 0.
// Provides the standard and Kazhdan-Lusztig bases, parabolic modules M_J with
// their canonical bases, hybrid bases for restriction to H_I, the embedding
// M_J -> H, and the decompositions whose coefficients the positivity results
// are about.  Vectors are sparse maps keyed by element index in a WeylGroup
// context; HeckeVector is the equivalent value type keyed by GroupElement.

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "canbase/barsolve.hpp"
#include "canbase/laurent.hpp"
#include "canbase/weyl.hpp"

namespace canbase {

using HVec = Column;  // element index -> coefficient

struct HeckeVector {
    CoxType type;
    std::map<GroupElement, LaurentPoly> terms;
};

class HeckeAlgebra {
public:
    static const HeckeAlgebra& get(CoxType type) {
        static std::map<CoxType, std::unique_ptr<HeckeAlgebra>> registry;
        auto it = registry.find(type);
        if (it == registry.end())
            it = registry.emplace(type, std::unique_ptr<HeckeAlgebra>(new HeckeAlgebra(type))).first;
        return *it->second;
    }

    const WeylGroup& weyl() const { return W_; }

    // --- products -------------------------------------------------------------

    // right multiplication by H_s
    HVec mul_gen(const HVec& a, int s) const {
        static const LaurentPoly qinv_minus_q = LaurentPoly::q(-1) - LaurentPoly::q(1);
        HVec out;
        for (const auto& [w, c] : a) {
            const int ws = W_.mul_right(w, s);
            if (W_.right_descent(w, s)) {
                add_term(out, ws, c);
                add_term(out, w, c * qinv_minus_q);
            } else {
                add_term(out, ws, c);
            }
        }
        return out;
    }

    // right multiplication by H_w
    HVec mul_elem(HVec a, int w) const {
        for (int s : W_.reduced_word(w)) a = mul_gen(a, s);
        return a;
    }

    HVec mul(const HVec& a, const HVec& b) const {
        HVec out;
        for (const auto& [w, c] : b) {
            HVec part = mul_elem(a, w);
            add_scaled(out, c, part);
        }
        return out;
    }

    HVec unit(int w) const { return {{w, LaurentPoly(1)}}; }

    // --- bar involution ---------------------------------------------------------

    // bar(H_w), built generator-wise from bar(H_s) = H_s + (q - q^{-1})
    const HVec& bar_of_basis(int w) const {
        auto it = bar_cache_.find(w);
        if (it != bar_cache_.end()) return it->second;
        static const LaurentPoly q_minus_qinv = LaurentPoly::q(1) - LaurentPoly::q(-1);
        HVec x = unit(W_.identity());
        for (int s : W_.reduced_word(w)) {
            HVec next = mul_gen(x, s);
            add_scaled(next, q_minus_qinv, x);
            x = std::move(next);
        }
        return bar_cache_.emplace(w, std::move(x)).first->second;
    }

    HVec bar(const HVec& a) const {
        HVec out;
        for (const auto& [w, c] : a) add_scaled(out, canbase::bar(c), bar_of_basis(w));
        return out;
    }

    // --- Kazhdan-Lusztig basis ---------------------------------------------------

    const HVec& kl(int w) const {
        auto it = kl_cache_.find(w);
        if (it != kl_cache_.end()) return it->second;
        HVec col = solve_column(bar_system(), w);
        return kl_cache_.emplace(w, std::move(col)).first->second;
    }

    const std::map<int, HVec>& kl_cache() const { return kl_cache_; }
    void preload_kl(int w, HVec col) const { kl_cache_.emplace(w, std::move(col)); }

    // H_w expanded over the KL basis
    const HVec& kl_inverse(int w) const {
        auto it = klinv_cache_.find(w);
        if (it != klinv_cache_.end()) return it->second;
        HVec col = expand_triangular([this](int z) { return &kl(z); },
                                     [this](int z) { return static_cast<long long>(W_.length(z)); },
                                     unit(w));
        return klinv_cache_.emplace(w, std::move(col)).first->second;
    }

    BarSystem bar_system() const {
        return BarSystem{W_.size(), [this](int b) { return bar_of_basis(b); },
                         [this](int y, int w) { return y != w && W_.bruhat_leq(y, w); }};
    }

    // --- hybrid basis ------------------------------------------------------------

    // H^I_w = H_{p} . kl(w') for the unique w = p w', p in W^I, w' in W_I
    HVec hybrid(const ParabolicSet& I, int w) const {
        W_.validate_parabolic(I);
        const int p = W_.min_rep_right_quotient(w, I);
        const int wp = W_.mul(W_.inverse(p), w);
        HVec out;
        for (const auto& [y, c] : kl(wp)) out[W_.mul(p, y)] = c;  // lengths add
        return out;
    }

    // coefficients p^I_{y;w} of kl(w) over the hybrid basis
    std::map<int, LaurentPoly> kl_in_hybrid(const ParabolicSet& I, int w) const {
        std::map<int, HVec> cols;
        auto family = [&](int z) -> const Column* {
            auto it = cols.find(z);
            if (it == cols.end()) it = cols.emplace(z, hybrid(I, z)).first;
            return &it->second;
        };
        return expand_triangular(family,
                                 [this](int z) { return static_cast<long long>(W_.length(z)); },
                                 kl(w));
    }

    // --- conversions ----------------------------------------------------------------

    HeckeVector to_terms(const HVec& a) const {
        HeckeVector out{W_.type(), {}};
        for (const auto& [w, c] : a) out.terms.emplace(W_.element(w), c);
        return out;
    }
    HVec from_terms(const HeckeVector& a) const {
        HVec out;
        for (const auto& [g, c] : a.terms) add_term(out, W_.index_of(g), c);
        return out;
    }

private:
    explicit HeckeAlgebra(CoxType type) : W_(weyl_group(type)) {}

    static void add_term(HVec& v, int w, const LaurentPoly& c) {
        if (c.is_zero()) return;
        LaurentPoly& slot = v[w];
        slot += c;
        if (slot.is_zero()) v.erase(w);
    }

    const WeylGroup& W_;
    mutable std::map<int, HVec> bar_cache_, kl_cache_, klinv_cache_;
};

// ---------------------------------------------------------------------------
// Parabolic module ind_{H_J}^{H_I} of the trivial character e^+_J, realized on
// minimal coset representatives W_I cap ^JW.  The default ambient is the full
// group.  Used both for M_J itself and, per double coset, for the summands of
// the restriction decomposition.

class ParabolicModule {
public:
    using PVec = Column;  // element index -> coefficient

    static const ParabolicModule& get(CoxType type, const ParabolicSet& ambient, const ParabolicSet& J) {
        static std::map<std::tuple<CoxType, ParabolicSet, ParabolicSet>, std::unique_ptr<ParabolicModule>>
            registry;
        auto key = std::make_tuple(type, ambient, J);
        auto it = registry.find(key);
        if (it == registry.end())
            it = registry.emplace(key, std::unique_ptr<ParabolicModule>(new ParabolicModule(type, ambient, J)))
                     .first;
        return *it->second;
    }

    static ParabolicSet full_set(CoxType type) {
        ParabolicSet S;
        for (int s : type.generators()) S.insert(s);
        return S;
    }

    static const ParabolicModule& get_full(CoxType type, const ParabolicSet& J) {
        return get(type, full_set(type), J);
    }

    const WeylGroup& weyl() const { return hecke_.weyl(); }
    const HeckeAlgebra& hecke() const { return hecke_; }
    const ParabolicSet& ambient() const { return ambient_; }
    const ParabolicSet& inducing() const { return J_; }

    const std::vector<int>& reps() const { return reps_; }
    bool is_rep(int w) const { return pos_.count(w) != 0; }
    int rep_pos(int w) const {
        auto it = pos_.find(w);
        if (it == pos_.end()) throw BadCosetData("element is not a minimal coset representative");
        return it->second;
    }

    // right action of H_s: ascent, descent, or q^{-1}-stay
    PVec act_gen(const PVec& m, int s) const {
        if (!ambient_.count(s)) throw InvalidParabolic("generator not in the acting subalgebra");
        static const LaurentPoly qinv = LaurentPoly::q(-1);
        static const LaurentPoly qinv_minus_q = LaurentPoly::q(-1) - LaurentPoly::q(1);
        const WeylGroup& W = weyl();
        PVec out;
        for (const auto& [y, c] : m) {
            const int ys = W.mul_right(y, s);
            if (!is_rep(ys)) {
                add_term(out, y, c * qinv);
            } else if (W.length(ys) > W.length(y)) {
                add_term(out, ys, c);
            } else {
                add_term(out, ys, c);
                add_term(out, y, c * qinv_minus_q);
            }
        }
        return out;
    }

    PVec act_elem(PVec m, int w) const {
        for (int s : weyl().reduced_word(w)) m = act_gen(m, s);
        return m;
    }

    PVec act(const PVec& m, const HVec& h) const {
        PVec out;
        for (const auto& [w, c] : h) {
            PVec part = act_elem(m, w);
            add_scaled(out, c, part);
        }
        return out;
    }

    // bar(M_y) = M_e . bar(H_y); compatible with the Hecke bar by construction
    PVec bar(const PVec& m) const {
        PVec out;
        for (const auto& [y, c] : m) {
            PVec part = act(unit(weyl().identity()), hecke_.bar_of_basis(y));
            add_scaled(out, canbase::bar(c), part);
        }
        return out;
    }

    PVec unit(int w) const {
        rep_pos(w);
        return {{w, LaurentPoly(1)}};
    }

    // canonical (parabolic KL) element for w in the representative set
    const PVec& pkl(int w) const {
        auto it = pkl_cache_.find(w);
        if (it != pkl_cache_.end()) return it->second;
        Column col = solve_column(bar_system(), rep_pos(w));
        PVec out;
        for (const auto& [pos, c] : col) out[reps_[pos]] = c;
        return pkl_cache_.emplace(w, std::move(out)).first->second;
    }

    // bar system over representative positions
    BarSystem bar_system() const {
        const WeylGroup& W = weyl();
        return BarSystem{
            static_cast<int>(reps_.size()),
            [this](int pos) {
                PVec b = bar(PVec{{reps_[pos], LaurentPoly(1)}});
                Column out;
                for (const auto& [w, c] : b) out[rep_pos(w)] = c;
                return out;
            },
            [this, &W](int i, int j) { return i != j && W.bruhat_leq(reps_[i], reps_[j]); }};
    }

private:
    ParabolicModule(CoxType type, ParabolicSet ambient, ParabolicSet J)
        : hecke_(HeckeAlgebra::get(type)), ambient_(std::move(ambient)), J_(std::move(J)) {
        const WeylGroup& W = weyl();
        W.validate_parabolic(ambient_);
        W.validate_parabolic(J_);
        for (int s : J_)
            if (!ambient_.count(s)) throw InvalidParabolic("inducing parabolic not inside the ambient one");
        for (int w : W.subgroup(ambient_))
            if (W.no_left_descent_in(w, J_)) reps_.push_back(w);
        std::sort(reps_.begin(), reps_.end());  // element indices are (length, window)-sorted
        for (size_t i = 0; i < reps_.size(); ++i) pos_[reps_[i]] = static_cast<int>(i);
    }

    static void add_term(PVec& v, int w, const LaurentPoly& c) {
        if (c.is_zero()) return;
        LaurentPoly& slot = v[w];
        slot += c;
        if (slot.is_zero()) v.erase(w);
    }

    const HeckeAlgebra& hecke_;
    ParabolicSet ambient_, J_;
    std::vector<int> reps_;
    std::map<int, int> pos_;
    mutable std::map<int, PVec> pkl_cache_;
};

// ---------------------------------------------------------------------------
// free functions for the module-level story

// p^+_J : M_J -> H,  M_w -> kl(w_J) . H_w
inline HVec embed_parabolic(const ParabolicModule& M, const ParabolicModule::PVec& m) {
    const HeckeAlgebra& H = M.hecke();
    const int wJ = M.weyl().longest_element(M.inducing());
    HVec out;
    for (const auto& [w, c] : m) add_scaled(out, c, H.mul_elem(H.kl(wJ), w));
    return out;
}

// K_p = p^{-1} J p cap I for a double coset W_J p W_I with minimal rep p
inline ParabolicSet right_coset_parabolic(const WeylGroup& W, const ParabolicSet& I, int pm,
                                          const ParabolicSet& J) {
    return W.conjugate_intersection(I, W.inverse(pm), J);
}

// the parabolic hybrid element underline{M^I_y} of M_J, for y = p_- z in ^JW
inline ParabolicModule::PVec parabolic_hybrid(CoxType type, const ParabolicSet& I, const ParabolicSet& J,
                                              int y) {
    const WeylGroup& W = weyl_group(type);
    auto hk = W.coset_factorize(y, J, I);
    if (hk.u != W.identity())
        throw BadCosetData("index is not a minimal representative of W_J \\ W");
    const ParabolicSet Kp = right_coset_parabolic(W, I, hk.pm, J);
    const ParabolicModule& rel = ParabolicModule::get(type, I, Kp);
    ParabolicModule::PVec out;
    for (const auto& [z, c] : rel.pkl(hk.v)) out[W.mul(hk.pm, z)] = c;  // lengths add
    return out;
}

// coefficients p^{I,+}_{y,w} of the parabolic canonical element over the
// parabolic hybrid basis, keyed by the full index y in ^JW
inline std::map<int, LaurentPoly> pkl_in_hybrid(CoxType type, const ParabolicSet& I, const ParabolicSet& J,
                                               int w) {
    const WeylGroup& W = weyl_group(type);
    const ParabolicModule& M = ParabolicModule::get_full(type, J);
    std::map<int, Column> cols;
    auto family = [&](int y) -> const Column* {
        auto it = cols.find(y);
        if (it == cols.end()) it = cols.emplace(y, parabolic_hybrid(type, I, J, y)).first;
        return &it->second;
    };
    return expand_triangular(family, [&W](int y) { return static_cast<long long>(W.length(y)); },
                             M.pkl(w));
}

// the restriction expansion of embed_parabolic(underline{M^I_{p_- w}}):
//   sum over r in W_J cap W^{K'} of q^{l(w_J) - l(r w_{K'} p_- w) + l(p_- w)} H^I_{r w_{K'} p_- w}
inline HVec embedded_hybrid_expansion(CoxType type, const ParabolicSet& I, const ParabolicSet& J, int pm, int w) {
    const WeylGroup& W = weyl_group(type);
    const HeckeAlgebra& H = HeckeAlgebra::get(type);
    if (W.min_rep_double(J, pm, I) != pm)
        throw BadCosetData("pm is not a minimal double coset representative");
    const ParabolicSet K = right_coset_parabolic(W, I, pm, J);   // p^{-1} J p cap I
    const ParabolicSet Kprime = W.conjugate_intersection(J, pm, I);  // J cap p I p^{-1}
    const auto& WI = W.subgroup(I);
    if (!std::binary_search(WI.begin(), WI.end(), w) || !W.no_left_descent_in(w, K))
        throw BadCosetData("w is not in W_I cap ^KW");
    const int wJ = W.longest_element(J);
    const int wKp = W.longest_element(Kprime);
    const int pw = W.mul(pm, w);
    HVec out;
    for (int r : W.subgroup(J)) {
        if (!W.no_right_descent_in(r, Kprime)) continue;
        const int idx = W.mul(W.mul(r, wKp), pw);
        const int exponent = W.length(wJ) - W.length(idx) + W.length(pw);
        add_scaled(out, LaurentPoly::q(exponent), H.hybrid(I, idx));
    }
    return out;
}

}  // namespace canbase
